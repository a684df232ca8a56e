"""Arrangements, lattices, and the structural constructions."""

import random

import pytest

from hyparr.arrangement import (brute_force_lattice, build_lattice, closure, deletion,
                                essentialize, in_lattice, irreducible_decomposition,
                                localization, make_arrangement, product, restriction)
from hyparr.cyclo import CyclotomicNumber
from hyparr.errors import InvalidHyperplaneError, RefusalError
from hyparr.linalg import LinearForm, intersect, subspace_from_forms
from hyparr.parse import parse_arrangement_text, parse_form
from hyparr.reflection import exceptional_arrangement, monomial_arrangement

BOOLEAN3 = "ambient 3 field 1\na\nb\nc\n"


def forms_of(texts, ambient, order):
    return [parse_form(t, ambient, order) for t in texts]


class TestMakeArrangement:
    def test_empty(self):
        arr = make_arrangement(3, 1, [])
        assert len(arr) == 0 and arr.rank() == 0

    def test_d4_has_twelve(self):
        assert len(exceptional_arrangement("D4")) == 12

    def test_scalar_duplicates_removed(self):
        f1 = parse_form("a", 3, 4)
        f2 = parse_form("2*a", 3, 4)
        arr = make_arrangement(3, 4, [f1, f2])
        assert len(arr) == 1 and arr.duplicates_removed == 1

    def test_zero_form_rejected(self):
        with pytest.raises(InvalidHyperplaneError):
            zero = LinearForm(2, 1, ((0, 0), 1))
            make_arrangement(2, 1, [zero])


class TestClosure:
    def test_full_space(self):
        arr = parse_arrangement_text(BOOLEAN3)
        v = subspace_from_forms([], ambient=3, order=1)
        flat = closure(arr, v)
        assert flat.rank == 0 and flat.support == 0

    def test_hyperplane_closes_to_itself(self):
        arr = parse_arrangement_text(BOOLEAN3)
        for i, h in enumerate(arr.hyperplanes):
            sub = subspace_from_forms([h])
            flat = closure(arr, sub)
            assert flat.subspace == sub and flat.support == 1 << i

    def test_coordinate_hyperplane_not_in_d4_lattice(self):
        d4 = exceptional_arrangement("D4")
        hb = subspace_from_forms([parse_form("b", 4, 1)])
        flat = closure(d4, hb)
        assert flat.subspace != hb and flat.rank == 0
        assert not in_lattice(d4, hb)


class TestBuildLattice:
    def test_empty_arrangement(self):
        arr = make_arrangement(2, 1, [])
        lattice = build_lattice(arr)
        assert lattice.level_sizes() == [1]

    def test_boolean_cube(self):
        lattice = build_lattice(parse_arrangement_text(BOOLEAN3))
        assert lattice.level_sizes() == [1, 3, 3, 1]

    def test_d4_matches_brute_force(self):
        d4 = exceptional_arrangement("D4")
        fast = build_lattice(d4)
        slow = brute_force_lattice(d4)
        assert fast.level_sizes() == slow.level_sizes() == [1, 12, 34, 24, 1]
        assert {f.support for f in fast.flats()} == {f.support for f in slow.flats()}
        for f in fast.flats():
            assert slow.index[f.support].subspace == f.subspace

    def test_max_flats_guard(self):
        with pytest.raises(RefusalError):
            build_lattice(exceptional_arrangement("D4"), max_flats=10)

    def test_deterministic_and_thread_invariant(self):
        arr = monomial_arrangement(3, 1, 3)
        a = build_lattice(arr)
        b = build_lattice(arr)
        c = build_lattice(arr, threads=3)
        for x, y, z in zip(a.flats(), b.flats(), c.flats()):
            assert x.support == y.support == z.support
            assert x.subspace == y.subspace == z.subspace


class TestLocalization:
    def test_at_full_space_is_empty(self):
        arr = parse_arrangement_text(BOOLEAN3)
        lattice = build_lattice(arr)
        assert len(localization(arr, lattice.bottom())) == 0

    def test_at_hyperplane(self):
        arr = parse_arrangement_text(BOOLEAN3)
        lattice = build_lattice(arr)
        for flat in lattice.levels[1]:
            assert len(localization(arr, flat)) == 1

    def test_monomial_double_zero_flat(self):
        arr = monomial_arrangement(3, 1, 3)
        lattice = build_lattice(arr)
        x2 = subspace_from_forms(forms_of(["x1", "x2"], 3, 3))
        flat = lattice.flat_of(x2)
        local = localization(arr, flat)
        assert len(local) == 5  # x1, x2, and x1 - z^m x2 for m = 0, 1, 2

    def test_rejects_non_flat(self):
        d4 = exceptional_arrangement("D4")
        from hyparr.arrangement import Flat

        hb = subspace_from_forms([parse_form("b", 4, 1)])
        with pytest.raises(ValueError):
            localization(d4, Flat(hb, 0, 1))


class TestRestrictionDeletion:
    def test_boolean_restriction(self):
        arr = parse_arrangement_text(BOOLEAN3)
        res = restriction(arr, 0)
        assert res.ambient == 2 and len(res) == 2

    def test_restriction_bound(self):
        for name in ("D4", "G25"):
            arr = exceptional_arrangement(name)
            for h in range(len(arr)):
                assert len(restriction(arr, h)) <= len(arr) - 1

    def test_braid_restriction_collapses(self):
        braid = monomial_arrangement(1, 1, 3)
        for h in range(3):
            assert len(restriction(braid, h)) == 1

    def test_deletion(self):
        arr = make_arrangement(2, 1, forms_of(["a"], 2, 1))
        assert len(deletion(arr, 0)) == 0
        b2 = monomial_arrangement(2, 1, 2)
        assert len(deletion(b2, 0)) == 3
        with pytest.raises(IndexError):
            deletion(b2, 9)


class TestProduct:
    def test_product_with_empty_0_arrangement(self):
        d4 = exceptional_arrangement("D4")
        phi0 = make_arrangement(0, 1, [])
        assert product(d4, phi0) == d4
        assert product(phi0, d4).hyperplanes == d4.hyperplanes

    def test_counts_add(self):
        a = monomial_arrangement(2, 1, 2)
        b = monomial_arrangement(1, 1, 3)
        assert len(product(a, b)) == len(a) + len(b)

    def test_lattice_isomorphism_sizes(self):
        a = monomial_arrangement(2, 1, 2)
        b = monomial_arrangement(3, 3, 2)
        pl = build_lattice(product(a, b))
        la, lb = build_lattice(a), build_lattice(b)
        conv = [0] * (la.rank() + lb.rank() + 1)
        for i, x in enumerate(la.level_sizes()):
            for j, y in enumerate(lb.level_sizes()):
                conv[i + j] += x * y
        assert pl.level_sizes() == conv
        assert len(pl) == len(la) * len(lb)

    def test_mixed_fields_merge(self):
        a = monomial_arrangement(3, 1, 2)   # field order 3
        b = monomial_arrangement(4, 4, 2)   # field order 4
        pr = product(a, b)
        assert pr.order == 12
        assert len(pr) == len(a) + len(b)


class TestEssentialize:
    def test_essential_unchanged(self):
        d4 = exceptional_arrangement("D4")
        assert essentialize(d4) is d4

    def test_braid_essentialization(self):
        braid = monomial_arrangement(1, 1, 4)
        ess = essentialize(braid)
        assert ess.ambient == 3 and len(ess) == 6
        assert build_lattice(ess).level_sizes() == build_lattice(braid).level_sizes()

    def test_empty_to_zero_dimensions(self):
        phi = make_arrangement(5, 1, [])
        assert essentialize(phi).ambient == 0

    def test_lattice_size_invariant(self):
        rng = random.Random(7)
        from tests.conftest import random_arrangement

        checked = 0
        while checked < 25:
            arr = random_arrangement(rng, 3, 1, max_hyperplanes=4)
            ess = essentialize(arr)
            assert len(build_lattice(ess)) == len(build_lattice(arr))
            checked += 1


class TestIrreducibleDecomposition:
    def test_boolean_splits_completely(self):
        arr = parse_arrangement_text(BOOLEAN3)
        factors = irreducible_decomposition(arr)
        assert len(factors) == 3
        assert all(f.ambient == 1 and len(f) == 1 for f in factors)

    def test_b3_irreducible(self):
        assert len(irreducible_decomposition(monomial_arrangement(2, 1, 3))) == 1

    def test_built_product_splits(self):
        pr = product(monomial_arrangement(2, 1, 2),
                     essentialize(monomial_arrangement(1, 1, 3)))
        factors = irreducible_decomposition(pr)
        assert len(factors) == 2
        assert sorted(len(f) for f in factors) == [3, 4]

    def test_requires_essential(self):
        with pytest.raises(ValueError):
            irreducible_decomposition(monomial_arrangement(1, 1, 3))


class TestOracleEquivalence:
    """Randomized suite: the level-by-level construction agrees with the
    all-subsets oracle on >= 100 arrangements plus the named cases."""

    def test_randomized_suite(self):
        rng = random.Random(2024)
        from tests.conftest import random_arrangement

        checked = 0
        while checked < 110:
            order = rng.choice([1, 3])
            ambient = rng.randint(2, 4)
            arr = random_arrangement(rng, ambient, order, max_hyperplanes=8)
            fast = build_lattice(arr)
            slow = brute_force_lattice(arr)
            assert fast.level_sizes() == slow.level_sizes()
            assert {f.support for f in fast.flats()} == \
                   {f.support for f in slow.flats()}
            for f in fast.flats():
                assert slow.index[f.support].subspace == f.subspace
            checked += 1
        assert checked >= 100

    def test_named_cases(self):
        for arr in (parse_arrangement_text(BOOLEAN3), monomial_arrangement(1, 1, 4),
                    monomial_arrangement(2, 1, 3)):
            fast = build_lattice(arr)
            slow = brute_force_lattice(arr)
            assert fast.level_sizes() == slow.level_sizes()
            assert {f.support for f in fast.flats()} == \
                   {f.support for f in slow.flats()}


class TestLatticeProperties:
    """Property suites over pooled lattices; counters keep them >= 1000 cases."""

    def _pool(self):
        arrs = [exceptional_arrangement("D4"), monomial_arrangement(3, 1, 3),
                monomial_arrangement(2, 1, 3), monomial_arrangement(3, 3, 3)]
        return [(a, build_lattice(a)) for a in arrs]

    def test_intersection_closed(self):
        rng = random.Random(11)
        pool = self._pool()
        for _ in range(1000):
            arr, lattice = rng.choice(pool)
            flats = list(lattice.flats())
            x, y = rng.choice(flats), rng.choice(flats)
            both = intersect(x.subspace, y.subspace)
            assert in_lattice(arr, both)
            joined = lattice.join(x, y)
            assert joined.subspace == both

    def test_support_bijection_and_closure_monotone(self):
        pool = self._pool()
        for arr, lattice in pool:
            seen = {}
            for f in lattice.flats():
                assert f.support not in seen
                seen[f.support] = f
                again = closure(arr, f.subspace)
                assert again.support == f.support
                assert again.subspace == f.subspace

    def test_semimodular_inequality(self):
        rng = random.Random(12)
        pool = self._pool()
        cases = 0
        while cases < 1000:
            arr, lattice = rng.choice(pool)
            flats = list(lattice.flats())
            x, y = rng.choice(flats), rng.choice(flats)
            join = lattice.join(x, y)
            meet = lattice.meet(x, y)
            assert join.rank + meet.rank <= x.rank + y.rank
            cases += 1

    def test_meet_join_consistency(self):
        rng = random.Random(13)
        pool = self._pool()
        for _ in range(1000):
            arr, lattice = rng.choice(pool)
            flats = list(lattice.flats())
            x, y = rng.choice(flats), rng.choice(flats)
            meet = lattice.meet(x, y)
            # the meet is below both in lattice order (contains both subspaces)
            assert meet.support & x.support == meet.support
            assert meet.support & y.support == meet.support
            join = lattice.join(x, y)
            assert join.support & x.support == x.support
            assert join.support & y.support == y.support
