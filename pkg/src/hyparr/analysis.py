"""Modularity detection, supersolvability certificates, and lattice invariants.

A flat X is treated as modular when X + Y is again a lattice element for
every flat Y; that sum-membership characterization needs only subspace sums
and closures, no lattice complements.  Scans run in the deterministic flat
order (rank, then support bitset), so witnesses are reproducible.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .arrangement import (Arrangement, Flat, IntersectionLattice, build_lattice,
                          closure, essentialize, irreducible_decomposition)
from .errors import InternalInconsistencyError, RefusalError
from .linalg import LinearForm, Subspace, subspace_from_forms, subspace_sum


@dataclass
class ModularityVerdict:
    """Outcome of testing one flat: modular, or a failing partner with the sum."""

    flat: Flat
    modular: bool
    witness: tuple[Flat, Subspace] | None = None


@dataclass
class Refutation:
    """Why no maximal modular chain exists.

    ``empty-rank``: some rank has no modular flat at all (one re-checkable
    witness per flat of that rank).  ``no-chain``: every rank has modular
    flats but none of them nest into a full chain.
    """

    kind: str
    rank: int | None = None
    witnesses: list[ModularityVerdict] = field(default_factory=list)
    modular_counts: dict[int, int] = field(default_factory=dict)


@dataclass
class SupersolvabilityCertificate:
    verdict: bool
    arrangement: Arrangement
    lattice: IntersectionLattice
    essentialized: bool
    chain: list[Flat] | None = None
    refutation: Refutation | None = None


@dataclass
class PoincarePolynomial:
    """Integer coefficients, ascending; constant term 1, degree = rank."""

    coefficients: tuple[int, ...]

    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __str__(self):
        parts = []
        for k, c in enumerate(self.coefficients):
            if c == 0:
                continue
            if k == 0:
                parts.append(str(c))
            else:
                t = "t" if k == 1 else f"t^{k}"
                parts.append(t if c == 1 else f"{c}*{t}")
        return " + ".join(parts) or "0"


def _require_flat(lattice: IntersectionLattice, x: Flat) -> Flat:
    hit = lattice.index.get(x.support)
    if hit is None or hit.subspace != x.subspace:
        raise ValueError("the given flat does not belong to this lattice")
    return hit


def is_modular(arr: Arrangement, lattice: IntersectionLattice, x: Flat) -> ModularityVerdict:
    """Scan every lattice element Y for X + Y outside the lattice.

    Exits on the first failing Y (deterministic order) and certifies it by an
    explicit sum subspace whose closure is strictly larger.
    """
    x = _require_flat(lattice, x)
    for y in lattice.flats():
        member, meet = lattice.sum_membership(x, y)
        if not member:
            total = subspace_sum(x.subspace, y.subspace)
            check = closure(arr, total)
            if check.subspace == total or check.support != meet.support:
                raise InternalInconsistencyError(
                    "fast membership test disagrees with the closure certificate")
            return ModularityVerdict(x, False, (y, total))
    return ModularityVerdict(x, True, None)


def modular_flats_of_rank(arr: Arrangement, lattice: IntersectionLattice, rank: int,
                          threads: int = 1) -> list[ModularityVerdict]:
    """One verdict per rank-``rank`` flat, in deterministic flat order."""
    if not 0 <= rank <= lattice.rank():
        raise ValueError(f"rank {rank} out of range 0..{lattice.rank()}")
    flats = lattice.levels[rank]
    if threads > 1 and len(flats) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(lambda f: is_modular(arr, lattice, f), flats))
    return [is_modular(arr, lattice, f) for f in flats]


def _hyperplane_flat(lattice: IntersectionLattice, support_bit_holder: Flat) -> Flat:
    lowest = support_bit_holder.support & -support_bit_holder.support
    return lattice.index[lowest]


def is_supersolvable(arr: Arrangement, lattice: IntersectionLattice | None = None,
                     max_flats: int | None = None, threads: int = 1
                     ) -> SupersolvabilityCertificate:
    """Search for a maximal chain of modular flats with ranks 0..r(A).

    Non-essential input is essentialized first (recorded on the certificate).
    The full space, the center, and the rank-1 flats are always modular, so
    only the interior ranks are scanned; the scan stops at the first rank
    with no modular flat, which already refutes.
    """
    ess = essentialize(arr)
    essentialized = ess.ambient != arr.ambient
    if essentialized or lattice is None:
        kwargs = {} if max_flats is None else {"max_flats": max_flats}
        lattice = build_lattice(ess, threads=threads, **kwargs)
    r = lattice.rank()
    bottom = lattice.bottom()
    if r == 0:
        return SupersolvabilityCertificate(True, ess, lattice, essentialized, [bottom])
    top = lattice.top()
    if r <= 2:
        chain = [bottom, lattice.levels[1][0]]
        if r == 2:
            chain.append(top)
        return SupersolvabilityCertificate(True, ess, lattice, essentialized, chain)

    modular_by_rank: dict[int, list[Flat]] = {}
    counts: dict[int, int] = {0: 1, 1: len(lattice.levels[1]), r: 1}
    for k in range(2, r):
        verdicts = modular_flats_of_rank(ess, lattice, k, threads=threads)
        mods = [v.flat for v in verdicts if v.modular]
        counts[k] = len(mods)
        if not mods:
            refutation = Refutation("empty-rank", rank=k, witnesses=verdicts)
            return SupersolvabilityCertificate(False, ess, lattice, essentialized,
                                               None, refutation)
        modular_by_rank[k] = mods

    # Depth-first chain search through the interior modular flats; a chain
    # X2 < X3 < ... < X_{r-1} extends to a full chain with any hyperplane
    # below X2, the full space, and the center.
    def extend(current: Flat, k: int, acc: list[Flat]):
        if k == r:
            return acc
        for cand in modular_by_rank[k]:
            if cand.support & current.support == current.support:
                hit = extend(cand, k + 1, acc + [cand])
                if hit is not None:
                    return hit
        return None

    chain_interior = None
    for start in modular_by_rank[2]:
        chain_interior = extend(start, 3, [start]) if r > 3 else [start]
        if chain_interior is not None:
            break
    if chain_interior is None:
        refutation = Refutation("no-chain", modular_counts=counts)
        return SupersolvabilityCertificate(False, ess, lattice, essentialized,
                                           None, refutation)
    chain = [bottom, _hyperplane_flat(lattice, chain_interior[0])]
    chain += chain_interior
    chain.append(top)
    return SupersolvabilityCertificate(True, ess, lattice, essentialized, chain)


def validate_certificate(cert: SupersolvabilityCertificate) -> bool:
    """Re-check a certificate from scratch: chains flat by flat, witnesses by
    closure.  Used by the verification suites; independent of the search."""
    arr, lattice = cert.arrangement, cert.lattice
    if cert.verdict:
        chain = cert.chain or []
        if [f.rank for f in chain] != list(range(lattice.rank() + 1)):
            return False
        for prev, nxt in zip(chain, chain[1:]):
            if nxt.support & prev.support != prev.support:
                return False
        return all(is_modular(arr, lattice, f).modular for f in chain)
    ref = cert.refutation
    if ref is None:
        return False
    if ref.kind == "empty-rank":
        if any(v.modular for v in ref.witnesses):
            return False
        if len(ref.witnesses) != len(lattice.levels[ref.rank]):
            return False
        for v in ref.witnesses:
            y, total = v.witness
            if closure(arr, total).subspace == total:
                return False
            if subspace_sum(v.flat.subspace, y.subspace) != total:
                return False
        return True
    return ref.kind == "no-chain"


def mobius(lattice: IntersectionLattice) -> dict[Flat, int]:
    """Moebius values from the bottom element, by the standard top-down
    recursion over the containment order (support bitset inclusion)."""
    by_support: dict[int, int] = {}
    ordered: list[tuple[int, list[Flat]]] = [(k, list(level))
                                             for k, level in enumerate(lattice.levels)]
    values: dict[int, int] = {}
    for k, level in ordered:
        for x in level:
            if k == 0:
                values[x.support] = 1
                continue
            acc = 0
            sx = x.support
            for k2, level2 in ordered:
                if k2 >= k:
                    break
                for y in level2:
                    if y.support & sx == y.support:
                        acc += values[y.support]
            values[sx] = -acc
    return {f: values[f.support] for f in lattice.flats()}


def poincare(arr: Arrangement, lattice: IntersectionLattice) -> PoincarePolynomial:
    """Sum of mu(X) * (-t)**rank(X) over the lattice; coefficients are the
    unsigned per-rank Moebius sums."""
    mu = mobius(lattice)
    coeffs = [0] * (lattice.rank() + 1)
    for f, value in mu.items():
        coeffs[f.rank] += value * (-1) ** f.rank
    poly = PoincarePolynomial(tuple(coeffs))
    if coeffs[0] != 1 or any(c <= 0 for c in coeffs):
        raise InternalInconsistencyError(
            f"Poincare coefficients must be positive with constant term 1: {coeffs}")
    if lattice.rank() >= 1 and coeffs[1] != len(lattice.levels[1]):
        raise InternalInconsistencyError("linear coefficient must count the hyperplanes")
    return poly


def exponents_from_poincare(poly: PoincarePolynomial) -> list[int]:
    """Factor the polynomial as a product of (1 + b t) with positive integer b.

    Peels integer roots off the reversed (monic) polynomial in increasing
    order, so the result is the sorted multiset of exponents.
    """
    # The ascending coefficients of the polynomial, read as descending, are
    # exactly the monic reversed polynomial t^r * p(1/t); its roots are -b_i.
    rev = list(poly.coefficients)
    out: list[int] = []
    while len(rev) > 1:
        const = rev[-1]
        b = 1
        found = False
        while b <= abs(const):
            if const % b == 0:
                value = 0
                for c in rev:
                    value = value * (-b) + c
                if value == 0:
                    # synthetic division by (t + b)
                    quot: list[int] = []
                    for c in rev[:-1]:
                        quot.append(c if not quot else c - quot[-1] * b)
                    rev = quot
                    out.append(b)
                    found = True
                    break
            b += 1
        if not found:
            raise InternalInconsistencyError(
                f"polynomial {poly} does not factor over the integers")
    return sorted(out)


def exponents_if_supersolvable(arr: Arrangement,
                               cert: SupersolvabilityCertificate | None = None) -> list[int]:
    """The multiset {b_i} with poincare = prod(1 + b_i t); refuses when the
    arrangement is not supersolvable (the factorization is only guaranteed
    there)."""
    if cert is None:
        cert = is_supersolvable(arr)
    if not cert.verdict:
        raise RefusalError("exponents are only defined here for supersolvable "
                           "arrangements")
    poly = poincare(cert.arrangement, cert.lattice)
    return exponents_from_poincare(poly)


@dataclass
class Rank2Report:
    """Both sides of the rank-2 criterion, computed independently."""

    supersolvable: bool
    modular_rank2_count: int
    agree: bool
    certificate: SupersolvabilityCertificate
    modular_rank2: list[Flat]


def check_rank2_criterion(arr: Arrangement, lattice: IntersectionLattice | None = None,
                          threads: int = 1,
                          cert: SupersolvabilityCertificate | None = None) -> Rank2Report:
    """Supersolvability versus existence of a modular rank-2 flat.

    Refuses reducible input: a product of a supersolvable and a
    non-supersolvable arrangement has modular flats of every rank while not
    being supersolvable, so the equivalence only concerns irreducible ones.
    The rank-2 scan always runs in full, independently of the chain search.
    """
    ess = essentialize(arr)
    factors = irreducible_decomposition(ess)
    if len(factors) != 1:
        raise RefusalError(
            f"the rank-2 criterion applies to irreducible arrangements only; "
            f"this one splits into {len(factors)} factors")
    if ess.rank() < 2:
        raise RefusalError("the rank-2 criterion needs rank at least 2")
    if cert is None:
        if lattice is None or ess.ambient != arr.ambient:
            lattice = build_lattice(ess, threads=threads)
        cert = is_supersolvable(ess, lattice, threads=threads)
    verdicts = modular_flats_of_rank(cert.arrangement, cert.lattice, 2, threads=threads)
    mods = [v.flat for v in verdicts if v.modular]
    return Rank2Report(cert.verdict, len(mods), cert.verdict == bool(mods), cert, mods)


@dataclass
class WitnessReplay:
    """Re-execution of one explicit sum-goes-outside-the-lattice equation."""

    passed: bool
    x: Subspace
    y: Subspace
    total: Subspace
    expected: Subspace | None
    sum_matches_expected: bool | None
    sum_outside_lattice: bool
    inputs_are_flats: bool
    message: str


def replay_witness(arr: Arrangement, x_forms: list[LinearForm],
                   y_forms: list[LinearForm],
                   expected_form: LinearForm | None) -> WitnessReplay:
    """Check that X + Y equals the expected hyperplane (when given) and that
    the sum is certified outside the lattice by its closure."""
    x = subspace_from_forms(x_forms, arr.ambient, arr.order)
    y = subspace_from_forms(y_forms, arr.ambient, arr.order)
    total = subspace_sum(x, y)
    inputs_ok = (closure(arr, x).subspace == x and closure(arr, y).subspace == y)
    expected = None
    matches: bool | None = None
    if expected_form is not None:
        expected = subspace_from_forms([expected_form], arr.ambient, arr.order)
        matches = (total == expected)
    outside = closure(arr, total).subspace != total
    passed = outside and inputs_ok and (matches is not False)
    parts = []
    if not inputs_ok:
        parts.append("X or Y is not a lattice element")
    if matches is False:
        parts.append(f"sum {total!r} differs from expected {expected!r}")
    if not outside:
        parts.append(f"sum {total!r} lies in the lattice")
    message = "; ".join(parts) if parts else "ok"
    return WitnessReplay(passed, x, y, total, expected, matches, outside,
                         inputs_ok, message)
