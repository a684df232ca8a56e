"""Central hyperplane arrangements and their intersection lattices.

Flats are keyed by support bitsets: a flat of a simple central arrangement is
determined by the set of hyperplanes containing it, and integer bitsets hash
far more cheaply than matrices.  The canonical RREF subspace is kept on every
flat for sum computations.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from math import lcm

from . import _kernel
from .cyclo import CyclotomicNumber, embed, field_context
from .errors import InvalidHyperplaneError, RefusalError
from .linalg import (LinearForm, Subspace, form_vanishes_on, full_space, intersect,
                     rref, subspace_from_rows, variable_names)

DEFAULT_MAX_FLATS = 500_000


class Arrangement:
    """An ordered, duplicate-free set of hyperplanes through the origin of C**l."""

    __slots__ = ("ambient", "order", "hyperplanes", "duplicates_removed")

    def __init__(self, ambient: int, order: int, hyperplanes: tuple[LinearForm, ...],
                 duplicates_removed: int = 0):
        self.ambient = ambient
        self.order = order
        self.hyperplanes = hyperplanes
        self.duplicates_removed = duplicates_removed

    def __len__(self):
        return len(self.hyperplanes)

    def __eq__(self, other):
        if not isinstance(other, Arrangement):
            return NotImplemented
        return (self.ambient == other.ambient and self.order == other.order
                and self.hyperplanes == other.hyperplanes)

    def __hash__(self):
        return hash((self.ambient, self.order, self.hyperplanes))

    def __repr__(self):
        return (f"Arrangement(ambient={self.ambient}, order={self.order}, "
                f"{len(self.hyperplanes)} hyperplanes)")

    def full_support(self) -> int:
        return (1 << len(self.hyperplanes)) - 1

    def hyperplane_set(self) -> frozenset[LinearForm]:
        return frozenset(self.hyperplanes)

    def center(self) -> Subspace:
        """T(A), the intersection of all hyperplanes (V for the empty arrangement)."""
        return subspace_from_rows([h.row for h in self.hyperplanes],
                                  self.ambient, self.order)

    def rank(self) -> int:
        return self.center().codim

    def is_essential(self) -> bool:
        return self.rank() == self.ambient


def make_arrangement(ambient: int, order: int, forms) -> Arrangement:
    """Normalize forms, drop exact scalar duplicates, keep first-seen order.

    Duplicates are dropped silently (the count is recorded on the result):
    legitimately different builders can regenerate the same hyperplane set.
    """
    seen: dict[tuple, LinearForm] = {}
    out: list[LinearForm] = []
    dropped = 0
    for f in forms:
        if not isinstance(f, LinearForm):
            raise TypeError("make_arrangement expects LinearForm values")
        if f.ambient != ambient or f.order != order:
            raise ValueError("all forms must share the ambient dimension and field order")
        if f.is_zero():
            raise InvalidHyperplaneError("the zero form does not define a hyperplane")
        g = f.normalized()
        if g.row in seen:
            dropped += 1
            continue
        seen[g.row] = g
        out.append(g)
    return Arrangement(ambient, order, tuple(out), dropped)


class Flat:
    """A lattice element: subspace, support bitset over hyperplane indices, rank."""

    __slots__ = ("subspace", "support", "rank")

    def __init__(self, subspace: Subspace, support: int, rank: int):
        self.subspace = subspace
        self.support = support
        self.rank = rank

    @property
    def dim(self) -> int:
        return self.subspace.dim

    def hyperplane_indices(self) -> list[int]:
        out = []
        s = self.support
        i = 0
        while s:
            if s & 1:
                out.append(i)
            s >>= 1
            i += 1
        return out

    def __eq__(self, other):
        if not isinstance(other, Flat):
            return NotImplemented
        return self.support == other.support and self.subspace == other.subspace

    def __hash__(self):
        return hash((self.support, self.subspace))

    def __repr__(self):
        return f"Flat(rank={self.rank}, support={self.support:b})"


def closure(arr: Arrangement, x: Subspace) -> Flat:
    """Smallest lattice element containing x: intersect every hyperplane over x.

    Membership test: x is a lattice element iff the closure has subspace x.
    """
    bits = 0
    rows = []
    for i, h in enumerate(arr.hyperplanes):
        if form_vanishes_on(h, x):
            bits |= 1 << i
            rows.append(h.row)
    if not rows:
        return Flat(full_space(arr.ambient, arr.order), 0, 0)
    sub = subspace_from_rows(rows, arr.ambient, arr.order)
    return Flat(sub, bits, sub.codim)


def in_lattice(arr: Arrangement, x: Subspace) -> bool:
    return closure(arr, x).subspace == x


class IntersectionLattice:
    """All intersections of subsets of the arrangement, graded by codimension.

    ``levels[k]`` lists the rank-k flats sorted by support bitset; ``index``
    maps each support to its flat.
    """

    __slots__ = ("arrangement", "levels", "index")

    def __init__(self, arrangement: Arrangement, levels: tuple[tuple[Flat, ...], ...]):
        self.arrangement = arrangement
        self.levels = levels
        self.index: dict[int, Flat] = {}
        for level in levels:
            for f in level:
                self.index[f.support] = f

    def flats(self):
        for level in self.levels:
            yield from level

    def __len__(self):
        return sum(len(level) for level in self.levels)

    def level_sizes(self) -> list[int]:
        return [len(level) for level in self.levels]

    def rank(self) -> int:
        return len(self.levels) - 1

    def top(self) -> Flat:
        return self.levels[-1][0] if len(self.levels[-1]) == 1 else max(
            self.levels[-1], key=lambda f: f.rank)

    def bottom(self) -> Flat:
        return self.levels[0][0]

    def flat_of(self, sub: Subspace) -> Flat | None:
        """The flat with exactly this subspace, or None if it is not a flat."""
        hit = closure(self.arrangement, sub)
        if hit.subspace != sub:
            return None
        return self.index[hit.support]

    def meet(self, x: Flat, y: Flat) -> Flat:
        """Greatest lower bound: the flat supported on the common hyperplanes."""
        return self.index[x.support & y.support]

    def join(self, x: Flat, y: Flat) -> Flat:
        """Least upper bound: the flat of the subspace intersection."""
        hit = self.index.get(x.support | y.support)
        if hit is not None:
            return hit
        return closure(self.arrangement, intersect(x.subspace, y.subspace))

    def sum_membership(self, x: Flat, y: Flat) -> tuple[bool, Flat]:
        """Whether x + y is again a flat, plus the closure of x + y.

        The closure of x + y is the meet flat: a hyperplane contains x + y
        exactly when it contains both x and y.  The sum is a lattice element
        iff its dimension matches that closure's dimension.
        """
        arr = self.arrangement
        s = x.support & y.support
        meet = self.index[s]
        if s == x.support or s == y.support:
            # one flat contains the other; the sum is the larger subspace
            return True, meet
        dim_cap = min(x.dim + y.dim, arr.ambient)
        if meet.dim > dim_cap:
            return False, meet
        ctx = field_context(arr.order)
        r = _kernel.rank(list(x.subspace.rows + y.subspace.rows), arr.ambient,
                         ctx.degree, ctx.red)
        dim_sum = x.dim + y.dim - (arr.ambient - r)
        return dim_sum == meet.dim, meet


def _children_of(arr: Arrangement, parent: Flat, seen: dict, ctx) -> list[Flat]:
    """Distinct covers of one flat: closures of parent intersected with each
    hyperplane outside its support.  ``seen`` dedupes across parents."""
    n = len(arr.hyperplanes)
    ambient = arr.ambient
    found: list[Flat] = []
    covered = parent.support
    rows = parent.subspace.rows
    full = arr.full_support()
    for h in range(n):
        bit = 1 << h
        if covered & bit:
            continue
        sub_rows, pivots = _kernel.rref(list(rows) + [arr.hyperplanes[h].row],
                                        ambient, ctx.degree, ctx.red, ctx.phi)
        flat = seen.get(sub_rows)
        if flat is None:
            bits = parent.support | bit
            if len(sub_rows) == ambient:
                bits = full
            else:
                sub = Subspace(ambient, arr.order, sub_rows, pivots)
                for h2 in range(n):
                    b2 = 1 << h2
                    if not (bits & b2) and form_vanishes_on(arr.hyperplanes[h2], sub):
                        bits |= b2
            flat = Flat(Subspace(ambient, arr.order, sub_rows, pivots), bits,
                        len(sub_rows))
            seen[sub_rows] = flat
        found.append(flat)
        covered |= flat.support
    return found


def build_lattice(arr: Arrangement, max_flats: int = DEFAULT_MAX_FLATS,
                  threads: int = 1) -> IntersectionLattice:
    """Breadth-first lattice construction, level by level.

    Rank k+1 flats are the closures of (rank-k flat) intersected with each
    hyperplane outside its support, deduplicated by support; each level is
    sorted by support bitset, so the result is deterministic (and identical
    for any worker count).
    """
    ctx = field_context(arr.order)
    bottom = Flat(full_space(arr.ambient, arr.order), 0, 0)
    levels: list[tuple] = [(bottom,)]
    total = 1
    current: tuple = (bottom,)
    while current:
        seen: dict = {}
        if threads > 1 and len(current) > 1:
            nthreads = min(threads, len(current))
            chunks = [list(current[i::nthreads]) for i in range(nthreads)]

            def work(chunk):
                local: dict = {}
                for parent in chunk:
                    _children_of(arr, parent, local, ctx)
                return local

            with ThreadPoolExecutor(max_workers=nthreads) as pool:
                results = list(pool.map(work, chunks))
            merged: dict[int, Flat] = {}
            for local in results:
                for flat in local.values():
                    merged.setdefault(flat.support, flat)
            children = merged
        else:
            for parent in current:
                _children_of(arr, parent, seen, ctx)
            children = {flat.support: flat for flat in seen.values()}
        if not children:
            break
        level = tuple(children[s] for s in sorted(children))
        total += len(level)
        if total > max_flats:
            raise RefusalError(
                f"intersection lattice exceeds the flat budget ({max_flats}); "
                "raise --max-flats to proceed")
        levels.append(level)
        current = level
    return IntersectionLattice(arr, tuple(levels))


def brute_force_lattice(arr: Arrangement) -> IntersectionLattice:
    """All-subsets oracle: intersect every subset of hyperplanes, deduplicate.

    Exponential in the number of hyperplanes; kept as an independent test
    oracle for build_lattice, not for production use.
    """
    n = len(arr.hyperplanes)
    if n > 22:
        raise RefusalError("the all-subsets oracle is limited to 22 hyperplanes")
    by_sub: dict[Subspace, int] = {}
    by_sub[full_space(arr.ambient, arr.order)] = 0
    for mask in range(1, 1 << n):
        rows = [arr.hyperplanes[i].row for i in range(n) if mask & (1 << i)]
        sub = subspace_from_rows(rows, arr.ambient, arr.order)
        by_sub[sub] = by_sub.get(sub, 0) | mask
    ranks: dict[int, dict[int, Flat]] = {}
    for sub, bits in by_sub.items():
        flat = Flat(sub, bits, sub.codim)
        ranks.setdefault(sub.codim, {})[bits] = flat
    levels = []
    for k in range(max(ranks) + 1):
        level = ranks.get(k, {})
        levels.append(tuple(level[s] for s in sorted(level)))
    return IntersectionLattice(arr, tuple(levels))


def localization(arr: Arrangement, x: Flat) -> Arrangement:
    """The subarrangement of hyperplanes containing x, in the ambient space."""
    check = closure(arr, x.subspace)
    if check.subspace != x.subspace or check.support != x.support:
        raise ValueError("localization requires a flat of this arrangement")
    forms = [arr.hyperplanes[i] for i in x.hyperplane_indices()]
    return Arrangement(arr.ambient, arr.order, tuple(forms))


def deletion(arr: Arrangement, h: int) -> Arrangement:
    if not 0 <= h < len(arr.hyperplanes):
        raise IndexError(f"hyperplane index {h} out of range")
    forms = arr.hyperplanes[:h] + arr.hyperplanes[h + 1:]
    return Arrangement(arr.ambient, arr.order, forms)


def restriction(arr: Arrangement, h: int) -> Arrangement:
    """The arrangement {H' .cap. H} inside the hyperplane H, in l-1 coordinates.

    Coordinates on H come from its deterministic solution basis; parallel
    restrictions collapse, so the result can be strictly smaller than |A|-1.
    """
    if not 0 <= h < len(arr.hyperplanes):
        raise IndexError(f"hyperplane index {h} out of range")
    ctx = field_context(arr.order)
    hsub = subspace_from_rows([arr.hyperplanes[h].row], arr.ambient, arr.order)
    basis = hsub.basis()
    m = arr.ambient
    forms = []
    for i, other in enumerate(arr.hyperplanes):
        if i == h:
            continue
        coeffs = [CyclotomicNumber(arr.order, *_kernel.dot(other.row, b, m, ctx.degree,
                                                           ctx.red))
                  for b in basis]
        forms.append(LinearForm.from_coefficients(coeffs, arr.order))
    return make_arrangement(arr.ambient - 1, arr.order, forms)


def _embed_form(f: LinearForm, order: int, left_pad: int, right_pad: int) -> LinearForm:
    zero = CyclotomicNumber.zero(order)
    coeffs = ([zero] * left_pad
              + [embed(c, order) for c in f.coefficients()]
              + [zero] * right_pad)
    return LinearForm.from_coefficients(coeffs, order)


def product(a1: Arrangement, a2: Arrangement) -> Arrangement:
    """The product arrangement in the direct sum of the two ambient spaces."""
    order = lcm(a1.order, a2.order)
    forms = [_embed_form(h, order, 0, a2.ambient) for h in a1.hyperplanes]
    forms += [_embed_form(h, order, a1.ambient, 0) for h in a2.hyperplanes]
    return make_arrangement(a1.ambient + a2.ambient, order, forms)


def essentialize(arr: Arrangement) -> Arrangement:
    """An essential arrangement with the same lattice, in r(A) coordinates.

    New coordinates are the RREF rows of the span of all hyperplane normals,
    i.e. the defining forms of the center T(A); each hyperplane form factors
    through them with a unique coefficient vector.
    """
    rows, pivots = rref([h.row for h in arr.hyperplanes], arr.ambient, arr.order)
    r = len(rows)
    if r == arr.ambient:
        return arr
    forms = []
    for h in arr.hyperplanes:
        coeffs = [h.coefficient(p) for p in pivots]
        forms.append(LinearForm.from_coefficients(coeffs, arr.order))
    return make_arrangement(r, arr.order, forms)


def irreducible_decomposition(arr: Arrangement) -> list[Arrangement]:
    """Finest factorization of an essential arrangement as a product.

    Express every normal over a basis of normals; two basis directions belong
    to one factor when some normal uses both.  The connected blocks of that
    relation span complementary coordinate subspaces and each hyperplane lives
    in exactly one block.
    """
    if not arr.is_essential():
        raise ValueError("irreducible_decomposition requires an essential arrangement")
    n = arr.ambient
    if n == 0:
        return []
    # Greedy basis of normals, in arrangement order.
    basis_rows: list = []
    state: tuple = ((), ())
    for h in arr.hyperplanes:
        ctx = field_context(arr.order)
        if not _kernel.in_rowspace(h.row, state[0], state[1], n, ctx.degree, ctx.red):
            basis_rows.append(h.row)
            state = rref(basis_rows, n, arr.order)
            if len(basis_rows) == n:
                break
    # Invert the basis matrix via an augmented RREF.
    aug = []
    for i, row in enumerate(basis_rows):
        nums, den = row
        d = field_context(arr.order).degree
        ext = list(nums) + [0] * (n * d)
        ext[(n + i) * d] = den
        aug.append(_kernel.row_norm(ext, den))
    ctx = field_context(arr.order)
    inv_rows, inv_piv = _kernel.rref(aug, 2 * n, ctx.degree, ctx.red, ctx.phi)
    assert inv_piv[:n] == tuple(range(n)), "basis matrix failed to invert"
    inv = [[_row_entry_cy(arr.order, row, n + j) for j in range(n)] for row in inv_rows]

    def coords(form: LinearForm) -> list[CyclotomicNumber]:
        cs = form.coefficients()
        return [sum((cs[k] * inv[k][j] for k in range(n)),
                    CyclotomicNumber.zero(arr.order)) for j in range(n)]

    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    all_coords = []
    for h in arr.hyperplanes:
        c = coords(h)
        supp = [j for j in range(n) if not c[j].is_zero()]
        all_coords.append((c, supp))
        for j in supp[1:]:
            a, b = find(supp[0]), find(j)
            if a != b:
                parent[b] = a
    blocks: dict[int, list[int]] = {}
    for j in range(n):
        blocks.setdefault(find(j), []).append(j)
    ordered = sorted(blocks.values(), key=min)
    factors = []
    for block in ordered:
        cols = sorted(block)
        forms = []
        for (c, supp) in all_coords:
            if supp and find(supp[0]) == find(cols[0]):
                forms.append(LinearForm.from_coefficients([c[j] for j in cols],
                                                          arr.order))
        factors.append(make_arrangement(len(cols), arr.order, forms))
    assert sum(f.ambient for f in factors) == n
    assert sum(len(f) for f in factors) == len(arr)
    return factors


def _row_entry_cy(order: int, row, j: int) -> CyclotomicNumber:
    d = field_context(order).degree
    return CyclotomicNumber.from_coords(order, row[0][j * d:(j + 1) * d], row[1])


def arrangement_to_text(arr: Arrangement) -> str:
    """The on-disk arrangement format: header line, then one form per line."""
    names = variable_names(arr.ambient)
    lines = [f"ambient {arr.ambient} field {arr.order}"]
    from .linalg import form_to_str

    lines += [form_to_str(h, names) for h in arr.hyperplanes]
    return "\n".join(lines) + "\n"
