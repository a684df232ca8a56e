"""Canonical exact linear algebra over Q(zeta_n).

Subspaces of C**l are stored by their defining linear forms in reduced row
echelon form, so two values describe the same subspace exactly when their
matrices are identical.  Lattice elements arise as intersections of
hyperplanes, which makes stacking forms the cheap direction; sums pay the
basis-conversion cost instead.
"""

from __future__ import annotations

from fractions import Fraction

from . import _kernel
from .cyclo import CyclotomicNumber, field_context

Row = tuple[tuple[int, ...], int]


def variable_names(ambient: int) -> list[str]:
    """Display names: a, b, c, d in small dimension, x1..xl otherwise."""
    if ambient <= 4:
        return ["a", "b", "c", "d"][:ambient]
    return [f"x{j + 1}" for j in range(ambient)]


def _row_entry(row: Row, j: int, order: int) -> CyclotomicNumber:
    d = field_context(order).degree
    return CyclotomicNumber.from_coords(order, row[0][j * d:(j + 1) * d], row[1])


def _pack_row(coeffs: list[CyclotomicNumber], order: int) -> Row:
    den = 1
    for c in coeffs:
        den = den * c.den
    nums: list[int] = []
    d = field_context(order).degree
    for c in coeffs:
        s = den // c.den
        nums.extend(v * s for v in c.nums)
    assert len(nums) == len(coeffs) * d
    return _kernel.row_norm(nums, den)


def _scale_row(row: Row, factor: CyclotomicNumber, order: int) -> Row:
    ctx = field_context(order)
    d = ctx.degree
    nums, den = row
    m = len(nums) // d
    out: list[int] = []
    for j in range(m):
        out.extend(_kernel.poly_mulreduce(factor.nums, nums[j * d:(j + 1) * d], d, ctx.red))
    return _kernel.row_norm(out, den * factor.den)


class LinearForm:
    """A nonzero linear form on C**l, normalized to leading coefficient 1."""

    __slots__ = ("ambient", "order", "row")

    def __init__(self, ambient: int, order: int, row: Row):
        self.ambient = ambient
        self.order = order
        self.row = row

    @staticmethod
    def from_coefficients(coeffs, order: int | None = None) -> LinearForm:
        coeffs = list(coeffs)
        if order is None:
            order = coeffs[0].order
        coeffs = [c if isinstance(c, CyclotomicNumber)
                  else CyclotomicNumber.from_rational(c, order) for c in coeffs]
        row = _pack_row(coeffs, order)
        form = LinearForm(len(coeffs), order, row)
        if form.is_zero():
            raise ValueError("a linear form must have a nonzero coefficient")
        return form.normalized()

    def is_zero(self) -> bool:
        return not any(self.row[0])

    def leading_index(self) -> int:
        d = field_context(self.order).degree
        nums = self.row[0]
        for j in range(self.ambient):
            if any(nums[j * d:(j + 1) * d]):
                return j
        raise ValueError("zero form has no leading coefficient")

    def normalized(self) -> LinearForm:
        lead = self.coefficient(self.leading_index())
        if lead.is_one():
            return self
        return LinearForm(self.ambient, self.order,
                          _scale_row(self.row, lead.inverse(), self.order))

    def coefficient(self, j: int) -> CyclotomicNumber:
        return _row_entry(self.row, j, self.order)

    def coefficients(self) -> list[CyclotomicNumber]:
        return [self.coefficient(j) for j in range(self.ambient)]

    def __eq__(self, other):
        if not isinstance(other, LinearForm):
            return NotImplemented
        return (self.ambient == other.ambient and self.order == other.order
                and self.row == other.row)

    def __hash__(self):
        return hash((self.ambient, self.order, self.row))

    def __str__(self):
        return form_to_str(self)

    def __repr__(self):
        return f"LinearForm({self!s})"


def form_to_str(form: LinearForm, names: list[str] | None = None) -> str:
    """Render a form in the expression syntax, e.g. 'a - 2*(z^2+z^3+1)*b'."""
    names = names or variable_names(form.ambient)
    parts: list[str] = []
    for j in range(form.ambient):
        c = form.coefficient(j)
        if c.is_zero():
            continue
        negative = False
        if c.is_rational() and c.nums[0] < 0:
            negative = True
            c = -c
        text = str(c)
        if text == "1":
            body = names[j]
        elif " + " in text or " - " in text or text.startswith("-"):
            body = f"({text})*{names[j]}"
        else:
            body = f"{text}*{names[j]}"
        if not parts:
            parts.append(f"-{body}" if negative else body)
        else:
            parts.append(f" - {body}" if negative else f" + {body}")
    return "".join(parts) or "0"


class Subspace:
    """A linear subspace of C**l: defining forms in canonical RREF."""

    __slots__ = ("ambient", "order", "rows", "pivots", "_basis")

    def __init__(self, ambient: int, order: int, rows: tuple[Row, ...],
                 pivots: tuple[int, ...]):
        self.ambient = ambient
        self.order = order
        self.rows = rows
        self.pivots = pivots
        self._basis: tuple[Row, ...] | None = None

    @property
    def codim(self) -> int:
        return len(self.rows)

    @property
    def dim(self) -> int:
        return self.ambient - len(self.rows)

    def is_full_space(self) -> bool:
        return not self.rows

    def is_origin(self) -> bool:
        return len(self.rows) == self.ambient

    def basis(self) -> tuple[Row, ...]:
        """Deterministic solution basis (one vector per free column)."""
        if self._basis is None:
            ctx = field_context(self.order)
            self._basis = _kernel.nullspace(self.rows, self.pivots, self.ambient,
                                            ctx.degree, ctx.red)
        return self._basis

    def defining_forms(self) -> list[LinearForm]:
        return [LinearForm(self.ambient, self.order, r).normalized() for r in self.rows]

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.ambient == other.ambient and self.order == other.order
                and self.rows == other.rows)

    def __hash__(self):
        return hash((self.ambient, self.order, self.rows))

    def __repr__(self):
        inside = "; ".join(str(f) for f in self.defining_forms()) or "full space"
        return f"Subspace({self.ambient}, codim {self.codim}: {inside})"


def rref(rows: list[Row], ambient: int, order: int) -> tuple[tuple[Row, ...], tuple[int, ...]]:
    """Canonical reduced row echelon form of packed rows."""
    ctx = field_context(order)
    return _kernel.rref(rows, ambient, ctx.degree, ctx.red, ctx.phi)


def subspace_from_rows(rows, ambient: int, order: int) -> Subspace:
    out, pivots = rref(list(rows), ambient, order)
    return Subspace(ambient, order, out, pivots)


def subspace_from_forms(forms, ambient: int | None = None, order: int | None = None) -> Subspace:
    """Common kernel of the given forms; the empty list yields the full space."""
    forms = list(forms)
    if forms:
        ambient = forms[0].ambient if ambient is None else ambient
        order = forms[0].order if order is None else order
        for f in forms:
            if f.ambient != ambient or f.order != order:
                raise ValueError("forms must share ambient dimension and field order")
    elif ambient is None or order is None:
        raise ValueError("ambient and order are required for an empty form list")
    return subspace_from_rows([f.row for f in forms], ambient, order)


def full_space(ambient: int, order: int) -> Subspace:
    return Subspace(ambient, order, (), ())


def intersect(x: Subspace, y: Subspace) -> Subspace:
    """Canonical form of the set intersection: RREF of the stacked forms."""
    _check_compatible(x, y)
    if not y.rows:
        return x
    if not x.rows:
        return y
    return subspace_from_rows(x.rows + y.rows, x.ambient, x.order)


def subspace_sum(x: Subspace, y: Subspace) -> Subspace:
    """The subspace x + y: annihilate the combined span of both solution sets."""
    _check_compatible(x, y)
    if not x.rows or not y.rows:
        return full_space(x.ambient, x.order)
    ctx = field_context(x.order)
    span, pivots = rref(list(x.basis() + y.basis()), x.ambient, x.order)
    forms = _kernel.nullspace(span, pivots, x.ambient, ctx.degree, ctx.red)
    return subspace_from_rows(forms, x.ambient, x.order)


def contains(x: Subspace, y: Subspace) -> bool:
    """Whether y is a subset of x as point sets."""
    _check_compatible(x, y)
    ctx = field_context(x.order)
    return all(_kernel.in_rowspace(r, y.rows, y.pivots, x.ambient, ctx.degree, ctx.red)
               for r in x.rows)


def form_vanishes_on(form: LinearForm, s: Subspace) -> bool:
    """Whether the hyperplane of ``form`` contains the subspace ``s``."""
    ctx = field_context(form.order)
    return _kernel.in_rowspace(form.row, s.rows, s.pivots, form.ambient,
                               ctx.degree, ctx.red)


def stacked_rank(x: Subspace, y: Subspace) -> int:
    """Rank of the two subspaces' defining forms stacked together."""
    ctx = field_context(x.order)
    return _kernel.rank(list(x.rows + y.rows), x.ambient, ctx.degree, ctx.red)


def _check_compatible(x: Subspace, y: Subspace) -> None:
    if x.ambient != y.ambient:
        raise ValueError(f"ambient dimension mismatch: {x.ambient} vs {y.ambient}")
    if x.order != y.order:
        raise ValueError(f"field order mismatch: {x.order} vs {y.order}")


def rational_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}" if q.denominator != 1 else str(q.numerator)
