"""Exact arithmetic in cyclotomic fields Q(zeta_n).

A field element is stored in the power basis 1, zeta, ..., zeta**(phi(n)-1)
modulo the n-th cyclotomic polynomial, with one positive integer denominator
under integer numerator coordinates.  That representation is canonical, so
equality is coordinate-wise and values hash.  No floating point is used.

>>> i = root_of_unity(4, 1)
>>> i * i == CyclotomicNumber.from_rational(-1, 4)
True
"""

from __future__ import annotations

from fractions import Fraction
from functools import cache
from math import gcd

from . import _kernel


def _poly_divmod_int(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    """Quotient and remainder for integer polynomials, ascending coefficients.

    Raises if a division step is not exact over the integers; the cyclotomic
    recursion only ever divides by monic factors, where this cannot happen.
    """
    num = list(num)
    dd = len(den) - 1
    lead = den[dd]
    q = [0] * (len(num) - dd)
    for k in range(len(num) - dd - 1, -1, -1):
        c = num[dd + k]
        if c % lead:
            raise ArithmeticError("non-exact polynomial division")
        c //= lead
        q[k] = c
        if c:
            for j in range(dd + 1):
                num[j + k] -= c * den[j]
    while num and num[-1] == 0:
        num.pop()
    return q, num


@cache
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, ascending and monic.

    Computed by exact division of x**n - 1 by the cyclotomic polynomials of
    the proper divisors of n.

    >>> cyclotomic_polynomial(1)
    (-1, 1)
    >>> cyclotomic_polynomial(4)
    (1, 0, 1)
    >>> cyclotomic_polynomial(5)
    (1, 1, 1, 1, 1)
    """
    if n < 1:
        raise ValueError("order must be a positive integer")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _poly_divmod_int(poly, list(cyclotomic_polynomial(d)))
            if rem:
                raise ArithmeticError("cyclotomic division left a remainder")
    return tuple(poly)


class FieldContext:
    """Precomputed reduction data for one field order, shared by the kernel."""

    __slots__ = ("order", "degree", "phi", "red")

    def __init__(self, order: int):
        phi = cyclotomic_polynomial(order)
        d = len(phi) - 1
        self.order = order
        self.degree = d
        self.phi = phi
        rows = []
        if d > 1:
            row = [-c for c in phi[:d]]
            rows.append(tuple(row))
            for _ in range(d - 2):
                top = row[d - 1]
                row = [0] + row[:d - 1]
                if top:
                    for j in range(d):
                        row[j] += top * rows[0][j]
                rows.append(tuple(row))
        self.red = tuple(rows)


@cache
def field_context(order: int) -> FieldContext:
    return FieldContext(order)


def _reduce_long(nums: list[int], order: int) -> list[int]:
    """Reduce an integer coefficient vector of any length modulo Phi_order."""
    ctx = field_context(order)
    phi = ctx.phi
    d = ctx.degree
    nums = list(nums)
    for k in range(len(nums) - 1, d - 1, -1):
        c = nums[k]
        if c:
            nums[k] = 0
            for j in range(d):
                nums[k - d + j] -= c * phi[j]
    del nums[d:]
    nums.extend([0] * (d - len(nums)))
    return nums


class CyclotomicNumber:
    """An element of Q(zeta_n), canonical in the power basis modulo Phi_n."""

    __slots__ = ("order", "nums", "den")

    def __init__(self, order: int, nums: tuple[int, ...], den: int):
        # Trusts canonical input; use the constructors below otherwise.
        self.order = order
        self.nums = nums
        self.den = den

    @staticmethod
    def from_coords(order: int, coords, den: int = 1) -> CyclotomicNumber:
        d = field_context(order).degree
        nums = list(coords) + [0] * (d - len(coords))
        if len(nums) != d:
            raise ValueError(f"expected at most {d} coordinates for order {order}")
        t, dn = _kernel.elem_norm(nums, den)
        return CyclotomicNumber(order, t, dn)

    @staticmethod
    def from_rational(value, order: int = 1) -> CyclotomicNumber:
        q = Fraction(value)
        d = field_context(order).degree
        nums = [q.numerator] + [0] * (d - 1)
        return CyclotomicNumber(order, tuple(nums), q.denominator)

    @staticmethod
    def zero(order: int) -> CyclotomicNumber:
        d = field_context(order).degree
        return CyclotomicNumber(order, (0,) * d, 1)

    @staticmethod
    def one(order: int) -> CyclotomicNumber:
        d = field_context(order).degree
        return CyclotomicNumber(order, (1,) + (0,) * (d - 1), 1)

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        """Exact rational coordinates in the power basis, length phi(n)."""
        return tuple(Fraction(v, self.den) for v in self.nums)

    def is_zero(self) -> bool:
        return not any(self.nums)

    def is_one(self) -> bool:
        return self.nums[0] == self.den and not any(self.nums[1:])

    def is_rational(self) -> bool:
        return not any(self.nums[1:])

    def _pair(self):
        return (self.nums, self.den)

    def _coerce(self, other) -> CyclotomicNumber:
        if isinstance(other, CyclotomicNumber):
            if other.order != self.order:
                raise ValueError(
                    f"field order mismatch: {self.order} vs {other.order}; embed first")
            return other
        if isinstance(other, (int, Fraction)):
            return CyclotomicNumber.from_rational(other, self.order)
        raise TypeError(f"cannot mix CyclotomicNumber with {type(other).__name__}")

    def __add__(self, other) -> CyclotomicNumber:
        other = self._coerce(other)
        t, dn = _kernel.elem_add(self._pair(), other._pair())
        return CyclotomicNumber(self.order, t, dn)

    __radd__ = __add__

    def __sub__(self, other) -> CyclotomicNumber:
        other = self._coerce(other)
        t, dn = _kernel.elem_sub(self._pair(), other._pair())
        return CyclotomicNumber(self.order, t, dn)

    def __rsub__(self, other) -> CyclotomicNumber:
        return self._coerce(other).__sub__(self)

    def __neg__(self) -> CyclotomicNumber:
        t, dn = _kernel.elem_neg(self._pair())
        return CyclotomicNumber(self.order, t, dn)

    def __mul__(self, other) -> CyclotomicNumber:
        other = self._coerce(other)
        ctx = field_context(self.order)
        t, dn = _kernel.elem_mul(self._pair(), other._pair(), ctx.degree, ctx.red)
        return CyclotomicNumber(self.order, t, dn)

    __rmul__ = __mul__

    def inverse(self) -> CyclotomicNumber:
        if self.is_zero():
            raise ZeroDivisionError("division by zero in cyclotomic field")
        ctx = field_context(self.order)
        t, dn = _kernel.elem_inv(self._pair(), ctx.degree, ctx.phi, ctx.red)
        return CyclotomicNumber(self.order, t, dn)

    def __truediv__(self, other) -> CyclotomicNumber:
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other) -> CyclotomicNumber:
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int) -> CyclotomicNumber:
        if k < 0:
            return self.inverse() ** (-k)
        out = CyclotomicNumber.one(self.order)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = CyclotomicNumber.from_rational(other, self.order)
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        return (self.order == other.order and self.nums == other.nums
                and self.den == other.den)

    def __hash__(self):
        return hash((self.order, self.nums, self.den))

    def __repr__(self):
        return f"CyclotomicNumber({self.order}, {self.nums}, {self.den})"

    def __str__(self):
        """Expression-syntax rendering, e.g. '1/2 - 2*z + z^3'."""
        if self.is_zero():
            return "0"
        parts = []
        for k, v in enumerate(self.nums):
            if not v:
                continue
            q = Fraction(v, self.den)
            mag = abs(q)
            if k == 0:
                body = str(mag)
            else:
                unit = "z" if k == 1 else f"z^{k}"
                body = unit if mag == 1 else f"{mag}*{unit}"
            if not parts:
                parts.append(body if q > 0 else f"-{body}")
            else:
                parts.append(f" + {body}" if q > 0 else f" - {body}")
        return "".join(parts)


def root_of_unity(n: int, m: int) -> CyclotomicNumber:
    """The canonical representation of zeta_n**(m mod n) in Q(zeta_n).

    >>> str(root_of_unity(4, 1))
    'z'
    >>> root_of_unity(5, 2) + root_of_unity(5, 3)  # the golden-ratio element
    CyclotomicNumber(5, (0, 0, 1, 1), 1)
    """
    if n < 1:
        raise ValueError("order must be a positive integer")
    m %= n
    nums = _reduce_long([0] * m + [1], n)
    return CyclotomicNumber.from_coords(n, nums)


def embed(a: CyclotomicNumber, order: int) -> CyclotomicNumber:
    """Image of ``a`` in Q(zeta_order) under zeta_n -> zeta_order**(order/n).

    Requires a.order to divide the target order; the map is an injective field
    homomorphism.
    """
    if order % a.order:
        raise ValueError(f"target order {order} is not a multiple of {a.order}")
    if order == a.order:
        return a
    t = order // a.order
    long = [0] * ((len(a.nums) - 1) * t + 1)
    for k, v in enumerate(a.nums):
        long[k * t] = v
    return CyclotomicNumber.from_coords(order, _reduce_long(long, order), a.den)
