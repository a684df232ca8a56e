"""Builders for the monomial reflection arrangements and the exceptional ones.

The exceptional arrangements are transcribed factor by factor from their
published defining polynomials rather than generated from group theory; that
keeps the package free of group actions and makes the transcription itself
testable (hyperplane counts, field orders and witness computations all have
to come out right).  Factor order follows the source text; the monomial
builder puts coordinate hyperplanes first, then x_i - z^m x_j by (i, j, m).
"""

from __future__ import annotations

from dataclasses import dataclass

from .arrangement import Arrangement, make_arrangement
from .cyclo import CyclotomicNumber, root_of_unity
from .linalg import LinearForm
from .parse import parse_form


def monomial_arrangement(r: int, p: int, ell: int) -> Arrangement:
    """The reflection arrangement of the monomial group G(r, p, l).

    Hyperplanes x_i - z^m x_j for i < j and 0 <= m < r, preceded by the
    coordinate hyperplanes exactly when p != r and r >= 2.  The field order is
    r (order 1 meaning the rationals).  For any p != r the hyperplane set is
    the one of G(r, 1, l); p only matters through the p = r case.
    """
    if r < 1 or ell < 1:
        raise ValueError("need r >= 1 and l >= 1")
    if p < 1 or r % p:
        raise ValueError(f"p = {p} must divide r = {r}")
    # zeta_1 = 1 and zeta_2 = -1 are rational, so r <= 2 lives over Q.
    order = r if r > 2 else 1
    zero = CyclotomicNumber.zero(order)
    one = CyclotomicNumber.one(order)
    forms: list[LinearForm] = []
    if p != r and r >= 2:
        for i in range(ell):
            coeffs = [zero] * ell
            coeffs[i] = one
            forms.append(LinearForm.from_coefficients(coeffs, order))
    for i in range(ell):
        for j in range(i + 1, ell):
            for m in range(r):
                coeffs = [zero] * ell
                coeffs[i] = one
                if r <= 2:
                    coeffs[j] = CyclotomicNumber.from_rational(-((-1) ** m), 1)
                else:
                    coeffs[j] = -root_of_unity(order, m)
                forms.append(LinearForm.from_coefficients(coeffs, order))
    return make_arrangement(ell, order, forms)


def braid_arrangement(strands: int) -> Arrangement:
    """A(strands - 1), the braid arrangement: G(1, 1, strands)."""
    return monomial_arrangement(1, 1, strands)


# Exceptional defining polynomials, one linear factor per line, in source
# order.  D4 and F4 live over the rationals, H3 over field order 5 (the
# element z^2 + z^3 squares to 1 minus itself), G25/G26 over order 3, and
# G29/G31 over order 4.

_D4_FACTORS = [
    "a - b", "a + b", "a - c", "a + c", "a - d", "a + d",
    "b - c", "b + c", "b - d", "b + d", "c - d", "c + d",
]

_F4_FACTORS = [
    "a", "b", "c", "d",
    "a + b", "b + c", "c + d", "b + 2*c",
    "a + b + c", "b + c + d", "a + b + 2*c",
    "a + b + c + d", "b + 2*c + d", "a + 2*b + 2*c", "a + b + 2*c + d",
    "b + 2*c + 2*d",
    "a + 2*b + 2*c + d", "a + b + 2*c + 2*d", "a + 2*b + 3*c + d",
    "a + 2*b + 2*c + 2*d",
    "a + 2*b + 3*c + 2*d", "a + 2*b + 4*c + 2*d", "a + 3*b + 4*c + 2*d",
    "2*a + 3*b + 4*c + 2*d",
]

_H3_FACTORS = [
    "a", "b", "c",
    "a - (z^2+z^3)*b",
    "a - (z^2+z^3+1)*b",
    "b + c", "a + b",
    "a - (z^2+z^3)*b - (z^2+z^3)*c",
    "a - (z^2+z^3+1)*b - (z^2+z^3+1)*c",
    "a + b + c",
    "a - (z^2+z^3)*b - (z^2+z^3+1)*c",
    "a - (z^2+z^3)*b + c",
    "a + b + (z^2+z^3+2)*c",
    "a + b - (z^2+z^3+1)*c",
    "a - 2*(z^2+z^3+1)*b - (z^2+z^3+1)*c",
]

_G25_FACTORS = [
    "a", "b", "c",
    "a + b + c", "a + b + z*c", "a + b + z^2*c",
    "a + z*b + c", "a + z*b + z*c", "a + z*b + z^2*c",
    "a + z^2*b + c", "a + z^2*b + z*c", "a + z^2*b + z^2*c",
]

_G26_FACTORS = [
    "a", "b", "c",
    "a - b", "a - c", "b - c",
    "a - z*b", "a - z^2*b",
    "a - z*c", "a - z^2*c",
    "b - z*c", "b - z^2*c",
    "a + b + c", "a + b + z*c", "a + b + z^2*c",
    "a + z*b + c", "a + z*b + z*c", "a + z*b + z^2*c",
    "a + z^2*b + c", "a + z^2*b + z*c", "a + z^2*b + z^2*c",
]

_G29_FACTORS = [
    "a", "b", "c", "d",
    "a - b", "a - c", "a - d", "b - c", "b - d", "c - d",
    "a + c", "a + b", "a + d", "b + c", "b + d", "c + d",
    "a - b + i*c + i*d", "a - b + i*c - i*d", "a - b - i*c - i*d",
    "a - b - i*c + i*d",
    "a + b + i*c + i*d", "a + b - i*c - i*d", "a + b - i*c + i*d",
    "a + b + i*c - i*d",
    "a - i*b + i*c + d", "a - i*b - c - i*d", "a - i*b - c + i*d",
    "a - i*b + i*c - d",
    "a - i*b - i*c + d", "a - i*b + c - i*d", "a - i*b - i*c - d",
    "a + i*b - c + i*d",
    "a + i*b - c - i*d", "a + i*b - i*c + d", "a + i*b - i*c - d",
    "a + i*b + c + i*d",
    "a + i*b + i*c + d", "a + i*b + i*c - d", "a - i*b + c + i*d",
    "a + i*b + c - i*d",
]

_G31_FACTORS = [
    "a", "b", "c", "d",
    "a - b", "a - c", "a - d", "b - c", "b - d", "c - d",
    "a + b", "a + c", "a + d", "b + c", "b + d", "c + d",
    "a - i*b", "a - i*c", "a - i*d", "b - i*c", "b - i*d", "c - i*d",
    "a + i*b", "a + i*c", "a + i*d", "b + i*c", "b + i*d", "c + i*d",
    "a - b - c - d", "a - b + c + d", "a - b + c - d", "a - b - c + d",
    "a + b + c + d", "a + b - c + d", "a + b - c - d", "a + b + c - d",
    "a - b - i*c - i*d", "a - b + i*c + i*d", "a - b - i*c + i*d",
    "a - b + i*c - i*d",
    "a + b - i*c - i*d", "a + b + i*c + i*d", "a + b + i*c - i*d",
    "a + b - i*c + i*d",
    "a - i*b - c - i*d", "a - i*b + c - i*d", "a - i*b - c + i*d",
    "a - i*b + c + i*d",
    "a - i*b + i*c + d", "a - i*b + i*c - d", "a - i*b - i*c + d",
    "a - i*b - i*c - d",
    "a + i*b + c - i*d", "a + i*b - c - i*d", "a + i*b - c + i*d",
    "a + i*b + c + i*d",
    "a + i*b - i*c + d", "a + i*b - i*c - d", "a + i*b + i*c - d",
    "a + i*b + i*c + d",
]

_EXCEPTIONAL = {
    "D4": (4, 1, _D4_FACTORS),
    "F4": (4, 1, _F4_FACTORS),
    "H3": (3, 5, _H3_FACTORS),
    "G25": (3, 3, _G25_FACTORS),
    "G26": (3, 3, _G26_FACTORS),
    "G29": (4, 4, _G29_FACTORS),
    "G31": (4, 4, _G31_FACTORS),
}


def exceptional_names() -> list[str]:
    return list(_EXCEPTIONAL)


def exceptional_arrangement(name: str) -> Arrangement:
    """One of the transcribed arrangements: D4, F4, H3, G25, G26, G29, G31."""
    try:
        ambient, order, factors = _EXCEPTIONAL[name]
    except KeyError:
        raise ValueError(f"unknown exceptional arrangement {name!r}; "
                         f"choose from {sorted(_EXCEPTIONAL)}") from None
    forms = [parse_form(text, ambient, order) for text in factors]
    return make_arrangement(ambient, order, forms)


@dataclass(frozen=True)
class CatalogEntry:
    """A named arrangement with its expected hyperplane count and class."""

    name: str
    ambient: int
    field_order: int
    expected_count: int
    supersolvable: bool
    rank: int

    def build(self) -> Arrangement:
        return build_named(self.name)


def _monomial_count(r: int, p: int, ell: int) -> int:
    coords = ell if (p != r and r >= 2) else 0
    return coords + r * ell * (ell - 1) // 2


def catalog() -> list[CatalogEntry]:
    """The named catalog driving the verification suite.

    Supersolvability flags follow the classification: the full monomial
    arrangements G(r, 1, l) (and every G(r, p, l) with p != r, which share
    their hyperplanes) are supersolvable, as is anything of rank <= 2; the
    G(r, r, l) family for r, l >= 3, the D-series from D4 on, and the listed
    exceptional arrangements are not.
    """
    entries: list[CatalogEntry] = []

    def mono(r, p, ell, ss):
        rank = ell - 1 if r == 1 else ell
        entries.append(CatalogEntry(f"G({r},{p},{ell})", ell, r if r > 2 else 1,
                                    _monomial_count(r, p, ell), ss, rank))

    # rank-2 members
    mono(2, 1, 2, True)      # B2
    mono(3, 1, 2, True)
    mono(3, 3, 2, True)
    mono(1, 1, 3, True)      # braid on 3 strands, essential rank 2
    # supersolvable family G(r,1,l)
    for r in (1, 2, 3, 4):
        for ell in (3, 4, 5):
            mono(r, 1, ell, True)
    # non-supersolvable monomials G(r,r,l), r >= 3, and the D-series
    for (r, ell) in ((3, 3), (4, 3), (5, 3), (3, 4), (4, 4), (3, 5)):
        mono(r, r, ell, False)
    mono(2, 2, 5, False)     # D5
    mono(2, 2, 6, False)     # D6
    # exceptional transcriptions
    for name, count, ss in (("D4", 12, False), ("F4", 24, False), ("H3", 15, False),
                            ("G25", 12, False), ("G26", 21, False),
                            ("G29", 40, False), ("G31", 60, False)):
        ambient, order, _ = _EXCEPTIONAL[name]
        entries.append(CatalogEntry(name, ambient, order, count, ss, ambient))
    return entries


def catalog_entry(name: str) -> CatalogEntry:
    for entry in catalog():
        if entry.name == name:
            return entry
    raise KeyError(f"{name!r} is not a catalog entry")


def build_named(name: str) -> Arrangement:
    """Build an arrangement from a catalog or alias name.

    Accepted: exceptional names (D4, F4, ...), G(r,p,l), and the Coxeter
    aliases A(n) = G(1,1,n+1), B(n)/Bn = G(2,1,n), D(n)/Dn = G(2,2,n) with
    D4 meaning the transcribed arrangement (the hyperplane sets coincide).
    """
    name = name.strip()
    if name in _EXCEPTIONAL:
        return exceptional_arrangement(name)
    if name.startswith("G(") and name.endswith(")"):
        body = name[2:-1]
        parts = [p.strip() for p in body.split(",")]
        if len(parts) == 3 and all(p.isdigit() for p in parts):
            return monomial_arrangement(int(parts[0]), int(parts[1]), int(parts[2]))
    for prefix, (r, p) in (("A", (1, 1)), ("B", (2, 1)), ("D", (2, 2))):
        for pattern in (f"{prefix}(", prefix):
            if name.startswith(pattern):
                tail = name[len(pattern):].rstrip(")") if pattern.endswith("(") \
                    else name[len(prefix):]
                if tail.isdigit():
                    n = int(tail)
                    ell = n + 1 if prefix == "A" else n
                    if ell >= 1:
                        return monomial_arrangement(r, p, ell)
    raise KeyError(f"unknown arrangement name {name!r}")
