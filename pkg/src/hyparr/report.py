"""Report construction and serialization.

Machine output is JSON with a stable key order; exact field elements appear
as coefficient arrays of rational strings, never floats.  Human output is
rendered from the same dictionary, so both carry identical facts.  Volatile
timings are kept out of the machine payload to keep it byte-deterministic;
the CLI reports them separately.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .analysis import (ModularityVerdict, PoincarePolynomial, Rank2Report,
                       SupersolvabilityCertificate)
from .arrangement import Arrangement, Flat, IntersectionLattice
from .linalg import LinearForm, Subspace, form_to_str, rational_str, variable_names


def form_payload(form: LinearForm) -> dict:
    coeffs = [[rational_str(Fraction(v, c.den)) for v in c.nums]
              for c in form.coefficients()]
    return {"text": form_to_str(form), "coeffs": coeffs}


def subspace_payload(sub: Subspace) -> dict:
    return {
        "codim": sub.codim,
        "forms": [form_payload(f) for f in sub.defining_forms()],
    }


def flat_payload(flat: Flat) -> dict:
    return {
        "rank": flat.rank,
        "hyperplanes": flat.hyperplane_indices(),
        "subspace": subspace_payload(flat.subspace),
    }


def arrangement_payload(arr: Arrangement, name: str | None = None) -> dict:
    out = {
        "ambient": arr.ambient,
        "field_order": arr.order,
        "hyperplane_count": len(arr.hyperplanes),
        "duplicates_removed": arr.duplicates_removed,
        "rank": arr.rank(),
        "essential": arr.is_essential(),
        "hyperplanes": [form_payload(h) for h in arr.hyperplanes],
    }
    if name is not None:
        out["name"] = name
    return out


def lattice_payload(lattice: IntersectionLattice) -> dict:
    return {
        "flat_count": len(lattice),
        "level_sizes": lattice.level_sizes(),
        "rank": lattice.rank(),
    }


def verdict_payload(v: ModularityVerdict) -> dict:
    out = {"flat": flat_payload(v.flat), "modular": v.modular}
    if v.witness is not None:
        y, total = v.witness
        out["witness"] = {
            "partner": flat_payload(y),
            "sum": subspace_payload(total),
        }
    return out


def certificate_payload(cert: SupersolvabilityCertificate) -> dict:
    out: dict = {
        "supersolvable": cert.verdict,
        "essentialized": cert.essentialized,
        "rank": cert.lattice.rank(),
    }
    if cert.essentialized:
        out["essential_arrangement"] = arrangement_payload(cert.arrangement)
    if cert.chain is not None:
        out["chain"] = [flat_payload(f) for f in cert.chain]
    if cert.refutation is not None:
        ref: dict = {"kind": cert.refutation.kind}
        if cert.refutation.kind == "empty-rank":
            ref["rank"] = cert.refutation.rank
            ref["witnesses"] = [verdict_payload(v) for v in cert.refutation.witnesses]
        else:
            ref["modular_counts"] = {str(k): v for k, v in
                                     sorted(cert.refutation.modular_counts.items())}
        out["refutation"] = ref
    return out


def poincare_payload(poly: PoincarePolynomial, exponents: list[int] | None) -> dict:
    out = {"coefficients": list(poly.coefficients), "text": str(poly)}
    out["exponents"] = exponents
    return out


def rank2_payload(rep: Rank2Report) -> dict:
    return {
        "supersolvable": rep.supersolvable,
        "modular_rank2_count": rep.modular_rank2_count,
        "agree": rep.agree,
        "modular_rank2": [flat_payload(f) for f in rep.modular_rank2],
    }


def report_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def _human_flat(flat: dict) -> str:
    forms = [f["text"] for f in flat["subspace"]["forms"]]
    inside = " ; ".join(forms) if forms else "full space"
    return f"rank {flat['rank']}: {inside}"


def render_human(report: dict) -> str:
    """Plain-text rendering of a report dictionary."""
    lines: list[str] = []
    arr = report.get("arrangement")
    if arr:
        name = arr.get("name", "(unnamed)")
        lines.append(f"arrangement {name}: {arr['hyperplane_count']} hyperplanes "
                     f"in C^{arr['ambient']}, field order {arr['field_order']}, "
                     f"rank {arr['rank']}")
        if arr["duplicates_removed"]:
            lines.append(f"  {arr['duplicates_removed']} duplicate input forms removed")
    lat = report.get("lattice")
    if lat:
        lines.append(f"lattice: {lat['flat_count']} flats, level sizes "
                     f"{lat['level_sizes']}")
    mod = report.get("modular")
    if mod is not None:
        lines.append(f"modular flats of rank {mod['rank']}: "
                     f"{mod['modular_count']} of {mod['flat_count']}")
        for v in mod["verdicts"]:
            if v["modular"]:
                lines.append(f"  modular    {_human_flat(v['flat'])}")
            else:
                w = v["witness"]
                lines.append(f"  non-modular {_human_flat(v['flat'])}  "
                             f"[+ {_human_flat(w['partner'])} -> "
                             f"{' ; '.join(f['text'] for f in w['sum']['forms'])}, "
                             "not a flat]")
    cert = report.get("supersolvable")
    if cert is not None:
        lines.append(f"supersolvable: {cert['supersolvable']}"
                     + (" (essentialized first)" if cert["essentialized"] else ""))
        if cert.get("chain"):
            lines.append("  modular chain:")
            for f in cert["chain"]:
                lines.append(f"    {_human_flat(f)}")
        ref = cert.get("refutation")
        if ref:
            if ref["kind"] == "empty-rank":
                lines.append(f"  refuted: no modular flat of rank {ref['rank']} "
                             f"({len(ref['witnesses'])} witnesses recorded)")
            else:
                lines.append(f"  refuted: modular flats per rank "
                             f"{ref['modular_counts']} admit no chain")
    poin = report.get("poincare")
    if poin:
        lines.append(f"poincare polynomial: {poin['text']}")
        if poin.get("exponents") is not None:
            lines.append(f"exponents: {poin['exponents']}")
    factors = report.get("factors")
    if factors is not None:
        lines.append(f"irreducible factors: {len(factors)}")
        for k, f in enumerate(factors):
            lines.append(f"  factor {k}: {f['hyperplane_count']} hyperplanes in "
                         f"C^{f['ambient']}")
    claims = report.get("claims")
    if claims is not None:
        width = max((len(c["claim_id"]) for c in claims), default=8)
        for c in claims:
            status = "PASS" if c["passed"] else "FAIL"
            lines.append(f"{status}  {c['claim_id']:<{width}}  {c['detail']}")
        total = len(claims)
        good = sum(c["passed"] for c in claims)
        lines.append(f"{good}/{total} claims pass")
    return "\n".join(lines) + "\n"
