"""Command-line frontend: emit relation presentations and pairing tables,
run the verification suites, render text or JSON reports."""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .errors import NegativeNilpotentPower
from .freealg import lift_to_poly, word_str
from .pairing import build_pairing_table, present_ck_algebra
from .relations import (VerificationReport, classical_limit,
                        commutator_presentation, contraction_decompose,
                        expand_orthogonality, expand_rtt, hopf_checks,
                        yang_baxter)
from .scalar import JSignature
from .serialize import (pairing_to_json, relation_set_to_json, report_to_json,
                        scalar_to_json)
from .structures import StructureBundle, scalar_identity

CHECKS = ("ybe", "orthogonality", "hopf", "contraction", "classical-limit", "all")


def _parse_sig(text, n):
    if text is None or text == "formal":
        return None
    sig = JSignature.parse(text)
    if len(sig) != n - 1:
        raise SystemExit(2)
    return sig


def _meta(args, n):
    j = args.j if getattr(args, "j", None) else "formal"
    return {"dim": n, "basis": getattr(args, "basis", "symplectic"),
            "j": j, "version": __version__}


def _emit(payload, fmt, text_lines):
    if fmt == "json":
        print(json.dumps(payload, indent=2, sort_keys=False))
    else:
        print("\n".join(text_lines))


def _bundle_relations(bundle):
    rels = list(expand_rtt(bundle.rtt_r, bundle.gen))
    rels += list(expand_orthogonality(bundle.gen, bundle.ortho_c,
                                      c_inv=bundle.ortho_c_inverse))
    from .freealg import canonicalize_relations
    return canonicalize_relations(rels)


def cmd_relations(args):
    n = args.dim
    sig = _parse_sig(args.j, n)
    bundle = StructureBundle(n, args.basis, args.mode)
    if bundle.mode == "classical":
        rel_set = expand_orthogonality(bundle.gen, bundle.ortho_c,
                                       c_inv=bundle.ortho_c_inverse)
    else:
        rel_set = _bundle_relations(bundle)
    if sig is not None:
        rel_set = rel_set.specialize(sig)
    payload = {"meta": _meta(args, n), "scalars-as": "monomial-list",
               "relations": relation_set_to_json(rel_set)}
    lines = ["%s: %s = 0" % (r.label, r.poly) for r in rel_set]
    _emit(payload, args.format, lines or ["(no relations)"])
    return 0


def cmd_pairings(args):
    n = args.dim
    sig = _parse_sig(args.j, n)
    table = build_pairing_table(n, sig)
    payload = {"meta": _meta(args, n), "scalars-as": "monomial-list",
               "pairings": pairing_to_json(table)}
    lines = ["<%s, %s> = %s" % (f, g, val)
             for (f, g), val in table.nonzero_items()]
    _emit(payload, args.format, lines)
    return 0


def _run_checks(args, bundle, sig):
    reports = []
    sel = args.select
    if sel in ("ybe", "all"):
        reports.append(yang_baxter(bundle.r))
    if sel in ("orthogonality", "all"):
        reports.append(_orthogonality_check(bundle))
    if sel in ("hopf", "all"):
        reports.append(hopf_checks(bundle))
    if sel in ("classical-limit", "all"):
        reports.append(_classical_limit_check(bundle))
    if sel == "contraction" or (sel == "all" and sig is not None
                                and sig.has_nilpotent):
        if sig is None or not sig.has_nilpotent:
            print("contraction check needs a signature with iota", file=sys.stderr)
            raise SystemExit(2)
        _, report = contraction_decompose(bundle.r, sig)
        reports.append(report)
    return reports


def _orthogonality_check(bundle):
    """Counit annihilation of the metric relations, plus the classical
    basis-equivalence identity defect(B) = D^-1 defect(A) (D^t)^-1."""
    import time
    from .relations import apply_counit
    start = time.perf_counter()
    witness = []
    rel_set = expand_orthogonality(bundle.gen, bundle.ortho_c,
                                   c_inv=bundle.ortho_c_inverse)
    for rel in rel_set:
        img = apply_counit(rel.poly)
        if not img.is_zero():
            witness.append({"check": "counit", "relation": rel.label,
                            "residual": str(img)})
    n = bundle.n
    classical_cart = StructureBundle(n, "cartesian", "classical")
    classical_symp = StructureBundle(n, "symplectic", "classical")
    a_mat, b_mat = classical_cart.gen, classical_symp.gen
    ident = lift_to_poly(scalar_identity(n, n - 1))
    c0 = lift_to_poly(classical_symp.c0)
    defect_a = a_mat @ a_mat.transpose() - ident
    defect_b = b_mat @ c0 @ b_mat.transpose() - c0
    dinv = lift_to_poly(classical_symp.d_inv)
    dtinv = lift_to_poly(classical_symp.d_inv.transpose())
    expected = dinv @ defect_a @ dtinv
    diff = defect_b - expected
    for r, c, x in diff.entries():
        if not x.is_zero():
            witness.append({"check": "basis-equivalence", "entry": (r + 1, c + 1),
                            "residual": str(x)})
    return VerificationReport("orthogonality", not witness, witness,
                              time.perf_counter() - start)


def _classical_limit_check(bundle):
    import time
    start = time.perf_counter()
    witness = []
    rtt = expand_rtt(bundle.rtt_r, bundle.gen)
    at_v0 = classical_limit(rtt)
    symbols = set()
    for _, _, p in bundle.gen.entries():
        symbols |= p.symbols()
    expected = commutator_presentation(symbols, bundle.njs)
    if at_v0 != expected:
        got = {r.poly.sort_key() for r in at_v0}
        want = {r.poly.sort_key() for r in expected}
        witness.append({"check": "rtt-commutativity",
                        "missing": len(want - got), "extra": len(got - want)})
    orth = expand_orthogonality(bundle.gen, bundle.ortho_c,
                                c_inv=bundle.ortho_c_inverse)
    lhs = classical_limit(orth)
    rhs = expand_orthogonality(bundle.gen, bundle.ortho_c.eval_v0(),
                               c_inv=bundle.ortho_c_inverse.eval_v0())
    if lhs != rhs:
        witness.append({"check": "orthogonality-v0"})
    return VerificationReport("classical-limit", not witness, witness,
                              time.perf_counter() - start)


def cmd_check(args):
    n = args.dim
    sig = _parse_sig(args.j, n)
    bundle = StructureBundle(n, args.basis, "quantum")
    reports = _run_checks(args, bundle, sig)
    payload = {"meta": _meta(args, n), "scalars-as": "monomial-list",
               "checks": [report_to_json(r) for r in reports]}
    lines = []
    for r in reports:
        lines.append("%s: %s  (%.3f s)" % (r.name, r.status, r.seconds))
        for w in r.witness[:10]:
            lines.append("  witness: %s" % (w,))
        if r.data and "rtilde" in r.data:
            lines.append("  rtilde:")
            for row in r.data["rtilde"].data:
                lines.append("    [" + ", ".join(str(x) for x in row) + "]")
    _emit(payload, args.format, lines)
    return 0 if all(r.passed for r in reports) else 1


def cmd_info(args):
    n = args.dim
    sig = _parse_sig(args.j, n)
    bundle = StructureBundle(n, args.basis, "quantum")
    symbols = sorted({s for _, _, p in bundle.gen.entries()
                      for s in p.symbols()}, key=lambda s: s.key())
    rho = ["%d/2" % h if h % 2 else str(h // 2) for h in bundle.rho2]
    info = {"dim": n, "basis": args.basis,
            "rho": rho, "generators": [str(s) for s in symbols],
            "r-matrix-size": bundle.r.rows}
    lines = ["dim: %d" % n, "basis: %s" % args.basis,
             "rho: (%s)" % ", ".join(rho),
             "generators: %s" % ", ".join(str(s) for s in symbols),
             "R-matrix: %dx%d" % (bundle.r.rows, bundle.r.cols)]
    if n == 3:
        pres = present_ck_algebra(3, sig)
        info["hopf-presentation"] = [list(l) for l in pres.lines]
        info["notes"] = pres.notes
        lines.append("")
        lines.append(pres.render())
    payload = {"meta": _meta(args, n), "info": info}
    _emit(payload, args.format, lines)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="qck",
        description="Exact quantum orthogonal Cayley-Klein groups and algebras:"
                    " relation presentations, duality pairings and structural checks.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, basis=True, mode=False):
        p.add_argument("--dim", type=int, required=True, choices=(3, 4, 5, 6))
        p.add_argument("--j", help="comma-separated tokens (1, iota, i), N-1 of"
                                   " them, or 'formal'")
        if basis:
            p.add_argument("--basis", choices=("symplectic", "cartesian"),
                           default="symplectic")
        if mode:
            p.add_argument("--mode", choices=("quantum", "classical"),
                           default="quantum")
        p.add_argument("--format", choices=("text", "json"), default="text")

    p_rel = sub.add_parser("relations", help="emit the defining relations")
    common(p_rel, mode=True)
    p_rel.set_defaults(fn=cmd_relations)

    p_pair = sub.add_parser("pairings", help="emit the duality pairing table")
    common(p_pair, basis=False)
    p_pair.set_defaults(fn=cmd_pairings)

    p_check = sub.add_parser("check", help="run verification suites")
    common(p_check)
    p_check.add_argument("--select", choices=CHECKS, default="all")
    p_check.set_defaults(fn=cmd_check)

    p_info = sub.add_parser("info", help="describe a bundle")
    common(p_info)
    p_info.set_defaults(fn=cmd_info)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except NegativeNilpotentPower as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
