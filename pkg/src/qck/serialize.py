"""Canonical JSON forms for scalars, relations and pairing tables, plus
parsers so every emitted object can be read back (round-trip tested)."""

from __future__ import annotations

from fractions import Fraction

from .freealg import NCPoly, Relation, Sym, sym, word_key
from .scalar import BaseScalar, CKScalar


def base_to_json(b):
    return {"a": str(b.a), "b": str(b.b), "c": str(b.c), "d": str(b.d)}


def base_from_json(obj):
    return BaseScalar(Fraction(obj["a"]), Fraction(obj["b"]),
                      Fraction(obj["c"]), Fraction(obj["d"]))


def scalar_to_json(s):
    """CKScalar as a canonical monomial list."""
    out = []
    for (e, vdeg, jexp), coeff in s.sorted_terms():
        out.append({"coeff": base_to_json(coeff), "eExp": e, "vDeg": vdeg,
                    "jExp": list(jexp)})
    return out


def scalar_from_json(terms, njs):
    total = CKScalar.zero(njs)
    for t in terms:
        total = total + CKScalar.monomial(njs, coeff=base_from_json(t["coeff"]),
                                          e=t["eExp"], vdeg=t["vDeg"],
                                          jexp=tuple(t["jExp"]))
    return total


def sym_to_str(s):
    return "%s:%d,%d" % (s.family, s.row, s.col)


def sym_from_str(text):
    family, rc = text.split(":")
    row, col = rc.split(",")
    return sym(family, int(row), int(col))


def poly_to_json(p):
    """NCPoly flattened to one JSON term per (scalar monomial, word) pair."""
    flat = []
    for word, coeff in p.terms.items():
        for (e, vdeg, jexp), base in coeff.terms.items():
            flat.append((word_key(word), (e, vdeg, jexp),
                         {"coeff": base_to_json(base), "eExp": e, "vDeg": vdeg,
                          "jExp": list(jexp),
                          "word": [sym_to_str(s) for s in word]}))
    flat.sort(key=lambda t: (t[0], t[1]))
    return [obj for _, _, obj in flat]


def poly_from_json(terms, njs):
    total = NCPoly.zero(njs)
    for t in terms:
        coeff = CKScalar.monomial(njs, coeff=base_from_json(t["coeff"]),
                                  e=t["eExp"], vdeg=t["vDeg"],
                                  jexp=tuple(t["jExp"]))
        word = tuple(sym_from_str(s) for s in t["word"])
        total = total + NCPoly(njs, {word: coeff})
    return total


def relation_to_json(rel):
    return {"label": rel.label, "terms": poly_to_json(rel.poly)}


def relation_from_json(obj, njs):
    return Relation(poly_from_json(obj["terms"], njs), obj["label"])


def relation_set_to_json(rel_set):
    return [relation_to_json(r) for r in rel_set]


def pairing_to_json(table):
    out = []
    for (f, g), val in table.nonzero_items():
        out.append({"functional": sym_to_str(f), "generator": sym_to_str(g),
                    "value": scalar_to_json(val)})
    return out


def report_to_json(report):
    obj = {"name": report.name, "status": report.status,
           "witness": report.witness}
    if report.data and "rtilde" in report.data:
        rt = report.data["rtilde"]
        obj["data"] = {"rtilde": [[scalar_to_json(x) for x in row]
                                  for row in rt.data]}
    return obj
