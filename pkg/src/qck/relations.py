"""Expansion of matrix identities into generator relations, plus the
structural verification procedures (Yang-Baxter, contraction splitting,
Hopf-axiom consistency, classical limits)."""

from __future__ import annotations

import time

from .errors import DimensionMismatch, NotAffineInJv
from .freealg import (Matrix, NCPoly, RelationSet, canonicalize_relations,
                      lift_to_poly, poly_identity, split_by_j)
from .scalar import BaseScalar, CKScalar
from .structures import counit_value

_I = BaseScalar(0, 1)


class VerificationReport:
    """Outcome of one structural check; witness holds the failing entries."""

    __slots__ = ("name", "status", "witness", "seconds", "data")

    def __init__(self, name, passed, witness=None, seconds=0.0, data=None):
        self.name = name
        self.status = "pass" if passed else "fail"
        self.witness = list(witness or [])
        self.seconds = seconds
        self.data = data

    @property
    def passed(self):
        return self.status == "pass"

    def __repr__(self):
        return "VerificationReport(%s: %s)" % (self.name, self.status)

    def __str__(self):
        out = "%s: %s" % (self.name, self.status)
        for w in self.witness[:10]:
            out += "\n  " + str(w)
        return out


def _as_poly(mat):
    return lift_to_poly(mat)


def _entry_relations(delta, label, split):
    items = []
    for r, c, poly in delta.entries():
        if poly.is_zero():
            continue
        if split:
            for jexp, part in split_by_j(poly):
                items.append((part, "%s[%d,%d]@j%s" % (label, r + 1, c + 1, list(jexp))))
        else:
            items.append((poly, "%s[%d,%d]" % (label, r + 1, c + 1)))
    return items


def expand_rtt(r_mat, g_mat, split=True, label="rtt"):
    """Relations from R G1 G2 - G2 G1 R with G1 = G (x) I, G2 = I (x) G.

    With formal j parameters every entry is split into its j-homogeneous
    parts (the free algebra is a free module over the j monomials).
    """
    n = g_mat.rows
    if r_mat.rows != n * n or r_mat.cols != n * n:
        raise DimensionMismatch("R must be N^2 x N^2 for an N x N generator matrix")
    ident = poly_identity(n, g_mat.data[0][0].njs)
    g1 = g_mat.kron(ident)
    g2 = ident.kron(g_mat)
    rp = _as_poly(r_mat)
    delta = rp @ g1 @ g2 - g2 @ g1 @ rp
    return canonicalize_relations(_entry_relations(delta, label, split))


def expand_orthogonality(g_mat, c_mat, side="both", c_inv=None, split=True,
                         label="orth"):
    """Relations from the metric-preservation identities.

    primal:  G C G^t - C
    inverse: G^t Ci G - Ci, where Ci defaults to C itself (the symplectic
    convention, C^2 = I) and is passed explicitly as the exact inverse of
    C' in the Cartesian basis.
    """
    if side not in ("both", "primal", "inverse"):
        raise ValueError("side must be both, primal or inverse")
    cp = _as_poly(c_mat)
    items = []
    if side in ("both", "primal"):
        delta = g_mat @ cp @ g_mat.transpose() - cp
        items += _entry_relations(delta, label + "-primal", split)
    if side in ("both", "inverse"):
        ci = _as_poly(c_inv) if c_inv is not None else cp
        delta = g_mat.transpose() @ ci @ g_mat - ci
        items += _entry_relations(delta, label + "-inverse", split)
    return canonicalize_relations(items)


# -- Yang-Baxter ---------------------------------------------------------

def _sparse_from_pairs(r_mat, n, embed):
    """R embedded into the N^3 cube as a sparse dict of rows.

    embed names the pair of tensor slots R acts on: '12', '23' or '13'.
    """
    rows = {}
    for rr, cc, val in r_mat.entries():
        if val.is_zero():
            continue
        i, k = divmod(rr, n)
        j, l = divmod(cc, n)
        for m in range(n):
            if embed == "12":
                row = (i * n + k) * n + m
                col = (j * n + l) * n + m
            elif embed == "23":
                row = (m * n + i) * n + k
                col = (m * n + j) * n + l
            else:
                row = (i * n + m) * n + k
                col = (j * n + m) * n + l
            rows.setdefault(row, {})[col] = val
    return rows


def _sparse_mul(a, b):
    out = {}
    for r, arow in a.items():
        acc = {}
        for k, x in arow.items():
            brow = b.get(k)
            if not brow:
                continue
            for c, y in brow.items():
                p = x * y
                old = acc.get(c)
                acc[c] = p if old is None else old + p
        acc = {c: v for c, v in acc.items() if not v.is_zero()}
        if acc:
            out[r] = acc
    return out


def _sparse_sub(a, b):
    out = {r: dict(row) for r, row in a.items()}
    for r, row in b.items():
        tgt = out.setdefault(r, {})
        for c, v in row.items():
            old = tgt.get(c)
            new = -v if old is None else old - v
            if new.is_zero():
                tgt.pop(c, None)
            else:
                tgt[c] = new
        if not tgt:
            out.pop(r, None)
    return out


def yang_baxter(r_mat):
    """Check R12 R13 R23 = R23 R13 R12 exactly in the N^3 tensor cube."""
    start = time.perf_counter()
    n2 = r_mat.rows
    n = round(n2 ** 0.5)
    if n * n != n2 or r_mat.cols != n2:
        raise DimensionMismatch("R must be square of size N^2")
    r12 = _sparse_from_pairs(r_mat, n, "12")
    r13 = _sparse_from_pairs(r_mat, n, "13")
    r23 = _sparse_from_pairs(r_mat, n, "23")
    lhs = _sparse_mul(_sparse_mul(r12, r13), r23)
    rhs = _sparse_mul(_sparse_mul(r23, r13), r12)
    diff = _sparse_sub(lhs, rhs)
    witness = []
    for r in sorted(diff):
        for c in sorted(diff[r]):
            witness.append({"row": r + 1, "col": c + 1, "residual": str(diff[r][c])})
            if len(witness) >= 9:
                break
        if len(witness) >= 9:
            break
    return VerificationReport("yang-baxter", not diff, witness,
                              time.perf_counter() - start)


# -- contraction ---------------------------------------------------------

def contraction_decompose(r_mat, sig):
    """Split the specialized R-matrix as I + Jv * Rt and return (Rt, report).

    Requires a signature with at least one nilpotent slot (so J^2 = 0 and
    the split is exact); every entry must be delta + Jv times a number.
    """
    if not sig.has_nilpotent:
        raise ValueError("contraction requires at least one nilpotent j")
    start = time.perf_counter()
    nil = sig.nilpotent_positions()
    njs = len(sig)
    iu = BaseScalar(1)
    for _ in range(sig.imaginary_count() % 4):
        iu = iu * _I
    iu_inv = iu.inverse()
    jv_key_j = tuple(1 if k in nil else 0 for k in range(njs))
    rows = []
    witness = []
    for r in range(r_mat.rows):
        row = []
        for c in range(r_mat.cols):
            entry = r_mat.data[r][c].specialize(sig)
            if r == c:
                entry = entry - CKScalar.one(njs)
            coeff = CKScalar.zero(njs)
            ok = True
            for (e, vdeg, jexp), base in entry.terms.items():
                if (e, vdeg, jexp) == (0, 1, jv_key_j):
                    coeff = CKScalar.const(njs, base * iu_inv)
                else:
                    ok = False
            if not ok:
                raise NotAffineInJv("entry (%d,%d) is not delta + Jv*number: %s"
                                    % (r + 1, c + 1, entry))
            row.append(coeff)
        rows.append(row)
    rt = Matrix(rows)
    return rt, VerificationReport("contraction", True, witness,
                                  time.perf_counter() - start,
                                  data={"rtilde": rt})


# -- Hopf axioms ----------------------------------------------------------

def apply_counit(poly):
    """Image of a relation under the counit (each generator matrix -> I)."""
    total = CKScalar.zero(poly.njs)
    for word, coeff in poly.terms.items():
        if all(counit_value(s) == 1 for s in word):
            total = total + coeff
    return total


class _TensorPoly:
    """Element of a tensor power of the free algebra: coefficients on
    tuples of words.  Only what the coassociativity check needs."""

    __slots__ = ("njs", "terms")

    def __init__(self, njs, terms=None):
        self.njs = njs
        self.terms = {k: c for k, c in (terms or {}).items() if not c.is_zero()}

    @classmethod
    def from_poly(cls, poly):
        return cls(poly.njs, {(w,): c for w, c in poly.terms.items()})

    def tensor(self, other):
        terms = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                key = k1 + k2
                c = c1 * c2
                acc = terms.get(key)
                terms[key] = c if acc is None else acc + c
        return _TensorPoly(self.njs, terms)

    def __add__(self, other):
        terms = dict(self.terms)
        for k, c in other.terms.items():
            acc = terms.get(k)
            terms[k] = c if acc is None else acc + c
        return _TensorPoly(self.njs, terms)

    def __eq__(self, other):
        return self.terms == other.terms

    __hash__ = None


def _codot(a, b):
    """Matrix coproduct-style product: (A .ox. B)_ik = sum_j A_ij (x) B_jk."""
    n = a.rows
    out = []
    for i in range(n):
        row = []
        for k in range(n):
            acc = None
            for j in range(n):
                term = a.data[i][j].tensor(b.data[j][k])
                acc = term if acc is None else acc + term
            row.append(acc)
        out.append(row)
    return out


def hopf_checks(bundle):
    """Three sub-checks of the Hopf data on a quantum bundle:

    (a) the counit annihilates every RTT and orthogonality relation;
    (b) coassociativity of the matrix coproduct, checked structurally;
    (c) S(G) G - I equals C * (inverse-side orthogonality defect) exactly.
    """
    start = time.perf_counter()
    witness = []
    g = bundle.gen
    n = bundle.n

    rels = list(expand_rtt(bundle.rtt_r, g)) + \
        list(expand_orthogonality(g, bundle.ortho_c,
                                  c_inv=bundle.ortho_c_inverse))
    for rel in rels:
        img = apply_counit(rel.poly)
        if not img.is_zero():
            witness.append({"check": "counit", "relation": rel.label,
                            "residual": str(img)})

    lifted = [[_TensorPoly.from_poly(g.data[i][j]) for j in range(n)]
              for i in range(n)]

    class _Holder:                  # _codot needs only .rows and .data
        def __init__(self, data):
            self.data = data
            self.rows = len(data)
    h = _Holder(lifted)
    once = _Holder(_codot(h, h))
    left = _codot(once, h)
    right = _codot(h, once)
    for i in range(n):
        for j in range(n):
            if left[i][j] != right[i][j]:
                witness.append({"check": "coassociativity", "entry": (i + 1, j + 1)})

    cmat = _as_poly(bundle.ortho_c)
    cinv = _as_poly(bundle.ortho_c_inverse)
    s_g = cmat @ g.transpose() @ cinv
    ident = poly_identity(n, bundle.njs)
    lhs = s_g @ g - ident
    rhs = cmat @ (g.transpose() @ cinv @ g - cinv)
    diff = lhs - rhs
    for r, c, x in diff.entries():
        if not x.is_zero():
            witness.append({"check": "antipode", "entry": (r + 1, c + 1),
                            "residual": str(x)})

    return VerificationReport("hopf", not witness, witness,
                              time.perf_counter() - start)


def classical_limit(rel_set):
    """Evaluate every relation at v = 0 (E -> 1) and canonicalize."""
    return rel_set.map(lambda p: p.eval_v0())


def commutator_presentation(symbols, njs):
    """Canonicalized set {g h - h g} over all unordered pairs of symbols."""
    syms = sorted(set(symbols), key=lambda s: s.key())
    items = []
    for a in range(len(syms)):
        for b in range(a + 1, len(syms)):
            g, h = syms[a], syms[b]
            poly = NCPoly(njs, {(g, h): CKScalar.one(njs),
                                (h, g): -CKScalar.one(njs)})
            items.append((poly, "comm[%s,%s]" % (g, h)))
    return canonicalize_relations(items)
