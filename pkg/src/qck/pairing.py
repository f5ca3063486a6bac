"""The duality pairing <L(+/-), T> = R(+/-), component extraction of
functional values, functional evaluation on words, and the dual algebra
relation presentation."""

from __future__ import annotations

from fractions import Fraction

from .errors import (BadDimension, InconsistentPairing, WordTooLong)
from .freealg import (Matrix, NCPoly, Sym, canonicalize_relations,
                      lift_to_poly, poly_identity, sym)
from .scalar import BaseScalar, CKScalar, JSignature
from .structures import (c_q, l_matrices, r_minus, r_plus, symplectic_quantum)

_I = BaseScalar(0, 1)
_MINUS_I = BaseScalar(0, -1)


def _components(poly):
    """Decompose a linear generator/functional polynomial into
    (symbol, unit BaseScalar, j-exponent vector) triples."""
    out = []
    for word, coeff in poly.terms.items():
        (s,) = word
        (e, vdeg, jexp), base = coeff.single_term()
        if e or vdeg:
            raise InconsistentPairing("dressing of %s carries E or v" % (s,))
        out.append((s, base, jexp))
    return out


class PairingTable:
    """Map (functional symbol, generator symbol) -> scalar value.

    Values absent from the map are zero.  The table also retains the
    entry decompositions of L+/-, needed to evaluate entry functionals
    on words by the matrix-product rule.
    """

    def __init__(self, n, values, l_plus, l_minus, gen_symbols):
        self.n = n
        self.njs = n - 1
        self.values = values
        self.l_plus = l_plus
        self.l_minus = l_minus
        self.gen_symbols = gen_symbols
        self._value_mats = {}

    def value(self, f, g):
        v = self.values.get((f, g))
        return v if v is not None else CKScalar.zero(self.njs)

    def nonzero_items(self):
        return sorted(self.values.items(),
                      key=lambda kv: (kv[0][0].key(), kv[0][1].key()))

    def specialize(self, sig):
        values = {}
        for key, val in self.values.items():
            sp = val.specialize(sig)
            if not sp.is_zero():
                values[key] = sp
        out = PairingTable(self.n, values, self.l_plus, self.l_minus,
                           self.gen_symbols)
        return out

    # -- evaluation on words ------------------------------------------

    def _value_matrix(self, side, g):
        key = (side, g)
        mat = self._value_mats.get(key)
        if mat is not None:
            return mat
        lmat = self.l_plus if side == "+" else self.l_minus
        rows = []
        for a in range(self.n):
            row = []
            for b in range(self.n):
                total = CKScalar.zero(self.njs)
                entry = lmat.data[a][b]
                if not entry.is_zero():
                    for f, base, jexp in _components(entry):
                        val = self.values.get((f, g))
                        if val is not None:
                            total = total + CKScalar.j_monomial(
                                self.njs, jexp, coeff=base) * val
                row.append(total)
            rows.append(row)
        self._value_mats[key] = rows
        return rows

    def eval_entry_functional(self, side, i, j, word, bound=4):
        """<L^side_{ij}, word> by the matrix-product rule; the empty word
        gives the counit value (identity matrix entry)."""
        if side not in ("+", "-"):
            raise ValueError("side must be + or -")
        if len(word) > bound:
            raise WordTooLong("word of length %d exceeds bound %d"
                              % (len(word), bound))
        vec = [CKScalar.one(self.njs) if a == i - 1 else CKScalar.zero(self.njs)
               for a in range(self.n)]
        for g in word:
            vmat = self._value_matrix(side, g)
            vec = [sum((vec[a] * vmat[a][b] for a in range(self.n)),
                       CKScalar.zero(self.njs)) for b in range(self.n)]
        return vec[j - 1]

    # -- the published N=3 component table -----------------------------

    def paper_items(self):
        """The table in the paper's own key space for N = 3: the diagonal
        functional splits into an untilded and a tilded component, the
        tilded one absorbing a factor i."""
        if self.n != 3:
            raise BadDimension("paper key space is defined for N = 3")
        out = {}
        lp11 = sym("l+", 1, 1)
        for g in self.gen_symbols:
            val = self.value(lp11, g)
            if g.family == "t~":
                out[("l~11", str(g))] = val * _MINUS_I
            else:
                out[("l11", str(g))] = val
        for f in (sym("l", 1, 2), sym("l~", 1, 2), sym("l", 2, 1),
                  sym("l~", 2, 1), sym("l", 1, 3), sym("l~", 1, 3)):
            for g in self.gen_symbols:
                out[(str(f), str(g))] = self.value(f, g)
        return out


def _parity(s):
    return 1 if s.family.endswith("~") else 0


def build_pairing_table(n, sig=None):
    """Solve <L^{+/-}(j), T(j)> = R^{+/-}(j) for the component values.

    Every unknown <f, g> is written as (inverse dressing monomial) times a
    j-free scalar; matching j-monomials then turns each matrix entry into a
    linear equation over Q(i, sqrt2) with exact scalar right-hand sides.
    Undetermined pairs (they arise only where an untilded and a tilded
    functional enter with identical dressing) resolve to the
    parity-matching component, the paper's implicit convention.
    Contradictory equations raise InconsistentPairing.
    """
    if n < 3:
        raise BadDimension("dimension must be at least 3, got %d" % n)
    njs = n - 1
    t_mat = symplectic_quantum(n)
    lp_mat, lm_mat = l_matrices(n)
    r_of = {"+": r_plus(n), "-": r_minus(n)}
    l_of = {"+": lp_mat, "-": lm_mat}

    gen_symbols = sorted({s for _, _, p in t_mat.entries() for s in p.symbols()},
                         key=lambda s: s.key())
    t_comp = [[_components(t_mat.data[k][l]) for l in range(n)] for k in range(n)]

    monomials = {}          # (f, g) -> dressing j-exponent tuple
    pivots = {}             # unknown -> (row dict, rhs CKScalar)

    def unknown_key(fg):
        f, g = fg
        return (1 - (_parity(f) == _parity(g)), f.key(), g.key())

    def reduce_and_insert(row, rhs, where):
        for u in sorted(row, key=unknown_key):
            piv = pivots.get(u)
            if piv is None:
                continue
            factor = row.pop(u)
            prow, prhs = piv
            for u2, c2 in prow.items():
                if u2 == u:
                    continue
                acc = row.get(u2)
                val = (acc if acc is not None else BaseScalar()) - factor * c2
                if val.is_zero():
                    row.pop(u2, None)
                else:
                    row[u2] = val
            rhs = rhs - prhs.scale(factor)
        if not row:
            if not rhs.is_zero():
                raise InconsistentPairing("contradictory equation at %s: %s"
                                          % (where, rhs))
            return
        u = min(row, key=unknown_key)
        inv = row.pop(u).inverse()
        row = {u2: c * inv for u2, c in row.items()}
        rhs = rhs.scale(inv)
        # keep the system fully reduced
        for u2, (prow, prhs) in list(pivots.items()):
            c = prow.get(u)
            if c is None:
                continue
            prow.pop(u)
            for u3, c3 in row.items():
                acc = prow.get(u3)
                val = (acc if acc is not None else BaseScalar()) - c * c3
                if val.is_zero():
                    prow.pop(u3, None)
                else:
                    prow[u3] = val
            pivots[u2] = (prow, prhs - rhs.scale(c))
        pivots[u] = (row, rhs)

    for side in ("+", "-"):
        lmat, rmat = l_of[side], r_of[side]
        for i in range(n):
            for j in range(n):
                lentry = lmat.data[i][j]
                lcomp = _components(lentry) if not lentry.is_zero() else []
                for k in range(n):
                    for l in range(n):
                        rhs = rmat.data[i * n + k][j * n + l]
                        row = {}
                        for f, fb, fj in lcomp:
                            for g, gb, gj in t_comp[k][l]:
                                m = tuple(x + y for x, y in zip(fj, gj))
                                seen = monomials.get((f, g))
                                if seen is None:
                                    monomials[(f, g)] = m
                                elif seen != m:
                                    raise InconsistentPairing(
                                        "dressing of <%s,%s> is ambiguous" % (f, g))
                                unit = fb * gb
                                acc = row.get((f, g))
                                row[(f, g)] = unit if acc is None else acc + unit
                        row = {u: c for u, c in row.items() if not c.is_zero()}
                        if row or not rhs.is_zero():
                            reduce_and_insert(dict(row), rhs,
                                              "L%s[%d,%d] x T[%d,%d]"
                                              % (side, i + 1, j + 1, k + 1, l + 1))

    values = {}
    for u, (row, rhs) in pivots.items():
        # remaining row entries are free unknowns, fixed to zero
        if rhs.is_zero():
            continue
        m = monomials[u]
        val = CKScalar.j_monomial(njs, tuple(-x for x in m)) * rhs
        values[u] = val

    table = PairingTable(n, values, lp_mat, lm_mat, gen_symbols)
    if sig is not None:
        table = table.specialize(sig)
    return table


# -- printed-table comparison (the N=3 list in the source article) -------

def published_table_n3():
    """The printed N=3 component values, in the paper's key space."""
    from .scalar import hyper
    njs = 2
    i = CKScalar.const(njs, _I)
    jm = lambda a, b: CKScalar.j_monomial(njs, (a, b))
    sinh = lambda k: hyper("sinh", k, njs)
    cosh = lambda k: hyper("cosh", k, njs)
    half = Fraction(1, 2)
    s31 = (sinh(3) + sinh(1)).scale(half)        # (sinh 3Jv/2 + sinh Jv/2)/2
    c31 = (cosh(3) - cosh(1)).scale(half)        # (cosh 3Jv/2 - cosh Jv/2)/2
    c2m1 = (cosh(4) - CKScalar.one(njs)).scale(half)
    s2d = sinh(2).scale(2) - sinh(4)             # 2 sinh Jv - sinh 2Jv
    out = {
        ("l11", "t22"): CKScalar.one(njs),
        ("l11", "t11"): cosh(2),
        ("l~11", "t~11"): -(jm(-1, -1) * sinh(2)),
        ("l12", "t~21"): -(i * jm(1, -1) * sinh(2)),
        ("l12", "t~12"): i * jm(1, -1) * s31,
        ("l12", "t12"): c31,
        ("l~12", "t~12"): c31,
        ("l~12", "t21"): i * jm(-1, 1) * sinh(2),
        ("l~12", "t12"): -(i * jm(-1, 1) * s31),
        ("l21", "t~12"): -(i * jm(1, -1) * sinh(2)),
        ("l21", "t~21"): i * jm(1, -1) * s31,
        ("l21", "t21"): c31,
        ("l~21", "t~21"): c31,
        ("l~21", "t12"): i * jm(-1, 1) * sinh(2),
        ("l~21", "t21"): -(i * jm(-1, 1) * s31),
        ("l13", "t13"): c2m1,
        ("l~13", "t~13"): c2m1,
        ("l13", "t~13"): -(i * jm(-1, -1) * s2d),
        ("l~13", "t13"): i * jm(1, 1) * s2d,
    }
    return out


def check_printed_table(table):
    """Compare the computed N=3 table against the printed list; returns the
    mismatches as dicts (computed vs printed), never forcing agreement."""
    computed = table.paper_items()
    printed = published_table_n3()
    mismatches = []
    for key, pval in sorted(printed.items()):
        cval = computed.get(key, CKScalar.zero(table.njs))
        if cval != pval:
            mismatches.append({"functional": key[0], "generator": key[1],
                               "computed": str(cval), "printed": str(pval)})
    return mismatches


# -- dual algebra relations ----------------------------------------------

def _diag_reduction(n):
    """Identify the minus diagonal with the mirrored plus diagonal and set
    the middle diagonal entry to 1, the paper's convention for the
    functional matrices."""
    njs = n - 1
    table = {}
    one = NCPoly.one(njs)
    for k in range(1, n + 1):
        mirror = n + 1 - k
        if 2 * k == n + 1:
            table[sym("l+", k, k)] = one
            table[sym("l-", k, k)] = one
        else:
            table[sym("l-", k, k)] = NCPoly.gen(sym("l+", mirror, mirror), njs)
    return table


def derive_dual_relations(n, include_orthogonality=True, reduce_diagonal=True):
    """Relations of the dual algebra from R+ L1 L2 = L2 L1 R+ for the
    (+,+), (-,-) and (+,-) pairs, plus the metric and diagonal constraints.

    Entries are kept whole (no splitting by j-monomial): the functional
    dressings carry inverse j powers, so the j-homogeneous parts of one
    entry are not separately valid relations of the dual algebra.
    """
    if n < 3:
        raise BadDimension("dimension must be at least 3, got %d" % n)
    njs = n - 1
    lp_mat, lm_mat = l_matrices(n)
    rp = lift_to_poly(r_plus(n))
    ident = poly_identity(n, njs)
    items = []
    for tag, a_mat, b_mat in (("rll[++]", lp_mat, lp_mat),
                              ("rll[--]", lm_mat, lm_mat),
                              ("rll[+-]", lp_mat, lm_mat)):
        a1 = a_mat.kron(ident)
        b2 = ident.kron(b_mat)
        delta = rp @ a1 @ b2 - b2 @ a1 @ rp
        for r, c, poly in delta.entries():
            if not poly.is_zero():
                items.append((poly, "%s[%d,%d]" % (tag, r + 1, c + 1)))
    if include_orthogonality:
        ct = lift_to_poly(c_q(n).transpose())
        for tag, lmat in (("lorth[+]", lp_mat), ("lorth[-]", lm_mat)):
            delta = lmat @ ct @ lmat - ct
            for r, c, poly in delta.entries():
                if not poly.is_zero():
                    items.append((poly, "%s[%d,%d]" % (tag, r + 1, c + 1)))
        one = NCPoly.one(njs)
        for k in range(1, n + 1):
            pk = NCPoly.gen(sym("l+", k, k), njs)
            mk = NCPoly.gen(sym("l-", k, k), njs)
            items.append((pk * mk - one, "ldiag[%d+-]" % k))
            items.append((mk * pk - one, "ldiag[%d-+]" % k))
        prod = one
        for k in range(1, n + 1):
            prod = prod * NCPoly.gen(sym("l+", k, k), njs)
        items.append((prod - one, "ldiag[prod]"))
    if reduce_diagonal:
        table = _diag_reduction(n)
        items = [(poly.substitute(table), label) for poly, label in items]
    return canonicalize_relations(items)


# -- the published N=3 Hopf presentation ---------------------------------

class CKAlgebraPresentation:
    """Verbatim Hopf data of the three-generator quantum algebra, stored as
    text with contraction-parameter slots; purely informational."""

    def __init__(self, generators, lines, notes):
        self.generators = generators
        self.lines = lines
        self.notes = notes

    def render(self):
        out = ["generators: " + ", ".join(self.generators)]
        out += ["%s:  %s" % (label, text) for label, text in self.lines]
        out += ["note: " + n for n in self.notes]
        return "\n".join(out)

    def __str__(self):
        return self.render()


_PRESENTATION_TEMPLATE = (
    ("coproduct X02", "Delta(X02) = I (x) X02 + X02 (x) I"),
    ("coproduct X01,X12", "Delta(X) = e^{-v X02/2} (x) X + X (x) e^{v X02/2},  X = X01, X12"),
    ("counit", "eps(X01) = eps(X02) = eps(X12) = 0"),
    ("antipode X02", "S(X02) = -X02"),
    ("antipode X01", "S(X01) = -X01 cos(<J>v/2) + <j1:2> X12 <J:-1> sin(<J>v/2)"),
    ("antipode X12", "S(X12) = -X12 cos(<J>v/2) - <j2:2> X01 <J:-1> sin(<J>v/2)"),
    ("commutator [X01,X02]", "[X01,X02] = <j1:2> X12"),
    ("commutator [X02,X12]", "[X02,X12] = <j2:2> X01"),
    ("commutator [X12,X01]", "[X12,X01] = sinh(v X02)/v"),
    ("isomorphism l11", "l11 = e^{v X02}"),
    ("isomorphism l12", "<j1:-1> l12 = <j2:1> E X01 e^{v X02/2}"),
    ("isomorphism l~12", "<j2:-1> l~12 = -<j1:1> E X12 e^{v X12/2}"),
    ("isomorphism E", "E = i (v <J:-1> sin(<J>v))^{1/2} e^{-<J>v}"),
)


def _render_token(name, power, sig, notes):
    """One contraction-parameter slot as text under the signature."""
    if sig is None:
        body = name if power == 1 else "%s^%d" % (name, power)
        return body
    toks = list(sig)
    if name == "J":
        parts = [(k, toks[k], power) for k in range(len(toks))]
    else:
        k = int(name[1:]) - 1
        parts = [(k, toks[k], power)]
    i_power = 0
    text = []
    for k, tok, p in parts:
        if tok == "1":
            continue
        if tok == "i":
            i_power += p
        else:
            body = "iota%d" % (k + 1)
            text.append(body if p == 1 else "%s^%d" % (body, p))
            if p >= 2:
                note = "%s^%d = 0" % (body, p)
                if note not in notes:
                    notes.append(note)
            elif p < 0:
                note = "%s^%d is formally undefined" % (body, p)
                if note not in notes:
                    notes.append(note)
    prefix = ("", "i·", "-", "-i·")[i_power % 4]
    body = "·".join(text)
    if prefix and not body:
        return prefix.rstrip("·")
    return prefix + body


def present_ck_algebra(n, sig=None):
    """The stored N=3 Hopf presentation with parameters substituted
    textually; no arithmetic is performed or verified."""
    if n != 3:
        raise BadDimension("presentation data exists for N = 3 only")
    notes = []
    lines = []
    for label, template in _PRESENTATION_TEMPLATE:
        text = template
        while "<" in text:
            a = text.index("<")
            b = text.index(">", a)
            slot = text[a + 1:b]
            if ":" in slot:
                name, power = slot.split(":")
                power = int(power)
            else:
                name, power = slot, 1
            text = text[:a] + _render_token(name, power, sig, notes) + text[b + 1:]
        lines.append((label, " ".join(text.split())))
    return CKAlgebraPresentation(("X01", "X02", "X12"), lines, notes)
