"""Free noncommutative polynomials over the deformation ring, dense
matrices over either ring, tensor operations and relation canonicalization."""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple

from .errors import DimensionMismatch, NotAUnit, NotTriangular
from .scalar import BaseScalar, CKScalar

# Generator families.  t/t~ are the symplectic quantum generators, u the
# Cartesian quantum ones, a the classical Cartesian ones, l/l~ the dual
# functionals and l+/l- the diagonal functional symbols.
FAMILIES = ("t", "t~", "u", "a", "l", "l~", "l+", "l-")
_RANK = {f: k for k, f in enumerate(FAMILIES)}


class Sym(NamedTuple):
    family: str
    row: int
    col: int

    def key(self):
        return (_RANK[self.family], self.row, self.col)

    def __str__(self):
        return "%s%d%d" % (self.family, self.row, self.col)


def sym(family, row, col):
    if family not in _RANK:
        raise ValueError("unknown symbol family %r" % (family,))
    return Sym(family, row, col)


def word_key(word):
    return tuple(s.key() for s in word)


def word_str(word):
    return "·".join(str(s) for s in word) if word else "1"


class NCPoly:
    """Noncommutative polynomial: CKScalar coefficients on words of symbols.

    Multiplication concatenates words and never reorders them.
    """

    __slots__ = ("njs", "terms")

    def __init__(self, njs, terms=None):
        self.njs = njs
        clean = {}
        if terms:
            for word, coeff in terms.items():
                if not coeff.is_zero():
                    clean[word] = coeff
        self.terms = clean

    @classmethod
    def zero(cls, njs):
        return cls(njs)

    @classmethod
    def one(cls, njs):
        return cls(njs, {(): CKScalar.one(njs)})

    @classmethod
    def gen(cls, s, njs, coeff=None):
        if coeff is None:
            coeff = CKScalar.one(njs)
        return cls(njs, {(s,): coeff})

    @classmethod
    def const(cls, value, njs=None):
        if isinstance(value, CKScalar):
            return cls(value.njs, {(): value})
        return cls(njs, {(): CKScalar.const(njs, value)})

    def _coerce(self, other):
        if isinstance(other, NCPoly):
            if self.njs != other.njs:
                raise DimensionMismatch("polynomials over %d vs %d j symbols"
                                        % (self.njs, other.njs))
            return other
        if isinstance(other, CKScalar):
            return NCPoly.const(other)
        if isinstance(other, (int, Fraction, BaseScalar)):
            return NCPoly.const(CKScalar.const(self.njs, other))
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for word, coeff in other.terms.items():
            acc = terms.get(word)
            terms[word] = coeff if acc is None else acc + coeff
        return NCPoly(self.njs, terms)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly(self.njs, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, BaseScalar, CKScalar)):
            return self.scale(other)
        if not isinstance(other, NCPoly):
            return NotImplemented
        other = self._coerce(other)
        terms = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                word = w1 + w2
                c = c1 * c2
                acc = terms.get(word)
                terms[word] = c if acc is None else acc + c
        return NCPoly(self.njs, terms)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, BaseScalar, CKScalar)):
            return self.scale(other)
        return NotImplemented

    def scale(self, factor):
        if not isinstance(factor, CKScalar):
            factor = CKScalar.const(self.njs, factor)
        return NCPoly(self.njs, {w: c * factor for w, c in self.terms.items()})

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def is_zero(self):
        return not self.terms

    def map_coeffs(self, fn):
        return NCPoly(self.njs, {w: fn(c) for w, c in self.terms.items()})

    def specialize(self, sig):
        return self.map_coeffs(lambda c: c.specialize(sig))

    def eval_v0(self):
        return self.map_coeffs(lambda c: c.eval_v0())

    def substitute(self, table):
        """Replace symbols by polynomials; table maps Sym -> NCPoly."""
        out = NCPoly(self.njs)
        for word, coeff in self.terms.items():
            prod = NCPoly.const(coeff)
            for s in word:
                rep = table.get(s)
                prod = prod * (rep if rep is not None else NCPoly.gen(s, self.njs))
            out = out + prod
        return out

    def symbols(self):
        return {s for w in self.terms for s in w}

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: word_key(kv[0]))

    def sort_key(self):
        return tuple((word_key(w), c.key()) for w, c in self.sorted_terms())

    def lex_least_word(self):
        return min(self.terms, key=word_key)

    def __str__(self):
        if not self.terms:
            return "0"
        chunks = []
        for word, coeff in self.sorted_terms():
            cs = str(coeff)
            if not word:
                chunks.append(cs if ("+" not in cs[1:] and " - " not in cs) else "(%s)" % cs)
                continue
            ws = word_str(word)
            if cs == "1":
                chunks.append(ws)
            elif cs == "-1":
                chunks.append("-" + ws)
            else:
                if "+" in cs[1:] or " - " in cs:
                    cs = "(%s)" % cs
                chunks.append(cs + "·" + ws)
        out = chunks[0]
        for ch in chunks[1:]:
            out += " - " + ch[1:] if ch.startswith("-") else " + " + ch
        return out

    def __repr__(self):
        return "NCPoly(%d, %s)" % (self.njs, self)


class Matrix:
    """Dense rectangular matrix over CKScalar or NCPoly entries."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data):
        data = tuple(tuple(row) for row in data)
        self.rows = len(data)
        self.cols = len(data[0]) if data else 0
        for row in data:
            if len(row) != self.cols:
                raise DimensionMismatch("ragged matrix")
        self.data = data

    def __getitem__(self, rc):
        r, c = rc
        return self.data[r][c]

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.rows == other.rows
                and self.cols == other.cols and self.data == other.data)

    __hash__ = None

    def map(self, fn):
        return Matrix([[fn(x) for x in row] for row in self.data])

    def entries(self):
        for r, row in enumerate(self.data):
            for c, x in enumerate(row):
                yield r, c, x

    def __add__(self, other):
        self._conform(other, same=True)
        return Matrix([[a + b for a, b in zip(r1, r2)]
                       for r1, r2 in zip(self.data, other.data)])

    def __sub__(self, other):
        self._conform(other, same=True)
        return Matrix([[a - b for a, b in zip(r1, r2)]
                       for r1, r2 in zip(self.data, other.data)])

    def __neg__(self):
        return self.map(lambda x: -x)

    def _conform(self, other, same=False):
        if same:
            if (self.rows, self.cols) != (other.rows, other.cols):
                raise DimensionMismatch("matrix shapes differ")
        elif self.cols != other.rows:
            raise DimensionMismatch("inner dimensions differ")

    def __matmul__(self, other):
        self._conform(other)
        # skip zero entries; the structure matrices are sparse
        rows_nz = [[(k, x) for k, x in enumerate(row) if not x.is_zero()]
                   for row in self.data]
        zero = self.data[0][0] - self.data[0][0] if self.rows else None
        out = [[None] * other.cols for _ in range(self.rows)]
        for i in range(self.rows):
            for k, x in rows_nz[i]:
                brow = other.data[k]
                for j in range(other.cols):
                    y = brow[j]
                    if y.is_zero():
                        continue
                    p = x * y
                    acc = out[i][j]
                    out[i][j] = p if acc is None else acc + p
        fill = zero if zero is not None else other.data[0][0] - other.data[0][0]
        for i in range(self.rows):
            for j in range(other.cols):
                if out[i][j] is None:
                    out[i][j] = fill
        return Matrix(out)

    def transpose(self):
        return Matrix([[self.data[r][c] for r in range(self.rows)]
                       for c in range(self.cols)])

    def kron(self, other):
        """Kronecker product, row-major pair flattening (i,j) -> i*n + j.

        Entry order is self-entry times other-entry, which matters over
        noncommutative entries.
        """
        out = []
        for i in range(self.rows):
            for j in range(other.rows):
                row = []
                for k in range(self.cols):
                    for l in range(other.cols):
                        row.append(self.data[i][k] * other.data[j][l])
                out.append(row)
        return Matrix(out)

    def scale(self, factor):
        return self.map(lambda x: x * factor)

    def is_zero(self):
        return all(x.is_zero() for _, _, x in self.entries())

    def specialize(self, sig):
        return self.map(lambda x: x.specialize(sig))

    def eval_v0(self):
        return self.map(lambda x: x.eval_v0())

    def __str__(self):
        return "\n".join("[" + ", ".join(str(x) for x in row) + "]" for row in self.data)


# -- ring-specific constructors ---------------------------------------

def scalar_matrix(njs, rows):
    """Matrix of CKScalars from a nested list of CKScalar/int/Fraction/BaseScalar."""
    def conv(x):
        if isinstance(x, CKScalar):
            return x
        return CKScalar.const(njs, x)
    return Matrix([[conv(x) for x in row] for row in rows])

def scalar_identity(n, njs):
    one, zero = CKScalar.one(njs), CKScalar.zero(njs)
    return Matrix([[one if i == j else zero for j in range(n)] for i in range(n)])

def scalar_zero(rows, cols, njs):
    z = CKScalar.zero(njs)
    return Matrix([[z for _ in range(cols)] for _ in range(rows)])

def poly_identity(n, njs):
    one, zero = NCPoly.one(njs), NCPoly.zero(njs)
    return Matrix([[one if i == j else zero for j in range(n)] for i in range(n)])

def lift_to_poly(mat, njs=None):
    """Scalar matrix -> matrix of constant NCPolys."""
    return mat.map(lambda x: NCPoly.const(x) if isinstance(x, CKScalar) else x)

def flip_matrix(n, njs):
    """The n^2 x n^2 permutation P with P(u (x) w) = w (x) u."""
    one, zero = CKScalar.one(njs), CKScalar.zero(njs)
    out = []
    for i in range(n):
        for j in range(n):
            row = [zero] * (n * n)
            row[j * n + i] = one
            out.append(row)
    return Matrix(out)

def embed_left(mat, n):
    """G -> G (x) I_n over the entry ring of G."""
    return mat.kron(_identity_like(mat, n))

def embed_right(mat, n):
    """G -> I_n (x) G over the entry ring of G."""
    return _identity_like(mat, n).kron(mat)

def _identity_like(mat, n):
    probe = mat.data[0][0]
    if isinstance(probe, NCPoly):
        return poly_identity(n, probe.njs)
    return scalar_identity(n, probe.njs)


# -- triangular and adjugate inversion ---------------------------------

def tri_inverse(mat):
    """Exact inverse of a triangular scalar matrix with unit-monomial diagonal."""
    n = mat.rows
    if n != mat.cols:
        raise DimensionMismatch("square matrix required")
    lower = all(mat.data[r][c].is_zero() for r in range(n) for c in range(r + 1, n))
    upper = all(mat.data[r][c].is_zero() for r in range(n) for c in range(r))
    if not (lower or upper):
        raise NotTriangular("matrix is neither lower nor upper triangular")
    if upper and not lower:
        return tri_inverse(mat.transpose()).transpose()
    njs = mat.data[0][0].njs
    inv_diag = [mat.data[k][k].inverse() for k in range(n)]
    zero = CKScalar.zero(njs)
    out = [[zero] * n for _ in range(n)]
    for j in range(n):
        out[j][j] = inv_diag[j]
        for i in range(j + 1, n):
            s = zero
            for k in range(j, i):
                s = s + mat.data[i][k] * out[k][j]
            out[i][j] = -(inv_diag[i] * s)
    return Matrix(out)


def determinant(mat):
    """Exact determinant of a scalar matrix (expansion with column-mask memo)."""
    n = mat.rows
    if n != mat.cols:
        raise DimensionMismatch("square matrix required")
    njs = mat.data[0][0].njs
    full = (1 << n) - 1
    memo = {}

    def rec(r, mask):
        if r == n:
            return CKScalar.one(njs)
        hit = memo.get(mask)
        if hit is not None:
            return hit
        total = CKScalar.zero(njs)
        sign = 1
        for c in range(n):
            bit = 1 << c
            if not mask & bit:
                continue
            x = mat.data[r][c]
            if not x.is_zero():
                sub = rec(r + 1, mask & ~bit)
                total = total + (x * sub if sign > 0 else -(x * sub))
            sign = -sign
        memo[mask] = total
        return total

    return rec(0, full)


def adjugate_inverse(mat):
    """Exact inverse via the adjugate; the determinant must be a unit monomial."""
    n = mat.rows
    det = determinant(mat)
    det_inv = det.inverse()          # NotAUnit if det is not a unit monomial
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            minor = Matrix([[mat.data[r][c] for c in range(n) if c != i]
                            for r in range(n) if r != j])
            cof = determinant(minor)
            if (i + j) % 2:
                cof = -cof
            row.append(cof * det_inv)
        rows.append(row)
    return Matrix(rows)


# -- relations ----------------------------------------------------------

class Relation:
    """A polynomial understood as '= 0', with a provenance label."""

    __slots__ = ("poly", "label")

    def __init__(self, poly, label=""):
        self.poly = poly
        self.label = label

    def __eq__(self, other):
        return isinstance(other, Relation) and self.poly == other.poly

    __hash__ = None

    def __str__(self):
        return "%s: %s = 0" % (self.label or "rel", self.poly)

    def __repr__(self):
        return "Relation(%s)" % self


def _sign_of(coeff):
    """Canonical sign of a CKScalar: sign of the first nonzero rational
    component of its least monomial's coefficient."""
    key, base = min(coeff.terms.items(), key=lambda kv: kv[0])
    for val in (base.a, base.b, base.c, base.d):
        if val:
            return 1 if val > 0 else -1
    return 1


def normalize_poly(poly):
    """Scale so the lexicographically-least word has coefficient 1 when that
    coefficient is a unit monomial; otherwise only normalize the sign."""
    if poly.is_zero():
        return poly
    least = poly.lex_least_word()
    coeff = poly.terms[least]
    if coeff.is_monomial():
        (e, vdeg, jexp), base = coeff.single_term()
        if vdeg == 0:
            return poly.scale(coeff.inverse())
    if _sign_of(coeff) < 0:
        return -poly
    return poly


class RelationSet:
    """Canonically ordered, deduplicated list of relations."""

    __slots__ = ("relations",)

    def __init__(self, relations):
        self.relations = tuple(relations)

    def __iter__(self):
        return iter(self.relations)

    def __len__(self):
        return len(self.relations)

    def __getitem__(self, k):
        return self.relations[k]

    def __eq__(self, other):
        if not isinstance(other, RelationSet):
            return NotImplemented
        return [r.poly.terms for r in self] == [r.poly.terms for r in other]

    __hash__ = None

    def polys(self):
        return [r.poly for r in self.relations]

    def map(self, fn):
        return canonicalize_relations([(fn(r.poly), r.label) for r in self.relations])

    def specialize(self, sig):
        return self.map(lambda p: p.specialize(sig))

    def restrict(self, symbols):
        """Sub-set of relations whose words use only the given symbols."""
        allowed = set(symbols)
        keep = [r for r in self.relations
                if all(set(w) <= allowed for w in r.poly.terms)]
        return RelationSet(keep)

    def __str__(self):
        return "\n".join(str(r) for r in self.relations)


def canonicalize_relations(items):
    """Build a RelationSet from (poly, label) pairs or bare polys:
    drop zeros, normalize, sort, deduplicate."""
    pairs = []
    for item in items:
        if isinstance(item, Relation):
            poly, label = item.poly, item.label
        elif isinstance(item, tuple):
            poly, label = item
        else:
            poly, label = item, ""
        if poly.is_zero():
            continue
        pairs.append((normalize_poly(poly), label))
    pairs.sort(key=lambda pl: (pl[0].sort_key(), pl[1]))
    out = []
    last_key = None
    for poly, label in pairs:
        key = poly.sort_key()
        if key == last_key:
            continue
        last_key = key
        out.append(Relation(poly, label))
    return RelationSet(out)


def split_by_j(poly):
    """Split into j-homogeneous parts; yields (jexp, part) in canonical order."""
    buckets = {}
    for word, coeff in poly.terms.items():
        for jexp in coeff.jexp_support():
            if jexp in buckets:
                continue
            buckets[jexp] = None
    out = []
    for jexp in sorted(buckets):
        part = NCPoly(poly.njs, {w: c.coefficient_of_j(jexp)
                                 for w, c in poly.terms.items()})
        if not part.is_zero():
            out.append((jexp, part))
    return out
