"""Constructors for the structural matrices: the deformed metric chain
C0, C, C', the similarity matrix D between the symplectic and Cartesian
bases, the lower triangular R-matrix and its flips/inverses, and the
generator matrices with contraction-parameter prefactors."""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property

from .errors import BadDimension, DimensionMismatch
from .freealg import (Matrix, NCPoly, Sym, adjugate_inverse, flip_matrix,
                      lift_to_poly, poly_identity, scalar_identity,
                      scalar_zero, sym, tri_inverse)
from .scalar import BaseScalar, CKScalar

_HALF = Fraction(1, 2)
_INV_SQRT2 = BaseScalar(0, 0, _HALF)          # 1/sqrt2 = sqrt2/2
_I_INV_SQRT2 = BaseScalar(0, 0, 0, _HALF)     # i/sqrt2
_SQRT2 = BaseScalar(0, 0, 1)
_I = BaseScalar(0, 1)


def _check_dim(n):
    if n < 3:
        raise BadDimension("dimension must be at least 3, got %d" % n)


def rho_half_steps(n):
    """The vector 2*rho as integers: (N-2k) for k <= floor(N/2), mirrored
    with opposite signs (middle zero for odd N, doubled zero for even)."""
    _check_dim(n)
    half = [n - 2 * k for k in range(1, n // 2 + 1)]
    if n % 2:
        return tuple(half + [0] + [-x for x in reversed(half)])
    return tuple(half + [-x for x in reversed(half)])


def c0_matrix(n):
    """Antidiagonal unit matrix."""
    _check_dim(n)
    njs = n - 1
    rows = []
    for r in range(n):
        row = [CKScalar.zero(njs)] * n
        row[n - 1 - r] = CKScalar.one(njs)
        rows.append(row)
    return Matrix(rows)


def c_q(n):
    """Deformed metric C = C0 q^rho, entries on the antidiagonal only."""
    _check_dim(n)
    njs = n - 1
    rho2 = rho_half_steps(n)
    rows = []
    for r in range(n):
        row = [CKScalar.zero(njs)] * n
        c = n - 1 - r
        row[c] = CKScalar.e_power(njs, rho2[c])
        rows.append(row)
    return Matrix(rows)


def d_matrix(n):
    """The similarity matrix to the Cartesian basis: each row mixes an index
    with its mirror, 1/sqrt2 weights, middle row untouched for odd N."""
    _check_dim(n)
    njs = n - 1
    rows = []
    for r in range(n):
        row = [CKScalar.zero(njs)] * n
        m = n - 1 - r
        if r < m:
            row[r] = CKScalar.const(njs, _INV_SQRT2)
            row[m] = CKScalar.const(njs, _INV_SQRT2)
        elif r == m:
            row[r] = CKScalar.one(njs)
        else:
            row[r] = CKScalar.const(njs, -_I_INV_SQRT2)
            row[m] = CKScalar.const(njs, _I_INV_SQRT2)
        rows.append(row)
    return Matrix(rows)


def d_inverse(n):
    """Exact inverse of D; since D C0 D^t = I, it equals C0 D^t."""
    return c0_matrix(n) @ d_matrix(n).transpose()


def c_prime(n):
    """Cartesian metric C' = D C D^t."""
    d = d_matrix(n)
    return d @ c_q(n) @ d.transpose()


def c_prime_inverse(n):
    """Exact inverse of C' via the adjugate (C' is not triangular)."""
    return adjugate_inverse(c_prime(n))


def r_q(n):
    """The lower triangular orthogonal R-matrix with q = E^2.

    R = sum_{i,k} q^{d_ik - d_ik'} e_ii (x) e_kk
        + (q - 1/q) sum_{i>k} (e_ik (x) e_ki - q^{rho_i - rho_k} e_ik (x) e_i'k')
    with k' = N+1-k.  Written with z -> Jv it is the CK matrix R_v(j).
    """
    _check_dim(n)
    njs = n - 1
    rho2 = rho_half_steps(n)
    size = n * n
    rows = [[CKScalar.zero(njs)] * size for _ in range(size)]

    def add(r, c, val):
        rows[r][c] = rows[r][c] + val

    def flat(i, k):          # 1-based pair -> 0-based row-major
        return (i - 1) * n + (k - 1)

    for i in range(1, n + 1):
        for k in range(1, n + 1):
            exp = 2 * ((1 if i == k else 0) - (1 if i == n + 1 - k else 0))
            add(flat(i, k), flat(i, k), CKScalar.e_power(njs, exp))
    for i in range(1, n + 1):
        for k in range(1, i):
            two_sinh = CKScalar.e_power(njs, 2) - CKScalar.e_power(njs, -2)
            add(flat(i, k), flat(k, i), two_sinh)
            shift = rho2[i - 1] - rho2[k - 1]
            add(flat(i, n + 1 - i), flat(k, n + 1 - k),
                -(two_sinh * CKScalar.e_power(njs, shift)))
    return Matrix(rows)


def cartesian_conjugate(mat, n):
    """(D (x) D) M (D (x) D)^{-1}; sends R to the nontriangular Cartesian R."""
    if mat.rows != n * n or mat.cols != n * n:
        raise DimensionMismatch("expected an N^2 x N^2 matrix")
    d = d_matrix(n)
    dinv = d_inverse(n)
    return d.kron(d) @ mat @ dinv.kron(dinv)


def r_cartesian(n):
    return cartesian_conjugate(r_q(n), n)


def r_plus(n):
    """R^+ = P R P (flip conjugation of the CK R-matrix)."""
    p = flip_matrix(n, n - 1)
    return p @ r_q(n) @ p


def r_minus(n):
    """R^- = R^{-1}, exact triangular inversion."""
    return tri_inverse(r_q(n))


# -- generator matrices -------------------------------------------------

def j_prefactor(n, k, p):
    """The contraction monomial on entry (k,p): product of j_r between the
    two indices (empty product on the diagonal)."""
    lo, hi = min(k, p), max(k, p)
    jexp = [0] * (n - 1)
    for r in range(lo, hi):
        jexp[r - 1] = 1
    return CKScalar.j_monomial(n - 1, tuple(jexp))


def _dressed(n, family):
    njs = n - 1
    rows = []
    for k in range(1, n + 1):
        row = []
        for p in range(1, n + 1):
            row.append(NCPoly.gen(sym(family, k, p), njs, coeff=j_prefactor(n, k, p)))
        rows.append(row)
    return Matrix(rows)


def cartesian_classical(n):
    """A(j): independent symbols a_kp with j prefactors."""
    _check_dim(n)
    return _dressed(n, "a")


def cartesian_quantum(n):
    """U(j): noncommutative generators u_ik with j prefactors."""
    _check_dim(n)
    return _dressed(n, "u")


def symplectic_classical(n):
    """B(j) = D^{-1} A(j) D over the same a symbols."""
    dinv = lift_to_poly(d_inverse(n))
    d = lift_to_poly(d_matrix(n))
    return dinv @ cartesian_classical(n) @ d


def _t_rotation_3():
    """Change of generators u -> (t, t~) that puts the N=3 symplectic matrix
    in its standard two-component form."""
    njs = 2
    g = lambda fam, r, c: NCPoly.gen(sym(fam, r, c), njs)
    s2 = CKScalar.const(njs, _SQRT2)
    return {
        sym("u", 1, 1): g("t", 1, 1) + g("t", 1, 3),
        sym("u", 3, 3): g("t", 1, 1) - g("t", 1, 3),
        sym("u", 1, 3): g("t~", 1, 3) + g("t~", 1, 1),
        sym("u", 3, 1): g("t~", 1, 3) - g("t~", 1, 1),
        sym("u", 1, 2): g("t", 1, 2) * s2,
        sym("u", 3, 2): g("t~", 1, 2) * s2,
        sym("u", 2, 1): g("t", 2, 1) * s2,
        sym("u", 2, 3): g("t~", 2, 1) * s2,
        sym("u", 2, 2): g("t", 2, 2),
    }


def symplectic_quantum(n):
    """T(j) = D^{-1} U(j) D; for N=3 rewritten over the t/t~ generators so
    every entry is (j-monomial)*t +- i*(j-monomial)*t~."""
    dinv = lift_to_poly(d_inverse(n))
    d = lift_to_poly(d_matrix(n))
    t = dinv @ cartesian_quantum(n) @ d
    if n == 3:
        rot = _t_rotation_3()
        t = t.map(lambda p: p.substitute(rot))
    return t


_L_FAMILY = {"t": "l", "t~": "l~", "u": "l"}


def _functional_entry(poly):
    """Apply the dual-side dressing rule to one generator-matrix entry:
    swap each generator letter for its functional letter and invert the
    j-monomial carried by its coefficient."""
    out = NCPoly.zero(poly.njs)
    for word, coeff in poly.terms.items():
        (s,) = word
        (e, vdeg, jexp), base = coeff.single_term()
        inv = CKScalar.monomial(poly.njs, coeff=base, e=e, vdeg=vdeg,
                                jexp=tuple(-x for x in jexp))
        out = out + NCPoly.gen(sym(_L_FAMILY[s.family], s.row, s.col),
                               poly.njs, coeff=inv)
    return out


def l_matrices(n):
    """Upper/lower triangular functional matrices (L+, L-).

    Off-diagonal entries mirror the generator matrix with inverted j
    prefactors; diagonal entries are independent symbols l+kk, l-kk whose
    constraints are emitted as relations, not imposed structurally.
    """
    t = symplectic_quantum(n)
    njs = n - 1
    zero = NCPoly.zero(njs)
    plus, minus = [], []
    for i in range(1, n + 1):
        prow, mrow = [], []
        for j in range(1, n + 1):
            if i == j:
                prow.append(NCPoly.gen(sym("l+", i, i), njs))
                mrow.append(NCPoly.gen(sym("l-", i, i), njs))
            elif i < j:
                prow.append(_functional_entry(t.data[i - 1][j - 1]))
                mrow.append(zero)
            else:
                prow.append(zero)
                mrow.append(_functional_entry(t.data[i - 1][j - 1]))
        plus.append(prow)
        minus.append(mrow)
    return Matrix(plus), Matrix(minus)


def counit_value(s):
    """epsilon on one generator symbol (the image of G -> I entrywise)."""
    if s.family in ("l+", "l-"):
        return 1
    if s.family in ("t", "u", "a") and s.row == s.col:
        return 1
    return 0


class StructureBundle:
    """All structural matrices for one dimension, basis and mode.

    Everything is built lazily and exactly; the contraction parameters stay
    formal (specialization is applied by the operations that need it).
    """

    def __init__(self, n, basis="symplectic", mode="quantum"):
        _check_dim(n)
        if basis not in ("symplectic", "cartesian"):
            raise ValueError("basis must be symplectic or cartesian")
        if mode not in ("quantum", "classical"):
            raise ValueError("mode must be quantum or classical")
        self.n = n
        self.njs = n - 1
        self.basis = basis
        self.mode = mode

    @cached_property
    def rho2(self):
        return rho_half_steps(self.n)

    @cached_property
    def c0(self):
        return c0_matrix(self.n)

    @cached_property
    def c(self):
        return c_q(self.n)

    @cached_property
    def d(self):
        return d_matrix(self.n)

    @cached_property
    def d_inv(self):
        return d_inverse(self.n)

    @cached_property
    def c_prime(self):
        return c_prime(self.n)

    @cached_property
    def c_prime_inv(self):
        return c_prime_inverse(self.n)

    @cached_property
    def r(self):
        return r_q(self.n)

    @cached_property
    def r_cartesian(self):
        return r_cartesian(self.n)

    @cached_property
    def r_plus(self):
        return r_plus(self.n)

    @cached_property
    def r_minus(self):
        return r_minus(self.n)

    @cached_property
    def flip(self):
        return flip_matrix(self.n, self.njs)

    @cached_property
    def gen(self):
        if self.mode == "quantum":
            if self.basis == "symplectic":
                return symplectic_quantum(self.n)
            return cartesian_quantum(self.n)
        if self.basis == "symplectic":
            return symplectic_classical(self.n)
        return cartesian_classical(self.n)

    @cached_property
    def l_plus(self):
        return l_matrices(self.n)[0]

    @cached_property
    def l_minus(self):
        return l_matrices(self.n)[1]

    @property
    def rtt_r(self):
        """R-matrix governing the RTT relations in this basis."""
        return self.r if self.basis == "symplectic" else self.r_cartesian

    @property
    def ortho_c(self):
        """Metric of the orthogonality constraint in this basis and mode."""
        if self.mode == "quantum":
            return self.c if self.basis == "symplectic" else self.c_prime
        if self.basis == "symplectic":
            return self.c0
        return scalar_identity(self.n, self.njs)

    @property
    def ortho_c_inverse(self):
        """Metric of the inverse-side orthogonality identity.

        In the symplectic basis the second identity uses C itself (C^2 = I);
        in the Cartesian basis it uses the exact inverse of C'.
        """
        if self.mode == "quantum":
            return self.c if self.basis == "symplectic" else self.c_prime_inv
        if self.basis == "symplectic":
            return self.c0
        return scalar_identity(self.n, self.njs)

    def __repr__(self):
        return "StructureBundle(N=%d, %s, %s)" % (self.n, self.basis, self.mode)
