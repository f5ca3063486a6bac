"""Exact scalars of the deformation ring.

A scalar is a finite sum of monomials  E^a * v^b * j1^c1 * ... * j_m^cm
with coefficients in Q(i, sqrt 2).  E stands for e^{Jv/2} (J = j1...jm),
so q = E^2 and every hyperbolic entry of the structure matrices is an
exact Laurent polynomial in E.  The symbols E, v, j_k are independent in
the formal ring; the transcendental identity E = e^{Jv/2} is used only
when a j-signature with nilpotent entries is substituted (the series then
truncates exactly) and in the floating-point oracle.
"""

from __future__ import annotations

import cmath
from fractions import Fraction

from .errors import DimensionMismatch, NegativeNilpotentPower, NotAUnit

ONE = "1"
NILPOTENT = "iota"
IMAGINARY = "i"

_TOKENS = (ONE, NILPOTENT, IMAGINARY)


class JSignature:
    """Immutable assignment of each contraction parameter j_k to 1, iota_k or i."""

    __slots__ = ("tokens",)

    def __init__(self, tokens):
        tokens = tuple(tokens)
        for t in tokens:
            if t not in _TOKENS:
                raise ValueError("bad j token %r (expected 1, iota or i)" % (t,))
        object.__setattr__(self, "tokens", tokens)

    def __setattr__(self, name, value):
        raise AttributeError("JSignature is immutable")

    @classmethod
    def parse(cls, text):
        return cls(tok.strip() for tok in text.split(","))

    def __len__(self):
        return len(self.tokens)

    def __iter__(self):
        return iter(self.tokens)

    def __eq__(self, other):
        return isinstance(other, JSignature) and self.tokens == other.tokens

    def __hash__(self):
        return hash(self.tokens)

    def __repr__(self):
        return "JSignature(%s)" % ",".join(self.tokens)

    def nilpotent_positions(self):
        return tuple(k for k, t in enumerate(self.tokens) if t == NILPOTENT)

    def imaginary_count(self):
        return sum(1 for t in self.tokens if t == IMAGINARY)

    @property
    def has_nilpotent(self):
        return NILPOTENT in self.tokens


def _i_unit(power):
    """i**power as a BaseScalar, any integer power."""
    return (_B_ONE, _B_I, _B_MINUS_ONE, _B_MINUS_I)[power % 4]


class BaseScalar:
    """Element a + b*i + c*sqrt2 + d*i*sqrt2 of the field Q(i, sqrt2)."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a=0, b=0, c=0, d=0):
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.c = Fraction(c)
        self.d = Fraction(d)

    def __eq__(self, other):
        if not isinstance(other, BaseScalar):
            return NotImplemented
        return (self.a, self.b, self.c, self.d) == (other.a, other.b, other.c, other.d)

    def __hash__(self):
        return hash((self.a, self.b, self.c, self.d))

    def __add__(self, other):
        return BaseScalar(self.a + other.a, self.b + other.b,
                          self.c + other.c, self.d + other.d)

    def __sub__(self, other):
        return BaseScalar(self.a - other.a, self.b - other.b,
                          self.c - other.c, self.d - other.d)

    def __neg__(self):
        return BaseScalar(-self.a, -self.b, -self.c, -self.d)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return BaseScalar(self.a * other, self.b * other,
                              self.c * other, self.d * other)
        if not isinstance(other, BaseScalar):
            return NotImplemented
        a1, b1, c1, d1 = self.a, self.b, self.c, self.d
        a2, b2, c2, d2 = other.a, other.b, other.c, other.d
        # i^2 = -1, (sqrt2)^2 = 2
        return BaseScalar(
            a1 * a2 - b1 * b2 + 2 * (c1 * c2 - d1 * d2),
            a1 * b2 + b1 * a2 + 2 * (c1 * d2 + d1 * c2),
            a1 * c2 + c1 * a2 - (b1 * d2 + d1 * b2),
            a1 * d2 + d1 * a2 + b1 * c2 + c1 * b2,
        )

    __rmul__ = __mul__

    def is_zero(self):
        return not (self.a or self.b or self.c or self.d)

    def inverse(self):
        """Exact field inverse; raises DivisionByZero on zero."""
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        # Write self = p + q*sqrt2 with p, q in Q(i); then
        # 1/self = (p - q*sqrt2) / (p^2 - 2 q^2) and the denominator is
        # inverted in Q(i) by its complex conjugate.
        pa, pb = self.a, self.b
        qa, qb = self.c, self.d
        # n = p^2 - 2 q^2 in Q(i)
        na = pa * pa - pb * pb - 2 * (qa * qa - qb * qb)
        nb = 2 * (pa * pb - 2 * qa * qb)
        norm = na * na + nb * nb
        ia, ib = na / norm, -nb / norm   # 1/n
        # (p - q*sqrt2) * (ia + ib*i)
        return BaseScalar(pa * ia - pb * ib,
                          pa * ib + pb * ia,
                          -(qa * ia - qb * ib),
                          -(qa * ib + qb * ia))

    def __complex__(self):
        r2 = 2 ** 0.5
        return complex(self.a + self.c * r2, self.b + self.d * r2)

    def key(self):
        return (self.a, self.b, self.c, self.d)

    def __repr__(self):
        return "BaseScalar(%s, %s, %s, %s)" % (self.a, self.b, self.c, self.d)

    def __str__(self):
        parts = []
        for val, sym in ((self.a, ""), (self.b, "i"), (self.c, "√2"), (self.d, "i√2")):
            if val == 0:
                continue
            if sym and abs(val) == 1:
                parts.append(("-" if val < 0 else "") + sym)
            else:
                parts.append(str(val) + ("·" + sym if sym else ""))
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out


_B_ZERO = BaseScalar()
_B_ONE = BaseScalar(1)
_B_MINUS_ONE = BaseScalar(-1)
_B_I = BaseScalar(0, 1)
_B_MINUS_I = BaseScalar(0, -1)
_B_SQRT2 = BaseScalar(0, 0, 1)
_B_HALF = BaseScalar(Fraction(1, 2))

I_UNIT = _B_I
SQRT2 = _B_SQRT2


class CKScalar:
    """Exact element of the deformation ring for a fixed number of j symbols.

    Terms map a monomial key (eExp, vDeg, jExp) to a BaseScalar; zero
    coefficients are never stored, so structural equality is ring equality.
    vDeg is never negative; eExp and the jExp entries may be.
    """

    __slots__ = ("njs", "terms")

    def __init__(self, njs, terms=None):
        self.njs = njs
        clean = {}
        if terms:
            for key, coeff in terms.items():
                if not coeff.is_zero():
                    clean[key] = coeff
        self.terms = clean

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, njs):
        return cls(njs)

    @classmethod
    def one(cls, njs):
        return cls.monomial(njs, coeff=_B_ONE)

    @classmethod
    def const(cls, njs, value):
        """Constant scalar from a BaseScalar, int or Fraction."""
        if isinstance(value, (int, Fraction)):
            value = BaseScalar(value)
        return cls.monomial(njs, coeff=value)

    @classmethod
    def monomial(cls, njs, coeff=_B_ONE, e=0, vdeg=0, jexp=None):
        if isinstance(coeff, (int, Fraction)):
            coeff = BaseScalar(coeff)
        if jexp is None:
            jexp = (0,) * njs
        jexp = tuple(jexp)
        if len(jexp) != njs:
            raise DimensionMismatch("jExp length %d != %d" % (len(jexp), njs))
        if vdeg < 0:
            raise ValueError("vDeg must be nonnegative")
        return cls(njs, {(e, vdeg, jexp): coeff})

    @classmethod
    def e_power(cls, njs, k):
        return cls.monomial(njs, e=k)

    @classmethod
    def v_power(cls, njs, k=1):
        return cls.monomial(njs, vdeg=k)

    @classmethod
    def j_monomial(cls, njs, jexp, coeff=_B_ONE):
        return cls.monomial(njs, coeff=coeff, jexp=jexp)

    # -- ring operations ----------------------------------------------

    def _check(self, other):
        if self.njs != other.njs:
            raise DimensionMismatch("scalars over %d vs %d j symbols"
                                    % (self.njs, other.njs))

    def __add__(self, other):
        if isinstance(other, (int, Fraction, BaseScalar)):
            other = CKScalar.const(self.njs, other)
        self._check(other)
        terms = dict(self.terms)
        for key, coeff in other.terms.items():
            acc = terms.get(key)
            terms[key] = coeff if acc is None else acc + coeff
        return CKScalar(self.njs, terms)

    __radd__ = __add__

    def __neg__(self):
        return CKScalar(self.njs, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, BaseScalar)):
            other = CKScalar.const(self.njs, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, BaseScalar)):
            return self.scale(other)
        if not isinstance(other, CKScalar):
            return NotImplemented
        self._check(other)
        terms = {}
        for (e1, v1, j1), c1 in self.terms.items():
            for (e2, v2, j2), c2 in other.terms.items():
                key = (e1 + e2, v1 + v2, tuple(x + y for x, y in zip(j1, j2)))
                c = c1 * c2
                acc = terms.get(key)
                terms[key] = c if acc is None else acc + c
        return CKScalar(self.njs, terms)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, BaseScalar)):
            return self.scale(other)
        return NotImplemented

    def scale(self, factor):
        if isinstance(factor, (int, Fraction)):
            factor = BaseScalar(factor)
        if factor.is_zero():
            return CKScalar(self.njs)
        return CKScalar(self.njs, {k: c * factor for k, c in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, BaseScalar)):
            other = CKScalar.const(self.njs, other)
        if not isinstance(other, CKScalar):
            return NotImplemented
        return self.njs == other.njs and self.terms == other.terms

    __hash__ = None

    def is_zero(self):
        return not self.terms

    def is_monomial(self):
        return len(self.terms) == 1

    def single_term(self):
        """(key, coeff) of the unique term; raises NotAUnit otherwise."""
        if len(self.terms) != 1:
            raise NotAUnit("not a single monomial: %s" % (self,))
        return next(iter(self.terms.items()))

    def inverse(self):
        """Inverse of a unit monomial (vDeg 0); raises NotAUnit otherwise."""
        (e, vdeg, jexp), coeff = self.single_term()
        if vdeg != 0:
            raise NotAUnit("monomial with positive v degree is not a unit")
        key = (-e, 0, tuple(-x for x in jexp))
        return CKScalar(self.njs, {key: coeff.inverse()})

    # -- structure ----------------------------------------------------

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0])

    def key(self):
        return tuple((k, c.key()) for k, c in self.sorted_terms())

    def jexp_support(self):
        return {j for (_, _, j) in self.terms}

    def coefficient_of_j(self, jexp):
        """Sub-scalar of all terms carrying exactly the given jExp."""
        terms = {(e, v, j): c for (e, v, j), c in self.terms.items() if j == jexp}
        return CKScalar(self.njs, terms)

    # -- specialization and numerics ------------------------------------

    def specialize(self, sig):
        """Substitute the j symbols per the signature.

        one -> 1 and imaginary -> i are folded into the coefficients;
        nilpotent slots keep iota_k as a square-zero symbol, and when any
        slot is nilpotent E^a is expanded exactly to 1 + (a/2) J v.  Terms
        with iota_k^2 vanish; a surviving negative iota power is an error.
        """
        if len(sig) != self.njs:
            raise DimensionMismatch("signature length %d != %d" % (len(sig), self.njs))
        nil = sig.nilpotent_positions()
        iu = _i_unit(sig.imaginary_count())
        acc = {}

        def put(key, coeff):
            old = acc.get(key)
            acc[key] = coeff if old is None else old + coeff

        for (e, vdeg, jexp), coeff in self.terms.items():
            kept = [0] * self.njs
            c = coeff
            for k, tok in enumerate(sig):
                if tok == IMAGINARY:
                    c = c * _i_unit(jexp[k])
                elif tok == NILPOTENT:
                    kept[k] = jexp[k]
            if nil and e != 0:
                # E^e = 1 + (e/2) J v exactly, since J^2 = 0
                put((0, vdeg, tuple(kept)), c)
                bumped = list(kept)
                for k in nil:
                    bumped[k] += 1
                put((0, vdeg + 1, tuple(bumped)), c * iu * Fraction(e, 2))
            else:
                put((e, vdeg, tuple(kept)), c)

        out = {}
        for (e, vdeg, jexp), coeff in acc.items():
            if coeff.is_zero():
                continue
            if any(jexp[k] >= 2 for k in nil):
                continue          # iota_k^2 = 0
            for k in nil:
                if jexp[k] < 0:
                    raise NegativeNilpotentPower(
                        "iota_%d to power %d survives specialization" % (k + 1, jexp[k]))
            out[(e, vdeg, jexp)] = coeff
        return CKScalar(self.njs, out)

    def eval_numeric(self, sig, v0):
        """Numeric value as a DualValue after specializing under sig."""
        sp = self.specialize(sig)
        nil_set = set(sig.nilpotent_positions())
        j_num = 1j ** sig.imaginary_count()
        parts = {}
        for (e, vdeg, jexp), coeff in sp.terms.items():
            z = complex(coeff) * (v0 ** vdeg)
            if e:
                z *= cmath.exp(e * j_num * v0 / 2)
            key = frozenset(k for k in nil_set if jexp[k] == 1)
            parts[key] = parts.get(key, 0j) + z
        return DualValue(parts)

    def eval_v0(self):
        """Exact value at v = 0, where E = e^{Jv/2} = 1."""
        terms = {}
        for (e, vdeg, jexp), coeff in self.terms.items():
            if vdeg:
                continue
            key = (0, 0, jexp)
            acc = terms.get(key)
            terms[key] = coeff if acc is None else acc + coeff
        return CKScalar(self.njs, terms)

    # -- rendering ------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        chunks = []
        for (e, vdeg, jexp), coeff in self.sorted_terms():
            factors = []
            if e:
                factors.append("E^%d" % e)
            if vdeg:
                factors.append("v" if vdeg == 1 else "v^%d" % vdeg)
            for k, x in enumerate(jexp):
                if x:
                    factors.append("j%d" % (k + 1) if x == 1 else "j%d^%d" % (k + 1, x))
            cs = str(coeff)
            if " + " in cs or " - " in cs[1:]:
                cs = "(" + cs + ")"
            if factors:
                mono = "·".join(factors)
                chunks.append(mono if cs == "1" else ("-" + mono if cs == "-1" else cs + "·" + mono))
            else:
                chunks.append(cs)
        out = chunks[0]
        for ch in chunks[1:]:
            out += " - " + ch[1:] if ch.startswith("-") else " + " + ch
        return out

    def __repr__(self):
        return "CKScalar(%d, %s)" % (self.njs, self)


def hyper(kind, half_steps, njs):
    """exp/cosh/sinh of (half_steps) * Jv/2 as an exact E-monomial sum.

    hyper('sinh', 2, njs) is sinh Jv = (E^2 - E^-2)/2, etc.
    """
    k = half_steps
    if kind == "exp":
        return CKScalar.e_power(njs, k)
    if kind == "cosh":
        return (CKScalar.e_power(njs, k) + CKScalar.e_power(njs, -k)).scale(Fraction(1, 2))
    if kind == "sinh":
        return (CKScalar.e_power(njs, k) - CKScalar.e_power(njs, -k)).scale(Fraction(1, 2))
    raise ValueError("kind must be exp, cosh or sinh")


class DualValue:
    """Floating-point element of the dual algebra: complex coefficients on
    square-free iota monomials, keyed by the index subset."""

    __slots__ = ("parts",)

    def __init__(self, parts=None):
        clean = {}
        if parts:
            for key, z in parts.items():
                if z != 0:
                    clean[frozenset(key)] = complex(z)
        self.parts = clean

    @classmethod
    def scalar(cls, z):
        return cls({frozenset(): z})

    def __getitem__(self, key):
        return self.parts.get(frozenset(key), 0j)

    def __add__(self, other):
        parts = dict(self.parts)
        for key, z in other.parts.items():
            parts[key] = parts.get(key, 0j) + z
        return DualValue(parts)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return DualValue({k: -z for k, z in self.parts.items()})

    def __mul__(self, other):
        if isinstance(other, (int, float, complex)):
            return DualValue({k: z * other for k, z in self.parts.items()})
        parts = {}
        for k1, z1 in self.parts.items():
            for k2, z2 in other.parts.items():
                if k1 & k2:
                    continue      # iota_k^2 = 0
                key = k1 | k2
                parts[key] = parts.get(key, 0j) + z1 * z2
        return DualValue(parts)

    __rmul__ = __mul__

    def allclose(self, other, rel=1e-12):
        for key in set(self.parts) | set(other.parts):
            x, y = self.parts.get(key, 0j), other.parts.get(key, 0j)
            if abs(x - y) > rel * max(1.0, abs(x), abs(y)):
                return False
        return True

    def norm(self):
        return max((abs(z) for z in self.parts.values()), default=0.0)

    def __str__(self):
        if not self.parts:
            return "0"
        def label(key):
            return "·".join("ι%d" % (k + 1) for k in sorted(key))
        chunks = []
        for key in sorted(self.parts, key=lambda s: (len(s), sorted(s))):
            z = self.parts[key]
            zs = "%.12g%+.12gi" % (z.real, z.imag)
            chunks.append(zs if not key else "(%s)·%s" % (zs, label(key)))
        return " + ".join(chunks)

    def __repr__(self):
        return "DualValue(%s)" % self
