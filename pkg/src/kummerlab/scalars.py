"""Exact scalar tower: Q, Q(w), sparse multivariate polynomials over Q(w),
and reduced rational functions.

Ground rules for the whole package live here:

* no floating point, ever; every comparison is an exact equality,
* polynomials carry an explicit ordered variable tuple and refuse mixed
  arithmetic, so variable alignment bugs fail loudly instead of silently,
* canonical text form: terms in descending graded-lex order, coefficients
  written "a+b*w" with reduced fractions ("w" is the primitive cube root
  of unity, w^2 + w + 1 = 0). `poly_from_text` parses the same grammar.

All values are immutable after construction and safe to share across
threads.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

Rational = Fraction


def _as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as a rational number")


class EisensteinScalar:
    """Element a + b*w of Q(w), where w^2 + w + 1 = 0.

    a and b are Fractions. Multiplication reduces via w^2 -> -1 - w.
    Instances are immutable value objects; they hash and compare by value,
    and compare equal to plain ints/Fractions when b == 0.
    """

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = _as_fraction(a)
        self.b = _as_fraction(b)

    @staticmethod
    def of(x):
        if isinstance(x, EisensteinScalar):
            return x
        return EisensteinScalar(_as_fraction(x))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        if isinstance(other, EisensteinScalar):
            return self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            return EisensteinScalar(self.a + other, self.b)
        if isinstance(other, EisensteinScalar):
            return EisensteinScalar(self.a + other.a, self.b + other.b)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return EisensteinScalar(-self.a, -self.b)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            return EisensteinScalar(self.a - other, self.b)
        if isinstance(other, EisensteinScalar):
            return EisensteinScalar(self.a - other.a, self.b - other.b)
        return NotImplemented

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return EisensteinScalar(self.a * other, self.b * other)
        if isinstance(other, EisensteinScalar):
            if not self.b and not other.b:
                return EisensteinScalar(self.a * other.a)
            # (a1 + b1 w)(a2 + b2 w) with w^2 = -1 - w
            a1, b1, a2, b2 = self.a, self.b, other.a, other.b
            return EisensteinScalar(a1 * a2 - b1 * b2, a1 * b2 + b1 * a2 - b1 * b2)
        return NotImplemented

    __rmul__ = __mul__

    def conjugate(self):
        """Galois conjugate: w -> w^2 = -1 - w."""
        return EisensteinScalar(self.a - self.b, -self.b)

    def norm(self):
        """Field norm a^2 - a*b + b^2, a nonnegative rational."""
        return self.a * self.a - self.a * self.b + self.b * self.b

    def inverse(self):
        n = self.norm()
        if not n:
            raise ZeroDivisionError("inverse of zero in Q(w)")
        return EisensteinScalar((self.a - self.b) / n, -self.b / n)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero")
            return EisensteinScalar(self.a / other, self.b / other)
        if isinstance(other, EisensteinScalar):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        return EisensteinScalar.of(other) * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            raise TypeError("exponent must be an int")
        if n < 0:
            return self.inverse() ** (-n)
        result = EisensteinScalar(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def text(self):
        """Canonical "a+b*w" form with reduced fractions."""
        a, b = self.a, self.b
        if not b:
            return str(a)
        if b == 1:
            wpart = "w"
        elif b == -1:
            wpart = "-w"
        else:
            wpart = f"{b}*w"
        if not a:
            return wpart
        if b > 0:
            return f"{a}+{wpart}"
        return f"{a}{wpart}"

    __str__ = text

    def __repr__(self):
        return f"EisensteinScalar({self.a!r}, {self.b!r})"


OMEGA = EisensteinScalar(0, 1)
EIS_ZERO = EisensteinScalar(0)
EIS_ONE = EisensteinScalar(1)


def eisenstein_mul(x, y):
    """Exact product in Q(w). Thin named wrapper around the * operator."""
    return EisensteinScalar.of(x) * EisensteinScalar.of(y)


def rational_sqrt(q):
    """Exact square root of a Fraction, or None if q is not a square in Q."""
    q = _as_fraction(q)
    if q < 0:
        return None
    rn = isqrt(q.numerator)
    rd = isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


def eisenstein_sqrt(d):
    """Exact square root of d in Q(w), or None if d is not a square there.

    Writing a candidate root as u + v*w, the equation (u + v*w)^2 = A + B*w
    splits into u^2 - v^2 = A and v*(2*u - v) = B. The v = 0 branch is a
    rational square test. Otherwise u = (B/v + v)/2, and substituting into
    the first equation makes v^2 a root of 3*X^2 + (4*A - 2*B)*X - B^2, so
    both roots of that quadratic are tried. Every candidate is verified by
    squaring, so a wrong branch can only return None, never a wrong value.
    Note the v = 0 test alone is not enough even for rational d: for
    example -3 = (1 + 2*w)^2 is a square with v != 0.
    """
    d = EisensteinScalar.of(d)
    if not d:
        return EIS_ZERO
    if d.b == 0:
        r = rational_sqrt(d.a)
        if r is not None:
            return EisensteinScalar(r, 0)
    A, B = d.a, d.b
    inner = (4 * A - 2 * B) ** 2 + 12 * B * B
    r = rational_sqrt(inner)
    if r is None:
        return None
    for sign in (1, -1):
        vv = (2 * B - 4 * A + sign * r) / 6
        if vv <= 0:
            continue
        v = rational_sqrt(vv)
        if v is None:
            continue
        for vs in (v, -v):
            u = (B / vs + vs) / 2
            cand = EisensteinScalar(u, vs)
            if cand * cand == d:
                return cand
    return None


def _grlex_key(expts):
    return (sum(expts), expts)


class MultiPoly:
    """Sparse polynomial over Q(w) in an ordered tuple of variables.

    terms maps exponent tuples (one entry per variable) to nonzero
    EisensteinScalar coefficients; callers must treat it as read-only.
    Term order is graded lexicographic on the declared variable order.
    Arithmetic between two MultiPoly values requires identical variable
    tuples; use lift() to embed into a larger ring first.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, variables, terms=None):
        self.vars = tuple(variables)
        if len(set(self.vars)) != len(self.vars):
            raise ValueError(f"duplicate variable in {self.vars}")
        clean = {}
        n = len(self.vars)
        for expts, coeff in (terms or {}).items():
            expts = tuple(expts)
            if len(expts) != n:
                raise ValueError(
                    f"exponent tuple {expts} does not match variables {self.vars}"
                )
            if any(not isinstance(e, int) or e < 0 for e in expts):
                raise ValueError(f"bad exponent tuple {expts}")
            coeff = EisensteinScalar.of(coeff)
            if coeff:
                clean[expts] = coeff
        self.terms = clean

    # ---- constructors --------------------------------------------------

    @staticmethod
    def zero(variables):
        return MultiPoly(variables, {})

    @staticmethod
    def const(variables, value):
        variables = tuple(variables)
        return MultiPoly(variables, {(0,) * len(variables): EisensteinScalar.of(value)})

    @staticmethod
    def one(variables):
        return MultiPoly.const(variables, 1)

    @staticmethod
    def var(variables, name):
        variables = tuple(variables)
        if name not in variables:
            raise ValueError(f"{name!r} is not among variables {variables}")
        e = tuple(1 if v == name else 0 for v in variables)
        return MultiPoly(variables, {e: EIS_ONE})

    @classmethod
    def _raw(cls, variables, terms):
        # internal fast path: terms already clean (no zeros, right arity)
        out = cls.__new__(cls)
        out.vars = variables
        out.terms = terms
        return out

    # ---- ring operations -----------------------------------------------

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            if other.vars != self.vars:
                raise ValueError(f"variable mismatch: {self.vars} vs {other.vars}")
            return other
        if isinstance(other, (int, Fraction, EisensteinScalar)):
            return MultiPoly.const(self.vars, other)
        return None

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        return self.terms == q.terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def _add_signed(self, q, sign):
        terms = dict(self.terms)
        for e, c in q.terms.items():
            s = terms.get(e)
            s = (c if sign > 0 else -c) if s is None else (s + c if sign > 0 else s - c)
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return MultiPoly._raw(self.vars, terms)

    def __add__(self, other):
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        return self._add_signed(q, +1)

    __radd__ = __add__

    def __sub__(self, other):
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        return self._add_signed(q, -1)

    def __rsub__(self, other):
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        return q._add_signed(self, -1)

    def __neg__(self):
        return MultiPoly._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, EisensteinScalar)):
            c0 = EisensteinScalar.of(other)
            if not c0:
                return MultiPoly.zero(self.vars)
            return MultiPoly._raw(self.vars, {e: c * c0 for e, c in self.terms.items()})
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        acc = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in q.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                s = acc.get(e)
                s = c if s is None else s + c
                if s:
                    acc[e] = s
                else:
                    acc.pop(e, None)
        return MultiPoly._raw(self.vars, acc)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, EisensteinScalar)):
            c0 = EisensteinScalar.of(other)
            if not c0:
                raise ZeroDivisionError("polynomial division by zero scalar")
            return self * c0.inverse()
        return NotImplemented

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial exponent must be a nonnegative int")
        result = MultiPoly.one(self.vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # ---- structure queries ----------------------------------------------

    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, name):
        i = self.vars.index(name)
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def degrees_in(self, names):
        """Set of per-term degree sums over the given variables."""
        idx = [self.vars.index(n) for n in names]
        return {sum(e[i] for i in idx) for e in self.terms}

    def leading_term(self):
        """(exponent tuple, coefficient) of the graded-lex leading term."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    def leading_coefficient(self):
        return self.leading_term()[1]

    def monic(self):
        if not self.terms:
            return self
        return self * self.leading_coefficient().inverse()

    def constant_value(self):
        """The scalar value of a degree <= 0 polynomial."""
        if self.degree() > 0:
            raise ValueError(f"{self.text()} is not constant")
        return self.terms.get((0,) * len(self.vars), EIS_ZERO)

    def coeff_of(self, name, k):
        """Coefficient of name**k, as a polynomial in the same ring."""
        i = self.vars.index(name)
        terms = {}
        for e, c in self.terms.items():
            if e[i] == k:
                terms[e[:i] + (0,) + e[i + 1:]] = c
        return MultiPoly._raw(self.vars, terms)

    def as_univariate(self, name):
        """Coefficients [c0, c1, ...] of powers of name (same ring)."""
        d = self.degree_in(name)
        if d < 0:
            return []
        return [self.coeff_of(name, k) for k in range(d + 1)]

    def derivative(self, name):
        i = self.vars.index(name)
        terms = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            e2 = e[:i] + (e[i] - 1,) + e[i + 1:]
            s = terms.get(e2)
            s = c * e[i] if s is None else s + c * e[i]
            if s:
                terms[e2] = s
            else:
                terms.pop(e2, None)
        return MultiPoly._raw(self.vars, terms)

    # ---- substitution ----------------------------------------------------

    def lift(self, new_vars):
        """Embed into a ring whose variable set contains this one's."""
        new_vars = tuple(new_vars)
        pos = []
        for v in self.vars:
            if v not in new_vars:
                raise ValueError(f"cannot lift: {v!r} missing from {new_vars}")
            pos.append(new_vars.index(v))
        n = len(new_vars)
        terms = {}
        for e, c in self.terms.items():
            e2 = [0] * n
            for p, k in zip(pos, e):
                e2[p] = k
            terms[tuple(e2)] = c
        return MultiPoly._raw(new_vars, terms)

    def specialize(self, bindings):
        """Substitute Q(w) values for some variables.

        Returns a MultiPoly in the remaining variables, or an
        EisensteinScalar when every variable is bound.
        """
        for name in bindings:
            if name not in self.vars:
                raise ValueError(f"binding for unknown variable {name!r}")
        keep = [i for i, v in enumerate(self.vars) if v not in bindings]
        vals = {i: EisensteinScalar.of(bindings[v])
                for i, v in enumerate(self.vars) if v in bindings}
        acc = {}
        for e, c in self.terms.items():
            for i, val in vals.items():
                if e[i]:
                    c = c * val ** e[i]
            if not c:
                continue
            e2 = tuple(e[i] for i in keep)
            s = acc.get(e2)
            s = c if s is None else s + c
            if s:
                acc[e2] = s
            else:
                acc.pop(e2, None)
        if not keep:
            return acc.get((), EIS_ZERO)
        return MultiPoly._raw(tuple(self.vars[i] for i in keep), acc)

    def evaluate(self, values):
        """Evaluate with every variable bound to values in a common ring.

        The target ring must support +, *, ** with int exponents, and
        multiplication by EisensteinScalar on the left.
        """
        missing = [v for v in self.vars if v not in values]
        if missing:
            raise ValueError(f"evaluate needs values for {missing}")
        if not self.vars:
            raise ValueError("evaluate on a variable-free polynomial")
        one = next(iter(values.values())) ** 0
        acc = None
        for e, c in self.terms.items():
            m = one
            for i, k in enumerate(e):
                if k:
                    m = m * values[self.vars[i]] ** k
            t = c * m
            acc = t if acc is None else acc + t
        if acc is None:
            return one * 0
        return acc

    def morph(self, new_vars, images):
        """Substitute a polynomial (over new_vars) for every variable."""
        new_vars = tuple(new_vars)
        vals = {}
        for v in self.vars:
            img = images[v]
            if not isinstance(img, MultiPoly):
                img = MultiPoly.const(new_vars, img)
            if img.vars != new_vars:
                raise ValueError("image polynomial in the wrong ring")
            vals[v] = img
        if not self.terms:
            return MultiPoly.zero(new_vars)
        return self.evaluate(vals)

    # ---- text -------------------------------------------------------------

    def text(self):
        """Canonical text: descending graded-lex terms, "a+b*w" coefficients."""
        if not self.terms:
            return "0"
        pieces = []
        for e in sorted(self.terms, key=_grlex_key, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                v if k == 1 else f"{v}^{k}"
                for v, k in zip(self.vars, e) if k
            )
            if c.a and c.b:
                body = c.text() if not pieces and not mono else f"({c.text()})"
                text = f"{body}*{mono}" if mono else body
                pieces.append(f" + {text}" if pieces else text)
                continue
            val = c.b if c.b else c.a
            neg = val < 0
            mag = -val if neg else val
            if c.b:
                coeff_txt = "w" if mag == 1 else f"{mag}*w"
            else:
                coeff_txt = "" if mag == 1 else str(mag)
            if mono and coeff_txt:
                text = f"{coeff_txt}*{mono}"
            elif mono:
                text = mono
            else:
                text = coeff_txt or "1"
            if pieces:
                pieces.append(f" - {text}" if neg else f" + {text}")
            else:
                pieces.append(f"-{text}" if neg else text)
        return "".join(pieces)

    __str__ = text

    def __repr__(self):
        return f"<MultiPoly {self.text()} over {self.vars}>"


def gens(variables):
    """The tuple of generator polynomials for a variable tuple."""
    variables = tuple(variables)
    return tuple(MultiPoly.var(variables, v) for v in variables)


# ---- exact division, gcd, resultants ------------------------------------


def poly_exact_div(p, q):
    """Exact quotient p / q; raises ValueError if q does not divide p."""
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    if q.vars != p.vars:
        raise ValueError(f"variable mismatch: {p.vars} vs {q.vars}")
    if q.degree() == 0:
        return p * q.leading_coefficient().inverse()
    quot = {}
    rem = dict(p.terms)
    qe, qc = q.leading_term()
    qc_inv = qc.inverse()
    while rem:
        re = max(rem, key=_grlex_key)
        ce = tuple(a - b for a, b in zip(re, qe))
        if any(k < 0 for k in ce):
            raise ValueError("inexact polynomial division")
        cc = rem[re] * qc_inv
        quot[ce] = cc
        for e2, c2 in q.terms.items():
            e = tuple(a + b for a, b in zip(ce, e2))
            s = rem.get(e)
            s = -(cc * c2) if s is None else s - cc * c2
            if s:
                rem[e] = s
            else:
                rem.pop(e, None)
    return MultiPoly._raw(p.vars, quot)


def _pseudo_rem(p, q, name):
    """Pseudo-remainder: lc(q)^(deg p - deg q + 1) * p reduced mod q."""
    dp, dq = p.degree_in(name), q.degree_in(name)
    if dq < 0:
        raise ZeroDivisionError("pseudo-remainder by zero")
    lc_q = q.coeff_of(name, dq)
    x = MultiPoly.var(p.vars, name)
    steps = 0
    while p and p.degree_in(name) >= dq:
        d = p.degree_in(name)
        lc_p = p.coeff_of(name, d)
        p = lc_q * p - lc_p * x ** (d - dq) * q
        steps += 1
        if p and p.degree_in(name) >= d:
            raise AssertionError("pseudo-division failed to reduce degree")
    want = dp - dq + 1
    if steps < want:
        p = p * lc_q ** (want - steps)
    return p


def _content_in(p, name):
    """gcd of the coefficients of powers of name (a poly of name-degree 0)."""
    c = None
    for coeff in p.as_univariate(name):
        if not coeff:
            continue
        c = coeff if c is None else poly_gcd(c, coeff)
        if c.degree() == 0:
            break
    return c if c is not None else MultiPoly.zero(p.vars)


def _univ_coeff_list(p, name):
    """Coefficients of powers of name as plain scalars.

    Only valid when p has degree 0 in every other variable.
    """
    i = p.vars.index(name)
    out = [EIS_ZERO] * (p.degree_in(name) + 1)
    for e, c in p.terms.items():
        out[e[i]] = c
    return out


def _euclid_univ(a, b):
    """Euclidean gcd of two univariate coefficient lists over Q(w).

    Lists are little-endian with a nonzero top coefficient. Returns the
    monic gcd as a coefficient list.
    """
    while b:
        # reduce a mod b in place
        inv = b[-1].inverse()
        while len(a) >= len(b):
            factor = a[-1] * inv
            off = len(a) - len(b)
            for k in range(len(b) - 1):
                a[off + k] = a[off + k] - factor * b[k]
            a.pop()
            while a and not a[-1]:
                a.pop()
            if not a:
                break
        a, b = b, a
    inv = a[-1].inverse()
    return [c * inv for c in a]


_TRIAL_POINTS = (2, 3, 5, 7, 11, 13, 17, 19)


def _coprime_certificate(a, b, name, others):
    """True when a specialization proves gcd(a, b) has degree 0 in name.

    Specializes every variable except name at small integers; if neither
    leading coefficient vanishes there and the univariate gcd is constant,
    any common divisor must have name-degree 0. False means "unknown".
    """
    da, db = a.degree_in(name), b.degree_in(name)
    for trial in range(3):
        s = {v: _TRIAL_POINTS[(k + trial) % len(_TRIAL_POINTS)] + 23 * trial
             for k, v in enumerate(others)}
        sa = a.specialize(s)
        sb = b.specialize(s)
        if sa.degree_in(name) != da or sb.degree_in(name) != db:
            continue
        g = _euclid_univ(_univ_coeff_list(sa, name), _univ_coeff_list(sb, name))
        if len(g) == 1:
            return True
    return False


def poly_gcd(p, q):
    """Multivariate gcd over Q(w), monic-normalized (graded-lex lc = 1).

    Subresultant polynomial remainder sequences on primitive parts, with
    recursive content extraction. gcd(0, 0) = 0.
    """
    if not p:
        return q.monic() if q else q
    if not q:
        return p.monic()
    if p.vars != q.vars:
        raise ValueError(f"variable mismatch: {p.vars} vs {q.vars}")
    name = None
    for v in reversed(p.vars):
        if p.degree_in(v) > 0 or q.degree_in(v) > 0:
            name = v
            break
    if name is None:
        return MultiPoly.one(p.vars)
    if p.degree_in(name) == 0:
        return poly_gcd(p, _content_in(q, name))
    if q.degree_in(name) == 0:
        return poly_gcd(_content_in(p, name), q)
    others = [v for v in p.vars
              if v != name and (p.degree_in(v) > 0 or q.degree_in(v) > 0)]
    if not others:
        # genuinely univariate: plain monic Euclid over Q(w)
        g = _euclid_univ(_univ_coeff_list(p, name), _univ_coeff_list(q, name))
        i = p.vars.index(name)
        e0 = [0] * len(p.vars)
        terms = {}
        for k, c in enumerate(g):
            if c:
                e0[i] = k
                terms[tuple(e0)] = c
        return MultiPoly(p.vars, terms)
    cp, cq = _content_in(p, name), _content_in(q, name)
    a, b = poly_exact_div(p, cp), poly_exact_div(q, cq)
    if _coprime_certificate(a, b, name, others):
        return poly_gcd(cp, cq)
    if a.degree_in(name) < b.degree_in(name):
        a, b = b, a
    one = MultiPoly.one(p.vars)
    g = h = one
    while True:
        delta = a.degree_in(name) - b.degree_in(name)
        r = _pseudo_rem(a, b, name)
        if not r:
            break
        if r.degree_in(name) == 0:
            b = one
            break
        a, b = b, poly_exact_div(r, g * h ** delta)
        g = a.coeff_of(name, a.degree_in(name))
        if delta == 1:
            h = g
        elif delta > 1:
            h = poly_exact_div(g ** delta, h ** (delta - 1))
    if b.degree_in(name) > 0:
        b = poly_exact_div(b, _content_in(b, name))
    else:
        b = one
    return (poly_gcd(cp, cq) * b).monic()


def squarefree_part(p, name):
    """p / gcd(p, dp/d name)."""
    if not p:
        raise ValueError("squarefree_part of the zero polynomial")
    return poly_exact_div(p, poly_gcd(p, p.derivative(name)))


def is_squarefree_in(p, name):
    return poly_gcd(p, p.derivative(name)).degree() == 0


def det_poly(matrix):
    """Fraction-free Bareiss determinant for square MultiPoly matrices."""
    n = len(matrix)
    if n == 0:
        raise ValueError("empty matrix")
    a = [list(row) for row in matrix]
    if any(len(row) != n for row in a):
        raise ValueError("matrix is not square")
    vars_ = a[0][0].vars
    prev = MultiPoly.one(vars_)
    sign = 1
    for k in range(n - 1):
        if not a[k][k]:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return MultiPoly.zero(vars_)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = poly_exact_div(num, prev)
            a[i][k] = MultiPoly.zero(vars_)
        prev = a[k][k]
    return a[n - 1][n - 1] * sign


def resultant(p, q, name):
    """Sylvester-determinant resultant eliminating name.

    The result lives in the same ring (with degree 0 in name). Raises
    ValueError when either argument is constant in name, where the
    Sylvester matrix degenerates.
    """
    if not p or not q:
        raise ValueError("resultant of a zero polynomial")
    m, n = p.degree_in(name), q.degree_in(name)
    if m < 1 or n < 1:
        raise ValueError(f"resultant needs both arguments nonconstant in {name!r}")
    a = p.as_univariate(name)
    b = q.as_univariate(name)
    zero = MultiPoly.zero(p.vars)
    size = m + n
    rows = []
    for k in range(n):
        row = [zero] * size
        for i, coeff in enumerate(reversed(a)):
            row[k + i] = coeff
        rows.append(row)
    for k in range(m):
        row = [zero] * size
        for i, coeff in enumerate(reversed(b)):
            row[k + i] = coeff
        rows.append(row)
    return det_poly(rows)


# ---- rational functions --------------------------------------------------


class FunctionElement:
    """Reduced fraction num/den of MultiPoly over the same variables.

    Invariants: gcd(num, den) = 1, den != 0, and den has graded-lex
    leading coefficient 1. The zero element is 0/1. Constructed this way,
    equality is plain structural equality.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if not isinstance(num, MultiPoly):
            raise TypeError("numerator must be a MultiPoly")
        if den is None:
            den = MultiPoly.one(num.vars)
        if not isinstance(den, MultiPoly):
            raise TypeError("denominator must be a MultiPoly")
        if den.vars != num.vars:
            raise ValueError(f"variable mismatch: {num.vars} vs {den.vars}")
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            self.num = num
            self.den = MultiPoly.one(num.vars)
            return
        g = poly_gcd(num, den)
        if g.degree() > 0:
            num = poly_exact_div(num, g)
            den = poly_exact_div(den, g)
        lc = den.leading_coefficient()
        if lc != EIS_ONE:
            inv = lc.inverse()
            num = num * inv
            den = den * inv
        self.num = num
        self.den = den

    @staticmethod
    def const(variables, value):
        return FunctionElement(MultiPoly.const(variables, value))

    @classmethod
    def _reduced(cls, num, den):
        # fast path for results already known to be gcd-free
        if not num:
            out = cls.__new__(cls)
            out.num = num
            out.den = MultiPoly.one(num.vars)
            return out
        lc = den.leading_coefficient()
        if lc != EIS_ONE:
            inv = lc.inverse()
            num = num * inv
            den = den * inv
        out = cls.__new__(cls)
        out.num = num
        out.den = den
        return out

    def _coerce(self, other):
        if isinstance(other, FunctionElement):
            if other.num.vars != self.num.vars:
                raise ValueError("variable mismatch")
            return other
        if isinstance(other, MultiPoly):
            return FunctionElement(other)
        if isinstance(other, (int, Fraction, EisensteinScalar)):
            return FunctionElement(MultiPoly.const(self.num.vars, other))
        return None

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        return self.num == q.num and self.den == q.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        if self.den == q.den:
            return FunctionElement(self.num + q.num, self.den)
        g = poly_gcd(self.den, q.den)
        if g.degree() <= 0:
            # coprime denominators: the sum is already reduced
            return FunctionElement._reduced(
                self.num * q.den + q.num * self.den, self.den * q.den)
        d1 = poly_exact_div(self.den, g)
        d2 = poly_exact_div(q.den, g)
        return FunctionElement(self.num * d2 + q.num * d1, d1 * q.den)

    __radd__ = __add__

    def __neg__(self):
        out = FunctionElement.__new__(FunctionElement)
        out.num = -self.num
        out.den = self.den
        return out

    def __sub__(self, other):
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        return self + (-q)

    def __rsub__(self, other):
        return (-self) + other

    @staticmethod
    def _cancel(num, den):
        g = poly_gcd(num, den)
        if g.degree() > 0:
            return poly_exact_div(num, g), poly_exact_div(den, g)
        return num, den

    def __mul__(self, other):
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        if not self.num or not q.num:
            return FunctionElement(MultiPoly.zero(self.num.vars))
        n1, d2 = self._cancel(self.num, q.den)
        n2, d1 = self._cancel(q.num, self.den)
        return FunctionElement._reduced(n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def __truediv__(self, other):
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        if not q.num:
            raise ZeroDivisionError("division by zero rational function")
        if not self.num:
            return self
        n1, n2 = self._cancel(self.num, q.num)
        d1, d2 = self._cancel(self.den, q.den)
        return FunctionElement._reduced(n1 * d2, d1 * n2)

    def __rtruediv__(self, other):
        if not self.num:
            raise ZeroDivisionError("division by zero rational function")
        return self._coerce(other) / self

    def __pow__(self, n):
        if not isinstance(n, int):
            raise TypeError("exponent must be an int")
        if n < 0:
            if not self.num:
                raise ZeroDivisionError("negative power of zero")
            return FunctionElement(self.den ** (-n), self.num ** (-n))
        return FunctionElement(self.num ** n, self.den ** n)

    def inverse(self):
        return self ** (-1)

    def is_polynomial(self):
        return self.den.degree() == 0

    def as_poly(self):
        if not self.is_polynomial():
            raise ValueError(f"{self.text()} is not a polynomial")
        return self.num

    def specialize(self, bindings):
        return specialize(self, bindings)

    def text(self):
        if self.den.degree() == 0 and self.den.leading_coefficient() == EIS_ONE:
            return self.num.text()
        return f"({self.num.text()}) / ({self.den.text()})"

    __str__ = text

    def __repr__(self):
        return f"<FunctionElement {self.text()}>"


def specialize(p, bindings):
    """Exact substitution of Q(w) values into a MultiPoly or FunctionElement.

    MultiPoly: returns a MultiPoly (or EisensteinScalar when fully bound).
    FunctionElement: same, and raises ZeroDivisionError naming the bindings
    when the denominator vanishes there.
    """
    if isinstance(p, MultiPoly):
        return p.specialize(bindings)
    if isinstance(p, FunctionElement):
        den = p.den.specialize(bindings)
        if not den:
            raise ZeroDivisionError(
                f"denominator {p.den.text()} vanishes at {bindings}"
            )
        num = p.num.specialize(bindings)
        if isinstance(den, EisensteinScalar):
            if isinstance(num, EisensteinScalar):
                return num / den
            return num * den.inverse()
        return FunctionElement(num, den)
    raise TypeError(f"cannot specialize {type(p).__name__}")


# ---- text parsing ----------------------------------------------------------


class _Tokens:
    def __init__(self, text):
        self.toks = []
        i, n = 0, len(text)
        while i < n:
            ch = text[i]
            if ch.isspace():
                i += 1
            elif ch.isdigit():
                j = i
                while j < n and text[j].isdigit():
                    j += 1
                self.toks.append(("num", int(text[i:j])))
                i = j
            elif ch.isalpha() or ch == "_":
                j = i
                while j < n and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                self.toks.append(("name", text[i:j]))
                i = j
            elif ch == "*" and i + 1 < n and text[i + 1] == "*":
                self.toks.append(("op", "^"))
                i += 2
            elif ch in "+-*/^()":
                self.toks.append(("op", ch))
                i += 1
            else:
                raise ValueError(f"bad character {ch!r} in polynomial text")
        self.pos = 0

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else ("end", None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok


def poly_from_text(text, variables):
    """Parse the canonical polynomial grammar into a MultiPoly.

    Accepts +, -, *, /, ^ (or **), parentheses, integers, "w", and the
    declared variable names. Division is only allowed by nonzero constants.
    """
    variables = tuple(variables)
    toks = _Tokens(text)

    def expr():
        t = term()
        while toks.peek() in (("op", "+"), ("op", "-")):
            _, op = toks.take()
            u = term()
            t = t + u if op == "+" else t - u
        return t

    def term():
        t = factor()
        while toks.peek() in (("op", "*"), ("op", "/")):
            _, op = toks.take()
            u = factor()
            if op == "*":
                t = t * u
            else:
                if u.degree() != 0:
                    raise ValueError("division only by nonzero constants")
                t = t * u.leading_coefficient().inverse()
        return t

    def factor():
        t = atom()
        if toks.peek() == ("op", "^"):
            toks.take()
            kind, val = toks.take()
            if kind != "num":
                raise ValueError("exponent must be a literal integer")
            t = t ** val
        return t

    def atom():
        kind, val = toks.take()
        if kind == "num":
            return MultiPoly.const(variables, val)
        if kind == "name":
            if val == "w":
                return MultiPoly.const(variables, OMEGA)
            if val in variables:
                return MultiPoly.var(variables, val)
            raise ValueError(f"unknown variable {val!r} (ring is {variables})")
        if (kind, val) == ("op", "("):
            t = expr()
            if toks.take() != ("op", ")"):
                raise ValueError("unbalanced parentheses")
            return t
        if (kind, val) == ("op", "-"):
            return -factor()
        if (kind, val) == ("op", "+"):
            return factor()
        raise ValueError(f"unexpected token {val!r} in polynomial text")

    result = expr()
    if toks.peek() != ("end", None):
        raise ValueError(f"trailing junk in polynomial text {text!r}")
    return result


def eis_from_text(text):
    """Parse "a+b*w" style scalar text."""
    p = poly_from_text(text, ())
    return p.terms.get((), EIS_ZERO)


def poly_to_text(p):
    return p.text()
