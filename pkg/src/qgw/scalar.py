"""Exact multivariate rational functions over Q.

An :class:`MPoly` is a sparse polynomial with ``Fraction`` coefficients in
commuting named parameters; a :class:`Scalar` is a quotient of two of them.
Equality of scalars is decided by cross-multiplication, so no multivariate gcd
is needed on the verification path.  A gcd is only used when rendering a
scalar with a non-monomial denominator.

Parameters are ordered by registration; the common deformation parameters are
registered at import time so that output never depends on the order in
which a session happens to create them.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Union

from .errors import DenominatorVanishes, DivisionByZero, InexactDivision, PoleAtZero

_REGISTRY: dict[str, int] = {}


def register(*names: str) -> None:
    for name in names:
        if not name:
            raise ValueError("parameter names must be nonempty")
        if name not in _REGISTRY:
            _REGISTRY[name] = len(_REGISTRY)


register("r", "s", "m", "k", "eta", "t", "h", "h'", "p", "q", "u", "v", "c")


def registered() -> tuple[str, ...]:
    return tuple(sorted(_REGISTRY, key=_REGISTRY.__getitem__))


# A monomial is a tuple of (name, exponent) pairs sorted by registration index,
# with strictly positive exponents.  The empty tuple is the constant monomial.
Monomial = tuple


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for name, e in b:
        exps[name] = exps.get(name, 0) + e
    return tuple(sorted(exps.items(), key=lambda it: _REGISTRY[it[0]]))


def _mono_div(a: Monomial, b: Monomial):
    """Return a/b, or None when b does not divide a."""
    exps = dict(a)
    for name, e in b:
        left = exps.get(name, 0) - e
        if left < 0:
            return None
        if left:
            exps[name] = left
        else:
            del exps[name]
    return tuple(sorted(exps.items(), key=lambda it: _REGISTRY[it[0]]))


def _mono_key(mono: Monomial) -> tuple:
    # graded lex; earlier-registered parameters are the more significant ones
    vec = [0] * len(_REGISTRY)
    deg = 0
    for name, e in mono:
        vec[_REGISTRY[name]] = e
        deg += e
    return (deg, tuple(vec))


def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _fmt_term(coeff: Fraction, exps) -> tuple[str, str]:
    """Render one term as (sign, body); ``exps`` is a sequence of (name, e)."""
    sign = "-" if coeff < 0 else "+"
    c = abs(coeff)
    factors = [name if e == 1 else f"{name}^{e}" for name, e in exps]
    if not factors:
        return sign, _fmt_coeff(c)
    body = "*".join(factors)
    if c != 1:
        body = f"{_fmt_coeff(c)}*{body}"
    return sign, body


def _join_terms(parts) -> str:
    out = []
    for i, (sign, body) in enumerate(parts):
        if i == 0:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f" {sign} {body}")
    return "".join(out) if out else "0"


class MPoly:
    """Sparse commutative polynomial with rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, Fraction] | None = None):
        self.terms: dict[Monomial, Fraction] = {}
        if terms:
            for mono, c in terms.items():
                if c:
                    self.terms[mono] = Fraction(c)

    @classmethod
    def _raw(cls, terms: dict) -> "MPoly":
        obj = cls.__new__(cls)
        obj.terms = terms
        return obj

    @classmethod
    def const(cls, c) -> "MPoly":
        c = Fraction(c)
        return cls._raw({(): c} if c else {})

    @classmethod
    def var(cls, name: str, exp: int = 1) -> "MPoly":
        register(name)
        return cls._raw({((name, exp),): Fraction(1)} if exp else {(): Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def is_const(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and () in self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def const_value(self) -> Fraction:
        if not self.is_const():
            raise ValueError(f"{self} is not constant")
        return self.terms.get((), Fraction(0))

    def variables(self) -> set[str]:
        return {name for mono in self.terms for name, _ in mono}

    def degree(self) -> int:
        return max((sum(e for _, e in mono) for mono in self.terms), default=-1)

    def leading(self) -> tuple[Monomial, Fraction]:
        mono = max(self.terms, key=_mono_key)
        return mono, self.terms[mono]

    def monomial_content(self) -> Monomial:
        """Largest monomial dividing every term."""
        it = iter(self.terms)
        first = next(it, None)
        if first is None:
            return ()
        common = dict(first)
        for mono in it:
            exps = dict(mono)
            for name in list(common):
                e = min(common[name], exps.get(name, 0))
                if e:
                    common[name] = e
                else:
                    del common[name]
            if not common:
                break
        return tuple(sorted(common.items(), key=lambda it: _REGISTRY[it[0]]))

    # arithmetic -----------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, MPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return MPoly.const(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if len(other.terms) > len(self.terms):
            big, small = other.terms, self.terms
        else:
            big, small = self.terms, other.terms
        out = dict(big)
        for mono, c in small.items():
            v = out.get(mono, 0) + c
            if v:
                out[mono] = v
            else:
                out.pop(mono, None)
        return MPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly._raw({mono: -c for mono, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = _mono_mul(m1, m2)
                v = out.get(mono, 0) + c1 * c2
                if v:
                    out[mono] = v
                else:
                    out.pop(mono, None)
        return MPoly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = MPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c) -> "MPoly":
        c = Fraction(c)
        if not c:
            return MPoly()
        return MPoly._raw({mono: v * c for mono, v in self.terms.items()})

    def div_monomial(self, mono: Monomial) -> "MPoly":
        out = {}
        for m, c in self.terms.items():
            q = _mono_div(m, mono)
            if q is None:
                raise InexactDivision(f"monomial does not divide {self}")
            out[q] = c
        return MPoly._raw(out)

    def divmod(self, divisor: "MPoly") -> tuple["MPoly", "MPoly"]:
        """Multivariate division by the graded-lex leading term of ``divisor``."""
        if divisor.is_zero():
            raise DivisionByZero("polynomial division by zero")
        lm, lc = divisor.leading()
        quot: dict = {}
        rem: dict = {}
        p = MPoly._raw(dict(self.terms))
        while p.terms:
            mono, c = p.leading()
            q = _mono_div(mono, lm)
            if q is None:
                rem[mono] = c
                del p.terms[mono]
                continue
            factor = c / lc
            quot[q] = quot.get(q, 0) + factor
            p = p - divisor * MPoly._raw({q: factor})
        return MPoly._raw(quot), MPoly._raw(rem)

    def exact_div(self, divisor: "MPoly") -> "MPoly":
        if divisor.is_monomial():
            mono, c = next(iter(divisor.terms.items()))
            return self.div_monomial(mono).scale(1 / c)
        quot, rem = self.divmod(divisor)
        if rem.terms:
            raise InexactDivision(f"({self}) is not divisible by ({divisor})")
        return quot

    def coeffs_in(self, name: str) -> dict[int, "MPoly"]:
        """Write the polynomial as sum_i c_i * name^i; returns {i: c_i}."""
        out: dict[int, dict] = {}
        for mono, c in self.terms.items():
            e = 0
            rest = []
            for n, x in mono:
                if n == name:
                    e = x
                else:
                    rest.append((n, x))
            out.setdefault(e, {})[tuple(rest)] = c
        return {e: MPoly._raw(t) for e, t in out.items()}

    def substitute(self, bindings: Mapping[str, "Scalar"]) -> "Scalar":
        """Simultaneous substitution; returns a Scalar over one common denominator."""
        used = {n for n in self.variables() if n in bindings}
        if not used:
            return Scalar(self)
        values = {n: as_scalar(bindings[n]) for n in used}
        top = {n: max(dict(mono).get(n, 0) for mono in self.terms) for n in used}
        powers: dict = {}

        def pw(n, part, e):
            key = (n, part, e)
            if key not in powers:
                powers[key] = getattr(values[n], part) ** e
            return powers[key]

        numer = MPoly()
        for mono, c in self.terms.items():
            rest = []
            term = MPoly.const(c)
            for n, e in mono:
                if n in used:
                    term = term * pw(n, "num", e) * pw(n, "den", top[n] - e)
                else:
                    rest.append((n, e))
            if rest:
                term = term * MPoly._raw({tuple(rest): Fraction(1)})
            for n in used:
                if n not in dict(mono):
                    term = term * pw(n, "den", top[n])
            numer = numer + term
        denom = MPoly.const(1)
        for n in used:
            denom = denom * pw(n, "den", top[n])
        return Scalar(numer, denom)

    # comparison / display -------------------------------------------------

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda it: _mono_key(it[0]), reverse=True)

    def __str__(self):
        return _join_terms(_fmt_term(c, mono) for mono, c in self.sorted_terms())

    def __repr__(self):
        return f"MPoly({str(self)!r})"


def _normalize(num: MPoly, den: MPoly) -> tuple[MPoly, MPoly]:
    if den.is_zero():
        raise DivisionByZero("zero denominator")
    if num.is_zero():
        return MPoly(), MPoly.const(1)
    content = _mono_common(num.monomial_content(), den.monomial_content())
    if content:
        num = num.div_monomial(content)
        den = den.div_monomial(content)
    _, lc = den.leading()
    if lc != 1:
        num = num.scale(1 / lc)
        den = den.scale(1 / lc)
    if not den.is_monomial():
        quot, rem = num.divmod(den)
        if not rem.terms:
            return quot, MPoly.const(1)
    return num, den


def _mono_common(a: Monomial, b: Monomial) -> Monomial:
    if not a or not b:
        return ()
    eb = dict(b)
    out = []
    for name, e in a:
        x = min(e, eb.get(name, 0))
        if x:
            out.append((name, x))
    return tuple(out)


def _lcm_mono(a: Monomial, b: Monomial) -> Monomial:
    exps = dict(a)
    for name, e in b:
        exps[name] = max(exps.get(name, 0), e)
    return tuple(sorted(exps.items(), key=lambda it: _REGISTRY[it[0]]))


ScalarLike = Union["Scalar", int, Fraction]


class Scalar:
    """Element of Q(params).  Immutable; compare with ``==`` (semantic)."""

    __slots__ = ("num", "den")

    def __init__(self, num=0, den=None):
        if not isinstance(num, MPoly):
            num = MPoly.const(num)
        if den is None:
            den = MPoly.const(1)
        elif not isinstance(den, MPoly):
            den = MPoly.const(den)
        self.num, self.den = _normalize(num, den)

    @classmethod
    def _make(cls, num: MPoly, den: MPoly) -> "Scalar":
        obj = cls.__new__(cls)
        obj.num, obj.den = _normalize(num, den)
        return obj

    @classmethod
    def param(cls, name: str) -> "Scalar":
        return cls._make(MPoly.var(name), MPoly.const(1))

    @classmethod
    def parse(cls, text: str) -> "Scalar":
        from .expr import parse_scalar

        return parse_scalar(text)

    def is_zero(self) -> bool:
        return not self.num.terms

    def is_one(self) -> bool:
        return self.num.terms == self.den.terms

    def is_const(self) -> bool:
        return self.num.is_const() and self.den.is_const()

    def const_value(self) -> Fraction:
        return self.num.const_value() / self.den.const_value()

    def is_laurent(self) -> bool:
        return self.den.is_monomial()

    def variables(self) -> set[str]:
        return self.num.variables() | self.den.variables()

    def as_fraction(self) -> tuple[MPoly, MPoly]:
        return self.num, self.den

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if not other.num.terms:
            return self
        if not self.num.terms:
            return other
        d1, d2 = self.den, other.den
        if d1.terms == d2.terms:
            return Scalar._make(self.num + other.num, d1)
        if d1.is_monomial() and d2.is_monomial():
            (m1, c1), (m2, c2) = next(iter(d1.terms.items())), next(iter(d2.terms.items()))
            lcm = _lcm_mono(m1, m2)
            n1 = self.num * MPoly._raw({_mono_div(lcm, m1): 1 / c1})
            n2 = other.num * MPoly._raw({_mono_div(lcm, m2): 1 / c2})
            return Scalar._make(n1 + n2, MPoly._raw({lcm: Fraction(1)}))
        return Scalar._make(self.num * d2 + other.num * d1, d1 * d2)

    __radd__ = __add__

    def __neg__(self):
        obj = Scalar.__new__(Scalar)
        obj.num, obj.den = -self.num, self.den
        return obj

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if not self.num.terms or not other.num.terms:
            return ZERO
        return Scalar._make(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        return Scalar._make(self.den, self.num)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise DivisionByZero(f"division of {self} by zero")
        return Scalar._make(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        return Scalar._make(self.num**n, self.den**n)

    def __eq__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if self.den.terms == other.den.terms:
            return self.num.terms == other.num.terms
        return (self.num * other.den).terms == (other.num * self.den).terms

    __hash__ = None

    # substitution / limits -------------------------------------------------

    def substitute(self, bindings: Mapping[str, ScalarLike]) -> "Scalar":
        if not bindings or not (self.variables() & set(bindings)):
            return self
        top = self.num.substitute(bindings)
        bottom = self.den.substitute(bindings)
        if bottom.is_zero():
            raise DenominatorVanishes(f"denominator of {self} vanishes under substitution")
        return top / bottom

    def limit_at_zero(self, t: str) -> "Scalar":
        return limit_at_zero(self, t)

    # display ---------------------------------------------------------------

    def reduced(self) -> tuple[MPoly, MPoly]:
        """Fully reduced (num, den): gcd removed, monic denominator."""
        if self.den.is_monomial():
            return self.num, self.den
        g = _poly_gcd(self.num, self.den)
        num, den = self.num, self.den
        if not g.is_const():
            num, den = num.exact_div(g), den.exact_div(g)
        return _normalize(num, den)

    def __str__(self):
        num, den = self.reduced()
        if den.is_monomial():
            (dmono, dc), = den.terms.items()
            neg = dict(dmono)
            parts = []
            keyed = []
            for mono, c in num.terms.items():
                exps = dict(mono)
                for name, e in neg.items():
                    exps[name] = exps.get(name, 0) - e
                items = sorted(((n, e) for n, e in exps.items() if e),
                               key=lambda it: _REGISTRY[it[0]])
                vec = [0] * len(_REGISTRY)
                for n, e in items:
                    vec[_REGISTRY[n]] = e
                keyed.append(((sum(vec), tuple(vec)), c / dc, items))
            keyed.sort(key=lambda it: it[0], reverse=True)
            for _, c, items in keyed:
                parts.append(_fmt_term(c, items))
            return _join_terms(parts)
        n, d = str(num), str(den)
        if len(num.terms) > 1:
            n = f"({n})"
        return f"{n}/({d})"

    def __repr__(self):
        return f"Scalar({str(self)!r})"


def _coerce(x):
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction)):
        return Scalar._make(MPoly.const(x), MPoly.const(1))
    return None


def as_scalar(x) -> Scalar:
    if isinstance(x, str):
        return Scalar.parse(x)
    s = _coerce(x)
    if s is None:
        raise TypeError(f"cannot interpret {x!r} as a Scalar")
    return s


def param(name: str) -> Scalar:
    return Scalar.param(name)


ZERO = Scalar(0)
ONE = Scalar(1)


def limit_at_zero(x: Scalar, t: str) -> Scalar:
    """Limit of ``x`` as parameter ``t`` tends to 0, by lowest-order coefficients.

    Raises PoleAtZero when the numerator vanishes to lower order than the
    denominator.
    """
    x = as_scalar(x)
    if x.is_zero():
        return ZERO
    cn = x.num.coeffs_in(t)
    cd = x.den.coeffs_in(t)
    vn, vd = min(cn), min(cd)
    if vn < vd:
        raise PoleAtZero(f"{x} has a pole of order {vd - vn} at {t}=0")
    if vn > vd:
        return ZERO
    return Scalar(cn[vn], cd[vd])


def _poly_gcd(a: MPoly, b: MPoly) -> MPoly:
    # display-only; verification never depends on this
    import sympy

    names = sorted(a.variables() | b.variables(), key=_REGISTRY.__getitem__)
    if not names:
        return MPoly.const(1)
    syms = [sympy.Symbol(n) for n in names]

    def to_sympy(p):
        return sympy.Poly.from_dict(
            {tuple(dict(mono).get(n, 0) for n in names): sympy.Rational(c.numerator, c.denominator)
             for mono, c in p.terms.items()},
            *syms, domain="QQ")

    g = sympy.gcd(to_sympy(a), to_sympy(b))
    out = {}
    for exps, c in g.as_dict().items():
        mono = tuple((n, e) for n, e in zip(names, exps) if e)
        out[mono] = Fraction(int(c.p), int(c.q))
    return MPoly(out)
