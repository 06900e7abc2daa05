"""Exact polynomial arithmetic on P^1 x P^1.

Homogeneous coordinates are ``([x:z], [t:s])``: ``[x:z]`` is the fibre
coordinate and ``[t:s]`` the base coordinate of the projection we care about.
A bidegree ``(a, b)`` means degree ``a`` in ``t, s`` and degree ``b`` in
``x, z``.

Affine charts are named by their two affine variables, fibre one first:
``"xt"`` (z = s = 1), ``"xs"``, ``"zt"``, ``"zs"``.  Local coordinates
around a point (as used by the blow-up engine) live in the chart
``"local"``; its variables are printed as ``x, t`` and ``t`` plays the
role of the base coordinate.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from . import upoly
from .qfield import as_fraction, format_number, normalize_number, number_sort_key

VARIABLES = ("x", "z", "t", "s")
CHARTS = {
    "xt": ("x", "t"),
    "xs": ("x", "s"),
    "zt": ("z", "t"),
    "zs": ("z", "s"),
    "local": ("x", "t"),
}
PROJECTIVE_CHARTS = ("xt", "zt", "xs", "zs")


class PolySyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class ChartMismatchError(ValueError):
    pass


# ---------------------------------------------------------------------------
# sparse polynomials in x, z, t, s


class MPoly:
    """Sparse polynomial in (x, z, t, s); exponent tuples of length 4."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple, object] | None = None):
        clean = {}
        for e, c in (terms or {}).items():
            c = normalize_number(c)
            if c != 0:
                clean[tuple(e)] = c
        self.terms = clean

    @classmethod
    def constant(cls, c) -> "MPoly":
        return cls({(0, 0, 0, 0): c})

    @classmethod
    def variable(cls, name: str) -> "MPoly":
        e = [0, 0, 0, 0]
        e[VARIABLES.index(name)] = 1
        return cls({tuple(e): 1})

    def __add__(self, other: "MPoly") -> "MPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return MPoly(out)

    def __neg__(self) -> "MPoly":
        return MPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "MPoly") -> "MPoly":
        return self + (-other)

    def __mul__(self, other: "MPoly") -> "MPoly":
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MPoly(out)

    def __pow__(self, k: int) -> "MPoly":
        out = MPoly.constant(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        return isinstance(other, MPoly) and self.terms == other.terms

    def is_zero(self) -> bool:
        return not self.terms

    def bidegree(self) -> tuple[int, int] | None:
        """(deg in t,s ; deg in x,z) if bihomogeneous, else None."""
        if not self.terms:
            return None
        degs = {(e[2] + e[3], e[0] + e[1]) for e in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def used_variables(self) -> set[str]:
        used = set()
        for e in self.terms:
            for name, k in zip(VARIABLES, e):
                if k:
                    used.add(name)
        return used

    def substitute(self, values: Mapping[str, "MPoly"]) -> "MPoly":
        out = MPoly()
        for e, c in self.terms.items():
            term = MPoly.constant(c)
            for name, k in zip(VARIABLES, e):
                if k == 0:
                    continue
                base = values.get(name, MPoly.variable(name))
                term = term * base**k
            out = out + term
        return out


# ---------------------------------------------------------------------------
# parser


def _tokenize(text: str):
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            num = int(text[i:j])
            den = 1
            if j < n and text[j] == "/":
                k = j + 1
                while k < n and text[k].isspace():
                    k += 1
                m = k
                while m < n and text[m].isdigit():
                    m += 1
                if m == k:
                    raise PolySyntaxError("expected integer denominator", j + 1)
                den = int(text[k:m])
                if den == 0:
                    raise PolySyntaxError("zero denominator", k)
                j = m
            yield ("num", Fraction(num, den), i)
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            name = text[i:j]
            if name not in VARIABLES:
                raise PolySyntaxError(f"unknown variable {name!r} (allowed: x, z, t, s)", i)
            yield ("var", name, i)
            i = j
            continue
        if ch in "+-*^()":
            yield (ch, ch, i)
            i += 1
            continue
        raise PolySyntaxError(f"unexpected character {ch!r}", i)
    yield ("end", None, n)


class _Parser:
    def __init__(self, text: str):
        self.tokens = list(_tokenize(text))
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def take(self, kind=None):
        tok = self.tokens[self.pos]
        if kind is not None and tok[0] != kind:
            expected = "end of input" if kind == "end" else repr(kind)
            raise PolySyntaxError(f"expected {expected}, found {tok[0]!r}", tok[2])
        self.pos += 1
        return tok

    def parse(self) -> MPoly:
        if self.peek()[0] == "end":
            raise PolySyntaxError("empty expression", 0)
        out = self.expr()
        self.take("end")
        return out

    def expr(self) -> MPoly:
        out = self.term()
        while self.peek()[0] in "+-":
            op = self.take()[0]
            rhs = self.term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def term(self) -> MPoly:
        out = self.unary()
        while self.peek()[0] == "*":
            self.take()
            out = out * self.unary()
        return out

    def unary(self) -> MPoly:
        kind = self.peek()[0]
        if kind == "-":
            self.take()
            return -self.unary()
        if kind == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> MPoly:
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            tok = self.take()
            if tok[0] != "num" or tok[1].denominator != 1 or tok[1] < 0:
                raise PolySyntaxError("exponent must be a nonnegative integer", tok[2])
            return base ** int(tok[1])
        return base

    def atom(self) -> MPoly:
        kind, value, position = self.take()
        if kind == "num":
            return MPoly.constant(value)
        if kind == "var":
            return MPoly.variable(value)
        if kind == "(":
            inner = self.expr()
            self.take(")")
            return inner
        raise PolySyntaxError(f"unexpected token {kind!r}", position)


def parse_mpoly(text: str) -> MPoly:
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# bihomogeneous forms


class BiForm:
    """Bihomogeneous form on P^1 x P^1 of bidegree (a, b) = (deg t,s ; deg x,z)."""

    def __init__(self, poly: MPoly, bidegree: tuple[int, int] | None = None):
        found = poly.bidegree()
        if poly.is_zero():
            if bidegree is None:
                raise ValueError("the zero form needs an explicit bidegree")
            found = tuple(bidegree)
        if found is None:
            raise ValueError("polynomial is not bihomogeneous")
        if bidegree is not None and tuple(bidegree) != found:
            raise ValueError(f"form has bidegree {found}, not {tuple(bidegree)}")
        self.poly = poly
        self.bidegree = found

    @classmethod
    def parse(cls, text: str) -> "BiForm":
        return cls(parse_mpoly(text))

    def __mul__(self, other: "BiForm") -> "BiForm":
        return BiForm(self.poly * other.poly)

    def __eq__(self, other):
        return isinstance(other, BiForm) and self.poly == other.poly and self.bidegree == other.bidegree

    def dehomogenize(self, chart: str = "xt") -> "BiPolynomial":
        fib, base = CHARTS[chart]
        if chart == "local":
            raise ChartMismatchError("forms dehomogenize to projective charts only")
        fi = VARIABLES.index(fib)
        bi = VARIABLES.index(base)
        terms: dict = {}
        for e, c in self.poly.terms.items():
            key = (e[fi], e[bi])
            terms[key] = terms.get(key, 0) + c
        return BiPolynomial(terms, chart, self.bidegree)

    def substitute_base(self, t_value: MPoly, s_value: MPoly) -> "BiForm":
        """Pull back along a base map given by binary forms in (t, s)."""
        return BiForm(self.poly.substitute({"t": t_value, "s": s_value}))

    def __str__(self):
        return _format_terms(
            {e: c for e, c in self.poly.terms.items()}, VARIABLES
        )


def parse_form(text: str) -> BiForm:
    return BiForm.parse(text)


# ---------------------------------------------------------------------------
# chart polynomials


def _coerce_scalar(c):
    if isinstance(c, int):
        return Fraction(c)
    return normalize_number(c)


class BiPolynomial:
    """Sparse polynomial in the two affine coordinates of a chart.

    ``terms`` maps ``(i, j)`` (fibre exponent, base exponent) to exact
    coefficients.  ``bidegree`` records the bihomogeneous form this is a
    dehomogenization of, when known.
    """

    __slots__ = ("terms", "chart", "bidegree")

    def __init__(self, terms: Mapping[tuple[int, int], object] | None = None,
                 chart: str = "xt", bidegree: tuple[int, int] | None = None):
        if chart not in CHARTS:
            raise ValueError(f"unknown chart {chart!r}")
        clean = {}
        for e, c in (terms or {}).items():
            c = _coerce_scalar(c)
            if c != 0:
                if e[0] < 0 or e[1] < 0:
                    raise ValueError("negative exponent")
                clean[(int(e[0]), int(e[1]))] = c
        self.terms = clean
        self.chart = chart
        self.bidegree = tuple(bidegree) if bidegree is not None else None
        if self.bidegree is not None:
            a, b = self.bidegree
            for i, j in clean:
                if i > b or j > a:
                    raise ValueError(
                        f"term of degree ({j}, {i}) exceeds bidegree {self.bidegree}"
                    )

    # constructors ---------------------------------------------------------
    @classmethod
    def constant(cls, c, chart: str = "xt") -> "BiPolynomial":
        return cls({(0, 0): c}, chart)

    @classmethod
    def fibre_var(cls, chart: str = "xt") -> "BiPolynomial":
        return cls({(1, 0): 1}, chart)

    @classmethod
    def base_var(cls, chart: str = "xt") -> "BiPolynomial":
        return cls({(0, 1): 1}, chart)

    def as_local(self) -> "BiPolynomial":
        return BiPolynomial(self.terms, "local")

    def with_chart(self, chart: str) -> "BiPolynomial":
        """Relabel the variables without changing the coefficients."""
        return BiPolynomial(self.terms, chart)

    # arithmetic -----------------------------------------------------------
    def _other(self, other) -> "BiPolynomial":
        if isinstance(other, BiPolynomial):
            if other.chart != self.chart:
                raise ChartMismatchError(f"chart {self.chart} vs {other.chart}")
            return other
        return BiPolynomial.constant(other, self.chart)

    def _bideg(self, other):
        if isinstance(other, BiPolynomial):
            return self.bidegree if self.bidegree == other.bidegree else None
        return self.bidegree

    def __add__(self, other):
        o = self._other(other)
        out = dict(self.terms)
        for e, c in o.terms.items():
            out[e] = out.get(e, 0) + c
        return BiPolynomial(out, self.chart)

    __radd__ = __add__

    def __neg__(self):
        return BiPolynomial({e: -c for e, c in self.terms.items()}, self.chart, self.bidegree)

    def __sub__(self, other):
        return self + (-self._other(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._other(other)
        out: dict = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in o.terms.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, 0) + c1 * c2
        return BiPolynomial(out, self.chart)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers")
        out = BiPolynomial.constant(1, self.chart)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, BiPolynomial):
            return self.chart == other.chart and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == BiPolynomial.constant(other, self.chart).terms
        return NotImplemented

    __hash__ = None

    # inspection -----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(e == (0, 0) for e in self.terms)

    def degree_fibre(self) -> int:
        return max((i for i, _ in self.terms), default=-1)

    def degree_base(self) -> int:
        return max((j for _, j in self.terms), default=-1)

    def order(self) -> int:
        """Least total degree of a nonzero term (multiplicity at the origin)."""
        if not self.terms:
            raise ValueError("the zero polynomial has no order")
        return min(i + j for i, j in self.terms)

    def leading_form(self) -> "BiPolynomial":
        m = self.order()
        return BiPolynomial({e: c for e, c in self.terms.items() if sum(e) == m}, self.chart)

    def coefficient(self, i: int, j: int):
        return self.terms.get((i, j), Fraction(0))

    def field(self) -> int | None:
        for c in self.terms.values():
            if not isinstance(c, Fraction):
                return c.d
        return None

    def variables(self) -> tuple[str, str]:
        return CHARTS[self.chart]

    # evaluation and calculus ---------------------------------------------
    def __call__(self, u, v):
        return self.evaluate(u, v)

    def evaluate(self, u, v):
        acc = Fraction(0)
        for (i, j), c in self.terms.items():
            acc = acc + c * _power(u, i) * _power(v, j)
        return normalize_number(acc)

    def partial(self, var: int | str) -> "BiPolynomial":
        k = self._var_index(var)
        out = {}
        for (i, j), c in self.terms.items():
            e = (i, j)[k]
            if e:
                key = (i - 1, j) if k == 0 else (i, j - 1)
                out[key] = c * e
        return BiPolynomial(out, self.chart)

    def _var_index(self, var) -> int:
        if isinstance(var, int):
            if var not in (0, 1):
                raise ValueError("variable index must be 0 or 1")
            return var
        names = CHARTS[self.chart]
        if var not in names:
            raise ChartMismatchError(f"variable {var!r} is not a coordinate of chart {self.chart}")
        return names.index(var)

    def substitute(self, u_value: "BiPolynomial", v_value: "BiPolynomial") -> "BiPolynomial":
        """Compose: replace the two coordinates by polynomials (in a common chart)."""
        chart = u_value.chart
        if v_value.chart != chart:
            raise ChartMismatchError("substituted values must share a chart")
        upows = [BiPolynomial.constant(1, chart)]
        vpows = [BiPolynomial.constant(1, chart)]
        out: dict = {}
        for (i, j), c in sorted(self.terms.items()):
            while len(upows) <= i:
                upows.append(upows[-1] * u_value)
            while len(vpows) <= j:
                vpows.append(vpows[-1] * v_value)
            for e, d in (upows[i] * vpows[j]).terms.items():
                out[e] = out.get(e, 0) + c * d
        return BiPolynomial(out, chart)

    def translate(self, u0, v0) -> "BiPolynomial":
        """Polynomial in coordinates centred at (u0, v0)."""
        u = BiPolynomial({(1, 0): 1, (0, 0): u0}, self.chart)
        v = BiPolynomial({(0, 1): 1, (0, 0): v0}, self.chart)
        return self.substitute(u, v)

    def divide_by_power(self, var: int | str, k: int) -> "BiPolynomial":
        idx = self._var_index(var)
        out = {}
        for (i, j), c in self.terms.items():
            e = (i, j)[idx]
            if e < k:
                raise ArithmeticError(f"not divisible by {CHARTS[self.chart][idx]}^{k}")
            out[(i - k, j) if idx == 0 else (i, j - k)] = c
        return BiPolynomial(out, self.chart)

    def restrict(self, var: int | str, value) -> list:
        """Univariate coefficient list after fixing one coordinate to ``value``."""
        idx = self._var_index(var)
        out: dict = {}
        for (i, j), c in self.terms.items():
            fixed, free = ((i, j) if idx == 0 else (j, i))
            out[free] = out.get(free, 0) + c * _power(value, fixed)
        n = max(out, default=-1)
        return upoly.trim([out.get(k, Fraction(0)) for k in range(n + 1)])

    def coefficients_in(self, var: int | str) -> dict[int, list]:
        """Coefficients with respect to ``var``, each a univariate list in the other."""
        idx = self._var_index(var)
        grouped: dict[int, dict[int, object]] = {}
        for (i, j), c in self.terms.items():
            k, other = ((i, j) if idx == 0 else (j, i))
            grouped.setdefault(k, {})[other] = c
        return {
            k: [d.get(m, Fraction(0)) for m in range(max(d) + 1)]
            for k, d in grouped.items()
        }

    # charts ---------------------------------------------------------------
    def homogenize(self) -> BiForm:
        if self.bidegree is None:
            raise ValueError("no bidegree attached; cannot homogenize")
        if self.chart == "local":
            raise ChartMismatchError("local polynomials have no homogenization")
        a, b = self.bidegree
        fib, base = CHARTS[self.chart]
        cofib = "z" if fib == "x" else "x"
        cobase = "s" if base == "t" else "t"
        terms = {}
        for (i, j), c in self.terms.items():
            e = dict.fromkeys(VARIABLES, 0)
            e[fib], e[cofib] = i, b - i
            e[base], e[cobase] = j, a - j
            terms[tuple(e[v] for v in VARIABLES)] = c
        return BiForm(MPoly(terms), self.bidegree)

    def __str__(self):
        return _format_terms(self.terms, CHARTS[self.chart])

    def __repr__(self):
        extra = f", bidegree={self.bidegree}" if self.bidegree else ""
        return f"BiPolynomial({str(self)!r}, chart={self.chart!r}{extra})"


def _power(value, k: int):
    out = Fraction(1)
    for _ in range(k):
        out = out * value
    return out


def _format_terms(terms: Mapping[tuple, object], names: Iterable[str]) -> str:
    names = tuple(names)
    if not terms:
        return "0"
    # graded lexicographic: total degree descending, then exponents descending
    order = sorted(terms, key=lambda e: (-sum(e), tuple(-k for k in e)))
    parts = []
    for n, e in enumerate(order):
        c = terms[e]
        mono = "*".join(
            name if k == 1 else f"{name}^{k}" for name, k in zip(names, e) if k
        )
        negative = isinstance(c, Fraction) and c < 0
        mag = -c if negative else c
        if isinstance(mag, Fraction):
            cs = str(mag)
        else:
            cs = f"({format_number(mag)})"
        if mono:
            body = mono if mag == 1 else f"{cs}*{mono}"
        else:
            body = cs
        if n == 0:
            parts.append(f"-{body}" if negative else body)
        else:
            parts.append(f" - {body}" if negative else f" + {body}")
    return "".join(parts)


def parse_poly(text: str, chart: str = "xt", bidegree: tuple[int, int] | None = None) -> BiPolynomial:
    """Parse ``text`` into a polynomial in the affine coordinates of ``chart``.

    Variables outside the chart are set to 1.  A bidegree is attached when
    given explicitly, or when the text mentions a non-chart variable and is
    bihomogeneous.
    """
    if chart not in CHARTS:
        raise ValueError(f"unknown chart {chart!r}")
    mp = parse_mpoly(text)
    if chart == "local":
        used = mp.used_variables()
        if used - {"x", "t"}:
            raise PolySyntaxError("local polynomials use the variables x (fibre) and t (base)", 0)
        return BiPolynomial(
            {(e[0], e[2]): c for e, c in mp.terms.items()}, "local"
        )
    if bidegree is None and not mp.is_zero() and (mp.used_variables() - set(CHARTS[chart])):
        bidegree = mp.bidegree()
    if bidegree is not None and mp.bidegree() is not None and not mp.is_zero():
        return BiForm(mp, bidegree).dehomogenize(chart)
    fib, base = CHARTS[chart]
    fi, bi = VARIABLES.index(fib), VARIABLES.index(base)
    terms: dict = {}
    for e, c in mp.terms.items():
        key = (e[fi], e[bi])
        terms[key] = terms.get(key, 0) + c
    return BiPolynomial(terms, chart, bidegree)


def chart_change(f: BiPolynomial, chart: str) -> BiPolynomial:
    if f.chart == chart:
        return f
    return f.homogenize().dehomogenize(chart)


def format_poly(f: BiPolynomial | BiForm) -> str:
    return str(f)


# ---------------------------------------------------------------------------
# points


def _normalize_pair(a, b) -> tuple:
    a, b = normalize_number(a), normalize_number(b)
    if b != 0:
        return (normalize_number(a / b), Fraction(1))
    if a == 0:
        raise ValueError("[0:0] is not a point of P^1")
    return (Fraction(1), Fraction(0))


def normalize_base_point(value) -> tuple:
    """Accept ``"0:1"``, ``(t, s)`` or ``[t, s]`` and return the normalized pair."""
    if isinstance(value, str):
        parts = value.replace(",", ":").split(":")
        if len(parts) != 2:
            raise ValueError(f"base point must look like 't:s', got {value!r}")
        value = (Fraction(parts[0].strip()), Fraction(parts[1].strip()))
    t, s = value
    return _normalize_pair(Fraction(t), Fraction(s))


def format_pair(pair) -> str:
    return f"[{format_number(pair[0])}:{format_number(pair[1])}]"


@dataclass(frozen=True)
class AffinePoint:
    """A point with finite coordinates ``(fibre, base)`` in ``chart``."""

    chart: str
    coords: tuple

    def __post_init__(self):
        if self.chart not in PROJECTIVE_CHARTS:
            raise ValueError(f"affine points live in a projective chart, not {self.chart!r}")
        object.__setattr__(self, "coords", tuple(normalize_number(Fraction(c) if isinstance(c, (int, str)) else c) for c in self.coords))

    def bihomogeneous(self) -> tuple[tuple, tuple]:
        """``([x:z], [t:s])`` normalized so the last nonzero entry is 1."""
        fib, base = CHARTS[self.chart]
        u, v = self.coords
        fibre = (u, Fraction(1)) if fib == "x" else (Fraction(1), u)
        basep = (v, Fraction(1)) if base == "t" else (Fraction(1), v)
        return _normalize_pair(*fibre), _normalize_pair(*basep)

    @property
    def base_point(self) -> tuple:
        return self.bihomogeneous()[1]

    def in_chart(self, chart: str) -> "AffinePoint":
        (x, z), (t, s) = self.bihomogeneous()
        fib, base = CHARTS[chart]
        num_f, den_f = (x, z) if fib == "x" else (z, x)
        num_b, den_b = (t, s) if base == "t" else (s, t)
        if den_f == 0 or den_b == 0:
            raise ValueError(f"point {self} is at infinity in chart {chart}")
        return AffinePoint(chart, (num_f / den_f, num_b / den_b))

    def sort_key(self):
        fibre, base = self.bihomogeneous()
        return (
            tuple(number_sort_key(c) for c in fibre),
            tuple(number_sort_key(c) for c in base),
        )

    def __str__(self):
        fibre, base = self.bihomogeneous()
        return f"({format_pair(fibre)}, {format_pair(base)})"


def _finite_chart(point_fibre, point_base) -> str:
    for chart in PROJECTIVE_CHARTS:
        fib, base = CHARTS[chart]
        fz = point_fibre[1] if fib == "x" else point_fibre[0]
        bz = point_base[1] if base == "t" else point_base[0]
        if fz != 0 and bz != 0:
            return chart
    raise AssertionError("unreachable")


def point_from_bihomogeneous(fibre, base) -> AffinePoint:
    fibre, base = _normalize_pair(*fibre), _normalize_pair(*base)
    chart = _finite_chart(fibre, base)
    fib, bname = CHARTS[chart]
    u = fibre[0] / fibre[1] if fib == "x" else fibre[1] / fibre[0]
    v = base[0] / base[1] if bname == "t" else base[1] / base[0]
    return AffinePoint(chart, (u, v))


def multiplicity_at_point(f: BiPolynomial, p: AffinePoint | tuple) -> int:
    """Order of vanishing of ``f`` at ``p`` (0 when f(p) != 0)."""
    if f.is_zero():
        raise ValueError("multiplicity of the zero polynomial is undefined")
    if isinstance(p, AffinePoint):
        if p.chart != f.chart:
            p = p.in_chart(f.chart)
        u0, v0 = p.coords
    else:
        u0, v0 = p
    return f.translate(u0, v0).order()


# ---------------------------------------------------------------------------
# resultants and singular points


def resultant(f: BiPolynomial, g: BiPolynomial, var: int | str = 0) -> list:
    """Res_var(f, g) as a univariate coefficient list in the other coordinate.

    Computed by evaluating the Sylvester determinant at enough rational
    points and interpolating; exact throughout.
    """
    idx = f._var_index(var)
    fc = f.coefficients_in(idx)
    gc = g.coefficients_in(idx)
    m = max(fc, default=-1)
    n = max(gc, default=-1)
    if m < 0 or n < 0:
        return []
    if m == 0 and n == 0:
        return [Fraction(1)]
    df = max((len(c) - 1 for c in fc.values()), default=0)
    dg = max((len(c) - 1 for c in gc.values()), default=0)
    bound = m * dg + n * df
    # small evaluation points keep the integer determinants short
    xs = [(k + 1) // 2 * (1 if k % 2 else -1) for k in range(bound + 1)]
    ys = []
    for x0 in xs:
        a = [upoly.evaluate(fc.get(k, []), x0) for k in range(m + 1)]
        b = [upoly.evaluate(gc.get(k, []), x0) for k in range(n + 1)]
        ys.append(_sylvester_det(a, b))
    return upoly.interpolate([Fraction(x) for x in xs], ys)


def _sylvester_det(a: list, b: list):
    m, n = len(a) - 1, len(b) - 1
    size = m + n
    if size == 0:
        return Fraction(1)
    if all(isinstance(c, Fraction) for c in a + b):
        # clear denominators and eliminate over the integers
        la = math.lcm(*(c.denominator for c in a))
        lb = math.lcm(*(c.denominator for c in b))
        ia = [int(c * la) for c in a]
        ib = [int(c * lb) for c in b]
        rows = []
        for i in range(n):
            row = [0] * size
            for k in range(m + 1):
                row[i + k] = ia[m - k]
            rows.append(row)
        for i in range(m):
            row = [0] * size
            for k in range(n + 1):
                row[i + k] = ib[n - k]
            rows.append(row)
        return Fraction(_det_bareiss(rows), la ** n * lb ** m)
    rows = []
    for i in range(n):
        row = [Fraction(0)] * size
        for k in range(m + 1):
            row[i + k] = a[m - k]
        rows.append(row)
    for i in range(m):
        row = [Fraction(0)] * size
        for k in range(n + 1):
            row[i + k] = b[n - k]
        rows.append(row)
    return _det(rows)


def _det_bareiss(rows: list[list[int]]) -> int:
    """Fraction-free Gaussian elimination on an integer matrix."""
    mat = [list(r) for r in rows]
    n = len(mat)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if mat[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if mat[r][k] != 0), None)
            if swap is None:
                return 0
            mat[k], mat[swap] = mat[swap], mat[k]
            sign = -sign
        pivot = mat[k][k]
        for i in range(k + 1, n):
            lead = mat[i][k]
            row_i, row_k = mat[i], mat[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - lead * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * mat[n - 1][n - 1]


def _det(rows: list[list]) -> Fraction:
    mat = [list(r) for r in rows]
    n = len(mat)
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if mat[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            mat[col], mat[pivot] = mat[pivot], mat[col]
            det = -det
        p = mat[col][col]
        det *= p
        for r in range(col + 1, n):
            factor = mat[r][col] / p
            if factor:
                for c in range(col, n):
                    mat[r][c] -= factor * mat[col][c]
    return det


@dataclass(frozen=True)
class SingularLocus:
    points: tuple[AffinePoint, ...]
    complete: bool

    def base_points(self) -> list[tuple]:
        seen = []
        for p in self.points:
            if p.base_point not in seen:
                seen.append(p.base_point)
        return sorted(seen, key=lambda bp: tuple(number_sort_key(c) for c in bp))


def _content_in_base(f: BiPolynomial) -> list:
    return upoly.gcd_many(f.coefficients_in(0).values())


def _divide_by_base_poly(f: BiPolynomial, c: list) -> BiPolynomial:
    out = {}
    for i, coeffs in f.coefficients_in(0).items():
        q, r = upoly.divmod_(coeffs, c)
        if r:
            raise ArithmeticError("content division was not exact")
        for j, a in enumerate(q):
            if a != 0:
                out[(i, j)] = a
    return BiPolynomial(out, f.chart)


def _fibre_singularities(f: BiPolynomial, fu: BiPolynomial, fv: BiPolynomial, v0, field=False):
    polys = [f.restrict(1, v0), fu.restrict(1, v0), fv.restrict(1, v0)]
    if not any(polys):
        raise ValueError(
            f"branch is not reduced: the line {CHARTS[f.chart][1]}={v0} is a multiple component"
        )
    g = upoly.gcd_many(polys)
    if field is False:
        return upoly.rational_roots(g)
    roots, _, unresolved = upoly.roots_in_field(g, field)
    return roots, unresolved == 0


def chart_singular_points(f: BiPolynomial) -> tuple[list[AffinePoint], bool]:
    """Rational points of multiplicity >= 2 of ``f`` in its own chart."""
    if f.is_zero():
        raise ValueError("the zero polynomial has no singular locus")
    if f.is_constant():
        return [], True
    content = _content_in_base(f)
    if not upoly.is_squarefree(content):
        raise ValueError("branch is not reduced: repeated factor depending only on the base coordinate")
    g = _divide_by_base_poly(f, content)
    candidates = list(content)
    if g.degree_fibre() >= 1:
        res = resultant(g, g.partial(0), 0)
        if not res:
            raise ValueError("branch is not reduced (gcd(f, df/dx) is not constant)")
        # singular points of g also kill dg/dt; this drops the base values
        # where the fibre is merely tangent to the branch
        res_t = resultant(g, g.partial(1), 0) if g.degree_base() >= 1 else []
        if res_t:
            res = upoly.gcd(res, res_t)
        candidates = upoly.mul(candidates, res)
    elif len(content) <= 1:
        return [], True
    roots, complete = upoly.rational_roots(candidates)
    fu, fv = f.partial(0), f.partial(1)
    points = []
    for v0, _ in roots:
        fibre_roots, fibre_complete = _fibre_singularities(f, fu, fv, v0)
        complete = complete and fibre_complete
        for u0, _ in fibre_roots:
            points.append(AffinePoint(f.chart, (u0, v0)))
    return points, complete


def rational_singular_points(f: BiPolynomial) -> SingularLocus:
    """All rational singular points of a bihomogeneous branch, over the four charts."""
    if f.bidegree is None:
        raise ValueError("singular point search needs the bidegree of the branch")
    found: dict = {}
    complete = True
    for chart in PROJECTIVE_CHARTS:
        pts, ok = chart_singular_points(chart_change(f, chart))
        complete = complete and ok
        for p in pts:
            found.setdefault(p.bihomogeneous(), p)
    points = []
    for fibre, base in found:
        points.append(point_from_bihomogeneous(fibre, base))
    points.sort(key=AffinePoint.sort_key)
    return SingularLocus(tuple(points), complete)


def fibre_singular_points(f: BiPolynomial, base_point, quadratic: bool = False) -> SingularLocus:
    """Singular points lying on the fibre over a rational base point.

    The flag is exact here: it is False only when some singular point on
    this fibre was not found.  With ``quadratic`` the fibre coordinates may
    lie in one quadratic field (the first one needed is adjoined).
    """
    if f.bidegree is None:
        raise ValueError("needs the bidegree of the branch")
    base_point = normalize_base_point(base_point)
    found: dict = {}
    complete = True
    field = None if quadratic else False
    for chart in PROJECTIVE_CHARTS:
        fc = chart_change(f, chart)
        base = CHARTS[chart][1]
        t, s = base_point
        num, den = (t, s) if base == "t" else (s, t)
        if den == 0:
            continue
        v0 = num / den
        fibre_roots, ok = _fibre_singularities(fc, fc.partial(0), fc.partial(1), v0, field)
        complete = complete and ok
        if quadratic and field is None:
            field = next((r.d for r, _ in fibre_roots if not isinstance(r, Fraction)), None)
        for u0, _ in fibre_roots:
            p = AffinePoint(chart, (u0, v0))
            found.setdefault(p.bihomogeneous(), p)
    points = sorted(
        (point_from_bihomogeneous(fb, bb) for fb, bb in found), key=AffinePoint.sort_key
    )
    return SingularLocus(tuple(points), complete)
