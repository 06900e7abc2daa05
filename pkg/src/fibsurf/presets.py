"""Branch curves of the genus-two C-fibre examples and the even-genus family."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import sympy

from .poly import BiForm, parse_form, parse_poly
from .resolution import LocalTemplate

PRESET_NAMES = ("type1", "type2", "type3", "type4", "even:n")


class PresetError(ValueError):
    pass


@dataclass(frozen=True)
class Preset:
    name: str
    form: BiForm
    parameters: dict = field(default_factory=dict)
    templates: tuple = ()  # LocalTemplates for template mode
    templates_cover_all: bool = False  # the templates account for every singular point
    # published values the pipeline compares its own results against
    claimed_bidegree: tuple | None = None
    claimed_genus: int | None = None
    claimed_singular_fibres: tuple | None = None

    @property
    def bidegree(self) -> tuple:
        return self.form.bidegree

    def branch(self, chart: str = "xt"):
        return self.form.dehomogenize(chart)


def _frac(text) -> Fraction:
    return Fraction(str(text))


def type1(alpha=1) -> Preset:
    a = _frac(alpha)
    if a * a == 4:
        raise PresetError("alpha = +-2 makes x^6 + alpha t x^3 + t^2 a square; the branch is not reduced")
    form = parse_form(f"t*s*(s^2*x^6 + ({a})*s*t*x^3*z^3 + t^2*z^6)")
    local = parse_poly(f"t*(x^6 + ({a})*t*x^3 + t^2)", "local")
    templates = (LocalTemplate(local, 1, (0, 1)), LocalTemplate(local, 1, (1, 0)))
    return Preset("type1", form, {"alpha": str(a)}, templates, True, (4, 6), 2, ((0, 1), (1, 0)))


def type2() -> Preset:
    form = parse_form("t*s*(s*x^2 + t*z^2)*(s*x^4 + t*z^4)")
    return Preset("type2", form, {}, (), False, (4, 6), 2, ((0, 1), (1, 0), (1, 1)))


def type3(corrected: bool = False) -> Preset:
    body = "t*s*(t - s)*(s^2*x^3 + t^2*z^3)*(s^2*(x - z)^3 + t^2*z^3)"
    if corrected:
        body = f"({body})*(t + s)"
    return Preset("type3", parse_form(body), {"corrected": corrected}, (), False, (6, 6), 2)


def type4(h: int = 2) -> Preset:
    if h < 0:
        raise PresetError("h must be nonnegative")
    form = parse_form(f"t*s*(s^{h}*(s*x^3 - t*z^3)^2 + t^{h + 2}*z^6)")
    return Preset("type4", form, {"h": h}, (), False, (h + 4, 6), 2)


def even_branch(n: int) -> BiForm:
    """s t prod_{w^n = 1} (s^2 (x - w z)^3 + t^2 z^3), built as a resultant over Q."""
    x, z, t, s, y = sympy.symbols("x z t s y")
    res = sympy.resultant(y ** n - 1, s ** 2 * (x - y * z) ** 3 + t ** 2 * z ** 3, y)
    poly = sympy.Poly(sympy.expand(s * t * res), x, z, t, s)
    lead = poly.coeffs()[0]
    text = " + ".join(
        f"({sympy.Rational(c / lead)})*x^{e[0]}*z^{e[1]}*t^{e[2]}*s^{e[3]}"
        for e, c in zip(poly.monoms(), poly.coeffs())
    )
    return parse_form(text)


def even(n: int) -> Preset:
    if n < 2 or n % 2:
        raise PresetError("the even-genus family needs an even n >= 2")
    form = even_branch(n)
    local = parse_poly("t*(x^3 + t^2)", "local")
    templates = (LocalTemplate(local, n, (0, 1)),)
    return Preset(f"even:{n}", form, {"n": n}, templates, False, None, n)


def get_preset(name: str, *, alpha=1, h: int = 2, corrected: bool = False) -> Preset:
    if name == "type1":
        return type1(alpha)
    if name == "type2":
        return type2()
    if name == "type3":
        return type3(corrected)
    if name == "type4":
        return type4(h)
    if name.startswith("even:"):
        try:
            n = int(name.split(":", 1)[1])
        except ValueError as exc:
            raise PresetError(f"bad even-genus preset {name!r}; use even:<n>") from exc
        return even(n)
    raise PresetError(f"unknown preset {name!r}; choose from {', '.join(PRESET_NAMES)}")
