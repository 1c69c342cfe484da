"""Canonical sums of (exponential) x (reciprocal linear factors) x (xi products).

Every xi argument ``k s + h`` is stored in canonical form, using
``xi(x) = xi(1 - x)`` eagerly, so that equality of products is multiset
equality of (argument, exponent) pairs.  Linear factors ``k s + b`` are
stored with a positive leading coefficient; the sign goes into the term's
rational prefactor.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple, Sequence

Rational = Fraction
SCHEMA_VERSION = 1


def _q(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class XiLinear(NamedTuple):
    """The argument ``k s + h`` of one xi factor."""

    k: int
    h: Fraction

    def is_canonical(self) -> bool:
        return self.k > 0 or (self.k == 0 and 2 * self.h >= 1)


class LinFactor(NamedTuple):
    """A denominator factor ``k s + b``."""

    k: int
    b: Fraction


def xi_canonicalize(x: XiLinear) -> XiLinear:
    """Apply ``xi(x) = xi(1 - x)`` if needed to reach k > 0, or k = 0 and h >= 1."""
    x = XiLinear(int(x.k), _q(x.h))
    if x.is_canonical():
        return x
    return XiLinear(-x.k, 1 - x.h)


def reflect(x: XiLinear, c) -> XiLinear:
    """Substitute ``s -> -c - s`` and canonicalize."""
    c = _q(c)
    return xi_canonicalize(XiLinear(-x.k, x.h - x.k * c))


def shift(x: XiLinear, a) -> XiLinear:
    """Substitute ``s -> s + a`` and canonicalize."""
    return xi_canonicalize(XiLinear(x.k, x.h + x.k * _q(a)))


def make_linfactor(k: int, b) -> tuple[int, LinFactor]:
    """Normalize ``k s + b`` to a positive leading coefficient; return (sign, factor)."""
    b = _q(b)
    if k == 0 and b == 0:
        raise ZeroDivisionError("linear factor vanishes identically")
    lead = k if k != 0 else b
    if lead < 0:
        return -1, LinFactor(-k, -b)
    return 1, LinFactor(int(k), b)


def reflect_linfactor(f: LinFactor, c) -> tuple[int, LinFactor]:
    """Substitute ``s -> -c - s``: ``k s + b -> -k s + (b - k c)``."""
    return make_linfactor(-f.k, f.b - f.k * _q(c))


def shift_linfactor(f: LinFactor, a) -> tuple[int, LinFactor]:
    return make_linfactor(f.k, f.b + f.k * _q(a))


class XiProduct(Mapping[XiLinear, int]):
    """Finite product of ``xi(k s + h)^e`` with canonical keys and nonzero exponents."""

    __slots__ = ("_items", "_dict", "_hash")

    def __init__(self, factors: Mapping[XiLinear, int] | Iterable[tuple[XiLinear, int]] = ()):
        acc: dict[XiLinear, int] = {}
        pairs = factors.items() if isinstance(factors, Mapping) else factors
        for x, e in pairs:
            x = xi_canonicalize(x)
            acc[x] = acc.get(x, 0) + int(e)
        self._items = tuple(sorted((x, e) for x, e in acc.items() if e != 0))
        self._dict = dict(self._items)
        self._hash = hash(self._items)

    @classmethod
    def of(cls, args: Iterable[tuple[int, object]], exponent: int = 1) -> "XiProduct":
        """Product of ``xi(k s + h)^exponent`` over the given (k, h) pairs."""
        return cls((XiLinear(int(k), _q(h)), exponent) for k, h in args)

    def __getitem__(self, x: XiLinear) -> int:
        return self._dict[xi_canonicalize(x)]

    def __iter__(self):
        return (x for x, _ in self._items)

    def __len__(self) -> int:
        return len(self._items)

    def __eq__(self, other) -> bool:
        if isinstance(other, XiProduct):
            return self._items == other._items
        return NotImplemented

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"XiProduct({to_text_xi(self)})"

    @property
    def items_sorted(self) -> tuple[tuple[XiLinear, int], ...]:
        return self._items

    def exponent(self, k: int, h) -> int:
        return self._dict.get(xi_canonicalize(XiLinear(k, _q(h))), 0)

    def __mul__(self, other: "XiProduct") -> "XiProduct":
        return XiProduct(list(self._items) + list(other._items))

    def __truediv__(self, other: "XiProduct") -> "XiProduct":
        return self * other.inverse()

    def inverse(self) -> "XiProduct":
        return XiProduct((x, -e) for x, e in self._items)

    def numerator(self) -> "XiProduct":
        return XiProduct((x, e) for x, e in self._items if e > 0)

    def denominator(self) -> "XiProduct":
        """Factors with negative exponent, returned with positive exponents."""
        return XiProduct((x, -e) for x, e in self._items if e < 0)

    def reflect(self, c) -> "XiProduct":
        return XiProduct((reflect(x, c), e) for x, e in self._items)

    def shift(self, a) -> "XiProduct":
        return XiProduct((shift(x, a), e) for x, e in self._items)

    def divides(self, other: "XiProduct") -> bool:
        """True if every exponent of self is <= the matching exponent of other (both numerators)."""
        return all(0 <= e <= other._dict.get(x, 0) for x, e in self._items)


@dataclass(frozen=True)
class ExpDatum:
    """``exp(<mu0 + s mu1, T>)`` with weights in fundamental-weight coordinates.

    ``T`` is paired through its coordinates over the simple coroots, so
    ``<mu, T> = sum_i mu_i T_i``.
    """

    mu0: tuple[Fraction, ...]
    mu1: tuple[Fraction, ...]

    @classmethod
    def trivial(cls, rank: int) -> "ExpDatum":
        z = tuple(Fraction(0) for _ in range(rank))
        return cls(z, z)

    def is_trivial(self) -> bool:
        return not any(self.mu0) and not any(self.mu1)

    def reflect(self, c) -> "ExpDatum":
        c = _q(c)
        return ExpDatum(tuple(a - c * b for a, b in zip(self.mu0, self.mu1)), tuple(-b for b in self.mu1))

    def shift(self, a) -> "ExpDatum":
        a = _q(a)
        return ExpDatum(tuple(x + a * y for x, y in zip(self.mu0, self.mu1)), self.mu1)

    def transport(self, perm: Sequence[int]) -> "ExpDatum":
        """Replace ``T`` by ``varpi T``: new ``mu_i = mu_{perm(i)}`` (pairing with the inverse image)."""
        return ExpDatum(tuple(self.mu0[j] for j in perm), tuple(self.mu1[j] for j in perm))


@dataclass(frozen=True)
class ZetaTerm:
    coeff: Fraction
    weyl_tag: str | None
    expd: ExpDatum
    den_lin: tuple[LinFactor, ...]
    xi: XiProduct

    def __post_init__(self):
        if self.coeff == 0:
            raise ValueError("zero coefficient term")
        # constant denominator factors are folded into the coefficient so the form is unique
        if any(f.k == 0 for f in self.den_lin):
            coeff = _q(self.coeff)
            for f in self.den_lin:
                if f.k == 0:
                    coeff /= f.b
            object.__setattr__(self, "coeff", coeff)
            object.__setattr__(self, "den_lin", tuple(f for f in self.den_lin if f.k != 0))

    @classmethod
    def build(
        cls,
        coeff,
        weyl_tag: str | None,
        expd: ExpDatum,
        linear: Iterable[tuple[int, object]],
        xi: XiProduct,
    ) -> "ZetaTerm":
        """Build from raw ``(k, b)`` denominator factors, absorbing their signs."""
        sign = 1
        den = []
        for k, b in linear:
            sg, f = make_linfactor(k, b)
            sign *= sg
            den.append(f)
        return cls(_q(coeff) * sign, weyl_tag, expd, tuple(sorted(den)), xi)

    @property
    def signature(self) -> tuple:
        return (self.expd, self.den_lin, self.xi)

    @property
    def value_key(self) -> tuple:
        """Everything except the Weyl tag."""
        return (self.coeff, self.expd.mu0, self.expd.mu1, self.den_lin, self.xi.items_sorted)

    def sort_key(self) -> tuple:
        return (self.weyl_tag or "",) + self.value_key

    def with_xi(self, xi: XiProduct) -> "ZetaTerm":
        return replace(self, xi=xi)

    def reflect(self, c, perm: Sequence[int] | None = None) -> "ZetaTerm":
        """Substitute ``s -> -c - s`` and (optionally) ``T -> varpi T``."""
        sign = 1
        den = []
        for f in self.den_lin:
            sg, g = reflect_linfactor(f, c)
            sign *= sg
            den.append(g)
        expd = self.expd.reflect(c)
        if perm is not None:
            expd = expd.transport(perm)
        return ZetaTerm(self.coeff * sign, self.weyl_tag, expd, tuple(sorted(den)), self.xi.reflect(c))

    def transport(self, perm: Sequence[int]) -> "ZetaTerm":
        return replace(self, expd=self.expd.transport(perm))

    def shift(self, a) -> "ZetaTerm":
        sign = 1
        den = []
        for f in self.den_lin:
            sg, g = shift_linfactor(f, a)
            sign *= sg
            den.append(g)
        return ZetaTerm(self.coeff * sign, self.weyl_tag, self.expd.shift(a), tuple(sorted(den)), self.xi.shift(a))


@dataclass(frozen=True)
class ZetaExpression:
    terms: tuple[ZetaTerm, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(sorted(self.terms, key=ZetaTerm.sort_key)))

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def by_tag(self) -> dict[str | None, ZetaTerm]:
        return {t.weyl_tag: t for t in self.terms}

    def map(self, fn) -> "ZetaExpression":
        return ZetaExpression(tuple(fn(t) for t in self.terms))

    def mul_xi(self, X: XiProduct) -> "ZetaExpression":
        return self.map(lambda t: t.with_xi(t.xi * X))

    def div_xi(self, X: XiProduct) -> "ZetaExpression":
        return self.mul_xi(X.inverse())

    def reflect(self, c, perm: Sequence[int] | None = None) -> "ZetaExpression":
        return self.map(lambda t: t.reflect(c, perm))

    def transport(self, perm: Sequence[int]) -> "ZetaExpression":
        return self.map(lambda t: t.transport(perm))

    def shift(self, a) -> "ZetaExpression":
        return self.map(lambda t: t.shift(a))

    def at_zero_T(self) -> "ZetaExpression":
        return self.map(lambda t: replace(t, expd=ExpDatum.trivial(len(t.expd.mu0))))


def expr_equal(a: ZetaExpression, b: ZetaExpression) -> bool:
    """Exact equality of the canonical term multisets (Weyl tags ignored)."""
    return sorted(t.value_key for t in a.terms) == sorted(t.value_key for t in b.terms)


# ---------------------------------------------------------------- printing


def _frac_text(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _frac_latex(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    sign = "-" if q < 0 else ""
    return f"{sign}\\frac{{{abs(q.numerator)}}}{{{q.denominator}}}"


def _affine(k: int, h: Fraction, fmt) -> str:
    parts = ""
    if k != 0:
        parts = "s" if k == 1 else ("-s" if k == -1 else f"{k}s")
    if h != 0 or k == 0:
        if not parts:
            parts = fmt(h)
        elif h > 0:
            parts += "+" + fmt(h)
        else:
            parts += "-" + fmt(-h)
    return parts


def _xi_power(x: XiLinear, e: int, latex: bool) -> str:
    fmt = _frac_latex if latex else _frac_text
    base = ("\\xi(" if latex else "xi(") + _affine(x.k, x.h, fmt) + ")"
    if e == 1:
        return base
    return f"{base}^{{{e}}}" if latex else f"{base}^{e}"


def to_text_xi(X: XiProduct) -> str:
    return _product_string(X, latex=False)


def to_latex_xi(X: XiProduct) -> str:
    return _product_string(X, latex=True)


def _product_string(X: XiProduct, latex: bool) -> str:
    num = [_xi_power(x, e, latex) for x, e in X.items_sorted if e > 0]
    den = [_xi_power(x, -e, latex) for x, e in X.items_sorted if e < 0]
    sep = "" if latex else "*"
    n = sep.join(num) or "1"
    if not den:
        return n
    d = sep.join(den)
    if latex:
        return f"\\frac{{{n}}}{{{d}}}"
    return f"{n}/({d})" if len(den) > 1 else f"{n}/{d}"


def _weight_string(mu0, mu1, latex: bool) -> str:
    def comb(mu) -> str:
        out = ""
        for i, c in enumerate(mu):
            if c == 0:
                continue
            name = f"\\lambda_{{{i + 1}}}" if latex else f"L{i + 1}"
            mag = abs(c)
            coef = "" if mag == 1 else (_frac_latex(mag) if latex else _frac_text(mag) + "*")
            out += ("-" if c < 0 else ("+" if out else "")) + coef + name
        return out or "0"

    s = comb(mu0) if any(mu0) else ""
    if any(mu1):
        inner = comb(mu1)
        s += ("+" if s else "") + (f"s({inner})" if latex else f"s*({inner})")
    return s or "0"


def _term_string(t: ZetaTerm, latex: bool) -> tuple[int, str]:
    fmt = _frac_latex if latex else _frac_text
    lin = ["(" + _affine(f.k, f.b, fmt) + ")" for f in t.den_lin]
    c = t.coeff
    sign = -1 if c < 0 else 1
    c = abs(c)
    num = [_xi_power(x, e, latex) for x, e in t.xi.items_sorted if e > 0]
    den_xi = [_xi_power(x, -e, latex) for x, e in t.xi.items_sorted if e < 0]
    expo = ""
    if not t.expd.is_trivial():
        w = _weight_string(t.expd.mu0, t.expd.mu1, latex)
        expo = f"e^{{\\langle {w},T\\rangle}}" if latex else f"exp<{w},T>"
    if latex:
        top = ("" if c.numerator == 1 and num else str(c.numerator)) + "".join(num)
        bottom = ("" if c.denominator == 1 else str(c.denominator)) + "".join(lin + den_xi)
        body = f"\\frac{{{top}}}{{{bottom}}}" if bottom else top
        return sign, expo + body
    top_parts = ([] if c.numerator == 1 and num else [str(c.numerator)]) + num
    bottom_parts = ([] if c.denominator == 1 else [str(c.denominator)]) + lin + den_xi
    top = "*".join(top_parts)
    body = top
    if bottom_parts:
        bottom = "*".join(bottom_parts)
        body = f"{top}/({bottom})" if len(bottom_parts) > 1 else f"{top}/{bottom}"
    if expo:
        body = expo + body[1:] if body.startswith("1/") else f"{expo}*{body}"
    return sign, body


def _sum_string(expr: ZetaExpression, latex: bool) -> str:
    if not expr.terms:
        return "0"
    out = ""
    for t in expr.terms:
        sign, body = _term_string(t, latex)
        if not out:
            out = ("-" if sign < 0 else "") + body
        else:
            out += (" - " if sign < 0 else " + ") + body
    return out


# ---------------------------------------------------------------- JSON


def _q_json(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _q_parse(s) -> Fraction:
    return Fraction(str(s))


def expression_to_dict(expr: ZetaExpression) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "terms": [
            {
                "coeff": _q_json(t.coeff),
                "weyl": t.weyl_tag,
                "exp": {"mu0": [_q_json(x) for x in t.expd.mu0], "mu1": [_q_json(x) for x in t.expd.mu1]},
                "den": [[f.k, _q_json(f.b)] for f in t.den_lin],
                "xi": [[x.k, _q_json(x.h), e] for x, e in t.xi.items_sorted],
            }
            for t in expr.terms
        ],
    }


def expression_from_dict(d: Mapping) -> ZetaExpression:
    terms = []
    for t in d["terms"]:
        terms.append(
            ZetaTerm(
                coeff=_q_parse(t["coeff"]),
                weyl_tag=t.get("weyl"),
                expd=ExpDatum(tuple(_q_parse(x) for x in t["exp"]["mu0"]), tuple(_q_parse(x) for x in t["exp"]["mu1"])),
                den_lin=tuple(sorted(LinFactor(int(k), _q_parse(b)) for k, b in t["den"])),
                xi=XiProduct((XiLinear(int(k), _q_parse(h)), int(e)) for k, h, e in t["xi"]),
            )
        )
    return ZetaExpression(tuple(terms))


def xi_product_to_list(X: XiProduct) -> list:
    return [[x.k, _q_json(x.h), e] for x, e in X.items_sorted]


def xi_product_from_list(items) -> XiProduct:
    return XiProduct((XiLinear(int(k), _q_parse(h)), int(e)) for k, h, e in items)


def serialize(obj: ZetaExpression | XiProduct, format: str = "text") -> str:
    """Render an expression (or a bare xi product) as ``json``, ``latex`` or ``text``."""
    if format not in ("json", "latex", "text"):
        raise ValueError(f"unknown format {format!r}")
    if isinstance(obj, XiProduct):
        if format == "json":
            return json.dumps({"schema_version": SCHEMA_VERSION, "xi": xi_product_to_list(obj)}, sort_keys=True)
        return _product_string(obj, latex=format == "latex")
    if format == "json":
        return json.dumps(expression_to_dict(obj), sort_keys=True)
    return _sum_string(obj, latex=format == "latex")


def parse_json(text: str) -> ZetaExpression | XiProduct:
    d = json.loads(text)
    if "terms" in d:
        return expression_from_dict(d)
    return xi_product_from_list(d["xi"])
