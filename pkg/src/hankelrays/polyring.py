"""Homogeneous ternary forms over Q.

Monomials are exponent triples ``(a, b, c)`` for ``x^a y^b z^c``.  The
basis of degree-``m`` forms is ordered graded-lexicographically with
``x > y > z``; every matrix in the package is written in this order.
Ranks and kernels do not depend on the order, only the layout of exported
matrices does.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Mapping, Sequence

from .qlinalg import ZERO, ONE, format_rational, rank, to_rational

Monomial = tuple[int, int, int]


@lru_cache(maxsize=None)
def monomial_basis(m: int) -> tuple[Monomial, ...]:
    """Degree-``m`` monomials in graded-lex order, ``C(m+2, 2)`` of them."""
    if m < 0:
        raise ValueError("degree must be non-negative")
    return tuple((a, b, m - a - b) for a in range(m, -1, -1) for b in range(m - a, -1, -1))


@lru_cache(maxsize=None)
def monomial_index(m: int) -> dict[Monomial, int]:
    return {mono: i for i, mono in enumerate(monomial_basis(m))}


def dim_forms(m: int) -> int:
    """Dimension of the space of ternary forms of degree ``m`` (0 if m < 0)."""
    return comb(m + 2, 2) if m >= 0 else 0


@dataclass(frozen=True, order=True)
class ProjPoint:
    """A point of P^2 with rational coordinates.

    Stored as its canonical representative: the last nonzero coordinate is
    scaled to 1.  Points sort lexicographically by that representative.
    """

    coords: tuple[Fraction, Fraction, Fraction]

    def __post_init__(self):
        c = tuple(to_rational(v) for v in self.coords)
        if len(c) != 3:
            raise ValueError("need three coordinates")
        nonzero = [v for v in c if v]
        if not nonzero:
            raise ValueError("(0:0:0) is not a projective point")
        s = nonzero[-1]
        object.__setattr__(self, "coords", tuple(v / s for v in c))

    @classmethod
    def affine(cls, a, b) -> "ProjPoint":
        """The point ``(a:b:1)``."""
        return cls((a, b, 1))

    def __iter__(self):
        return iter(self.coords)

    def __str__(self):
        return "(" + ":".join(format_rational(v) for v in self.coords) + ")"

    def to_json_obj(self) -> list[str]:
        return [format_rational(v) for v in self.coords]

    @classmethod
    def from_json_obj(cls, data) -> "ProjPoint":
        return cls(tuple(data))


def monomial_values(point: ProjPoint, m: int) -> list[Fraction]:
    """Values of all degree-``m`` monomials at ``point``, in basis order."""
    a, b, c = point.coords
    pa = _powers(a, m)
    pb = _powers(b, m)
    pc = _powers(c, m)
    return [pa[i] * pb[j] * pc[k] for i, j, k in monomial_basis(m)]


def _powers(v: Fraction, m: int) -> list[Fraction]:
    out = [ONE]
    for _ in range(m):
        out.append(out[-1] * v)
    return out


class Poly:
    """Immutable homogeneous form of a fixed degree."""

    __slots__ = ("degree", "_coeffs", "_hash")

    def __init__(self, degree: int, coeffs: Mapping[Monomial, object] | None = None):
        if degree < 0:
            raise ValueError("degree must be non-negative")
        clean: dict[Monomial, Fraction] = {}
        for mono, c in (coeffs or {}).items():
            mono = tuple(int(e) for e in mono)
            if len(mono) != 3 or min(mono) < 0 or sum(mono) != degree:
                raise ValueError(f"monomial {mono} is not of degree {degree}")
            c = to_rational(c)
            if c:
                clean[mono] = clean.get(mono, ZERO) + c
        self.degree = degree
        self._coeffs = {k: v for k, v in clean.items() if v}
        self._hash = None

    @classmethod
    def _wrap(cls, degree: int, coeffs: dict) -> "Poly":
        obj = cls.__new__(cls)
        obj.degree = degree
        obj._coeffs = coeffs
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, c=1) -> "Poly":
        return cls(0, {(0, 0, 0): c})

    @classmethod
    def monomial(cls, exps: Monomial, c=1) -> "Poly":
        return cls(sum(exps), {tuple(exps): c})

    @classmethod
    def from_vector(cls, degree: int, vec: Sequence) -> "Poly":
        basis = monomial_basis(degree)
        if len(vec) != len(basis):
            raise ValueError("vector length does not match the monomial basis")
        return cls._wrap(
            degree, {m: to_rational(c) for m, c in zip(basis, vec) if c}
        )

    @property
    def coeffs(self) -> dict[Monomial, Fraction]:
        return dict(self._coeffs)

    def coefficient(self, mono: Monomial) -> Fraction:
        return self._coeffs.get(tuple(mono), ZERO)

    def terms(self) -> list[tuple[Monomial, Fraction]]:
        idx = monomial_index(self.degree)
        return sorted(self._coeffs.items(), key=lambda t: idx[t[0]])

    def vector(self) -> list[Fraction]:
        return [self._coeffs.get(m, ZERO) for m in monomial_basis(self.degree)]

    def is_zero(self) -> bool:
        return not self._coeffs

    def __bool__(self):
        return bool(self._coeffs)

    # -- arithmetic ---------------------------------------------------

    def _check(self, other: "Poly"):
        if self.degree != other.degree:
            raise ValueError("cannot add forms of different degrees")

    def __add__(self, other: "Poly") -> "Poly":
        if not isinstance(other, Poly):
            return NotImplemented
        self._check(other)
        out = dict(self._coeffs)
        for m, c in other._coeffs.items():
            v = out.get(m, ZERO) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Poly._wrap(self.degree, out)

    def __neg__(self) -> "Poly":
        return Poly._wrap(self.degree, {m: -c for m, c in self._coeffs.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Poly):
            return multiply(self, other)
        c = to_rational(other)
        if not c:
            return Poly._wrap(self.degree, {})
        return Poly._wrap(self.degree, {m: c * v for m, v in self._coeffs.items()})

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, n: int) -> "Poly":
        out = Poly.constant(1)
        for _ in range(n):
            out = multiply(out, self)
        return out

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.degree == other.degree and self._coeffs == other._coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.degree, frozenset(self._coeffs.items())))
        return self._hash

    def __call__(self, point: ProjPoint) -> Fraction:
        return evaluate(self, point)

    # -- text / json --------------------------------------------------

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({self.degree}, {format_poly(self)!r})"

    def to_json_obj(self) -> list:
        return [[a, b, c, format_rational(v)] for (a, b, c), v in self.terms()]

    @classmethod
    def from_json_obj(cls, degree: int, data) -> "Poly":
        return cls(degree, {(a, b, c): v for a, b, c, v in data})


def multiply(f: Poly, g: Poly) -> Poly:
    """Exact product of two forms; the degree is the sum of the degrees."""
    out: dict[Monomial, Fraction] = {}
    for (a1, b1, c1), u in f._coeffs.items():
        for (a2, b2, c2), v in g._coeffs.items():
            key = (a1 + a2, b1 + b2, c1 + c2)
            out[key] = out.get(key, ZERO) + u * v
    return Poly._wrap(f.degree + g.degree, {k: v for k, v in out.items() if v})


def evaluate(f: Poly, point: ProjPoint) -> Fraction:
    """Value of ``f`` at the canonical representative of ``point``."""
    a, b, c = point.coords
    m = f.degree
    pa, pb, pc = _powers(a, m), _powers(b, m), _powers(c, m)
    s = ZERO
    for (i, j, k), v in f._coeffs.items():
        s += v * pa[i] * pb[j] * pc[k]
    return s


X = Poly.monomial((1, 0, 0))
Y = Poly.monomial((0, 1, 0))
Z = Poly.monomial((0, 0, 1))


def linear_form(a, b, c) -> Poly:
    """The form ``a*x + b*y + c*z``."""
    return Poly(1, {(1, 0, 0): a, (0, 1, 0): b, (0, 0, 1): c})


def product_of_linear_roots(variable: str, roots: Sequence) -> Poly:
    """``prod_r (v - r z)`` for ``v`` in {"x", "y"}; vanishes on ``v = r`` (z = 1)."""
    if variable not in ("x", "y"):
        raise ValueError("variable must be 'x' or 'y'")
    if not roots:
        raise ValueError("need at least one root")
    out = Poly.constant(1)
    for r in roots:
        r = to_rational(r)
        factor = linear_form(1, 0, -r) if variable == "x" else linear_form(0, 1, -r)
        out = multiply(out, factor)
    return out


def grid_conic(d: int) -> Poly:
    """Conic ``x^2 + y^2 - 2(d-2)/(d-1) xy - xz - yz``.

    It passes through (0,0), (1,0), (0,1), (d-1,d-1), (d-2,d-1), (d-1,d-2).
    """
    if d < 4:
        raise ValueError("d must be at least 4")
    return Poly(2, {
        (2, 0, 0): 1,
        (0, 2, 0): 1,
        (1, 1, 0): Fraction(-2 * (d - 2), d - 1),
        (1, 0, 1): -1,
        (0, 1, 1): -1,
    })


def third_form(d: int) -> Poly:
    """Degree-``d`` form ``conic * prod_{j=3..d} (x + y - j z)``.

    Together with the two grid curves it spans the degree-``d`` forms
    vanishing on the first part of the grid split.
    """
    out = grid_conic(d)
    for j in range(3, d + 1):
        out = multiply(out, linear_form(1, 1, -j))
    return out


# -- text format -------------------------------------------------------

def _format_monomial(mono: Monomial) -> str:
    parts = []
    for name, e in zip("xyz", mono):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_poly(f: Poly) -> str:
    """Human-readable text such as ``x^2 - 4/3*x*y - z^2``."""
    if f.is_zero():
        return "0"
    out = []
    for i, (mono, c) in enumerate(f.terms()):
        mtxt = _format_monomial(mono)
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if not mtxt:
            body = format_rational(mag)
        elif mag == 1:
            body = mtxt
        else:
            body = f"{format_rational(mag)}*{mtxt}"
        if i == 0:
            out.append(("-" if sign == "-" else "") + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


_TERM = re.compile(r"([+-]?)\s*([^+-]+)")


def parse_poly(text: str, degree: int | None = None) -> Poly:
    """Inverse of :func:`format_poly` (no parentheses, explicit ``*``)."""
    text = text.replace(" ", "")
    if text in ("", "0"):
        return Poly(degree or 0)
    coeffs: dict[Monomial, Fraction] = {}
    for sign, body in _TERM.findall(text):
        c = Fraction(-1 if sign == "-" else 1)
        exps = [0, 0, 0]
        for factor in body.split("*"):
            if factor[0] in "xyz":
                name, _, e = factor.partition("^")
                exps["xyz".index(name)] += int(e) if e else 1
            else:
                c *= Fraction(factor)
        key = tuple(exps)
        coeffs[key] = coeffs.get(key, ZERO) + c
    degrees = {sum(k) for k in coeffs}
    if len(degrees) != 1:
        raise ValueError("form is not homogeneous")
    deg = degrees.pop()
    if degree is not None and degree != deg:
        raise ValueError(f"expected degree {degree}, got {deg}")
    return Poly(deg, coeffs)


def span_dimension(forms: Iterable[Poly]) -> int:
    """Dimension of the linear span of forms of one common degree."""
    vecs = [f.vector() for f in forms]
    if not vecs:
        return 0
    return rank(vecs)
