"""Linear functionals on forms of degree 2d and their apolar ideals.

A functional is stored by its values on the degree-2d monomial basis
(coordinate convention: ``ell(x^a)`` is the stored value, no divided-power
factors).  From it we build the Catalecticant matrices
``(ell(x^alpha * x^beta))`` and read off degree parts of the apolar
(Gorenstein) ideal as left kernels.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DegreeOutOfRange, ZeroFunctional
from .polyring import (
    Poly,
    ProjPoint,
    dim_forms,
    monomial_basis,
    monomial_index,
    monomial_values,
    multiply,
)
from .qlinalg import (
    ZERO,
    QMatrix,
    format_rational,
    in_span,
    left_kernel,
    rank,
    row_space_basis,
    to_rational,
)


@dataclass(frozen=True)
class Functional:
    """A linear functional on ternary forms of degree ``socle_degree``.

    ``values[i]`` is the value on the i-th monomial of
    ``monomial_basis(socle_degree)``.  ``support`` lists ``(weight, point)``
    pairs when the functional was built as a weighted sum of point
    evaluations.
    """

    socle_degree: int
    values: tuple[Fraction, ...]
    support: tuple[tuple[Fraction, ProjPoint], ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        if len(self.values) != dim_forms(self.socle_degree):
            raise ValueError("values do not match the monomial basis")

    @property
    def half_degree(self) -> int:
        if self.socle_degree % 2:
            raise ValueError("socle degree is odd")
        return self.socle_degree // 2

    def is_zero(self) -> bool:
        return not any(self.values)

    def __call__(self, f: Poly) -> Fraction:
        if f.degree != self.socle_degree:
            raise ValueError("form degree does not match the socle degree")
        idx = monomial_index(self.socle_degree)
        return sum((c * self.values[idx[m]] for m, c in f.coeffs.items()), ZERO)

    def scale(self, c) -> "Functional":
        c = to_rational(c)
        support = None
        if self.support is not None:
            support = tuple((c * w, p) for w, p in self.support)
        return Functional(self.socle_degree, tuple(c * v for v in self.values), support)

    def to_json_obj(self) -> dict:
        obj = {
            "socle_degree": self.socle_degree,
            "values": [format_rational(v) for v in self.values],
        }
        if self.support is not None:
            obj["support"] = [
                {"w": format_rational(w), "point": p.to_json_obj()}
                for w, p in self.support
            ]
        return obj

    @classmethod
    def from_json_obj(cls, obj: dict) -> "Functional":
        support = None
        if obj.get("support") is not None:
            support = tuple(
                (to_rational(s["w"]), ProjPoint.from_json_obj(s["point"]))
                for s in obj["support"]
            )
        values = tuple(to_rational(v) for v in obj["values"])
        return cls(int(obj["socle_degree"]), values, support)


def functional_from_points(weighted_points: Iterable[tuple], socle_degree: int) -> Functional:
    """``sum_v w_v * ev_v`` on forms of degree ``socle_degree``."""
    if socle_degree < 2 or socle_degree % 2:
        raise ValueError("socle degree must be even and at least 2")
    support = tuple((to_rational(w), p) for w, p in weighted_points)
    values = [ZERO] * dim_forms(socle_degree)
    for w, p in support:
        if not w:
            continue
        for i, mv in enumerate(monomial_values(p, socle_degree)):
            if mv:
                values[i] += w * mv
    return Functional(socle_degree, tuple(values), support)


def point_evaluation(point: ProjPoint, socle_degree: int) -> Functional:
    return functional_from_points([(1, point)], socle_degree)


@dataclass(frozen=True)
class CatalecticantMatrix:
    u: int
    v: int
    matrix: QMatrix


def catalecticant(ell: Functional, u: int) -> CatalecticantMatrix:
    """Matrix of ``(p, q) -> ell(p q)`` for p of degree u and q of degree 2d - u."""
    m = ell.socle_degree
    if not 0 <= u <= m:
        raise DegreeOutOfRange(f"u={u} outside 0..{m}")
    v = m - u
    idx = monomial_index(m)
    vals = ell.values
    cols = monomial_basis(v)
    rows = [
        [vals[idx[(a + a2, b + b2, c + c2)]] for (a2, b2, c2) in cols]
        for (a, b, c) in monomial_basis(u)
    ]
    return CatalecticantMatrix(u, v, QMatrix._wrap(rows, len(cols)))


def hankel(ell: Functional) -> QMatrix:
    """Middle Catalecticant, i.e. the Hankel matrix of the form ``f -> ell(f^2)``."""
    return catalecticant(ell, ell.half_degree).matrix


class _FullSpace:
    """Marker for degree parts above the socle degree (every form belongs)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "FULL_SPACE"


FULL_SPACE = _FullSpace()


def ideal_degree_part(ell: Functional, k: int):
    """Basis of the degree-``k`` part of the apolar ideal of ``ell``.

    Returns the forms p of degree k with ``ell(p q) = 0`` for all q of
    degree ``2d - k`` (canonical echelon basis), or :data:`FULL_SPACE`
    when ``k`` exceeds the socle degree.
    """
    if k < 0:
        raise DegreeOutOfRange("negative degree")
    if k > ell.socle_degree:
        return FULL_SPACE
    B = catalecticant(ell, k).matrix
    return [Poly.from_vector(k, vec) for vec in left_kernel(B)]


@dataclass(frozen=True)
class HilbertFunction:
    T: tuple[int, ...]

    def __getitem__(self, i):
        return self.T[i]

    def __len__(self):
        return len(self.T)

    def is_symmetric(self) -> bool:
        return self.T == self.T[::-1]


def hilbert_function(ell: Functional) -> HilbertFunction:
    """Ranks of all Catalecticant matrices of ``ell``, degrees 0..2d."""
    if ell.is_zero():
        raise ZeroFunctional("the zero functional has no Gorenstein ideal")
    return HilbertFunction(
        tuple(rank(catalecticant(ell, k).matrix) for k in range(ell.socle_degree + 1))
    )


def contains(basis: Sequence[Poly], f: Poly) -> bool:
    """Whether ``f`` lies in the span of ``basis`` (exact linear solve)."""
    if basis is FULL_SPACE:
        return True
    if not basis:
        return f.is_zero()
    return in_span([b.vector() for b in basis], f.vector())


def products_span(pairs: Iterable[tuple[Poly, Poly]], degree: int) -> list[Poly]:
    """Canonical basis of the span of the products ``f g``."""
    vecs = [multiply(f, g).vector() for f, g in pairs]
    if not vecs:
        return []
    return [Poly.from_vector(degree, v)
            for v in row_space_basis(vecs, dim_forms(degree))]


def generated_degree_part(generators: Sequence[Poly], degree: int) -> list[Poly]:
    """Basis of the degree-``degree`` part of the ideal generated by ``generators``."""
    pairs = []
    for g in generators:
        if g.degree > degree:
            continue
        for mono in monomial_basis(degree - g.degree):
            pairs.append((g, Poly.monomial(mono)))
    return products_span(pairs, degree)


def square_of_degree_part(basis: Sequence[Poly]) -> list[Poly]:
    """Basis of ``span{f g : f, g in basis}``."""
    if not basis:
        return []
    degree = 2 * basis[0].degree
    pairs = [(basis[i], basis[j]) for i in range(len(basis)) for j in range(i, len(basis))]
    return products_span(pairs, degree)


def ideal_square_degree_part(ell: Functional) -> tuple[int, list[Poly]]:
    """Dimension and basis of the socle-degree part of ``I(ell)^2``.

    This is the span of ``f g`` with ``f in I_a``, ``g in I_b``,
    ``a + b = 2d``, ``a <= b``.  Products with the zero part ``I_0``
    vanish, so only ``1 <= a <= d`` contributes.
    """
    if ell.is_zero():
        raise ZeroFunctional("the zero functional has no Gorenstein ideal")
    m = ell.socle_degree
    pairs = []
    for a in range(1, m // 2 + 1):
        low = ideal_degree_part(ell, a)
        if not low:
            continue
        b = m - a
        if a == b:
            pairs.extend((low[i], low[j]) for i in range(len(low)) for j in range(i, len(low)))
        else:
            high = ideal_degree_part(ell, b)
            pairs.extend((f, g) for f in low for g in high)
    basis = products_span(pairs, m)
    return len(basis), basis
