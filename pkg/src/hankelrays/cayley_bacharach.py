"""Grid point configurations and linear relations among point evaluations.

The configurations are complete intersections ``V(L1) ∩ V(L2)`` where
``L1`` (resp. ``L2``) is a product of lines ``x = r z`` (resp. ``y = r z``),
split into two parts.  The interesting object is the unique linear relation
among the evaluations at the first part on forms of a given degree.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Callable, Iterable, NamedTuple, Sequence

from .errors import DegreeOutOfRange, NoRelation, RelationNotUnique, SearchExhausted
from .polyring import (
    Poly,
    ProjPoint,
    dim_forms,
    grid_conic,
    monomial_basis,
    monomial_values,
    product_of_linear_roots,
    third_form,
)
from .qlinalg import QMatrix, format_rational, kernel, left_kernel, rank, solve, to_rational


@dataclass(frozen=True)
class PointConfig:
    """Grid ``{(a:b:1) : a in x_roots, b in y_roots}`` with a split.

    ``points`` is sorted canonically, ``gamma1`` and ``gamma2`` are index
    tuples into it.  ``third`` optionally holds a known degree-d form
    vanishing on gamma1 besides ``L1`` and ``L2``.
    """

    points: tuple[ProjPoint, ...]
    gamma1: tuple[int, ...]
    gamma2: tuple[int, ...]
    L1: Poly
    L2: Poly
    x_roots: tuple[Fraction, ...]
    y_roots: tuple[Fraction, ...]
    label: str = "grid"
    third: Poly | None = field(default=None, compare=False)
    t0: Fraction | None = None

    @property
    def gamma1_points(self) -> list[ProjPoint]:
        return [self.points[i] for i in self.gamma1]

    @property
    def gamma2_points(self) -> list[ProjPoint]:
        return [self.points[i] for i in self.gamma2]

    @property
    def s(self) -> int:
        """Cayley-Bacharach degree ``deg L1 + deg L2 - 3``."""
        return self.L1.degree + self.L2.degree - 3

    def split(self, in_gamma2: Callable[[ProjPoint], bool] | Iterable[ProjPoint],
              label: str | None = None, third: Poly | None = None) -> "PointConfig":
        """Re-split the grid; ``in_gamma2`` is a predicate or a set of points."""
        if not callable(in_gamma2):
            chosen = {p if isinstance(p, ProjPoint) else ProjPoint(tuple(p)) for p in in_gamma2}
            missing = chosen - set(self.points)
            if missing:
                raise ValueError(f"points not on the grid: {sorted(map(str, missing))}")
            pred = chosen.__contains__
        else:
            pred = in_gamma2
        g2 = tuple(i for i, p in enumerate(self.points) if pred(p))
        g1 = tuple(i for i in range(len(self.points)) if i not in set(g2))
        return PointConfig(self.points, g1, g2, self.L1, self.L2, self.x_roots,
                           self.y_roots, label or self.label, third, self.t0)

    def to_json_obj(self) -> dict:
        return {
            "label": self.label,
            "x_roots": [format_rational(r) for r in self.x_roots],
            "y_roots": [format_rational(r) for r in self.y_roots],
            "gamma1": [p.to_json_obj() for p in self.gamma1_points],
            "gamma2": [p.to_json_obj() for p in self.gamma2_points],
            "t0": None if self.t0 is None else format_rational(self.t0),
        }


def grid(x_roots: Sequence, y_roots: Sequence, label: str = "grid",
         t0: Fraction | None = None) -> PointConfig:
    """Unsplit complete intersection of the two products of lines."""
    xr = tuple(to_rational(r) for r in x_roots)
    yr = tuple(to_rational(r) for r in y_roots)
    if len(set(xr)) != len(xr) or len(set(yr)) != len(yr):
        raise ValueError("roots must be distinct")
    pts = tuple(sorted(ProjPoint.affine(a, b) for a in xr for b in yr))
    L1 = product_of_linear_roots("x", xr)
    L2 = product_of_linear_roots("y", yr)
    return PointConfig(pts, tuple(range(len(pts))), (), L1, L2, xr, yr, label, None, t0)


def integer_grid(d: int) -> PointConfig:
    """The ``d x d`` grid ``{(j:k:1) : 0 <= j, k < d}``, unsplit."""
    if d < 1:
        raise ValueError("d must be positive")
    return grid(range(d), range(d), label=f"grid{d}x{d}")


def split_sums(d: int) -> set[int]:
    """Diagonals ``x + y = c`` forming the second part of the split."""
    return {2} | {d + j for j in range(1, d - 3)}


def gamma_split(d: int) -> PointConfig:
    """Integer grid with the diagonals ``x+y=2`` and ``x+y=d+j`` (1<=j<=d-4) split off."""
    if d < 4:
        raise ValueError("d must be at least 4")
    sums = split_sums(d)
    return integer_grid(d).split(
        lambda p: p.coords[0] + p.coords[1] in sums,
        label=f"split{d}", third=third_form(d),
    )


def evaluation_matrix(points: Sequence[ProjPoint], m: int) -> QMatrix:
    """Rows: points; columns: degree-``m`` monomials; entries: values."""
    return QMatrix._wrap([monomial_values(p, m) for p in points], dim_forms(m))


def vanishing_forms(points: Sequence[ProjPoint], m: int) -> list[Poly]:
    """Basis of the degree-``m`` forms vanishing on ``points``."""
    if not points:
        return [Poly.monomial(mono) for mono in monomial_basis(m)]
    return [Poly.from_vector(m, v) for v in kernel(evaluation_matrix(points, m))]


@dataclass(frozen=True)
class Relation:
    """``sum_v u_v ev_v = 0`` on forms of degree ``degree``.

    Normalization: the coefficients form a primitive integer vector and the
    coefficient of the lexicographically first point is positive.
    """

    points: tuple[ProjPoint, ...]
    coefficients: tuple[Fraction, ...]
    degree: int

    def coefficient(self, point: ProjPoint) -> Fraction:
        try:
            return self.coefficients[self.points.index(point)]
        except ValueError:
            return Fraction(0)

    def as_dict(self) -> dict[ProjPoint, Fraction]:
        return dict(zip(self.points, self.coefficients))

    def all_nonzero(self) -> bool:
        return all(self.coefficients)

    def residual(self) -> list[Fraction]:
        E = evaluation_matrix(self.points, self.degree)
        return E.transpose() @ self.coefficients

    def to_json_obj(self) -> dict:
        return {
            "degree": self.degree,
            "coefficients": [
                {"point": p.to_json_obj(), "u": format_rational(c)}
                for p, c in zip(self.points, self.coefficients)
            ],
        }


def _normalize(points: Sequence[ProjPoint], vec: Sequence[Fraction]) -> tuple[Fraction, ...]:
    den = lcm(*(q.denominator for q in vec))
    ints = [int(q * den) for q in vec]
    g = 0
    for v in ints:
        g = gcd(g, v)
    first = min((p, i) for i, p in enumerate(points) if ints[i])[1]
    if ints[first] < 0:
        g = -g
    return tuple(Fraction(v // g) for v in ints)


def unique_relation(points: Sequence[ProjPoint], m: int) -> Relation:
    """The unique (normalized) relation among evaluations at ``points`` in degree ``m``."""
    points = tuple(points)
    if not points:
        raise NoRelation("no points")
    K = left_kernel(evaluation_matrix(points, m))
    if not K:
        raise NoRelation(f"evaluations at {len(points)} points are independent in degree {m}")
    if len(K) > 1:
        raise RelationNotUnique(
            f"{len(K)} independent relations in degree {m}", len(K)
        )
    return Relation(points, _normalize(points, K[0]), m)


def relation_grid_matrix(relation: Relation, config: PointConfig) -> QMatrix:
    """Relation laid out on the grid: entry (i, j) (1-based) belongs to the
    point with the ``(n-i)``-th x-root and ``(j-1)``-th y-root, so the top row
    is the largest x and the columns run through increasing y."""
    coeffs = relation.as_dict()
    nx = len(config.x_roots)
    rows = []
    for i in range(1, nx + 1):
        a = config.x_roots[nx - i]
        rows.append([coeffs.get(ProjPoint.affine(a, b), Fraction(0)) for b in config.y_roots])
    return QMatrix(rows)


class CBDefect(NamedTuple):
    lhs: int
    rhs: int
    equal: bool


def _dim_vanishing(points: Sequence[ProjPoint], k: int) -> int:
    if not points:
        return dim_forms(k)
    return dim_forms(k) - rank(evaluation_matrix(points, k))


def cb_defect_check(config: PointConfig, k: int) -> CBDefect:
    """Both sides of the Cayley-Bacharach equality in degree ``k``.

    lhs: forms of degree k through gamma1, modulo those through the whole grid.
    rhs: failure of the gamma2 evaluations to be independent in degree s - k.
    """
    s = config.s
    if k > s or k < 0:
        raise DegreeOutOfRange(f"k={k} outside 0..{s}")
    lhs = _dim_vanishing(config.gamma1_points, k) - _dim_vanishing(config.points, k)
    g2 = config.gamma2_points
    rhs = len(g2) - (rank(evaluation_matrix(g2, s - k)) if g2 else 0)
    return CBDefect(lhs, rhs, lhs == rhs)


def _conic_base_points(d: int) -> set[tuple[int, int]]:
    return {(0, 0), (1, 0), (0, 1), (d - 1, d - 1), (d - 2, d - 1), (d - 1, d - 2)}


def extra_conic_points(d: int) -> list[ProjPoint]:
    """Grid points on the conic besides the six it is built through."""
    C = grid_conic(d)
    # clear denominators once and evaluate with integers
    den = lcm(*(c.denominator for c in C.coeffs.values()))
    terms = [(int(c * den), i, j) for (i, j, _), c in C.coeffs.items()]
    six = _conic_base_points(d)
    return [
        ProjPoint.affine(a, b)
        for a in range(d) for b in range(d)
        if (a, b) not in six and not sum(c * a ** i * b ** j for c, i, j in terms)
    ]


def is_exceptional(d: int) -> bool:
    """Whether the conic meets the ``d x d`` grid in more than the six points."""
    if d < 4:
        raise ValueError("d must be at least 4")
    return bool(extra_conic_points(d))


def perturbation_coefficients(d: int, t) -> list[Fraction] | None:
    """Coefficients ``alpha`` with ``ev_(t:2-t:1) = sum alpha_x ev_x`` on
    degree ``d-3`` forms, ``x`` running over the second part of the split
    without ``(1:1:1)``; None if no such combination exists."""
    t = to_rational(t)
    base = gamma_split(d)
    g2 = [p for p in base.gamma2_points if p != ProjPoint.affine(1, 1)]
    E = evaluation_matrix(g2, d - 3)
    return solve(E.transpose(), monomial_values(ProjPoint.affine(t, 2 - t), d - 3))


def perturbed_grid(d: int, max_candidates: int = 200, start: int = 2) -> tuple[Fraction, PointConfig]:
    """Move ``(1:1:1)`` along ``x + y = 2`` so that every perturbation
    coefficient is nonzero.

    Candidates are ``t0 = 1 - 1/k`` for ``k = start, start+1, ...``.  The
    returned grid uses x-roots ``{0, t0, 2, ..., d-1}`` and y-roots
    ``{0, 2-t0, 2, ..., d-1}`` and is split along the same diagonals
    (with ``(t0 : 2-t0 : 1)`` in place of ``(1:1:1)``).
    """
    if d < 4:
        raise ValueError("d must be at least 4")
    sums = split_sums(d)
    for k in range(start, start + max_candidates):
        t0 = 1 - Fraction(1, k)
        alpha = perturbation_coefficients(d, t0)
        if alpha is None or not all(alpha):
            continue
        rest = list(range(2, d))
        base = grid([0, t0] + rest, [0, 2 - t0] + rest, label=f"perturbed{d}", t0=t0)
        config = base.split(lambda p: p.coords[0] + p.coords[1] in sums)
        return t0, config
    raise SearchExhausted(f"no admissible t0 among {max_candidates} candidates for d={d}")
