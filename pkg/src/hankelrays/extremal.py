"""Construction and certification of extreme rays of the Hankel spectrahedron.

A functional ``ell`` on forms of degree 2d spans an extreme ray of the cone
dual to sums of squares iff its Hankel matrix is PSD and the degree-2d part
of the ideal generated by ``I(ell)_d`` is a hyperplane.  Everything in the
certificate is recomputed from ``ell`` with exact arithmetic.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .apolarity import (
    Functional,
    HilbertFunction,
    contains,
    functional_from_points,
    generated_degree_part,
    hankel,
    hilbert_function,
    ideal_degree_part,
    ideal_square_degree_part,
    square_of_degree_part,
)
from .cayley_bacharach import (
    PointConfig,
    Relation,
    gamma_split,
    grid,
    is_exceptional,
    perturbed_grid,
    unique_relation,
    vanishing_forms,
)
from .errors import CoefficientZero, KernelMismatch, RankOutOfRange, ZeroFunctional
from .polyring import Poly, ProjPoint, dim_forms, monomial_basis, multiply
from .qlinalg import PSD, PsdCertificate, format_rational, kernel, psd_certify, rank


@dataclass(frozen=True)
class Construction:
    """A point-supported functional together with the data it was built from."""

    functional: Functional
    config: PointConfig
    relation: Relation
    removed_point: ProjPoint

    @property
    def t0(self) -> Fraction | None:
        return self.config.t0

    @property
    def kept_points(self) -> list[ProjPoint]:
        return [p for p in self.relation.points if p != self.removed_point]


def functional_from_relation(relation: Relation, removed_point: ProjPoint,
                             socle_degree: int) -> Functional:
    """``sum_{v != P} ev_v - u_P^2 / (sum_{v != P} u_v^2) ev_P``.

    By Cauchy-Schwarz this is nonnegative on squares, and it vanishes on
    ``f^2`` exactly when ``f`` restricted to the kept points is a multiple of
    the relation coefficients.
    """
    u = relation.as_dict()
    if removed_point not in u:
        raise ValueError(f"{removed_point} is not in the relation's support")
    uP = u[removed_point]
    if not uP:
        raise CoefficientZero(f"relation coefficient at {removed_point} is zero")
    kept = [p for p in relation.points if p != removed_point]
    norm2 = sum(u[p] ** 2 for p in kept)
    weighted = [(1, p) for p in kept] + [(-uP ** 2 / norm2, removed_point)]
    return functional_from_points(weighted, socle_degree)


def _pick(points: Sequence[ProjPoint], index: int | None) -> ProjPoint:
    ordered = sorted(points)
    return ordered[-1 if index is None else index]


def build_from_config(config: PointConfig, degree: int,
                      removed_point_index: int | None = None) -> Construction:
    """Relation among the first-part evaluations in ``degree``, one point removed."""
    relation = unique_relation(config.gamma1_points, degree)
    P = _pick(relation.points, removed_point_index)
    ell = functional_from_relation(relation, P, 2 * degree)
    return Construction(ell, config, relation, P)


def build_max_rank(d: int, removed_point_index: int | None = None,
                   perturb: bool | None = None) -> Construction:
    """Corank-4 construction on the split ``d x d`` grid.

    ``perturb`` defaults to ``is_exceptional(d)``; for those degrees the
    unperturbed grid does not give an extreme ray.
    """
    if d < 4:
        raise ValueError("d must be at least 4")
    if perturb is None:
        perturb = is_exceptional(d)
    config = perturbed_grid(d)[1] if perturb else gamma_split(d)
    return build_from_config(config, d, removed_point_index)


def construct_max_rank(d: int, removed_point_index: int | None = None,
                       perturb: bool | None = None) -> Functional:
    return build_max_rank(d, removed_point_index, perturb).functional


# -- certificate --------------------------------------------------------


@dataclass(frozen=True)
class ExtremeRayCertificate:
    d: int
    rank: int
    corank: int
    psd: PsdCertificate
    hilbert: HilbertFunction
    hyperplane_dim: int
    is_extreme: bool
    point_evaluation: bool
    kernel_contains: dict[str, bool]
    dual_variety_criterion: bool
    square_dims: tuple[int, int]
    metadata: dict = field(default_factory=dict)

    def to_json_obj(self) -> dict:
        return {
            "d": self.d,
            "rank": self.rank,
            "corank": self.corank,
            "psd": self.psd.to_json_obj(),
            "hilbert": list(self.hilbert.T),
            "hyperplane_dim": self.hyperplane_dim,
            "hyperplane_target": dim_forms(2 * self.d) - 1,
            "is_extreme": self.is_extreme,
            "point_evaluation": self.point_evaluation,
            "kernel_contains": dict(sorted(self.kernel_contains.items())),
            "dual_variety_criterion": self.dual_variety_criterion,
            "ideal_square_dim": self.square_dims[0],
            "middle_square_dim": self.square_dims[1],
            "metadata": dict(sorted(self.metadata.items())),
        }


def generated_dimension(generators: Sequence[Poly], degree: int) -> int:
    """``dim <generators>_degree``, the span of ``g * m`` over monomials m."""
    rows = [
        multiply(g, Poly.monomial(mono)).vector()
        for g in generators
        for mono in monomial_basis(degree - g.degree)
    ]
    return rank(rows) if rows else 0


def third_form_of(config: PointConfig, degree: int) -> Poly | None:
    """A degree-``degree`` form through gamma1 outside ``<L1, L2>``, if the
    quotient is one-dimensional; the stored form is preferred."""
    if config.third is not None and config.third.degree == degree:
        return config.third
    through = vanishing_forms(config.gamma1_points, degree)
    ci = generated_degree_part([config.L1, config.L2], degree)
    if len(through) - len(ci) != 1:
        return None
    for f in through:
        if not contains(ci, f):
            return f
    return None


def dual_variety_criterion(ell: Functional) -> bool:
    """Whether the socle-degree part of ``I(ell)^2`` equals ``(I(ell)_d)^2``."""
    big, small = _square_dims(ell)
    return big == small


def _square_dims(ell: Functional) -> tuple[int, int]:
    if ell.is_zero():
        raise ZeroFunctional("the zero functional has no Gorenstein ideal")
    big, _ = ideal_square_degree_part(ell)
    small = len(square_of_degree_part(ideal_degree_part(ell, ell.half_degree)))
    return big, small


def certify(ell: Functional, config: PointConfig | None = None) -> ExtremeRayCertificate:
    """Run the full certificate suite on ``ell``."""
    if ell.is_zero():
        raise ZeroFunctional("the zero functional spans no ray")
    d = ell.half_degree
    H = hankel(ell)
    psd = psd_certify(H)
    r = psd.rank
    Id = ideal_degree_part(ell, d)
    hyper = generated_dimension(Id, 2 * d)
    is_psd = psd.verdict == PSD
    is_extreme = is_psd and hyper == dim_forms(2 * d) - 1

    flags: dict[str, bool] = {}
    if config is not None:
        for name, f in (("L1", config.L1), ("L2", config.L2), ("p", third_form_of(config, d))):
            if f is None or f.degree > 2 * d:
                continue
            flags[name] = contains(ideal_degree_part(ell, f.degree), f)

    squares = _square_dims(ell)
    metadata = {}
    if d != 5:
        # the ideal-square criterion is only established for d = 5
        metadata["dual_variety_criterion_extrapolated"] = True
    if config is not None:
        metadata["configuration"] = config.label
        if config.t0 is not None:
            metadata["t0"] = format_rational(config.t0)
    return ExtremeRayCertificate(
        d=d,
        rank=r,
        corank=dim_forms(d) - r,
        psd=psd,
        hilbert=hilbert_function(ell),
        hyperplane_dim=hyper,
        is_extreme=is_extreme,
        point_evaluation=is_psd and r == 1,
        kernel_contains=flags,
        dual_variety_criterion=squares[0] == squares[1],
        square_dims=squares,
        metadata=metadata,
    )


# -- kernel structure ---------------------------------------------------


def structured_kernel_check(ell: Functional, config: PointConfig,
                            removed_point: ProjPoint | None = None) -> dict:
    """Check that the Hankel kernel is spanned by L1, L2, p and one more form.

    The extra form must restrict to the kept points as ``alpha * u`` with
    ``alpha != 0``, where ``u`` is the relation on the first part of the
    split.  Raises :class:`KernelMismatch` naming the failing element.
    The removed point defaults to the support point of smallest weight.
    """
    d = ell.half_degree
    H = hankel(ell)
    if removed_point is None:
        if not ell.support:
            raise ValueError("functional has no point support; pass removed_point")
        removed_point = min(ell.support, key=lambda wp: wp[0])[1]
    relation = unique_relation(config.gamma1_points, d)
    kept = [p for p in relation.points if p != removed_point]
    u = [relation.coefficient(p) for p in kept]

    flags: dict = {}
    known = []
    for name, f in (("L1", config.L1), ("L2", config.L2), ("p", third_form_of(config, d))):
        if f is None:
            raise KernelMismatch(f"no third form for {config.label}", name)
        if f.degree != d or any(H @ f.vector()):
            raise KernelMismatch(f"{name} is not in the Hankel kernel", name)
        flags[name] = True
        known.append(f)

    K = [Poly.from_vector(d, v) for v in kernel(H)]
    extra = [f for f in K if not contains(known, f)]
    if len(K) != 4 or not extra:
        raise KernelMismatch(f"kernel has dimension {len(K)}, expected 4", "fourth")
    for f in K:
        vals = [f(p) for p in kept]
        if any(vals[i] * u[0] != vals[0] * u[i] for i in range(len(u))):
            raise KernelMismatch("kernel element not proportional to the relation on the kept points", f)
    f = extra[0]
    alpha = f(kept[0]) / u[0]
    if not alpha:
        raise KernelMismatch("fourth kernel element vanishes on the kept points", f)
    flags["fourth"] = True
    flags["alpha"] = alpha
    flags["fourth_form"] = f
    return flags


# -- the d = 5 catalog ----------------------------------------------------

D5_HILBERT = {
    13: (1, 3, 6, 9, 12, 13, 12, 9, 6, 3, 1),
    14: (1, 3, 6, 10, 13, 14, 13, 10, 6, 3, 1),
    15: (1, 3, 6, 10, 14, 15, 14, 10, 6, 3, 1),
    16: (1, 3, 6, 10, 14, 16, 14, 10, 6, 3, 1),
    17: (1, 3, 6, 10, 15, 17, 15, 10, 6, 3, 1),
}


def d5_configuration(r: int) -> PointConfig:
    """Point configuration used for the rank-``r`` extreme ray on dextics."""
    if r == 13:
        return grid(range(5), range(3), label="d5-rank13")
    if r == 14:
        return grid(range(4), range(4), label="d5-rank14")
    if r == 15:
        return grid(range(5), range(4)).split(
            [ProjPoint.affine(0, 2), ProjPoint.affine(1, 1), ProjPoint.affine(2, 0)],
            label="d5-rank15")
    if r == 16:
        # certifies rank 16 with the right Hilbert function but is not extreme:
        # <I_5>_10 sits inside <L1, L2>_10 + f*R_5, of dimension at most 46 + 17
        return grid(range(5), range(4)).split(
            [ProjPoint.affine(0, 1), ProjPoint.affine(1, 0)], label="d5-rank16")
    if r == 17:
        return gamma_split(5)
    raise RankOutOfRange(f"rank {r} not in 13..17")


def d5_construction(r: int, removed_point_index: int | None = None) -> Construction:
    return build_from_config(d5_configuration(r), 5, removed_point_index)


def d5_catalog(r: int, removed_point_index: int | None = None) -> tuple[Functional, ExtremeRayCertificate]:
    """Functional and certificate for the rank-``r`` dextic construction."""
    c = d5_construction(r, removed_point_index)
    return c.functional, certify(c.functional, c.config)


def rank_bounds_hold(cert: ExtremeRayCertificate) -> bool:
    """``rank == 1`` or ``3d - 2 <= rank <= C(d+2, 2) - 4`` (for d >= 4)."""
    if cert.rank == 1:
        return True
    upper = dim_forms(cert.d) - 4 if cert.d >= 4 else dim_forms(cert.d) - 3
    return 3 * cert.d - 2 <= cert.rank <= upper


def removed_point_sweep(d: int, sample: int | None = None, seed: int = 0) -> list[tuple[ProjPoint, bool]]:
    """Certify the max-rank construction for each (or a seeded sample of)
    choice of removed point."""
    base = build_max_rank(d)
    pts = sorted(base.relation.points)
    idx = list(range(len(pts)))
    if sample is not None and sample < len(idx):
        idx = sorted(random.Random(seed).sample(idx, sample))
    out = []
    for i in idx:
        c = build_from_config(base.config, d, i)
        cert = certify(c.functional, c.config)
        out.append((pts[i], cert.is_extreme))
    return out
