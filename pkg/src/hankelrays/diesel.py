"""Degree sequences of height-three Gorenstein ideals.

By Buchsbaum-Eisenbud such an ideal is generated by the submaximal
Pfaffians of a skew-symmetric ``u x u`` matrix (u odd).  Here we work only
with the combinatorics: generator degrees Q, relation degrees P, deletion
of "ghost" pairs, the dimension ``h(E_M)`` of the space of admissible
skew matrices, and the partition picture of permissible Hilbert functions.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement

from .polyring import dim_forms


@dataclass(frozen=True)
class DegreeSequence:
    """Generator degrees ``Q`` (ascending) and relation degrees ``P``
    (descending) of a Gorenstein ideal with socle degree ``socle``."""

    Q: tuple[int, ...]
    P: tuple[int, ...]
    socle: int

    def __post_init__(self):
        if len(self.Q) != len(self.P):
            raise ValueError("Q and P must have the same length")
        if len(self.Q) % 2 == 0:
            raise ValueError("the number of generators must be odd")
        if list(self.Q) != sorted(self.Q):
            raise ValueError("Q must be ascending")
        if list(self.P) != sorted(self.P, reverse=True):
            raise ValueError("P must be descending")

    @classmethod
    def from_generators(cls, Q, socle: int) -> "DegreeSequence":
        """Pair each generator degree q with the relation degree socle+3-q."""
        Q = tuple(sorted(Q))
        return cls(Q, tuple(socle + 3 - q for q in Q), socle)

    def __len__(self):
        return len(self.Q)

    def to_json_obj(self) -> dict:
        return {"Q": list(self.Q), "P": list(self.P), "socle": self.socle}


def minimize_degrees(seq: DegreeSequence) -> DegreeSequence:
    """Delete pairs ``(i, j)`` with ``p_i + p_j - q_i - q_j = 0`` until none is left.

    Scans for the smallest i, then the smallest j > i, deletes both and
    starts over, so the result is deterministic.
    """
    Q, P = list(seq.Q), list(seq.P)
    while True:
        hit = next(
            ((i, j) for i in range(len(Q)) for j in range(i + 1, len(Q))
             if P[i] + P[j] - Q[i] - Q[j] == 0),
            None,
        )
        if hit is None:
            return DegreeSequence(tuple(Q), tuple(P), seq.socle)
        i, j = hit
        del Q[j], P[j], Q[i], P[i]


def h_EM(seq: DegreeSequence) -> int:
    """Dimension of the affine space of skew matrices whose (i, j) entry is
    a form of degree ``p_j - q_i``: one entry per pair ``i < j``."""
    n = len(seq)
    return sum(dim_forms(seq.P[j] - seq.Q[i]) for i in range(n) for j in range(i + 1, n))


def hilbert_from_degrees(seq: DegreeSequence) -> tuple[int, ...]:
    """Hilbert function 0..socle from the resolution
    ``0 <- R/I <- R <- R(-q) <- R(-p) <- R(-socle-3) <- 0``."""
    shifts = [(0, 1)] + [(q, -1) for q in seq.Q] + [(p, 1) for p in seq.P]
    shifts.append((seq.socle + 3, -1))
    return tuple(
        sum(sign * dim_forms(k - s) for s, sign in shifts)
        for k in range(seq.socle + 1)
    )


def ideal_dims(T: tuple[int, ...]) -> list[int]:
    """``dim I_k = dim R_k - T(k)`` for k in the range of T."""
    return [dim_forms(k) - t for k, t in enumerate(T)]


# -- the two corank-4 families for socle degree 2d --------------------------

def t1_hilbert(d: int) -> tuple[int, ...]:
    """Maximal up to degree d-1, corank 4 in degree d, symmetric."""
    half = [dim_forms(j) for j in range(d)]
    return tuple(half + [dim_forms(d) - 4] + half[::-1])


def t2_hilbert(d: int) -> tuple[int, ...]:
    """As T1 but with one form of degree d-1 in the ideal."""
    half = [dim_forms(j) for j in range(d - 1)] + [dim_forms(d - 1) - 1]
    return tuple(half + [dim_forms(d) - 4] + half[::-1])


def t1_sequence(d: int) -> DegreeSequence:
    """Full (non-minimal) degrees ``(d^4, (d+1)^(2d-6), (d+2)^3)``."""
    if d < 4:
        raise ValueError("d must be at least 4")
    Q = [d] * 4 + [d + 1] * (2 * d - 6) + [d + 2] * 3
    return DegreeSequence.from_generators(Q, 2 * d)


def t2_sequence(d: int) -> DegreeSequence:
    """Full degrees ``(d-1, d, (d+1)^(2d-4), d+2)``."""
    if d < 4:
        raise ValueError("d must be at least 4")
    Q = [d - 1, d] + [d + 1] * (2 * d - 4) + [d + 2]
    return DegreeSequence.from_generators(Q, 2 * d)


@dataclass(frozen=True)
class FamilyBound:
    """Upper bound for ``dim gor(T)`` from a minimal degree sequence.

    Choosing generators of the ideal is redundant: a group of ``n``
    generators of degree e can be replaced by any basis of an n-dimensional
    subspace of ``I_e``, worth ``n * dim I_e`` parameters.  Subtracting these
    from ``h(E_M)`` bounds the dimension of the family.
    """

    name: str
    d: int
    full: DegreeSequence
    minimal: DegreeSequence
    h_EM: int
    overcount_terms: tuple[tuple[int, int, int], ...]   # (degree, n, dim I_e)

    @property
    def overcount(self) -> int:
        return sum(n * dim_i for _, n, dim_i in self.overcount_terms)

    @property
    def dim_bound(self) -> int:
        return self.h_EM - self.overcount

    @property
    def ambient_dim(self) -> int:
        # projective space of functionals on forms of degree 2d
        return dim_forms(2 * self.d) - 1

    @property
    def codim_bound(self) -> int:
        return self.ambient_dim - self.dim_bound

    def to_json_obj(self) -> dict:
        return {
            "family": self.name,
            "d": self.d,
            "Q": list(self.full.Q),
            "P": list(self.full.P),
            "Q_min": list(self.minimal.Q),
            "P_min": list(self.minimal.P),
            "h_EM": self.h_EM,
            "overcount_terms": [
                {"degree": e, "generators": n, "ideal_dim": k}
                for e, n, k in self.overcount_terms
            ],
            "overcount": self.overcount,
            "dim_bound": self.dim_bound,
            "ambient_dim": self.ambient_dim,
            "codim_bound": self.codim_bound,
        }


def family_bound(name: str, d: int, full: DegreeSequence) -> FamilyBound:
    minimal = minimize_degrees(full)
    dims = ideal_dims(hilbert_from_degrees(minimal))
    groups: dict[int, int] = {}
    for q in minimal.Q:
        groups[q] = groups.get(q, 0) + 1
    terms = tuple((e, n, dims[e]) for e, n in sorted(groups.items()))
    return FamilyBound(name, d, full, minimal, h_EM(minimal), terms)


@dataclass(frozen=True)
class Corank4Report:
    d: int
    t1: FamilyBound
    t2: FamilyBound

    @property
    def t2_not_component(self) -> bool:
        """T2 ideals form a family of codimension > 10, so they cannot fill
        a component of the codimension-10 locus."""
        return self.t2.codim_bound > 10

    def to_json_obj(self) -> dict:
        return {
            "d": self.d,
            "T1": self.t1.to_json_obj(),
            "T2": self.t2.to_json_obj(),
            "t2_not_component": self.t2_not_component,
        }


def corank4_dimension_bounds(d: int) -> Corank4Report:
    if d < 4:
        raise ValueError("d must be at least 4")
    return Corank4Report(
        d,
        family_bound("T1", d, t1_sequence(d)),
        family_bound("T2", d, t2_sequence(d)),
    )


def complete_intersection_socle_degree(d1: int, d2: int, d3: int) -> int:
    """Socle degree of a complete intersection of forms of degrees d1, d2, d3."""
    return d1 + d2 + d3 - 3


# -- self-complementary partitions ------------------------------------------

@dataclass(frozen=True)
class SelfComplementaryPartition:
    """Partition in a ``height x width`` box, given by weakly decreasing
    column heights, that coincides with its complement rotated by 180°."""

    box: tuple[int, int]          # (height, width)
    column_heights: tuple[int, ...]

    def __post_init__(self):
        h, w = self.box
        c = self.column_heights
        if len(c) != w or any(not 0 <= x <= h for x in c):
            raise ValueError("partition does not fit in the box")
        if list(c) != sorted(c, reverse=True):
            raise ValueError("column heights must be weakly decreasing")

    def complement(self) -> tuple[int, ...]:
        h = self.box[0]
        return tuple(h - x for x in reversed(self.column_heights))

    def is_self_complementary(self) -> bool:
        return self.complement() == self.column_heights

    @property
    def size(self) -> int:
        return sum(self.column_heights)


def enumerate_self_complementary(k: int, m: int) -> list[SelfComplementaryPartition]:
    """All self-complementary partitions in the ``(m-2k+2) x 2k`` box.

    The left half of the columns determines the right half, and must stay
    at height >= h/2 for the whole sequence to be decreasing.  Output is in
    lexicographically decreasing order of column heights.
    """
    if k < 0 or 2 * k > m + 2:
        raise ValueError("need 0 <= 2k <= m + 2")
    h, w = m - 2 * k + 2, 2 * k
    low = (h + 1) // 2
    out = []
    for left in combinations_with_replacement(range(h, low - 1, -1), k):
        cols = left + tuple(h - x for x in reversed(left))
        out.append(SelfComplementaryPartition((h, w), cols))
    return out


def partition_degrees(part: SelfComplementaryPartition, k: int, m: int) -> DegreeSequence:
    """Degree sequence read off a partition: one generator of degree k and
    one of degree ``k + c`` for every column of height c.

    This reading reproduces the T1/T2 sequences; for other partitions the
    correspondence is not independently checked.
    """
    if part.box != (m - 2 * k + 2, 2 * k):
        raise ValueError("partition box does not match (k, m)")
    return DegreeSequence.from_generators([k] + [k + c for c in part.column_heights], m)


def t1_partition(d: int) -> SelfComplementaryPartition:
    """Height-2 box of width 2d corresponding to T1."""
    return SelfComplementaryPartition((2, 2 * d), (2, 2, 2) + (1,) * (2 * d - 6) + (0, 0, 0))


def t2_partition(d: int) -> SelfComplementaryPartition:
    """Height-4 box of width 2d-2 corresponding to T2."""
    return SelfComplementaryPartition((4, 2 * d - 2), (3,) + (2,) * (2 * d - 4) + (1,))
