"""Dense exact linear algebra over the rationals.

Entries are :class:`fractions.Fraction` values, so every operation is exact.
Matrices are small (a few hundred rows at most), and the algorithms are
plain Gaussian elimination with deterministic pivoting so that results are
reproducible byte for byte.  Elimination runs on rows scaled to primitive
integer vectors, which avoids the gcd cost of Fraction arithmetic on every
entry while staying exact.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, NamedTuple, Sequence

from .errors import NotSymmetric

ZERO = Fraction(0)
ONE = Fraction(1)


def to_rational(value) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not accepted as exact rationals")
    if isinstance(value, str):
        return Fraction(value.strip())
    return Fraction(value)


def format_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class QMatrix:
    """Immutable dense matrix of Fractions, stored row-major."""

    __slots__ = ("_rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        data = tuple(tuple(to_rational(x) for x in row) for row in rows)
        if ncols is None:
            ncols = len(data[0]) if data else 0
        for row in data:
            if len(row) != ncols:
                raise ValueError("ragged rows")
        self._rows = data
        self.nrows = len(data)
        self.ncols = ncols

    @classmethod
    def _wrap(cls, rows: Sequence[Sequence[Fraction]], ncols: int) -> "QMatrix":
        # trusted constructor: entries are already Fractions
        obj = cls.__new__(cls)
        obj._rows = tuple(tuple(r) for r in rows)
        obj.nrows = len(obj._rows)
        obj.ncols = ncols
        return obj

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "QMatrix":
        return cls._wrap([[ZERO] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls._wrap(
            [[ONE if i == j else ZERO for j in range(n)] for i in range(n)], n
        )

    @classmethod
    def from_flat(cls, nrows: int, ncols: int, entries: Sequence) -> "QMatrix":
        if len(entries) != nrows * ncols:
            raise ValueError("entries length must equal rows * cols")
        return cls(
            [entries[i * ncols:(i + 1) * ncols] for i in range(nrows)], ncols
        )

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def entries(self) -> list[Fraction]:
        return [x for row in self._rows for x in row]

    @property
    def rows(self) -> tuple[tuple[Fraction, ...], ...]:
        return self._rows

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._rows[i]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(row[j] for row in self._rows)

    def __getitem__(self, key):
        i, j = key
        return self._rows[i][j]

    def transpose(self) -> "QMatrix":
        if self.nrows == 0:
            return QMatrix._wrap([[] for _ in range(self.ncols)], 0)
        return QMatrix._wrap(list(zip(*self._rows)), self.nrows)

    T = property(transpose)

    def __matmul__(self, other):
        if isinstance(other, QMatrix):
            if self.ncols != other.nrows:
                raise ValueError("shape mismatch")
            cols = other.transpose().rows
            return QMatrix._wrap(
                [[_dot(r, c) for c in cols] for r in self._rows], other.ncols
            )
        vec = [to_rational(x) for x in other]
        if len(vec) != self.ncols:
            raise ValueError("shape mismatch")
        return [_dot(r, vec) for r in self._rows]

    def __add__(self, other: "QMatrix") -> "QMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return QMatrix._wrap(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)],
            self.ncols,
        )

    def scale(self, c) -> "QMatrix":
        c = to_rational(c)
        return QMatrix._wrap([[c * a for a in r] for r in self._rows], self.ncols)

    def __eq__(self, other):
        if not isinstance(other, QMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        return hash((self.shape, self._rows))

    def __repr__(self):
        return f"QMatrix({self.nrows}x{self.ncols})"

    def is_symmetric(self) -> bool:
        if self.nrows != self.ncols:
            return False
        n = self.nrows
        return all(
            self._rows[i][j] == self._rows[j][i]
            for i in range(n) for j in range(i + 1, n)
        )

    def quadratic_form(self, v: Sequence) -> Fraction:
        return _dot([to_rational(x) for x in v], self @ v)

    # -- serialization -------------------------------------------------

    def to_csv(self) -> str:
        return "".join(
            ",".join(format_rational(x) for x in row) + "\n" for row in self._rows
        )

    @classmethod
    def from_csv(cls, text: str) -> "QMatrix":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        return cls([ln.split(",") for ln in lines])

    def to_json_obj(self) -> list[list[str]]:
        return [[format_rational(x) for x in row] for row in self._rows]

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json(cls, data) -> "QMatrix":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data)


def _dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    s = ZERO
    for x, y in zip(a, b):
        if x and y:
            s += x * y
    return s


def _integer_rows(rows: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    # scaling a row by a nonzero constant changes neither rank nor RREF
    out = []
    for row in rows:
        den = lcm(*(x.denominator for x in row)) if row else 1
        ints = [x.numerator * (den // x.denominator) for x in row]
        g = gcd(*ints)
        out.append([v // g for v in ints] if g > 1 else ints)
    return out


def _echelon(rows: list[list[int]], ncols: int, reduced: bool) -> list[int]:
    """In-place Gaussian elimination on integer rows; returns pivot columns.

    Pivot: first nonzero entry, scanning each column top to bottom among
    the rows not yet used.  Rows are combined by cross-multiplication and
    divided by their content afterwards, so every row stays a primitive
    integer vector.  With ``reduced`` the pivot columns are cleared above
    the pivots as well (RREF up to the scaling of each row).
    """
    nrows = len(rows)
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = r
        while p < nrows and not rows[p][c]:
            p += 1
        if p == nrows:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        prow = rows[r]
        pv = prow[c]
        nz = [j for j in range(c, ncols) if prow[j]]
        for i in range(0 if reduced else r + 1, nrows):
            if i == r:
                continue
            row = rows[i]
            f = row[c]
            if not f:
                continue
            g = gcd(pv, f)
            a, b = pv // g, f // g
            if a != 1:
                row = [a * x for x in row]
            for j in nz:
                row[j] -= b * prow[j]
            g = gcd(*row)
            if g > 1:
                row = [x // g for x in row]
            rows[i] = row
        pivots.append(c)
        r += 1
    return pivots


class RrefResult(NamedTuple):
    R: QMatrix
    pivot_cols: list[int]
    rank: int


def _rref_rows(rows: Sequence[Sequence[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    work = _integer_rows(rows)
    pivots = _echelon(work, ncols, reduced=True)
    out = []
    for i, c in enumerate(pivots):
        pv = work[i][c]
        out.append([Fraction(x, pv) if x else ZERO for x in work[i]])
    return out, pivots


def rref(M: QMatrix) -> RrefResult:
    """Reduced row echelon form, pivot columns and rank of ``M``."""
    rows, pivots = _rref_rows(M.rows, M.ncols)
    rows += [[ZERO] * M.ncols for _ in range(M.nrows - len(pivots))]
    return RrefResult(QMatrix._wrap(rows, M.ncols), pivots, len(pivots))


def rank(M: QMatrix | Sequence[Sequence]) -> int:
    if not isinstance(M, QMatrix):
        M = QMatrix(M)
    return len(_echelon(_integer_rows(M.rows), M.ncols, reduced=False))


def row_space_basis(vectors: Sequence[Sequence], ncols: int) -> list[list[Fraction]]:
    """Canonical (RREF) basis of the span of ``vectors``."""
    rows, _ = _rref_rows([[to_rational(x) for x in v] for v in vectors], ncols)
    return rows


def kernel(M: QMatrix) -> list[list[Fraction]]:
    """Basis of the right null space of ``M``.

    The basis is returned in reduced echelon form, so each vector starts
    with a 1 and the basis is unique for the subspace.
    """
    rows, pivots = _rref_rows(M.rows, M.ncols)
    n = M.ncols
    pivset = set(pivots)
    basis = []
    for f in range(n):
        if f in pivset:
            continue
        v = [ZERO] * n
        v[f] = ONE
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][f]
        basis.append(v)
    if not basis:
        return []
    return row_space_basis(basis, n)


def left_kernel(M: QMatrix) -> list[list[Fraction]]:
    """Basis of ``{y : y M = 0}``."""
    return kernel(M.transpose())


def solve(A: QMatrix, b: Sequence) -> list[Fraction] | None:
    """One solution of ``A x = b`` (free variables set to 0), or None."""
    b = [to_rational(x) for x in b]
    if len(b) != A.nrows:
        raise ValueError("shape mismatch")
    rows, pivots = _rref_rows([list(r) + [bi] for r, bi in zip(A.rows, b)], A.ncols + 1)
    if pivots and pivots[-1] == A.ncols:
        return None
    x = [ZERO] * A.ncols
    for i, pc in enumerate(pivots):
        x[pc] = rows[i][A.ncols]
    return x


def in_span(basis: Sequence[Sequence], v: Sequence) -> bool:
    """Whether ``v`` is a linear combination of the ``basis`` vectors."""
    v = [to_rational(x) for x in v]
    if not basis:
        return not any(v)
    A = QMatrix(basis).transpose()
    return solve(A, v) is not None


PSD = "PSD"
NOT_PSD = "NotPSD"


@dataclass(frozen=True)
class PsdCertificate:
    verdict: str
    rank: int
    pivots: tuple[Fraction, ...] = ()
    witness: tuple[Fraction, ...] | None = None

    @property
    def is_psd(self) -> bool:
        return self.verdict == PSD

    def to_json_obj(self) -> dict:
        return {
            "verdict": self.verdict,
            "rank": self.rank,
            "pivots": [format_rational(p) for p in self.pivots],
            "witness": None if self.witness is None
            else [format_rational(w) for w in self.witness],
        }


def psd_certify(S: QMatrix) -> PsdCertificate:
    """Decide positive semidefiniteness of a symmetric rational matrix.

    Symmetric elimination with diagonal pivoting (largest remaining
    diagonal entry in absolute value).  A PSD verdict carries the positive
    pivots of the LDL^T factorization; a NotPSD verdict carries a vector
    ``w`` with ``w^T S w < 0``.
    """
    if not S.is_symmetric():
        raise NotSymmetric("matrix is not symmetric")
    n = S.nrows
    A = [list(r) for r in S.rows]
    active = list(range(n))
    eliminated: list[int] = []
    pivots: list[Fraction] = []
    while active:
        i = max(active, key=lambda k: abs(A[k][k]))
        d = A[i][i]
        if d < 0:
            w = {i: ONE}
            return _not_psd(S, eliminated, active, w)
        if d == 0:
            for a in active:
                for b in active:
                    if a < b and A[a][b]:
                        w = {a: ONE, b: -ONE if A[a][b] > 0 else ONE}
                        return _not_psd(S, eliminated, active, w)
            break
        rest = [k for k in active if k != i]
        col = [A[k][i] for k in rest]
        for ia, a in enumerate(rest):
            fa = col[ia]
            if not fa:
                continue
            fa = fa / d
            Aa = A[a]
            for ib, b in enumerate(rest):
                if col[ib]:
                    Aa[b] -= fa * col[ib]
        pivots.append(d)
        eliminated.append(i)
        active = rest
    return PsdCertificate(PSD, len(pivots), tuple(pivots))


def _not_psd(S: QMatrix, eliminated, active, w: dict) -> PsdCertificate:
    # lift a negative direction of the Schur complement back to S:
    # v = (-S_EE^{-1} S_ER w, w) gives v^T S v = w^T (S/S_EE) w
    n = S.nrows
    v = [ZERO] * n
    for k, val in w.items():
        v[k] = val
    if eliminated:
        S_EE = QMatrix._wrap(
            [[S[a, b] for b in eliminated] for a in eliminated], len(eliminated)
        )
        rhs = [-sum((S[a, k] * val for k, val in w.items()), ZERO) for a in eliminated]
        y = solve(S_EE, rhs)
        assert y is not None
        for a, ya in zip(eliminated, y):
            v[a] = ya
    value = S.quadratic_form(v)
    assert value < 0, "witness construction failed"
    return PsdCertificate(NOT_PSD, rank(S), (), tuple(v))
