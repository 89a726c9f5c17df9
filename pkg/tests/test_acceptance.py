"""Acceptance criteria 1-8.  Each records pass/fail parts that are printed as
one line per criterion in the terminal summary (see conftest.py)."""
from fractions import Fraction
import json
import random
import time

import pytest

from hankelrays import diesel
from hankelrays.apolarity import catalecticant, functional_from_points, hilbert_function, ideal_degree_part
from hankelrays.cayley_bacharach import cb_defect_check, gamma_split, integer_grid, is_exceptional, perturbed_grid
from hankelrays.cli import EXIT_OK, main
from hankelrays.extremal import (
    D5_HILBERT,
    build_max_rank,
    certify,
    construct_max_rank,
    d5_catalog,
    d5_configuration,
    rank_bounds_hold,
)
from hankelrays.polyring import ProjPoint, dim_forms
from hankelrays.qlinalg import PSD, QMatrix, kernel, psd_certify, rank
from oracles import min_eigenvalue

EXPECTED_RELATION = [
    [-1, 3, 0, -5, 3],
    [3, -16, 18, 0, -5],
    [0, 18, -36, 18, 0],
    [-5, 0, 18, -16, 3],
    [3, -5, 0, 3, -1],
]
EXCEPTIONAL = [9, 19, 21, 29, 33, 34, 36, 40, 49, 51, 57, 61, 73, 78, 79, 81, 89, 99]

# certificates shared between criteria 2, 5, 6 and 8(d)
_CERTS: dict = {}


def _max_rank(d):
    key = ("max", d)
    if key not in _CERTS:
        c = build_max_rank(d)
        assert c.functional == construct_max_rank(d)
        _CERTS[key] = (c.functional, certify(c.functional, c.config))
    return _CERTS[key]


def _catalog(r):
    key = ("d5", r)
    if key not in _CERTS:
        _CERTS[key] = d5_catalog(r)
    return _CERTS[key]


def _proportional(A, B):
    pairs = [(a, b) for ra, rb in zip(A, B) for a, b in zip(ra, rb)]
    if any((a == 0) != (b == 0) for a, b in pairs):
        return False
    a0, b0 = next((a, b) for a, b in pairs if b)
    scale = Fraction(a0) / Fraction(b0)
    return all(Fraction(a) == scale * b for a, b in pairs)


def test_criterion_1_relation_matrix(tmp_path, capsys, record):
    start = time.perf_counter()
    code = main(["--output-dir", str(tmp_path), "relation", "--d", "5"])
    elapsed = time.perf_counter() - start
    summary = json.loads(capsys.readouterr().out)
    matrix = json.loads((tmp_path / "relation-d5.json").read_text())["matrix"]
    M = [[Fraction(x) for x in row] for row in matrix]
    record(1, "relation d=5 equals the expected matrix up to scale", _proportional(M, EXPECTED_RELATION))
    record(1, "normalized exactly (scale 1)", M == EXPECTED_RELATION)
    record(1, "runtime < 5 s", elapsed < 5, f"{elapsed:.2f}s")
    assert code == EXIT_OK and summary["matches_expected"]
    assert _proportional(M, EXPECTED_RELATION) and elapsed < 5


def test_criterion_2_max_rank(record):
    start = time.perf_counter()
    ok = True
    for d, r in zip(range(4, 9), (11, 17, 24, 32, 41)):
        _, cert = _max_rank(d)
        half = [dim_forms(j) for j in range(d)]
        T = tuple(half + [dim_forms(d) - 4] + half[::-1])
        good = (cert.is_extreme and cert.corank == 4 and cert.rank == r == dim_forms(d) - 4
                and cert.psd.verdict == PSD and cert.hilbert.T == T)
        ok &= record(2, f"d={d} extreme, rank {r}, corank 4, PSD, Hilbert function", good,
                     f"rank {cert.rank}, corank {cert.corank}")
    elapsed = time.perf_counter() - start
    record(2, "runtime < 2 min", elapsed < 120, f"{elapsed:.1f}s")
    assert ok and elapsed < 120


def test_criterion_3_exceptional(record):
    start = time.perf_counter()
    found = [d for d in range(4, 101) if is_exceptional(d)]
    elapsed = time.perf_counter() - start
    record(3, "exceptional degrees in 4..100", found == EXCEPTIONAL, f"{len(found)} found")
    record(3, "runtime < 10 s", elapsed < 10, f"{elapsed:.2f}s")
    assert found == EXCEPTIONAL and elapsed < 10


def test_criterion_4_perturbation(record):
    start = time.perf_counter()
    plain = build_max_rank(9, perturb=False)
    plain_cert = certify(plain.functional, plain.config)
    t0, cfg = perturbed_grid(9)
    fixed = build_max_rank(9)
    fixed_cert = certify(fixed.functional, fixed.config)
    elapsed = time.perf_counter() - start
    record(4, "unperturbed d=9 fails certification", not plain_cert.is_extreme,
           f"hyperplane {plain_cert.hyperplane_dim} of {dim_forms(18) - 1}")
    record(4, "perturbed d=9 extreme with corank 4", fixed_cert.is_extreme and fixed_cert.corank == 4,
           f"t0 = {t0}")
    record(4, "perturbed configuration used", fixed.config.points == cfg.points)
    record(4, "runtime < 5 min", elapsed < 300, f"{elapsed:.1f}s")
    assert not plain_cert.is_extreme
    assert fixed_cert.is_extreme and fixed_cert.corank == 4 and fixed.config.points == cfg.points
    assert elapsed < 300


_C5_TIMES: list = []


@pytest.mark.parametrize("r", [
    13, 14, 15,
    pytest.param(16, marks=pytest.mark.xfail(
        strict=True, reason="the rank-16 configuration is not extreme; see the decisions ledger")),
    17,
])
def test_criterion_5_d5_catalog(r, record):
    start = time.perf_counter()
    _, cert = _catalog(r)
    _C5_TIMES.append(time.perf_counter() - start)
    good = (cert.rank == r and cert.is_extreme and cert.hilbert.T == D5_HILBERT[r]
            and cert.dual_variety_criterion)
    record(5, f"rank {r}: rank, extreme, Hilbert function, dual criterion", good,
           f"rank {cert.rank}, extreme {cert.is_extreme}, hyperplane {cert.hyperplane_dim}, "
           f"dual {cert.dual_variety_criterion}")
    if r == 17:
        total = sum(_C5_TIMES)
        record(5, "runtime < 2 min", total < 120, f"{total:.1f}s")
        assert total < 120
    assert good


def test_criterion_6_rank_bounds(record):
    certs = [_max_rank(d)[1] for d in range(4, 9)] + [_catalog(r)[1] for r in range(13, 18)]
    extreme = [c for c in certs if c.is_extreme]
    ok = all(rank_bounds_hold(c) for c in extreme)
    record(6, "rank = 1 or 3d-2 <= rank <= C(d+2,2)-4 on every certified extreme ray", ok,
           f"{len(extreme)} rays")
    assert ok and extreme


def test_criterion_7_diesel(record):
    start = time.perf_counter()
    r4 = diesel.corank4_dimension_bounds(4)
    parts = [("h_EM = 72 for T1 at d=4", r4.t1.h_EM == 72),
             ("dim bound 34 at d=4", r4.t1.dim_bound == 34)]
    reports = {d: diesel.corank4_dimension_bounds(d) for d in range(4, 13)}
    parts.append(("h_EM T1 = 6d^2-9d-21, d=5..12",
                  all(reports[d].t1.h_EM == 6 * d * d - 9 * d - 21 for d in range(5, 13))))
    parts.append(("h_EM T2 = 6d^2-d-20, d=4..12",
                  all(reports[d].t2.h_EM == 6 * d * d - d - 20 for d in range(4, 13))))
    parts.append(("codim bound T1 >= 10", all(r.t1.codim_bound >= 10 for r in reports.values())))
    parts.append(("codim bound T2 >= 2d+4",
                  all(r.t2.codim_bound >= 2 * d + 4 for d, r in reports.items())))
    elapsed = time.perf_counter() - start
    parts.append(("runtime < 1 s", elapsed < 1))
    for name, passed in parts:
        record(7, name, passed)
    assert all(p for _, p in parts)


def _random_points(rng, n):
    pts = set()
    while len(pts) < n:
        pts.add(ProjPoint.affine(Fraction(rng.randint(-4, 4), rng.randint(1, 3)),
                                 Fraction(rng.randint(-4, 4), rng.randint(1, 3))))
    return sorted(pts)


def test_criterion_8a_symmetry(record):
    rng = random.Random(801)
    count = 0
    bad = 0
    while count < 100:
        d = rng.choice([2, 3, 4, 5])
        pts = _random_points(rng, rng.randint(1, dim_forms(d) + 3))
        ws = [Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 4)) for _ in pts]
        ell = functional_from_points(zip(ws, pts), 2 * d)
        if ell.is_zero():
            continue
        count += 1
        T = hilbert_function(ell)
        bad += any(T[i] != T[2 * d - i] for i in range(2 * d + 1))
    record(8, "(a) T(i) = T(2d-i) on 100 random point-supported functionals", bad == 0,
           f"{bad} asymmetric")
    assert bad == 0


def test_criterion_8b_cayley_bacharach(record):
    splits = [gamma_split(d) for d in range(4, 10)]
    splits += [d5_configuration(r) for r in range(13, 18)]
    splits += [perturbed_grid(9)[1], perturbed_grid(5)[1]]
    rng = random.Random(802)
    for d in (4, 5):
        base = integer_grid(d)
        for _ in range(20):
            splits.append(base.split([p for p in base.points if rng.random() < 0.35]))
    failures = [(cfg.label, k) for cfg in splits for k in range(cfg.s + 1)
                if not cb_defect_check(cfg, k).equal]
    record(8, "(b) Cayley-Bacharach equality on used splits and 40 random splits", not failures,
           f"{len(splits)} splits")
    assert not failures


def _random_symmetric(rng, n):
    kind = rng.choice(["gram", "gram", "shifted", "symmetric"])
    k = rng.randint(1, n + 2)
    A = [[Fraction(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(k)] for _ in range(n)]
    S = [[sum(A[i][t] * A[j][t] for t in range(k)) for j in range(n)] for i in range(n)]
    if kind == "shifted":
        v = [rng.randint(-2, 2) for _ in range(n)]
        c = Fraction(rng.randint(1, 6), rng.randint(1, 4))
        S = [[S[i][j] - c * v[i] * v[j] for j in range(n)] for i in range(n)]
    elif kind == "symmetric":
        for i in range(n):
            for j in range(i, n):
                S[i][j] = S[j][i] = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
    return kind, QMatrix(S)


def test_criterion_8c_psd_oracle(record):
    rng = random.Random(803)
    compared = disagreements = 0
    gram_bad = 0
    for _ in range(200):
        n = rng.randint(1, 25)
        kind, S = _random_symmetric(rng, n)
        verdict = psd_certify(S).verdict
        if kind == "gram":
            gram_bad += verdict != PSD
        lam = min_eigenvalue(S.rows)
        if abs(lam) > 1e-8:
            compared += 1
            disagreements += (verdict == PSD) != (lam > 0)
    record(8, "(c) psd_certify agrees with eigenvalue oracle on 200 matrices",
           disagreements == 0 and gram_bad == 0, f"{compared} compared, {disagreements} disagree")
    assert disagreements == 0 and gram_bad == 0 and compared >= 100


def test_criterion_8d_rank_nullity(record):
    mats = []
    for d in (4, 5):
        ell = _max_rank(d)[0]
        mats += [catalecticant(ell, k).matrix for k in range(2 * d + 1)]
    for r in (13, 16):
        ell = _catalog(r)[0]
        mats += [catalecticant(ell, k).matrix for k in range(11)]
    rng = random.Random(804)
    for _ in range(30):
        m, n = rng.randint(1, 12), rng.randint(1, 12)
        mats.append(QMatrix([[rng.choice([0, 0, 1, -2, Fraction(1, 3)]) for _ in range(n)]
                             for _ in range(m)]))
    bad = 0
    for M in mats:
        K = kernel(M)
        m, n = M.shape
        bad += rank(M) + len(K) != n
        bad += any(any(sum(a * b for a, b in zip(row, v)) for row in M.rows) for v in K)
    for d in (4, 5):
        ell = _max_rank(d)[0]
        bad += any(rank(catalecticant(ell, k).matrix) + len(ideal_degree_part(ell, k)) != dim_forms(k)
                   for k in range(2 * d + 1))
    record(8, "(d) rank + nullity = columns on computed matrices", bad == 0, f"{len(mats)} matrices")
    assert bad == 0


def test_criterion_8e_minimal_degrees(record):
    cases = [
        ((5, 5, 5, 5, 6, 6, 8, 8, 9, 9, 9), (10, 10, 10, 10, 9, 9, 7, 7, 6, 6, 6), (5, 5, 5, 5, 8, 8, 9)),
        ((4, 5, 5, 6, 7, 7, 8, 9, 9), (11, 10, 10, 9, 8, 8, 7, 6, 6), (4, 5, 5, 7, 9)),
    ]
    got = [diesel.minimize_degrees(diesel.DegreeSequence(Q, P, 12)).Q for Q, P, _ in cases]
    ok = got == [e for _, _, e in cases]
    record(8, "(e) minimize_degrees reproduces both minimal sequences", ok, str(got))
    assert ok
