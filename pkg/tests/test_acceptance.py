"""Acceptance criteria: each test prints one PASS/FAIL line with its timing.

All comparisons are exact integer equalities.
"""

from __future__ import annotations

import time

import pytest

from cehom import ce
from cehom.ce import Surface, build_complex, ce_homology, euler_characteristics
from cehom.e2 import e2_weight_3_char3, e2_weight_p, extra_unary_classes
from cehom.linalg import dense_homology_dims
from cehom.scalar import QQ, PrimeField
from cehom.shifted_lie import X2, CharMode, free_lie_basis

TORUS = Surface.torus()
PUNCTURED = [Surface.punctured(1), Surface.punctured(2)]


@pytest.fixture
def report(capsys):
    """Cold caches, a timer, and a PASS/FAIL line printed past capture."""
    for fn in (ce.build_complex, ce.tensor_for, ce.lie_for):
        fn.cache_clear()
    t0 = time.perf_counter()

    def emit(name: str, failures: list[str], budget: float | None):
        elapsed = time.perf_counter() - t0
        if budget is not None and elapsed > budget:
            failures.append(f"took {elapsed:.1f}s, budget {budget:.0f}s")
        status = "PASS" if not failures else "FAIL"
        with capsys.disabled():
            print(f"\n[{status}] {name} ({elapsed:.2f}s)" + ("" if not failures else ": " + "; ".join(failures[:5])))
        assert not failures, failures

    return emit


def _weight_p_prediction(surface: Surface, p: int):
    rep = e2_weight_3_char3(surface) if p == 3 else e2_weight_p(surface, p)
    return rep.predicted_dims(), rep


def _mod_p_equalities(surface: Surface, primes) -> list[str]:
    bad = []
    for p in primes:
        F = PrimeField(p)
        for k in range(1, p + 1):
            q = ce_homology(surface, k, QQ).by_degree(k)
            if k < p:
                fp = ce_homology(surface, k, F).by_degree(k)
            else:
                fp, rep = _weight_p_prediction(surface, p)
                if rep.mismatches():
                    bad.append(f"{surface.label} p={p}: " + ", ".join(c.name for c in rep.mismatches()))
            if fp != q:
                bad.append(f"{surface.label} p={p} k={k}: {fp} != {q}")
    return bad


def test_criterion_1_torus_mod_p_equals_betti(report):
    report("1 torus mod-p dims = Betti, p in {3,5,7}, k <= p", _mod_p_equalities(TORUS, [3, 5, 7]), 300)


def test_criterion_2_punctured_mod_p_equals_betti(report):
    bad = []
    for s in PUNCTURED:
        bad += _mod_p_equalities(s, [3, 5])
    report("2 punctured g in {1,2} mod-p dims = Betti, p in {3,5}, k <= p", bad, 180)


def test_criterion_3_weight_p_proof_steps(report):
    bad = []
    extras = extra_unary_classes(TORUS, 5)
    if sorted(c.bidegree for c in extras) != [(1, -2), (1, -1)]:
        bad.append(f"unary classes {[c.bidegree for c in extras]}")
    rep = e2_weight_p(TORUS, 5)
    if rep.ce_table.get(5, 0) != 1:
        bad.append(f"total-degree-0 classes: {rep.ce_table.get(5, 0)}")
    e2_sum = rep.ce_table.total_dim(5) + len(extras)
    beta_sum = rep.betti.total_dim(5)
    if e2_sum != beta_sum + 2:
        bad.append(f"sum E2 = {e2_sum}, sum beta + 2 = {beta_sum + 2}")
    if sum(rep.predicted_dims().values()) != beta_sum:
        bad.append("after cancellation the sums differ")
    report("3 torus p=5 weight-p steps: 2 unary classes, one degree-0 class, sum E2 = sum beta + 2", bad, 60)


def test_criterion_4_structural_suite(report):
    bad = []
    fields = [QQ, PrimeField(3), PrimeField(5), PrimeField(7)]
    for s in [TORUS] + PUNCTURED:
        for k in range(1, 8):
            tabs = {}
            for F in fields:
                cx = build_complex(s, k, F)
                try:
                    cx.check()
                except ArithmeticError as exc:
                    bad.append(f"{s.label} k={k} {F}: {exc}")
                    continue
                tab = cx.homology(check=False)
                tabs[F] = tab
                bad += [f"{s.label} k={k} {F} t={t}: chi {a} != {b}"
                        for _, t, a, b in euler_characteristics(cx, tab) if a != b]
            for F in fields[1:]:
                bad += [f"{s.label} k={k} {F} at {key}: {tabs[F].bidegrees.get(key, 0)} < {n}"
                        for key, n in tabs[QQ].bidegrees.items() if tabs[F].bidegrees.get(key, 0) < n]
    report("4 d∘d = 0, Euler characteristic per (weight, t), dim_Fp >= dim_Q; k <= 7", bad, 300)


def test_criterion_5_oracle_equivalence(report):
    bad = []
    for s in [TORUS] + PUNCTURED:
        for k in range(1, 5):
            cx = build_complex(s, k, QQ)
            sparse = cx.homology()
            dense = dense_homology_dims(cx.differentials, QQ)
            if not sparse.same_dims(dense):
                bad.append(f"{s.label} k={k}")
    report("5 sparse pipeline = dense rational oracle, k <= 4", bad, 120)


def test_criterion_6_anchored_values(report):
    bad = []
    dims = {k: ce_homology(TORUS, k, QQ).dims_list(k) for k in range(1, 8)}
    if dims[1] != [1, 2, 1]:
        bad.append(f"B_1: {dims[1]}")
    bad += [f"beta_0(B_{k}) = {d[0]}" for k, d in dims.items() if d[0] != 1]
    bad += [f"beta_1(B_{k}) = {d[1]}" for k, d in dims.items() if d[1] != 2]
    if dims[2] != [1, 2, 1]:
        bad.append(f"B_2: {dims[2]}")
    if dims[3] != [1, 2, 3, 4, 2]:
        bad.append(f"B_3: {dims[3]}")
    bad += [f"chi(B_{k}) != 0" for k in (2, 3) if sum((-1) ** i * n for i, n in enumerate(dims[k]))]
    report("6 anchored torus Betti numbers", bad, None)


def test_criterion_7_operadic_char3(report):
    bad = []
    L = free_lie_basis([X2], 3, PrimeField(3), CharMode.OPERADIC_CHAR3)
    if L.dim(3) != 1:
        bad.append(f"operadic weight-3 dimension {L.dim(3)}")
    for s in (TORUS, PUNCTURED[0]):
        rep = e2_weight_3_char3(s)
        total = sum(rep.predicted_dims().values())
        if total != rep.betti.total_dim(3):
            bad.append(f"{s.label}: predicted {total} vs beta {rep.betti.total_dim(3)}")
        bad += [f"{s.label}: {c.name}" for c in rep.mismatches()]
    report("7 p=3 operadic path: weight-3 Lie dimension 1, total-dimension identity", bad, 60)
