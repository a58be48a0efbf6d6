from __future__ import annotations

from fractions import Fraction

import pytest

from cehom.ce import (
    CEComplex,
    CEMonomial,
    Surface,
    betti_table,
    build_complex,
    ce_basis,
    ce_differential,
    ce_homology,
    monomial_bidegree,
)
from cehom.linalg import BoundaryError
from cehom.scalar import QQ, PrimeField
from cehom.shifted_lie import X2, Bracket

from conftest import SURFACES

XX = Bracket(X2, X2)

# Rational dimensions by total degree, frozen from the sparse pipeline and
# cross-checked against the dense oracle and Euler characteristic zero.
TORUS_Q = {
    1: [1, 2, 1],
    2: [1, 2, 1],
    3: [1, 2, 3, 4, 2],
    4: [1, 2, 3, 5, 4, 1],
    5: [1, 2, 3, 5, 7, 7, 3],
    6: [1, 2, 3, 5, 7, 9, 7, 2],
    7: [1, 2, 3, 5, 7, 9, 11, 10, 4],
}
PUNCTURED1_Q = {3: [1, 2, 4, 4], 4: [1, 2, 4, 5, 3], 5: [1, 2, 4, 5, 7, 6], 7: [1, 2, 4, 5, 7, 8, 10, 8]}
PUNCTURED2_Q = {3: [1, 4, 9, 16], 4: [1, 4, 9, 21, 30], 5: [1, 4, 9, 21, 34, 40]}
CLOSED2_Q = {3: [1, 4, 6, 11, 4], 4: [1, 4, 6, 16, 24, 6]}


def idx(g, coeff, word):
    return g.index[g.element(coeff, word)]


@pytest.fixture(scope="module")
def torus2():
    return build_complex(Surface.torus(), 2, QQ)


def test_weight_one_basis(torus):
    cx = build_complex(torus, 1, QQ)
    mons = cx.monomials()
    assert len(mons) == 4
    assert all(m.length == 1 for m in mons)
    assert sorted(m.render(cx.g) for m in mons) == sorted(
        ["γ1(d⊗x2)", "γ1(c⊗x2)", "⟨a1⊗x2⟩", "⟨b1⊗x2⟩"]
    )


def test_weight_two_basis(torus2):
    counts = {}
    for m in torus2.monomials():
        counts[m.length] = counts.get(m.length, 0) + 1
    assert counts == {1: 4, 2: 8}
    assert len(ce_basis(torus2.g, 2)) == 12


@pytest.mark.parametrize("p", [3, 5, 7])
def test_gamma_p_bidegree(p):
    cx = build_complex(Surface.torus(), p, PrimeField(p))
    m = CEMonomial(((idx(cx.g, "c", X2), p),), ())
    assert m in cx.degrees
    b = monomial_bidegree(m, cx.g)
    assert (b.s, b.t) == (p - 1, 1 - p)


def test_differential_self_bracket_half(torus2):
    g = torus2.g
    d = idx(g, "d", X2)
    out = ce_differential(CEMonomial(((d, 2),), ()), g)
    assert out == {CEMonomial((), (idx(g, "d", XX),)): Fraction(1, 2)}


def test_differential_vanishing_product(torus2):
    g = torus2.g
    assert ce_differential(CEMonomial(((idx(g, "c", X2), 2),), ()), g) == {}


def test_differential_odd_pair(torus2):
    g = torus2.g
    m = CEMonomial((), tuple(sorted((idx(g, "a1", X2), idx(g, "b1", X2)))))
    assert ce_differential(m, g) == {CEMonomial((), (idx(g, "c", XX),)): 1}


def test_differential_mixed(torus2):
    g = torus2.g
    m = CEMonomial(((idx(g, "d", X2), 1), (idx(g, "c", X2), 1)), ())
    assert ce_differential(m, g) == {CEMonomial((), (idx(g, "c", XX),)): 1}


def test_weight_one_differential_is_zero(torus):
    cx = build_complex(torus, 1, QQ)
    assert all(ce_differential(m, cx.g) == {} for m in cx.monomials())


@pytest.mark.parametrize("table,surface", [
    (TORUS_Q, Surface.torus()),
    (PUNCTURED1_Q, Surface.punctured(1)),
    (PUNCTURED2_Q, Surface.punctured(2)),
    (CLOSED2_Q, Surface("closed", 2)),
])
def test_rational_homology_values(table, surface):
    for k, dims in table.items():
        tab = ce_homology(surface, k, QQ)
        assert tab.dims_list(k) == dims, k


def test_torus_euler_characteristic_zero():
    for k, dims in TORUS_Q.items():
        assert sum((-1) ** i * n for i, n in enumerate(dims)) == 0


def test_betti_table(torus):
    tab = betti_table(torus, 4)
    assert tab.weights() == [1, 2, 3, 4]
    assert [tab.get(k, 0) for k in range(1, 5)] == [1, 1, 1, 1]
    assert tab.metadata["field"] == "Q"


def test_mod_three_differs_at_weight_six(torus):
    assert ce_homology(torus, 6, PrimeField(3)).dims_list(6) == [1, 2, 3, 5, 7, 9, 9, 4]


@pytest.mark.parametrize("name", sorted(SURFACES))
@pytest.mark.parametrize("field", [QQ, PrimeField(3), PrimeField(5)])
def test_square_zero(name, field):
    for k in range(1, 7):
        build_complex(SURFACES[name], k, field).check()


@pytest.mark.parametrize("name", sorted(SURFACES))
@pytest.mark.parametrize("field", [QQ, PrimeField(3)])
def test_sparse_matches_dense(name, field):
    for k in range(1, 5):
        cx = build_complex(SURFACES[name], k, field)
        assert cx.homology(oracle=True).same_dims(cx.homology())


def test_fault_injection_detected(torus):
    cx = CEComplex(build_complex(torus, 4, QQ).g, 4, fault="sign-flip")
    with pytest.raises(BoundaryError, match="weight=4"):
        cx.check()


def test_surface_labels_and_warnings():
    assert Surface.torus().label == "torus"
    assert Surface.punctured(2).label == "punctured(g=2)"
    assert Surface("closed", 2).warnings()
    assert not Surface.punctured(1).warnings()
    with pytest.raises(ValueError):
        Surface("sphere", 0)
