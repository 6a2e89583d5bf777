import pytest
from hypothesis import given, strategies as st

from conftest import homogeneous
from prymchow.checks import displayed_h_power
from prymchow.chern import rank2, sym_roots, trivial
from prymchow.polyring import DegreeError, IntPoly, P, b1, b2, g, ideal_member
from prymchow.projcalc import (
    MAX_R,
    SClassVec,
    diagonal_class,
    diagonal_push,
    h_poly_to_s,
    h_to_s,
    proj_relation,
    reduce_biproj,
    reduce_power,
    s_to_h,
)

h, h1, h2, c1, c2 = P("h"), P("h1"), P("h2"), P("c1"), P("c2")
TARGET = (2 * g, 2 * b1, 8 * b2, g * g + b1 * g, b1 * b1 + b1 * g)
E, SYM2E = sym_roots(1), sym_roots(2)


@pytest.mark.parametrize("r", range(1, MAX_R + 1))
def test_low_s_classes(r):
    assert s_to_h(r, 0) == 1
    assert s_to_h(r, 1) == h


def test_s_to_h_examples():
    assert s_to_h(2, 2) == h ** 2 + c1 * h + 2 * c2
    assert s_to_h(4, 2, "beta") == h ** 2 - b1 * h + 4 * b2
    with pytest.raises(ValueError):
        s_to_h(2, 3)


def test_h_to_s_examples():
    assert h_to_s(4, 2) == SClassVec.from_dict(4, {2: 1, 1: -c1, 0: -4 * c2})
    assert h_to_s(4, 2, "beta") == SClassVec.from_dict(4, {2: 1, 1: b1, 0: -4 * b2})
    assert h_to_s(3, 3) == SClassVec.from_dict(3, {3: 1, 2: -3 * c1, 1: c1 ** 2 - 7 * c2, 0: 3 * c1 * c2})
    assert h_to_s(4, 0) == SClassVec.basis(4, 0)


def test_h_to_s_refuses_beyond_rank():
    with pytest.raises(DegreeError):
        h_to_s(2, 3)
    with pytest.raises(DegreeError):
        h_poly_to_s(1, h ** 2)


@pytest.mark.parametrize("r, k", [(r, k) for r in range(MAX_R + 1) for k in range(r + 1)])
@pytest.mark.parametrize("basis", ["c", "beta"])
def test_roundtrip(r, k, basis):
    assert h_to_s(r, k, basis).to_h(basis) == h ** k
    assert h_poly_to_s(r, s_to_h(r, k, basis), basis) == SClassVec.basis(r, k)


@pytest.mark.parametrize("k, r", [(k, r) for k in (2, 3, 4) for r in range(k, MAX_R + 1)])
def test_displayed_power_identities(k, r):
    assert h_to_s(r, k) == displayed_h_power(r, k)


@pytest.mark.parametrize("j, residue", [(2, 4 * b2), (3, 0), (4, 0)])
def test_vanishing_table_at_torsor(j, residue):
    v = s_to_h(4, j, "beta").subs({"h": b1 + g}) - residue
    assert ideal_member(v, TARGET) is not None


def test_sclassvec_validation_and_grading():
    with pytest.raises(ValueError):
        SClassVec(5, (0,) * 6)
    with pytest.raises(ValueError):
        SClassVec(2, (0, 1))
    with pytest.raises(ValueError):
        SClassVec.basis(1, 2) + SClassVec.basis(2, 0)
    x_y = SClassVec(1, (-(b1 + g), 2))
    assert x_y.codimension() == 1
    assert SClassVec(2, (b2, 1, 0)).codimension() is None
    assert SClassVec.zero(3).codimension() == -1
    assert str(x_y) == "2*s_1^1+(-b1-g)*s_1^0"
    assert str(SClassVec(4, (-4 * c2, -c1, 1, 0, 0))) == "s_4^2-c1*s_4^1-4*c2*s_4^0"


def test_proj_relation_examples():
    assert proj_relation(trivial()) == h
    assert proj_relation(rank2(dual=True)) == h ** 2 - b1 * h + b2
    rel = proj_relation(sym_roots(4, dual=True))
    assert rel.degree() == 5
    assert rel.coefficients_in("h")[0] == -32 * b1 * b2 * (3 * b1 ** 2 + 4 * b2)


def test_diagonal_examples():
    assert diagonal_push(E, 0).poly == h1 + h2 + c1
    assert diagonal_push(E, 1).poly == h1 * h2 - c2
    assert diagonal_push(SYM2E, 2).poly == \
        h1 ** 2 * h2 ** 2 - (2 * c1 ** 2 + 4 * c2) * h1 * h2 - 4 * c1 * c2 * (h1 + h2)
    d = diagonal_class(SYM2E)
    assert d.coefficient(1, 1) == 1
    assert d.terms()[(0, 0)] == 2 * c1 ** 2 + 4 * c2


@pytest.mark.parametrize("W", [E, SYM2E, sym_roots(3)])
def test_diagonal_top_degree_normalized(W):
    n = W.rank
    assert diagonal_class(W).coefficient(n - 1, 0) == 1
    assert diagonal_class(W).coefficient(0, n - 1) == 1


@pytest.mark.parametrize("W", [E, SYM2E, sym_roots(3)])
def test_diagonal_symmetric(W):
    p = diagonal_class(W).poly
    assert p.subs({"h1": h2, "h2": h1}) == p


@given(homogeneous(("h1", "h2", "c1", "c2"), max_degree=6, coeffs=st.integers(-5, 5)),
       st.sampled_from([E, SYM2E]))
def test_biproj_reduction_confluent_and_idempotent(p, W):
    a = reduce_biproj(p, W)
    b = reduce_biproj(p, W, order=("h2", "h1"))
    assert a == b
    assert reduce_biproj(a, W) == a
    for var in ("h1", "h2"):
        assert max(a.coefficients_in(var), default=0) < W.rank


def test_reduce_power_removes_relation():
    W = sym_roots(2)
    rel = proj_relation(W, "c")
    assert reduce_power(h * rel + rel, W, "h") == IntPoly()
