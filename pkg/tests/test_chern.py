import pytest
import sympy
from hypothesis import given, settings, strategies as st

import oracle
from conftest import homogeneous
from prymchow.chern import (
    NonSymmetricError,
    c_to_beta,
    chern_classes,
    chern_component,
    dual,
    expand_elementary,
    rank2,
    swap_roots,
    sym_roots,
    symmetric_reduce,
    total_chern,
    trivial,
    twist,
)
from prymchow.polyring import BG_RELATIONS, DegreeError, IntPoly, P, b1, b2, equal_mod, g

r1, r2, c1, c2 = P("r1"), P("r2"), P("c1"), P("c2")
ROOTS = ("r1", "r2", "g")  # b1, b2 are the reduction targets


def test_sym_roots_examples():
    assert sym_roots(1, dual=True).roots == (-r2, -r1)
    assert set(sym_roots(2, dual=True).roots) == {-2 * r1, -r1 - r2, -2 * r2}
    assert sym_roots(4, dual=True).roots == tuple(-(i * r1 + (4 - i) * r2) for i in range(5))
    assert sym_roots(4, dual=True).label == "Sym4(Vdual)"
    with pytest.raises(ValueError):
        sym_roots(0)


def test_twist_examples():
    assert twist(trivial(), g).roots == (g,)
    t = twist(sym_roots(2, dual=True), g + b1)
    assert set(t.roots) == {-2 * r1 + g + b1, -r1 - r2 + g + b1, -2 * r2 + g + b1}
    with pytest.raises(DegreeError):
        twist(trivial(), b2)


def test_total_chern_sym2_abstract():
    assert total_chern(sym_roots(2), "c") == 1 + 3 * c1 + 2 * c1 ** 2 + 4 * c2 + 4 * c1 * c2


def test_class_xy_bundle_chern_mod_bg():
    c = total_chern(twist(sym_roots(2, dual=True), g + b1))
    assert equal_mod(c, 1 + g - b1 * (g + b1) + 4 * b2, BG_RELATIONS)


# c_i(Sym^4 V^dual), frozen from sympy's symmetrize applied to the product of (1 + root)
SYM4_CHERN = {
    1: -10 * b1,
    2: 35 * b1 ** 2 + 20 * b2,
    3: -50 * b1 ** 3 - 120 * b1 * b2,
    4: 24 * b1 ** 4 + 208 * b1 ** 2 * b2 + 64 * b2 ** 2,
    5: -96 * b1 ** 3 * b2 - 128 * b1 * b2 ** 2,
}


@pytest.mark.parametrize("i", range(1, 6))
def test_sym4_chern_frozen(i):
    assert chern_component(sym_roots(4, dual=True), i) == SYM4_CHERN[i]


def test_sym4_chern_oracle():
    R1, R2 = oracle.SYMS["r1"], oracle.SYMS["r2"]
    prod = sympy.expand(sympy.Mul(*(1 - (i * R1 + (4 - i) * R2) for i in range(5))))
    total = oracle.symmetrize(prod, oracle.SYMS["b1"], oracle.SYMS["b2"])
    assert total == oracle.to_sympy(total_chern(sym_roots(4, dual=True)))
    assert SYM4_CHERN[5] == -32 * b1 * b2 * (3 * b1 ** 2 + 4 * b2)


def test_divisibility_facts():
    h = P("h")
    assert SYM4_CHERN[5].exact_div(2 * b1) is not None
    assert (h * SYM4_CHERN[4]).exact_div(2 * h) is not None
    assert SYM4_CHERN[4].content() % 2 == 0


def test_chern_component_range():
    assert chern_component(sym_roots(3), 0) == 1
    with pytest.raises(ValueError):
        chern_component(sym_roots(3), 5)


def test_non_symmetric_rejected_with_remainder():
    with pytest.raises(NonSymmetricError) as info:
        symmetric_reduce(r1 ** 2 + r2)
    assert info.value.remainder == r1 ** 2 + r2 - r2 ** 2 - r1
    with pytest.raises(NonSymmetricError):
        total_chern(type(trivial())((r1,), "L"))


def test_c_to_beta_bridge():
    assert c_to_beta(total_chern(rank2(), "c")) == 1 - b1 + b2
    assert total_chern(rank2(dual=True)) == 1 - b1 + b2
    assert total_chern(rank2()) == 1 + b1 + b2


@settings(max_examples=100)
@given(homogeneous(ROOTS, max_degree=4, coeffs=st.integers(-6, 6)))
def test_symmetric_roundtrip(p):
    s = p + swap_roots(p)
    reduced = symmetric_reduce(s)
    assert "r1" not in reduced.variables() and "r2" not in reduced.variables()
    assert expand_elementary(reduced) == s
    assert oracle.to_sympy(reduced) == oracle.symmetrize(oracle.to_sympy(s), oracle.SYMS["b1"],
                                                         oracle.SYMS["b2"])


@given(st.integers(1, 4), st.booleans())
def test_duality(n, is_dual):
    spec = sym_roots(n, is_dual)
    for i in range(n + 2):
        assert chern_component(dual(spec), i) == (-1) ** i * chern_component(spec, i)


@given(st.integers(1, 4), st.sampled_from([g, b1, g + b1, 3 * b1 - g]))
def test_twist_shifts_c1(n, ell):
    spec = sym_roots(n, dual=True)
    assert chern_component(twist(spec, ell), 1) == chern_component(spec, 1) + (n + 1) * ell


@given(st.sampled_from(["beta", "c"]))
def test_whitney_rank2(basis):
    e1, e2 = (b1, b2) if basis == "beta" else (c1, c2)
    assert chern_classes(rank2(), basis) == [IntPoly.const(1), e1, e2]
