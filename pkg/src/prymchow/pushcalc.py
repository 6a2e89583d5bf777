"""Pushforwards along multiplication and squaring maps; classes of finite subsets.

``mult: P(Sym^a) x P(Sym^b) -> P(Sym^{a+b})`` pushes ``s_a^i x s_b^j`` to
``binom(a+b-i-j, a-i) s_{a+b}^{i+j}``, extended bilinearly over the base ring.
The squaring map ``P W -> P Sym^2 W`` is ``mult`` composed with the diagonal.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .chern import c_to_beta, sym_roots, total_chern, twist
from .polyring import BG_RELATIONS, DegreeError, IntPoly, P, b1, b2, equal_mod, g
from .projcalc import MAX_R, SClassVec, diagonal_push, h_poly_to_s, h_to_s, s_to_h

h = P("h")

SQUARING_SOURCES = {"PE": 1, "PSym2": 2}


def mult_push(u: SClassVec, v: SClassVec) -> SClassVec:
    a, b = u.r, v.r
    if a + b > MAX_R:
        raise DegreeError(f"Sym^{a} x Sym^{b} lands outside the modelled spaces (a+b > {MAX_R})")
    out = [IntPoly() for _ in range(a + b + 1)]
    for i, x in enumerate(u.coeffs):
        if not x:
            continue
        for j, y in enumerate(v.coeffs):
            if y:
                out[i + j] = out[i + j] + comb(a + b - i - j, a - i) * x * y
    return SClassVec(a + b, tuple(out))


def s(r: int, j: int) -> SClassVec:
    return SClassVec.basis(r, j)


@lru_cache(maxsize=None)
def _sq_basis_image(source: str, j: int, basis: str) -> SClassVec:
    m = SQUARING_SOURCES[source]
    W = sym_roots(m)
    result = SClassVec.zero(2 * m)
    for k, coeff in s_to_h(m, j).coefficients_in("h").items():
        for (a, b), c in diagonal_push(W, k).terms().items():
            result = result + (coeff * c) * mult_push(h_to_s(m, a), h_to_s(m, b))
    return result.map(c_to_beta) if basis == "beta" else result


def sq_push(source: str, u: SClassVec, basis: str = "c") -> SClassVec:
    """Pushforward along ``P W -> P Sym^2 W`` for W = E ("PE") or Sym^2 E ("PSym2").

    ``basis="beta"`` specializes E = V_G^dual (c1 = -b1, c2 = b2).
    """
    if source not in SQUARING_SOURCES:
        raise ValueError(f"unsupported squaring source {source!r}; expected one of {sorted(SQUARING_SOURCES)}")
    m = SQUARING_SOURCES[source]
    if u.r != m:
        raise ValueError(f"{source} classes live on Sym^{m}, got Sym^{u.r}")
    result = SClassVec.zero(2 * m)
    for j, a in enumerate(u.coeffs):
        if a:
            result = result + a * _sq_basis_image(source, j, basis)
    return result


# closed forms for the squaring pushforwards, in the abstract (c1, c2) basis
c1, c2 = P("c1"), P("c2")
SQUARING_TABLE = {
    ("PE", 0): SClassVec(2, (2 * c1, 2, 0)),
    ("PE", 1): SClassVec(2, (-2 * c2, 0, 1)),
    ("PSym2", 0): SClassVec(4, (12 * c1 ** 2, 12 * c1, 4, 0, 0)),
    ("PSym2", 1): SClassVec(4, (-24 * c1 * c2, -12 * c2, 2 * c1, 2, 0)),
    ("PSym2", 2): SClassVec(4, (24 * c2 ** 2, 0, -4 * c2, 0, 1)),
}


@dataclass(frozen=True)
class FiniteSubsetClass:
    label: str
    value: SClassVec
    origin: str  # "fixture" or "derived"
    recipe: str = ""

    def __str__(self):
        return f"[{self.label}] = {self.value}"


# Reference closed forms for the finite-subset classes on P(Sym^k V_G^dual)
DISPLAYED = {
    "X_Y": SClassVec(1, (-(b1 + g), 2)),
    "XY": SClassVec(2, (2 * b2, g - b1, 1)),
    "X2_Y2": SClassVec(2, (2 * (b1 ** 2 - 2 * b2), -2 * b1, 2)),
    "X2Y_XY2": SClassVec(3, (-6 * b2 * b1, 2 * (2 * b2 + b1 ** 2), -(3 * b1 + g), 2)),
    "X3_Y3": SClassVec(3, (6 * b1 * (3 * b2 - b1 ** 2), 2 * (3 * b1 ** 2 - 6 * b2), g - 3 * b1, 2)),
    "X2Y2": SClassVec(4, (24 * b2 ** 2, -12 * b2 * b1, 2 * (b1 ** 2 + 2 * b2), -2 * b1, 1)),
    "X3Y_XY3": SClassVec(4, (24 * b2 * (b1 ** 2 - 2 * b2), -6 * b1 ** 3, 6 * b1 ** 2, -4 * b1, 2)),
    "X4_Y4": SClassVec(4, (24 * (b1 ** 4 + 2 * b2 ** 2 - 4 * b2 * b1 ** 2),
                           24 * b1 * (b2 - b1 ** 2),
                           12 * (b1 ** 2 - 2 * b2), -4 * b1, 2)),
}

SUBSET_LABELS = ("X_Y", "XY", "X2_Y2", "X2Y_XY2", "X3_Y3", "X2Y2", "X3Y_XY3", "X4_Y4")
DERIVED_LABELS = SUBSET_LABELS[2:]


def class_X_Y() -> FiniteSubsetClass:
    """Class of {X, Y} in P(V^dual); taken as given (needs pushforward along BG_m^2 -> BG)."""
    return FiniteSubsetClass("X_Y", DISPLAYED["X_Y"], "fixture")


@dataclass(frozen=True)
class XYDerivation:
    bundle_chern: IntPoly      # c(Sym^2 V^dual (x) Gamma (x) det V), exact
    expected_chern: IntPoly    # 1 + g - b1(g + b1) + 4 b2
    chern_agrees: bool         # the two agree modulo the BG relations
    top_chern_vanishes: bool   # c3 = 0 modulo BG, so Q of rank 2 has the same total class
    computed: SClassVec        # c2(pi^* Q (x) O(1) (x) Gamma^dual (x) det V^dual), exact
    displayed: SClassVec
    mismatches: tuple[int, ...]  # s-indices whose coefficients differ modulo BG

    @property
    def ok(self) -> bool:
        return self.chern_agrees and self.top_chern_vanishes and not self.mismatches


def derive_class_XY() -> XYDerivation:
    bundle = twist(sym_roots(2, dual=True), g + b1, label="Sym2(Vdual)(x)Gamma(x)det(V)")
    c_bundle = total_chern(bundle)
    expected = 1 + g - b1 * (g + b1) + 4 * b2
    chern_agrees = equal_mod(c_bundle, expected, BG_RELATIONS)
    # 0 -> O -> bundle -> Q -> 0 gives c(Q) = c(bundle)
    cq1, cq2, cq3 = (c_bundle.homogeneous_part(i) for i in (1, 2, 3))
    top_vanishes = equal_mod(cq3, 0, BG_RELATIONS)
    line = h - g - b1
    c2_twisted = cq2 + cq1 * line + line * line
    computed = h_poly_to_s(2, c2_twisted, basis="beta")
    displayed = DISPLAYED["XY"]
    mismatches = tuple(j for j in range(3)
                       if not equal_mod(computed.coeffs[j], displayed.coeffs[j], BG_RELATIONS))
    return XYDerivation(c_bundle, expected, chern_agrees, top_vanishes, computed, displayed, mismatches)


class ClassMismatch(AssertionError):
    pass


def class_XY() -> FiniteSubsetClass:
    """Class of {XY} in P(Sym^2 V^dual), derived from Chern classes.

    The derivation only determines the class modulo the BG relations; the
    displayed representative is returned once the two are checked to agree.
    """
    d = derive_class_XY()
    if not d.ok:
        raise ClassMismatch(f"[XY] derivation disagrees with {d.displayed}: computed {d.computed}, "
                            f"differing s-indices {d.mismatches}")
    return FiniteSubsetClass("XY", d.displayed, "derived", "c2(Q(1) (x) Gamma^dual (x) det V^dual)")


RECIPES = {
    "X2_Y2": "mult(X_Y, X_Y) - 2*XY",
    "X2Y_XY2": "mult(X_Y, XY)",
    "X3_Y3": "mult(X_Y, X2_Y2) - X2Y_XY2",
    "X2Y2": "mult(XY, XY)",
    "X3Y_XY3": "mult(XY, X2_Y2)",
    "X4_Y4": "mult(X2_Y2, X2_Y2) - 2*X2Y2",
}


def derive_finite_subsets() -> dict[str, FiniteSubsetClass]:
    """All eight classes; the six composite ones computed from [X_Y] and [XY]."""
    xy_, xy = class_X_Y(), class_XY()
    v = {"X_Y": xy_.value, "XY": xy.value}
    v["X2_Y2"] = mult_push(v["X_Y"], v["X_Y"]) - 2 * v["XY"]
    v["X2Y_XY2"] = mult_push(v["X_Y"], v["XY"])
    v["X3_Y3"] = mult_push(v["X_Y"], v["X2_Y2"]) - v["X2Y_XY2"]
    v["X2Y2"] = mult_push(v["XY"], v["XY"])
    v["X3Y_XY3"] = mult_push(v["XY"], v["X2_Y2"])
    v["X4_Y4"] = mult_push(v["X2_Y2"], v["X2_Y2"]) - 2 * v["X2Y2"]
    out = {"X_Y": xy_, "XY": xy}
    for label in DERIVED_LABELS:
        out[label] = FiniteSubsetClass(label, v[label], "derived", RECIPES[label])
    return out


@dataclass(frozen=True)
class SubsetComparison:
    label: str
    computed: SClassVec
    displayed: SClassVec
    exact: bool                 # identical as polynomials in Z[b1, b2, g]
    mod_bg: tuple[int, ...]     # s-indices still differing modulo the BG relations
    difference: SClassVec

    @property
    def ok(self) -> bool:
        return not self.mod_bg


def compare_finite_subsets(classes: dict[str, FiniteSubsetClass] | None = None) -> list[SubsetComparison]:
    classes = classes or derive_finite_subsets()
    out = []
    for label in DERIVED_LABELS:
        comp, disp = classes[label].value, DISPLAYED[label]
        diff = comp - disp
        bad = tuple(j for j, c in enumerate(diff.coeffs) if not equal_mod(c, 0, BG_RELATIONS))
        out.append(SubsetComparison(label, comp, disp, comp == disp, bad, diff))
    return out
