"""Excision assembly for CH*(R_2) and the checks that go with it.

The open stratum of P(Sym^4 V^dual) has Chow ring
    Z[b1, b2, g, h] / (2g, g^2 + b1 g, P(h), im p'_*),
and the G_m-torsor over it sets h = b1 + g.  Everything is computed exactly in
the free ring; reduction happens only inside membership checks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .chern import chern_classes, sym_roots
from .polyring import (
    BG_RELATIONS,
    IdealComparison,
    IntPoly,
    MembershipCertificate,
    _display_key,
    P,
    b1,
    b2,
    g,
    ideal_equal,
    ideal_member,
)
from .projcalc import SClassVec, proj_relation
from .pushcalc import derive_finite_subsets, mult_push, s, sq_push

h = P("h")
l1, l2 = P("l1"), P("l2")

TORSOR_H = b1 + g  # the torsor relation -h + b1 + g
TARGET_IDEAL = (2 * g, 2 * b1, 8 * b2, g * g + b1 * g, b1 * b1 + b1 * g)
LAMBDA_PRESENTATION = (2 * l1, 2 * g, 8 * l2, g * g + l1 * g, l1 * l1 + l1 * g)
SYM4_VDUAL = sym_roots(4, dual=True)


@dataclass(frozen=True)
class EnvelopeComponent:
    id: str
    description: str
    skip_reason: str | None = None


COMPONENTS = (
    EnvelopeComponent("p11", "P V^dual x P Sym^2 V^dual, (F, G) -> F^2 G: mult(sq(s_1^i), s_2^j)"),
    EnvelopeComponent("p12", "P Sym^3 V^dual x {X, Y}, (F, G) -> F G: mult(s_3^i, [X_Y])"),
    EnvelopeComponent("p21", "P Sym^2 V^dual, F -> F^2: sq(s_2^j)"),
    EnvelopeComponent("p22", "P V^dual x P V^dual x {X, Y}, (F1, F2, G) -> F1^2 F2 G",
                      skip_reason="factors through p11"),
    EnvelopeComponent("p23", "P Sym^2 V^dual x {X^2, Y^2, XY}, (F, G) -> F G: mult(s_2^j, [G])"),
    EnvelopeComponent("p31", "P V^dual x {X^3, Y^3, X^2Y, XY^2}, (F, G) -> F G: mult(s_1^i, [G])"),
    EnvelopeComponent("p32", "P V^dual x {X^2, Y^2, XY}, (F, G) -> F^2 G",
                      skip_reason="factors through p11"),
    EnvelopeComponent("p4", "{X^4, Y^4, X^3Y, XY^3, X^2Y^2}: inclusion"),
)


@dataclass(frozen=True)
class Pushforward:
    component: str
    source: str          # basis class pushed forward, e.g. "s_1^1 (x) s_2^0"
    value: SClassVec     # class on P(Sym^4 V^dual)

    @property
    def provenance(self) -> str:
        return f"{self.component}/{self.source}"

    def h_poly(self) -> IntPoly:
        return self.value.to_h("beta")

    def substituted(self) -> IntPoly:
        return self.h_poly().subs({"h": TORSOR_H})


@lru_cache(maxsize=None)
def envelope_pushforwards() -> tuple[Pushforward, ...]:
    subsets = {k: v.value for k, v in derive_finite_subsets().items()}
    out = []
    for i in range(2):
        sq = sq_push("PE", s(1, i), basis="beta")
        for j in range(3):
            out.append(Pushforward("p11", f"s_1^{i} (x) s_2^{j}", mult_push(sq, s(2, j))))
    for i in range(4):
        out.append(Pushforward("p12", f"s_3^{i} (x) [X_Y]", mult_push(s(3, i), subsets["X_Y"])))
    for j in range(3):
        out.append(Pushforward("p21", f"s_2^{j}", sq_push("PSym2", s(2, j), basis="beta")))
    for label in ("X2_Y2", "XY"):
        for j in range(3):
            out.append(Pushforward("p23", f"s_2^{j} (x) [{label}]", mult_push(s(2, j), subsets[label])))
    for label in ("X3_Y3", "X2Y_XY2"):
        for i in range(2):
            out.append(Pushforward("p31", f"s_1^{i} (x) [{label}]", mult_push(s(1, i), subsets[label])))
    for label in ("X4_Y4", "X3Y_XY3", "X2Y2"):
        out.append(Pushforward("p4", f"[{label}]", subsets[label]))
    return tuple(out)


def P_of_h() -> IntPoly:
    """The projective-bundle relation of P(Sym^4 V^dual), as a polynomial in h."""
    return proj_relation(SYM4_VDUAL, "beta")


@dataclass(frozen=True)
class ExcisionIdeal:
    generators: tuple[IntPoly, ...]
    provenance: tuple[str, ...]

    def nonzero(self) -> "ExcisionIdeal":
        keep = [k for k, p in enumerate(self.generators) if p]
        return ExcisionIdeal(tuple(self.generators[k] for k in keep),
                             tuple(self.provenance[k] for k in keep))

    def without(self, predicate) -> "ExcisionIdeal":
        """Drop generators for which ``predicate(index, provenance)`` holds."""
        keep = [k for k, src in enumerate(self.provenance) if not predicate(k, src)]
        return ExcisionIdeal(tuple(self.generators[k] for k in keep),
                             tuple(self.provenance[k] for k in keep))

    def __iter__(self):
        return iter(zip(self.generators, self.provenance))

    def __len__(self):
        return len(self.generators)


def assemble_final_ideal(substitute: bool = True) -> ExcisionIdeal:
    """Generators of the ideal presenting CH* of the open stratum's torsor.

    With ``substitute=False`` the generators stay in Z[b1, b2, g, h] and the
    torsor relation ``-h + b1 + g`` is listed explicitly instead.
    """
    gens: list[IntPoly] = list(BG_RELATIONS)
    prov = ["BG relation", "BG relation"]
    if substitute:
        gens.append(P_of_h().subs({"h": TORSOR_H}))
    else:
        gens.append(P_of_h())
    prov.append("P(h)")
    for pf in envelope_pushforwards():
        gens.append(pf.substituted() if substitute else pf.h_poly())
        prov.append(pf.provenance)
    if not substitute:
        gens.append(-h + TORSOR_H)
        prov.append("torsor")
    return ExcisionIdeal(tuple(gens), tuple(prov))


@dataclass
class TheoremResult:
    comparison: IdealComparison
    ideal: ExcisionIdeal
    target: tuple[IntPoly, ...]
    relabel: IdealComparison | None = None
    presentation: str = ""
    failures: list[str] = field(default_factory=list)

    @property
    def verified(self) -> bool:
        return bool(self.comparison) and bool(self.relabel)


def relabel_lambda(p: IntPoly) -> IntPoly:
    """b_i = (-1)^i l_i."""
    return p.subs({"b1": -l1, "b2": l2})


def _presentation_key(m):
    # pure powers before mixed monomials
    return (len(m) > 1,) + _display_key(m)


def presentation_string(gens) -> str:
    body = ", ".join(p.to_string(key=_presentation_key, factor_order=("l1", "l2", "g"))
                     for p in gens)
    return f"CH*(R_2) = Z[l1,l2,g]/({body})"


def verify_theorem(ideal: ExcisionIdeal | None = None) -> TheoremResult:
    ideal = (ideal or assemble_final_ideal()).nonzero()
    cmp = ideal_equal(ideal.generators, TARGET_IDEAL)
    result = TheoremResult(cmp, ideal, TARGET_IDEAL)
    for direction, k in cmp.failures():
        if direction == "A in B":
            result.failures.append(f"{ideal.provenance[k]}: {ideal.generators[k]} not in target ideal")
        else:
            result.failures.append(f"target generator {TARGET_IDEAL[k]} not in assembled ideal")
    if cmp:
        relabeled = [relabel_lambda(p) for p in TARGET_IDEAL]
        result.relabel = ideal_equal(relabeled, LAMBDA_PRESENTATION)
        if result.relabel:
            result.presentation = presentation_string(LAMBDA_PRESENTATION)
        else:
            result.failures.append("relabeled ideal differs from the lambda presentation")
    return result


@dataclass(frozen=True)
class MembershipLine:
    provenance: str
    value: IntPoly
    certificate: MembershipCertificate | None

    @property
    def member(self) -> bool:
        return self.certificate is not None


def check_vanishing_lemma() -> list[MembershipLine]:
    """Each envelope pushforward, substituted, lies in the target ideal."""
    out = []
    for pf in envelope_pushforwards():
        v = pf.substituted()
        out.append(MembershipLine(pf.provenance, v, ideal_member(v, TARGET_IDEAL)))
    return out


def check_p_of_h() -> MembershipLine:
    v = P_of_h().subs({"h": TORSOR_H})
    return MembershipLine("P(b1+g)", v, ideal_member(v, TARGET_IDEAL))


@dataclass(frozen=True)
class DivisibilityFacts:
    c4: IntPoly
    c5: IntPoly
    c5_over_2b1: IntPoly | None
    hc4_over_2h: IntPoly | None

    @property
    def ok(self) -> bool:
        return self.c5_over_2b1 is not None and self.hc4_over_2h is not None


def divisibility_facts() -> DivisibilityFacts:
    cs = chern_classes(SYM4_VDUAL, "beta")
    c4, c5 = cs[4], cs[5]
    return DivisibilityFacts(c4, c5, c5.exact_div(2 * b1), (h * c4).exact_div(2 * h))


class RemarkConditionError(ValueError):
    pass


def remark_condition(alpha: IntPoly, a_exp: int, b_exp: int) -> str | None:
    """Which vanishing condition covers ``alpha * mult(s_a^a', s_b^b')``."""
    alpha = IntPoly.coerce(alpha)
    if not alpha or alpha.exact_div(TORSOR_H) is not None:
        return "(b1+g) | alpha"
    if a_exp + b_exp >= 1 and alpha.content() % 2 == 0:
        return "a'+b' >= 1 and 2 | alpha"
    if a_exp + b_exp >= 3:
        return "a'+b' >= 3"
    return None


def check_remark_vanishing(alpha, a: int, a_exp: int, b_exp: int) -> MembershipLine:
    alpha = IntPoly.coerce(alpha)
    if not 1 <= a <= 3:
        raise ValueError("a must be 1, 2 or 3")
    clause = remark_condition(alpha, a_exp, b_exp)
    if clause is None:
        raise RemarkConditionError(
            f"alpha={alpha}, a'={a_exp}, b'={b_exp} meets none of the vanishing conditions")
    value = alpha * mult_push(s(a, a_exp), s(4 - a, b_exp))
    v = value.to_h("beta").subs({"h": TORSOR_H})
    return MembershipLine(f"{alpha}*mult(s_{a}^{a_exp}, s_{4 - a}^{b_exp}) [{clause}]", v,
                          ideal_member(v, TARGET_IDEAL))


REMARK_WITNESSES = (b1 + g, IntPoly.const(2), 2 * b1, 2 * b2, IntPoly.const(1))


def remark_cases():
    for a in (1, 2, 3):
        for a_exp in range(a + 1):
            for b_exp in range(4 - a + 1):
                for alpha in REMARK_WITNESSES:
                    if remark_condition(alpha, a_exp, b_exp):
                        yield alpha, a, a_exp, b_exp


def check_remark_all() -> list[MembershipLine]:
    return [check_remark_vanishing(*case) for case in remark_cases()]


def factoring_pushforwards() -> list[tuple[str, SClassVec]]:
    """p22 and p32 written as compositions through p11."""
    subsets = {k: v.value for k, v in derive_finite_subsets().items()}
    out = []
    for i in range(2):
        sq = sq_push("PE", s(1, i), basis="beta")
        for j in range(2):
            out.append((f"p22/s_1^{i} (x) s_1^{j} (x) [X_Y]",
                        mult_push(sq, mult_push(s(1, j), subsets["X_Y"]))))
        for label in ("X2_Y2", "XY"):
            out.append((f"p32/s_1^{i} (x) [{label}]", mult_push(sq, subsets[label])))
    return out


def check_factoring_components() -> list[MembershipLine]:
    ideal = assemble_final_ideal().nonzero()
    out = []
    for prov, value in factoring_pushforwards():
        v = value.to_h("beta").subs({"h": TORSOR_H})
        out.append(MembershipLine(prov, v, ideal_member(v, ideal.generators)))
    return out


@dataclass(frozen=True)
class Ablation:
    name: str
    comparison: IdealComparison
    expected_equal: bool
    missing: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return bool(self.comparison) == self.expected_equal


# name -> (generators to drop, whether the theorem should survive)
ABLATIONS = {
    "drop p12": (lambda k, src: src.startswith("p12/"), False),
    "drop P(h)": (lambda k, src: src == "P(h)", True),
    "drop 2g": (lambda k, src: k == 0, False),
}


def run_ablation(name: str) -> Ablation:
    predicate, expected = ABLATIONS[name]
    ablated = assemble_final_ideal().without(predicate).nonzero()
    cmp = ideal_equal(ablated.generators, TARGET_IDEAL)
    missing = tuple(str(TARGET_IDEAL[k]) for d, k in cmp.failures() if d == "B in A")
    return Ablation(name, cmp, expected, missing)
