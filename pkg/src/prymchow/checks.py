"""Registry of named verification checks and the report they produce."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from . import __version__
from . import pipeline, pushcalc
from .chern import sym_roots
from .polyring import BG_RELATIONS, IntPoly, P, b1, b2, equal_mod, g, ideal_member
from .projcalc import SClassVec, diagonal_class, diagonal_push, h_to_s, s_to_h
from .pushcalc import SQUARING_SOURCES, SQUARING_TABLE, s, sq_push

h, h1, h2 = P("h"), P("h1"), P("h2")
c1, c2 = P("c1"), P("c2")


@dataclass
class CheckResult:
    id: str
    lines: list[tuple[bool, str]] = field(default_factory=list)
    error: str | None = None

    @property
    def passed(self) -> bool:
        return self.error is None and all(ok for ok, _ in self.lines)

    def add(self, ok: bool, text: str) -> bool:
        self.lines.append((bool(ok), text))
        return ok

    @property
    def detail(self) -> str:
        if self.error:
            return f"internal error: {self.error}"
        n_ok = sum(ok for ok, _ in self.lines)
        failing = [t for ok, t in self.lines if not ok]
        head = f"{n_ok}/{len(self.lines)} passed"
        return head if not failing else head + "; failing: " + " | ".join(failing)


# reference closed forms for diagonal classes and pushforwards (E of rank 2, W = E or Sym^2 E)
DIAGONAL_DISPLAYED = {
    ("E", "class"): h1 + h2 + c1,
    ("E", 0): h1 + h2 + c1,
    ("E", 1): h1 * h2 - c2,
    ("Sym2E", "class"): h1 ** 2 + h1 * h2 + h2 ** 2 + 3 * c1 * (h1 + h2) + 2 * c1 ** 2 + 4 * c2,
    ("Sym2E", 0): h1 ** 2 + h1 * h2 + h2 ** 2 + 3 * c1 * (h1 + h2) + 2 * c1 ** 2 + 4 * c2,
    ("Sym2E", 1): h1 ** 2 * h2 + h1 * h2 ** 2 + 3 * c1 * h1 * h2 - 4 * c1 * c2,
    ("Sym2E", 2): h1 ** 2 * h2 ** 2 - (2 * c1 ** 2 + 4 * c2) * h1 * h2 - 4 * c1 * c2 * (h1 + h2),
}


def displayed_h_power(r: int, k: int) -> SClassVec:
    """The displayed identities for h^2 (r >= 2), h^3 (r >= 3) and h^4 (r >= 4)."""
    co = {
        2: {2: 1, 1: -c1, 0: -r * c2},
        3: {3: 1, 2: -3 * c1, 1: c1 ** 2 + (2 - 3 * r) * c2, 0: r * c1 * c2},
        4: {4: 1, 3: -6 * c1, 2: 7 * c1 ** 2 - (6 * r - 8) * c2,
            1: (10 * r - 8) * c1 * c2 - c1 ** 3,
            0: -(r * c1 ** 2 * c2 - (3 * r ** 2 - 2 * r) * c2 ** 2)},
    }[k]
    return SClassVec.from_dict(r, co)


def displayed_s4_in_h() -> dict[int, IntPoly]:
    """s_4^2, s_4^3, s_4^4 as displayed with c1 = -b1, c2 = b2 (nested in lower s_4^j)."""
    s2 = h ** 2 - b1 * h + 4 * b2
    s3 = h ** 3 - 3 * b1 * s2 - (b1 ** 2 - 10 * b2) * h + 4 * b1 * b2
    s4 = (h ** 4 - 6 * b1 * s3 - (7 * b1 ** 2 - 16 * b2) * s2
          + (-b1 ** 3 + 32 * b1 * b2) * h + 4 * b1 ** 2 * b2 - 40 * b2 ** 2)
    return {2: s2, 3: s3, 4: s4}


def check_diag(spec_name: str) -> CheckResult:
    cid = "diag-pe" if spec_name == "E" else "diag-psym2"
    res = CheckResult(cid)
    W = sym_roots(1) if spec_name == "E" else sym_roots(2)
    got = diagonal_class(W).poly
    want = DIAGONAL_DISPLAYED[(spec_name, "class")]
    res.add(got == want, f"[Delta_P{spec_name}] = {got}")
    for k in range(W.rank):
        got = diagonal_push(W, k).poly
        want = DIAGONAL_DISPLAYED.get((spec_name, k))
        if want is None:
            continue
        res.add(got == want, f"Delta_*(h^{k}) = {got}" + ("" if got == want else f" (displayed {want})"))
    return res


def check_sq(source: str) -> CheckResult:
    res = CheckResult("sq-pe" if source == "PE" else "sq-psym2")
    m = SQUARING_SOURCES[source]
    for j in range(m + 1):
        got = sq_push(source, s(m, j))
        want = SQUARING_TABLE[(source, j)]
        res.add(got == want, f"s_{m}^{j} -> {got}" + ("" if got == want else f" (displayed {want})"))
    return res


def check_class_xy() -> CheckResult:
    res = CheckResult("class-xy")
    d = pushcalc.derive_class_XY()
    res.add(d.chern_agrees, f"c(Sym2(Vdual)(x)Gamma(x)det V) = {d.bundle_chern} == {d.expected_chern} mod BG")
    res.add(d.top_chern_vanishes, "c3 of that bundle vanishes mod BG, so c(Q) has the same total class")
    res.add(not d.mismatches, f"[XY] computed {d.computed} == displayed {d.displayed} mod BG")
    return res


def check_finite_subsets() -> CheckResult:
    res = CheckResult("finite-subsets")
    for cmp in pushcalc.compare_finite_subsets():
        if cmp.exact:
            res.add(True, f"[{cmp.label}] = {cmp.displayed} (exact)")
        elif cmp.ok:
            res.add(True, f"[{cmp.label}] = {cmp.displayed} in CH*(BG); "
                          f"free-ring difference {cmp.difference} lies in (2g, g^2+b1*g)")
        else:
            bad = ", ".join(f"s_{cmp.computed.r}^{j}: computed {cmp.computed.coeffs[j]}, "
                            f"displayed {cmp.displayed.coeffs[j]}, "
                            f"difference {cmp.difference.coeffs[j]}" for j in cmp.mod_bg)
            res.add(False, f"[{cmp.label}] recipe {pushcalc.RECIPES[cmp.label]} disagrees "
                           f"with the displayed class modulo BG at {bad}")
    return res


def check_h_to_s() -> CheckResult:
    res = CheckResult("h-to-s")
    for k in (2, 3, 4):
        for r in range(k, 5):
            got, want = h_to_s(r, k), displayed_h_power(r, k)
            res.add(got == want, f"h^{k} on P(Sym^{r}) = {got}")
    for j, want in displayed_s4_in_h().items():
        got = s_to_h(4, j, "beta")
        res.add(got == want, f"s_4^{j} = {got}")
    table = {2: 4 * b2, 3: IntPoly(), 4: IntPoly()}
    for j, residue in table.items():
        v = s_to_h(4, j, "beta").subs({"h": pipeline.TORSOR_H}) - residue
        res.add(ideal_member(v, pipeline.TARGET_IDEAL) is not None,
                f"s_4^{j} = {residue} modulo the target ideal at h = b1+g")
    return res


def check_envelope_generators() -> CheckResult:
    """The three pushforwards that produce 2b1, b1^2+b1*g and 8b2."""
    res = CheckResult("envelope-generators")
    pfs = {pf.provenance: pf for pf in pipeline.envelope_pushforwards()}
    cases = [
        ("p12/s_3^0 (x) [X_Y]", SClassVec(4, (-4 * (b1 + g), 2, 0, 0, 0)), -2 * b1),
        ("p12/s_3^1 (x) [X_Y]", SClassVec(4, (0, -3 * (b1 + g), 2, 0, 0)), 8 * b2 - 3 * b1 * (b1 + g)),
        ("p11/s_1^1 (x) s_2^0", SClassVec(4, (-12 * b2, 0, 1, 0, 0)), -8 * b2),
    ]
    values = []
    for prov, exact, reduced in cases:
        pf = pfs[prov]
        res.add(pf.value == exact, f"{prov} = {pf.value}")
        v = pf.substituted()
        values.append(v)
        res.add(equal_mod(v, reduced, BG_RELATIONS), f"{prov} at h=b1+g: {v} == {reduced} mod BG")
    gens = list(BG_RELATIONS) + values
    for target in (2 * b1, b1 ** 2 + b1 * g, 8 * b2):
        cert = ideal_member(target, gens)
        res.add(cert is not None, f"{target} in (BG relations, these three): {cert}")
    return res


def check_envelope_vanishing() -> CheckResult:
    res = CheckResult("envelope-vanishing")
    for line in pipeline.check_vanishing_lemma():
        res.add(line.member, f"{line.provenance} -> {line.value} == 0")
    return res


def check_remark_vanishing() -> CheckResult:
    res = CheckResult("remark-vanishing")
    for line in pipeline.check_remark_all():
        res.add(line.member, f"{line.provenance} == 0")
    return res


def check_ph_vanishing() -> CheckResult:
    res = CheckResult("ph-vanishing")
    line = pipeline.check_p_of_h()
    res.add(line.member, f"P(b1+g) = {line.value} in target ideal; certificate {line.certificate}")
    facts = pipeline.divisibility_facts()
    res.add(facts.c5_over_2b1 is not None, f"c5 = {facts.c5} = 2*b1*({facts.c5_over_2b1})")
    res.add(facts.hc4_over_2h is not None, f"h*c4 = 2*h*({facts.hc4_over_2h})")
    return res


def check_factoring() -> CheckResult:
    res = CheckResult("factoring-redundancy")
    for line in pipeline.check_factoring_components():
        res.add(line.member, f"{line.provenance} in assembled ideal")
    return res


def check_theorem() -> CheckResult:
    res = CheckResult("theorem")
    thm = pipeline.verify_theorem()
    res.add(bool(thm.comparison),
            "assembled ideal == (2g, 2b1, 8b2, g^2+b1*g, b1^2+b1*g)"
            + ("" if thm.comparison else ": " + "; ".join(thm.failures)))
    if thm.comparison:
        res.add(bool(thm.relabel), f"relabel b_i = (-1)^i l_i: {thm.presentation}")
    for name in pipeline.ABLATIONS:
        ab = pipeline.run_ablation(name)
        verdict = "still equal" if ab.comparison else f"not equal (missing {', '.join(ab.missing)})"
        res.add(ab.ok, f"ablation {name}: {verdict}")
    return res


REGISTRY = {
    "diag-pe": lambda: check_diag("E"),
    "diag-psym2": lambda: check_diag("Sym2E"),
    "sq-pe": lambda: check_sq("PE"),
    "sq-psym2": lambda: check_sq("PSym2"),
    "class-xy": check_class_xy,
    "finite-subsets": check_finite_subsets,
    "h-to-s": check_h_to_s,
    "envelope-generators": check_envelope_generators,
    "envelope-vanishing": check_envelope_vanishing,
    "remark-vanishing": check_remark_vanishing,
    "ph-vanishing": check_ph_vanishing,
    "factoring-redundancy": check_factoring,
    "theorem": check_theorem,
}


class UnknownCheck(KeyError):
    pass


def run_check(cid: str) -> CheckResult:
    if cid not in REGISTRY:
        raise UnknownCheck(cid)
    try:
        return REGISTRY[cid]()
    except Exception as exc:  # reported, not raised: exit status 2
        return CheckResult(cid, error=f"{type(exc).__name__}: {exc}")


@dataclass
class VerificationReport:
    checks: list[CheckResult]
    theorem: pipeline.TheoremResult | None
    timing_ms: int

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks) and bool(self.theorem and self.theorem.verified)

    @property
    def internal_error(self) -> bool:
        return any(c.error for c in self.checks)

    def to_json(self) -> dict:
        out = {
            "version": __version__,
            "checks": [{"id": c.id, "pass": c.passed, "detail": c.detail} for c in self.checks],
        }
        if self.theorem is not None:
            out["theorem"] = {
                "verified": self.theorem.verified,
                "computed_generators": [str(p) for p in self.theorem.ideal.generators],
                "target_generators": [str(p) for p in self.theorem.target],
                "presentation": self.theorem.presentation,
            }
        out["timing_ms"] = self.timing_ms
        return out


def run_all(ids=None, with_theorem: bool = True) -> VerificationReport:
    t0 = time.perf_counter()
    checks = [run_check(cid) for cid in (ids or REGISTRY)]
    thm = pipeline.verify_theorem() if with_theorem else None
    return VerificationReport(checks, thm, int((time.perf_counter() - t0) * 1000))
