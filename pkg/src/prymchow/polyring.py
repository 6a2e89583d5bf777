"""Sparse graded polynomials over the integers and homogeneous ideal membership.

Every class in the pipeline is an :class:`IntPoly`.  Variables carry a fixed
positive weight and are identified by short ASCII names:

    b1, b2, g   -- beta_1, beta_2, gamma (the base ring CH*(BG))
    h           -- hyperplane class on P(Sym^4 V^dual)
    h1, h2      -- hyperplane classes on the two factors of P(W) x P(W)
    c1, c2      -- Chern classes of an abstract rank-2 bundle E
    r1, r2      -- Chern roots of V_G
    l1, l2      -- lambda_1, lambda_2 (Hodge bundle classes)

Membership in a homogeneous ideal is decided one degree at a time: the degree-d
piece of ``(g_1, ..., g_k)`` is the integer span of ``m * g_i`` over monomials
``m`` of complementary degree, so membership is an integer linear system, solved
with :mod:`prymchow.lattice`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .lattice import LatticeBasis

Monomial = tuple  # sorted tuple of (variable index, exponent > 0)


class DegreeError(ValueError):
    """A substitution or twist would break the grading."""


class NotHomogeneousError(ValueError):
    pass


@dataclass(frozen=True)
class Variable:
    name: str
    degree: int


_VARIABLES: list[Variable] = []
_INDEX: dict[str, int] = {}


def register_variable(name: str, degree: int) -> Variable:
    """Register ``name`` with weight ``degree``; re-registering is idempotent."""
    if degree < 0:
        raise DegreeError(f"negative degree for {name}")
    if name in _INDEX:
        v = _VARIABLES[_INDEX[name]]
        if v.degree != degree:
            raise DegreeError(f"{name} already registered with degree {v.degree}")
        return v
    v = Variable(name, degree)
    _INDEX[name] = len(_VARIABLES)
    _VARIABLES.append(v)
    return v


# Registration order is the display order: b1 > g > b2 > h > ...
for _name, _deg in [
    ("b1", 1), ("g", 1), ("b2", 2), ("h", 1),
    ("l1", 1), ("l2", 2), ("c1", 1), ("c2", 2),
    ("r1", 1), ("r2", 1), ("h1", 1), ("h2", 1),
]:
    register_variable(_name, _deg)


def variable(name: str) -> Variable:
    try:
        return _VARIABLES[_INDEX[name]]
    except KeyError:
        raise KeyError(f"unknown variable {name!r}") from None


def _mono_degree(m: Monomial) -> int:
    return sum(_VARIABLES[i].degree * e for i, e in m)


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for i, e in b:
        exps[i] = exps.get(i, 0) + e
    return tuple(sorted(exps.items()))


def _mono_str(m: Monomial, factor_order: Sequence[str] = ()) -> str:
    rank = {_INDEX[n]: k for k, n in enumerate(factor_order)}
    parts = []
    for i, e in sorted(m, key=lambda p: (rank.get(p[0], len(rank)), p[0])):
        name = _VARIABLES[i].name
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


def _display_key(m: Monomial):
    # graded lex, earlier-registered variables heavier
    n = len(_VARIABLES)
    dense = [0] * n
    for i, e in m:
        dense[i] = e
    return (-_mono_degree(m), tuple(-e for e in dense))


def by_power_of(name: str):
    """Term order: descending powers of ``name``, then graded lex."""
    i = _INDEX[name]
    return lambda m: (-dict(m).get(i, 0),) + _display_key(m)


def monomial(**exponents: int) -> Monomial:
    """``monomial(b1=2, g=1)`` -> the monomial b1^2*g."""
    return tuple(sorted((_INDEX[k], e) for k, e in exponents.items() if e))


class IntPoly:
    """Immutable sparse polynomial with unbounded integer coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, int] | None = None):
        self._terms = {m: c for m, c in (terms or {}).items() if c}
        self._hash = None

    # construction -------------------------------------------------------
    @classmethod
    def const(cls, c: int) -> "IntPoly":
        return cls({(): c})

    @classmethod
    def var(cls, name: str) -> "IntPoly":
        variable(name)
        return cls({((_INDEX[name], 1),): 1})

    @classmethod
    def coerce(cls, x) -> "IntPoly":
        if isinstance(x, IntPoly):
            return x
        if isinstance(x, int):
            return cls.const(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to IntPoly")

    # basic protocol -----------------------------------------------------
    @property
    def terms(self) -> Mapping[Monomial, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPoly.const(other)
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        return f"IntPoly({str(self)!r})"

    def __str__(self):
        return self.to_string()

    def to_string(self, key=None, factor_order: Sequence[str] = (), spaced: bool = False) -> str:
        """Serialize with explicit ``*`` and ``^``, e.g. ``g^2+b1*g-8*b2``.

        ``key`` orders the terms (graded lex by default); ``factor_order`` lists
        variables to write first inside each monomial.
        """
        if not self._terms:
            return "0"
        out = []
        for m in sorted(self._terms, key=key or _display_key):
            c = self._terms[m]
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not m:
                body = str(a)
            elif a == 1:
                body = _mono_str(m, factor_order)
            else:
                body = f"{a}*{_mono_str(m, factor_order)}"
            out.append((sign, body))
        first_sign, first = out[0]
        s = ("-" if first_sign == "-" else "") + first
        sep = " {} " if spaced else "{}"
        return s + "".join(sep.format(sg) + b for sg, b in out[1:])

    # arithmetic ----------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, (IntPoly, int)):
            return NotImplemented
        other = IntPoly.coerce(other)
        t = dict(self._terms)
        for m, c in other._terms.items():
            t[m] = t.get(m, 0) + c
        return IntPoly(t)

    __radd__ = __add__

    def __neg__(self):
        return IntPoly({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, (IntPoly, int)):
            return NotImplemented
        return self + (-IntPoly.coerce(other))

    def __rsub__(self, other):
        return IntPoly.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, (IntPoly, int)):
            return NotImplemented
        other = IntPoly.coerce(other)
        t: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _mono_mul(m1, m2)
                t[m] = t.get(m, 0) + c1 * c2
        return IntPoly(t)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers")
        result = IntPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # grading -------------------------------------------------------------
    def degrees(self) -> set[int]:
        return {_mono_degree(m) for m in self._terms}

    def degree(self) -> int:
        """Largest weighted degree of a term; -1 for the zero polynomial."""
        return max(self.degrees(), default=-1)

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def homogeneous_part(self, d: int) -> "IntPoly":
        return IntPoly({m: c for m, c in self._terms.items() if _mono_degree(m) == d})

    def variables(self) -> list[str]:
        idx = sorted({i for m in self._terms for i, _ in m})
        return [_VARIABLES[i].name for i in idx]

    def coefficient(self, m: Monomial) -> int:
        return self._terms.get(m, 0)

    def content(self) -> int:
        return math.gcd(*self._terms.values()) if self._terms else 0

    def coefficients_in(self, name: str) -> dict[int, "IntPoly"]:
        """Split as ``sum_k coeff_k * name^k``; returns ``{k: coeff_k}``."""
        i = _INDEX[name]
        out: dict[int, dict] = {}
        for m, c in self._terms.items():
            k = dict(m).get(i, 0)
            rest = tuple(p for p in m if p[0] != i)
            out.setdefault(k, {})[rest] = c
        return {k: IntPoly(t) for k, t in sorted(out.items())}

    def subs(self, mapping: Mapping[str, "IntPoly | int"]) -> "IntPoly":
        """Simultaneous substitution of variables by polynomials (no grading check)."""
        repl = {_INDEX[k]: IntPoly.coerce(v) for k, v in mapping.items()}
        result = IntPoly()
        power_cache: dict = {}
        for m, c in self._terms.items():
            term = IntPoly({tuple(p for p in m if p[0] not in repl): c})
            for i, e in m:
                if i in repl:
                    key = (i, e)
                    if key not in power_cache:
                        power_cache[key] = repl[i] ** e
                    term = term * power_cache[key]
            result = result + term
        return result

    def map_coefficients(self, f) -> "IntPoly":
        return IntPoly({m: f(c) for m, c in self._terms.items()})

    def exact_div(self, divisor: "IntPoly") -> "IntPoly | None":
        """Quotient ``q`` with ``self == q * divisor`` in Z[...], or None."""
        divisor = IntPoly.coerce(divisor)
        if not divisor:
            raise ZeroDivisionError("division by the zero polynomial")
        lead_m = min(divisor._terms, key=_display_key)
        lead_c = divisor._terms[lead_m]
        lead_exp = dict(lead_m)
        rem = self
        quot: dict = {}
        while rem:
            m = min(rem._terms, key=_display_key)
            c = rem._terms[m]
            exp = dict(m)
            if c % lead_c or any(exp.get(i, 0) < e for i, e in lead_exp.items()):
                return None
            qm = tuple(sorted((i, exp[i] - lead_exp.get(i, 0)) for i in exp
                              if exp[i] - lead_exp.get(i, 0)))
            qc = c // lead_c
            quot[qm] = quot.get(qm, 0) + qc
            rem = rem - IntPoly({qm: qc}) * divisor
        return IntPoly(quot)


def P(name: str) -> IntPoly:
    """Shorthand for the polynomial consisting of a single variable."""
    return IntPoly.var(name)


def poly_arith(a: IntPoly, b: IntPoly, op: str) -> IntPoly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def substitute(p: IntPoly, v: str, replacement: IntPoly) -> IntPoly:
    """Replace variable ``v`` by a homogeneous polynomial of the same degree."""
    replacement = IntPoly.coerce(replacement)
    d = variable(v).degree
    if replacement and (not replacement.is_homogeneous() or replacement.degree() != d):
        raise DegreeError(f"replacement {replacement} for {v} must be homogeneous of degree {d}")
    return p.subs({v: replacement})


@dataclass(frozen=True)
class RingPresentation:
    """Graded ring Z[variables] / (relations)."""

    variables: tuple[str, ...]
    relations: tuple[IntPoly, ...] = ()

    def __post_init__(self):
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("duplicate variable names")
        for v in self.variables:
            variable(v)
        for r in self.relations:
            if not r.is_homogeneous():
                raise NotHomogeneousError(f"relation {r} is not homogeneous")
            stray = set(r.variables()) - set(self.variables)
            if stray:
                raise ValueError(f"relation {r} uses variables outside the ring: {sorted(stray)}")

    def __str__(self):
        return f"Z[{','.join(self.variables)}]/({', '.join(map(str, self.relations))})"


def monomials_of_degree(d: int, ring: RingPresentation | Sequence[str]) -> list[Monomial]:
    """All monomials of weighted degree exactly ``d``, in display order."""
    names = ring.variables if isinstance(ring, RingPresentation) else tuple(ring)
    return list(_monomials_of_degree(d, tuple(sorted(_INDEX[n] for n in names))))


def _monomials_of_degree(d: int, idx: tuple[int, ...]):
    if d < 0:
        return []
    if any(_VARIABLES[i].degree <= 0 for i in idx):
        raise DegreeError("monomial enumeration needs strictly positive degrees")
    out = []

    def rec(k, remaining, acc):
        if k == len(idx):
            if remaining == 0:
                out.append(tuple(acc))
            return
        w = _VARIABLES[idx[k]].degree
        for e in range(remaining // w, -1, -1):
            rec(k + 1, remaining - e * w, acc + ([(idx[k], e)] if e else []))

    rec(0, d, [])
    return sorted(out, key=_display_key)


@dataclass(frozen=True)
class MembershipCertificate:
    """``query == sum(multiplier * generators[index])``."""

    query: IntPoly
    combiners: tuple[tuple[int, IntPoly], ...]

    def replay(self, gens: Sequence[IntPoly]) -> IntPoly:
        total = IntPoly()
        for i, q in self.combiners:
            total = total + q * gens[i]
        return total

    def check(self, gens: Sequence[IntPoly]) -> bool:
        return self.replay(gens) == self.query

    def __str__(self):
        if not self.combiners:
            return "0"
        return " + ".join(f"({q})*G{i}" for i, q in self.combiners)


def _check_homogeneous(polys: Iterable[IntPoly], what: str):
    for p in polys:
        if not p.is_homogeneous():
            raise NotHomogeneousError(f"{what} {p} is not homogeneous")


def ideal_member(p: IntPoly, gens: Sequence[IntPoly]) -> MembershipCertificate | None:
    """Decide ``p in (gens)`` for homogeneous data; certificate or None."""
    p = IntPoly.coerce(p)
    gens = [IntPoly.coerce(g) for g in gens]
    _check_homogeneous([p], "query")
    _check_homogeneous(gens, "generator")
    if not p:
        return MembershipCertificate(p, ())
    d = p.degree()
    names = set(p.variables())
    for g in gens:
        names.update(g.variables())
    idx = tuple(sorted(_INDEX[n] for n in names))

    columns: list[tuple[int, Monomial, dict]] = []
    for gi, g in enumerate(gens):
        if not g or g.degree() > d:
            continue
        for m in _monomials_of_degree(d - g.degree(), idx):
            prod = {_mono_mul(m, gm): c for gm, c in g.items()}
            columns.append((gi, m, prod))

    basis_monos = _monomials_of_degree(d, idx)
    pos = {m: k for k, m in enumerate(basis_monos)}
    lattice = LatticeBasis(len(basis_monos))
    for k, (_, _, prod) in enumerate(columns):
        vec = [0] * len(basis_monos)
        for m, c in prod.items():
            vec[pos[m]] = c
        lattice.add(vec, k)
    target = [0] * len(basis_monos)
    for m, c in p.items():
        target[pos[m]] = c
    combo = lattice.solve(target)
    if combo is None:
        return None
    mults: dict[int, dict] = {}
    for k, coeff in sorted(combo.items()):
        if coeff:
            gi, m, _ = columns[k]
            mults.setdefault(gi, {})[m] = coeff
    cert = MembershipCertificate(p, tuple((gi, IntPoly(t)) for gi, t in sorted(mults.items())))
    assert cert.check(gens), "lattice solve produced an invalid certificate"
    return cert


@dataclass(frozen=True)
class IdealComparison:
    """Outcome of comparing two ideals by two-way generator membership."""

    equal: bool
    a_in_b: tuple[MembershipCertificate | None, ...] = field(default=())
    b_in_a: tuple[MembershipCertificate | None, ...] = field(default=())

    def __bool__(self):
        return self.equal

    def failures(self) -> list[tuple[str, int]]:
        """``("A in B", i)`` for every generator i of A not in (B), and vice versa."""
        out = [("A in B", i) for i, c in enumerate(self.a_in_b) if c is None]
        out += [("B in A", i) for i, c in enumerate(self.b_in_a) if c is None]
        return out


def ideal_equal(gens_a: Sequence[IntPoly], gens_b: Sequence[IntPoly]) -> IdealComparison:
    a_in_b = tuple(ideal_member(g, gens_b) for g in gens_a)
    b_in_a = tuple(ideal_member(g, gens_a) for g in gens_b)
    ok = all(c is not None for c in a_in_b + b_in_a)
    return IdealComparison(ok, a_in_b, b_in_a)


def equal_mod(a: IntPoly, b: IntPoly, gens: Sequence[IntPoly]) -> bool:
    """``a == b`` modulo ``(gens)``; a non-homogeneous difference is compared degreewise."""
    diff = IntPoly.coerce(a) - IntPoly.coerce(b)
    return all(ideal_member(diff.homogeneous_part(d), gens) is not None
               for d in sorted(diff.degrees()))


def split_degrees(p: IntPoly) -> dict[int, IntPoly]:
    return {d: p.homogeneous_part(d) for d in sorted(p.degrees())}


# Z[b1, b2, g] / (2g, g^2 + b1 g)
b1, b2, g, h = P("b1"), P("b2"), P("g"), P("h")
BG_RELATIONS = (2 * g, g * g + b1 * g)
BG_RING = RingPresentation(("b1", "b2", "g"), BG_RELATIONS)

