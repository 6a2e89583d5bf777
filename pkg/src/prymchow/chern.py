"""Chern-root calculus for bundles built out of a rank-2 bundle.

Roots are polynomials in the formal roots ``r1, r2`` (plus base variables).
Which rank-2 bundle ``r1, r2`` belong to is decided at reduction time:

* ``basis="beta"``: ``r1, r2`` are the roots of V_G, so ``r1 + r2 -> b1`` and
  ``r1 * r2 -> b2``; the roots of V_G^dual are ``-r1, -r2``.
* ``basis="c"``: ``r1, r2`` are the roots of an abstract bundle E with Chern
  classes ``c1, c2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .polyring import DegreeError, IntPoly, P, b1, b2

r1, r2 = P("r1"), P("r2")
c1, c2 = P("c1"), P("c2")

ELEMENTARY = {"beta": ("b1", "b2"), "c": ("c1", "c2")}


class NonSymmetricError(ValueError):
    def __init__(self, poly: IntPoly, remainder: IntPoly):
        self.poly = poly
        self.remainder = remainder
        super().__init__(f"not symmetric in r1, r2; p - swap(p) = {remainder}")


def swap_roots(p: IntPoly) -> IntPoly:
    return p.subs({"r1": r2, "r2": r1})


def is_symmetric(p: IntPoly) -> bool:
    return swap_roots(p) == p


@lru_cache(maxsize=None)
def _elementary_power(a: int, b: int) -> IntPoly:
    return (r1 + r2) ** a * (r1 * r2) ** b


def symmetric_reduce(p: IntPoly, basis: str = "beta") -> IntPoly:
    """Rewrite a symmetric polynomial in r1, r2 via elementary symmetric functions.

    Raises :class:`NonSymmetricError` carrying ``p - swap(p)`` otherwise.
    """
    remainder = p - swap_roots(p)
    if remainder:
        raise NonSymmetricError(p, remainder)
    e1_name, e2_name = ELEMENTARY[basis]
    E1, E2 = P(e1_name), P(e2_name)
    result = IntPoly()
    rest = p
    while rest:
        by_r1 = rest.coefficients_in("r1")
        a_plus_b = max(by_r1)
        by_r2 = by_r1[a_plus_b].coefficients_in("r2")
        b = max(by_r2)
        coeff = by_r2[b]
        # leading monomial r1^(a+b) r2^b has a+b >= b by symmetry
        a = a_plus_b - b
        if a < 0:
            raise NonSymmetricError(p, rest - swap_roots(rest))
        result = result + coeff * E1 ** a * E2 ** b
        rest = rest - coeff * _elementary_power(a, b)
    return result


def expand_elementary(p: IntPoly, basis: str = "beta") -> IntPoly:
    """Inverse of :func:`symmetric_reduce`: e1 -> r1 + r2, e2 -> r1 r2."""
    e1_name, e2_name = ELEMENTARY[basis]
    return p.subs({e1_name: r1 + r2, e2_name: r1 * r2})


def c_to_beta(p: IntPoly) -> IntPoly:
    """Specialize E = V_G^dual: c1 -> -b1, c2 -> b2."""
    return p.subs({"c1": -b1, "c2": b2})


@dataclass(frozen=True)
class BundleSpec:
    roots: tuple[IntPoly, ...]
    label: str

    @property
    def rank(self) -> int:
        return len(self.roots)

    def __str__(self):
        return self.label


def rank2(dual: bool = False) -> BundleSpec:
    return sym_roots(1, dual)


def sym_roots(n: int, dual: bool = False) -> BundleSpec:
    """Roots ``i*r1 + (n-i)*r2`` of Sym^n, negated for the dual."""
    if n < 1:
        raise ValueError("n must be >= 1")
    sign = -1 if dual else 1
    roots = tuple(sign * (i * r1 + (n - i) * r2) for i in range(n + 1))
    name = "Vdual" if dual else "V"
    label = name if n == 1 else f"Sym{n}({name})"
    return BundleSpec(roots, label)


def trivial(rank: int = 1) -> BundleSpec:
    return BundleSpec(tuple(IntPoly() for _ in range(rank)), "O" if rank == 1 else f"O^{rank}")


def twist(spec: BundleSpec, lineclass: IntPoly, label: str | None = None) -> BundleSpec:
    """Tensor with a line bundle of first Chern class ``lineclass``."""
    lineclass = IntPoly.coerce(lineclass)
    if lineclass and (not lineclass.is_homogeneous() or lineclass.degree() != 1):
        raise DegreeError(f"twisting class {lineclass} must be homogeneous of degree 1")
    return BundleSpec(tuple(x + lineclass for x in spec.roots),
                      label or f"{spec.label}(x)L[{lineclass}]")


def dual(spec: BundleSpec) -> BundleSpec:
    return BundleSpec(tuple(-x for x in spec.roots), f"{spec.label}^dual")


@lru_cache(maxsize=None)
def _total_chern_cached(roots: tuple[IntPoly, ...], basis: str) -> IntPoly:
    product = IntPoly.const(1)
    for x in roots:
        product = product * (1 + x)
    return symmetric_reduce(product, basis)


def total_chern(spec: BundleSpec, basis: str = "beta") -> IntPoly:
    return _total_chern_cached(spec.roots, basis)


def chern_component(spec: BundleSpec, i: int, basis: str = "beta") -> IntPoly:
    if not 0 <= i <= spec.rank:
        raise ValueError(f"c_{i} out of range for rank {spec.rank}")
    return total_chern(spec, basis).homogeneous_part(i)


def chern_classes(spec: BundleSpec, basis: str = "beta") -> list[IntPoly]:
    c = total_chern(spec, basis)
    return [c.homogeneous_part(i) for i in range(spec.rank + 1)]
