"""Projective-bundle calculus on P(Sym^r E) for a rank-2 bundle E.

``s_r^j`` is the pushforward of ``h_1 h_2 ... h_j`` (one hyperplane class per
P E factor) along the multiplication map ``(P E)^j x P(Sym^{r-j} E) -> P(Sym^r E)``.
It satisfies

    s_r^0 = 1,  s_r^1 = h,
    s_r^{j+1} = (h + j c1) s_r^j + j (r + 1 - j) c2 s_r^{j-1},

so ``s_r^j`` is monic of degree j in h and {s_r^0, ..., s_r^r} is a basis over
the base ring, triangular with respect to {1, h, ..., h^r}.  Coefficients here
live in Z[c1, c2]; :func:`prymchow.chern.c_to_beta` specializes to E = V_G^dual.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .chern import BundleSpec, c_to_beta, chern_classes
from .polyring import DegreeError, IntPoly, P

h, h1, h2 = P("h"), P("h1"), P("h2")
c1, c2 = P("c1"), P("c2")

MAX_R = 4


@dataclass(frozen=True)
class SClassVec:
    """``sum_j coeffs[j] * s_r^j`` on P(Sym^r E)."""

    r: int
    coeffs: tuple[IntPoly, ...]

    def __post_init__(self):
        if not 0 <= self.r <= MAX_R:
            raise ValueError(f"r={self.r} outside 0..{MAX_R}")
        if len(self.coeffs) != self.r + 1:
            raise ValueError(f"need {self.r + 1} coefficients, got {len(self.coeffs)}")
        object.__setattr__(self, "coeffs", tuple(IntPoly.coerce(c) for c in self.coeffs))

    @classmethod
    def basis(cls, r: int, j: int) -> "SClassVec":
        if not 0 <= j <= r:
            raise ValueError(f"s_{r}^{j} does not exist")
        return cls(r, tuple(IntPoly.const(1 if k == j else 0) for k in range(r + 1)))

    @classmethod
    def zero(cls, r: int) -> "SClassVec":
        return cls(r, (IntPoly(),) * (r + 1))

    @classmethod
    def from_dict(cls, r: int, coeffs: dict) -> "SClassVec":
        return cls(r, tuple(IntPoly.coerce(coeffs.get(j, 0)) for j in range(r + 1)))

    def __add__(self, other: "SClassVec") -> "SClassVec":
        self._same_space(other)
        return SClassVec(self.r, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "SClassVec") -> "SClassVec":
        self._same_space(other)
        return SClassVec(self.r, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return SClassVec(self.r, tuple(-a for a in self.coeffs))

    def scale(self, c) -> "SClassVec":
        c = IntPoly.coerce(c)
        return SClassVec(self.r, tuple(c * a for a in self.coeffs))

    __rmul__ = scale

    def _same_space(self, other):
        if self.r != other.r:
            raise ValueError(f"classes on Sym^{self.r} and Sym^{other.r} cannot be combined")

    def map(self, f) -> "SClassVec":
        return SClassVec(self.r, tuple(f(a) for a in self.coeffs))

    def codimension(self) -> int | None:
        """Pure codimension if every term ``coeffs[j] * s^j`` has the same degree."""
        degs = set()
        for j, a in enumerate(self.coeffs):
            degs.update(d + j for d in a.degrees())
        if len(degs) > 1:
            return None
        return degs.pop() if degs else -1

    def is_homogeneous(self) -> bool:
        return self.codimension() is not None

    def to_h(self, basis: str = "c") -> IntPoly:
        total = IntPoly()
        for j, a in enumerate(self.coeffs):
            total = total + a * s_to_h(self.r, j, basis)
        return total

    def __str__(self):
        parts = []
        for j in range(self.r, -1, -1):
            a = self.coeffs[j]
            if not a:
                continue
            basis = f"s_{self.r}^{j}"
            if a == 1:
                parts.append(f"+{basis}")
            elif a == -1:
                parts.append(f"-{basis}")
            elif len(a.items()) == 1:
                txt = str(a)
                parts.append((txt if txt.startswith("-") else "+" + txt) + f"*{basis}")
            else:
                parts.append(f"+({a})*{basis}")
        if not parts:
            return "0"
        out = "".join(parts)
        return out[1:] if out.startswith("+") else out


@lru_cache(maxsize=None)
def s_to_h(r: int, j: int, basis: str = "c") -> IntPoly:
    """``s_r^j`` as a polynomial in h, c1, c2 (or h, b1, b2 when ``basis="beta"``)."""
    if not 0 <= j <= r:
        raise ValueError(f"s_{r}^{j} requires 0 <= j <= r")
    if basis == "beta":
        return c_to_beta(s_to_h(r, j))
    prev, cur = IntPoly(), IntPoly.const(1)  # s^{-1} (unused), s^0
    for k in range(j):
        prev, cur = cur, (h + k * c1) * cur + k * (r + 1 - k) * c2 * prev
    return cur


def h_to_s(r: int, k: int, basis: str = "c") -> SClassVec:
    """``h^k`` in the s_r basis, by triangular inversion of :func:`s_to_h`."""
    if k < 0:
        raise ValueError("negative power")
    if k > r:
        raise DegreeError(f"h^{k} has no s-basis expression on P(Sym^{r}) with k > r")
    return h_poly_to_s(r, h ** k, basis)


def h_poly_to_s(r: int, p: IntPoly, basis: str = "c") -> SClassVec:
    """Rewrite a polynomial in h (coefficients free of h) of h-degree <= r."""
    coeffs = [IntPoly() for _ in range(r + 1)]
    rest = p
    while rest:
        by_h = rest.coefficients_in("h")
        top = max(by_h)
        if top > r:
            raise DegreeError(f"h-degree {top} exceeds r={r}")
        a = by_h[top]
        coeffs[top] = coeffs[top] + a
        # s_r^top is monic in h
        rest = rest - a * s_to_h(r, top, basis)
    return SClassVec(r, tuple(coeffs))


def proj_relation(spec: BundleSpec, basis: str = "beta", var: str = "h") -> IntPoly:
    """``sum_i var^(n-i) c_i(spec)``, which vanishes on P(spec)."""
    x = P(var)
    cs = chern_classes(spec, basis)
    n = spec.rank
    return sum((x ** (n - i) * cs[i] for i in range(n + 1)), IntPoly())


def reduce_power(p: IntPoly, spec: BundleSpec, var: str, basis: str = "c") -> IntPoly:
    """Reduce the degree in ``var`` below rank(spec) using the projective-bundle relation."""
    n = spec.rank
    cs = chern_classes(spec, basis)
    # var^n = -sum_{i>=1} c_i var^(n-i)
    x = P(var)
    tail = -sum((x ** (n - i) * cs[i] for i in range(1, n + 1)), IntPoly())
    rest = p
    while True:
        by_x = rest.coefficients_in(var)
        top = max(by_x, default=0)
        if top < n:
            return rest
        a = by_x[top]
        rest = rest - a * x ** top + a * x ** (top - n) * tail


def reduce_biproj(p: IntPoly, spec: BundleSpec, basis: str = "c", order=("h1", "h2")) -> IntPoly:
    for var in order:
        p = reduce_power(p, spec, var, basis)
    return p


@dataclass(frozen=True)
class BiProjClass:
    """A class on P(W) x P(W), a polynomial in h1, h2 reduced below rank(W)."""

    poly: IntPoly
    rank: int

    def coefficient(self, a: int, b: int) -> IntPoly:
        by1 = self.poly.coefficients_in("h1")
        return by1.get(a, IntPoly()).coefficients_in("h2").get(b, IntPoly())

    def terms(self) -> dict[tuple[int, int], IntPoly]:
        out = {}
        for a, pa in self.poly.coefficients_in("h1").items():
            for b, pab in pa.coefficients_in("h2").items():
                out[(a, b)] = pab
        return out

    def __str__(self):
        return str(self.poly)


def diagonal_class(spec: BundleSpec, basis: str = "c") -> BiProjClass:
    """``[c(W) / ((1 - h1)(1 - h2))]`` in degree rank(W) - 1."""
    n = spec.rank
    if n < 2:
        raise ValueError("diagonal class needs rank >= 2")
    cs = chern_classes(spec, basis)
    total = IntPoly()
    d = n - 1
    for i in range(d + 1):
        for a in range(d - i + 1):
            total = total + cs[i] * h1 ** a * h2 ** (d - i - a)
    return BiProjClass(reduce_biproj(total, spec, basis), n)


def diagonal_push(spec: BundleSpec, k: int, basis: str = "c") -> BiProjClass:
    """``Delta_*(h^k) = h1^k * [Delta]``, reduced."""
    if not 0 <= k < spec.rank:
        raise ValueError(f"need 0 <= k < {spec.rank}")
    diag = diagonal_class(spec, basis)
    return BiProjClass(reduce_biproj(h1 ** k * diag.poly, spec, basis), spec.rank)
