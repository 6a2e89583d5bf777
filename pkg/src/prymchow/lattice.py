"""Integer row-echelon (Hermite) bases that remember how each row was built.

A :class:`LatticeBasis` accumulates integer vectors, each tagged with a label,
and keeps an echelon basis of their Z-span.  Every basis row carries the
integer combination of labelled inputs that produces it, so a successful
:meth:`LatticeBasis.solve` returns an explicit witness.
"""

from __future__ import annotations


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    """``(g, x, y)`` with ``g = x*a + y*b = gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def _lincomb(x: int, u: list[int], y: int, v: list[int]) -> list[int]:
    return [x * a + y * b for a, b in zip(u, v)]


def _combo_lincomb(x: int, cu: dict, y: int, cv: dict) -> dict:
    out = {}
    for k in cu.keys() | cv.keys():
        c = x * cu.get(k, 0) + y * cv.get(k, 0)
        if c:
            out[k] = c
    return out


class LatticeBasis:
    """Echelon basis of the Z-span of vectors of fixed length ``n``."""

    def __init__(self, n: int):
        self.n = n
        # pivot column -> (row vector with positive pivot entry, combination)
        self.rows: dict[int, tuple[list[int], dict]] = {}

    def add(self, vec, label) -> None:
        if len(vec) != self.n:
            raise ValueError(f"expected length {self.n}, got {len(vec)}")
        self._insert(list(vec), {label: 1})

    def _insert(self, v: list[int], cv: dict) -> None:
        while True:
            p = next((i for i, a in enumerate(v) if a), None)
            if p is None:
                return
            if p not in self.rows:
                if v[p] < 0:
                    v = [-a for a in v]
                    cv = {k: -c for k, c in cv.items()}
                self.rows[p] = (v, cv)
                return
            u, cu = self.rows[p]
            a, b = u[p], v[p]
            gcd, x, y = _egcd(a, b)
            # [[x, y], [-b/g, a/g]] is unimodular
            new_u = _lincomb(x, u, y, v)
            new_cu = _combo_lincomb(x, cu, y, cv)
            v = _lincomb(-b // gcd, u, a // gcd, v)
            cv = _combo_lincomb(-b // gcd, cu, a // gcd, cv)
            self.rows[p] = (new_u, new_cu)

    def reduce(self) -> None:
        """Bring the basis to Hermite normal form (entries above pivots reduced)."""
        pivots = sorted(self.rows)
        for j, p in enumerate(pivots):
            piv, cp = self.rows[p]
            for q in pivots[:j]:
                u, cu = self.rows[q]
                k = u[p] // piv[p]
                if k:
                    self.rows[q] = (_lincomb(1, u, -k, piv), _combo_lincomb(1, cu, -k, cp))

    def hermite_rows(self) -> list[list[int]]:
        self.reduce()
        return [list(self.rows[p][0]) for p in sorted(self.rows)]

    def rank(self) -> int:
        return len(self.rows)

    def solve(self, target) -> dict | None:
        """Integer combination of the added labels equal to ``target``, or None."""
        if len(target) != self.n:
            raise ValueError(f"expected length {self.n}, got {len(target)}")
        t = list(target)
        combo: dict = {}
        for p in sorted(self.rows):
            if not t[p]:
                continue
            u, cu = self.rows[p]
            q, r = divmod(t[p], u[p])
            if r:
                return None
            t = _lincomb(1, t, -q, u)
            combo = _combo_lincomb(1, combo, q, cu)
        if any(t):
            return None
        return combo
