import sys
from pathlib import Path

from hypothesis import settings, strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from prymchow.polyring import IntPoly, monomials_of_degree  # noqa: E402

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

BASE = ("b1", "b2", "g")


@st.composite
def homogeneous(draw, names=BASE, min_degree=0, max_degree=3, coeffs=st.integers(-9, 9)):
    d = draw(st.integers(min_degree, max_degree))
    monos = monomials_of_degree(d, names)
    cs = draw(st.lists(coeffs, min_size=len(monos), max_size=len(monos)))
    return IntPoly(dict(zip(monos, cs)))


def polys(names=BASE, max_degree=3):
    return st.lists(homogeneous(names, max_degree=max_degree), min_size=1, max_size=3).map(
        lambda ps: sum(ps, IntPoly()))
