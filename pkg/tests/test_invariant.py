import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from akinv.algebra import present
from akinv.expmap import make_expmap
from akinv.fixtures import all_fixtures, danielewski_map, frobenius_translation, random_element, translation
from akinv.invariant import (
    PoolMinimumNotGlobal,
    TrivialOnPool,
    check_degree_divisibility,
    default_pool,
    minimal_positive_degree,
    rewrite_in_invariants,
)

FIXTURES = all_fixtures()


def test_minimal_degree_examples():
    phi = danielewski_map(1)
    x, n = minimal_positive_degree(phi, phi.algebra.gens)
    assert (str(x), n) == ("z", 1)
    psi = translation()
    assert [str(v) for v in minimal_positive_degree(psi, ["X"])] == ["X", "1"]
    fr = frobenius_translation()
    x, n = minimal_positive_degree(fr, ["X", "X^3"])
    assert (str(x), n) == ("X", 2)


def test_trivial_on_pool():
    phi = danielewski_map(1)
    with pytest.raises(TrivialOnPool):
        minimal_positive_degree(phi, ["x", "x^2 + 1"])


def test_degree_divisibility():
    fr = frobenius_translation()
    rep = check_degree_divisibility(fr, 2, [f"X^{k}" for k in range(7)])
    assert rep.ok and all(d == 2 * k for k, d in enumerate(rep.degrees.values()))
    assert check_degree_divisibility(translation(), 1, ["X", "X^5"]).ok
    phi = danielewski_map(2)
    assert check_degree_divisibility(phi, 1, ["y", "z", "x*y"]).ok
    bad = check_degree_divisibility(phi, 2, ["y", "z"])
    assert not bad.ok and [str(a) for a, _ in bad.counterexamples] == ["z"]


def test_rewrite_two_step_example():
    A = present("v,x")
    phi = make_expmap(A, {"v": "v", "x": "x + v*t"})
    rw = rewrite_in_invariants(phi, "x^2 + x", "x", 1)
    assert rw.power == 2 and str(rw.c) == "v"
    assert [str(e) for e in rw.coefficients] == ["0", "v^2", "v^2"]
    assert rw.check(phi)


def test_rewrite_invariant_input():
    phi = danielewski_map(1)
    rw = rewrite_in_invariants(phi, "x^3 + 2", "z", 1)
    assert rw.power == 0 and [str(e) for e in rw.coefficients] == ["x^3 + 2"]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_rewrite_danielewski_y(n):
    phi = danielewski_map(n)
    rw = rewrite_in_invariants(phi, "y", "z", 1)
    assert rw.c == phi.algebra.element(f"x^{n}") and rw.power == 2
    assert rw.check(phi)
    # x^(2n) y = x^n z^2 - x^n
    A = phi.algebra
    assert list(rw.coefficients) == [A.element(f"-x^{n}"), A.zero(), A.element(f"x^{n}")]


def test_pool_minimum_not_global():
    # taking x = y (degree 2) as if it were minimal; z has odd degree
    phi = danielewski_map(1)
    with pytest.raises(PoolMinimumNotGlobal):
        rewrite_in_invariants(phi, "z", "y", 2)


@pytest.mark.parametrize("fx", FIXTURES, ids=[f.name for f in FIXTURES])
def test_rewrite_random(fx):
    rng = random.Random(fx.name)
    x, n = minimal_positive_degree(fx.phi, default_pool(fx.algebra))
    for _ in range(15):
        a = random_element(fx.algebra, rng, degree=4)
        rw = rewrite_in_invariants(fx.phi, a, x, n)
        assert rw.check(fx.phi)
        degs = list(rw.degrees)
        for hi, lo in zip(degs, degs[1:]):
            assert lo <= hi - n or lo <= 0


@pytest.mark.parametrize("cancel", ["top", "full", "none"])
def test_cancel_modes_reconstruct(cancel):
    phi = danielewski_map(2)
    for a in ("y", "y*z", "y^2 + z^3"):
        assert rewrite_in_invariants(phi, a, "z", 1, cancel=cancel).check(phi)


# algebraic closedness of the invariant ring, in contrapositive form
@settings(max_examples=40, deadline=None)
@given(st.integers(0, len(FIXTURES) - 1), st.randoms(use_true_random=False), st.integers(1, 3))
def test_invariant_ring_algebraically_closed(k, rnd, deg):
    fx = FIXTURES[k]
    phi = fx.phi
    A = fx.algebra
    x, _ = minimal_positive_degree(phi, default_pool(A, 2))
    inv_pool = [e for e in default_pool(A, 3) if phi.is_invariant(e)] + [A.one()]
    a = x if rnd.random() < 0.5 else x * x + x
    cs = [rnd.choice(inv_pool) * rnd.randint(-2, 2) for _ in range(deg + 1)]
    total = A.zero()
    for i, c in enumerate(cs):
        total = total + c * a**i
    if any(c for c in cs[1:]):
        assert not phi.is_invariant(total)
    else:
        assert phi.is_invariant(total)
