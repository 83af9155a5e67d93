from concurrent.futures import ThreadPoolExecutor
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from akinv.algebra import AlgebraError, present, tensor
from akinv.expmap import (
    AxiomViolation,
    NotLocallyNilpotent,
    ak_upper_bound,
    check_iterative,
    check_leibniz,
    eps1_automorphism,
    extend_to_tensor,
    from_lnd,
    identity_map,
    make_expmap,
    translation_maps,
)
from akinv.field import GF
from akinv.fixtures import all_fixtures, danielewski, danielewski_map, frobenius_translation, translation
from akinv.poly import NEG_INF

from strategies import polynomials

FIXTURES = all_fixtures()


def test_translation_accepted_and_rigid_part():
    psi = translation()
    X = psi.algebra.gen("X")
    assert not psi.is_invariant(X)
    assert psi.is_invariant(psi.algebra.element("7"))
    assert ak_upper_bound([psi], ["X", "X^2 + X", "3"]) == {
        psi.algebra.element("X"): False,
        psi.algebra.element("X^2 + X"): False,
        psi.algebra.element("3"): True,
    }


def test_x_plus_tx_rejected():
    G = present("X")
    with pytest.raises(AxiomViolation) as info:
        make_expmap(G, {"X": "X + t*X"})
    assert info.value.axiom == "comultiplication" and info.value.witness == "X"
    assert info.value.difference == G.ring_st("s*t*X")


def test_eps0_and_relation_failures():
    G = present("X")
    with pytest.raises(AxiomViolation) as info:
        make_expmap(G, {"X": "X + 1 + t"})
    assert info.value.axiom == "eps0"
    A = danielewski(1)
    with pytest.raises(AxiomViolation) as info:
        make_expmap(A, {"x": "x", "y": "y", "z": "z + x*t"})
    assert info.value.axiom == "relation"


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("field", [None, GF(5)])
def test_danielewski_accepted(n, field):
    phi = danielewski_map(n) if field is None else danielewski_map(n, field)
    A = phi.algebra
    assert phi.D("y", 2) == A.element(f"x^{n}")
    assert [phi.phi_degree(v) for v in ("z", "y", "x")] == [1, 2, 0]
    assert phi.is_invariant("x") and not phi.is_invariant("z")


@pytest.mark.parametrize("n", [1, 2, 3])
def test_from_lnd_danielewski(n):
    A = danielewski(n)
    phi = from_lnd(A, {"x": "0", "z": f"x^{n}", "y": "2*z"})
    assert phi.images == danielewski_map(n).images


def test_from_lnd_edge_cases():
    K = present("X")
    assert from_lnd(K, {"X": "0"}).is_trivial()
    with pytest.raises(NotLocallyNilpotent):
        from_lnd(K, {"X": "X"}, nilpotency_bound=10)
    with pytest.raises(AlgebraError):
        from_lnd(present("X", (), GF(3)), {"X": "1"})


def test_derivation_coefficients():
    psi = translation()
    A = psi.algebra
    for m in range(7):
        for i in range(m + 2):
            expected = A.element(f"{comb(m, i)}*X^{max(m - i, 0)}") if i <= m else A.zero()
            assert psi.D(f"X^{m}", i) == expected
    phi = danielewski_map(2)
    a = phi.algebra.element("y*z + x")
    assert phi.D(a, 0) == a


def test_degrees():
    assert danielewski_map(1).phi_degree("0") == NEG_INF
    assert frobenius_translation().phi_degree("X") == 2


def test_iterative_examples():
    psi = translation()
    assert check_iterative(psi, ["X", "X^3"], 6).ok
    fr = frobenius_translation()
    assert check_iterative(fr, ["X", "X^2"], 8).ok
    for i in range(1, 9, 2):
        assert fr.D("X", i).is_zero() and fr.D("X^2", i).is_zero()
    assert check_iterative(identity_map(danielewski(1)), ["x", "y*z"], 5).ok


def test_extend_to_tensor():
    psi = translation()
    T = tensor(psi.algebra, present("Y"))
    ext = extend_to_tensor(psi, T)
    assert str(ext.images["X"]) == "X + t" and str(ext.images["Y"]) == "Y"
    T1 = tensor(danielewski(1), present("w"))
    ext = extend_to_tensor(danielewski_map(1), T1)
    assert [ext.is_invariant(v) for v in ("x", "w", "y", "z")] == [True, True, False, False]
    ident = extend_to_tensor(identity_map(danielewski(1)), T1)
    assert ident.is_trivial()


def test_eps1():
    fwd, inv = eps1_automorphism(translation())
    assert str(fwd.images["X"]) == "X + 1" and str(inv.images["X"]) == "X - 1"
    fwd, inv = eps1_automorphism(identity_map(danielewski(1)))
    assert fwd.is_identity()
    fwd, inv = eps1_automorphism(danielewski_map(2))
    A = fwd.source
    assert fwd.images["z"] == A.element("z + x^2") and fwd.images["y"] == A.element("y + 2*z + x^2")
    assert fwd.compose(inv).is_identity()


def test_coordinate_translations():
    maps = translation_maps(present("X1,X2,X3"))
    assert len(maps) == 3
    for j, phi in enumerate(maps):
        for i, name in enumerate(("X1", "X2", "X3")):
            assert phi.phi_degree(name) == (1 if i == j else 0)
    bound = ak_upper_bound(maps, ["X1", "X1*X2", "5"])
    assert list(bound.values()) == [False, False, True]


def test_ak_upper_bound_soundness():
    fx = danielewski_map(2)
    A = fx.algebra
    invariant = [A.element(e) for e in ("x", "x^4 - 2", "1")]
    assert all(ak_upper_bound([fx], invariant).values())


def test_memo_cache_concurrent_queries():
    phi = danielewski_map(3)
    a = phi.algebra.element("y^3*z + x*y^2")
    with ThreadPoolExecutor(max_workers=8) as pool:
        results = list(pool.map(lambda i: phi.D(a, i % 7), range(200)))
    for i, r in enumerate(results):
        assert r == phi.D(a, i % 7)


# property tests on all fixtures
fixture_idx = st.integers(0, len(FIXTURES) - 1)


def _element(data, fx):
    return fx.algebra.element(data.draw(polynomials(fx.algebra.ring, max_terms=3, max_exp=2)))


@settings(max_examples=60, deadline=None)
@given(fixture_idx, st.data())
def test_degree_laws(k, data):
    fx = FIXTURES[k]
    phi = fx.phi
    a, b = _element(data, fx), _element(data, fx)
    assert phi.phi_degree(a * b) == phi.phi_degree(a) + phi.phi_degree(b)
    assert phi.phi_degree(a + b) <= max(phi.phi_degree(a), phi.phi_degree(b))
    if a:
        d = int(phi.phi_degree(a))
        for i in range(d + 1):
            assert phi.phi_degree(phi.D(a, i)) <= d - i
        assert phi.is_invariant(phi.D(a, d))
    if a * b and phi.is_invariant(a * b):
        assert phi.is_invariant(a) and phi.is_invariant(b)


@settings(max_examples=40, deadline=None)
@given(fixture_idx, st.data(), st.integers(0, 5))
def test_leibniz(k, data, n):
    fx = FIXTURES[k]
    assert check_leibniz(fx.phi, _element(data, fx), _element(data, fx), n)


@pytest.mark.parametrize("fx", FIXTURES, ids=[f.name for f in FIXTURES])
def test_minimal_degree_derivations(fx):
    from akinv.invariant import default_pool, minimal_positive_degree

    phi = fx.phi
    x, n = minimal_positive_degree(phi, default_pool(fx.algebra))
    p = fx.algebra.characteristic
    for i in range(1, 3 * n + 4):
        assert phi.is_invariant(phi.D(x, i))
        if p and (i & (i - 1) if p == 2 else not _is_power(i, p)):
            assert phi.D(x, i).is_zero()


def _is_power(i, p):
    while i % p == 0:
        i //= p
    return i == 1
