"""Independent reference computations, built only on sympy and plain integers."""

from __future__ import annotations

import itertools
from math import comb

import sympy

Y = sympy.Symbol("y")


def lucas_binomial(n: int, r: int, p: int) -> int:
    """C(n, r) mod p through the exact integer, as the slow reference."""
    return comb(n, r) % p


def _products(gens, N):
    """All products of generators of y-degree <= N (as sympy Polys), constants included."""
    degs = [g.degree() for g in gens]
    out = [sympy.Poly(1, Y, domain=gens[0].domain)]
    ranges = [range(N // d + 1) for d in degs]
    for alpha in itertools.product(*ranges):
        if sum(a * d for a, d in zip(alpha, degs)) > N or not any(alpha):
            continue
        p = sympy.Poly(1, Y, domain=gens[0].domain)
        for g, a in zip(gens, alpha):
            p = p * g**a
        out.append(p)
    return out


def _vec(p, N):
    c = p.all_coeffs()[::-1]
    return list(c) + [0] * (N + 1 - len(c))


def conductor_q(gen_strs, max_degree: int = 8, window: int = 10):
    """Monic gcd of all f with deg f <= max_degree and y^j f in A for 0 <= j <= window.

    Works over Q with sympy linear algebra; returns None when nothing passes.
    """
    gens = [sympy.Poly(sympy.sympify(s.replace("^", "**")), Y, domain="QQ") for s in gen_strs]
    gens = [g for g in gens if g.degree() > 0]
    N = max_degree + window
    if gens:
        span = sympy.Matrix([_vec(p, N) for p in _products(gens, N)]).T
    else:
        span = sympy.Matrix([_vec(sympy.Poly(1, Y, domain="QQ"), N)]).T
    # rows of `ann` cut out the span: v in A_N iff ann * v == 0
    ann = sympy.Matrix.hstack(*span.T.nullspace()).T if span.rank() < N + 1 else sympy.zeros(0, N + 1)
    blocks = []
    for j in range(window + 1):
        shift = sympy.zeros(N + 1, max_degree + 1)
        for i in range(max_degree + 1):
            shift[i + j, i] = 1
        blocks.append(ann * shift)
    if ann.rows == 0:
        return sympy.Poly(1, Y, domain="QQ")
    M = sympy.Matrix.vstack(*blocks)
    basis = M.nullspace()
    if not basis:
        return None
    g = sympy.Poly(0, Y, domain="QQ")
    for v in basis:
        g = sympy.gcd(g, sympy.Poly(list(v)[::-1], Y, domain="QQ"))
    return g.monic()


def _rank_mod_p(rows, p):
    rows = [[x % p for x in r] for r in rows]
    rank, col = 0, 0
    ncols = len(rows[0]) if rows else 0
    while rank < len(rows) and col < ncols:
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        rows[rank] = [x * inv % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                f = rows[i][col]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


def _polymul_p(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return out


def conductor_fp_bruteforce(gen_coeffs, p: int, max_degree: int = 4, window: int = 8):
    """Brute force over F_p: enumerate every monic f of degree <= max_degree.

    ``gen_coeffs`` are coefficient lists, lowest degree first.  Returns the
    coefficient list of the monic gcd of all passers, or None.
    """
    N = max_degree + window
    degs = [len(g) - 1 for g in gen_coeffs]
    span = [[1] + [0] * N]
    for alpha in itertools.product(*[range(N // d + 1) for d in degs]):
        if not any(alpha) or sum(a * d for a, d in zip(alpha, degs)) > N:
            continue
        prod = [1]
        for g, a in zip(gen_coeffs, alpha):
            for _ in range(a):
                prod = _polymul_p(prod, g, p)
        span.append(prod + [0] * (N + 1 - len(prod)))
    base = _rank_mod_p(span, p)

    def member(v):
        return _rank_mod_p(span + [v], p) == base

    passers = []
    for d in range(max_degree + 1):
        for low in itertools.product(range(p), repeat=d):
            f = list(low) + [1]
            if all(member([0] * j + f + [0] * (N + 1 - j - len(f))) for j in range(window + 1)):
                passers.append(f)
    if not passers:
        return None
    x = sympy.Symbol("x")
    g = sympy.Poly(0, x, modulus=p)
    for f in passers:
        g = sympy.gcd(g, sympy.Poly(f[::-1], x, modulus=p))
    g = g.monic()
    return [int(c) % p for c in g.all_coeffs()[::-1]]
