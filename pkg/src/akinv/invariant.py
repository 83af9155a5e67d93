"""Minimal-degree witnesses and rewriting elements over the invariant ring.

Given x of minimal positive phi-degree n and c = D^n(x), every a in A
satisfies c^L * a = sum_l e_l * x^l with invariant coefficients e_l.  The
rewrite is computed by descending induction on deg_phi(a): subtract
D^{ln}(a) * x^l from c^l * a and recurse on the lower-degree remainder.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field

from .algebra import AlgebraElement, AlgebraError, PresentedAlgebra
from .expmap import ExponentialMap


class TrivialOnPool(AlgebraError):
    """Every element of the candidate pool is invariant."""


class PoolMinimumNotGlobal(AlgebraError):
    """A degree not divisible by n showed up, so the pool missed the true minimum."""


DEFAULT_POOL_DEGREE = 3


def default_pool(A: PresentedAlgebra, degree: int = DEFAULT_POOL_DEGREE) -> list[AlgebraElement]:
    """Generators, then all monomials in the generators of total degree 2..degree."""
    gens = A.gens
    pool = list(gens)
    seen = {g.rep for g in pool}
    for d in range(2, degree + 1):
        for combo in itertools.combinations_with_replacement(range(len(gens)), d):
            e = A.one()
            for i in combo:
                e = e * gens[i]
            if e.rep not in seen and e:
                seen.add(e.rep)
                pool.append(e)
    return pool


def minimal_positive_degree(phi: ExponentialMap, pool) -> tuple[AlgebraElement, int]:
    """First pool element of smallest positive phi-degree, with that degree."""
    best = None
    for a in pool:
        a = phi.algebra.element(a)
        d = phi.phi_degree(a)
        if d > 0 and (best is None or d < best[1]):
            best = (a, d)
    if best is None:
        raise TrivialOnPool("map acts trivially on pool")
    return best


@dataclass
class DivisibilityReport:
    n: int
    ok: bool
    degrees: dict = field(default_factory=dict)
    counterexamples: list = field(default_factory=list)

    @property
    def note(self) -> str:
        if self.ok:
            return "all degrees divisible"
        return "pool minimum is not the global minimum positive degree"


def check_degree_divisibility(phi: ExponentialMap, n: int, samples) -> DivisibilityReport:
    degrees = {}
    bad = []
    for a in samples:
        a = phi.algebra.element(a)
        if not a:
            continue
        d = phi.phi_degree(a)
        degrees[a] = d
        if d % n:
            bad.append((a, d))
    return DivisibilityReport(n, not bad, degrees, bad)


@dataclass
class InvariantRewrite:
    """c^power * a == sum(coefficients[l] * x^l), every coefficient invariant."""

    a: AlgebraElement
    x: AlgebraElement
    n: int
    c: AlgebraElement
    power: int
    coefficients: tuple
    #: phi-degree of the element handled at each induction step
    degrees: tuple = ()

    def reconstruct(self) -> AlgebraElement:
        A = self.a.owner
        out = A.zero()
        xp = A.one()
        for e in self.coefficients:
            out = out + e * xp
            xp = xp * self.x
        return out

    def check(self, phi: ExponentialMap | None = None) -> bool:
        ok = self.c**self.power * self.a == self.reconstruct()
        if phi is not None:
            ok = ok and all(phi.is_invariant(e) for e in self.coefficients)
        return ok


def max_depth_default() -> int | None:
    v = os.environ.get("AKINV_REWRITE_MAX_DEPTH")
    return int(v) if v else None


def rewrite_in_invariants(
    phi: ExponentialMap,
    a,
    x,
    n: int | None = None,
    c=None,
    cancel: str = "top",
) -> InvariantRewrite:
    """Express c^L * a as a polynomial in x with invariant coefficients.

    The raw induction multiplies by c^l at every level, so its exponent can
    exceed deg_phi(a)/n.  ``cancel`` controls how common powers of c are
    divided back out of the coefficients (exact division of
    representatives, re-verified after each step):

    ``"top"``  (default) down to L = deg_phi(a)/n, the induction's top level;
    ``"full"`` as far as exact division allows;
    ``"none"`` keep the raw exponent.
    """
    if cancel not in ("top", "full", "none"):
        raise ValueError(f"unknown cancel mode {cancel!r}")
    A = phi.algebra
    a, x = A.element(a), A.element(x)
    if n is None:
        n = phi.phi_degree(x)
    if c is None:
        c = phi.derivation_coeff(x, n)
    c = A.element(c)
    if not c or not phi.is_invariant(c):
        raise AlgebraError(f"c = {c} must be a nonzero invariant")

    d0 = phi.phi_degree(a)
    limit = (max(d0, 0) // n) + 1
    cap = max_depth_default()
    if cap is not None:
        limit = min(limit, cap)

    # unwind the induction: c^{l_k} r_k = lead_k x^{l_k} + r_{k+1}
    steps = []
    degrees = []
    r = a
    while True:
        d = phi.phi_degree(r)
        degrees.append(d)
        if d <= 0:
            break
        if d % n:
            raise PoolMinimumNotGlobal(
                f"phi-degree {d} of {r} is not divisible by {n}: pool minimum not global"
            )
        if len(steps) >= limit:
            raise AssertionError(f"rewrite recursion exceeded {limit} steps")
        l = d // n
        lead = phi.derivation_coeff(r, d)
        nxt = c**l * r - lead * x**l
        if phi.phi_degree(nxt) > (l - 1) * n:
            raise AssertionError("induction step did not lower the phi-degree")
        steps.append((l, lead))
        r = nxt

    # fold back up: c^L r_k = sum e x^i, starting from the invariant remainder
    power = 0
    coeffs = {0: r} if r else {}
    for l, lead in reversed(steps):
        coeffs[l] = coeffs.get(l, A.zero()) + c**power * lead
        power += l

    L = max(coeffs) if coeffs else 0
    coefficients = tuple(coeffs.get(i, A.zero()) for i in range(L + 1))
    rw = InvariantRewrite(a, x, n, c, power, coefficients, tuple(degrees))
    if cancel != "none":
        rw = _cancel(rw, floor=max(d0, 0) // n if cancel == "top" else 0)
    return rw


def _cancel(rw: InvariantRewrite, floor: int = 0) -> InvariantRewrite:
    A = rw.a.owner
    while rw.power > floor:
        quotients = []
        for e in rw.coefficients:
            q = e.rep.divide_exact(rw.c.rep)
            if q is None:
                return rw
            quotients.append(A.element(q))
        smaller = InvariantRewrite(rw.a, rw.x, rw.n, rw.c, rw.power - 1, tuple(quotients), rw.degrees)
        if not smaller.check():
            return rw
        rw = smaller
    return rw
