"""Specializing parameters to field values.

``find_good_point`` picks a point off the zero set of a product of
polynomials, ``sigma_hom`` evaluates the generators of one tensor factor at
a point of its variety, and ``push_expmap`` moves an exponential map on
A (x) B down to B along such an evaluation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping

from .algebra import AlgebraError, AlgebraHom, TensorAlgebra
from .expmap import AxiomViolation, ExponentialMap, IterativeReport, check_iterative, make_expmap
from .field import Field, Scalar
from .poly import PolyRing, Polynomial


class FieldTooSmall(AlgebraError):
    pass


class NotOnVariety(AlgebraError):
    def __init__(self, message, relation=None, value=None):
        super().__init__(message)
        self.relation = relation
        self.value = value


class PushError(AlgebraError):
    def __init__(self, message, violation=None, moves_A=()):
        super().__init__(message)
        self.violation = violation
        #: generators of the specialized factor that phi does not fix
        self.moves_A = tuple(moves_A)


@dataclass
class SpecializationPoint:
    values: dict  # parameter -> Scalar
    avoided: Polynomial
    witness: Scalar
    #: True when total degree < |F| already guaranteed a point exists
    guaranteed: bool = True

    def check(self) -> bool:
        w = Scalar(self.avoided.evaluate(self.values), self.avoided.field)
        return not w.is_zero() and w == self.witness


def _parameters(polys) -> list[str]:
    names: list[str] = []
    for f in polys:
        for n in f.ring.names:
            if n not in names:
                names.append(n)
    return names


def _q_points(k: int):
    """All k-tuples of naturals, ordered by max entry, then lexicographically."""
    if k == 0:
        yield ()
        return
    h = 0
    while True:
        for pt in itertools.product(range(h + 1), repeat=k):
            if max(pt) == h:
                yield pt
        h += 1


def find_good_point(avoid, field: Field | None = None) -> SpecializationPoint:
    """Deterministic point where every polynomial in ``avoid`` is nonzero."""
    avoid = list(avoid)
    if not avoid:
        raise ValueError("nothing to avoid: give at least one polynomial")
    F = field or avoid[0].field
    if any(f.field != F for f in avoid):
        raise AlgebraError("avoid-polynomials over different fields")
    if any(f.is_zero() for f in avoid):
        raise ValueError("cannot avoid the zero polynomial")
    params = _parameters(avoid)
    ring = PolyRing(F, params)
    product = ring.one()
    for f in avoid:
        product = product * f.lift(ring)
    p = F.characteristic
    guaranteed = p == 0 or product.total_degree() < p
    if p == 0:
        points = _q_points(len(params))
    else:
        # below the degree bound the first few points suffice; above it we
        # still search exhaustively before giving up
        points = itertools.product(range(p), repeat=len(params))
    for pt in points:
        values = {n: F.element(v) for n, v in zip(params, pt)}
        w = product.evaluate(values)
        if not F.is_zero(w):
            return SpecializationPoint(values, product, Scalar(w, F), guaranteed)
    raise FieldTooSmall(
        f"field too small: every point of F_{p}^{len(params)} is a zero of {product}"
    )


@dataclass
class Specialization(AlgebraHom):
    """sigma: A (x) B -> B; ``side`` names the factor sent to constants."""

    side: str = "left"


def sigma_hom(T: TensorAlgebra, values: Mapping, side: str = "left") -> Specialization:
    """T -> (other factor): generators of the ``side`` factor go to ``values``, the rest stay fixed.

    Values may be keyed by factor names or by the (possibly suffixed) tensor names.
    """
    if not isinstance(T, TensorAlgebra):
        raise AlgebraError("sigma_hom needs an algebra built by tensor()")
    A = T.factor(side)
    other_side = "right" if side == "left" else "left"
    B = T.factor(other_side)
    F = T.field
    vals = {}
    for n in A.variables:
        key = n if n in values else T.names_for(side)[n]
        if key not in values:
            raise AlgebraError(f"no value given for {n}")
        vals[n] = F(values[key])
    for r in A.relations:
        v = r.evaluate(vals)
        if not F.is_zero(v):
            raise NotOnVariety(f"values not on the variety: relation {r} evaluates to {v}", r, Scalar(v, F))
    images = {}
    for n, m in T.names_for(side).items():
        images[m] = B.element(B.ring.const(vals[n]))
    for n, m in T.names_for(other_side).items():
        images[m] = B.gen(n)
    return Specialization(T, B, images, {str(r): "0" for r in A.relations}, side)


@dataclass
class PushResult:
    psi: ExponentialMap
    iterative: IterativeReport
    moves_A: tuple = field(default_factory=tuple)


def push_expmap(phi: ExponentialMap, sigma: Specialization, bound: int = 6) -> PushResult:
    """psi = sigma o phi restricted to the kept factor B, with axioms and iterativity re-checked."""
    T = phi.algebra
    if not isinstance(T, TensorAlgebra) or sigma.source != T:
        raise AlgebraError("sigma must be defined on the map's tensor algebra")
    B = sigma.target
    A_side = sigma.side
    side = "right" if A_side == "left" else "left"
    moves = [
        n
        for n, m in T.names_for(A_side).items()
        if not phi.is_invariant(T.gen(m))
    ]
    images = {}
    for n, m in T.names_for(side).items():
        images[n] = sigma.apply_extended(phi.images[m])
    try:
        psi = make_expmap(B, images)
    except AxiomViolation as exc:
        note = ""
        if moves:
            note = f"; phi does not fix the specialized factor (moves {', '.join(moves)})"
        raise PushError(f"sigma.phi is not an exponential map: {exc}{note}", exc, moves) from exc
    rep = check_iterative(psi, B.gens, bound)
    return PushResult(psi, rep, tuple(moves))

