"""Standard algebras with exponential maps used by the tests and experiment scripts."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .algebra import AlgebraElement, PresentedAlgebra, present
from .expmap import ExponentialMap, make_expmap
from .field import GF, QQ, Field


@dataclass
class Fixture:
    name: str
    algebra: PresentedAlgebra
    phi: ExponentialMap


def danielewski(n: int, field: Field = QQ) -> PresentedAlgebra:
    """k[x, y, z]/(x^n y - z^2 + 1)."""
    return present("x,y,z", [f"x^{n}*y - z^2 + 1"], field)


def danielewski_map(n: int, field: Field = QQ) -> ExponentialMap:
    """x -> x, z -> z + x^n t, y -> y + 2 z t + x^n t^2."""
    A = danielewski(n, field)
    return make_expmap(A, {"x": "x", "z": f"z + x^{n}*t", "y": f"y + 2*z*t + x^{n}*t^2"})


def translation(field: Field = QQ) -> ExponentialMap:
    return make_expmap(present("X", (), field), {"X": "X + t"})


def frobenius_translation() -> ExponentialMap:
    """X -> X + t^2 on F_2[X]; D^1 = 0 but the map is not trivial."""
    return make_expmap(present("X", (), GF(2)), {"X": "X + t^2"})


def triangular() -> ExponentialMap:
    """x -> x, y -> y + x t, z -> z + y t + x t^2/2 on Q[x, y, z]."""
    A = present("x,y,z")
    return make_expmap(A, {"x": "x", "y": "y + x*t", "z": "z + y*t + 1/2*x*t^2"})


def additive_f3() -> ExponentialMap:
    """X -> X + t + t^3 on F_3[X]; t + t^3 is an additive polynomial."""
    return make_expmap(present("X", (), GF(3)), {"X": "X + t + t^3"})


def all_fixtures() -> list[Fixture]:
    out = [Fixture("translation", *_pair(translation()))]
    for n in (1, 2, 3):
        out.append(Fixture(f"danielewski{n}/Q", *_pair(danielewski_map(n))))
    for n in (1, 2):
        out.append(Fixture(f"danielewski{n}/F5", *_pair(danielewski_map(n, GF(5)))))
    out.append(Fixture("frobenius/F2", *_pair(frobenius_translation())))
    out.append(Fixture("triangular", *_pair(triangular())))
    out.append(Fixture("additive/F3", *_pair(additive_f3())))
    return out


def _pair(phi: ExponentialMap):
    return phi.algebra, phi


def random_element(
    A: PresentedAlgebra, rng: random.Random, degree: int = 5, terms: int = 4, coeff: int = 5
) -> AlgebraElement:
    """Random combination of monomials in the generators, reduced to normal form; may be 0."""
    gens = A.variables
    f = A.ring.zero()
    for _ in range(rng.randint(1, terms)):
        d = rng.randint(0, degree)
        exp = [0] * len(gens)
        for _ in range(d):
            exp[rng.randrange(len(gens))] += 1
        c = rng.randint(-coeff, coeff) or 1
        f = f + A.ring.monomial(tuple(exp), c)
    return A.element(f)
