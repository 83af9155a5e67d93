"""Exponential maps phi: A -> A[t] and their higher derivations.

An exponential map is stored by the images of the generators.  Construction
verifies the two axioms exactly:

* evaluation at t = 0 gives back every generator;
* phi_s(phi_t(g)) == phi_{s+t}(g) in A[s, t] for every generator g;

together with preservation of the defining relations.  Since phi is a
homomorphism determined by generator images, checks on generators suffice.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Iterable, Mapping

from .algebra import AlgebraElement, AlgebraError, AlgebraHom, PresentedAlgebra, TensorAlgebra, hom
from .field import binomial_in
from .poly import NEG_INF, Polynomial


class AxiomViolation(AlgebraError):
    """A proposed map fails one of the exponential-map axioms.

    ``axiom`` is ``"eps0"``, ``"relation"`` or ``"comultiplication"``;
    ``witness`` names the generator or relation; ``difference`` is the
    nonzero normal form that should have vanished.
    """

    def __init__(self, axiom: str, witness: str, difference: Polynomial, message: str = ""):
        self.axiom = axiom
        self.witness = witness
        self.difference = difference
        super().__init__(message or f"{axiom} axiom fails at {witness}: residue {difference}")


class NotLocallyNilpotent(AlgebraError):
    pass


@dataclass(frozen=True)
class AxiomRecord:
    eps0: bool = True
    relations: bool = True
    comultiplication: bool = True
    checked_generators: tuple = ()
    checked_relations: tuple = ()


class ExponentialMap:
    """A verified exponential map; build with :func:`make_expmap`."""

    def __init__(self, algebra: PresentedAlgebra, images: dict, record: AxiomRecord):
        self.algebra = algebra
        #: generator name -> normal form of phi(generator) over A[t]
        self.images = images
        self.verified = record
        self._cache: dict = {}
        self._lock = threading.Lock()

    def __repr__(self):
        return f"ExponentialMap({self})"

    def __str__(self):
        return "{" + ", ".join(f"{n} -> {f}" for n, f in self.images.items()) + "}"

    @property
    def ring_t(self):
        return self.algebra.ring_t

    def _element(self, a) -> AlgebraElement:
        return self.algebra.element(a)

    def apply(self, a) -> Polynomial:
        """phi(a) as a normal-form polynomial over A[t]."""
        a = self._element(a)
        key = a.rep
        with self._lock:
            hit = self._cache.get(key)
        if hit is not None:
            return hit
        out = apply_images(self.algebra, self.images, a.rep)
        with self._lock:
            self._cache.setdefault(key, out)
        return out

    __call__ = apply

    def derivation_coeff(self, a, i: int) -> AlgebraElement:
        """D^i(a), the t^i coefficient of phi(a)."""
        return AlgebraElement(self.algebra, self.apply(a).coeff_in("t", i).lift(self.algebra.ring))

    D = derivation_coeff

    def phi_degree(self, a):
        """deg_t(phi(a)); ``-inf`` for a = 0."""
        return self.apply(a).degree_in("t")

    def is_invariant(self, a) -> bool:
        a = self._element(a)
        return self.apply(a) == a.rep.lift(self.ring_t)

    def is_trivial(self) -> bool:
        return all(f.degree_in("t") <= 0 for f in self.images.values())


def apply_images(A: PresentedAlgebra, images: Mapping[str, Polynomial], f: Polynomial) -> Polynomial:
    ring = A.ring_t
    if f.ring != A.ring:
        f = f.lift(A.ring)
    return A.reduce(f.substitute(images, ring))


def _coerce_images(A: PresentedAlgebra, images: Mapping) -> dict:
    ring = A.ring_t
    missing = [n for n in A.variables if n not in images]
    if missing:
        raise AlgebraError(f"no image given for {', '.join(missing)}")
    extra = [n for n in images if n not in A.variables]
    if extra:
        raise AlgebraError(f"images given for unknown generators {', '.join(extra)}")
    out = {}
    for n in A.variables:
        v = images[n]
        if isinstance(v, AlgebraElement):
            v = v.rep
        out[n] = A.reduce(ring(v))
    return out


def verify_axioms(A: PresentedAlgebra, images: dict) -> AxiomRecord:
    """Raise :class:`AxiomViolation` on the first failing axiom, else return the record."""
    ring_t = A.ring_t
    ring_st = A.ring_st
    zero_t = {"t": ring_t.zero()}
    for n, img in images.items():
        at0 = img.substitute(zero_t, ring_t)
        diff = A.reduce(at0 - ring_t.gen(n))
        if diff:
            raise AxiomViolation("eps0", n, diff, f"eps0 fails at generator {n}: phi({n})|t=0 - {n} = {diff}")
    for r in A.relations:
        image = apply_images(A, images, r)
        if image:
            raise AxiomViolation(
                "relation", str(r), image, f"relation {r} is not preserved: its image reduces to {image}"
            )
    # phi_s: generators -> images with t renamed s, and t fixed
    s, t = ring_st.gen("s"), ring_st.gen("t")
    phi_s = {n: img.substitute({"t": s}, ring_st) for n, img in images.items()}
    phi_s["t"] = t
    shift = {"t": s + t}
    for n, img in images.items():
        lhs = A.reduce(img.substitute(phi_s, ring_st))
        rhs = A.reduce(img.substitute(shift, ring_st))
        diff = lhs - rhs
        if diff:
            raise AxiomViolation(
                "comultiplication",
                n,
                diff,
                f"phi_s phi_t({n}) - phi_(s+t)({n}) = {diff}",
            )
    return AxiomRecord(
        checked_generators=tuple(images), checked_relations=tuple(str(r) for r in A.relations)
    )


def make_expmap(A: PresentedAlgebra, images: Mapping) -> ExponentialMap:
    """Verified exponential map from generator images (polynomials or text over A[t])."""
    imgs = _coerce_images(A, images)
    return ExponentialMap(A, imgs, verify_axioms(A, imgs))


def identity_map(A: PresentedAlgebra) -> ExponentialMap:
    return make_expmap(A, {n: A.ring_t.gen(n) for n in A.variables})


def translation_maps(A: PresentedAlgebra) -> list[ExponentialMap]:
    """phi_i(X_j) = X_j + delta_ij t on a free polynomial algebra."""
    if not A.is_free:
        raise AlgebraError("coordinate translations need a free polynomial algebra")
    R = A.ring_t
    t = R.gen("t")
    return [
        make_expmap(A, {m: R.gen(m) + (t if m == n else 0) for m in A.variables}) for n in A.variables
    ]


def apply_derivation(A: PresentedAlgebra, images: Mapping[str, Polynomial], f: Polynomial) -> Polynomial:
    """D(f) = sum_j df/dX_j * D(X_j), reduced modulo the relations."""
    out = A.ring.zero()
    for n in A.variables:
        d = f.diff(n)
        if d:
            out = out + d * images[n]
    return A.reduce(out)


def from_lnd(A: PresentedAlgebra, derivation_images: Mapping, nilpotency_bound: int = 32) -> ExponentialMap:
    """exp(t*D) for a locally nilpotent derivation D given on generators (characteristic 0 only)."""
    if A.characteristic != 0:
        raise AlgebraError(
            "from_lnd needs characteristic 0; give the exponential map directly in characteristic p"
        )
    missing = [n for n in A.variables if n not in derivation_images]
    if missing:
        raise AlgebraError(f"no derivation image for {', '.join(missing)}")
    dimg = {}
    for n in A.variables:
        v = derivation_images[n]
        dimg[n] = A.reduce(A.ring(v.rep if isinstance(v, AlgebraElement) else v))
    for r in A.relations:
        dr = apply_derivation(A, dimg, r)
        if dr:
            raise AxiomViolation("relation", str(r), dr, f"derivation does not preserve relation {r}: D(r) = {dr}")
    R = A.ring_t
    t = R.gen("t")
    images = {}
    for n in A.variables:
        term = A.ring.gen(n)
        acc = R.zero()
        for i in range(nilpotency_bound + 1):
            if not term:
                break
            if i == nilpotency_bound:
                raise NotLocallyNilpotent(
                    f"D^{i}({n}) = {term} is nonzero: not locally nilpotent within bound {nilpotency_bound}"
                )
            acc = acc + term.lift(R) * t**i * Fraction(1, factorial(i))
            term = apply_derivation(A, dimg, term)
        images[n] = acc
    return make_expmap(A, images)


# -- property checks ------------------------------------------------------

@dataclass
class IterativeReport:
    ok: bool
    bound: int
    checked: int
    failures: list = field(default_factory=list)  # (element, i, j)


def check_iterative(phi: ExponentialMap, samples: Iterable, bound: int) -> IterativeReport:
    """Check D^i D^j = C(i+j, i) D^{i+j} on every sample for i + j <= bound."""
    A = phi.algebra
    F = A.field
    failures = []
    checked = 0
    for a in samples:
        a = A.element(a)
        for j in range(bound + 1):
            dj = phi.derivation_coeff(a, j)
            for i in range(bound - j + 1):
                lhs = phi.derivation_coeff(dj, i)
                rhs = phi.derivation_coeff(a, i + j).rep.scale(binomial_in(F, i + j, i))
                checked += 1
                if lhs.rep != rhs:
                    failures.append((a, i, j))
    return IterativeReport(not failures, bound, checked, failures)


def check_leibniz(phi: ExponentialMap, a, b, n: int) -> bool:
    A = phi.algebra
    a, b = A.element(a), A.element(b)
    lhs = phi.derivation_coeff(a * b, n)
    rhs = A.zero()
    for i in range(n + 1):
        rhs = rhs + phi.derivation_coeff(a, i) * phi.derivation_coeff(b, n - i)
    return lhs == rhs


def extend_to_tensor(phi: ExponentialMap, T: TensorAlgebra, side: str = "left") -> ExponentialMap:
    """phi(sum a_i (x) b_i) = sum phi(a_i) (x) b_i on T = A (x) B (or B (x) A with side="right")."""
    if not isinstance(T, TensorAlgebra):
        raise AlgebraError("extend_to_tensor needs an algebra built by tensor()")
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    if T.factor(side) != phi.algebra:
        raise AlgebraError(f"the {side} factor of the tensor product is not the map's algebra")
    R = T.ring_t
    names = T.names_for(side)
    mapping = dict(names)
    images = {m: R.gen(m) for m in T.variables}
    for n, img in phi.images.items():
        images[names[n]] = T.reduce(img.rename(mapping, R))
    return make_expmap(T, images)


def eps1_automorphism(phi: ExponentialMap) -> tuple[AlgebraHom, AlgebraHom]:
    """(a -> phi(a)|t=1, its inverse a -> phi_{-t}(a)|t=1), both checked as homs and mutual inverses."""
    A = phi.algebra
    R = A.ring
    one = {"t": R.one()}
    minus = {"t": -R.one()}
    fwd = hom(A, A, {n: A.reduce(img.substitute(one, R)) for n, img in phi.images.items()})
    inv = hom(A, A, {n: A.reduce(img.substitute(minus, R)) for n, img in phi.images.items()})
    if not fwd.compose(inv).is_identity() or not inv.compose(fwd).is_identity():
        raise AssertionError("eps1 automorphism and its inverse do not compose to the identity")
    return fwd, inv


def invariant_under_all(maps: Iterable[ExponentialMap], a) -> bool:
    """Membership in the intersection of the invariant rings of ``maps``."""
    return all(phi.is_invariant(a) for phi in maps)


def ak_upper_bound(maps: Iterable[ExponentialMap], elements: Iterable) -> dict:
    """For each element, whether it survives in the intersection of the given invariant rings.

    ak(A) is contained in that intersection, so a False entry proves the
    element is not in ak(A); True entries are only consistent with membership.
    """
    maps = list(maps)
    if not maps:
        raise ValueError("need at least one exponential map")
    A = maps[0].algebra
    if any(phi.algebra != A for phi in maps):
        raise AlgebraError("all maps must act on the same algebra")
    return {A.element(a): invariant_under_all(maps, a) for a in elements}


def degree_str(d) -> str:
    return "-inf" if d == NEG_INF else str(d)
