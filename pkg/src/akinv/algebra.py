"""Finitely presented algebras k[X]/I, their elements, homomorphisms and tensor products."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .field import QQ, Field, FieldError
from .groebner import GroebnerBasis, buchberger
from .poly import GREVLEX, RESERVED, MonomialOrder, PolyRing, Polynomial


class AlgebraError(ValueError):
    pass


class ZeroAlgebraError(AlgebraError):
    """The relations generate the unit ideal."""


class HomError(AlgebraError):
    """A proposed homomorphism does not respect the source relations."""

    def __init__(self, message, relation=None, image=None):
        super().__init__(message)
        self.relation = relation
        self.image = image


class PresentedAlgebra:
    """A = k[variables]/I with I stored as a reduced Groebner basis.

    Domain-ness of A is assumed, never checked.
    """

    def __init__(self, ring: PolyRing, relations: GroebnerBasis):
        self.ring = ring
        self.relations = relations
        self._extended: dict = {}

    @property
    def field(self) -> Field:
        return self.ring.field

    @property
    def characteristic(self) -> int:
        return self.ring.field.characteristic

    @property
    def variables(self) -> tuple:
        return self.ring.names

    @property
    def is_free(self) -> bool:
        return len(self.relations) == 0

    def __eq__(self, other):
        return (
            isinstance(other, PresentedAlgebra)
            and self.ring == other.ring
            and self.relations.generators == other.relations.generators
        )

    def __hash__(self):
        return hash((self.ring, self.relations.generators))

    def __repr__(self):
        rels = ", ".join(str(g) for g in self.relations)
        return f"{self.ring!r}/({rels})"

    # -- rings of deformations --------------------------------------------
    def extended_ring(self, names: tuple = ("t",)) -> PolyRing:
        """A[names] as a polynomial ring, extra variables appended last."""
        return self._gb_for(tuple(names)).ring

    @property
    def ring_t(self) -> PolyRing:
        return self.extended_ring(("t",))

    @property
    def ring_st(self) -> PolyRing:
        return self.extended_ring(("s", "t"))

    def _gb_for(self, names: tuple) -> GroebnerBasis:
        gb = self._extended.get(names)
        if gb is None:
            gb = self.relations.lift(self.ring.extend(names))
            self._extended[names] = gb
        return gb

    def reduce(self, f: Polynomial) -> Polynomial:
        """Normal form of a polynomial over A or over A[extra variables]."""
        if f.ring == self.ring:
            return self.relations.normal_form(f)
        extra = f.ring.names[self.ring.nvars :]
        if f.ring.names[: self.ring.nvars] != self.ring.names:
            raise AlgebraError(f"{f.ring!r} is not a polynomial extension of {self.ring!r}")
        return self._gb_for(extra).normal_form(f)

    # -- elements ----------------------------------------------------------
    def __call__(self, value) -> "AlgebraElement":
        return self.element(value)

    def element(self, value) -> "AlgebraElement":
        if isinstance(value, AlgebraElement):
            if value.owner != self:
                raise AlgebraError("element belongs to a different algebra")
            return value
        return AlgebraElement(self, self.reduce(self.ring(value)))

    @property
    def gens(self) -> tuple:
        return tuple(self.element(g) for g in self.ring.gens)

    def gen(self, name: str) -> "AlgebraElement":
        return self.element(self.ring.gen(name))

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, self.ring.zero())

    def one(self) -> "AlgebraElement":
        return AlgebraElement(self, self.ring.one())


def _check_names(names: Iterable[str]):
    for n in names:
        if n in RESERVED:
            raise AlgebraError(f"variable name {n!r} is reserved for deformation parameters")


def present(
    variables,
    relations=(),
    field: Field = QQ,
    order: MonomialOrder = GREVLEX,
    max_steps: int | None = None,
) -> PresentedAlgebra:
    """Build k[variables]/(relations); relations may be polynomials or text."""
    if isinstance(variables, str):
        variables = [v.strip() for v in variables.split(",") if v.strip()]
    variables = tuple(variables)
    _check_names(variables)
    ring = PolyRing(field, variables, order)
    rels = []
    for r in relations:
        if isinstance(r, Polynomial) and r.field != field:
            raise FieldError("relation over a different field")
        rels.append(ring(r))
    gb = buchberger(rels, ring, max_steps=max_steps)
    if gb.is_unit_ideal():
        raise ZeroAlgebraError("relations generate the unit ideal (1 is in I): zero algebra")
    return PresentedAlgebra(ring, gb)


class AlgebraElement:
    """An element of a presented algebra, stored as its normal form."""

    __slots__ = ("owner", "rep")

    def __init__(self, owner: PresentedAlgebra, rep: Polynomial):
        self.owner = owner
        self.rep = rep

    def _coerce(self, other):
        if isinstance(other, AlgebraElement):
            if other.owner != self.owner:
                raise AlgebraError("elements of different algebras")
            return other.rep
        return self.owner.ring(other)

    def _wrap(self, poly):
        return AlgebraElement(self.owner, self.owner.reduce(poly))

    def __add__(self, other):
        return self._wrap(self.rep + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return self._wrap(self.rep - self._coerce(other))

    def __rsub__(self, other):
        return self._wrap(self._coerce(other) - self.rep)

    def __mul__(self, other):
        return self._wrap(self.rep * self._coerce(other))

    __rmul__ = __mul__

    def __neg__(self):
        return AlgebraElement(self.owner, -self.rep)

    def __pow__(self, n: int):
        result = self.owner.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, c):
        return AlgebraElement(self.owner, self.rep / c)

    def is_zero(self) -> bool:
        return self.rep.is_zero()

    def __bool__(self):
        return not self.rep.is_zero()

    def __eq__(self, other):
        if isinstance(other, AlgebraElement):
            return self.owner == other.owner and self.rep == other.rep
        try:
            return self.rep == self.owner.reduce(self.owner.ring(other))
        except (ValueError, TypeError):
            return NotImplemented

    def __hash__(self):
        return hash(self.rep)

    def __repr__(self):
        return f"AlgebraElement({self.rep})"

    def __str__(self):
        return str(self.rep)


@dataclass
class AlgebraHom:
    """A verified k-algebra map given by images of the source variables."""

    source: PresentedAlgebra
    target: PresentedAlgebra
    images: dict
    certificate: dict = field(default_factory=dict)

    def image_polys(self, ring: PolyRing) -> dict:
        return {n: e.rep.lift(ring) for n, e in self.images.items()}

    def __call__(self, a) -> AlgebraElement:
        if isinstance(a, AlgebraElement):
            a = a.rep
        elif not isinstance(a, Polynomial):
            a = self.source.ring(a)
        return AlgebraElement(self.target, self.target.reduce(a.substitute(self.image_polys(self.target.ring), self.target.ring)))

    def apply_extended(self, f: Polynomial, names=("t",)) -> Polynomial:
        """Apply to a polynomial over source[names], fixing the extra variables."""
        ring = self.target.extended_ring(tuple(names))
        imgs = self.image_polys(ring)
        for n in names:
            imgs[n] = ring.gen(n)
        return self.target.reduce(f.substitute(imgs, ring))

    def compose(self, inner: "AlgebraHom") -> "AlgebraHom":
        """self after inner."""
        if inner.target != self.source:
            raise AlgebraError("cannot compose: target/source mismatch")
        return AlgebraHom(inner.source, self.target, {n: self(e) for n, e in inner.images.items()})

    def is_identity(self) -> bool:
        return self.source == self.target and all(
            e.rep == self.source.ring.gen(n) for n, e in self.images.items()
        )

    def __str__(self):
        return "{" + ", ".join(f"{n} -> {e}" for n, e in self.images.items()) + "}"


def hom(source: PresentedAlgebra, target: PresentedAlgebra, images: Mapping) -> AlgebraHom:
    """Verified homomorphism; raises :class:`HomError` naming a relation that does not map to 0."""
    if source.field != target.field:
        raise FieldError("homomorphism between algebras over different fields")
    missing = [n for n in source.variables if n not in images]
    if missing:
        raise AlgebraError(f"no image given for {', '.join(missing)}")
    extra = [n for n in images if n not in source.variables]
    if extra:
        raise AlgebraError(f"images given for unknown variables {', '.join(extra)}")
    imgs = {n: target.element(images[n]) for n in source.variables}
    polys = {n: e.rep for n, e in imgs.items()}
    certificate = {}
    for r in source.relations:
        image = target.reduce(r.substitute(polys, target.ring))
        if not image.is_zero():
            raise HomError(f"not well defined: relation {r} maps to {image}", r, image)
        certificate[str(r)] = "0"
    return AlgebraHom(source, target, imgs, certificate)


def identity_hom(A: PresentedAlgebra) -> AlgebraHom:
    return hom(A, A, {n: A.gen(n) for n in A.variables})


class TensorAlgebra(PresentedAlgebra):
    """A (x) B on disjoint variables, remembering its factors and injections."""

    def __init__(self, ring, relations, left, right, left_names, right_names):
        super().__init__(ring, relations)
        self.left = left
        self.right = right
        #: factor variable -> tensor variable
        self.left_names = left_names
        self.right_names = right_names
        self.inj_left = AlgebraHom(left, self, {n: self.gen(m) for n, m in left_names.items()})
        self.inj_right = AlgebraHom(right, self, {n: self.gen(m) for n, m in right_names.items()})

    def factor(self, side: str) -> PresentedAlgebra:
        return self.left if side == "left" else self.right

    def names_for(self, side: str) -> dict:
        return self.left_names if side == "left" else self.right_names

    def injection(self, side: str) -> AlgebraHom:
        return self.inj_left if side == "left" else self.inj_right

    @property
    def renaming(self) -> dict:
        """Only the names that changed, as ``{"left": {...}, "right": {...}}``."""
        return {
            "left": {a: b for a, b in self.left_names.items() if a != b},
            "right": {a: b for a, b in self.right_names.items() if a != b},
        }


def tensor_names(left: Iterable[str], right: Iterable[str]) -> tuple[dict, dict]:
    """Suffix ``_L``/``_R`` on colliding names only."""
    left, right = tuple(left), tuple(right)
    clash = set(left) & set(right)
    taken = (set(left) | set(right)) - clash
    lmap, rmap = {}, {}
    for names, out, suffix in ((left, lmap, "_L"), (right, rmap, "_R")):
        for n in names:
            if n in clash:
                m = n + suffix
                while m in taken:
                    m += suffix
                taken.add(m)
                out[n] = m
            else:
                out[n] = n
    return lmap, rmap


def tensor(A: PresentedAlgebra, B: PresentedAlgebra, max_steps: int | None = None) -> TensorAlgebra:
    if A.field != B.field:
        raise FieldError(
            f"tensor product over mixed characteristics {A.characteristic} and {B.characteristic}"
        )
    lmap, rmap = tensor_names(A.variables, B.variables)
    ring = PolyRing(A.field, tuple(lmap.values()) + tuple(rmap.values()), A.ring.order)
    rels = [r.rename(lmap, ring) for r in A.relations] + [r.rename(rmap, ring) for r in B.relations]
    gb = buchberger(rels, ring, max_steps=max_steps)
    return TensorAlgebra(ring, gb, A, B, lmap, rmap)
