"""Buchberger's algorithm with the normal selection strategy.

Only meant for the small presentations the rest of the package works with;
a step cap turns runaway computations into :class:`ResourceLimitError`.
"""

from __future__ import annotations

import heapq
import os
from dataclasses import dataclass, field

from .poly import PolyRing, Polynomial

DEFAULT_MAX_STEPS = 100_000


class ResourceLimitError(RuntimeError):
    """Raised when a computation exceeds its configured step cap."""


def max_steps_default() -> int:
    return int(os.environ.get("AKINV_GB_MAX_STEPS", DEFAULT_MAX_STEPS))


def _divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


class _Counter:
    __slots__ = ("steps", "limit")

    def __init__(self, limit):
        self.steps = 0
        self.limit = limit

    def tick(self):
        self.steps += 1
        if self.limit is not None and self.steps > self.limit:
            raise ResourceLimitError(
                f"Groebner computation exceeded {self.limit} reduction steps; presentation too hard"
            )


def _reduce(terms: dict, basis: list, ring: PolyRing, counter: _Counter | None = None, full: bool = True) -> dict:
    """Remainder of ``terms`` by ``basis`` (list of (lm, inverse lc, terms))."""
    f = ring.field
    p = f.characteristic
    hkey = ring.order.heap_key
    rem = dict(terms)
    # lazy max-heap over the monomials of rem; queued tracks what is on it
    heap = [(hkey(e), e) for e in rem]
    heapq.heapify(heap)
    queued = set(rem)
    out = {}
    while heap:
        _, e = heapq.heappop(heap)
        queued.discard(e)
        c = rem.get(e)
        if c is None:
            continue
        for lm, linv, g in basis:
            if _divides(lm, e):
                if counter is not None:
                    counter.tick()
                shift = tuple(a - b for a, b in zip(e, lm))
                q = c * linv if p == 0 else c * linv % p
                for ge, gc in g.items():
                    te = tuple(a + b for a, b in zip(ge, shift))
                    v = rem.get(te, 0) - q * gc
                    if p:
                        v %= p
                    if v == 0:
                        rem.pop(te, None)
                    else:
                        rem[te] = v
                        if te not in queued:
                            queued.add(te)
                            heapq.heappush(heap, (hkey(te), te))
                break
        else:
            out[e] = c
            del rem[e]
            if not full:
                out.update(rem)
                return out
    return out


def _entry(g: Polynomial):
    lm, lc = g.leading_term()
    return (lm, g.field.inv(lc), g.terms)


@dataclass(frozen=True)
class GroebnerBasis:
    """A reduced Groebner basis: monic generators sorted by decreasing leading monomial."""

    generators: tuple
    ring: PolyRing
    _table: list = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_table", [_entry(g) for g in self.generators])

    @property
    def order(self):
        return self.ring.order

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def lift(self, ring: PolyRing) -> "GroebnerBasis":
        """The same basis inside a ring with extra variables appended.

        Appending variables at the end keeps lex/grevlex comparisons among
        the old monomials unchanged, so the lifted set is still reduced.
        """
        if ring == self.ring:
            return self
        if ring.names[: self.ring.nvars] != self.ring.names or ring.order != self.ring.order:
            raise ValueError(f"{ring!r} does not extend {self.ring!r}")
        return GroebnerBasis(tuple(g.lift(ring) for g in self.generators), ring)

    def normal_form(self, f: Polynomial) -> Polynomial:
        if f.ring != self.ring:
            raise ValueError(f"polynomial over {f.ring!r}, basis over {self.ring!r}")
        if not self.generators or not f.terms:
            return f
        return Polynomial(self.ring, _reduce(f.terms, self._table, self.ring))

    def contains(self, f: Polynomial) -> bool:
        return self.normal_form(f).is_zero()

    def is_unit_ideal(self) -> bool:
        return any(g.is_constant() for g in self.generators)

    def __str__(self):
        return "{" + ", ".join(str(g) for g in self.generators) + "}"


def buchberger(gens, ring: PolyRing | None = None, max_steps: int | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    Pairs are processed lowest lcm degree first; pairs with coprime leading
    monomials and pairs killed by the chain criterion are skipped.
    """
    gens = list(gens)
    if ring is None:
        if not gens:
            raise ValueError("ring required for an empty generator list")
        ring = gens[0].ring
    gens = [g.lift(ring) if g.ring != ring else g for g in gens]
    counter = _Counter(max_steps_default() if max_steps is None else max_steps)
    key = ring.order.key

    G: list[Polynomial] = []
    table: list = []
    for g in gens:
        if g.is_zero():
            continue
        r = _reduce(g.terms, table, ring, counter)
        if r:
            h = Polynomial(ring, r).monic()
            G.append(h)
            table.append(_entry(h))
    pairs: set = {(i, j) for j in range(len(G)) for i in range(j)}

    def pair_key(pr):
        i, j = pr
        l = _lcm(table[i][0], table[j][0])
        return (sum(l), key(l), i, j)

    while pairs:
        i, j = min(pairs, key=pair_key)
        pairs.discard((i, j))
        lmi, lmj = table[i][0], table[j][0]
        l = _lcm(lmi, lmj)
        if all(a == 0 or b == 0 for a, b in zip(lmi, lmj)):
            continue
        if any(
            k not in (i, j)
            and _divides(table[k][0], l)
            and (min(i, k), max(i, k)) not in pairs
            and (min(j, k), max(j, k)) not in pairs
            for k in range(len(G))
        ):
            continue
        counter.tick()
        s = G[i].mul_monomial(tuple(a - b for a, b in zip(l, lmi)), table[i][1]) - G[j].mul_monomial(
            tuple(a - b for a, b in zip(l, lmj)), table[j][1]
        )
        r = _reduce(s.terms, table, ring, counter)
        if r:
            h = Polynomial(ring, r).monic()
            n = len(G)
            G.append(h)
            table.append(_entry(h))
            pairs.update((k, n) for k in range(n))

    return _reduced(G, ring, counter)


def _reduced(G: list, ring: PolyRing, counter: _Counter) -> GroebnerBasis:
    key = ring.order.key
    G = sorted(G, key=lambda g: key(g.leading_monomial()))
    minimal = []
    for g in G:
        lm = g.leading_monomial()
        if not any(_divides(h.leading_monomial(), lm) for h in minimal):
            minimal.append(g)
    reduced = []
    for idx, g in enumerate(minimal):
        others = [_entry(h) for k, h in enumerate(minimal) if k != idx]
        r = Polynomial(ring, _reduce(g.terms, others, ring, counter)).monic()
        reduced.append(r)
    reduced.sort(key=lambda g: key(g.leading_monomial()), reverse=True)
    return GroebnerBasis(tuple(reduced), ring)


def normal_form(f: Polynomial, gb: GroebnerBasis) -> Polynomial:
    return gb.normal_form(f)


def ideal_member(f: Polynomial, gb: GroebnerBasis) -> bool:
    return gb.contains(f)
