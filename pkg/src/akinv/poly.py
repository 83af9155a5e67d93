"""Sparse multivariate polynomials over an exact :class:`~akinv.field.Field`.

A polynomial lives in a :class:`PolyRing`, which fixes the base field, the
ordered variable names and the monomial order.  Terms are a dict from
exponent tuples to nonzero raw coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .field import QQ, Field, FieldError, Scalar

NEG_INF = float("-inf")

#: deformation variables; never allowed as ring generators
RESERVED = frozenset({"t", "s"})


@dataclass(frozen=True)
class MonomialOrder:
    """``"lex"`` or ``"grevlex"``; variable priority is the ring's name order."""

    kind: str = "grevlex"

    def __post_init__(self):
        if self.kind not in ("lex", "grevlex"):
            raise ValueError(f"unknown monomial order {self.kind!r}")

    def key(self, exp: tuple):
        if self.kind == "lex":
            return exp
        return (sum(exp), tuple(-e for e in reversed(exp)))

    def heap_key(self, exp: tuple):
        """Smaller heap_key means larger monomial, for use with heapq."""
        if self.kind == "lex":
            return tuple(-e for e in exp)
        return (-sum(exp), exp[::-1])


LEX = MonomialOrder("lex")
GREVLEX = MonomialOrder("grevlex")


class PolyRing:
    """k[names] with a monomial order."""

    __slots__ = ("field", "names", "order", "index", "_hash")

    def __init__(self, field: Field = QQ, names: Iterable[str] = (), order: MonomialOrder = GREVLEX):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        for n in names:
            if not n.isidentifier():
                raise ValueError(f"invalid variable name {n!r}")
        self.field = field
        self.names = names
        self.order = order
        self.index = {n: i for i, n in enumerate(names)}
        self._hash = hash((field, names, order))

    @property
    def nvars(self) -> int:
        return len(self.names)

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.field == other.field
            and self.names == other.names
            and self.order == other.order
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"{self.field.name}[{','.join(self.names)}]"

    # -- element construction --------------------------------------------
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        c = self.field(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c != 0 else {})

    def gen(self, name: str) -> "Polynomial":
        exp = [0] * self.nvars
        exp[self.index[name]] = 1
        return Polynomial(self, {tuple(exp): self.field.one})

    @property
    def gens(self) -> tuple:
        return tuple(self.gen(n) for n in self.names)

    def monomial(self, exp, coeff=1) -> "Polynomial":
        c = self.field(coeff)
        return Polynomial(self, {tuple(exp): c} if c != 0 else {})

    def from_dict(self, terms: Mapping) -> "Polynomial":
        f = self.field
        out = {}
        for e, c in terms.items():
            c = f(c)
            if c != 0:
                out[tuple(e)] = c
        return Polynomial(self, out)

    def __call__(self, value) -> "Polynomial":
        """Coerce a Polynomial (by variable name), a scalar, or polynomial text."""
        if isinstance(value, Polynomial):
            return value if value.ring == self else value.lift(self)
        if isinstance(value, str):
            from .expr import parse_polynomial

            return parse_polynomial(value, self)
        return self.const(value)

    def parse(self, text: str) -> "Polynomial":
        return self(text)

    def extend(self, names: Iterable[str]) -> "PolyRing":
        return PolyRing(self.field, self.names + tuple(names), self.order)

    def with_order(self, order: MonomialOrder) -> "PolyRing":
        return PolyRing(self.field, self.names, order)


class Polynomial:
    """Immutable sparse polynomial; no zero coefficients are ever stored."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # -- basic queries ---------------------------------------------------
    @property
    def field(self) -> Field:
        return self.ring.field

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_coeff(self):
        return self.terms.get((0,) * self.ring.nvars, self.field.zero)

    def variables(self) -> tuple:
        """Names of variables that actually occur."""
        used = set()
        for e in self.terms:
            used.update(i for i, k in enumerate(e) if k)
        return tuple(self.ring.names[i] for i in sorted(used))

    def total_degree(self):
        if not self.terms:
            return NEG_INF
        return max(sum(e) for e in self.terms)

    def degree_in(self, var: str):
        """Highest exponent of ``var``; ``-inf`` for the zero polynomial."""
        if not self.terms:
            return NEG_INF
        if var not in self.ring.index:
            return 0
        i = self.ring.index[var]
        return max(e[i] for e in self.terms)

    def coeff_in(self, var: str, k: int) -> "Polynomial":
        """Coefficient of ``var**k`` as a polynomial in the same ring, free of ``var``."""
        if var not in self.ring.index:
            return self if k == 0 else self.ring.zero()
        i = self.ring.index[var]
        out = {}
        for e, c in self.terms.items():
            if e[i] == k:
                out[e[:i] + (0,) + e[i + 1 :]] = c
        return Polynomial(self.ring, out)

    def coefficients_in(self, var: str) -> dict:
        """``{k: coeff_in(var, k)}`` for every k that occurs."""
        if var not in self.ring.index:
            return {0: self} if self.terms else {}
        i = self.ring.index[var]
        grouped: dict = {}
        for e, c in self.terms.items():
            grouped.setdefault(e[i], {})[e[:i] + (0,) + e[i + 1 :]] = c
        return {k: Polynomial(self.ring, grouped[k]) for k in sorted(grouped)}

    def sorted_terms(self) -> list:
        """Terms in decreasing monomial order."""
        key = self.ring.order.key
        return sorted(self.terms.items(), key=lambda it: key(it[0]), reverse=True)

    def leading_term(self):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        key = self.ring.order.key
        e = max(self.terms, key=key)
        return e, self.terms[e]

    def leading_monomial(self) -> tuple:
        return self.leading_term()[0]

    def leading_coeff(self):
        return self.leading_term()[1]

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        return self.scale(self.field.inv(self.leading_coeff()))

    # -- arithmetic ------------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                if other.field != self.field:
                    raise FieldError(
                        f"mismatched characteristics {self.field.characteristic} "
                        f"and {other.field.characteristic}"
                    )
                raise ValueError(f"polynomials over different rings {self.ring!r} and {other.ring!r}")
            return other
        if isinstance(other, (int, Fraction, Scalar)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        f = self.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = f.add(out.get(e, 0), c)
            if v == 0:
                out.pop(e, None)
            else:
                out[e] = v
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        f = self.field
        return Polynomial(self.ring, {e: f.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        f = self.field
        p = f.characteristic
        out: dict = {}
        get = out.get
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = get(e, 0) + c1 * c2
        if p:
            out = {e: c % p for e, c in out.items() if c % p}
        else:
            out = {e: c for e, c in out.items() if c}
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other):
        """Division by a nonzero scalar only."""
        if isinstance(other, Polynomial):
            if not other.is_constant() or other.is_zero():
                raise ValueError("can only divide by a nonzero constant")
            other = other.constant_coeff()
        c = self.field(other)
        return self.scale(self.field.inv(c))

    def scale(self, c) -> "Polynomial":
        f = self.field
        c = f(c)
        if c == 0:
            return self.ring.zero()
        return Polynomial(self.ring, {e: f.mul(v, c) for e, v in self.terms.items()})

    def mul_monomial(self, exp: tuple, c) -> "Polynomial":
        f = self.field
        return Polynomial(
            self.ring,
            {tuple(a + b for a, b in zip(e, exp)): f.mul(v, c) for e, v in self.terms.items()},
        )

    # -- structure-changing operations -----------------------------------
    def lift(self, ring: PolyRing) -> "Polynomial":
        """Re-express in ``ring`` by variable name (every used variable must exist there)."""
        if ring == self.ring:
            return self
        if ring.field != self.field:
            raise FieldError("cannot move a polynomial between fields")
        try:
            idx = [ring.index[n] for n in self.ring.names]
        except KeyError as exc:
            # unused variables may be dropped
            used = set(self.variables())
            if exc.args[0] in used:
                raise ValueError(f"variable {exc.args[0]!r} missing from {ring!r}") from None
            idx = [ring.index.get(n, -1) for n in self.ring.names]
        out = {}
        n = ring.nvars
        for e, c in self.terms.items():
            new = [0] * n
            for i, k in zip(idx, e):
                if k:
                    new[i] = k
            out[tuple(new)] = c
        return Polynomial(ring, out)

    def rename(self, mapping: Mapping[str, str], ring: PolyRing) -> "Polynomial":
        """Rename variables (``mapping`` old -> new) into ``ring``."""
        idx = [ring.index[mapping.get(n, n)] if mapping.get(n, n) in ring.index else -1 for n in self.ring.names]
        out = {}
        for e, c in self.terms.items():
            new = [0] * ring.nvars
            for i, k in zip(idx, e):
                if k:
                    if i < 0:
                        raise ValueError("renaming target missing from ring")
                    new[i] = k
            out[tuple(new)] = c
        return Polynomial(ring, out)

    def substitute(self, images: Mapping[str, "Polynomial"], ring: PolyRing | None = None) -> "Polynomial":
        """Ring homomorphism sending each variable to its image.

        Variables without an image map to the same-named variable of the
        target ring.  Images given as scalars or text are coerced.
        """
        target = ring
        if target is None:
            target = next((v.ring for v in images.values() if isinstance(v, Polynomial)), self.ring)
        imgs = []
        for name in self.ring.names:
            v = images.get(name)
            if v is None:
                imgs.append(target.gen(name) if name in target.index else None)
            else:
                imgs.append(target(v))
        powers: list[dict] = [{} for _ in imgs]

        def power(i, k):
            cache = powers[i]
            if k not in cache:
                if k == 1:
                    cache[k] = imgs[i]
                elif k % 2 == 0:
                    h = power(i, k // 2)
                    cache[k] = h * h
                else:
                    cache[k] = power(i, k - 1) * imgs[i]
            return cache[k]

        f = target.field
        p = f.characteristic
        acc: dict = {}
        get = acc.get
        for e, c in self.terms.items():
            term = None
            for i, k in enumerate(e):
                if k:
                    if imgs[i] is None:
                        raise ValueError(f"no image for variable {self.ring.names[i]!r}")
                    factor = power(i, k)
                    term = factor if term is None else term * factor
            if term is None:
                key = (0,) * target.nvars
                acc[key] = get(key, 0) + c
            else:
                for te, tc in term.terms.items():
                    acc[te] = get(te, 0) + tc * c
        if p:
            acc = {e: v % p for e, v in acc.items() if v % p}
        else:
            acc = {e: v for e, v in acc.items() if v}
        return Polynomial(target, acc)

    def evaluate(self, values: Mapping[str, object]):
        """Substitute scalars for all variables and return the raw value."""
        ring0 = PolyRing(self.field, (), self.ring.order)
        r = self.substitute({n: ring0.const(values[n]) for n in self.ring.names if n in values}, ring0)
        return r.constant_coeff()

    def diff(self, var: str) -> "Polynomial":
        if var not in self.ring.index:
            return self.ring.zero()
        i = self.ring.index[var]
        f = self.field
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                v = f.mul(c, f(k))
                if v != 0:
                    out[e[:i] + (k - 1,) + e[i + 1 :]] = v
        return Polynomial(self.ring, out)

    def divide_exact(self, g: "Polynomial") -> "Polynomial | None":
        """Quotient q with q*g == self in k[X], or None when g does not divide self."""
        if g.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        f = self.field
        glm, glc = g.leading_term()
        ginv = f.inv(glc)
        rem = dict(self.terms)
        quot: dict = {}
        key = self.ring.order.key
        while rem:
            e = max(rem, key=key)
            if any(a < b for a, b in zip(e, glm)):
                return None
            qe = tuple(a - b for a, b in zip(e, glm))
            qc = f.mul(rem[e], ginv)
            quot[qe] = qc
            for ge, gc in g.terms.items():
                te = tuple(a + b for a, b in zip(qe, ge))
                v = f.sub(rem.get(te, 0), f.mul(qc, gc))
                if v == 0:
                    rem.pop(te, None)
                else:
                    rem[te] = v
        return Polynomial(self.ring, quot)

    def divmod_in(self, var: str, g: "Polynomial"):
        """Long division by ``g``, monic in ``var``, treating other variables as coefficients.

        Returns ``(q, r)`` with ``self == q*g + r`` and ``degree_in(r, var) < degree_in(g, var)``.
        """
        d = g.degree_in(var)
        lead = g.coeff_in(var, d)
        if lead != self.ring.one():
            raise ValueError(f"divisor must be monic in {var}")
        i = self.ring.index[var]
        q = self.ring.zero()
        r = self
        while not r.is_zero() and r.degree_in(var) >= d:
            m = r.degree_in(var)
            c = r.coeff_in(var, m)
            shift = [0] * self.ring.nvars
            shift[i] = m - d
            step = Polynomial(self.ring, {tuple(a + b for a, b in zip(e, shift)): v for e, v in c.terms.items()})
            q = q + step
            r = r - step * g
        return q, r

    # -- comparison and display ------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction, Scalar)):
            try:
                return self.terms == self.ring.const(other).terms
            except ZeroDivisionError:
                return False
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        return f"Polynomial({self}, {self.ring!r})"

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.ring.names
        pieces = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k
            )
            neg = False
            if self.field.characteristic == 0 and c < 0:
                neg, c = True, -c
            if not mono:
                body = str(c)
            elif c == 1:
                body = mono
            else:
                body = f"{c}*{mono}"
            pieces.append((neg, body))
        out = ("-" if pieces[0][0] else "") + pieces[0][1]
        for neg, body in pieces[1:]:
            out += (" - " if neg else " + ") + body
        return out


def poly_ring(names, field: Field = QQ, order: MonomialOrder = GREVLEX) -> PolyRing:
    if isinstance(names, str):
        names = [n.strip() for n in names.split(",") if n.strip()]
    return PolyRing(field, names, order)


def coeff_in_t(f: Polynomial, i: int) -> Polynomial:
    return f.coeff_in("t", i)


def degree_in(f: Polynomial, var: str):
    return f.degree_in(var)


def substitute(f: Polynomial, images: Mapping[str, Polynomial], ring: PolyRing | None = None) -> Polynomial:
    return f.substitute(images, ring)
