"""Conductors of subalgebras A of k[y].

A is given by finitely many generators.  Membership is decided inside the
span of products of generators whose y-degree is at most a bound; the span
is grown degree by degree and kept in reduced echelon form (pivot = top
degree); the product combination behind each basis vector is recorded and
expanded only when a certificate is asked for.

The conductor {f : k[y] f in A} contains h^{n-1} whenever y = g/h with
g, h in A, h monic of degree n.  Because of that, f lies in the conductor
as soon as y^j f is in A for 0 <= j < deg(h^{n-1}): any higher y^j is
q*h^{n-1} + r with deg r below that degree.
"""

from __future__ import annotations

import os
import threading
from dataclasses import dataclass, field

from .algebra import AlgebraError, PresentedAlgebra
from .expmap import ExponentialMap
from .field import QQ, Field
from .poly import PolyRing, Polynomial


class ConductorError(AlgebraError):
    pass


class FractionNotFound(ConductorError):
    """No y = g/h with g, h in A was found within the search bound."""


def _vec(f: Polynomial) -> dict:
    return {e[0]: c for e, c in f.terms.items()}


class MemberResult:
    """Outcome of a bounded membership query.

    ``combination`` maps exponent tuples alpha (one entry per generator) to
    coefficients, so that f == sum c_alpha * prod g_i^alpha_i.  It is
    expanded from the echelon bookkeeping on first access.
    """

    def __init__(self, is_member: bool, bound: int, expand=None):
        self.is_member = is_member
        self.bound = bound
        self._expand = expand
        self._combination = None

    @property
    def combination(self) -> dict:
        if self._combination is None:
            self._combination = self._expand() if self._expand is not None else {}
        return self._combination

    def __bool__(self):
        return self.is_member

    def __repr__(self):
        return f"MemberResult(is_member={self.is_member}, bound={self.bound})"


class CurveSubalgebra:
    """The k-subalgebra of k[y] generated by ``gens`` (constants are always included)."""

    def __init__(self, gens, field: Field = QQ, var: str = "y", ring: PolyRing | None = None):
        self.ring = ring or PolyRing(field, (var,))
        if self.ring.nvars != 1:
            raise ValueError("curve subalgebras live in a univariate polynomial ring")
        self.var = self.ring.names[0]
        self.field = self.ring.field
        gens = [self.ring(g) for g in gens]
        self.gens = tuple(g for g in gens if not g.is_constant())
        self.degrees = tuple(int(g.degree_in(self.var)) for g in self.gens)
        self._gen_vecs = [_vec(g) for g in self.gens]
        # Rows are versioned: every vector ever used is kept, with a recipe
        # saying how it was made, so certificates can be rebuilt on demand.
        self._vecs: list = []
        self._recipes: list = []
        self._rows: dict = {}  # pivot degree -> current version id
        self._levels: dict = {}  # product degree -> version ids first found at that level
        self._expanded: dict = {}
        self._built = -1
        self._lock = threading.RLock()

    def __repr__(self):
        return f"<{', '.join(str(g) for g in self.gens)}> in {self.ring!r}"

    @property
    def max_degree(self) -> int:
        return max(self.degrees, default=0)

    def default_bound(self, query_degree: int) -> int:
        env = os.environ.get("AKINV_MEMBER_BOUND")
        if env:
            return int(env)
        return 4 * max(self.max_degree, 1) * (query_degree + 1)

    # -- graded span ------------------------------------------------------
    # The basis is kept fully reduced: a row is 1 at its pivot and 0 at every
    # other pivot, so rows only carry the few degrees missing from the span.
    def _new(self, vec: dict, recipe: tuple) -> int:
        self._vecs.append(vec)
        self._recipes.append(recipe)
        return len(self._vecs) - 1

    def _reduce(self, vec: dict):
        """Reduce against the rows; returns (remainder, steps) with remainder = vec + sum q * row."""
        F = self.field
        vec = dict(vec)
        steps = []
        for d in list(vec):
            c = vec.get(d)
            if not c or d not in self._rows:
                continue
            vid = self._rows[d]
            q = F.neg(c)
            for k, v in self._vecs[vid].items():
                nv = F.add(vec.get(k, 0), F.mul(q, v))
                if nv == 0:
                    vec.pop(k, None)
                else:
                    vec[k] = nv
            steps.append((q, vid))
        return vec, steps

    def _insert(self, vec: dict, recipe_head: tuple, level: int):
        F = self.field
        vec, steps = self._reduce(vec)
        if not vec:
            return
        top = max(vec)
        s = F.div(F.one, vec[top])
        vec = {k: F.mul(s, v) for k, v in vec.items()}
        new = self._new(vec, recipe_head + (s, tuple(steps)))
        for col, rid in list(self._rows.items()):
            a = self._vecs[rid].get(top)
            if not a:
                continue
            rv = dict(self._vecs[rid])
            for k, v in vec.items():
                nv = F.sub(rv.get(k, 0), F.mul(a, v))
                if nv == 0:
                    rv.pop(k, None)
                else:
                    rv[k] = nv
            self._rows[col] = self._new(rv, ("upd", rid, F.neg(a), new))
        self._rows[top] = new
        self._levels.setdefault(level, []).append(new)

    def build(self, bound: int):
        """Grow the echelon basis of span{products of generators of y-degree <= bound}."""
        with self._lock:
            F = self.field
            if self._built < 0:
                vid = self._new({0: F.one}, ("one",))
                self._rows[0] = vid
                self._levels[0] = [vid]
                self._built = 0
            for d in range(self._built + 1, bound + 1):
                for i, e in enumerate(self.degrees):
                    if e > d:
                        continue
                    for parent in self._levels.get(d - e, ()):
                        prod = {}
                        for a, va in self._vecs[parent].items():
                            for b, vb in self._gen_vecs[i].items():
                                prod[a + b] = F.add(prod.get(a + b, 0), F.mul(va, vb))
                        prod = {a: v for a, v in prod.items() if v != 0}
                        self._insert(prod, ("prod", i, parent), d)
                self._built = d

    def _expand(self, vid: int) -> dict:
        """Product combination (exponent tuple -> coefficient) equal to version ``vid``."""
        F = self.field
        k = len(self.gens)
        stack = [vid]
        while stack:
            v = stack[-1]
            if v in self._expanded:
                stack.pop()
                continue
            r = self._recipes[v]
            if r[0] == "one":
                deps = ()
            elif r[0] == "prod":
                deps = (r[2],) + tuple(w for _, w in r[4])
            else:
                deps = (r[1], r[3])
            missing = [w for w in deps if w not in self._expanded]
            if missing:
                stack.extend(missing)
                continue
            stack.pop()
            if r[0] == "one":
                out = {(0,) * k: F.one}
            elif r[0] == "prod":
                _, i, parent, s, steps = r
                out = {a[:i] + (a[i] + 1,) + a[i + 1 :]: c for a, c in self._expanded[parent].items()}
                for q, w in steps:
                    _axpy(out, q, self._expanded[w], F)
                out = {a: F.mul(s, c) for a, c in out.items()}
            else:
                out = dict(self._expanded[r[1]])
                _axpy(out, r[2], self._expanded[r[3]], F)
            self._expanded[v] = out
        return self._expanded[vid]

    def residual(self, f, bound: int) -> dict:
        """Remainder of f modulo the bounded span (zero iff f is in it)."""
        self.build(bound)
        with self._lock:
            vec, _ = self._reduce(_vec(self.ring(f)))
        return vec

    def member(self, f, degree_bound: int | None = None) -> MemberResult:
        f = self.ring(f)
        if degree_bound is None:
            d = f.degree_in(self.var)
            degree_bound = self.default_bound(int(d) if d > 0 else 0)
        self.build(degree_bound)
        F = self.field
        with self._lock:
            vec, steps = self._reduce(_vec(f))
        if vec:
            return MemberResult(False, degree_bound)

        def expand():
            out: dict = {}
            with self._lock:
                for q, vid in steps:
                    _axpy(out, F.neg(q), self._expand(vid), F)
            return out

        return MemberResult(True, degree_bound, expand)

    def evaluate_combination(self, combination: dict) -> Polynomial:
        out = self.ring.zero()
        for alpha, c in combination.items():
            term = self.ring.const(c)
            for g, k in zip(self.gens, alpha):
                if k:
                    term = term * g**k
            out = out + term
        return out

    def pivot_degrees(self, bound: int) -> list[int]:
        """Degrees d for which the bounded span has an element of degree exactly d."""
        self.build(bound)
        return sorted(d for d in self._rows if d <= bound)


def _axpy(out: dict, a, x: dict, F: Field):
    """out += a * x, dropping zeros."""
    for k, v in x.items():
        nv = F.add(out.get(k, 0), F.mul(a, v))
        if nv == 0:
            out.pop(k, None)
        else:
            out[k] = nv


def member(A: CurveSubalgebra, f, degree_bound: int | None = None) -> MemberResult:
    return A.member(f, degree_bound)


def _first_dependency(vectors, F: Field):
    """Scan vectors in order; return coefficients (ending in 1) of the first linear dependency."""
    pivots: dict = {}
    for i, v in enumerate(vectors):
        vec = dict(v)
        combo = {i: F.one}
        while vec:
            top = max(vec)
            if top not in pivots:
                break
            pv, pc = pivots[top]
            q = F.div(vec[top], pv[top])
            for k, x in pv.items():
                nv = F.sub(vec.get(k, 0), F.mul(q, x))
                if nv == 0:
                    vec.pop(k, None)
                else:
                    vec[k] = nv
            for k, x in pc.items():
                nv = F.sub(combo.get(k, 0), F.mul(q, x))
                if nv == 0:
                    combo.pop(k, None)
                else:
                    combo[k] = nv
        if not vec:
            return combo
        pivots[max(vec)] = (vec, combo)
    return None


def _tagged(vecs) -> dict:
    """Concatenate several residual vectors into one, keyed (block, degree)."""
    out = {}
    for j, v in enumerate(vecs):
        for d, c in v.items():
            out[(j, d)] = c
    return out


def fraction_for_y(A: CurveSubalgebra, max_degree: int | None = None) -> tuple[Polynomial, Polynomial]:
    """(g, h) in A with y*h == g, h monic of the smallest degree found."""
    if max_degree is None:
        max_degree = 3 * max(A.max_degree, 1) + 3
    bound = A.default_bound(max_degree + 1)
    y = A.ring.gen(A.var)
    vectors = []
    for i in range(max_degree + 1):
        vectors.append(_tagged([A.residual(y**i, bound), A.residual(y ** (i + 1), bound)]))
        combo = _first_dependency(vectors, A.field)
        if combo is not None:
            h = A.ring.zero()
            for k, c in combo.items():
                h = h + y**k * c
            h = h.monic()
            return y * h, h
    raise FractionNotFound(f"fraction y = g/h not found within degree {max_degree}")


@dataclass
class CertificateReport:
    ok: bool
    n: int
    ideal_degree: int
    memberships: dict = field(default_factory=dict)  # m -> MemberResult for y^m h^{n-1}
    base_identities: bool = True
    induction_identities: bool = True
    replay_bound: int = 0
    escalated: bool = False


def _h_power(h: Polynomial, n: int) -> Polynomial:
    return h ** (n - 1) if n >= 1 else h.ring.one()


def certificate_ideal(A: CurveSubalgebra, g, h, replay_bound: int | None = None) -> CertificateReport:
    """Verify k[y] h^{n-1} is inside A.

    Membership of y^m h^{n-1} is checked directly for m < 2n; the inductive
    identity y^m h^{n-1} = (y^{m-n} h^{n-1}) h + p_m h^{n-1} with
    y^m = y^{m-n} h + p_m is replayed for n <= m <= ``replay_bound``.
    """
    g, h = A.ring(g), A.ring(h)
    y = A.ring.gen(A.var)
    if y * h != g:
        raise ConductorError("precondition y*h == g fails")
    n = int(h.degree_in(A.var))
    hp = _h_power(h, n)
    D = int(hp.degree_in(A.var))
    if n <= 1:
        return CertificateReport(True, n, D)

    base = all(y**m * hp == g**m * h ** (n - m - 1) for m in range(n))
    memberships = {}
    escalated = False
    for m in range(2 * n):
        q = y**m * hp
        res = A.member(q)
        if not res:
            escalated = True
            res = A.member(q, 2 * res.bound)
            if not res:
                raise ConductorError(
                    f"y^{m}*h^{n - 1} not found in A even at bound {res.bound}: membership bound too small"
                )
        memberships[m] = res
    if replay_bound is None:
        replay_bound = 4 * n
    induction = True
    for m in range(n, replay_bound + 1):
        p_m = y**m - y ** (m - n) * h
        if p_m.degree_in(A.var) > m - 1:
            induction = False
        if y**m * hp != (y ** (m - n) * hp) * h + p_m * hp:
            induction = False
    return CertificateReport(base and induction, n, D, memberships, base, induction, replay_bound, escalated)


def in_conductor(A: CurveSubalgebra, f, ideal_degree: int, bound: int | None = None) -> bool:
    """Finite test: y^j f in A for all 0 <= j < max(ideal_degree, 1)."""
    f = A.ring(f)
    y = A.ring.gen(A.var)
    for j in range(max(ideal_degree, 1)):
        q = y**j * f
        if not A.member(q, bound):
            return False
    return True


@dataclass
class ConductorResult:
    u: Polynomial
    h: Polynomial
    g: Polynomial
    n: int
    certificate: dict = field(default_factory=dict)

    @property
    def ideal_degree(self) -> int:
        return self.certificate.get("ideal_degree", 0)


def conductor_generator(A: CurveSubalgebra, fraction: tuple | None = None) -> ConductorResult:
    """Monic generator u of {f in k[y] : k[y] f in A}."""
    g, h = fraction if fraction is not None else fraction_for_y(A)
    g, h = A.ring(g), A.ring(h)
    y = A.ring.gen(A.var)
    n = int(h.degree_in(A.var))
    cert = certificate_ideal(A, g, h)
    if not cert.ok:
        raise ConductorError("certificate ideal check failed")
    hp = _h_power(h, n)
    D = int(hp.degree_in(A.var))
    bound = A.default_bound(2 * D)
    if D == 0:
        u = A.ring.one()
    else:
        residues = [A.residual(y**m, bound) for m in range(2 * D)]
        vectors = [_tagged(residues[i : i + D]) for i in range(D + 1)]
        combo = _first_dependency(vectors, A.field)
        if combo is None:
            raise ConductorError("h^(n-1) failed the finite conductor test")
        u = A.ring.zero()
        for k, c in combo.items():
            u = u + y**k * c
        u = u.monic()
    _, rem = hp.divmod_in(A.var, u)
    u_members = {j: A.member(y**j * u, bound) for j in range(max(D, 1))}
    certificate = {
        "ideal_degree": D,
        "h_power": hp,
        "u_divides_h_power": rem.is_zero(),
        "u_multiples_in_A": all(u_members.values()),
        "memberships": u_members,
        "ideal_certificate": cert,
    }
    if not rem.is_zero() or not certificate["u_multiples_in_A"]:
        raise ConductorError("conductor generator failed its own certificate")
    return ConductorResult(u, h, g, n, certificate)


def tensor_divides(A: CurveSubalgebra, result: ConductorResult, f: Polynomial) -> dict:
    """Componentwise conductor test for f in k[y] (x) B, then division by u.

    f is split as sum a_i * b_i over the monomials b_i in the other
    variables; (k[y] (x) B) f lies in A (x) B iff every a_i is in the
    conductor, and then u divides f.
    """
    var = A.var
    idx = f.ring.index[var]
    comps: dict = {}
    for e, c in f.terms.items():
        key = e[:idx] + e[idx + 1 :]
        comps.setdefault(key, {})[(e[idx],)] = c
    in_ideal = all(
        in_conductor(A, Polynomial(A.ring, terms), result.ideal_degree) for terms in comps.values()
    )
    u = result.u.lift(f.ring)
    q, r = f.divmod_in(var, u)
    return {"in_ideal": in_ideal, "divisible": r.is_zero(), "quotient": q if r.is_zero() else None}


@dataclass
class DivisionReport:
    hypothesis_ok: bool
    violations: list = field(default_factory=list)
    entries: list = field(default_factory=list)  # (i, D^i(u), quotient or None)
    degree: object = None

    @property
    def ok(self) -> bool:
        return self.hypothesis_ok and all(q is not None for _, _, q in self.entries)


def _components_in_A(A: CurveSubalgebra, f: Polynomial, var: str) -> list:
    """Components (as polynomials in y) of f split along monomials in the non-y, non-t variables."""
    idx = f.ring.index[var]
    comps: dict = {}
    for e, c in f.terms.items():
        key = e[:idx] + e[idx + 1 :]
        comps.setdefault(key, {})[(e[idx],)] = c
    return [Polynomial(A.ring, terms) for terms in comps.values()]


def check_u_divides_Dn_u(
    phi: ExponentialMap, A: CurveSubalgebra, u=None, extra: int = 0
) -> DivisionReport:
    """For phi on an ambient k[y] (x) B, divide D^i(u) by u for i <= deg_phi(u) (+ extra).

    The hypothesis is that phi restricts to A (x) B: each t-coefficient of
    phi(g) for g a generator of A or of B must lie in A (x) B.  Inputs
    failing it are reported as violations and never divided.
    """
    T: PresentedAlgebra = phi.algebra
    var = A.var
    if var not in T.variables:
        raise ConductorError(f"ambient algebra has no variable {var}")
    if any(var in r.variables() for r in T.relations):
        raise ConductorError(f"relations of the ambient algebra involve {var}")
    if u is None:
        u = conductor_generator(A).u
    u = A.ring(u)

    violations = []
    gens = [T.reduce(g.lift(T.ring)) for g in A.gens] + [T.ring.gen(n) for n in T.variables if n != var]
    for g in gens:
        image = phi.apply(g)
        for i, coeff in image.coefficients_in("t").items():
            coeff = coeff.lift(T.ring)
            for comp in _components_in_A(A, coeff, var):
                if not A.member(comp):
                    violations.append((str(g), i, str(comp)))
    if violations:
        return DivisionReport(False, violations)

    ut = u.lift(T.ring) if u.ring != T.ring else u
    deg = phi.phi_degree(ut)
    entries = []
    top = int(deg) if deg >= 0 else 0
    for i in range(top + extra + 1):
        di = phi.derivation_coeff(ut, i).rep
        q, r = di.divmod_in(var, ut)
        entries.append((i, di, q if r.is_zero() else None))
    return DivisionReport(True, [], entries, deg)
