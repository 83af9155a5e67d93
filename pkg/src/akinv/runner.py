"""Execute a parsed script and collect a deterministic report."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Optional

from . import dsl
from .algebra import AlgebraError, HomError, PresentedAlgebra, TensorAlgebra, hom, present, tensor
from .conductor import ConductorError, CurveSubalgebra, check_u_divides_Dn_u, conductor_generator
from .expmap import (
    AxiomViolation,
    ak_upper_bound,
    check_iterative,
    extend_to_tensor,
    from_lnd,
    make_expmap,
)
from .expr import evaluate
from .field import GF, QQ, Field, FieldError
from .groebner import ResourceLimitError
from .invariant import (
    DEFAULT_POOL_DEGREE,
    PoolMinimumNotGlobal,
    TrivialOnPool,
    default_pool,
    minimal_positive_degree,
    rewrite_in_invariants,
)
from .poly import NEG_INF, PolyRing
from .specialize import FieldTooSmall, NotOnVariety, PushError, find_good_point, push_expmap, sigma_hom

DEFAULT_BOUND = 8
DEFAULT_PUSH_BOUND = 6
STATUS_ORDER = {"pass": 0, "fail": 1, "error": 2}


@dataclass
class RunOptions:
    #: default bound for iterative/push when the script gives none
    bound: Optional[int] = None
    #: default candidate-pool degree for rewrite
    pool_degree: Optional[int] = None
    #: accepted for command-line compatibility; no command is randomized
    seed: Optional[int] = None
    timing: bool = False


@dataclass
class Entry:
    index: int
    line: int
    command: str
    status: str
    details: dict = field(default_factory=dict)
    seconds: float = 0.0

    def to_json(self, timing: bool = False) -> dict:
        out = {
            "index": self.index,
            "line": self.line,
            "command": self.command,
            "status": self.status,
            "details": self.details,
        }
        if timing:
            out["seconds"] = round(self.seconds, 6)
        return out


@dataclass
class Report:
    entries: list = field(default_factory=list)
    timing: bool = False
    seconds: float = 0.0

    @property
    def status(self) -> str:
        worst = max((STATUS_ORDER[e.status] for e in self.entries), default=0)
        return {0: "pass", 1: "fail", 2: "error"}[worst]

    @property
    def exit_code(self) -> int:
        return STATUS_ORDER[self.status]

    def counts(self) -> dict:
        out = {"pass": 0, "fail": 0, "error": 0}
        for e in self.entries:
            out[e.status] += 1
        return out

    def to_json(self) -> dict:
        out = {
            "status": self.status,
            "exit_code": self.exit_code,
            "summary": self.counts(),
            "entries": [e.to_json(self.timing) for e in self.entries],
        }
        if self.timing:
            out["seconds"] = round(self.seconds, 6)
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2) + "\n"

    def table(self) -> str:
        rows = [("#", "line", "status", "command", "result")]
        for e in self.entries:
            rows.append((str(e.index), str(e.line), e.status.upper(), e.command, _summary(e)))
        widths = [max(len(r[i]) for r in rows) for i in range(4)]
        lines = []
        for r in rows:
            cells = [r[i].ljust(widths[i]) for i in range(4)] + [r[4]]
            lines.append("  ".join(cells).rstrip())
        c = self.counts()
        lines.append(f"{self.status.upper()}: {c['pass']} pass, {c['fail']} fail, {c['error']} error")
        return "\n".join(lines) + "\n"


def _summary(e: Entry) -> str:
    d = e.details
    for key in ("message", "reason", "summary"):
        if key in d:
            return str(d[key])
    return ""


def _deg(d):
    return "-inf" if d == NEG_INF else int(d)


class ScriptError(AlgebraError):
    pass


# -- environment --------------------------------------------------------------

class _Env:
    def __init__(self):
        self.field: Optional[Field] = None
        self.rings: dict = {}
        self.maps: dict = {}
        self.map_failures: dict = {}  # name -> AxiomViolation
        self.broken: dict = {}  # name -> message, for declarations that errored
        self.subalgebras: dict = {}
        self.homs: dict = {}

    def get(self, table: dict, name: str):
        if name in self.broken:
            raise ScriptError(f"{name} is unavailable: {self.broken[name]}")
        if name in self.map_failures:
            raise ScriptError(f"{name} is not an exponential map: {self.map_failures[name]}")
        return table[name]


def _field(spec: dsl.FieldSpec) -> Field:
    return QQ if spec.characteristic == 0 else GF(spec.characteristic)


def _declare(env: _Env, s) -> Optional[tuple]:
    """Apply a declaration; returns (status, details) when it should be reported."""
    if isinstance(s, dsl.FieldDecl):
        env.field = _field(s.field)
        return None
    if isinstance(s, dsl.RingDecl):
        F = _field(s.field)
        ring = PolyRing(F, s.variables)
        rels = [evaluate(r, ring) for r in s.relations]
        env.rings[s.name] = present(s.variables, rels, F)
        return None
    if isinstance(s, dsl.TensorDecl):
        env.rings[s.name] = tensor(env.get(env.rings, s.left), env.get(env.rings, s.right))
        return None
    if isinstance(s, dsl.ExpmapDecl):
        A = env.get(env.rings, s.ring)
        ring = A.ring if s.lnd else A.ring_t
        images = {n: evaluate(e, ring) for n, e in s.images}
        try:
            if s.lnd:
                env.maps[s.name] = from_lnd(A, images, s.bound if s.bound is not None else 32)
            else:
                env.maps[s.name] = make_expmap(A, images)
        except AxiomViolation as exc:
            env.map_failures[s.name] = exc
        return None
    if isinstance(s, dsl.SubalgebraDecl):
        F = _field(s.field)
        ring = PolyRing(F, (s.var,))
        env.subalgebras[s.name] = CurveSubalgebra([evaluate(g, ring) for g in s.gens], ring=ring)
        return None
    if isinstance(s, dsl.HomDecl):
        src = env.get(env.rings, s.source)
        tgt = env.get(env.rings, s.target)
        images = {n: tgt.element(evaluate(e, tgt.ring)) for n, e in s.images}
        try:
            env.homs[s.name] = hom(src, tgt, images)
        except HomError as exc:
            env.broken[s.name] = str(exc)
            return "fail", {"message": str(exc), "relation": str(exc.relation), "image": str(exc.image)}
        return None
    raise TypeError(f"unknown declaration {s!r}")


def _decl_name(s) -> Optional[str]:
    return getattr(s, "name", None)


# -- commands -----------------------------------------------------------------

def _elements(A: PresentedAlgebra, exprs) -> list:
    return [A.element(evaluate(e, A.ring)) for e in exprs]


def _constant(node, F: Field):
    return evaluate(node, PolyRing(F, ())).constant_coeff()


def _violation(exc: AxiomViolation) -> dict:
    return {
        "message": str(exc),
        "axiom": exc.axiom,
        "witness": exc.witness,
        "difference": str(exc.difference),
    }


def _cmd_check_exp(env, c, opts):
    if c.subject in env.map_failures:
        return "fail", _violation(env.map_failures[c.subject])
    phi = env.get(env.maps, c.subject)
    rec = phi.verified
    return "pass", {
        "summary": "eps0, relations and comultiplication verified",
        "generators": list(rec.checked_generators),
        "relations": list(rec.checked_relations),
        "images": {n: str(f) for n, f in phi.images.items()},
    }


def _cmd_deg(env, c, opts):
    phi = env.get(env.maps, c.subject)
    elems = _elements(phi.algebra, c.elements)
    degs = [phi.phi_degree(a) for a in elems]
    rows = [{"element": str(a), "degree": _deg(d)} for a, d in zip(elems, degs)]
    details = {"degrees": rows, "summary": ", ".join(f"deg {r['element']} = {r['degree']}" for r in rows)}
    if c.expect is not None:
        want = list(c.expect)
        got = [NEG_INF if d == NEG_INF else int(d) for d in degs]
        details["expected"] = [_deg(v) for v in want]
        if want != got:
            details["message"] = "degrees differ from expected"
            return "fail", details
    return "pass", details


def _cmd_dcoeff(env, c, opts):
    phi = env.get(env.maps, c.subject)
    rows = [
        {"element": str(a), "i": c.order, "value": str(phi.derivation_coeff(a, c.order))}
        for a in _elements(phi.algebra, c.elements)
    ]
    return "pass", {"values": rows, "summary": ", ".join(f"D^{r['i']}({r['element']}) = {r['value']}" for r in rows)}


def _cmd_invariant(env, c, opts):
    phi = env.get(env.maps, c.subject)
    rows = []
    for a in _elements(phi.algebra, c.elements):
        rows.append({"element": str(a), "invariant": phi.is_invariant(a), "degree": _deg(phi.phi_degree(a))})
    moved = [r["element"] for r in rows if not r["invariant"]]
    details = {"elements": rows}
    if moved:
        details["message"] = f"not invariant: {', '.join(moved)}"
        return "fail", details
    details["summary"] = "all invariant"
    return "pass", details


def _cmd_iterative(env, c, opts):
    phi = env.get(env.maps, c.subject)
    A = phi.algebra
    samples = _elements(A, c.elements) if c.elements is not None else list(A.gens)
    bound = c.bound if c.bound is not None else (opts.bound if opts.bound is not None else DEFAULT_BOUND)
    rep = check_iterative(phi, samples, bound)
    details = {"bound": bound, "checked": rep.checked, "samples": [str(a) for a in samples]}
    if not rep.ok:
        details["failures"] = [{"element": str(a), "i": i, "j": j} for a, i, j in rep.failures]
        a, i, j = rep.failures[0]
        details["message"] = f"D^{i} D^{j} != C({i + j},{i}) D^{i + j} on {a}"
        return "fail", details
    details["summary"] = f"{rep.checked} identities hold up to bound {bound}"
    return "pass", details


def _cmd_rewrite(env, c, opts):
    phi = env.get(env.maps, c.subject)
    A = phi.algebra
    pd = c.pool_degree if c.pool_degree is not None else (opts.pool_degree or DEFAULT_POOL_DEGREE)
    try:
        x, n = minimal_positive_degree(phi, default_pool(A, pd))
    except TrivialOnPool as exc:
        return "error", {"message": str(exc), "pool_degree": pd}
    cval = phi.derivation_coeff(x, n)
    details = {"x": str(x), "n": int(n), "c": str(cval), "pool_degree": pd}
    rows = []
    for a in _elements(A, c.elements):
        try:
            rw = rewrite_in_invariants(phi, a, x, n, cval)
        except PoolMinimumNotGlobal as exc:
            details["rewrites"] = rows
            details["message"] = str(exc)
            return "fail", details
        ok = rw.check(phi)
        rows.append(
            {"element": str(a), "power": rw.power, "coefficients": [str(e) for e in rw.coefficients], "verified": ok}
        )
    details["rewrites"] = rows
    bad = [r["element"] for r in rows if not r["verified"]]
    if bad:
        details["message"] = f"reconstruction failed for {', '.join(bad)}"
        return "fail", details
    details["summary"] = f"x = {x}, n = {n}, c = {cval}; {len(rows)} rewrites verified"
    return "pass", details


def _cmd_conductor(env, c, opts):
    S = env.get(env.subalgebras, c.subject)
    res = conductor_generator(S)
    details = {
        "u": str(res.u),
        "g": str(res.g),
        "h": str(res.h),
        "n": res.n,
        "ideal_degree": res.ideal_degree,
        "summary": f"u = {res.u} (y = ({res.g})/({res.h}))",
    }
    status = "pass"
    if c.expect is not None:
        want = evaluate(c.expect[0], S.ring)
        details["expected"] = str(want)
        if want != res.u:
            details["message"] = f"conductor {res.u} differs from expected {want}"
            status = "fail"
    if c.other is not None:
        phi = env.get(env.maps, c.other)
        rep = check_u_divides_Dn_u(phi, S, res.u)
        div = {"hypothesis": rep.hypothesis_ok}
        if not rep.hypothesis_ok:
            div["violations"] = [{"generator": g, "i": i, "component": comp} for g, i, comp in rep.violations]
            g, i, comp = rep.violations[0]
            details["division"] = div
            details["message"] = (
                f"hypothesis violated: D^{i}({g}) has component {comp} outside the subalgebra; not divided"
            )
            return "fail", details
        div["degree"] = _deg(rep.degree)
        div["entries"] = [
            {"i": i, "D": str(d), "quotient": None if q is None else str(q)} for i, d, q in rep.entries
        ]
        details["division"] = div
        if not rep.ok:
            bad = [i for i, _, q in rep.entries if q is None]
            details["message"] = f"u does not divide D^i(u) for i in {bad}"
            return "fail", details
        if status == "pass":
            details["summary"] += f"; u | D^i(u) for i <= {div['degree']}"
    return status, details


def _cmd_tensor_extend(env, c, opts):
    phi = env.get(env.maps, c.subject)
    T = env.get(env.rings, c.other)
    if not isinstance(T, TensorAlgebra):
        return "error", {"message": f"{c.other} is not a tensor product"}
    ext = extend_to_tensor(phi, T, c.side or "left")
    fixed = [n for n in T.variables if ext.is_invariant(T.gen(n))]
    moved = [n for n in T.variables if n not in fixed]
    return "pass", {
        "images": {n: str(f) for n, f in ext.images.items()},
        "fixed": fixed,
        "moved": moved,
        "summary": f"fixes {', '.join(fixed) or 'nothing'}; moves {', '.join(moved) or 'nothing'}",
    }


def _cmd_specialize(env, c, opts):
    F = env.field or QQ
    if c.avoid is not None:
        params = []
        for node in c.avoid:
            for v in dsl._var_nodes(node):
                if v.name not in params:
                    params.append(v.name)
        ring = PolyRing(F, tuple(sorted(params)))
        polys = [evaluate(p, ring) for p in c.avoid]
        try:
            pt = find_good_point(polys, F)
        except FieldTooSmall as exc:
            return "fail", {"message": str(exc)}
        vals = {k: str(v) for k, v in pt.values.items()}
        return "pass", {
            "values": vals,
            "witness": str(pt.witness),
            "guaranteed": pt.guaranteed,
            "summary": ", ".join(f"{k} = {v}" for k, v in vals.items()) or "no parameters",
        }
    R = env.get(env.rings, c.subject)
    values = {n: _constant(e, R.field) for n, e in c.values}
    if not isinstance(R, TensorAlgebra):
        missing = [n for n in R.variables if n not in values]
        if missing:
            return "error", {"message": f"no value given for {', '.join(missing)}"}
        for r in R.relations:
            v = r.evaluate(values)
            if v != R.field.zero:
                return "fail", {"message": f"values not on the variety: relation {r} evaluates to {v}", "relation": str(r)}
        return "pass", {"summary": "point lies on the variety"}
    try:
        sigma = sigma_hom(R, values, c.side or "left")
    except NotOnVariety as exc:
        return "fail", {"message": str(exc), "relation": str(exc.relation), "value": str(exc.value)}
    return "pass", {"images": {n: str(e) for n, e in sigma.images.items()}, "summary": f"sigma = {sigma}"}


def _cmd_push(env, c, opts):
    phi = env.get(env.maps, c.subject)
    T = phi.algebra
    if not isinstance(T, TensorAlgebra):
        return "error", {"message": f"{c.subject} does not act on a tensor product"}
    values = {n: _constant(e, T.field) for n, e in c.values}
    bound = c.bound if c.bound is not None else (opts.bound if opts.bound is not None else DEFAULT_PUSH_BOUND)
    try:
        sigma = sigma_hom(T, values, c.side or "left")
    except NotOnVariety as exc:
        return "fail", {"message": str(exc), "relation": str(exc.relation)}
    try:
        res = push_expmap(phi, sigma, bound)
    except PushError as exc:
        details = {"message": str(exc), "moves": list(exc.moves_A)}
        if exc.violation is not None:
            details.update({k: v for k, v in _violation(exc.violation).items() if k != "message"})
        return "fail", details
    details = {
        "psi": {n: str(f) for n, f in res.psi.images.items()},
        "bound": bound,
        "iterative": res.iterative.ok,
        "moves_specialized_factor": list(res.moves_A),
    }
    if not res.iterative.ok:
        details["message"] = "pushed map is not iterative"
        return "fail", details
    details["summary"] = f"psi = {res.psi}, iterative to bound {bound}"
    return "pass", details


def _cmd_ak_upper_bound(env, c, opts):
    maps = [env.get(env.maps, m) for m in c.maps]
    A = maps[0].algebra
    table = ak_upper_bound(maps, _elements(A, c.elements))
    rows = [{"element": str(a), "in_intersection": ok} for a, ok in table.items()]
    survivors = [r["element"] for r in rows if r["in_intersection"]]
    details = {"membership": rows, "summary": f"in every invariant ring: {', '.join(survivors) or 'none'}"}
    if c.expect is not None:
        want = sorted(str(a) for a in _elements(A, c.expect))
        details["expected"] = want
        if want != sorted(survivors):
            details["message"] = "surviving elements differ from expected"
            return "fail", details
    return "pass", details


_COMMANDS = {
    "check-exp": _cmd_check_exp,
    "deg": _cmd_deg,
    "dcoeff": _cmd_dcoeff,
    "invariant": _cmd_invariant,
    "iterative": _cmd_iterative,
    "rewrite": _cmd_rewrite,
    "conductor": _cmd_conductor,
    "tensor-extend": _cmd_tensor_extend,
    "specialize": _cmd_specialize,
    "push": _cmd_push,
    "ak-upper-bound": _cmd_ak_upper_bound,
}

# failures of user input or resource caps become error entries; the run goes on
_RECOVERABLE = (
    AlgebraError,
    ConductorError,
    FieldError,
    ResourceLimitError,
    ValueError,
    ArithmeticError,
    AssertionError,
)


def run(script: dsl.Script, options: RunOptions | None = None) -> Report:
    """Execute declarations and commands in order."""
    opts = options or RunOptions()
    env = _Env()
    report = Report(timing=opts.timing)
    t_start = time.perf_counter()
    for s in script.statements:
        t0 = time.perf_counter()
        text = dsl.format_statement(s)
        try:
            if isinstance(s, dsl.Command):
                status, details = _COMMANDS[s.kind](env, s, opts)
            else:
                out = _declare(env, s)
                if out is None:
                    continue
                status, details = out
        except _RECOVERABLE as exc:
            name = _decl_name(s)
            if name is not None and not isinstance(s, dsl.Command):
                env.broken[name] = str(exc)
            status, details = "error", {"message": str(exc), "type": type(exc).__name__}
        report.entries.append(
            Entry(len(report.entries) + 1, s.pos[0], text, status, details, time.perf_counter() - t0)
        )
    report.seconds = time.perf_counter() - t_start
    return report


def run_text(text: str, options: RunOptions | None = None) -> Report:
    return run(dsl.parse(text), options)
