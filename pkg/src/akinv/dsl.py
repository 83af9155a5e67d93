"""The ``.ak`` script language: parser, validator and canonical printer.

A script is a sequence of ``;``-terminated statements.  Declarations::

    field Q;                      field Fp(5);
    ring A = Q[x,y,z]/(x*y - z^2 + 1);
    ring B = Q[w];
    ring T = tensor(A, B);
    expmap f on A = { x -> x, z -> z + x*t, y -> y + 2*z*t + x*t^2 };
    expmap g on B = lnd { w -> 1 } bound 8;
    subalgebra S = Q[y] < y^2, y^3 >;
    hom h : A -> A = { x -> x, y -> y, z -> -z };

Commands::

    check-exp f;
    deg f [z, y] expect [1, 2];
    dcoeff f 2 [y];
    invariant f [x, x^2 + 1];
    iterative f [y, z] bound 8;
    rewrite f [y, z^2] pool-degree 3;
    conductor S with g expect y^2;
    tensor-extend f to T side left;
    specialize T at { x = 1, y = 0, z = 1 } side left;
    specialize avoid [t1*(t1 - 1)];
    push g at { x = 1, y = 0, z = 1 } bound 6 side left;
    ak-upper-bound [f, g] [x, y] expect [x];

``t`` is the deformation parameter of map images; ``t`` and ``s`` may not
be declared as ring variables.  Names are declared before use and never
redeclared.  ``print_script`` is the inverse of ``parse`` up to layout.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .algebra import tensor_names
from .expr import HYPHENATED, ParseError, TokenStream, Var, format_expr, parse_expr, tokenize
from .field import is_prime
from .poly import NEG_INF, RESERVED

DECLARATIONS = ("field", "ring", "expmap", "subalgebra", "hom")
COMMANDS = (
    "check-exp",
    "deg",
    "dcoeff",
    "invariant",
    "iterative",
    "rewrite",
    "conductor",
    "tensor-extend",
    "specialize",
    "push",
    "ak-upper-bound",
)
KEYWORDS = set(DECLARATIONS) | set(COMMANDS) | {
    "Q", "Fp", "tensor", "on", "lnd", "bound", "expect", "with", "to", "side", "at", "avoid",
    "pool-degree", "inf",
} | set(HYPHENATED)

_pos = dict(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class FieldSpec:
    characteristic: int  # 0 for Q

    def __str__(self):
        return "Q" if self.characteristic == 0 else f"Fp({self.characteristic})"


@dataclass(frozen=True)
class FieldDecl:
    field: FieldSpec
    pos: tuple = field(**_pos)


@dataclass(frozen=True)
class RingDecl:
    name: str
    field: FieldSpec
    variables: tuple
    relations: tuple  # expression trees
    pos: tuple = field(**_pos)


@dataclass(frozen=True)
class TensorDecl:
    name: str
    left: str
    right: str
    pos: tuple = field(**_pos)


@dataclass(frozen=True)
class ExpmapDecl:
    name: str
    ring: str
    images: tuple  # ((generator, expr), ...)
    lnd: bool = False
    bound: Optional[int] = None
    pos: tuple = field(**_pos)


@dataclass(frozen=True)
class SubalgebraDecl:
    name: str
    field: FieldSpec
    var: str
    gens: tuple
    pos: tuple = field(**_pos)


@dataclass(frozen=True)
class HomDecl:
    name: str
    source: str
    target: str
    images: tuple
    pos: tuple = field(**_pos)


@dataclass(frozen=True)
class Command:
    """One check invocation; fields that a command does not use stay None."""

    kind: str
    subject: Optional[str] = None  # map, subalgebra or tensor ring
    maps: Optional[tuple] = None  # ak-upper-bound map list
    order: Optional[int] = None  # dcoeff index
    elements: Optional[tuple] = None
    values: Optional[tuple] = None  # ((name, expr), ...) for "at {...}"
    avoid: Optional[tuple] = None
    other: Optional[str] = None  # "with g" / "to T"
    side: Optional[str] = None
    bound: Optional[int] = None
    pool_degree: Optional[int] = None
    expect: Optional[tuple] = None
    pos: tuple = field(**_pos)


@dataclass(frozen=True)
class Script:
    statements: tuple = ()

    @property
    def declarations(self) -> list:
        return [s for s in self.statements if not isinstance(s, Command)]

    @property
    def commands(self) -> list:
        return [s for s in self.statements if isinstance(s, Command)]


# -- scope ------------------------------------------------------------------

@dataclass
class _Entry:
    kind: str
    variables: tuple = ()
    field: Optional[FieldSpec] = None
    ring: Optional[str] = None


class _Scope:
    def __init__(self):
        self.names: dict[str, _Entry] = {}
        self.field: Optional[FieldSpec] = None

    def declare(self, tok, entry: _Entry):
        name = tok.value
        if name in KEYWORDS:
            raise ParseError(f"{name!r} is a keyword and cannot be declared", tok.line, tok.col)
        if name in RESERVED:
            raise ParseError(f"reserved name {name!r} cannot be declared", tok.line, tok.col)
        if name in self.names:
            raise ParseError(f"{name!r} is already declared (no shadowing)", tok.line, tok.col)
        self.names[name] = entry

    def lookup(self, tok, *kinds) -> _Entry:
        entry = self.names.get(tok.value)
        if entry is None:
            raise ParseError(f"undeclared identifier {tok.value!r}", tok.line, tok.col, kinds)
        if kinds and entry.kind not in kinds:
            raise ParseError(
                f"{tok.value!r} is declared as {entry.kind}", tok.line, tok.col, kinds
            )
        return entry


def _check_vars(node, allowed, where: str):
    bad = [v for v in _var_nodes(node) if v.name not in allowed]
    if bad:
        v = bad[0]
        raise ParseError(
            f"undeclared identifier {v.name!r} in {where}", v.pos[0], v.pos[1], tuple(sorted(allowed))
        )


def _var_nodes(node):
    out = []
    stack = [node]
    while stack:
        n = stack.pop()
        if isinstance(n, Var):
            out.append(n)
        elif hasattr(n, "operand"):
            stack.append(n.operand)
        elif hasattr(n, "base"):
            stack.append(n.base)
        elif hasattr(n, "left"):
            stack.extend((n.right, n.left))
    return out


# -- parser -----------------------------------------------------------------

class _Parser:
    def __init__(self, text: str):
        self.ts = TokenStream(tokenize(text))
        self.scope = _Scope()

    def parse(self) -> Script:
        stmts = []
        while self.ts.peek.kind != "eof":
            stmts.append(self.statement())
        return Script(tuple(stmts))

    def statement(self):
        ts = self.ts
        tok = ts.peek
        if tok.kind == "ident" and tok.value in DECLARATIONS:
            node = getattr(self, "decl_" + tok.value)()
        elif tok.value in COMMANDS and tok.kind in ("ident", "kw"):
            node = self.command()
        else:
            raise ts.error("syntax error", DECLARATIONS + COMMANDS)
        ts.expect(";")
        return node

    # declarations
    def field_spec(self) -> FieldSpec:
        ts = self.ts
        tok = ts.peek
        if ts.accept("Q"):
            spec = FieldSpec(0)
        elif ts.accept("Fp"):
            ts.expect("(")
            p = ts.expect_num()
            ts.expect(")")
            if not is_prime(p):
                raise ParseError(f"Fp({p}): {p} is not prime", tok.line, tok.col)
            spec = FieldSpec(p)
        else:
            raise ts.error("syntax error", ("'Q'", "'Fp'"))
        if self.scope.field is not None and spec != self.scope.field:
            raise ParseError(f"field {spec} differs from the declared field {self.scope.field}", tok.line, tok.col)
        return spec

    def decl_field(self):
        tok = self.ts.next()
        if self.scope.field is not None:
            raise ParseError("field is already declared", tok.line, tok.col)
        spec = self.field_spec()
        self.scope.field = spec
        return FieldDecl(spec, (tok.line, tok.col))

    def name_list(self, close: str) -> tuple:
        ts = self.ts
        toks = []
        if not ts.at(close):
            toks.append(ts.expect_ident())
            while ts.accept(","):
                toks.append(ts.expect_ident())
        ts.expect(close)
        return tuple(toks)

    def expr_list(self, close: str) -> tuple:
        ts = self.ts
        items = []
        if not ts.at(close):
            items.append(parse_expr(ts))
            while ts.accept(","):
                items.append(parse_expr(ts))
        ts.expect(close)
        return tuple(items)

    def decl_ring(self):
        ts = self.ts
        start = ts.next()
        name = ts.expect_ident("ring name")
        ts.expect("=")
        if ts.accept("tensor"):
            ts.expect("(")
            lt = ts.expect_ident("ring name")
            ts.expect(",")
            rt = ts.expect_ident("ring name")
            ts.expect(")")
            left = self.scope.lookup(lt, "ring")
            right = self.scope.lookup(rt, "ring")
            if left.field != right.field:
                raise ParseError(f"tensor of rings over {left.field} and {right.field}", lt.line, lt.col)
            lmap, rmap = tensor_names(left.variables, right.variables)
            variables = tuple(lmap.values()) + tuple(rmap.values())
            self.scope.declare(name, _Entry("ring", variables, left.field))
            return TensorDecl(name.value, lt.value, rt.value, (start.line, start.col))
        spec = self.field_spec()
        ts.expect("[")
        vtoks = self.name_list("]")
        seen = set()
        for v in vtoks:
            if v.value in RESERVED:
                raise ParseError(f"reserved variable {v.value!r} (t and s are deformation parameters)", v.line, v.col)
            if v.value in seen:
                raise ParseError(f"variable {v.value!r} listed twice", v.line, v.col)
            seen.add(v.value)
        variables = tuple(v.value for v in vtoks)
        relations = ()
        if ts.accept("/"):
            ts.expect("(")
            relations = self.expr_list(")")
            for r in relations:
                _check_vars(r, set(variables), f"relations of {name.value}")
        self.scope.declare(name, _Entry("ring", variables, spec))
        return RingDecl(name.value, spec, variables, relations, (start.line, start.col))

    def image_map(self, allowed: set, where: str, domain) -> tuple:
        ts = self.ts
        ts.expect("{")
        pairs = []
        if not ts.at("}"):
            while True:
                v = ts.expect_ident("generator")
                if v.value not in domain:
                    raise ParseError(f"{v.value!r} is not a generator of {where}", v.line, v.col, tuple(domain))
                if any(v.value == p[0] for p in pairs):
                    raise ParseError(f"image of {v.value!r} given twice", v.line, v.col)
                ts.expect("->")
                e = parse_expr(ts)
                _check_vars(e, allowed, f"image of {v.value}")
                pairs.append((v.value, e))
                if not ts.accept(","):
                    break
        ts.expect("}")
        return tuple(pairs)

    def decl_expmap(self):
        ts = self.ts
        start = ts.next()
        name = ts.expect_ident("map name")
        ts.expect("on")
        rt = ts.expect_ident("ring name")
        ring = self.scope.lookup(rt, "ring")
        ts.expect("=")
        lnd = ts.accept("lnd")
        allowed = set(ring.variables) if lnd else set(ring.variables) | {"t"}
        images = self.image_map(allowed, rt.value, ring.variables)
        bound = None
        if lnd and ts.accept("bound"):
            bound = ts.expect_num()
        self.scope.declare(name, _Entry("expmap", ring.variables, ring.field, rt.value))
        return ExpmapDecl(name.value, rt.value, images, lnd, bound, (start.line, start.col))

    def decl_subalgebra(self):
        ts = self.ts
        start = ts.next()
        name = ts.expect_ident("subalgebra name")
        ts.expect("=")
        spec = self.field_spec()
        ts.expect("[")
        var = ts.expect_ident("variable")
        if var.value in RESERVED:
            raise ParseError(f"reserved variable {var.value!r}", var.line, var.col)
        ts.expect("]")
        ts.expect("<")
        gens = self.expr_list(">")
        for g in gens:
            _check_vars(g, {var.value}, f"generators of {name.value}")
        self.scope.declare(name, _Entry("subalgebra", (var.value,), spec))
        return SubalgebraDecl(name.value, spec, var.value, gens, (start.line, start.col))

    def decl_hom(self):
        ts = self.ts
        start = ts.next()
        name = ts.expect_ident("hom name")
        ts.expect(":")
        st = ts.expect_ident("ring name")
        src = self.scope.lookup(st, "ring")
        ts.expect("->")
        tt = ts.expect_ident("ring name")
        tgt = self.scope.lookup(tt, "ring")
        ts.expect("=")
        images = self.image_map(set(tgt.variables), tt.value, src.variables)
        self.scope.declare(name, _Entry("hom", src.variables, src.field))
        return HomDecl(name.value, st.value, tt.value, images, (start.line, start.col))

    # commands
    def map_ref(self) -> tuple[str, _Entry]:
        tok = self.ts.expect_ident("map name")
        return tok.value, self.scope.lookup(tok, "expmap")

    def elements_of(self, entry: _Entry) -> tuple:
        self.ts.expect("[")
        items = self.expr_list("]")
        for e in items:
            _check_vars(e, set(entry.variables), "element list")
        return items

    def assignments(self, entry: _Entry) -> tuple:
        ts = self.ts
        ts.expect("{")
        pairs = []
        if not ts.at("}"):
            while True:
                v = ts.expect_ident("variable")
                if v.value not in entry.variables:
                    raise ParseError(f"undeclared identifier {v.value!r}", v.line, v.col, entry.variables)
                ts.expect("=")
                e = parse_expr(ts)
                _check_vars(e, set(), f"value of {v.value}")
                pairs.append((v.value, e))
                if not ts.accept(","):
                    break
        ts.expect("}")
        return tuple(pairs)

    def side(self) -> Optional[str]:
        ts = self.ts
        if ts.accept("side"):
            tok = ts.expect_ident("left or right")
            if tok.value not in ("left", "right"):
                raise ParseError("side must be left or right", tok.line, tok.col, ("left", "right"))
            return tok.value
        return None

    def opt_num(self, word: str) -> Optional[int]:
        return self.ts.expect_num() if self.ts.accept(word) else None

    def command(self) -> Command:
        ts = self.ts
        tok = ts.next()
        kind = tok.value
        pos = (tok.line, tok.col)
        if kind in ("check-exp",):
            name, _ = self.map_ref()
            return Command(kind, name, pos=pos)
        if kind == "deg":
            name, entry = self.map_ref()
            elems = self.elements_of(entry)
            expect = None
            if ts.accept("expect"):
                ts.expect("[")
                vals = []
                if not ts.at("]"):
                    vals.append(self.degree_value())
                    while ts.accept(","):
                        vals.append(self.degree_value())
                ts.expect("]")
                expect = tuple(vals)
            return Command(kind, name, elements=elems, expect=expect, pos=pos)
        if kind == "dcoeff":
            name, entry = self.map_ref()
            order = ts.expect_num()
            return Command(kind, name, order=order, elements=self.elements_of(entry), pos=pos)
        if kind == "invariant":
            name, entry = self.map_ref()
            return Command(kind, name, elements=self.elements_of(entry), pos=pos)
        if kind == "iterative":
            name, entry = self.map_ref()
            elems = self.elements_of(entry) if ts.at("[") else None
            return Command(kind, name, elements=elems, bound=self.opt_num("bound"), pos=pos)
        if kind == "rewrite":
            name, entry = self.map_ref()
            elems = self.elements_of(entry)
            return Command(kind, name, elements=elems, pool_degree=self.opt_num("pool-degree"), pos=pos)
        if kind == "conductor":
            st = ts.expect_ident("subalgebra name")
            sub = self.scope.lookup(st, "subalgebra")
            other = None
            if ts.accept("with"):
                mt = ts.peek
                other, m = self.map_ref()
                if sub.variables[0] not in m.variables:
                    raise ParseError(
                        f"map {other!r} does not act on a ring containing {sub.variables[0]!r}", mt.line, mt.col
                    )
            expect = None
            if ts.accept("expect"):
                e = parse_expr(ts)
                _check_vars(e, set(sub.variables), "expected conductor")
                expect = (e,)
            return Command(kind, st.value, other=other, expect=expect, pos=pos)
        if kind == "tensor-extend":
            name, _ = self.map_ref()
            ts.expect("to")
            rt = ts.expect_ident("ring name")
            self.scope.lookup(rt, "ring")
            return Command(kind, name, other=rt.value, side=self.side(), pos=pos)
        if kind == "specialize":
            if ts.accept("avoid"):
                ts.expect("[")
                polys = self.expr_list("]")
                for p in polys:
                    for v in _var_nodes(p):
                        if v.name in RESERVED:
                            raise ParseError(f"reserved variable {v.name!r}", *v.pos)
                return Command(kind, avoid=polys, pos=pos)
            rt = ts.expect_ident("ring name")
            ring = self.scope.lookup(rt, "ring")
            ts.expect("at")
            vals = self.assignments(ring)
            return Command(kind, rt.value, values=vals, side=self.side(), pos=pos)
        if kind == "push":
            name, entry = self.map_ref()
            ts.expect("at")
            vals = self.assignments(entry)
            return Command(kind, name, values=vals, bound=self.opt_num("bound"), side=self.side(), pos=pos)
        if kind == "ak-upper-bound":
            ts.expect("[")
            mtoks = self.name_list("]")
            if not mtoks:
                raise ParseError("need at least one map", tok.line, tok.col, ("map name",))
            entries = [self.scope.lookup(m, "expmap") for m in mtoks]
            rings = {e.ring for e in entries}
            if len(rings) > 1:
                raise ParseError("maps act on different rings", mtoks[0].line, mtoks[0].col)
            elems = self.elements_of(entries[0])
            expect = None
            if ts.accept("expect"):
                expect = self.elements_of(entries[0])
            return Command(kind, maps=tuple(m.value for m in mtoks), elements=elems, expect=expect, pos=pos)
        raise ParseError(f"unknown command {kind!r}", tok.line, tok.col, COMMANDS)

    def degree_value(self):
        ts = self.ts
        if ts.accept("-"):
            ts.expect("inf")
            return NEG_INF
        return ts.expect_num()


def parse(text: str) -> Script:
    """Parse and validate a script; raises :class:`ParseError` with line and column."""
    return _Parser(text).parse()


# -- printer ----------------------------------------------------------------

def _exprs(items) -> str:
    return ", ".join(format_expr(e) for e in items)


def _deg(v) -> str:
    return "-inf" if v == NEG_INF else str(v)


def format_statement(s) -> str:
    if isinstance(s, FieldDecl):
        return f"field {s.field};"
    if isinstance(s, RingDecl):
        out = f"ring {s.name} = {s.field}[{', '.join(s.variables)}]"
        if s.relations:
            out += f"/({_exprs(s.relations)})"
        return out + ";"
    if isinstance(s, TensorDecl):
        return f"ring {s.name} = tensor({s.left}, {s.right});"
    if isinstance(s, ExpmapDecl):
        body = _image_map(s.images)
        out = f"expmap {s.name} on {s.ring} = " + ("lnd " if s.lnd else "") + body
        if s.bound is not None:
            out += f" bound {s.bound}"
        return out + ";"
    if isinstance(s, SubalgebraDecl):
        return f"subalgebra {s.name} = {s.field}[{s.var}] < {_exprs(s.gens)} >;"
    if isinstance(s, HomDecl):
        return f"hom {s.name} : {s.source} -> {s.target} = {_image_map(s.images)};"
    if isinstance(s, Command):
        return _format_command(s) + ";"
    raise TypeError(f"not a statement: {s!r}")


def _image_map(pairs) -> str:
    if not pairs:
        return "{ }"
    return "{ " + ", ".join(f"{n} -> {format_expr(e)}" for n, e in pairs) + " }"


def _assignments(pairs) -> str:
    if not pairs:
        return "{ }"
    return "{ " + ", ".join(f"{n} = {format_expr(e)}" for n, e in pairs) + " }"


def _format_command(c: Command) -> str:
    parts = [c.kind]
    if c.kind == "ak-upper-bound":
        parts.append(f"[{', '.join(c.maps)}]")
    elif c.kind == "specialize" and c.avoid is not None:
        parts.append(f"avoid [{_exprs(c.avoid)}]")
        return " ".join(parts)
    else:
        parts.append(c.subject)
    if c.kind == "dcoeff":
        parts.append(str(c.order))
    if c.kind == "tensor-extend":
        parts.append(f"to {c.other}")
    elif c.other is not None:
        parts.append(f"with {c.other}")
    if c.values is not None:
        parts.append(f"at {_assignments(c.values)}")
    if c.elements is not None:
        parts.append(f"[{_exprs(c.elements)}]")
    if c.pool_degree is not None:
        parts.append(f"pool-degree {c.pool_degree}")
    if c.bound is not None:
        parts.append(f"bound {c.bound}")
    if c.side is not None:
        parts.append(f"side {c.side}")
    if c.expect is not None:
        if c.kind == "deg":
            parts.append(f"expect [{', '.join(_deg(v) for v in c.expect)}]")
        elif c.kind == "conductor":
            parts.append(f"expect {format_expr(c.expect[0])}")
        else:
            parts.append(f"expect [{_exprs(c.expect)}]")
    return " ".join(parts)


def print_script(script: Script) -> str:
    return "".join(format_statement(s) + "\n" for s in script.statements)
