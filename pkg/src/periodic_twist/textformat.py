"""Text format for algebras, modules, bimodules, maps and expected values.

A document is a sequence of top-level statements, one per line, some of
which open an indented block closed by ``end``.  ``#`` starts a comment.

Grammar (informal)::

    algebra NAME
      field P
      vertices V1 V2 ...
      arrow NAME: SRC -> TGT
      relation PATHEXPR
      zero_paths LENGTH distinct          # all paths of LENGTH between distinct vertices
      bound N                             # all paths of length >= N vanish
    end

    presentation NAME in AMBIENT          # NAME ~ e AMBIENT e, e = sum of listed vertices
      vertex V -> W
      arrow NAME -> PATHEXPR
    end

    automorphism NAME of ALGEBRA
      vertex V -> W
      arrow NAME -> PATHEXPR
    end

    subalgebra NAME of ALGEBRA
      idempotent NAME = PATHEXPR
      arrow NAME = PATHEXPR
    end

    module NAME = simple ALG V | projective ALG V | hom ALG V
                | induce SUBALG V | twist MODULE AUT | dual MODULE
                | regular ALG left|right
    bimodule NAME = [{AUT}]ALG [(x)[[{AUT}]SUBALG] [ALG[{AUT}]]]
    map NAME: SRC -> DST
      let $NAME = TENSOREXPR
      TENSOREXPR -> TENSOREXPR
    end
    sequence NAME = B0 -[d]-> B1 -[d]-> ... -> Bk
    witness NAME = SEQUENCE twist AUT period N
    expect KIND SUBJECT = VALUE @ "tag"

Path expressions are written in the usual algebraic order: ``a*b`` is the
product of ``a`` and ``b``, which is nonzero only when the target of ``b``
is the source of ``a`` (``b`` is traversed first).  ``e_V`` is the trivial
path at vertex ``V`` and ``id`` the identity.  Tensor expressions are sums
of ``[INT *] PATHTERM (x) PATHTERM`` and ``$NAME`` references.  Long
expressions may continue on following lines that begin with ``+`` or ``-``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

__all__ = [
    "ParseError",
    "parse_path_expr",
    "parse_tensor_expr",
    "parse_document",
    "serialize_document",
    "format_path_expr",
    "format_tensor_expr",
]


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.line = line
        self.col = col
        loc = f"line {line}, column {col}: " if line else (f"column {col}: " if col else "")
        super().__init__(loc + message)


_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t]+)
  | (?P<tensor>\(x\))
  | (?P<int>\d+)
  | (?P<var>\$[A-Za-z_][A-Za-z0-9_']*)
  | (?P<name>[A-Za-z][A-Za-z0-9_']*)
  | (?P<op>[-+*()])
    """,
    re.VERBOSE,
)


@dataclass
class _Tok:
    kind: str
    text: str
    col: int


def _tokenize(text: str, line: int = 0, col0: int = 1) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col0 + pos)
        kind = m.lastgroup
        if kind != "ws":
            toks.append(_Tok(kind, m.group(), col0 + pos))
        pos = m.end()
    toks.append(_Tok("eof", "", col0 + len(text)))
    return toks


# A polynomial in noncommuting atoms: {tuple(atoms): int}; () is the identity.
Poly = dict


def _padd(a: Poly, b: Poly, sign: int = 1) -> Poly:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + sign * v
    return {k: v for k, v in out.items() if v != 0}


def _pmul(a: Poly, b: Poly) -> Poly:
    out: Poly = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            k = ka + kb
            out[k] = out.get(k, 0) + va * vb
    return {k: v for k, v in out.items() if v != 0}


class _Parser:
    def __init__(self, toks: list[_Tok], line: int):
        self.toks = toks
        self.i = 0
        self.line = line

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def error(self, msg: str):
        raise ParseError(msg, self.line, self.tok.col)

    def eat(self, kind: str, text: str | None = None) -> _Tok:
        t = self.tok
        if t.kind != kind or (text is not None and t.text != text):
            want = text or kind
            self.error(f"expected {want!r}, found {t.text or 'end of input'!r}")
        self.i += 1
        return t

    def at(self, kind: str, text: str | None = None) -> bool:
        t = self.tok
        return t.kind == kind and (text is None or t.text == text)

    # path expressions
    def expr(self) -> Poly:
        sign = 1
        if self.at("op", "+") or self.at("op", "-"):
            sign = -1 if self.eat("op").text == "-" else 1
        acc = _padd({}, self.term(), sign)
        while self.at("op", "+") or self.at("op", "-"):
            sign = -1 if self.eat("op").text == "-" else 1
            acc = _padd(acc, self.term(), sign)
        return acc

    def term(self) -> Poly:
        acc = self.factor()
        while self.at("op", "*"):
            self.eat("op")
            acc = _pmul(acc, self.factor())
        return acc

    def factor(self) -> Poly:
        t = self.tok
        if t.kind == "int":
            self.i += 1
            return {(): int(t.text)} if int(t.text) else {}
        if t.kind == "name":
            self.i += 1
            if t.text == "id":
                return {(): 1}
            return {(t.text,): 1}
        if self.at("op", "("):
            self.eat("op")
            inner = self.expr()
            self.eat("op", ")")
            return inner
        self.error(f"expected a path factor, found {t.text or 'end of input'!r}")

    # tensor expressions: list of (coeff, left Poly, right Poly) or ("$name", coeff)
    def texpr(self) -> list:
        out = []
        sign = 1
        if self.at("op", "+") or self.at("op", "-"):
            sign = -1 if self.eat("op").text == "-" else 1
        out.extend(self.tterm(sign))
        while self.at("op", "+") or self.at("op", "-"):
            sign = -1 if self.eat("op").text == "-" else 1
            out.extend(self.tterm(sign))
        return out

    def tterm(self, sign: int) -> list:
        coeff = sign
        if self.at("var"):
            return [TensorRef(self.eat("var").text[1:], coeff)]
        if self.at("int") and self.toks[self.i + 1].kind == "op" and self.toks[self.i + 1].text == "*":
            nxt = self.toks[self.i + 2]
            if nxt.kind == "var":
                coeff *= int(self.eat("int").text)
                self.eat("op", "*")
                return [TensorRef(self.eat("var").text[1:], coeff)]
        left = self.term()
        self.eat("tensor")
        right = self.term()
        return [TensorTerm(coeff, left, right)]


@dataclass(frozen=True)
class TensorTerm:
    coeff: int
    left: Poly
    right: Poly


@dataclass(frozen=True)
class TensorRef:
    name: str
    coeff: int


def parse_path_expr(text: str, line: int = 0, col: int = 1) -> Poly:
    """Parse a path expression into ``{tuple_of_atoms: coefficient}``."""
    p = _Parser(_tokenize(text, line, col), line)
    out = p.expr()
    if not p.at("eof"):
        p.error(f"unexpected {p.tok.text!r}")
    return out


def parse_tensor_expr(text: str, line: int = 0, col: int = 1) -> list:
    """Parse a tensor expression into a list of ``TensorTerm``/``TensorRef``."""
    p = _Parser(_tokenize(text, line, col), line)
    out = p.texpr()
    if not p.at("eof"):
        p.error(f"unexpected {p.tok.text!r}")
    return out


def _fmt_monomial(atoms: tuple) -> str:
    return "*".join(atoms) if atoms else "id"


def format_path_expr(poly: Poly) -> str:
    if not poly:
        return "0"
    parts = []
    for k, (atoms, c) in enumerate(sorted(poly.items(), key=lambda kv: (len(kv[0]), kv[0]))):
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        body = _fmt_monomial(atoms)
        if mag != 1:
            body = f"{mag}" if not atoms else f"{mag}*{body}"
        if k == 0:
            parts.append(("-" if sign == "-" else "") + body)
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)


def _fmt_side(poly: Poly) -> str:
    s = format_path_expr(poly)
    if len(poly) > 1 or s.startswith("-") or (len(poly) == 1 and next(iter(poly.values())) != 1):
        return f"({s})"
    return s


def format_tensor_expr(terms: list) -> str:
    if not terms:
        return "0"
    out = []
    for k, t in enumerate(terms):
        c = t.coeff
        if isinstance(t, TensorRef):
            body = f"${t.name}"
        else:
            body = f"{_fmt_side(t.left)} (x) {_fmt_side(t.right)}"
        mag = abs(c)
        if mag != 1:
            body = f"{mag} * {body}"
        if k == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


# ---------------------------------------------------------------------------
# documents


@dataclass
class Stmt:
    kind: str
    name: str
    args: dict = field(default_factory=dict)
    body: list = field(default_factory=list)
    line: int = 0

    def __eq__(self, other):
        return (
            isinstance(other, Stmt)
            and (self.kind, self.name, self.args, self.body)
            == (other.kind, other.name, other.args, other.body)
        )


_BLOCKS = {"algebra", "presentation", "automorphism", "subalgebra", "map", "module"}


def _logical_lines(text: str):
    """Yield ``(line_no, indent, content)`` with continuation lines joined."""
    pending = None
    for no, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0].rstrip()
        if not content.strip():
            continue
        indent = len(content) - len(content.lstrip())
        stripped = content.strip()
        if pending is not None and stripped[0] in "+-" and indent > pending[1]:
            pending = (pending[0], pending[1], pending[2] + " " + stripped)
            continue
        if pending is not None:
            yield pending
        pending = (no, indent, stripped)
    if pending is not None:
        yield pending


_HEAD = {
    "algebra": re.compile(r"^algebra\s+(?P<name>\S+)$"),
    "presentation": re.compile(r"^presentation\s+(?P<name>\S+)\s+in\s+(?P<ambient>\S+)$"),
    "automorphism": re.compile(r"^automorphism\s+(?P<name>\S+)\s+of\s+(?P<algebra>\S+)$"),
    "subalgebra": re.compile(r"^subalgebra\s+(?P<name>\S+)\s+of\s+(?P<algebra>\S+)$"),
    "map": re.compile(r"^map\s+(?P<name>[^:\s]+)\s*:\s*(?P<src>\S+)\s*->\s*(?P<dst>\S+)$"),
    "module_block": re.compile(
        r"^module\s+(?P<name>\S+)\s+over\s+(?P<algebra>\S+)\s+(?P<side>left|right)$"
    ),
    "module": re.compile(r"^module\s+(?P<name>\S+)\s*=\s*(?P<rest>.+)$"),
    "bimodule": re.compile(r"^bimodule\s+(?P<name>\S+)\s*=\s*(?P<rest>.+)$"),
    "sequence": re.compile(r"^sequence\s+(?P<name>\S+)\s*=\s*(?P<rest>.+)$"),
    "witness": re.compile(
        r"^witness\s+(?P<name>\S+)\s*=\s*(?P<sequence>\S+)\s+twist\s+(?P<aut>\S+)\s+period\s+(?P<n>\d+)$"
    ),
    "expect": re.compile(
        r'^expect\s+(?P<what>[a-z_]+)\s+(?P<subject>\S+)\s*=\s*(?P<value>[^@]*?)\s*(@\s*"(?P<tag>[^"]*)")?$'
    ),
}

_MODULE_KINDS = {
    "simple": 2,
    "projective": 2,
    "hom": 2,
    "induce": 2,
    "twist": 2,
    "dual": 1,
    "regular": 2,
}

_BIMOD = re.compile(
    r"^(?:\{(?P<lt>[^}]+)\})?(?P<left>[A-Za-z]\w*)(?:\{(?P<lrt>[^}]+)\})?"
    r"(?:\s*\(x\)\[(?:\{(?P<mt>[^}]+)\})?(?P<mid>[A-Za-z]\w*)\]\s*"
    r"(?:\{(?P<rlt>[^}]+)\})?(?P<right>[A-Za-z]\w*)(?:\{(?P<rt>[^}]+)\})?)?$"
)

_SEQ_ARROW = re.compile(r"\s*-\[(?P<d>[^\]]+)\]->\s*")


def _body_line(kind: str, no: int, indent: int, text: str):
    """Parse one line inside a block into a tuple."""
    col = indent + 1
    if kind == "algebra":
        m = re.match(r"^field\s+(\d+)$", text)
        if m:
            return ("field", int(m.group(1)))
        m = re.match(r"^vertices\s+(.+)$", text)
        if m:
            return ("vertices", tuple(m.group(1).split()))
        m = re.match(r"^arrow\s+([A-Za-z][\w']*)\s*:\s*(\S+)\s*->\s*(\S+)$", text)
        if m:
            return ("arrow", m.group(1), m.group(2), m.group(3))
        m = re.match(r"^relation\s+(.+)$", text)
        if m:
            return ("relation", parse_path_expr(m.group(1), no, col + m.start(1)))
        m = re.match(r"^zero_paths\s+(\d+)\s+distinct$", text)
        if m:
            return ("zero_paths", int(m.group(1)))
        m = re.match(r"^bound\s+(\d+)$", text)
        if m:
            return ("bound", int(m.group(1)))
    elif kind in ("presentation", "automorphism"):
        m = re.match(r"^vertex\s+(\S+)\s*->\s*(\S+)$", text)
        if m:
            return ("vertex", m.group(1), m.group(2))
        m = re.match(r"^arrow\s+([A-Za-z][\w']*)\s*->\s*(.+)$", text)
        if m:
            return ("arrow", m.group(1), parse_path_expr(m.group(2), no, col + m.start(2)))
    elif kind == "subalgebra":
        m = re.match(r"^(idempotent|arrow)\s+(\w[\w']*)\s*=\s*(.+)$", text)
        if m:
            return (m.group(1), m.group(2), parse_path_expr(m.group(3), no, col + m.start(3)))
    elif kind == "map":
        m = re.match(r"^let\s+\$([A-Za-z_][\w']*)\s*=\s*(.+)$", text)
        if m:
            return ("let", m.group(1), parse_tensor_expr(m.group(2), no, col + m.start(2)))
        m = re.match(r"^(.+?)\s*->\s*(.+)$", text)
        if m:
            lhs = m.group(1)
            return (
                "value",
                _parse_generator(lhs, no, col),
                _parse_generator(m.group(2), no, col + m.start(2)),
            )
    elif kind == "module_block":
        m = re.match(r"^dims\s+(.+)$", text)
        if m:
            dims = []
            for item in m.group(1).split():
                v, _, d = item.partition(":")
                if not d.isdigit():
                    raise ParseError(f"bad dimension entry {item!r}", no, col)
                dims.append((v, int(d)))
            return ("dims", tuple(dims))
        m = re.match(r"^act\s+([A-Za-z][\w']*)\s*=\s*(.+)$", text)
        if m:
            return ("act", m.group(1), _parse_matrix(m.group(2), no, col + m.start(2)))
    raise ParseError(f"cannot parse {text!r} inside {kind} block", no, col)


def _parse_generator(text: str, no: int, col: int):
    if "(x)" in text or text.startswith("$"):
        return ("tensor", parse_tensor_expr(text, no, col))
    return ("element", parse_path_expr(text, no, col))


def _parse_matrix(text: str, no: int, col: int):
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ParseError("matrix must be written as [[..], [..]]", no, col)
    rows = re.findall(r"\[([^\[\]]*)\]", text[1:-1])
    out = []
    for r in rows:
        entries = [e for e in re.split(r"[,\s]+", r.strip()) if e]
        try:
            out.append(tuple(int(e) for e in entries))
        except ValueError:
            raise ParseError(f"non-integer matrix entry in {r!r}", no, col) from None
    if len({len(r) for r in out}) > 1:
        raise ParseError("ragged matrix", no, col)
    return tuple(out)


def _parse_head(no: int, indent: int, text: str) -> tuple[Stmt, bool]:
    col = indent + 1
    for key in ("algebra", "presentation", "automorphism", "subalgebra", "map", "module_block"):
        m = _HEAD[key].match(text)
        if m:
            g = m.groupdict()
            name = g.pop("name")
            kind = "module" if key == "module_block" else key
            if key == "module_block":
                g["kind"] = "literal"
            return Stmt(kind, name, g, [], no), True
    m = _HEAD["module"].match(text)
    if m:
        words = m.group("rest").split()
        if not words or words[0] not in _MODULE_KINDS or len(words) - 1 != _MODULE_KINDS[words[0]]:
            raise ParseError(f"bad module construction {m.group('rest')!r}", no, col + m.start("rest"))
        return Stmt("module", m.group("name"), {"kind": words[0], "args": tuple(words[1:])}, [], no), False
    m = _HEAD["bimodule"].match(text)
    if m:
        b = _BIMOD.match(m.group("rest").strip())
        if not b:
            raise ParseError(f"bad bimodule expression {m.group('rest')!r}", no, col + m.start("rest"))
        args = {k: v for k, v in b.groupdict().items() if v is not None}
        return Stmt("bimodule", m.group("name"), args, [], no), False
    m = _HEAD["sequence"].match(text)
    if m:
        rest = m.group("rest")
        parts = _SEQ_ARROW.split(rest)
        terms = parts[0::2]
        maps = parts[1::2]
        if len(terms) < 2 or any(not t.strip() or " " in t.strip() for t in terms):
            raise ParseError("sequence must read B0 -[d]-> B1 -[d]-> ...", no, col + m.start("rest"))
        return (
            Stmt("sequence", m.group("name"), {"terms": tuple(t.strip() for t in terms), "maps": tuple(d.strip() for d in maps)}, [], no),
            False,
        )
    m = _HEAD["witness"].match(text)
    if m:
        g = m.groupdict()
        name = g.pop("name")
        g["n"] = int(g["n"])
        return Stmt("witness", name, g, [], no), False
    m = _HEAD["expect"].match(text)
    if m:
        g = m.groupdict()
        return (
            Stmt("expect", g["subject"], {"what": g["what"], "value": g["value"].strip(), "tag": g["tag"] or ""}, [], no),
            False,
        )
    word = text.split()[0]
    raise ParseError(f"unknown statement {word!r}", no, col)


def parse_document(text: str) -> list[Stmt]:
    """Parse a whole document into a list of statements."""
    stmts: list[Stmt] = []
    current: Stmt | None = None
    block_kind = None
    for no, indent, content in _logical_lines(text):
        if current is not None:
            if content == "end":
                stmts.append(current)
                current = None
                continue
            if indent == 0:
                raise ParseError(f"block opened on line {current.line} is missing 'end'", no, 1)
            current.body.append(_body_line(block_kind, no, indent, content))
            continue
        if indent != 0:
            raise ParseError("unexpected indentation", no, 1)
        if content == "end":
            raise ParseError("'end' without an open block", no, 1)
        stmt, opens = _parse_head(no, indent, content)
        if opens:
            current = stmt
            block_kind = "module_block" if stmt.kind == "module" else stmt.kind
        else:
            stmts.append(stmt)
    if current is not None:
        raise ParseError(f"block opened on line {current.line} is missing 'end'", current.line, 1)
    return stmts


def _fmt_body(kind: str, item) -> str:
    tag = item[0]
    if kind == "algebra":
        if tag == "field":
            return f"field {item[1]}"
        if tag == "vertices":
            return "vertices " + " ".join(item[1])
        if tag == "arrow":
            return f"arrow {item[1]}: {item[2]} -> {item[3]}"
        if tag == "relation":
            return f"relation {format_path_expr(item[1])}"
        if tag == "zero_paths":
            return f"zero_paths {item[1]} distinct"
        if tag == "bound":
            return f"bound {item[1]}"
    if kind in ("presentation", "automorphism"):
        if tag == "vertex":
            return f"vertex {item[1]} -> {item[2]}"
        return f"arrow {item[1]} -> {format_path_expr(item[2])}"
    if kind == "subalgebra":
        return f"{tag} {item[1]} = {format_path_expr(item[2])}"
    if kind == "map":
        if tag == "let":
            return f"let ${item[1]} = {format_tensor_expr(item[2])}"
        return f"{_fmt_generator(item[1])} -> {_fmt_generator(item[2])}"
    if kind == "module":
        if tag == "dims":
            return "dims " + " ".join(f"{v}:{d}" for v, d in item[1])
        rows = ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in item[2])
        return f"act {item[1]} = [{rows}]"
    raise ValueError(f"cannot format {item!r}")


def _fmt_generator(g) -> str:
    kind, val = g
    return format_tensor_expr(val) if kind == "tensor" else format_path_expr(val)


def _fmt_bimodule(a: dict) -> str:
    s = (f"{{{a['lt']}}}" if "lt" in a else "") + a["left"] + (f"{{{a['lrt']}}}" if "lrt" in a else "")
    if "mid" in a:
        mid = (f"{{{a['mt']}}}" if "mt" in a else "") + a["mid"]
        right = (f"{{{a['rlt']}}}" if "rlt" in a else "") + a["right"] + (f"{{{a['rt']}}}" if "rt" in a else "")
        s += f" (x)[{mid}] {right}"
    return s


def serialize_document(stmts: list[Stmt]) -> str:
    """Canonical text for a parsed document."""
    out = []
    for s in stmts:
        a = s.args
        if s.kind == "algebra":
            head = f"algebra {s.name}"
        elif s.kind == "presentation":
            head = f"presentation {s.name} in {a['ambient']}"
        elif s.kind in ("automorphism", "subalgebra"):
            head = f"{s.kind} {s.name} of {a['algebra']}"
        elif s.kind == "map":
            head = f"map {s.name}: {a['src']} -> {a['dst']}"
        elif s.kind == "module" and a["kind"] == "literal":
            head = f"module {s.name} over {a['algebra']} {a['side']}"
        elif s.kind == "module":
            out.append(f"module {s.name} = {a['kind']} " + " ".join(a["args"]))
            continue
        elif s.kind == "bimodule":
            out.append(f"bimodule {s.name} = {_fmt_bimodule(a)}")
            continue
        elif s.kind == "sequence":
            seq = a["terms"][0]
            for d, t in zip(a["maps"], a["terms"][1:]):
                seq += f" -[{d}]-> {t}"
            out.append(f"sequence {s.name} = {seq}")
            continue
        elif s.kind == "witness":
            out.append(f"witness {s.name} = {a['sequence']} twist {a['aut']} period {a['n']}")
            continue
        elif s.kind == "expect":
            tag = f' @ "{a["tag"]}"' if a["tag"] else ""
            out.append(f"expect {a['what']} {s.name} = {a['value']}{tag}")
            continue
        else:
            raise ValueError(f"unknown statement kind {s.kind}")
        out.append(head)
        kind = "module" if s.kind == "module" else s.kind
        for item in s.body:
            out.append("  " + _fmt_body(kind, item))
        out.append("end")
    return "\n".join(out) + "\n"
