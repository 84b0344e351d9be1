"""Fact-style scenario files.

One fact per statement, terminated by '.', with '%' line comments:

    arg(a).  att(a,b).  topic(a).  value(av).  val(a,av).
    pref(0,av,bv).  agent(0,preferred).  semantics(preferred).

agent(...) lines declare the per-agent semantics of a plain agreement
scenario; semantics(...) declares the single semantics of a value-based
scenario.  The two styles cannot be mixed in one file.  pref(i,u,w) reads
"agent i prefers value u over value w".
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Union

from .agreement import AgreementScenario
from .core import ArgFramework, SemanticsKind
from .errors import ArgagreeError, ParseError
from .values import ValueFramework, ValueScenario

_ARITY = {"arg": 1, "att": 2, "topic": 1, "value": 1, "val": 2,
          "pref": 3, "agent": 2, "semantics": 1}
_INT_FIELDS = {"pref": (0,), "agent": (0,)}
_SEMANTICS_FIELDS = {"agent": (1,), "semantics": (0,)}
_SEMANTICS_NAMES = {k.value for k in SemanticsKind}


@dataclass(frozen=True)
class Statement:
    kind: str
    fields: tuple[Union[str, int], ...]
    # source position is diagnostics metadata, not part of the document model
    line: int = field(compare=False, default=0)
    column: int = field(compare=False, default=0)

    def text(self) -> str:
        return f"{self.kind}({','.join(str(f) for f in self.fields)})."


@dataclass(frozen=True)
class ScenarioDocument:
    statements: tuple[Statement, ...]

    def of_kind(self, kind: str) -> list[Statement]:
        return [s for s in self.statements if s.kind == kind]


def _tokens(text: str):
    line, col, i = 1, 1, 0
    n = len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            line += 1
            col = 1
            i += 1
        elif c in " \t\r":
            col += 1
            i += 1
        elif c == "%":
            while i < n and text[i] != "\n":
                i += 1
        elif c in "(),.":
            yield c, c, line, col
            col += 1
            i += 1
        elif c.isalnum() or c == "_":
            start, start_col = i, col
            while i < n and (text[i].isalnum() or text[i] == "_"):
                i += 1
                col += 1
            yield "ident", text[start:i], line, start_col
        else:
            raise ParseError(f"unexpected character {c!r}", line, col)


def parse_scenario(data: Union[str, bytes]) -> ScenarioDocument:
    """Parse fact text into an ordered document; exact duplicates are rejected."""
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not valid UTF-8: {exc}", 1, 1) from None
    toks = list(_tokens(data))
    statements: list[Statement] = []
    seen: set[tuple] = set()
    i = 0

    def expect(kind: str):
        nonlocal i
        if i >= len(toks):
            last = toks[-1] if toks else (None, None, 1, 1)
            raise ParseError(f"unexpected end of input, expected {kind!r}",
                             last[2], last[3])
        tk, value, ln, cl = toks[i]
        if tk != kind:
            raise ParseError(f"expected {kind!r}, found {value!r}", ln, cl)
        i += 1
        return value, ln, cl

    while i < len(toks):
        name, ln, cl = expect("ident")
        if name not in _ARITY:
            raise ParseError(f"unknown fact {name!r}", ln, cl)
        expect("(")
        fields: list[Union[str, int]] = []
        for k in range(_ARITY[name]):
            if k:
                expect(",")
            value, fln, fcl = expect("ident")
            if k in _INT_FIELDS.get(name, ()):
                if not value.isdigit():
                    raise ParseError(f"expected an agent index, found {value!r}", fln, fcl)
                fields.append(int(value))
            elif k in _SEMANTICS_FIELDS.get(name, ()):
                if value not in _SEMANTICS_NAMES:
                    raise ParseError(
                        f"unknown semantics {value!r} (expected one of "
                        f"{sorted(_SEMANTICS_NAMES)})", fln, fcl)
                fields.append(value)
            else:
                fields.append(value)
        expect(")")
        expect(".")
        stmt = Statement(name, tuple(fields), ln, cl)
        key = (name, stmt.fields)
        if key in seen:
            raise ParseError(f"duplicate fact {stmt.text()}", ln, cl)
        seen.add(key)
        statements.append(stmt)
    return ScenarioDocument(tuple(statements))


def serialize_document(doc: ScenarioDocument) -> str:
    return "".join(s.text() + "\n" for s in doc.statements)


@dataclass(frozen=True)
class BuiltScenario:
    """Validated content of one file: always a framework (plus topic), and a
    full scenario when the file declares agents or a semantics."""

    kind: str  # "af" | "aas" | "vaas"
    af: ArgFramework
    topic: frozenset[str]
    aas: Optional[AgreementScenario] = None
    vaas: Optional[ValueScenario] = None

    @property
    def scenario(self):
        return self.aas if self.kind == "aas" else self.vaas


def _fail(stmt: Statement, message: str) -> ParseError:
    return ParseError(message, stmt.line, stmt.column)


def build_scenario(doc: ScenarioDocument) -> BuiltScenario:
    """Resolve a document into domain objects, surfacing positions on errors."""
    args: list[str] = []
    for stmt in doc.of_kind("arg"):
        args.append(str(stmt.fields[0]))
    declared = set(args)
    attacks = []
    for stmt in doc.of_kind("att"):
        x, y = map(str, stmt.fields)
        for end in (x, y):
            if end not in declared:
                raise _fail(stmt, f"undeclared argument {end!r} in attack")
        attacks.append((x, y))
    topic = []
    for stmt in doc.of_kind("topic"):
        a = str(stmt.fields[0])
        if a not in declared:
            raise _fail(stmt, f"undeclared argument {a!r} in topic")
        topic.append(a)

    agent_stmts = doc.of_kind("agent")
    vaas_stmts = (doc.of_kind("semantics") + doc.of_kind("value")
                  + doc.of_kind("val") + doc.of_kind("pref"))
    if agent_stmts and vaas_stmts:
        raise _fail(vaas_stmts[0], "cannot mix agent(...) facts with value-based facts")

    first = doc.statements[0] if doc.statements else Statement("arg", ("x",), 1, 1)
    try:
        af = ArgFramework(args, attacks)
    except ArgagreeError as exc:
        raise _fail(first, str(exc)) from None

    if agent_stmts:
        indices = [s.fields[0] for s in agent_stmts]
        if sorted(indices) != list(range(len(indices))):
            raise _fail(agent_stmts[0],
                        f"agent indices must be exactly 0..{len(indices) - 1}")
        sems = [SemanticsKind(str(s.fields[1]))
                for s in sorted(agent_stmts, key=lambda s: s.fields[0])]
        try:
            aas = AgreementScenario(af, topic, sems)
        except ArgagreeError as exc:
            raise _fail(agent_stmts[0], str(exc)) from None
        return BuiltScenario("aas", af, aas.topic, aas=aas)

    sem_stmts = doc.of_kind("semantics")
    if not sem_stmts:
        return BuiltScenario("af", af, frozenset(topic))
    if len(sem_stmts) > 1:
        raise _fail(sem_stmts[1], "multiple semantics(...) declarations")

    values = [str(s.fields[0]) for s in doc.of_kind("value")]
    declared_values = set(values)
    val_pairs = []
    for stmt in doc.of_kind("val"):
        a, v = map(str, stmt.fields)
        if a not in declared:
            raise _fail(stmt, f"undeclared argument {a!r} in value mapping")
        if v not in declared_values:
            raise _fail(stmt, f"undeclared value {v!r} in value mapping")
        val_pairs.append((a, v))
    pref_stmts = doc.of_kind("pref")
    n_agents = 1
    for stmt in pref_stmts:
        for v in map(str, stmt.fields[1:]):
            if v not in declared_values:
                raise _fail(stmt, f"undeclared value {v!r} in preference")
        n_agents = max(n_agents, int(stmt.fields[0]) + 1)
    prefs: list[set[tuple[str, str]]] = [set() for _ in range(n_agents)]
    for stmt in pref_stmts:
        idx, u, w = stmt.fields
        prefs[int(idx)].add((str(u), str(w)))
    anchor = sem_stmts[0]
    try:
        vaf = ValueFramework(af, values, val_pairs, prefs)
        vaas = ValueScenario(vaf, topic, SemanticsKind(str(anchor.fields[0])))
    except ArgagreeError as exc:
        pos = _attribute_error(doc, str(exc)) or anchor
        raise _fail(pos, str(exc)) from None
    return BuiltScenario("vaas", af, vaas.topic, vaas=vaas)


def _attribute_error(doc: ScenarioDocument, message: str) -> Optional[Statement]:
    """Best-effort mapping from a constructor error back to a source fact."""
    if "self-attack" in message:
        for stmt in doc.of_kind("att"):
            if stmt.fields[0] == stmt.fields[1]:
                return stmt
    if "preference relation" in message:
        for stmt in doc.of_kind("pref"):
            if f"agent {stmt.fields[0]}:" in message:
                return stmt
    if "value map" in message:
        vals = doc.of_kind("val")
        if vals:
            return vals[0]
    return None


def load_scenario(path: str) -> BuiltScenario:
    with open(path, "rb") as fh:
        return build_scenario(parse_scenario(fh.read()))


# --- canonical documents from domain objects -------------------------------


def document_for_framework(af: ArgFramework, topic: Iterable[str] = ()) -> ScenarioDocument:
    stmts = [Statement("arg", (a,), 0, 0) for a in sorted(af.args)]
    stmts += [Statement("att", pair, 0, 0) for pair in sorted(af.attacks)]
    stmts += [Statement("topic", (a,), 0, 0) for a in sorted(frozenset(topic))]
    return ScenarioDocument(tuple(stmts))


def document_for_aas(scn: AgreementScenario) -> ScenarioDocument:
    base = document_for_framework(scn.af, scn.topic).statements
    agents = tuple(Statement("agent", (i, sem.value), 0, 0)
                   for i, sem in enumerate(scn.agents))
    return ScenarioDocument(base + agents)


def document_for_vaas(vscn: ValueScenario) -> ScenarioDocument:
    vaf = vscn.vaf
    stmts = list(document_for_framework(vaf.af, vscn.topic).statements)
    stmts += [Statement("value", (v,), 0, 0) for v in sorted(vaf.values)]
    stmts += [Statement("val", pair, 0, 0) for pair in vaf.val]
    for i, pref in enumerate(vaf.prefs):
        stmts += [Statement("pref", (i, u, w), 0, 0) for u, w in sorted(pref)]
    stmts.append(Statement("semantics", (vscn.sem.value,), 0, 0))
    return ScenarioDocument(tuple(stmts))
