"""The `.viscat` spec language.

A spec is a sequence of declarations::

    # comments run to end of line
    object Data { alan:90 beth:78 "class mean" best_mark(Alan) }
    morphism render : Data -> Representation { alan:90 -> bar_alan, ... }
    derive { bar <- student_mark, ... }
    role Data = Data
    alt_read read_shade
    equal understanding = read . render

Elements are whitespace-separated. A quoted element may hold any text; a
bare element that opens a parenthesis runs to the matching close, so
``average_mark(> 70)`` is one token. Composites in ``equal`` are written
right to left.

`parse_spec` never raises for bad input: every problem comes back as a
`Diagnostic` with a 1-based line and column on the offending token.
"""

import logging
import re
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path as FilePath
from typing import Dict, Iterator, List, Optional, Tuple, Union

from .diagram import Diagram, Equality, build_diagram
from .errors import (
    DiagramError,
    FinSetError,
    InvalidDerivation,
    InvalidElement,
    PartialIntension,
    ProcessError,
    SignatureMismatch,
    SpecSyntaxError,
)
from .finset import ElementId, FiniteMap, FiniteSet, make_map, make_set, normalize_element
from .process import (
    INTENSION_MORPHISMS,
    INTENSION_OBJECTS,
    MORPHISM_ROLES,
    OBJECT_ROLES,
    ROLE_SIGNATURES,
    ProcessModel,
    build_process,
)

logger = logging.getLogger(__name__)

Model = Union[ProcessModel, Diagram]

KEYWORDS = ("object", "morphism", "derive", "role", "alt_measure", "alt_read", "equal")
IDENTIFIER = re.compile(r"^\w[\w'\-]*$")


class Severity(str, Enum):
    Error = "error"
    Warning = "warning"


@dataclass(frozen=True)
class Diagnostic:
    severity: Severity
    message: str
    line: int
    column: int

    def render(self, origin: str = "<stdin>") -> str:
        return f"{origin}:{self.line}:{self.column}: {self.severity.value}: {self.message}"

    def to_dict(self) -> Dict[str, object]:
        return {"severity": self.severity.value, "message": self.message, "line": self.line, "column": self.column}


@dataclass(frozen=True)
class SpecSource:
    """A spec document and where it came from ("<stdin>" for piped input)."""

    text: str
    origin: str = "<stdin>"

    @classmethod
    def from_path(cls, path: Union[str, FilePath]) -> "SpecSource":
        p = FilePath(path)
        return cls(text=p.read_text(encoding="utf-8"), origin=str(p))

    @property
    def is_yaml(self) -> bool:
        return self.origin.lower().endswith((".yaml", ".yml"))


@dataclass
class ParseResult:
    """A built model (or None) plus every diagnostic.

    Unpacks as ``model, diagnostics = parse_spec(src)``.
    """

    model: Optional[Model]
    diagnostics: List[Diagnostic] = field(default_factory=list)

    @property
    def errors(self) -> List[Diagnostic]:
        return [d for d in self.diagnostics if d.severity is Severity.Error]

    @property
    def warnings(self) -> List[Diagnostic]:
        return [d for d in self.diagnostics if d.severity is Severity.Warning]

    @property
    def ok(self) -> bool:
        return self.model is not None and not self.errors

    def __iter__(self) -> Iterator:
        yield self.model
        yield self.diagnostics


# --- declarations ----------------------------------------------------------


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int
    line_start: bool = False


@dataclass
class ObjectDecl:
    name: Token
    elements: List[Token]


@dataclass
class MorphismDecl:
    name: Token
    dom: Token
    cod: Token
    pairs: List[Tuple[Token, Token]]


@dataclass
class EqualityDecl:
    """Both sides as written: right to left."""

    at: Token
    left: List[Token]
    right: List[Token]


@dataclass
class SpecDocument:
    """Declarations in source order, before any model is built."""

    objects: List[ObjectDecl] = field(default_factory=list)
    morphisms: List[MorphismDecl] = field(default_factory=list)
    derivations: Optional[List[Tuple[Token, Token]]] = None
    roles: List[Tuple[Token, Token]] = field(default_factory=list)
    alternates: List[Tuple[Token, Token]] = field(default_factory=list)
    equalities: List[EqualityDecl] = field(default_factory=list)

    @property
    def declares_process(self) -> bool:
        return self.derivations is not None or bool(self.roles) or bool(self.alternates)


def _error(token: Token, message: str) -> Diagnostic:
    return Diagnostic(Severity.Error, message, token.line, token.column)


# --- lexer -----------------------------------------------------------------

_PUNCT = {"{": "LBRACE", "}": "RBRACE", ",": "COMMA"}
_OPERATORS = {"->": "ARROW", "<-": "LARROW", ":": "COLON", "=": "EQUALS", ".": "DOT"}
_STOP = frozenset(' \t\r\n{},#"')


def _read_string(text: str, start: int) -> Tuple[Optional[str], int]:
    chars: List[str] = []
    i = start + 1
    while i < len(text):
        c = text[i]
        if c == "\n":
            return None, i
        if c == "\\" and i + 1 < len(text) and text[i + 1] in '"\\':
            chars.append(text[i + 1])
            i += 2
            continue
        if c == '"':
            return "".join(chars), i + 1
        chars.append(c)
        i += 1
    return None, i


def tokenize(text: str) -> Tuple[List[Token], List[Diagnostic]]:
    """Split a spec into tokens; the last token is always EOF."""
    tokens: List[Token] = []
    diagnostics: List[Diagnostic] = []
    i, line, line_begin, fresh = 0, 1, 0, True
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i += 1
            line, line_begin, fresh = line + 1, i, True
            continue
        if ch in " \t\r\ufeff":
            i += 1
            continue
        column = i - line_begin + 1
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch in _PUNCT:
            tokens.append(Token(_PUNCT[ch], ch, line, column, fresh))
        elif ch == '"':
            value, end = _read_string(text, i)
            if value is None:
                diagnostics.append(Diagnostic(Severity.Error, "unterminated string", line, column))
            else:
                tokens.append(Token("STRING", value, line, column, fresh))
            i = end
            fresh = False
            continue
        elif text.startswith(("->", "<-"), i):
            tokens.append(Token(_OPERATORS[text[i : i + 2]], text[i : i + 2], line, column, fresh))
            i += 2
            fresh = False
            continue
        else:
            start, depth = i, 0
            while i < n and text[i] != "\n":
                c = text[i]
                if depth:
                    depth += {"(": 1, ")": -1}.get(c, 0)
                elif c in _STOP or (i > start and text.startswith(("->", "<-"), i)):
                    break
                elif c == "(":
                    depth = 1
                i += 1
            word = text[start:i]
            if depth:
                diagnostics.append(Diagnostic(Severity.Error, f"unclosed '(' in {word!r}", line, column))
            else:
                tokens.append(Token(_OPERATORS.get(word, "WORD"), word, line, column, fresh))
            fresh = False
            continue
        i += 1
        fresh = False
    tokens.append(Token("EOF", "", line, n - line_begin + 1, True))
    return tokens, diagnostics


# --- parser ----------------------------------------------------------------


class _Unexpected(Exception):
    def __init__(self, token: Token, message: str):
        super().__init__(message)
        self.token = token
        self.message = message


def _describe(token: Token) -> str:
    if token.kind == "EOF":
        return "end of file"
    if token.kind == "STRING":
        return f'"{token.text}"'
    return repr(token.text)


def _spacing_hint(token: Token) -> str:
    # ids never contain these, but elements like alan:90 do
    if token.kind != "WORD":
        return ""
    glued = [f"'{sep}'" for sep in (":", "=") if sep in token.text]
    return f" (put spaces around {' and '.join(glued)})" if glued else ""


class _Parser:
    def __init__(self, tokens: List[Token]):
        self.tokens = tokens
        self.pos = 0
        self.doc = SpecDocument()
        self.diagnostics: List[Diagnostic] = []

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        token = self.tokens[self.pos]
        if token.kind != "EOF":
            self.pos += 1
        return token

    def expect(self, kind: str, what: str) -> Token:
        token = self.peek()
        if token.kind != kind:
            hint = _spacing_hint(token) if kind in ("COLON", "EQUALS") else ""
            raise _Unexpected(token, f"expected {what}, found {_describe(token)}{hint}")
        return self.advance()

    def identifier(self, what: str) -> Token:
        token = self.peek()
        if token.kind != "WORD" or not IDENTIFIER.match(token.text):
            raise _Unexpected(token, f"expected {what}, found {_describe(token)}{_spacing_hint(token)}")
        return self.advance()

    def element(self, what: str = "element") -> Token:
        token = self.peek()
        if token.kind not in ("WORD", "STRING"):
            raise _Unexpected(token, f"expected {what}, found {_describe(token)}")
        return self.advance()

    def _at_statement(self, token: Token) -> bool:
        return token.kind == "WORD" and token.text in KEYWORDS and token.line_start

    def _check_open(self, token: Token, opened: Token, block: str) -> None:
        if token.kind == "EOF" or self._at_statement(token):
            raise _Unexpected(
                token,
                f"expected '}}' to close the {block} block opened at {opened.line}:{opened.column}, "
                f"found {_describe(token)}",
            )

    def parse(self) -> SpecDocument:
        while self.peek().kind != "EOF":
            start = self.pos
            try:
                self.statement()
            except _Unexpected as exc:
                self.diagnostics.append(_error(exc.token, exc.message))
                self.synchronize(start)
        return self.doc

    def synchronize(self, start: int) -> None:
        if self.pos == start:
            self.advance()
        while self.peek().kind != "EOF" and not self._at_statement(self.peek()):
            self.advance()

    def statement(self) -> None:
        token = self.peek()
        handler = {
            "object": self.object_decl,
            "morphism": self.morphism_decl,
            "derive": self.derive_decl,
            "role": self.role_decl,
            "alt_measure": self.alternate_decl,
            "alt_read": self.alternate_decl,
            "equal": self.equal_decl,
        }.get(token.text) if token.kind == "WORD" else None
        if handler is None:
            raise _Unexpected(token, f"expected a declaration ({', '.join(KEYWORDS)}), found {_describe(token)}")
        handler()

    def object_decl(self) -> None:
        self.advance()
        name = self.identifier("object id")
        opened = self.expect("LBRACE", "'{'")
        elements: List[Token] = []
        while self.peek().kind != "RBRACE":
            self._check_open(self.peek(), opened, "object")
            elements.append(self.element())
        self.advance()
        self.doc.objects.append(ObjectDecl(name=name, elements=elements))

    def _pairs(self, arrow: str, arrow_text: str, block: str) -> List[Tuple[Token, Token]]:
        opened = self.expect("LBRACE", "'{'")
        pairs: List[Tuple[Token, Token]] = []
        while self.peek().kind != "RBRACE":
            self._check_open(self.peek(), opened, block)
            left = self.element()
            self.expect(arrow, f"'{arrow_text}'")
            right = self.element()
            pairs.append((left, right))
            if self.peek().kind == "COMMA":
                self.advance()
        self.advance()
        return pairs

    def morphism_decl(self) -> None:
        self.advance()
        name = self.identifier("morphism id")
        self.expect("COLON", "':'")
        dom = self.identifier("domain object id")
        self.expect("ARROW", "'->'")
        cod = self.identifier("codomain object id")
        pairs = self._pairs("ARROW", "->", "morphism")
        self.doc.morphisms.append(MorphismDecl(name=name, dom=dom, cod=cod, pairs=pairs))

    def derive_decl(self) -> None:
        self.advance()
        pairs = self._pairs("LARROW", "<-", "derive")
        self.doc.derivations = (self.doc.derivations or []) + pairs

    def role_decl(self) -> None:
        self.advance()
        role = self.identifier("role name")
        self.expect("EQUALS", "'='")
        target = self.identifier("object or morphism id")
        self.doc.roles.append((role, target))

    def alternate_decl(self) -> None:
        keyword = self.advance()
        target = self.identifier("morphism id")
        self.doc.alternates.append((keyword, target))

    def equal_decl(self) -> None:
        at = self.advance()
        left = self._composite()
        self.expect("EQUALS", "'='")
        right = self._composite()
        self.doc.equalities.append(EqualityDecl(at=at, left=left, right=right))

    def _composite(self) -> List[Token]:
        steps: List[Token] = []
        while True:
            token = self.peek()
            if token.kind != "WORD":
                raise _Unexpected(token, f"expected morphism id, found {_describe(token)}")
            self.advance()
            text, column = token.text, token.column
            if steps and text.startswith("."):
                # "g .f": the dot opened this word
                text, column = text[1:], column + 1
            parts = text.split(".")
            for index, part in enumerate(parts):
                trailing = index == len(parts) - 1
                if part or not trailing or len(parts) == 1:
                    located = Token("WORD", part, token.line, column)
                    if not IDENTIFIER.match(part):
                        raise _Unexpected(located, f"expected morphism id, found {part!r}")
                    steps.append(located)
                column += len(part) + 1
            following = self.peek()
            if following.kind == "DOT":
                self.advance()
            elif text.endswith("."):
                continue
            elif following.kind == "WORD" and following.text.startswith(".") and not following.line_start:
                continue
            else:
                return steps


def read_document(text: str) -> Tuple[SpecDocument, List[Diagnostic]]:
    tokens, diagnostics = tokenize(text)
    parser = _Parser(tokens)
    doc = parser.parse()
    return doc, diagnostics + parser.diagnostics


# --- assembly --------------------------------------------------------------


class _Assembler:
    def __init__(self, doc: SpecDocument):
        self.doc = doc
        self.diagnostics: List[Diagnostic] = []
        self.objects: Dict[str, FiniteSet] = {}
        self.morphisms: Dict[str, FiniteMap] = {}
        self.used_objects: set = set()

    @property
    def failed(self) -> bool:
        return any(d.severity is Severity.Error for d in self.diagnostics)

    def error(self, token: Token, message: str) -> None:
        self.diagnostics.append(_error(token, message))

    def normalize(self, token: Token) -> Optional[ElementId]:
        try:
            return normalize_element(token.text)
        except InvalidElement as exc:
            self.error(token, str(exc))
            return None

    def build(self) -> Optional[Model]:
        self.collect_objects()
        self.collect_morphisms()
        if self.failed:
            return None
        diagram = self.collect_diagram()
        if diagram is None:
            return None
        self.warn_unused()
        if not self.doc.declares_process:
            return diagram
        return self.collect_process(diagram)

    def collect_objects(self) -> None:
        for decl in self.doc.objects:
            name = decl.name.text
            if name in self.objects:
                self.error(decl.name, f"object {name!r} is declared twice")
                continue
            elements: List[ElementId] = []
            for token in decl.elements:
                element = self.normalize(token)
                if element is None:
                    continue
                if element in elements:
                    self.error(token, f"duplicate element {element!r} in object {name}")
                    continue
                elements.append(element)
            self.objects[name] = make_set(name, elements)

    def collect_morphisms(self) -> None:
        declared = set()
        for decl in self.doc.morphisms:
            name = decl.name.text
            if name in declared:
                self.error(decl.name, f"morphism {name!r} is declared twice")
                continue
            declared.add(name)
            ends = []
            for token, side in ((decl.dom, "domain"), (decl.cod, "codomain")):
                if token.text not in self.objects:
                    self.error(token, f"morphism {name}: unknown {side} object {token.text!r}")
                else:
                    self.used_objects.add(token.text)
                    ends.append(self.objects[token.text])
            if len(ends) < 2:
                continue
            dom, cod = ends
            assigned: Dict[ElementId, ElementId] = {}
            attempted = set()
            sound = True
            for source_token, target_token in decl.pairs:
                source, target = self.normalize(source_token), self.normalize(target_token)
                if source is None or target is None:
                    sound = False
                    continue
                if source in attempted:
                    self.error(source_token, f"morphism {name}: {source!r} is mapped more than once")
                    sound = False
                    continue
                attempted.add(source)
                if source not in dom:
                    self.error(source_token, f"morphism {name}: {source!r} is not an element of {dom.id}")
                    sound = False
                elif target not in cod:
                    self.error(target_token, f"morphism {name}: {target!r} is not an element of {cod.id}")
                    sound = False
                else:
                    assigned[source] = target
            missing = [x for x in dom if x not in attempted]
            if missing:
                listed = ", ".join(repr(x) for x in missing)
                self.error(decl.name, f"morphism {name}: no image for {listed} of {dom.id}")
            elif sound:
                self.morphisms[name] = make_map(name, dom, cod, assigned.items())

    def collect_diagram(self) -> Optional[Diagram]:
        equalities: List[Equality] = []
        for decl in self.doc.equalities:
            unknown = [t for t in (*decl.left, *decl.right) if t.text not in self.morphisms]
            for token in unknown:
                self.error(token, f"equality mentions unknown morphism {token.text!r}")
            if unknown:
                continue
            eq = Equality(
                left=tuple(t.text for t in reversed(decl.left)),
                right=tuple(t.text for t in reversed(decl.right)),
            )
            try:
                build_diagram(self.objects.values(), self.morphisms.values(), [eq])
            except (DiagramError, FinSetError) as exc:
                self.error(decl.at, str(exc))
                continue
            equalities.append(eq)
        if self.failed:
            return None
        return build_diagram(self.objects.values(), self.morphisms.values(), equalities)

    def warn_unused(self) -> None:
        if not self.morphisms:
            return
        for decl in self.doc.objects:
            if decl.name.text not in self.used_objects:
                self.diagnostics.append(
                    Diagnostic(
                        Severity.Warning,
                        f"object {decl.name.text!r} is not used by any morphism",
                        decl.name.line,
                        decl.name.column,
                    )
                )

    def collect_process(self, diagram: Diagram) -> Optional[ProcessModel]:
        roles: Dict[str, str] = {}
        role_tokens: Dict[str, Token] = {}
        for role_token, target_token in self.doc.roles:
            role, target = role_token.text, target_token.text
            if role not in OBJECT_ROLES and role not in ROLE_SIGNATURES:
                self.error(role_token, f"unknown role {role!r}")
                continue
            if role in roles:
                self.error(role_token, f"role {role} is bound twice")
                continue
            kind, table = ("object", diagram.objects) if role in OBJECT_ROLES else ("morphism", diagram.morphisms)
            if target not in table:
                self.error(target_token, f"role {role}: unknown {kind} {target!r}")
                continue
            roles[role] = target
            role_tokens[role] = role_token

        alternates: Dict[str, List[str]] = {"alt_measure": [], "alt_read": []}
        alternate_tokens: List[Tuple[Token, Token]] = []
        for keyword, target in self.doc.alternates:
            if target.text not in diagram.morphisms:
                self.error(target, f"{keyword.text}: unknown morphism {target.text!r}")
                continue
            if target.text in alternates[keyword.text]:
                self.error(target, f"{keyword.text} {target.text} is declared twice")
                continue
            alternates[keyword.text].append(target.text)
            alternate_tokens.append((keyword, target))

        derivations: Optional[Dict[ElementId, ElementId]] = None
        derivation_tokens: Dict[str, Token] = {}
        if self.doc.derivations is not None:
            derivations = {}
            for layout_token, schema_token in self.doc.derivations:
                layout, schema = self.normalize(layout_token), self.normalize(schema_token)
                if layout is None or schema is None:
                    continue
                if layout in derivations:
                    self.error(layout_token, f"layout element {layout!r} is derived twice")
                    continue
                derivations[layout] = schema
                derivation_tokens[layout] = layout_token

        if self.failed:
            return None
        try:
            return build_process(
                diagram,
                roles,
                derivations,
                alt_measures=alternates["alt_measure"],
                alt_reads=alternates["alt_read"],
            )
        except SignatureMismatch as exc:
            token = role_tokens.get(exc.role)
            if token is None:
                token = next(
                    (
                        target
                        for keyword, target in alternate_tokens
                        if keyword.text == exc.role
                        and f"{diagram.morphisms[target.text].dom.id}->{diagram.morphisms[target.text].cod.id}"
                        == exc.actual
                    ),
                    self._first_statement(),
                )
            self.error(token, str(exc))
        except PartialIntension as exc:
            bound = [role_tokens[r] for r in (*INTENSION_OBJECTS, *INTENSION_MORPHISMS) if r in role_tokens]
            self.error(min(bound, key=lambda t: (t.line, t.column)) if bound else self._first_statement(), str(exc))
        except InvalidDerivation as exc:
            self.error(derivation_tokens.get(exc.layout_element, self._first_statement()), str(exc))
        except ProcessError as exc:
            self.error(self._first_statement(), str(exc))
        return None

    def _first_statement(self) -> Token:
        candidates = [t for t, _ in self.doc.roles] + [t for t, _ in self.doc.alternates]
        if self.doc.derivations:
            candidates.append(self.doc.derivations[0][0])
        if not candidates:
            return Token("EOF", "", 1, 1)
        return min(candidates, key=lambda t: (t.line, t.column))


def assemble(doc: SpecDocument) -> ParseResult:
    """Build the model a document declares, collecting positioned diagnostics."""
    assembler = _Assembler(doc)
    model = assembler.build()
    return ParseResult(model=model, diagnostics=assembler.diagnostics)


def parse_spec(src: SpecSource) -> ParseResult:
    """Parse and build a spec. YAML documents are recognised by their origin suffix."""
    if src.is_yaml:
        from .yaml_spec import read_yaml_document

        doc, diagnostics = read_yaml_document(src.text)
    else:
        doc, diagnostics = read_document(src.text)

    if doc is None or any(d.severity is Severity.Error for d in diagnostics):
        result = ParseResult(model=None, diagnostics=diagnostics)
    else:
        built = assemble(doc)
        result = ParseResult(model=built.model, diagnostics=diagnostics + built.diagnostics)
    logger.debug(
        "parsed %s: %s, %d error(s), %d warning(s)",
        src.origin,
        type(result.model).__name__ if result.model is not None else "no model",
        len(result.errors),
        len(result.warnings),
    )
    return result


def load_spec(source: Union[SpecSource, str, FilePath]) -> Model:
    """Parse a spec file (or source) and return its model.

    Raises:
        SpecSyntaxError: the spec has error diagnostics.
        OSError: the file cannot be read.
    """
    src = source if isinstance(source, SpecSource) else SpecSource.from_path(source)
    result = parse_spec(src)
    if result.model is None:
        raise SpecSyntaxError(src.origin, result.errors)
    return result.model


# --- serialization ---------------------------------------------------------

_BARE = re.compile(r'^[^\s{}",#()]+$')
_PREDICATE = re.compile(r'^[^\s{}",#()]+\([^()\n"]*\)$')


def quote_element(element: str) -> str:
    """Spell an element so the lexer reads it back as one token."""
    bare = (
        (_BARE.match(element) or _PREDICATE.match(element))
        and element not in _OPERATORS
        and element not in KEYWORDS
        and "->" not in element
        and "<-" not in element
    )
    if bare:
        return element
    return '"' + element.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _block(header: str, rows: List[str]) -> List[str]:
    if not rows:
        return [f"{header} {{ }}"]
    body = [f"    {row}," for row in rows[:-1]] + [f"    {rows[-1]}"]
    return [f"{header} {{", *body, "}"]


def serialize_spec(model: Model) -> str:
    """Canonical text: objects, morphisms, derivations, roles, alternates, equalities.

    Built-in process equalities are implied by the roles and are not written.
    """
    if isinstance(model, ProcessModel):
        diagram = model.diagram
        equalities = model.declared_equalities
    else:
        diagram = model
        equalities = diagram.equalities

    sections: List[List[str]] = []
    sections.append(
        [
            f"object {obj.id} {{ {' '.join(quote_element(e) for e in obj)} }}" if len(obj) else f"object {obj.id} {{ }}"
            for obj in diagram.objects.values()
        ]
    )
    morphism_lines: List[str] = []
    for f in diagram.morphisms.values():
        rows = [f"{quote_element(x)} -> {quote_element(y)}" for x, y in f.table]
        morphism_lines.extend(_block(f"morphism {f.id} : {f.dom.id} -> {f.cod.id}", rows))
    sections.append(morphism_lines)

    if isinstance(model, ProcessModel):
        if model.derivations is not None:
            layout = model.object_for("Layout")
            order = {e: i for i, e in enumerate(layout)} if layout is not None else {}
            ordered = sorted(model.derivations.items(), key=lambda item: order.get(item[0], len(order)))
            rows = [f"{quote_element(layout_el)} <- {quote_element(schema_el)}" for layout_el, schema_el in ordered]
            sections.append(_block("derive", rows))
        sections.append([f"role {r} = {model.roles[r]}" for r in (*OBJECT_ROLES, *MORPHISM_ROLES) if r in model.roles])
        sections.append(
            [f"alt_measure {m}" for m in model.alt_measures] + [f"alt_read {r}" for r in model.alt_reads]
        )

    sections.append(
        [f"equal {' . '.join(reversed(eq.left))} = {' . '.join(reversed(eq.right))}" for eq in equalities]
    )
    text = "\n\n".join("\n".join(lines) for lines in sections if lines)
    return text + "\n" if text else ""
