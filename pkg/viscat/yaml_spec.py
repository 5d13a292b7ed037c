"""YAML spec documents.

Carries the same declarations as the DSL::

    objects:
      Data: [alan:90, beth:78]
      Representation: [bar_alan, bar_beth]
    morphisms:
      render:
        dom: Data
        cod: Representation
        map: {"alan:90": bar_alan, "beth:78": bar_beth}
    derive: {bar: student_mark}
    roles: {Data: Data, render: render}
    alt_measures: [measure_2]
    alt_reads: []
    equalities:
      - understanding = read . render

The document is composed to pyyaml nodes rather than loaded, so every
diagnostic keeps the line and column of its scalar.
"""

from typing import Callable, Dict, List, Optional, Tuple

import yaml
from yaml.nodes import MappingNode, Node, ScalarNode, SequenceNode

from .dsl import (
    IDENTIFIER,
    Diagnostic,
    EqualityDecl,
    MorphismDecl,
    ObjectDecl,
    Severity,
    SpecDocument,
    Token,
)


class _Misplaced(Exception):
    def __init__(self, node: Node, message: str):
        super().__init__(message)
        self.node = node
        self.message = message


def _token(node: Node, text: Optional[str] = None, offset: int = 0) -> Token:
    mark = node.start_mark
    return Token("WORD", node.value if text is None else text, mark.line + 1, mark.column + 1 + offset)


def _scalar(node: Node, what: str) -> Token:
    if not isinstance(node, ScalarNode):
        raise _Misplaced(node, f"expected {what}, found a {node.id}")
    return _token(node)


def _identifier(node: Node, what: str) -> Token:
    token = _scalar(node, what)
    if not IDENTIFIER.match(token.text):
        raise _Misplaced(node, f"expected {what}, found {token.text!r}")
    return token


def _mapping(node: Node, what: str) -> List[Tuple[Node, Node]]:
    if isinstance(node, ScalarNode) and node.tag == "tag:yaml.org,2002:null":
        return []
    if not isinstance(node, MappingNode):
        raise _Misplaced(node, f"{what} must be a mapping")
    return list(node.value)


def _sequence(node: Node, what: str) -> List[Node]:
    if isinstance(node, ScalarNode) and node.tag == "tag:yaml.org,2002:null":
        return []
    if not isinstance(node, SequenceNode):
        raise _Misplaced(node, f"{what} must be a list")
    return list(node.value)


class _Reader:
    def __init__(self):
        self.doc = SpecDocument()
        self.diagnostics: List[Diagnostic] = []
        self.sections: Dict[str, Callable[[Node], None]] = {
            "objects": self.objects,
            "morphisms": self.morphisms,
            "derive": self.derive,
            "roles": self.roles,
            "alt_measures": lambda node: self.alternates(node, "alt_measure"),
            "alt_reads": lambda node: self.alternates(node, "alt_read"),
            "equalities": self.equalities,
        }

    def fail(self, node: Node, message: str) -> None:
        mark = node.start_mark
        self.diagnostics.append(Diagnostic(Severity.Error, message, mark.line + 1, mark.column + 1))

    def read(self, root: Node) -> None:
        try:
            entries = _mapping(root, "a spec document")
        except _Misplaced as exc:
            self.fail(exc.node, exc.message)
            return
        for key, value in entries:
            handler = self.sections.get(key.value) if isinstance(key, ScalarNode) else None
            if handler is None:
                self.fail(key, f"unknown section {getattr(key, 'value', key.id)!r}; expected one of {', '.join(self.sections)}")
                continue
            try:
                handler(value)
            except _Misplaced as exc:
                self.fail(exc.node, exc.message)

    def objects(self, node: Node) -> None:
        for key, value in _mapping(node, "objects"):
            name = _identifier(key, "object id")
            elements = [_scalar(item, "element") for item in _sequence(value, f"object {name.text}")]
            self.doc.objects.append(ObjectDecl(name=name, elements=elements))

    def morphisms(self, node: Node) -> None:
        for key, value in _mapping(node, "morphisms"):
            name = _identifier(key, "morphism id")
            fields: Dict[str, Node] = {}
            for field_key, field_value in _mapping(value, f"morphism {name.text}"):
                label = _scalar(field_key, "morphism field").text
                if label not in ("dom", "cod", "map"):
                    raise _Misplaced(field_key, f"morphism {name.text}: unknown field {label!r}; expected dom, cod, map")
                fields[label] = field_value
            for required in ("dom", "cod"):
                if required not in fields:
                    raise _Misplaced(key, f"morphism {name.text}: missing {required}")
            table = _mapping(fields["map"], f"morphism {name.text} map") if "map" in fields else []
            pairs = [(_scalar(s, "source element"), _scalar(t, "target element")) for s, t in table]
            self.doc.morphisms.append(
                MorphismDecl(
                    name=name,
                    dom=_identifier(fields["dom"], "domain object id"),
                    cod=_identifier(fields["cod"], "codomain object id"),
                    pairs=pairs,
                )
            )

    def derive(self, node: Node) -> None:
        pairs = [
            (_scalar(layout, "layout element"), _scalar(schema, "schema element"))
            for layout, schema in _mapping(node, "derive")
        ]
        self.doc.derivations = (self.doc.derivations or []) + pairs

    def roles(self, node: Node) -> None:
        for role, target in _mapping(node, "roles"):
            self.doc.roles.append((_identifier(role, "role name"), _identifier(target, "object or morphism id")))

    def alternates(self, node: Node, keyword: str) -> None:
        for item in _sequence(node, keyword + "s"):
            self.doc.alternates.append((_token(item, keyword), _identifier(item, "morphism id")))

    def equalities(self, node: Node) -> None:
        for item in _sequence(node, "equalities"):
            text = _scalar(item, "an equality 'a = b . c'").text
            sides = text.split("=")
            if len(sides) != 2:
                raise _Misplaced(item, f"expected one '=' in equality {text!r}")
            left = self._composite(item, sides[0], 0)
            right = self._composite(item, sides[1], len(sides[0]) + 1)
            self.doc.equalities.append(EqualityDecl(at=_token(item), left=left, right=right))

    def _composite(self, node: Node, text: str, offset: int) -> List[Token]:
        steps: List[Token] = []
        for part in text.split("."):
            name = part.strip()
            if not IDENTIFIER.match(name):
                raise _Misplaced(node, f"expected morphism id, found {name!r}")
            steps.append(_token(node, name, offset + part.index(name)))
            offset += len(part) + 1
        return steps


def read_yaml_document(text: str) -> Tuple[Optional[SpecDocument], List[Diagnostic]]:
    """Compose a YAML spec into declarations; YAML syntax errors become diagnostics."""
    try:
        root = yaml.compose(text, Loader=yaml.SafeLoader)
    except yaml.MarkedYAMLError as exc:
        mark = exc.problem_mark or exc.context_mark
        line, column = (mark.line + 1, mark.column + 1) if mark is not None else (1, 1)
        return None, [Diagnostic(Severity.Error, exc.problem or str(exc), line, column)]
    except yaml.YAMLError as exc:
        return None, [Diagnostic(Severity.Error, str(exc), 1, 1)]
    if root is None:
        return SpecDocument(), []
    reader = _Reader()
    reader.read(root)
    return reader.doc, reader.diagnostics
