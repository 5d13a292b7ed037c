"""Exception hierarchy for viscat.

Construction errors are exceptions; check outcomes are report data. Every
error keeps the offending token(s) as attributes so callers (and the spec
loader) can point at them.
"""

from typing import Any, Optional, Sequence


class VisCatError(ValueError):
    """Base class for all viscat errors."""


# --- finite sets and maps --------------------------------------------------


class FinSetError(VisCatError):
    """Invalid finite set or finite map."""


class EmptyIdentifier(FinSetError):
    def __init__(self, what: str = "identifier"):
        self.what = what
        super().__init__(f"{what} must be non-empty")


class InvalidElement(FinSetError):
    def __init__(self, element: str, reason: str):
        self.element = element
        self.reason = reason
        super().__init__(f"invalid element {element!r}: {reason}")


class DuplicateElement(FinSetError):
    def __init__(self, element: str, set_id: Optional[str] = None):
        self.element = element
        self.set_id = set_id
        where = f" in {set_id}" if set_id else ""
        super().__init__(f"duplicate element {element!r}{where}")


class MissingSource(FinSetError):
    def __init__(self, element: str, map_id: Optional[str] = None):
        self.element = element
        self.map_id = map_id
        where = f" in {map_id}" if map_id else ""
        super().__init__(f"domain element {element!r} has no image{where}")


class DuplicateSource(FinSetError):
    def __init__(self, element: str, map_id: Optional[str] = None):
        self.element = element
        self.map_id = map_id
        where = f" in {map_id}" if map_id else ""
        super().__init__(f"domain element {element!r} mapped more than once{where}")


class SourceNotInDomain(FinSetError):
    def __init__(self, element: str, map_id: Optional[str] = None):
        self.element = element
        self.map_id = map_id
        where = f" in {map_id}" if map_id else ""
        super().__init__(f"source {element!r} is not a domain element{where}")


class TargetNotInCodomain(FinSetError):
    def __init__(self, source: str, target: str, map_id: Optional[str] = None):
        self.source = source
        self.target = target
        self.map_id = map_id
        where = f" in {map_id}" if map_id else ""
        super().__init__(f"{source!r} -> {target!r}: target is not a codomain element{where}")


class ElementNotInDomain(FinSetError):
    def __init__(self, element: str, map_id: str):
        self.element = element
        self.map_id = map_id
        super().__init__(f"{element!r} is not in the domain of {map_id}")


class NonComposable(FinSetError):
    """cod(f) differs from dom(g); reports both boundary objects."""

    def __init__(self, left: str, right: str, detail: str = ""):
        self.left = left
        self.right = right
        suffix = f" ({detail})" if detail else ""
        super().__init__(f"cannot compose: codomain {left} does not match domain {right}{suffix}")


class NotBijective(FinSetError):
    def __init__(self, map_id: str, classification: Any):
        self.map_id = map_id
        self.classification = classification
        super().__init__(f"{map_id} is not bijective: {classification.describe_failure()}")


# --- diagram ---------------------------------------------------------------


class DiagramError(VisCatError):
    """Invalid diagram structure."""


class UnknownObject(DiagramError):
    def __init__(self, object_id: str, context: str = ""):
        self.object_id = object_id
        suffix = f" (referenced by {context})" if context else ""
        super().__init__(f"unknown object {object_id!r}{suffix}")


class UnknownMorphism(DiagramError):
    def __init__(self, morphism_id: str, context: str = ""):
        self.morphism_id = morphism_id
        suffix = f" (referenced by {context})" if context else ""
        super().__init__(f"unknown morphism {morphism_id!r}{suffix}")


class DuplicateId(DiagramError):
    def __init__(self, identifier: str, kind: str):
        self.identifier = identifier
        self.kind = kind
        super().__init__(f"duplicate {kind} id {identifier!r}")


class DanglingEquality(DiagramError):
    def __init__(self, morphism_id: str, equality: str):
        self.morphism_id = morphism_id
        self.equality = equality
        super().__init__(f"equality {equality} mentions unknown morphism {morphism_id!r}")


class MismatchedEquality(DiagramError):
    """The two sides of a declared equality are not parallel."""

    def __init__(self, equality: str, left: Sequence[str], right: Sequence[str]):
        self.equality = equality
        self.left = tuple(left)
        self.right = tuple(right)
        super().__init__(
            f"equality {equality} compares {self.left[0]}->{self.left[1]} with {self.right[0]}->{self.right[1]}"
        )


# --- process ---------------------------------------------------------------


class ProcessError(VisCatError):
    """Invalid visualization-process binding."""


class UnknownRole(ProcessError):
    def __init__(self, role: str):
        self.role = role
        super().__init__(f"unknown role {role!r}")


class SignatureMismatch(ProcessError):
    def __init__(self, role: str, expected: str, actual: str):
        self.role = role
        self.expected = expected
        self.actual = actual
        super().__init__(f"role {role} must be {expected}, bound morphism is {actual}")


class PartialIntension(ProcessError):
    def __init__(self, missing: Sequence[str]):
        self.missing = tuple(missing)
        super().__init__(f"intension partially bound; missing roles: {', '.join(self.missing)}")


class InvalidDerivation(ProcessError):
    def __init__(self, layout_element: str, schema_element: str, reason: str):
        self.layout_element = layout_element
        self.schema_element = schema_element
        super().__init__(f"derivation {layout_element} <- {schema_element}: {reason}")


class UnparsableAtom(ProcessError):
    def __init__(self, token: str):
        self.token = token
        super().__init__(f"{token!r} is not of the form predicate(args)")


class NoIntension(ProcessError):
    def __init__(self, operation: str):
        self.operation = operation
        super().__init__(f"{operation} needs Schema, Layout and Question to be bound")


class MissingDerivations(ProcessError):
    def __init__(self):
        super().__init__("no derive block declared; an empty block declares 'no derivations'")


# --- analysis --------------------------------------------------------------


class AnalysisError(VisCatError):
    """An analysis was asked of a model that lacks what it needs."""


class UnboundRole(AnalysisError):
    def __init__(self, role: str, operation: str):
        self.role = role
        self.operation = operation
        super().__init__(f"{operation} needs role {role} to be bound")


# --- spec input ------------------------------------------------------------


class SpecSyntaxError(VisCatError):
    """Raised by convenience loaders when a spec has error diagnostics."""

    def __init__(self, origin: str, diagnostics: Sequence[Any]):
        self.origin = origin
        self.diagnostics = list(diagnostics)
        first = self.diagnostics[0] if self.diagnostics else None
        summary = f": {first.render(origin)}" if first is not None else ""
        super().__init__(f"{origin} has {len(self.diagnostics)} error(s){summary}")


# --- configuration and registry --------------------------------------------


class ConfigError(VisCatError):
    def __init__(self, origin: str, detail: str):
        self.origin = origin
        super().__init__(f"invalid configuration {origin}: {detail}")


class UnknownModel(VisCatError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"no model named {name!r}")
