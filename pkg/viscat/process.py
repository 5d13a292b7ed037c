"""The visualization process as a category.

Eight object roles and fourteen morphism roles, with the commuting
equalities that make the process well formed. A `ProcessModel` binds roles
to the objects and morphisms of a `Diagram`; the intensional level (Schema,
Layout, Question) is optional but all-or-nothing.
"""

import logging
import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from pydantic import BaseModel

from .diagram import (
    AxiomReport,
    CommuteReport,
    Diagram,
    Equality,
    ExtremalKind,
    ExtremalReport,
    Status,
    _status,
    build_diagram,
    check_axioms,
    check_commutativity,
    check_extremal,
    chain,
)
from .errors import (
    InvalidDerivation,
    NoIntension,
    PartialIntension,
    SignatureMismatch,
    UnknownMorphism,
    UnknownObject,
    UnknownRole,
    UnparsableAtom,
)
from .finset import ElementId, FiniteMap, FiniteSet, image

logger = logging.getLogger(__name__)

OBJECT_ROLES: Tuple[str, ...] = (
    "System",
    "Data",
    "Schema",
    "Representation",
    "Layout",
    "Evocation",
    "Question",
    "Knowledge",
)

# role -> (dom role, cod role)
ROLE_SIGNATURES: Dict[str, Tuple[str, str]] = {
    "measure": ("System", "Data"),
    "render": ("Data", "Representation"),
    "read": ("Representation", "Evocation"),
    "understanding": ("Data", "Evocation"),
    "gen_D": ("Data", "Schema"),
    "gen_R": ("Representation", "Layout"),
    "gen_E": ("Evocation", "Question"),
    "rules": ("Schema", "Layout"),
    "answers": ("Layout", "Question"),
    "raises": ("Schema", "Question"),
    "infers": ("Evocation", "Knowledge"),
    "op_desc": ("System", "Schema"),
    "op_know": ("Question", "Knowledge"),
    "truth": ("System", "Knowledge"),
}
MORPHISM_ROLES: Tuple[str, ...] = tuple(ROLE_SIGNATURES)

INTENSION_OBJECTS = ("Schema", "Layout", "Question")
INTENSION_MORPHISMS = ("gen_D", "gen_R", "gen_E", "rules", "answers", "raises")

# (left composite, right composite), each written right to left
CANONICAL_EQUALITIES: Tuple[Tuple[Tuple[str, ...], Tuple[str, ...]], ...] = (
    (("understanding",), ("read", "render")),
    (("raises",), ("answers", "rules")),
    (("gen_R", "render"), ("rules", "gen_D")),
    (("gen_E", "read"), ("answers", "gen_R")),
    (("op_desc",), ("gen_D", "measure")),
    (("infers",), ("op_know", "gen_E")),
    (("truth",), ("infers", "understanding", "measure")),
)

ALTERNATE_SIGNATURES = {"alt_measure": "measure", "alt_read": "read"}


class IntensionStatus(str, Enum):
    Full = "full"
    ExtensionOnly = "extension_only"


@dataclass(frozen=True)
class NamedEquality:
    """A canonical process equality, with sides in application order."""

    label: str
    left: Tuple[str, ...]
    right: Tuple[str, ...]


@dataclass(frozen=True)
class ProcessModel:
    """A diagram plus role bindings for the visualization process.

    ``derivations`` maps Layout elements to the Schema element they are
    derived from; None means no derivation block was declared, which is not
    the same as an empty one.
    """

    diagram: Diagram
    roles: Dict[str, str] = field(default_factory=dict)
    derivations: Optional[Dict[ElementId, ElementId]] = None
    alt_measures: Tuple[str, ...] = ()
    alt_reads: Tuple[str, ...] = ()

    def object_for(self, role: str) -> Optional[FiniteSet]:
        object_id = self.roles.get(role)
        return self.diagram.objects[object_id] if object_id is not None else None

    def morphism_for(self, role: str) -> Optional[FiniteMap]:
        morphism_id = self.roles.get(role)
        return self.diagram.morphisms[morphism_id] if morphism_id is not None else None

    def bound(self, *roles: str) -> bool:
        return all(r in self.roles for r in roles)

    @property
    def has_intension(self) -> bool:
        return self.bound(*INTENSION_OBJECTS, *INTENSION_MORPHISMS)

    @property
    def is_full(self) -> bool:
        return self.bound(*OBJECT_ROLES, *MORPHISM_ROLES)

    @property
    def checked_diagram(self) -> Diagram:
        """The diagram without unbound alternate measures and reads.

        Alternates are parallel to the morphism they stand in for and are not
        expected to agree with it, so commutativity and extremal checks skip them.
        """
        alternates = (set(self.alt_measures) | set(self.alt_reads)) - set(self.roles.values())
        if not alternates:
            return self.diagram
        return build_diagram(
            self.diagram.objects.values(),
            [f for f in self.diagram.morphisms.values() if f.id not in alternates],
            [eq for eq in self.diagram.equalities if not alternates.intersection(eq.left + eq.right)],
        )

    @property
    def declared_equalities(self) -> Tuple[Equality, ...]:
        """Equalities written by the author; built-in ones carry a label."""
        return tuple(eq for eq in self.diagram.equalities if eq.label is None)


# --- questions and atoms ---------------------------------------------------

_ATOM = re.compile(r"^([A-Za-z_][\w]*)\((.*)\)$", re.DOTALL)


@dataclass(frozen=True)
class QuestionTemplate:
    predicate: str
    arity: int

    def __post_init__(self):
        if self.arity < 1:
            raise ValueError("a question template needs at least one hole")

    def render(self) -> str:
        return f"{self.predicate}({','.join('_' * self.arity)})"

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class EvocationAtom:
    predicate: str
    arguments: Tuple[str, ...]

    def render(self) -> str:
        return f"{self.predicate}({','.join(self.arguments)})"

    def __str__(self) -> str:
        return self.render()


def parse_atom(token: str) -> EvocationAtom:
    """Parse ``predicate(arg, ...)``; comparison arguments such as ``> 70`` stay opaque."""
    match = _ATOM.match(token.strip())
    if match is None:
        raise UnparsableAtom(token)
    predicate, body = match.groups()
    if "(" in body or ")" in body:
        raise UnparsableAtom(token)
    arguments = tuple(a.strip() for a in body.split(","))
    if not any(arguments) or any(not a for a in arguments):
        raise UnparsableAtom(token)
    return EvocationAtom(predicate=predicate, arguments=arguments)


def generalize_evocation(atom: EvocationAtom) -> QuestionTemplate:
    """Replace every argument of an atom by a hole: best_mark(Alan) -> best_mark(_)."""
    return QuestionTemplate(predicate=atom.predicate, arity=len(atom.arguments))


# --- build -----------------------------------------------------------------


def required_equalities(p: ProcessModel) -> List[NamedEquality]:
    """Canonical equalities whose roles are all bound, labelled as written."""
    result = []
    for left, right in CANONICAL_EQUALITIES:
        if not p.bound(*left, *right):
            continue
        label = f"{chain(tuple(reversed(left)))} = {chain(tuple(reversed(right)))}"
        result.append(
            NamedEquality(
                label=label,
                left=tuple(p.roles[r] for r in reversed(left)),
                right=tuple(p.roles[r] for r in reversed(right)),
            )
        )
    return result


def build_process(
    diagram: Diagram,
    roles: Mapping[str, str],
    derivations: Optional[Mapping[str, str]] = None,
    alt_measures: Sequence[str] = (),
    alt_reads: Sequence[str] = (),
) -> ProcessModel:
    """Bind roles to a diagram and install the canonical equalities.

    Raises:
        UnknownRole: a role name outside the 8 object and 14 morphism roles.
        UnknownObject / UnknownMorphism: a binding names an absent id.
        SignatureMismatch: a morphism role is bound against its signature.
        PartialIntension: some but not all of the intensional roles are bound.
        InvalidDerivation: a derivation leaves Layout or Schema.
    """
    bound: Dict[str, str] = {}
    for role, target in roles.items():
        if role in OBJECT_ROLES:
            if target not in diagram.objects:
                raise UnknownObject(target, f"role {role}")
        elif role in ROLE_SIGNATURES:
            if target not in diagram.morphisms:
                raise UnknownMorphism(target, f"role {role}")
        else:
            raise UnknownRole(role)
        bound[role] = target

    for role, (dom_role, cod_role) in ROLE_SIGNATURES.items():
        if role in bound:
            _check_signature(diagram, bound, role, bound[role], dom_role, cod_role)
    for kind, ids in (("alt_measure", alt_measures), ("alt_read", alt_reads)):
        dom_role, cod_role = ROLE_SIGNATURES[ALTERNATE_SIGNATURES[kind]]
        for morphism_id in ids:
            if morphism_id not in diagram.morphisms:
                raise UnknownMorphism(morphism_id, kind)
            _check_signature(diagram, bound, kind, morphism_id, dom_role, cod_role)

    intension = [r for r in (*INTENSION_OBJECTS, *INTENSION_MORPHISMS) if r in bound]
    if intension and len(intension) < len(INTENSION_OBJECTS) + len(INTENSION_MORPHISMS):
        missing = [r for r in (*INTENSION_OBJECTS, *INTENSION_MORPHISMS) if r not in bound]
        raise PartialIntension(missing)

    checked_derivations = None
    if derivations is not None:
        checked_derivations = _check_derivations(diagram, bound, derivations)

    provisional = ProcessModel(diagram=diagram, roles=bound)
    canonical = [Equality(eq.left, eq.right, eq.label) for eq in required_equalities(provisional)]
    labels = {eq.label for eq in canonical}
    authored = [eq for eq in diagram.equalities if eq.label is None or eq.label not in labels]
    full = build_diagram(diagram.objects.values(), diagram.morphisms.values(), [*authored, *canonical])
    logger.debug("process bound %d roles, installed %d equalities", len(bound), len(canonical))
    return ProcessModel(
        diagram=full,
        roles=bound,
        derivations=checked_derivations,
        alt_measures=tuple(alt_measures),
        alt_reads=tuple(alt_reads),
    )


def _check_signature(
    diagram: Diagram, bound: Mapping[str, str], role: str, morphism_id: str, dom_role: str, cod_role: str
) -> None:
    f = diagram.morphisms[morphism_id]
    actual = f"{f.dom.id}->{f.cod.id}"
    missing = [r for r in (dom_role, cod_role) if r not in bound]
    if missing:
        raise SignatureMismatch(role, f"{dom_role}->{cod_role} with {', '.join(missing)} bound", actual)
    expected = f"{bound[dom_role]}->{bound[cod_role]}"
    if f.dom.id != bound[dom_role] or f.cod.id != bound[cod_role]:
        raise SignatureMismatch(role, expected, actual)


def _check_derivations(
    diagram: Diagram, bound: Mapping[str, str], derivations: Mapping[str, str]
) -> Dict[ElementId, ElementId]:
    if "Layout" not in bound or "Schema" not in bound:
        for layout_element, schema_element in derivations.items():
            raise InvalidDerivation(layout_element, schema_element, "Schema and Layout are not bound")
        return {}
    layout = diagram.objects[bound["Layout"]]
    schema = diagram.objects[bound["Schema"]]
    checked: Dict[ElementId, ElementId] = {}
    for layout_element, schema_element in derivations.items():
        if layout_element not in layout:
            raise InvalidDerivation(layout_element, schema_element, f"{layout_element} is not a {layout.id} element")
        if schema_element not in schema:
            raise InvalidDerivation(layout_element, schema_element, f"{schema_element} is not a {schema.id} element")
        checked[ElementId(layout_element)] = ElementId(schema_element)
    return checked


# --- validation ------------------------------------------------------------


class GenEMismatch(BaseModel):
    element: str
    declared: str
    expected: str


class GenEReport(BaseModel):
    """Agreement between the bound gen_E and atom-to-template erasure."""

    status: Status
    checked: int = 0
    mismatches: List[GenEMismatch] = []
    unchecked: List[str] = []


class ValidationReport(BaseModel):
    status: Status
    axioms: AxiomReport
    commutativity: Optional[CommuteReport] = None
    extremal: List[ExtremalReport] = []
    extremal_skipped: bool = False
    gen_e: Optional[GenEReport] = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"


def check_gen_e(p: ProcessModel) -> Optional[GenEReport]:
    gen_e = p.morphism_for("gen_E")
    if gen_e is None:
        return None
    mismatches: List[GenEMismatch] = []
    unchecked: List[str] = []
    checked = 0
    for element, declared in gen_e.table:
        try:
            expected = generalize_evocation(parse_atom(element)).render()
        except UnparsableAtom:
            logger.warning("gen_E: %r is not predicate(args); taken as declared", element)
            unchecked.append(element)
            continue
        checked += 1
        if declared != expected:
            mismatches.append(GenEMismatch(element=element, declared=declared, expected=expected))
    return GenEReport(status=_status(not mismatches), checked=checked, mismatches=mismatches, unchecked=unchecked)


def validate_process(p: ProcessModel, max_len: Optional[int] = None) -> ValidationReport:
    """Axioms, commutativity, gen_E agreement, and (full models only) extremal objects."""
    axioms = check_axioms(p.diagram)
    if axioms.totality.status == "fail":
        # composites over non-total tables are undefined
        return ValidationReport(status="fail", axioms=axioms, extremal_skipped=True)

    checked = p.checked_diagram
    commutativity = check_commutativity(checked, max_len)
    extremal: List[ExtremalReport] = []
    if p.is_full:
        extremal.append(check_extremal(checked, p.roles["Knowledge"], ExtremalKind.Terminal, max_len))
        extremal.append(check_extremal(checked, p.roles["System"], ExtremalKind.Initial, max_len))
    gen_e = check_gen_e(p)
    ok = (
        axioms.passed
        and commutativity.passed
        and all(r.passed for r in extremal)
        and (gen_e is None or gen_e.status == "pass")
    )
    return ValidationReport(
        status=_status(ok),
        axioms=axioms,
        commutativity=commutativity,
        extremal=extremal,
        extremal_skipped=not p.is_full,
        gen_e=gen_e,
    )


# --- intension -------------------------------------------------------------


class IntensionReport(BaseModel):
    status: IntensionStatus
    generalizable: bool
    note: str


_FULL_NOTE = (
    "Schema, Layout and Question are bound: the representation can raise questions it answers "
    "and its layout generalizes to other data."
)
_EXTENSION_NOTE = (
    "No intensional level: a data-driven representation that evokes understanding but supports "
    "neither interrogation nor generalization."
)


def intension_status(p: ProcessModel) -> IntensionReport:
    if p.has_intension:
        return IntensionReport(status=IntensionStatus.Full, generalizable=True, note=_FULL_NOTE)
    return IntensionReport(status=IntensionStatus.ExtensionOnly, generalizable=False, note=_EXTENSION_NOTE)


class QuestionReport(BaseModel):
    answerable: List[str] = []
    raised_unanswered: List[str] = []
    answered_unraised: List[str] = []


def answerable_questions(p: ProcessModel) -> QuestionReport:
    """Questions the Schema raises and the Layout answers, in Question order."""
    if not p.has_intension:
        raise NoIntension("answerable_questions")
    question = p.object_for("Question")
    raised = set(image(p.morphism_for("raises")))
    answered = set(image(p.morphism_for("answers")))
    return QuestionReport(
        answerable=[q for q in question if q in raised and q in answered],
        raised_unanswered=[q for q in question if q in raised and q not in answered],
        answered_unraised=[q for q in question if q in answered and q not in raised],
    )

