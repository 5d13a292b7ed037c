"""Labeled multigraphs of finite sets and maps, and the category checks on them.

A `Diagram` is validated once at build time (ids resolve, equalities are
parallel) and is immutable afterwards. All checks return pydantic reports;
failures are data, not exceptions.
"""

import itertools
import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Dict, Iterable, List, Literal, Mapping, Optional, Sequence, Tuple, Union

import networkx as nx
from pydantic import BaseModel

from .errors import (
    DanglingEquality,
    DuplicateId,
    EmptyIdentifier,
    MismatchedEquality,
    NonComposable,
    UnknownMorphism,
    UnknownObject,
)
from .finset import (
    FiniteMap,
    FiniteSet,
    classify_map,
    compose,
    hom_set,
    identity,
    make_set,
    map_difference,
    maps_equal,
)

logger = logging.getLogger(__name__)

Status = Literal["pass", "fail"]


def _status(ok: bool) -> Status:
    return "pass" if ok else "fail"


def chain(steps: Sequence[str]) -> str:
    """Render morphism ids in application order as a right-to-left composite."""
    return "∘".join(reversed(steps))


class CheckMode(str, Enum):
    """How monic/epic are decided."""

    SetLevel = "set-level"
    Categorical = "categorical"


class ExtremalKind(str, Enum):
    Terminal = "terminal"
    Initial = "initial"


@dataclass(frozen=True)
class Equality:
    """Declared equality between two parallel composites.

    Both sides list morphism ids in application order (first applied first).
    ``label`` names built-in equalities so failures can cite them.
    """

    left: Tuple[str, ...]
    right: Tuple[str, ...]
    label: Optional[str] = None

    def render(self) -> str:
        return self.label or f"{chain(self.left)} = {chain(self.right)}"


@dataclass(frozen=True, order=True)
class Path:
    steps: Tuple[str, ...]
    source: str
    target: str

    def __str__(self) -> str:
        return "[" + ", ".join(self.steps) + "]"

    def chain(self) -> str:
        return chain(self.steps) if self.steps else f"1_{self.source}"


@dataclass(frozen=True)
class Diagram:
    objects: Dict[str, FiniteSet] = field(default_factory=dict)
    morphisms: Dict[str, FiniteMap] = field(default_factory=dict)
    equalities: Tuple[Equality, ...] = ()

    @cached_property
    def graph(self) -> nx.MultiDiGraph:
        """Morphism multigraph without self-loops; loops live in `loops`."""
        g = nx.MultiDiGraph()
        g.add_nodes_from(self.objects)
        for f in self.morphisms.values():
            if f.dom.id != f.cod.id:
                g.add_edge(f.dom.id, f.cod.id, key=f.id)
        return g

    @cached_property
    def loops(self) -> Dict[str, Tuple[str, ...]]:
        found: Dict[str, List[str]] = {}
        for f in self.morphisms.values():
            if f.dom.id == f.cod.id:
                found.setdefault(f.dom.id, []).append(f.id)
        return {k: tuple(sorted(v)) for k, v in found.items()}

    def object(self, object_id: str) -> FiniteSet:
        try:
            return self.objects[object_id]
        except KeyError:
            raise UnknownObject(object_id) from None

    def morphism(self, morphism_id: str) -> FiniteMap:
        try:
            return self.morphisms[morphism_id]
        except KeyError:
            raise UnknownMorphism(morphism_id) from None

    def identity_for(self, object_id: str) -> FiniteMap:
        """Declared ``1_<id>`` if present, otherwise a synthesized identity."""
        declared = self.morphisms.get(f"1_{object_id}")
        if declared is not None and declared.dom.id == object_id and declared.cod.id == object_id:
            return declared
        return identity(self.object(object_id))

    @property
    def default_max_len(self) -> int:
        return max(1, len(self.morphisms))


EqualitySpec = Union[Equality, Tuple[Sequence[str], Sequence[str]]]


def build_diagram(
    objects: Iterable[FiniteSet],
    morphisms: Iterable[FiniteMap],
    equalities: Iterable[EqualitySpec] = (),
) -> Diagram:
    """Validate ids and references and return an immutable `Diagram`.

    Raises:
        DuplicateId: two objects or two morphisms share an id.
        UnknownObject: a morphism's dom/cod is not one of the objects.
        DanglingEquality: an equality mentions an unknown morphism.
        NonComposable / MismatchedEquality: an equality side does not chain,
            or the sides are not parallel.
    """
    object_map: Dict[str, FiniteSet] = {}
    for obj in objects:
        if not isinstance(obj, FiniteSet):
            raise TypeError("objects must be FiniteSet instances")
        if obj.id in object_map:
            raise DuplicateId(obj.id, "object")
        object_map[obj.id] = obj

    morphism_map: Dict[str, FiniteMap] = {}
    for f in morphisms:
        if not isinstance(f, FiniteMap):
            raise TypeError("morphisms must be FiniteMap instances")
        if f.id in morphism_map:
            raise DuplicateId(f.id, "morphism")
        for end in (f.dom, f.cod):
            if object_map.get(end.id) != end:
                raise UnknownObject(end.id, f.id)
        morphism_map[f.id] = f

    checked: List[Equality] = []
    for spec in equalities:
        eq = spec if isinstance(spec, Equality) else Equality(tuple(spec[0]), tuple(spec[1]))
        left = _side_boundary(morphism_map, eq, eq.left)
        right = _side_boundary(morphism_map, eq, eq.right)
        if left != right:
            raise MismatchedEquality(eq.render(), left, right)
        checked.append(eq)

    logger.debug(
        "built diagram: %d objects, %d morphisms, %d equalities",
        len(object_map),
        len(morphism_map),
        len(checked),
    )
    return Diagram(objects=object_map, morphisms=morphism_map, equalities=tuple(checked))


def _side_boundary(morphisms: Mapping[str, FiniteMap], eq: Equality, steps: Sequence[str]) -> Tuple[str, str]:
    if not steps:
        raise EmptyIdentifier("equality side")
    for step in steps:
        if step not in morphisms:
            raise DanglingEquality(step, eq.render())
    for before, after in zip(steps, steps[1:]):
        if morphisms[before].cod != morphisms[after].dom:
            raise NonComposable(morphisms[before].cod.id, morphisms[after].dom.id, eq.render())
    return morphisms[steps[0]].dom.id, morphisms[steps[-1]].cod.id


# --- paths -----------------------------------------------------------------


def enumerate_paths(d: Diagram, source: str, target: str, max_len: Optional[int] = None) -> List[Path]:
    """All simple paths source -> target of at most ``max_len`` steps.

    A path visits no object twice, except that one endomorphic step may be
    taken at any object on it. Identities are implicit and never enumerated.
    Order is lexicographic by morphism id sequence.
    """
    d.object(source)
    d.object(target)
    limit = d.default_max_len if max_len is None else max_len
    if limit < 1:
        raise ValueError("max_len must be >= 1")

    if source == target:
        edge_paths: Iterable[List[Tuple[str, str, str]]] = [[]]
    else:
        edge_paths = nx.all_simple_edge_paths(d.graph, source, target, cutoff=limit)

    found = set()
    for edge_path in edge_paths:
        steps = tuple(key for _, _, key in edge_path)
        if steps:
            found.add(steps)
        if len(steps) >= limit:
            continue
        nodes = [source] + [v for _, v, _ in edge_path]
        for position, node in enumerate(nodes):
            for loop in d.loops.get(node, ()):
                found.add(steps[:position] + (loop,) + steps[position:])

    paths = [Path(steps=steps, source=source, target=target) for steps in sorted(found)]
    logger.debug("paths %s -> %s (max_len=%d): %d", source, target, limit, len(paths))
    return paths


def compose_path(d: Diagram, p: Path) -> FiniteMap:
    if not p.steps:
        return d.identity_for(p.source)
    result = d.morphism(p.steps[0])
    for step in p.steps[1:]:
        result = compose(d.morphism(step), result)
    return result


# --- commutativity ---------------------------------------------------------


class CommuteFailure(BaseModel):
    """Two parallel composites that differ at ``witness``."""

    left_path: List[str]
    right_path: List[str]
    witness: str
    via_left: str
    via_right: str
    equality: Optional[str] = None

    def describe(self) -> str:
        name = self.equality or f"{chain(self.left_path)} = {chain(self.right_path)}"
        return (
            f"{name}: FAIL at element {self.witness} "
            f"({chain(self.left_path)} -> {self.via_left}, {chain(self.right_path)} -> {self.via_right})"
        )


class CommuteReport(BaseModel):
    status: Status
    failures: List[CommuteFailure] = []
    pairs_checked: int = 0

    @property
    def passed(self) -> bool:
        return self.status == "pass"


def _compare(
    left_steps: Sequence[str],
    left: FiniteMap,
    right_steps: Sequence[str],
    right: FiniteMap,
    label: Optional[str] = None,
) -> Optional[CommuteFailure]:
    witness = map_difference(left, right)
    if witness is None:
        return None
    return CommuteFailure(
        left_path=list(left_steps),
        right_path=list(right_steps),
        witness=witness,
        via_left=left.lookup[witness],
        via_right=right.lookup[witness],
        equality=label,
    )


def _parallel_failures(d: Diagram, paths: Sequence[Path], skip: set) -> Tuple[List[CommuteFailure], int]:
    composites = [compose_path(d, p) for p in paths]
    failures: List[CommuteFailure] = []
    checked = 0
    for i, j in itertools.combinations(range(len(paths)), 2):
        if (paths[i].steps, paths[j].steps) in skip:
            continue
        checked += 1
        failure = _compare(paths[i].steps, composites[i], paths[j].steps, composites[j])
        if failure is not None:
            failures.append(failure)
    return failures, checked


def check_commutativity(d: Diagram, max_len: Optional[int] = None) -> CommuteReport:
    """Compare every pair of parallel paths and every declared equality.

    Declared equalities are reported first, under their labels; a generic
    path pair already covered by a declared equality is not repeated.
    """
    failures: List[CommuteFailure] = []
    covered = set()
    checked = 0
    for eq in d.equalities:
        left = compose_path(d, Path(eq.left, "", ""))
        right = compose_path(d, Path(eq.right, "", ""))
        checked += 1
        covered.add((eq.left, eq.right))
        covered.add((eq.right, eq.left))
        failure = _compare(eq.left, left, eq.right, right, eq.render())
        if failure is not None:
            failures.append(failure)

    if d.morphisms:
        for source, target in itertools.product(d.objects, repeat=2):
            paths = enumerate_paths(d, source, target, max_len)
            if len(paths) < 2:
                continue
            found, count = _parallel_failures(d, paths, covered)
            failures.extend(found)
            checked += count

    logger.debug("commutativity: %d comparisons, %d failures", checked, len(failures))
    return CommuteReport(status=_status(not failures), failures=failures, pairs_checked=checked)


# --- axioms ----------------------------------------------------------------


class AxiomViolation(BaseModel):
    morphism: str
    element: Optional[str] = None
    detail: str


class AxiomResult(BaseModel):
    status: Status
    checked: int = 0
    violations: List[AxiomViolation] = []


class AxiomReport(BaseModel):
    status: Status
    identity: AxiomResult
    totality: AxiomResult
    associativity: AxiomResult

    @property
    def passed(self) -> bool:
        return self.status == "pass"


def _totality_violation(f: FiniteMap) -> Optional[AxiomViolation]:
    seen = set()
    for x, y in f.table:
        if x not in f.dom:
            return AxiomViolation(morphism=f.id, element=x, detail=f"source {x} is not in {f.dom.id}")
        if x in seen:
            return AxiomViolation(morphism=f.id, element=x, detail=f"{x} is mapped more than once")
        if y not in f.cod:
            return AxiomViolation(morphism=f.id, element=x, detail=f"{x} -> {y} leaves {f.cod.id}")
        seen.add(x)
    for x in f.dom:
        if x not in seen:
            return AxiomViolation(morphism=f.id, element=x, detail=f"{x} has no image")
    return None


def check_axioms(d: Diagram) -> AxiomReport:
    """Re-verify identity, totality and associativity on the finite diagram."""
    totality: List[AxiomViolation] = []
    sound: Dict[str, FiniteMap] = {}
    for f in d.morphisms.values():
        violation = _totality_violation(f)
        if violation is None:
            sound[f.id] = f
        else:
            totality.append(violation)

    identity_violations: List[AxiomViolation] = []
    identity_checks = 0
    for object_id, obj in d.objects.items():
        declared = d.morphisms.get(f"1_{object_id}")
        if declared is not None:
            identity_checks += 1
            if declared.dom != obj or declared.cod != obj:
                identity_violations.append(
                    AxiomViolation(morphism=declared.id, detail=f"declared identity is not an endomorphism of {object_id}")
                )
                continue
            if declared.id not in sound:
                continue
            moved = next((x for x, y in declared.table if x != y), None)
            if moved is not None:
                identity_violations.append(
                    AxiomViolation(
                        morphism=declared.id,
                        element=moved,
                        detail=f"{moved} -> {declared.lookup[moved]} is not fixed",
                    )
                )
                continue
        unit = d.identity_for(object_id)
        for f in sound.values():
            if f.id == unit.id:
                continue
            if f.dom == obj:
                identity_checks += 1
                witness = map_difference(f, compose(f, unit))
                if witness is not None:
                    identity_violations.append(
                        AxiomViolation(morphism=f.id, element=witness, detail=f"{f.id}∘{unit.id} differs from {f.id}")
                    )
            if f.cod == obj:
                identity_checks += 1
                witness = map_difference(f, compose(unit, f))
                if witness is not None:
                    identity_violations.append(
                        AxiomViolation(morphism=f.id, element=witness, detail=f"{unit.id}∘{f.id} differs from {f.id}")
                    )

    associativity: List[AxiomViolation] = []
    triples = 0
    by_dom: Dict[str, List[FiniteMap]] = {}
    for f in sound.values():
        by_dom.setdefault(f.dom.id, []).append(f)
    for f in sound.values():
        for g in by_dom.get(f.cod.id, []):
            if g.dom != f.cod:
                continue
            gf = compose(g, f)
            for h in by_dom.get(g.cod.id, []):
                if h.dom != g.cod:
                    continue
                triples += 1
                left = compose(compose(h, g), f)
                right = compose(h, gf)
                witness = map_difference(left, right)
                if witness is not None:
                    associativity.append(
                        AxiomViolation(
                            morphism=f"{h.id}∘{g.id}∘{f.id}",
                            element=witness,
                            detail=f"(h∘g)∘f -> {left.lookup[witness]}, h∘(g∘f) -> {right.lookup[witness]}",
                        )
                    )

    results = {
        "identity": AxiomResult(status=_status(not identity_violations), checked=identity_checks, violations=identity_violations),
        "totality": AxiomResult(status=_status(not totality), checked=len(d.morphisms), violations=totality),
        "associativity": AxiomResult(status=_status(not associativity), checked=triples, violations=associativity),
    }
    ok = all(r.status == "pass" for r in results.values())
    return AxiomReport(status=_status(ok), **results)


# --- morphism status -------------------------------------------------------


class MorphismStatus(BaseModel):
    morphism: str
    mode: CheckMode
    monic: bool
    epic: bool
    endic: bool
    isic: bool
    witnesses: List[str] = []


def _test_pool(d: Diagram) -> List[FiniteMap]:
    """Declared morphisms plus the implicit identity of every object."""
    pool = list(d.morphisms.values())
    pool.extend(identity(obj) for obj in d.objects.values())
    return pool


def _cancellation_witness(f: FiniteMap, candidates: Iterable[FiniteMap], post: bool) -> Optional[Tuple[str, str]]:
    """Find g1 != g2 with equal composites (f∘g when post, g∘f otherwise)."""
    groups: Dict[str, Dict[FiniteMap, FiniteMap]] = {}
    for g in candidates:
        group_key = g.dom.id if post else g.cod.id
        composite = compose(f, g) if post else compose(g, f)
        seen = groups.setdefault(group_key, {})
        first = seen.get(composite)
        if first is None:
            seen[composite] = g
        elif not maps_equal(first, g):
            return first.id, g.id
    return None


def categorical_status(d: Diagram, morphism_id: str, mode: CheckMode = CheckMode.SetLevel) -> MorphismStatus:
    """Monic/epic/endic/isic for one morphism.

    Set-level mode reads the flags off the table. Categorical mode quantifies
    over the morphisms present in ``d`` (closed world), plus identities.
    """
    f = d.morphism(morphism_id)
    mode = CheckMode(mode)
    endic = f.dom == f.cod
    if mode is CheckMode.SetLevel:
        c = classify_map(f)
        witnesses = []
        if c.collision is not None:
            witnesses.append(f"{c.collision[0]} and {c.collision[1]} share an image")
        if c.missed is not None:
            witnesses.append(f"{c.missed} is not hit")
        return MorphismStatus(
            morphism=f.id, mode=mode, monic=c.injective, epic=c.surjective, endic=endic, isic=c.bijective, witnesses=witnesses
        )

    pool = _test_pool(d)
    witnesses = []
    monic_witness = _cancellation_witness(f, (g for g in pool if g.cod == f.dom), post=True)
    if monic_witness is not None:
        witnesses.append(f"{f.id}∘{monic_witness[0]} = {f.id}∘{monic_witness[1]}")
    epic_witness = _cancellation_witness(f, (g for g in pool if g.dom == f.cod), post=False)
    if epic_witness is not None:
        witnesses.append(f"{epic_witness[0]}∘{f.id} = {epic_witness[1]}∘{f.id}")
    unit_dom, unit_cod = identity(f.dom), identity(f.cod)
    isic = any(
        maps_equal(compose(g, f), unit_dom) and maps_equal(compose(f, g), unit_cod)
        for g in pool
        if g.dom == f.cod and g.cod == f.dom
    )
    return MorphismStatus(
        morphism=f.id,
        mode=mode,
        monic=monic_witness is None,
        epic=epic_witness is None,
        endic=endic,
        isic=isic,
        witnesses=witnesses,
    )


# --- terminal / initial objects --------------------------------------------


class ExtremalReport(BaseModel):
    object: str
    kind: ExtremalKind
    status: Status
    unreachable: List[str] = []
    disagreements: List[CommuteFailure] = []

    @property
    def passed(self) -> bool:
        return self.status == "pass"


def check_extremal(
    d: Diagram, object_id: str, kind: ExtremalKind, max_len: Optional[int] = None
) -> ExtremalReport:
    """Terminal: every other object reaches ``object_id`` and all its paths agree.

    Initial is the dual: ``object_id`` reaches every other object.
    """
    d.object(object_id)
    kind = ExtremalKind(kind)
    unreachable: List[str] = []
    disagreements: List[CommuteFailure] = []
    for other in d.objects:
        if other == object_id:
            continue
        if kind is ExtremalKind.Terminal:
            paths = enumerate_paths(d, other, object_id, max_len)
        else:
            paths = enumerate_paths(d, object_id, other, max_len)
        if not paths:
            unreachable.append(other)
            continue
        found, _ = _parallel_failures(d, paths, set())
        disagreements.extend(found)
    ok = not unreachable and not disagreements
    return ExtremalReport(
        object=object_id, kind=kind, status=_status(ok), unreachable=unreachable, disagreements=disagreements
    )


def find_extremal(d: Diagram, kind: ExtremalKind, max_len: Optional[int] = None) -> List[str]:
    """Every object of ``d`` that passes `check_extremal` for ``kind``."""
    return [o for o in d.objects if check_extremal(d, o, kind, max_len).passed]


def full_hom_diagram(sizes: Sequence[int] = (0, 1, 2, 3)) -> Diagram:
    """Diagram holding every function between every pair of sets of ``sizes``."""
    objects = [make_set(f"S{n}", [f"e{i}" for i in range(n)]) for n in sizes]
    morphisms = [f for a in objects for b in objects for f in hom_set(a, b)]
    return build_diagram(objects, morphisms)


class PathsReport(BaseModel):
    """Every path between two objects and whether their composites agree."""

    source: str
    target: str
    max_len: int
    paths: List[List[str]] = []
    agree: bool
    failures: List[CommuteFailure] = []


def compare_paths(d: Diagram, source: str, target: str, max_len: Optional[int] = None) -> PathsReport:
    paths = enumerate_paths(d, source, target, max_len)
    failures, _ = _parallel_failures(d, paths, set())
    return PathsReport(
        source=source,
        target=target,
        max_len=d.default_max_len if max_len is None else max_len,
        paths=[list(p.steps) for p in paths],
        agree=not failures,
        failures=failures,
    )
