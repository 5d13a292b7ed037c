"""Finite sets and total functions between them.

Every category object is a `FiniteSet` and every morphism a `FiniteMap`.
Values are immutable; all operations are pure. Element order is kept only so
output is deterministic; it never changes the meaning of a set or map.
"""

import itertools
import unicodedata
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterable, Iterator, List, NewType, Optional, Sequence, Tuple

from .errors import (
    DuplicateElement,
    DuplicateSource,
    ElementNotInDomain,
    EmptyIdentifier,
    InvalidElement,
    MissingSource,
    NonComposable,
    NotBijective,
    SourceNotInDomain,
    TargetNotInCodomain,
)

ElementId = NewType("ElementId", str)
Pairs = Iterable[Tuple[str, str]]


def normalize_element(text: str) -> ElementId:
    """Return the canonical form of an element token.

    NFC normalisation, surrounding whitespace stripped and internal whitespace
    runs collapsed to a single space. Control characters are rejected.
    """
    if not isinstance(text, str):
        raise TypeError(f"element must be a string, got {type(text).__name__}")
    token = " ".join(unicodedata.normalize("NFC", text).split())
    if not token:
        raise InvalidElement(text, "empty token")
    for ch in token:
        if not ch.isprintable():
            raise InvalidElement(text, f"non-printable character U+{ord(ch):04X}")
    return ElementId(token)


@dataclass(frozen=True, eq=False)
class FiniteSet:
    """A named, ordered collection of distinct elements."""

    id: str
    elements: Tuple[ElementId, ...]

    @cached_property
    def members(self) -> frozenset:
        return frozenset(self.elements)

    def __contains__(self, item: object) -> bool:
        return item in self.members

    def __iter__(self) -> Iterator[ElementId]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteSet):
            return NotImplemented
        return self.id == other.id and self.members == other.members

    def __hash__(self) -> int:
        return hash((self.id, self.members))

    def __repr__(self) -> str:
        return f"FiniteSet({self.id!r}, {list(self.elements)!r})"


@dataclass(frozen=True, eq=False)
class FiniteMap:
    """A total function between two finite sets.

    ``table`` holds one ``(source, target)`` pair per domain element, in domain
    order. The constructor does not validate; use `make_map`. Equality ignores
    the id: two maps are equal when dom, cod and table coincide.
    """

    id: str
    dom: FiniteSet
    cod: FiniteSet
    table: Tuple[Tuple[ElementId, ElementId], ...]

    @cached_property
    def lookup(self) -> Dict[ElementId, ElementId]:
        return dict(self.table)

    def __call__(self, x: str) -> ElementId:
        return apply(self, x)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteMap):
            return NotImplemented
        return maps_equal(self, other)

    def __hash__(self) -> int:
        return hash((self.dom, self.cod, frozenset(self.table)))

    def __repr__(self) -> str:
        body = ", ".join(f"{a}->{b}" for a, b in self.table)
        return f"FiniteMap({self.id!r}: {self.dom.id} -> {self.cod.id} {{{body}}})"


@dataclass(frozen=True)
class MapClassification:
    """Set-level reading of monic / epic / isic / endic for one map."""

    injective: bool
    surjective: bool
    bijective: bool
    endomorphic: bool
    collision: Optional[Tuple[ElementId, ElementId]] = None
    missed: Optional[ElementId] = None

    def describe_failure(self) -> str:
        parts = []
        if self.collision is not None:
            a, b = self.collision
            parts.append(f"{a} and {b} share an image")
        if self.missed is not None:
            parts.append(f"{self.missed} is not hit")
        return "; ".join(parts) or "bijective"


def make_set(id: str, elements: Sequence[str]) -> FiniteSet:
    """Build a `FiniteSet`, normalising elements and rejecting duplicates."""
    if not id or not id.strip():
        raise EmptyIdentifier("set id")
    seen = set()
    normalized: List[ElementId] = []
    for raw in elements:
        token = normalize_element(raw)
        if token in seen:
            raise DuplicateElement(token, id)
        seen.add(token)
        normalized.append(token)
    return FiniteSet(id=id, elements=tuple(normalized))


def make_map(id: str, dom: FiniteSet, cod: FiniteSet, pairs: Pairs) -> FiniteMap:
    """Build a total `FiniteMap` from ``(source, target)`` pairs.

    Raises:
        DuplicateSource: a domain element appears twice.
        SourceNotInDomain: a pair starts outside the domain.
        TargetNotInCodomain: a pair ends outside the codomain.
        MissingSource: a domain element has no pair (first in domain order).
    """
    if not id or not id.strip():
        raise EmptyIdentifier("map id")
    if not isinstance(dom, FiniteSet) or not isinstance(cod, FiniteSet):
        raise TypeError("dom and cod must be FiniteSet instances")
    assigned: Dict[ElementId, ElementId] = {}
    for raw_source, raw_target in pairs:
        source, target = normalize_element(raw_source), normalize_element(raw_target)
        if source in assigned:
            raise DuplicateSource(source, id)
        if source not in dom:
            raise SourceNotInDomain(source, id)
        if target not in cod:
            raise TargetNotInCodomain(source, target, id)
        assigned[source] = target
    for x in dom:
        if x not in assigned:
            raise MissingSource(x, id)
    return FiniteMap(id=id, dom=dom, cod=cod, table=tuple((x, assigned[x]) for x in dom))


def apply(f: FiniteMap, x: str) -> ElementId:
    try:
        return f.lookup[x]
    except KeyError:
        raise ElementNotInDomain(x, f.id) from None


def compose(g: FiniteMap, f: FiniteMap) -> FiniteMap:
    """Return ``g∘f`` (apply f first). Requires cod(f) == dom(g)."""
    if f.cod != g.dom:
        raise NonComposable(f.cod.id, g.dom.id, f"{g.id}∘{f.id}")
    table = tuple((x, g.lookup[y]) for x, y in f.table)
    return FiniteMap(id=f"{g.id}∘{f.id}", dom=f.dom, cod=g.cod, table=table)


def identity(a: FiniteSet) -> FiniteMap:
    return FiniteMap(id=f"1_{a.id}", dom=a, cod=a, table=tuple((x, x) for x in a))


def map_difference(f: FiniteMap, g: FiniteMap) -> Optional[ElementId]:
    """First domain element (declared order) where two parallel maps differ.

    Returns None when the maps agree everywhere. Maps that are not parallel
    have no element witness; callers compare boundaries first.
    """
    for x, y in f.table:
        if g.lookup.get(x) != y:
            return x
    return None


def maps_equal(f: FiniteMap, g: FiniteMap) -> bool:
    if f.dom != g.dom or f.cod != g.cod:
        return False
    return len(f.table) == len(g.table) and map_difference(f, g) is None


def image(f: FiniteMap) -> Tuple[ElementId, ...]:
    """Elements of cod(f) that are hit, in codomain order."""
    hit = set(f.lookup.values())
    return tuple(y for y in f.cod if y in hit)


def classify_map(f: FiniteMap) -> MapClassification:
    first_with_image: Dict[ElementId, ElementId] = {}
    collision = None
    for x, y in f.table:
        if y in first_with_image:
            collision = (first_with_image[y], x)
            break
        first_with_image[y] = x
    hit = set(f.lookup.values())
    missed = next((y for y in f.cod if y not in hit), None)
    injective = collision is None
    surjective = missed is None
    return MapClassification(
        injective=injective,
        surjective=surjective,
        bijective=injective and surjective,
        endomorphic=f.dom == f.cod,
        collision=collision,
        missed=missed,
    )


def inverse(f: FiniteMap) -> FiniteMap:
    """Return f⁻¹ for a bijective map, ordered by the codomain."""
    classification = classify_map(f)
    if not classification.bijective:
        raise NotBijective(f.id, classification)
    back = {y: x for x, y in f.table}
    return FiniteMap(id=f"{f.id}⁻¹", dom=f.cod, cod=f.dom, table=tuple((y, back[y]) for y in f.cod))


def hom_set(a: FiniteSet, b: FiniteSet, prefix: str = "h") -> List[FiniteMap]:
    """Every map a -> b, in lexicographic table order (|b| ** |a| maps)."""
    maps = []
    for index, targets in enumerate(itertools.product(b.elements, repeat=len(a))):
        maps.append(
            FiniteMap(
                id=f"{prefix}_{a.id}_{b.id}_{index}",
                dom=a,
                cod=b,
                table=tuple(zip(a.elements, targets)),
            )
        )
    return maps
