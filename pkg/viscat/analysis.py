"""Visualization properties derived from the render morphism and the layout.

Sensitivity and redundancy are decidable from `render` alone (set-level) and
are upgraded to their quantified form when alternate measures or reads are
declared. Every flag records the mode that produced it.
"""

import itertools
import logging
from typing import Dict, List, Optional, Sequence, Tuple, Union

from pydantic import BaseModel, ConfigDict, field_serializer

from .diagram import CheckMode, Diagram, MorphismStatus, categorical_status
from .errors import MissingDerivations, NoIntension, UnboundRole
from .finset import FiniteMap, classify_map, compose, identity, inverse, maps_equal
from .process import ProcessModel

logger = logging.getLogger(__name__)


class PropertyFlag(BaseModel):
    value: bool
    mode: CheckMode
    witnesses: List[str] = []


class RenderProfile(BaseModel):
    """Table of render properties: sensitivity, redundancy, literalness, ambiguity."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    render: MorphismStatus
    sensitive: PropertyFlag
    non_redundant: PropertyFlag
    literal: bool
    strictly_literal: bool
    non_ambiguous: bool
    ambiguity_witnesses: List[str] = []
    decode: Optional[FiniteMap] = None

    @field_serializer("decode")
    def _decode_table(self, decode: Optional[FiniteMap]) -> Optional[Dict[str, str]]:
        if decode is None:
            return None
        return {x: y for x, y in decode.table}


class RedundantGroup(BaseModel):
    source: str
    elements: List[str]


class ChartJunkReport(BaseModel):
    arbitrary_junk: List[str] = []
    redundant_groups: List[RedundantGroup] = []
    rules_consistency: bool
    inconsistent_rules: List[str] = []


def _require_render(p: ProcessModel, operation: str) -> FiniteMap:
    render = p.morphism_for("render")
    if render is None:
        raise UnboundRole("render", operation)
    return render


def _bound_ids(p: ProcessModel, role: str, alternates: Sequence[str]) -> List[str]:
    ids = [p.roles[role]] if role in p.roles else []
    ids.extend(a for a in alternates if a not in ids)
    return ids


def _distinct_pair_collision(
    maps: Sequence[FiniteMap], composite
) -> Optional[Tuple[FiniteMap, FiniteMap]]:
    """First pair of distinct maps whose composites coincide."""
    for m1, m2 in itertools.combinations(maps, 2):
        if maps_equal(m1, m2):
            continue
        if maps_equal(composite(m1), composite(m2)):
            return m1, m2
    return None


def _use_categorical(alternates: Sequence[str], mode: Optional[CheckMode]) -> bool:
    return bool(alternates) and (mode is None or CheckMode(mode) is CheckMode.Categorical)


def sensitivity_report(p: ProcessModel, mode: Optional[CheckMode] = None) -> PropertyFlag:
    """Distinct measurements must give distinct representations.

    With alternate measures (and mode not forced to set-level) every pair of
    distinct bound measures m1, m2 must keep render∘m1 != render∘m2; the
    witness is the offending measure pair. Otherwise render must be injective.
    """
    render = _require_render(p, "sensitivity_report")
    if _use_categorical(p.alt_measures, mode):
        measures = [p.diagram.morphisms[i] for i in _bound_ids(p, "measure", p.alt_measures)]
        pair = _distinct_pair_collision(measures, lambda m: compose(render, m))
        witnesses = [pair[0].id, pair[1].id] if pair else []
        return PropertyFlag(value=pair is None, mode=CheckMode.Categorical, witnesses=witnesses)
    c = classify_map(render)
    witnesses = list(c.collision) if c.collision else []
    return PropertyFlag(value=c.injective, mode=CheckMode.SetLevel, witnesses=witnesses)


def redundancy_report(p: ProcessModel, mode: Optional[CheckMode] = None) -> PropertyFlag:
    """Non-redundancy: different reads of the representation give different understandings.

    Returns the non_redundant flag. Categorical with alternate reads (witness:
    the read pair whose composites with render coincide); otherwise render
    must be surjective (witness: the first unhit mark).
    """
    render = _require_render(p, "redundancy_report")
    if _use_categorical(p.alt_reads, mode):
        reads = [p.diagram.morphisms[i] for i in _bound_ids(p, "read", p.alt_reads)]
        pair = _distinct_pair_collision(reads, lambda r: compose(r, render))
        witnesses = [pair[0].id, pair[1].id] if pair else []
        return PropertyFlag(value=pair is None, mode=CheckMode.Categorical, witnesses=witnesses)
    c = classify_map(render)
    witnesses = [c.missed] if c.missed is not None else []
    return PropertyFlag(value=c.surjective, mode=CheckMode.SetLevel, witnesses=witnesses)


def profile_render(p: ProcessModel, mode: Optional[CheckMode] = None) -> RenderProfile:
    render = _require_render(p, "profile_render")
    c = classify_map(render)
    decode = inverse(render) if c.bijective else None
    ambiguity: List[str] = []
    if c.collision is not None:
        ambiguity.append(f"{c.collision[0]} and {c.collision[1]} render to {render.lookup[c.collision[0]]}")
    if c.missed is not None:
        ambiguity.append(f"{c.missed} decodes to no data")
    profile = RenderProfile(
        render=categorical_status(p.diagram, render.id, CheckMode.SetLevel),
        sensitive=sensitivity_report(p, mode),
        non_redundant=redundancy_report(p, mode),
        literal=c.endomorphic,
        strictly_literal=c.endomorphic and maps_equal(render, identity(render.dom)),
        non_ambiguous=c.bijective,
        ambiguity_witnesses=ambiguity,
        decode=decode,
    )
    logger.debug(
        "render profile for %s: sensitive=%s non_redundant=%s literal=%s non_ambiguous=%s",
        render.id,
        profile.sensitive.value,
        profile.non_redundant.value,
        profile.literal,
        profile.non_ambiguous,
    )
    return profile


def detect_chart_junk(p: ProcessModel) -> ChartJunkReport:
    """Layout elements with no schema derivation, and co-derived layout groups.

    The report labels; it never scores. Redundant groups are not junk: they
    are layout elements that a rule derives from one shared schema element.
    """
    if not p.has_intension:
        raise NoIntension("detect_chart_junk")
    if p.derivations is None:
        raise MissingDerivations()
    layout = p.object_for("Layout")
    schema = p.object_for("Schema")
    rules = p.morphism_for("rules")
    derivations = p.derivations

    groups = []
    for s in schema:
        members = [e for e in layout if derivations.get(e) == s]
        if len(members) >= 2:
            groups.append(RedundantGroup(source=s, elements=members))
    inconsistent = [s for s in schema if derivations.get(rules.lookup[s]) != s]
    return ChartJunkReport(
        arbitrary_junk=[e for e in layout if e not in derivations],
        redundant_groups=groups,
        rules_consistency=not inconsistent,
        inconsistent_rules=inconsistent,
    )


def classify_morphisms(
    target: Union[ProcessModel, Diagram], mode: CheckMode = CheckMode.SetLevel
) -> List[MorphismStatus]:
    """`categorical_status` for every morphism, in declaration order."""
    d = target.diagram if isinstance(target, ProcessModel) else target
    return [categorical_status(d, morphism_id, mode) for morphism_id in d.morphisms]
