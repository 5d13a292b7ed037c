"""Report assembly and rendering.

A `ReportBundle` collects whichever check and analysis results a command
produced. `emit_report` renders it either as a human-readable digest or as a
machine document (JSON, 2-space indent, fields in declaration order, absent
sections omitted). Identical bundles always render to identical bytes.
"""

import logging
from enum import Enum
from typing import Callable, Dict, List, Optional, Union

import orjson
from pydantic import BaseModel

from .analysis import (
    ChartJunkReport,
    RenderProfile,
    classify_morphisms,
    detect_chart_junk,
    profile_render,
)
from .diagram import (
    AxiomReport,
    CheckMode,
    CommuteReport,
    Diagram,
    ExtremalReport,
    MorphismStatus,
    PathsReport,
    Status,
    _status,
    chain,
    check_axioms,
    check_commutativity,
    compare_paths,
)
from .process import (
    GenEReport,
    IntensionStatus,
    ProcessModel,
    QuestionReport,
    answerable_questions,
    intension_status,
    validate_process,
)

logger = logging.getLogger(__name__)

Model = Union[ProcessModel, Diagram]


class ReportFormat(str, Enum):
    Text = "text"
    Machine = "machine"


class ReportBundle(BaseModel):
    origin: Optional[str] = None
    status: Optional[Status] = None
    axioms: Optional[AxiomReport] = None
    commutativity: Optional[CommuteReport] = None
    extremal: Optional[List[ExtremalReport]] = None
    render_profile: Optional[RenderProfile] = None
    chart_junk: Optional[ChartJunkReport] = None
    intension: Optional[IntensionStatus] = None
    generalizable: Optional[bool] = None
    questions: Optional[QuestionReport] = None
    gen_e: Optional[GenEReport] = None
    morphisms: Optional[List[MorphismStatus]] = None
    paths: Optional[PathsReport] = None


def _as_process(model: Model) -> ProcessModel:
    return model if isinstance(model, ProcessModel) else ProcessModel(diagram=model)


def validation_bundle(model: Model, max_len: Optional[int] = None, origin: Optional[str] = None) -> ReportBundle:
    """Validate a process model, or run the diagram-only checks on a bare diagram."""
    if isinstance(model, ProcessModel):
        result = validate_process(model, max_len)
        return ReportBundle(
            origin=origin,
            status=result.status,
            axioms=result.axioms,
            commutativity=result.commutativity,
            extremal=result.extremal if not result.extremal_skipped else None,
            gen_e=result.gen_e,
        )
    axioms = check_axioms(model)
    if axioms.totality.status == "fail":
        return ReportBundle(origin=origin, status="fail", axioms=axioms)
    commutativity = check_commutativity(model, max_len)
    return ReportBundle(
        origin=origin,
        status=_status(axioms.passed and commutativity.passed),
        axioms=axioms,
        commutativity=commutativity,
    )


def analysis_bundle(
    model: Model, mode: Optional[CheckMode] = None, origin: Optional[str] = None
) -> ReportBundle:
    """Render profile, chart junk, intension and questions; findings never set a status.

    ``mode`` decides the per-morphism classification (set-level when None)
    and is passed to the render profile. With no mode the profile upgrades
    itself to categorical when alternates are declared; an explicit mode
    is kept.
    """
    p = _as_process(model)
    intension = intension_status(p)
    bundle = ReportBundle(
        origin=origin,
        intension=intension.status,
        generalizable=intension.generalizable,
        morphisms=classify_morphisms(p, mode or CheckMode.SetLevel),
    )
    if p.morphism_for("render") is not None:
        bundle.render_profile = profile_render(p, mode)
    if p.has_intension:
        bundle.questions = answerable_questions(p)
        if p.derivations is not None:
            bundle.chart_junk = detect_chart_junk(p)
        else:
            logger.warning("%s: no derive block; chart junk not assessed", origin or "model")
    return bundle


def paths_bundle(
    model: Model, source: str, target: str, max_len: Optional[int] = None, origin: Optional[str] = None
) -> ReportBundle:
    d = model.checked_diagram if isinstance(model, ProcessModel) else model
    paths = compare_paths(d, source, target, max_len)
    return ReportBundle(origin=origin, status=_status(paths.agree), paths=paths)


# --- rendering -------------------------------------------------------------


def report_document(bundle: ReportBundle) -> Dict[str, object]:
    """The machine document as plain data: every present section, in field order."""
    return {k: v for k, v in bundle.model_dump(mode="json").items() if v is not None}


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def _axiom_lines(axioms: AxiomReport) -> List[str]:
    parts = ", ".join(
        f"{name} {getattr(axioms, name).status}" for name in ("identity", "totality", "associativity")
    )
    lines = [f"axioms: {axioms.status.upper()} ({parts})"]
    for name in ("identity", "totality", "associativity"):
        for v in getattr(axioms, name).violations:
            lines.append(f"  {name}: {v.morphism}: {v.detail}")
    return lines


def _commutativity_lines(report: CommuteReport) -> List[str]:
    lines = [f"commutativity: {report.status.upper()} ({report.pairs_checked} comparisons)"]
    lines.extend(f"  {failure.describe()}" for failure in report.failures)
    return lines


def _extremal_lines(reports: List[ExtremalReport]) -> List[str]:
    lines = []
    for r in reports:
        lines.append(f"{r.object} is {r.kind.value}: {r.status.upper()}")
        if r.unreachable:
            lines.append(f"  no path with: {', '.join(r.unreachable)}")
        lines.extend(f"  {failure.describe()}" for failure in r.disagreements)
    return lines


def _gen_e_lines(report: GenEReport) -> List[str]:
    lines = [f"gen_E agreement: {report.status.upper()} ({report.checked} atoms checked)"]
    for m in report.mismatches:
        lines.append(f"  {m.element} -> {m.declared}, expected {m.expected}")
    if report.unchecked:
        lines.append(f"  not of the form predicate(args): {', '.join(report.unchecked)}")
    return lines


def _render_lines(profile: RenderProfile) -> List[str]:
    r = profile.render
    lines = [
        f"render {r.morphism}: monic={_yes(r.monic)} epic={_yes(r.epic)} endic={_yes(r.endic)} isic={_yes(r.isic)}"
    ]
    for label, flag in (("sensitive", profile.sensitive), ("non-redundant", profile.non_redundant)):
        witness = f" [{', '.join(flag.witnesses)}]" if flag.witnesses else ""
        lines.append(f"  {label}: {_yes(flag.value)} ({flag.mode.value}){witness}")
    lines.append(f"  literal: {_yes(profile.literal)}" + (" (identity)" if profile.strictly_literal else ""))
    lines.append(f"  non-ambiguous: {_yes(profile.non_ambiguous)}")
    lines.extend(f"    {w}" for w in profile.ambiguity_witnesses)
    if profile.decode is not None:
        lines.append("  decode: " + ", ".join(f"{y} -> {x}" for y, x in profile.decode.table))
    return lines


def _junk_lines(report: ChartJunkReport) -> List[str]:
    junk = ", ".join(report.arbitrary_junk) or "none"
    lines = [f"chart junk (arbitrary layout elements): {junk}"]
    for group in report.redundant_groups:
        lines.append(f"  redundant: {', '.join(group.elements)} <- {group.source}")
    if not report.rules_consistency:
        lines.append(f"  rules disagree with derivations at: {', '.join(report.inconsistent_rules)}")
    return lines


def _question_lines(report: QuestionReport) -> List[str]:
    lines = [f"answerable questions: {', '.join(report.answerable) or 'none'}"]
    if report.raised_unanswered:
        lines.append(f"  raised but not answered: {', '.join(report.raised_unanswered)}")
    if report.answered_unraised:
        lines.append(f"  answered but not raised: {', '.join(report.answered_unraised)}")
    return lines


def _morphism_lines(statuses: List[MorphismStatus]) -> List[str]:
    if not statuses:
        return []
    width = max(len(s.morphism) for s in statuses)
    lines = [f"morphisms ({statuses[0].mode.value}):"]
    for s in statuses:
        flags = " ".join(name for name in ("monic", "epic", "endic", "isic") if getattr(s, name)) or "-"
        lines.append(f"  {s.morphism.ljust(width)}  {flags}")
    return lines


def _path_lines(report: PathsReport) -> List[str]:
    lines = [f"paths {report.source} -> {report.target} (max length {report.max_len}): {len(report.paths)}"]
    lines.extend(f"  {chain(steps)}" for steps in report.paths)
    if report.agree:
        lines.append("all parallel composites agree" if len(report.paths) > 1 else "nothing to compare")
    lines.extend(f"  {failure.describe()}" for failure in report.failures)
    return lines


def _text(bundle: ReportBundle) -> str:
    sections: List[List[str]] = []
    if bundle.origin is not None or bundle.status is not None:
        head = bundle.origin or "model"
        sections.append([f"{head}: {bundle.status.upper()}" if bundle.status else head])
    renderers: List[tuple] = [
        (bundle.axioms, _axiom_lines),
        (bundle.commutativity, _commutativity_lines),
        (bundle.extremal, _extremal_lines),
        (bundle.gen_e, _gen_e_lines),
        (bundle.render_profile, _render_lines),
        (bundle.chart_junk, _junk_lines),
        (bundle.questions, _question_lines),
        (bundle.morphisms, _morphism_lines),
        (bundle.paths, _path_lines),
    ]
    for value, render in renderers:
        if value is not None:
            sections.append(render(value))
    if bundle.intension is not None:
        suffix = "generalizable" if bundle.generalizable else "not generalizable"
        sections.append([f"intension: {bundle.intension.value} ({suffix})"])
    return "\n".join(line for lines in sections for line in lines) + "\n"


_RENDERERS: Dict[ReportFormat, Callable[[ReportBundle], str]] = {
    ReportFormat.Text: _text,
    ReportFormat.Machine: lambda bundle: orjson.dumps(report_document(bundle), option=orjson.OPT_INDENT_2).decode()
    + "\n",
}


def emit_report(bundle: ReportBundle, format: Union[ReportFormat, str] = ReportFormat.Text) -> str:
    return _RENDERERS[ReportFormat(format)](bundle)
