"""Finite-category engine and validator for the visualization process.

Three layers:
- Math core: `FiniteSet`, `FiniteMap`, `Diagram` and the checks on them
  (axioms, commutativity, monic/epic/isic, terminal/initial objects).
- Process: `ProcessModel` binds the eight object roles and fourteen morphism
  roles; `validate_process` and the analyses read properties off the binding.
- Surfaces: the `.viscat` spec language (`parse_spec`, `serialize_spec`),
  reports (`emit_report`), `ModelHandle` for servers, and the ``viscat`` CLI.
"""

from .analysis import (
    ChartJunkReport,
    PropertyFlag,
    RenderProfile,
    classify_morphisms,
    detect_chart_junk,
    profile_render,
    redundancy_report,
    sensitivity_report,
)
from .config import Config, configure_logging
from .diagram import (
    CheckMode,
    Diagram,
    Equality,
    ExtremalKind,
    Path,
    build_diagram,
    categorical_status,
    check_axioms,
    check_commutativity,
    check_extremal,
    compare_paths,
    compose_path,
    enumerate_paths,
    find_extremal,
)
from .dsl import Diagnostic, ParseResult, Severity, SpecSource, load_spec, parse_spec, serialize_spec
from .errors import VisCatError
from .finset import (
    FiniteMap,
    FiniteSet,
    apply,
    classify_map,
    compose,
    identity,
    inverse,
    make_map,
    make_set,
    maps_equal,
    normalize_element,
)
from .handle import ModelHandle
from .process import (
    ProcessModel,
    answerable_questions,
    build_process,
    check_gen_e,
    intension_status,
    parse_atom,
    required_equalities,
    validate_process,
)
from .report import ReportBundle, ReportFormat, emit_report

__all__ = [
    "FiniteSet",
    "FiniteMap",
    "make_set",
    "make_map",
    "apply",
    "compose",
    "identity",
    "inverse",
    "maps_equal",
    "classify_map",
    "normalize_element",
    "Diagram",
    "Equality",
    "Path",
    "CheckMode",
    "ExtremalKind",
    "build_diagram",
    "enumerate_paths",
    "compose_path",
    "compare_paths",
    "check_commutativity",
    "check_axioms",
    "categorical_status",
    "check_extremal",
    "find_extremal",
    "ProcessModel",
    "build_process",
    "required_equalities",
    "validate_process",
    "check_gen_e",
    "intension_status",
    "answerable_questions",
    "parse_atom",
    "PropertyFlag",
    "RenderProfile",
    "ChartJunkReport",
    "sensitivity_report",
    "redundancy_report",
    "profile_render",
    "detect_chart_junk",
    "classify_morphisms",
    "SpecSource",
    "Diagnostic",
    "Severity",
    "ParseResult",
    "parse_spec",
    "serialize_spec",
    "load_spec",
    "ReportBundle",
    "ReportFormat",
    "emit_report",
    "ModelHandle",
    "Config",
    "configure_logging",
    "VisCatError",
]

# Docstrings for Python help/autocomplete.
apply.__doc__ = """Image of one element under a map.

Raises:
    ElementNotInDomain: ``x`` is not in dom(f)."""

identity.__doc__ = """The identity map 1_A on a finite set (id ``1_<A.id>``)."""

maps_equal.__doc__ = """Extensional equality: same dom, same cod, same image for every element."""

compose_path.__doc__ = """Composite of a path's steps (identity of its source for the empty path)."""

compare_paths.__doc__ = """Enumerate every path source -> target and compare their composites pairwise.

Returns:
    PathsReport with the paths in lexicographic order, ``agree`` and any
    failures (each with a witness element)."""

profile_render.__doc__ = """Sensitivity, non-redundancy, literalness and ambiguity of the bound render.

Args:
    p: ProcessModel with ``render`` bound.
    mode: None to upgrade to categorical checks when alternates are declared;
        CheckMode.SetLevel to force the table reading.

Returns:
    RenderProfile; ``decode`` holds render⁻¹ when render is bijective.

Raises:
    UnboundRole: render is not bound."""
