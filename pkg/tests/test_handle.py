"""
Tests for ModelHandle functionality.
"""

from pathlib import Path

import pytest

from viscat import Config, Diagram, ModelHandle, ProcessModel, SpecSource
from viscat.errors import DuplicateId, SpecSyntaxError, UnknownModel, UnknownObject


class TestModelHandleInit:
    """Tests for ModelHandle construction."""

    def test_accepts_models(self, golden: ProcessModel, square: Diagram):
        handle = ModelHandle({"golden": golden, "square": square})
        assert handle.list_models() == ["golden", "square"]
        assert "golden" in handle
        assert handle["square"] is square

    def test_rejects_other_values(self):
        with pytest.raises(TypeError):
            ModelHandle({"bad": "object A { x }"})


class TestModelHandleFromSources:
    """Tests for ModelHandle.from_sources() and from_dir()."""

    def test_names_models_by_stem(self, corpus_handle: ModelHandle):
        assert corpus_handle.list_models() == [
            "golden",
            "corrupted_understanding",
            "extension_only",
            "scatter_face",
            "bare_diagram",
        ]
        assert corpus_handle.description == "fixture corpus"

    def test_rejects_parse_errors(self, fixtures_dir: Path):
        with pytest.raises(SpecSyntaxError) as excinfo:
            ModelHandle.from_sources([SpecSource.from_path(fixtures_dir / "broken_unknown_role.viscat")])
        assert excinfo.value.origin.endswith("broken_unknown_role.viscat")

    def test_rejects_duplicate_names(self):
        sources = [SpecSource("object A { x }", "one/m.viscat"), SpecSource("object B { y }", "two/m.viscat")]
        with pytest.raises(DuplicateId):
            ModelHandle.from_sources(sources)

    def test_from_dir(self, tmp_path: Path, fixtures_dir: Path):
        for name in ("golden.viscat", "extension_only.yaml"):
            (tmp_path / name).write_text((fixtures_dir / name).read_text())
        (tmp_path / "notes.txt").write_text("not a spec")
        handle = ModelHandle.from_dir(tmp_path, config=Config())
        assert handle.list_models() == ["extension_only", "golden"]

    def test_from_dir_needs_directory(self, tmp_path: Path):
        with pytest.raises(NotADirectoryError):
            ModelHandle.from_dir(tmp_path / "absent")


class TestModelHandleSummary:
    """Tests for ModelHandle.summary()."""

    def test_process_summary(self, corpus_handle: ModelHandle):
        summary = corpus_handle.summary("golden")
        assert summary.kind == "process"
        assert summary.intension.value == "full"
        assert summary.objects["Layout"] == ["bar", "reference_line"]
        assert summary.morphisms["render"] == {"dom": "Data", "cod": "Representation"}
        assert summary.roles["truth"] == "truth"

    def test_diagram_summary(self, corpus_handle: ModelHandle):
        summary = corpus_handle.summary("bare_diagram")
        assert summary.kind == "diagram"
        assert summary.roles == {}
        assert summary.intension.value == "extension_only"

    def test_unknown_model(self, corpus_handle: ModelHandle):
        with pytest.raises(UnknownModel):
            corpus_handle.get_model("nope")


class TestModelHandleChecks:
    """Tests for the async check methods."""

    @pytest.mark.asyncio
    async def test_validate(self, corpus_handle: ModelHandle):
        bundle = await corpus_handle.validate("golden")
        assert bundle.status == "pass"
        assert bundle.origin == "golden"

    @pytest.mark.asyncio
    async def test_validate_failure(self, corpus_handle: ModelHandle):
        bundle = await corpus_handle.validate("corrupted_understanding")
        assert bundle.status == "fail"
        assert bundle.commutativity.failures[0].witness == "alan:90"

    @pytest.mark.asyncio
    async def test_analyze(self, corpus_handle: ModelHandle):
        bundle = await corpus_handle.analyze("scatter_face")
        assert bundle.chart_junk.redundant_groups[0].elements == ["points", "face"]

    @pytest.mark.asyncio
    async def test_analyze_uses_config_mode(self, golden: ProcessModel):
        config = Config.from_toml('[defaults.check]\nmode = "categorical"\n')
        handle = ModelHandle({"golden": golden}, config=config)
        bundle = await handle.analyze("golden")
        assert all(s.mode.value == "categorical" for s in bundle.morphisms)

    @pytest.mark.asyncio
    async def test_paths(self, corpus_handle: ModelHandle):
        bundle = await corpus_handle.paths("bare_diagram", "A", "D")
        assert bundle.paths.paths == [["f", "g"], ["h", "k"]]
        assert bundle.paths.agree

    @pytest.mark.asyncio
    async def test_paths_unknown_object(self, corpus_handle: ModelHandle):
        with pytest.raises(UnknownObject):
            await corpus_handle.paths("golden", "Data", "Nowhere")

    @pytest.mark.asyncio
    async def test_unknown_model(self, corpus_handle: ModelHandle):
        with pytest.raises(UnknownModel):
            await corpus_handle.validate("nope")
