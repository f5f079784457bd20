"""Tests for the ncat-galois command line."""

import json
import logging

import pytest

from ncat_engine.cli import EXIT_FAILURE, EXIT_OK, EXIT_USAGE, format_class, main
from ncat_engine.config import WORKERS_ENV
from ncat_engine.factor import classify
from ncat_engine.files import read_ncat, write_functor, write_ncat
from ncat_engine.ncat import NFunctor, identity_functor
from ncat_engine.reflect import reflect
from ncat_engine.shapes import chain, globe, parallel_cells
from testkit.library import parallel_pair


def inclusion() -> NFunctor:
    walking, doubled = parallel_cells(2, 1), parallel_cells(2, 2)
    maps = tuple({c: c for c in level} for level in walking.cells)
    return NFunctor(dom=walking, cod=doubled, maps=maps)


class TestValidate:
    def test_valid_ncat(self, tmp_path, capsys):
        path = write_ncat(tmp_path / "globe.ncat", globe(2))
        assert main(["validate", str(path)]) == EXIT_OK
        assert capsys.readouterr().out.strip() == "OK"

    def test_invalid_ncat(self, tmp_path, capsys):
        document = globe(1).to_dict()
        document["tgt"][0]["0:1[*]"] = "0"
        path = tmp_path / "bad.ncat"
        path.write_text(json.dumps(document), encoding="utf-8")
        assert main(["validate", str(path)]) == EXIT_FAILURE
        assert capsys.readouterr().out.startswith("INVALID: ")

    def test_functor(self, tmp_path, capsys):
        path = write_functor(tmp_path / "eta.nfun", reflect(parallel_pair()).unit)
        assert main(["validate", "--functor", str(path)]) == EXIT_OK
        assert "OK" in capsys.readouterr().out

    def test_unreadable_file_is_a_usage_error(self, tmp_path, capsys):
        assert main(["validate", str(tmp_path / "missing.ncat")]) == EXIT_USAGE
        assert "cannot read" in capsys.readouterr().err


class TestCommands:
    def test_reflect_writes_image_and_unit(self, tmp_path, capsys):
        path = write_ncat(tmp_path / "pair.ncat", parallel_pair())
        out = tmp_path / "out"
        assert main(["reflect", str(path), "-o", str(out)]) == EXIT_OK
        assert (out / "unit.nfun").exists()
        assert read_ncat(out / "image.ncat").cells_count() == (2, 3)
        assert "4 top cells onto 3 classes" in capsys.readouterr().out

    def test_classify_prints_flags(self, tmp_path, capsys):
        path = write_functor(tmp_path / "eta.nfun", reflect(parallel_cells(2, 2)).unit)
        assert main(["classify", str(path)]) == EXIT_OK
        first = capsys.readouterr().out.splitlines()[0]
        assert first == "vertical=true stably_vertical=true trivial_covering=false covering=false"

    @pytest.mark.parametrize("system", ["reflective", "ml"])
    def test_factor_writes_a_certificate(self, tmp_path, system):
        path = write_functor(tmp_path / "f.nfun", inclusion())
        out = tmp_path / system
        assert main(["factor", "--system", system, str(path), "-o", str(out)]) == EXIT_OK
        certificate = json.loads((out / "certificate.json").read_text(encoding="utf-8"))
        assert certificate["left_class"] and certificate["right_class"]
        assert {"e.nfun", "m.nfun", "middle.ncat"} <= {p.name for p in out.iterdir()}

    def test_product(self, tmp_path, capsys):
        a = write_ncat(tmp_path / "a.ncat", chain(1))
        b = write_ncat(tmp_path / "b.ncat", chain(2))
        assert main(["product", str(a), str(b), "-o", str(tmp_path / "out")]) == EXIT_OK
        assert "[6, 18]" in capsys.readouterr().out

    def test_product_needs_equal_dimensions(self, tmp_path, capsys):
        a = write_ncat(tmp_path / "a.ncat", globe(2))
        b = write_ncat(tmp_path / "b.ncat", chain(1))
        assert main(["product", str(a), str(b), "-o", str(tmp_path / "out")]) == EXIT_USAGE
        assert "cannot multiply a 2-category by a 1-category" in capsys.readouterr().err

    def test_coproduct_with_tags(self, tmp_path):
        a = write_ncat(tmp_path / "a.ncat", chain(1))
        b = write_ncat(tmp_path / "b.ncat", globe(1))
        out = tmp_path / "out"
        args = ["coproduct", str(a), str(b), "--tags", "x,y", "-o", str(out)]
        assert main(args) == EXIT_OK
        assert "y:1" in read_ncat(out / "apex.ncat").cells[0]
        assert (out / "in1.nfun").exists()

    def test_coproduct_rejects_colliding_tags(self, tmp_path, capsys):
        a = write_ncat(tmp_path / "a.ncat", chain(1))
        args = ["coproduct", str(a), str(a), "--tags", "x,x:0", "-o", str(tmp_path / "out")]
        assert main(args) == EXIT_USAGE
        assert "must not contain ':'" in capsys.readouterr().err

    def test_pullback_needs_a_shared_codomain(self, tmp_path, capsys):
        f = write_functor(tmp_path / "f.nfun", identity_functor(chain(1)))
        g = write_functor(tmp_path / "g.nfun", identity_functor(chain(2)))
        assert main(["pullback", str(f), str(g), "-o", str(tmp_path / "out")]) == EXIT_USAGE
        assert capsys.readouterr().err.startswith("error: ")

    def test_pullback(self, tmp_path):
        f = write_functor(tmp_path / "f.nfun", inclusion())
        out = tmp_path / "out"
        assert main(["pullback", str(f), str(f), "-o", str(out)]) == EXIT_OK
        assert read_ncat(out / "apex.ncat").cells_count() == parallel_cells(2, 1).cells_count()

    def test_edm(self, tmp_path):
        path = write_ncat(tmp_path / "pair.ncat", parallel_pair())
        out = tmp_path / "out"
        assert main(["edm", str(path), "-o", str(out)]) == EXIT_OK
        verdict = json.loads((out / "verdict.json").read_text(encoding="utf-8"))
        assert verdict["sufficient"] is True
        assert verdict["missing"] is None


class TestCheck:
    def test_suite_report(self, tmp_path, capsys):
        report = tmp_path / "report.json"
        args = ["check", "--suite", "axioms", "--n", "1", "--size", "2", "--trials", "2"]
        assert main(args + ["--workers", "1", "--output", str(report)]) == EXIT_OK
        assert "axioms: 2/2 passed" in capsys.readouterr().out
        data = json.loads(report.read_text(encoding="utf-8"))
        assert [trial["seed"] for trial in data["trials"]] == [0, 1]

    def test_verbose_logs_progress(self, caplog):
        caplog.set_level(logging.DEBUG, logger="ncat_engine.cli")
        args = ["-v", "check", "--suite", "axioms", "--n", "1", "--size", "2", "--trials", "2"]
        assert main(args + ["--workers", "1"]) == EXIT_OK
        messages = [r.getMessage() for r in caplog.records if r.name == "ncat_engine.cli"]
        progress = [m for m in messages if m.startswith("trial ")]
        assert len(progress) == 2
        assert progress[-1].startswith("trial 1 done: 2/2 complete, 0 failed")

    def test_dimension_must_be_positive(self):
        with pytest.raises(SystemExit) as excinfo:
            main(["check", "--suite", "axioms", "--n", "0"])
        assert excinfo.value.code == EXIT_USAGE

    def test_bad_worker_setting(self, monkeypatch, capsys):
        monkeypatch.setenv(WORKERS_ENV, "none")
        assert main(["check", "--suite", "axioms", "--n", "1", "--trials", "1"]) == EXIT_USAGE
        assert "invalid environment configuration" in capsys.readouterr().err


class TestOutput:
    def test_no_command_prints_help(self, capsys):
        assert main([]) == EXIT_USAGE
        assert "usage" in capsys.readouterr().out

    def test_format_class_lists_witnesses(self):
        text = format_class(classify(inclusion()))
        lines = text.splitlines()
        assert lines[0].startswith("vertical=true stably_vertical=false")
        assert any(line.startswith("  stably_vertical: level 1") for line in lines[1:])
