"""Tests for the NCat and NFunctor file formats."""

import json

import pytest

from ncat_engine.files import (
    FileFormatError,
    dumps_functor,
    dumps_ncat,
    loads_functor,
    loads_ncat,
    read_functor,
    read_ncat,
    split_pair_key,
    write_functor,
    write_json,
    write_ncat,
)
from ncat_engine.limits import product
from ncat_engine.ncat import identity_functor
from ncat_engine.shapes import chain, globe, parallel_cells
from ncat_engine.validator import check_ncat


def arrow_document() -> dict:
    return json.loads(dumps_ncat(chain(1)))


class TestPairKeys:
    def test_plain_key(self):
        assert split_pair_key("g|f") == ("g", "f")

    def test_bars_inside_pair_names_are_skipped(self):
        assert split_pair_key("(a|b)|(c|d)") == ("(a|b)", "(c|d)")
        assert split_pair_key("[x<=y]|0:1[(a|b)]") == ("[x<=y]", "0:1[(a|b)]")

    @pytest.mark.parametrize("key", ["gf", "g|f|h", "(g|f)"])
    def test_key_needs_one_top_level_bar(self, key):
        with pytest.raises(FileFormatError):
            split_pair_key(key)


class TestNCatFiles:
    def test_written_file_reads_back(self, tmp_path):
        shape = product(globe(2), parallel_cells(2, 2)).apex
        path = write_ncat(tmp_path / "nested" / "shape.ncat", shape)
        assert read_ncat(path) == shape
        assert path.read_text(encoding="utf-8").endswith("}\n")

    def test_dump_is_stable(self):
        assert dumps_ncat(globe(2)) == dumps_ncat(globe(2))

    def test_invalid_json_names_the_source(self):
        with pytest.raises(FileFormatError, match="a.ncat"):
            loads_ncat("{", source="a.ncat")

    def test_missing_field(self):
        with pytest.raises(FileFormatError, match="cells"):
            loads_ncat('{"n": 1}')

    def test_unknown_field(self):
        document = arrow_document()
        document["extra"] = 1
        with pytest.raises(FileFormatError, match="extra"):
            loads_ncat(json.dumps(document))

    def test_level_count_must_match_n(self):
        document = arrow_document()
        document["cells"].append([])
        with pytest.raises(FileFormatError, match="cells must list 2 levels"):
            loads_ncat(json.dumps(document))

    def test_composition_key_must_name_two_levels(self):
        document = arrow_document()
        document["comp"] = {"1-0": {}}
        with pytest.raises(FileFormatError, match="1-0"):
            loads_ncat(json.dumps(document))

    @pytest.mark.parametrize("name", ["a|b", "(a", "a]", "x)(y"])
    def test_cell_names_must_be_plain(self, name):
        document = arrow_document()
        document["cells"][0].append(name)
        with pytest.raises(FileFormatError, match="on level 0"):
            loads_ncat(json.dumps(document))

    def test_pair_names_read_back(self):
        category = product(parallel_cells(1, 2), parallel_cells(1, 2)).apex
        assert loads_ncat(dumps_ncat(category)) == category

    def test_loading_does_not_validate(self):
        document = arrow_document()
        document["src"][0]["0:1[*]"] = "1"
        category = loads_ncat(json.dumps(document))
        assert check_ncat(category) is not None

    def test_unreadable_file(self, tmp_path):
        with pytest.raises(FileFormatError, match="cannot read"):
            read_ncat(tmp_path / "missing.ncat")


class TestNFunctorFiles:
    def test_inline_ends(self, tmp_path):
        f = identity_functor(chain(2))
        path = write_functor(tmp_path / "f.nfun", f)
        assert read_functor(path) == f
        assert loads_functor(dumps_functor(f)) == f

    def test_ends_resolve_against_the_file(self, tmp_path):
        write_ncat(tmp_path / "ends" / "arrow.ncat", chain(1))
        document = {
            "dom": "ends/arrow.ncat",
            "cod": "ends/arrow.ncat",
            "maps": [dict(sorted((c, c) for c in level)) for level in chain(1).cells],
        }
        path = tmp_path / "f.nfun"
        path.write_text(json.dumps(document), encoding="utf-8")
        f = read_functor(path)
        assert f.dom == chain(1)
        assert f(1, "0:1[*]") == "0:1[*]"

    def test_missing_end(self, tmp_path):
        document = {"dom": "nowhere.ncat", "cod": "nowhere.ncat", "maps": [{}, {}]}
        with pytest.raises(FileFormatError, match="cannot read"):
            loads_functor(json.dumps(document), base=tmp_path)

    def test_maps_must_cover_every_level(self):
        document = json.loads(dumps_functor(identity_functor(chain(1))))
        document["maps"].pop()
        with pytest.raises(FileFormatError, match="maps must list 2 levels"):
            loads_functor(json.dumps(document))


class TestWriteJson:
    def test_sorted_keys_and_trailing_newline(self, tmp_path):
        path = write_json(tmp_path / "report.json", {"b": 1, "a": [True, None]})
        text = path.read_text(encoding="utf-8")
        assert text.index('"a"') < text.index('"b"')
        assert text.endswith("\n")
        assert json.loads(text) == {"a": [True, None], "b": 1}
