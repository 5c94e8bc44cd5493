import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from _gen import BASES, HEIS, SPLIT_SOURCES, random_flag_point, random_valid_datum
from liebiext.serialize import (
    FormatError,
    base_ref,
    bialgebra_from_dict,
    bialgebra_to_dict,
    corpus_names,
    datum_from_dict,
    datum_to_dict,
    detect_kind,
    dumps,
    flag_from_dict,
    flag_to_dict,
    load_corpus,
    load_path,
)

seeds = st.integers(min_value=0, max_value=2**32)


def test_heisenberg_corpus_entry():
    E = bialgebra_from_dict(load_corpus("heisenberg"))
    assert E.same_constants(HEIS)
    assert E.name == "heisenberg"
    assert base_ref(HEIS) == "heisenberg"


def test_bracket_written_upper_half_only():
    obj = bialgebra_to_dict(HEIS)
    assert list(obj["bracket"]) == ["1,2"]
    assert obj["bracket"]["1,2"] == [{"k": 3, "c": "1"}]


@pytest.mark.parametrize("E", BASES + [E for E, _ in SPLIT_SOURCES], ids=lambda E: E.name or "sum")
def test_bialgebra_round_trip(E):
    obj = bialgebra_to_dict(E)
    back = bialgebra_from_dict(json.loads(dumps(obj)))
    assert back.same_constants(E) and back.space == E.space
    assert bialgebra_to_dict(back) == obj


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_datum_round_trip(seed):
    d = random_valid_datum(random.Random(seed))
    obj = json.loads(dumps(datum_to_dict(d)))
    back = datum_from_dict(obj)
    assert back.base.same_constants(d.base)
    assert back.arrays() == d.arrays()
    assert datum_to_dict(back) == datum_to_dict(d)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_flag_round_trip(seed):
    rng = random.Random(seed)
    fd = None
    while fd is None:
        fd = random_flag_point(rng, rng.choice(BASES))
    back = flag_from_dict(json.loads(dumps(flag_to_dict(fd))))
    assert back.base.same_constants(fd.base)
    assert (back.alpha, back.M, back.A.coeffs, back.B.coeffs) == (fd.alpha, fd.M, fd.A.coeffs, fd.B.coeffs)


def test_output_is_canonical():
    obj = {"name": "n", "basis": ["a", "b"], "bracket": {"1,2": [{"k": 2, "c": "2/4"}]}, "cobracket": {}}
    text = dumps(bialgebra_to_dict(bialgebra_from_dict(obj)))
    assert '"c": "1/2"' in text
    assert text.endswith("}\n")
    assert dumps(bialgebra_to_dict(bialgebra_from_dict(json.loads(text)))) == text


def test_corpus_entries_load():
    kinds = {}
    for name in corpus_names():
        kind, _ = load_path(name)
        kinds[name] = kind
        assert load_path(f"corpus/{name}.json")[0] == kind
    assert kinds["heisenberg"] == "bialgebra"
    assert kinds["heisenberg-zero-datum"] == "datum"
    assert kinds["heisenberg-flag-rotation"] == "flag"


def test_relative_base_path(tmp_path):
    (tmp_path / "sub").mkdir()
    (tmp_path / "sub" / "h.json").write_text(dumps(bialgebra_to_dict(HEIS)))
    flag = {"base": "h.json", "A": ["0", "0", "1"]}
    (tmp_path / "sub" / "f.json").write_text(json.dumps(flag))
    kind, fd = load_path(str(tmp_path / "sub" / "f.json"))
    assert kind == "flag" and fd.base.same_constants(HEIS)


def test_inline_base():
    d = datum_from_dict({"base": bialgebra_to_dict(HEIS), "v_basis": ["v"]})
    assert d.base.same_constants(HEIS)


BAD = [
    ("bialgebra", {"basis": ["a", "b"], "bracket": {"2,1": [{"k": 1, "c": "1"}]}}),
    ("bialgebra", {"basis": ["a", "b"], "bracket": {"1,2": [{"k": 3, "c": "1"}]}}),
    ("bialgebra", {"basis": ["a", "b"], "bracket": {"1,2": [{"k": 1, "c": 0.5}]}}),
    ("bialgebra", {"basis": ["a", "b"], "bracket": {"1,2": [{"k": 1, "c": "1"}, {"k": 1, "c": "2"}]}}),
    ("bialgebra", {"basis": ["a", "a"]}),
    ("bialgebra", {"basis": [f"e{i}" for i in range(11)]}),
    ("bialgebra", {"basis": ["a"], "cobracket": {"1": [{"j": 1, "k": 1, "c": "x"}]}}),
    ("datum", {"base": "heisenberg", "v_basis": ["x"]}),
    ("datum", {"base": "heisenberg", "v_basis": ["v"], "lact": {"1": []}}),
    ("datum", {"base": "heisenberg", "v_basis": ["v"], "extra": {}}),
    ("datum", {"base": "no-such-base", "v_basis": ["v"]}),
    ("flag", {"base": "heisenberg", "alpha": ["0", "0"]}),
    ("flag", {"base": "heisenberg", "B": {"2,1": "1"}}),
    ("flag", {"base": "heisenberg", "D": [["0"]]}),
]


@pytest.mark.parametrize("kind,obj", BAD)
def test_format_errors(kind, obj):
    loader = {"bialgebra": bialgebra_from_dict, "datum": datum_from_dict, "flag": flag_from_dict}[kind]
    with pytest.raises(FormatError):
        loader(obj)


def test_detect_kind():
    assert detect_kind({"basis": []}) == "bialgebra"
    assert detect_kind({"base": "h", "v_basis": []}) == "datum"
    assert detect_kind({"base": "h"}) == "flag"
    with pytest.raises(FormatError):
        detect_kind([])
    with pytest.raises(FormatError):
        detect_kind({})


def test_missing_file_and_bad_json(tmp_path):
    with pytest.raises(FormatError):
        load_path(str(tmp_path / "missing.json"))
    p = tmp_path / "bad.json"
    p.write_text("{")
    with pytest.raises(FormatError):
        load_path(str(p))
    with pytest.raises(FormatError):
        load_path("heisenberg", "flag")
