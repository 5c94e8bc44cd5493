"""JSON file formats for bialgebras, extending datums and flag datums.

Indices in files are 1-based; the Python API is 0-based.  Structure constants
are sparse: omitted entries are zero, scalars are written as canonical text.

* bialgebra: ``{"name", "basis", "bracket": {"i,j": [{"k", "c"}]},
  "cobracket": {"i": [{"j", "k", "c"}]}}`` with only ``i < j`` bracket keys.
* datum: ``{"base", "v_basis", "lact", "ract", "f", "vbracket": {"x,a": [{"k", "c"}]},
  "DeltaE", "DeltaV", "deltaV": {"x": [{"j", "k", "c"}]}}``.
* flag: ``{"base", "alpha": [..], "D": [[..]], "A": [..], "B": {"i,j": c}}``.

``base`` is either an inline bialgebra object or a reference: the name of a
bundled corpus entry or a path relative to the referencing file.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path
from typing import Callable

from . import _tensor as T
from .exactnum import ZERO, Scalar, format_scalar, parse_scalar
from .extension import BiExtendingDatum
from .flag import FlagDatum, wedge_pairs
from .liecore import MAX_DIM, BasisSpace, LieBialgebra

__all__ = [
    "FormatError",
    "base_ref",
    "bialgebra_from_dict",
    "bialgebra_to_dict",
    "corpus_names",
    "datum_from_dict",
    "datum_to_dict",
    "detect_kind",
    "dumps",
    "flag_from_dict",
    "flag_to_dict",
    "load_corpus",
    "load_json",
    "load_path",
    "resolve_path",
]


class FormatError(ValueError):
    """Malformed file: wrong shape, bad index, bad scalar text."""


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _scalar(text, field: str) -> Scalar:
    if isinstance(text, bool) or not isinstance(text, (str, int)):
        raise FormatError(f"{field}: scalar must be text, got {text!r}")
    try:
        return parse_scalar(str(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"{field}: {exc}") from None


def _index(value, size: int, field: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise FormatError(f"{field}: index must be an integer, got {value!r}")
    if not 1 <= value <= size:
        raise FormatError(f"{field}: index {value} out of range 1..{size}")
    return value - 1


def _key(text, sizes: tuple, field: str) -> tuple:
    parts = str(text).split(",")
    if len(parts) != len(sizes):
        raise FormatError(f"{field}: key {text!r} needs {len(sizes)} indices")
    try:
        raw = [int(p) for p in parts]
    except ValueError:
        raise FormatError(f"{field}: key {text!r} is not a list of integers") from None
    return tuple(_index(r, s, f"{field}[{text}]") for r, s in zip(raw, sizes))


def _mapping(obj, field: str) -> dict:
    if obj is None:
        return {}
    if not isinstance(obj, dict):
        raise FormatError(f"{field}: expected an object")
    return obj


def _entries(obj, field: str) -> list:
    if not isinstance(obj, list):
        raise FormatError(f"{field}: expected a list of entries")
    for e in obj:
        if not isinstance(e, dict):
            raise FormatError(f"{field}: entries must be objects")
    return obj


def _put(arr, idx, value, field):
    *head, last = idx
    row = arr
    for i in head:
        row = row[i]
    if row[last]:
        raise FormatError(f"{field}: duplicate entry")
    row[last] = value


def _read_pair_map(obj, shape, field, upper_only=False):
    """``"i,j" -> [{"k", "c"}]`` into a dense ``shape`` array."""
    n1, n2, n3 = shape
    arr = T.zeros3(n1, n2, n3)
    for key, items in _mapping(obj, field).items():
        i, j = _key(key, (n1, n2), field)
        if upper_only and not i < j:
            raise FormatError(f"{field}: only i<j keys allowed (got {key!r})")
        for e in _entries(items, f"{field}[{key}]"):
            k = _index(e.get("k"), n3, f"{field}[{key}].k")
            c = _scalar(e.get("c"), f"{field}[{key}].c")
            _put(arr, (i, j, k), c, f"{field}[{key}]")
            if upper_only:
                arr[j][i][k] = -c
    return arr


def _read_single_map(obj, shape, field):
    """``"i" -> [{"j", "k", "c"}]`` into a dense ``shape`` array."""
    n1, n2, n3 = shape
    arr = T.zeros3(n1, n2, n3)
    for key, items in _mapping(obj, field).items():
        (i,) = _key(key, (n1,), field)
        for e in _entries(items, f"{field}[{key}]"):
            j = _index(e.get("j"), n2, f"{field}[{key}].j")
            k = _index(e.get("k"), n3, f"{field}[{key}].k")
            _put(arr, (i, j, k), _scalar(e.get("c"), f"{field}[{key}].c"), f"{field}[{key}]")
    return arr


def _write_pair_map(arr, upper_only=False) -> dict:
    out = {}
    for i, plane in enumerate(arr):
        for j, row in enumerate(plane):
            if upper_only and not i < j:
                continue
            items = [{"k": k + 1, "c": format_scalar(c)} for k, c in enumerate(row) if c]
            if items:
                out[f"{i + 1},{j + 1}"] = items
    return out


def _write_single_map(arr) -> dict:
    out = {}
    for i, plane in enumerate(arr):
        items = [{"j": j + 1, "k": k + 1, "c": format_scalar(c)}
                 for j, row in enumerate(plane) for k, c in enumerate(row) if c]
        if items:
            out[str(i + 1)] = items
    return out


def _basis(obj, field: str) -> list[str]:
    if not isinstance(obj, list) or not all(isinstance(x, str) for x in obj):
        raise FormatError(f"{field}: expected a list of labels")
    if len(set(obj)) != len(obj):
        raise FormatError(f"{field}: labels must be distinct")
    if len(obj) > MAX_DIM:
        raise FormatError(f"{field}: at most {MAX_DIM} basis elements supported")
    return obj


# -- bialgebras ---------------------------------------------------------------


def bialgebra_to_dict(E: LieBialgebra) -> dict:
    """Only the ``i < j`` half of the bracket is written (antisymmetry implied)."""
    return {
        "name": E.name,
        "basis": list(E.space.names),
        "bracket": _write_pair_map(E.c, upper_only=True),
        "cobracket": _write_single_map(E.d),
    }


def bialgebra_from_dict(obj) -> LieBialgebra:
    if not isinstance(obj, dict):
        raise FormatError("bialgebra: expected an object")
    names = _basis(obj.get("basis"), "basis")
    n = len(names)
    name = obj.get("name", "")
    if not isinstance(name, str):
        raise FormatError("name: expected text")
    c = _read_pair_map(obj.get("bracket"), (n, n, n), "bracket", upper_only=True)
    d = _read_single_map(obj.get("cobracket"), (n, n, n), "cobracket")
    return LieBialgebra.from_tables(BasisSpace(tuple(names)), c, d, name)


# -- references -------------------------------------------------------------


def corpus_names() -> list[str]:
    root = resources.files("liebiext") / "corpus"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def load_corpus(name: str) -> dict:
    path = resources.files("liebiext") / "corpus" / f"{name}.json"
    if not path.is_file():
        raise FormatError(f"no corpus entry named {name!r}")
    return json.loads(path.read_text(encoding="utf-8"))


def resolve_path(ref: str) -> Path | str:
    """A filesystem path, or a corpus name for ``name`` / ``corpus/name.json``."""
    p = Path(ref)
    if p.is_file():
        return p
    stem = p.name[:-5] if p.name.endswith(".json") else p.name
    if (len(p.parts) == 1 or p.parts[-2] == "corpus") and stem in corpus_names():
        return stem
    raise FormatError(f"no such file or corpus entry: {ref!r}")


def load_json(ref: str) -> tuple[dict, Path | None]:
    target = resolve_path(ref)
    if isinstance(target, str):
        return load_corpus(target), None
    try:
        return json.loads(target.read_text(encoding="utf-8")), target.parent
    except json.JSONDecodeError as exc:
        raise FormatError(f"{ref}: not valid JSON ({exc.msg} at line {exc.lineno})") from None


def _base(obj, where: Path | None) -> LieBialgebra:
    ref = obj.get("base") if isinstance(obj, dict) else None
    if isinstance(ref, dict):
        return bialgebra_from_dict(ref)
    if not isinstance(ref, str):
        raise FormatError("base: expected a corpus name, a path or an inline bialgebra")
    candidate = where / ref if where is not None else None
    if candidate is not None and candidate.is_file():
        data, _ = load_json(str(candidate))
    else:
        data, _ = load_json(ref)
    return bialgebra_from_dict(data)


def base_ref(E: LieBialgebra):
    """The name of a bundled bialgebra with identical constants, else an inline object."""
    names = corpus_names()
    if E.name in names:
        names.remove(E.name)
        names.insert(0, E.name)
    for name in names:
        obj = load_corpus(name)
        if detect_kind(obj) == "bialgebra" and bialgebra_from_dict(obj).same_constants(E):
            return name
    return bialgebra_to_dict(E)


# -- datums -----------------------------------------------------------------

_PAIR_FIELDS = ("lact", "ract", "f", "vbracket")
_SINGLE_FIELDS = ("DeltaE", "DeltaV", "deltaV")


def _datum_shapes(n: int, m: int) -> dict:
    return {"lact": (m, n, m), "ract": (m, n, n), "f": (m, m, n), "vbracket": (m, m, m),
            "DeltaE": (m, n, m), "DeltaV": (m, n, n), "deltaV": (m, m, m)}


def datum_to_dict(d: BiExtendingDatum, base=None) -> dict:
    out = {"base": base_ref(d.base) if base is None else base, "v_basis": list(d.V.names)}
    for name, arr in d.arrays()._asdict().items():
        entries = _write_pair_map(arr) if name in _PAIR_FIELDS else _write_single_map(arr)
        if entries:
            out[name] = entries
    return out


def datum_from_dict(obj, where: Path | None = None) -> BiExtendingDatum:
    if not isinstance(obj, dict):
        raise FormatError("datum: expected an object")
    known = {"base", "v_basis", "name", *_PAIR_FIELDS, *_SINGLE_FIELDS}
    extra = sorted(set(obj) - known)
    if extra:
        raise FormatError(f"datum: unknown field {extra[0]!r}")
    base = _base(obj, where)
    vnames = _basis(obj.get("v_basis"), "v_basis")
    clash = set(vnames) & set(base.space.names)
    if clash:
        raise FormatError(f"v_basis: label {sorted(clash)[0]!r} already used by the base")
    shapes = _datum_shapes(base.dim, len(vnames))
    arrays = {}
    for name in _PAIR_FIELDS:
        arrays[name] = _read_pair_map(obj.get(name), shapes[name], name)
    for name in _SINGLE_FIELDS:
        arrays[name] = _read_single_map(obj.get(name), shapes[name], name)
    return BiExtendingDatum.from_arrays(base, vnames, **arrays)


# -- flag datums ------------------------------------------------------------


def flag_to_dict(fd: FlagDatum, base=None) -> dict:
    n = fd.base.dim
    return {
        "base": base_ref(fd.base) if base is None else base,
        "alpha": [format_scalar(x) for x in fd.alpha],
        "D": [[format_scalar(x) for x in row] for row in fd.M],
        "A": [format_scalar(x) for x in fd.A.coeffs],
        "B": {f"{i + 1},{j + 1}": format_scalar(fd.B.coeffs[i][j])
              for i, j in wedge_pairs(n) if fd.B.coeffs[i][j]},
    }


def _scalar_list(obj, n: int, field: str) -> list[Scalar]:
    if obj is None:
        return [ZERO] * n
    if not isinstance(obj, list) or len(obj) != n:
        raise FormatError(f"{field}: expected a list of {n} scalars")
    return [_scalar(x, f"{field}[{i + 1}]") for i, x in enumerate(obj)]


def flag_from_dict(obj, where: Path | None = None) -> FlagDatum:
    if not isinstance(obj, dict):
        raise FormatError("flag: expected an object")
    extra = sorted(set(obj) - {"base", "name", "alpha", "D", "A", "B"})
    if extra:
        raise FormatError(f"flag: unknown field {extra[0]!r}")
    base = _base(obj, where)
    n = base.dim
    alpha = _scalar_list(obj.get("alpha"), n, "alpha")
    A = _scalar_list(obj.get("A"), n, "A")
    rows = obj.get("D")
    if rows is None:
        M = [[ZERO] * n for _ in range(n)]
    else:
        if not isinstance(rows, list) or len(rows) != n:
            raise FormatError(f"D: expected {n} rows")
        M = [_scalar_list(r, n, f"D[{i + 1}]") for i, r in enumerate(rows)]
    B = {}
    for key, value in _mapping(obj.get("B"), "B").items():
        i, j = _key(key, (n, n), "B")
        if not i < j:
            raise FormatError(f"B: only i<j keys allowed (got {key!r})")
        B[(i, j)] = _scalar(value, f"B[{key}]")
    return FlagDatum.build(base, alpha, M, A, B)


# -- dispatch ---------------------------------------------------------------


def detect_kind(obj) -> str:
    """``"bialgebra"``, ``"datum"`` or ``"flag"``."""
    if not isinstance(obj, dict):
        raise FormatError("expected a JSON object at top level")
    if "v_basis" in obj:
        return "datum"
    if "basis" in obj:
        return "bialgebra"
    if "base" in obj:
        return "flag"
    raise FormatError("cannot tell the file kind: need 'basis', 'v_basis' or 'base'")


_LOADERS: dict[str, Callable] = {
    "bialgebra": lambda obj, where: bialgebra_from_dict(obj),
    "datum": datum_from_dict,
    "flag": flag_from_dict,
}


def load_path(ref: str, expect: str | None = None):
    """Load a file or corpus entry; returns ``(kind, object)``."""
    obj, where = load_json(ref)
    kind = detect_kind(obj)
    if expect is not None and kind != expect:
        raise FormatError(f"{ref}: expected a {expect} file, found a {kind} file")
    return kind, _LOADERS[kind](obj, where)
