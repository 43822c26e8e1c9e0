"""Line-oriented text formats for algebras, modules, maps and idempotent lists.

Algebra files::

    # comments run to end of line
    name U(2)            # optional
    field 2
    dim 2
    unit 1 0
    mul 0 0 : 1 0        # coordinates of e_0 e_0; every pair (i, j) is required
    ...

Module files reference algebra files (paths relative to the module file)::

    over b.alg           # right algebra
    left a.alg           # optional; makes it a bimodule
    mdim 2
    ract 0 0 : 1 0       # f_0 . e_0, for every (i < mdim, j < dim B)
    lact 0 0 : 1 0       # e_0 . f_0, for every (i < dim A, j < mdim)

Map files are ``rows r``, ``cols c`` and then ``r`` lines of ``c`` residues.
Idempotent files hold one coordinate vector per line.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping

import numpy as np

from .algebra import Algebra, validate
from .errors import (
    DimensionMismatch,
    MissingEntry,
    ModuleAxiomViolated,
    NonAssociative,
    NonPrimeModulus,
    ParseError,
    ValidationError,
    ValidationFailed,
)
from .gf import PrimeField
from .modules import Bimodule, RightModule
from .slip import LinearMap


@dataclass(frozen=True)
class _Line:
    number: int
    words: list[str]


def _lines(text: str) -> list[_Line]:
    out = []
    for n, raw in enumerate(text.splitlines(), start=1):
        words = raw.split("#", 1)[0].split()
        if words:
            out.append(_Line(n, words))
    return out


def _int(word: str, line: int, path: str) -> int:
    try:
        return int(word)
    except ValueError:
        raise ParseError(line, f"expected an integer, got {word!r}", path) from None


def _ints(words: Iterable[str], line: int, path: str) -> list[int]:
    return [_int(w, line, path) for w in words]


def _residues(words: list[str], count: int, p: int, line: int, path: str) -> list[int]:
    vals = _ints(words, line, path)
    if len(vals) != count:
        raise ParseError(line, f"expected {count} residues, got {len(vals)}", path)
    bad = [v for v in vals if not 0 <= v < p]
    if bad:
        raise ParseError(line, f"residue {bad[0]} outside [0, {p})", path)
    return vals


class _Header:
    """Single-valued directives such as ``field`` and ``dim``."""

    def __init__(self, path: str) -> None:
        self.path = path
        self.values: dict[str, tuple[int, list[str]]] = {}

    def set(self, line: _Line) -> None:
        key = line.words[0]
        if key in self.values:
            raise ParseError(line.number, f"duplicate '{key}' directive", self.path)
        self.values[key] = (line.number, line.words[1:])

    def has(self, key: str) -> bool:
        return key in self.values

    def line(self, key: str) -> int:
        return self.values[key][0]

    def words(self, key: str) -> list[str]:
        if key not in self.values:
            raise ParseError(0, f"missing '{key}' directive", self.path)
        return self.values[key][1]

    def single_int(self, key: str) -> int:
        words = self.words(key)
        if len(words) != 1:
            raise ParseError(self.line(key), f"'{key}' takes one integer", self.path)
        return _int(words[0], self.line(key), self.path)


def _table(
    rows: dict[tuple[int, int], tuple[int, list[str]]],
    keyword: str,
    n_i: int,
    n_j: int,
    width: int,
    p: int,
    path: str,
) -> tuple[np.ndarray, dict[tuple[int, int], int]]:
    """Dense ``(n_i, n_j, width)`` tensor from ``keyword i j : ...`` rows."""
    out = np.zeros((n_i, n_j, width), dtype=np.int64)
    where = {}
    for (i, j), (number, words) in rows.items():
        if not (0 <= i < n_i and 0 <= j < n_j):
            raise ParseError(number, f"'{keyword} {i} {j}' index out of range", path)
        out[i, j] = _residues(words, width, p, number, path)
        where[(i, j)] = number
    for i in range(n_i):
        for j in range(n_j):
            if (i, j) not in where:
                raise MissingEntry(keyword, i, j, 0, path)
    return out, where


def _indexed_row(line: _Line, path: str) -> tuple[tuple[int, int], list[str]]:
    w = line.words
    if len(w) < 4 or w[3] != ":":
        raise ParseError(line.number, f"expected '{w[0]} <i> <j> : <residues>'", path)
    return (_int(w[1], line.number, path), _int(w[2], line.number, path)), w[4:]


def _collect(lines: list[_Line], header_keys: set[str], row_keys: set[str], path: str):
    header = _Header(path)
    rows: dict[str, dict[tuple[int, int], tuple[int, list[str]]]] = {k: {} for k in row_keys}
    for line in lines:
        key = line.words[0]
        if key in header_keys:
            header.set(line)
        elif key in row_keys:
            idx, words = _indexed_row(line, path)
            if idx in rows[key]:
                raise ParseError(line.number, f"duplicate '{key} {idx[0]} {idx[1]}' row", path)
            rows[key][idx] = (line.number, words)
        else:
            raise ParseError(line.number, f"unknown directive {key!r}", path)
    return header, rows


def _field(header: _Header) -> PrimeField:
    p = header.single_int("field")
    try:
        return PrimeField(p)
    except NonPrimeModulus:
        raise
    except ValueError as exc:
        raise ParseError(header.line("field"), str(exc), header.path) from None


def parse_algebra_text(text: str, path: str = "") -> Algebra:
    header, rows = _collect(_lines(text), {"name", "field", "dim", "unit"}, {"mul"}, path)
    field = _field(header)
    p = field.p
    d = header.single_int("dim")
    if d < 1:
        raise ParseError(header.line("dim"), "dimension must be positive", path)
    unit = _residues(header.words("unit"), d, p, header.line("unit"), path)
    structure, where = _table(rows["mul"], "mul", d, d, d, p, path)
    name = " ".join(header.words("name")) if header.has("name") else ""
    alg = Algebra(field, structure, np.array(unit, dtype=np.int64), name=name)
    try:
        validate(alg)
    except NonAssociative as exc:
        i, j, _ = exc.triple
        raise ValidationFailed(where[(i, j)], exc, path) from exc
    except ValidationError as exc:
        raise ValidationFailed(header.line("unit"), exc, path) from exc
    return alg


def parse_algebra(path: str | Path) -> Algebra:
    path = Path(path)
    return parse_algebra_text(_read(path), str(path))


def _read(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise ParseError(0, "file not found", str(path)) from None
    except UnicodeDecodeError:
        raise ParseError(0, "file is not UTF-8", str(path)) from None


def parse_module_text(
    text: str, path: str = "", algebras: Mapping[str, Algebra] | None = None, base_dir: Path | None = None
) -> RightModule | Bimodule:
    """Parse a module file; ``algebras`` maps referenced names to pre-parsed algebras."""
    header, rows = _collect(_lines(text), {"name", "over", "left", "mdim"}, {"ract", "lact"}, path)
    base_dir = base_dir if base_dir is not None else Path(".")
    algebras = algebras or {}

    def load(key: str) -> Algebra:
        words = header.words(key)
        if len(words) != 1:
            raise ParseError(header.line(key), f"'{key}' takes one algebra file", path)
        if words[0] in algebras:
            return algebras[words[0]]
        return parse_algebra(base_dir / words[0])

    right = load("over")
    m = header.single_int("mdim")
    if m < 0:
        raise ParseError(header.line("mdim"), "module dimension must be non-negative", path)
    p = right.p
    ract, rwhere = _table(rows["ract"], "ract", m, right.dim, m, p, path)
    name = " ".join(header.words("name")) if header.has("name") else ""
    try:
        if not header.has("left"):
            if rows["lact"]:
                first = min(n for n, _ in rows["lact"].values())
                raise ParseError(first, "'lact' rows need a 'left' algebra", path)
            return RightModule(right, m, ract, name=name)
        left = load("left")
        if left.p != p:
            raise ParseError(header.line("left"), "left and right algebras use different fields", path)
        lact, lwhere = _table(rows["lact"], "lact", left.dim, m, m, p, path)
        return Bimodule(left, right, m, lact, ract, name=name)
    except ModuleAxiomViolated as exc:
        i, j, _ = exc.triple
        table = rwhere if exc.kind != "left" else lwhere
        raise ValidationFailed(table.get((i, j), 0), exc, path) from exc
    except ValidationError as exc:
        raise ValidationFailed(header.line("mdim"), exc, path) from exc


def parse_module(path: str | Path, algebras: Mapping[str, Algebra] | None = None) -> RightModule | Bimodule:
    path = Path(path)
    return parse_module_text(_read(path), str(path), algebras, path.parent)


def _matrix_rows(lines: list[_Line], path: str) -> np.ndarray:
    if not lines:
        return np.zeros((0, 0), dtype=np.int64)
    width = len(lines[0].words)
    rows = []
    for line in lines:
        vals = _ints(line.words, line.number, path)
        if len(vals) != width:
            raise ParseError(line.number, f"expected {width} entries, got {len(vals)}", path)
        rows.append(vals)
    return np.array(rows, dtype=np.int64)


def parse_map_text(text: str, path: str = "") -> LinearMap:
    lines = _lines(text)
    header = _Header(path)
    body = []
    for line in lines:
        if line.words[0] in ("rows", "cols"):
            if body:
                raise ParseError(line.number, f"'{line.words[0]}' after matrix rows", path)
            header.set(line)
        else:
            body.append(line)
    r, c = header.single_int("rows"), header.single_int("cols")
    if r < 1 or c < 1:
        raise ParseError(header.line("rows"), "map dimensions must be positive", path)
    if len(body) != r:
        raise ParseError(body[-1].number if body else header.line("cols"), f"expected {r} rows, got {len(body)}", path)
    for line in body:
        if len(line.words) != c:
            raise ParseError(line.number, f"expected {c} entries, got {len(line.words)}", path)
    return LinearMap(_matrix_rows(body, path))


def parse_map(path: str | Path) -> LinearMap:
    path = Path(path)
    return parse_map_text(_read(path), str(path))


def parse_vectors_text(text: str, dim: int, p: int, path: str = "") -> list[np.ndarray]:
    """One coordinate vector per line, e.g. a list of idempotents."""
    out = []
    for line in _lines(text):
        out.append(np.array(_residues(line.words, dim, p, line.number, path), dtype=np.int64))
    return out


def parse_vectors(path: str | Path, dim: int, p: int) -> list[np.ndarray]:
    path = Path(path)
    return parse_vectors_text(_read(path), dim, p, str(path))


def _join(values) -> str:
    return " ".join(str(int(v)) for v in values)


def serialize_algebra(a: Algebra) -> str:
    out = []
    if a.name:
        out.append(f"name {a.name}")
    out += [f"field {a.p}", f"dim {a.dim}", f"unit {_join(a.unit)}"]
    for i in range(a.dim):
        for j in range(a.dim):
            out.append(f"mul {i} {j} : {_join(a.structure[i, j])}")
    return "\n".join(out) + "\n"


def serialize_module(x: RightModule | Bimodule, over: str, left: str | None = None) -> str:
    """``over``/``left`` are the algebra file references written into the header."""
    out = []
    if x.name:
        out.append(f"name {x.name}")
    out.append(f"over {over}")
    if isinstance(x, Bimodule):
        if left is None:
            raise DimensionMismatch("a bimodule needs a left algebra reference")
        out.append(f"left {left}")
    out.append(f"mdim {x.mdim}")
    r = x.raction
    for i in range(r.shape[0]):
        for j in range(r.shape[1]):
            out.append(f"ract {i} {j} : {_join(r[i, j])}")
    if isinstance(x, Bimodule):
        lact = x.laction
        for i in range(lact.shape[0]):
            for j in range(lact.shape[1]):
                out.append(f"lact {i} {j} : {_join(lact[i, j])}")
    return "\n".join(out) + "\n"


def serialize_map(psi: LinearMap | np.ndarray) -> str:
    m = psi.matrix if isinstance(psi, LinearMap) else np.asarray(psi, dtype=np.int64)
    out = [f"rows {m.shape[0]}", f"cols {m.shape[1]}"]
    out += [_join(row) for row in m]
    return "\n".join(out) + "\n"


def serialize_vectors(vectors: Iterable) -> str:
    return "".join(_join(v) + "\n" for v in vectors)
