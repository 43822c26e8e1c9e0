from __future__ import annotations

import numpy as np
import pytest

from sliplab.constructions import block_upper, matn, scalar_bimodule, scalar_field, u_dual_numbers
from sliplab.corpus import construction_corpus
from sliplab.errors import MissingEntry, NonPrimeModulus, ParseError, ValidationFailed
from sliplab.io import (
    parse_algebra,
    parse_algebra_text,
    parse_map_text,
    parse_module,
    parse_vectors_text,
    serialize_algebra,
    serialize_map,
    serialize_module,
    serialize_vectors,
)
from sliplab.modules import Bimodule, RightModule, regular_module

U2_TEXT = """\
# dual numbers over GF(2)
field 2
dim 2
unit 1 0
mul 0 0 : 1 0
mul 0 1 : 0 1
mul 1 0 : 0 1
mul 1 1 : 0 0   # x^2 = 0
"""


def test_parse_sample_algebra():
    a = parse_algebra_text(U2_TEXT)
    assert a.dim == 2 and a.p == 2
    assert np.array_equal(a.structure, u_dual_numbers(2).structure)


@pytest.mark.parametrize("a", construction_corpus(), ids=lambda a: a.name)
def test_round_trip_is_identity(a):
    text = serialize_algebra(a)
    b = parse_algebra_text(text)
    assert b.name == a.name
    assert np.array_equal(b.structure, a.structure) and np.array_equal(b.unit, a.unit)
    assert serialize_algebra(b) == text


def test_field_must_be_prime():
    with pytest.raises(NonPrimeModulus):
        parse_algebra_text(U2_TEXT.replace("field 2", "field 4"))


def test_missing_mul_row():
    with pytest.raises(MissingEntry) as info:
        parse_algebra_text(U2_TEXT.replace("mul 1 1 : 0 0   # x^2 = 0\n", ""))
    assert info.value.entry == (1, 1)


@pytest.mark.parametrize(
    "old,new,line",
    [
        ("unit 1 0", "unit 1 0 0", 4),
        ("mul 0 1 : 0 1", "mul 0 1 : 0 2", 6),
        ("mul 0 1 : 0 1", "mul 0 1 0 1", 6),
        ("mul 1 0 : 0 1", "mul 1 0 : 0 1\nmul 1 0 : 0 1", 8),
        ("dim 2", "dim two", 3),
        ("field 2", "field 2\nbogus 1", 3),
        ("mul 1 1 : 0 0", "mul 2 1 : 0 0", 8),
    ],
)
def test_syntax_errors_carry_line_numbers(old, new, line):
    with pytest.raises(ParseError) as info:
        parse_algebra_text(U2_TEXT.replace(old, new))
    assert info.value.line == line


def test_validation_failure_points_at_offending_row():
    # x^2 = x + 1 over GF(2) is fine; x . 1 = 1 is not
    text = U2_TEXT.replace("mul 1 0 : 0 1", "mul 1 0 : 1 0")
    with pytest.raises(ValidationFailed) as info:
        parse_algebra_text(text)
    assert info.value.line > 0


def test_module_files_round_trip(tmp_path):
    f2, u2 = scalar_field(2), u_dual_numbers(2)
    (tmp_path / "f2.alg").write_text(serialize_algebra(f2))
    (tmp_path / "u2.alg").write_text(serialize_algebra(u2))
    bim = scalar_bimodule(u2)
    (tmp_path / "m.mod").write_text(serialize_module(bim, "f2.alg", "u2.alg"))
    back = parse_module(tmp_path / "m.mod")
    assert isinstance(back, Bimodule)
    assert np.array_equal(back.laction, bim.laction) and np.array_equal(back.raction, bim.raction)
    right = regular_module(u2)
    (tmp_path / "r.mod").write_text(serialize_module(right, "u2.alg"))
    back = parse_module(tmp_path / "r.mod", {"u2.alg": u2})
    assert isinstance(back, RightModule) and back.base is u2


def test_module_axiom_failure_is_a_parse_error(tmp_path):
    u2 = u_dual_numbers(2)
    (tmp_path / "u2.alg").write_text(serialize_algebra(u2))
    text = serialize_module(regular_module(u2), "u2.alg").replace("ract 1 1 : 0 0", "ract 1 1 : 1 0")
    (tmp_path / "bad.mod").write_text(text)
    with pytest.raises(ValidationFailed):
        parse_module(tmp_path / "bad.mod")


def test_map_files():
    m = np.array([[1, 0, 2], [0, 1, 1]])
    assert np.array_equal(parse_map_text(serialize_map(m)).matrix, m)
    with pytest.raises(ParseError):
        parse_map_text("rows 2\ncols 2\n1 0\n")
    with pytest.raises(ParseError):
        parse_map_text("rows 1\ncols 2\n1 0 1\n")


def test_vectors_round_trip():
    a, idems = block_upper(matn(scalar_field(3), 1), (1, 1))
    vecs = [e.coords for e in idems]
    back = parse_vectors_text(serialize_vectors(vecs), a.dim, a.p)
    assert all(np.array_equal(x, y) for x, y in zip(vecs, back))


def test_missing_file(tmp_path):
    with pytest.raises(ParseError):
        parse_algebra(tmp_path / "nope.alg")
