"""The 29-entry catalog and the seeded random generators."""

from __future__ import annotations

import numpy as np
import pytest

from indumatch import (
    Barcode,
    LadderCode,
    THIN_CODES,
    direct_sum_morphism,
    enumerate_catalog,
    from_code,
    g_matching,
    m_matching,
    random_ladder,
)

from conftest import iv, mat


# The 27 thin codes, pinned: single-row intervals plus the staircases
# upper [a,b] over lower [c,d] with a <= c <= b <= d.
GOLDEN_THIN = sorted(
    [
        ("000", "100"), ("000", "010"), ("000", "001"),
        ("000", "110"), ("000", "011"), ("000", "111"),
        ("100", "000"), ("010", "000"), ("001", "000"),
        ("110", "000"), ("011", "000"), ("111", "000"),
        ("100", "100"), ("100", "110"), ("100", "111"),
        ("110", "110"), ("110", "111"), ("111", "111"),
        ("110", "010"), ("110", "011"), ("111", "011"),
        ("111", "001"), ("010", "010"), ("010", "011"),
        ("011", "011"), ("011", "001"), ("001", "001"),
    ]
)


def code(upper, lower):
    return LadderCode(
        tuple(int(x) for x in upper), tuple(int(x) for x in lower)
    )


def test_thin_codes_match_golden_list():
    got = sorted(
        ("".join(map(str, c.upper)), "".join(map(str, c.lower)))
        for c in THIN_CODES
    )
    assert got == GOLDEN_THIN


def test_catalog_has_29_valid_entries():
    cat = enumerate_catalog(2)
    assert len(cat) == 29
    for f in cat:
        f.validate()


def test_catalog_valid_over_gf5():
    for f in enumerate_catalog(5):
        f.validate()


def test_spot_diagram_011_001():
    f = from_code(code("011", "001"), 2)
    assert f.target.dims == (0, 1, 1)
    assert f.source.dims == (0, 0, 1)
    assert np.array_equal(f.comp(3), mat([[1]]))
    assert np.array_equal(f.target.map(2), mat([[1]]))


def test_spot_diagram_thick_121_011():
    f = from_code(code("121", "011"), 2)
    assert f.target.dims == (1, 2, 1)
    assert np.array_equal(f.target.map(1), mat([[1], [0]]))
    assert np.array_equal(f.target.map(2), mat([[0, 1]]))
    assert np.array_equal(f.comp(2), mat([[1], [1]]))
    assert np.array_equal(f.comp(3), mat([[1]]))


def test_spot_diagram_thick_110_121():
    f = from_code(code("110", "121"), 2)
    assert f.source.dims == (1, 2, 1)
    assert f.target.dims == (1, 1, 0)
    assert np.array_equal(f.comp(1), mat([[1]]))
    assert np.array_equal(f.comp(2), mat([[1, 1]]))
    assert f.comp(3).shape == (0, 1)


def test_zero_code_is_zero_morphism():
    f = from_code(code("000", "000"), 2)
    assert f.source.is_zero() and f.target.is_zero()


def test_unknown_code_rejected():
    with pytest.raises(ValueError):
        from_code(code("101", "000"), 2)
    with pytest.raises(ValueError):
        from_code(code("111", "100"), 2)


def test_thick_ladder_matching_table():
    f = from_code(code("121", "011"), 2)
    assert m_matching(f).as_dict() == {(iv(2, 3), iv(2, 3)): 1}
    assert g_matching(f).as_dict() == {
        (iv(2, 3), iv(2, 3)): Barcode.from_pairs([(2, 3, 1)])
    }


def test_catalog_sum_reproduces_reference(reference_ladder):
    total = direct_sum_morphism(
        from_code(code("000", "011"), 2), from_code(code("110", "010"), 2)
    )
    assert total == reference_ladder


def test_random_ladder_deterministic():
    a = random_ladder(6, 4, 2, 12345)
    b = random_ladder(6, 4, 2, 12345)
    assert a == b
    c = random_ladder(6, 4, 2, 12346)
    assert a != c


def test_random_ladders_validate():
    for seed in range(60):
        random_ladder(6, 4, 2 if seed % 2 else 5, seed).validate()


def test_random_ladder_tables_double_under_self_sum():
    f = random_ladder(6, 4, 2, 777)
    doubled = m_matching(direct_sum_morphism(f, f)).as_dict()
    assert doubled == {k: 2 * c for k, c in m_matching(f).items()}
