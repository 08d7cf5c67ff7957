from math import comb

import numpy as np
import pytest

from steiner_moduli.census import type1_pair_indices, type1_points_with_index, type2_indices
from steiner_moduli.cohomology import ModuliParams, golden_hodge
from steiner_moduli.tangweights import (
    CANONICAL,
    CalibrationError,
    ConventionError,
    SignConvention,
    calibrate,
    calibrated_convention,
    closed_form_n1_n2,
    discrepancy_report,
    expected_zero_count,
    solve_weights,
    tangent_report,
    weight_multisets,
)
from steiner_moduli.torusfix import FixedPointType1, FixedPointType2, enum_type1, enum_type2, representative


def test_solve_weights_examples():
    w = solve_weights(FixedPointType1(3, (0, 1, 2), (1, 2, 3)))
    assert w.c == (1, 2, 4, 8)
    assert w.a == (0, 1)
    assert w.b == (-1, -2, -4, -3, -7)
    w2 = solve_weights(FixedPointType2(3, (0, 0, 1, 2, 3)))
    assert w2.a == (0, 0)
    assert w2.b == (-1, -1, -2, -4, -8)


def test_equivariance_assert_fires():
    p = FixedPointType2(3, (0, 0, 1, 2, 3))
    wrong = representative(FixedPointType2(3, (0, 1, 2, 3, 3)))
    with pytest.raises(AssertionError):
        solve_weights(p, wrong)


def test_multiset_sizes_n3():
    p = FixedPointType1(3, (0, 1, 2), (1, 2, 3))
    rep = tangent_report(p)
    assert sum(rep.w2.values()) == 25
    assert sum(rep.w3.values()) == 36
    assert rep.ext_size == 12 == ModuliParams(3, 3).dim


@pytest.mark.parametrize("n,m", [(1, 1), (2, 3), (3, 3), (3, 5), (4, 5), (5, 5)])
def test_zero_count_is_component_dimension(n, m):
    dim = ModuliParams(n, m).dim
    for p in list(enum_type1(n, m)) + list(enum_type2(n, m)):
        rep = tangent_report(p)
        assert rep.zero_count == expected_zero_count(p)
        assert rep.ext_size == dim
        assert rep.n1 <= comb(m + 2, 2)
        assert 0 <= rep.n and rep.n + rep.zero_count <= dim


def test_orientation_flip_is_duality():
    flipped = SignConvention(count_negative=True)
    for n in (3, 5):
        dim = ModuliParams(n, n).dim
        for p in list(enum_type1(n, n)) + list(enum_type2(n, n)):
            a, b = tangent_report(p), tangent_report(p, flipped)
            assert b.n == dim - a.n - a.zero_count


@pytest.mark.parametrize("n,m", [(1, 1), (3, 3), (3, 5), (4, 5), (5, 5)])
@pytest.mark.parametrize("code", ["0000", "0001", "1110", "1111"])
def test_fast_census_matches_multiset_oracle(n, m, code):
    conv = SignConvention.from_code(code)
    fast = [k for _, k in type1_points_with_index(n, m, conv)]
    slow = [tangent_report(p, conv).n for p in enum_type1(n, m)]
    assert fast == slow
    pts, shifts = type2_indices(n, m, conv)
    assert shifts.tolist() == [tangent_report(p, conv).n for p in pts]


@pytest.mark.parametrize("code", ["0010", "0100", "1000", "1101"])
def test_bad_conventions_rejected_by_both_paths(code):
    conv = SignConvention.from_code(code)
    with pytest.raises(ConventionError):
        for p in enum_type1(3, 3):
            rep = tangent_report(p, conv)
            if rep.zero_count != 0:
                raise ConventionError("zero weights at an isolated point")
    with pytest.raises(ConventionError):
        for i0 in range(4):
            for j0 in range(i0 + 1, 4):
                type1_pair_indices(3, 3, i0, j0, conv)


@pytest.mark.parametrize("n", [3, 5, 7])
def test_representative_independence(n):
    for q in enum_type2(n, n):
        ref = None
        for offset in (0, 2, 5):
            w = solve_weights(q, representative(q, offset))
            w2, w3 = weight_multisets(w)
            key = (w2, w3)
            assert ref is None or key == ref
            ref = key


def test_closed_forms():
    p = FixedPointType1(3, (0, 2, 3), (1, 2, 3))
    assert closed_form_n1_n2(p) == (10, 10)
    assert closed_form_n1_n2(FixedPointType1(3, (0, 1, 2), (1, 2, 3)))[1] == 10
    q = FixedPointType2(3, (0, 1, 2, 3, 3))
    assert closed_form_n1_n2(q)[1] == 11


def test_discrepancy_report_deterministic():
    pts = list(enum_type1(3, 3)) + list(enum_type2(3, 3))
    a = [d.line() for d in discrepancy_report(pts)]
    b = [d.line() for d in discrepancy_report(reversed(pts))]
    assert a == b
    assert all(":" in line for line in a)


def test_calibration():
    g = golden_hodge()
    res = calibrate(3, 3, g[3], check=(5, 5, g[5]))
    assert res.convention == CANONICAL
    assert set(res.matches_ref) == {"0000", "0001", "1110", "1111"}
    assert res.matches_check == res.matches_ref


def test_calibration_negative_control():
    bad = list(golden_hodge()[3])
    bad[4] += 1
    with pytest.raises(CalibrationError):
        calibrate(3, 3, bad)


def test_calibration_cache(tmp_path):
    assert calibrated_convention(tmp_path) == CANONICAL
    assert (tmp_path / "calibration.json").exists()
    assert calibrated_convention(tmp_path) == CANONICAL


def test_convention_codes():
    assert len({c.code for c in SignConvention.all()}) == 16
    assert SignConvention.from_code("1010") == SignConvention(True, False, True, False)
    with pytest.raises(ValueError):
        SignConvention.from_code("2")


def test_pair_kernel_shape():
    out = type1_pair_indices(5, 5, 0, 1)
    assert isinstance(out, np.ndarray) and out.shape == (comb(5, 3) ** 2,)
