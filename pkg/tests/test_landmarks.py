"""Landmark detection on synthetic curves."""

import pytest

from alphavote.analytic import ExpectedIncrements
from alphavote.landmarks import (Landmark, LandmarkRequest, detect_landmarks,
                                 parse_landmark_request)
from alphavote.scenarios import SweepResult


def _rows(values, role="group1", xs=None):
    xs = xs if xs is not None else range(len(values))
    out = []
    for x, v in zip(xs, values):
        kwargs = {"random_participant": 0.0}
        if v is not None:
            kwargs[role] = v
        out.append(SweepResult(x=x, increments=ExpectedIncrements(**kwargs)))
    return out


def test_argmax_and_argmin():
    rows = _rows([0.0, 2.0, 5.0, 1.0, -3.0])
    found = detect_landmarks(rows, [LandmarkRequest("argmax", ("group1",)),
                                    LandmarkRequest("argmin", ("group1",))])
    assert found == [Landmark("argmax", ("group1",), 2, 5.0),
                     Landmark("argmin", ("group1",), 4, -3.0)]


def test_argmax_tie_resolves_to_smallest_x():
    rows = _rows([1.0, 7.0, 3.0, 7.0])
    found = detect_landmarks(rows, [LandmarkRequest("argmax", ("group1",))])
    assert found[0].x == 1


def test_zero_crossing_reports_every_flip_with_interpolation():
    rows = _rows([1.0, 0.5, -0.5, -1.0, 1.0])
    found = detect_landmarks(rows, [LandmarkRequest("zero_crossing",
                                                    ("group1",))])
    assert [lm.x for lm in found] == [2, 4]
    assert found[0].value == pytest.approx(1.5)
    assert found[1].value == pytest.approx(3.5)


def test_crossing_ignores_noise_below_tolerance():
    rows = _rows([0.5, 1e-18, -2e-18, 3e-16, -0.5])
    found = detect_landmarks(rows, [LandmarkRequest("zero_crossing",
                                                    ("group1",))])
    assert len(found) == 1
    assert found[0].x == 4
    assert found[0].value == pytest.approx(2.0)  # midpoint of x=0 and x=4


def test_level_crossing():
    rows = _rows([0.0, 1.0, 3.0])
    found = detect_landmarks(rows, [LandmarkRequest("zero_crossing",
                                                    ("group1",), level=2.0)])
    assert found == [Landmark("zero_crossing", ("group1",), 2, 1.5)]


def test_curve_crossing_between_roles():
    rows = []
    for x, (a, b) in enumerate([(0.0, 1.0), (1.0, 1.0), (3.0, 1.0)]):
        rows.append(SweepResult(x=x, increments=ExpectedIncrements(
            group1=a, egoist=b, random_participant=0.0)))
    found = detect_landmarks(rows, [LandmarkRequest("curve_crossing",
                                                    ("group1", "egoist"))])
    # difference: -1, 0, +2; the zero row is snapped, crossing lands at x=2
    assert [lm.x for lm in found] == [2]
    assert found[0].value == pytest.approx(2 / 3)


def test_absent_roles_and_missing_features_yield_no_landmarks():
    rows = _rows([1.0, 2.0, 3.0])
    found = detect_landmarks(rows, [
        LandmarkRequest("zero_crossing", ("group1",)),
        LandmarkRequest("argmax", ("group2",)),
        LandmarkRequest("curve_crossing", ("group1", "group2")),
    ])
    assert found == []


def test_rows_with_partial_role_coverage():
    rows = _rows([None, 5.0, 2.0], role="group2")
    found = detect_landmarks(rows, [LandmarkRequest("argmax", ("group2",))])
    assert found == [Landmark("argmax", ("group2",), 1, 5.0)]


def test_request_validation():
    with pytest.raises(ValueError):
        LandmarkRequest("peak", ("group1",))
    with pytest.raises(ValueError):
        LandmarkRequest("argmax", ("group1", "egoist"))
    with pytest.raises(ValueError):
        LandmarkRequest("curve_crossing", ("group1",))
    with pytest.raises(ValueError):
        LandmarkRequest("argmax", ("chair",))


def test_parse_landmark_request():
    assert parse_landmark_request("group1:argmax") == LandmarkRequest(
        "argmax", ("group1",))
    assert parse_landmark_request(" egoist:argmin ") == LandmarkRequest(
        "argmin", ("egoist",))
    assert parse_landmark_request("random:zero") == LandmarkRequest(
        "zero_crossing", ("random",))
    req = parse_landmark_request("random:zero@0.25")
    assert req.level == 0.25
    assert parse_landmark_request("group1-egoist:crossing") == LandmarkRequest(
        "curve_crossing", ("group1", "egoist"))
    for bad in ("group1", "group1:", ":argmax", "group1:flat",
                "group1:zero@x", "group1-egoist-random:crossing"):
        with pytest.raises(ValueError):
            parse_landmark_request(bad)
