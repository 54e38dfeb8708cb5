import math

import numpy as np
import pytest

import pytilt


def test_fixtures_and_phantom():
    assert "annulus" in pytilt.fixture_names()
    img = pytilt.phantom("annulus", 64)
    assert img.shape == (64, 64)
    assert 0.0 <= img.min() and img.max() <= 1.0


def test_unknown_fixture_raises():
    with pytest.raises(ValueError, match="config"):
        pytilt.phantom("teapot", 64)


def test_cw_distance_straight_and_bound():
    assert pytilt.cw_distance(1.0, 0.0, 0.0) == pytest.approx(1.0)
    assert pytilt.cw_distance(1.0, 1.0, 0.3) >= math.hypot(1.0, 1.0)
    assert math.isinf(pytilt.cw_distance(0.0, 1.0, 0.0))


def test_masks_grow_with_s():
    small, big = pytilt.mask("+R", 2.0), pytilt.mask("+R", 4.0)
    assert small.shape == (64, 64)
    assert not (small & ~big).any()
    assert big.sum() > small.sum()


def test_project_and_reconstruct_shapes():
    img = pytilt.phantom("blob", 32)
    angles = list(np.linspace(-30, 30, 7))
    sino = pytilt.project(img, angles, 0.25)
    assert sino.shape[0] == 7
    rec = pytilt.reconstruct(sino, angles, 32, 0.25, iterations=20)
    assert rec.shape == (32, 32)
    with pytest.raises(ValueError):
        pytilt.reconstruct(sino[:3], angles, 32, 0.25)


def test_tilt_on_exact_annulus():
    rep = pytilt.tilt(pytilt.phantom("annulus", 128), level=6)
    assert rep["complete"]
    assert len(rep["components"]) == 2
    for c in rep["components"]:
        assert c["curve"].shape[1] == 2
