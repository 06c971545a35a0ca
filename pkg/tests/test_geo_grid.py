import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from quakenet.geo_grid import (
    GridSpec,
    InvalidCoordinateError,
    OutOfGridError,
    PlanePoint,
    SeismicGrid,
    SeismicZone,
    cell_center,
    cell_of,
    project,
    unproject,
)

from builders import grid_of

INDIA = GridSpec(origin_lat=6.5, origin_lon=68.0)


def test_defaults_span_3240_km():
    assert (INDIA.rows, INDIA.cols, INDIA.cell_km) == (60, 60, 54.0)
    assert INDIA.width_km == INDIA.height_km == 3240.0


@pytest.mark.parametrize("kw", [{"rows": 0}, {"cols": 0}, {"cell_km": 0.0}, {"cell_km": -1.0}])
def test_gridspec_rejects_degenerate(kw):
    with pytest.raises(ValueError):
        GridSpec(0.0, 0.0, **kw)


def test_zone_levels():
    assert [z.name for z in sorted(SeismicZone)] == ["II", "III", "IV", "V"]
    assert SeismicZone.II < SeismicZone.III < SeismicZone.IV < SeismicZone.V
    assert SeismicZone.V.mm_intensity == "IX or above"
    assert SeismicZone.II.mm_intensity == "VI or less"


@given(st.sampled_from(list(SeismicZone)), st.sampled_from(list(SeismicZone)), st.sampled_from(list(SeismicZone)))
def test_zone_order_matches_integer_rank(a, b, c):
    assert (a < b) == (int(a) < int(b))
    if a <= b and b <= c:
        assert a <= c


def test_project_origin():
    assert project(6.5, 68.0, INDIA) == PlanePoint(0.0, 0.0)


def test_one_degree_north_matches_high_precision_arc():
    mpmath.mp.dps = 40
    expected = mpmath.pi * 6371 / 180
    p = project(7.5, 68.0, INDIA)
    assert p.x == 0.0
    assert abs(p.y - float(expected)) < 1e-9
    assert str(expected).startswith("111.194")


def test_one_degree_east_shrinks_by_cos_origin_lat():
    mpmath.mp.dps = 40
    expected = mpmath.pi * 6371 / 180 * mpmath.cos(mpmath.radians(mpmath.mpf("6.5")))
    assert abs(project(6.5, 69.0, INDIA).x - float(expected)) < 1e-9


@pytest.mark.parametrize("lat,lon", [(math.nan, 70.0), (10.0, math.inf), (91.0, 70.0), (-90.5, 0.0)])
def test_project_rejects_bad_coordinates(lat, lon):
    with pytest.raises(InvalidCoordinateError):
        project(lat, lon, INDIA)


def test_plane_point_must_be_finite():
    with pytest.raises(InvalidCoordinateError):
        PlanePoint(math.nan, 0.0)


@given(st.floats(0.0, INDIA.width_km), st.floats(0.0, INDIA.height_km))
def test_round_trip(x, y):
    lat, lon = unproject(PlanePoint(x, y), INDIA)
    back = project(lat, lon, INDIA)
    assert abs(back.x - x) < 1e-9 and abs(back.y - y) < 1e-9


@given(st.floats(6.5, 35.0), st.floats(68.0, 97.0))
def test_round_trip_degrees(lat, lon):
    lat2, lon2 = unproject(project(lat, lon, INDIA), INDIA)
    assert abs(lat2 - lat) < 1e-9 and abs(lon2 - lon) < 1e-9


def test_cell_of_examples():
    k = INDIA.cell_km
    assert cell_of(PlanePoint(0.0, 0.0), INDIA) == (0, 0)
    assert cell_of(PlanePoint(k * 2.5, k * 3.5), INDIA) == (3, 2)
    with pytest.raises(OutOfGridError):
        cell_of(PlanePoint(-1.0, 10.0), INDIA)
    with pytest.raises(OutOfGridError):
        cell_of(PlanePoint(10.0, INDIA.height_km + 1e-6), INDIA)


def test_cell_of_clamps_only_far_boundary():
    assert cell_of(PlanePoint(INDIA.width_km, INDIA.height_km), INDIA) == (59, 59)
    # an interior cell boundary belongs to the next cell up
    assert cell_of(PlanePoint(54.0, 108.0), INDIA) == (2, 1)


@given(st.integers(0, 59), st.integers(0, 59))
def test_cell_center_maps_back(r, c):
    assert cell_of(cell_center(r, c, INDIA), INDIA) == (r, c)


def test_zone_at_lookup_and_bounds():
    g = grid_of([[5, 2], [0, 3]])
    assert g.zone_at(0, 0) is SeismicZone.V
    assert g.zone_at(0, 1) is SeismicZone.II
    assert g.zone_at(1, 0) is None
    with pytest.raises(OutOfGridError):
        g.zone_at(2, 0)
    with pytest.raises(OutOfGridError):
        g.zone_at(0, -1)


def test_grid_validates_shape_and_values():
    spec = GridSpec(0.0, 0.0, 2, 2, 10.0)
    with pytest.raises(ValueError):
        SeismicGrid(spec, [[2, 2, 2]])
    with pytest.raises(ValueError):
        SeismicGrid(spec, [[2, 1], [2, 2]])


def test_grid_is_read_only():
    g = grid_of([[2, 3], [4, 5]])
    with pytest.raises(ValueError):
        g.cells[0, 0] = 5


def test_periphery():
    cells = np.full((5, 5), 3)
    cells[2, 4] = 0
    g = grid_of(cells)
    assert g.is_periphery(0, 2)  # touches the grid edge
    assert g.is_periphery(2, 3)  # next to no-data
    assert g.is_periphery(1, 3)  # diagonal to no-data
    assert not g.is_periphery(2, 2)
    assert not g.is_periphery(1, 1)
