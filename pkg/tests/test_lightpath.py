import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats

from quakenet.lightpath import (
    EON_SLOTS,
    WDM_CHANNELS,
    Demand,
    Protection,
    Regime,
    establish,
    first_fit,
    generate_demands,
)
from quakenet.topology import Topology

from builders import SPEC, node_at, random_connected, ring, topo


def pair():
    return topo({"A": (100.0, 100.0), "B": (200.0, 100.0)}, [("A", "B")])


def line3():
    return topo({"A": (100.0, 100.0), "B": (200.0, 100.0), "C": (300.0, 100.0)}, [("A", "B"), ("B", "C")])


def test_capacities():
    assert (WDM_CHANNELS, EON_SLOTS) == (80, 320)
    assert Regime.WDM.default_capacity * Regime.WDM.unit_ghz == Regime.EON.default_capacity * Regime.EON.unit_ghz == 4000


def test_demand_counts_and_order():
    assert len(generate_demands(line3(), 1)) == 3
    many = Topology(tuple(node_at(f"n{i:02d}", i, i) for i in range(25)), (), SPEC)
    demands = generate_demands(many, 1)
    assert len(demands) == 300
    assert [(d.src, d.dst) for d in demands] == list(itertools.combinations(sorted(many.node_ids()), 2))
    assert all(2 <= d.slots_required <= 10 and d.wavelengths_required == 1 for d in demands)
    assert generate_demands(many, 1) == demands
    assert generate_demands(many, 2) != demands


def test_demand_rejects_self_pair():
    with pytest.raises(ValueError):
        Demand("A", "A", 3)


def test_slot_sizes_are_uniform():
    # 448 nodes give C(448, 2) = 100128 draws
    big = Topology(tuple(node_at(f"n{i:03d}", 0, 0) for i in range(448)), (), SPEC)
    slots = np.array([d.slots_required for d in generate_demands(big, 1)])
    assert len(slots) >= 10**5
    counts = np.bincount(slots, minlength=11)[2:]
    assert counts.sum() == len(slots)
    assert stats.chisquare(counts).pvalue > 0.01


def test_first_fit_examples():
    occ = [i in {0, 1, 4} for i in range(10)]
    assert first_fit(occ, 2) == 2
    assert first_fit(occ, 3) == 5
    assert first_fit([True] * 10, 1) is None
    assert first_fit([False] * 4, 5) is None
    assert first_fit([], 1) is None
    with pytest.raises(ValueError):
        first_fit(occ, 0)


@given(st.lists(st.booleans(), max_size=64), st.integers(1, 12))
def test_first_fit_matches_scan(occ, n):
    expected = next((s for s in range(len(occ) - n + 1) if not any(occ[s : s + n])), None)
    assert first_fit(occ, n) == expected


def test_single_eon_demand_on_empty_link():
    lp = establish(pair(), [Demand("A", "B", 4)], Regime.EON)
    (a,) = lp.assignments
    assert a.established and a.working_path == ("A", "B") and a.working_channels == range(0, 4)
    assert lp.capacity == 320


def test_dpp_without_disjoint_backup():
    t, d = pair(), [Demand("A", "B", 4)]
    blocked = establish(t, d, Regime.EON, Protection.DPP, unprotectable="block")
    assert not blocked.assignments[0].established
    assert not blocked.spectrum["L00"].any()
    kept = establish(t, d, Regime.EON, Protection.DPP)
    assert kept.assignments[0].established and kept.assignments[0].backup_path is None


def test_dpp_on_a_ring_reserves_the_other_way_round():
    t = ring(4)
    lp = establish(t, [Demand("N0", "N1", 3)], Regime.EON, Protection.DPP)
    (a,) = lp.assignments
    assert a.working_path == ("N0", "N1")
    assert a.backup_path == ("N0", "N3", "N2", "N1")
    assert a.backup_channels == range(0, 3)


def test_blocking_when_spectrum_runs_out():
    lp = establish(pair(), [Demand("A", "B", 3), Demand("A", "B", 3)], Regime.EON, capacity=5)
    assert [a.established for a in lp.assignments] == [True, False]


def test_capacity_must_be_positive():
    with pytest.raises(ValueError):
        establish(pair(), [Demand("A", "B", 2)], Regime.WDM, capacity=0)


def test_first_fit_is_not_monotone_in_eon_capacity():
    # a wide demand that fits only in the larger spectrum crowds out two narrow ones
    demands = [Demand("A", "C", 6), Demand("A", "B", 2), Demand("B", "C", 2)]
    small = establish(line3(), demands, Regime.EON, capacity=5)
    large = establish(line3(), demands, Regime.EON, capacity=6)
    assert (len(small.established), len(large.established)) == (2, 1)


# -- exhaustive replay on a ring --------------------------------------------


def oracle_wdm(t, demands, capacity, k):
    """Replay by enumerating every simple path and every wavelength."""

    def simple_paths(src, dst):
        out = []

        def walk(p):
            if p[-1] == dst:
                out.append(tuple(p))
                return
            for v, _ in t.neighbours(p[-1]):
                if v not in p:
                    walk(p + [v])

        walk([src])
        return sorted(out, key=lambda p: (math.fsum(t.link_between(u, v).length_km for u, v in zip(p, p[1:])), p))

    used = set()  # (link id, wavelength)
    result = []
    for d in demands:
        choice = None
        for p in simple_paths(d.src, d.dst)[:k]:
            links = [t.link_between(u, v).id for u, v in zip(p, p[1:])]
            free = [w for w in range(capacity) if all((lid, w) not in used for lid in links)]
            if free:
                choice = (p, free[0])
                used.update((lid, free[0]) for lid in links)
                break
        result.append(choice)
    return result


@pytest.mark.parametrize("seed", range(5))
@pytest.mark.parametrize("k", [1, 2, 3])
def test_ring_wdm_matches_exhaustive_replay(seed, k):
    t = ring(5)
    demands = generate_demands(t, seed)
    lp = establish(t, demands, Regime.WDM, capacity=2, k=k)
    got = [(a.working_path, a.working_start) if a.established else None for a in lp.assignments]
    assert got == oracle_wdm(t, demands, 2, k)
    assert any(g is None for g in got) or k > 1


# -- invariants ---------------------------------------------------------------


def check_invariants(t, lp):
    occupied = {link.id: np.zeros(lp.capacity, dtype=int) for link in t.links}
    for a in lp.assignments:
        if not a.established:
            assert a.working_path is None and a.backup_path is None
            continue
        for path, links, chans in (
            (a.working_path, a.working_links, a.working_channels),
            (a.backup_path, a.backup_links, a.backup_channels),
        ):
            if path is None:
                assert not links and chans is None
                continue
            assert path[0] == a.demand.src and path[-1] == a.demand.dst
            assert list(links) == [link.id for link in t.path_links(path)]
            assert 0 <= chans.start and chans.stop <= lp.capacity
            assert len(chans) == a.demand.width(lp.regime)
            for lid in links:
                occupied[lid][chans.start : chans.stop] += 1
        if a.backup_path is not None:
            assert set(a.working_links).isdisjoint(a.backup_links)
    for lid, counts in occupied.items():
        assert counts.max(initial=0) <= 1, f"clash on {lid}"
        assert np.array_equal(counts.astype(bool), lp.spectrum[lid])


scenarios = st.tuples(
    st.integers(0, 2**32 - 1),
    st.integers(4, 10),
    st.sampled_from(list(Regime)),
    st.sampled_from(list(Protection)),
    st.sampled_from(["keep", "block"]),
    st.integers(1, 3),
)


@settings(max_examples=60, deadline=None)
@given(scenarios, st.integers(2, 24))
def test_establish_invariants(scn, capacity):
    seed, n, regime, protection, unprotectable, k = scn
    rng = np.random.default_rng(seed)
    t = random_connected(rng, n)
    lp = establish(t, generate_demands(t, seed), regime, protection, capacity, k, unprotectable)
    check_invariants(t, lp)
    again = establish(t, generate_demands(t, seed), regime, protection, capacity, k, unprotectable)
    assert again == lp
    assert again.to_dict() == lp.to_dict()


@settings(max_examples=60, deadline=None)
@given(scenarios, st.integers(2, 24))
def test_protection_never_loses_working_paths(scn, capacity):
    seed, n, regime, _, _, k = scn
    t = random_connected(np.random.default_rng(seed), n)
    demands = generate_demands(t, seed)
    plain = establish(t, demands, regime, Protection.NONE, capacity, k)
    dpp = establish(t, demands, regime, Protection.DPP, capacity, k)
    assert [(a.established, a.working_path, a.working_start) for a in plain.assignments] == [
        (a.established, a.working_path, a.working_start) for a in dpp.assignments
    ]


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(4, 10), st.integers(1, 12))
def test_wdm_fixed_routing_is_monotone_in_capacity(seed, n, w):
    t = random_connected(np.random.default_rng(seed), n)
    demands = generate_demands(t, seed)
    small = establish(t, demands, Regime.WDM, capacity=w, k=1)
    large = establish(t, demands, Regime.WDM, capacity=w + 1, k=1)
    assert {id(a.demand) for a in small.established} <= {id(a.demand) for a in large.established}
    assert len(large.established) >= len(small.established)


def test_lightpath_json_shape():
    lp = establish(ring(4), [Demand("N0", "N2", 2)], Regime.EON, Protection.DPP)
    doc = lp.to_dict()
    assert doc["established"] == 1 and doc["blocked"] == 0
    (a,) = doc["assignments"]
    assert a["status"] == "established"
    assert a["working_channels"] == [0, 2] and a["backup_channels"] == [0, 2]
