from __future__ import annotations

import numpy as np
import pytest

from oracles import brute_r, random_graph

from pathchrom.construction import build_G
from pathchrom.graph_core import Graph, complete_graph, cycle_graph, path_graph, star_graph
from pathchrom.path_chromatic import (
    CapExceeded,
    Mode,
    extend_to_maximal,
    path_vertex_sets,
    r_exact_paths,
    r_exact_subsets,
    r_sampled_lower,
    sample_seed,
)
from pathchrom.solvers import chromatic_number, hamiltonian_path, omega
from pathchrom.verification.suites import steered_clique_path


def _k6_minus_matching() -> Graph:
    return Graph.from_edges(6, [(u, v) for u in range(6) for v in range(u + 1, 6) if v != u + 3])


def test_exact_subsets_examples():
    assert r_exact_subsets(cycle_graph(5)).value == 3
    assert r_exact_subsets(star_graph(3)).value == 2
    assert r_exact_subsets(_k6_minus_matching()).value == 3


def test_exact_paths_examples():
    assert r_exact_paths(path_graph(5)).value == 2
    assert r_exact_paths(cycle_graph(5)).value == 3


def test_result_witness_is_consistent():
    res = r_exact_subsets(_k6_minus_matching())
    g = _k6_minus_matching()
    assert res.mode is Mode.EXACT
    assert res.witness.is_valid(g)
    assert res.colouring is not None and res.colouring.num_colours == res.value


def test_exact_modes_match_networkx_path_enumeration():
    rng = np.random.default_rng(11)
    for _ in range(40):
        g = random_graph(rng, int(rng.integers(1, 7)))
        want = brute_r(g)
        assert r_exact_subsets(g).value == want
        assert r_exact_paths(g).value == want


def test_traceable_graph_has_r_equal_chi():
    rng = np.random.default_rng(12)
    seen = 0
    while seen < 20:
        g = random_graph(rng, 7, 0.6)
        if hamiltonian_path(g).yes:
            seen += 1
            assert r_exact_subsets(g).value == chromatic_number(g)


def test_omega_r_chi_chain():
    rng = np.random.default_rng(13)
    for _ in range(50):
        g = random_graph(rng, int(rng.integers(1, 10)))
        r = r_exact_subsets(g).value
        assert omega(g) <= r <= chromatic_number(g)


def test_path_vertex_sets_are_traceable():
    g = cycle_graph(4)
    sets = path_vertex_sets(g)
    assert (1 << 4) - 1 in sets
    assert 0b0101 not in sets


def test_caps():
    with pytest.raises(CapExceeded):
        r_exact_subsets(complete_graph(40))


def test_sampled_base_graph():
    res = r_sampled_lower(build_G(6, 0).g, 3, seed=1)
    assert res.value == 6 and res.mode is Mode.LOWER_BOUND


def test_sampled_with_steered_path():
    lc = build_G(6, 1)
    res = r_sampled_lower(lc.g, 1, seed=0, extra_paths=[steered_clique_path(lc).verts])
    assert res.value >= 6


def test_sampled_is_monotone_in_sample_count():
    g = build_G(6, 1).g
    values = [r_sampled_lower(g, s, seed=9).value for s in (1, 5, 25)]
    assert values == sorted(values)


@pytest.mark.slow
def test_sampled_r_of_G61_is_six():
    res = r_sampled_lower(build_G(6, 1).g, 10_000, seed=0)
    assert res.value == 6
    assert res.stats["unknown"] == 0
    assert set(res.stats["chi_histogram"]) <= set(range(1, 7))


def test_sample_seeds_are_reproducible():
    a = sample_seed(7, 3).integers(0, 2**32, 4)
    b = sample_seed(7, 3).integers(0, 2**32, 4)
    c = sample_seed(7, 4).integers(0, 2**32, 4)
    assert (a == b).all() and not (a == c).all()


def test_extend_to_maximal():
    g = path_graph(6)
    p = extend_to_maximal(g, [2, 3], seed=0)
    assert p.is_maximal(g) and len(p) == 6
