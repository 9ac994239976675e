from __future__ import annotations

import time

import numpy as np
import pytest

from oracles import brute_chi, brute_colourable, brute_ham_path, brute_kappa, random_graph, to_nx

import networkx as nx

from pathchrom.construction import build_G, build_H
from pathchrom.graph_core import (
    PathWitness,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    induced_subgraph,
    is_proper,
    path_graph,
    petersen_graph,
    star_graph,
)
from pathchrom.solvers import (
    Answer,
    SolveBudget,
    alpha,
    chromatic_colouring,
    chromatic_number,
    chvatal_erdos_hamiltonian,
    dsatur_greedy,
    hamiltonian_cycle,
    hamiltonian_path,
    is_traceable_subset,
    k_colourable,
    k_colouring_raw,
    kappa,
    longest_path,
    max_clique,
    omega,
    random_maximal_path,
)


def test_k_colourable_small():
    assert k_colourable(complete_graph(4), 3).answer is Answer.NO
    v = k_colourable(cycle_graph(5), 3)
    assert v.yes and is_proper(cycle_graph(5), v.witness)


def test_pins_conflicting_with_an_edge_give_no():
    assert k_colourable(complete_graph(2), 3, {0: 1, 1: 1}).no


def test_pinned_x_pair_is_uncolourable():
    h = build_H(6, 1)
    pins = {h.find("x", 1): 0, h.find("x", 2): 0}
    assert k_colourable(h.g, 6, pins).no


def test_raw_colouring_keeps_pins():
    g = path_graph(3)
    v = k_colouring_raw(g, 3, {0: 2, 2: 2})
    assert v.yes and v.witness[0] == 2 and v.witness[2] == 2


def test_bad_pins_rejected():
    with pytest.raises(ValueError):
        k_colourable(path_graph(2), 2, {0: 5})


def test_chromatic_numbers():
    assert chromatic_number(complete_graph(6)) == 6
    assert chromatic_number(petersen_graph()) == 3
    assert chromatic_number(build_G(6, 1).g) == 7


def test_budget_gives_unknown_not_no():
    g = build_G(6, 1).g
    v = k_colourable(g, 6, budget=SolveBudget(node_limit=10))
    assert v.unknown
    assert chromatic_number(g, SolveBudget(node_limit=10)) is None


def test_dsatur_is_proper():
    g = petersen_graph()
    assert is_proper(g, dsatur_greedy(g))


def test_alpha_omega():
    assert alpha(cycle_graph(5)) == 2
    assert omega(complete_bipartite(3, 3)) == 2
    lc = build_G(6, 0)
    h, _ = induced_subgraph(lc.g, lc.a_mask)
    assert alpha(h) == 1


def test_kappa_examples():
    assert kappa(cycle_graph(5)) == 2
    assert kappa(petersen_graph()) == 3 == brute_kappa(petersen_graph())
    assert kappa(complete_graph(6)) == 5


def test_chvatal_erdos():
    c5 = chvatal_erdos_hamiltonian(cycle_graph(5))
    assert c5.condition_holds and c5.cycle is not None and c5.cycle.is_valid(cycle_graph(5))
    pet = chvatal_erdos_hamiltonian(petersen_graph())
    assert (pet.kappa, pet.alpha) == (3, 4)
    assert not pet.condition_holds and pet.answer is Answer.NO
    k33 = chvatal_erdos_hamiltonian(complete_bipartite(3, 3))
    assert k33.condition_holds and k33.answer is Answer.YES


def test_hamiltonian_path_examples():
    assert hamiltonian_path(path_graph(4)).yes
    assert hamiltonian_path(star_graph(3)).no
    assert hamiltonian_path(star_graph(4)).no
    assert hamiltonian_cycle(petersen_graph()).no


def test_random_maximal_path_examples():
    p = random_maximal_path(complete_graph(3), 1)
    assert len(p) == 3
    p = random_maximal_path(star_graph(3), 2)
    assert len(p) == 3 and p.verts[1] == 0
    g = build_G(6, 1).g
    for seed in range(20):
        p = random_maximal_path(g, seed)
        assert p.is_valid(g) and p.is_maximal(g)


def test_traceable_subset_examples():
    k5 = complete_graph(5)
    assert is_traceable_subset(k5, {0, 2, 4})
    assert not is_traceable_subset(path_graph(4), {0, 3})
    assert not is_traceable_subset(star_graph(3), {0, 1, 2, 3})


def test_longest_path_matches_networkx_on_small_graphs():
    rng = np.random.default_rng(3)
    for _ in range(60):
        g = random_graph(rng, int(rng.integers(1, 9)))
        p = longest_path(g)
        assert p.is_valid(g)
        h = to_nx(g)
        best = max(
            (len(q) for s in h for t in h if s != t for q in nx.all_simple_paths(h, s, t)),
            default=1,
        )
        assert len(p) == best


def test_max_clique_against_networkx():
    rng = np.random.default_rng(4)
    for _ in range(100):
        g = random_graph(rng, int(rng.integers(1, 12)))
        c = max_clique(g)
        assert len(c) == max(len(q) for q in nx.find_cliques(to_nx(g)))


def test_brute_force_oracles_agree_with_solvers_on_seeded_sample():
    rng = np.random.default_rng(5)
    for _ in range(80):
        g = random_graph(rng, int(rng.integers(1, 8)))
        chi = chromatic_number(g)
        assert chi == brute_chi(g)
        col = chromatic_colouring(g)
        assert is_proper(g, col) and col.num_colours == chi
        assert kappa(g) == brute_kappa(g)
        assert hamiltonian_path(g).yes == brute_ham_path(g)
        assert omega(g) <= chi
        assert k_colourable(g, chi - 1).no if chi else True
        assert brute_colourable(g, chi)
