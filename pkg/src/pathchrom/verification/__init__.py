"""Structural checkers, corpus sweeps and counterexample search."""
from .corpus import (
    CENSUS,
    CONJECTURES,
    Bound,
    CorpusError,
    chi_and_r,
    hunt_counterexamples,
    is_path_perfect,
    is_vertex_critical,
    load_corpus,
    load_corpus_upto,
    star_bound,
    verify_bound_corpus,
)
from .lemmas import (
    check_cut_structure,
    check_lemma_B_next_to_A,
    check_lemma_inducedA,
    check_lemma_k2_common,
    check_lemma_poset,
    check_lemma_W,
    check_longest_path_lemma,
)
from .patterns import SMALL_FORESTS, ForbiddenPattern, has_induced, is_free
