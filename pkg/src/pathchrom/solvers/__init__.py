"""Exact solvers: colouring, cliques, connectivity and Hamiltonian paths."""
from .budget import Answer, BudgetClock, BudgetExhausted, SolveBudget, Verdict, UNLIMITED
from .cliques import alpha, max_clique, max_independent_set, omega
from .colouring import chromatic_colouring, chromatic_number, dsatur_greedy, k_colourable, k_colouring_raw
from .connectivity import kappa, local_connectivity
from .paths import (
    ChvatalErdosResult,
    chvatal_erdos_hamiltonian,
    hamiltonian_cycle,
    hamiltonian_path,
    is_traceable,
    is_traceable_subset,
    longest_path,
    path_table,
    random_maximal_path,
)
