"""Grouped checks on one construction, shared by the CLI and the tests."""
from __future__ import annotations

from typing import Optional

import numpy as np

from ..canonical_colouring import (
    allowed_pins,
    audit_path_colouring,
    canonical_chi_colouring_raw,
    colour_path_subgraph,
    mask_to_bool,
)
from ..construction import LabeledConstruction, build_aux, build_G, check_role_consistency
from ..graph_core import PathWitness, induced_subgraph
from ..path_chromatic import sample_seed
from ..report import Report, Timer
from ..solvers.budget import SolveBudget
from ..solvers.colouring import chromatic_number
from ..solvers.paths import random_maximal_path
from .lemmas import STRUCTURE_CHECKS, check_cut_structure


def structure_suite(lc: LabeledConstruction) -> list[Report]:
    return [check_role_consistency(lc), check_cut_structure(lc)] + [f(lc) for f in STRUCTURE_CHECKS]


def check_canonical_colouring(lc: LabeledConstruction) -> Report:
    """The global colouring is proper, uses exactly r+k colours, and puts
    class 1 inside A and class 2 inside B."""
    rep = Report("canonical_colouring")
    with Timer(rep):
        phi = canonical_chi_colouring_raw(lc)
        g = lc.g
        used = np.unique(phi)
        rep.stats["colours"] = int(used.size)
        if used.size != lc.r + lc.k or used.min() != 1 or used.max() != lc.r + lc.k:
            rep.fail("wrong number of colours", used=used.tolist(), expected=lc.r + lc.k)
        for u, v in g.edges():
            if phi[u] == phi[v]:
                rep.fail("monochromatic edge", edge=[u, v], colour=int(phi[u]))
                break
        is_a = mask_to_bool(lc.a_mask, g.n)
        if not is_a[phi == 1].all():
            rep.fail("colour 1 leaves A", vertex=int(np.nonzero((phi == 1) & ~is_a)[0][0]))
        if is_a[phi == 2].any():
            rep.fail("colour 2 leaves B", vertex=int(np.nonzero((phi == 2) & is_a)[0][0]))
    return rep


def steered_clique_path(lc: LabeledConstruction, which: int = 0) -> PathWitness:
    """A path running through one embedded copy of K_r."""
    return PathWitness(lc.base_clique(which))


def check_clique_path(lc: LabeledConstruction) -> Report:
    """The steered clique path spans a subgraph of chromatic number r, so
    r(G) >= r."""
    rep = Report("clique_path_lower_bound")
    with Timer(rep):
        p = steered_clique_path(lc)
        if not p.is_valid(lc.g):
            rep.fail("steered clique path is not a path", path=list(p.verts))
            return rep
        h, _ = induced_subgraph(lc.g, p.mask)
        chi = chromatic_number(h)
        rep.stats.update(path=list(p.verts), chi=chi)
        if chi != lc.r:
            rep.fail("clique path does not need r colours", chi=chi)
    return rep


def path_colouring_suite(
    r: int,
    k: int,
    samples: int,
    seed: int = 0,
    oracle_samples: int = 0,
    budget: Optional[SolveBudget] = None,
    max_witnesses: int = 20,
) -> Report:
    """Colour ``samples`` seeded maximal paths of the auxiliary graph with
    pins drawn from the allowed range, audit every result, and compare
    feasibility with the oracle tier on the first ``oracle_samples``."""
    aux = build_aux(r, k)
    rep = Report(f"path_colouring[r={r},k={k}]")
    unknown: list[int] = []
    tiers: dict[str, int] = {}
    oracle = {"agree": 0, "disagree": 0, "unknown": 0}
    max_len = 0
    with Timer(rep):
        pins = allowed_pins(r, k)
        for i in range(samples):
            rng = sample_seed(seed, i)
            p = random_maximal_path(aux.g, rng)
            a, b = (int(x) for x in rng.choice(pins, 2, replace=False))
            max_len = max(max_len, len(p))
            res = colour_path_subgraph(aux, p, a, b, budget)
            tiers[res.tier] = tiers.get(res.tier, 0) + 1
            if res.defects and len(rep.witnesses) < max_witnesses:
                rep.fail("structured tier defect", sample=i, defects=res.defects, path=list(p.verts))
            if res.unknown:
                unknown.append(i)
                continue
            if not res.colours:
                rep.fail("no colouring found", sample=i, path=list(p.verts), a=a, b=b)
                continue
            audit = audit_path_colouring(aux, p, a, b, res.colours)
            if not audit.passed and len(rep.witnesses) < max_witnesses:
                rep.fail("audit failed", sample=i, a=a, b=b, path=list(p.verts), audit=audit.witnesses[:3])
            if i < oracle_samples:
                o = colour_path_subgraph(aux, p, a, b, budget, tier="oracle")
                if o.unknown:
                    oracle["unknown"] += 1
                elif bool(o.colours) == bool(res.colours) and (not o.colours or audit_path_colouring(aux, p, a, b, o.colours).passed):
                    oracle["agree"] += 1
                else:
                    oracle["disagree"] += 1
                    rep.fail("tiers disagree on feasibility", sample=i, a=a, b=b, path=list(p.verts))
        rep.stats.update(samples=samples, seed=seed, tiers=tiers, unknown=len(unknown), unknown_samples=unknown, max_path_len=max_len)
        if oracle_samples:
            rep.stats["oracle"] = oracle
        if unknown:
            rep.unknown("some samples ran out of budget", count=len(unknown))
    return rep


def colouring_suite(r: int, k: int) -> list[Report]:
    lc = build_G(r, k)
    return [check_canonical_colouring(lc), check_clique_path(lc)]
