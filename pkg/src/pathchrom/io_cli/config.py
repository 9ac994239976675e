"""Run configuration shared by the CLI subcommands."""
from __future__ import annotations

from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional

from ..path_chromatic import PATHS_CAP, SUBSETS_CAP
from ..solvers.budget import SolveBudget

SEED_SCHEME = "numpy SeedSequence(master, spawn_key=(sample_index,))"


@dataclass
class RunConfig:
    seed: int = 0
    samples: int = 100
    budget_s: Optional[float] = None
    budget_nodes: Optional[int] = None
    subsets_cap: int = SUBSETS_CAP
    paths_cap: int = PATHS_CAP
    corpus: list[Path] = field(default_factory=list)
    out_dir: Path = Path(".")

    def __post_init__(self) -> None:
        self.validate()

    def validate(self) -> None:
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 unsigned bits")
        if self.samples < 1:
            raise ValueError("samples must be positive")
        if self.budget_s is not None and self.budget_s <= 0:
            raise ValueError("time budget must be positive")
        if self.budget_nodes is not None and self.budget_nodes <= 0:
            raise ValueError("node budget must be positive")
        if not 1 <= self.subsets_cap <= SUBSETS_CAP:
            raise ValueError(f"subsets cap must be in 1..{SUBSETS_CAP}")
        if not 1 <= self.paths_cap <= PATHS_CAP:
            raise ValueError(f"paths cap must be in 1..{PATHS_CAP}")

    def budget(self) -> Optional[SolveBudget]:
        if self.budget_s is None and self.budget_nodes is None:
            return None
        return SolveBudget(self.budget_s, self.budget_nodes)

    def header(self) -> dict:
        d = asdict(self)
        d["corpus"] = [str(p) for p in self.corpus]
        d["out_dir"] = str(self.out_dir)
        d["seed_scheme"] = SEED_SCHEME
        return d
