"""Run configuration and default tolerances."""

from __future__ import annotations

import os
from dataclasses import dataclass, field

from hfent.hilbert import DEFAULT_DIM_CAP

ENTROPY_TOL = 1e-8
OPERATOR_TOL = 1e-12
EIGEN_TOL = 1e-10
DEFAULT_SEED = 7
DIM_CAP_ENV = "HFENT_DIM_CAP"


def dim_cap_from_env(default: int = DEFAULT_DIM_CAP) -> int:
    raw = os.environ.get(DIM_CAP_ENV)
    if raw is None or raw == "":
        return default
    cap = int(raw)
    if cap <= 0:
        raise ValueError(f"{DIM_CAP_ENV} must be positive, got {raw}")
    return cap


@dataclass
class RunConfig:
    """Everything a CLI command needs; recorded in its report."""

    command: str
    complex: str | None = None
    group: str = "Z2"
    p: int | None = None
    cut: str | None = None
    model: str | None = None
    params: dict = field(default_factory=dict)
    entropy_tol: float = ENTROPY_TOL
    operator_tol: float = OPERATOR_TOL
    eigen_tol: float = EIGEN_TOL
    dim_cap: int = field(default_factory=dim_cap_from_env)
    seed: int = DEFAULT_SEED
    out: str | None = None
    csv: str | None = None

    def __post_init__(self):
        for name in ("entropy_tol", "operator_tol", "eigen_tol"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.dim_cap <= 0:
            raise ValueError("dim_cap must be positive")

    @property
    def tolerances(self) -> dict:
        return {"entropy": self.entropy_tol, "operator": self.operator_tol, "eigen": self.eigen_tol}
