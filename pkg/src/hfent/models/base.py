"""Common container for the stacked matter + gauge models."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from hfent.coupling import conjugate_full, minimal_coupling
from hfent.hilbert import HilbertModel, PhaseDiagonal, projector_inv


@dataclass(eq=False)
class ModelBundle:
    """A stacked model ``H0 = H_p (x) 1 + 1 (x) H_{p+1}`` and its coupled form ``H``.

    ``H`` is assembled term by term from the dressed closed form, not by
    conjugating ``H0``; :meth:`coupling_deviation` compares the two.
    """

    kind: str
    model: HilbertModel
    params: object
    H_p: sp.csr_matrix
    H_p1: sp.csr_matrix
    H: sp.csr_matrix
    notes: tuple[str, ...] = ()
    _U: PhaseDiagonal | None = field(default=None, repr=False)

    @property
    def H0(self) -> sp.csr_matrix:
        return (self.model.embed_p(self.H_p) + self.model.embed_p1(self.H_p1)).tocsr()

    @property
    def coupling(self) -> PhaseDiagonal:
        if self._U is None:
            self._U = minimal_coupling(self.model)
        return self._U

    def coupling_deviation(self) -> float:
        """Frobenius bound on ``||(H - U H0 U^dagger) P_inv||``."""
        mask = projector_inv(self.model).support
        D = (self.H - conjugate_full(self.model, self.H0, self.coupling)).tocsc()[:, np.flatnonzero(mask)]
        return float(spla.norm(D)) if D.nnz else 0.0

    def __repr__(self) -> str:
        return f"ModelBundle({self.kind}, {self.model!r})"


def check_finite(params) -> None:
    for k, v in vars(params).items():
        if not np.isfinite(v):
            raise ValueError(f"coupling {k} must be finite, got {v}")
