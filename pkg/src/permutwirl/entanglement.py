"""Positive-partial-transpose tests and separability verdicts."""

from dataclasses import dataclass
from enum import Enum

from . import linalg, states
from .errors import DimMismatchError
from .states import DensityMatrix

PPT_TOL = 1e-10


class Verdict(Enum):
    SEPARABLE = "separable"
    ENTANGLED = "entangled"
    UNDECIDED = "undecided"


@dataclass(frozen=True)
class PptReport:
    """Minimum partial-transpose eigenvalue and the resulting verdict.

    ``boundary`` marks states whose minimum eigenvalue lies within
    ``tol`` of zero: twirled outputs sit exactly on the boundary in
    degenerate cases, and they count as PPT.
    """

    min_eig_pt: float
    is_ppt: bool
    side: str
    boundary: bool
    tol: float


def _require_bipartite(rho: DensityMatrix) -> tuple[int, int]:
    if len(rho.dims) != 2:
        raise DimMismatchError(f"expected a bipartite state, got dims {rho.dims}")
    return rho.dims[0], rho.dims[1]


def is_ppt(rho: DensityMatrix, tol: float = PPT_TOL, side: str = "A") -> PptReport:
    """Partial-transpose the named side, eigendecompose, report.

    The verdict is independent of the side: the two partial transposes
    are full transposes of each other, hence isospectral.
    """
    dims = _require_bipartite(rho)
    pt = linalg.partial_transpose(rho.mat, dims, side)
    w, _ = linalg.hermitian_eigen(pt)
    min_eig = float(w[0])
    return PptReport(
        min_eig_pt=min_eig,
        is_ppt=min_eig >= -tol,
        side=str(side).upper(),
        boundary=abs(min_eig) <= tol,
        tol=tol,
    )


def separable_verdict(rho: DensityMatrix, tol: float = PPT_TOL) -> Verdict:
    """Peres-Horodecki verdict.

    PPT is necessary for separability and sufficient only in 2x2 and 2x3
    systems, so for d_A * d_B <= 6 PPT decides separability; in larger
    systems a PPT state stays undecided.
    """
    d_a, d_b = _require_bipartite(rho)
    report = is_ppt(rho, tol=tol)
    if not report.is_ppt:
        return Verdict.ENTANGLED
    if d_a * d_b <= 6:
        return Verdict.SEPARABLE
    return Verdict.UNDECIDED


def bell_octahedron_member(t1, t2, t3, tol: float = PPT_TOL) -> bool:
    """Separability test |t1| + |t2| + |t3| <= 1 for correlation-triple states."""
    states.validate_bell_params(t1, t2, t3)
    return abs(float(t1)) + abs(float(t2)) + abs(float(t3)) <= 1.0 + tol
