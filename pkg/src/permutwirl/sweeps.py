"""Parameter sweeps backing the CSV outputs."""

import numpy as np

from . import coherence, entanglement, linalg, states, twirl
from .errors import ParamOutOfRangeError

QUBIT_SWEEP_COLUMNS = ("r1", "l1_rho", "l1_star", "relent_rho", "relent_star")
BELL_SWEEP_COLUMNS = (
    "t1",
    "t2",
    "t3",
    "in_octahedron",
    "ppt_before",
    "ppt_after_one_sided",
    "t1_image",
)


def qubit_sweep_rows(r2: float, r3: float, steps: int) -> list[tuple[float, ...]]:
    """Coherence of a qubit and of its twirl along r1 at fixed (r2, r3).

    r1 runs over [0, sqrt(1 - r2^2 - r3^2)] in ``steps`` points, keeping
    the Bloch vector inside the ball.
    """
    r2, r3 = float(r2), float(r3)
    if r2 * r2 + r3 * r3 > 1.0:
        raise ParamOutOfRangeError(f"r2^2 + r3^2 = {r2 * r2 + r3 * r3:.12g} exceeds 1")
    if steps < 1:
        raise ParamOutOfRangeError(f"steps must be >= 1, got {steps}")
    r1_max = np.sqrt(max(0.0, 1.0 - r2 * r2 - r3 * r3))
    rows = []
    for r1 in np.linspace(0.0, r1_max, steps):
        rho = states.qubit_from_bloch((r1, r2, r3))
        star = states.DensityMatrix(twirl.twirl_closed_form(rho.mat), rho.dims)
        rows.append(
            (
                float(r1),
                coherence.l1_coherence(rho),
                coherence.l1_coherence(star),
                coherence.rel_ent_coherence(rho),
                coherence.rel_ent_coherence(star),
            )
        )
    return rows


def bell_sweep_rows(grid: int) -> list[tuple[float, ...]]:
    """Octahedron membership vs PPT across the correlation-triple tetrahedron.

    Walks a ``grid``^3 lattice over [-1, 1]^3, keeping valid states, and
    records the one-sided twirl image, which lies on the (t1, 0, 0)
    segment.  Booleans are written as 0/1.
    """
    if grid < 2:
        raise ParamOutOfRangeError(f"grid must be >= 2, got {grid}")
    axis = np.linspace(-1.0, 1.0, grid)
    rows = []
    for t1 in axis:
        for t2 in axis:
            for t3 in axis:
                if states.bell_eigenvalues(t1, t2, t3).min() < -1e-12:
                    continue
                rho = states.bell_diagonal_state(t1, t2, t3)
                member = entanglement.bell_octahedron_member(t1, t2, t3)
                before = entanglement.is_ppt(rho).is_ppt
                image = twirl.twirl_one_sided(rho.mat, (2, 2), linalg.SIDE_A)
                image_state = states.DensityMatrix(image, (2, 2))
                after = entanglement.is_ppt(image_state).is_ppt
                t1_image = float(
                    np.trace(image @ np.kron(states.SIGMA_1, states.SIGMA_1)).real
                )
                rows.append(
                    (
                        float(t1),
                        float(t2),
                        float(t3),
                        int(member),
                        int(before),
                        int(after),
                        t1_image,
                    )
                )
    return rows
