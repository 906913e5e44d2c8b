"""Brute-force minimax over SU(2) targets, independent of the closed form.

The inner maximization over program states is analytic (top eigenvalue of
S^dag S), so the only approximation is the discretization of the target
group, handled by a seeded low-discrepancy sweep of S^3 plus simplex polish.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .channels import program_overlap
from .errors import ContractError
from .kernels import device_parts, fidelity_from_bloch, fidelity_from_bloch_batch
from .minimax import worst_case_fidelity

# Signed axis points +-e_j; the closed-form minimum always sits on one of
# them for a canonical device, so they are forced into every sample.
AXIS_POINTS = np.concatenate([np.eye(4), -np.eye(4)])
AXIS_POINTS.setflags(write=False)

# Additive-recurrence constants: inverse powers of the d=3 generalization of
# the golden ratio (root of x^4 = x + 1).
_PHI3 = 1.2207440846057596
_ALPHAS = np.array([1.0 / _PHI3, 1.0 / _PHI3**2, 1.0 / _PHI3**3])


@dataclass(frozen=True)
class ScanConfig:
    resolution: int = 10_000
    refine_steps: int = 50
    seed: int = 0
    sigma_samples: int = 1000

    def __post_init__(self):
        if self.resolution < 100:
            raise ContractError(f"resolution must be >= 100, got {self.resolution}")
        if self.refine_steps < 0:
            raise ContractError(f"refine_steps must be >= 0, got {self.refine_steps}")


@dataclass(frozen=True)
class ScanResult:
    f_min: float
    worst_bloch: np.ndarray
    gap_to_closed_form: float
    evaluations: int


def haar_unitary(dim: int, rng) -> np.ndarray:
    """Haar-random unitary via QR of a complex Gaussian matrix."""
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(a)
    diag = np.diag(r)
    return q * (np.abs(diag) / diag)


def random_density(rng) -> np.ndarray:
    """Mixed qubit state from partial-tracing a Haar-random two-qubit pure state."""
    psi = rng.normal(size=4) + 1j * rng.normal(size=4)
    psi /= np.linalg.norm(psi)
    joint = np.outer(psi, psi.conj()).reshape(2, 2, 2, 2)
    return np.einsum("ijkj->ik", joint)


def sample_su2(config: ScanConfig) -> np.ndarray:
    """Deterministic low-discrepancy Bloch points, axis points first.

    The additive recurrence u_i = frac(offset + alpha (i+1)) fills the unit
    cube, and the standard area-preserving map carries it onto S^3.  With a
    fixed seed the sequence is prefix-nested: raising the resolution only
    appends points.
    """
    n_seq = config.resolution - len(AXIS_POINTS)
    if n_seq <= 0:
        return AXIS_POINTS[: config.resolution].copy()
    offset = np.random.default_rng(config.seed).random(3)
    idx = np.arange(1, n_seq + 1)[:, None]
    u = np.mod(offset + idx * _ALPHAS, 1.0)
    azim = 2 * np.pi * u[:, 1]
    polar = 2 * np.pi * u[:, 2]
    r_low = np.sqrt(1.0 - u[:, 0])
    r_high = np.sqrt(u[:, 0])
    points = np.column_stack(
        [r_low * np.sin(azim), r_low * np.cos(azim), r_high * np.sin(polar), r_high * np.cos(polar)]
    )
    return np.concatenate([AXIS_POINTS, points])


def _tangent_frame(n: np.ndarray) -> np.ndarray:
    """Rows: an orthonormal basis of the tangent space of S^3 at n."""
    frame = []
    order = np.argsort(np.abs(n))  # start from axes least aligned with n
    for k in order[:3]:
        e = np.zeros(4)
        e[k] = 1.0
        e -= (e @ n) * n
        for t in frame:
            e -= (e @ t) * t
        e /= np.linalg.norm(e)
        frame.append(e)
    return np.array(frame)


def _polish(parts, n0: np.ndarray, steps: int, scale: float) -> tuple[float, np.ndarray, int]:
    """Nelder-Mead reflections in a tangent chart, reprojected to S^3."""
    frame = _tangent_frame(n0)
    evaluations = 0

    def point(x):
        p = n0 + x @ frame
        return p / np.linalg.norm(p)

    def objective(x):
        nonlocal evaluations
        evaluations += 1
        return fidelity_from_bloch(parts, point(x))

    simplex = [np.zeros(3)] + [scale * e for e in np.eye(3)]
    values = [objective(x) for x in simplex]
    for _ in range(steps):
        order = np.argsort(values)
        simplex = [simplex[i] for i in order]
        values = [values[i] for i in order]
        centroid = np.mean(simplex[:-1], axis=0)
        worst = simplex[-1]
        reflected = centroid + (centroid - worst)
        f_ref = objective(reflected)
        if f_ref < values[0]:
            expanded = centroid + 2.0 * (centroid - worst)
            f_exp = objective(expanded)
            if f_exp < f_ref:
                simplex[-1], values[-1] = expanded, f_exp
            else:
                simplex[-1], values[-1] = reflected, f_ref
        elif f_ref < values[-2]:
            simplex[-1], values[-1] = reflected, f_ref
        else:
            contracted = centroid + 0.5 * (worst - centroid)
            f_con = objective(contracted)
            if f_con < values[-1]:
                simplex[-1], values[-1] = contracted, f_con
            else:
                for i in range(1, len(simplex)):
                    simplex[i] = simplex[0] + 0.5 * (simplex[i] - simplex[0])
                    values[i] = objective(simplex[i])
    best = int(np.argmin(values))
    return float(values[best]), point(simplex[best]), evaluations


def minimax_scan(v, config: ScanConfig, trace_path=None) -> ScanResult:
    """Scan the target group for the worst fidelity and polish the incumbents.

    ``trace_path`` optionally writes a CSV of (index, n0..n3, fidelity) for
    the sweep phase.
    """
    parts = device_parts(v)
    points = sample_su2(config)
    values = fidelity_from_bloch_batch(parts, points)
    evaluations = len(points)

    if trace_path is not None:
        with open(trace_path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["index", "n0", "n1", "n2", "n3", "fidelity"])
            for i, (p, f) in enumerate(zip(points, values)):
                writer.writerow([i, repr(p[0]), repr(p[1]), repr(p[2]), repr(p[3]), repr(f)])

    best = int(np.argmin(values))
    f_min = float(values[best])
    worst = points[best].copy()

    if config.refine_steps > 0:
        scale = max((2 * np.pi**2 / config.resolution) ** (1.0 / 3.0), 1e-3)
        candidates = [worst]
        for i in np.argsort(values)[:16]:
            p = points[i]
            if all(min(np.linalg.norm(p - c), np.linalg.norm(p + c)) > 0.1 for c in candidates):
                candidates.append(p.copy())
            if len(candidates) == 4:
                break
        for start in candidates:
            f_loc, n_loc, used = _polish(parts, start, config.refine_steps, scale)
            evaluations += used
            if f_loc < f_min:
                f_min, worst = f_loc, n_loc

    reference = worst_case_fidelity(v).fidelity
    return ScanResult(
        f_min=f_min,
        worst_bloch=worst,
        gap_to_closed_form=f_min - reference,
        evaluations=evaluations,
    )


def sigma_dominance_check(u, v, n: int, seed: int = 0) -> float:
    """Max programmed fidelity over n sampled mixed programs.

    The sampled maximum never exceeds the analytic optimum fidelity_uv(u, v)
    beyond rounding; the analytic program state itself attains it.
    """
    rng = np.random.default_rng(seed)
    top = 0.0
    for _ in range(n):
        top = max(top, program_overlap(u, v, random_density(rng)))
    return top
