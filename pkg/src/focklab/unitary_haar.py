"""Haar-distributed unitaries, Livšic projections, and virtual unitaries.

Sampling uses the QR construction with the diagonal phase correction
R_jj/|R_jj|, which makes the distribution exactly Haar.  Monte Carlo runs
are split into fixed-size chunks; each chunk draws its own generator from
``SeedSequence(seed, spawn_key=(chunk,))`` and partial sums are combined in
chunk order, so results are bitwise reproducible for any worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

UNITARITY_TOL = 1e-10
LIVSIC_BRANCH_TOL = 1e-12
DEFAULT_CHUNK = 8192


def unitarity_defect(u: np.ndarray) -> float:
    """Largest entry of U*U - I in absolute value."""
    m = u.shape[-1]
    eye = np.eye(m)
    prod = np.swapaxes(u.conj(), -1, -2) @ u
    return float(np.abs(prod - eye).max())


def assert_unitary(u: np.ndarray, tol: float = UNITARITY_TOL) -> None:
    defect = unitarity_defect(u)
    if defect > tol:
        raise ValueError(f"matrix fails the unitarity check: defect {defect:.3e}")


def substream(seed: int, chunk_index: int) -> np.random.Generator:
    """Generator for one chunk; independent of scheduling and worker count."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(chunk_index,)))


def chunk_plan(samples: int, chunk: int = DEFAULT_CHUNK) -> list[tuple[int, int]]:
    """Fixed partition of a sample budget into (chunk_index, count) pieces."""
    plan = []
    index = 0
    remaining = samples
    while remaining > 0:
        count = min(chunk, remaining)
        plan.append((index, count))
        index += 1
        remaining -= count
    return plan


def haar_batch(m: int, count: int, rng: np.random.Generator) -> np.ndarray:
    """Stack of ``count`` Haar unitaries of size m."""
    z = (
        rng.standard_normal((count, m, m)) + 1j * rng.standard_normal((count, m, m))
    ) / math.sqrt(2.0)
    q, r = np.linalg.qr(z)
    diag = np.einsum("...ii->...i", r)
    phases = diag / np.abs(diag)
    return q * phases[:, None, :]


def haar_sample(m: int, rng: np.random.Generator) -> np.ndarray:
    """One Haar unitary of size m; always passes the unitarity check."""
    if m < 1:
        raise ValueError("size must be >= 1")
    u = haar_batch(m, 1, rng)[0]
    assert_unitary(u)
    return u


def livsic_project(u: np.ndarray) -> np.ndarray:
    """Corner map U(m+1) -> U(m): z - a (1+t)^{-1} b on the block split.

    The bottom-right scalar t = -1 is a measure-zero branch where the map
    returns the corner z unchanged; numerically the branch is taken whenever
    |1 + t| falls below a small threshold.
    """
    m = u.shape[0] - 1
    if m < 1:
        raise ValueError("input must be at least 2x2")
    z = u[:m, :m]
    a = u[:m, m:]
    b = u[m:, :m]
    t = u[m, m]
    if abs(1.0 + t) < LIVSIC_BRANCH_TOL:
        return z.copy()
    return z - (a @ b) / (1.0 + t)


def livsic_project_batch(u: np.ndarray) -> tuple[np.ndarray, int]:
    """Vectorised projection of a stack; returns (stack, branch event count)."""
    m = u.shape[-1] - 1
    z = u[:, :m, :m]
    a = u[:, :m, m:]
    b = u[:, m:, :m]
    t = u[:, m, m]
    denom = 1.0 + t
    singular = np.abs(denom) < LIVSIC_BRANCH_TOL
    safe = np.where(singular, 1.0, denom)
    out = z - (a @ b) / safe[:, None, None]
    if singular.any():
        out[singular] = z[singular]
    return out, int(singular.sum())


@dataclass
class VirtualUnitary:
    """Stabilised projective sequence determined by its top-level matrix.

    Levels below the top are produced by iterated Livšic projections and
    cached; levels at or above the top repeat the top matrix (padded by an
    identity block when a larger matrix is requested).
    """

    top_level: int
    top: np.ndarray
    depth: int = 0
    _chain: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        assert_unitary(self.top)
        if self.depth < self.top_level:
            self.depth = self.top_level

    def level(self, k: int) -> np.ndarray:
        if k < 1:
            raise ValueError("level must be >= 1")
        if k == self.top_level:
            return self.top
        if k > self.top_level:
            out = np.eye(k, dtype=complex)
            out[: self.top_level, : self.top_level] = self.top
            return out
        cached = self._chain.get(k)
        if cached is None:
            cached = livsic_project(self.level(k + 1))
            self._chain[k] = cached
        return cached


def embed_stabilized(u_m: np.ndarray, depth: int) -> VirtualUnitary:
    """Stabilised sequence of a finite unitary; identity embeds to identities."""
    m = u_m.shape[0]
    if depth < m:
        raise ValueError("depth must be at least the matrix size")
    return VirtualUnitary(m, np.array(u_m, dtype=complex), depth)


def _pad(v: np.ndarray, m: int) -> np.ndarray:
    if v.shape[0] == m:
        return v
    if v.shape[0] > m:
        raise ValueError("cannot pad a matrix down")
    out = np.eye(m, dtype=complex)
    out[: v.shape[0], : v.shape[0]] = v
    return out


def right_action(
    u: VirtualUnitary, v: np.ndarray, w: np.ndarray, m: int
) -> VirtualUnitary:
    """Act on the right by the pair (v, w): the level-m matrix becomes w^-1 u_m v."""
    if m < u.top_level:
        raise ValueError("action level must reach the top level")
    v_m = _pad(np.asarray(v, dtype=complex), m)
    w_m = _pad(np.asarray(w, dtype=complex), m)
    assert_unitary(v_m)
    assert_unitary(w_m)
    new_top = w_m.conj().T @ u.level(m) @ v_m
    assert_unitary(new_top)
    return VirtualUnitary(m, new_top, max(u.depth, m))


# -- moment machinery --------------------------------------------------------

MOMENT_NAMES = ("abs_u11_sq", "abs_u11_quad", "abs_trace_sq", "re_u11", "im_u11")


def exact_moment(name: str, m: int) -> float:
    if name == "abs_u11_sq":
        return 1.0 / m
    if name == "abs_u11_quad":
        return 2.0 / (m * (m + 1))
    if name == "abs_trace_sq":
        return 1.0
    if name in ("re_u11", "im_u11"):
        return 0.0
    raise ValueError(f"unknown moment {name!r}")


def _moment_values(batch: np.ndarray) -> dict[str, np.ndarray]:
    u11 = batch[:, 0, 0]
    trace = np.einsum("...ii->...", batch)
    return {
        "abs_u11_sq": np.abs(u11) ** 2,
        "abs_u11_quad": np.abs(u11) ** 4,
        "abs_trace_sq": np.abs(trace) ** 2,
        "re_u11": u11.real,
        "im_u11": u11.imag,
    }


def _haar_chunk_sums(args):
    m, seed, chunk_index, count, transform = args
    rng = substream(seed, chunk_index)
    if transform == "project":
        batch, branches = livsic_project_batch(haar_batch(m + 1, count, rng))
    else:
        batch = haar_batch(m, count, rng)
        branches = 0
    values = _moment_values(batch)
    sums = {name: (vals.sum(), (vals**2).sum()) for name, vals in values.items()}
    defect = unitarity_defect(batch) if transform == "project" else 0.0
    return sums, branches, defect


@dataclass
class MomentEstimate:
    name: str
    mean: float
    stderr: float
    samples: int

    def z_against(self, target: float) -> float:
        gap = self.mean - target
        if self.stderr == 0.0:
            return 0.0 if abs(gap) <= 1e-12 else math.inf
        return gap / self.stderr


def sample_moments(
    m: int,
    samples: int,
    seed: int,
    transform: str = "direct",
    chunk: int = DEFAULT_CHUNK,
    workers: int = 1,
) -> tuple[dict[str, MomentEstimate], dict]:
    """Moment estimates of Haar samples (or their Livšic projections).

    ``transform="project"`` samples at size m+1 and projects down to size m.
    Returns the estimates and a small diagnostics record (branch events and
    the worst unitarity defect seen among projected matrices).
    """
    plan = chunk_plan(samples, chunk)
    tasks = [(m, seed, index, count, transform) for index, count in plan]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_haar_chunk_sums, tasks))
    else:
        results = [_haar_chunk_sums(t) for t in tasks]
    totals = {name: [0.0, 0.0] for name in MOMENT_NAMES}
    branches = 0
    worst_defect = 0.0
    for sums, chunk_branches, defect in results:
        for name, (s1, s2) in sums.items():
            totals[name][0] += s1
            totals[name][1] += s2
        branches += chunk_branches
        worst_defect = max(worst_defect, defect)
    estimates = {}
    for name, (s1, s2) in totals.items():
        mean = s1 / samples
        var = max(s2 / samples - mean**2, 0.0)
        stderr = math.sqrt(var / samples)
        estimates[name] = MomentEstimate(name, float(mean), float(stderr), samples)
    diagnostics = {"branch_events": branches, "worst_defect": worst_defect}
    return estimates, diagnostics


def haar_moment_report(m: int, samples: int, seed: int, workers: int = 1) -> dict:
    """Empirical vs exact low moments of the Haar distribution at size m."""
    estimates, diagnostics = sample_moments(m, samples, seed, "direct", workers=workers)
    moments = []
    for name in MOMENT_NAMES:
        est = estimates[name]
        exact = exact_moment(name, m)
        moments.append(
            {
                "name": name,
                "empirical": est.mean,
                "exact": exact,
                "stderr": est.stderr,
                "z": est.z_against(exact),
            }
        )
    return {"m": m, "samples": samples, "seed": seed, "moments": moments, **diagnostics}


def _invariance_chunk(args):
    m, seed, chunk_index, count, side = args
    rng = substream(seed, chunk_index)
    batch = haar_batch(m, count, rng)
    fixed = _fourier_unitary(m)
    batch = fixed @ batch if side == "left" else batch @ fixed
    values = _moment_values(batch)
    return {name: (vals.sum(), (vals**2).sum()) for name, vals in values.items()}


def _fourier_unitary(m: int) -> np.ndarray:
    k = np.arange(m)
    return np.exp(2j * np.pi * np.outer(k, k) / m) / math.sqrt(m)


def invariance_report(m: int, samples: int, seed: int, workers: int = 1) -> dict:
    """Moments of V.U and U.V for a fixed unitary V against the exact values."""
    out = {"m": m, "samples": samples, "seed": seed, "sides": {}}
    for side in ("left", "right"):
        plan = chunk_plan(samples)
        tasks = [(m, seed, index, count, side) for index, count in plan]
        if workers > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(_invariance_chunk, tasks))
        else:
            results = [_invariance_chunk(t) for t in tasks]
        moments = []
        for name in MOMENT_NAMES:
            s1 = sum(r[name][0] for r in results)
            s2 = sum(r[name][1] for r in results)
            mean = s1 / samples
            var = max(s2 / samples - mean**2, 0.0)
            stderr = math.sqrt(var / samples)
            exact = exact_moment(name, m)
            z = 0.0 if stderr == 0 else (mean - exact) / stderr
            moments.append(
                {"name": name, "empirical": mean, "exact": exact, "stderr": stderr, "z": z}
            )
        out["sides"][side] = moments
    return out


def pushforward_consistency(
    m: int, samples: int, seed: int, workers: int = 1
) -> dict:
    """Compare moments of projected Haar(m+1) samples against direct Haar(m).

    Two-sample z-scores per tracked moment; the report also carries the
    branch-event count and the worst unitarity defect of projected matrices.
    """
    projected, diagnostics = sample_moments(
        m, samples, seed, "project", workers=workers
    )
    direct, _ = sample_moments(m, samples, seed + 1, "direct", workers=workers)
    moments = []
    for name in MOMENT_NAMES:
        p, q = projected[name], direct[name]
        spread = math.sqrt(p.stderr**2 + q.stderr**2)
        z = 0.0 if spread == 0 else (p.mean - q.mean) / spread
        moments.append(
            {
                "name": name,
                "projected": p.mean,
                "direct": q.mean,
                "stderr": spread,
                "z": z,
            }
        )
    return {"m": m, "samples": samples, "seed": seed, "moments": moments, **diagnostics}
