"""Lawson (integrating-factor) exponential Euler-Maruyama for the Galerkin SDE.

One step of size dt from state u (all coefficients at the left point):

    u+ = E * (u - dt*theta*P_N(u u_x) + G(u) dW + (sum_j xi_j - dt*rate*E[xi]) k(u))

with ``E = exp(dt * symbol(theta))`` applied mode-wise and ``theta`` frozen at
the step start. Large jumps split the step at their exact arrival times and
act as ``u -> u + Kscr(u, xi)`` between the pieces.

Ensembles are advanced as one ``(paths, N+1)`` array. Every path owns its
own counter-based sub-streams, so a path's trajectory does not depend on which
other paths share the batch.
"""

from __future__ import annotations

import csv
import math
import struct
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .dynamics import ModelParams, nonlinear_array, symbol_array, theta_array
from .functionals import CutoffProfile, i1_array, i2_array
from .noise import (
    CoefficientPreset,
    JumpEvent,
    LevySpec,
    WienerSpec,
    g_apply_array,
    k_field_array,
    large_field_array,
    path_streams,
    sample_jump_arrays,
)
from .spectral import (
    ConfigurationError,
    SpectralField,
    TorusGrid,
    forward_transform,
    hs_norm_array,
    random_field,
)

WIENER_CHUNK = 512


class BlowUpError(RuntimeError):
    """A non-finite mode appeared; carries the step index and partial record."""

    def __init__(self, step_index: int, record=None):
        super().__init__(f"non-finite state at step {step_index}")
        self.step_index = step_index
        self.record = record


@dataclass(frozen=True)
class InitialCondition:
    """Named initial data: zero, single_mode, soliton_like or random_hs.

    single_mode: ``amp * sin(k x)`` (``phase='cos'`` for cosine).
    soliton_like: ``amp * sech^2((x - center) / width)`` summed over periodic images.
    random_hs: random field with H^s norm ``amp`` drawn from ``seed``.
    """

    kind: str = "zero"
    k: int = 1
    amp: float = 1.0
    phase: str = "sin"
    width: float = 1.0
    center: float = math.pi
    s: float = 2.0
    seed: int = 0

    def __post_init__(self):
        if self.kind not in ("zero", "single_mode", "soliton_like", "random_hs"):
            raise ConfigurationError(f"unknown initial condition {self.kind!r}")

    def build(self, grid: TorusGrid) -> SpectralField:
        if self.kind == "zero":
            return SpectralField.zeros(grid)
        if self.kind == "random_hs":
            return random_field(grid, np.random.default_rng(self.seed), s=self.s, amplitude=self.amp)
        # sample on a fine grid so the truncation is the Galerkin projection
        fine = TorusGrid(grid.n_modes, n_points=max(grid.n_points, 1024))
        x = fine.x
        if self.kind == "single_mode":
            fn = np.cos if self.phase == "cos" else np.sin
            vals = self.amp * fn(self.k * x)
        else:
            vals = sum(
                self.amp / np.cosh((x - self.center + 2.0 * np.pi * j) / self.width) ** 2
                for j in range(-4, 5)
            )
        return SpectralField(grid, forward_transform(fine, vals).coeffs)


@dataclass(frozen=True)
class SimConfig:
    model: ModelParams = field(default_factory=ModelParams)
    wiener: WienerSpec = field(default_factory=WienerSpec)
    levy: LevySpec = field(default_factory=LevySpec)
    preset: CoefficientPreset = field(default_factory=CoefficientPreset)
    dt: float = 1e-3
    horizon: float = 1.0
    record_stride: int = 1
    seed: int = 0
    initial_condition: InitialCondition = field(default_factory=InitialCondition)
    n_points: int | None = None
    # None: 10 * max(|u0|_{H^1}, 1) resolved at run start
    cutoff_radius: float | None = None
    interlace: bool = True

    def __post_init__(self):
        if not self.dt > 0:
            raise ConfigurationError("dt > 0 required")
        if self.horizon < 0:
            raise ConfigurationError("horizon >= 0 required")
        if self.horizon > 0 and self.dt > self.horizon * (1 + 1e-12):
            raise ConfigurationError("dt <= horizon required")
        if self.record_stride < 1:
            raise ConfigurationError("record_stride >= 1 required")
        if self.cutoff_radius is not None and not self.cutoff_radius > 0:
            raise ConfigurationError("cutoff_radius must be positive")
        m = self.model
        if not math.isfinite(self.dt * (m.gamma + m.epsilon * float(m.galerkin_dim) ** 4)):
            raise ConfigurationError("dt*(gamma + eps*N^4) must be finite")
        if self.horizon > 0:
            self.n_steps  # validates the time grid

    @property
    def grid(self) -> TorusGrid:
        return TorusGrid(self.model.galerkin_dim, self.n_points)

    @property
    def n_steps(self) -> int:
        n = int(round(self.horizon / self.dt))
        if abs(n * self.dt - self.horizon) > 1e-9 * max(self.horizon, self.dt):
            raise ConfigurationError("horizon must be an integer multiple of dt")
        return n

    @property
    def noise_off(self) -> bool:
        p = self.preset
        no_g = p.g_kind == "none" or self.wiener.is_zero or not any(p.sigma)
        no_k = p.k_kind == "none" or self.levy.rate == 0
        no_large = p.large_kind == "none" or self.levy.large_rate == 0 or not self.interlace
        return no_g and no_k and no_large

    def resolved_model(self, u0: np.ndarray) -> ModelParams:
        if self.cutoff_radius is not None:
            radius = self.cutoff_radius
        else:
            h1 = float(np.max(hs_norm_array(np.atleast_2d(u0), 1.0)))
            radius = 10.0 * max(h1, 1.0)
        return replace(self.model, cutoff=CutoffProfile(radius))


@dataclass
class NoiseIncrement:
    """Noise consumed by one step: Wiener direction increments and the small-mark sum."""

    dw: np.ndarray
    mark_sum: float | np.ndarray = 0.0

    @classmethod
    def zero(cls, cfg: SimConfig) -> "NoiseIncrement":
        return cls(np.zeros(cfg.wiener.n_directions), 0.0)


# --- single step ----------------------------------------------------------


def _advance(U, dt, dW, mark_sum, model: ModelParams, cfg: SimConfig, n_points, E_cache=None):
    """One Lawson-Euler step for a batch U (P, N+1); returns the new batch."""
    n_modes = U.shape[-1] - 1
    th = theta_array(model, U) if math.isfinite(model.cutoff.radius) else None
    if th is None and E_cache is not None:
        E = E_cache
    else:
        E = np.exp(dt * symbol_array(model, n_modes, 1.0 if th is None else th))
    inner = U.copy()
    if model.nonlinear:
        nl = nonlinear_array(U, n_points)
        inner -= dt * (nl if th is None else th[..., None] * nl)
    p = cfg.preset
    if p.g_kind != "none" and dW is not None and dW.shape[-1]:
        inner += g_apply_array(p, cfg.wiener, U, dW)
    if p.k_kind != "none" and cfg.levy.rate > 0:
        comp = dt * cfg.levy.rate * cfg.levy.mark.mean
        inner += (np.asarray(mark_sum) - comp)[..., None] * k_field_array(p, U)
    out = E * inner
    out[..., 0] = out[..., 0].real
    return out


def step(u: SpectralField, cfg: SimConfig, noise_state: NoiseIncrement | None = None,
         dt: float | None = None, model: ModelParams | None = None) -> SpectralField:
    """Advance one field by one step using the given noise increment.

    ``model`` defaults to ``cfg.model`` (whose cutoff is used as is).
    """
    model = cfg.model if model is None else model
    noise_state = NoiseIncrement.zero(cfg) if noise_state is None else noise_state
    dt = cfg.dt if dt is None else dt
    out = _advance(u.coeffs[None, :], dt, np.asarray(noise_state.dw)[None, :],
                   np.atleast_1d(noise_state.mark_sum), model, cfg, u.grid.n_points)[0]
    if not np.all(np.isfinite(out)):
        raise BlowUpError(0)
    return SpectralField(u.grid, out)


# --- noise driver ---------------------------------------------------------


class _NoiseDriver:
    """Per-path noise for a batch, on a step grid that coarsens a base grid.

    Wiener increments are drawn at ``base_dt`` and summed ``coarsen`` at a time,
    so runs at different dt on the same path indices see the same Brownian path.
    """

    def __init__(self, cfg: SimConfig, path_ids, base_dt: float, coarsen: int, n_steps: int):
        self.cfg = cfg
        self.coarsen = coarsen
        self.n_steps = n_steps
        self.dt = base_dt * coarsen
        streams = [path_streams(cfg.seed, i) for i in path_ids]
        self.wgen = [s["wiener"] for s in streams]
        self.bgen = [s["bridge"] for s in streams]
        D = cfg.wiener.n_directions
        self.D = D
        self.scale = np.sqrt(cfg.wiener.direction_q() * base_dt)
        self.use_wiener = cfg.preset.g_kind != "none" and D > 0 and not cfg.wiener.is_zero
        self.buf = None
        self.buf_start = 0
        horizon = n_steps * self.dt
        self.small = []
        self.large = []
        use_small = cfg.preset.k_kind != "none" and cfg.levy.rate > 0
        use_large = cfg.interlace and cfg.levy.large_rate > 0
        for s in streams:
            if horizon > 0 and (use_small or use_large):
                levy = replace(cfg.levy, rate=cfg.levy.rate if use_small else 0.0,
                               large_rate=cfg.levy.large_rate if use_large else 0.0)
                (ts, ms), (tl, ml) = sample_jump_arrays(levy, horizon, s["jumps"], s["large"])
            else:
                ts = ms = tl = ml = np.zeros(0)
            self.small.append((ts, ms))
            self.large.append((tl, ml))
        self.small_idx = [self._step_index(ts) for ts, _ in self.small]
        self.large_steps: dict[int, list[int]] = {}
        for p, (tl, _) in enumerate(self.large):
            for k in np.unique(self._step_index(tl)):
                self.large_steps.setdefault(int(k), []).append(p)

    def _step_index(self, t: np.ndarray) -> np.ndarray:
        # arrival in (t_k, t_{k+1}] belongs to step k
        idx = np.ceil(t / self.dt - 1e-12).astype(int) - 1
        return np.clip(idx, 0, max(self.n_steps - 1, 0))

    def wiener(self, k: int) -> np.ndarray | None:
        """Direction increments (P, D) for step k (steps are consumed in order)."""
        if not self.use_wiener:
            return None
        r = self.coarsen
        chunk = WIENER_CHUNK
        if self.buf is None or k >= self.buf_start + chunk:
            self.buf_start = (k // chunk) * chunk
            n = min(chunk, self.n_steps - self.buf_start)
            raw = np.stack([g.standard_normal((n * r, self.D)) for g in self.wgen])
            raw = raw.reshape(len(self.wgen), n, r, self.D).sum(axis=2)
            self.buf = raw * self.scale
        return self.buf[:, k - self.buf_start]

    def mark_sums(self, k: int) -> np.ndarray:
        out = np.zeros(len(self.small))
        for p, (ts, ms) in enumerate(self.small):
            if ts.size:
                idx = self.small_idx[p]
                a, b = np.searchsorted(idx, k, "left"), np.searchsorted(idx, k, "right")
                out[p] = ms[a:b].sum()
        return out

    def bridge_split(self, p: int, dw: np.ndarray | None, cuts: list[float]) -> list:
        """Split one path's step increment at fractional cut points (Brownian bridge)."""
        pieces = []
        total = 1.0
        rem = None if dw is None else dw.copy()
        sq = np.sqrt(self.cfg.wiener.direction_q() * self.dt)
        prev = 0.0
        for c in list(cuts) + [1.0]:
            h = c - prev
            if rem is None:
                pieces.append(None)
            elif c == 1.0 or total - h <= 0:
                pieces.append(rem.copy())
                rem = rem * 0.0
            else:
                z = self.bgen[p].standard_normal(self.D)
                piece = (h / total) * rem + np.sqrt(h * (total - h) / total) * sq * z
                pieces.append(piece)
                rem = rem - piece
            total -= h
            prev = c
        return pieces


# --- records --------------------------------------------------------------


@dataclass
class TrajectoryRecord:
    times: np.ndarray
    l2_norm: np.ndarray
    h1_norm: np.ndarray
    h2_norm: np.ndarray
    i0: np.ndarray
    i1: np.ndarray
    i2: np.ndarray
    jump_log: list
    final_state: SpectralField

    CSV_COLUMNS = ("t", "l2", "h1", "h2", "i0", "i1", "i2")

    def rows(self):
        return zip(self.times, self.l2_norm, self.h1_norm, self.h2_norm, self.i0, self.i1, self.i2)

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(self.CSV_COLUMNS)
            for row in self.rows():
                w.writerow([repr(float(v)) for v in row])


def write_state_snapshot(state: SpectralField, path) -> None:
    """int32 n_modes header, then interleaved float64 (re, im) for n = 0..N."""
    c = state.coeffs
    payload = np.empty(2 * c.size, dtype="<f8")
    payload[0::2] = c.real
    payload[1::2] = c.imag
    with open(path, "wb") as fh:
        fh.write(struct.pack("<i", state.grid.n_modes))
        fh.write(payload.tobytes())


def read_state_snapshot(path, n_points: int | None = None) -> SpectralField:
    with open(path, "rb") as fh:
        (n_modes,) = struct.unpack("<i", fh.read(4))
        payload = np.frombuffer(fh.read(), dtype="<f8")
    return SpectralField(TorusGrid(n_modes, n_points), payload[0::2] + 1j * payload[1::2])


@dataclass
class EnsembleRecord:
    """Per-record-time observables with shape (n_records, paths)."""

    times: np.ndarray
    l2: np.ndarray
    h1: np.ndarray
    h2: np.ndarray
    i0: np.ndarray | None
    i1: np.ndarray | None
    i2: np.ndarray | None
    extra: list
    final: np.ndarray
    jump_logs: list
    grid: TorusGrid

    @property
    def paths(self) -> int:
        return self.final.shape[0]


def _observe(U, n_quad, functionals):
    l2 = hs_norm_array(U, 0.0)
    out = [l2, hs_norm_array(U, 1.0), hs_norm_array(U, 2.0)]
    if functionals:
        out += [l2**2, i1_array(U, n_quad), i2_array(U, n_quad)]
    return out


def simulate_batch(cfg: SimConfig, u0: np.ndarray, path_ids, *, base_dt: float | None = None,
                   functionals: bool = False, record_jumps: bool = False, extra=None,
                   post_step=None) -> EnsembleRecord:
    """Advance initial states ``u0`` (P, N+1), path p driven by stream ``path_ids[p]``.

    ``base_dt`` (default ``cfg.dt``) is the Wiener sampling step; ``cfg.dt``
    must be an integer multiple of it. ``extra(U)`` is evaluated at every
    record time, ``post_step(U)`` may modify the batch after every step.
    """
    grid = cfg.grid
    U = np.array(np.atleast_2d(u0), dtype=complex)
    P = U.shape[0]
    model = cfg.resolved_model(U)
    n_steps = cfg.n_steps if cfg.horizon > 0 else 0
    base_dt = cfg.dt if base_dt is None else base_dt
    coarsen = int(round(cfg.dt / base_dt))
    if abs(coarsen * base_dt - cfg.dt) > 1e-9 * cfg.dt:
        raise ConfigurationError("dt must be an integer multiple of base_dt")
    driver = _NoiseDriver(cfg, list(path_ids), base_dt, coarsen, n_steps)
    n_quad = grid.quadrature_points
    E_cache = np.exp(cfg.dt * symbol_array(model, grid.n_modes, 1.0))[None, :]
    use_k = cfg.preset.k_kind != "none" and cfg.levy.rate > 0

    times, obs, extras = [], [], []
    jump_logs = [[] for _ in range(P)]

    def record(t, state):
        times.append(t)
        obs.append(_observe(state, n_quad, functionals))
        if extra is not None:
            extras.append(extra(state))

    def partial():
        return _collect(times, obs, extras, U, jump_logs, grid, functionals)

    record(0.0, U)
    for k in range(n_steps):
        dW = driver.wiener(k)
        xs = driver.mark_sums(k) if use_k else np.zeros(P)
        split = driver.large_steps.get(k, [])
        if split:
            rest = np.setdiff1d(np.arange(P), split)
        else:
            rest = slice(None)
        new = U.copy()
        if not split or len(rest):
            new[rest] = _advance(U[rest], cfg.dt, None if dW is None else dW[rest], xs[rest],
                                 model, cfg, grid.n_points, E_cache)
        for p in split:
            new[p] = _split_step(U[p], k, p, cfg, model, driver, None if dW is None else dW[p],
                                 jump_logs[p], grid, record if record_jumps and P == 1 else None)
        U = new
        if post_step is not None:
            U = post_step(U)
        if not np.all(np.isfinite(U)):
            raise BlowUpError(k, partial())
        if (k + 1) % cfg.record_stride == 0 or k == n_steps - 1:
            record((k + 1) * cfg.dt, U)
    return partial()


def _split_step(u, k, p, cfg, model, driver: _NoiseDriver, dw, log, grid, recorder):
    tl, ml = driver.large[p]
    idx = driver._step_index(tl)
    sel = idx == k
    t0 = k * driver.dt
    taus, marks = tl[sel], ml[sel]
    cuts = [min(max((t - t0) / driver.dt, 0.0), 1.0) for t in taus]
    pieces = driver.bridge_split(p, dw, cuts)
    ts, ms = driver.small[p]
    bounds = [t0] + list(taus) + [t0 + driver.dt]
    U = u[None, :]
    for j, dwj in enumerate(pieces):
        a, b = bounds[j], bounds[j + 1]
        h = b - a
        if ts.size:
            in_piece = (ts > a) & (ts <= b) if j else (ts >= a) & (ts <= b)
            # small arrivals keep their step binning; only those in this step count
            in_piece &= driver.small_idx[p] == k
            msum = np.array([ms[in_piece].sum()])
        else:
            msum = np.zeros(1)
        if h > 0:
            U = _advance(U, h, None if dwj is None else dwj[None, :], msum, model, cfg, grid.n_points)
        if j < len(taus):
            U = U + marks[j] * large_field_array(cfg.preset, U)
            U[..., 0] = U[..., 0].real
            log.append(JumpEvent(float(taus[j]), float(marks[j]), True))
            if recorder is not None:
                recorder(float(taus[j]), U)
    return U[0]


def _collect(times, obs, extras, U, jump_logs, grid, functionals) -> EnsembleRecord:
    cols = [np.array(c) for c in zip(*obs)]
    return EnsembleRecord(
        times=np.array(times),
        l2=cols[0], h1=cols[1], h2=cols[2],
        i0=cols[3] if functionals else None,
        i1=cols[4] if functionals else None,
        i2=cols[5] if functionals else None,
        extra=extras,
        final=U.copy(),
        jump_logs=jump_logs,
        grid=grid,
    )


# --- public drivers -------------------------------------------------------


def initial_state(cfg: SimConfig) -> SpectralField:
    return cfg.initial_condition.build(cfg.grid)


def _to_trajectory(rec: EnsembleRecord, p: int = 0) -> TrajectoryRecord:
    i0 = rec.i0[:, p] if rec.i0 is not None else rec.l2[:, p] ** 2
    return TrajectoryRecord(
        times=rec.times,
        l2_norm=rec.l2[:, p], h1_norm=rec.h1[:, p], h2_norm=rec.h2[:, p],
        i0=i0,
        i1=rec.i1[:, p] if rec.i1 is not None else np.full(rec.times.size, np.nan),
        i2=rec.i2[:, p] if rec.i2 is not None else np.full(rec.times.size, np.nan),
        jump_log=rec.jump_logs[p],
        final_state=SpectralField(rec.grid, rec.final[p]),
    )


def run(cfg: SimConfig, u0: SpectralField | None = None, path_index: int = 0,
        functionals: bool = True) -> TrajectoryRecord:
    """One trajectory from the configured (or given) initial data."""
    u0 = initial_state(cfg) if u0 is None else u0
    try:
        rec = simulate_batch(cfg, u0.coeffs[None, :], [path_index],
                             functionals=functionals, record_jumps=True)
    except BlowUpError as err:
        if err.record is not None:
            err.record = _to_trajectory(err.record)
        raise
    return _to_trajectory(rec)


def run_ensemble(cfg: SimConfig, paths: int, *, u0: SpectralField | None = None,
                 threads: int = 1, first_path: int = 0, **kwargs) -> EnsembleRecord:
    """``paths`` independent trajectories, optionally split over worker threads.

    Results do not depend on ``threads``: path i always uses stream i.
    """
    u0 = initial_state(cfg) if u0 is None else u0
    ids = np.arange(first_path, first_path + paths)
    if threads <= 1 or paths < 2:
        return simulate_batch(cfg, np.repeat(u0.coeffs[None, :], paths, axis=0), ids, **kwargs)
    groups = [g for g in np.array_split(ids, min(threads, paths)) if g.size]
    with ThreadPoolExecutor(len(groups)) as pool:
        parts = list(pool.map(
            lambda g: simulate_batch(cfg, np.repeat(u0.coeffs[None, :], g.size, axis=0), g, **kwargs),
            groups))
    return _merge(parts)


def _merge(parts: list[EnsembleRecord]) -> EnsembleRecord:
    cat = lambda name: (None if getattr(parts[0], name) is None
                        else np.concatenate([getattr(r, name) for r in parts], axis=1))
    return EnsembleRecord(
        times=parts[0].times,
        l2=cat("l2"), h1=cat("h1"), h2=cat("h2"), i0=cat("i0"), i1=cat("i1"), i2=cat("i2"),
        extra=[np.concatenate(x, axis=-1) for x in zip(*[r.extra for r in parts])] if parts[0].extra else [],
        final=np.concatenate([r.final for r in parts]),
        jump_logs=sum((r.jump_logs for r in parts), []),
        grid=parts[0].grid,
    )


@dataclass
class CoupledResult:
    a: TrajectoryRecord
    b: TrajectoryRecord
    times: np.ndarray
    difference: np.ndarray


def run_coupled(cfg: SimConfig, u0_a: SpectralField, u0_b: SpectralField,
                path_index: int = 0) -> CoupledResult:
    """Two trajectories driven by the identical noise realisation."""
    U0 = np.stack([u0_a.coeffs, u0_b.coeffs])
    # the cutoff radius must not depend on which initial state is larger
    rec = simulate_batch(cfg, U0, [path_index, path_index], functionals=True,
                         extra=lambda U: hs_norm_array(U[0] - U[1], 0.0)[None])
    diff = np.array([e[0] for e in rec.extra])
    return CoupledResult(_to_trajectory(rec, 0), _to_trajectory(rec, 1), rec.times, diff)


@dataclass
class ConvergenceResult:
    dts: np.ndarray
    errors: np.ndarray
    slope: float
    monotone: bool
    reference_dt: float
    paths: int

    def as_dict(self) -> dict:
        return {
            "dts": self.dts.tolist(),
            "errors": self.errors.tolist(),
            "slope": self.slope,
            "monotone": self.monotone,
            "warning": None if self.monotone else "non-monotone error sequence",
            "reference_dt": self.reference_dt,
            "paths": self.paths,
        }


def self_convergence(cfg: SimConfig, refinement_levels: int = 4, paths: int = 32,
                     reference_extra: int = 4, u0: SpectralField | None = None) -> ConvergenceResult:
    """Strong self-convergence slope of the scheme.

    Levels use dt = cfg.dt / 2^l for l < refinement_levels; the reference
    runs at a further 2^reference_extra refinement on the same Brownian and
    Poisson paths. Error is the RMS over paths of the L^2 distance at the
    horizon.
    """
    if refinement_levels < 3:
        raise ConfigurationError("refinement_levels >= 3 required")
    u0 = initial_state(cfg) if u0 is None else u0
    fine_pow = refinement_levels - 1 + reference_extra
    base_dt = cfg.dt / 2**fine_pow
    U0 = np.repeat(u0.coeffs[None, :], paths, axis=0)
    ids = np.arange(paths)
    # freeze the cutoff radius from the configured data for every level
    radius = cfg.cutoff_radius if cfg.cutoff_radius is not None else 10.0 * max(
        float(hs_norm_array(u0.coeffs, 1.0)), 1.0)

    def final(dt):
        c = replace(cfg, dt=dt, record_stride=10**9, cutoff_radius=radius)
        return simulate_batch(c, U0, ids, base_dt=base_dt).final

    ref = final(base_dt)
    dts = np.array([cfg.dt / 2**l for l in range(refinement_levels)])
    errors = np.array([np.sqrt(np.mean(hs_norm_array(final(dt) - ref, 0.0) ** 2)) for dt in dts])
    slope = float(np.polyfit(np.log(dts), np.log(errors), 1)[0])
    monotone = bool(np.all(np.diff(errors) < 0))
    return ConvergenceResult(dts, errors, slope, monotone, base_dt, paths)
