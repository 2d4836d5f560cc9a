"""Stochastic forcing: Q-Wiener increments, compensated Poisson jumps,
coefficient presets G, K and the large-jump map, plus numeric checks of the
growth, moment and Lipschitz conditions on the coefficients.

Wiener directions are the real L^2-orthonormal Fourier basis
``[1/sqrt(2 pi), cos(x)/sqrt(pi), sin(x)/sqrt(pi), cos(2x)/sqrt(pi), ...]``;
wavenumber ``k`` owns one direction for ``k = 0`` and two otherwise. Marks
are scalars and every K-type preset is linear in the mark, so
``K(u, xi) = xi * k_field(u)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .spectral import (
    ConfigurationError,
    SpectralField,
    TorusGrid,
    hs_norm_array,
    random_field,
)

STREAM_NAMES = ("wiener", "jumps", "large", "bridge")


class DomainError(ValueError):
    """A mark was passed to a coefficient outside its domain."""


def path_streams(seed: int, path_index: int = 0) -> dict[str, np.random.Generator]:
    """Independent counter-based (Philox) sub-streams for one trajectory."""
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=(int(path_index),))
    return {
        name: np.random.Generator(np.random.Philox(child))
        for name, child in zip(STREAM_NAMES, ss.spawn(len(STREAM_NAMES)))
    }


# --- Wiener process -------------------------------------------------------


@dataclass(frozen=True)
class WienerSpec:
    """Covariance eigenvalues q_k per wavenumber (shared by cos and sin)."""

    q_spectrum: tuple[float, ...] = ()

    def __post_init__(self):
        q = tuple(float(v) for v in self.q_spectrum)
        if any(v < 0 or not math.isfinite(v) for v in q):
            raise ConfigurationError("q_spectrum entries must be finite and >= 0")
        object.__setattr__(self, "q_spectrum", q)

    @property
    def mode_count(self) -> int:
        return len(self.q_spectrum)

    @property
    def n_directions(self) -> int:
        return max(0, 2 * self.mode_count - 1)

    def direction_wavenumbers(self) -> np.ndarray:
        if self.mode_count == 0:
            return np.zeros(0, dtype=int)
        return np.concatenate([[0], np.repeat(np.arange(1, self.mode_count), 2)])

    def direction_q(self) -> np.ndarray:
        return np.asarray(self.q_spectrum)[self.direction_wavenumbers()]

    @property
    def is_zero(self) -> bool:
        return not any(self.q_spectrum)


def directions_to_coeffs(w: np.ndarray, n_modes: int) -> np.ndarray:
    """Map real direction amplitudes (..., D) to half-spectrum coefficients.

    Directions with wavenumber above ``n_modes`` are dropped (Galerkin cut).
    """
    if w.shape[-1] % 2 == 0 and w.shape[-1]:
        # a trailing cos direction without its sin partner
        w = np.concatenate([w, np.zeros(w.shape[:-1] + (1,))], axis=-1)
    d = w.shape[-1]
    out = np.zeros(w.shape[:-1] + (n_modes + 1,), dtype=complex)
    if d == 0:
        return out
    out[..., 0] = w[..., 0]
    k_max = min((d - 1) // 2, n_modes)
    if k_max >= 1:
        cos = w[..., 1 : 2 * k_max : 2]
        sin = w[..., 2 : 2 * k_max + 1 : 2]
        out[..., 1 : k_max + 1] = (cos - 1j * sin) / np.sqrt(2.0)
    return out


def basis_field(grid: TorusGrid, index: int) -> SpectralField:
    """The L^2-normalised real basis function with direction ``index``."""
    w = np.zeros(index + 1)
    w[index] = 1.0
    return SpectralField(grid, directions_to_coeffs(w, grid.n_modes))


def sample_wiener_increment(spec: WienerSpec, dt: float, rng: np.random.Generator,
                            grid: TorusGrid) -> SpectralField:
    """Delta W = sum_k sqrt(q_k dt) zeta_k e_k projected onto the grid's band."""
    if not dt > 0:
        raise ConfigurationError("dt must be positive")
    z = rng.standard_normal(spec.n_directions)
    return SpectralField(grid, directions_to_coeffs(np.sqrt(spec.direction_q() * dt) * z,
                                                    grid.n_modes))


# --- marks and Poisson random measure ------------------------------------


@dataclass(frozen=True)
class MarkDistribution:
    """Scalar mark law.

    kinds: ``uniform(a, b)`` on [a, b); ``symmetric_uniform(a, b)`` the same
    with an independent random sign; ``pareto(alpha)`` with |xi| >= 1 and a
    random sign.
    """

    kind: str = "uniform"
    a: float = 0.0
    b: float = 1.0
    alpha: float = 3.0

    def __post_init__(self):
        if self.kind not in ("uniform", "symmetric_uniform", "pareto"):
            raise ConfigurationError(f"unknown mark distribution {self.kind!r}")
        if self.kind != "pareto" and not self.a < self.b:
            raise ConfigurationError("mark bounds need a < b")
        if self.kind == "symmetric_uniform" and self.a < 0:
            raise ConfigurationError("symmetric_uniform magnitudes need a >= 0")
        if self.kind == "pareto" and not self.alpha > 0:
            raise ConfigurationError("pareto alpha must be positive")

    def abs_range(self) -> tuple[float, float]:
        if self.kind == "pareto":
            return 1.0, math.inf
        if self.kind == "symmetric_uniform":
            return self.a, self.b
        hi = max(abs(self.a), abs(self.b))
        return (min(abs(self.a), abs(self.b)) if self.a * self.b > 0 else 0.0), hi

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        if self.kind == "uniform":
            return rng.uniform(self.a, self.b, n)
        if self.kind == "symmetric_uniform":
            mag = rng.uniform(self.a, self.b, n)
            return np.where(rng.random(n) < 0.5, -mag, mag)
        mag = (1.0 - rng.random(n)) ** (-1.0 / self.alpha)
        return np.where(rng.random(n) < 0.5, -mag, mag)

    def moment(self, p: int) -> float:
        """E[xi^p] in closed form."""
        if self.kind == "uniform":
            return (self.b ** (p + 1) - self.a ** (p + 1)) / ((p + 1) * (self.b - self.a))
        if p % 2:
            return 0.0
        if self.kind == "symmetric_uniform":
            return (self.b ** (p + 1) - self.a ** (p + 1)) / ((p + 1) * (self.b - self.a))
        return self.alpha / (self.alpha - p) if p < self.alpha else math.inf

    @property
    def mean(self) -> float:
        return self.moment(1)


@dataclass(frozen=True)
class LevySpec:
    rate: float = 0.0
    mark: MarkDistribution = field(default_factory=lambda: MarkDistribution("uniform", 0.2, 0.8))
    large_rate: float = 0.0
    large_mark: MarkDistribution = field(default_factory=lambda: MarkDistribution("pareto", alpha=3.0))

    def __post_init__(self):
        if not (0 <= self.rate < math.inf) or not (0 <= self.large_rate < math.inf):
            raise ConfigurationError("jump rates must be finite and >= 0")
        if self.mark.abs_range()[1] > 1.0:
            raise ConfigurationError("small marks must satisfy |xi| < 1")
        if self.large_mark.abs_range()[0] < 1.0:
            raise ConfigurationError("large marks must satisfy |xi| >= 1")

    @property
    def is_zero(self) -> bool:
        return self.rate == 0.0 and self.large_rate == 0.0


@dataclass(frozen=True)
class JumpEvent:
    time: float
    mark: float
    is_large: bool


def _poisson_arrivals(rate: float, marks: MarkDistribution, horizon: float,
                      rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    if rate == 0.0:
        return np.zeros(0), np.zeros(0)
    n = rng.poisson(rate * horizon)
    # T - U(0, T) lies in (0, T]
    times = np.sort(horizon - rng.uniform(0.0, horizon, n))
    return times, marks.sample(rng, n)


def sample_jump_arrays(spec: LevySpec, horizon: float, rng_small: np.random.Generator,
                       rng_large: np.random.Generator | None = None):
    """Small and large arrivals as ``(times, marks)`` pairs."""
    if not horizon > 0:
        raise ConfigurationError("horizon must be positive")
    small = _poisson_arrivals(spec.rate, spec.mark, horizon, rng_small)
    large = _poisson_arrivals(spec.large_rate, spec.large_mark, horizon,
                              rng_small if rng_large is None else rng_large)
    return small, large


def sample_jump_times(spec: LevySpec, horizon: float, rng: np.random.Generator,
                      rng_large: np.random.Generator | None = None) -> list[JumpEvent]:
    """Merged, time-sorted small and large jump events on (0, horizon]."""
    (ts, ms), (tl, ml) = sample_jump_arrays(spec, horizon, rng, rng_large)
    events = [JumpEvent(float(t), float(m), False) for t, m in zip(ts, ms)]
    events += [JumpEvent(float(t), float(m), True) for t, m in zip(tl, ml)]
    events.sort(key=lambda e: e.time)
    return events


JUMP_RECORD = np.dtype([("time", "<f8"), ("mark", "<f8"), ("is_large", "u1")])


def dump_jump_events(events: list[JumpEvent], path) -> None:
    """Packed little-endian records: float64 time, float64 mark, uint8 is_large."""
    arr = np.array([(e.time, e.mark, e.is_large) for e in events], dtype=JUMP_RECORD)
    with open(path, "wb") as fh:
        fh.write(arr.tobytes())


def load_jump_events(path) -> list[JumpEvent]:
    with open(path, "rb") as fh:
        arr = np.frombuffer(fh.read(), dtype=JUMP_RECORD)
    return [JumpEvent(float(r["time"]), float(r["mark"]), bool(r["is_large"])) for r in arr]


# --- coefficient presets --------------------------------------------------


def profile_coeffs(terms, n_modes: int) -> np.ndarray:
    """Half spectrum of sum a*cos(kx) + b*sin(kx) over ``terms = [(k, a, b), ...]``."""
    c = np.zeros(n_modes + 1, dtype=complex)
    for k, a, b in terms:
        k = int(k)
        if k > n_modes:
            continue
        if k == 0:
            c[0] += a * np.sqrt(2.0 * np.pi)
        else:
            c[k] += np.sqrt(np.pi / 2.0) * (a - 1j * b)
    return c


G_KINDS = ("none", "additive", "linear_multiplicative", "quadratic_multiplicative")
K_KINDS = ("none", "additive_mark", "linear_mark")


@dataclass(frozen=True)
class CoefficientPreset:
    """G, K and large-jump coefficients.

    ``sigma[k]`` scales Wiener wavenumber k. The multiplicative G kinds scale
    the additive operator by ``1 + beta_g * l(u)`` (linear) or
    ``1 + beta_g * l(u)**2`` (quadratic; violates linear growth and exists as
    a negative control) where ``l(u) = (u, e_j)`` is the L^2 coordinate of u
    along the basis direction ``coupling_direction`` (default cos(x)/sqrt(pi)).
    K kinds: ``additive_mark`` gives xi*psi, ``linear_mark`` xi*(psi + beta_k u).
    """

    g_kind: str = "none"
    sigma: tuple[float, ...] = ()
    beta_g: float = 0.0
    coupling_direction: int = 1
    k_kind: str = "none"
    psi: tuple[tuple[float, float, float], ...] = ((1, 0.0, 1.0),)
    beta_k: float = 0.0
    large_kind: str = "none"
    large_psi: tuple[tuple[float, float, float], ...] = ((1, 0.0, 1.0),)
    beta_large: float = 0.0

    def __post_init__(self):
        if self.g_kind not in G_KINDS:
            raise ConfigurationError(f"unknown g_kind {self.g_kind!r}")
        for name in ("k_kind", "large_kind"):
            if getattr(self, name) not in K_KINDS:
                raise ConfigurationError(f"unknown {name} {getattr(self, name)!r}")
        object.__setattr__(self, "sigma", tuple(float(s) for s in self.sigma))
        object.__setattr__(self, "psi", tuple(tuple(t) for t in self.psi))
        object.__setattr__(self, "large_psi", tuple(tuple(t) for t in self.large_psi))

    @property
    def is_multiplicative(self) -> bool:
        return self.g_kind in ("linear_multiplicative", "quadratic_multiplicative") and self.beta_g != 0


def _sigma_per_direction(preset: CoefficientPreset, wiener: WienerSpec) -> np.ndarray:
    k = wiener.direction_wavenumbers()
    sig = np.zeros(max(wiener.mode_count, 1))
    n = min(len(preset.sigma), wiener.mode_count)
    sig[:n] = preset.sigma[:n]
    return sig[k] if k.size else np.zeros(0)


def coupling_value(preset: CoefficientPreset, coeffs: np.ndarray) -> np.ndarray:
    """l(u): L^2 coordinate of u along the coupling basis direction."""
    j = preset.coupling_direction
    if j == 0:
        return coeffs[..., 0].real
    k = (j + 1) // 2
    if k >= coeffs.shape[-1]:
        return np.zeros(coeffs.shape[:-1])
    c = coeffs[..., k]
    # cos direction: sqrt(2) Re c ; sin direction: -sqrt(2) Im c
    return np.sqrt(2.0) * (c.real if j % 2 else -c.imag)


def g_scale(preset: CoefficientPreset, coeffs: np.ndarray) -> np.ndarray:
    """Scalar factor multiplying the additive G operator at state ``coeffs``."""
    if preset.g_kind == "none":
        return np.zeros(coeffs.shape[:-1])
    if preset.g_kind == "additive" or preset.beta_g == 0:
        return np.ones(coeffs.shape[:-1])
    ell = coupling_value(preset, coeffs)
    if preset.g_kind == "linear_multiplicative":
        return 1.0 + preset.beta_g * ell
    return 1.0 + preset.beta_g * ell**2


def g_apply_array(preset: CoefficientPreset, wiener: WienerSpec, coeffs: np.ndarray,
                  dw: np.ndarray) -> np.ndarray:
    """G(u) dW for batched states ``coeffs`` (..., N+1) and directions dw (..., D)."""
    n_modes = coeffs.shape[-1] - 1
    add = directions_to_coeffs(dw * _sigma_per_direction(preset, wiener), n_modes)
    return g_scale(preset, coeffs)[..., None] * add


def apply_G(preset: CoefficientPreset, wiener: WienerSpec, u: SpectralField,
            direction) -> SpectralField:
    """G(u) applied to a U-direction.

    ``direction`` is either a basis index j (giving G(u) e_j for the
    L^2-normalised basis element e_j) or an array of direction amplitudes.
    """
    if np.isscalar(direction):
        dw = np.zeros(wiener.n_directions)
        dw[int(direction)] = 1.0
    else:
        dw = np.asarray(direction, dtype=float)
    return SpectralField(u.grid, g_apply_array(preset, wiener, u.coeffs, dw))


def hs_norm_sq_G(preset: CoefficientPreset, wiener: WienerSpec, u: SpectralField,
                 s: float, method: str = "closed") -> float:
    """||G(u)||^2 in HS(U_0, H^s) using the U_0 basis sqrt(q_j) e_j.

    ``method='sum'`` evaluates the defining series direction by direction;
    ``'closed'`` uses scale(u)^2 * sum_j q_j sigma_j^2 (1+k_j^2)^s.
    """
    q = wiener.direction_q()
    if method == "sum":
        total = 0.0
        for j in range(wiener.n_directions):
            g = apply_G(preset, wiener, u, j)
            total += q[j] * float(hs_norm_array(g.coeffs, s)) ** 2
        return total
    k = wiener.direction_wavenumbers()
    keep = k <= u.grid.n_modes
    sig = _sigma_per_direction(preset, wiener)
    base = float(np.sum((q * sig**2 * (1.0 + k**2) ** s)[keep]))
    return float(g_scale(preset, u.coeffs)) ** 2 * base


def _k_field_array(kind: str, terms, beta: float, coeffs: np.ndarray) -> np.ndarray:
    if kind == "none":
        return np.zeros_like(coeffs)
    psi = profile_coeffs(terms, coeffs.shape[-1] - 1)
    if kind == "additive_mark" or beta == 0:
        return np.broadcast_to(psi, coeffs.shape).copy()
    return psi + beta * coeffs


def k_field_array(preset: CoefficientPreset, coeffs: np.ndarray) -> np.ndarray:
    """k(u) with K(u, xi) = xi * k(u)."""
    return _k_field_array(preset.k_kind, preset.psi, preset.beta_k, coeffs)


def large_field_array(preset: CoefficientPreset, coeffs: np.ndarray) -> np.ndarray:
    return _k_field_array(preset.large_kind, preset.large_psi, preset.beta_large, coeffs)


def apply_K(preset: CoefficientPreset, u: SpectralField, mark: float) -> SpectralField:
    if not 0.0 < abs(mark) < 1.0:
        raise DomainError(f"small-jump mark {mark} outside E_0 = {{0 < |xi| < 1}}")
    return SpectralField(u.grid, mark * k_field_array(preset, u.coeffs))


def compensator_drift(preset: CoefficientPreset, spec: LevySpec, u: SpectralField) -> SpectralField:
    """Integral of K(u, xi) over E_0 against nu, i.e. rate * E[xi] * k(u)."""
    if spec.rate == 0.0 or preset.k_kind == "none":
        return SpectralField.zeros(u.grid)
    return SpectralField(u.grid, spec.rate * spec.mark.mean * k_field_array(preset, u.coeffs))


def apply_large_jump(preset: CoefficientPreset, u: SpectralField, mark: float) -> SpectralField:
    """Post-jump state u + Kscr(u, mark) for a mark with |mark| >= 1."""
    if abs(mark) < 1.0:
        raise DomainError(f"large-jump mark {mark} lies in E_0")
    return SpectralField(u.grid, u.coeffs + mark * large_field_array(preset, u.coeffs))


def k_second_moment(preset: CoefficientPreset, spec: LevySpec, u: SpectralField,
                    s: float = 0.0) -> float:
    """Closed form of the integral of |K(u, xi)|^2_{H^s} d nu over E_0."""
    if spec.rate == 0.0 or preset.k_kind == "none":
        return 0.0
    k = k_field_array(preset, u.coeffs)
    return spec.rate * spec.mark.moment(2) * float(hs_norm_array(k, s)) ** 2


# --- assumption validation ------------------------------------------------


@dataclass
class AssumptionReport:
    kappa1: float
    kappa2: float
    lipschitz: float
    passed: bool
    ratios: dict = field(default_factory=dict)
    reasons: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "kappa1": self.kappa1,
            "kappa2": self.kappa2,
            "lipschitz": self.lipschitz,
            "passed": self.passed,
            "ratios": self.ratios,
            "reasons": list(self.reasons),
        }


_NORM_LEVELS = np.logspace(-2, 3, 41)


def _probe_fields(grid: TorusGrid, preset: CoefficientPreset, sample_count: int,
                  rng: np.random.Generator, s: float) -> tuple[np.ndarray, np.ndarray]:
    """Random fields over a log range of H^s norms, and worst-case directions.

    The probes are the coupling direction of G and the K profile +-psi,
    scaled over the same norm range; the suprema of the linear presets'
    ratios are attained along them.
    """
    amps = 10.0 ** rng.uniform(-2.0, 3.0, sample_count)
    rand = np.array([random_field(grid, rng, s=s, amplitude=a).coeffs for a in amps])
    dirs = [directions_to_coeffs(np.eye(preset.coupling_direction + 1)[preset.coupling_direction],
                                 grid.n_modes)]
    psi = profile_coeffs(preset.psi, grid.n_modes)
    if np.any(psi):
        dirs += [psi, -psi]
    probes = []
    for d in dirs:
        nd = float(hs_norm_array(d, s))
        if nd > 0:
            probes.extend(d * (a / nd) for a in _NORM_LEVELS)
    return rand, np.array(probes).reshape(-1, grid.n_modes + 1)


def _growth_is_bounded(norms: np.ndarray, ratios: np.ndarray) -> bool:
    """False when the max ratio keeps increasing over the top two norm decades."""
    top = norms.max()
    d1 = ratios[(norms > top / 10)]
    d2 = ratios[(norms > top / 100) & (norms <= top / 10)]
    if d1.size == 0 or d2.size == 0:
        return True
    return not (d1.max() > 4.0 * max(d2.max(), 1e-300))


def _estimate(preset, wiener, levy, grid, sample_count, rng):
    k1 = k2 = lip = 0.0
    ratios = {"coincident_pairs_skipped": 0}
    bounded = True
    m2 = levy.mark.moment(2) if levy.rate > 0 else 0.0
    m8 = levy.mark.moment(8) if levy.rate > 0 else 0.0
    q = wiener.direction_q()
    kdir = wiener.direction_wavenumbers()
    sig = _sigma_per_direction(preset, wiener)
    keep = kdir <= grid.n_modes
    for s in (0.0, 1.0, 2.0):
        rand, probes = _probe_fields(grid, preset, sample_count, rng, s)
        c = np.concatenate([rand, probes])
        base = float(np.sum((q * sig**2 * (1.0 + kdir**2) ** s)[keep]))
        norms = hs_norm_array(c, s)
        kf = k_field_array(preset, c)
        r1 = g_scale(preset, c) ** 2 * base / (1.0 + norms**2)
        r2 = levy.rate * m2 * hs_norm_array(kf, s) ** 2 / (1.0 + norms**2)
        bounded &= _growth_is_bounded(norms, r1) and _growth_is_bounded(norms, r2)
        k1 = max(k1, float(r1.max()))
        k2 = max(k2, float(r2.max()))
        ratios[f"wiener_growth_s{int(s)}"] = float(r1.max())
        ratios[f"jump_growth_s{int(s)}"] = float(r2.max())

        # Lipschitz pairs: random (v, w) plus w = v + probe
        v = np.concatenate([rand, rand[np.arange(len(probes)) % len(rand)]])
        w = np.concatenate([rand[rng.permutation(len(rand))], v[len(rand):] + probes])
        dn = hs_norm_array(w - v, s)
        ok = dn > 0
        ratios["coincident_pairs_skipped"] += int((~ok).sum())
        g_diff = (g_scale(preset, v) - g_scale(preset, w)) ** 2 * base
        k_diff = levy.rate * m2 * hs_norm_array(k_field_array(preset, v) - k_field_array(preset, w), s) ** 2
        r4 = (g_diff + k_diff)[ok] / dn[ok] ** 2
        lip = max(lip, float(r4.max()) if r4.size else 0.0)
        ratios[f"lipschitz_s{int(s)}"] = float(r4.max()) if r4.size else 0.0

        if s == 0.0:
            r3 = levy.rate * m8 * hs_norm_array(kf, 0.0) ** 8 / (1.0 + norms**8)
            bounded &= _growth_is_bounded(norms, r3)
            k2 = max(k2, float(r3.max()))
            ratios["jump_moment8"] = float(r3.max())
    return k1, k2, lip, ratios, bounded


def validate_assumptions(preset: CoefficientPreset, wiener: WienerSpec, levy: LevySpec,
                         grid: TorusGrid, sample_count: int = 200,
                         rng: np.random.Generator | None = None,
                         tolerance: float = 0.10) -> AssumptionReport:
    """Estimate kappa1, kappa2 and the Lipschitz constant of the noise coefficients.

    Constants are the largest observed ratios over random fields spanning
    norms 1e-2..1e3 for s = 0, 1, 2 (plus single-direction probes along the
    coupling direction and the K profile). The preset passes when all
    constants are finite, the ratios do not grow over the top norm decades and
    a second estimate with twice the samples agrees within ``tolerance``.
    """
    if sample_count < 100:
        raise ConfigurationError("sample_count >= 100 required")
    rng = np.random.default_rng(0) if rng is None else rng
    k1, k2, lip, ratios, bounded = _estimate(preset, wiener, levy, grid, sample_count, rng)
    k1b, k2b, lipb, _, bounded_b = _estimate(preset, wiener, levy, grid, 2 * sample_count, rng)
    reasons = []
    if not bounded or not bounded_b:
        reasons.append("unbounded ratio growth")
    vals = (k1, k2, lip, k1b, k2b, lipb)
    if not all(math.isfinite(v) for v in vals):
        reasons.append("non-finite constant")
    else:
        for name, a, b in (("kappa1", k1, k1b), ("kappa2", k2, k2b), ("lipschitz", lip, lipb)):
            ref = max(a, b)
            if ref > 0 and abs(a - b) > tolerance * ref:
                reasons.append(f"{name} unstable under doubling ({a:.4g} vs {b:.4g})")
    ratios["doubled"] = {"kappa1": k1b, "kappa2": k2b, "lipschitz": lipb}
    return AssumptionReport(max(k1, k1b), max(k2, k2b), max(lip, lipb), not reasons, ratios, reasons)


# --- shipped presets ------------------------------------------------------

# name -> (coefficients, Wiener covariance, jump law); all pass validate_assumptions
SHIPPED_PRESETS: dict[str, tuple[CoefficientPreset, WienerSpec, LevySpec]] = {
    "additive": (
        CoefficientPreset(g_kind="additive", sigma=(0.0, 0.3, 0.2, 0.1)),
        WienerSpec((0.0, 1.0, 1.0, 1.0)),
        LevySpec(),
    ),
    "additive_jumps": (
        CoefficientPreset(g_kind="additive", sigma=(0.0, 0.3, 0.2, 0.1), k_kind="additive_mark"),
        WienerSpec((0.0, 1.0, 1.0, 1.0)),
        LevySpec(rate=5.0),
    ),
    "linear_multiplicative": (
        CoefficientPreset(g_kind="linear_multiplicative", sigma=(0.0, 0.5), beta_g=1.0),
        WienerSpec((0.0, 1.0)),
        LevySpec(),
    ),
    "linear_mark": (
        CoefficientPreset(g_kind="additive", sigma=(0.0, 0.3), k_kind="linear_mark", beta_k=0.5),
        WienerSpec((0.0, 1.0)),
        LevySpec(rate=2.0, mark=MarkDistribution("symmetric_uniform", 0.1, 0.6)),
    ),
    "large_jumps": (
        CoefficientPreset(g_kind="additive", sigma=(0.0, 0.3), k_kind="additive_mark",
                          large_kind="additive_mark", beta_large=0.0),
        WienerSpec((0.0, 1.0)),
        LevySpec(rate=3.0, large_rate=0.5),
    ),
}
