"""Reflection gain of the degenerate parametric amplifier.

The pumped resonator is probed in reflection through a single external port.
With total linewidth ``kappa = kappa_int + kappa_ext``, pump detuning
``delta0 = omega0 - omega_p / 2`` and signal offset ``dw = omega - omega_p/2``,
the reflection coefficient below threshold is

    R(omega) = [kappa_ext * kappa / 2 + i kappa_ext (delta0 + dw)]
               / [delta0**2 + (kappa/2 + i dw)**2 - |xi|**2]  -  1.

``|R| > 1`` is parametric gain; the pole at ``|xi|**2 = delta0**2 +
(kappa/2)**2`` is the oscillation threshold and is reported as an error
rather than an infinity.

Internal loss comes from the dielectric loss tangent at the working point
(``kappa_int = omega0 * tan_delta``); the external coupling is specified
through a fixed external quality factor (``kappa_ext = omega0 / q_ext``).

`compression_estimate` turns the Kerr-limited photon budget ``N = kappa /
k_eff`` into a circulating-power scale, reported in two common conventions
(ordinary frequencies f * (kappa/2pi), and angular frequencies omega *
kappa) since both appear in the literature and they differ by ~16 dB.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.constants import hbar
from scipy.optimize import brentq

from .errors import ThresholdError
from .material import loss_tangent
from .resonator import CircuitParams, DriveSpec, mode, three_wave_strength
from .varactor import VaractorDesign

__all__ = [
    "RateBudget",
    "GridSpec",
    "GainProfile",
    "CompressionEstimate",
    "rate_budget",
    "reflection",
    "profile_from_rates",
    "gain_profile",
    "compression_estimate",
]


@dataclass(frozen=True)
class RateBudget:
    """Linewidth budget of the amplifier mode at one working point.

    ``delta`` is the half-pump detuning omega0 - omega_p/2 (zero for the
    standard degenerate operating point, where the pump sits at exactly
    twice the mode frequency).
    """

    omega0: float
    kappa_int: float
    kappa_ext: float
    delta: float = 0.0

    @property
    def kappa(self) -> float:
        return self.kappa_int + self.kappa_ext

    @property
    def omega_p(self) -> float:
        return 2.0 * (self.omega0 - self.delta)

    @property
    def q_int(self) -> float:
        return self.omega0 / self.kappa_int if self.kappa_int > 0.0 else math.inf

    @property
    def q_ext(self) -> float:
        return self.omega0 / self.kappa_ext


@dataclass(frozen=True)
class GridSpec:
    """Frequency grid for gain profiles: points spanning +- half_span_kappa * kappa."""

    count: int = 801
    half_span_kappa: float = 4.0

    def __post_init__(self):
        if self.count < 2:
            raise ValueError("grid needs at least 2 points")
        if not self.half_span_kappa > 0.0:
            raise ValueError("half_span_kappa must be positive")


@dataclass(frozen=True)
class GainProfile:
    """Sampled reflection curve plus its headline numbers.

    ``bandwidth`` is the full width [rad/s] between the half-power points
    around the peak, NaN when the profile has no 3-dB points inside the
    sampled span (flat or notch-like curves).
    """

    frequencies: np.ndarray
    reflection: np.ndarray
    peak_gain_db: float
    bandwidth: float
    pump_ratio: float

    @property
    def gain_db(self) -> np.ndarray:
        with np.errstate(divide="ignore"):
            return 20.0 * np.log10(np.abs(self.reflection))


@dataclass(frozen=True)
class CompressionEstimate:
    """Kerr-limited photon number and the corresponding circulating power."""

    n_photons: float
    p_dbm_ordinary: float
    p_dbm_angular: float


def rate_budget(
    v0: float, design: VaractorDesign, circuit: CircuitParams, delta: float = 0.0
) -> RateBudget:
    """Internal/external rates of the varactor resonator at bias v0."""
    omega0 = mode(v0, design, circuit).omega0
    tan_d = loss_tangent(design.bias_field(v0), design.material)
    return RateBudget(
        omega0=omega0,
        kappa_int=omega0 * tan_d,
        kappa_ext=omega0 / circuit.q_ext,
        delta=delta,
    )


def _check_threshold(xi_mag: float, rates: RateBudget) -> None:
    half_kappa = rates.kappa / 2.0
    if xi_mag * xi_mag >= rates.delta**2 + half_kappa**2:
        raise ThresholdError(xi_mag / half_kappa)


def reflection(omega, xi_mag: float, rates: RateBudget):
    """Complex reflection coefficient R(omega) below threshold.

    ``omega`` may be a scalar or an array [rad/s]; the return matches.
    """
    if xi_mag < 0.0:
        raise ValueError("xi_mag must be non-negative")
    _check_threshold(xi_mag, rates)
    dw = np.asarray(omega) - rates.omega_p / 2.0
    half_kappa = rates.kappa / 2.0
    numerator = rates.kappa_ext * half_kappa + 1j * rates.kappa_ext * (rates.delta + dw)
    denominator = rates.delta**2 + (half_kappa + 1j * dw) ** 2 - xi_mag * xi_mag
    result = numerator / denominator - 1.0
    return complex(result) if np.isscalar(omega) else result


def profile_from_rates(rates: RateBudget, xi_mag: float, grid: GridSpec = GridSpec()) -> GainProfile:
    """Sample the reflection curve around omega_p/2 for a given pump strength."""
    _check_threshold(xi_mag, rates)
    center = rates.omega_p / 2.0
    span = grid.half_span_kappa * rates.kappa
    frequencies = center + np.linspace(-span, span, grid.count)
    refl = reflection(frequencies, xi_mag, rates)
    power = np.abs(refl) ** 2
    i_peak = int(np.argmax(power))
    peak_power = float(power[i_peak])
    with np.errstate(divide="ignore"):
        peak_gain_db = float(10.0 * np.log10(peak_power))

    bandwidth = math.nan
    # A 3-dB width is only meaningful for a curve that peaks at the pumped
    # center and falls below half power inside the span.
    if i_peak == grid.count // 2 and grid.count % 2 == 1:
        half = peak_power / 2.0

        def drop(offset: float) -> float:
            r = reflection(center + offset, xi_mag, rates)
            return abs(r) ** 2 - half

        if drop(span) < 0.0:
            bandwidth = 2.0 * brentq(drop, 0.0, span, xtol=1e-6 * rates.kappa, maxiter=200)

    return GainProfile(
        frequencies=frequencies,
        reflection=refl,
        peak_gain_db=peak_gain_db,
        bandwidth=bandwidth,
        pump_ratio=xi_mag / (rates.kappa / 2.0),
    )


def gain_profile(
    v0: float,
    drive: DriveSpec,
    design: VaractorDesign,
    circuit: CircuitParams,
    grid: GridSpec = GridSpec(),
    delta: float = 0.0,
) -> GainProfile:
    """Gain profile of the physical design at bias v0 under the given pump drive."""
    rates = rate_budget(v0, design, circuit, delta=delta)
    xi = three_wave_strength(v0, drive, design, circuit)
    return profile_from_rates(rates, abs(xi), grid)


def compression_estimate(
    k_eff: float,
    rates: RateBudget,
    omega0: float | None = None,
    n_photons: float | None = None,
) -> CompressionEstimate:
    """Circulating-power scale where the Kerr shift starts to compress the gain.

    The photon budget defaults to ``N = kappa / k_eff`` (the occupation at
    which the cumulative Kerr detuning is one linewidth); pass ``n_photons``
    to evaluate the power for a chosen budget instead.

    Raises
    ------
    ValueError
        If ``k_eff`` is not positive (no Kerr limit to estimate).
    """
    if k_eff <= 0.0 and n_photons is None:
        raise ValueError("k_eff must be positive to set a Kerr-limited photon budget")
    w0 = rates.omega0 if omega0 is None else omega0
    n = rates.kappa / k_eff if n_photons is None else n_photons
    if n <= 0.0:
        raise ValueError("photon budget must be positive")
    two_pi = 2.0 * math.pi
    p_ordinary = n * hbar * (w0 / two_pi) * (rates.kappa / two_pi)
    p_angular = n * hbar * w0 * rates.kappa
    return CompressionEstimate(
        n_photons=n,
        p_dbm_ordinary=10.0 * math.log10(p_ordinary / 1e-3),
        p_dbm_angular=10.0 * math.log10(p_angular / 1e-3),
    )
