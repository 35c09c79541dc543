"""Parameter sweeps and the working-point optimiser.

Every sweep produces a `SweepResult`: an ordered, column-labelled table of
floats plus a metadata snapshot, ready for CSV serialisation.  Rows are
computed independently per point, so running them across a thread pool gives
bit-identical results to the serial path; the worker count defaults to the
``QPAMP_WORKERS`` environment variable or, failing that, the machine's
available parallelism.

Column values are in display units (mV, pF, GHz, MHz, Hz, dB) as indicated
by the column names; everything inside the physics modules stays SI.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Callable, Sequence

import numpy as np

from ._version import __version__
from .amplifier import RateBudget, rate_budget, reflection
from .errors import ConfigurationError, NumericalError, ThresholdError
from .material import MaterialParams, dielectric_response
from .resonator import (
    CircuitParams,
    DriveSpec,
    kerr_strength,
    mode,
    three_wave_strength,
)
from .varactor import VaractorDesign

__all__ = [
    "SWEEP_VARIABLES",
    "SweepSpec",
    "SweepResult",
    "Optimum",
    "default_workers",
    "bias_sweep",
    "dielectric_sweep",
    "geometry_sweep",
    "maximize_3wm",
]

SWEEP_VARIABLES = ("bias_voltage", "bias_field", "plate_separation", "pump_ratio")

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class SweepSpec:
    """One swept variable over [start, stop] with count points.

    A single-point sweep (count = 1, taken at ``start``) is allowed as a
    degenerate case; otherwise ``start < stop`` is required.  Log spacing
    needs a strictly positive start.
    """

    variable: str
    start: float
    stop: float
    count: int
    spacing: str = "linear"

    def __post_init__(self):
        if self.variable not in SWEEP_VARIABLES:
            raise ConfigurationError(
                f"unknown sweep variable {self.variable!r}; choose from {SWEEP_VARIABLES}"
            )
        if self.spacing not in ("linear", "log"):
            raise ConfigurationError(f"spacing must be 'linear' or 'log', got {self.spacing!r}")
        if self.count < 1:
            raise ConfigurationError("sweep count must be >= 1")
        if self.count > 1 and not self.start < self.stop:
            raise ConfigurationError(
                f"sweep range is empty: start {self.start} must be < stop {self.stop}"
            )
        if self.spacing == "log" and self.start <= 0.0:
            raise ConfigurationError("log spacing requires start > 0")

    def points(self) -> list[float]:
        if self.count == 1:
            return [self.start]
        if self.spacing == "log":
            return [float(x) for x in np.geomspace(self.start, self.stop, self.count)]
        return [float(x) for x in np.linspace(self.start, self.stop, self.count)]


@dataclass(frozen=True)
class SweepResult:
    """Ordered table of sweep rows plus a metadata snapshot."""

    variable: str
    columns: tuple[str, ...]
    rows: tuple[tuple[float, ...], ...]
    metadata: dict[str, str]

    def column(self, name: str) -> list[float]:
        i = self.columns.index(name)
        return [row[i] for row in self.rows]


@dataclass(frozen=True)
class Optimum:
    """Result of the three-wave working-point search."""

    v0_max: float
    xi_max: float


def default_workers() -> int:
    raw = os.environ.get("QPAMP_WORKERS")
    if raw is None:
        return os.cpu_count() or 1
    try:
        workers = int(raw)
    except ValueError:
        raise ConfigurationError(f"QPAMP_WORKERS must be an integer, got {raw!r}") from None
    if workers < 1:
        raise ConfigurationError("QPAMP_WORKERS must be >= 1")
    return workers


def _map_points(func: Callable, points: Sequence[float], workers: int | None) -> list:
    if workers is None:
        workers = default_workers()
    if workers <= 1 or len(points) <= 1:
        return [func(p) for p in points]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, points))


def _metadata(spec: SweepSpec, **extra: object) -> dict[str, str]:
    meta = {
        "qpamp_version": __version__,
        "variable": spec.variable,
        "start": repr(spec.start),
        "stop": repr(spec.stop),
        "count": str(spec.count),
        "spacing": spec.spacing,
    }
    meta.update({key: str(value) for key, value in extra.items()})
    return meta


def bias_sweep(
    spec: SweepSpec,
    design: VaractorDesign,
    circuit: CircuitParams,
    drive: DriveSpec,
    workers: int | None = None,
) -> SweepResult:
    """Everything-vs-bias table: dielectric state, mode, couplings, rates, gain.

    The swept variable must be ``bias_voltage`` (values in volts).  The
    ``peak_gain_db`` column is the reflection gain at the pumped center
    frequency for the given drive; rows where that drive sits at or beyond
    the oscillation threshold get NaN there.
    """
    if spec.variable != "bias_voltage":
        raise ConfigurationError(f"bias_sweep needs variable 'bias_voltage', got {spec.variable!r}")

    def row(v0: float) -> tuple[float, ...]:
        resp = dielectric_response(design.bias_field(v0), design.material)
        coeffs = mode(v0, design, circuit)
        xi = abs(three_wave_strength(v0, drive, design, circuit))
        k_eff = kerr_strength(v0, design, circuit)
        rates = RateBudget(
            omega0=coeffs.omega0,
            kappa_int=coeffs.omega0 * resp.loss_tangent,
            kappa_ext=coeffs.omega0 / circuit.q_ext,
        )
        try:
            r_center = reflection(rates.omega_p / 2.0, xi, rates)
            peak_db = 20.0 * math.log10(abs(r_center))
        except ThresholdError:
            peak_db = math.nan
        cap = coeffs.q_zpf / coeffs.v_zpf
        return (
            v0 * 1e3,
            resp.eps_rel,
            resp.loss_tangent,
            cap * 1e12,
            coeffs.omega0 / _TWO_PI / 1e9,
            xi / _TWO_PI / 1e6,
            k_eff / _TWO_PI,
            rates.kappa_int / _TWO_PI / 1e6,
            rates.kappa_ext / _TWO_PI / 1e6,
            peak_db,
        )

    rows = tuple(_map_points(row, spec.points(), workers))
    return SweepResult(
        variable=spec.variable,
        columns=(
            "v0_mv",
            "eps_r",
            "tan_delta",
            "c_pf",
            "f0_ghz",
            "xi_mhz",
            "keff_hz",
            "kappa_int_mhz",
            "kappa_ext_mhz",
            "peak_gain_db",
        ),
        rows=rows,
        metadata=_metadata(
            spec,
            plate_area_m2=repr(design.plate_area),
            thickness_m=repr(design.thickness),
            inductance_h=repr(circuit.inductance),
            q_ext=repr(circuit.q_ext),
            v_ac_v=repr(drive.v_ac),
        ),
    )


def dielectric_sweep(
    material: MaterialParams, spec: SweepSpec, workers: int | None = None
) -> SweepResult:
    """Permittivity and loss budget versus bias field (sweep values in V/m)."""
    if spec.variable != "bias_field":
        raise ConfigurationError(
            f"dielectric_sweep needs variable 'bias_field', got {spec.variable!r}"
        )

    def row(field: float) -> tuple[float, ...]:
        resp = dielectric_response(field, material)
        return (
            field / 1e6,
            resp.eps_rel,
            resp.loss_tangent,
            resp.tan_delta_1,
            resp.tan_delta_2,
            resp.tan_delta_3,
        )

    rows = tuple(_map_points(row, spec.points(), workers))
    return SweepResult(
        variable=spec.variable,
        columns=(
            "E_V_per_um",
            "eps_r",
            "tan_delta",
            "tan_delta_1",
            "tan_delta_2",
            "tan_delta_3",
        ),
        rows=rows,
        metadata=_metadata(spec, eps00_rel=repr(material.eps00_rel)),
    )


_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def _golden_max(func: Callable[[float], float], a: float, b: float, xtol: float):
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = func(c), func(d)
    while (b - a) > xtol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = func(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = func(d)
    x = 0.5 * (a + b)
    return x, func(x)


def maximize_3wm(
    design: VaractorDesign,
    circuit: CircuitParams,
    drive: DriveSpec,
    v_range: tuple[float, float] = (0.0, 0.25),
    grid_points: int = 241,
    xtol: float = 1e-6,
) -> Optimum:
    """Find the bias that maximises |xi|: coarse grid scan + golden-section refine.

    The grid has at least 200 points; the golden-section stage narrows the
    best bracket down to ``xtol`` (default 1 microvolt).  A flat objective
    (e.g. zero pump amplitude) raises `NumericalError`.
    """
    lo, hi = v_range
    if not lo < hi:
        raise ConfigurationError(f"search range is empty: {v_range}")

    def objective(v0: float) -> float:
        return abs(three_wave_strength(v0, drive, design, circuit))

    grid = np.linspace(lo, hi, max(grid_points, 200))
    values = [objective(v) for v in grid]
    i_best = int(np.argmax(values))
    if values[i_best] == 0.0:
        raise NumericalError("three-wave strength is flat over the search range")
    a = float(grid[max(i_best - 1, 0)])
    b = float(grid[min(i_best + 1, len(grid) - 1)])
    v_opt, f_opt = _golden_max(objective, a, b, xtol)
    if f_opt < values[i_best]:
        v_opt, f_opt = float(grid[i_best]), values[i_best]
    return Optimum(v0_max=v_opt, xi_max=f_opt)


def geometry_sweep(
    spec: SweepSpec,
    design: VaractorDesign,
    circuit: CircuitParams,
    drive: DriveSpec,
    workers: int | None = None,
) -> SweepResult:
    """Re-optimised couplings versus film thickness at fixed plate_area/thickness.

    Each row rescales the reference design to a new plate separation d
    (keeping A/d, and with it the zero-bias capacitance, fixed), re-runs the
    working-point search over a fixed bias-field window, and records the
    optimum alongside the zero-bias Kerr strength.  The swept variable must
    be ``plate_separation`` (values in metres).
    """
    if spec.variable != "plate_separation":
        raise ConfigurationError(
            f"geometry_sweep needs variable 'plate_separation', got {spec.variable!r}"
        )
    area_ratio = design.plate_area / design.thickness
    # Keep the *field* window of the reference search fixed so the optimum
    # stays inside the trusted range as the film thickens.
    field_max = 0.25 / design.thickness

    def row(thickness: float) -> tuple[float, ...]:
        scaled = replace(
            design,
            plate_area=area_ratio * thickness,
            thickness=thickness,
            v_max=design.v_max * thickness / design.thickness,
        )
        best = maximize_3wm(scaled, circuit, drive, v_range=(0.0, field_max * thickness))
        f0 = mode(best.v0_max, scaled, circuit).omega0 / _TWO_PI
        k_zero = kerr_strength(0.0, scaled, circuit)
        return (
            thickness * 1e9,
            best.v0_max * 1e3,
            f0 / 1e9,
            best.xi_max / _TWO_PI / 1e6,
            k_zero / _TWO_PI,
            best.xi_max / k_zero,
        )

    rows = tuple(_map_points(row, spec.points(), workers))
    return SweepResult(
        variable=spec.variable,
        columns=(
            "d_nm",
            "v0_max_mv",
            "f0_ghz",
            "xi_max_mhz",
            "keff_zero_hz",
            "xi_over_keff",
        ),
        rows=rows,
        metadata=_metadata(
            spec,
            area_per_thickness_m=repr(area_ratio),
            inductance_h=repr(circuit.inductance),
            q_ext=repr(circuit.q_ext),
            v_ac_v=repr(drive.v_ac),
        ),
    )
