"""Quantum-paraelectric dielectric response at cryogenic temperature.

Field-tunable permittivity and loss tangent of incipient ferroelectrics
(SrTiO3- and KTaO3-class crystals) in the quantum-paraelectric regime,
following the modified Landau–Ginzburg–Devonshire treatment of a displacive
soft mode stabilised by quantum fluctuations.

The model reduces to three dimensionless quantities:

* ``eta``   -- barrier parameter set by the ratio of the quantum-fluctuation
  scale (Debye temperature) to the classical Curie temperature, with a weak
  thermal correction.  ``eta > 0`` is the quantum-paraelectric condition.
* ``lam``   -- normalised bias, combining the applied DC field with a static
  inhomogeneity floor ``lam_s`` that models frozen strain/composition
  disorder: ``lam = sqrt(lam_s**2 + (E/E_N)**2)``.
* ``G``     -- the soft-mode Green's function.  The relative permittivity is
  ``eps_r = eps00_rel * G(lam, eta)``.

``G`` follows from the real root ``y`` of the depressed cubic
``y**3 + 3*eta*y = 2*lam`` (``y`` is the normalised residual lattice
displacement) via ``G = 1 / (y**2 + eta)``.  Cardano's formula gives

    y = (s + lam)**(1/3) - (s - lam)**(1/3),    s = sqrt(lam**2 + eta**3)

Both differences in that expression cancel catastrophically somewhere
(``s - lam`` at large bias, ``u - w`` at small bias), so they are replaced by
the algebraically identical forms ``s - lam = eta**3 / (s + lam)`` and
``y = (u**3 - w**3) / (u**2 + u w + w**2) = 2 lam / (u**2 + w**2 + eta)``,
which are stable everywhere.

Loss is a sum of three small contributions, each proportional to a power of
``G``: multi-phonon absorption (``a1``, thermally activated), quasi-Debye
loss from the bias-induced displacement (``a2``), and charged-defect loss
(``a3``, requires a characterised defect density).

All inputs and outputs are SI; bias fields are in V/m.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError

__all__ = [
    "MaterialParams",
    "DielectricResponse",
    "STO",
    "KTO",
    "builtin_material",
    "eta",
    "normalized_bias",
    "greens",
    "displacement",
    "permittivity",
    "permittivity_derivatives",
    "dielectric_response",
    "loss_tangent",
]


@dataclass(frozen=True)
class MaterialParams:
    """Cryogenic parameter set of one quantum-paraelectric crystal.

    Parameters
    ----------
    eps00_rel : float
        Permittivity scale (relative units); ``eps_r = eps00_rel * G``.
    curie_temp : float
        Classical Curie temperature T_c [K].
    debye_temp : float
        Effective Debye temperature of the soft mode [K].
    renorm_field : float
        Normalising bias field E_N [V/m].
    inhomogeneity : float
        Static disorder floor ``lam_s`` of the normalised bias
        (dimensionless); sets the zero-bias saturation of the tuning curve.
    a1, a2 : float
        Loss coefficients for multi-phonon and quasi-Debye absorption.
    a3 : float or None
        Charged-defect loss coefficient; ``None`` when the defect channel
        has not been characterised for this crystal.
    defect_density : float
        Normalised charged-defect density; 0 for nominally pure crystals.
    temperature : float
        Operating temperature [K].  The low-temperature expansion used here
        requires ``temperature < debye_temp / 10``.
    """

    eps00_rel: float
    curie_temp: float
    debye_temp: float
    renorm_field: float
    inhomogeneity: float
    a1: float
    a2: float
    a3: float | None = None
    defect_density: float = 0.0
    temperature: float = 0.01

    def __post_init__(self):
        for name in ("eps00_rel", "curie_temp", "debye_temp", "renorm_field"):
            if not getattr(self, name) > 0.0:
                raise ConfigurationError(f"material parameter {name!r} must be positive")
        for name in ("inhomogeneity", "a1", "a2", "defect_density", "temperature"):
            if getattr(self, name) < 0.0:
                raise ConfigurationError(f"material parameter {name!r} must be non-negative")
        if self.a3 is not None and self.a3 < 0.0:
            raise ConfigurationError("material parameter 'a3' must be non-negative")
        if not self.temperature < self.debye_temp / 10.0:
            raise ConfigurationError(
                "low-temperature model requires temperature < debye_temp/10 "
                f"(got {self.temperature} K vs {self.debye_temp} K)"
            )


@dataclass(frozen=True)
class DielectricResponse:
    """Full dielectric state of a material at one bias field.

    ``loss_tangent`` is the total tan(delta); the three ``tan_delta_*``
    fields give the breakdown by mechanism.  ``gamma`` is the loss kernel
    ``loss_tangent / greens`` (the sum of per-mechanism kernels), useful
    when comparing crystals at different tuning points.
    """

    bias_field: float
    lam: float
    eta: float
    greens: float
    displacement: float
    eps_rel: float
    loss_tangent: float
    tan_delta_1: float
    tan_delta_2: float
    tan_delta_3: float
    gamma: float


# Table values for the two workhorse crystals near 10 mK.
STO = MaterialParams(
    eps00_rel=2080.0,
    curie_temp=42.0,
    debye_temp=175.0,
    renorm_field=1.93e6,
    inhomogeneity=0.018,
    a1=2.45e-4,
    a2=2.45e-3,
    a3=None,
    defect_density=0.0,
    temperature=0.01,
)

KTO = MaterialParams(
    eps00_rel=1390.0,
    curie_temp=32.5,
    debye_temp=170.0,
    renorm_field=1.56e6,
    inhomogeneity=0.020,
    a1=2.06e-4,
    a2=4.0e-4,
    a3=None,
    defect_density=0.0,
    temperature=0.01,
)

_BUILTINS = {"sto": STO, "kto": KTO}


def builtin_material(name: str) -> MaterialParams:
    """Look up a built-in material by name ('sto' or 'kto')."""
    try:
        return _BUILTINS[name.lower()]
    except KeyError:
        raise ConfigurationError(
            f"unknown material {name!r}; built-ins are {sorted(_BUILTINS)}"
        ) from None


def eta(params: MaterialParams) -> float:
    """Barrier parameter of the quantum-paraelectric ground state.

    eta = (debye_temp / curie_temp) * sqrt(1/16 + (T/debye_temp)**2) - 1.

    Positive eta means quantum fluctuations keep the crystal paraelectric
    down to T = 0; the T -> 0 limit is ``debye_temp / (4 curie_temp) - 1``.
    """
    t_ratio = params.temperature / params.debye_temp
    return (params.debye_temp / params.curie_temp) * math.sqrt(1.0 / 16.0 + t_ratio * t_ratio) - 1.0


def normalized_bias(bias_field: float, params: MaterialParams) -> float:
    """Normalised bias ``lam = sqrt(lam_s**2 + (E/E_N)**2)`` (dimensionless)."""
    return math.hypot(params.inhomogeneity, bias_field / params.renorm_field)


def _solve_cubic(lam: float, eta_val: float) -> float:
    # Real root of y^3 + 3 eta y = 2 lam via Cardano cube roots
    # u = (s + lam)^(1/3), w = (s - lam)^(1/3), s = sqrt(lam^2 + eta^3).
    # s - lam loses all significant digits once lam >> eta^(3/2), and u - w
    # does the same for lam << eta^(3/2); both are replaced by identities
    # (u*w = eta, u^3 - w^3 = 2 lam) that only add positive terms.
    eta3 = eta_val**3
    s = math.sqrt(lam * lam + eta3)
    plus = s + lam
    u = float(np.cbrt(plus))
    w = float(np.cbrt(eta3 / plus))
    return 2.0 * lam / (u * u + w * w + eta_val)


def _check_args(lam: float, eta_val: float) -> None:
    if lam < 0.0:
        raise ValueError(f"normalised bias must be >= 0 (got {lam})")
    if not eta_val > 0.0:
        raise ValueError(
            f"barrier parameter must be positive for a quantum paraelectric (got {eta_val})"
        )


def greens(lam: float, eta_val: float) -> float:
    """Soft-mode Green's function ``G = 1 / (y**2 + eta)`` at normalised bias lam.

    Decreases monotonically from ``1/eta`` at zero bias.
    """
    _check_args(lam, eta_val)
    y = _solve_cubic(lam, eta_val)
    return 1.0 / (y * y + eta_val)


def displacement(lam: float, eta_val: float) -> float:
    """Normalised residual displacement ``y``: the real root of y^3 + 3 eta y = 2 lam."""
    _check_args(lam, eta_val)
    return _solve_cubic(lam, eta_val)


def permittivity(bias_field: float, params: MaterialParams) -> float:
    """Relative permittivity ``eps_r(E) = eps00_rel * G(lam(E), eta)``."""
    return params.eps00_rel * greens(normalized_bias(bias_field, params), eta(params))


def permittivity_derivatives(
    bias_field: float, params: MaterialParams
) -> tuple[float, float, float]:
    """Relative permittivity and its first two derivatives w.r.t. the bias field.

    Returns
    -------
    (eps_r, deps_dE, d2eps_dE2) : tuple of float
        ``eps_r`` dimensionless, derivatives in (V/m)^-1 and (V/m)^-2.

    Notes
    -----
    Uses the closed-form chain rule.  With ``G' = dG/dlam`` etc.:

        dy/dlam   = (2/3) G
        G'        = -(4/3) G**3 y
        G''       = (16/3) G**5 y**2 - (8/9) G**4
        dlam/dE   = E / (E_N**2 lam)
        d2lam/dE2 = lam_s**2 / (E_N**2 lam**3)

    For an ideal crystal (``lam_s = 0``) at zero bias the chain rule is
    indeterminate; the even-symmetry limit ``deps/dE = 0``,
    ``d2eps/dE2 = eps00_rel * G'' / E_N**2`` applies instead.
    """
    eta_val = eta(params)
    lam = normalized_bias(bias_field, params)
    _check_args(lam, eta_val)
    y = _solve_cubic(lam, eta_val)
    g = 1.0 / (y * y + eta_val)
    eps_r = params.eps00_rel * g
    dg = -(4.0 / 3.0) * g**3 * y
    d2g = (16.0 / 3.0) * g**5 * y * y - (8.0 / 9.0) * g**4
    en2 = params.renorm_field**2
    if lam == 0.0:
        return eps_r, 0.0, params.eps00_rel * d2g / en2
    dlam = bias_field / (en2 * lam)
    d2lam = params.inhomogeneity**2 / (en2 * lam**3)
    return (
        eps_r,
        params.eps00_rel * dg * dlam,
        params.eps00_rel * (d2g * dlam * dlam + dg * d2lam),
    )


def dielectric_response(bias_field: float, params: MaterialParams) -> DielectricResponse:
    """Evaluate permittivity and the full loss budget at one bias field.

    The three loss channels are

        tan_delta_1 = a1 * (T / T_c)**2 * G**(3/2)     (multi-phonon)
        tan_delta_2 = a2 * y**2 * G                    (quasi-Debye)
        tan_delta_3 = a3 * n_d * G                     (charged defects)

    Raises
    ------
    ConfigurationError
        If ``defect_density > 0`` but no ``a3`` coefficient is set.
    """
    eta_val = eta(params)
    lam = normalized_bias(bias_field, params)
    _check_args(lam, eta_val)
    y = _solve_cubic(lam, eta_val)
    g = 1.0 / (y * y + eta_val)
    t_ratio = params.temperature / params.curie_temp
    tan1 = params.a1 * t_ratio * t_ratio * g**1.5
    tan2 = params.a2 * y * y * g
    if params.defect_density > 0.0:
        if params.a3 is None:
            raise ConfigurationError(
                "defect_density > 0 requires the charged-defect loss coefficient a3"
            )
        tan3 = params.a3 * params.defect_density * g
    else:
        tan3 = 0.0
    total = tan1 + tan2 + tan3
    return DielectricResponse(
        bias_field=bias_field,
        lam=lam,
        eta=eta_val,
        greens=g,
        displacement=y,
        eps_rel=params.eps00_rel * g,
        loss_tangent=total,
        tan_delta_1=tan1,
        tan_delta_2=tan2,
        tan_delta_3=tan3,
        gamma=total / g,
    )


def loss_tangent(bias_field: float, params: MaterialParams) -> float:
    """Total loss tangent at one bias field (sum of the three channels)."""
    return dielectric_response(bias_field, params).loss_tangent
