"""Semiclassical whispering-gallery-mode physics for microtoroid cavities.

Resonances of an azimuthally symmetric silica cavity of major radius ``a``
are located by the sphere eigenvalue expansion

    N*x = l + 1/2 + ((l + 1)/2)**(1/3) * alpha_n,

where ``x = 2*pi*a/lambda`` is the size parameter, ``l`` the angular mode
number, ``n`` the radial order and ``alpha_n`` the n-th zero of the Airy
function Ai(-z).  For large ``x`` and low radial order the mode's phase
velocity is captured by the effective index

    N_eff = N * [1 - 2**(-1/3) * (N*x)**(-2/3) * alpha_n],

which in turn fixes the free spectral range, the phase-matching angle of
an angle-polished fiber coupler, and the decay length of the evanescent
field outside the rim.  The expansion is truncated after the Airy term,
so spacing-level quantities are accurate at the few-percent level; see
the module tests for the quantitative bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from scipy.optimize import brentq
from scipy.special import ai_zeros

from .errors import DomainError, PhaseMatchingError, ValidityError

#: Largest radial order for which Airy zeros are tabulated.
MAX_RADIAL_ORDER = 10

#: Size-parameter floor below which the asymptotic expansion is unreliable.
MIN_SIZE_ARGUMENT = 50.0


class Polarization(str, Enum):
    TE = "TE"
    TM = "TM"


@dataclass(frozen=True)
class CavityGeometry:
    """Toroid/disk-on-pillar dimensions, all in meters.

    ``major_radius_m`` is the cavity (or as-etched disk) radius measured
    from the symmetry axis; ``disk_thickness_m`` the silica layer
    thickness; the pillar is the silicon pedestal left under the disk.
    """

    major_radius_m: float
    disk_thickness_m: float = 800e-9
    pillar_height_m: float = 25e-6
    pillar_radius_m: float = 15e-6

    def __post_init__(self) -> None:
        for name in ("major_radius_m", "disk_thickness_m",
                     "pillar_height_m", "pillar_radius_m"):
            if getattr(self, name) <= 0:
                raise DomainError(f"{name} must be positive, got {getattr(self, name)}")
        if self.pillar_radius_m >= self.major_radius_m:
            raise DomainError(
                f"pillar radius {self.pillar_radius_m} must be smaller than "
                f"major radius {self.major_radius_m}")

    @property
    def diameter_m(self) -> float:
        return 2.0 * self.major_radius_m


@dataclass(frozen=True)
class OpticalConstants:
    """Refractive indices and the analysis vacuum wavelength."""

    silica_index: float = 1.45
    fiber_core_index: float = 1.457
    vacuum_wavelength_m: float = 900e-9

    def __post_init__(self) -> None:
        if self.silica_index <= 1 or self.fiber_core_index <= 1:
            raise DomainError("refractive indices must exceed 1")
        if not 0.4e-6 < self.vacuum_wavelength_m < 2.0e-6:
            raise DomainError(
                f"vacuum wavelength {self.vacuum_wavelength_m} m outside (0.4, 2.0) um")


@dataclass(frozen=True)
class WgmMode:
    """One whispering-gallery mode.

    ``size_parameter_x`` is 2*pi*a/lambda and ``effective_index`` the
    ratio l/x of the solved mode.
    """

    angular_number_l: int
    radial_order_n: int
    polarization: Polarization
    wavelength_m: float
    size_parameter_x: float
    effective_index: float

    def __post_init__(self) -> None:
        if self.angular_number_l < 1 or self.radial_order_n < 1:
            raise DomainError("mode numbers must be positive integers")
        if self.wavelength_m <= 0 or self.size_parameter_x <= 0:
            raise DomainError("wavelength and size parameter must be positive")
        if self.effective_index <= 1:
            raise DomainError(
                f"effective index {self.effective_index} must exceed 1")


@dataclass(frozen=True)
class PolishAngles:
    """Both readings of the fiber phase-matching condition.

    ``arcsin_rad`` is arcsin(N_eff/N_f); ``complement_rad`` its complement
    to 90 degrees.  Which one a polishing bench calls "the" polish angle
    depends on whether it is measured from the fiber axis or from the
    facet normal, so both are reported.
    """

    arcsin_rad: float
    complement_rad: float

    @property
    def arcsin_deg(self) -> float:
        return math.degrees(self.arcsin_rad)

    @property
    def complement_deg(self) -> float:
        return math.degrees(self.complement_rad)


@lru_cache(maxsize=1)
def _airy_zero_table(count: int = MAX_RADIAL_ORDER) -> tuple[float, ...]:
    zeros_ai = ai_zeros(count)[0]  # zeros of Ai(x), all negative
    return tuple(-z for z in zeros_ai)


def airy_zero(n: int) -> float:
    """n-th zero of Ai(-z), used to index WGM radial orders.

    Parameters
    ----------
    n : int
        Radial order, 1 <= n <= 10.
    """
    if not isinstance(n, int) or isinstance(n, bool):
        raise DomainError(f"radial order must be an integer, got {n!r}")
    if not 1 <= n <= MAX_RADIAL_ORDER:
        raise DomainError(f"radial order must be in [1, {MAX_RADIAL_ORDER}], got {n}")
    return _airy_zero_table()[n - 1]


def size_parameter(geometry: CavityGeometry, wavelength_m: float) -> float:
    """Size parameter x = 2*pi*a/lambda."""
    if wavelength_m <= 0:
        raise DomainError(f"wavelength must be positive, got {wavelength_m}")
    return 2.0 * math.pi * geometry.major_radius_m / wavelength_m


def effective_index(geometry: CavityGeometry, constants: OpticalConstants,
                    radial_order: int = 1,
                    wavelength_m: float | None = None) -> float:
    """Effective index of the radial-order-n WGM at the given wavelength.

    Evaluates N_eff = N * [1 - 2**(-1/3) * (N*x)**(-2/3) * alpha_n].
    Defaults to the constants' analysis wavelength.

    Raises
    ------
    ValidityError
        If N*x <= 50, where the large-x expansion is unreliable.
    """
    lam = constants.vacuum_wavelength_m if wavelength_m is None else wavelength_m
    n_silica = constants.silica_index
    nx = n_silica * size_parameter(geometry, lam)
    if nx <= MIN_SIZE_ARGUMENT:
        raise ValidityError(
            f"N*x = {nx:.1f} <= {MIN_SIZE_ARGUMENT:g}: asymptotic effective "
            "index is unreliable for so small a cavity")
    correction = 2.0 ** (-1.0 / 3.0) * nx ** (-2.0 / 3.0) * airy_zero(radial_order)
    return n_silica * (1.0 - correction)


def _mode_equation_rhs(angular_l: int, alpha_n: float) -> float:
    # right-hand side of N*x = l + 1/2 + ((l+1)/2)^(1/3) alpha_n
    return angular_l + 0.5 + ((angular_l + 1) / 2.0) ** (1.0 / 3.0) * alpha_n


def resonance_wavelengths(geometry: CavityGeometry, constants: OpticalConstants,
                          radial_order: int = 1,
                          band: tuple[float, float] = (880e-9, 920e-9),
                          polarization: Polarization = Polarization.TE,
                          rtol: float = 1e-12) -> list[WgmMode]:
    """All radial-order-n modes whose resonance wavelength falls in ``band``.

    For each admissible integer angular number the resonance condition is
    solved by bracketed root-finding in wavelength (Brent's method, i.e.
    bisection refined by secant/inverse-quadratic steps); the bracket is
    one free-spectral-range estimate wide, so the monotone residual
    guarantees convergence.  Returns modes sorted by wavelength; an empty
    or out-of-reach band yields an empty list.

    Parameters
    ----------
    band : (float, float)
        Wavelength window [lambda_min, lambda_max] in meters.
    rtol : float
        Relative tolerance on each solved wavelength.
    """
    lam_lo, lam_hi = band
    if lam_lo >= lam_hi:
        return []
    alpha_n = airy_zero(radial_order)
    n_silica = constants.silica_index
    circumference_nx = 2.0 * math.pi * geometry.major_radius_m * n_silica

    nx_hi = circumference_nx / lam_lo   # largest N*x in band
    nx_lo = circumference_nx / lam_hi   # smallest N*x in band
    if nx_lo <= MIN_SIZE_ARGUMENT:
        raise ValidityError(
            f"N*x = {nx_lo:.1f} at the band edge: asymptotics unreliable")

    def residual(lam: float, rhs: float) -> float:
        return circumference_nx / lam - rhs

    # Half-FSR bracket width from the spacing estimate at band center.
    lam_mid = 0.5 * (lam_lo + lam_hi)
    n_eff_mid = effective_index(geometry, constants, radial_order, lam_mid)
    fsr_mid = fsr(geometry, constants, n_eff_mid, wavelength_m=lam_mid)

    modes: list[WgmMode] = []
    # Scan angular numbers upward from just below the band's smallest l.
    l_guess = int(nx_lo - 0.5 - (nx_lo / 2.0) ** (1.0 / 3.0) * alpha_n) - 3
    angular_l = max(1, l_guess)
    while True:
        rhs = _mode_equation_rhs(angular_l, alpha_n)
        if rhs > nx_hi:
            break
        if rhs >= nx_lo:
            lam_est = circumference_nx / rhs
            half = 0.5 * fsr_mid
            lo = max(lam_est - half, 0.5 * lam_lo)
            hi = lam_est + half
            # residual is monotone decreasing in lambda; widen until it
            # changes sign across the bracket (first try always succeeds
            # because lam_est is inside it).
            while residual(lo, rhs) < 0:
                lo -= half
            while residual(hi, rhs) > 0:
                hi += half
            lam = brentq(residual, lo, hi, args=(rhs,), xtol=1e-20, rtol=rtol)
            if lam_lo <= lam <= lam_hi:
                x = size_parameter(geometry, lam)
                modes.append(WgmMode(
                    angular_number_l=angular_l,
                    radial_order_n=radial_order,
                    polarization=polarization,
                    wavelength_m=lam,
                    size_parameter_x=x,
                    effective_index=angular_l / x,
                ))
        angular_l += 1
    modes.sort(key=lambda m: m.wavelength_m)
    return modes


def fsr(geometry: CavityGeometry, constants: OpticalConstants,
        effective_index: float, wavelength_m: float | None = None) -> float:
    """Free spectral range Delta_lambda = lambda^2 / (2*pi*a*N_eff) in meters."""
    lam = constants.vacuum_wavelength_m if wavelength_m is None else wavelength_m
    if lam <= 0 or effective_index <= 0:
        raise DomainError("wavelength and effective index must be positive")
    return lam ** 2 / (2.0 * math.pi * geometry.major_radius_m * effective_index)


def invert_diameter(fsr_m: float, constants: OpticalConstants,
                    effective_index: float,
                    wavelength_m: float | None = None) -> float:
    """Cavity diameter implied by a measured free spectral range.

    Exact inverse of :func:`fsr`: 2a = lambda^2 / (pi * Delta_lambda * N_eff).
    """
    lam = constants.vacuum_wavelength_m if wavelength_m is None else wavelength_m
    if fsr_m <= 0:
        raise DomainError(f"free spectral range must be positive, got {fsr_m}")
    if effective_index <= 0:
        raise DomainError("effective index must be positive")
    return lam ** 2 / (math.pi * fsr_m * effective_index)


def polish_angle(effective_index: float, fiber_index: float) -> PolishAngles:
    """Fiber polish angle satisfying phase matching to the WGM.

    Raises
    ------
    PhaseMatchingError
        If the mode's effective index exceeds the fiber core index, in
        which case no real angle exists.
    """
    if effective_index <= 0 or fiber_index <= 0:
        raise DomainError("indices must be positive")
    if effective_index > fiber_index:
        raise PhaseMatchingError(
            f"effective index {effective_index:.4f} exceeds fiber core index "
            f"{fiber_index:.4f}: phase matching impossible")
    phi = math.asin(effective_index / fiber_index)
    return PolishAngles(arcsin_rad=phi, complement_rad=0.5 * math.pi - phi)


def evanescent_decay_length(effective_index: float, wavelength_m: float) -> float:
    """1/e decay length of the field outside the cavity surface.

    Lambda = lambda / (2*pi*sqrt(N_eff^2 - 1)); diverges as N_eff -> 1
    (grazing propagation).
    """
    if wavelength_m <= 0:
        raise DomainError(f"wavelength must be positive, got {wavelength_m}")
    if effective_index <= 1:
        raise DomainError(
            f"effective index must exceed 1 for a bound mode, got {effective_index}")
    return wavelength_m / (2.0 * math.pi * math.sqrt(effective_index ** 2 - 1.0))
