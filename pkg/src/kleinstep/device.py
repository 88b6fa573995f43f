"""Transport model of a gated graphene sheet with a gate-defined potential step.

Diffusive ohmic sheet at zero temperature and low bias: sheet conductivity
sigma = n e mu with the carrier density set by the back gate, n = alpha |V_b|.
For normal incidence the step is transparent (unit transmission), so the I-V
characteristic is that of the bare sheet; the step shows up only in the
angular dependence of the current, computed from the current-labelled
step transmission.
"""

from dataclasses import dataclass

from kleinstep.graphene import (
    DEFAULT_MATERIAL,
    GrapheneMaterial,
    angle_kinematics,
    energy_from_wavelength,
    t_paper,
    transmission_probability,
)

__all__ = [
    "AngularProfilePoint",
    "DeviceParams",
    "ELEMENTARY_CHARGE",
    "IVPoint",
    "angular_current_profile",
    "carrier_type",
    "iv_curve",
    "sheet_conductivity",
]

ELEMENTARY_CHARGE = 1.602176634e-19  # C


@dataclass(frozen=True)
class DeviceParams:
    """Sheet parameters: mobility in cm^2/(V s), gate coefficient in cm^-2 V^-1."""

    mobility: float = 15000.0
    gate_coefficient: float = 7.3e10
    back_gate: float = 0.0  # V_b, volts
    aspect_ratio: float = 1.0  # W / L
    elementary_charge: float = ELEMENTARY_CHARGE

    def __post_init__(self):
        if not self.mobility > 0:
            raise ValueError("mobility must be positive")
        if not self.gate_coefficient > 0:
            raise ValueError("gate coefficient must be positive")
        if not self.aspect_ratio > 0:
            raise ValueError("aspect ratio W/L must be positive")


@dataclass(frozen=True)
class IVPoint:
    V: float  # bias, volts
    I: float  # current, amperes


@dataclass(frozen=True)
class AngularProfilePoint:
    theta: float  # radians
    relative_current: float  # I(theta) / I(0)


def carrier_type(params: DeviceParams) -> str:
    """'electron' for V_b > 0, 'hole' for V_b < 0, 'neutral' at V_b = 0."""
    if params.back_gate > 0:
        return "electron"
    if params.back_gate < 0:
        return "hole"
    return "neutral"


def sheet_conductivity(params: DeviceParams) -> float:
    """sigma = alpha |V_b| e mu in siemens per square (cm^-2 * C * cm^2/Vs = S).

    V_b = 0 gives a vanishing carrier density and zero conductivity; allowed,
    see carrier_type() for the 'neutral' flag.
    """
    density = params.gate_coefficient * abs(params.back_gate)
    return density * params.elementary_charge * params.mobility


def iv_curve(params: DeviceParams, V_grid) -> list[IVPoint]:
    """Ohmic I = sigma (W/L) V for each bias in V_grid; sign follows the bias."""
    conductance = sheet_conductivity(params) * params.aspect_ratio
    return [IVPoint(float(v), conductance * float(v)) for v in V_grid]


def angular_current_profile(
    V0: float,
    theta_grid,
    lambda_F: float | None = None,
    E: float | None = None,
    material: GrapheneMaterial = DEFAULT_MATERIAL,
) -> list[AngularProfilePoint]:
    """I(theta)/I(0) across the step, from the current-labelled transmission.

    Exactly one of lambda_F (nm) or E (eV) fixes the Fermi level.  Angles
    beyond the critical angle carry no transmitted wave and raise ValueError
    (the default device parameters have none).
    """
    if (lambda_F is None) == (E is None):
        raise ValueError("give exactly one of lambda_F or E")
    if E is None:
        E = energy_from_wavelength(lambda_F, material)

    def transmission(theta: float) -> float:
        ak = angle_kinematics(E, V0, theta, material)
        if not ak.propagating:
            raise ValueError(
                f"incidence angle {theta} rad lies beyond the critical angle"
            )
        return transmission_probability(t_paper(ak), ak)

    reference = transmission(0.0)
    return [
        AngularProfilePoint(float(theta), transmission(float(theta)) / reference)
        for theta in theta_grid
    ]
