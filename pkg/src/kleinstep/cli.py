"""Deterministic command-line sweeps with CSV/JSON emission.

Commands: step-rt, step-compare, spinor-check, graphene-angle, barrier,
iv-curve, angular-current.  Value flags accept a single number, a comma
list ("0.1,0.2,0.3") or a min:max:count range ("1:5:9"); a config file of
"key = value" lines ('#' comments) may supply defaults, flags override it.

Output is byte-deterministic: floats printed with 9 significant digits,
rows in sweep order, the run manifest (version, command, resolved
parameters, timestamp) in '#' comment lines (CSV) or a "manifest" field
(JSON), suppressible with --no-manifest.

Exit codes: 0 success, 1 numerical failure (a singular denominator without
--allow-singular, or an unwritable output), 2 usage error.
"""

import argparse
import json
import math
import sys
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Callable

from kleinstep import __version__
from kleinstep.common import Convention, SingularityError
from kleinstep.device import DeviceParams, angular_current_profile, iv_curve
from kleinstep.dirac import (
    current_density,
    hamiltonian_residual,
    hamiltonian_residual4,
    make_spinor2,
    make_spinor4,
)
from kleinstep.graphene import (
    GrapheneMaterial,
    HBAR_VF_EV_NM,
    angle_kinematics,
    energy_from_wavelength,
    solve_barrier,
    t_common,
    t_paper,
    transmission_probability,
)
from kleinstep.step import Regime, StepProblem, solve_step_numeric

__all__ = ["RunManifest", "SweepRequest", "main", "parse_args"]

PROG = "kleinstep"


class _UsageError(Exception):
    pass


# ------------------------------------------------------------- converters


def _float_scalar(text: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise _UsageError(f"expected a number, got {text!r}") from None


def _int_scalar(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise _UsageError(f"expected an integer, got {text!r}") from None


def _values(text: str) -> list[float]:
    """Parse '2', '1,2,3' or 'min:max:count'; empty string = empty sweep."""
    text = text.strip()
    if not text:
        return []
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise _UsageError(f"range must be min:max:count, got {text!r}")
        lo, hi = _float_scalar(parts[0]), _float_scalar(parts[1])
        count = _int_scalar(parts[2])
        return _linspace(lo, hi, count)
    return [_float_scalar(part) for part in text.split(",")]


def _linspace(lo: float, hi: float, count: int) -> list[float]:
    if count < 2:
        raise _UsageError(f"range count must be >= 2, got {count}")
    if not lo < hi:
        raise _UsageError(f"range needs min < max, got {lo} >= {hi}")
    step = (hi - lo) / (count - 1)
    grid = [lo + i * step for i in range(count)]
    grid[-1] = hi
    return grid


def _choice(options: tuple[str, ...]) -> Callable[[str], str]:
    def convert(text: str) -> str:
        if text not in options:
            raise _UsageError(f"expected one of {options}, got {text!r}")
        return text

    return convert


def _bool(text) -> bool:
    if isinstance(text, bool):
        return text
    lowered = str(text).strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise _UsageError(f"expected a boolean, got {text!r}")


# ------------------------------------------------------- command registry


@dataclass(frozen=True)
class _Param:
    name: str  # long flag name, dashes allowed
    convert: Callable
    default: object = None
    required: bool = False
    help: str = ""

    @property
    def dest(self) -> str:
        return self.name.replace("-", "_")


_COMMON_PARAMS = [
    _Param("format", _choice(("csv", "json")), default="csv", help="output format"),
    _Param("output", str, help="output path (default: stdout)"),
    _Param("config", str, help="config file of key = value lines"),
    _Param("no-manifest", _bool, default=False, help="suppress the run manifest"),
    _Param("allow-singular", _bool, default=False,
           help="emit inf instead of failing at singular points"),
]

_CONVENTION = _Param("convention", _choice(("paper", "common")), default="paper",
                     help="transmitted-wave convention")

_COMMANDS: dict[str, list[_Param]] = {
    "step-rt": [
        _Param("E", _values, required=True, help="incident energy (value/list/range)"),
        _Param("m", _float_scalar, required=True, help="rest mass"),
        _Param("V0", _float_scalar, required=True, help="step height"),
        _CONVENTION,
    ],
    "step-compare": [
        _Param("E", _values, required=True, help="incident energies"),
        _Param("m", _values, required=True, help="rest masses"),
        _Param("V0", _values, required=True, help="step heights"),
    ],
    "spinor-check": [
        _Param("m", _float_scalar, required=True, help="rest mass"),
        _Param("eps", _values, required=True, help="local energies E - V"),
    ],
    "graphene-angle": [
        _Param("E", _float_scalar, help="Fermi energy in eV"),
        _Param("lambdaF", _float_scalar, help="Fermi wavelength in nm"),
        _Param("V0", _float_scalar, required=True, help="step height in eV"),
        _Param("theta", _values, required=True, help="incidence angles in degrees"),
        _Param("hbar-vF", _float_scalar, default=HBAR_VF_EV_NM, help="eV nm"),
    ],
    "barrier": [
        _Param("E", _float_scalar, help="Fermi energy in eV"),
        _Param("lambdaF", _float_scalar, help="Fermi wavelength in nm"),
        _Param("V0", _float_scalar, required=True, help="barrier height in eV"),
        _Param("D", _values, required=True, help="barrier widths in nm"),
        _Param("theta", _float_scalar, default=0.0, help="incidence angle in degrees"),
        _Param("hbar-vF", _float_scalar, default=HBAR_VF_EV_NM, help="eV nm"),
    ],
    "iv-curve": [
        _Param("Vb", _values, default=[0.1, 0.2, 0.3], help="back-gate voltages"),
        _Param("V", _values, help="explicit bias grid in volts"),
        _Param("V-min", _float_scalar, default=0.0, help="bias grid start"),
        _Param("V-max", _float_scalar, default=5e-3, help="bias grid end"),
        _Param("n", _int_scalar, default=101, help="bias grid size"),
        _Param("mobility", _float_scalar, default=15000.0, help="cm^2/(V s)"),
        _Param("alpha", _float_scalar, default=7.3e10, help="carriers per cm^2 per V"),
        _Param("aspect-ratio", _float_scalar, default=1.0, help="W/L"),
    ],
    "angular-current": [
        _Param("lambdaF", _float_scalar, default=50.0, help="Fermi wavelength in nm"),
        _Param("V0", _float_scalar, default=0.3, help="step height in eV"),
        _Param("theta-max", _float_scalar, default=85.0, help="half-width of the angle grid, deg"),
        _Param("n", _int_scalar, default=171, help="number of angles"),
        _Param("hbar-vF", _float_scalar, default=HBAR_VF_EV_NM, help="eV nm"),
    ],
}

_COLUMNS = {
    "step-rt": ["E", "m", "V0", "convention", "regime", "kappa",
                "r_re", "r_im", "t_re", "t_im", "R", "T"],
    "step-compare": ["E", "m", "V0", "kappa", "R_paper", "T_paper",
                     "kappa_prime", "R_common", "T_common", "regime"],
    "spinor-check": ["eps", "k_re", "k_im", "m", "residual2", "residual4", "current"],
    "graphene-angle": ["theta_deg", "ky", "kxII", "thetaII_deg", "T_paper", "T_common"],
    "barrier": ["E", "V0", "D", "theta_deg", "T_paper", "T_common"],
    "iv-curve": ["Vb", "V", "I"],
    "angular-current": ["theta_deg", "T", "relative_current"],
}


@dataclass(frozen=True)
class SweepRequest:
    """A fully resolved invocation: command, parameters, output handling."""

    command: str
    params: dict
    format: str
    output: str | None
    no_manifest: bool
    allow_singular: bool


@dataclass(frozen=True)
class RunManifest:
    version: str
    command: str
    parameters: dict
    timestamp: str = field(
        default_factory=lambda: datetime.now(timezone.utc).isoformat(timespec="seconds")
    )

    def comment_lines(self) -> list[str]:
        rendered = " ".join(
            f"{key}={_manifest_value(value)}" for key, value in sorted(self.parameters.items())
        )
        return [
            f"# {PROG} {self.version}",
            f"# command: {self.command}",
            f"# parameters: {rendered}",
            f"# timestamp: {self.timestamp}",
        ]

    def as_dict(self) -> dict:
        return {
            "tool": PROG,
            "version": self.version,
            "command": self.command,
            "parameters": {k: _manifest_value(v) for k, v in sorted(self.parameters.items())},
            "timestamp": self.timestamp,
        }


def _manifest_value(value):
    if isinstance(value, float):
        return format(value, ".9g")
    if isinstance(value, list):
        return ",".join(format(v, ".9g") for v in value)
    return value


# ------------------------------------------------------------- parsing


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=PROG,
        description="step-barrier scattering, graphene junctions, gated-device sweeps",
    )
    subparsers = parser.add_subparsers(dest="command", metavar="command")
    for command, params in _COMMANDS.items():
        sub = subparsers.add_parser(command, help=f"{command} sweep")
        for param in params + _COMMON_PARAMS:
            if param.convert is _bool:
                sub.add_argument(f"--{param.name}", dest=param.dest, default=None,
                                 action="store_const", const=True, help=param.help)
            else:
                sub.add_argument(f"--{param.name}", dest=param.dest, default=None,
                                 metavar="X", help=param.help)
    return parser


def _load_config(path: str) -> dict[str, str]:
    entries: dict[str, str] = {}
    try:
        with open(path, "r", encoding="utf-8") as handle:
            for lineno, raw in enumerate(handle, 1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise _UsageError(f"{path}:{lineno}: expected 'key = value'")
                key, value = line.split("=", 1)
                entries[key.strip().replace("-", "_")] = value.strip()
    except OSError as exc:
        raise _UsageError(f"cannot read config file {path}: {exc}") from None
    return entries


def parse_args(argv=None) -> SweepRequest:
    """Resolve CLI flags plus config-file defaults into a SweepRequest."""
    parser = _build_parser()
    namespace = parser.parse_args(argv)
    if namespace.command is None:
        parser.print_usage(sys.stderr)
        raise _UsageError("a command is required")
    command = namespace.command
    config = _load_config(namespace.config) if namespace.config else {}

    resolved: dict = {}
    for param in _COMMANDS[command] + _COMMON_PARAMS:
        raw = getattr(namespace, param.dest)
        if raw is None:
            raw = config.get(param.dest)
        if raw is None:
            if param.required:
                raise _UsageError(f"{command}: missing required parameter --{param.name}")
            resolved[param.dest] = param.default
            continue
        resolved[param.dest] = param.convert(raw) if isinstance(raw, str) else raw

    return SweepRequest(
        command=command,
        params={k: v for k, v in resolved.items()
                if k not in ("format", "output", "config", "no_manifest", "allow_singular")},
        format=resolved["format"],
        output=resolved["output"],
        no_manifest=resolved["no_manifest"],
        allow_singular=resolved["allow_singular"],
    )


# ------------------------------------------------------------- sweeps


def _resolve_fermi_energy(params: dict, material: GrapheneMaterial) -> float:
    if (params.get("E") is None) == (params.get("lambdaF") is None):
        raise _UsageError("give exactly one of --E or --lambdaF")
    if params.get("E") is not None:
        return params["E"]
    return energy_from_wavelength(params["lambdaF"], material)


def _rows_step_rt(request: SweepRequest) -> list[dict]:
    params = request.params
    convention = Convention(params["convention"])
    rows = []
    for E in params["E"]:
        problem = StepProblem(E, params["m"], params["V0"])
        sol = solve_step_numeric(problem, convention)
        rows.append({
            "E": E, "m": params["m"], "V0": params["V0"],
            "convention": convention.value, "regime": sol.regime.value,
            "kappa": sol.kappa_value,
            "r_re": sol.r.real, "r_im": sol.r.imag,
            "t_re": sol.t.real, "t_im": sol.t.imag,
            "R": sol.R, "T": sol.T,
        })
    return rows


def _rows_step_compare(request: SweepRequest) -> list[dict]:
    rows = []
    for E in request.params["E"]:
        for m in request.params["m"]:
            for V0 in request.params["V0"]:
                problem = StepProblem(E, m, V0)
                paper = solve_step_numeric(problem, Convention.PAPER)
                try:
                    common = solve_step_numeric(problem, Convention.COMMON)
                    r_common, t_common_coeff = common.R, common.T
                    kp = common.kappa_value if common.regime is Regime.KLEIN else math.nan
                except SingularityError:
                    if not request.allow_singular:
                        raise
                    kp, r_common, t_common_coeff = -1.0, math.inf, -math.inf
                rows.append({
                    "E": E, "m": m, "V0": V0,
                    "kappa": paper.kappa_value,
                    "R_paper": paper.R, "T_paper": paper.T,
                    "kappa_prime": kp,
                    "R_common": r_common, "T_common": t_common_coeff,
                    "regime": paper.regime.value,
                })
    return rows


def _rows_spinor_check(request: SweepRequest) -> list[dict]:
    m = request.params["m"]
    rows = []
    for eps in request.params["eps"]:
        gap = eps * eps - m * m
        k = math.sqrt(gap) if gap >= 0 else 1j * math.sqrt(-gap)
        spinor = make_spinor2(eps, k, m)
        residual2 = hamiltonian_residual(spinor, eps, k, m)
        if gap >= 0 and eps != 0:
            branch = "positive" if eps > 0 else "negative"
            p_vec = (0.0, 0.0, math.sqrt(gap))
            psi4 = make_spinor4(abs(eps), p_vec, m, branch=branch)
            residual4 = hamiltonian_residual4(psi4, eps, p_vec, m)
        else:
            residual4 = math.nan
        rows.append({
            "eps": eps,
            "k_re": complex(k).real, "k_im": complex(k).imag,
            "m": m,
            "residual2": residual2, "residual4": residual4,
            "current": current_density(spinor),
        })
    return rows


def _rows_graphene_angle(request: SweepRequest) -> list[dict]:
    params = request.params
    material = GrapheneMaterial(params["hbar_vF"])
    energy = _resolve_fermi_energy(params, material)
    rows = []
    for theta_deg in params["theta"]:
        ak = angle_kinematics(energy, params["V0"], math.radians(theta_deg), material)
        if not ak.propagating:
            rows.append({
                "theta_deg": theta_deg, "ky": ak.k_y, "kxII": math.nan,
                "thetaII_deg": math.nan, "T_paper": 0.0, "T_common": 0.0,
            })
            continue
        transmission_paper = transmission_probability(t_paper(ak), ak)
        try:
            transmission_common = transmission_probability(t_common(ak), ak)
        except SingularityError:
            if not request.allow_singular:
                raise
            transmission_common = math.inf
        rows.append({
            "theta_deg": theta_deg, "ky": ak.k_y, "kxII": ak.k_xII,
            "thetaII_deg": math.degrees(ak.theta_II),
            "T_paper": transmission_paper, "T_common": transmission_common,
        })
    return rows


def _rows_barrier(request: SweepRequest) -> list[dict]:
    params = request.params
    material = GrapheneMaterial(params["hbar_vF"])
    energy = _resolve_fermi_energy(params, material)
    theta = math.radians(params["theta"])
    rows = []
    for width in params["D"]:
        rows.append({
            "E": energy, "V0": params["V0"], "D": width, "theta_deg": params["theta"],
            "T_paper": solve_barrier(energy, params["V0"], width, theta,
                                     Convention.PAPER, material).T,
            "T_common": solve_barrier(energy, params["V0"], width, theta,
                                      Convention.COMMON, material).T,
        })
    return rows


def _rows_iv_curve(request: SweepRequest) -> list[dict]:
    params = request.params
    grid = params["V"] if params["V"] is not None else _linspace(
        params["V_min"], params["V_max"], params["n"]
    )
    rows = []
    for v_back in params["Vb"]:
        device = DeviceParams(
            mobility=params["mobility"], gate_coefficient=params["alpha"],
            back_gate=v_back, aspect_ratio=params["aspect_ratio"],
        )
        for point in iv_curve(device, grid):
            rows.append({"Vb": v_back, "V": point.V, "I": point.I})
    return rows


def _rows_angular_current(request: SweepRequest) -> list[dict]:
    params = request.params
    material = GrapheneMaterial(params["hbar_vF"])
    thetas_deg = _linspace(-params["theta_max"], params["theta_max"], params["n"])
    profile = angular_current_profile(
        params["V0"], [math.radians(t) for t in thetas_deg],
        lambda_F=params["lambdaF"], material=material,
    )
    energy = energy_from_wavelength(params["lambdaF"], material)
    rows = []
    for theta_deg, point in zip(thetas_deg, profile):
        ak = angle_kinematics(energy, params["V0"], point.theta, material)
        transmission = transmission_probability(t_paper(ak), ak)
        rows.append({
            "theta_deg": theta_deg, "T": transmission,
            "relative_current": point.relative_current,
        })
    return rows


_COMPUTE = {
    "step-rt": _rows_step_rt,
    "step-compare": _rows_step_compare,
    "spinor-check": _rows_spinor_check,
    "graphene-angle": _rows_graphene_angle,
    "barrier": _rows_barrier,
    "iv-curve": _rows_iv_curve,
    "angular-current": _rows_angular_current,
}


# ------------------------------------------------------------- emission


def _format_cell(value) -> str:
    if isinstance(value, float):
        return format(value, ".9g")
    return str(value)


def _round9(value):
    if isinstance(value, float) and math.isfinite(value):
        return float(format(value, ".9g"))
    return value


def render_csv(columns: list[str], rows: list[dict], manifest: RunManifest | None) -> str:
    lines = manifest.comment_lines() if manifest else []
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(_format_cell(row[col]) for col in columns))
    return "\n".join(lines) + "\n"


def render_json(columns: list[str], rows: list[dict], manifest: RunManifest | None) -> str:
    payload: dict = {}
    if manifest:
        payload["manifest"] = manifest.as_dict()
    payload["rows"] = [{col: _round9(row[col]) for col in columns} for row in rows]
    return json.dumps(payload, indent=2) + "\n"


def emit(request: SweepRequest, rows: list[dict]) -> int:
    """Render and write one sweep; returns the process exit code."""
    columns = _COLUMNS[request.command]
    manifest = None
    if not request.no_manifest:
        manifest = RunManifest(__version__, request.command, request.params)
    render = render_csv if request.format == "csv" else render_json
    text = render(columns, rows, manifest)
    if request.output:
        try:
            with open(request.output, "w", encoding="utf-8", newline="") as handle:
                handle.write(text)
        except OSError as exc:
            print(f"{PROG}: cannot write {request.output}: {exc}", file=sys.stderr)
            return 1
    else:
        sys.stdout.write(text)
    return 0


def main(argv=None) -> int:
    try:
        request = parse_args(argv)
    except _UsageError as exc:
        print(f"{PROG}: error: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:  # argparse already reported
        code = exc.code if isinstance(exc.code, int) else 2
        return code
    try:
        rows = _COMPUTE[request.command](request)
    except SingularityError as exc:
        print(f"{PROG}: numerical failure: {exc}", file=sys.stderr)
        print(f"{PROG}: rerun with --allow-singular to emit unbounded values",
              file=sys.stderr)
        return 1
    except _UsageError as exc:
        print(f"{PROG}: error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:  # parameter domain errors
        print(f"{PROG}: error: {exc}", file=sys.stderr)
        return 2
    return emit(request, rows)


if __name__ == "__main__":
    sys.exit(main())
