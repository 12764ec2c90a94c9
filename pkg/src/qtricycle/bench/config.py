"""Experiment configuration: grammar, schemas, and validation.

A configuration is a TOML document with top-level run settings, a
``[params]`` table of model parameters, and zero or more ``[[sweep]]``
entries::

    experiment = "engine-currents"
    output = "runs/engine.csv"      # optional when --output is given
    format = "csv"                  # csv | json (default csv)
    seed = 0                        # consumed by randomized experiments
    parallelism = 2                 # optional; falls back to QTRICYCLE_THREADS

    [params]
    omega_h = 6.0
    omega_c = 4.0
    T_h = 0.3
    T_c = 0.1
    gamma = 0.05

    [[sweep]]
    param = "epsilon"
    grid = "linear"                 # linear | log
    start = 0.05
    stop = 1.9
    count = 40

Rows follow nested-loop order over the sweeps as listed, so the last
``[[sweep]]`` entry varies fastest.  Every quantity is in natural units
(``hbar = k_B = 1``).  Which parameters exist, which are required, and how
many sweeps an experiment takes are governed by per-experiment schemas in
this module; :func:`parse_config` enforces all of it and raises
:class:`~qtricycle.errors.ConfigError` with a message naming the offending
key.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from ..errors import ConfigError

__all__ = [
    "ExperimentConfig",
    "ParamSpec",
    "SweepSpec",
    "EXPERIMENT_NAMES",
    "build_grid",
    "describe",
    "load_config",
    "parse_config",
    "resolve_params",
    "row_count",
]


@dataclass(frozen=True)
class SweepSpec:
    """One swept parameter: a named grid over ``[start, stop]``."""

    param: str
    grid: str
    start: float
    stop: float
    count: int


@dataclass(frozen=True)
class ExperimentConfig:
    """A validated experiment configuration.

    ``params`` holds exactly what the file declared; defaults are applied
    later by :func:`resolve_params` so the file round-trips unchanged.
    ``raw`` is the verbatim config text, echoed into output metadata.
    """

    experiment: str
    params: dict
    sweep: tuple[SweepSpec, ...]
    output: str | None
    format: str
    seed: int
    parallelism: int | None
    raw: str = field(repr=False, default="")


@dataclass(frozen=True)
class ParamSpec:
    kind: str  # "float" | "int" | "str" | "strlist"
    required: bool = False
    default: object = None
    choices: tuple | None = None


def _f(required=False, default=None):
    return ParamSpec("float", required, default)


def _i(required=False, default=None):
    return ParamSpec("int", required, default)


_STATS = ParamSpec("str", default="bose", choices=("bose", "fermi"))

# sweep-count rule: (min_entries, max_entries, allowed names or None for any
# numeric parameter of the schema)
_AMPLIFIER_PARAMS = {
    "omega_h": _f(required=True),
    "omega_c": _f(required=True),
    "epsilon": _f(default=0.4),
    "T_h": _f(required=True),
    "T_c": _f(required=True),
    "gamma": _f(default=0.1),
    "statistics": _STATS,
}

_SCHEMAS: dict[str, dict[str, ParamSpec]] = {
    "engine-currents": dict(_AMPLIFIER_PARAMS),
    "power-map": dict(_AMPLIFIER_PARAMS),
    "tradeoff-curve": {
        "omega_h": _f(required=True),
        "omega_c": _f(required=True),
        "epsilon": _f(required=True),
        "T_h": _f(required=True),
        "T_c": _f(required=True),
        "kappa_h": _f(required=True),
        "kappa_c": _f(required=True),
        "statistics": _STATS,
    },
    "ca-check": {
        "T_h": _f(required=True),
        "omega_h": _f(),
        "omega_c": _f(),
        "epsilon": _f(),
        "statistics": _STATS,
    },
    "fridge-currents": {
        "model": ParamSpec(
            "str", required=True, choices=("gaussian", "poisson", "power_driven")
        ),
        "omega_h": _f(required=True),
        "omega_c": _f(required=True),
        "T_h": _f(required=True),
        "T_c": _f(required=True),
        "Gamma_h": _f(required=True),
        "Gamma_c": _f(required=True),
        "eta": _f(default=0.0),
        "lambda_rate": _f(default=0.0),
        "impulse": ParamSpec(
            "str", default="delta", choices=("delta", "normal", "exponential")
        ),
        "xi0": _f(default=0.0),
        "sigma": _f(default=0.0),
        "epsilon": _f(default=0.0),
    },
    "three-qubit": {
        "omega_h": _f(required=True),
        "omega_c": _f(required=True),
        "nu": _f(),
        "epsilon": _f(required=True),
        "T_h": _f(required=True),
        "T_c": _f(required=True),
        "T_w": _f(required=True),
        "g_h": _f(required=True),
        "g_c": _f(required=True),
        "g_w": _f(required=True),
        "cold_spectral_exponent": _f(default=0.0),
        "work_spectral_exponent": _f(default=0.0),
    },
    "noise-fridge": {
        "omega_h": _f(required=True),
        "omega_c": _f(required=True),
        "nu": _f(),
        "epsilon": _f(required=True),
        "T_h": _f(required=True),
        "g_h": _f(required=True),
        "T_c": _f(required=True),
        "g_c": _f(required=True),
        "eta": _f(required=True),
    },
    "third-law": {
        "d": _i(required=True),
        "kappa": _f(required=True),
        "eta_cv": _f(),
        "fridge": ParamSpec(
            "str",
            default="universal",
            choices=("universal", "power_driven", "noise_driven"),
        ),
        "hot_rate": _f(default=1.0),
        "coupling": _f(default=1e-3),
        "noise_strength": _f(default=0.5),
    },
    "validate-oracle": {
        "draws": _i(default=8),
        "truncation": _i(default=0),
        "cases": ParamSpec(
            "strlist",
            default=("amp", "gauss", "poisson"),
            choices=("amp", "gauss", "poisson"),
        ),
    },
}

_SWEEP_RULES: dict[str, tuple[int, int, tuple[str, ...] | None]] = {
    "engine-currents": (1, 2, None),
    "power-map": (2, 2, None),
    "tradeoff-curve": (1, 1, ("epsilon", "omega_h")),
    "ca-check": (1, 1, ("tau",)),
    "fridge-currents": (1, 2, None),
    "three-qubit": (1, 2, None),
    "noise-fridge": (1, 2, None),
    "third-law": (1, 1, ("T_c",)),
    "validate-oracle": (0, 0, ()),
}

EXPERIMENT_NAMES = tuple(_SCHEMAS)

_DESCRIPTIONS = {
    "engine-currents": "steady currents, efficiency, and gains of the driven"
    " amplifier along a parameter sweep",
    "power-map": "output power over a two-parameter grid, typically drive"
    " strength against damping rate",
    "tradeoff-curve": "normalized power against efficiency along a drive or"
    " hot-frequency sweep",
    "ca-check": "maximum-power efficiency and frequency ratio across"
    " temperature ratios, with square-root benchmarks",
    "fridge-currents": "cooling currents and performance of the noise-driven"
    " and power-driven refrigerators",
    "three-qubit": "currents of the three-qubit absorption refrigerator in"
    " its exact eigenbasis",
    "noise-fridge": "three-qubit refrigerator with the work bath replaced by"
    " white noise",
    "third-law": "optimized cooling current against cold temperature with a"
    " power-law fit",
    "validate-oracle": "closed forms against the brute-force generator on"
    " seeded random draws",
}


def describe(experiment: str) -> str:
    """One-line description of an experiment, for the listing command."""
    return _DESCRIPTIONS[experiment]


_TOP_KEYS = {"experiment", "output", "format", "seed", "parallelism", "params", "sweep"}
_SWEEP_KEYS = {"param", "grid", "start", "stop", "count"}


def _is_number(value) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def _check_param(name: str, spec: ParamSpec, value) -> None:
    where = f"params.{name}"
    if spec.kind == "float":
        if not _is_number(value):
            raise ConfigError(f"{where} must be a number, got {value!r}")
    elif spec.kind == "int":
        if not (isinstance(value, int) and not isinstance(value, bool)):
            raise ConfigError(f"{where} must be an integer, got {value!r}")
    elif spec.kind == "str":
        if not isinstance(value, str):
            raise ConfigError(f"{where} must be a string, got {value!r}")
        if spec.choices and value not in spec.choices:
            raise ConfigError(
                f"{where} must be one of {', '.join(spec.choices)}, got {value!r}"
            )
    elif spec.kind == "strlist":
        if not (
            isinstance(value, list)
            and value
            and all(isinstance(v, str) for v in value)
        ):
            raise ConfigError(f"{where} must be a nonempty list of strings")
        for v in value:
            if spec.choices and v not in spec.choices:
                raise ConfigError(
                    f"{where} entries must be among {', '.join(spec.choices)}, "
                    f"got {v!r}"
                )


def _check_sweep_entry(entry, index: int) -> SweepSpec:
    where = f"sweep[{index}]"
    if not isinstance(entry, dict):
        raise ConfigError(f"{where} must be a table")
    unknown = set(entry) - _SWEEP_KEYS
    if unknown:
        raise ConfigError(f"{where} has unknown keys: {', '.join(sorted(unknown))}")
    missing = _SWEEP_KEYS - set(entry)
    if missing:
        raise ConfigError(f"{where} is missing keys: {', '.join(sorted(missing))}")
    if not isinstance(entry["param"], str):
        raise ConfigError(f"{where}.param must be a string")
    if entry["grid"] not in ("linear", "log"):
        raise ConfigError(f"{where}.grid must be 'linear' or 'log'")
    if not (_is_number(entry["start"]) and _is_number(entry["stop"])):
        raise ConfigError(f"{where}.start and .stop must be numbers")
    if not (isinstance(entry["count"], int) and not isinstance(entry["count"], bool)):
        raise ConfigError(f"{where}.count must be an integer")
    if entry["count"] < 2:
        raise ConfigError(f"{where}.count must be at least 2, got {entry['count']}")
    start, stop = float(entry["start"]), float(entry["stop"])
    if start == stop:
        raise ConfigError(f"{where} start and stop coincide at {start}")
    if entry["grid"] == "log" and not (start > 0.0 and stop > 0.0):
        raise ConfigError(f"{where}: a log grid needs positive bounds")
    return SweepSpec(entry["param"], entry["grid"], start, stop, entry["count"])


def _cross_checks(experiment: str, params: dict, sweep_names: set[str]) -> None:
    """Rules that couple several fields for one experiment."""
    if experiment == "ca-check":
        have = [k for k in ("omega_h", "omega_c") if k in params]
        if len(have) != 1:
            raise ConfigError(
                "ca-check holds exactly one filter frequency fixed: set "
                "params.omega_h or params.omega_c, not "
                + ("both" if have else "neither")
            )
    elif experiment == "fridge-currents":
        drive = {"gaussian": "eta", "poisson": "lambda_rate", "power_driven": "epsilon"}
        model = params.get("model")
        if model in drive:
            needed = drive[model]
            if needed not in params and needed not in sweep_names:
                raise ConfigError(
                    f"fridge-currents model {model!r} needs params.{needed} "
                    "set or swept"
                )


def _check_third_law_span(sweep: tuple[SweepSpec, ...]) -> None:
    s = sweep[0]
    lo, hi = sorted((s.start, s.stop))
    if not lo > 0.0:
        raise ConfigError("third-law: temperatures must be positive")
    if s.count < 8:
        raise ConfigError("third-law: the T_c sweep needs at least 8 points")
    if hi / lo < 99.999:
        raise ConfigError(
            "third-law: the T_c sweep must span at least two decades, got "
            f"{hi / lo:.3g}x"
        )


def parse_config(text: str) -> ExperimentConfig:
    """Parse and validate a TOML configuration document."""
    try:
        doc = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"invalid TOML: {exc}") from exc

    unknown = set(doc) - _TOP_KEYS
    if unknown:
        raise ConfigError(f"unknown top-level keys: {', '.join(sorted(unknown))}")
    if "experiment" not in doc:
        raise ConfigError("missing required key: experiment")
    experiment = doc["experiment"]
    if experiment not in _SCHEMAS:
        raise ConfigError(
            f"unknown experiment {experiment!r}; valid names: "
            + ", ".join(EXPERIMENT_NAMES)
        )
    schema = _SCHEMAS[experiment]

    output = doc.get("output")
    if output is not None and not isinstance(output, str):
        raise ConfigError("output must be a path string")
    fmt = doc.get("format", "csv")
    if fmt not in ("csv", "json"):
        raise ConfigError(f"format must be 'csv' or 'json', got {fmt!r}")
    seed = doc.get("seed", 0)
    if not (isinstance(seed, int) and not isinstance(seed, bool)):
        raise ConfigError(f"seed must be an integer, got {seed!r}")
    parallelism = doc.get("parallelism")
    if parallelism is not None and not (
        isinstance(parallelism, int)
        and not isinstance(parallelism, bool)
        and parallelism >= 1
    ):
        raise ConfigError(f"parallelism must be a positive integer, got {parallelism!r}")

    params = doc.get("params", {})
    if not isinstance(params, dict):
        raise ConfigError("params must be a table")
    for name, value in params.items():
        if name not in schema:
            raise ConfigError(
                f"params.{name} is not a parameter of {experiment}; known: "
                + ", ".join(schema)
            )
        _check_param(name, schema[name], value)

    raw_sweep = doc.get("sweep", [])
    if not isinstance(raw_sweep, list):
        raise ConfigError("sweep must be an array of tables")
    sweep = tuple(_check_sweep_entry(e, i) for i, e in enumerate(raw_sweep))

    lo, hi, allowed = _SWEEP_RULES[experiment]
    if not lo <= len(sweep) <= hi:
        span = str(lo) if lo == hi else f"{lo} to {hi}"
        raise ConfigError(
            f"{experiment} takes {span} sweep entr"
            + ("y" if span == "1" else "ies")
            + f", got {len(sweep)}"
        )
    if allowed is None:
        allowed = tuple(
            n for n, s in schema.items() if s.kind in ("float", "int")
        )
    seen: set[str] = set()
    for s in sweep:
        if s.param not in allowed:
            raise ConfigError(
                f"{experiment} cannot sweep {s.param!r}; sweepable: "
                + ", ".join(allowed)
            )
        if s.param in params:
            raise ConfigError(
                f"{s.param} is both fixed in params and swept; drop one"
            )
        if s.param in seen:
            raise ConfigError(f"{s.param} is swept twice")
        seen.add(s.param)

    missing = [
        n
        for n, s in schema.items()
        if s.required and n not in params and n not in seen
    ]
    if missing:
        raise ConfigError(
            f"{experiment} is missing required params: " + ", ".join(missing)
        )

    _cross_checks(experiment, params, seen)
    if experiment == "third-law":
        _check_third_law_span(sweep)
    if experiment == "validate-oracle":
        draws = params.get("draws", schema["draws"].default)
        if draws < 1:
            raise ConfigError(f"validate-oracle needs draws >= 1, got {draws}")

    return ExperimentConfig(
        experiment=experiment,
        params=dict(params),
        sweep=sweep,
        output=output,
        format=fmt,
        seed=seed,
        parallelism=parallelism,
        raw=text,
    )


def load_config(path: str) -> ExperimentConfig:
    """Read and validate the configuration file at ``path``."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return parse_config(text)


def resolve_params(cfg: ExperimentConfig) -> dict:
    """Parameters with schema defaults filled in, ready for a model call."""
    schema = _SCHEMAS[cfg.experiment]
    out = {}
    for name, spec in schema.items():
        if name in cfg.params:
            value = cfg.params[name]
        else:
            value = spec.default
        if spec.kind == "float" and value is not None:
            value = float(value)
        elif spec.kind == "strlist" and value is not None:
            value = list(value)
        out[name] = value
    return out


def build_grid(grid: str, start: float, stop: float, count: int) -> np.ndarray:
    """Materialize one sweep grid."""
    if grid == "log":
        return np.geomspace(start, stop, count)
    return np.linspace(start, stop, count)


def row_count(cfg: ExperimentConfig) -> int:
    """Number of rows the experiment will emit."""
    if cfg.experiment == "validate-oracle":
        resolved = resolve_params(cfg)
        return int(resolved["draws"]) * len(resolved["cases"])
    n = 1
    for s in cfg.sweep:
        n *= s.count
    return n
