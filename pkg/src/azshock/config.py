"""Run configuration: a frozen record plus a line-oriented file parser.

The file format is deliberately small: one ``key = value`` pair per
line, ``#`` starts a comment, blank lines are skipped, and dotted keys
address the grid block (``grid.n_left = 256``).  Later assignments win,
so a base file can be extended by appending overrides.
"""

from dataclasses import dataclass, field, replace
from typing import Optional

from .errors import ConfigError
from .fields import GridSpec

_MODES = ("formation", "develop", "both")

# scalar keys of RunConfig, with the coercion each expects
_FLOAT_KEYS = ("kappa", "b", "c_coef", "t_end",
               "tol_inner", "tol_outer", "newton_tol")
_OPT_FLOAT_KEYS = ("mbar", "dt")
_GRID_INT_KEYS = ("n_left", "n_right")
_GRID_FLOAT_KEYS = ("ratio",)
_GRID_OPT_KEYS = ("dy_min",)


@dataclass(frozen=True)
class RunConfig:
    """Validated inputs for a simulation run."""

    kappa: float = 4.0
    b: float = 1.0
    c_coef: float = 0.0
    mbar: Optional[float] = None
    grid: GridSpec = field(default_factory=GridSpec)
    dt: Optional[float] = None
    t_end: float = 1e-2
    tol_inner: float = 1e-7
    tol_outer: float = 1e-6
    newton_tol: float = 1e-12
    output_dir: str = "out"
    mode: str = "develop"

    def __post_init__(self):
        for name in ("tol_inner", "tol_outer", "newton_tol"):
            if not getattr(self, name) > 0.0:
                raise ConfigError(f"{name} must be positive, got "
                                  f"{getattr(self, name)}")
        if not self.t_end > 0.0:
            raise ConfigError(f"t_end must be positive, got {self.t_end}")
        if self.dt is not None and not self.dt > 0.0:
            raise ConfigError(f"dt must be positive, got {self.dt}")
        if self.grid.n_left < 32 or self.grid.n_right < 32:
            raise ConfigError("grid needs at least 32 nodes per side, got "
                              f"{self.grid.n_left}/{self.grid.n_right}")
        if self.mode not in _MODES:
            raise ConfigError(f"mode must be one of {_MODES}, "
                              f"got {self.mode!r}")


def parse_config(text):
    """Build a RunConfig from config-file text.

    Raises ConfigError with the offending line number on malformed
    lines, unknown keys, or values that fail validation.
    """
    scalars = {}
    grid_kw = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', "
                              f"got {line!r}", lineno=lineno)
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if not key or not value:
            raise ConfigError(f"line {lineno}: expected 'key = value', "
                              f"got {line!r}", lineno=lineno)
        try:
            if key.startswith("grid."):
                _assign_grid(grid_kw, key[5:], value)
            else:
                _assign_scalar(scalars, key, value)
        except ConfigError as exc:
            raise ConfigError(f"line {lineno}: {exc}", lineno=lineno) from None
    try:
        grid = GridSpec(**grid_kw) if grid_kw else GridSpec()
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    return RunConfig(grid=grid, **scalars)


def load_config(path):
    """Parse the config file at path."""
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config(fh.read())


def _assign_scalar(out, key, value):
    if key in _FLOAT_KEYS:
        out[key] = _as_float(key, value)
    elif key in _OPT_FLOAT_KEYS:
        out[key] = None if value.lower() == "none" else _as_float(key, value)
    elif key == "output_dir":
        out[key] = value
    elif key == "mode":
        out[key] = value
    else:
        raise ConfigError(f"unknown key {key!r}")


def _assign_grid(out, sub, value):
    if sub in _GRID_INT_KEYS:
        out[sub] = _as_int(f"grid.{sub}", value)
    elif sub in _GRID_FLOAT_KEYS:
        out[sub] = _as_float(f"grid.{sub}", value)
    elif sub in _GRID_OPT_KEYS:
        out[sub] = (None if value.lower() == "none"
                    else _as_float(f"grid.{sub}", value))
    else:
        raise ConfigError(f"unknown key 'grid.{sub}'")


def _as_float(key, value):
    try:
        return float(value)
    except ValueError:
        raise ConfigError(f"{key} expects a number, got {value!r}") from None


def _as_int(key, value):
    try:
        return int(value)
    except ValueError:
        raise ConfigError(f"{key} expects an integer, got {value!r}") from None


def with_overrides(cfg, **kw):
    """Copy of cfg with the given fields replaced; re-runs validation."""
    return replace(cfg, **kw)
