"""Utility functions: configuration and parsing of command-line input."""

import json
import logging
import math
import os
from dataclasses import dataclass, field

from .algebra import Hypercomplex, Scale, basis_unit
from .exceptions import ConfigError, ParseError, ScaleMismatchError
from .functions import Polynomial
from .regular import builtin, max_degree
from .sampling import UNIT_BOX, Point4, Region

debug_logger = logging.getLogger("scaled_hypercomplex.utils")

OUTPUT_FORMATS = ("json", "csv", "pretty")
SEED_LIMIT = 2 ** 64


def parse_config(config):
    """
    Load a config file as a dictionary.

    Parameters
    ----------
    config : str or None
        Path to a JSON file. If it is empty or None, an empty dict is returned.

    Returns
    -------
    dict
    """
    if not config:
        return {}
    try:
        with open(config) as config_file:
            config = json.load(config_file)
    except (OSError, json.JSONDecodeError) as error:
        raise ConfigError(f"Cannot read config file '{config}': {error}") from error
    if not isinstance(config, dict):
        raise ConfigError("A config file must contain a JSON object.")
    return config


def load_json(value):
    """
    Read JSON from a file path or, failing that, from the string itself.

    Parameters
    ----------
    value : str

    Returns
    -------
    object
    """
    if os.path.isfile(value):
        debug_logger.debug(f"Reading JSON from file {value}.")
        with open(value) as json_file:
            text = json_file.read()
    else:
        text = value
    try:
        return json.loads(text)
    except json.JSONDecodeError as error:
        message = f"'{value}' is neither a JSON file nor inline JSON."
        raise ParseError(message) from error


def parse_point(value):
    """Parse "x1,x2,x3,x4" or a JSON list into a Point4."""
    if isinstance(value, str):
        text = value.strip()
        if text.startswith("["):
            value = load_json(text)
        else:
            value = text.split(",")
    return Point4.coerce(value)


def parse_region(value):
    """Parse a region spec (file or inline JSON); None gives the unit box."""
    if value is None:
        return UNIT_BOX
    if isinstance(value, Region):
        return value
    spec = load_json(value) if isinstance(value, str) else value
    if not isinstance(spec, dict):
        raise ParseError(f"'{value}' is not a region spec.")
    return Region.from_dict(spec)


def _check_scale(scale, t):
    if t is not None and scale != Scale.coerce(t):
        raise ScaleMismatchError(Scale.coerce(t).t, scale.t)


def parse_operand(value, t):
    """
    Parse one operand of ``eval``.

    Accepted forms are a basis name ("1", "i", "j", "k"), four comma
    separated coordinates and a JSON object {"t": .., "x": [..]}.
    """
    text = value.strip()
    if text.lower() in ("1", "i", "j", "k"):
        return basis_unit(t, text)
    if text.startswith("{"):
        data = load_json(text)
        try:
            h = Hypercomplex.from_dict(data)
        except (KeyError, TypeError, ValueError) as error:
            raise ParseError(f"'{value}' is not a hypercomplex number.") from error
        _check_scale(h.scale, t)
        return h
    return Hypercomplex(t, *Point4.coerce(text.split(",")))


def parse_function(value, t):
    """
    Resolve ``value`` to a function of H_t.

    Builtin names are tried first, then a polynomial spec given as a file or
    inline JSON. A spec declared for another scale is a ScaleMismatchError.
    """
    try:
        return builtin(value, t)
    except ParseError:
        pass
    spec = load_json(value)
    if not isinstance(spec, dict):
        raise ParseError(f"'{value}' is neither a builtin nor a polynomial spec.")
    f = Polynomial.from_dict(spec)
    _check_scale(f.scale, t)
    return f


@dataclass(frozen=True)
class RunConfig:
    """
    Validated options shared by all commands.

    Parameters
    ----------
    t : float
        Scale of the ring.
    tol : float
        Verdict tolerance, strictly positive.
    seed : int
        Seed of the sampler, a 64-bit unsigned integer.
    samples : int
        Number of sample points, at least one.
    maxdeg : int
        Expansion degree, at most the degree cap.
    region : Region
    output : str
        One of "json", "csv" and "pretty".
    """

    t: float = -1.0
    tol: float = 1e-9
    seed: int = 0
    samples: int = 100
    maxdeg: int = 4
    region: Region = field(default=UNIT_BOX)
    output: str = "json"

    def __post_init__(self):
        try:
            scale = Scale(self.t)
        except ValueError as error:
            raise ConfigError(str(error)) from error
        object.__setattr__(self, "t", scale.t)
        if not (math.isfinite(self.tol) and self.tol > 0):
            raise ConfigError(f"Tolerance must be positive, got {self.tol}.")
        if not 0 <= self.seed < SEED_LIMIT:
            raise ConfigError(
                f"Seed must be a 64-bit unsigned integer, got {self.seed}."
            )
        if self.samples < 1:
            raise ConfigError(f"At least one sample is required, got {self.samples}.")
        limit = max_degree()
        if not 1 <= self.maxdeg <= limit:
            raise ConfigError(f"maxdeg must lie in 1..{limit}, got {self.maxdeg}.")
        if self.output not in OUTPUT_FORMATS:
            raise ConfigError(f"Unknown output format '{self.output}'.")

    @property
    def scale(self):
        return Scale(self.t)
