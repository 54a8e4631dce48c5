"""Problem config files.

Flat ``key = value`` pairs under a ``[problem]`` section::

    [problem]
    P = 5
    Q = 3
    r = "exp(-x)"
    alpha = 0
    beta = 0
    domain = [0, 1]
    n = 6
    exact = "..."        # optional, used for error reporting

Expressions may be quoted.  All expressions are parsed before anything is
computed, and errors name the offending key.
"""

import configparser
import json
from dataclasses import dataclass
from pathlib import Path

from .basis import DEFAULT_MAX_ORDER
from .errors import ConfigError, ExprError
from .expr import as_integrable, parse
from .solver import IVProblem

REQUIRED = ("P", "Q", "r")
OPTIONAL = ("alpha", "beta", "domain", "n", "exact")


@dataclass(frozen=True)
class RunConfig:
    problem: IVProblem
    exact: object = None
    path: str = None


def _unquote(text):
    text = text.strip()
    if len(text) >= 2 and text[0] == text[-1] and text[0] in "\"'":
        return text[1:-1]
    return text


def _expr(key, text):
    try:
        return as_integrable(parse(text))
    except ExprError as err:
        raise ConfigError(f"key {key!r}: {err}") from None


def _number(key, text, kind=float):
    try:
        value = kind(text)
    except ValueError:
        raise ConfigError(f"key {key!r}: expected a number, got {text!r}") from None
    return value


def parse_config(text, path=None, max_order=DEFAULT_MAX_ORDER):
    cp = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    cp.optionxform = str  # keys are case-sensitive (P vs p)
    try:
        cp.read_string(text, source=str(path or "<config>"))
    except configparser.Error as err:
        raise ConfigError(f"malformed config: {err}") from None
    if "problem" not in cp:
        raise ConfigError("missing [problem] section")
    sec = {k: _unquote(v) for k, v in cp["problem"].items()}
    for key in sec:
        if key not in REQUIRED + OPTIONAL:
            raise ConfigError(f"unknown key {key!r} in [problem]")
    for key in REQUIRED:
        if key not in sec or not sec[key]:
            raise ConfigError(f"missing required key {key!r}")

    funcs = {key: _expr(key, sec[key]) for key in REQUIRED}
    exact = _expr("exact", sec["exact"]) if sec.get("exact") else None

    domain = (0.0, 1.0)
    if "domain" in sec:
        try:
            domain = tuple(float(v) for v in json.loads(sec["domain"]))
        except (ValueError, TypeError):
            raise ConfigError(f"key 'domain': expected [a, b], got {sec['domain']!r}") from None
        if len(domain) != 2 or not domain[0] < domain[1]:
            raise ConfigError(f"key 'domain': expected [a, b] with a < b, got {sec['domain']!r}")
    n = _number("n", sec.get("n", "6"), int)
    if not 1 <= n <= max_order:
        raise ConfigError(f"key 'n': order must lie in 1..{max_order}, got {n}")
    problem = IVProblem(
        P=funcs["P"],
        Q=funcs["Q"],
        r=funcs["r"],
        alpha=_number("alpha", sec.get("alpha", "0")),
        beta=_number("beta", sec.get("beta", "0")),
        domain=domain,
        n=n,
    )
    return RunConfig(problem, exact, str(path) if path else None)


def load_config(path, max_order=DEFAULT_MAX_ORDER):
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as err:
        raise ConfigError(f"cannot read config {str(path)!r}: {err.strerror}") from None
    return parse_config(text, path, max_order)
