"""Simulation config files.

A config is a TOML document with sections ``[game]``, ``[treatment]``,
``[behavior]`` and ``[run]``.  Keys are the field names of
:class:`~lqnet.game.GameParams`, :class:`~lqnet.agents.TreatmentSpec`,
:class:`~lqnet.agents.EffortRuleParams` and the run settings of
:class:`~lqnet.sim.SimConfig`.  ``[behavior]`` additionally accepts
``link_preset`` (name of a treatment's coefficient set), a
``[behavior.link_odds_ratios]`` table overriding individual coefficients as
odds ratios, and a ``[behavior.link_coeffs]`` table giving all of them in
log-odds units (takes precedence).
Unknown sections or keys are errors.

Example::

    [game]
    link_benefit = 6.0

    [treatment]
    link_benefit_on = true
    ranking_feedback_on = false

    [behavior]
    adjust_rate = 0.25
    link_preset = "link_benefit"

    [run]
    rounds = 40
    groups = 10
    master_seed = 20240101
"""

from __future__ import annotations

import math
from dataclasses import asdict, fields
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .agents import LINK_PRESETS, EffortRuleParams, LinkLogitCoeffs, TreatmentSpec
from .exceptions import ConfigError
from .game import GameParams
from .sim import LINK_BENEFIT_POINTS, SimConfig

SECTIONS = ("game", "treatment", "behavior", "run")
RUN_KEYS = ("rounds", "groups", "master_seed", "ranking_basis")
_COEFF_FIELDS = tuple(f.name for f in fields(LinkLogitCoeffs))


def _check_keys(section: str, table: dict, allowed) -> None:
    unknown = sorted(set(table) - set(allowed))
    if unknown:
        raise ConfigError(f"unknown key(s) in [{section}]: {', '.join(unknown)}")


def config_from_dict(doc: dict) -> SimConfig:
    unknown = sorted(set(doc) - set(SECTIONS))
    if unknown:
        raise ConfigError(f"unknown section(s): {', '.join(unknown)}")
    game = dict(doc.get("game", {}))
    treatment = dict(doc.get("treatment", {}))
    behavior = dict(doc.get("behavior", {}))
    run = dict(doc.get("run", {}))

    _check_keys("game", game, [f.name for f in fields(GameParams)])
    _check_keys("treatment", treatment, [f.name for f in fields(TreatmentSpec)])
    _check_keys("behavior", behavior,
                [f.name for f in fields(EffortRuleParams)]
                + ["link_preset", "link_odds_ratios", "link_coeffs"])
    _check_keys("run", run, RUN_KEYS)

    try:
        treat = TreatmentSpec(**{k: bool(v) for k, v in treatment.items()})
        if treat.link_benefit_on:
            game.setdefault("link_benefit", LINK_BENEFIT_POINTS)
        params = GameParams(**game)

        preset = behavior.pop("link_preset", None)
        odds = behavior.pop("link_odds_ratios", None)
        logits = behavior.pop("link_coeffs", None)
        coeffs = None
        if preset is not None:
            if preset not in LINK_PRESETS:
                raise ConfigError(f"unknown link_preset {preset!r}; choose from {sorted(LINK_PRESETS)}")
            coeffs = LINK_PRESETS[preset]
        if odds is not None:
            _check_keys("behavior.link_odds_ratios", odds, _COEFF_FIELDS)
            base = (coeffs or LINK_PRESETS[treat.name]).odds_ratios()
            base.update({k: float(v) for k, v in odds.items()})
            coeffs = LinkLogitCoeffs.from_odds_ratios(**base)
        if logits is not None:
            _check_keys("behavior.link_coeffs", logits, _COEFF_FIELDS)
            missing = sorted(set(_COEFF_FIELDS) - set(logits))
            if missing:
                raise ConfigError(f"[behavior.link_coeffs] missing: {', '.join(missing)}")
            coeffs = LinkLogitCoeffs(**{k: float(v) for k, v in logits.items()})
        rule = EffortRuleParams(**behavior)
        return SimConfig(game=params, treatment=treat, behavior=rule, link_coeffs=coeffs, **run)
    except ConfigError:
        raise
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from None


def load_config(path) -> SimConfig:
    path = Path(path)
    try:
        with path.open("rb") as fh:
            doc = tomllib.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"malformed config {path}: {exc}") from None
    return config_from_dict(doc)


def _toml_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        if math.isinf(v):
            return "-inf" if v < 0 else "inf"
        return repr(v)
    if isinstance(v, str):
        return '"' + v.replace("\\", "\\\\").replace('"', '\\"') + '"'
    raise TypeError(f"cannot encode {type(v).__name__} as TOML")


def dump_config(config: SimConfig) -> str:
    """Fully resolved TOML text that :func:`load_config` reads back unchanged."""
    run = {k: getattr(config, k) for k in RUN_KEYS}
    run["master_seed"] = int(run["master_seed"])
    logits = asdict(config.coeffs)
    lines = []
    for name, table in (("game", asdict(config.game)), ("treatment", asdict(config.treatment)),
                        ("behavior", asdict(config.behavior)), ("run", run)):
        lines.append(f"[{name}]")
        lines.extend(f"{k} = {_toml_value(v)}" for k, v in table.items())
        lines.append("")
        if name == "behavior":
            lines.append("[behavior.link_coeffs]")
            lines.extend(f"{k} = {_toml_value(v)}" for k, v in logits.items())
            lines.append("")
    return "\n".join(lines)
