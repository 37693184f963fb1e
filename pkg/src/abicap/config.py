"""Key/value overrides and INI-style experiment files.

Every :class:`RunConfig` and :class:`ModelParams` field can be set by name,
either on the command line (``--set cl_interactive=0.75``) or in a file::

    nodes = 10                  # top-level keys are allowed

    [graph]
    mean_degree = 4
    rewire_prob = 0.0

    [params]
    cl_interactive = 0.75
    reinforce_increments = 0.15, 0.1

    [run]
    agents = 20
    seed = 7

    [conditions]
    moreFP = constructive
    lessFP = active

    [schedule.moreFP]
    switches = 20:active
    forced = 20-24:0
    order = 0, 1, 2, 3

An empty file yields the baseline four-mode experiment.
"""

from __future__ import annotations

import configparser
import dataclasses
import re
from pathlib import Path
from typing import Any, Callable, Iterable, Mapping, Optional

from .engine import RunConfig, Schedule
from .learner import EngagementMode, ModelParams


class ConfigError(ValueError):
    """Invalid override or config file; carries the offending field and line."""

    def __init__(self, message: str, field: Optional[str] = None, line: Optional[int] = None):
        self.field = field
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)


def _bool(text: str) -> bool:
    key = text.strip().lower()
    if key in ("1", "true", "yes", "on"):
        return True
    if key in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"expected a boolean, got {text!r}")


def _floats(text: str) -> tuple[float, ...]:
    return tuple(float(x) for x in text.split(",") if x.strip())


def _ints(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.split(",") if x.strip())


def _difficulty(text: str) -> float | tuple[float, ...]:
    values = _floats(text)
    return values[0] if len(values) == 1 else values


def _pair(text: str) -> tuple[float, float]:
    values = _floats(text)
    if len(values) != 2:
        raise ValueError(f"expected two comma-separated numbers, got {text!r}")
    return values


def _conditions(text: str) -> tuple[tuple[str, Schedule], ...]:
    modes = [EngagementMode.parse(x) for x in text.split(",") if x.strip()]
    if not modes:
        raise ValueError("need at least one condition")
    return tuple((m.value, Schedule.constant(m)) for m in modes)


PARAM_PARSERS: dict[str, Callable[[str], Any]] = {
    "b": _difficulty,
    "cl_passive": float,
    "cl_active": float,
    "cl_constructive": float,
    "cl_interactive": float,
    "gain": float,
    "mastery_threshold": float,
    "reinforce_increments": _pair,
    "interactive_constructive": _bool,
}

RUN_PARSERS: dict[str, Callable[[str], Any]] = {
    "name": str.strip,
    "topology": str.strip,
    "node_count": int,
    "mean_degree": float,
    "rewire_prob": float,
    "initial_weight": float,
    "agents_per_condition": int,
    "total_steps": int,
    "conditions": _conditions,
    "master_seed": int,
    "shared_topology": _bool,
    "track_nodes": _ints,
}

ALIASES = {
    "nodes": "node_count",
    "agents": "agents_per_condition",
    "steps": "total_steps",
    "seed": "master_seed",
}

SECTION_KEYS = {
    "graph": {"topology", "node_count", "mean_degree", "rewire_prob", "initial_weight", "shared_topology"},
    "params": set(PARAM_PARSERS),
    "run": {"name", "agents_per_condition", "total_steps", "master_seed", "track_nodes", "conditions"},
}


def override_keys() -> list[str]:
    """All canonical keys accepted by :func:`apply_overrides`."""
    return sorted({*PARAM_PARSERS, *RUN_PARSERS})


def canonical_key(key: str) -> str:
    key = key.strip()
    key = ALIASES.get(key, key)
    if key not in PARAM_PARSERS and key not in RUN_PARSERS:
        raise ConfigError(
            f"unknown key {key!r}; valid keys: {', '.join(override_keys())}", field=key
        )
    return key


def parse_assignment(text: str) -> tuple[str, str]:
    """Split ``key=value``; the key is validated, the value is not."""
    if "=" not in text:
        raise ConfigError(f"expected KEY=VALUE, got {text!r}")
    key, value = text.split("=", 1)
    return canonical_key(key), value.strip()


def _convert(key: str, raw: str, line: Optional[int] = None) -> Any:
    parser = PARAM_PARSERS.get(key) or RUN_PARSERS[key]
    try:
        return parser(raw)
    except ValueError as exc:
        raise ConfigError(str(exc), field=key, line=line) from None


def _build(
    base: RunConfig,
    values: Mapping[str, Any],
    lines: Mapping[str, int] | None = None,
) -> RunConfig:
    lines = lines or {}
    param_changes = {k: v for k, v in values.items() if k in PARAM_PARSERS}
    run_changes = {k: v for k, v in values.items() if k in RUN_PARSERS}
    try:
        params = dataclasses.replace(base.params, **param_changes)
    except ValueError as exc:
        field = _blame(str(exc), param_changes)
        raise ConfigError(str(exc), field=field, line=lines.get(field)) from None
    try:
        return dataclasses.replace(base, params=params, **run_changes)
    except ValueError as exc:
        field = _blame(str(exc), run_changes)
        raise ConfigError(str(exc), field=field, line=lines.get(field)) from None


def _blame(message: str, candidates: Iterable[str]) -> Optional[str]:
    # the last key set that the message mentions is the one that broke it
    candidates = list(candidates)
    named = [k for k in candidates if re.search(rf"\b{re.escape(k)}\b", message)]
    if named:
        return named[-1]
    return candidates[0] if len(candidates) == 1 else None


def apply_overrides(config: RunConfig, assignments: Iterable[str] | Mapping[str, str]) -> RunConfig:
    """Apply ``key=value`` strings (or a mapping) on top of ``config``.

    Every key is checked before any value is converted, so an unknown key is
    reported even when it follows a malformed value.
    """
    if isinstance(assignments, Mapping):
        pairs = [(canonical_key(k), str(v)) for k, v in assignments.items()]
    else:
        pairs = [parse_assignment(a) for a in assignments]
    values = {key: _convert(key, raw) for key, raw in pairs}
    return _build(config, values)


_SECTION_RE = re.compile(r"^\s*\[([^\]]+)\]")
_KEY_RE = re.compile(r"^\s*([^=:#;\s\[][^=:]*?)\s*[=:]")
_TOP = "__top__"


def _line_index(text: str) -> dict[tuple[str, str], int]:
    index: dict[tuple[str, str], int] = {}
    section = _TOP
    for lineno, line in enumerate(text.splitlines(), start=1):
        if m := _SECTION_RE.match(line):
            section = m.group(1).strip()
            index.setdefault((section, ""), lineno)
        elif m := _KEY_RE.match(line):
            index.setdefault((section, m.group(1).strip()), lineno)
    return index


def _parse_switches(text: str) -> tuple[tuple[int, EngagementMode], ...]:
    out = []
    for item in filter(None, (x.strip() for x in text.split(","))):
        step, mode = item.split(":")
        out.append((int(step), EngagementMode.parse(mode)))
    return tuple(out)


def _parse_forced(text: str) -> tuple[tuple[int, int, int], ...]:
    out = []
    for item in filter(None, (x.strip() for x in text.split(","))):
        span, node = item.split(":")
        first, _, last = span.partition("-")
        out.append((int(first), int(last or first), int(node)))
    return tuple(out)


SCHEDULE_KEYS = {"mode", "switches", "forced", "order"}


def loads_config(text: str, name: str = "custom", base: Optional[RunConfig] = None) -> RunConfig:
    """Parse config-file text; see the module docstring for the format."""
    parser = configparser.ConfigParser(
        interpolation=None, inline_comment_prefixes=("#", ";"), empty_lines_in_values=False
    )
    parser.optionxform = str  # condition names are case-sensitive
    lines = _line_index(text)
    try:
        parser.read_string(f"[{_TOP}]\n{text}")
    except configparser.Error as exc:
        lineno = getattr(exc, "lineno", None)
        raise ConfigError(str(exc).splitlines()[0], line=lineno - 1 if lineno else None) from None

    base = base or RunConfig(name=name)
    values: dict[str, Any] = {}
    key_lines: dict[str, int] = {}
    conditions: dict[str, dict[str, str]] = {}
    cond_lines: dict[str, int] = {}

    for section in parser.sections():
        items = parser.items(section)
        if section == "conditions":
            for cname, mode in items:
                conditions.setdefault(cname, {})["mode"] = mode
                cond_lines[cname] = lines.get((section, cname))
            continue
        if section.startswith("schedule."):
            cname = section[len("schedule."):].strip()
            entry = conditions.setdefault(cname, {})
            cond_lines.setdefault(cname, lines.get((section, "")))
            for key, raw in items:
                if key not in SCHEDULE_KEYS:
                    raise ConfigError(
                        f"unknown schedule key; expected one of {sorted(SCHEDULE_KEYS)}",
                        field=key, line=lines.get((section, key)),
                    )
                entry[key] = raw
            continue
        if section != _TOP and section not in SECTION_KEYS:
            raise ConfigError(
                f"unknown section [{section}]", line=lines.get((section, ""))
            )
        for key, raw in items:
            line = lines.get((section, key))
            try:
                canon = canonical_key(key)
            except ConfigError as exc:
                raise ConfigError(str(exc).split(": ", 1)[-1], field=key, line=line) from None
            if section != _TOP and canon not in SECTION_KEYS[section]:
                home = next(s for s, keys in SECTION_KEYS.items() if canon in keys)
                raise ConfigError(f"belongs in section [{home}]", field=key, line=line)
            values[canon] = _convert(canon, raw, line)
            key_lines[canon] = line

    if conditions:
        values["conditions"] = tuple(
            (cname, _schedule(cname, entry, cond_lines.get(cname)))
            for cname, entry in conditions.items()
        )
        key_lines.setdefault("conditions", min(filter(None, cond_lines.values()), default=None))

    return _build(base, values, key_lines)


def _schedule(cname: str, entry: Mapping[str, str], line: Optional[int]) -> Schedule:
    if "mode" not in entry:
        raise ConfigError(f"condition {cname!r} has no mode", field=cname, line=line)
    try:
        return Schedule(
            EngagementMode.parse(entry["mode"]),
            mode_switches=_parse_switches(entry.get("switches", "")),
            forced_practice=_parse_forced(entry.get("forced", "")),
            practice_order=_ints(entry["order"]) if "order" in entry else None,
        )
    except ValueError as exc:
        raise ConfigError(f"condition {cname!r}: {exc}", field=cname, line=line) from None


def load_config_file(path: str | Path) -> RunConfig:
    """Read an experiment file; the run is named after the file stem unless ``name`` is set."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from None
    return loads_config(text, name=path.stem)
