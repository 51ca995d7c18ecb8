"""Global configuration and per-run settings."""

from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass, field

from dowling_nested.errors import UsageError
from dowling_nested.groups import GroupTable, cyclic_group, dihedral_group, group_from_json, group_from_table

BASE_DIR = os.path.join(os.path.expanduser("~"), ".dowling-nested")
CONFIG_FILE = os.path.join(BASE_DIR, "config.json")


class Config:
    size_cap: int = 20_000          # max poset elements built exhaustively
    debug: bool = False
    seed: int = 1729                # randomized property suites
    trials: int = 200               # stellar subdivision trials


config = Config()


def load_user_config() -> dict:
    """Load user defaults from ~/.dowling-nested/config.json."""
    if not os.path.isfile(CONFIG_FILE):
        return {}
    try:
        with open(CONFIG_FILE, encoding="utf-8") as f:
            data = json.load(f)
    except (json.JSONDecodeError, OSError):
        return {}
    return data if isinstance(data, dict) else {}


def init_config():
    """Apply saved user defaults to the global config."""
    user_cfg = load_user_config()
    for key in ("size_cap", "seed", "trials"):
        if isinstance(user_cfg.get(key), int):
            setattr(config, key, user_cfg[key])
    if isinstance(user_cfg.get("debug"), bool):
        config.debug = user_cfg["debug"]


# ── Run configuration ───────────────────────────────────────────────────────

SUITES = ("lattice", "building", "trees", "subdivision", "filtration", "identities")


@dataclass
class RunConfig:
    command: str = "verify"
    n: int = 3
    group: str = "cyclic:2"
    object: str = "lattice"
    suites: list[str] = field(default_factory=lambda: list(SUITES))
    out: str = ""
    format: str = "json"
    cap: int = 0
    nmax: int = 7
    kmax: int = 5
    base: str = "lattice"
    building: str = "minimal"
    group_table: GroupTable | None = field(default=None, repr=False)

    def validate(self):
        if self.n < 1:
            raise UsageError(f"--n must be >= 1, got {self.n}")
        if self.cap < 0:
            raise UsageError("--cap must be positive")
        unknown = [s for s in self.suites if s not in SUITES]
        if unknown:
            raise UsageError(f"unknown suite(s): {', '.join(unknown)}")
        if self.format not in ("json", "dot"):
            raise UsageError(f"unknown format: {self.format}")

    def resolve_group(self) -> GroupTable:
        if self.group_table is None:
            self.group_table = parse_group_spec(self.group)
        return self.group_table

    def to_json(self) -> dict:
        data = asdict(self)
        data.pop("group_table")
        data.pop("out")
        return data


def parse_group_spec(spec: str) -> GroupTable:
    """``cyclic:M``, ``dihedral:M`` or ``table:FILE``."""
    kind, _, arg = spec.partition(":")
    try:
        if kind == "cyclic":
            return cyclic_group(int(arg))
        if kind == "dihedral":
            return dihedral_group(int(arg))
    except ValueError as exc:
        raise UsageError(f"bad group spec {spec!r}: {exc}") from None
    if kind == "table":
        try:
            with open(arg, encoding="utf-8") as f:
                data = json.load(f)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read group table {arg!r}: {exc}") from None
        mul = data["mul"] if isinstance(data, dict) else data
        return group_from_table(mul, name=os.path.basename(arg))
    raise UsageError(f"unknown group kind in {spec!r} (expected cyclic:M, dihedral:M or table:FILE)")


def load_run_config(path: str) -> RunConfig:
    """Read a RunConfig from a JSON file; unknown keys are rejected."""
    try:
        with open(path, encoding="utf-8") as f:
            data = json.load(f)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {path!r}: {exc}") from None
    if not isinstance(data, dict):
        raise UsageError(f"config {path!r} must hold a JSON object")

    run = RunConfig()
    group = data.pop("group", None)
    if isinstance(group, dict):
        try:
            run.group_table = group_from_json(group)
        except (KeyError, TypeError) as exc:
            raise UsageError(f"bad group entry in {path!r}: {exc}") from None
        run.group = group.get("kind", "table") + (f":{group['m']}" if "m" in group else "")
    elif isinstance(group, str):
        run.group = group
    elif group is not None:
        raise UsageError(f"config {path!r}: 'group' must be a string or an object, got {group!r}")
    if isinstance(data.get("suites"), str):
        data["suites"] = [s.strip() for s in data["suites"].split(",") if s.strip()]

    for key, value in data.items():
        if key not in RunConfig.__dataclass_fields__ or key == "group_table":
            raise UsageError(f"unknown config key {key!r}")
        _check_type(path, key, value)
        setattr(run, key, value)
    return run


_INT_KEYS = ("n", "cap", "nmax", "kmax")


def _check_type(path: str, key: str, value) -> None:
    if key in _INT_KEYS:
        ok = isinstance(value, int) and not isinstance(value, bool)
        expected = "an integer"
    elif key == "suites":
        ok = isinstance(value, list) and all(isinstance(s, str) for s in value)
        expected = "a list of strings"
    else:
        ok = isinstance(value, str)
        expected = "a string"
    if not ok:
        raise UsageError(f"config {path!r}: {key!r} must be {expected}, got {value!r}")
