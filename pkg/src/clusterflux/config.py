"""Run configuration: a run is a pure function of its RunConfig.

Configs serialize to canonical JSON; the sha256 of that form is embedded in
every output file so artifacts can be traced back to the exact settings.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import asdict, dataclass, field
from pathlib import Path

SEED_ENV_VAR = "CLUSTER_RELLICH_SEED"


@dataclass(frozen=True)
class RunConfig:
    domain: dict = field(default_factory=lambda: {"kind": "disk", "radius": 1.0,
                                                  "center": [0.0, 0.0]})
    spectrum_source: str = "analytic"          # "analytic" | "fem"
    fem_h: float = 0.05
    lambda_grid: tuple = (5.0, 40.0, 10)       # log-spaced (lo, hi, count)
    s_grid: tuple = (0.05, 0.2, 1.0)
    seed: int = 7
    quadrature: dict = field(default_factory=dict)
    outdir: str = "out"
    tolerances: dict = field(default_factory=dict)

    def canonical_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, separators=(",", ":"))

    def config_hash(self) -> str:
        return hashlib.sha256(self.canonical_json().encode()).hexdigest()[:16]

    def effective_seed(self) -> int:
        env = os.environ.get(SEED_ENV_VAR)
        return int(env) if env else self.seed


def config_from_json(obj: dict) -> RunConfig:
    known = {f for f in RunConfig.__dataclass_fields__}
    unknown = set(obj) - known
    if unknown:
        raise ValueError(f"unknown config fields: {sorted(unknown)}")
    kwargs = dict(obj)
    for key in ("lambda_grid", "s_grid"):
        if key in kwargs:
            kwargs[key] = tuple(kwargs[key])
    return RunConfig(**kwargs)


def load_config(path: str | Path) -> RunConfig:
    return config_from_json(json.loads(Path(path).read_text()))


def save_config(cfg: RunConfig, path: str | Path) -> None:
    Path(path).write_text(json.dumps(asdict(cfg), indent=2) + "\n")
