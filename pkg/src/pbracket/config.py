"""Engine configuration: the calibrated convention tuple plus the default
signature size, persisted as plain JSON.

Resolution order: explicit path argument, then the PBRACKET_CONFIG
environment variable, then built-in defaults.  A path that is given but does
not exist is an error; silence would hide a misconfigured environment.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from typing import Optional

from .group_algebra import ConventionTuple, GroupSignature

__all__ = ["ENV_VAR", "EngineConfig", "load_config", "save_config", "resolve_config"]

ENV_VAR = "PBRACKET_CONFIG"


@dataclass(frozen=True)
class EngineConfig:
    convention: ConventionTuple
    dof: int = 1

    def __post_init__(self):
        if self.dof < 1:
            raise ValueError("dof must be a positive integer")

    @classmethod
    def default(cls) -> "EngineConfig":
        return cls(ConventionTuple.standard(), 1)

    def signature(self) -> GroupSignature:
        return GroupSignature(self.dof, self.convention)

    def to_json(self) -> dict:
        return {"convention": self.convention.to_json(), "dof": self.dof}

    @classmethod
    def from_json(cls, data: dict) -> "EngineConfig":
        return cls(ConventionTuple.from_json(data["convention"]),
                   int(data.get("dof", 1)))


def load_config(path: str) -> EngineConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return EngineConfig.from_json(json.load(fh))


def save_config(config: EngineConfig, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(config.to_json(), fh, indent=2, sort_keys=True)
        fh.write("\n")


def resolve_config(path: Optional[str] = None) -> EngineConfig:
    if path is not None:
        return load_config(path)
    env_path = os.environ.get(ENV_VAR)
    if env_path:
        return load_config(env_path)
    return EngineConfig.default()
