"""Run configuration: tolerances, retry budget, output format."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, fields


@dataclass
class Config:
    root_tol: float = 1e-13
    tracking_tol: float = 1e-12
    quad_tol: float = 1e-10
    verify_tol: float = 1e-8
    shear_retries: int = 5
    degree_cap: int = 8
    output_format: str = "text"  # "text" | "json"
    seed: int = 0

    def __post_init__(self):
        for name in ("root_tol", "tracking_tol", "quad_tol", "verify_tol"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.degree_cap < 5:
            raise ValueError("degree_cap must be at least 5")
        if self.output_format not in ("text", "json"):
            raise ValueError("output_format must be 'text' or 'json'")

    @staticmethod
    def from_file(path) -> "Config":
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        known = {f.name for f in fields(Config)}
        bad = set(data) - known
        if bad:
            raise ValueError(f"unknown config keys: {sorted(bad)}")
        return Config(**data)

    def with_overrides(self, **kw) -> "Config":
        data = asdict(self)
        data.update({k: v for k, v in kw.items() if v is not None})
        return Config(**data)

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=False)
