"""Embedding certificates: a pattern, a vertex mapping into the host, and
provenance metadata."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InputError
from .generators import PatternSpec


@dataclass
class EmbeddingCertificate:
    pattern: PatternSpec
    mapping: list  # [(pattern label, host vertex id), ...]
    method: dict = field(default_factory=dict)

    def host_vertices(self) -> list[int]:
        return [v for (_, v) in self.mapping]

    def to_json(self) -> dict:
        return {"pattern": self.pattern.to_json(),
                "mapping": [[lab, int(v)] for (lab, v) in self.mapping],
                "method": self.method}

    @classmethod
    def from_json(cls, obj: dict) -> "EmbeddingCertificate":
        try:
            spec = PatternSpec.from_json(obj["pattern"])
            mapping = [(str(lab), int(v)) for (lab, v) in obj["mapping"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed certificate: {exc}") from None
        return cls(spec, mapping, dict(obj.get("method", {})))
