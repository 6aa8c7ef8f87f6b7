"""Decorated-tree shapes and the family built from admissible trees."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

from ..errors import EmptyFamily, InfeasibleConfig
from ..graph_core.trees import CanonicalTree, canonical_code, tree_from_code
from .config import FamilyConfig
from .enumeration import enumerate_free_trees
from .pairings import Pairing, family_violations, pairing_violations, select_pairings
from .structure import admissible_roots


@dataclass(frozen=True)
class DecoratedTreeShape:
    tree: CanonicalTree
    pairing: Pairing
    path_len: int

    def __post_init__(self):
        if not self.tree.rooted:
            raise ValueError("shape trees are rooted")
        if any(v >= self.tree.size for v in self.pairing.vertices):
            raise ValueError("pairing vertex out of range")
        if self.path_len < 1:
            raise ValueError("path_len must be positive")

    @property
    def aleph(self) -> int:
        return self.tree.size

    @property
    def num_pairs(self) -> int:
        return len(self.pairing.pairs)

    @cached_property
    def free_aut(self) -> int:
        """Automorphism count of the underlying free tree (the weight's ``Aut``)."""
        return canonical_code(self.tree.to_graph()).aut

    @property
    def num_edges(self) -> int:
        return self.aleph - 1 + self.path_len * self.num_pairs

    def violations(self, cfg: FamilyConfig) -> list[str]:
        return pairing_violations(self.tree, self.pairing, cfg)

    def key(self) -> tuple:
        return (self.tree.code, self.pairing.pairs, self.path_len)

    def to_dict(self) -> dict:
        return {"tree_code": self.tree.code, "root": self.tree.root, "pairs": self.pairing.to_list(), "path_len": self.path_len}

    @classmethod
    def from_dict(cls, d: dict, path_len: int | None = None) -> "DecoratedTreeShape":
        t = tree_from_code(d["tree_code"])
        if int(d.get("root", 0)) != t.root:
            raise ValueError("shape root must be the canonical root")
        return cls(t, Pairing(tuple(tuple(p) for p in d["pairs"])), int(d.get("path_len", path_len)))


@dataclass(frozen=True)
class Family:
    shapes: tuple[DecoratedTreeShape, ...]
    config: FamilyConfig | None = None
    seed: int | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "shapes", tuple(self.shapes))
        keys = [s.key() for s in self.shapes]
        if len(set(keys)) != len(keys):
            raise ValueError("family shapes must be pairwise distinct")

    def __len__(self) -> int:
        return len(self.shapes)

    def __iter__(self):
        return iter(self.shapes)

    def union(self, other: "Family") -> "Family":
        return Family(self.shapes + other.shapes, self.config)

    def to_json(self) -> dict:
        cfg = None if self.config is None else self.config.to_dict()
        return {"config": cfg, "shapes": [s.to_dict() for s in self.shapes]}

    @classmethod
    def from_json(cls, obj: dict) -> "Family":
        cfg = None if obj.get("config") is None else FamilyConfig.from_dict(obj["config"])
        default_len = None if cfg is None else cfg.path_len
        return cls(tuple(DecoratedTreeShape.from_dict(s, default_len) for s in obj["shapes"]), cfg)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=1) + "\n"

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.dumps())

    @classmethod
    def load(cls, path: str | Path) -> "Family":
        return cls.from_json(json.loads(Path(path).read_text()))

    def digest(self) -> str:
        return hashlib.sha256(json.dumps(self.to_json(), sort_keys=True).encode()).hexdigest()[:16]


def build_family(cfg: FamilyConfig, seed: int = 0) -> Family:
    """Admissible rooted trees of size ``aleph`` with their selected pairings.

    Each free tree contributes through its first admissible root (in
    canonical vertex order); trees where no pairing fits are skipped.
    """
    shapes = []
    for free in enumerate_free_trees(cfg.aleph):
        roots = admissible_roots(free, cfg)
        if not roots:
            continue
        t = roots[0]
        try:
            ws = select_pairings(t, cfg, seed)
        except InfeasibleConfig:
            continue
        for w in ws:
            shape = DecoratedTreeShape(t, w, cfg.path_len)
            if shape.violations(cfg):
                raise AssertionError(f"selected pairing fails re-verification: {shape.violations(cfg)}")
            shapes.append(shape)
        if family_violations(t, ws, cfg):
            raise AssertionError("selected pairings fail the joint conditions")
    if not shapes:
        raise EmptyFamily(f"no admissible decorated tree with aleph={cfg.aleph} under this config")
    return Family(tuple(shapes), cfg, seed)
