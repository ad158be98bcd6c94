"""Finite posets of data levels and the preorder they induce on observer levels.

An observer level is just a ``frozenset`` of labels.  Nothing is normalized:
``{L, H}`` and ``{H}`` are different sets that happen to be equivalent.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

from .errors import (
    CycleAmongDistinctLabels,
    DuplicateLabel,
    PosetSyntaxError,
    UnknownLabel,
    UnknownLabelInEdge,
)

LABEL_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")
_EDGE_RE = re.compile(r"order:\s*(\S+)\s*<=\s*(\S+)\s*\Z")


@dataclass(frozen=True)
class LevelPoset:
    labels: tuple[str, ...]
    order: frozenset[tuple[str, str]]  # reflexive-transitive closure

    def check(self, *labels: str) -> None:
        for label in labels:
            if label not in self.labels:
                raise UnknownLabel(f"unknown level {label!r}")

    def leq(self, a: str, b: str) -> bool:
        self.check(a, b)
        return (a, b) in self.order

    def obs_leq(self, p1: Iterable[str], p2: Iterable[str]) -> bool:
        p2 = tuple(p2)
        return all(self.below(a, p2) for a in p1)

    def below(self, label: str, obs: Iterable[str]) -> bool:
        """Is ``label`` below some member of the observer level ``obs``?"""
        self.check(label, *obs)
        return any((label, m) in self.order for m in obs)

    def observer(self, labels: Iterable[str]) -> frozenset[str]:
        obs = frozenset(labels)
        self.check(*obs)
        return obs

    def observers(self) -> list[frozenset[str]]:
        """All subsets of the labels, smallest first."""
        out = [frozenset()]
        for label in self.labels:
            out += [s | {label} for s in out]
        return sorted(out, key=lambda s: (len(s), sorted(s)))

    def __str__(self):
        lines = ["levels: " + " ".join(self.labels)]
        for a, b in sorted(self.order):
            if a != b:
                lines.append(f"order: {a} <= {b}")
        return "\n".join(lines)


def make_poset(labels: Iterable[str], edges: Iterable[tuple[str, str]] = ()) -> LevelPoset:
    labels = tuple(labels)
    seen = set()
    for label in labels:
        if not LABEL_RE.match(label):
            raise PosetSyntaxError(f"bad level label {label!r}")
        if label in seen:
            raise DuplicateLabel(f"level {label!r} declared twice")
        seen.add(label)
    order = {(a, a) for a in labels}
    for a, b in edges:
        for x in (a, b):
            if x not in seen:
                raise UnknownLabelInEdge(f"edge mentions undeclared level {x!r}")
        order.add((a, b))
    # Warshall closure; posets here have a handful of labels
    for k in labels:
        for i in labels:
            if (i, k) in order:
                for j in labels:
                    if (k, j) in order:
                        order.add((i, j))
    for a, b in order:
        if a != b and (b, a) in order:
            raise CycleAmongDistinctLabels(f"{a} and {b} are mutually ordered")
    return LevelPoset(labels, frozenset(order))


def parse_poset(text: str) -> LevelPoset:
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines or not lines[0].startswith("levels:"):
        raise PosetSyntaxError("first line must be 'levels: <labels>'")
    labels = lines[0][len("levels:"):].split()
    edges = []
    for line in lines[1:]:
        m = _EDGE_RE.match(line)
        if not m:
            raise PosetSyntaxError(f"cannot parse line {line!r}")
        edges.append((m.group(1), m.group(2)))
    return make_poset(labels, edges)


def leq(P: LevelPoset, a: str, b: str) -> bool:
    return P.leq(a, b)


def obs_leq(P: LevelPoset, p1, p2) -> bool:
    return P.obs_leq(p1, p2)


def level_below_obs(P: LevelPoset, label: str, obs) -> bool:
    return P.below(label, obs)


# The two-level chain used throughout the tests and as the CLI default.
CHAIN = make_poset(["L", "H"], [("L", "H")])
