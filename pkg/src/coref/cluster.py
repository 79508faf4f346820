"""Entity clustering: transitive closure of antecedent decisions."""

from __future__ import annotations

from typing import Iterable, Sequence

from .resolve import Decision


class Clustering:
    """A partition of mention ids into entities.

    Entity labels are 1..E, ordered by the document position of each entity's
    earliest mention (positions follow the order of ``universe``).
    """

    def __init__(self, universe: Sequence[int],
                 entities: Iterable[Iterable[int]]):
        self.universe = tuple(universe)
        position = {mid: i for i, mid in enumerate(self.universe)}
        if len(position) != len(self.universe):
            raise ValueError("duplicate mention ids in universe")
        groups = [frozenset(e) for e in entities]
        seen: set[int] = set()
        for group in groups:
            if not group:
                raise ValueError("empty entity")
            for mid in group:
                if mid not in position:
                    raise ValueError(f"entity member {mid} not in universe")
                if mid in seen:
                    raise ValueError(f"mention {mid} appears in two entities")
                seen.add(mid)
        if seen != set(self.universe):
            missing = sorted(set(self.universe) - seen)
            raise ValueError(f"mentions not covered by any entity: {missing}")
        groups.sort(key=lambda g: min(position[mid] for mid in g))
        self.entities: tuple[frozenset[int], ...] = tuple(groups)
        self._label = {mid: i + 1 for i, group in enumerate(self.entities)
                       for mid in group}
        self._entity_of = {mid: group for group in self.entities
                           for mid in group}

    def label_of(self, mention_id: int) -> int:
        return self._label[mention_id]

    def entity_of(self, mention_id: int) -> frozenset[int]:
        return self._entity_of[mention_id]

    def same_entity(self, a: int, b: int) -> bool:
        return self._entity_of[a] is self._entity_of[b]

    def __len__(self) -> int:
        return len(self.entities)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Clustering):
            return NotImplemented
        return (set(self.universe) == set(other.universe)
                and set(self.entities) == set(other.entities))

    def __hash__(self) -> int:
        return hash((frozenset(self.universe), frozenset(self.entities)))

    def __repr__(self) -> str:
        return f"<Clustering {len(self.universe)} mentions, {len(self.entities)} entities>"


def transitive_closure(decisions: Iterable[Decision],
                       universe: Sequence[int]) -> Clustering:
    """Smallest equivalence relation containing the (mention, antecedent)
    pairs; NULL decisions contribute nothing, uncovered ids stay singletons.

    Union-find with union by size and path compression; labels are assigned
    deterministically afterwards.
    """
    ids = list(universe)
    known = set(ids)
    parent = {mid: mid for mid in ids}
    size = {mid: 1 for mid in ids}

    def find(x: int) -> int:
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:  # path compression
            parent[x], x = root, parent[x]
        return root

    for decision in decisions:
        if decision.mention_id not in known:
            raise ValueError(f"decision references unknown mention {decision.mention_id}")
        if decision.antecedent is None:
            continue
        if decision.antecedent not in known:
            raise ValueError(f"decision references unknown antecedent {decision.antecedent}")
        a, b = find(decision.mention_id), find(decision.antecedent)
        if a == b:
            continue
        if size[a] < size[b]:
            a, b = b, a
        parent[b] = a
        size[a] += size[b]

    groups: dict[int, list[int]] = {}
    for mid in ids:
        groups.setdefault(find(mid), []).append(mid)
    return Clustering(ids, groups.values())


def from_entities(universe: Sequence[int],
                  entities: Iterable[Iterable[int]]) -> Clustering:
    """Build a clustering from explicit entity sets; ids not listed in any
    entity become singletons."""
    groups = [list(e) for e in entities]
    listed = {mid for group in groups for mid in group}
    for mid in universe:
        if mid not in listed:
            groups.append([mid])
    return Clustering(universe, groups)
