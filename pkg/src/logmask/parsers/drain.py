"""Fixed-depth prefix-tree template miner.

Messages are bucketed by token count, routed through a short prefix of
leading tokens (tokens containing digits route through a wildcard branch,
and each level spills excess distinct tokens into one wildcard child),
then merged into the most similar cluster at the leaf if its similarity
clears the threshold. Wildcards in a cluster template do not count toward
similarity, only toward the tie-break.

The leading-token routing is kept deliberately literal: a constant first
token that merely contains a digit (say an all-caps token name ending in
a number) is wildcarded at routing time, so messages differing only in
such tokens can share a branch and merge. That behavior is part of the
miner and is kept, not patched.
"""

from __future__ import annotations

from typing import Iterable, Iterator

WILDCARD = "<*>"


def _has_digit(token: str) -> bool:
    return any(ch.isdigit() for ch in token)


class _Node:
    __slots__ = ("children", "clusters")

    def __init__(self) -> None:
        self.children: dict[str, _Node] = {}
        self.clusters: list[_Cluster] = []


class _Cluster:
    __slots__ = ("template", "line_ids")

    def __init__(self, template: list[str], line_id: int) -> None:
        self.template = template
        self.line_ids = [line_id]


class DrainParser:
    """Online miner; feed lines in order, then read the assignments."""

    def __init__(
        self,
        depth: int = 4,
        similarity_threshold: float = 0.4,
        max_children: int = 100,
    ) -> None:
        if depth < 3:
            raise ValueError("depth must be at least 3")
        if not 0.0 < similarity_threshold <= 1.0:
            raise ValueError("similarity_threshold must be in (0, 1]")
        if max_children < 1:
            raise ValueError("max_children must be positive")
        self._levels = depth - 2
        self._st = similarity_threshold
        self._max_children = max_children
        self._root: dict[int, _Node] = {}
        self._clusters: list[_Cluster] = []

    def feed(self, line_id: int, content: str) -> None:
        tokens = content.split()
        cluster = None
        node = self._search(tokens)
        if node is not None:
            cluster = self._best_match(node.clusters, tokens)
        if cluster is None:
            cluster = _Cluster(list(tokens), line_id)
            self._add(tokens, cluster)
            self._clusters.append(cluster)
        else:
            cluster.line_ids.append(line_id)
            self._update_template(cluster, tokens)

    def assignments(self) -> Iterator[tuple[int, str]]:
        for cluster in self._clusters:
            template = " ".join(cluster.template)
            for line_id in cluster.line_ids:
                yield (line_id, template)

    def _search(self, tokens: list[str]) -> _Node | None:
        node = self._root.get(len(tokens))
        if node is None:
            return None
        for token in tokens[: self._levels]:
            child = node.children.get(token)
            if child is None:
                child = node.children.get(WILDCARD)
            if child is None:
                return None
            node = child
        return node

    def _add(self, tokens: list[str], cluster: _Cluster) -> None:
        node = self._root.setdefault(len(tokens), _Node())
        for token in tokens[: self._levels]:
            children = node.children
            if token in children:
                node = children[token]
            elif _has_digit(token):
                node = children.setdefault(WILDCARD, _Node())
            elif WILDCARD in children:
                if len(children) < self._max_children:
                    node = children.setdefault(token, _Node())
                else:
                    node = children[WILDCARD]
            elif len(children) + 1 < self._max_children:
                node = children.setdefault(token, _Node())
            else:
                node = children.setdefault(WILDCARD, _Node())
        node.clusters.append(cluster)

    def _best_match(
        self, clusters: list[_Cluster], tokens: list[str]
    ) -> _Cluster | None:
        best = None
        best_sim = -1.0
        best_params = -1
        for cluster in clusters:
            sim, params = self._similarity(cluster.template, tokens)
            if sim > best_sim or (sim == best_sim and params > best_params):
                best, best_sim, best_params = cluster, sim, params
        if best is not None and best_sim >= self._st:
            return best
        return None

    @staticmethod
    def _similarity(template: list[str], tokens: list[str]) -> tuple[float, int]:
        if not template:
            return (1.0, 0)
        same = 0
        params = 0
        for t_token, m_token in zip(template, tokens):
            if t_token == WILDCARD:
                params += 1
            elif t_token == m_token:
                same += 1
        return (same / len(template), params)

    @staticmethod
    def _update_template(cluster: _Cluster, tokens: list[str]) -> None:
        template = cluster.template
        for i, token in enumerate(tokens):
            if template[i] != token:
                template[i] = WILDCARD


def parse_drain(
    items: Iterable[tuple[int, str]],
    depth: int = 4,
    similarity_threshold: float = 0.4,
    max_children: int = 100,
) -> list[tuple[int, str]]:
    parser = DrainParser(depth, similarity_threshold, max_children)
    for line_id, content in items:
        parser.feed(line_id, content)
    return list(parser.assignments())
