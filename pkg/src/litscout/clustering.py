"""Grouping of extracted method names by string similarity.

Distance is 1 minus the normalized indel similarity: the minimum number
of single-character insertions and deletions turning one name into the
other (no substitutions), divided by the combined length. Clustering is
density-based over the pairwise matrix of distinct names; human curation
edits refine the machine grouping afterwards and are recorded for replay.

The DP kernel is numba-compiled because the property suite checks it
exhaustively against an independent oracle over millions of pairs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numba import njit

from .errors import LitScoutError, UnknownIdError


@njit(cache=True)
def _indel_ops_kernel(a: np.ndarray, b: np.ndarray) -> int:
    # insert/delete-only edit distance, two-row DP
    m, n = a.shape[0], b.shape[0]
    prev = np.empty(n + 1, dtype=np.int32)
    curr = np.empty(n + 1, dtype=np.int32)
    for j in range(n + 1):
        prev[j] = j
    for i in range(1, m + 1):
        curr[0] = i
        ai = a[i - 1]
        for j in range(1, n + 1):
            if ai == b[j - 1]:
                curr[j] = prev[j - 1]
            else:
                x = prev[j]
                y = curr[j - 1]
                curr[j] = (x if x < y else y) + 1
        prev, curr = curr, prev
    return int(prev[n])


@njit(cache=True)
def _ops_matrix_kernel(
    codes_a: np.ndarray, offs_a: np.ndarray, codes_b: np.ndarray, offs_b: np.ndarray
) -> np.ndarray:
    na = offs_a.shape[0] - 1
    nb = offs_b.shape[0] - 1
    out = np.empty((na, nb), dtype=np.int32)
    for i in range(na):
        a = codes_a[offs_a[i] : offs_a[i + 1]]
        for j in range(nb):
            b = codes_b[offs_b[j] : offs_b[j + 1]]
            out[i, j] = _indel_ops_kernel(a, b)
    return out


def _encode(s: str) -> np.ndarray:
    return np.frombuffer(s.encode("utf-32-le"), dtype=np.uint32)


def _prepare(s: str) -> str:
    return s.strip().casefold()


def _pack(strings: list[str]) -> tuple[np.ndarray, np.ndarray]:
    offs = np.zeros(len(strings) + 1, dtype=np.int64)
    arrays = []
    for i, s in enumerate(strings):
        arr = _encode(s)
        arrays.append(arr)
        offs[i + 1] = offs[i] + arr.shape[0]
    codes = np.concatenate(arrays) if arrays else np.empty(0, dtype=np.uint32)
    return codes, offs


def indel_distance(a: str, b: str) -> float:
    """Normalized indel distance in [0, 1]; case-insensitive after trimming."""
    pa, pb = _prepare(a), _prepare(b)
    total = len(pa) + len(pb)
    if total == 0:
        return 0.0
    if pa == pb:
        return 0.0
    return _indel_ops_kernel(_encode(pa), _encode(pb)) / total


def indel_matrix(names_a: list[str], names_b: list[str] | None = None) -> np.ndarray:
    """Pairwise normalized indel distances, batched through the kernel."""
    prep_a = [_prepare(s) for s in names_a]
    prep_b = prep_a if names_b is None else [_prepare(s) for s in names_b]
    codes_a, offs_a = _pack(prep_a)
    codes_b, offs_b = (codes_a, offs_a) if names_b is None else _pack(prep_b)
    ops = _ops_matrix_kernel(codes_a, offs_a, codes_b, offs_b).astype(np.float64)
    lens_a = np.diff(offs_a).astype(np.float64)
    lens_b = np.diff(offs_b).astype(np.float64)
    totals = lens_a[:, None] + lens_b[None, :]
    with np.errstate(invalid="ignore", divide="ignore"):
        out = np.where(totals > 0, ops / np.maximum(totals, 1.0), 0.0)
    return out


@dataclass(frozen=True)
class MethodMention:
    name: str
    eid: str
    year: int


@dataclass
class ClusteringParams:
    eps: float = 0.2
    min_samples: int = 2
    # count duplicate mentions of one name toward min_samples, so a method
    # extracted from five papers is never noise
    weight_by_mentions: bool = True


@dataclass
class MethodCluster:
    id: str
    label: str
    members: list[str]
    mentions: list[MethodMention]
    curated: bool = False
    is_noise: bool = False

    @property
    def mention_count(self) -> int:
        return len(self.mentions)


def _default_label(members: list[str], mentions: list[MethodMention]) -> str:
    counts: dict[str, int] = {m: 0 for m in members}
    for mention in mentions:
        counts[mention.name] += 1
    return min(members, key=lambda m: (-counts[m], len(m), m.casefold(), m))


def _sorted_mentions(mentions: list[MethodMention]) -> list[MethodMention]:
    return sorted(mentions, key=lambda m: (m.name.casefold(), m.name, m.eid, m.year))


def dbscan_cluster(
    mentions: list[MethodMention], params: ClusteringParams | None = None
) -> list[MethodCluster]:
    """Density-based clustering of distinct names; noise becomes singleton
    clusters flagged ``is_noise``. Deterministic and invariant under input
    permutation.
    """
    params = params or ClusteringParams()
    if not mentions:
        return []

    by_name: dict[str, list[MethodMention]] = {}
    for mention in mentions:
        by_name.setdefault(mention.name, []).append(mention)
    names = sorted(by_name, key=lambda n: (n.casefold(), n))
    weights = np.array(
        [len(by_name[n]) if params.weight_by_mentions else 1 for n in names], dtype=np.int64
    )

    dist = indel_matrix(names)
    neighbors = dist <= params.eps
    core = (neighbors @ weights) >= params.min_samples

    n = len(names)
    labels = np.full(n, -1, dtype=np.int64)
    cluster_idx = 0
    for start in range(n):
        if labels[start] != -1 or not core[start]:
            continue
        labels[start] = cluster_idx
        queue = [start]
        while queue:
            point = queue.pop(0)
            if not core[point]:
                continue
            for other in np.flatnonzero(neighbors[point]):
                if labels[other] == -1:
                    labels[other] = cluster_idx
                    queue.append(int(other))
        cluster_idx += 1

    groups: dict[int, list[str]] = {}
    noise: list[str] = []
    for i, name in enumerate(names):
        if labels[i] == -1:
            noise.append(name)
        else:
            groups.setdefault(int(labels[i]), []).append(name)

    raw: list[tuple[list[str], bool]] = [(members, False) for members in groups.values()]
    raw.extend(([name], True) for name in noise)
    raw.sort(key=lambda item: (item[0][0].casefold(), item[0][0]))

    clusters: list[MethodCluster] = []
    for idx, (members, is_noise) in enumerate(raw):
        cluster_mentions = _sorted_mentions(
            [m for name in members for m in by_name[name]]
        )
        clusters.append(
            MethodCluster(
                id=f"c{idx:03d}",
                label=_default_label(members, cluster_mentions),
                members=sorted(members, key=lambda n: (n.casefold(), n)),
                mentions=cluster_mentions,
                is_noise=is_noise,
            )
        )
    return clusters


# -- curation edits ----------------------------------------------------

def _next_user_id(clusters: list[MethodCluster]) -> str:
    taken = [int(c.id[1:]) for c in clusters if c.id.startswith("u") and c.id[1:].isdigit()]
    return f"u{(max(taken) + 1 if taken else 0):03d}"


def _rebuild(cluster: MethodCluster) -> MethodCluster:
    if not cluster.mentions:
        raise LitScoutError(f"cluster {cluster.id} would become empty")
    cluster.members = sorted({m.name for m in cluster.mentions}, key=lambda n: (n.casefold(), n))
    cluster.mentions = _sorted_mentions(cluster.mentions)
    return cluster


def filter_and_curate(clusters: list[MethodCluster], edits: list[dict]) -> list[MethodCluster]:
    """Apply human curation edits, returning a new cluster list.

    Supported ops: merge, rename, split_member, drop, move_mention (the
    mention-level edit manual classification needs), drop_singletons (the
    one-call filter for methods used only one time).
    """
    out = [
        MethodCluster(
            id=c.id,
            label=c.label,
            members=list(c.members),
            mentions=list(c.mentions),
            curated=c.curated,
            is_noise=c.is_noise,
        )
        for c in clusters
    ]

    def find(cluster_id: str) -> MethodCluster:
        for c in out:
            if c.id == cluster_id:
                return c
        raise UnknownIdError(f"unknown cluster id {cluster_id!r}")

    for edit in edits:
        op = edit.get("op")
        if op == "rename":
            find(edit["id"]).label = edit["label"]
            find(edit["id"]).curated = True
        elif op == "drop":
            target = find(edit["id"])
            out.remove(target)
        elif op == "merge":
            ids = edit.get("ids", [])
            if not ids:
                raise LitScoutError("merge requires at least one cluster id")
            merged_mentions: list[MethodMention] = []
            for cid in ids:
                cluster = find(cid)
                merged_mentions.extend(cluster.mentions)
                out.remove(cluster)
            merged = MethodCluster(
                id=_next_user_id(out),
                label=edit.get("label", ""),
                members=[],
                mentions=merged_mentions,
                curated=True,
            )
            _rebuild(merged)
            if not merged.label:
                merged.label = _default_label(merged.members, merged.mentions)
            out.append(merged)
        elif op == "split_member":
            source = find(edit["id"])
            name = edit["name"]
            if name not in source.members:
                raise UnknownIdError(f"cluster {source.id} has no member {name!r}")
            moved = [m for m in source.mentions if m.name == name]
            source.mentions = [m for m in source.mentions if m.name != name]
            if source.mentions:
                _rebuild(source)
                source.curated = True
            else:
                out.remove(source)
            split = MethodCluster(
                id=_next_user_id(out),
                label=edit.get("label", name),
                members=[name],
                mentions=_sorted_mentions(moved),
                curated=True,
            )
            out.append(split)
        elif op == "move_mention":
            eid, name = edit["eid"], edit["name"]
            source = None
            mention = None
            for c in out:
                for m in c.mentions:
                    if m.eid == eid and m.name == name:
                        source, mention = c, m
                        break
                if source:
                    break
            if source is None or mention is None:
                raise UnknownIdError(f"no mention ({name!r}, {eid}) in any cluster")
            target_label = edit["to_label"]
            target = next((c for c in out if c.curated and c.label == target_label), None)
            source.mentions.remove(mention)
            if source.mentions:
                _rebuild(source)
            else:
                out.remove(source)
            if target is None:
                target = MethodCluster(
                    id=_next_user_id(out),
                    label=target_label,
                    members=[],
                    mentions=[],
                    curated=True,
                )
                out.append(target)
            target.mentions.append(mention)
            _rebuild(target)
        elif op == "drop_singletons":
            out = [c for c in out if not (c.is_noise and c.mention_count == 1)]
        else:
            raise LitScoutError(f"unknown curation op {op!r}")

    out.sort(key=lambda c: (c.members[0].casefold(), c.members[0]))
    return out
