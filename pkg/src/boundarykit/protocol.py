"""Synchronous distributed boundary-recognition protocol (simulated).

Six phases over an undirected network, all message traffic accounted in
abstract payload units (1 unit = one id, level, count, or threshold):

1. root election by min-id flooding until quiescence,
2. BFS tree construction from the root (parent = first announcer, ties to
   the smallest id; announcements carry the chosen parent so parents learn
   their children),
3. convergecast of sparse degree histograms to the root,
4. the root derives the typical degree dhat (argmax of the histogram after
   a centered moving average) and floods T = theta * C(dhat, 2) down the tree,
5. one neighbor-list exchange; each node computes stress1 locally and
   declares boundary iff stress1 <= T,
6. optional filter round: a declaration survives only if enough neighbors
   declared as well.

The simulation is a pure function of the network and configuration.
Disconnected networks are processed per component (each gets its own root,
histogram and threshold); the trace flags this.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .centrality import as_csr, _out_edges, stress1 as _stress1_all
from .theory import sigma_interior


def classify_local(stress1_value, threshold):
    """Local decision rule: boundary iff stress1 <= T (T must be >= 0)."""
    if threshold < 0:
        raise ValueError("threshold must be >= 0")
    return stress1_value <= threshold


@dataclass
class ProtocolConfig:
    theta: float = 1.0 / 3.0
    filter_enabled: bool = True
    filter_min_boundary_neighbors: int = 2
    root: int | None = None      # None: min-id election; else explicit root id
    degree_cap: int = 1024
    smoothing_window: int = 5

    def __post_init__(self):
        sigma = sigma_interior()
        if not (0.0 < self.theta < sigma):
            raise ValueError(
                f"theta must lie in (0, {sigma:.10f}) exclusive, got {self.theta}")
        if self.filter_min_boundary_neighbors < 0:
            raise ValueError("filter_min_boundary_neighbors must be >= 0")
        if self.degree_cap < 1:
            raise ValueError("degree_cap must be >= 1")
        if self.smoothing_window < 1 or self.smoothing_window % 2 == 0:
            raise ValueError("smoothing_window must be a positive odd integer")


@dataclass
class RoundRecord:
    round_no: int
    phase: int
    messages: int
    payload_units: int


@dataclass
class ComponentInfo:
    root: int
    size: int
    dhat: int
    threshold: float
    histogram: dict = field(default_factory=dict)  # degree -> count, as merged at the root


@dataclass
class NodeState:
    node_id: int
    degree: int
    level: int
    parent: int          # -1 for roots
    component: int
    dhat: int            # degree estimate received from the root
    threshold: float     # T received from the root
    stress1: int
    declared: bool
    filtered: bool
    classification: str  # "boundary" or "interior"


@dataclass
class ProtocolTrace:
    n: int
    rounds: list = field(default_factory=list)
    components: list = field(default_factory=list)
    # per-node arrays, filled by run_protocol
    level: np.ndarray = None
    parent: np.ndarray = None
    component_id: np.ndarray = None
    degrees: np.ndarray = None
    stress1: np.ndarray = None
    declared: np.ndarray = None
    filtered: np.ndarray = None
    labels: np.ndarray = None

    @property
    def multi_component(self):
        return len(self.components) > 1

    @property
    def total_messages(self):
        return sum(r.messages for r in self.rounds)

    @property
    def total_payload(self):
        return sum(r.payload_units for r in self.rounds)

    def phase_totals(self):
        out = {p: [0, 0] for p in range(1, 7)}
        for r in self.rounds:
            out[r.phase][0] += r.messages
            out[r.phase][1] += r.payload_units
        return {p: tuple(v) for p, v in out.items()}

    def node_state(self, v):
        ci = self.components[int(self.component_id[v])]
        return NodeState(
            node_id=int(v), degree=int(self.degrees[v]), level=int(self.level[v]),
            parent=int(self.parent[v]), component=int(self.component_id[v]),
            dhat=ci.dhat, threshold=ci.threshold,
            stress1=int(self.stress1[v]), declared=bool(self.declared[v]),
            filtered=bool(self.filtered[v]),
            classification="boundary" if self.labels[v] else "interior")


def _components(indptr, indices, n):
    """Component id per node; ids ordered by each component's smallest node."""
    comp = np.full(n, -1, dtype=np.int64)
    nxt = 0
    for s in range(n):
        if comp[s] >= 0:
            continue
        comp[s] = nxt
        frontier = np.array([s], dtype=np.int64)
        while len(frontier):
            _, dst = _out_edges(indptr, indices, frontier)
            new = dst[comp[dst] < 0]
            if len(new) == 0:
                break
            frontier = np.unique(new)
            comp[frontier] = nxt
        nxt += 1
    return comp, nxt


def _smoothed_mode(dense, window):
    """Argmax of the histogram after a centered moving average.

    Smoothing a sharp spike produces a plateau of tied maxima; ties resolve
    to the bucket with the largest raw count, then to the smallest index.
    """
    kernel = np.ones(window) / window
    smooth = np.convolve(dense.astype(float), kernel, mode="same")
    tied = np.nonzero(smooth == smooth.max())[0]
    return int(tied[np.argmax(dense[tied])])


def run_protocol(graph, config=None):
    """Simulate the protocol; returns (labels, trace).

    ``labels`` is a boolean array, True where the node ends classified as
    boundary.  ``graph`` may be a SensorNetwork or plain adjacency lists.
    """
    if config is None:
        config = ProtocolConfig()
    indptr, indices = as_csr(graph)
    n = len(indptr) - 1
    if n == 0:
        raise ValueError("network must contain at least one node")
    degs = np.diff(indptr)
    src_all = np.repeat(np.arange(n, dtype=np.int64), degs)
    dst_all = indices

    comp, ncomp = _components(indptr, indices, n)
    trace = ProtocolTrace(n=n, component_id=comp, degrees=degs.astype(np.int64))
    rnd = 0

    # Component roots: explicit root wins its own component, every other
    # component falls back to its minimum id (which is its BFS seed).
    comp_min = np.full(ncomp, n, dtype=np.int64)
    np.minimum.at(comp_min, comp, np.arange(n))
    roots = comp_min.copy()
    if config.root is not None:
        if not (0 <= config.root < n):
            raise ValueError(f"explicit root {config.root} is not a node id")
        roots[comp[config.root]] = config.root

    # -- phase 1: min-id flooding (skipped for an explicitly rooted component)
    participating = np.ones(n, dtype=bool)
    if config.root is not None:
        participating = comp != comp[config.root]
    best = np.arange(n, dtype=np.int64)
    active = participating.copy()
    while True:
        senders = np.nonzero(active & (degs > 0))[0]
        if len(senders) == 0:
            break
        rnd += 1
        trace.rounds.append(RoundRecord(rnd, 1, len(senders), len(senders)))
        mask = active[src_all]
        snapshot = best.copy()
        np.minimum.at(best, dst_all[mask], snapshot[src_all[mask]])
        active = best < snapshot

    # -- phase 2: BFS tree; announcements carry (level) for roots and
    # (level, parent) for everyone else, hence payloads 1 and 2.
    level = np.full(n, -1, dtype=np.int64)
    parent = np.full(n, -1, dtype=np.int64)
    level[roots] = 0
    frontier = np.sort(roots)
    depth = 0
    while len(frontier):
        senders = frontier[degs[frontier] > 0]
        if len(senders):
            rnd += 1
            unit = 1 if depth == 0 else 2
            trace.rounds.append(RoundRecord(rnd, 2, len(senders), unit * len(senders)))
        ssrc, sdst = _out_edges(indptr, indices, senders)
        newmask = level[sdst] < 0
        if not np.any(newmask):
            break
        cand = np.full(n, n, dtype=np.int64)
        np.minimum.at(cand, sdst[newmask], ssrc[newmask])
        frontier = np.unique(sdst[newmask])
        depth += 1
        level[frontier] = depth
        parent[frontier] = cand[frontier]

    children = [[] for _ in range(n)]
    for v in range(n):
        if parent[v] >= 0:
            children[parent[v]].append(v)

    # -- phase 3: convergecast of sparse degree histograms
    cap = config.degree_cap
    overflow_key = cap + 1
    height = np.ones(n, dtype=np.int64)
    for v in np.argsort(level, kind="stable")[::-1]:  # deepest levels first
        if parent[v] >= 0:
            height[parent[v]] = max(height[parent[v]], height[v] + 1)
    hists = [None] * n
    for v in np.argsort(height, kind="stable"):  # leaves upward
        h = Counter({min(int(degs[v]), cap) if degs[v] <= cap else overflow_key: 1})
        for c in children[v]:
            h.update(hists[c])
        hists[v] = h
    is_root = np.zeros(n, dtype=bool)
    is_root[roots] = True
    for hh in range(1, int(height.max()) + 1):
        senders = np.nonzero((height == hh) & ~is_root)[0]
        if len(senders) == 0:
            continue
        rnd += 1
        payload = sum(2 * len(hists[v]) for v in senders)
        trace.rounds.append(RoundRecord(rnd, 3, len(senders), payload))

    # -- phase 4: dhat and T at each root, flooded down the tree
    thresholds = np.zeros(ncomp)
    for ci in range(ncomp):
        root = int(roots[ci])
        dense = np.zeros(cap + 1, dtype=np.int64)
        for key, cnt in hists[root].items():
            if key <= cap:
                dense[key] = cnt
        dhat = _smoothed_mode(dense, config.smoothing_window)
        t_val = max(0.0, config.theta * dhat * (dhat - 1) / 2.0)
        thresholds[ci] = t_val
        trace.components.append(ComponentInfo(
            root=root, size=int(np.count_nonzero(comp == ci)),
            dhat=dhat, threshold=t_val,
            histogram={int(k): int(v) for k, v in sorted(hists[root].items())}))
    has_children = np.array([len(children[v]) > 0 for v in range(n)])
    for lv in range(0, int(level.max()) + 1):
        senders = np.nonzero((level == lv) & has_children)[0]
        if len(senders) == 0:
            continue
        rnd += 1
        trace.rounds.append(RoundRecord(rnd, 4, len(senders), 2 * len(senders)))

    # -- phase 5: neighbor-list exchange and the local decision
    senders = np.nonzero(degs > 0)[0]
    if len(senders):
        rnd += 1
        trace.rounds.append(RoundRecord(rnd, 5, len(senders), int(degs[senders].sum())))
    s1 = _stress1_all(graph)
    t_per_node = thresholds[comp]
    declared = s1 <= t_per_node  # degree <= 1 gives stress1 = 0 <= T, boundary
    labels = declared.copy()
    filtered = np.zeros(n, dtype=bool)

    # -- phase 6: declaration exchange and neighborhood filter
    if config.filter_enabled:
        senders = np.nonzero(declared & (degs > 0))[0]
        if len(senders):
            rnd += 1
            trace.rounds.append(RoundRecord(rnd, 6, len(senders), len(senders)))
        nb_declared = np.zeros(n, dtype=np.int64)
        mask = declared[src_all]
        np.add.at(nb_declared, dst_all[mask], 1)
        keep = declared & (nb_declared >= config.filter_min_boundary_neighbors)
        filtered = declared & ~keep
        labels = keep

    trace.level = level
    trace.parent = parent
    trace.stress1 = s1.astype(np.int64)
    trace.declared = declared
    trace.filtered = filtered
    trace.labels = labels
    return labels, trace


def classification_rates(labels, truth):
    """(false_negative_rate, false_positive_rate) against boolean ground truth."""
    labels = np.asarray(labels, dtype=bool)
    truth = np.asarray(truth, dtype=bool)
    if labels.shape != truth.shape:
        raise ValueError("labels and truth must have the same shape")
    nb = int(truth.sum())
    ni = int((~truth).sum())
    fn = float((~labels & truth).sum() / nb) if nb else 0.0
    fp = float((labels & ~truth).sum() / ni) if ni else 0.0
    return fn, fp


def boundary_strips(graph, labels):
    """Connected components of the boundary-labeled subgraph.

    Returns a list of sorted id arrays, largest component first (ties by
    smallest member id).
    """
    indptr, indices = as_csr(graph)
    n = len(indptr) - 1
    labels = np.asarray(labels, dtype=bool)
    seen = np.zeros(n, dtype=bool)
    strips = []
    for s in range(n):
        if not labels[s] or seen[s]:
            continue
        seen[s] = True
        members = [np.array([s], dtype=np.int64)]
        frontier = members[0]
        while len(frontier):
            _, dst = _out_edges(indptr, indices, frontier)
            new = np.unique(dst[labels[dst] & ~seen[dst]])
            if len(new) == 0:
                break
            seen[new] = True
            members.append(new)
            frontier = new
        strips.append(np.sort(np.concatenate(members)))
    strips.sort(key=lambda a: (-len(a), int(a[0])))
    return strips


@dataclass
class AccountingSummary:
    total_messages: int
    total_payload: int
    per_phase: dict
    payload_per_node: float
    scaled_payload: float  # totalPayload / (n * log2(n)^2); nan for n < 2


def message_accounting(trace):
    """Aggregate message counts from a protocol trace."""
    n = trace.n
    payload = trace.total_payload
    if n >= 2:
        scaled = payload / (n * np.log2(n) ** 2)
    else:
        scaled = float("nan")
    return AccountingSummary(
        total_messages=trace.total_messages,
        total_payload=payload,
        per_phase=trace.phase_totals(),
        payload_per_node=payload / n,
        scaled_payload=scaled)


def classification_to_csv(network, trace, path):
    """Per-node export: node_id,x,y,degree,stress1,classification,filtered."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("node_id,x,y,degree,stress1,classification,filtered\n")
        for v in range(trace.n):
            x, y = network.positions[v]
            cls = "boundary" if trace.labels[v] else "interior"
            fh.write(f"{v},{float(x)!r},{float(y)!r},{int(trace.degrees[v])},"
                     f"{int(trace.stress1[v])},{cls},{int(trace.filtered[v])}\n")


def trace_to_csv(trace, path):
    """Round log export: round,phase,messages,payload_units."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("round,phase,messages,payload_units\n")
        for r in trace.rounds:
            fh.write(f"{r.round_no},{r.phase},{r.messages},{r.payload_units}\n")
