"""Synthetic network models and the small-graph census, all seed-driven.

Six generative models are provided (short codes in parentheses):

* ``erdos_renyi`` (er)        -- each vertex pair connected independently
  with probability p;
* ``scale_free`` (sf)         -- preferential attachment growing from a
  complete seed of k vertices, k distinct degree-weighted targets per new
  vertex;
* ``small_world`` (sw)        -- ring lattice over k nearest neighbors
  with per-edge rewiring probability p (edge count preserved);
* ``geographical`` (gr)       -- vertices on a sqrt(n) x sqrt(n) grid,
  pair probability kappa**(-manhattan distance);
* ``community_structure`` (cs)-- independent community memberships with
  probability p_c, one edge trial with probability p per pair sharing at
  least one community;
* ``kronecker`` (kg)          -- stochastic Kronecker graph on 2**k
  vertices from a 2x2 initiator of probabilities.

Every generator consumes an explicit 64-bit seed and is a pure function
of its arguments: the same configuration always yields the same graph,
regardless of scheduling. Seeds for experiment samples are derived with
:func:`derive_seed`, a fixed splitmix64 chain over (base seed, model id,
cell index, sample index); connectivity retries fold the retry index into
the same chain via :func:`mix64`.
"""

from __future__ import annotations

import itertools
import json
import logging
from dataclasses import dataclass, field
from math import isqrt
from pathlib import Path
from typing import Mapping

import numpy as np

from .graphs import Graph, FormatError, format_edge_list, is_connected, parse_graph6

log = logging.getLogger(__name__)

MODELS = ("cs", "er", "gr", "sf", "sw", "kg")

# Stable identifiers folded into derived seeds; order is frozen.
MODEL_IDS = {"er": 1, "sf": 2, "sw": 3, "gr": 4, "cs": 5, "kg": 6, "nonisomorphic": 7}

_MASK64 = (1 << 64) - 1

# Connected graphs up to isomorphism on 1..7 vertices.
CONNECTED_CLASS_COUNTS = (1, 1, 2, 6, 21, 112, 853)

DEFAULT_MAX_RETRIES = 100


class GenerationError(RuntimeError):
    """Connectivity retry budget exhausted for a model configuration."""


def splitmix64(x: int) -> int:
    """One splitmix64 step; the sole primitive behind seed derivation."""
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def mix64(seed: int, *components: int) -> int:
    """Fold integer components into a seed: repeated splitmix64 of XORs."""
    state = splitmix64(seed & _MASK64)
    for c in components:
        state = splitmix64(state ^ (int(c) & _MASK64))
    return state


def derive_seed(base_seed: int, model: str, cell_index: int, sample_index: int) -> int:
    """Per-sample seed from the experiment base seed (retry folds in later)."""
    return mix64(base_seed, MODEL_IDS[model], cell_index, sample_index)


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed & _MASK64))


def _edges_from_mask(iu: np.ndarray, ju: np.ndarray, mask: np.ndarray) -> list[tuple[int, int]]:
    return list(zip(iu[mask].tolist(), ju[mask].tolist()))


def erdos_renyi(n: int, p: float, seed: int) -> Graph:
    """Uniform random graph: each of the C(n,2) pairs kept with probability p."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability must be in [0, 1], got {p}")
    rng = _rng(seed)
    iu, ju = np.triu_indices(n, 1)
    mask = rng.random(iu.size) < p
    return Graph(n, _edges_from_mask(iu, ju, mask))


def scale_free(n: int, k: int, seed: int) -> Graph:
    """Preferential attachment from a complete seed graph of k vertices.

    Each arriving vertex attaches to k distinct existing vertices chosen
    with probability proportional to current degree, so the final edge
    count is exactly C(k,2) + (n-k)*k.
    """
    if not 2 <= k < n:
        raise ValueError(f"need 2 <= k < n, got k={k}, n={n}")
    rng = _rng(seed)
    edges = [(i, j) for i in range(k) for j in range(i + 1, k)]
    deg = np.zeros(n)
    deg[:k] = k - 1
    for new in range(k, n):
        weights = deg[:new].copy()
        for _ in range(k):
            cum = np.cumsum(weights)
            draw = rng.random() * cum[-1]
            target = int(np.searchsorted(cum, draw, side="right"))
            if target >= new or weights[target] == 0.0:
                # Float roundoff pushed the draw past the last bucket.
                target = int(np.flatnonzero(weights)[-1])
            edges.append((target, new))
            deg[target] += 1
            weights[target] = 0.0
        deg[new] = k
    return Graph(n, edges)


def small_world(n: int, k: int, p: float, seed: int) -> Graph:
    """Ring lattice over k nearest neighbors with probability-p rewiring.

    Each lattice edge is considered once in a fixed scan order (by vertex,
    then by neighbor offset); a rewired endpoint is resampled until it
    creates neither a self-loop nor a duplicate, so m = n*k/2 always.
    """
    if k % 2:
        raise ValueError(f"neighbor count k must be even, got {k}")
    if not 0 <= k < n:
        raise ValueError(f"need 0 <= k < n, got k={k}, n={n}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"rewiring probability must be in [0, 1], got {p}")
    rng = _rng(seed)
    half = k // 2
    edge_set = set()
    for u in range(n):
        for d in range(1, half + 1):
            w = (u + d) % n
            edge_set.add((u, w) if u < w else (w, u))
    degrees = {u: k for u in range(n)}
    for u in range(n):
        for d in range(1, half + 1):
            if rng.random() >= p:
                continue
            if degrees[u] >= n - 1:
                continue  # no valid endpoint remains; keep the lattice edge
            w = (u + d) % n
            old = (u, w) if u < w else (w, u)
            while True:
                cand = int(rng.integers(n))
                if cand == u:
                    continue
                e = (u, cand) if u < cand else (cand, u)
                if e in edge_set:
                    continue
                break
            edge_set.remove(old)
            edge_set.add(e)
            degrees[w] -= 1
            degrees[cand] += 1
    return Graph(n, sorted(edge_set))


def grid_pair_probabilities(n: int, kappa: float) -> np.ndarray:
    """Connection probabilities kappa**(-s) on the sqrt(n) grid.

    ``s`` is the Manhattan distance between grid positions
    ``(i // side, i % side)``; the diagonal is zeroed.
    """
    if kappa <= 1.0:
        raise ValueError(f"kappa must exceed 1, got {kappa}")
    side = isqrt(n)
    if side * side != n:
        raise ValueError(f"geographical model needs a square vertex count, got {n}")
    idx = np.arange(n)
    rows, cols = idx // side, idx % side
    s = np.abs(rows[:, None] - rows[None, :]) + np.abs(cols[:, None] - cols[None, :])
    probs = float(kappa) ** (-s.astype(float))
    np.fill_diagonal(probs, 0.0)
    return probs


def geographical(n: int, kappa: float, seed: int) -> Graph:
    """Grid-embedded random graph with distance-decaying edge probability."""
    probs = grid_pair_probabilities(n, kappa)
    rng = _rng(seed)
    iu, ju = np.triu_indices(n, 1)
    mask = rng.random(iu.size) < probs[iu, ju]
    return Graph(n, _edges_from_mask(iu, ju, mask))


def community_memberships(n: int, p_c: float, c: int, seed: int) -> np.ndarray:
    """Boolean (n, c) membership matrix; the first sampling stage of
    :func:`community_structure` under the same seed."""
    if not 0.0 <= p_c <= 1.0:
        raise ValueError(f"membership probability must be in [0, 1], got {p_c}")
    if c < 1:
        raise ValueError(f"community count must be >= 1, got {c}")
    return _rng(seed).random((n, c)) < p_c


def community_structure(n: int, p_c: float, p: float, c: int, seed: int) -> Graph:
    """Overlapping-community graph.

    Each vertex joins each of the c communities independently with
    probability p_c; each pair sharing at least one community gets a
    single edge trial with probability p. Pairs sharing none stay
    unconnected.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability must be in [0, 1], got {p}")
    rng = _rng(seed)
    member = rng.random((n, c)) < p_c
    shared = (member.astype(np.int64) @ member.T.astype(np.int64)) > 0
    iu, ju = np.triu_indices(n, 1)
    mask = shared[iu, ju] & (rng.random(iu.size) < p)
    return Graph(n, _edges_from_mask(iu, ju, mask))


@dataclass(frozen=True)
class KroneckerInitiator:
    """Named 2x2 matrix of edge probabilities."""

    name: str
    p: tuple[float, float, float, float]  # row-major

    def __post_init__(self):
        if len(self.p) != 4:
            raise ValueError("initiator needs exactly 4 probabilities (row-major)")
        if any(not 0.0 <= x <= 1.0 for x in self.p):
            raise ValueError(f"initiator entries must lie in [0, 1]: {self.p}")

    @property
    def matrix(self) -> np.ndarray:
        return np.asarray(self.p, dtype=float).reshape(2, 2)


def load_initiators(path) -> dict[str, KroneckerInitiator]:
    """Read a JSON file mapping name -> [p00, p01, p10, p11]."""
    raw = json.loads(Path(path).read_text(encoding="utf-8"))
    out = {}
    for name, values in raw.items():
        out[name] = KroneckerInitiator(name=name, p=tuple(float(v) for v in values))
    return out


def kronecker_pair_probabilities(initiator: KroneckerInitiator, k: int) -> np.ndarray:
    """Edge probability matrix of the k-th Kronecker power of the initiator.

    Entry (i, j) is the product over bit levels l of P[bit_l(i)][bit_l(j)].
    """
    if k < 1:
        raise ValueError(f"Kronecker power must be >= 1, got {k}")
    p = initiator.matrix
    n = 1 << k
    idx = np.arange(n)
    probs = np.ones((n, n))
    for level in range(k):
        bits = (idx >> level) & 1
        probs *= p[bits[:, None], bits[None, :]]
    return probs


def kronecker(initiator: KroneckerInitiator, k: int, seed: int) -> Graph:
    """Stochastic Kronecker graph on 2**k vertices.

    The upper triangle (i < j) is sampled independently with the ordered
    pair's product probability; self-loops are never drawn.
    """
    probs = kronecker_pair_probabilities(initiator, k)
    n = probs.shape[0]
    rng = _rng(seed)
    iu, ju = np.triu_indices(n, 1)
    mask = rng.random(iu.size) < probs[iu, ju]
    return Graph(n, _edges_from_mask(iu, ju, mask))


@dataclass(frozen=True)
class ModelConfig:
    """One fully-resolved generator invocation: model, size, params, seed."""

    model: str
    n: int
    params: Mapping[str, object] = field(default_factory=dict)
    seed: int = 0

    def __post_init__(self):
        if self.model not in MODELS:
            raise ValueError(f"unknown model {self.model!r}; expected one of {MODELS}")
        if self.n < 1:
            raise ValueError(f"vertex count must be >= 1, got {self.n}")
        if not 0 <= self.seed <= _MASK64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        object.__setattr__(self, "params", dict(self.params))
        if self.model == "kg":
            k = int(self.params["k"])
            if self.n != (1 << k):
                raise ValueError(f"Kronecker graph needs n = 2**k, got n={self.n}, k={k}")

    def describe(self) -> str:
        inner = ", ".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        return f"{self.model}(n={self.n}, {inner}, seed={self.seed})"


def generate(cfg: ModelConfig) -> Graph:
    """Draw one raw sample for the configuration (no connectivity retry)."""
    p = cfg.params
    if cfg.model == "er":
        return erdos_renyi(cfg.n, float(p["p"]), cfg.seed)
    if cfg.model == "sf":
        return scale_free(cfg.n, int(p["k"]), cfg.seed)
    if cfg.model == "sw":
        return small_world(cfg.n, int(p["k"]), float(p["p"]), cfg.seed)
    if cfg.model == "gr":
        return geographical(cfg.n, float(p["kappa"]), cfg.seed)
    if cfg.model == "cs":
        return community_structure(
            cfg.n, float(p["p_c"]), float(p["p"]), int(p["c"]), cfg.seed
        )
    if cfg.model == "kg":
        initiator = KroneckerInitiator(
            name=str(p.get("initiator_name", "inline")),
            p=tuple(float(x) for x in p["initiator"]),
        )
        return kronecker(initiator, int(p["k"]), cfg.seed)
    raise ValueError(f"unknown model {cfg.model!r}")


def ensure_connected(
    cfg: ModelConfig, max_retries: int = DEFAULT_MAX_RETRIES
) -> tuple[Graph, int]:
    """Resample with retry-derived seeds until the graph is connected.

    Returns the first connected sample and the number of failed attempts
    before it (0 when the first draw succeeds). Attempt r uses seed
    ``mix64(cfg.seed, r)``.
    """
    if max_retries < 1:
        raise ValueError(f"max_retries must be >= 1, got {max_retries}")
    for retry in range(max_retries):
        attempt = ModelConfig(
            model=cfg.model, n=cfg.n, params=cfg.params, seed=mix64(cfg.seed, retry)
        )
        g = generate(attempt)
        if is_connected(g):
            return g, retry
    raise GenerationError(
        f"no connected sample within {max_retries} retries for {cfg.describe()}"
    )


def write_edge_list_corpus(
    configs, out_dir, max_retries: int = DEFAULT_MAX_RETRIES
) -> dict:
    """Sample one connected network per config into a directory.

    Writes ``sample<idx>.edges`` files plus a ``manifest.json`` recording
    model, params, seed, and retry count for every sample; returns the
    manifest dictionary.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    entries = []
    for idx, cfg in enumerate(configs):
        g, retries = ensure_connected(cfg, max_retries)
        name = f"sample{idx:05d}.edges"
        (out_dir / name).write_text(format_edge_list(g), encoding="utf-8")
        entries.append({
            "file": name,
            "model": cfg.model,
            "n": cfg.n,
            "params": dict(cfg.params),
            "seed": cfg.seed,
            "retries": retries,
        })
    manifest = {"samples": entries}
    (out_dir / "manifest.json").write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    return manifest


def _permutation_bit_sources(n: int) -> tuple[np.ndarray, np.ndarray]:
    """For every vertex permutation, where each upper-triangle bit comes from.

    Bits are indexed in graph6 column order; returns (sources, weights)
    with sources shaped (n!, n*(n-1)/2) and big-endian bit weights.
    """
    pairs = [(i, j) for j in range(1, n) for i in range(j)]
    pair_index = {pair: idx for idx, pair in enumerate(pairs)}
    perms = list(itertools.permutations(range(n)))
    sources = np.empty((len(perms), len(pairs)), dtype=np.int64)
    for row, perm in enumerate(perms):
        for col, (i, j) in enumerate(pairs):
            a, b = perm[i], perm[j]
            sources[row, col] = pair_index[(a, b) if a < b else (b, a)]
    npairs = len(pairs)
    weights = (1 << np.arange(npairs - 1, -1, -1, dtype=np.int64)) if npairs else np.zeros(0, dtype=np.int64)
    return sources, weights


def _connected_codes(n: int) -> np.ndarray:
    """Ascending bit-codes of all connected labeled graphs on n vertices."""
    npairs = n * (n - 1) // 2
    codes = np.arange(1 << npairs, dtype=np.int64)
    if n == 1:
        return codes
    shifts = np.arange(npairs - 1, -1, -1, dtype=np.int64)
    bits = ((codes[:, None] >> shifts[None, :]) & 1).astype(np.uint8)
    pairs = [(i, j) for j in range(1, n) for i in range(j)]
    rows = np.zeros((codes.size, n), dtype=np.uint8)
    for col, (i, j) in enumerate(pairs):
        rows[:, i] |= bits[:, col] << j
        rows[:, j] |= bits[:, col] << i
    reach = np.ones(codes.size, dtype=np.uint8)
    for _ in range(n - 1):
        grown = reach.copy()
        for v in range(n):
            grown |= rows[:, v] * ((reach >> v) & 1)
        if np.array_equal(grown, reach):
            break
        reach = grown
    return codes[reach == (1 << n) - 1]


def _code_to_graph(code: int, n: int) -> Graph:
    pairs = [(i, j) for j in range(1, n) for i in range(j)]
    npairs = len(pairs)
    edges = [pairs[idx] for idx in range(npairs) if (code >> (npairs - 1 - idx)) & 1]
    return Graph(n, edges)


def enumerate_connected_nonisomorphic(n: int) -> list[Graph]:
    """One representative per isomorphism class of connected graphs, n <= 7.

    All 2**C(n,2) edge subsets are enumerated, disconnected ones filtered,
    and each class reduced to its minimum adjacency bit-string over all
    vertex permutations. Representatives come back in ascending canonical
    order.
    """
    if not 1 <= n <= 7:
        raise ValueError(f"census supports 1 <= n <= 7, got {n}")
    codes = _connected_codes(n)
    if n == 1:
        return [Graph(1)]
    sources, weights = _permutation_bit_sources(n)
    npairs = n * (n - 1) // 2
    shifts = np.arange(npairs - 1, -1, -1, dtype=np.int64)
    alive = np.ones(codes.size, dtype=bool)
    reps: list[int] = []
    ptr = 0
    while True:
        while ptr < codes.size and not alive[ptr]:
            ptr += 1
        if ptr >= codes.size:
            break
        rep = int(codes[ptr])
        reps.append(rep)
        bits = (rep >> shifts) & 1
        orbit = np.unique(bits[sources] @ weights)
        pos = np.searchsorted(codes, orbit)
        if not np.array_equal(codes[pos], orbit):
            raise AssertionError("orbit member missing from connected enumeration")
        alive[pos] = False
    expected = CONNECTED_CLASS_COUNTS[n - 1]
    if len(reps) != expected:
        raise AssertionError(
            f"census found {len(reps)} classes on {n} vertices, expected {expected}"
        )
    return [_code_to_graph(code, n) for code in reps]


def load_graph6_corpus(path) -> list[Graph]:
    """Parse a file of one-per-line graph6 records.

    A leading ``>>graph6<<`` header is stripped (its trailing text, if
    any, is treated as the first record). Malformed records raise
    :class:`~graphbench.graphs.FormatError` with the line number;
    disconnected graphs load fine and are logged.
    """
    text = Path(path).read_text(encoding="utf-8")
    graphs: list[Graph] = []
    disconnected = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if lineno == 1 and line.startswith(">>graph6<<"):
            line = line[len(">>graph6<<"):].strip()
        if not line:
            continue
        try:
            g = parse_graph6(line)
        except (FormatError, ValueError) as exc:
            raise FormatError(f"line {lineno}: {exc}") from None
        if not is_connected(g):
            disconnected += 1
            log.warning("line %d: graph6 record %r is disconnected", lineno, line)
        graphs.append(g)
    log.info(
        "loaded %d graph6 records from %s (%d disconnected)",
        len(graphs), path, disconnected,
    )
    return graphs
