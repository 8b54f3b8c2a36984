"""Weighted directed interaction networks and their derived transforms.

A network is an n-by-n nonnegative weight matrix with zero diagonal; entry
(i, j) is the strength of agent i's motive to align its action with agent
j's.  The baseline model additionally requires every row sum (out-degree)
to stay strictly below one; `validate` reports violations of all three
rules without raising.

Two derived networks are provided: the intensity-normalized network used
by the separable-intensity payoff model, and the fictitious network whose
equilibrium reproduces the welfare-efficient use of information.
"""

from __future__ import annotations

import csv
import json
import math
import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import NetworkFormatError, NetworkInvalidError

__all__ = [
    "Network",
    "CorePeripheryParams",
    "IntensityProfile",
    "validate",
    "require_valid",
    "require_structure",
    "empty",
    "regular",
    "abc",
    "core_periphery",
    "from_family",
    "normalized_network",
    "fictitious_network",
    "load",
    "save",
]


@dataclass(frozen=True, eq=False)
class Network:
    """Immutable weighted directed network.

    ``weights[i, j]`` is agent i's coordination weight toward agent j.
    Construction only enforces shape (square, at least two agents); rule
    violations are reported by `validate` so that files with bad rows can
    still be loaded and diagnosed.
    """

    weights: np.ndarray

    def __post_init__(self):
        w = np.array(self.weights, dtype=float)
        if w.ndim != 2 or w.shape[0] != w.shape[1]:
            raise ValueError(f"weights must be a square matrix, got shape {w.shape}")
        if w.shape[0] < 2:
            raise ValueError("a network needs at least 2 agents")
        w.flags.writeable = False
        object.__setattr__(self, "weights", w)

    @property
    def n(self) -> int:
        return self.weights.shape[0]

    @property
    def out_degrees(self) -> np.ndarray:
        """Row sums: each agent's total coordination motive."""
        return self.weights.sum(axis=1)

    @property
    def in_degrees(self) -> np.ndarray:
        """Column sums: total coordination motive directed at each agent."""
        return self.weights.sum(axis=0)

    def neighbors(self, i: int) -> np.ndarray:
        """Indices j with a positive weight from agent i."""
        return np.flatnonzero(self.weights[i] > 0.0)

    def __eq__(self, other):
        if not isinstance(other, Network):
            return NotImplemented
        return self.weights.shape == other.weights.shape and bool(
            np.array_equal(self.weights, other.weights)
        )


@dataclass(frozen=True)
class CorePeripheryParams:
    """Parameters of the two-tier family: l core agents targeted by m peripheral ones."""

    l: int
    m: int
    alpha: float
    beta: float

    def __post_init__(self):
        if self.l < 2:
            raise ValueError(f"core size l must be >= 2, got {self.l}")
        if self.m < 1:
            raise ValueError(f"periphery size m must be >= 1, got {self.m}")
        if not 0.0 <= self.alpha < 1.0:
            raise ValueError(f"alpha must lie in [0, 1), got {self.alpha}")
        if not 0.0 <= self.beta < 1.0:
            raise ValueError(f"beta must lie in [0, 1), got {self.beta}")

    @property
    def n(self) -> int:
        return self.l + self.m


@dataclass(frozen=True)
class IntensityProfile:
    """Per-agent coordination intensities, each strictly inside (0, 1)."""

    r: np.ndarray

    def __post_init__(self):
        r = np.array(self.r, dtype=float)
        if r.ndim != 1:
            raise ValueError("intensities must be a 1-D vector")
        if not np.all((r > 0.0) & (r < 1.0)):
            raise ValueError("every intensity must lie strictly in (0, 1)")
        r.flags.writeable = False
        object.__setattr__(self, "r", r)

    @classmethod
    def uniform(cls, n: int, value: float) -> "IntensityProfile":
        return cls(np.full(n, float(value)))

    @property
    def n(self) -> int:
        return self.r.shape[0]


def validate(net: Network) -> list[str]:
    """Return every invariant violation; an empty list means the network is valid.

    Checked rules: zero diagonal, nonnegative weights, and every out-degree
    strictly below one (equality counts as a violation).
    """
    w = net.weights
    problems: list[str] = []
    for i in np.flatnonzero(np.diag(w) != 0.0):
        problems.append(f"nonzero self-weight at agent {i}")
    for i, j in zip(*np.nonzero(w < 0.0)):
        problems.append(f"negative weight at ({i}, {j})")
    for i in np.flatnonzero(w.sum(axis=1) >= 1.0):
        problems.append(f"row sum >= 1 at agent {i}")
    return problems


def require_valid(net: Network) -> None:
    violations = validate(net)
    if violations:
        raise NetworkInvalidError(violations)


def require_structure(net: Network) -> None:
    """Zero diagonal and nonnegativity only; row sums are unconstrained.

    The separable-intensity model stays well-posed for any out-degree
    (its normalized network is always row-substochastic), so operations on
    that path must not insist on the baseline out-degree bound.
    """
    violations = [v for v in validate(net) if not v.startswith("row sum")]
    if violations:
        raise NetworkInvalidError(violations)


def empty(n: int) -> Network:
    """Network with no coordination motives."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    return Network(np.zeros((n, n)))


def regular(n: int, d: float) -> Network:
    """Uniform complete network where every agent's out-degree equals d."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    if not 0.0 <= d < 1.0:
        raise ValueError(f"d must lie in [0, 1), got {d}")
    w = np.full((n, n), d / (n - 1))
    np.fill_diagonal(w, 0.0)
    return Network(w)


def abc(alpha: float, beta: float) -> Network:
    """Three-agent chain: agent 0 leans on agent 1, agents 1 and 2 lean on each other."""
    if not 0.0 <= alpha < 1.0:
        raise ValueError(f"alpha must lie in [0, 1), got {alpha}")
    if not 0.0 <= beta < 1.0:
        raise ValueError(f"beta must lie in [0, 1), got {beta}")
    w = np.zeros((3, 3))
    w[0, 1] = alpha
    w[1, 2] = beta
    w[2, 1] = beta
    return Network(w)


def core_periphery(l: int, m: int, alpha: float, beta: float) -> Network:
    """Two-tier network: agents 0..l-1 form the core, the rest the periphery.

    Every positive weight points into the core.  Each core agent spreads its
    out-degree beta uniformly over the other l-1 core agents; each peripheral
    agent spreads alpha uniformly over all l core agents.  Only the degree
    totals matter for centralities and welfare in this family, so the uniform
    allocation is the canonical representative.
    """
    params = CorePeripheryParams(l=l, m=m, alpha=alpha, beta=beta)
    n = params.n
    w = np.zeros((n, n))
    if l > 1:
        w[:l, :l] = beta / (l - 1)
        np.fill_diagonal(w[:l, :l], 0.0)
    w[l:, :l] = alpha / l
    return Network(w)


_FAMILY_ARITY = {"empty": 1, "regular": 2, "abc": 2, "cp": 4}


def from_family(spec: str) -> Network:
    """Build a named family from a compact spec string.

    Grammar: ``empty:n``, ``regular:n,d``, ``abc:a,b``, ``cp:l,m,a,b``.
    Anything else, including trailing garbage, is rejected.
    """
    if not re.fullmatch(r"[a-z]+:[0-9.,+-eE]+", spec):
        raise ValueError(f"malformed family spec {spec!r}")
    kind, _, argtext = spec.partition(":")
    if kind not in _FAMILY_ARITY:
        raise ValueError(f"unknown family {kind!r} (expected empty, regular, abc, or cp)")
    parts = argtext.split(",")
    if len(parts) != _FAMILY_ARITY[kind]:
        raise ValueError(
            f"family {kind!r} takes {_FAMILY_ARITY[kind]} parameter(s), got {len(parts)}"
        )
    try:
        if kind == "empty":
            return empty(int(parts[0]))
        if kind == "regular":
            return regular(int(parts[0]), float(parts[1]))
        if kind == "abc":
            return abc(float(parts[0]), float(parts[1]))
        return core_periphery(int(parts[0]), int(parts[1]), float(parts[2]), float(parts[3]))
    except ValueError as exc:
        raise ValueError(f"bad family spec {spec!r}: {exc}") from exc


def normalized_network(net: Network, r: IntensityProfile) -> Network:
    """Intensity-weighted, degree-diluted transform of the interaction network.

    Row i is scaled by r_i / (1 - r_i + r_i * d_i_out), which makes every row
    sum r_i d_i_out / (1 - r_i + r_i d_i_out) < 1 regardless of d_i_out.
    """
    require_structure(net)
    if r.n != net.n:
        raise ValueError(f"intensity profile has {r.n} entries for a {net.n}-agent network")
    d_out = net.out_degrees
    scale = r.r / (1.0 - r.r + r.r * d_out)
    return Network(scale[:, None] * net.weights)


def fictitious_network(net: Network) -> Network:
    """Planner's transform: symmetrized weights damped by the receiver's in-degree.

    Entry (i, j) becomes (g_ij + g_ji) / (1 + d_i_in); row sums stay strictly
    below one whenever the input network is valid.
    """
    require_valid(net)
    d_in = net.in_degrees
    w = (net.weights + net.weights.T) / (1.0 + d_in)[:, None]
    return Network(w)


def save(net: Network, path) -> None:
    """Write the sparse JSON form: {"n": ..., "edges": [[i, j, w], ...]}."""
    edges = [
        [int(i), int(j), float(net.weights[i, j])]
        for i, j in zip(*np.nonzero(net.weights))
    ]
    edges.sort(key=lambda e: (e[0], e[1]))
    Path(path).write_text(json.dumps({"n": net.n, "edges": edges}) + "\n")


def load(path) -> Network:
    """Read a network file; `.csv` means an edge list, anything else the JSON form.

    Parsing rejects malformed entries, out-of-range indices, duplicates, and
    negative weights; out-degree violations are left for `validate` to report.
    """
    p = Path(path)
    if p.suffix.lower() == ".csv":
        return _load_csv(p)
    return _load_json(p)


def _edge_weight(raw, where: str) -> float:
    try:
        w = float(raw)
    except (TypeError, ValueError) as exc:
        raise NetworkFormatError(f"{where}: weight {raw!r} is not a number") from exc
    if not math.isfinite(w):
        raise NetworkFormatError(f"{where}: weight must be finite, got {raw!r}")
    if w < 0.0:
        raise NetworkFormatError(f"{where}: negative weight {raw!r}")
    return w


def _load_json(p: Path) -> Network:
    try:
        payload = json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        raise NetworkFormatError(f"{p}: not valid JSON ({exc})") from exc
    if not isinstance(payload, dict) or "n" not in payload:
        raise NetworkFormatError(f"{p}: expected an object with an 'n' field")
    n = payload["n"]
    if not isinstance(n, int) or n < 2:
        raise NetworkFormatError(f"{p}: 'n' must be an integer >= 2, got {n!r}")
    edges = payload.get("edges", [])
    if not isinstance(edges, list):
        raise NetworkFormatError(f"{p}: 'edges' must be a list")
    w = np.zeros((n, n))
    seen: set[tuple[int, int]] = set()
    for k, edge in enumerate(edges):
        where = f"{p}: edge {k}"
        if not isinstance(edge, (list, tuple)) or len(edge) != 3:
            raise NetworkFormatError(f"{where}: expected [i, j, w]")
        i, j, raw = edge
        if not isinstance(i, int) or not isinstance(j, int):
            raise NetworkFormatError(f"{where}: indices must be integers")
        if not (0 <= i < n and 0 <= j < n):
            raise NetworkFormatError(f"{where}: index ({i}, {j}) outside 0..{n - 1}")
        if (i, j) in seen:
            raise NetworkFormatError(f"{where}: duplicate entry for ({i}, {j})")
        seen.add((i, j))
        w[i, j] = _edge_weight(raw, where)
    return Network(w)


def _load_csv(p: Path) -> Network:
    with p.open(newline="") as handle:
        rows = list(csv.reader(handle))
    if not rows or [c.strip() for c in rows[0]] != ["i", "j", "w"]:
        raise NetworkFormatError(f"{p}: first line must be the header 'i,j,w'")
    entries: list[tuple[int, int, float]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, row in enumerate(rows[1:], start=2):
        if not row or all(not c.strip() for c in row):
            continue
        where = f"{p}: line {lineno}"
        if len(row) != 3:
            raise NetworkFormatError(f"{where}: expected 3 fields, got {len(row)}")
        try:
            i, j = int(row[0]), int(row[1])
        except ValueError as exc:
            raise NetworkFormatError(f"{where}: indices must be integers") from exc
        if i < 0 or j < 0:
            raise NetworkFormatError(f"{where}: negative index ({i}, {j})")
        if (i, j) in seen:
            raise NetworkFormatError(f"{where}: duplicate entry for ({i}, {j})")
        seen.add((i, j))
        entries.append((i, j, _edge_weight(row[2], where)))
    n = max((max(i, j) for i, j, _ in entries), default=1) + 1
    n = max(n, 2)
    w = np.zeros((n, n))
    for i, j, weight in entries:
        w[i, j] = weight
    return Network(w)
