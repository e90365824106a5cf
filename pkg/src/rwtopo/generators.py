"""Synthetic graph generators.

These provide desk-scale stand-ins for the large social/AS snapshots that
heavy-tailed crawling behaviour is usually studied on: i.i.d. power-law
degree sequences, an erased configuration model, preferential-attachment
growth, and a 2D grid as a low-variance negative control.  All generators
are pure functions of ``(params, seed)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph import Graph


@dataclass(frozen=True)
class PowerLawParams:
    """Parameters of a discrete power-law degree distribution p_k ~ k**-alpha.

    ``alpha`` is the exponent (> 1), ``k_min`` the smallest degree, and ``n``
    the number of nodes the distribution is sampled for.
    """

    alpha: float
    k_min: int = 1
    n: int = 2

    def __post_init__(self):
        if not self.alpha > 1:
            raise ValueError("alpha must exceed 1")
        if self.k_min < 1:
            raise ValueError("k_min must be at least 1")
        if self.n < 2:
            raise ValueError("n must be at least 2")

    @property
    def k_cap(self) -> int:
        """Structural degree cutoff floor(sqrt(n * k_min))."""
        return max(self.k_min, int(math.isqrt(self.n * self.k_min)))


def power_law_degrees(params: PowerLawParams, seed) -> np.ndarray:
    """Sample n i.i.d. degrees from p_k ~ k**-alpha on [k_min, k_cap].

    The support is truncated at the structural cutoff sqrt(n * k_min) to keep
    degree-degree correlations negligible after stub matching.  If the sampled
    sum is odd the last entry is incremented by one (an O(1/n) perturbation of
    the moments, which may push that single entry one above the cutoff).
    """
    rng = np.random.default_rng(seed)
    support = np.arange(params.k_min, params.k_cap + 1, dtype=np.int64)
    # Normalize against the smallest k so huge alphas underflow gracefully.
    weights = (support / params.k_min) ** (-params.alpha)
    degrees = rng.choice(support, size=params.n, p=weights / weights.sum())
    if int(degrees.sum()) % 2 == 1:
        degrees[-1] += 1
    return degrees


def configuration_model(degrees, seed) -> Graph:
    """Uniform stub matching of a degree sequence, erased to a simple graph.

    Stubs are paired by a random permutation; self-loops and parallel edges
    from the matching are then dropped, so realized degrees can fall slightly
    below the requested ones.

    Parameters
    ----------
    degrees : array-like of int
        Requested degree per node; the sum must be even.
    seed : int or sequence of int
        Seed for the matching permutation.
    """
    degrees = np.asarray(degrees, dtype=np.int64)
    if degrees.ndim != 1 or degrees.size < 1:
        raise ValueError("degrees must be a non-empty 1-D sequence")
    if (degrees < 0).any():
        raise ValueError("degrees must be non-negative")
    total = int(degrees.sum())
    if total % 2 == 1:
        raise ValueError("degree sum must be even")
    rng = np.random.default_rng(seed)
    stubs = np.repeat(np.arange(degrees.size, dtype=np.int64), degrees)
    stubs = rng.permutation(stubs)
    return Graph(degrees.size, stubs.reshape(-1, 2))


def preferential_attachment(n: int, m0: int, seed) -> Graph:
    """Degree-proportional growth from an (m0+1)-clique.

    Each new node attaches to ``m0`` distinct existing nodes chosen with
    probability proportional to their current degree (Barabasi-Albert style
    growth), which yields a power-law degree tail.  The result is always
    simple and connected.
    """
    if m0 < 1:
        raise ValueError("m0 must be at least 1")
    if n <= m0:
        raise ValueError("n must exceed m0")
    rng = np.random.default_rng(seed)
    clique = m0 + 1
    edges = [(i, j) for i in range(clique) for j in range(i + 1, clique)]
    # One entry per edge endpoint: sampling from it is degree-proportional.
    repeated: list[int] = [v for e in edges for v in e]
    for new in range(clique, n):
        targets: set[int] = set()
        while len(targets) < m0:
            targets.add(repeated[rng.integers(len(repeated))])
        for t in sorted(targets):
            edges.append((new, t))
            repeated.append(t)
        repeated.extend([new] * m0)
    return Graph(n, np.asarray(edges, dtype=np.int64))


def grid_2d(rows: int, cols: int) -> Graph:
    """Deterministic rows x cols lattice; a low-q control case."""
    if rows < 1 or cols < 1:
        raise ValueError("grid dimensions must be positive")
    idx = np.arange(rows * cols).reshape(rows, cols)
    right = np.stack([idx[:, :-1].ravel(), idx[:, 1:].ravel()], axis=1)
    down = np.stack([idx[:-1, :].ravel(), idx[1:, :].ravel()], axis=1)
    return Graph(rows * cols, np.concatenate([right, down]))


# -- textual generator specs (shared by the CLI and eval configs) -------------

_SPEC_HELP = (
    "expected '<model>:k=v,...' with model one of "
    "pa (n, m0), plconfig (n, alpha, kmin), grid (rows, cols)"
)


def from_spec(spec: str, seed) -> Graph:
    """Build a graph from a compact textual spec.

    Supported forms::

        pa:n=5000,m0=3          preferential attachment
        plconfig:n=10000,alpha=2.5,kmin=2
                                power-law degrees + erased configuration model
        grid:rows=71,cols=71    2D lattice (seed unused)
    """
    model, _, arg_str = spec.partition(":")
    model = model.strip().lower()
    args: dict[str, str] = {}
    if arg_str.strip():
        for item in arg_str.split(","):
            key, sep, value = item.partition("=")
            if not sep or not key.strip() or not value.strip():
                raise ValueError(f"bad generator spec {spec!r}: {_SPEC_HELP}")
            args[key.strip().lower()] = value.strip()

    def take(key: str, default: str | None = None) -> str:
        if key in args:
            return args.pop(key)
        if default is not None:
            return default
        raise ValueError(f"generator spec {spec!r} is missing {key!r}")

    if model == "pa":
        g = preferential_attachment(int(take("n")), int(take("m0")), seed)
    elif model == "plconfig":
        params = PowerLawParams(
            alpha=float(take("alpha")), k_min=int(take("kmin", "1")), n=int(take("n"))
        )
        g = configuration_model(power_law_degrees(params, seed), seed)
    elif model == "grid":
        g = grid_2d(int(take("rows")), int(take("cols")))
    else:
        raise ValueError(f"unknown generator model {model!r}: {_SPEC_HELP}")
    if args:
        raise ValueError(f"unknown keys {sorted(args)} in generator spec {spec!r}")
    return g
