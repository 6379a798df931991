"""Shared fixtures for the test suite.

The graph helpers here are deliberately independent of the package:
distances come from Floyd-Warshall over an explicit edge list, so they
can serve as an oracle for the package's layer counting.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from socialnash.dual import Dual
from socialnash.game_core import GameInterface

INF = float("inf")


def all_pairs_distances(n, edges):
    """Floyd-Warshall over an undirected edge set."""
    dist = [[0 if i == j else INF for j in range(n)] for i in range(n)]
    for a, b in edges:
        dist[a][b] = 1
        dist[b][a] = 1
    for k in range(n):
        for i in range(n):
            for j in range(n):
                through = dist[i][k] + dist[k][j]
                if through < dist[i][j]:
                    dist[i][j] = through
    return dist


def layer_counts(n, edges, player, radius):
    """Players at hop distance exactly 1..radius from the given player."""
    dist = all_pairs_distances(n, edges)
    counts = []
    for hop in range(1, radius + 1):
        counts.append(sum(1 for j in range(n) if dist[player][j] == hop))
    return tuple(counts)


def random_edge_set(rng, n, density):
    edges = set()
    for a, b in itertools.combinations(range(n), 2):
        if rng.random() < density:
            edges.add((a, b))
    return frozenset(edges)


def random_matrix_entries(rng, n, palette, diag_palette):
    return [
        [
            rng.choice(diag_palette) if i == j else rng.choice(palette)
            for j in range(n)
        ]
        for i in range(n)
    ]


def deterministic_rng(tag):
    return random.Random(f"socialnash-tests-{tag}")


class TableGame(GameInterface):
    """Decoupled game: each player's actual cost depends on their own move only.

    Strategy spaces are ranges; costs come straight from a table. Used to
    exercise the generic layer without any network structure.
    """

    def __init__(self, cost_rows):
        self._rows = [[Dual.of(Fraction(c)) for c in row] for row in cost_rows]

    @property
    def n(self):
        return len(self._rows)

    def strategy_space(self, i):
        return range(len(self._rows[i]))

    def actual_cost(self, i, strategies):
        return self._rows[i][strategies[i]]
