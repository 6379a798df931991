"""Game-agnostic layer: cost aggregation, equilibrium test, deviations.

A game exposes a finite strategy space per player and an actual cost
function over full profiles.  Everything here is generic over that
interface; the network creation game is one implementation.

Profiles are tuples of per-player strategies.  Any iterable of
strategies is accepted and normalized up front.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass

from .dual import Dual, ZERO
from .social_matrix import SocialRangeMatrix

__all__ = [
    "GameInterface",
    "perceived_cost",
    "social_cost",
    "is_pne",
    "PneResult",
    "best_deviation",
    "Deviation",
    "effect_of_socialization",
    "SocializationReport",
]


class GameInterface(ABC):
    """Contract the solvers rely on.

    strategy_space(i) must enumerate a finite set of hashable strategies
    in a fixed canonical order; that order doubles as the deviation
    tie-break (for purchase-set games: fewer items first, then smallest
    sorted encoding).  actual_cost must be a pure function of the full
    profile.
    """

    @property
    @abstractmethod
    def n(self) -> int: ...

    @abstractmethod
    def strategy_space(self, i: int): ...

    @abstractmethod
    def actual_cost(self, i: int, strategies: tuple) -> Dual: ...

    def cost_vector(self, strategies: tuple) -> tuple[Dual, ...]:
        return tuple(self.actual_cost(i, strategies) for i in range(self.n))


def _profile(game: GameInterface, strategies) -> tuple:
    strategies = tuple(strategies)
    if len(strategies) != game.n:
        raise ValueError(
            f"profile has {len(strategies)} strategies for {game.n} players"
        )
    return strategies


def perceived_cost(game: GameInterface, F: SocialRangeMatrix, i: int, strategies) -> Dual:
    """Row-weighted sum of actual costs: what player i tries to minimize."""
    if F.n != game.n:
        raise ValueError(f"matrix is {F.n}x{F.n} but the game has {game.n} players")
    strategies = _profile(game, strategies)
    total = ZERO
    for j, weight in enumerate(F.row(i)):
        if weight == ZERO:
            continue
        total = total + weight * game.actual_cost(j, strategies)
    return total


def social_cost(game: GameInterface, strategies) -> Dual:
    """Sum of actual costs, never perceived ones."""
    strategies = _profile(game, strategies)
    total = ZERO
    for cost in game.cost_vector(strategies):
        total = total + cost
    return total


@dataclass(frozen=True)
class PneResult:
    is_equilibrium: bool
    witness: tuple[int, object] | None = None

    def __bool__(self) -> bool:
        return self.is_equilibrium


@dataclass(frozen=True)
class Deviation:
    strategy: object
    delta: Dual


def _improving_player(game: GameInterface, F: SocialRangeMatrix, strategies) -> int | None:
    for i in range(game.n):
        current = perceived_cost(game, F, i, strategies)
        for alt in game.strategy_space(i):
            if alt == strategies[i]:
                continue
            trial = strategies[:i] + (alt,) + strategies[i + 1 :]
            if perceived_cost(game, F, i, trial) < current:
                return i
    return None


def is_pne(game: GameInterface, F: SocialRangeMatrix, strategies) -> PneResult:
    """Test whether no single player can strictly improve by deviating.

    On failure the witness is (i, s_i*) where i is the lowest-index player
    with a strictly improving move and s_i* is that player's best response.
    """
    strategies = _profile(game, strategies)
    player = _improving_player(game, F, strategies)
    if player is None:
        return PneResult(True)
    move = best_deviation(game, F, player, strategies)
    return PneResult(False, (player, move.strategy))


def best_deviation(game: GameInterface, F: SocialRangeMatrix, i: int, strategies) -> Deviation:
    """Best response of player i holding everyone else fixed.

    Among perceived-cost minimizers the winner is the earliest strategy in
    strategy_space order, so a cheaper-to-maintain strategy displaces the
    current one even at equal cost; the current strategy is returned only
    when it is itself that earliest minimizer.
    """
    strategies = _profile(game, strategies)
    best = None
    best_cost = None
    for alt in game.strategy_space(i):
        trial = strategies[:i] + (alt,) + strategies[i + 1 :]
        cost = perceived_cost(game, F, i, trial)
        if best is None or cost < best_cost:
            best, best_cost = alt, cost
    if best is None:
        raise ValueError(f"player {i} has an empty strategy space")
    current_cost = perceived_cost(game, F, i, strategies)
    return Deviation(best, best_cost - current_cost)


@dataclass(frozen=True)
class SocializationReport:
    """Worst and best equilibrium welfare against the optimum.

    The headline ratio worst/optimum is only meaningful when both costs
    are plain nonzero rationals of the same sign; otherwise ratio is None
    and the note says why.  The cost triple is always present.
    """

    worst_cost: Dual
    best_cost: Dual
    optimum_cost: Dual
    worst_profile: tuple
    best_profile: tuple
    ratio: object | None = None
    note: str | None = None


def effect_of_socialization(game: GameInterface, F: SocialRangeMatrix, pne_set, optimum_cost) -> SocializationReport:
    profiles = [_profile(game, s) for s in pne_set]
    if not profiles:
        raise ValueError("no equilibria to compare against the optimum")
    optimum_cost = Dual.of(optimum_cost)
    costed = [(social_cost(game, s), s) for s in profiles]
    worst_cost, worst_profile = costed[0]
    best_cost, best_profile = costed[0]
    for cost, s in costed[1:]:
        if cost > worst_cost:
            worst_cost, worst_profile = cost, s
        if cost < best_cost:
            best_cost, best_profile = cost, s

    ratio = None
    note = None
    if worst_cost.eps != 0 or optimum_cost.eps != 0:
        note = "ratio undefined: infinitesimal cost components"
    elif not (worst_cost.is_exact and optimum_cost.is_exact):
        note = "ratio undefined: inexact costs"
    elif optimum_cost.std == 0:
        note = "ratio undefined: optimum cost is zero"
    elif worst_cost.std == 0 or (worst_cost.std > 0) != (optimum_cost.std > 0):
        note = "ratio undefined: costs are zero or differ in sign"
    else:
        ratio = worst_cost.std / optimum_cost.std
    return SocializationReport(
        worst_cost=worst_cost,
        best_cost=best_cost,
        optimum_cost=optimum_cost,
        worst_profile=worst_profile,
        best_profile=best_profile,
        ratio=ratio,
        note=note,
    )
