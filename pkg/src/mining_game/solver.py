"""General-n equilibrium computation for the participation game.

Pure equilibria come from exhaustive enumeration over the 2^n profiles
with weak best-response checks (ties admit equilibrium).  Mixed equilibria
are solved only for the symmetric game, where every miner abstains with a
common probability p and indifference reduces to a one-dimensional root
find: the participation gain is the exact binomial expectation over how
many of the n-1 opponents show up,

    gap(p) = sum_m C(n-1, m) (1-p)^m p^(n-1-m) * (1/(m+1)) (R - d/(m+1)),

bracketed on a uniform grid and polished by bisection.  Asymmetric mixed
equilibria for n > 2 are out of scope; use the two-miner closed form for
n = 2 asymmetric games.

The regret oracle certifies any reported profile: in a two-action game
expected utility is affine in each miner's own mixing probability, so
checking the two pure deviations per miner is sufficient.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .game_core import (GameConfig, MixedProfile, PureProfile, all_pure_profiles,
                        expected_utility, utility)
from .rational import Numeric

ENUMERATION_LIMIT = 24


@dataclass(frozen=True)
class SolverSettings:
    regret_tolerance: float = 1e-9
    bisection_tolerance: float = 1e-12
    grid_points: int = 1024

    def __post_init__(self) -> None:
        if self.regret_tolerance <= 0 or self.bisection_tolerance <= 0:
            raise ValueError("tolerances must be positive")
        if self.grid_points < 2:
            raise ValueError("grid_points must be at least 2")


DEFAULT_SETTINGS = SolverSettings()


def is_pure_nash(cfg: GameConfig, profile: PureProfile) -> bool:
    """Weak Nash check: no miner strictly gains from a unilateral flip."""
    for k in range(cfg.n):
        if utility(cfg, profile.flip(k), k) > utility(cfg, profile, k):
            return False
    return True


def pure_nash_enumerate(cfg: GameConfig) -> list[PureProfile]:
    """All pure equilibria by exhaustive enumeration (2^n profiles, n <= 24)."""
    if cfg.n > ENUMERATION_LIMIT:
        raise ValueError(f"enumeration over 2^{cfg.n} profiles refused "
                         f"(limit n <= {ENUMERATION_LIMIT})")
    return [p for p in all_pure_profiles(cfg.n) if is_pure_nash(cfg, p)]


def symmetric_participation_gain(n: int, d: float, reward: float, p: float) -> float:
    """Participate-minus-abstain expected payoff when n-1 opponents mix at p."""
    total = 0.0
    for m in range(n):
        weight = math.comb(n - 1, m) * (1 - p) ** m * p ** (n - 1 - m)
        total += weight * (reward - d / (m + 1)) / (m + 1)
    return total


def symmetric_mixed_nash(n: int, cost_rate: Numeric, efficiency: Numeric,
                         difficulty: Numeric, reward: Numeric,
                         settings: SolverSettings = DEFAULT_SETTINGS,
                         ) -> list[MixedProfile]:
    """All interior symmetric mixed equilibria of the n-identical-miner game.

    Returns the stay-out probabilities p in (0, 1) at which the
    participation gain crosses zero; boundary roots p = 0, 1 are excluded
    (those are the pure profiles).  Cost rate drops out of the symmetric
    gap, so only d = D/v matters.
    """
    if n < 2:
        raise ValueError("need at least two miners")
    if efficiency <= 0 or difficulty <= 0:
        raise ValueError("efficiency and difficulty must be positive")
    d = float(difficulty) / float(efficiency)
    reward = float(reward)
    gap = lambda p: symmetric_participation_gain(n, d, reward, p)

    grid = settings.grid_points
    xs = [i / grid for i in range(grid + 1)]
    ys = [gap(x) for x in xs]
    roots: list[float] = []
    for i in range(grid):
        if ys[i] == 0.0 and 0.0 < xs[i] < 1.0:
            roots.append(xs[i])
        if ys[i] * ys[i + 1] < 0.0:
            lo, hi, flo = xs[i], xs[i + 1], ys[i]
            while hi - lo > settings.bisection_tolerance:
                mid = 0.5 * (lo + hi)
                fmid = gap(mid)
                if fmid == 0.0:
                    lo = hi = mid
                    break
                if (flo < 0.0) == (fmid < 0.0):
                    lo, flo = mid, fmid
                else:
                    hi = mid
            root = 0.5 * (lo + hi)
            if 0.0 < root < 1.0:
                roots.append(root)
    deduped: list[float] = []
    for r in roots:
        if not deduped or abs(r - deduped[-1]) > 2 * settings.bisection_tolerance:
            deduped.append(r)
    return [MixedProfile((r,) * n) for r in deduped]


def regret(cfg: GameConfig, mixed: MixedProfile) -> Numeric:
    """Largest gain any miner can get by deviating; zero exactly at equilibria."""
    worst = None
    for k in range(cfg.n):
        u_now = expected_utility(cfg, mixed, k)
        u_out = expected_utility(cfg, mixed.with_stay_out(k, 1), k)
        u_in = expected_utility(cfg, mixed.with_stay_out(k, 0), k)
        gain = max(u_out, u_in) - u_now
        if worst is None or gain > worst:
            worst = gain
    # exact arithmetic never goes below zero; clamp float rounding dust
    return worst if worst > 0 else 0 * abs(worst)


def hysteresis_interval(n: int, cost_rate: Numeric, efficiency: Numeric,
                        difficulty: Numeric, reward_grid: Sequence[Numeric],
                        ) -> list[Numeric]:
    """Grid rewards at which all-abstain and all-participate are both pure NE."""
    both_out = PureProfile((0,) * n)
    both_in = PureProfile((1,) * n)
    out = []
    for reward in reward_grid:
        cfg = GameConfig.symmetric(n, cost_rate, efficiency, difficulty, reward)
        if is_pure_nash(cfg, both_out) and is_pure_nash(cfg, both_in):
            out.append(reward)
    return out


def participation_threshold(n: int, d: Numeric,
                            reward_grid: Sequence[Numeric]) -> Optional[Numeric]:
    """Smallest grid reward at which everyone-mines is an equilibrium, if any."""
    both_in = PureProfile((1,) * n)
    for reward in sorted(reward_grid):
        cfg = GameConfig.symmetric(n, 1, 1, d, reward)
        if is_pure_nash(cfg, both_in):
            return reward
    return None


@dataclass(frozen=True)
class ThresholdRow:
    n: int
    r_over_d: Fraction            # exact reward-to-difficulty threshold
    grid_reward: Optional[Numeric]  # smallest qualifying grid reward, if any


@dataclass(frozen=True)
class ThresholdCurve:
    rows: tuple[ThresholdRow, ...]

    def __post_init__(self) -> None:
        zs = [row.r_over_d for row in self.rows]
        if any(z <= 0 for z in zs):
            raise ValueError("thresholds must be positive")
        if any(a <= b for a, b in zip(zs, zs[1:])):
            raise ValueError("thresholds must decrease strictly in n")


def threshold_curve(n_values: Sequence[int], d: Numeric,
                    reward_grid: Sequence[Numeric]) -> ThresholdCurve:
    """Participation thresholds per miner count: exact z* plus the grid hit.

    The everyone-mines profile is an equilibrium iff each participant's
    payoff (1/n)(R - d/n) is nonnegative, i.e. z* = 1/n exactly; the grid
    column is found independently by enumeration-style membership checks.
    """
    rows = []
    for n in n_values:
        rows.append(ThresholdRow(n=n, r_over_d=Fraction(1, n),
                                 grid_reward=participation_threshold(n, d, reward_grid)))
    return ThresholdCurve(tuple(rows))
