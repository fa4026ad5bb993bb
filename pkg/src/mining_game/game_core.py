"""Data model and closed-form quantities of the mining participation game.

A miner k either joins the hash race (s_k = 1) or stays out (s_k = 0).
Joining costs c_k per unit operating time and buys w_k = v_k * c_k hash
queries per unit time; against difficulty D the block-creation times are
independent exponentials with rates lambda_k = s_k * w_k / D, the first
arrival takes the whole reward R, and the race then stops.  This module
exposes the resulting per-profile expectations:

    win_probability  P_k = lambda_k / sum(lambda_i)
    expected_reward  R_k = P_k * R
    expected_cost    CS_k = c_k * lambda_k / (sum lambda_i)^2
                          (operating cost accrues only on the event k wins)
    utility          U_k = R_k - CS_k, with U_k = 0 when nobody mines

plus the multilinear extension to mixed participation strategies.

All operations are numeric-type polymorphic: feed Fractions and every
result is exact, feed floats and you get floats.  When participants exist
but their combined hash rate is zero the race never finishes; we extend
the nobody-mines convention and return 0 for every quantity.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .rational import Numeric


@dataclass(frozen=True)
class MinerSpec:
    """Per-miner cost rate c_k >= 0 and cost-to-hash-rate efficiency v_k > 0."""

    cost_rate: Numeric
    efficiency: Numeric

    def __post_init__(self) -> None:
        if self.cost_rate < 0:
            raise ValueError(f"cost_rate must be >= 0, got {self.cost_rate}")
        if self.efficiency <= 0:
            raise ValueError(f"efficiency must be > 0, got {self.efficiency}")


def hash_rate(miner: MinerSpec) -> Numeric:
    """Hash queries per unit operating time: w = v * c (linear cost-to-rate)."""
    return miner.efficiency * miner.cost_rate


@dataclass(frozen=True)
class GameConfig:
    """The n-miner game: miner roster, difficulty D > 0, block reward R >= 0."""

    miners: tuple[MinerSpec, ...]
    difficulty: Numeric
    reward: Numeric

    def __post_init__(self) -> None:
        object.__setattr__(self, "miners", tuple(self.miners))
        if len(self.miners) < 2:
            raise ValueError("a game needs at least two miners")
        if self.difficulty <= 0:
            raise ValueError(f"difficulty must be > 0, got {self.difficulty}")
        if self.reward < 0:
            raise ValueError(f"reward must be >= 0, got {self.reward}")

    @property
    def n(self) -> int:
        return len(self.miners)

    @classmethod
    def symmetric(cls, n: int, cost_rate: Numeric, efficiency: Numeric,
                  difficulty: Numeric, reward: Numeric) -> "GameConfig":
        return cls((MinerSpec(cost_rate, efficiency),) * n, difficulty, reward)


@dataclass(frozen=True)
class PureProfile:
    """A joint participation decision, one 0/1 entry per miner."""

    choices: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "choices", tuple(int(c) for c in self.choices))
        if any(c not in (0, 1) for c in self.choices):
            raise ValueError(f"choices must be 0/1, got {self.choices}")

    def __len__(self) -> int:
        return len(self.choices)

    @property
    def all_abstain(self) -> bool:
        return not any(self.choices)

    def flip(self, k: int) -> "PureProfile":
        c = list(self.choices)
        c[k] = 1 - c[k]
        return PureProfile(tuple(c))


@dataclass(frozen=True)
class MixedProfile:
    """Per-miner stay-out probabilities x_k0 in [0, 1] (prob of choosing s_k = 0)."""

    stay_out: tuple[Numeric, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "stay_out", tuple(self.stay_out))
        for x in self.stay_out:
            if not (0 <= x <= 1):
                raise ValueError(f"stay-out probabilities must lie in [0,1], got {x}")

    def __len__(self) -> int:
        return len(self.stay_out)

    def with_stay_out(self, k: int, value: Numeric) -> "MixedProfile":
        xs = list(self.stay_out)
        xs[k] = value
        return MixedProfile(tuple(xs))

    @classmethod
    def pure(cls, profile: PureProfile) -> "MixedProfile":
        return cls(tuple(1 - c for c in profile.choices))


def poisson_rate(miner: MinerSpec, participating: int, difficulty: Numeric) -> Numeric:
    """Block-arrival rate lambda = s * v * c / D; zero for a nonparticipant."""
    if difficulty <= 0:
        raise ValueError(f"difficulty must be > 0, got {difficulty}")
    if not participating:
        return 0 * hash_rate(miner)
    return hash_rate(miner) / difficulty


def _active_rate_total(cfg: GameConfig, profile: PureProfile) -> Numeric:
    return sum(s * hash_rate(m) for s, m in zip(profile.choices, cfg.miners))


def win_probability(cfg: GameConfig, profile: PureProfile, k: int) -> Numeric:
    """P_k = s_k w_k / sum_i s_i w_i; zero for everyone when no block can appear."""
    total = _active_rate_total(cfg, profile)
    if total == 0:
        return total
    return profile.choices[k] * hash_rate(cfg.miners[k]) / total


def expected_reward(cfg: GameConfig, profile: PureProfile, k: int) -> Numeric:
    return win_probability(cfg, profile, k) * cfg.reward


def expected_cost(cfg: GameConfig, profile: PureProfile, k: int) -> Numeric:
    """CS_k = P_k * D c_k / sum_i s_i w_i: cost charged only on the win event."""
    total = _active_rate_total(cfg, profile)
    if total == 0 or not profile.choices[k]:
        return 0 * total
    p_k = hash_rate(cfg.miners[k]) / total
    return p_k * (cfg.difficulty * cfg.miners[k].cost_rate / total)


def utility(cfg: GameConfig, profile: PureProfile, k: int) -> Numeric:
    return expected_reward(cfg, profile, k) - expected_cost(cfg, profile, k)


def _support(mixed: MixedProfile) -> Iterator[tuple[Numeric, PureProfile]]:
    """Yield (probability, pure profile) over the support of a mixed profile."""
    options = []
    for x0 in mixed.stay_out:
        opts = []
        if x0 != 0:
            opts.append((x0, 0))
        if x0 != 1:
            opts.append((1 - x0, 1))
        options.append(opts)
    for combo in itertools.product(*options):
        prob = 1
        for p, _ in combo:
            prob = prob * p
        yield prob, PureProfile(tuple(s for _, s in combo))


def expected_utility(cfg: GameConfig, mixed: MixedProfile, k: int) -> Numeric:
    """Multilinear expectation of U_k over all pure profiles in the support."""
    if len(mixed) != cfg.n:
        raise ValueError("mixed profile length does not match miner count")
    return sum(prob * utility(cfg, profile, k) for prob, profile in _support(mixed))


def utilities(cfg: GameConfig, profile: PureProfile) -> tuple[Numeric, ...]:
    return tuple(utility(cfg, profile, k) for k in range(cfg.n))


def closed_form_race_stats(cfg: GameConfig, profile: PureProfile) -> dict[str, tuple]:
    """Exact P_k, R_k, CS_k, U_k vectors plus the all-pay cost c_k E[T] diagnostic."""
    total = _active_rate_total(cfg, profile)
    win = tuple(win_probability(cfg, profile, k) for k in range(cfg.n))
    rew = tuple(p * cfg.reward for p in win)
    cost = tuple(expected_cost(cfg, profile, k) for k in range(cfg.n))
    util = tuple(r - c for r, c in zip(rew, cost))
    if total == 0:
        all_pay = tuple(0 * total for _ in range(cfg.n))
    else:
        mean_t = cfg.difficulty / total
        all_pay = tuple(s * m.cost_rate * mean_t
                        for s, m in zip(profile.choices, cfg.miners))
    return {"win_probability": win, "expected_reward": rew,
            "expected_cost": cost, "utility": util, "cost_all_pay": all_pay}


def all_pure_profiles(n: int) -> Iterator[PureProfile]:
    for bits in itertools.product((0, 1), repeat=n):
        yield PureProfile(bits)
