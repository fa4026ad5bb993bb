"""Monte-Carlo simulation of the mining race.

Two sampling modes validate the closed forms in `game_core`:

* exponential -- each participant's block time is an exponential with rate
  w_k / D; the first arrival wins.  This is the model the closed forms are
  derived from, so estimates must match them to sampling error.
* discrete -- per-hash geometric mode.  Time advances in ticks; each tick a
  participant fires its per-tick query budget (integer part of w_k per
  tick, fractional remainder as one Bernoulli-rounded extra query), every
  query succeeding independently with probability 1/D.  A miner's first
  success tick is therefore geometric with per-tick success probability
  1 - (1 - 1/D)^q * (1 - frac/D), which is sampled directly; same-tick
  successes are tied and broken uniformly at random.

Cost accounting follows the race model's expectation: the per-trial cost
sample is c_k * T * 1{k wins}.  The optional all-pay diagnostic
additionally reports c_k * T for every participant; it is *not* the
quantity the closed-form utility uses.

Reproducibility contract: trials are split into fixed-size blocks; block b
draws from its own Philox stream keyed by (seed, b), and each trial's
draws sit at fixed offsets inside its block.  Workers may therefore
process disjoint block ranges in any order; per-block partial sums are
combined with exactly rounded summation (math.fsum), so the aggregate is
bit-identical regardless of partitioning.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np

from .game_core import GameConfig, PureProfile, hash_rate

BLOCK_SIZE = 1 << 16
_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class RaceOutcome:
    """One race: who won, when, and the per-miner reward/cost samples."""

    winner: Optional[int]
    finish_time: float
    per_miner_reward: tuple[float, ...]
    per_miner_cost: tuple[float, ...]


@dataclass(frozen=True)
class RaceStats:
    """Sample means and standard errors of the per-trial race estimators."""

    trials: int
    seed: int
    mode: str
    est_win_prob: tuple[float, ...]
    est_reward: tuple[float, ...]
    est_cost: tuple[float, ...]
    est_utility: tuple[float, ...]
    se_win_prob: tuple[float, ...]
    se_reward: tuple[float, ...]
    se_cost: tuple[float, ...]
    se_utility: tuple[float, ...]
    est_cost_all_pay: Optional[tuple[float, ...]] = None
    se_cost_all_pay: Optional[tuple[float, ...]] = None


def _racing_miners(cfg: GameConfig, profile: PureProfile) -> tuple[np.ndarray, np.ndarray]:
    """Indices and rates of participants that can actually produce a block."""
    if len(profile) != cfg.n:
        raise ValueError("profile length does not match miner count")
    if profile.all_abstain:
        raise ValueError("no race occurs: every miner abstains")
    idx, rates = [], []
    for k, s in enumerate(profile.choices):
        if s:
            lam = float(hash_rate(cfg.miners[k])) / float(cfg.difficulty)
            if lam > 0.0:
                idx.append(k)
                rates.append(lam)
    if not idx:
        raise ValueError("no race occurs: no participant has a positive hash rate")
    return np.array(idx, dtype=np.int64), np.array(rates, dtype=np.float64)


def _tick_success_probs(rates: np.ndarray, difficulty: float,
                        ticks_per_unit: int) -> np.ndarray:
    """Per-tick success probability per racer, Bernoulli-rounded query budget."""
    queries = rates * difficulty / ticks_per_unit  # w_k per tick
    whole = np.floor(queries)
    frac = queries - whole
    per_query_fail = 1.0 - 1.0 / difficulty
    fail = per_query_fail ** whole * (1.0 - frac / difficulty)
    return 1.0 - fail


def sample_race_exponential(cfg: GameConfig, profile: PureProfile,
                            rng: np.random.Generator) -> RaceOutcome:
    """One continuous-time race: independent exponential block times, min wins."""
    idx, rates = _racing_miners(cfg, profile)
    times = rng.standard_exponential(len(idx)) / rates
    j = int(np.argmin(times))
    return _outcome(cfg, int(idx[j]), float(times[j]))


def sample_race_discrete(cfg: GameConfig, profile: PureProfile,
                         rng: np.random.Generator,
                         ticks_per_unit: int = 1) -> RaceOutcome:
    """One per-hash race on the tick grid; same-tick ties broken uniformly."""
    if ticks_per_unit < 1:
        raise ValueError("ticks_per_unit must be a positive integer")
    if cfg.difficulty < 1:
        raise ValueError("discrete mode needs difficulty >= 1")
    idx, rates = _racing_miners(cfg, profile)
    probs = _tick_success_probs(rates, float(cfg.difficulty), ticks_per_unit)
    ticks = rng.geometric(probs)
    first = ticks.min()
    tied = np.flatnonzero(ticks == first)
    u = rng.random()  # always drawn so every trial consumes a fixed budget
    j = int(tied[min(int(u * len(tied)), len(tied) - 1)])
    return _outcome(cfg, int(idx[j]), float(first) / ticks_per_unit)


def _outcome(cfg: GameConfig, winner: int, finish_time: float) -> RaceOutcome:
    reward = [0.0] * cfg.n
    cost = [0.0] * cfg.n
    reward[winner] = float(cfg.reward)
    cost[winner] = float(cfg.miners[winner].cost_rate) * finish_time
    return RaceOutcome(winner, finish_time, tuple(reward), tuple(cost))


def _block_rng(seed: int, block: int) -> np.random.Generator:
    key = np.array([seed & _MASK64, block & _MASK64], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def _iter_blocks(trials: int) -> Iterator[tuple[int, int]]:
    """(block index, block length) pairs covering `trials` trials."""
    full, rest = divmod(trials, BLOCK_SIZE)
    for b in range(full):
        yield b, BLOCK_SIZE
    if rest:
        yield full, rest


def _simulate_block(cfg: GameConfig, profile: PureProfile, seed: int, block: int,
                    size: int, mode: str,
                    ticks_per_unit: int) -> tuple[np.ndarray, np.ndarray]:
    """Winners (miner indices) and finish times for one block of trials."""
    idx, rates = _racing_miners(cfg, profile)
    rng = _block_rng(seed, block)
    if mode == "exponential":
        times = rng.standard_exponential((size, len(idx))) / rates[None, :]
        j = np.argmin(times, axis=1)
        finish = times[np.arange(size), j]
    elif mode == "discrete":
        if cfg.difficulty < 1:
            raise ValueError("discrete mode needs difficulty >= 1")
        probs = _tick_success_probs(rates, float(cfg.difficulty), ticks_per_unit)
        ticks = rng.geometric(probs, size=(size, len(idx)))
        first = ticks.min(axis=1)
        tie = ticks == first[:, None]
        counts = tie.sum(axis=1)
        pick = np.minimum((rng.random(size) * counts).astype(np.int64), counts - 1)
        j = np.argmax(np.cumsum(tie, axis=1) > pick[:, None], axis=1)
        finish = first.astype(np.float64) / ticks_per_unit
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return idx[j], finish


def simulate_races(cfg: GameConfig, profile: PureProfile, trials: int, seed: int,
                   mode: str = "exponential",
                   ticks_per_unit: int = 1) -> tuple[np.ndarray, np.ndarray]:
    """Winners and finish times for `trials` races under the substream contract."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    _validate_seed(seed)
    winners = np.empty(trials, dtype=np.int64)
    times = np.empty(trials, dtype=np.float64)
    pos = 0
    for block, size in _iter_blocks(trials):
        w, t = _simulate_block(cfg, profile, seed, block, size, mode, ticks_per_unit)
        winners[pos:pos + size] = w
        times[pos:pos + size] = t
        pos += size
    return winners, times


def _validate_seed(seed: int) -> None:
    if not isinstance(seed, int) or not (0 <= seed <= _MASK64):
        raise ValueError(f"seed must be an integer in [0, 2^64), got {seed!r}")


def estimate_stats(cfg: GameConfig, profile: PureProfile, trials: int, seed: int,
                   mode: str = "exponential", ticks_per_unit: int = 1,
                   cost_accounting: str = "paper") -> RaceStats:
    """Monte-Carlo estimates of P_k, R_k, CS_k, U_k with standard errors.

    Deterministic given (config, profile, trials, seed, mode): block partial
    sums are combined with math.fsum, so the result does not depend on how
    blocks would be distributed across workers.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if cost_accounting not in ("paper", "all-pay"):
        raise ValueError(f"unknown cost accounting {cost_accounting!r}")
    _validate_seed(seed)
    n = cfg.n
    reward = float(cfg.reward)
    costs_rate = [float(m.cost_rate) for m in cfg.miners]

    wins_parts: list[list[int]] = [[] for _ in range(n)]
    t_parts: list[list[float]] = [[] for _ in range(n)]   # sum of T on k-wins
    t2_parts: list[list[float]] = [[] for _ in range(n)]  # sum of T^2 on k-wins
    t_all_parts: list[float] = []
    t2_all_parts: list[float] = []

    for block, size in _iter_blocks(trials):
        w, t = _simulate_block(cfg, profile, seed, block, size, mode, ticks_per_unit)
        for k in range(n):
            mask = w == k
            if not mask.any():
                continue
            tk = t[mask]
            wins_parts[k].append(int(mask.sum()))
            t_parts[k].append(float(np.sum(tk)))
            t2_parts[k].append(float(np.sum(tk * tk)))
        t_all_parts.append(float(np.sum(t)))
        t2_all_parts.append(float(np.sum(t * t)))

    def moments(s1: float, s2: float) -> tuple[float, float]:
        mean = s1 / trials
        if trials < 2:
            return mean, 0.0
        var = max(s2 - s1 * s1 / trials, 0.0) / (trials - 1)
        return mean, math.sqrt(var / trials)

    est: dict[str, list[float]] = {q: [] for q in ("win", "reward", "cost", "utility")}
    se: dict[str, list[float]] = {q: [] for q in ("win", "reward", "cost", "utility")}
    for k in range(n):
        wins = float(sum(wins_parts[k]))
        st = math.fsum(t_parts[k])
        st2 = math.fsum(t2_parts[k])
        c = costs_rate[k]
        for q, s1, s2 in (
                ("win", wins, wins),
                ("reward", reward * wins, reward * reward * wins),
                ("cost", c * st, c * c * st2),
                ("utility", reward * wins - c * st,
                 reward * reward * wins - 2.0 * reward * c * st + c * c * st2)):
            m, s = moments(s1, s2)
            est[q].append(m)
            se[q].append(s)

    all_pay_est = all_pay_se = None
    if cost_accounting == "all-pay":
        st_all = math.fsum(t_all_parts)
        st2_all = math.fsum(t2_all_parts)
        pay, pay_se = [], []
        for k in range(n):
            c = costs_rate[k] if profile.choices[k] else 0.0
            m, s = moments(c * st_all, c * c * st2_all)
            pay.append(m)
            pay_se.append(s)
        all_pay_est, all_pay_se = tuple(pay), tuple(pay_se)

    return RaceStats(
        trials=trials, seed=seed, mode=mode,
        est_win_prob=tuple(est["win"]), est_reward=tuple(est["reward"]),
        est_cost=tuple(est["cost"]), est_utility=tuple(est["utility"]),
        se_win_prob=tuple(se["win"]), se_reward=tuple(se["reward"]),
        se_cost=tuple(se["cost"]), se_utility=tuple(se["utility"]),
        est_cost_all_pay=all_pay_est, se_cost_all_pay=all_pay_se)
