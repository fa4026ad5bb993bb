"""Nash equilibria of the blockchain-mining participation game.

Miners decide whether to join a Poisson hash race for a block reward;
this package computes the game's closed-form payoffs, its complete
two-miner equilibrium set, pure/symmetric-mixed equilibria for n miners,
and Monte-Carlo validation of the closed forms, plus a sweep CLI that
emits the hysteresis/jump/threshold analyses as CSV/JSON/SVG artifacts.
"""

from .game_core import (GameConfig, MinerSpec, MixedProfile, PureProfile,
                        closed_form_race_stats, expected_cost, expected_reward,
                        expected_utility, hash_rate, poisson_rate, utility,
                        win_probability)
from .race import (RaceOutcome, RaceStats, estimate_stats, sample_race_discrete,
                   sample_race_exponential, simulate_races)
from .solver import (SolverSettings, ThresholdCurve, ThresholdRow,
                     hysteresis_interval, is_pure_nash, participation_threshold,
                     pure_nash_enumerate, regret, symmetric_mixed_nash,
                     threshold_curve)
from .two_miner import (BestResponse, CutoffBand, Equilibrium, EquilibriumKind,
                        EquilibriumSet, RegionLabel, TwoMinerParams,
                        best_response_2p, classify_region, cutoff_band,
                        hysteresis_band_2p, indifference_stay_out, nash_set_2p,
                        nash_set_2p_general, ne_change_points, payoff_difference)

__version__ = "0.1.0"

__all__ = [
    "BestResponse", "CutoffBand", "Equilibrium", "EquilibriumKind",
    "EquilibriumSet", "GameConfig", "MinerSpec", "MixedProfile", "PureProfile",
    "RaceOutcome", "RaceStats", "RegionLabel", "SolverSettings",
    "ThresholdCurve", "ThresholdRow", "TwoMinerParams", "best_response_2p",
    "classify_region", "closed_form_race_stats", "cutoff_band", "estimate_stats",
    "expected_cost", "expected_reward", "expected_utility", "hash_rate",
    "hysteresis_band_2p", "hysteresis_interval", "indifference_stay_out",
    "is_pure_nash", "nash_set_2p", "nash_set_2p_general", "ne_change_points",
    "participation_threshold", "payoff_difference", "poisson_rate",
    "pure_nash_enumerate", "regret", "sample_race_discrete",
    "sample_race_exponential", "simulate_races", "symmetric_mixed_nash",
    "threshold_curve", "utility", "win_probability",
]
