"""Complete closed-form equilibrium characterization of the two-miner game.

Everything here works on the normalized parameterization

    p_v = v2/v1 >= 1,   p_c = c2/c1 > 0,   d = D/v1 > 0,   z = R/d,

under which the payoff matrix (stay-out prob x_k0 per miner) is

                 miner 2 out            miner 2 in
    miner 1 out  (0, 0)                 (0, R - d/p_v)
    miner 1 in   (R - d, 0)             (A(R - d/A'), B(R - d p_c/A'))

with A = 1/(1+p_v p_c), B = p_v p_c/(1+p_v p_c), A' = 1+p_v p_c.

Each miner's participate-minus-abstain payoff gap is affine in the
opponent's stay-out probability, so the whole equilibrium set is driven by
two rational "indifference cutoff" functions of z: the stay-out probability
of miner k at which the *other* miner is exactly indifferent.  Cutoff 0
(the paper-facing x1 cutoff) is zero at z = p_c/(1+p_v p_c) and one at
z = 1/p_v; cutoff 1 is zero at z = 1/(1+p_v p_c) and one at z = 1.

Every comparison is done in exact rational arithmetic because the
equilibrium set changes qualitatively on measure-zero boundaries.

One subtlety: each cutoff formula has a pole above its value-1 threshold,
past which the raw formula turns negative even though participation then
strictly dominates.  `cutoff_band` therefore classifies by the threshold
ordering (correct for every z, and identical to the raw sign analysis
below the pole); the raw formula is exposed for z below the pole.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

from .game_core import MinerSpec, GameConfig, MixedProfile, PureProfile
from .rational import Numeric, as_fraction


@dataclass(frozen=True)
class TwoMinerParams:
    """Normalized two-miner game parameters (reward enters separately)."""

    p_v: Fraction
    p_c: Fraction
    d: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "p_v", as_fraction(self.p_v))
        object.__setattr__(self, "p_c", as_fraction(self.p_c))
        object.__setattr__(self, "d", as_fraction(self.d))
        if self.p_v <= 0 or self.p_c <= 0 or self.d <= 0:
            raise ValueError("p_v, p_c and d must all be strictly positive")

    @property
    def rate_ratio(self) -> Fraction:
        """Hash-rate ratio w2/w1 = p_v * p_c."""
        return self.p_v * self.p_c

    @property
    def is_normalized(self) -> bool:
        return self.p_v >= 1

    def swapped(self) -> "TwoMinerParams":
        """Parameters of the same game with miner labels 1 and 2 exchanged."""
        return TwoMinerParams(1 / self.p_v, 1 / self.p_c, self.d / self.p_v)

    def game_config(self, reward: Numeric) -> GameConfig:
        """Raw config with miner 1 = (c=1, v=1), miner 2 = (c=p_c, v=p_v), D=d.

        Reproduces the normalized utilities exactly, which lets tests
        cross-check the closed forms against the general n-miner ones.
        """
        return GameConfig(
            (MinerSpec(Fraction(1), Fraction(1)), MinerSpec(self.p_c, self.p_v)),
            self.d, as_fraction(reward))


def normalized_utility(k: int, s1: int, s2: int, params: TwoMinerParams,
                       reward: Numeric) -> Fraction:
    """Miner k's payoff at the pure profile (s1, s2) in normalized form."""
    if (s1, s2) == (0, 0):
        return Fraction(0)
    reward = as_fraction(reward)
    w = params.rate_ratio
    denom = s1 + s2 * w
    if k == 0:
        return Fraction(s1, 1) / denom * (reward - params.d / denom)
    if k == 1:
        return s2 * w / denom * (reward - params.d * params.p_c / denom)
    raise IndexError(f"miner index must be 0 or 1, got {k}")


def indifference_stay_out(miner: int, z: Numeric, params: TwoMinerParams) -> Fraction:
    """Stay-out probability of `miner` making the *other* miner indifferent.

    Rational, strictly increasing in z between its zero and its pole.
    Raises at the pole.
    """
    z = as_fraction(z)
    w = params.rate_ratio
    if miner == 0:
        pole = (2 * w + 1) / (params.p_v * (1 + w))
        if z == pole:
            raise ValueError(f"z = {z} is the pole of the miner-1 cutoff")
        return w * (z - params.p_c / (1 + w)) / (pole - z)
    if miner == 1:
        pole = (2 + w) / (1 + w)
        if z == pole:
            raise ValueError(f"z = {z} is the pole of the miner-2 cutoff")
        return (z - Fraction(1) / (1 + w)) / (w * (pole - z))
    raise IndexError(f"miner index must be 0 or 1, got {miner}")


def cutoff_zero_at(miner: int, params: TwoMinerParams) -> Fraction:
    """z at which the cutoff for `miner` equals 0."""
    w = params.rate_ratio
    return params.p_c / (1 + w) if miner == 0 else Fraction(1) / (1 + w)


def cutoff_one_at(miner: int, params: TwoMinerParams) -> Fraction:
    """z at which the cutoff for `miner` equals 1."""
    return Fraction(1) / params.p_v if miner == 0 else Fraction(1)


class CutoffBand(enum.Enum):
    """Position of a cutoff value relative to the probability interval [0, 1]."""

    BELOW_ZERO = "below-zero"
    AT_ZERO = "at-zero"
    INTERIOR = "interior"
    AT_ONE = "at-one"
    ABOVE_ONE = "above-one"


def cutoff_band(miner: int, z: Numeric,
                params: TwoMinerParams) -> tuple[CutoffBand, Optional[Fraction]]:
    """Classify the cutoff of `miner` at z, with its exact value when in [0, 1].

    Classification is by the exact threshold ordering, so it stays correct
    for z at or beyond the cutoff formula's pole (where the opponent's
    participation strictly dominates).
    """
    z = as_fraction(z)
    lo, hi = cutoff_zero_at(miner, params), cutoff_one_at(miner, params)
    if z < lo:
        return CutoffBand.BELOW_ZERO, None
    if z == lo:
        return CutoffBand.AT_ZERO, Fraction(0)
    if z < hi:
        return CutoffBand.INTERIOR, indifference_stay_out(miner, z, params)
    if z == hi:
        return CutoffBand.AT_ONE, Fraction(1)
    return CutoffBand.ABOVE_ONE, None


def payoff_difference(k: int, opponent_stay_out: Numeric, params: TwoMinerParams,
                      reward: Numeric) -> Numeric:
    """u_k(participate, x_other) - u_k(abstain, x_other); affine in x_other."""
    x = opponent_stay_out
    if not (0 <= x <= 1):
        raise ValueError(f"opponent stay-out probability must lie in [0,1], got {x}")
    alone = (1, 0) if k == 0 else (0, 1)
    u_in_opp_out = normalized_utility(k, *alone, params, reward)
    u_in_opp_in = normalized_utility(k, 1, 1, params, reward)
    # abstaining pays miner k zero in every profile, so the gap is just the
    # expected participation payoff against the opponent's mixture
    return x * u_in_opp_out + (1 - x) * u_in_opp_in


class BestResponse(enum.Enum):
    ABSTAIN = "only-abstain"
    PARTICIPATE = "only-participate"
    ANY = "entire-strategy-set"


def best_response_2p(k: int, opponent_stay_out: Numeric, params: TwoMinerParams,
                     reward: Numeric) -> BestResponse:
    """Miner k's best-response set against the opponent's stay-out probability."""
    gap = payoff_difference(k, as_fraction(opponent_stay_out), params,
                            as_fraction(reward))
    if gap > 0:
        return BestResponse.PARTICIPATE
    if gap < 0:
        return BestResponse.ABSTAIN
    return BestResponse.ANY


class EquilibriumKind(enum.Enum):
    PURE = "pure"
    MIXED_POINT = "mixed-point"
    CONTINUUM = "continuum"


@dataclass(frozen=True)
class Equilibrium:
    """One equilibrium component: an isolated point or a one-parameter family.

    For point kinds `stay_out` is the full profile.  For a continuum the
    free miner's slot is None and `interval` is the closed range its
    stay-out probability may take while the others stay fixed.
    """

    kind: EquilibriumKind
    stay_out: tuple[Optional[Fraction], ...]
    free_miner: Optional[int] = None
    interval: Optional[tuple[Fraction, Fraction]] = None

    def __post_init__(self) -> None:
        if self.kind is EquilibriumKind.CONTINUUM:
            if self.free_miner is None or self.interval is None:
                raise ValueError("continuum needs free_miner and interval")
            lo, hi = self.interval
            if not (0 <= lo <= hi <= 1):
                raise ValueError(f"continuum interval must sit inside [0,1]: {self.interval}")
            if self.stay_out[self.free_miner] is not None:
                raise ValueError("free miner's slot must be None")
        else:
            if self.free_miner is not None or self.interval is not None:
                raise ValueError("free_miner/interval only apply to continua")
            if any(x is None for x in self.stay_out):
                raise ValueError("point equilibria need every probability")
            if self.kind is EquilibriumKind.MIXED_POINT and not all(
                    0 < x < 1 for x in self.stay_out):
                raise ValueError("mixed-point probabilities must be interior")

    def profile_at(self, value: Optional[Numeric] = None) -> MixedProfile:
        """Concrete profile; `value` fills the free slot of a continuum."""
        if self.kind is not EquilibriumKind.CONTINUUM:
            if value is not None:
                raise ValueError("value only applies to continua")
            return MixedProfile(self.stay_out)
        lo, hi = self.interval
        value = as_fraction(value)
        if not (lo <= value <= hi):
            raise ValueError(f"{value} outside continuum interval [{lo}, {hi}]")
        xs = list(self.stay_out)
        xs[self.free_miner] = value
        return MixedProfile(tuple(xs))

    def sample_profiles(self, count: int = 5) -> list[MixedProfile]:
        """Evenly spaced members (endpoints included); a single point otherwise."""
        if self.kind is not EquilibriumKind.CONTINUUM:
            return [self.profile_at()]
        lo, hi = self.interval
        if count < 2 or lo == hi:
            return [self.profile_at(lo)]
        step = (hi - lo) / (count - 1)
        return [self.profile_at(lo + i * step) for i in range(count)]

    def pure_choice_vectors(self) -> list[tuple[int, ...]]:
        """Pure participation profiles contained in this component."""
        def to_choices(stay_out: tuple) -> Optional[tuple[int, ...]]:
            if all(x in (0, 1) for x in stay_out):
                return tuple(1 - int(x) for x in stay_out)
            return None

        if self.kind is EquilibriumKind.CONTINUUM:
            found = []
            for v in dict.fromkeys(self.interval):  # lo, hi deduped
                if v in (0, 1):
                    xs = list(self.stay_out)
                    xs[self.free_miner] = v
                    c = to_choices(tuple(xs))
                    if c is not None:
                        found.append(c)
            return found
        c = to_choices(self.stay_out)
        return [c] if c is not None else []

    def swap_miners(self) -> "Equilibrium":
        """Same equilibrium with the two miner labels exchanged (n = 2 only)."""
        if len(self.stay_out) != 2:
            raise ValueError("swap_miners applies to two-miner equilibria")
        free = None if self.free_miner is None else 1 - self.free_miner
        return Equilibrium(self.kind, tuple(reversed(self.stay_out)),
                           free_miner=free, interval=self.interval)


@dataclass(frozen=True)
class EquilibriumSet:
    """NE(G) split by component kind, in a deterministic construction order."""

    pure: tuple[Equilibrium, ...] = ()
    mixed_points: tuple[Equilibrium, ...] = ()
    continua: tuple[Equilibrium, ...] = ()

    def __iter__(self) -> Iterator[Equilibrium]:
        return itertools.chain(self.pure, self.mixed_points, self.continua)

    def pure_choice_set(self) -> frozenset[tuple[int, ...]]:
        """All pure profiles that are equilibria, continuum endpoints included."""
        out = set()
        for eq in self:
            out.update(eq.pure_choice_vectors())
        return frozenset(out)

    def swap_miners(self) -> "EquilibriumSet":
        return EquilibriumSet(tuple(e.swap_miners() for e in self.pure),
                              tuple(e.swap_miners() for e in self.mixed_points),
                              tuple(e.swap_miners() for e in self.continua))


def _pure2(x1: int, x2: int) -> Equilibrium:
    return Equilibrium(EquilibriumKind.PURE, (Fraction(x1), Fraction(x2)))


_BOTH_OUT = _pure2(1, 1)
_BOTH_IN = _pure2(0, 0)
_ONLY_SECOND_IN = _pure2(1, 0)


def _mixed2(x1: Fraction, x2: Fraction) -> Equilibrium:
    return Equilibrium(EquilibriumKind.MIXED_POINT, (x1, x2))


def _continuum(free: int, fixed_value: int, lo: Fraction, hi: Fraction) -> Equilibrium:
    stay_out: list[Optional[Fraction]] = [None, None]
    stay_out[1 - free] = Fraction(fixed_value)
    return Equilibrium(EquilibriumKind.CONTINUUM, tuple(stay_out),
                       free_miner=free, interval=(Fraction(lo), Fraction(hi)))


def nash_set_2p(params: TwoMinerParams, reward: Numeric) -> EquilibriumSet:
    """Exact equilibrium set of the two-miner game, including boundary continua.

    Requires the normalized orientation p_v >= 1 (use nash_set_2p_general
    for arbitrary labelling).  The set's structure depends on which of the
    three p_c cases holds and where z = R/d sits among the case thresholds,
    with one-parameter continua exactly on the thresholds and a doubly
    degenerate pair of continua at the corner (p_c, z) = (1 - 1/p_v, 1/p_v).
    """
    if not params.is_normalized:
        raise ValueError("nash_set_2p expects p_v >= 1; swap miner labels first")
    reward = as_fraction(reward)
    if reward < 0:
        raise ValueError(f"reward must be >= 0, got {reward}")
    z = reward / params.d
    cut = lambda miner, at: indifference_stay_out(miner, at, params)

    if params.p_c >= 1:
        lo, hi = cutoff_zero_at(0, params), cutoff_one_at(0, params)
        if z < lo:
            return EquilibriumSet(pure=(_BOTH_OUT,))
        if z == lo:
            return EquilibriumSet(pure=(_BOTH_OUT,),
                                  continua=(_continuum(1, 0, 0, cut(1, lo)),))
        if z < hi:
            return EquilibriumSet(pure=(_BOTH_OUT, _BOTH_IN),
                                  mixed_points=(_mixed2(cut(0, z), cut(1, z)),))
        if z == hi:
            return EquilibriumSet(pure=(_BOTH_IN,),
                                  continua=(_continuum(1, 1, cut(1, hi), 1),))
        return EquilibriumSet(pure=(_BOTH_IN,))

    boundary_pc = 1 - 1 / params.p_v
    if params.p_c >= boundary_pc:
        lo, hi = cutoff_zero_at(1, params), cutoff_one_at(0, params)
        if params.p_c == boundary_pc and z == hi:
            # corner: both thresholds coincide; two full continua whose
            # endpoints carry the pure profiles
            return EquilibriumSet(continua=(_continuum(0, 0, 0, 1),
                                            _continuum(1, 1, 0, 1)))
        if z < lo:
            return EquilibriumSet(pure=(_BOTH_OUT,))
        if z == lo:
            return EquilibriumSet(pure=(_BOTH_OUT,),
                                  continua=(_continuum(0, 0, 0, cut(0, lo)),))
        if z < hi:
            return EquilibriumSet(pure=(_BOTH_OUT, _BOTH_IN),
                                  mixed_points=(_mixed2(cut(0, z), cut(1, z)),))
        if z == hi:
            return EquilibriumSet(pure=(_BOTH_IN,),
                                  continua=(_continuum(1, 1, cut(1, hi), 1),))
        return EquilibriumSet(pure=(_BOTH_IN,))

    # 0 < p_c < 1 - 1/p_v: the strong miner 2 mines alone in a middle band.
    # This band exists only here, where 1/p_v < 1/(1 + p_v p_c).
    lo, hi = cutoff_one_at(0, params), cutoff_zero_at(1, params)
    if z < lo:
        return EquilibriumSet(pure=(_BOTH_OUT,))
    if z == lo:
        return EquilibriumSet(continua=(_continuum(1, 1, 0, 1),))
    if z < hi:
        return EquilibriumSet(pure=(_ONLY_SECOND_IN,))
    if z == hi:
        return EquilibriumSet(continua=(_continuum(0, 0, 0, 1),))
    return EquilibriumSet(pure=(_BOTH_IN,))


def nash_set_2p_general(params: TwoMinerParams, reward: Numeric) -> EquilibriumSet:
    """nash_set_2p for any labelling; results reported in the caller's indexing."""
    if params.is_normalized:
        return nash_set_2p(params, reward)
    # the reward is labelling-invariant; swapped() already rescales d to D/v2
    return nash_set_2p(params.swapped(), reward).swap_miners()


class RegionLabel(enum.Enum):
    A = "a"
    B = "b"
    C = "c"
    D = "d"
    AB = "boundary(ab)"
    BC = "boundary(bc)"
    CD = "boundary(cd)"
    DA = "boundary(da)"
    CORNER = "corner"


def classify_region(params: TwoMinerParams, reward: Numeric) -> RegionLabel:
    """Label of (p_c, R/d) in the equilibrium-structure map for fixed p_v >= 1.

    a: unique all-participate; b: both pure plus the interior mixed point;
    c: unique all-abstain; d: unique "only miner 2 mines".  Thresholds carry
    explicit boundary labels; the c/a contact point is the corner.
    """
    if not params.is_normalized:
        raise ValueError("classify_region expects p_v >= 1")
    z = as_fraction(reward) / params.d
    boundary_pc = 1 - 1 / params.p_v
    if params.p_c == boundary_pc and z == cutoff_one_at(0, params):
        return RegionLabel.CORNER
    if params.p_c > boundary_pc:
        lo = cutoff_zero_at(0 if params.p_c >= 1 else 1, params)
        hi = cutoff_one_at(0, params)
        if z < lo:
            return RegionLabel.C
        if z == lo:
            return RegionLabel.BC
        if z < hi:
            return RegionLabel.B
        if z == hi:
            return RegionLabel.AB
        return RegionLabel.A
    if params.p_c == boundary_pc:
        return RegionLabel.C if z < cutoff_one_at(0, params) else RegionLabel.A
    lo, hi = cutoff_one_at(0, params), cutoff_zero_at(1, params)
    if z < lo:
        return RegionLabel.C
    if z == lo:
        return RegionLabel.CD
    if z < hi:
        return RegionLabel.D
    if z == hi:
        return RegionLabel.DA
    return RegionLabel.A


def hysteresis_band_2p(params: TwoMinerParams) -> Optional[tuple[Fraction, Fraction]]:
    """Open z-interval where both pure profiles are isolated equilibria.

    This is the interior of the coexistence region: at the closed endpoints
    one of the pure profiles survives only as the endpoint of a boundary
    continuum (a weak, knife-edge equilibrium).  None when p_c <= 1 - 1/p_v,
    where the two pure equilibria never coexist.
    """
    if not params.is_normalized:
        raise ValueError("hysteresis_band_2p expects p_v >= 1")
    if params.p_c <= 1 - 1 / params.p_v:
        return None
    lo = max(params.p_c, Fraction(1)) / (1 + params.rate_ratio)
    return lo, cutoff_one_at(0, params)


def ne_change_points(params: TwoMinerParams) -> tuple[Fraction, Fraction]:
    """The two z values where the equilibrium-set structure changes (sorted).

    They coincide exactly at p_c = 1 - 1/p_v (the pure-to-pure jump).
    """
    if not params.is_normalized:
        raise ValueError("ne_change_points expects p_v >= 1")
    if params.p_c >= 1:
        pts = (cutoff_zero_at(0, params), cutoff_one_at(0, params))
    elif params.p_c >= 1 - 1 / params.p_v:
        pts = (cutoff_zero_at(1, params), cutoff_one_at(0, params))
    else:
        pts = (cutoff_one_at(0, params), cutoff_zero_at(1, params))
    return tuple(sorted(pts))
