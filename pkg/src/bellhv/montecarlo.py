"""Pair-stream Monte Carlo for two-analyzer coincidence experiments.

Each simulated pair carries one shared hidden polarization axis, drawn
uniformly from the half-turn window.  Arm A transmits with probability
p1(lambda - angle_a) and arm B with p1(lambda - angle_b), both deviations
folded back into the window (axes are direction-free, period pi).  The four
tally cells (both / A only / B only / neither) support the coincidence
probability and the two CHSH-style estimators:

* all-events: E = P(agree) - P(disagree) over every generated pair; a local
  model can never push the CHSH combination past 2.
* post-selected: E = p11 / (pA * pB), coincidences normalized by the singles
  product, computed from detected events only.  This is the estimator that
  can exceed 2 despite the locality of the underlying model.

Reproducibility: chunk i of a run draws from `rng.substream(i)`, so results
are independent of chunk scheduling and identical across platforms.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .angles import HALF_WINDOW, require_deviation_angle
from .errors import DegenerateModelError, ParameterError
from .quadrature import QuadratureSpec, integrate
from .rng import RngStream
from .transmission import TransmissionModel

CHUNK_PAIRS = 1 << 16

MAX_PAIRS = 10**8

# sign pattern of the Bell combination E(a1,b1) + E(a1,b2) + E(a2,b1) - E(a2,b2)
CHSH_SIGNS = (1.0, 1.0, 1.0, -1.0)


@dataclass(frozen=True)
class SourceSpec:
    """Hidden-axis distribution of the pair source."""

    distribution: str = "uniform-half-turn"

    def __post_init__(self):
        if self.distribution != "uniform-half-turn":
            raise ParameterError(f"unknown source distribution {self.distribution!r}")

    def sample(self, generator: np.random.Generator, count: int) -> np.ndarray:
        return generator.uniform(-HALF_WINDOW, HALF_WINDOW, size=count)


@dataclass(frozen=True)
class ExperimentConfig:
    """One coincidence run: model, analyzer angles, sample size, stream."""

    model: TransmissionModel
    angle_a: float
    angle_b: float
    n_pairs: int
    rng: RngStream
    source: SourceSpec = SourceSpec()

    def __post_init__(self):
        if not isinstance(self.model, TransmissionModel):
            raise ParameterError("model must be a TransmissionModel")
        object.__setattr__(self, "angle_a", require_deviation_angle(self.angle_a, "angle_a"))
        object.__setattr__(self, "angle_b", require_deviation_angle(self.angle_b, "angle_b"))
        if not isinstance(self.n_pairs, (int, np.integer)) or self.n_pairs < 1:
            raise ParameterError("n_pairs must be a positive integer")
        if self.n_pairs > MAX_PAIRS:
            raise ParameterError(f"n_pairs capped at {MAX_PAIRS}")
        object.__setattr__(self, "n_pairs", int(self.n_pairs))
        if not isinstance(self.rng, RngStream):
            raise ParameterError("rng must be an RngStream")
        if not isinstance(self.source, SourceSpec):
            raise ParameterError("source must be a SourceSpec")


@dataclass(frozen=True)
class CoincidenceCounts:
    """Exhaustive tally of one run; cells sum to n_pairs by construction."""

    n11: int
    n10: int
    n01: int
    n00: int
    n_pairs: int
    angle_a: float
    angle_b: float

    def __post_init__(self):
        cells = (self.n11, self.n10, self.n01, self.n00)
        if any(not isinstance(c, (int, np.integer)) or c < 0 for c in cells):
            raise ParameterError("tally cells must be non-negative integers")
        if sum(cells) != self.n_pairs:
            raise ParameterError("tally cells must sum to n_pairs")

    @property
    def singles_a(self) -> int:
        return self.n11 + self.n10

    @property
    def singles_b(self) -> int:
        return self.n11 + self.n01


def run_pairs(config: ExperimentConfig) -> CoincidenceCounts:
    """Simulate the configured number of pairs; returns the exhaustive tally."""
    n11 = n10 = n01 = n00 = 0
    produced = 0
    chunk_index = 0
    while produced < config.n_pairs:
        count = min(CHUNK_PAIRS, config.n_pairs - produced)
        generator = config.rng.substream(chunk_index).generator()
        lam = config.source.sample(generator, count)
        u_a = generator.uniform(size=count)
        u_b = generator.uniform(size=count)
        passed_a = u_a < config.model.probabilities_wrapped(lam - config.angle_a)
        passed_b = u_b < config.model.probabilities_wrapped(lam - config.angle_b)
        n11 += int(np.count_nonzero(passed_a & passed_b))
        n10 += int(np.count_nonzero(passed_a & ~passed_b))
        n01 += int(np.count_nonzero(~passed_a & passed_b))
        produced += count
        chunk_index += 1
    n00 = config.n_pairs - n11 - n10 - n01
    return CoincidenceCounts(
        n11=n11,
        n10=n10,
        n01=n01,
        n00=n00,
        n_pairs=config.n_pairs,
        angle_a=config.angle_a,
        angle_b=config.angle_b,
    )


def coincidence_probability_estimate(counts: CoincidenceCounts) -> Tuple[float, float]:
    """(p11, binomial standard error) from a tally."""
    p = counts.n11 / counts.n_pairs
    stderr = np.sqrt(p * (1.0 - p) / counts.n_pairs)
    return float(p), float(stderr)


def expected_coincidence_probability(
    model: TransmissionModel,
    angle_a: float,
    angle_b: float,
    spec: Optional[QuadratureSpec] = None,
) -> float:
    """Quadrature value of the coincidence probability the sampler estimates.

    Averages p1(fold(lambda - angle_a)) * p1(fold(lambda - angle_b)) over the
    uniform hidden axis.  The integrand is split at every fold point (each
    analyzer angle and its +/- quarter-turn wrap images) so each quadrature
    piece is smooth.
    """
    angle_a = require_deviation_angle(float(angle_a), "angle_a")
    angle_b = require_deviation_angle(float(angle_b), "angle_b")

    def integrand(lam):
        return model.probabilities_wrapped(lam - angle_a) * model.probabilities_wrapped(
            lam - angle_b
        )

    interior = set()
    for theta in (angle_a, angle_b):
        for candidate in (theta, theta - HALF_WINDOW, theta + HALF_WINDOW):
            if -HALF_WINDOW < candidate < HALF_WINDOW:
                interior.add(float(candidate))
    splits = sorted({-HALF_WINDOW, HALF_WINDOW} | interior)
    total = 0.0
    for lo, hi in zip(splits[:-1], splits[1:]):
        piece, _ = integrate(integrand, lo, hi, spec)
        total += piece
    return total / np.pi


@dataclass(frozen=True)
class ChshAngles:
    """Analyzer settings (a1, a2, b1, b2) for the four-correlation combination."""

    a1: float
    a2: float
    b1: float
    b2: float

    def __post_init__(self):
        for name in ("a1", "a2", "b1", "b2"):
            object.__setattr__(self, name, require_deviation_angle(getattr(self, name), name))

    def settings(self) -> Tuple[Tuple[float, float], ...]:
        return (
            (self.a1, self.b1),
            (self.a1, self.b2),
            (self.a2, self.b1),
            (self.a2, self.b2),
        )


CANONICAL_ANGLES = ChshAngles(a1=0.0, a2=np.pi / 4.0, b1=np.pi / 8.0, b2=3.0 * np.pi / 8.0)


@dataclass(frozen=True)
class ChshEstimate:
    """CHSH combination with per-setting detail.

    retained_fraction is the coincidence yield actually used by the
    post-selected estimator; None for the all-events estimator, which uses
    every generated pair.
    """

    value: float
    stderr: float
    correlations: Tuple[float, float, float, float]
    correlation_errors: Tuple[float, float, float, float]
    counts: Tuple[CoincidenceCounts, ...]
    retained_fraction: Optional[float]


def _four_settings(
    model: TransmissionModel,
    angles: ChshAngles,
    n_pairs: int,
    rng: RngStream,
    source: SourceSpec,
) -> Tuple[CoincidenceCounts, ...]:
    tallies = []
    for index, (angle_a, angle_b) in enumerate(angles.settings()):
        config = ExperimentConfig(
            model=model,
            angle_a=angle_a,
            angle_b=angle_b,
            n_pairs=n_pairs,
            rng=rng.substream(index),
            source=source,
        )
        tallies.append(run_pairs(config))
    return tuple(tallies)


def all_events_correlation(counts: CoincidenceCounts) -> Tuple[float, float]:
    """(E, stderr) with every pair counted, absorb = -1 and transmit = +1.

    E = P(agree) - P(disagree); the error is the binomial error of the
    agreement probability, scaled by 2.
    """
    agree = (counts.n11 + counts.n00) / counts.n_pairs
    return (
        float(2.0 * agree - 1.0),
        float(np.sqrt(4.0 * agree * (1.0 - agree) / counts.n_pairs)),
    )


def post_selected_correlation(counts: CoincidenceCounts) -> Tuple[float, float]:
    """(E, stderr) from detected events only: E = p11 / (pA * pB).

    Coincidences normalized by the singles product; with full transmission
    this equals 1 exactly, and in general it is NOT bounded the way the
    all-events correlation is.  The error keeps the dominant term only
    (binomial noise of the coincidence cell over the singles product).
    """
    if counts.singles_a == 0 or counts.singles_b == 0:
        raise DegenerateModelError(
            "post-selection undefined: one arm recorded no transmissions"
        )
    p11 = counts.n11 / counts.n_pairs
    p_a = counts.singles_a / counts.n_pairs
    p_b = counts.singles_b / counts.n_pairs
    return (
        float(p11 / (p_a * p_b)),
        float(np.sqrt(p11 * (1.0 - p11) / counts.n_pairs) / (p_a * p_b)),
    )


def _combine(tallies, correlation, retained_fraction) -> ChshEstimate:
    pairs = [correlation(t) for t in tallies]
    correlations = tuple(e for e, _ in pairs)
    errors = tuple(s for _, s in pairs)
    value = sum(s * e for s, e in zip(CHSH_SIGNS, correlations))
    return ChshEstimate(
        value=float(value),
        stderr=float(np.sqrt(sum(s * s for s in errors))),
        correlations=correlations,
        correlation_errors=errors,
        counts=tallies,
        retained_fraction=retained_fraction,
    )


def chsh_all_events(
    model: TransmissionModel,
    n_pairs: int,
    rng: RngStream,
    angles: ChshAngles = CANONICAL_ANGLES,
    source: SourceSpec = SourceSpec(),
) -> ChshEstimate:
    """CHSH from agreement-minus-disagreement over all generated pairs."""
    tallies = _four_settings(model, angles, n_pairs, rng, source)
    return _combine(tallies, all_events_correlation, None)


def chsh_post_selected(
    model: TransmissionModel,
    n_pairs: int,
    rng: RngStream,
    angles: ChshAngles = CANONICAL_ANGLES,
    source: SourceSpec = SourceSpec(),
) -> ChshEstimate:
    """CHSH from detected coincidences normalized by the singles product.

    Identical (model, n_pairs, rng, angles, source) arguments replay the very
    same photon records as `chsh_all_events`, so the two estimators can be
    compared pair-for-pair.
    """
    tallies = _four_settings(model, angles, n_pairs, rng, source)
    retained = sum(t.n11 for t in tallies) / (4.0 * n_pairs)
    return _combine(tallies, post_selected_correlation, retained)
