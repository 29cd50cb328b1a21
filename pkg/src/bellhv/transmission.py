"""Single-photon and photon-pair transmission through ideal polarizers.

A photon carries a hidden polarization axis; lambda is the deviation between
that axis and the polarizer axis, folded into [-pi/2, pi/2].  A transmission
model assigns the probability p1(lambda) of passing one polarizer.  The
family of primary interest is the saturated stretched exponential

    p1(lambda) = 1 - (1 - E) / (1 + c E),   E = exp(-(a |lambda|)^e),

which equals 1 exactly at lambda = 0, decays to ~0 at the window edge, and
for suitable (a, e, c) makes a *pair* of polarizers reproduce the cosine
squared intensity law even though a single polarizer does not.

Pair transmission for relative analyzer angle alpha averages over a source
with uniformly distributed hidden axis:

    P(alpha) = integral over lambda of p1(lambda) * p1(alpha - lambda),

with the second factor extended by zero outside the window (a photon that
deviates more than a quarter turn from the second analyzer is absorbed).
Intensity ratios divide by the half-turn measure pi.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from .angles import HALF_WINDOW, reduce_axis_angle, require_deviation_angle
from .errors import AngleDomainError, DegenerateModelError, ParameterError
from .quadrature import QuadratureSpec, integrate


@dataclass(frozen=True)
class TransmissionParams:
    """Parameters (a, e, c) of the saturated stretched-exponential profile.

    a scales the deviation angle, e is the stretching exponent, c is the
    saturation strength pinning p1(0) = 1.
    """

    a: float
    e: float
    c: float

    def __post_init__(self):
        for name in ("a", "e", "c"):
            value = getattr(self, name)
            if not isinstance(value, (int, float, np.floating, np.integer)):
                raise ParameterError(f"{name} must be a real number")
            object.__setattr__(self, name, float(value))
        if not (np.isfinite(self.a) and self.a > 0):
            raise ParameterError("a must be positive and finite")
        if not (np.isfinite(self.e) and self.e > 0):
            raise ParameterError("e must be positive and finite")
        if not (np.isfinite(self.c) and self.c >= 0):
            raise ParameterError("c must be non-negative and finite")

    def as_tuple(self) -> Tuple[float, float, float]:
        return (self.a, self.e, self.c)


# Reference triple: recovered by the fit module as the operating point whose
# pair curve tracks cos^2 within 0.05 (worst deviation 0.0459 at 25 degrees)
# while a single polarizer passes 44.3% of unpolarized light.
REFERENCE_PARAMS = TransmissionParams(a=2.6, e=2.2, c=45.0)


class TransmissionModel:
    """Even transmission-probability profile on the deviation window.

    Subclasses implement `_profile(folded)` for folded = |lambda| in
    [0, pi/2]; the base class handles validation, evenness, zero extension
    outside the window, and periodic axis reduction.
    """

    def _profile(self, folded: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def probabilities(self, lam):
        """p1 evaluated on the closed window [-pi/2, pi/2]."""
        lam = require_deviation_angle(lam, "deviation angle")
        arr = np.atleast_1d(np.asarray(lam, dtype=float))
        values = self._profile(np.abs(arr))
        values = np.clip(values, 0.0, 1.0)
        return float(values[0]) if np.ndim(lam) == 0 else values

    def probabilities_extended(self, lam):
        """p1 extended by zero outside the window; any finite angle allowed."""
        arr = np.atleast_1d(np.asarray(lam, dtype=float))
        if not np.all(np.isfinite(arr)):
            raise AngleDomainError("deviation angle must be finite")
        inside = np.abs(arr) <= HALF_WINDOW
        values = np.zeros_like(arr)
        if np.any(inside):
            values[inside] = np.clip(self._profile(np.abs(arr[inside])), 0.0, 1.0)
        return float(values[0]) if np.ndim(lam) == 0 else values

    def probabilities_wrapped(self, lam):
        """p1 of the axis-reduced deviation; periodic with period pi."""
        return self.probabilities(reduce_axis_angle(lam))


@dataclass(frozen=True)
class StretchedExponentialModel(TransmissionModel):
    params: TransmissionParams = REFERENCE_PARAMS

    def __post_init__(self):
        if not isinstance(self.params, TransmissionParams):
            raise ParameterError("params must be a TransmissionParams")

    def _profile(self, folded: np.ndarray) -> np.ndarray:
        a, e, c = self.params.as_tuple()
        # algebraically identical to 1 - (1 - E)/(1 + c E) but keeps full
        # precision when E underflows and c E is large; overflow in the
        # power just saturates E at 0, which is the correct limit
        with np.errstate(over="ignore", under="ignore"):
            expo = np.exp(-np.power(a * folded, e))
            return expo * (c + 1.0) / (1.0 + c * expo)


@dataclass(frozen=True)
class CosineSquaredModel(TransmissionModel):
    """p1 = cos^2(lambda): each polarizer alone already obeys the intensity law."""

    def _profile(self, folded: np.ndarray) -> np.ndarray:
        return np.cos(folded) ** 2


@dataclass(frozen=True)
class ConstantModel(TransmissionModel):
    """p1 identically equal to `value`; value 1 models a perfect open channel."""

    value: float = 1.0

    def __post_init__(self):
        if not (np.isfinite(self.value) and 0.0 <= self.value <= 1.0):
            raise ParameterError("value must lie in [0, 1]")

    def _profile(self, folded: np.ndarray) -> np.ndarray:
        return np.full_like(folded, self.value)


@dataclass(frozen=True, eq=False)
class TabulatedModel(TransmissionModel):
    """Profile interpolated linearly from (deviation, probability) samples.

    Nodes are folded to |lambda|; duplicates are averaged; evaluation clamps
    to the end values outside the sampled range.  At least two distinct
    folded nodes are required and all probabilities must lie in [0, 1].
    """

    nodes: Sequence[float]
    values: Sequence[float]

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if nodes.ndim != 1 or nodes.shape != values.shape or nodes.size < 2:
            raise ParameterError("need matching 1-D nodes/values with at least two samples")
        if not (np.all(np.isfinite(nodes)) and np.all(np.isfinite(values))):
            raise ParameterError("nodes and values must be finite")
        if np.any(np.abs(nodes) > HALF_WINDOW + 1e-9):
            raise AngleDomainError("table nodes must lie in [-pi/2, pi/2]")
        if np.any(values < 0.0) or np.any(values > 1.0):
            raise ParameterError("table values must lie in [0, 1]")
        folded = np.minimum(np.abs(nodes), HALF_WINDOW)
        order = np.argsort(folded, kind="stable")
        folded = folded[order]
        values = values[order]
        unique, inverse = np.unique(folded, return_inverse=True)
        if unique.size < 2:
            raise ParameterError("need at least two distinct folded nodes")
        averaged = np.zeros_like(unique)
        counts = np.zeros_like(unique)
        np.add.at(averaged, inverse, values)
        np.add.at(counts, inverse, 1.0)
        object.__setattr__(self, "nodes", unique)
        object.__setattr__(self, "values", averaged / counts)

    def _profile(self, folded: np.ndarray) -> np.ndarray:
        return np.interp(folded, self.nodes, self.values)


def p1(model: TransmissionModel, lam):
    """Single-polarizer transmission probability; see TransmissionModel."""
    return model.probabilities(lam)


def malus(alpha):
    """The cosine-squared intensity law, for comparison curves."""
    arr = np.asarray(alpha, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise AngleDomainError("alpha must be finite")
    out = np.cos(arr) ** 2
    return float(out) if arr.ndim == 0 else out


def intensity_ratio(model: TransmissionModel, spec: Optional[QuadratureSpec] = None) -> float:
    """Fraction of an unpolarized beam passing one polarizer: mean of p1."""
    value, _ = integrate(model.probabilities, -HALF_WINDOW, HALF_WINDOW, spec)
    return value / np.pi


def pair_transmission(
    model: TransmissionModel, alpha: float, spec: Optional[QuadratureSpec] = None
) -> float:
    """P(alpha): pair transmission at relative analyzer angle alpha.

    alpha must lie in [-pi/2, pi/2]; P is even in alpha.
    """
    alpha = require_deviation_angle(float(alpha), "alpha")

    def integrand(lam):
        return model.probabilities(lam) * model.probabilities(
            np.clip(alpha - lam, -HALF_WINDOW, HALF_WINDOW)
        )

    # The second analyzer only transmits for alpha - lambda inside the
    # half-turn window, so the product vanishes identically on part of the
    # range and kinks at lambda = alpha -/+ pi/2; the profile folds add
    # kinks at 0 and alpha.  Splitting there keeps each retained piece
    # smooth.  Pieces wholly outside the second window contribute exactly
    # zero and are skipped: sampling them would evaluate the discontinuous
    # edge point and stall the refinement estimate at first order.
    interior = {0.0, alpha, alpha - HALF_WINDOW, alpha + HALF_WINDOW}
    splits = sorted(
        {-HALF_WINDOW, HALF_WINDOW} | {s for s in interior if -HALF_WINDOW < s < HALF_WINDOW}
    )
    total = 0.0
    for lo, hi in zip(splits[:-1], splits[1:]):
        if abs(alpha - 0.5 * (lo + hi)) > HALF_WINDOW:
            continue
        piece, _ = integrate(integrand, lo, hi, spec)
        total += piece
    return total


def normalized_pair_curve(
    model: TransmissionModel,
    alphas,
    spec: Optional[QuadratureSpec] = None,
) -> np.ndarray:
    """P(alpha)/P(0) on a grid of relative angles.

    The normalization pins the curve to exactly 1 at alpha = 0, which is the
    form the intensity law cos^2 is compared against.
    """
    alphas = np.atleast_1d(np.asarray(alphas, dtype=float))
    reference = pair_transmission(model, 0.0, spec)
    if reference <= 0.0:
        raise DegenerateModelError("pair transmission at alpha = 0 vanishes")
    out = np.empty_like(alphas)
    for i, alpha in enumerate(alphas):
        out[i] = 1.0 if alpha == 0.0 else pair_transmission(model, alpha, spec) / reference
    return out


def default_angle_grid() -> np.ndarray:
    """0 to 90 degrees in 5-degree steps, in radians."""
    return np.deg2rad(np.arange(0.0, 91.0, 5.0))
