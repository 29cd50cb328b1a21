"""Angle conventions and validators.

Polarization is axis-like: an analyzer at angle theta and one at theta + pi
are the same physical device.  All deviation angles handled by the model
therefore live on [-pi/2, pi/2], and arbitrary angle differences are folded
back into that window by :func:`reduce_axis_angle`.

Angles are plain floats in radians throughout the package; degrees appear
only at the command line.
"""

from __future__ import annotations

import numpy as np

from .errors import AngleDomainError

HALF_WINDOW = np.pi / 2.0

# Slack for values produced by deg->rad conversion landing an ulp outside
# the closed window.
_DOMAIN_SLACK = 1e-9


def reduce_axis_angle(delta):
    """Fold an angle difference into [-pi/2, pi/2] modulo pi.

    Works on scalars and arrays.  The midpoint convention of ``np.round``
    (ties to even) makes the fold deterministic at exactly +/- pi/2.
    """
    delta = np.asarray(delta, dtype=float)
    if not np.all(np.isfinite(delta)):
        raise AngleDomainError("angle difference must be finite")
    reduced = delta - np.pi * np.round(delta / np.pi)
    return float(reduced) if reduced.ndim == 0 else reduced


def require_deviation_angle(value, name: str = "angle"):
    """Validate that value lies in [-pi/2, pi/2]; return it clamped as float array/scalar.

    Raises AngleDomainError for non-finite input or input outside the window
    by more than a rounding ulp.
    """
    arr = np.asarray(value, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise AngleDomainError(f"{name} must be finite")
    if np.any(np.abs(arr) > HALF_WINDOW + _DOMAIN_SLACK):
        bad = float(np.max(np.abs(arr)))
        raise AngleDomainError(
            f"{name} must lie in [-pi/2, pi/2]; got magnitude {bad!r}"
        )
    clamped = np.clip(arr, -HALF_WINDOW, HALF_WINDOW)
    return float(clamped) if clamped.ndim == 0 else clamped


def degrees_grid(start_deg: float, stop_deg: float, step_deg: float) -> np.ndarray:
    """Inclusive degree grid start:step:stop, returned in radians."""
    if step_deg <= 0 or not np.isfinite(step_deg):
        raise AngleDomainError("grid step must be positive and finite")
    if stop_deg < start_deg:
        raise AngleDomainError("grid stop must not precede start")
    count = int(np.floor((stop_deg - start_deg) / step_deg + 1e-9)) + 1
    return np.deg2rad(start_deg + step_deg * np.arange(count))
