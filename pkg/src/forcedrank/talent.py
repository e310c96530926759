"""Standardized latent-talent sampling.

Every shape is location-scale transformed to mean 0 and variance 1, so the
shapes can be swapped without changing the scale of anything downstream.
"""
from __future__ import annotations

import enum
import math

import numpy as np
from scipy.special import ndtr

SQRT3 = math.sqrt(3.0)


class TalentShape(str, enum.Enum):
    NORMAL = "normal"
    LOGNORMAL = "lognormal"
    UNIFORM = "uniform"

    @classmethod
    def parse(cls, value: "str | TalentShape") -> "TalentShape":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            names = ", ".join(s.value for s in cls)
            raise ValueError(f"unknown talent shape {value!r}; expected one of: {names}") from None


def shape_raw_moments(shape: TalentShape) -> tuple[float, float]:
    """Mean and standard deviation of the raw draw before standardization.

    Lognormal is exp(N(0, 1)); uniform is U(0, 1).
    """
    shape = TalentShape.parse(shape)
    if shape is TalentShape.NORMAL:
        return 0.0, 1.0
    if shape is TalentShape.LOGNORMAL:
        e = math.e
        return math.exp(0.5), math.sqrt((e - 1.0) * e)
    return 0.5, 1.0 / math.sqrt(12.0)


def sample_standardized(shape: TalentShape, count: int, rng: np.random.Generator) -> np.ndarray:
    """Draw ``count`` talents with population mean 0 and variance 1."""
    shape = TalentShape.parse(shape)
    if shape is TalentShape.NORMAL:
        return rng.standard_normal(count)
    if shape is TalentShape.LOGNORMAL:
        mean, sd = shape_raw_moments(shape)
        return (np.exp(rng.standard_normal(count)) - mean) / sd
    # midpoints of a 2**-52 grid keep u strictly inside (0, 1)
    u = (rng.integers(0, 1 << 52, count, dtype=np.int64) + 0.5) * 2.0**-52
    mean, sd = shape_raw_moments(shape)
    return (u - mean) / sd


def transform_standard_normal(shape: TalentShape, z: np.ndarray) -> np.ndarray:
    """Strictly increasing map sending N(0, 1) onto the standardized ``shape``.

    Rank order is preserved, so clustered talents keep their team structure
    while taking the target marginal distribution.
    """
    shape = TalentShape.parse(shape)
    z = np.asarray(z, dtype=np.float64)
    if shape is TalentShape.NORMAL:
        return z.copy()
    mean, sd = shape_raw_moments(shape)
    if shape is TalentShape.LOGNORMAL:
        return (np.exp(z) - mean) / sd
    return (ndtr(z) - mean) / sd
