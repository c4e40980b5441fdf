"""Synthetic spectra: uniform bands separated by voids, and the 46-value benchmark.

The benchmark spectrum drives the package's headline experiment: two bands of
equally spaced eigenvalues (spacing 0.05) around a wide central void, three
isolated interior eigenvalues in the void (ranks 23-25, the shifted-bound
targets), an isolated top eigenvalue, and a near-degenerate bottom pair.
Only the bottom pair (-13.1, -13.2), the 0.05 spacing, the dimension 46 and
the shift 0.45 are pinned; the remaining constants are a reconstruction chosen
once so that the qualitative claims hold with real margin, and nothing
downstream asserts their exact values.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .operators import OverlapProfile, Spectrum

__all__ = [
    "BandedSpectrumSpec",
    "Figure1SpectrumSpec",
    "banded_spectrum",
    "figure1_spectrum",
    "equal_overlap_start",
    "FIGURE1_SHIFT",
    "FIGURE1_SPEC",
]

FIGURE1_SHIFT = 0.45


@dataclass(frozen=True)
class BandedSpectrumSpec:
    """k uniform bands of total N eigenvalues, consecutive bands a void apart.

    Intra-band spacing delta = (width - (k-1)*void) / total; bands are anchored
    at the top of the range and filled downward.
    """

    bands: int
    total: int
    void: float
    range: tuple[float, float] = (0.0, 1.0)
    allow_degenerate: bool = False

    def __post_init__(self):
        if self.bands < 1 or self.total < 1:
            raise ValueError("bands and total must be positive")
        if self.total % self.bands != 0:
            raise ValueError(f"total {self.total} not divisible by bands {self.bands}")
        if self.void < 0:
            raise ValueError("void must be non-negative")
        lo, hi = self.range
        if not hi > lo:
            raise ValueError("range must have positive width")
        if (self.bands - 1) * self.void > (hi - lo):
            raise ValueError("voids exceed the range width")

    @property
    def width(self) -> float:
        return self.range[1] - self.range[0]

    @property
    def delta(self) -> float:
        return (self.width - (self.bands - 1) * self.void) / self.total


def banded_spectrum(spec: BandedSpectrumSpec) -> Spectrum:
    """Lay out the banded spectrum, descending from the top of the range."""
    delta = spec.delta
    if delta == 0.0 and not spec.allow_degenerate:
        raise ValueError(
            "voids fill the whole range (delta = 0); set allow_degenerate for "
            "bands collapsed to multiplicity total/bands"
        )
    per_band = spec.total // spec.bands
    idx = np.arange(spec.total)
    band = idx // per_band
    values = spec.range[1] - band * spec.void - idx * delta
    return Spectrum(values)


@dataclass(frozen=True)
class Figure1SpectrumSpec:
    """Constants of the 46-value benchmark spectrum (a flagged reconstruction)."""

    top_isolated: float = 12.5
    upper_band_start: float = 11.0
    upper_band_count: int = 21
    interior_high: float = 9.0
    shift: float = FIGURE1_SHIFT
    pair_half_gap: float = 0.25
    lower_band_start: float = -10.0
    lower_band_count: int = 19
    spacing: float = 0.05
    bottom_pair: tuple[float, float] = (-13.1, -13.2)

    def build(self) -> Spectrum:
        upper = self.upper_band_start - self.spacing * np.arange(self.upper_band_count)
        lower = self.lower_band_start - self.spacing * np.arange(self.lower_band_count)
        # the equidistant pair is constructed as shift +- half_gap so the two
        # distances to the shift agree to the last bit that addition allows
        values = np.concatenate(
            [
                [self.top_isolated],
                upper,
                [self.interior_high],
                [self.shift + self.pair_half_gap, self.shift - self.pair_half_gap],
                lower,
                list(self.bottom_pair),
            ]
        )
        return Spectrum(values)


FIGURE1_SPEC = Figure1SpectrumSpec()


def figure1_spectrum() -> Spectrum:
    """The fixed 46-value benchmark spectrum (constant; bit-identical per call)."""
    return FIGURE1_SPEC.build()


def equal_overlap_start(n: int) -> OverlapProfile:
    """Start vector with exactly equal overlap 1/sqrt(N) on every eigenvector."""
    if n < 1:
        raise ValueError("dimension must be positive")
    return OverlapProfile(np.full(n, 1.0 / np.sqrt(n)))
