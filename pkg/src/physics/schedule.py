"""
Pulse schedules: ordered field cycles, each closing phi by 2 pi.
"""
from __future__ import annotations

from typing import List, Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

TWO_PI = 2 * np.pi


class PulseSegment(BaseModel):
    """One cycle of the rotating field."""

    model_config = ConfigDict(frozen=True)

    duration: float = Field(gt=0)
    field_sign: Literal[1, -1] = 1
    profile: Literal["linear", "smoothstep", "custom"] = "linear"
    sense: Literal[1, -1] = 1
    samples: Optional[List[float]] = None  # custom: phi - phi0 on a uniform grid over the segment
    tilt_chi: Optional[float] = None  # None: use the drive's chi

    @model_validator(mode="after")
    def _check_closure(self) -> "PulseSegment":
        if self.profile == "custom":
            if not self.samples or len(self.samples) < 2:
                raise ValueError("custom profile needs at least two phi samples")
            if abs(self.samples[0]) > 1e-12 or abs(self.samples[-1] - self.sense * TWO_PI) > 1e-12:
                raise ValueError("custom profile must start at 0 and close at 2*pi*sense")
        elif self.samples is not None:
            raise ValueError(f"samples only apply to the custom profile, not {self.profile!r}")
        return self

    @classmethod
    def linear_cycle(cls, omega: float, field_sign: int = 1, tilt_chi: Optional[float] = None) -> "PulseSegment":
        """phi = phi0 + omega t over one period 2 pi / |omega|."""
        if omega == 0:
            raise ValueError("omega must be nonzero for a closed cycle")
        return cls(duration=TWO_PI / abs(omega), field_sign=field_sign, profile="linear",
                   sense=1 if omega > 0 else -1, tilt_chi=tilt_chi)

    @property
    def omega(self) -> float:
        """Mean rotation rate, signed by the sense."""
        return self.sense * TWO_PI / self.duration

    def phi_offset(self, t) -> np.ndarray:
        """phi(t) - phi0 for t in [0, duration]."""
        u = np.clip(np.asarray(t, dtype=float) / self.duration, 0.0, 1.0)
        if self.profile == "linear":
            return self.sense * TWO_PI * u
        if self.profile == "smoothstep":
            return self.sense * TWO_PI * (3 * u ** 2 - 2 * u ** 3)
        grid = np.linspace(0.0, 1.0, len(self.samples))
        return np.interp(u, grid, np.asarray(self.samples, dtype=float))

    def with_duration(self, duration: float) -> "PulseSegment":
        return self.model_copy(update={"duration": duration})


class PulseSchedule(BaseModel):
    """Ordered list of cycles, e.g. a two-cycle echo."""

    model_config = ConfigDict(frozen=True)

    segments: List[PulseSegment] = Field(min_length=1)

    @classmethod
    def single_cycle(cls, duration: float, profile: str = "linear", sense: int = 1) -> "PulseSchedule":
        return cls(segments=[PulseSegment(duration=duration, profile=profile, sense=sense)])

    @classmethod
    def echo(cls, duration: float, profile: str = "smoothstep", sense: int = 1) -> "PulseSchedule":
        """Two cycles, the second with B(0) reversed."""
        return cls(segments=[
            PulseSegment(duration=duration, field_sign=1, profile=profile, sense=sense),
            PulseSegment(duration=duration, field_sign=-1, profile=profile, sense=sense),
        ])

    @property
    def total_duration(self) -> float:
        return float(sum(s.duration for s in self.segments))

    def with_duration(self, duration: float) -> "PulseSchedule":
        """Same shape with every cycle lasting duration."""
        return PulseSchedule(segments=[s.with_duration(duration) for s in self.segments])
