"""Linear one-parameter families of two-level Hamiltonians and the figure presets."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction

import numpy as np

from .core import TwoLevelHamiltonian

Pair = tuple[float, float]
ComplexPair = tuple[complex, complex]


class UnknownPreset(KeyError):
    pass


def _dec(x: float) -> Fraction:
    return Fraction(repr(float(x)))


def _linear(c0: float, c1: float, a: float) -> float:
    # c0 + c1*a with a single rounding, reading every input as the decimal it prints as
    if c1 == 0.0:
        return float(c0)
    return float(_dec(c0) + _dec(c1) * _dec(a))


@dataclass(frozen=True)
class SweepScenario:
    """Every parameter is ``c0 + c1 * a``; ``omega`` coefficients are complex."""

    name: str
    e1: Pair
    e2: Pair
    gamma1: Pair
    gamma2: Pair
    omega: ComplexPair
    a_min: float = 0.0
    a_max: float = 1.0
    n_steps: int = 2001

    def __post_init__(self) -> None:
        for key in ("e1", "e2", "gamma1", "gamma2"):
            c0, c1 = getattr(self, key)
            pair = (float(c0), float(c1))
            if not all(math.isfinite(c) for c in pair):
                raise ValueError(f"{key} coefficients must be finite")
            object.__setattr__(self, key, pair)
        w0, w1 = (complex(w) for w in self.omega)
        if not all(math.isfinite(x) for x in (w0.real, w0.imag, w1.real, w1.imag)):
            raise ValueError("omega coefficients must be finite")
        object.__setattr__(self, "omega", (w0, w1))
        object.__setattr__(self, "a_min", float(self.a_min))
        object.__setattr__(self, "a_max", float(self.a_max))
        if not (math.isfinite(self.a_min) and math.isfinite(self.a_max)):
            raise ValueError("sweep range must be finite")
        if not self.a_min < self.a_max:
            raise ValueError(f"a_min ({self.a_min}) must be below a_max ({self.a_max})")
        if int(self.n_steps) != self.n_steps or self.n_steps < 2:
            raise ValueError(f"n_steps must be an integer >= 2, got {self.n_steps}")
        object.__setattr__(self, "n_steps", int(self.n_steps))

    def e1_at(self, a: float) -> float:
        return _linear(*self.e1, a)

    def e2_at(self, a: float) -> float:
        return _linear(*self.e2, a)

    def gamma1_at(self, a: float) -> float:
        return _linear(*self.gamma1, a)

    def gamma2_at(self, a: float) -> float:
        return _linear(*self.gamma2, a)

    def omega_at(self, a: float) -> complex:
        w0, w1 = self.omega
        return complex(_linear(w0.real, w1.real, a), _linear(w0.imag, w1.imag, a))

    def hamiltonian(self, a: float) -> TwoLevelHamiltonian:
        return TwoLevelHamiltonian(
            self.e1_at(a), self.e2_at(a), self.gamma1_at(a), self.gamma2_at(a), self.omega_at(a)
        )

    def grid(self) -> np.ndarray:
        return np.linspace(self.a_min, self.a_max, self.n_steps)

    @property
    def step(self) -> float:
        return (self.a_max - self.a_min) / (self.n_steps - 1)

    def with_range(self, a_min=None, a_max=None, n_steps=None) -> "SweepScenario":
        return replace(
            self,
            a_min=self.a_min if a_min is None else a_min,
            a_max=self.a_max if a_max is None else a_max,
            n_steps=self.n_steps if n_steps is None else n_steps,
        )

    def swapped(self) -> "SweepScenario":
        """The same family with the two unperturbed states exchanged."""
        return replace(self, e1=self.e2, e2=self.e1, gamma1=self.gamma2, gamma2=self.gamma1)


# Grid windows enclose every exceptional point with margin and put the
# exact ones on grid nodes.
_PRESETS = {
    "fig1l": dict(
        e1=(1.0, -1.0), e2=(0.0, 1.0), gamma1=(-1.0, 0.0), gamma2=(-1.0, 0.0),
        omega=(0.1j, 0j), a_min=0.0, a_max=1.0,
    ),
    "fig1r": dict(
        e1=(1.0, -1.0), e2=(0.0, 1.0), gamma1=(-0.1, 0.0), gamma2=(-0.2, 0.0),
        omega=(0.025 + 0.075j, 0j), a_min=0.0, a_max=1.0,
    ),
    "fig2l": dict(
        e1=(0.5, 0.0), e2=(0.5, 0.0), gamma1=(0.0, -0.05), gamma2=(0.0, 0.05),
        omega=(0.05 + 0j, 0j), a_min=-4.0, a_max=4.0,
    ),
    "fig2r": dict(
        e1=(0.5, 0.0), e2=(0.475, 0.0), gamma1=(0.0, -0.05), gamma2=(0.0, 0.05),
        omega=(0.0375 + 0.0125j, 0j), a_min=-4.0, a_max=4.0,
    ),
    "fig3l": dict(
        e1=(0.5, 0.0), e2=(0.4, 0.0), gamma1=(-0.05, 0.0), gamma2=(-0.05, 0.0),
        omega=(0j, 0.05j), a_min=0.0, a_max=2.0,
    ),
    "fig3r": dict(
        e1=(0.5, 0.0), e2=(0.5, 0.0), gamma1=(-0.5, 0.0), gamma2=(-0.4, 0.0),
        omega=(0j, 0.05 + 0j), a_min=0.0, a_max=2.0,
    ),
}

PRESET_DESCRIPTIONS = {
    "fig1l": "e1=1-a, e2=a, gamma1/2=gamma2/2=-0.5, omega=0.1i",
    "fig1r": "e1=1-a, e2=a, gamma1/2=-0.05, gamma2/2=-0.1, omega=0.1(1/4+3i/4)",
    "fig2l": "e1=e2=0.5, gamma1=-0.05a, gamma2=0.05a, omega=0.05",
    "fig2r": "e1=0.5, e2=0.475, gamma1=-0.05a, gamma2=0.05a, omega=0.05(3/4+i/4)",
    "fig3l": "e1=0.5, e2=0.4, gamma1=gamma2=-0.05, omega=0.05ai",
    "fig3r": "e1=e2=0.5, gamma1=-0.5, gamma2=-0.4, omega=0.05a",
}

PRESET_NAMES = tuple(_PRESETS)


def preset(name: str, n_steps: int = 2001) -> SweepScenario:
    try:
        params = _PRESETS[name]
    except KeyError:
        raise UnknownPreset(f"unknown preset {name!r}; choose from {', '.join(PRESET_NAMES)}") from None
    return SweepScenario(name=name, n_steps=n_steps, **params)
