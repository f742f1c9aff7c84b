"""Closed-form rate bounds and feasibility predicates, as exact
rationals.  Out-of-regime queries raise rather than extrapolate: every
formula is gated by its channel model's standing assumptions."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction


@dataclass(frozen=True, eq=False)
class RateBound:
    """An exact rational rate with the parameters it came from.

    Comparisons are exact rational comparisons; 3/6 == 1/2 regardless of
    normalization.
    """

    numerator: int
    denominator: int
    context: dict = dc_field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.denominator <= 0:
            raise ValueError("denominator must be positive")
        if not 0 <= self.numerator <= self.denominator:
            raise ValueError("rate must lie in [0, 1]")

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, RateBound):
            return self.numerator * other.denominator == other.numerator * self.denominator
        if isinstance(other, (Fraction, int)):
            return self.fraction == other
        return NotImplemented

    def __lt__(self, other: "RateBound | Fraction | int") -> bool:
        other_frac = other.fraction if isinstance(other, RateBound) else Fraction(other)
        return self.fraction < other_frac

    def __le__(self, other: "RateBound | Fraction | int") -> bool:
        other_frac = other.fraction if isinstance(other, RateBound) else Fraction(other)
        return self.fraction <= other_frac

    def __hash__(self) -> int:
        return hash(self.fraction)

    def __str__(self) -> str:
        return f"{self.numerator}/{self.denominator}"


def rate_sw_erasure(a: int, w: int) -> RateBound:
    """Optimal rate (w-a)/w of a stream code over the (a, w) sliding-window
    erasure channel."""
    if not 0 < a < w:
        raise ValueError(f"need 0 < a < w, got a={a}, w={w}")
    return RateBound(w - a, w, {"model": "sw", "a": a, "w": w})


def rate_sw_error(a: int, w: int) -> RateBound:
    """Optimal rate (w-2a)/w over the (a, w) sliding-window error channel,
    equal to the erasure-optimal rate at budget 2a."""
    if not 0 < 2 * a < w:
        raise ValueError(f"need 0 < 2a < w, got a={a}, w={w}")
    return RateBound(w - 2 * a, w, {"model": "sw_err", "a": a, "w": w})


def rate_mbsw_bound(z: int, b: int, w: int) -> RateBound:
    """Rate upper bound (w-1-(z-1)b) / (w-1+b) for the (z, b, w)
    multi-burst erasure channel."""
    if z < 1 or b < 1:
        raise ValueError("need z >= 1 and b >= 1")
    if w <= z * b:
        raise ValueError(f"need w > z*b, got w={w}, z*b={z * b}")
    return RateBound(w - 1 - (z - 1) * b, w - 1 + b, {"model": "mbsw", "z": z, "b": b, "w": w})


def rate_mbsw_error_bound(z: int, b: int, w: int) -> RateBound:
    """Rate upper bound (w-1-(2z-1)b) / (w-1+b) for the (z, b, w)
    multi-burst error channel, equal to the erasure bound at 2z bursts."""
    if z < 1 or b < 1:
        raise ValueError("need z >= 1 and b >= 1")
    if w <= 2 * z * b:
        raise ValueError(f"need w > 2*z*b, got w={w}, 2*z*b={2 * z * b}")
    return RateBound(
        w - 1 - (2 * z - 1) * b, w - 1 + b, {"model": "mbsw_err", "z": z, "b": b, "w": w}
    )


def de_achievable(z: int, b: int, w: int) -> bool:
    """Whether a diagonally embedded code can meet the multi-burst rate
    bound at delay w-1: true iff b divides w-1.

    The divisibility question only bites for z > 1 and b > 1; the
    single-burst and random-erasure cases are achievable for all valid
    parameters and return True.
    """
    if z < 1 or b < 1:
        raise ValueError("need z >= 1 and b >= 1")
    if w <= z * b:
        raise ValueError(f"need w > z*b, got w={w}, z*b={z * b}")
    if z == 1 or b == 1:
        return True
    return (w - 1) % b == 0


def causal_code_exists(k: int, z: int, b: int, tau: int) -> bool:
    """Existence of an [k+zb, k] causal code that is delay-tau decodable
    for every (z, b)-burst, in the regime k >= b.

    At the minimum delay tau* = k + (z-1)b this requires b | tau*
    (equivalently b | k); below tau* no code exists; above tau* one
    always does.
    """
    if k < 1 or z < 1 or b < 1:
        raise ValueError("k, z, b must be positive")
    if k < b:
        raise ValueError(f"regime k >= b required, got k={k}, b={b}")
    tau_star = max(k + (z - 1) * b, z * b)
    if tau < tau_star:
        return False
    if tau == tau_star:
        return tau_star % b == 0
    return True
