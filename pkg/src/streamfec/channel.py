"""Adversarial sliding-window channel models and their pattern spaces.

Erasure patterns are 0/1 flag sequences over a finite horizon; windows
that overhang the horizon are zero-padded, matching a semi-infinite
channel observed over a finite prefix.  Four models are supported:

* (a, w)-SW: at most a erasures in every window of w slots.
* (z, b, w)-MBSW: every window of w slots is coverable by at most z
  disjoint intervals of length <= b ("bursts"; a burst may contain
  unerased slots).
* the *_ERR variants, where the same window constraints apply to the
  times of nonzero packet errors instead of erasures.

The burst-cover decision uses greedy left-anchored intervals, which is
optimal for covering points on a line.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


@dataclass(frozen=True)
class ErasurePattern:
    """Erasure flags e_0 .. e_{T-1}; flag(t) is 0 beyond the horizon."""

    horizon: int
    flags: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.flags) != self.horizon:
            raise ValueError("flag sequence length must equal the horizon")
        if any(f not in (0, 1) for f in self.flags):
            raise ValueError("flags must be 0 or 1")

    @classmethod
    def from_support(cls, horizon: int, support: Iterable[int]) -> "ErasurePattern":
        s = set(support)
        if s and (min(s) < 0 or max(s) >= horizon):
            raise ValueError("support outside horizon")
        return cls(horizon, tuple(1 if t in s else 0 for t in range(horizon)))

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(t for t, f in enumerate(self.flags) if f)

    def flag(self, t: int) -> int:
        if 0 <= t < self.horizon:
            return self.flags[t]
        return 0

    def to_csv(self) -> str:
        return ",".join(str(f) for f in self.flags)

    @classmethod
    def from_csv(cls, text: str) -> "ErasurePattern":
        parts = [p for p in text.replace("\n", ",").split(",") if p.strip() != ""]
        flags = tuple(int(p) for p in parts)
        return cls(len(flags), flags)


@dataclass(frozen=True)
class ErrorPattern:
    """Additive packet errors e(0) .. e(T-1), each a length-n vector of
    field values; the zero vector means no error at that time."""

    horizon: int
    packet_size: int
    packets: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if len(self.packets) != self.horizon:
            raise ValueError("packet sequence length must equal the horizon")
        if any(len(p) != self.packet_size for p in self.packets):
            raise ValueError("every packet must have the declared size")

    @classmethod
    def from_entries(cls, horizon: int, packet_size: int, entries: dict[int, Sequence[int]]) -> "ErrorPattern":
        packets = []
        for t in range(horizon):
            if t in entries:
                packets.append(tuple(entries[t]))
            else:
                packets.append((0,) * packet_size)
        return cls(horizon, packet_size, tuple(packets))

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(t for t, p in enumerate(self.packets) if any(p))

    def packet(self, t: int) -> tuple[int, ...]:
        if 0 <= t < self.horizon:
            return self.packets[t]
        return (0,) * self.packet_size

    def to_json(self) -> str:
        items = [{"t": t, "packet": list(p)} for t, p in enumerate(self.packets) if any(p)]
        return json.dumps({"horizon": self.horizon, "packet_size": self.packet_size, "errors": items})

    @classmethod
    def from_json(cls, text: str) -> "ErrorPattern":
        d = json.loads(text)
        entries = {item["t"]: item["packet"] for item in d["errors"]}
        return cls.from_entries(d["horizon"], d["packet_size"], entries)


_KINDS = ("sw", "mbsw", "sw_err", "mbsw_err")


@dataclass(frozen=True)
class ChannelModel:
    """Parameter bundle for one of the four window-constrained models.

    For sw kinds `a` is the per-window erasure/error budget; for mbsw
    kinds `z` and `b` bound the bursts.  Factories normalize b == 1
    multi-burst models to the corresponding random model.
    """

    kind: str
    w: int
    a: int = 0
    z: int = 0
    b: int = 0

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise ValueError(f"unknown channel kind {self.kind!r}")
        if self.w < 1:
            raise ValueError("window length must be positive")
        if self.kind == "sw" and not 0 < self.a < self.w:
            raise ValueError("sw model needs 0 < a < w")
        if self.kind == "sw_err" and not 0 < 2 * self.a < self.w:
            raise ValueError("sw_err model needs 0 < 2a < w")
        if self.kind in ("mbsw", "mbsw_err"):
            if self.z < 1 or self.b < 2:
                raise ValueError("mbsw models need z >= 1 and b >= 2 (b = 1 normalizes to sw)")
            if self.kind == "mbsw" and self.z * self.b >= self.w:
                raise ValueError("mbsw model needs z*b < w")
            if self.kind == "mbsw_err" and 2 * self.z * self.b >= self.w:
                raise ValueError("mbsw_err model needs 2*z*b < w")

    @classmethod
    def sw(cls, a: int, w: int) -> "ChannelModel":
        return cls(kind="sw", w=w, a=a)

    @classmethod
    def mbsw(cls, z: int, b: int, w: int) -> "ChannelModel":
        if b == 1:
            return cls.sw(z, w)
        return cls(kind="mbsw", w=w, z=z, b=b)

    @classmethod
    def sw_err(cls, a: int, w: int) -> "ChannelModel":
        return cls(kind="sw_err", w=w, a=a)

    @classmethod
    def mbsw_err(cls, z: int, b: int, w: int) -> "ChannelModel":
        if b == 1:
            return cls.sw_err(z, w)
        return cls(kind="mbsw_err", w=w, z=z, b=b)

    @property
    def is_error_model(self) -> bool:
        return self.kind.endswith("_err")

    @property
    def erasure_equivalent(self) -> "ChannelModel":
        """The erasure model with the doubled budget that an error model
        reduces to; erasure models return themselves."""
        if self.kind == "sw_err":
            return ChannelModel.sw(2 * self.a, self.w)
        if self.kind == "mbsw_err":
            return ChannelModel.mbsw(2 * self.z, self.b, self.w)
        return self

    def admits(self, pattern: ErasurePattern) -> bool:
        """Admissibility of an erasure pattern (or of the support pattern
        of an error pattern, for *_err kinds)."""
        if self.kind in ("sw", "sw_err"):
            return is_admissible_sw(pattern, self.a, self.w)
        return is_admissible_mbsw(pattern, self.z, self.b, self.w)

    def admits_support(self, support: Iterable[int], horizon: int) -> bool:
        return self.admits(ErasurePattern.from_support(horizon, support))

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "w": self.w}
        if self.kind in ("sw", "sw_err"):
            d["a"] = self.a
        else:
            d["z"] = self.z
            d["b"] = self.b
        return d


def min_burst_cover(support: Sequence[int], b: int) -> int:
    """Fewest disjoint length-<=b intervals covering the given points,
    by the left-anchored greedy rule."""
    count = 0
    cur_end = None
    for p in sorted(support):
        if cur_end is None or p > cur_end:
            count += 1
            cur_end = p + b - 1
    return count


def is_admissible_sw(pattern: ErasurePattern, a: int, w: int) -> bool:
    """Every length-w window (zero-padded past the horizon) holds <= a
    erasures."""
    if w < 1:
        raise ValueError("window length must be positive")
    flags = pattern.flags
    t_max = len(flags)
    weight = sum(flags[:w])
    if weight > a:
        return False
    for start in range(1, t_max):
        weight -= flags[start - 1]
        if start + w - 1 < t_max:
            weight += flags[start + w - 1]
        if weight > a:
            return False
    return True


def is_admissible_mbsw(pattern: ErasurePattern, z: int, b: int, w: int) -> bool:
    """Every length-w window's erasures are coverable by <= z disjoint
    intervals of length <= b."""
    if w < 1:
        raise ValueError("window length must be positive")
    support = pattern.support
    t_max = pattern.horizon
    for start in range(t_max):
        in_window = [t for t in support if start <= t <= start + w - 1]
        if min_burst_cover(in_window, b) > z:
            return False
    return True


def _window_ok(model: ChannelModel, recent: Sequence[int]) -> bool:
    """Constraint check for the trailing (partial) window during search."""
    if model.kind in ("sw", "sw_err"):
        return sum(recent) <= model.a
    support = [t for t, f in enumerate(recent) if f]
    return min_burst_cover(support, model.b) <= model.z


def enumerate_admissible(
    model: ChannelModel, horizon: int, support_bound: int | None = None
) -> Iterator[ErasurePattern]:
    """All admissible patterns of the given horizon, each exactly once,
    in lexicographic order of their flag sequences (0 before 1).

    Depth-first with window pruning: a prefix whose trailing window
    already violates the model cannot be extended into an admissible
    pattern, because later flags only add erasures.  `support_bound`
    restricts the support to [0, support_bound].
    """
    w = model.w
    flags: list[int] = []

    def rec() -> Iterator[ErasurePattern]:
        t = len(flags)
        if t == horizon:
            yield ErasurePattern(horizon, tuple(flags))
            return
        choices = (0, 1)
        if support_bound is not None and t > support_bound:
            choices = (0,)
        for f in choices:
            flags.append(f)
            if f == 0 or _window_ok(model, flags[max(0, t - w + 1):]):
                yield from rec()
            flags.pop()

    yield from rec()


def burst_supports(n: int, z: int, b: int) -> list[tuple[int, ...]]:
    """Every subset of [0, n-1] coverable by <= z disjoint intervals of
    length <= b, as sorted tuples in lexicographic order.  This is the
    per-codeword erasure family for a length-n code facing (z,b)-bursts.
    """
    out = []
    for mask in range(1 << n):
        support = tuple(t for t in range(n) if (mask >> t) & 1)
        if len(support) <= z * b and min_burst_cover(support, b) <= z:
            out.append(support)
    out.sort()
    return out


def error_to_erasure(e: ErrorPattern, e_tilde: ErrorPattern) -> ErasurePattern:
    """The difference-support pattern: slot t is erased iff the two error
    packets at t differ.  If both inputs are admissible in an (a, w)
    error model, the result is admissible in the (2a, w) erasure model.
    """
    if e.horizon != e_tilde.horizon or e.packet_size != e_tilde.packet_size:
        raise ValueError("error patterns must share horizon and packet size")
    flags = tuple(
        1 if e.packets[t] != e_tilde.packets[t] else 0 for t in range(e.horizon)
    )
    return ErasurePattern(e.horizon, flags)


def erasure_to_error_split(pattern: ErasurePattern, packet_size: int) -> tuple[ErrorPattern, ErrorPattern]:
    """Split an erasure pattern into two error patterns whose difference
    support reproduces it: even-indexed support elements go to the first
    pattern, odd-indexed to the second, each as a unit packet on
    coordinate 0.  If the input is admissible in a (2a, w) erasure
    model, both halves are admissible in the (a, w) error model."""
    support = pattern.support
    unit = (1,) + (0,) * (packet_size - 1)
    first = {t: unit for idx, t in enumerate(support) if idx % 2 == 0}
    second = {t: unit for idx, t in enumerate(support) if idx % 2 == 1}
    return (
        ErrorPattern.from_entries(pattern.horizon, packet_size, first),
        ErrorPattern.from_entries(pattern.horizon, packet_size, second),
    )


def periodic_mbsw_pattern(z: int, b: int, w: int, periods: int) -> ErasurePattern:
    """The rate-bounding periodic pattern: each period of length w-1+b
    starts with z*b erased slots followed by w-1-(z-1)*b clear slots.

    Admissible in the (z, b, w) multi-burst model whenever w > z*b; the
    erased fraction z*b / (w-1+b) is exactly one minus the multi-burst
    rate bound, which is what lets this pattern pin the bound down.
    """
    if w <= z * b:
        raise ValueError("need w > z*b")
    if periods < 1:
        raise ValueError("need at least one period")
    period = w - 1 + b
    flags = []
    for _ in range(periods):
        flags.extend([1] * (z * b))
        flags.extend([0] * (period - z * b))
    return ErasurePattern(period * periods, tuple(flags))
