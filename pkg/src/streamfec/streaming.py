"""Diagonal embedding of block codes into packet streams, and
delay-constrained decoding of erased or corrupted packets.

A diagonally embedded [n, k] code places code symbol j of the codeword
starting at time d into packet d + j, so each packet erasure costs every
affected codeword exactly one symbol.  The encoder is causal and message
packets before time 0 are zero by convention.

The erasure decoder recovers each message coordinate from the parity
equations of its own diagonal codeword, using only packets received by
the coordinate's deadline; packets recovered earlier carry no extra
information for later ones beyond what the received symbols already
determine, so per-diagonal solving realizes sequential (peeling)
recovery exactly.

The error decoder is the reference exhaustive one: to decode u(t) it
assumes all earlier messages are known (sequential recovery), enumerates
every candidate set S of error times inside [t, t+tau] that is jointly
admissible with the already-inferred past errors, treats S as erased,
and keeps the candidates whose remaining window symbols are consistent
with some message continuation.  All consistent candidates must agree on
u(t); disagreement (or an underdetermined u(t)) is reported as an
ambiguity, never silently resolved.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .block_code import SystematicCode
from .channel import ChannelModel, ErasurePattern, ErrorPattern, min_burst_cover


@dataclass(frozen=True)
class PacketStream:
    """Encoded stream: message packets for t in [0, T-1] plus the n-1
    trailing coded packets (zero-padded messages) that complete the last
    diagonals, so every in-horizon message has parities to decode from."""

    code: SystematicCode
    message_horizon: int
    messages: tuple[tuple[int, ...], ...]
    packets: tuple[tuple[int, ...], ...]

    @property
    def packet_horizon(self) -> int:
        return len(self.packets)


@dataclass(frozen=True)
class PacketStatus:
    t: int
    recovered: bool
    time: int | None
    deadline: int


@dataclass(frozen=True)
class DecodeReport:
    """Per-packet recovery accounting for one decoded stream."""

    params: dict
    per_packet: tuple[PacketStatus, ...]
    success: bool
    failures: tuple[int, ...]
    pattern_admissible: bool
    ambiguities: tuple[int, ...]
    messages: tuple[tuple[int, ...] | None, ...] = dc_field(compare=False, default=())

    def to_json(self) -> str:
        obj = {
            "params": self.params,
            "per_packet": [
                {"t": s.t, "recovered": s.recovered, "time": s.time, "deadline": s.deadline}
                for s in self.per_packet
            ],
            "success": self.success,
            "failures": list(self.failures),
            "pattern_admissible": self.pattern_admissible,
            "ambiguities": list(self.ambiguities),
        }
        return json.dumps(obj, indent=2)


def de_encode(code: SystematicCode, messages: Sequence[Sequence[int]]) -> PacketStream:
    """Diagonal embedding: packet row j at time t carries symbol j of the
    codeword whose message symbols are u_0(t-j), u_1(t-j+1), ..."""
    f = code.field
    n, k = code.n, code.k
    msgs = tuple(tuple(f.check(v) for v in u) for u in messages)
    for u in msgs:
        if len(u) != k:
            raise ValueError(f"every message packet must have {k} symbols")
    t_msgs = len(msgs)
    gcols = code.generator.columns()
    mul, add = f.mul, f.add

    def msg(tm: int, i: int) -> int:
        if 0 <= tm < t_msgs:
            return msgs[tm][i]
        return 0

    packets = []
    for t in range(t_msgs + n - 1):
        pkt = []
        for j in range(n):
            d = t - j
            col = gcols[j]
            acc = 0
            for i in range(k):
                ui = msg(d + i, i)
                if ui:
                    acc = add(acc, mul(col[i], ui))
            pkt.append(acc)
        packets.append(tuple(pkt))
    return PacketStream(code=code, message_horizon=t_msgs, messages=msgs, packets=tuple(packets))


class _IncrementalSolver:
    """Reduced-row-echelon accumulator for a small linear system over a
    finite field, supporting per-unknown resolution queries."""

    __slots__ = ("field", "nu", "rows", "rhs", "pivots", "consistent")

    def __init__(self, field, num_unknowns: int):
        self.field = field
        self.nu = num_unknowns
        self.rows: list[list[int]] = []
        self.rhs: list[int] = []
        self.pivots: list[int] = []
        self.consistent = True

    def add_equation(self, coeffs: Sequence[int], rhs: int) -> None:
        f = self.field
        sub, mul = f.sub, f.mul
        row = list(coeffs)
        for r, c in enumerate(self.pivots):
            fac = row[c]
            if fac:
                prow = self.rows[r]
                row = [sub(a, mul(fac, b)) for a, b in zip(row, prow)]
                rhs = sub(rhs, mul(fac, self.rhs[r]))
        pc = -1
        for j, v in enumerate(row):
            if v:
                pc = j
                break
        if pc < 0:
            if rhs:
                self.consistent = False
            return
        inv = f.inv(row[pc])
        if inv != 1:
            row = [mul(inv, v) for v in row]
            rhs = mul(inv, rhs)
        for r in range(len(self.rows)):
            fac = self.rows[r][pc]
            if fac:
                prow = self.rows[r]
                self.rows[r] = [sub(a, mul(fac, b)) for a, b in zip(prow, row)]
                self.rhs[r] = sub(self.rhs[r], mul(fac, rhs))
        self.rows.append(row)
        self.rhs.append(rhs)
        self.pivots.append(pc)

    def resolve(self, i: int) -> int | None:
        """Value of unknown i when the accumulated equations pin it,
        else None."""
        f = self.field
        sub, mul = f.sub, f.mul
        res = [0] * self.nu
        res[i] = 1
        val = 0
        for r, c in enumerate(self.pivots):
            fac = res[c]
            if fac:
                prow = self.rows[r]
                res = [sub(a, mul(fac, b)) for a, b in zip(res, prow)]
                val = f.add(val, mul(fac, self.rhs[r]))
        if any(res):
            return None
        return val


def _unit_row(k: int, i: int) -> list[int]:
    row = [0] * k
    row[i] = 1
    return row


def decode_erasures(
    code: SystematicCode,
    tau: int,
    received: Sequence[tuple[int, ...] | None],
    message_horizon: int,
    pattern: ErasurePattern,
    model: ChannelModel | None = None,
) -> DecodeReport:
    """Recover erased message packets, each by its deadline t + tau.

    `received` covers packet times [0, message_horizon + n - 2] with None
    for erased packets.  Every message coordinate is solved within its
    own diagonal codeword from symbols received by the deadline; the
    report records the earliest packet time at which each message packet
    became fully determined.
    """
    n, k, f = code.n, code.k, code.field
    t_msgs = message_horizon
    if len(received) != t_msgs + n - 1:
        raise ValueError(f"received stream must cover {t_msgs + n - 1} packet times")
    gcols = code.generator.columns()
    last = len(received) - 1

    pin_time: dict[tuple[int, int], int] = {}
    pin_value: dict[tuple[int, int], int] = {}
    for d in range(-(k - 1), t_msgs):
        solver = _IncrementalSolver(f, k)
        pending = set()
        for i in range(k):
            if d + i < 0:
                solver.add_equation(_unit_row(k, i), 0)
            else:
                pending.add(i)
        for j in range(n):
            s = d + j
            if s < 0:
                continue
            if s > last:
                break
            pkt = received[s]
            if pkt is None:
                continue
            solver.add_equation(gcols[j], pkt[j])
            if pending:
                done = []
                for i in pending:
                    v = solver.resolve(i)
                    if v is not None:
                        pin_time[(d, i)] = s
                        pin_value[(d, i)] = v
                        done.append(i)
                pending.difference_update(done)
        assert solver.consistent, "received symbols of a valid stream cannot conflict"

    per_packet = []
    failures = []
    messages_out: list[tuple[int, ...] | None] = []
    for t in range(t_msgs):
        deadline = t + tau
        if received[t] is not None:
            status = PacketStatus(t, True, t, deadline)
            messages_out.append(tuple(received[t][:k]))
        else:
            times = []
            vals = []
            complete = True
            for i in range(k):
                key = (t - i, i)
                if key not in pin_time:
                    complete = False
                    break
                times.append(pin_time[key])
                vals.append(pin_value[key])
            if complete:
                status = PacketStatus(t, True, max(times), deadline)
                messages_out.append(tuple(vals))
            else:
                status = PacketStatus(t, False, None, deadline)
                messages_out.append(None)
        if not (status.recovered and status.time is not None and status.time <= deadline):
            failures.append(t)
        per_packet.append(status)

    admissible = model.admits(pattern) if model is not None else True
    params = _report_params(code, tau, model, t_msgs)
    return DecodeReport(
        params=params,
        per_packet=tuple(per_packet),
        success=not failures,
        failures=tuple(failures),
        pattern_admissible=admissible,
        ambiguities=(),
        messages=tuple(messages_out),
    )


def _standalone_window_subsets(model: ChannelModel, width: int) -> list[tuple[int, ...]]:
    """Offset tuples within a width-slot window that the model admits on
    their own, ordered by (size, lexicographic)."""
    out = []
    for mask in range(1 << width):
        offs = tuple(o for o in range(width) if (mask >> o) & 1)
        if model.kind in ("sw", "sw_err"):
            ok = all(
                sum(1 for o in offs if s <= o < s + model.w) <= model.a
                for s in range(-model.w + 1, width)
            )
        else:
            ok = all(
                min_burst_cover([o for o in offs if s <= o < s + model.w], model.b) <= model.z
                for s in range(-model.w + 1, width)
            )
        if ok:
            out.append(offs)
    out.sort(key=lambda s: (len(s), s))
    return out


def _union_admissible(
    model: ChannelModel, past: list[int], cand: tuple[int, ...], t: int, wend: int
) -> bool:
    """Admissibility of past + candidate over [0, wend]; only windows
    reaching position t or later need checking because the past alone is
    a subset of an admissible pattern."""
    w = model.w
    lo = max(0, t - w + 1)
    near_past = [p for p in past if p >= lo]
    if not near_past:
        return True
    pts = sorted(near_past + list(cand))
    for start in range(lo, wend + 1):
        window_pts = [p for p in pts if start <= p <= start + w - 1]
        if model.kind in ("sw", "sw_err"):
            if len(window_pts) > model.a:
                return False
        else:
            if min_burst_cover(window_pts, model.b) > model.z:
                return False
    return True


def decode_errors(
    code: SystematicCode,
    tau: int,
    received: Sequence[tuple[int, ...]],
    message_horizon: int,
    model: ChannelModel,
    pattern: ErrorPattern | None = None,
) -> DecodeReport:
    """Reference exhaustive decoder for additive packet errors.

    Decodes messages in time order.  For u(t), every candidate error
    support inside [t, t+tau] that is admissible together with the
    already-inferred past errors is tried: its positions are treated as
    erased and the remaining window symbols must be linearly consistent
    with some message continuation.  The unique agreed value is
    accepted; disagreement or an underdetermined u(t) becomes an
    ambiguity record and decoding halts there.
    """
    if not model.is_error_model:
        raise ValueError("decode_errors needs an error-channel model")
    n, k, f = code.n, code.k, code.field
    t_msgs = message_horizon
    if len(received) != t_msgs + n - 1:
        raise ValueError(f"received stream must cover {t_msgs + n - 1} packet times")
    gcols = code.generator.columns()
    last = len(received) - 1
    mul, add = f.mul, f.add

    rel_candidates = _standalone_window_subsets(model, tau + 1)

    known: list[tuple[int, ...]] = []
    past_support: list[int] = []
    per_packet: list[PacketStatus] = []
    failures: list[int] = []
    ambiguities: list[int] = []
    messages_out: list[tuple[int, ...] | None] = []
    halted = False

    def msg_value(tm: int, i: int) -> int:
        if tm < 0:
            return 0
        return known[tm][i]

    def encode_symbol(t: int, j: int) -> int:
        # Zero generator entries are skipped before touching the message
        # table: for systematic positions only u_j(t) itself contributes.
        d = t - j
        col = gcols[j]
        acc = 0
        for i in range(k):
            c = col[i]
            if c:
                acc = add(acc, mul(c, msg_value(d + i, i)))
        return acc

    def solve_diagonal(d: int, excluded: frozenset[int], t: int, wend: int) -> _IncrementalSolver | None:
        solver = _IncrementalSolver(f, k)
        for i in range(k):
            tm = d + i
            if tm < t:
                solver.add_equation(_unit_row(k, i), msg_value(tm, i))
        for j in range(n):
            s = d + j
            if s < t or s > wend or s in excluded:
                continue
            solver.add_equation(gcols[j], received[s][j])
            if not solver.consistent:
                return None
        return solver

    for t in range(t_msgs):
        deadline = t + tau
        if halted:
            per_packet.append(PacketStatus(t, False, None, deadline))
            failures.append(t)
            messages_out.append(None)
            continue
        wend = min(deadline, last)
        width = wend - t + 1
        diag_cache: dict[tuple[int, frozenset[int]], _IncrementalSolver | None] = {}
        consistent: list[tuple[tuple[int, ...], bool, tuple[int, ...] | None]] = []
        for offs in rel_candidates:
            cand = tuple(t + o for o in offs if o < width)
            if len(cand) != len(offs):
                continue
            if not _union_admissible(model, past_support, cand, t, wend):
                continue
            cand_set = frozenset(cand)
            ok = True
            values: list[int | None] = [None] * k
            for d in range(t - n + 1, wend + 1):
                excl = frozenset(s for s in cand_set if d <= s <= d + n - 1)
                key = (d, excl)
                if key in diag_cache:
                    solver = diag_cache[key]
                else:
                    solver = solve_diagonal(d, excl, t, wend)
                    diag_cache[key] = solver
                if solver is None:
                    ok = False
                    break
                i = t - d
                if 0 <= i < k:
                    values[i] = solver.resolve(i)
            if not ok:
                continue
            determined = all(v is not None for v in values)
            consistent.append((cand, determined, tuple(values) if determined else None))

        distinct = {val for (_, det, val) in consistent if det}
        has_undetermined = any(not det for (_, det, _) in consistent)
        if not consistent:
            # No admissible explanation: the actual pattern violates the
            # declared model.  Nothing sound can be decoded from here on.
            per_packet.append(PacketStatus(t, False, None, deadline))
            failures.append(t)
            messages_out.append(None)
            halted = True
        elif has_undetermined or len(distinct) != 1:
            ambiguities.append(t)
            per_packet.append(PacketStatus(t, False, None, deadline))
            failures.append(t)
            messages_out.append(None)
            halted = True
        else:
            value = next(iter(distinct))
            known.append(value)
            messages_out.append(value)
            per_packet.append(PacketStatus(t, True, wend, deadline))
            if tuple(received[t]) != tuple(encode_symbol(t, j) for j in range(n)):
                past_support.append(t)

    admissible = True
    if pattern is not None:
        support_flags = ErasurePattern(
            pattern.horizon, tuple(1 if any(p) else 0 for p in pattern.packets)
        )
        admissible = model.admits(support_flags)
    params = _report_params(code, tau, model, t_msgs)
    return DecodeReport(
        params=params,
        per_packet=tuple(per_packet),
        success=not failures,
        failures=tuple(failures),
        pattern_admissible=admissible,
        ambiguities=tuple(ambiguities),
        messages=tuple(messages_out),
    )


def _report_params(code: SystematicCode, tau: int, model: ChannelModel | None, t_msgs: int) -> dict:
    return {
        "n": code.n,
        "k": code.k,
        "field": code.field.to_dict(),
        "tau": tau,
        "model": model.to_dict() if model is not None else None,
        "message_horizon": t_msgs,
    }


def apply_erasures(stream: PacketStream, pattern: ErasurePattern) -> list[tuple[int, ...] | None]:
    return [None if pattern.flag(t) else stream.packets[t] for t in range(stream.packet_horizon)]


def apply_errors(stream: PacketStream, pattern: ErrorPattern) -> list[tuple[int, ...]]:
    f = stream.code.field
    out = []
    for t in range(stream.packet_horizon):
        err = pattern.packet(t)
        pkt = stream.packets[t]
        out.append(tuple(f.add(a, b) for a, b in zip(pkt, err)))
    return out


def simulate(
    code: SystematicCode,
    tau: int,
    model: ChannelModel | None,
    pattern: ErasurePattern | ErrorPattern,
    messages: Sequence[Sequence[int]],
) -> DecodeReport:
    """Encode, apply the channel realization, decode, and report.

    Deterministic given its inputs.  When the pattern is admissible in
    the declared model, decoded values are checked against the encoded
    messages; a mismatch would be an implementation defect and raises.
    """
    stream = de_encode(code, messages)
    t_msgs = stream.message_horizon
    if isinstance(pattern, ErasurePattern):
        received = apply_erasures(stream, pattern)
        report = decode_erasures(code, tau, received, t_msgs, pattern, model)
    elif isinstance(pattern, ErrorPattern):
        if model is None or not model.is_error_model:
            raise ValueError("error patterns need an error-channel model")
        if pattern.packet_size != code.n:
            raise ValueError("error packet size must equal the code length")
        received = apply_errors(stream, pattern)
        report = decode_errors(code, tau, received, t_msgs, model, pattern)
    else:
        raise TypeError(f"unsupported pattern type {type(pattern).__name__}")
    if report.pattern_admissible:
        for t, val in enumerate(report.messages):
            if val is not None and val != stream.messages[t]:
                raise RuntimeError(
                    f"decoded value for packet {t} disagrees with the encoded message; "
                    "this is an implementation defect"
                )
    return report
