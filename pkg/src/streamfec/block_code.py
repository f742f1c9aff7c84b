"""Systematic block codes and their delay-constrained decodability.

Covers the code constructions used by the streaming layer (systematic
MDS via Vandermonde systematization, and interleaved-MDS codes for
multiple burst erasures), the transform from causal to systematic
generator form, and the exact verifier that decides whether a code can
recover every erased message symbol within a per-symbol delay budget.

Delay semantics: message symbol i of a codeword must be recovered from
the non-erased code symbols in positions [0, min(i + tau, n-1)].  The
verifier decides this through the parity-check criterion: symbol i is
recoverable iff its column of the punctured parity matrix lies outside
the span of the other erased columns.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Iterable, Sequence

from .galois import Field
from .matrix import FieldMatrix, _rref, in_span, punctured_parity, rank, right_nullspace, shortened_parity


@dataclass(frozen=True)
class BurstSpec:
    """Up to z non-overlapping erasure bursts, each of length <= b."""

    z: int
    b: int

    def __post_init__(self) -> None:
        if self.z < 1 or self.b < 1:
            raise ValueError("burst spec needs z >= 1 and b >= 1")

    def tau_star(self, k: int) -> int:
        return delay_tau_star(k, self.z, self.b)


def delay_tau_star(k: int, z: int, b: int) -> int:
    """Smallest delay at which an [k+zb, k] code can survive all
    (z,b)-bursts: max(k + (z-1)*b, z*b)."""
    if k < 1 or z < 1 or b < 1:
        raise ValueError("k, z, b must be positive")
    return max(k + (z - 1) * b, z * b)


@dataclass(frozen=True)
class SystematicCode:
    """An [n, k] systematic code, generator [I_k | P], parity [-P^T | I]."""

    field: Field
    n: int
    k: int
    P: FieldMatrix
    construction: dict | None = dc_field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        if not 0 < self.k < self.n:
            raise ValueError(f"need 0 < k < n, got k={self.k}, n={self.n}")
        if self.P.rows != self.k or self.P.cols != self.n - self.k:
            raise ValueError(f"P must be {self.k}x{self.n - self.k}")
        if self.P.field != self.field:
            raise ValueError("P is over the wrong field")

    @cached_property
    def generator(self) -> FieldMatrix:
        return FieldMatrix.identity(self.field, self.k).hstack(self.P)

    @cached_property
    def parity(self) -> FieldMatrix:
        f = self.field
        neg_pt = FieldMatrix(f, [[f.neg(v) for v in self.P.column(j)] for j in range(self.P.cols)])
        return neg_pt.hstack(FieldMatrix.identity(f, self.n - self.k))

    def encode(self, u: Sequence[int]) -> tuple[int, ...]:
        if len(u) != self.k:
            raise ValueError(f"message must have {self.k} symbols")
        return tuple(u) + self.P.vector_mul(u)

    def to_descriptor(self) -> dict:
        return {
            "field": self.field.to_dict(),
            "n": self.n,
            "k": self.k,
            "P": self.P.to_lists(),
            "construction": self.construction or {"kind": "custom"},
        }

    @staticmethod
    def from_descriptor(d: dict) -> "SystematicCode":
        fld = Field.from_dict(d["field"])
        return SystematicCode(
            field=fld,
            n=d["n"],
            k=d["k"],
            P=FieldMatrix(fld, d["P"]),
            construction=d.get("construction"),
        )


@dataclass(frozen=True)
class CausalCode:
    """An [n, k] code whose generator is [U | P] with U upper-triangular
    and invertible, so code symbol j depends only on messages 0..j."""

    field: Field
    n: int
    k: int
    G: FieldMatrix

    def __post_init__(self) -> None:
        if not 0 < self.k < self.n:
            raise ValueError(f"need 0 < k < n, got k={self.k}, n={self.n}")
        if self.G.rows != self.k or self.G.cols != self.n:
            raise ValueError(f"G must be {self.k}x{self.n}")
        for i in range(self.k):
            if self.G[i, i] == 0:
                raise ValueError("leading block must have a nonzero diagonal")
            for j in range(i):
                if self.G[i, j] != 0:
                    raise ValueError("leading block must be upper-triangular")


def causal_to_systematic(code: CausalCode) -> SystematicCode:
    """Row-reduce [U | P] to [I | U^-1 P]; the row space (and hence the
    codebook) is unchanged."""
    f = code.field
    rows = [list(r) for r in code.G.data]
    rows, pivots = _rref(f, rows, code.k)
    if pivots != list(range(code.k)):
        raise ValueError("leading k x k block is singular")
    p_hat = FieldMatrix(f, [r[code.k:] for r in rows])
    return SystematicCode(field=f, n=code.n, k=code.k, P=p_hat)


def build_mds(n: int, k: int, field: Field) -> SystematicCode:
    """[n, k] systematic MDS code from a Vandermonde matrix on the first
    n field elements; requires q >= n so the evaluation points are
    distinct.  Every k columns of the generator are independent.

    The degenerate MDS codes, repetition (k = 1) and single parity
    (k = n-1), exist over every field and are emitted directly when the
    field is too small for the Vandermonde route."""
    if not 0 < k < n:
        raise ValueError(f"need 0 < k < n, got k={k}, n={n}")
    if field.q < n:
        if k == 1:
            p = FieldMatrix(field, [[1] * (n - 1)])
            return SystematicCode(field=field, n=n, k=1, P=p, construction={"kind": "mds", "n": n, "k": 1})
        if k == n - 1:
            p = FieldMatrix(field, [[1]] * k)
            return SystematicCode(field=field, n=n, k=k, P=p, construction={"kind": "mds", "n": n, "k": k})
        raise ValueError(f"field of order {field.q} too small for length {n} (need q >= n)")
    points = list(range(n))
    vand = FieldMatrix(field, [[field.pow(x, i) for x in points] for i in range(k)])
    # Row-reduce [V] so the first k columns become the identity.
    rows = [list(r) for r in vand.data]
    rows, pivots = _rref(field, rows, k)
    assert pivots == list(range(k)), "Vandermonde systematization cannot fail on distinct points"
    p = FieldMatrix(field, [r[k:] for r in rows])
    return SystematicCode(field=field, n=n, k=k, P=p, construction={"kind": "mds", "n": n, "k": k})


def build_multi_burst(k: int, z: int, b: int, field: Field) -> SystematicCode:
    """[k+zb, k] systematic code, delay-tau* decodable for every
    (z,b)-burst, built as a depth-b interleaving of a [k/b + z, k/b] MDS
    code.  Requires b | k and q >= k/b + z.  Code symbol j*b + r belongs
    to interleaved component r."""
    if k < 1 or z < 1 or b < 1:
        raise ValueError("k, z, b must be positive")
    if k % b != 0:
        raise ValueError(f"b must divide k for this construction (got k={k}, b={b})")
    kb = k // b
    if field.q < kb + z:
        raise ValueError(f"field of order {field.q} too small (need q >= k/b + z = {kb + z})")
    inner = build_mds(kb + z, kb, field)
    n = k + z * b
    p_rows = [[0] * (z * b) for _ in range(k)]
    for r in range(b):
        for j in range(kb):
            for s in range(z):
                p_rows[j * b + r][s * b + r] = inner.P[j, s]
    return SystematicCode(
        field=field,
        n=n,
        k=k,
        P=FieldMatrix(field, p_rows),
        construction={"kind": "multi_burst", "k": k, "z": z, "b": b},
    )


def _as_support(pattern) -> tuple[int, ...]:
    support = getattr(pattern, "support", None)
    if support is not None:
        return tuple(sorted(support))
    return tuple(sorted(set(pattern)))


@dataclass(frozen=True)
class VerifyResult:
    ok: bool
    counterexample: tuple[tuple[int, ...], int] | None

    def __bool__(self) -> bool:
        return self.ok


def verify_delay_decodable(code: SystematicCode, tau: int, patterns: Iterable) -> VerifyResult:
    """Exact decodability check for a set of erasure patterns.

    True iff for every pattern and every erased message position i, the
    i-th column of the punctured parity matrix is outside the span of
    the other erased columns at positions <= tau + i.  On failure the
    lexicographically smallest failing (support, i) pair is returned;
    patterns are normalized to sorted supports before checking.
    """
    n, k = code.n, code.k
    if not k <= tau <= n - 1:
        raise ValueError(f"tau must satisfy k <= tau <= n-1, got {tau}")
    h = code.parity
    punctured_cache: dict[int, FieldMatrix] = {}
    supports = sorted({_as_support(p) for p in patterns})
    for support in supports:
        if support and not 0 <= support[0] <= support[-1] < n:
            raise ValueError(f"pattern support {support} out of range for length {n}")
        for i in support:
            if i >= k:
                continue
            hi = punctured_cache.get(i)
            if hi is None:
                hi = punctured_parity(h, n, k, tau, i)
                punctured_cache[i] = hi
            limit = min(tau + i, n - 1)
            others = [j for j in support if j != i and j <= limit]
            basis = FieldMatrix.from_columns(code.field, [hi.column(j) for j in others], rows=hi.rows)
            if in_span(hi.column(i), basis):
                return VerifyResult(False, (support, i))
    return VerifyResult(True, None)


def verify_delay_decodable_general(g: FieldMatrix, tau: int, patterns: Iterable) -> VerifyResult:
    """Decodability check for an arbitrary generator matrix, using a
    parity basis from the nullspace of g and generic shortening.

    For causal codes (invertible upper-triangular leading block) this
    agrees with `verify_delay_decodable` on the systematized code:
    message symbols are recoverable exactly when the erased code symbols
    at message positions are.
    """
    k, n = g.rows, g.cols
    h = right_nullspace(g).transpose()
    shortened_cache: dict[int, FieldMatrix] = {}
    supports = sorted({_as_support(p) for p in patterns})
    for support in supports:
        for i in support:
            if i >= k:
                continue
            last = min(i + tau, n - 1)
            hs = shortened_cache.get(last)
            if hs is None:
                hs = shortened_parity(h, last)
                shortened_cache[last] = hs
            others = [j for j in support if j != i and j <= last]
            basis = FieldMatrix.from_columns(g.field, [hs.column(j) for j in others], rows=hs.rows)
            if in_span(hs.column(i), basis):
                return VerifyResult(False, (support, i))
    return VerifyResult(True, None)


def check_full_rank_property(code: SystematicCode, z: int, b: int) -> bool:
    """Every b x b submatrix H([lb:(l+1)b-1], [j:j+b-1]) of the parity
    matrix has rank b, for l in [0, z-1] and j in [0, k-b].  A necessary
    property of any [k+zb, k] systematic code that recovers every
    (z,b)-burst."""
    n, k = code.n, code.k
    if n != k + z * b:
        raise ValueError(f"expected n = k + z*b, got n={n}, k={k}, z={z}, b={b}")
    h = code.parity
    for l in range(z):
        rows = range(l * b, (l + 1) * b)
        for j in range(k - b + 1):
            sub = h.submatrix(rows, range(j, j + b))
            if rank(sub) != b:
                return False
    return True


@dataclass(frozen=True)
class WindowPropertyReport:
    """Outcome of the 2 x mb window-rank property check."""

    p1: bool
    p2: bool
    p3: bool
    p4: bool
    conclusion_holds: bool

    @property
    def premises_hold(self) -> bool:
        return self.p1 and self.p2 and self.p3 and self.p4


def check_window_rank_properties(a: FieldMatrix, b: int, m: int) -> WindowPropertyReport:
    """Evaluate the four window-rank properties of a 2 x (m*b) matrix and
    whether both entries of its last column are nonzero.

    P1: both rows start with b-1 zeros.
    P2: no row contains b consecutive zeros.
    P3: every width-b column window starting in [b-1, (m-1)b] has rank 1.
    P4: every width-2b column window starting in [0, (m-2)b] has rank 2.
    Whenever P1-P4 all hold, the last column has no zero entry.
    """
    if b < 2 or m < 2:
        raise ValueError("need b >= 2 and m >= 2")
    if a.rows != 2 or a.cols != m * b:
        raise ValueError(f"matrix must be 2x{m * b}")
    p1 = all(a[i, j] == 0 for i in (0, 1) for j in range(b - 1))
    p2 = True
    for i in (0, 1):
        run = 0
        for j in range(m * b):
            run = run + 1 if a[i, j] == 0 else 0
            if run >= b:
                p2 = False
                break
    p3 = all(
        rank(a.submatrix((0, 1), range(j, j + b))) == 1
        for j in range(b - 1, (m - 1) * b + 1)
    )
    p4 = all(
        rank(a.submatrix((0, 1), range(j, j + 2 * b))) == 2
        for j in range(0, (m - 2) * b + 1)
    )
    conclusion = a[0, m * b - 1] != 0 and a[1, m * b - 1] != 0
    return WindowPropertyReport(p1=p1, p2=p2, p3=p3, p4=p4, conclusion_holds=conclusion)
