"""Log-space union bounds for independent k-sets of a random Cayley sum graph.

Candidate independent sets of size ``k = (2 + 4*delta) * log_{1/(1-p)} n``
are split by doubling constant into three classes, and each class gets a
counting-times-probability sum.  Every sum is evaluated term by term in
natural-log space, binomials come from log-gamma, and unquantified ``o(1)``
exponents are explicit parameters.

Summation ranges use integer ``m`` (or ``d``) values:

* x1: ``d = 1 .. ceil(4 k^(1/4))``
* x2: ``m = ceil(k^(5/4)) .. floor(delta k^2 / 10)``
* x3: ``m = max(1, ceil(delta k / 10)) .. ceil(k)``
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional

from scipy.special import betaln

from .errors import ParameterError

NEG_INF = float("-inf")


def log_sum_exp(values: Iterable[float]) -> float:
    """Streaming ``log(sum(exp(v)))`` with a running maximum."""
    peak = NEG_INF
    acc = 0.0
    for v in values:
        if v == NEG_INF:
            continue
        if v <= peak:
            acc += math.exp(v - peak)
        else:
            acc = acc * math.exp(peak - v) + 1.0
            peak = v
    if peak == NEG_INF:
        return NEG_INF
    return peak + math.log(acc)


def log_binom(x: float, y: float) -> float:
    """``log C(x, y)`` for real arguments; ``-inf`` when ``y < 0`` or ``y > x``."""
    if y < 0 or y > x:
        return NEG_INF
    if y == 0 or y == x:
        return 0.0
    return -math.log1p(x) - float(betaln(y + 1.0, x - y + 1.0))


def _check_np(n, p):
    if n < 2:
        raise ParameterError(f"need n >= 2, got {n}")
    if not 0.0 < p < 1.0:
        raise ParameterError(f"p must lie in (0, 1), got {p}")


def compute_k(n: float, p: float, delta: float, coefficient: Optional[float] = None) -> float:
    """``coefficient * log_{1/(1-p)} n`` with coefficient ``2 + 4 delta`` by default."""
    _check_np(n, p)
    if delta < 0:
        raise ParameterError("delta must be nonnegative")
    if coefficient is None:
        coefficient = 2 + 4 * delta
    return coefficient * math.log(n) / -math.log1p(-p)


@dataclass(frozen=True)
class BoundParams:
    n: int
    p: float
    delta: float
    alpha_slack: float = 0.05
    eps_exponent: float = 0.0
    fingerprint_constant: float = 1.0
    k_coefficient: Optional[float] = None

    def __post_init__(self):
        if self.n < 3:
            raise ParameterError(f"need n >= 3, got {self.n}")
        _check_np(self.n, self.p)
        if self.delta < 0:
            raise ParameterError("delta must be nonnegative")
        if not 0 < self.alpha_slack < 1 / 3:
            raise ParameterError(f"alpha_slack must lie in (0, 1/3), got {self.alpha_slack}")
        if self.eps_exponent < 0:
            raise ParameterError("eps_exponent must be nonnegative")
        if self.fingerprint_constant <= 0:
            raise ParameterError("fingerprint_constant must be positive")

    @property
    def k(self) -> float:
        return compute_k(self.n, self.p, self.delta, self.k_coefficient)

    @property
    def log_n(self) -> float:
        return math.log(self.n)

    @property
    def log_q(self) -> float:
        """``log(1 - p)``."""
        return math.log1p(-self.p)


@dataclass
class SumBound:
    name: str
    log_sum: float
    table: list[tuple[int, float]]
    empty_range: bool = False

    @property
    def vanishing(self) -> bool:
        return self.log_sum < 0


def x1_terms(params: BoundParams) -> list[tuple[int, float]]:
    k = params.k
    ln_n, ln_q = params.log_n, params.log_q
    a = params.alpha_slack
    gap_log2_size = k ** (0.25 + params.eps_exponent)
    rows = []
    for d in range(1, math.ceil(4 * k**0.25) + 1):
        term = (d + 1) * ln_n
        term += log_binom(gap_log2_size, d - 1)
        term += _log_binom_exp(gap_log2_size, params.fingerprint_constant * math.sqrt(d * k))
        term += (1 - 2 * a) * (d + 1) * k / 2 * ln_q
        rows.append((d, term))
    return rows


def _log_binom_exp(log_x: float, y: float) -> float:
    """``log C(e^log_x, y)``, falling back to ``y log_x - lgamma(y+1)`` for huge x."""
    if log_x < 700:
        return log_binom(math.exp(log_x), y)
    if y < 0:
        return NEG_INF
    return y * log_x - math.lgamma(y + 1.0)


def x1_log_bound(params: BoundParams) -> SumBound:
    table = x1_terms(params)
    return SumBound("x1", log_sum_exp(t for _, t in table), table)


def x2_range(params: BoundParams) -> range:
    k = params.k
    lo = math.ceil(k**1.25)
    hi = math.floor(params.delta * k * k / 10)
    return range(lo, hi + 1)


def x2_log_bound(params: BoundParams) -> SumBound:
    k = params.k
    d = params.delta
    ln_n, ln_q = params.log_n, params.log_q
    base = 4 * k * math.log(k)
    table = [
        (m, (2 + 2 * d) * (m / k) * ln_n + base + ((1 - d / 2) * m + d * m / 2) * ln_q)
        for m in x2_range(params)
    ]
    return SumBound("x2", log_sum_exp(t for _, t in table), table, empty_range=not table)


def x3_range(params: BoundParams) -> range:
    k = params.k
    lo = max(1, math.ceil(params.delta * k / 10))
    return range(lo, math.ceil(k) + 1)


def x3_log_bound(params: BoundParams) -> SumBound:
    k = params.k
    d = params.delta
    ln_n, ln_q = params.log_n, params.log_q
    table = [(m, (2 + 2 * d) * (m / k) * ln_n + m * ln_q) for m in x3_range(params)]
    return SumBound("x3", log_sum_exp(t for _, t in table), table, empty_range=not table)


@dataclass
class BoundReport:
    params: BoundParams
    k: float
    sums: dict[str, SumBound]
    notes: list[str] = field(default_factory=list)

    @property
    def verdicts(self) -> dict[str, bool]:
        return {name: s.vanishing for name, s in self.sums.items()}

    def format_table(self) -> str:
        lines = [f"k = {self.k:.6f}"]
        for name, s in self.sums.items():
            status = "empty range" if s.empty_range else ("< 0" if s.vanishing else ">= 0")
            lines.append(f"{name}: log_sum = {s.log_sum:.10g}  ({status}, {len(s.table)} terms)")
            for idx, term in s.table:
                lines.append(f"    {idx:>8d}  {term:>18.10g}")
        for note in self.notes:
            lines.append(f"note: {note}")
        return "\n".join(lines)

    def rows(self) -> list[dict]:
        out = []
        for name, s in self.sums.items():
            for idx, term in s.table:
                out.append({"sum": name, "index": idx, "log_term": term})
        return out


BOUND_FUNCTIONS = {"x1": x1_log_bound, "x2": x2_log_bound, "x3": x3_log_bound}


def bound_report(params: BoundParams, which: Iterable[str] = ("x1", "x2", "x3")) -> BoundReport:
    k = params.k
    notes = [
        "1 - p is taken as n^(-(2+4 delta)/k), the form consistent with the definition of k",
    ]
    if params.k_coefficient is not None and not math.isclose(params.k_coefficient, 2 + 4 * params.delta):
        notes.append(f"k uses coefficient {params.k_coefficient} instead of 2 + 4 delta")
    sums = {}
    for name in which:
        if name not in BOUND_FUNCTIONS:
            raise ParameterError(f"unknown bound {name!r}")
        sums[name] = BOUND_FUNCTIONS[name](params)
        if sums[name].empty_range:
            notes.append(f"{name}: summation range is empty at this k")
    return BoundReport(params, k, sums, notes)


def expected_alpha_gnp(n: int, p: float) -> int:
    """Largest ``t`` with ``C(n, t) (1-p)^C(t, 2) >= 1``, scanning ``t`` upward.

    The scan stops at the first ``t`` where the log first moment turns
    negative.
    """
    _check_np(n, p)
    ln_q = math.log1p(-p)
    ln_nfact = math.lgamma(n + 1)
    best = 1
    for t in range(1, n + 1):
        first_moment = ln_nfact - math.lgamma(t + 1) - math.lgamma(n - t + 1) + t * (t - 1) / 2 * ln_q
        if first_moment < 0:
            break
        best = t
    return best
