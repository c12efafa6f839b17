"""Persistence of infinitely many spectral gaps under relative perturbation.

A self-adjoint T with discrete band structure has gaps (alpha_n, beta_n),
beta_n <= alpha_{n+1}.  Two routes decide how many gaps survive T + A:

* the endpoint-ratio route: limsup (resp. liminf) of beta_n/alpha_n above
  (1 + delta)/(1 - delta), with delta the T-bound of A, keeps infinitely
  (resp. cofinitely) many gaps open;
* the per-gap route: ratio_n = (shift(alpha_n) + shift(beta_n))/(beta_n -
  alpha_n) below 1 for infinitely (liminf) or cofinitely (limsup) many n.

Finite data is estimated over a tail window (default the last ceil(N/4)
terms, max/min); analytic tail models evaluate the limits exactly.  A
verdict is refused (inconclusive) rather than guessed whenever a finite
estimate straddles its threshold within 1e-6.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence, Union

from .enclosures import Gap, QuadBound, StripResult, perturbed_strip
from .errors import ConditionNotApplicable

__all__ = [
    "Verdict",
    "GrowthTerm",
    "GapSequence",
    "BandProfile",
    "PerGapConstants",
    "ConstModel",
    "TailModel",
    "RatioResult",
    "PerGapResult",
    "GrowthDiagnostic",
    "PowerlawBound",
    "ratio_criterion",
    "per_gap_criterion",
    "kappa_s",
    "necessary_growth_check",
    "powerlaw_example",
]

_STRADDLE_TOL = 1e-6


class Verdict(str, Enum):
    INFINITELY_MANY = "infinitely_many"
    COFINITELY_MANY = "cofinitely_many"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class GrowthTerm:
    """One asymptotic term coeff * base**n * n**power * log(n)**log_power."""

    coeff: float
    base: float = 1.0
    power: float = 0.0
    log_power: float = 0.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.coeff) and self.coeff >= 0):
            raise ValueError("coeff must be finite and nonnegative")
        if not (math.isfinite(self.base) and self.base > 0):
            raise ValueError("base must be finite and positive")

    def value(self, n: int) -> float:
        if n < 2:
            raise ValueError("growth terms are evaluated for n >= 2")
        return self.coeff * self.base**n * float(n) ** self.power * math.log(n) ** self.log_power

    def times(self, other: "GrowthTerm") -> "GrowthTerm":
        return GrowthTerm(
            self.coeff * other.coeff,
            self.base * other.base,
            self.power + other.power,
            self.log_power + other.log_power,
        )

    def over(self, other: "GrowthTerm") -> "GrowthTerm":
        if other.coeff == 0:
            raise ZeroDivisionError("division by a zero growth term")
        return GrowthTerm(
            self.coeff / other.coeff,
            self.base / other.base,
            self.power - other.power,
            self.log_power - other.log_power,
        )

    def limit(self) -> float:
        """Limit as n -> infinity, in [0, inf]."""
        if self.coeff == 0.0:
            return 0.0
        if self.base > 1.0:
            return math.inf
        if self.base < 1.0:
            return 0.0
        if self.power > 0:
            return math.inf
        if self.power < 0:
            return 0.0
        if self.log_power > 0:
            return math.inf
        if self.log_power < 0:
            return 0.0
        return self.coeff


def _lex_le(e1: float, f1: float, e2: float, f2: float) -> bool:
    """Power-log dominance: n**e1 log**f1 is O(n**e2 log**f2)."""
    return e1 < e2 or (e1 == e2 and f1 <= f2)


@dataclass(frozen=True)
class GapSequence:
    """Finite list of gaps (alpha_n, beta_n) with beta_n <= alpha_{n+1}."""

    alphas: tuple[float, ...]
    betas: tuple[float, ...]

    def __post_init__(self) -> None:
        alphas = tuple(float(x) for x in self.alphas)
        betas = tuple(float(x) for x in self.betas)
        object.__setattr__(self, "alphas", alphas)
        object.__setattr__(self, "betas", betas)
        if len(alphas) != len(betas) or not alphas:
            raise ValueError("alphas and betas must be nonempty and equally long")
        for a, b in zip(alphas, betas):
            if not (math.isfinite(a) and math.isfinite(b) and a < b):
                raise ValueError("each gap requires finite alpha_n < beta_n")
        for b, a_next in zip(betas, alphas[1:]):
            if b > a_next:
                raise ValueError("gaps must be ordered: beta_n <= alpha_{n+1}")

    def __len__(self) -> int:
        return len(self.alphas)

    @property
    def lengths(self) -> tuple[float, ...]:
        return tuple(b - a for a, b in zip(self.alphas, self.betas))

    @property
    def widths(self) -> tuple[float, ...]:
        """Band widths w_n = alpha_{n+1} - beta_n (zero for touching gaps)."""
        return tuple(a - b for b, a in zip(self.betas, self.alphas[1:]))

    def profile(self) -> "BandProfile":
        return BandProfile(self.lengths, self.widths)

    def gaps(self) -> tuple[Gap, ...]:
        return tuple(Gap(a, b) for a, b in zip(self.alphas, self.betas))


@dataclass(frozen=True)
class BandProfile:
    """Gap lengths l_n > 0 and band widths w_n >= 0 (one fewer width than lengths)."""

    lengths: tuple[float, ...]
    widths: tuple[float, ...]

    def __post_init__(self) -> None:
        lengths = tuple(float(x) for x in self.lengths)
        widths = tuple(float(x) for x in self.widths)
        object.__setattr__(self, "lengths", lengths)
        object.__setattr__(self, "widths", widths)
        if not lengths:
            raise ValueError("at least one gap length required")
        if len(widths) not in (len(lengths) - 1, len(lengths)):
            raise ValueError("widths must number len(lengths)-1 (trailing width optional)")
        if any(not math.isfinite(l) or l <= 0 for l in lengths):
            raise ValueError("gap lengths must be positive")
        if any(not math.isfinite(w) or w < 0 for w in widths):
            raise ValueError("band widths must be nonnegative")

    def to_sequence(self, alpha1: float) -> GapSequence:
        alphas, betas = [], []
        a = float(alpha1)
        for i, l in enumerate(self.lengths):
            alphas.append(a)
            betas.append(a + l)
            if i < len(self.lengths) - 1:
                a = a + l + self.widths[i]
        return GapSequence(tuple(alphas), tuple(betas))


@dataclass(frozen=True)
class PerGapConstants:
    """Per-gap relative-bound constants (a_n, b_n), each b_n in [0, 1)."""

    a_seq: tuple[float, ...]
    b_seq: tuple[float, ...]

    def __post_init__(self) -> None:
        a_seq = tuple(float(x) for x in self.a_seq)
        b_seq = tuple(float(x) for x in self.b_seq)
        object.__setattr__(self, "a_seq", a_seq)
        object.__setattr__(self, "b_seq", b_seq)
        if len(a_seq) != len(b_seq) or not a_seq:
            raise ValueError("a_seq and b_seq must be nonempty and equally long")
        if any(not math.isfinite(a) or a < 0 for a in a_seq):
            raise ValueError("a_n must be nonnegative")
        if any(not math.isfinite(b) or not 0 <= b < 1 for b in b_seq):
            raise ValueError("b_n must lie in [0, 1)")

    def __len__(self) -> int:
        return len(self.a_seq)


@dataclass(frozen=True)
class ConstModel:
    """Analytic power-log models for the constant sequences a_n and b_n."""

    a_term: GrowthTerm
    b_term: GrowthTerm

    def __post_init__(self) -> None:
        if self.a_term.base != 1.0 or self.b_term.base != 1.0:
            raise ValueError("constant models must be power-log (base 1)")


@dataclass(frozen=True)
class TailModel:
    """Tail behavior of the band structure.

    kind "power-log":   l_n = length_prefactor * n**p1 * log(n)**p2,
                        w_n = width_prefactor * n**q1 * log(n)**q2.
    kind "geometric":   alpha_n = alpha_scale * ratio**n,
                        beta_n = band_ratio * alpha_n  (1 < band_ratio <= ratio).
    kind "finite-data": wraps a GapSequence; limits are tail-window estimates.
    """

    kind: str
    p1: Optional[float] = None
    p2: Optional[float] = None
    q1: Optional[float] = None
    q2: Optional[float] = None
    length_prefactor: float = 1.0
    width_prefactor: float = 1.0
    ratio: Optional[float] = None
    alpha_scale: float = 1.0
    band_ratio: Optional[float] = None
    seq: Optional[GapSequence] = None
    window: Optional[int] = None

    def __post_init__(self) -> None:
        if self.kind == "power-log":
            if self.p1 is None or self.q1 is None:
                raise ValueError("power-log model requires p1 and q1")
            object.__setattr__(self, "p2", 0.0 if self.p2 is None else float(self.p2))
            object.__setattr__(self, "q2", 0.0 if self.q2 is None else float(self.q2))
            if self.p1 < 0 or self.q1 < 0:
                raise ValueError("power-log exponents p1, q1 must be nonnegative")
            if self.length_prefactor <= 0:
                raise ValueError("length prefactor must be positive")
            if self.width_prefactor < 0:
                raise ValueError("width prefactor must be nonnegative")
        elif self.kind == "geometric":
            if self.ratio is None or self.band_ratio is None:
                raise ValueError("geometric model requires ratio and band_ratio")
            if not self.ratio > 1:
                raise ValueError("geometric endpoint growth requires ratio > 1")
            if not 1 < self.band_ratio <= self.ratio:
                raise ValueError("requires 1 < band_ratio <= ratio")
            if self.alpha_scale <= 0:
                raise ValueError("alpha_scale must be positive")
        elif self.kind == "finite-data":
            if self.seq is None:
                raise ValueError("finite-data model requires a GapSequence")
            if self.window is not None and self.window < 1:
                raise ValueError("window must be a positive length")
        else:
            raise ValueError(f"unknown tail model kind {self.kind!r}")

    def length_term(self) -> GrowthTerm:
        if self.kind != "power-log":
            raise ValueError("length term defined for power-log models only")
        return GrowthTerm(self.length_prefactor, 1.0, self.p1, self.p2)

    def width_term(self) -> GrowthTerm:
        if self.kind != "power-log":
            raise ValueError("width term defined for power-log models only")
        return GrowthTerm(self.width_prefactor, 1.0, self.q1, self.q2)


def _tail(values: Sequence[float], window: Optional[int] = None) -> Sequence[float]:
    w = window if window is not None else math.ceil(len(values) / 4)
    w = min(max(w, 1), len(values))
    return values[-w:]


def _decide(value: float, threshold: float, exact: bool, want_greater: bool) -> int:
    """Three-way strict test: 1 holds, -1 fails, 0 straddling (estimates only)."""
    if exact:
        holds = value > threshold if want_greater else value < threshold
        return 1 if holds else -1
    tol = _STRADDLE_TOL * max(1.0, abs(threshold))
    if want_greater:
        if value > threshold + tol:
            return 1
        if value < threshold - tol:
            return -1
        return 0
    if value < threshold - tol:
        return 1
    if value > threshold + tol:
        return -1
    return 0


@dataclass(frozen=True)
class RatioResult:
    verdict: Verdict
    liminf: float
    limsup: float
    threshold: float
    exact: bool


def _endpoint_ratio_stats(data: Union[GapSequence, TailModel]):
    """(liminf, limsup, exact) of beta_n/alpha_n."""
    if isinstance(data, TailModel):
        if data.kind == "power-log":
            # alpha_n grows one power faster than l_n, so the ratio tends to 1
            return 1.0, 1.0, True
        if data.kind == "geometric":
            return data.band_ratio, data.band_ratio, True
        seq, window = data.seq, data.window
    else:
        seq, window = data, None
    ratios = [b / a for a, b in zip(seq.alphas, seq.betas) if a > 0]
    if not ratios:
        raise ValueError("endpoint ratios need strictly positive alpha_n in the tail")
    tail = _tail(ratios, window)
    return min(tail), max(tail), False


def ratio_criterion(data: Union[GapSequence, TailModel], delta_a: float) -> RatioResult:
    """Endpoint-ratio gap test against the threshold (1 + delta)/(1 - delta).

    limsup beta_n/alpha_n above the threshold keeps infinitely many gaps
    open, liminf above keeps cofinitely many.  delta_a is the T-bound of
    the perturbation; delta_a >= 1 admits no conclusion.
    """
    delta_a = float(delta_a)
    if not 0 <= delta_a:
        raise ValueError("delta_a must be nonnegative")
    if delta_a >= 1:
        raise ConditionNotApplicable("T-bound delta_a >= 1 admits no gap conclusion")
    threshold = (1.0 + delta_a) / (1.0 - delta_a)
    liminf, limsup, exact = _endpoint_ratio_stats(data)
    if _decide(liminf, threshold, exact, want_greater=True) == 1:
        verdict = Verdict.COFINITELY_MANY
    elif _decide(limsup, threshold, exact, want_greater=True) == 1:
        verdict = Verdict.INFINITELY_MANY
    else:
        verdict = Verdict.INCONCLUSIVE
    return RatioResult(verdict, liminf, limsup, threshold, exact)


@dataclass(frozen=True)
class PerGapResult:
    verdict: Verdict
    ratios: tuple[float, ...]
    strips: tuple[StripResult, ...]
    liminf: float
    limsup: float


def per_gap_criterion(seq: GapSequence, consts: PerGapConstants) -> PerGapResult:
    """Per-gap shift ratios, survived strips, and the tail verdict.

    ratio_n = (shift(alpha_n) + shift(beta_n)) / (beta_n - alpha_n); a tail
    of ratios below 1 in the liminf sense keeps infinitely many gaps open,
    in the limsup sense cofinitely many.
    """
    if len(seq) != len(consts):
        raise ValueError("constants must match the number of gaps")
    ratios = []
    strips = []
    for a, b, alpha, beta in zip(consts.a_seq, consts.b_seq, seq.alphas, seq.betas):
        q = QuadBound(a, b)
        ratios.append((q.shift(alpha) + q.shift(beta)) / (beta - alpha))
        strips.append(perturbed_strip(q, Gap(alpha, beta)))
    tail = _tail(ratios)
    liminf, limsup = min(tail), max(tail)
    if _decide(limsup, 1.0, exact=False, want_greater=False) == 1:
        verdict = Verdict.COFINITELY_MANY
    elif _decide(liminf, 1.0, exact=False, want_greater=False) == 1:
        verdict = Verdict.INFINITELY_MANY
    else:
        verdict = Verdict.INCONCLUSIVE
    return PerGapResult(verdict, tuple(ratios), tuple(strips), liminf, limsup)


def _sum_limits(*parts: float) -> float:
    total = 0.0
    for p in parts:
        if math.isinf(p):
            return math.inf
        total += p
    return total


def kappa_s(
    bands: Union[BandProfile, TailModel],
    consts: Union[PerGapConstants, ConstModel],
) -> float:
    """limsup of kappa_n = b_n + (2/l_n) (a_n + b_n sum_{j<n} (l_j + w_j)).

    kappa_s < 1 certifies the limsup per-gap condition.  Finite data gives
    a tail-window estimate; a power-log band model with constant models
    gives the exact limit (integral comparison for the partial sums).
    """
    if isinstance(bands, BandProfile) and isinstance(consts, PerGapConstants):
        n = len(bands.lengths)
        if len(consts) != n:
            raise ValueError("constants must match the number of gaps")
        widths = bands.widths[: n - 1]
        values = []
        cum = 0.0
        for i in range(n):
            l = bands.lengths[i]
            values.append(consts.b_seq[i] + (2.0 / l) * (consts.a_seq[i] + consts.b_seq[i] * cum))
            if i < n - 1:
                cum += l + widths[i]
        return max(_tail(values))
    if isinstance(bands, TailModel) and isinstance(consts, ConstModel):
        if bands.kind != "power-log":
            raise ValueError("analytic kappa_s requires a power-log band model")
        l_term = bands.length_term()
        w_term = bands.width_term()
        a_term, b_term = consts.a_term, consts.b_term
        # sum_{j<n} l_j ~ l_n * n/(p1+1), likewise for widths
        part_b = b_term.limit()
        part_a = 2.0 * a_term.over(l_term).limit()
        part_l = (2.0 / (bands.p1 + 1.0)) * b_term.times(GrowthTerm(1.0, 1.0, 1.0)).limit()
        if w_term.coeff == 0:
            part_w = 0.0
        else:
            sum_w = GrowthTerm(w_term.coeff / (bands.q1 + 1.0), 1.0, bands.q1 + 1.0, bands.q2)
            part_w = 2.0 * b_term.times(sum_w).over(l_term).limit()
        return _sum_limits(part_b, part_a, part_l, part_w)
    raise TypeError("kappa_s takes (BandProfile, PerGapConstants) or (TailModel, ConstModel)")


@dataclass(frozen=True)
class GrowthDiagnostic:
    """Outcome of the necessary-condition screen for gap persistence."""

    ok: bool
    failed_condition: Optional[str]
    details: dict = field(default_factory=dict)


def necessary_growth_check(
    data: Union[GapSequence, TailModel],
    delta_a: float,
    consts: Union[PerGapConstants, ConstModel, None] = None,
) -> GrowthDiagnostic:
    """Screen the growth a cofinite gap verdict would require.

    For delta_a > 0 the endpoints must satisfy
        liminf alpha_{n+1}/alpha_n >= (1 + delta_a)/(1 - delta_a).
    For delta_a = 0 with an unbounded perturbation (constants supplied) the
    gap lengths must outgrow the constants: limsup 2 a_n / l_n < 1.
    """
    delta_a = float(delta_a)
    if not 0 <= delta_a < 1:
        raise ValueError("delta_a must lie in [0, 1)")
    if delta_a > 0:
        threshold = (1.0 + delta_a) / (1.0 - delta_a)
        if isinstance(data, TailModel) and data.kind == "power-log":
            liminf, exact = 1.0, True
        elif isinstance(data, TailModel) and data.kind == "geometric":
            liminf, exact = data.ratio, True
        else:
            seq = data.seq if isinstance(data, TailModel) else data
            window = data.window if isinstance(data, TailModel) else None
            ratios = [
                a2 / a1 for a1, a2 in zip(seq.alphas, seq.alphas[1:]) if a1 > 0
            ]
            if not ratios:
                raise ValueError("endpoint ratios need strictly positive alpha_n")
            liminf, exact = min(_tail(ratios, window)), False
        # necessary condition is non-strict, so only a clear shortfall fails
        failed = (liminf < threshold) if exact else (liminf < threshold - _STRADDLE_TOL * threshold)
        return GrowthDiagnostic(
            ok=not failed,
            failed_condition="endpoint-ratio-growth" if failed else None,
            details={"liminf": liminf, "threshold": threshold, "exact": exact},
        )
    # delta_a == 0: only unbounded perturbations constrain the gap lengths
    if consts is None:
        return GrowthDiagnostic(
            ok=True,
            failed_condition=None,
            details={"note": "no constants supplied; bounded perturbations need no growth"},
        )
    if isinstance(consts, ConstModel):
        if not (isinstance(data, TailModel) and data.kind == "power-log"):
            raise ValueError("analytic constants require a power-log band model")
        limsup = 2.0 * consts.a_term.over(data.length_term()).limit()
        exact = True
    else:
        if isinstance(data, TailModel):
            if data.kind != "finite-data":
                raise ValueError("finite constants require finite band data")
            seq, window = data.seq, data.window
        else:
            seq, window = data, None
        if len(consts) != len(seq):
            raise ValueError("constants must match the number of gaps")
        vals = [2.0 * a / l for a, l in zip(consts.a_seq, seq.lengths)]
        limsup, exact = max(_tail(vals, window)), False
    failed = (limsup >= 1.0) if exact else (limsup >= 1.0 - _STRADDLE_TOL)
    return GrowthDiagnostic(
        ok=not failed,
        failed_condition="gap-length-growth" if failed else None,
        details={"limsup_2a_over_l": limsup, "exact": exact},
    )


@dataclass(frozen=True)
class PowerlawBound:
    """Scale budget for power-log bands: kappa bound and admissible scale eps0."""

    kappa_bound: float
    eps0: float


def powerlaw_example(
    model: TailModel, a_model: GrowthTerm, b_model: GrowthTerm
) -> PowerlawBound:
    """Closed kappa bound for power-log bands with power-log constants.

    Requires p1, q1 > 0, a_n = O(n**p1 log**p2), and
    b_n = O(min{n**-1, n**(p1-q1-1) log**(p2-q2)}).  Then

      kappa_bound = 2 limsup{ a_n/(P_l n**p1 log**p2)
                              + b_n (1/2 + n + (P_w/P_l) n**(q1-p1+1) log**(q2-p2)) }

    with band prefactors P_l, P_w, and the scaled family eps*(a_n, b_n)
    keeps cofinitely many gaps open for every eps < eps0 = (1 - 1e-6)/kappa_bound.
    """
    if model.kind != "power-log":
        raise ValueError("requires a power-log band model")
    if a_model.base != 1.0 or b_model.base != 1.0:
        raise ValueError("constant models must be power-log (base 1)")
    if not (model.p1 > 0 and model.q1 > 0):
        raise ConditionNotApplicable("requires growing bands: p1 > 0 and q1 > 0")
    if a_model.coeff > 0 and not _lex_le(a_model.power, a_model.log_power, model.p1, model.p2):
        raise ConditionNotApplicable("a_n must be dominated by n**p1 log**p2")
    if b_model.coeff > 0:
        if not _lex_le(b_model.power, b_model.log_power, -1.0, 0.0):
            raise ConditionNotApplicable("b_n must be dominated by 1/n")
        if not _lex_le(
            b_model.power, b_model.log_power, model.p1 - model.q1 - 1.0, model.p2 - model.q2
        ):
            raise ConditionNotApplicable(
                "b_n must be dominated by n**(p1-q1-1) log**(p2-q2)"
            )
    term_a = a_model.over(model.length_term()).limit()
    term_half = GrowthTerm(0.5 * b_model.coeff, 1.0, b_model.power, b_model.log_power).limit()
    term_n = b_model.times(GrowthTerm(1.0, 1.0, 1.0)).limit()
    ratio_wl = model.width_term().over(model.length_term()) if model.width_prefactor > 0 else None
    if ratio_wl is None:
        term_w = 0.0
    else:
        term_w = b_model.times(ratio_wl).times(GrowthTerm(1.0, 1.0, 1.0)).limit()
    kappa_bound = 2.0 * _sum_limits(term_a, term_half, term_n, term_w)
    if kappa_bound == 0.0:
        eps0 = math.inf
    else:
        eps0 = (1.0 - 1e-6) / kappa_bound
    return PowerlawBound(kappa_bound, eps0)
