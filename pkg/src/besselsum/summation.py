"""Truncated evaluation of the discrete sum with a priori error bounds.

The sum is accumulated in ascending m with compensated (exact fsum)
accumulation, blocked at a fixed 4096 block size so a parallel evaluation
with ascending-order reduction would be bitwise identical.  Conditionally
convergent specs get series acceleration: iterated pairwise averaging of the
partial sums, one averaging stage per aliased beat frequency of the scale
set, which turns O(M^-p) oscillating tails into increments near roundoff.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import identity, specfun
from .errors import InvalidSpec, ToleranceUnreachable
from .identity import BesselProductSpec, ConvergenceClass

#: fixed block size for deterministic blocked accumulation
BLOCK = 4096

#: applications of the averaging operator per beat frequency
_ACCEL_REPS = 3
#: beat frequencies slower than this trigger the heuristic 1/A guard in the bound
_SLOW_BEAT = 0.1


@dataclass(frozen=True)
class SummationResult:
    """Evaluated sum (prefactor included when rescaled) and its error bound."""

    value: float
    terms_used: int
    error_bound: float
    convergence_class: ConvergenceClass
    accelerated: bool
    rescaled: bool
    rescale_A: float

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "terms_used": self.terms_used,
            "error_bound": self.error_bound,
            "class": self.convergence_class.value,
            "accelerated": self.accelerated,
            "rescaled": self.rescaled,
            "A": self.rescale_A,
        }


def envelope_constant(spec: BesselProductSpec) -> float:
    """prod_j sqrt(2/(pi a_j)) * 2^N: large-argument envelope amplitude times
    the cosine-product expansion count."""
    c = 2.0 ** spec.n_factors
    for a in spec.scales:
        c *= math.sqrt(2.0 / (math.pi * a))
    return c


def _require_valid(spec: BesselProductSpec) -> identity.ValidityReport:
    report = identity.check_validity(spec)
    if not report.valid:
        violated = [r.text for r in report.triggered_rules if r.violated]
        raise InvalidSpec("; ".join(violated) or "spec is invalid", report=report)
    return report


def _terms(spec: BesselProductSpec, m_max: int) -> np.ndarray:
    """Summand terms for m = 1..m_max, computed in ascending 4096-blocks."""
    out = np.empty(m_max)
    for lo in range(1, m_max + 1, BLOCK):
        hi = min(lo + BLOCK - 1, m_max)
        out[lo - 1 : hi] = identity.summand_terms(spec, np.arange(lo, hi + 1))
    return out


def sum_truncated(spec: BesselProductSpec, terms: int) -> float:
    """Partial sum over m = 0..terms in ascending order, compensated.

    Uses exact (correctly rounded) fsum within and across blocks, so the
    round-off is far below the 1e-14 * sum|terms| contract.
    """
    _require_valid(spec)
    if terms < 0 or terms != int(terms):
        raise InvalidSpec(f"terms must be a non-negative integer, got {terms!r}")
    m0 = identity.summand(spec, 0)
    if terms == 0:
        return m0
    vals = _terms(spec, int(terms))
    block_sums = [
        math.fsum(vals[lo : lo + BLOCK]) for lo in range(0, len(vals), BLOCK)
    ]
    return math.fsum([m0] + block_sums)


def truncation_bound(spec: BesselProductSpec, terms: int) -> float:
    """A priori bound on |S_infinity - S_terms| from the envelope analysis.

    Absolute class:  C * M^(1-p) with C = envelope * max(1, 1/|1-p|);
    conditional class:  C * M^(-p) with C = envelope, where p = lam + N/2.
    A heuristic 1/A guard enters C when the slowest aliased beat frequency A
    is below 0.1 (slow beats shrink the alternation the bound relies on).
    """
    report = _require_valid(spec)
    if terms < 10:
        raise InvalidSpec(f"truncation_bound requires terms >= 10, got {terms}")
    p = spec.lam + spec.n_factors / 2.0
    c = envelope_constant(spec)
    if report.convergence_class is ConvergenceClass.ABSOLUTE:
        c *= max(1.0, 1.0 / abs(1.0 - p))
        return c * float(terms) ** (1.0 - p)
    aliased = identity.aliased_beat_frequencies(spec.scales)
    if aliased and min(aliased) < _SLOW_BEAT:
        c /= min(aliased)
    return c * float(terms) ** (-p)


def required_terms(spec: BesselProductSpec, tol: float) -> int:
    """Smallest M >= 10 whose truncation bound is <= tol (ties rounded up)."""
    if tol <= 0:
        raise InvalidSpec(f"tol must be positive, got {tol}")
    report = _require_valid(spec)
    p = spec.lam + spec.n_factors / 2.0
    c = envelope_constant(spec)
    if report.convergence_class is ConvergenceClass.ABSOLUTE:
        c *= max(1.0, 1.0 / abs(1.0 - p))
        expo = 1.0 / (p - 1.0)
    else:
        aliased = identity.aliased_beat_frequencies(spec.scales)
        if aliased and min(aliased) < _SLOW_BEAT:
            c /= min(aliased)
        expo = 1.0 / p
    if c <= tol:
        return 10
    # log space: expo = 1/(p-1) blows up as p -> 1+ in the absolute case
    log_m = math.log(c / tol) * expo
    if log_m > math.log(1e15):
        return 10**15 + 1
    return max(10, int(math.ceil(math.exp(log_m))))


def _accelerate(partial: np.ndarray, scales) -> tuple[float, float] | None:
    """Iterated pairwise averaging of the tail of the partial-sum sequence.

    partial[i] holds S_{i+1}; the tail beyond len/2 is filtered by the
    shift-h averaging operator u -> (u_m + u_{m+h})/2 with h = round(pi/A)
    for each aliased beat frequency A (three passes each), then a short
    plain cascade.  Returns (value, error estimate) or None when the tail
    is too short to filter.
    """
    m_max = len(partial)
    u = partial[m_max // 2 :].copy()
    if len(u) < 8:
        return None
    increments = []
    for w in identity.aliased_beat_frequencies(scales):
        h = max(1, int(round(math.pi / w)))
        for _ in range(_ACCEL_REPS):
            if len(u) <= h + 2:
                break
            prev = u[-1]
            u = 0.5 * (u[:-h] + u[h:])
            increments.append(abs(u[-1] - prev))
    depth = min(len(u) - 1, 12)
    for _ in range(depth):
        prev = u[-1]
        u = 0.5 * (u[:-1] + u[1:])
        increments.append(abs(u[-1] - prev))
    if not increments:
        return None
    value = float(u[-1])
    spread = float(np.max(np.abs(u[-min(len(u), 50) :] - value))) if len(u) > 1 else 0.0
    err = max(increments[-1], spread) + 1e-15 * abs(value)
    return value, err


def evaluate(
    spec: BesselProductSpec,
    *,
    terms: int | None = None,
    tol: float | None = None,
    m_max: int = 10**6,
    accelerate: bool = True,
) -> SummationResult:
    """Evaluate the sum side of the identity for a spec.

    Exactly one of ``terms`` (fixed truncation M) or ``tol`` (target error
    bound, M chosen by inverting the truncation bound, capped at ``m_max``)
    must be given.  Specs with sum of scales beyond 2*pi are rescaled first
    and the result carries the prefactor A^(sum(nu)-1-2k).  Conditional-class
    specs are accelerated unless disabled; the error bound is then the last
    averaging increment instead of the a priori power law.
    """
    if (terms is None) == (tol is None):
        raise InvalidSpec("exactly one of terms= or tol= must be given")
    work, prefactor, A = identity.rescale(spec)
    rescaled = A != 1.0
    report = _require_valid(work)
    conditional = report.convergence_class is ConvergenceClass.CONDITIONAL

    if terms is not None:
        m_used = int(terms)
        if m_used < 0:
            raise InvalidSpec(f"terms must be non-negative, got {terms}")
    else:
        m_used = required_terms(work, tol / abs(prefactor))
        if m_used > m_max:
            if not (conditional and accelerate):
                raise ToleranceUnreachable(
                    f"tol {tol:g} needs ~{m_used} terms, beyond m_max={m_max}"
                )
            m_used = m_max

    m0 = identity.summand(work, 0)
    if m_used == 0:
        raw = m0
        vals = np.empty(0)
    else:
        vals = _terms(work, m_used)
        block_sums = [
            math.fsum(vals[lo : lo + BLOCK]) for lo in range(0, len(vals), BLOCK)
        ]
        raw = math.fsum([m0] + block_sums)

    accelerated = False
    value, err = raw, None
    if conditional and accelerate and m_used >= 64:
        acc = _accelerate(m0 + np.cumsum(vals), work.scales)
        if acc is not None:
            value, err = acc
            accelerated = True
    if err is None:
        err = truncation_bound(work, max(m_used, 10))

    if tol is not None and err * abs(prefactor) > tol:
        raise ToleranceUnreachable(
            f"achieved error bound {err * abs(prefactor):g} exceeds tol {tol:g} "
            f"at m_max={m_max}"
        )
    return SummationResult(
        value=prefactor * value,
        terms_used=m_used,
        error_bound=abs(prefactor) * err,
        convergence_class=report.convergence_class,
        accelerated=accelerated,
        rescaled=rescaled,
        rescale_A=A,
    )


def sum_power_product(nus, scales, lam: float, terms: int) -> float:
    """Partial sum of eps_m m^(-lam) prod_j J_{nu_j}(a_j m) for general lam.

    Bypasses the spec type (which pins lam = sum(nu) - 2k); used for
    odd-parity closure checks against the correction term.  The m = 0 term
    is the half-weight t -> 0 limit, which must exist.
    """
    nus = tuple(float(v) for v in nus)
    scales = tuple(float(a) for a in scales)
    e = math.fsum(
        (abs(v) if specfun.classify_order(v) is specfun.OrderKind.NEGATIVE_INTEGER else v)
        for v in nus
    ) - lam
    if e < -1e-12:
        raise InvalidSpec(f"t -> 0 limit diverges (exponent {e:g} < 0)")
    if e > 1e-12:
        m0 = 0.0
    else:
        m0 = 0.5 * math.prod(
            specfun.small_argument_coeff(v, a) for v, a in zip(nus, scales)
        )
    if terms == 0:
        return m0
    chunks = []
    for lo in range(1, int(terms) + 1, BLOCK):
        hi = min(lo + BLOCK - 1, int(terms))
        block = identity.power_product_array(nus, scales, lam, np.arange(lo, hi + 1, dtype=float))
        chunks.append(math.fsum(block))
    return math.fsum([m0] + chunks)
