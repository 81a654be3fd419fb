"""Detection-probability bounds, Monte Carlo experiments, and the
three-party scenario runner.

The central quantity is the probability that an exhaustive forger's
uniformly sampled preimage coincides with the signer's original secret,
which makes the forgery undetectable.  Under the random-oracle model the
preimage count is 1 + Bin(2^-n, 2^(n+delta) - 1), giving the closed-form
expectation (1 - (1 - 2^-n)^(2^(n+delta))) / 2^delta bracketed by
exp(-2^delta) from below and 5.22 * 2^-delta from above.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np
from scipy import optimize, stats

from . import lamport, wots
from .adversary import (
    ForgeryBudget,
    build_lamport_preimage_index,
    forge_lamport,
    forge_wots,
)
from .core import BitString, LamportParams, WotsParams
from .errors import DomainError, InvalidParams
from .lamport import draw_bits
from .oracle import LABEL_WOTS_CHAIN, OracleTag, Seed, digest_bits, tag_prefix
from .pof import PofEvidenceII, detect_forgery, verify_pof2

UPPER_BOUND_CONSTANT = 5.22

Params = Union[LamportParams, WotsParams]


# ---------------------------------------------------------------------------
# Analytic bounds


def exact_expectation(n: int, delta: int) -> float:
    """Closed form for the mean inverse preimage count, E[1/(1+Bin)]."""
    # (1 - 2^-n)^(2^(n+delta)) via log1p to stay accurate for large n
    log_term = float(2 ** (n + delta)) * math.log1p(-(2.0 ** -n))
    return (1.0 - math.exp(log_term)) / 2 ** delta


def exact_expectation_by_summation(n: int, delta: int) -> float:
    """Independent check: direct sum of pmf(k)/(1+k) over the binomial."""
    trials = 2 ** (n + delta) - 1
    k = np.arange(trials + 1)
    pmf = stats.binom.pmf(k, trials, 2.0 ** -n)
    return float(np.sum(pmf / (1.0 + k)))


@dataclass(frozen=True)
class BoundsReport:
    n: int
    delta: int
    lower: float
    upper: float
    exact_expectation: float


def fda_bounds(n: int, delta: int) -> BoundsReport:
    """Lower/upper detection-failure bounds plus the exact expectation."""
    if n < 1 or delta < 0:
        raise InvalidParams("need n >= 1 and delta >= 0")
    return BoundsReport(
        n=n,
        delta=delta,
        lower=math.exp(-(2.0 ** delta)),
        upper=UPPER_BOUND_CONSTANT * 2.0 ** -delta,
        exact_expectation=exact_expectation(n, delta),
    )


def bound_constant(k: float) -> float:
    """Coefficient of 2^-delta from the two-part tail bound: 1/(1-k)^2 + 1/k."""
    if not 0.0 < k < 1.0:
        raise DomainError(f"k must lie strictly inside (0, 1), got {k}")
    return 1.0 / (1.0 - k) ** 2 + 1.0 / k


def minimize_bound_constant() -> tuple[float, float]:
    """Numeric minimum of the bound coefficient over (0, 1): (k_min, value)."""
    res = optimize.minimize_scalar(
        bound_constant, bounds=(1e-9, 1 - 1e-9), method="bounded"
    )
    return float(res.x), float(res.fun)


# ---------------------------------------------------------------------------
# Monte Carlo forgery-detection experiment


@dataclass(frozen=True)
class ExperimentConfig:
    scheme: str  # "lamport" | "wots"
    params: Params
    trials: int
    master_seed: int
    budget: ForgeryBudget = ForgeryBudget()

    def __post_init__(self):
        if self.scheme not in ("lamport", "wots"):
            raise InvalidParams(f"unknown scheme {self.scheme!r}")
        if self.trials < 1:
            raise InvalidParams("trials must be >= 1")


@dataclass(frozen=True)
class ExperimentReport:
    config: ExperimentConfig
    trials: int
    undetected_count: int
    detected_count: int
    undetected_rate: float
    stderr: float
    ci_low: float
    ci_high: float
    bounds: BoundsReport
    evidence_ok_count: int
    verdict: str  # "pass" | "fail" against the upper bound
    avg_matching_positions: Optional[float] = None


def _random_message_bits(rng: random.Random, nbits: int) -> BitString:
    return draw_bits(rng, nbits)


def _lamport_trial(params, rng, budget, index):
    kp = lamport.keygen(params, rng)
    M = rng.getrandbits(1)
    sigma = lamport.sign(kp, M)
    M_star = 1 - M
    sigma_star = forge_lamport(
        kp.public(), M, sigma, M_star, budget, rng, index=index
    )
    outcome = detect_forgery(kp, M_star, sigma_star)
    return outcome, None


def _wots_trial(params, rng, budget, _index):
    kp = wots.keygen(params, rng)
    M = _random_message_bits(rng, params.L)
    sigma = wots.sign(kp, M)
    while True:
        M_star = _random_message_bits(rng, params.L)
        if M_star != M:
            break
    sigma_star = forge_wots(kp.public(), M, sigma, M_star, budget, rng)
    outcome = detect_forgery(kp, M_star, sigma_star)
    legit = wots.sign(kp, M_star)
    matches = sum(a == b for a, b in zip(sigma_star.sigma, legit.sigma))
    return outcome, matches


def run_fda_experiment(config: ExperimentConfig) -> ExperimentReport:
    """Run the forgery-detection experiment: keygen, one chosen-message
    signature, exhaustive forgery, signer-side detection; count the
    trials where the forgery reproduced the legitimate signature.

    Deterministic for a given master seed: trial t uses an rng seeded
    with master_seed XOR t, so the aggregate is schedule-independent.
    """
    params = config.params
    if config.scheme == "lamport":
        config.budget.check(params.sk_bits)
        index = build_lamport_preimage_index(params)
        trial = _lamport_trial
    else:
        index = None
        trial = _wots_trial
    undetected = 0
    evidence_ok = 0
    match_total = 0
    for t in range(config.trials):
        rng = random.Random(config.master_seed ^ t)
        outcome, matches = trial(params, rng, config.budget, index)
        if outcome.detected:
            if verify_pof2(outcome.evidence):
                evidence_ok += 1
        else:
            undetected += 1
        if matches is not None:
            match_total += matches
    detected = config.trials - undetected
    rate = undetected / config.trials
    stderr = math.sqrt(rate * (1.0 - rate) / config.trials)
    bounds = fda_bounds(params.n, params.delta)
    verdict = "pass" if rate < bounds.upper + 3.0 * stderr else "fail"
    return ExperimentReport(
        config=config,
        trials=config.trials,
        undetected_count=undetected,
        detected_count=detected,
        undetected_rate=rate,
        stderr=stderr,
        ci_low=max(0.0, rate - 1.96 * stderr),
        ci_high=min(1.0, rate + 1.96 * stderr),
        bounds=bounds,
        evidence_ok_count=evidence_ok,
        verdict=verdict,
        avg_matching_positions=(
            match_total / config.trials if config.scheme == "wots" else None
        ),
    )


def report_text(report: ExperimentReport) -> str:
    b = report.bounds
    lines = [
        f"scheme:          {report.config.scheme}",
        f"n, delta:        {b.n}, {b.delta}",
        f"trials:          {report.trials}",
        f"undetected:      {report.undetected_count}",
        f"detected:        {report.detected_count}",
        f"undetected rate: {report.undetected_rate:.6f}"
        f"  (95% CI {report.ci_low:.6f}..{report.ci_high:.6f})",
        f"exact E[1/N]:    {b.exact_expectation:.6f}",
        f"lower bound:     {b.lower:.6g}",
        f"upper bound:     {b.upper:.6g}",
        f"evidence ok:     {report.evidence_ok_count}/{report.detected_count}",
        f"verdict:         {report.verdict}",
    ]
    if report.avg_matching_positions is not None:
        lines.append(
            f"avg matching signature positions: {report.avg_matching_positions:.3f}"
        )
    return "\n".join(lines)


CSV_HEADER = "n,delta,trials,undetected_rate,ci_low,ci_high,lower,upper,verdict"


def csv_row(report: ExperimentReport) -> str:
    b = report.bounds
    return (
        f"{b.n},{b.delta},{report.trials},{report.undetected_rate:.6f},"
        f"{report.ci_low:.6f},{report.ci_high:.6f},{b.lower:.6g},{b.upper:.6g},"
        f"{report.verdict}"
    )


# ---------------------------------------------------------------------------
# Preimage-count census


@dataclass(frozen=True)
class CensusReport:
    n: int
    delta: int
    instances: int
    counts: dict[int, int]  # preimage count N -> number of instances
    mean: float
    chi2: float
    p_value: float


def preimage_census(
    n: int, delta: int, instances: int, seed: int,
    budget: ForgeryBudget = ForgeryBudget(),
) -> CensusReport:
    """Empirical distribution of preimage-set sizes vs the shifted binomial.

    Each instance draws a fresh seeded one-way function (a chain-family
    member with its own randomizer), picks a random input, and counts
    the preimages of its image by full enumeration.  Fresh functions
    make instances independent, matching the model the chi-square test
    assumes.
    """
    domain_bits = n + delta
    budget.check(domain_bits)
    master = random.Random(seed)
    nbytes = (domain_bits + 7) // 8
    pad = 8 * nbytes - domain_bits
    counts: dict[int, int] = {}
    total = 0
    for _ in range(instances):
        r = Seed(master.getrandbits(128).to_bytes(16, "big"))
        prefix = tag_prefix(OracleTag(LABEL_WOTS_CHAIN, r, 1), n, domain_bits)
        x0 = master.getrandbits(domain_bits)
        target = digest_bits(prefix, (x0 << pad).to_bytes(nbytes, "big"), n)
        N = 0
        for v in range(1 << domain_bits):
            if digest_bits(prefix, (v << pad).to_bytes(nbytes, "big"), n) == target:
                N += 1
        counts[N] = counts.get(N, 0) + 1
        total += N
    mean = total / instances
    chi2, p_value = _census_gof(n, delta, instances, counts)
    return CensusReport(
        n=n, delta=delta, instances=instances, counts=dict(sorted(counts.items())),
        mean=mean, chi2=chi2, p_value=p_value,
    )


def _census_gof(n, delta, instances, counts):
    """Chi-square of observed N counts against 1 + Bin(2^-n, 2^(n+delta)-1),
    pooling the right tail until its expected count reaches 5."""
    m = 2 ** (n + delta) - 1
    p = 2.0 ** -n
    max_n = max(counts)
    cut = max_n
    while cut > 1:
        tail = instances * float(stats.binom.sf(cut - 2, m, p))
        if tail >= 5.0:
            break
        cut -= 1
    observed, expected = [], []
    for N in range(1, cut):
        observed.append(counts.get(N, 0))
        expected.append(instances * float(stats.binom.pmf(N - 1, m, p)))
    observed.append(sum(c for N, c in counts.items() if N >= cut))
    expected.append(instances * float(stats.binom.sf(cut - 2, m, p)))
    obs = np.asarray(observed, dtype=float)
    exp = np.asarray(expected, dtype=float)
    exp *= obs.sum() / exp.sum()
    chi2, p_value = stats.chisquare(obs, exp)
    return float(chi2), float(p_value)


# ---------------------------------------------------------------------------
# Three-party scenario


@dataclass(frozen=True)
class ScenarioEvent:
    step: int
    sender: str
    receiver: str
    payload: str


@dataclass(frozen=True)
class ScenarioLog:
    scheme: str
    adversary_mode: str
    events: tuple[ScenarioEvent, ...]
    outcome: str  # "evidence-delivered" | "undetectable"
    evidence: Optional[PofEvidenceII] = None


def run_scenario(
    scheme: str,
    params: Params,
    seed: int,
    adversary_mode: str = "fresh",
    notify_adversary: bool = False,
    budget: ForgeryBudget = ForgeryBudget(),
) -> ScenarioLog:
    """Replay the signer/adversary/receiver story step by step.

    fresh mode runs the exhaustive forger; exact-sk mode hands the
    adversary the secret key itself, modeling full key recovery, where
    detection necessarily fails.
    """
    if adversary_mode not in ("fresh", "exact-sk"):
        raise InvalidParams(f"unknown adversary mode {adversary_mode!r}")
    rng = random.Random(seed)
    events = []
    if scheme == "lamport":
        kp = lamport.keygen(params, rng)
        M = rng.getrandbits(1)
        sigma = lamport.sign(kp, M)
        M_star = 1 - M
        if adversary_mode == "exact-sk":
            sigma_star = lamport.sign(kp, M_star)
        else:
            sigma_star = forge_lamport(
                kp.public(), M, sigma, M_star, budget, rng
            )
    elif scheme == "wots":
        kp = wots.keygen(params, rng)
        M = _random_message_bits(rng, params.L)
        sigma = wots.sign(kp, M)
        while True:
            M_star = _random_message_bits(rng, params.L)
            if M_star != M:
                break
        if adversary_mode == "exact-sk":
            sigma_star = wots.sign(kp, M_star)
        else:
            sigma_star = forge_wots(kp.public(), M, sigma, M_star, budget, rng)
    else:
        raise InvalidParams(f"unknown scheme {scheme!r}")

    events.append(ScenarioEvent(0, "S", "A", "public key"))
    events.append(ScenarioEvent(0, "S", "R", "public key"))
    events.append(ScenarioEvent(1, "A", "S", "chosen message M"))
    events.append(ScenarioEvent(1, "S", "A", "signature pair (M, sigma)"))
    events.append(ScenarioEvent(2, "A", "R", "forged pair (M*, sigma*)"))
    events.append(ScenarioEvent(3, "R", "S", "forwarded pair (M*, sigma*)"))

    outcome = detect_forgery(kp, M_star, sigma_star)
    if outcome.detected:
        events.append(ScenarioEvent(4, "S", "R", "proof-of-forgery evidence E"))
        if notify_adversary:
            events.append(ScenarioEvent(4, "S", "A", "proof-of-forgery evidence E"))
        return ScenarioLog(
            scheme=scheme,
            adversary_mode=adversary_mode,
            events=tuple(events),
            outcome="evidence-delivered",
            evidence=outcome.evidence,
        )
    return ScenarioLog(
        scheme=scheme,
        adversary_mode=adversary_mode,
        events=tuple(events),
        outcome="undetectable",
    )


def scenario_text(log: ScenarioLog) -> str:
    lines = [f"scheme: {log.scheme}   adversary mode: {log.adversary_mode}"]
    for ev in log.events:
        lines.append(f"step {ev.step}: {ev.sender} -> {ev.receiver}: {ev.payload}")
    lines.append(f"outcome: {log.outcome}")
    return "\n".join(lines)
