"""Binary-label conformal prediction with count-based conformity measures.

p-values are non-smoothed::

    p(history, z) = |{i : α_i <= α_z}| / (l + 1)

over the bag ``history + [z]``, where ``α_i`` is the conformity score of the
``i``-th example against the bag with that example removed.  Both shipped
measures depend on the bag only through the counts of each observation, so
p-values can be computed from counts; :func:`p_value_naive` recomputes every
leave-one-out score from scratch and serves as the oracle.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .core import ObjectSpace, Observation, Seq, Stream
from .languages import CatalogueLanguage
from .randomness import CombinedSystem, DeltaSystem, ForcedSystem, LevelSystem


class ConformityMeasure:
    """``score(bag, example)``; ``bag`` is a :class:`collections.Counter` of observations."""

    name = "measure"

    def score(self, bag: Counter, example: Observation) -> Fraction:
        raise NotImplementedError


class LabelFrequency(ConformityMeasure):
    """Share of the bag carrying the example's label, with add-one smoothing."""

    name = "label-frequency"

    def score(self, bag, example):
        same = sum(n for o, n in bag.items() if o.y == example.y)
        return Fraction(same + 1, sum(bag.values()) + 2)


def object_distance(a: str, b: str) -> int:
    """Hamming distance on the common length plus the length difference."""
    return sum(p != q for p, q in zip(a, b)) + abs(len(a) - len(b))


class NearestNeighbor(ConformityMeasure):
    """Share of the nearest examples (by object distance) that agree on the label.

    Nearest examples are all bag examples at the minimal object distance; the
    share is smoothed by one agreeing and one disagreeing pseudo-example.
    """

    name = "nearest-neighbor"

    def __init__(self, space: ObjectSpace):
        self.space = space
        self._dist = [[object_distance(a, b) for b in space.objects] for a in space.objects]

    def score(self, bag, example):
        present = {o.x for o, n in bag.items() if n > 0}
        if not present:
            return Fraction(1, 2)
        d = min(self._dist[example.x][x] for x in present)
        near = {x for x in present if self._dist[example.x][x] == d}
        total = sum(n for o, n in bag.items() if o.x in near)
        agree = sum(n for o, n in bag.items() if o.x in near and o.y == example.y)
        return Fraction(agree + 1, total + 2)


def p_value_naive(measure: ConformityMeasure, history: Seq, candidate: Observation) -> Fraction:
    """Oracle: leave-one-out scores for every example of the augmented bag."""
    examples = list(history) + [candidate]
    full = Counter(examples)
    scores = []
    for z in examples:
        rest = full.copy()
        rest[z] -= 1
        scores.append(measure.score(+rest, z))
    alpha = scores[-1]
    return Fraction(sum(1 for a in scores if a <= alpha), len(examples))


class ConformalState:
    """Counts of the history; p-values of candidates in O(|X|) score calls."""

    def __init__(self, measure: ConformityMeasure, history: Iterable[Observation] = ()):
        self.measure = measure
        self.counts: Counter = Counter()
        self.length = 0
        for o in history:
            self.add(o)

    def add(self, obs: Observation) -> None:
        self.counts[obs] += 1
        self.length += 1

    def p_value(self, candidate: Observation) -> Fraction:
        bag = self.counts.copy()
        bag[candidate] += 1
        scores = {}
        for z in bag:
            rest = bag.copy()
            rest[z] -= 1
            scores[z] = self.measure.score(+rest, z)
        alpha = scores[candidate]
        hits = sum(n for z, n in bag.items() if scores[z] <= alpha)
        return Fraction(hits, self.length + 1)

    def prediction_set(self, x: int, epsilon: Fraction) -> frozenset:
        return frozenset(y for y in (0, 1) if self.p_value(Observation(x, y)) > epsilon)


def p_value(measure: ConformityMeasure, history: Seq, candidate: Observation) -> Fraction:
    return ConformalState(measure, history).p_value(candidate)


def conformal_set(measure: ConformityMeasure, history: Seq, x: int, epsilon) -> frozenset:
    epsilon = Fraction(epsilon)
    if not 0 < epsilon < 1:
        raise ValueError("significance level must lie in (0, 1)")
    return ConformalState(measure, history).prediction_set(x, epsilon)


# ---------------------------------------------------------------------------
# validity


def within_envelope(errors: int, epsilon: Fraction, l: int, sigmas: int = 3) -> bool:
    """``errors <= ε l + k sqrt(ε (1-ε) l)`` decided in exact arithmetic."""
    epsilon = Fraction(epsilon)
    excess = errors - epsilon * l
    if excess <= 0:
        return True
    return excess * excess <= sigmas * sigmas * epsilon * (1 - epsilon) * l


@dataclass
class ValidityReport:
    epsilon: Fraction
    length: int
    errors: int
    envelope: float
    ok: bool

    def as_record(self):
        return {"epsilon": self.epsilon, "l": self.length, "errors": self.errors,
                "envelope": round(self.envelope, 6), "ok": self.ok}


def validity_run(measure: ConformityMeasure, stream: Stream, length: int,
                 epsilons: Sequence[Fraction]) -> list[ValidityReport]:
    """Errors of ``Γ^ε`` (true label outside the set) over ``length`` steps."""
    state = ConformalState(measure)
    errors = {e: 0 for e in epsilons}
    for l in range(1, length + 1):
        obs = stream.observation(l)
        p = state.p_value(obs)
        for e in epsilons:
            errors[e] += p <= e
        state.add(obs)
    out = []
    for e in epsilons:
        e = Fraction(e)
        envelope = float(e * length) + 3 * math.sqrt(float(e * (1 - e)) * length)
        out.append(ValidityReport(e, length, errors[e], envelope, within_envelope(errors[e], e, length)))
    return out


# ---------------------------------------------------------------------------
# conformal predictors as level systems


class ConformalLevels(LevelSystem):
    """Level ``m`` holds ``σ`` when the p-value of its last example is ``<= 2^-m``.

    These are the prohibitions of ``Γ^(2^-m)``; forcing them through
    :class:`~unipred.randomness.ForcedSystem` gives a randomness-type system.
    """

    def __init__(self, measure: ConformityMeasure):
        self.measure = measure
        self.name = f"conformal({measure.name})"

    def member(self, m, sigma):
        if m < 0:
            return True
        if not sigma:
            return False
        return p_value(self.measure, sigma[:-1], sigma[-1]) * 2**m <= 1

    def tracker(self):
        return _ConformalTracker(self)


class _ConformalTracker:
    def __init__(self, system: ConformalLevels):
        self.state = ConformalState(system.measure)
        self._cache: dict[Observation, Fraction] = {}
        self._last: Fraction | None = None

    def _p(self, obs):
        p = self._cache.get(obs)
        if p is None:
            p = self._cache[obs] = self.state.p_value(obs)
        return p

    def would_include(self, m, obs):
        return m < 0 or self._p(obs) * 2**m <= 1

    def step(self, obs):
        self._last = self._p(obs)
        self.state.add(obs)
        self._cache.clear()

    def includes(self, m):
        return m < 0 or (self._last is not None and self._last * 2**m <= 1)


def largest_level(epsilon: Fraction) -> int:
    """``⌊-log2 ε⌋`` for ``0 < ε < 1``, exactly."""
    epsilon = Fraction(epsilon)
    m = 0
    while Fraction(1, 2 ** (m + 1)) >= epsilon:
        m += 1
    return m


def proof_level(epsilon: Fraction) -> int:
    """``⌊-log2 ε⌋ - 1``, the level whose forced predictor is compared with ``Γ^ε``."""
    return largest_level(epsilon) - 1


def default_dominance_registry(space: ObjectSpace, language: CatalogueLanguage, max_level: int = 12) -> list[LevelSystem]:
    """Forced nearest-neighbor predictor, forced label-frequency predictor, ``Δ``."""
    return [
        ForcedSystem(ConformalLevels(NearestNeighbor(space)), max_level),
        ForcedSystem(ConformalLevels(LabelFrequency()), max_level),
        DeltaSystem(language),
    ]


@dataclass
class DominanceReport:
    seed: int
    epsilon: Fraction
    horizon: int
    #: per constant c: the l0 (None if containment fails at l_max)
    l0: dict[int, int | None] = field(default_factory=dict)
    #: smallest c whose containment holds on the final half of the horizon
    best_c: int | None = None
    steps: list[dict] = field(default_factory=list)

    def eventual(self, c: int) -> bool:
        l0 = self.l0.get(c)
        return l0 is not None and l0 <= self.horizon // 2 + 1

    def as_record(self):
        return {"seed": self.seed, "epsilon": self.epsilon, "horizon": self.horizon,
                "best_c": self.best_c, "l0": None if self.best_c is None else self.l0[self.best_c],
                "l0_by_c": {str(c): v for c, v in sorted(self.l0.items())}}


def dominance_experiment(stream: Stream, epsilon, system: CombinedSystem, measure: ConformityMeasure,
                         horizon: int, constants: Iterable[int] = range(9), seed: int = 0,
                         keep_steps: bool = False) -> DominanceReport:
    """Check ``Π_{𝒟_(m-c)} ⊆ Γ^ε`` at every step, ``m = ⌊-log2 ε⌋``, for each ``c``.

    ``Π_{𝒟_k}`` is the set of labels ``y`` with ``(s, y) ∉ 𝒟_k``.
    """
    epsilon = Fraction(epsilon)
    if not 0 < epsilon < Fraction(1, 2):
        raise ValueError("significance level must lie in (0, 1/2)")
    constants = list(constants)
    m = largest_level(epsilon)
    state = ConformalState(measure)
    tracker = system.tracker()
    last_fail = {c: 0 for c in constants}
    report = DominanceReport(seed, epsilon, horizon)
    for l in range(1, horizon + 1):
        obs = stream.observation(l)
        gamma = frozenset(y for y in (0, 1) if state.p_value(Observation(obs.x, y)) > epsilon)
        for c in constants:
            level = m - c
            pi = frozenset(y for y in (0, 1) if not tracker.would_include(level, Observation(obs.x, y)))
            contained = pi <= gamma
            if not contained:
                last_fail[c] = l
            if keep_steps:
                report.steps.append({"l": l, "c": c, "gamma": sorted(gamma), "pi": sorted(pi), "contained": contained})
        state.add(obs)
        tracker.step(obs)
    for c in constants:
        report.l0[c] = last_fail[c] + 1 if last_fail[c] < horizon else None
    eventual = [c for c in constants if report.eventual(c)]
    report.best_c = min(eventual) if eventual else None
    return report
