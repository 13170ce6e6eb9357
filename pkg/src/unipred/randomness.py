"""Time randomness deficiency and randomness-/complexity-type prediction systems.

A randomness-type system is a nested family ``Λ_0 ⊇ Λ_1 ⊇ ...`` with at most
``2^-m · l`` members among the first ``l`` prefixes of any path.  Negative
levels contain every sequence.

Systems answer ``member(m, σ)`` directly and also provide a *tracker* that
follows one path observation by observation; ``would_include(m, obs)`` asks
about the one-step extension without moving, which is what a predictor needs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .coloring import GreedyPartition
from .complexity import PLAIN, PathComplexity, Unknown, is_known, time_complexity
from .core import Observation, Seq, Stream
from .languages import CatalogueLanguage, DescriptionLanguage, TableLanguage
from .laws import FiniteLaw, SequenceSystem


@dataclass(frozen=True)
class DeficiencyValue:
    """``log|σ| - 𝒞(σ)`` kept as the exact pair ``(|σ|, 𝒞(σ))``."""

    length: int
    complexity: int

    def exceeds(self, m: int) -> bool:
        """``D > m``, decided as ``2^(𝒞+m) < |σ|``."""
        e = self.complexity + m
        if e < 0:
            return self.length * 2 ** (-e) > 1
        return 2**e < self.length

    def __str__(self):
        return f"log2({self.length})-{self.complexity}"


def deficiency(sigma: Seq, language: DescriptionLanguage, depth: int = 64, budget: int | None = None):
    if not sigma:
        raise ValueError("deficiency needs a non-empty sequence")
    c = time_complexity(sigma, language, PLAIN, depth, budget)
    return c if isinstance(c, Unknown) else DeficiencyValue(len(sigma), c)


def delta_member(m: int, sigma: Seq, language: DescriptionLanguage, depth: int = 64, budget: int | None = None) -> bool:
    """``σ ∈ Δ_m``; an unknown complexity never makes ``σ`` a member."""
    if m < 0:
        return True
    if not sigma:
        return False
    d = deficiency(sigma, language, depth, budget)
    return is_known(d) and d.exceeds(m)


# ---------------------------------------------------------------------------
# systems and trackers


class PathTracker:
    """Generic tracker: re-evaluates ``member`` on the extended history."""

    def __init__(self, system: "LevelSystem"):
        self.system = system
        self.history: Seq = ()

    def step(self, obs: Observation) -> None:
        self.history = self.history + (obs,)

    def would_include(self, m: int, obs: Observation) -> bool:
        return self.system.member(m, self.history + (obs,))

    def includes(self, m: int) -> bool:
        return self.system.member(m, self.history)


class LevelSystem:
    """A family of sets ``Λ_m`` indexed by integer levels."""

    name = "system"

    def member(self, m: int, sigma: Seq) -> bool:
        raise NotImplementedError

    def tracker(self):
        return PathTracker(self)

    def __repr__(self):
        return f"{type(self).__name__}({self.name})"


class DeltaSystem(LevelSystem):
    """``Δ_m = {σ : 𝒟(σ) > m}`` over the catalogue language (unbounded budget)."""

    name = "delta"

    def __init__(self, language: CatalogueLanguage, depth: int = 64):
        self.language = language
        self.depth = depth

    def member(self, m, sigma):
        return delta_member(m, sigma, self.language, self.depth)

    def tracker(self):
        return _DeltaTracker(self)


class _DeltaTracker:
    def __init__(self, system: DeltaSystem):
        self.path = PathComplexity(system.language, system.depth)
        self._current = Unknown(system.depth)

    def step(self, obs):
        self._current = self.path.step(obs)

    def _member(self, m, c, length):
        if m < 0:
            return True
        return is_known(c) and DeficiencyValue(length, c).exceeds(m)

    def would_include(self, m, obs):
        return self._member(m, self.path.peek(obs), self.path.length + 1)

    def includes(self, m):
        if self.path.length == 0:
            return m < 0
        return self._member(m, self._current, self.path.length)

    def complexity(self):
        return self._current


class PredicateSystem(LevelSystem):
    """Levels given by a function ``(m, σ) -> bool`` (not necessarily nested or dense)."""

    def __init__(self, fn: Callable[[int, Seq], bool], name: str = "predicate"):
        self.fn = fn
        self.name = name

    def member(self, m, sigma):
        return True if m < 0 else self.fn(m, sigma)


class ForcedSystem(LevelSystem):
    """``base`` forced to be nested and to satisfy the density condition.

    ``σ`` is in level ``m`` iff it is in level ``m-1``, the base admits it at
    level ``m``, and admitting it keeps at most ``2^-m · |σ|`` members among
    the prefixes of ``σ`` (counted along ``σ``'s own path).
    """

    def __init__(self, base: LevelSystem, max_level: int = 16, name: str | None = None):
        self.base = base
        self.max_level = max_level
        self.name = name or f"forced({base.name})"

    def member(self, m, sigma):
        if m < 0:
            return True
        if not sigma:
            return False
        if m > self.max_level:
            return False
        t = self.tracker()
        for o in sigma[:-1]:
            t.step(o)
        return t.would_include(m, sigma[-1])

    def tracker(self):
        return _ForcedTracker(self)


class _ForcedTracker:
    def __init__(self, system: ForcedSystem):
        self.system = system
        self.base = system.base.tracker()
        self.levels = system.max_level + 1
        self.counts = [0] * self.levels
        self.current = [False] * self.levels
        self.length = 0

    def _admit(self, obs) -> list[bool]:
        out = []
        length = self.length + 1
        for m in range(self.levels):
            ok = (m == 0 or out[m - 1]) and self.base.would_include(m, obs)
            ok = ok and (self.counts[m] + 1) * 2**m <= length
            out.append(ok)
            if not ok:
                out.extend([False] * (self.levels - m - 1))
                break
        return out

    def would_include(self, m, obs):
        if m < 0:
            return True
        if m >= self.levels:
            return False
        return self._admit(obs)[m]

    def step(self, obs):
        admitted = self._admit(obs)
        for m, a in enumerate(admitted):
            self.counts[m] += a
        self.current = admitted
        self.base.step(obs)
        self.length += 1

    def includes(self, m):
        if m < 0:
            return True
        return m < self.levels and self.current[m]


def force_error_density(base: LevelSystem, max_level: int = 16) -> ForcedSystem:
    return ForcedSystem(base, max_level)


class CombinedSystem(LevelSystem):
    """``𝒟_m = ∪_k Λ^k_{m+k}`` over a finite registry (positions from 1)."""

    name = "combined"

    def __init__(self, registry: Sequence[LevelSystem]):
        if not registry:
            raise ValueError("empty registry")
        self.registry = tuple(registry)

    def member(self, m, sigma):
        if m < 0:
            return True
        return any(system.member(m + k, sigma) for k, system in enumerate(self.registry, 1))

    def tracker(self):
        return _CombinedTracker(self)


class _CombinedTracker:
    def __init__(self, system: CombinedSystem):
        self.trackers = [s.tracker() for s in system.registry]

    def step(self, obs):
        for t in self.trackers:
            t.step(obs)

    def would_include(self, m, obs):
        if m < 0:
            return True
        return any(t.would_include(m + k, obs) for k, t in enumerate(self.trackers, 1))

    def includes(self, m):
        if m < 0:
            return True
        return any(t.includes(m + k) for k, t in enumerate(self.trackers, 1))


def combine_randomness_systems(registry: Sequence[LevelSystem]) -> CombinedSystem:
    return CombinedSystem(registry)


class ShiftedSystem(LevelSystem):
    """``Λ'_m = Λ_(m - shift)``."""

    def __init__(self, base: LevelSystem, shift: int):
        self.base = base
        self.shift = shift
        self.name = f"{base.name}-shift{shift}"

    def member(self, m, sigma):
        return self.base.member(m - self.shift, sigma)


class ComplexityThresholdSystem(LevelSystem):
    """``member(m, σ)`` iff ``𝒞(σ) <= m`` (unknown complexity: not a member).

    Along one path each catalogue law holds at most one prefix, so level
    ``m`` has fewer than ``2^(m+1)`` members per path: the catalogue constant
    is ``c_cat = 1``.
    """

    name = "complexity-threshold"
    catalogue_constant = 1

    def __init__(self, language: CatalogueLanguage, depth: int = 64, budget: int | None = None):
        self.language = language
        self.depth = depth
        self.budget = budget

    def member(self, m, sigma):
        if m < 0:
            return False
        c = time_complexity(sigma, self.language, PLAIN, self.depth, self.budget)
        return is_known(c) and c <= m

    def members(self, m: int, max_length: int) -> set[Seq]:
        """Level ``m`` restricted to lengths ``<= max_length``, listed law by law."""
        from .languages import strings_up_to

        out: set[Seq] = set()
        for d in strings_up_to(min(m, self.depth)):
            law = self.language.decode_law(d)
            if not law.is_vacuous:
                out.update(law.members(max_length))
        return out


def complexity_type_from_threshold(language: CatalogueLanguage, depth: int = 64,
                                   budget: int | None = None) -> ComplexityThresholdSystem:
    return ComplexityThresholdSystem(language, depth, budget)


def universal_complexity_type(language: CatalogueLanguage, depth: int = 64) -> ShiftedSystem:
    """``𝒱_m = {σ : 𝒞(σ) <= m - 1}``: at most ``2^m`` members per path."""
    return ShiftedSystem(ComplexityThresholdSystem(language, depth), ComplexityThresholdSystem.catalogue_constant)


def coloring_language(levels: dict[int, Iterable[Seq]], space) -> TableLanguage:
    """Description language of the color classes: level ``m`` items get ``m``-bit descriptions."""
    table = {}
    for m, items in sorted(levels.items()):
        partition = GreedyPartition(2**m)
        for s in sorted(items, key=lambda s: (len(s), s)):
            partition.add(s)
        classes: dict[int, list[Seq]] = {}
        for s, c in partition.assigned.items():
            classes.setdefault(c, []).append(s)
        for c, members in classes.items():
            table[format(c, f"0{m}b") if m else ""] = FiniteLaw(members, f"color[{m}:{c}]")
    return TableLanguage(space, table)


# ---------------------------------------------------------------------------
# error accounting


@dataclass(frozen=True)
class ErrorRow:
    m: int
    l: int
    errors: int

    @property
    def bound(self):
        from fractions import Fraction

        return Fraction(self.l, 2**self.m)

    @property
    def strict_ok(self) -> bool:
        return self.errors * 2**self.m < self.l


def delta_error_counts(stream: Stream, length: int, language: CatalogueLanguage, levels: Iterable[int],
                       depth: int = 64) -> dict[int, list[int]]:
    """Cumulative errors of the ``Δ_m`` predictor at every prefix length ``1..length``.

    The predictor errs at step ``l`` exactly when ``ω^l ∈ Δ_m``.
    """
    levels = list(levels)
    path = PathComplexity(language, depth)
    counts = {m: 0 for m in levels}
    out: dict[int, list[int]] = {m: [] for m in levels}
    for l in range(1, length + 1):
        c = path.step(stream.observation(l))
        for m in levels:
            if is_known(c) and DeficiencyValue(l, c).exceeds(m):
                counts[m] += 1
            out[m].append(counts[m])
    return out


def level_counts(system: LevelSystem, stream: Stream, length: int, levels: Iterable[int]) -> dict[int, list[int]]:
    """Cumulative ``|{i <= l : ω^i ∈ Λ_m}|`` for ``l = 1..length`` via the tracker."""
    levels = list(levels)
    t = system.tracker()
    counts = {m: 0 for m in levels}
    out: dict[int, list[int]] = {m: [] for m in levels}
    for l in range(1, length + 1):
        t.step(stream.observation(l))
        for m in levels:
            counts[m] += t.includes(m)
            out[m].append(counts[m])
    return out


def density_violations(counts: dict[int, list[int]]) -> list[tuple[int, int, int]]:
    """``(m, l, count)`` wherever ``count > 2^-m · l``."""
    return [
        (m, l, c)
        for m, series in counts.items()
        for l, c in enumerate(series, 1)
        if m >= 0 and c * 2**m > l
    ]


# ---------------------------------------------------------------------------
# band construction


@dataclass
class BandSystem:
    system: SequenceSystem
    index: dict[Seq, int]
    band: dict[Seq, int]
    m: int

    def within_bound(self, s: Seq) -> bool:
        """Component index ``n`` of ``s`` satisfies ``n <= 2^(2-m) (|s| - 1) - 1`` (exactly)."""
        return (self.index[s] + 1) * 2**self.m <= 4 * (len(s) - 1)


def band_of(length: int, m: int) -> int:
    """Band ``0`` holds lengths ``<= 2^m``; band ``i`` holds ``(2^(m+i-1), 2^(m+i)]``."""
    if length <= 2**m:
        return 0
    i = 1
    while length > 2 ** (m + i):
        i += 1
    return i


def band_construction(items: Iterable[Seq], m: int) -> BandSystem:
    """Fill band ``i`` with ``2^i`` laws by greedy coloring (band 0 has one law).

    ``items`` enumerates ``D_m`` (any order; lengths may be interleaved).
    Band ``i >= 1`` uses components ``2^i .. 2^(i+1) - 1``.
    """
    partitions: dict[int, GreedyPartition] = {}
    index: dict[Seq, int] = {}
    band: dict[Seq, int] = {}
    for s in items:
        i = band_of(len(s), m)
        if i not in partitions:
            partitions[i] = GreedyPartition(2**i)
        color = partitions[i].add(s)
        index[s] = (2**i if i else 1) + color
        band[s] = i
    components: dict[int, list[Seq]] = {}
    for s, n in index.items():
        components.setdefault(n, []).append(s)
    top = max(components, default=0)
    laws = [FiniteLaw(components.get(n, ()), f"band-law[{n}]") for n in range(1, top + 1)]
    return BandSystem(SequenceSystem(laws, f"bands(m={m})"), index, band, m)
