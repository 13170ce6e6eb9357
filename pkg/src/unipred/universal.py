"""Universal prediction systems relative to a finite registry.

Index placement: member ``k`` of the registry contributes its ``n``-th law at
index ``3·2^(k-1) - 1 + 2^k (n-1)``, whose binary form is
``binary(n) · 0 · 1^(k-1)``.  Indices without a ``0`` in binary are vacuous.

Budgets: the universal system spends its steps round-robin over the ``K``
registry members (step ``j`` goes to member ``((j-1) mod K) + 1``), and each
member dovetails its own components with what it receives.  Hence member
``k`` at budget ``b`` is reproduced exactly by the universal system at
budget ``K·b``; the containment checks use slack factor ``K``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .core import ObjectSpace, Seq, Stream
from .languages import (
    CatalogueLanguage,
    DescriptionLanguage,
    natural_bits,
    natural_from_bits,
)
from .laws import (
    VACUOUS,
    DivisibilitySystem,
    EnumeratedSystem,
    FunctionSystem,
    LawOfNature,
    NotAttained,
    PredictionSystem,
)

#: indices above this are reported as overflow rather than silently accepted
MAX_INDEX = 2**63 - 1


class _Undefined:
    def __repr__(self):
        return "Undefined"


Undefined = _Undefined()


class NoWitness(RuntimeError):
    """The candidate systems cannot realize the divisibility family required."""


def decode_index(n: int):
    """``(k, A)`` with ``binary(n) = binary(A) · 0 · 1^(k-1)``, or :data:`Undefined`."""
    if n < 1:
        raise ValueError("indices start at 1")
    bits = bin(n)[2:]
    stripped = bits.rstrip("1")
    if not stripped:
        return Undefined
    k = len(bits) - len(stripped) + 1
    return k, int(stripped[:-1], 2)


def interleave_index(k: int, n: int) -> int:
    if k < 1 or n < 1:
        raise ValueError("k and n must be positive")
    index = 3 * 2 ** (k - 1) - 1 + 2**k * (n - 1)
    if index > MAX_INDEX:
        raise OverflowError(f"index for (k={k}, n={n}) exceeds {MAX_INDEX}")
    return index


def registry_constant(k: int) -> int:
    """``c_k = 2^(k+1)``: ``interleave_index(k, N) <= c_k · N`` for every ``N``."""
    return 2 ** (k + 1)


def member_budget(k: int, size: int, budget: int | None) -> int | None:
    """Steps member ``k`` of ``size`` receives out of ``budget`` round-robin steps."""
    if budget is None:
        return None
    return max(0, -(-(budget - k + 1) // size))


class DescriptionIndexedSystem(FunctionSystem):
    """``L_n`` is the law the catalogue assigns to ``binary(n)`` without its leading 1."""

    def __init__(self, language: CatalogueLanguage):
        self.language = language
        self.space = language.space
        super().__init__(self._law, self._indices, name="description-indexed")

    def _law(self, n: int) -> LawOfNature:
        return self.language.decode_law(natural_bits(n))

    def _indices(self, s: Seq) -> list[int]:
        return sorted(natural_from_bits(d) for d in self.language.descriptions_containing(s))


@dataclass
class Registry:
    systems: list[PredictionSystem] = field(default_factory=list)

    def __post_init__(self):
        self.systems = list(self.systems)
        if not self.systems:
            raise ValueError("registry must be non-empty")

    def __len__(self):
        return len(self.systems)

    def system(self, k: int) -> PredictionSystem:
        return self.systems[k - 1]

    def constants(self) -> dict[int, int]:
        return {k: registry_constant(k) for k in range(1, len(self) + 1)}


class UniversalSystem(PredictionSystem):
    def __init__(self, registry: Registry):
        self.registry = registry

    @property
    def slack(self) -> int:
        """Budget factor at which every member is reproduced exactly."""
        return len(self.registry)

    def placement(self, n: int):
        decoded = decode_index(n)
        if decoded is Undefined or decoded[0] > len(self.registry):
            return None
        return decoded

    def component(self, n):
        placed = self.placement(n)
        if placed is None:
            return VACUOUS
        k, A = placed
        return self.registry.system(k).component(A)

    def _budget(self, k, budget):
        return member_budget(k, len(self.registry), budget)

    def contains(self, n, s, budget=None):
        placed = self.placement(n)
        if placed is None:
            return False
        k, A = placed
        return self.registry.system(k).contains(A, s, self._budget(k, budget))

    def emitted(self, n, budget):
        placed = self.placement(n)
        if placed is None:
            return frozenset()
        k, A = placed
        return self.registry.system(k).emitted(A, self._budget(k, budget))

    def min_index(self, s, budget=None):
        best = NotAttained
        for k, system in enumerate(self.registry.systems, 1):
            level = system.min_index(s, self._budget(k, budget))
            if level is not NotAttained:
                index = interleave_index(k, level)
                if best is NotAttained or index < best:
                    best = index
        return best

    def active(self, budget):
        if budget is None:
            return self.scan_limit
        return max(
            interleave_index(k, max(1, system.active(self._budget(k, budget))))
            for k, system in enumerate(self.registry.systems, 1)
        )

    def __repr__(self):
        return f"UniversalSystem({len(self.registry)} members)"


def build_universal(registry: Registry | Sequence[PredictionSystem]) -> UniversalSystem:
    if not isinstance(registry, Registry):
        registry = Registry(list(registry))
    return UniversalSystem(registry)


def equal_label_system(space: ObjectSpace, max_length: int = 512) -> EnumeratedSystem:
    """User-supplied example: component ``j`` holds the constant-label runs of object 0 of length ``j``."""

    def pairs():
        for j in range(1, max_length + 1):
            for y in (0, 1):
                yield j, tuple(space.observations()[y : y + 1]) * j

    return EnumeratedSystem(pairs, name="equal-label-runs")


def default_registry(language: CatalogueLanguage, user_length: int = 512) -> Registry:
    """Catalogue-indexed system, divisibility families k=1 and k=2, one user system."""
    return Registry(
        [
            DescriptionIndexedSystem(language),
            DivisibilitySystem(language.space, 1),
            DivisibilitySystem(language.space, 2),
            equal_label_system(language.space, user_length),
        ]
    )


# ---------------------------------------------------------------------------
# containment along a stream and level domination


@dataclass(frozen=True)
class ContainmentViolation:
    k: int
    N: int
    length: int
    budget: int | None
    member_level: object
    universal_level: object


def check_interleaving_containment(universal: UniversalSystem, stream: Stream, max_length: int, max_N: int,
                                   budgets: Iterable[int | None]) -> tuple[int, list[ContainmentViolation]]:
    """``𝓛^k_{≤N} ⊆ 𝒰_{≤ idx(k,N)}`` along the stream, at member budget ``b`` vs ``slack·b``.

    Returns ``(checks, violations)``.  A prefix in ``𝓛^k_{≤N}`` has member
    level ``≤ N``; containment requires universal level ``≤ interleave_index(k, N)``.
    """
    violations = []
    checks = 0
    budgets = list(budgets)
    for length in range(max_length + 1):
        s = stream.prefix(length)
        for b in budgets:
            ub = None if b is None else b * universal.slack
            u_level = universal.min_index(s, ub)
            for k, system in enumerate(universal.registry.systems, 1):
                level = system.min_index(s, b)
                for N in range(1, max_N + 1):
                    checks += 1
                    if level is NotAttained or level > N:
                        continue
                    if u_level is NotAttained or u_level > interleave_index(k, N):
                        violations.append(ContainmentViolation(k, N, length, b, level, u_level))
    return checks, violations


def level_domination_holds(universal: UniversalSystem, k: int, s: Seq, budget: int | None = None) -> bool | None:
    """``π_𝒰 ≤ c_k · π_𝓛`` where both levels are attained (``None`` if either is not)."""
    system = universal.registry.system(k)
    level = system.min_index(s, budget)
    u_level = universal.min_index(s, None if budget is None else budget * universal.slack)
    if level is NotAttained or u_level is NotAttained:
        return None
    return u_level <= registry_constant(k) * level


# ---------------------------------------------------------------------------
# complexity-weighted universal system


class AmbiguousSplit(AssertionError):
    pass


class WeightedUniversalSystem(PredictionSystem):
    """``V_n`` is component ``n'`` of the system described by ``reverse(d)``,
    where ``binary(n) = binary(n') · d``.

    The description is read backwards from the end of ``binary(n)``; since the
    effective domain of the language is prefix-free, at most one suffix fits.
    """

    def __init__(self, language: DescriptionLanguage, max_description: int = 64):
        self.language = language
        self.max_description = max_description
        self._in_domain = getattr(language, "in_system_domain", language.in_domain)

    def split(self, n: int):
        bits = bin(n)[2:]
        found = None
        for cut in range(1, min(len(bits) - 1, self.max_description) + 1):
            d = bits[len(bits) - cut :]
            if self._in_domain(d[::-1]):
                if found is not None:
                    raise AmbiguousSplit(f"two descriptions end index {n}")
                found = (int(bits[: len(bits) - cut], 2), d)
        return found

    @staticmethod
    def index_for(n_prime: int, description: str) -> int:
        d = description[::-1]
        return n_prime * 2 ** len(d) + (int(d, 2) if d else 0)

    @staticmethod
    def index_bound(n_prime: int, description: str) -> int:
        w = 2 ** len(description)
        return n_prime * w + w - 1

    def component(self, n):
        split = self.split(n)
        if split is None:
            return VACUOUS
        n_prime, d = split
        return self.language.decode_system(d[::-1]).component(n_prime)

    def contains(self, n, s, budget=None):
        split = self.split(n)
        if split is None:
            return False
        n_prime, d = split
        return self.language.decode_system(d[::-1]).contains(n_prime, s, budget)


def build_weighted_universal(language: DescriptionLanguage, max_description: int = 64) -> WeightedUniversalSystem:
    return WeightedUniversalSystem(language, max_description)


# ---------------------------------------------------------------------------
# tightness


def divisibility_family(space: ObjectSpace, k: int) -> DivisibilitySystem:
    return DivisibilitySystem(space, k)


@dataclass(frozen=True)
class TightnessWitness:
    K: int
    a: int
    k: int
    N: int
    c: Fraction
    prefix_length: int
    contained: bool
    plain_complexity: int
    prefix_complexity: int
    universal_level: object

    def as_record(self) -> dict:
        return {
            "K": self.K,
            "k": self.k,
            "N": self.N,
            "c": self.c,
            "a": self.a,
            "prefix_length": self.prefix_length,
            "contained": self.contained,
            "plain_complexity": self.plain_complexity,
            "prefix_complexity": self.prefix_complexity,
            "universal_level": None if self.universal_level is NotAttained else self.universal_level,
        }


def tightness_offset(K: int, complexity_of) -> int:
    """Least ``a >= 0`` with ``C(𝓛^k) <= K`` for every ``k <= 2^(K-a) + 1``."""
    for a in range(K + 1):
        if all(complexity_of(k) <= K for k in range(1, 2 ** (K - a) + 2)):
            return a
    raise NoWitness(f"no divisibility family has complexity <= {K}")


def demonstrate_tightness(
    universal: UniversalSystem,
    K: int,
    N: int,
    stream: Stream,
    language: CatalogueLanguage,
    candidates: Sequence[PredictionSystem] | None = None,
) -> TightnessWitness:
    """Find ``k`` with ``𝓛^k_{≤N} ∩ Σ(ω) ⊄ 𝒰_{≤ c 2^K N} ∩ Σ(ω)``, ``c = 2^-a``.

    ``candidates`` defaults to the divisibility families decoded from the
    catalogue; any other candidate list must contain the families ``k = 1 ..
    2^(K-a)+1`` or :class:`NoWitness` is raised.
    """
    from .complexity import catalogue_description_length, prefix_from_plain

    def plain(k):
        return catalogue_description_length(("DIV", language.space.arity, k))

    a = tightness_offset(K, plain)
    K_prime = K - a
    limit = 2**K_prime * N  # c · 2^K · N with c = 2^-a
    top = 2**K_prime + 1
    if candidates is None:
        families = {k: language.decode(language.describe_div(k)) for k in range(1, top + 1)}
    else:
        families = {s.k: s for s in candidates if isinstance(s, DivisibilitySystem)}
    missing = [k for k in range(1, top + 1) if k not in families]
    if missing:
        raise NoWitness(f"candidates lack divisibility families {missing[:5]}")
    for k in range(1, top + 1):
        family = families[k]
        for j in range(1, N + 1):
            length = family.slice_length(j)
            level = universal.min_index(stream.prefix(length), None)
            contained = level is not NotAttained and level <= limit
            if not contained:
                c_plain = plain(k)
                return TightnessWitness(
                    K, a, k, N, Fraction(1, 2**a), length, False, c_plain, prefix_from_plain(c_plain), level
                )
    raise NoWitness(f"every candidate slice is covered by the first {limit} universal laws")
