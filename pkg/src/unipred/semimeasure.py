"""Time semimeasures, their mixture, and the greedy description assignment.

A time semimeasure ``P`` satisfies ``Σ_l P(ω^l) <= 1`` along every infinite
path ``ω``.  Values are exact :class:`~fractions.Fraction` lower bounds that
grow with the budget; budget ``0`` always gives ``0``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .coloring import prefix_free_partition
from .complexity import PathComplexity, Unknown, is_known, prefix_from_plain, time_complexity
from .core import Observation, Seq
from .languages import CatalogueLanguage, PrefixFreeLanguage

ZERO = Fraction(0)


class UnknownComplexity(ValueError):
    pass


class TimeSemimeasure:
    name = "semimeasure"

    def value(self, sigma: Seq, budget: int | None = None) -> Fraction:
        raise NotImplementedError

    def path_values(self, path: Seq, budget: int | None = None) -> list[Fraction]:
        """``P(ω^0), ..., P(ω^L)`` for ``path = ω^L``."""
        return [self.value(path[:l], budget) for l in range(len(path) + 1)]

    def __repr__(self):
        return f"{type(self).__name__}({self.name})"


class ComplexitySemimeasure(TimeSemimeasure):
    """``2^-𝒦(σ)``; zero while ``𝒦`` is unknown at the budget/depth."""

    name = "prefix-complexity"

    def __init__(self, language: CatalogueLanguage, depth: int = 64):
        self.language = language
        self.prefix_language = PrefixFreeLanguage(language)
        self.depth = depth

    def value(self, sigma, budget=None):
        if budget == 0:
            return ZERO
        k = time_complexity(sigma, self.prefix_language, depth=self.depth, budget=budget)
        return ZERO if not is_known(k) else Fraction(1, 2**k)

    def path_values(self, path, budget=None):
        if budget is not None:
            return super().path_values(path, budget)
        tracker = PathComplexity(self.language, self.depth)
        out = [self.value((), None)]
        for o in path:
            c = tracker.step(o)
            k = prefix_from_plain(c) if is_known(c) else None
            out.append(ZERO if k is None or k > self.depth else Fraction(1, 2**k))
        return out


class GeometricSemimeasure(TimeSemimeasure):
    """``2^-(|σ|+1)``, available once the budget exceeds ``|σ|``."""

    name = "geometric"

    def value(self, sigma, budget=None):
        if budget is not None and budget <= len(sigma):
            return ZERO
        return Fraction(1, 2 ** (len(sigma) + 1))


class UniformInitialSegment(TimeSemimeasure):
    """``1/(T+1)`` for ``|σ| <= T``, zero beyond."""

    name = "uniform-initial-segment"

    def __init__(self, horizon: int = 64):
        self.horizon = horizon

    def value(self, sigma, budget=None):
        if budget == 0 or len(sigma) > self.horizon:
            return ZERO
        return Fraction(1, self.horizon + 1)


def shen_witness(n: int, j: int, x: int = 0, a: int = 0, b: int = 1) -> Seq:
    """``n`` copies of ``(x, a)``, one ``(x, b)``, then ``j`` copies of ``(x, a)``."""
    if n < 1 or not 1 <= j <= n:
        raise ValueError(f"need 1 <= j <= n, got n={n}, j={j}")
    if a == b:
        raise ValueError("labels a and b must differ")
    A, B = Observation(x, a), Observation(x, b)
    return (A,) * n + (B,) + (A,) * j


def parse_shen(sigma: Seq, x: int = 0, a: int = 0, b: int = 1) -> tuple[int, int] | None:
    """``(n, j)`` if ``σ = α^n B α^j`` with ``1 <= j <= n``."""
    A, B = Observation(x, a), Observation(x, b)
    try:
        n = sigma.index(B)
    except ValueError:
        return None
    j = len(sigma) - n - 1
    if n < 1 or not 1 <= j <= n:
        return None
    if any(o != A for i, o in enumerate(sigma) if i != n):
        return None
    return n, j


class ShenSemimeasure(TimeSemimeasure):
    """``1/n`` on each of ``α^n B α^j``, ``1 <= j <= n``; one path carries one ``n``."""

    name = "shen-witness"

    def __init__(self, x: int = 0, a: int = 0, b: int = 1, max_n: int | None = None):
        self.x, self.a, self.b = x, a, b
        self.max_n = max_n

    def value(self, sigma, budget=None):
        if budget == 0:
            return ZERO
        parsed = parse_shen(sigma, self.x, self.a, self.b)
        if parsed is None or (self.max_n is not None and parsed[0] > self.max_n):
            return ZERO
        return Fraction(1, parsed[0])


class AprioriMixture(TimeSemimeasure):
    """``Σ_k 2^-k P_k`` over a finite, configured list of components."""

    name = "mixture"

    def __init__(self, components: Sequence[TimeSemimeasure]):
        if not components:
            raise ValueError("mixture needs components")
        self.components = tuple(components)

    def weight(self, k: int) -> Fraction:
        return Fraction(1, 2**k)

    def value(self, sigma, budget=None):
        if budget == 0:
            return ZERO
        return sum((self.weight(k) * P.value(sigma, budget) for k, P in enumerate(self.components, 1)), ZERO)

    def path_values(self, path, budget=None):
        columns = [P.path_values(path, budget) for P in self.components]
        return [
            sum((self.weight(k) * col[l] for k, col in enumerate(columns, 1)), ZERO) for l in range(len(path) + 1)
        ]


def mixture_value(M: AprioriMixture, sigma: Seq, budget: int | None = None) -> Fraction:
    return M.value(sigma, budget)


def default_mixture(language: CatalogueLanguage, horizon: int = 64) -> AprioriMixture:
    return AprioriMixture(
        [ComplexitySemimeasure(language), GeometricSemimeasure(), UniformInitialSegment(horizon), ShenSemimeasure()]
    )


def deficiency_semimeasure(sigma: Seq, prefix_language: PrefixFreeLanguage, depth: int = 64,
                           budget: int | None = None) -> Fraction:
    k = time_complexity(sigma, prefix_language, depth=depth, budget=budget)
    if isinstance(k, Unknown):
        raise UnknownComplexity(f"prefix time complexity exceeds {k.depth}")
    return Fraction(1, 2**k)


def path_sum(P: TimeSemimeasure, path: Seq, budget: int | None = None) -> Fraction:
    """``Σ_{l <= |path|} P(path^l)``, exactly."""
    return sum(P.path_values(path, budget), ZERO)


def assign_descriptions(M: TimeSemimeasure, k: int, universe: Iterable[Seq],
                        budget: int | None = None) -> dict[Seq, str]:
    """Give each ``σ`` with ``M(σ) > 2^-k`` (in universe order) a ``k``-bit description.

    The description is the first string of ``𝟚^k`` not held by an earlier
    comparable ``σ``; the sequences sharing a description form a law.
    """
    threshold = Fraction(1, 2**k)
    qualifying = (s for s in universe if M.value(s, budget) > threshold)
    coloring = prefix_free_partition(qualifying, 2**k)
    return {s: format(c, f"0{k}b") if k else "" for s, c in coloring.items()}


def neg_log_bounds(value: Fraction) -> tuple[int, int]:
    """``(floor, ceil)`` of ``-log2 value`` for ``0 < value <= 1``, exactly."""
    if not 0 < value <= 1:
        raise ValueError("value must lie in (0, 1]")
    inverse = Fraction(1) / value
    lo = inverse.numerator // inverse.denominator  # floor(1/value)
    floor = lo.bit_length() - 1
    ceil = floor if inverse == 2**floor else floor + 1
    return floor, ceil


def sandwich_constants(M: TimeSemimeasure, universe: Iterable[Seq], language: CatalogueLanguage,
                       depth: int = 64) -> dict:
    """Least integers ``c_lo, c_hi`` with ``𝒞 - c_lo <= -log M <= 𝒦 + c_hi`` on the universe.

    Both comparisons are made exactly: ``M · 2^(𝒞-c) <= 1`` and ``M · 2^(𝒦+c) >= 1``.
    """
    c_lo = c_hi = None
    count = 0
    for s in universe:
        m = M.value(s)
        c = time_complexity(s, language, depth=depth)
        if m == 0 or not is_known(c):
            continue
        K = prefix_from_plain(c)
        count += 1
        lo_needed = _least(lambda t: m * Fraction(2) ** (c - t) <= 1, c)
        hi_needed = _least(lambda t: m * Fraction(2) ** (K + t) >= 1, K)
        c_lo = lo_needed if c_lo is None else max(c_lo, lo_needed)
        c_hi = hi_needed if c_hi is None else max(c_hi, hi_needed)
    return {"count": count, "c_lower": c_lo, "c_upper": c_hi}


def _least(ok, start: int) -> int:
    t = -start - 64
    while not ok(t):
        t += 1
    return t


def shen_gap_report(M: TimeSemimeasure, language: CatalogueLanguage, max_n: int = 32) -> list[dict]:
    """``𝒦`` and ``-log M`` on the witnesses ``α^n B α^j``; a trend, not a bound."""
    rows = []
    prefix = PrefixFreeLanguage(language)
    for n in range(1, max_n + 1):
        for j in (1, n):
            s = shen_witness(n, j)
            K = time_complexity(s, prefix)
            m = M.value(s)
            _, ceil = neg_log_bounds(m)
            rows.append({"n": n, "j": j, "K": K, "M": m, "neg_log_M_ceil": ceil,
                         "gap": K - ceil if is_known(K) else None})
            if j == n:
                break
    return rows

