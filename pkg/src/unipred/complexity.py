"""Law complexity and time complexity over a description language.

Complexities are integers (bits) or :class:`Unknown` when the search was
truncated.  ``Unknown(depth)`` means "greater than ``depth``": every
description of length ``<= depth`` was examined and none qualified.

Two independent routes compute time complexity:

* :func:`time_complexity` asks the language for the descriptions whose law
  contains ``σ`` (for the catalogue this is analytic and fast);
* :func:`time_complexity_bruteforce` decodes every description up to the
  depth and tests membership directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .core import Observation, Seq, Situation
from .languages import (
    CatalogueLanguage,
    CatalogueTracker,
    DescriptionLanguage,
    PrefixFreeLanguage,
    self_delimited_length,
    strings_up_to,
)
from .laws import LawOfNature, NotAttained

PLAIN = "plain"
PREFIX = "prefix"


@dataclass(frozen=True)
class Unknown:
    """A complexity known only to exceed ``depth``."""

    depth: int

    def __str__(self):
        return f"Unknown({self.depth})"


def is_known(value) -> bool:
    return not isinstance(value, Unknown)


def at_most(value, bound: int) -> bool:
    """``value <= bound``, treating :class:`Unknown` as not at most anything."""
    return is_known(value) and value <= bound


def render_complexity(value) -> str:
    return str(value)


def _language(language: DescriptionLanguage, variant: str) -> DescriptionLanguage:
    if variant == PLAIN:
        return language
    if variant == PREFIX:
        return language if isinstance(language, PrefixFreeLanguage) else PrefixFreeLanguage(language)
    raise ValueError(f"unknown variant {variant!r}")


# ---------------------------------------------------------------------------
# law complexity


def law_complexity(language: DescriptionLanguage, law: LawOfNature, variant: str = PLAIN, depth: int = 12):
    """Least description length of ``law``, by exhaustive search up to ``depth``."""
    lang = _language(language, variant)
    for d in strings_up_to(depth):
        if lang.decode_law(d) == law:
            return len(d)
    return Unknown(depth)


def system_complexity(language: CatalogueLanguage, key, variant: str = PLAIN, depth: int = 12):
    """Least description length of the prediction system with identity ``key``.

    Laws are identified with their constant systems, so ``key`` may be a law
    key or a system key such as ``("DIV", arity, k)``.
    """
    lang = _language(language, variant)
    for d in strings_up_to(depth):
        obj = lang.decode(d)
        if getattr(obj, "key", None) == key and not getattr(obj, "is_vacuous", False):
            return len(d)
    return Unknown(depth)


def catalogue_description_length(key) -> int | None:
    """Length of the canonical catalogue description of a law or system key."""
    family = key[0]
    if family == "LEN":
        return 1 + key[2].bit_length() if key[2] >= 1 else None
    if family == "DIV":
        return 1 + key[2].bit_length()
    if family == "HIT":
        from .languages import PREDICATES, pattern_description_length

        pid = next(p.pid for p in PREDICATES if p.name == key[2])
        return pattern_description_length(key[3], pid)
    return None


# ---------------------------------------------------------------------------
# time complexity


def time_complexity(
    sigma: Seq,
    language: DescriptionLanguage,
    variant: str = PLAIN,
    depth: int = 64,
    budget: int | None = None,
):
    """Least ``|d|`` with ``|d| <= depth`` and ``σ`` in the law ``d`` denotes (at ``budget``)."""
    if depth < 1:
        raise ValueError("depth must be at least 1")
    lang = _language(language, variant)
    best = None
    for d in lang.descriptions_containing(sigma):
        if len(d) > depth or (best is not None and len(d) >= best):
            continue
        if budget is not None and not lang.decode_law(d).contains(sigma, budget):
            continue
        best = len(d)
    return Unknown(depth) if best is None else best


def time_complexity_bruteforce(
    sigma: Seq,
    language: DescriptionLanguage,
    variant: str = PLAIN,
    depth: int = 10,
    budget: int | None = None,
):
    """Oracle: decode every description of length ``<= depth`` and test membership."""
    lang = _language(language, variant)
    for d in strings_up_to(depth):
        if lang.decode_law(d).contains(sigma, budget):
            return len(d)
    return Unknown(depth)


def prefix_from_plain(c) -> int | Unknown:
    """``𝒦`` from ``𝒞`` for a self-delimited wrapper: ``|d| + 2|binary(|d|)| + 2``.

    The wrapper's overhead grows with ``|d|``, so the shortest plain description
    also gives the shortest wrapped one.
    """
    if not is_known(c):
        return Unknown(self_delimited_length(c.depth))
    return self_delimited_length(c)


class PathComplexity:
    """Incremental plain/prefix time complexity along one path (unbounded budget).

    Only the catalogue language is supported; each step costs O(1).
    """

    def __init__(self, language: CatalogueLanguage, depth: int = 64):
        self.tracker: CatalogueTracker = language.tracker()
        self.depth = depth

    def _clip(self, value):
        return Unknown(self.depth) if value is None or value > self.depth else value

    def step(self, obs: Observation):
        self.tracker.step(obs)
        return self.current()

    def current(self):
        return self._clip(self.tracker.best())

    def peek(self, obs: Observation):
        """Plain complexity of the current prefix extended by ``obs``."""
        return self._clip(self.tracker.peek(obs))

    @property
    def length(self) -> int:
        return self.tracker.length


def path_complexities(sigma: Seq, language: CatalogueLanguage, depth: int = 64) -> Iterator:
    """``𝒞(σ^1), 𝒞(σ^2), ...`` for the prefixes of ``σ``."""
    path = PathComplexity(language, depth)
    for o in sigma:
        yield path.step(o)


# ---------------------------------------------------------------------------
# connection with the attained level


@dataclass(frozen=True)
class LogLevelReport:
    level: int
    complexity: int
    constant: int
    within: bool

    def as_record(self) -> dict:
        return {
            "level": self.level,
            "complexity": self.complexity,
            "constant": self.constant,
            "within": self.within,
        }


def log_attained_level_check(universal, s: Situation, y: int, language: DescriptionLanguage, constant: int,
                             budget: int | None = None, depth: int = 64):
    """Compare ``log π`` with ``𝒞((s, y))`` exactly.

    ``within`` is ``2^(𝒞-c) <= π <= 2^(𝒞+c)``, the integer form of
    ``|log π - 𝒞| <= c``.  Returns :data:`NotAttained` if the level is not
    attained at this budget.
    """
    level = universal.min_index(s.extend(y), budget)
    if level is NotAttained:
        return NotAttained
    c = time_complexity(s.extend(y), language, PLAIN, depth)
    if not is_known(c):
        raise ValueError(f"complexity unknown at depth {depth}")
    lower_ok = c - constant <= 0 or 2 ** (c - constant) <= level
    upper_ok = level <= 2 ** (c + constant)
    return LogLevelReport(level, c, constant, lower_ok and upper_ok)
