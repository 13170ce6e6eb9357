"""Description languages for laws of nature and prediction systems.

Catalogue grammar (descriptions are ASCII ``"0"``/``"1"`` strings)::

    00 <n>            LEN(n)        all sequences of length n
    01 <n>            DIV(n)        divisibility family with parameter n
    10 <sd(m)> <p>    PATTERN(m,p)  first time predicate p holds with parameter m
    11 <n>            MEMBER(n)     the n-th configured antichain

``<n>`` is a positive integer written in binary without its leading 1 (the
empty string is 1).  ``<sd(m)>`` is ``m`` in that form, self-delimited by
:func:`self_delimit`.  Strings that do not parse, unknown predicate ids and
member indices past the configured list denote the vacuous law.  DIV
descriptions denote prediction systems, so as laws they are vacuous.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Sequence

from .core import ObjectSpace, Observation, Seq
from .laws import (
    VACUOUS,
    ConstantSystem,
    DivisibilitySystem,
    FiniteLaw,
    LawOfNature,
    PredictionSystem,
    ScanLaw,
    SequenceSystem,
)

# ---------------------------------------------------------------------------
# integer and self-delimiting codes


def binary(n: int) -> str:
    """Binary representation of ``n >= 0`` (``binary(0) == "0"``)."""
    if n < 0:
        raise ValueError("negative")
    return bin(n)[2:]


def natural_bits(n: int) -> str:
    """``n >= 1`` in binary with the leading 1 dropped."""
    if n < 1:
        raise ValueError(f"{n} is not a positive integer")
    return bin(n)[3:]


def natural_from_bits(bits: str) -> int:
    return int("1" + bits, 2)


def self_delimit(d: str) -> str:
    """Double each bit of ``binary(len(d))``, append ``01``, then ``d``."""
    return "".join(c + c for c in binary(len(d))) + "01" + d


def self_delimited_length(n: int) -> int:
    """``len(self_delimit(d))`` for any ``d`` with ``len(d) == n``."""
    return 2 * len(binary(n)) + 2 + n


def parse_self_delimited(s: str) -> tuple[str, str] | None:
    """Split ``s`` into ``(d, rest)`` with ``s == self_delimit(d) + rest``."""
    header = []
    i = 0
    while True:
        pair = s[i : i + 2]
        if len(pair) < 2 or pair == "10":
            return None
        i += 2
        if pair == "01":
            break
        header.append(pair[0])
    if not header:
        return None
    n = int("".join(header), 2)
    if "".join(header) != binary(n) or len(s) - i < n:
        return None  # non-canonical length header
    return s[i : i + n], s[i + n :]


def strings(length: int) -> Iterator[str]:
    for i in range(2**length):
        yield format(i, f"0{length}b") if length else ""


def strings_up_to(max_length: int) -> Iterator[str]:
    for n in range(max_length + 1):
        yield from strings(n)


# ---------------------------------------------------------------------------
# predicates behind PATTERN laws

# Every predicate is monotone in the prefix order (once it holds it keeps
# holding), so the set of sequences where it first holds is prefix-free.


@dataclass(frozen=True)
class Predicate:
    pid: int
    name: str
    #: naive definition: the statistic of a whole sequence
    statistic: Callable[[Seq], int]
    #: incremental form: (state, obs) -> state; state[0] is the statistic
    update: Callable[[tuple, Observation], tuple]
    initial: tuple

    def fires(self, s: Seq, m: int) -> bool:
        return self.statistic(s) >= m

    def first_hit(self, s: Seq, m: int) -> bool:
        return bool(s) and self.fires(s, m) and not self.fires(s[:-1], m)


def _longest_run(s: Seq, label: int) -> int:
    best = run = 0
    for o in s:
        run = run + 1 if o.y == label else 0
        best = max(best, run)
    return best


def _changes(s: Seq) -> int:
    return sum(1 for a, b in zip(s, s[1:]) if a.y != b.y)


def _run_update(label):
    def update(state, o):
        best, run = state
        run = run + 1 if o.y == label else 0
        return (max(best, run), run)

    return update


def _count_update(label):
    def update(state, o):
        return (state[0] + (o.y == label),)

    return update


def _change_update(state, o):
    count, last = state
    return (count + (last is not None and last != o.y), o.y)


PREDICATES: tuple[Predicate, ...] = (
    Predicate(1, "RUN1", lambda s: _longest_run(s, 1), _run_update(1), (0, 0)),
    Predicate(2, "RUN0", lambda s: _longest_run(s, 0), _run_update(0), (0, 0)),
    Predicate(3, "ONES", lambda s: sum(o.y for o in s), _count_update(1), (0,)),
    Predicate(4, "ZEROS", lambda s: sum(1 - o.y for o in s), _count_update(0), (0,)),
    Predicate(5, "CHANGES", _changes, _change_update, (0, None)),
)
PREDICATE_BY_ID = {p.pid: p for p in PREDICATES}


class FirstHitLaw(ScanLaw):
    """Sequences at which ``predicate`` holds with parameter ``m`` for the first time."""

    def __init__(self, space: ObjectSpace, predicate: Predicate, m: int):
        if m < 1:
            raise ValueError("m must be positive")
        super().__init__(space)
        self.predicate = predicate
        self.m = m
        self.key = ("HIT", space.arity, predicate.name, m)

    def is_member(self, s):
        return self.predicate.first_hit(s, self.m)

    def members(self, max_length):
        # once the predicate holds no extension can be a member
        stack = [()]
        while stack:
            s = stack.pop()
            if s and self.predicate.fires(s, self.m):
                if self.predicate.first_hit(s, self.m):
                    yield s
                continue
            if len(s) < max_length:
                stack.extend(s + (o,) for o in reversed(self.space.observations()))


# ---------------------------------------------------------------------------
# languages


class DescriptionLanguage:
    """Interface: ``decode_law``, ``decode_system`` and a containment oracle."""

    space: ObjectSpace

    def decode_law(self, d: str) -> LawOfNature:
        raise NotImplementedError

    def decode_system(self, d: str) -> PredictionSystem:
        law = self.decode_law(d)
        return ConstantSystem(law)

    def decode(self, d: str):
        return self.decode_law(d)

    def descriptions_containing(self, s: Seq) -> list[str]:
        """Every description whose law contains ``s`` (ignoring budgets)."""
        raise NotImplementedError

    def in_domain(self, d: str) -> bool:
        """``d`` is in the effective domain (denotes a non-vacuous object)."""
        return not self.decode_law(d).is_vacuous

    def law_complexity_bound(self, d: str) -> int:
        return len(d)


class CatalogueLanguage(DescriptionLanguage):
    """The fixed plain catalogue language (grammar in the module docstring)."""

    TAGS = {"00": "LEN", "01": "DIV", "10": "PATTERN", "11": "MEMBER"}

    def __init__(self, space: ObjectSpace, members: Sequence[Iterable[Seq]] = ()):
        self.space = space
        self.member_laws = tuple(FiniteLaw(items, f"member[{i + 1}]") for i, items in enumerate(members))
        self._member_index: dict[Seq, list[int]] = {}
        for i, law in enumerate(self.member_laws, 1):
            for s in law.items:
                self._member_index.setdefault(s, []).append(i)
        self.parse = lru_cache(maxsize=1 << 16)(self._parse)
        self._laws: dict[str, LawOfNature] = {}

    # grammar ---------------------------------------------------------------

    def _parse(self, d: str):
        tag, rest = d[:2], d[2:]
        family = self.TAGS.get(tag)
        if family is None:
            return None
        if family == "PATTERN":
            split = parse_self_delimited(rest)
            if split is None:
                return None
            m_bits, p_bits = split
            pid = natural_from_bits(p_bits)
            if pid not in PREDICATE_BY_ID:
                return None
            return ("PATTERN", natural_from_bits(m_bits), pid)
        n = natural_from_bits(rest)
        if family == "MEMBER" and n > len(self.member_laws):
            return None
        return (family, n)

    @staticmethod
    def describe_len(m: int) -> str:
        return "00" + natural_bits(m)

    @staticmethod
    def describe_div(k: int) -> str:
        return "01" + natural_bits(k)

    @staticmethod
    def describe_pattern(m: int, pid: int) -> str:
        return "10" + self_delimit(natural_bits(m)) + natural_bits(pid)

    @staticmethod
    def describe_member(i: int) -> str:
        return "11" + natural_bits(i)

    # decoding --------------------------------------------------------------

    def decode(self, d: str):
        """A law, or a prediction system for DIV descriptions."""
        parsed = self.parse(d)
        if parsed is not None and parsed[0] == "DIV":
            return DivisibilitySystem(self.space, parsed[1])
        return self.decode_law(d)

    def decode_law(self, d: str) -> LawOfNature:
        law = self._laws.get(d)
        if law is not None:
            return law
        parsed = self.parse(d)
        if parsed is None or parsed[0] == "DIV":
            law = VACUOUS
        elif parsed[0] == "LEN":
            from .laws import LengthLaw

            law = LengthLaw(self.space, parsed[1])
        elif parsed[0] == "PATTERN":
            law = FirstHitLaw(self.space, PREDICATE_BY_ID[parsed[2]], parsed[1])
        else:
            law = self.member_laws[parsed[1] - 1]
        if len(self._laws) < 1 << 16:
            self._laws[d] = law
        return law

    def decode_system(self, d: str) -> PredictionSystem:
        obj = self.decode(d)
        return obj if isinstance(obj, PredictionSystem) else ConstantSystem(obj)

    def in_domain(self, d: str) -> bool:
        parsed = self.parse(d)
        return parsed is not None and parsed[0] != "DIV"

    def in_system_domain(self, d: str) -> bool:
        return self.parse(d) is not None

    # containment oracle ------------------------------------------------------

    def descriptions_containing(self, s: Seq) -> list[str]:
        if not s:
            return [self.describe_member(i) for i in self._member_index.get(s, ())]
        out = [self.describe_len(len(s))]
        for p in PREDICATES:
            before = p.initial
            for o in s[:-1]:
                before = p.update(before, o)
            after = p.update(before, s[-1])
            if after[0] > before[0]:
                out.append(self.describe_pattern(after[0], p.pid))
        out.extend(self.describe_member(i) for i in self._member_index.get(s, ()))
        return out

    def tracker(self) -> "CatalogueTracker":
        return CatalogueTracker(self)


def pattern_description_length(m: int, pid: int) -> int:
    return 2 + self_delimited_length(m.bit_length() - 1) + pid.bit_length() - 1


class CatalogueTracker:
    """Shortest catalogue description of each prefix along a path, incrementally.

    ``step`` appends an observation; ``best()`` is the shortest description
    length of a law containing the current prefix (``None`` if there is none);
    ``peek(obs)`` is the same for the one-step extension without moving.
    """

    def __init__(self, language: CatalogueLanguage):
        self.language = language
        self.length = 0
        self.states = [p.initial for p in PREDICATES]
        self._hits: list[int | None] = [None] * len(PREDICATES)
        trie: dict = {}
        for s, idx in language._member_index.items():
            node = trie
            for o in s:
                node = node.setdefault(o, {})
            node[None] = min(idx)
        self._node = trie

    def _score(self, length, hits, node) -> int | None:
        best = None
        if length:
            best = 1 + length.bit_length()
        for p, m in zip(PREDICATES, hits):
            if m is not None:
                cand = pattern_description_length(m, p.pid)
                best = cand if best is None else min(best, cand)
        if node is not None and None in node:
            cand = 1 + node[None].bit_length()
            best = cand if best is None else min(best, cand)
        return best

    def _advance(self, o: Observation):
        states, hits = [], []
        for p, st in zip(PREDICATES, self.states):
            new = p.update(st, o)
            states.append(new)
            hits.append(new[0] if new[0] > st[0] else None)
        node = self._node.get(o) if self._node is not None else None
        return states, hits, node

    def step(self, o: Observation) -> None:
        self.states, self._hits, self._node = self._advance(o)
        self.length += 1

    def best(self) -> int | None:
        return self._score(self.length, self._hits, self._node)

    def peek(self, o: Observation) -> int | None:
        _, hits, node = self._advance(o)
        return self._score(self.length + 1, hits, node)


class PrefixFreeLanguage(DescriptionLanguage):
    """``self_delimit(d)`` describes what ``d`` describes in the plain language."""

    def __init__(self, plain: DescriptionLanguage):
        self.plain = plain
        self.space = plain.space

    def unwrap(self, D: str) -> str | None:
        split = parse_self_delimited(D)
        if split is None or split[1]:
            return None
        return split[0]

    def decode_law(self, D):
        d = self.unwrap(D)
        return VACUOUS if d is None else self.plain.decode_law(d)

    def decode_system(self, D):
        d = self.unwrap(D)
        if d is None:
            return SequenceSystem((), "vacuous")
        return self.plain.decode_system(d)

    def decode(self, D):
        d = self.unwrap(D)
        return VACUOUS if d is None else self.plain.decode(d)

    def in_domain(self, D):
        d = self.unwrap(D)
        return d is not None and self.plain.in_domain(d)

    def in_system_domain(self, D):
        d = self.unwrap(D)
        if d is None:
            return False
        check = getattr(self.plain, "in_system_domain", self.plain.in_domain)
        return check(d)

    def descriptions_containing(self, s):
        return [self_delimit(d) for d in self.plain.descriptions_containing(s)]


class MergedLanguage(DescriptionLanguage):
    """``1^k 0 d`` describes what ``d`` describes in the ``k``-th language.

    The ``k``-th language pays an overhead of ``k + 1`` bits.
    """

    def __init__(self, languages: Sequence[DescriptionLanguage]):
        if not languages:
            raise ValueError("need at least one language")
        self.languages = tuple(languages)
        self.space = languages[0].space

    def overhead(self, k: int) -> int:
        return k + 1

    def split(self, d: str) -> tuple[int, str] | None:
        k = len(d) - len(d.lstrip("1"))
        if k == 0 or k > len(self.languages) or len(d) == k:
            return None
        return k, d[k + 1 :]

    def decode_law(self, d):
        split = self.split(d)
        return VACUOUS if split is None else self.languages[split[0] - 1].decode_law(split[1])

    def decode_system(self, d):
        split = self.split(d)
        if split is None:
            return SequenceSystem((), "vacuous")
        return self.languages[split[0] - 1].decode_system(split[1])

    def descriptions_containing(self, s):
        out = []
        for k, lang in enumerate(self.languages, 1):
            out.extend("1" * k + "0" + d for d in lang.descriptions_containing(s))
        return out


class TableLanguage(DescriptionLanguage):
    """A finite table of descriptions; everything else is vacuous."""

    def __init__(self, space: ObjectSpace, table: dict[str, LawOfNature]):
        self.space = space
        self.table = dict(table)
        self._index: dict[Seq, list[str]] = {}
        for d, law in self.table.items():
            for s in law.members(10**9):
                self._index.setdefault(s, []).append(d)

    def decode_law(self, d):
        return self.table.get(d, VACUOUS)

    def descriptions_containing(self, s):
        return list(self._index.get(s, ()))
