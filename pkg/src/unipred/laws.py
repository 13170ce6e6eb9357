"""Laws of nature and (weak or strong) prediction systems.

Recursive enumerability is modelled with step budgets.  A budget is a number
of emission attempts, or ``None`` for "run to completion".

* Catalogue laws scan all finite data sequences in (length, lex) order and
  emit the members; one step tests one candidate, so a member ``σ`` is
  emitted within budget ``b`` iff ``global_index(σ) < b``.
* Explicit and user-enumerated laws spend one step per listed item.
* A prediction system dovetails its components: at stage ``t = 1, 2, ...`` it
  gives one step to each of ``L_1 .. L_t`` in turn.  :func:`dovetail_share`
  is the number of steps component ``n`` has received after ``b`` steps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Iterator

from .core import ObjectSpace, Seq, Situation


class PrefixFreeViolation(ValueError):
    """Two comparable sequences were emitted by one law."""

    def __init__(self, first: Seq, second: Seq, law: str = "law"):
        self.pair = (first, second)
        super().__init__(f"{law} emitted comparable sequences {first!r} and {second!r}")


class CertificateExceeded(RuntimeError):
    pass


class _NotAttained:
    """The attained level ``min ∅ = ∞`` (at the budget used)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NotAttained"

    def __reduce__(self):
        return (_NotAttained, ())


NotAttained = _NotAttained()


def dovetail_share(n: int, budget: int | None) -> int | None:
    """Steps received by component ``n`` after ``budget`` dovetailed steps."""
    if budget is None:
        return None
    if budget < 0:
        raise ValueError("budget must be non-negative")
    stages = (math.isqrt(8 * budget + 1) - 1) // 2  # largest T with T(T+1)/2 <= budget
    rest = budget - stages * (stages + 1) // 2
    return max(0, stages - n + 1) + (1 if n <= rest else 0)


def dovetail_active(budget: int) -> int:
    """Number of components that have received at least one step."""
    stages = (math.isqrt(8 * budget + 1) - 1) // 2
    rest = budget - stages * (stages + 1) // 2
    return stages + (1 if rest else 0)


def check_prefix_free(sequences: Iterable[Seq], law: str = "law") -> None:
    """Raise :class:`PrefixFreeViolation` if two sequences are comparable."""
    sequences = list(sequences)
    if len(sequences) < 2:
        return
    END = object()  # marks a member in the trie
    root: dict = {}
    for s in sequences:
        s = tuple(s)
        node = root
        for i, o in enumerate(s):
            if END in node:
                raise PrefixFreeViolation(s[:i], s, law)
            node = node.setdefault(o, {})
        if END in node:
            continue  # duplicate
        if node:
            raise PrefixFreeViolation(s, s + _any_extension(node, END), law)
        node[END] = True


def _any_extension(node: dict, end) -> Seq:
    path = []
    while end not in node:
        o = next(iter(node))
        path.append(o)
        node = node[o]
    return tuple(path)


# ---------------------------------------------------------------------------
# laws


class LawOfNature:
    """A budget-enumerable prefix-free set of finite data sequences."""

    #: canonical identity; equal keys denote equal sets
    key: Hashable = None

    def contains(self, s: Seq, budget: int | None = None) -> bool:
        raise NotImplementedError

    def enumerate(self, budget: int | None) -> Iterator[Seq]:
        raise NotImplementedError

    def emitted(self, budget: int | None) -> frozenset:
        return frozenset(self.enumerate(budget))

    def steps(self) -> Iterator[Seq | None]:
        """One item per enumeration step: the sequence emitted, or ``None``."""
        raise NotImplementedError

    def members(self, max_length: int) -> Iterator[Seq]:
        """Members of length ``<= max_length`` (may be expensive)."""
        raise NotImplementedError

    @property
    def is_vacuous(self) -> bool:
        return False

    def __eq__(self, other):
        if self.key is None or not isinstance(other, LawOfNature):
            return self is other
        return self.key == other.key

    def __hash__(self):
        return hash(self.key) if self.key is not None else id(self)

    def __repr__(self):
        return f"{type(self).__name__}{self.key!r}"


class VacuousLaw(LawOfNature):
    key = ("VACUOUS",)

    def contains(self, s, budget=None):
        return False

    def enumerate(self, budget):
        return iter(())

    def steps(self):
        while True:
            yield None

    def members(self, max_length):
        return iter(())

    @property
    def is_vacuous(self):
        return True


VACUOUS = VacuousLaw()


class ScanLaw(LawOfNature):
    """A decidable law enumerated by scanning all sequences in (length, lex) order."""

    def __init__(self, space: ObjectSpace):
        self.space = space

    def is_member(self, s: Seq) -> bool:
        raise NotImplementedError

    def contains(self, s, budget=None):
        if budget is not None and self.space.global_index(s) >= budget:
            return False
        return self.is_member(s)

    def enumerate(self, budget):
        if budget is None:
            raise ValueError("unbounded enumeration of an infinite scan; use members()")
        for i, s in enumerate(self.space.sequences_up_to(_length_for_index(self.space, budget))):
            if i >= budget:
                return
            if self.is_member(s):
                yield s

    def steps(self):
        length = 0
        while True:
            for s in self.space.sequences(length):
                yield s if self.is_member(s) else None
            length += 1

    def members(self, max_length):
        return (s for s in self.space.sequences_up_to(max_length) if self.is_member(s))


def _length_for_index(space: ObjectSpace, budget: int) -> int:
    length, count, base = 0, 1, space.alphabet_size
    while count < budget:
        length += 1
        count += base**length
    return length


class LengthLaw(ScanLaw):
    """All sequences of one fixed length, ``(X × 2)^m``."""

    def __init__(self, space: ObjectSpace, length: int):
        if length < 0:
            raise ValueError("length must be non-negative")
        super().__init__(space)
        self.length = length
        self.key = ("LEN", space.arity, length)

    def is_member(self, s):
        return len(s) == self.length

    def enumerate(self, budget):
        start = self.space.global_index((self.space.observations()[0],) * self.length) if self.length else 0
        stop = start + self.space.alphabet_size**self.length
        if budget is not None:
            stop = min(stop, budget)
        if stop <= start:
            return
        for i, s in enumerate(self.space.sequences(self.length)):
            if start + i >= stop:
                return
            yield s

    def members(self, max_length):
        if self.length <= max_length:
            yield from self.space.sequences(self.length)


class FiniteLaw(LawOfNature):
    """An explicitly listed antichain; step ``i`` emits the ``i``-th item."""

    def __init__(self, items: Iterable[Seq], name: str = "finite"):
        listed = list(dict.fromkeys(tuple(s) for s in items))
        check_prefix_free(listed, name)
        self.items = tuple(listed)
        self._rank = {s: i for i, s in enumerate(self.items)}
        self.key = ("FINITE", frozenset(self.items))
        self.name = name

    def contains(self, s, budget=None):
        rank = self._rank.get(s)
        return rank is not None and (budget is None or rank < budget)

    def enumerate(self, budget):
        return iter(self.items if budget is None else self.items[:budget])

    def steps(self):
        yield from self.items
        while True:
            yield None

    def members(self, max_length):
        return (s for s in self.items if len(s) <= max_length)

    @property
    def is_vacuous(self):
        return not self.items

    def __repr__(self):
        return f"FiniteLaw({self.name}, {len(self.items)} items)"


class EnumeratedLaw(LawOfNature):
    """A law given by a user enumerator; prefix-freeness is checked on emission.

    ``factory()`` must return a fresh iterator of sequences.  Unbounded
    membership queries run the enumerator to exhaustion, so they only
    terminate for finite enumerators.
    """

    def __init__(self, factory: Callable[[], Iterable[Seq]], name: str = "user"):
        self._factory = factory
        self._iter = None
        self._emitted: list[Seq] = []
        self._members: set[Seq] = set()
        self._below: dict[Seq, Seq] = {}
        self._rank: dict[Seq, int] = {}
        self._done = False
        self.name = name

    def _advance_to(self, steps: int | None) -> None:
        if self._iter is None:
            self._iter = iter(self._factory())
        while not self._done and (steps is None or len(self._emitted) < steps):
            try:
                s = tuple(next(self._iter))
            except StopIteration:
                self._done = True
                return
            if s in self._members or s in self._below:
                raise PrefixFreeViolation(self._below.get(s, s), s, self.name)
            for i in range(len(s)):
                if s[:i] in self._members:
                    raise PrefixFreeViolation(s[:i], s, self.name)
            self._members.add(s)
            for i in range(len(s)):
                self._below.setdefault(s[:i], s)
            self._rank[s] = len(self._emitted)
            self._emitted.append(s)

    def contains(self, s, budget=None):
        self._advance_to(budget)
        rank = self._rank.get(s)
        return rank is not None and (budget is None or rank < budget)

    def steps(self):
        i = 0
        while True:
            self._advance_to(i + 1)
            yield self._emitted[i] if i < len(self._emitted) else None
            i += 1

    def enumerate(self, budget):
        self._advance_to(budget)
        return iter(self._emitted if budget is None else self._emitted[:budget])

    def members(self, max_length):
        self._advance_to(None)
        return (s for s in self._emitted if len(s) <= max_length)

    def __repr__(self):
        return f"EnumeratedLaw({self.name})"


# ---------------------------------------------------------------------------
# prediction systems


class PredictionSystem:
    """A jointly enumerable sequence ``L_1, L_2, ...`` of laws of nature.

    Subclasses provide :meth:`component`; overriding :meth:`min_index` with a
    direct oracle lets unbounded queries avoid scanning components.
    """

    #: components scanned by the generic :meth:`min_index` when unbounded
    scan_limit = 1024

    def component(self, n: int) -> LawOfNature:
        raise NotImplementedError

    def share(self, n: int, budget: int | None) -> int | None:
        return dovetail_share(n, budget)

    def active(self, budget: int | None) -> int:
        """Components that may emit something at this budget."""
        return self.scan_limit if budget is None else dovetail_active(budget)

    def contains(self, n: int, s: Seq, budget: int | None = None) -> bool:
        return self.component(n).contains(s, self.share(n, budget))

    def min_index(self, s: Seq, budget: int | None = None):
        for n in range(1, self.active(budget) + 1):
            if self.contains(n, s, budget):
                return n
        return NotAttained

    def emitted(self, n: int, budget: int) -> frozenset:
        return self.component(n).emitted(self.share(n, budget))

    def enumerate_pairs(self, budget: int) -> Iterator[tuple[int, Seq]]:
        """The joint enumeration: dovetailed round-robin over components."""
        runners: dict[int, Iterator[Seq | None]] = {}
        spent, stage = 0, 0
        while True:
            stage += 1
            for n in range(1, stage + 1):
                if spent >= budget:
                    return
                spent += 1
                if n not in runners:
                    runners[n] = self.component(n).steps()
                s = next(runners[n], None)
                if s is not None:
                    yield n, s


class ConstantSystem(PredictionSystem):
    """``(L, L, ...)``: a law viewed as a prediction system."""

    def __init__(self, law: LawOfNature):
        self.law = law

    def component(self, n):
        return self.law

    def min_index(self, s, budget=None):
        return 1 if self.contains(1, s, budget) else NotAttained

    def __repr__(self):
        return f"ConstantSystem({self.law!r})"


class SequenceSystem(PredictionSystem):
    """Finitely many given laws followed by vacuous ones."""

    def __init__(self, laws: Iterable[LawOfNature], name: str = "sequence"):
        self.laws = tuple(laws)
        self.name = name

    def component(self, n):
        if n < 1:
            raise IndexError("components are numbered from 1")
        return self.laws[n - 1] if n <= len(self.laws) else VACUOUS

    def active(self, budget):
        return len(self.laws) if budget is None else min(len(self.laws), dovetail_active(budget))

    def __repr__(self):
        return f"SequenceSystem({self.name}, {len(self.laws)} laws)"


class FunctionSystem(PredictionSystem):
    """Components given by a function ``n -> law`` with an optional index oracle.

    ``index_oracle(s)`` must return the increasing list of ``n`` whose law
    contains ``s`` (ignoring budgets); it is used for unbounded queries.
    """

    def __init__(self, fn: Callable[[int], LawOfNature], index_oracle=None, name="function"):
        self._fn = fn
        self._oracle = index_oracle
        self.name = name

    def component(self, n):
        return self._fn(n)

    def min_index(self, s, budget=None):
        if self._oracle is None:
            return super().min_index(s, budget)
        for n in self._oracle(s):
            if self.contains(n, s, budget):
                return n
        return NotAttained

    def __repr__(self):
        return f"FunctionSystem({self.name})"


class DivisibilitySystem(PredictionSystem):
    """Component ``j`` is ``(X × 2)^((2j-1)·2^(k-1))``.

    Its limit is the set of sequences whose length is divisible by
    ``2^(k-1)`` but not by ``2^k``.  Each slice refines the next.
    """

    def __init__(self, space: ObjectSpace, k: int):
        if k < 1:
            raise ValueError("k must be positive")
        self.space = space
        self.k = k
        self.key = ("DIV", space.arity, k)

    def slice_length(self, j: int) -> int:
        return (2 * j - 1) * 2 ** (self.k - 1)

    def component(self, n):
        if n < 1:
            raise IndexError("components are numbered from 1")
        return LengthLaw(self.space, self.slice_length(n))

    def index_of_length(self, length: int) -> int | None:
        unit = 2 ** (self.k - 1)
        if length == 0 or length % unit or (length // unit) % 2 == 0:
            return None
        return (length // unit + 1) // 2

    def min_index(self, s, budget=None):
        j = self.index_of_length(len(s))
        if j is None or not self.contains(j, s, budget):
            return NotAttained
        return j

    def __repr__(self):
        return f"DivisibilitySystem(k={self.k})"


class EnumeratedSystem(PredictionSystem):
    """A system given by a user joint enumerator of ``(n, σ)`` pairs.

    ``factory()`` returns a fresh iterator of pairs; component ``n`` is the
    law of the pairs with that index, in emission order.  Budgets count joint
    emissions, so every component gets the same budget.
    """

    def __init__(self, factory: Callable[[], Iterable[tuple[int, Seq]]], name="user-system"):
        self._factory = factory
        self._cache: list[tuple[int, Seq]] | None = None
        self.name = name
        self._components: dict[int, FiniteLaw] = {}

    def _pairs(self):
        if self._cache is None:
            self._cache = [(int(n), tuple(s)) for n, s in self._factory()]
            self._rank: dict[tuple[int, Seq], int] = {}
            self._by_seq: dict[Seq, list[tuple[int, int]]] = {}
            for i, (n, s) in enumerate(self._cache):
                if n < 1:
                    raise ValueError(f"{self.name}: component index {n} < 1")
                self._rank.setdefault((n, s), i)
                self._by_seq.setdefault(s, []).append((n, i))
            groups: dict[int, list[Seq]] = {}
            for n, s in self._cache:
                groups.setdefault(n, []).append(s)
            for n, items in groups.items():
                check_prefix_free(items, f"{self.name}[{n}]")
        return self._cache

    def share(self, n, budget):
        return budget

    def component(self, n):
        if n not in self._components:
            items = [s for m, s in self._pairs() if m == n]
            self._components[n] = FiniteLaw(items, f"{self.name}[{n}]")
        return self._components[n]

    def contains(self, n, s, budget=None):
        self._pairs()
        rank = self._rank.get((n, s))
        return rank is not None and (budget is None or rank < budget)

    def min_index(self, s, budget=None):
        self._pairs()
        found = [n for n, i in self._by_seq.get(s, ()) if budget is None or i < budget]
        return min(found) if found else NotAttained

    def active(self, budget):
        pairs = self._pairs()
        return max((n for n, _ in pairs), default=0)

    def emitted(self, n, budget):
        pairs = self._pairs() if budget is None else self._pairs()[:budget]
        return frozenset(s for m, s in pairs if m == n)

    def enumerate_pairs(self, budget):
        return iter(self._pairs()[:budget])

    def __repr__(self):
        return f"EnumeratedSystem({self.name})"


# ---------------------------------------------------------------------------
# operations


def enumerate_law(law: LawOfNature, budget: int | None) -> frozenset:
    return law.emitted(budget)


def prediction_set_law(law: LawOfNature, s: Situation, budget: int | None = None) -> frozenset:
    """Labels not prohibited by ``law`` in situation ``s``."""
    return frozenset(y for y in (0, 1) if not law.contains(s.extend(y), budget))


def n_part(system: PredictionSystem, N: int, budget: int) -> frozenset:
    """Union of the emitted sets of ``L_1 .. L_N``."""
    if N < 1:
        raise ValueError("N must be positive")
    out: set[Seq] = set()
    for n in range(1, N + 1):
        out |= system.emitted(n, budget)
    return frozenset(out)


def attained_level(system: PredictionSystem, s: Situation, y: int, budget: int | None = None):
    """Least ``n`` with ``(s, y)`` emitted by ``L_n``, or :data:`NotAttained`."""
    return system.min_index(s.extend(y), budget)


def prediction_set_system(system: PredictionSystem, s: Situation, N: int, budget: int | None = None) -> frozenset:
    """Labels not prohibited at level ``N``."""
    out = set()
    for y in (0, 1):
        level = attained_level(system, s, y, budget)
        if level is NotAttained or level > N:
            out.add(y)
    return frozenset(out)


def refines(L: LawOfNature, Lp: LawOfNature, budget: int) -> bool:
    """``L ⊏ Lp`` on the emitted sets: each member of ``Lp`` strictly extends one of ``L``."""
    earlier = L.emitted(budget)
    return all(any(s[:i] in earlier for i in range(len(s))) for s in Lp.emitted(budget))


@dataclass(frozen=True)
class StrongSystemCertificate:
    system: PredictionSystem
    budget: int
    max_index: int


def certify_strong(system: PredictionSystem, budget: int, max_index: int) -> StrongSystemCertificate:
    """Check ``L_n ⊏ L_{n+1}`` for ``n < max_index`` at component budget ``budget``."""
    for n in range(1, max_index):
        if not refines(system.component(n), system.component(n + 1), budget):
            raise ValueError(f"component {n} does not refine component {n + 1} at budget {budget}")
    return StrongSystemCertificate(system, budget, max_index)


def strong_prediction_set(cert: StrongSystemCertificate, s: Situation, budget: int) -> frozenset:
    """Labels whose continuation is in no component (components up to the certified index)."""
    if budget > cert.budget:
        raise CertificateExceeded(f"budget {budget} beyond certified {cert.budget}")
    out = set()
    for y in (0, 1):
        t = s.extend(y)
        if not any(cert.system.component(n).contains(t, budget) for n in range(1, cert.max_index + 1)):
            out.add(y)
    return frozenset(out)


def falsified_before(law: LawOfNature, s: Situation, budget: int | None = None) -> bool:
    """Whether some prefix of the history (including itself) is in ``law``."""
    h = s.history
    return any(law.contains(h[:i], budget) for i in range(len(h) + 1))
