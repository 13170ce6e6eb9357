"""Observations, finite data sequences, situations and streams.

A finite data sequence is a plain tuple of :class:`Observation` values, so
sequences are hashable, immutable and cheap to slice.  Objects are interned
as indices into an :class:`ObjectSpace`; the canonical order on observations
is ``(object index, label)`` lexicographic.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, Iterator, NamedTuple, Sequence

import numpy as np

LABELS = (0, 1)


class Observation(NamedTuple):
    x: int
    y: int


#: A finite data sequence; ``()`` is the empty sequence.
Seq = tuple

EMPTY: Seq = ()


class StreamExhausted(IndexError):
    """A file-backed stream has fewer observations than requested."""


@dataclass(frozen=True)
class ObjectSpace:
    objects: tuple[str, ...] = ("0", "1")

    def __post_init__(self):
        objects = tuple(self.objects)
        object.__setattr__(self, "objects", objects)
        if not objects:
            raise ValueError("object space must be non-empty")
        if len(set(objects)) != len(objects):
            raise ValueError(f"duplicate objects in {objects!r}")
        for obj in objects:
            if not obj or set(obj) - {"0", "1"}:
                raise ValueError(f"object {obj!r} is not a binary string")

    @property
    def arity(self) -> int:
        return len(self.objects)

    @property
    def alphabet_size(self) -> int:
        """Number of distinct observations, ``|X| * 2``."""
        return 2 * len(self.objects)

    def index(self, obj: str) -> int:
        try:
            return self.objects.index(obj)
        except ValueError:
            raise ValueError(f"object {obj!r} not in {self.objects!r}") from None

    def observations(self) -> list[Observation]:
        """All observations in canonical order."""
        return [Observation(x, y) for x in range(self.arity) for y in LABELS]

    def check(self, obs: Observation) -> Observation:
        if not (0 <= obs.x < self.arity) or obs.y not in LABELS:
            raise ValueError(f"{obs!r} is not an observation over {self.objects!r}")
        return obs

    def symbol(self, obs: Observation) -> int:
        return 2 * obs.x + obs.y

    def sequences(self, length: int) -> Iterator[Seq]:
        """All sequences of exactly ``length`` observations, lexicographically."""
        alphabet = self.observations()
        if length == 0:
            yield EMPTY
            return
        for head in self.sequences(length - 1):
            for obs in alphabet:
                yield head + (obs,)

    def sequences_up_to(self, max_length: int) -> Iterator[Seq]:
        """All sequences of length ``<= max_length`` in (length, lex) order."""
        for length in range(max_length + 1):
            yield from self.sequences(length)

    def global_index(self, seq: Seq) -> int:
        """Position of ``seq`` in the (length, lex) order of all sequences."""
        base = self.alphabet_size
        offset = (base ** len(seq) - 1) // (base - 1)
        lex = 0
        for obs in seq:
            lex = lex * base + self.symbol(obs)
        return offset + lex

    def render(self, seq: Seq) -> str:
        return " ".join(f"({self.objects[o.x]},{o.y})" for o in seq) or "□"


BINARY = ObjectSpace(("0", "1"))
SINGLETON = ObjectSpace(("0",))


def seq(*pairs: tuple[int, int]) -> Seq:
    """Build a sequence from ``(x, y)`` pairs: ``seq((0, 1), (1, 0))``."""
    return tuple(Observation(int(x), int(y)) for x, y in pairs)


def is_prefix(a: Seq, b: Seq) -> bool:
    return len(a) <= len(b) and b[: len(a)] == a


def is_strict_prefix(a: Seq, b: Seq) -> bool:
    return len(a) < len(b) and b[: len(a)] == a


def comparable(a: Seq, b: Seq) -> bool:
    return is_prefix(a, b) or is_prefix(b, a)


def extend(history: Seq, x: int, y: int) -> Seq:
    return history + (Observation(x, y),)


class Situation(NamedTuple):
    history: Seq
    next_object: int

    def extend(self, y: int) -> Seq:
        return extend(self.history, self.next_object, y)

    @classmethod
    def before(cls, sequence: Seq) -> "Situation":
        """The situation in which the last label of ``sequence`` was predicted."""
        if not sequence:
            raise ValueError("the empty sequence has no last observation")
        return cls(sequence[:-1], sequence[-1].x)


class Stream:
    """A prefix-consistent source of observations, read by a single owner.

    ``observation(i)`` is 1-based.  Observations are cached as they are
    produced, so reading ``prefix(5)`` and truncating to 3 gives ``prefix(3)``.
    """

    def __init__(self, space: ObjectSpace, name: str = "stream"):
        self.space = space
        self.name = name
        self._cache: list[Observation] = []
        self.position = 1

    def _produce(self, count: int) -> list[Observation]:
        raise NotImplementedError

    def _fill(self, length: int) -> None:
        while len(self._cache) < length:
            chunk = self._produce(length - len(self._cache))
            if not chunk:
                raise StreamExhausted(
                    f"{self.name}: requested {length} observations, "
                    f"source has {len(self._cache)}"
                )
            self._cache.extend(chunk)

    def observation(self, i: int) -> Observation:
        if i < 1:
            raise IndexError("observations are numbered from 1")
        self._fill(i)
        return self._cache[i - 1]

    def prefix(self, length: int) -> Seq:
        if length < 0:
            raise ValueError("prefix length must be non-negative")
        self._fill(length)
        return tuple(self._cache[:length])

    def __iter__(self) -> Iterator[Observation]:
        i = 1
        while True:
            try:
                yield self.observation(i)
            except StreamExhausted:
                return
            i += 1

    def read(self) -> Observation:
        """Read the observation at the cursor and advance it."""
        obs = self.observation(self.position)
        self.position += 1
        return obs

    # constructors ---------------------------------------------------------

    @classmethod
    def from_function(cls, space: ObjectSpace, fn: Callable[[int], Observation], name="closed-form"):
        return _FunctionStream(space, fn, name)

    @classmethod
    def constant(cls, space: ObjectSpace, x: int = 0, y: int = 0) -> "Stream":
        obs = space.check(Observation(x, y))
        return _FunctionStream(space, lambda i: obs, f"constant({x},{y})")

    @classmethod
    def periodic(cls, space: ObjectSpace, pattern: Sequence[tuple[int, int]]) -> "Stream":
        block = [space.check(Observation(*p)) for p in pattern]
        if not block:
            raise ValueError("periodic pattern must be non-empty")
        return _FunctionStream(space, lambda i: block[(i - 1) % len(block)], f"periodic({len(block)})")

    @classmethod
    def shen(cls, space: ObjectSpace, n: int, x: int = 0, a: int = 0, b: int = 1) -> "Stream":
        """``n`` copies of ``(x, a)``, one ``(x, b)``, then ``(x, a)`` forever."""
        A, B = space.check(Observation(x, a)), space.check(Observation(x, b))
        return _FunctionStream(space, lambda i: B if i == n + 1 else A, f"shen({n})")

    @classmethod
    def adversarial_divisibility(cls, space: ObjectSpace, k: int) -> "Stream":
        """Label 1 exactly at times divisible by ``2**(k-1)``, object 0 throughout."""
        step = 2 ** (k - 1)
        return _FunctionStream(
            space, lambda i: Observation(0, int(i % step == 0)), f"adversarial-divisibility({k})"
        )

    @classmethod
    def iid(cls, space: ObjectSpace, seed: int, p: float | Sequence[float] = 0.5) -> "Stream":
        return IIDStream(space, seed, p)

    @classmethod
    def from_file(cls, space: ObjectSpace, path: str | Path) -> "Stream":
        return FileStream(space, path)


class _FunctionStream(Stream):
    def __init__(self, space, fn, name):
        super().__init__(space, name)
        self._fn = fn

    def _produce(self, count):
        start = len(self._cache) + 1
        return [self._fn(i) for i in range(start, start + count)]


class IIDStream(Stream):
    """Seeded IID observations.

    Generator: numpy ``PCG64`` seeded with ``seed``.  Observations are drawn in
    blocks of 1024; per block, objects come from ``integers(0, |X|)`` and then
    labels from ``random() < p[x]``.  ``p`` is the probability of label 1,
    either one value or one per object.
    """

    BLOCK = 1024

    def __init__(self, space: ObjectSpace, seed: int, p: float | Sequence[float] = 0.5):
        super().__init__(space, f"iid(seed={seed})")
        probs = [p] * space.arity if np.isscalar(p) else list(p)
        if len(probs) != space.arity or not all(0.0 <= q <= 1.0 for q in probs):
            raise ValueError(f"bad label probabilities {p!r}")
        self.seed = seed
        self.probs = np.asarray(probs, dtype=float)
        self._rng = np.random.Generator(np.random.PCG64(seed))

    def _produce(self, count):
        out = []
        while len(out) < count:
            xs = self._rng.integers(0, self.space.arity, self.BLOCK)
            us = self._rng.random(self.BLOCK)
            ys = us < self.probs[xs]
            out.extend(Observation(int(x), int(y)) for x, y in zip(xs, ys))
        return out


class FileStream(Stream):
    """One JSON record per line: ``{"x": "<binary string>", "y": 0|1}``."""

    def __init__(self, space: ObjectSpace, path: str | Path):
        super().__init__(space, str(path))
        self.path = Path(path)
        self._loaded = False

    def _produce(self, count):
        if self._loaded:
            return []
        self._loaded = True
        out = []
        with self.path.open() as fh:
            for lineno, line in enumerate(fh, 1):
                if not line.strip():
                    continue
                try:
                    record = json.loads(line)
                    obs = Observation(self.space.index(str(record["x"])), int(record["y"]))
                    self.space.check(obs)
                except (ValueError, KeyError, TypeError) as exc:
                    raise ValueError(f"{self.path}:{lineno}: {exc}") from None
                out.append(obs)
        return out


def write_stream_file(path: str | Path, space: ObjectSpace, observations: Iterable[Observation]) -> None:
    with Path(path).open("w") as fh:
        for obs in observations:
            fh.write(json.dumps({"x": space.objects[obs.x], "y": obs.y}) + "\n")
