"""Executable audits of the guarantees, shared by the CLI and the test-suite.

Each audit returns plain data: counts, measured constants and the list of
violations with their exact operands.  Nothing here asserts.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .coloring import ColorExhausted, color_classes, exact_coloring, is_antichain, max_chain, prefix_free_partition
from .complexity import (
    PLAIN,
    catalogue_description_length,
    is_known,
    prefix_from_plain,
    time_complexity,
    PathComplexity,
)
from .conformal import (
    CombinedSystem,
    LabelFrequency,
    NearestNeighbor,
    default_dominance_registry,
    dominance_experiment,
    validity_run,
)
from .core import BINARY, SINGLETON, ObjectSpace, Observation, Seq, Stream
from .languages import CatalogueLanguage, MergedLanguage, PrefixFreeLanguage, strings_up_to
from .laws import NotAttained, check_prefix_free
from .randomness import (
    ComplexityThresholdSystem,
    DeficiencyValue,
    DeltaSystem,
    ForcedSystem,
    LevelSystem,
    PredicateSystem,
    band_construction,
    coloring_language,
    delta_error_counts,
    density_violations,
    level_counts,
)
from .semimeasure import (
    ComplexitySemimeasure,
    GeometricSemimeasure,
    ShenSemimeasure,
    UniformInitialSegment,
    default_mixture,
    path_sum,
)
from .universal import (
    Undefined,
    UniversalSystem,
    build_universal,
    check_interleaving_containment,
    decode_index,
    default_registry,
    demonstrate_tightness,
    interleave_index,
    level_domination_holds,
)


def derive_seed(seed: int, *path: int) -> int:
    """Independent 63-bit seed for a sub-experiment, derived from the run seed."""
    return int(np.random.SeedSequence([seed, *path]).generate_state(1, np.uint64)[0] >> 1)


@dataclass
class Audit:
    name: str
    checks: int = 0
    violations: list = field(default_factory=list)
    records: list = field(default_factory=list)
    constants: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations


# ---------------------------------------------------------------------------
# interleaving


def audit_interleaving_arithmetic(max_k: int = 12, max_n: int = 1024, vacuity_limit: int = 4096) -> Audit:
    audit = Audit("interleaving-arithmetic")
    seen = set()
    for k in range(1, max_k + 1):
        for n in range(1, max_n + 1):
            audit.checks += 1
            index = interleave_index(k, n)
            if decode_index(index) != (k, n) or index in seen:
                audit.violations.append({"k": k, "n": n, "index": index})
            seen.add(index)
    for n in range(1, vacuity_limit + 1):
        audit.checks += 1
        if (decode_index(n) is Undefined) != ("0" not in bin(n)[2:]):
            audit.violations.append({"n": n})
    return audit


def containment_streams(space: ObjectSpace, seed: int) -> list[tuple[str, Stream]]:
    return [
        ("iid", Stream.iid(space, derive_seed(seed, 2, 0))),
        ("constant", Stream.constant(space)),
        ("periodic", Stream.periodic(space, [(0, 0), (space.arity - 1, 1), (0, 1)])),
        ("adversarial-divisibility", Stream.adversarial_divisibility(space, 2)),
    ]


def audit_containment(space: ObjectSpace = BINARY, seed: int = 0, max_length: int = 256, max_N: int = 32,
                      budgets: Sequence[int | None] = (0, 64, 4096, 2**20, None)) -> Audit:
    language = CatalogueLanguage(space)
    universal = build_universal(default_registry(language))
    audit = Audit("interleaving-containment")
    audit.constants = {"slack": universal.slack, "registry_c": universal.registry.constants()}
    for name, stream in containment_streams(space, seed):
        checks, violations = check_interleaving_containment(universal, stream, max_length, max_N, budgets)
        audit.checks += checks
        audit.violations.extend({"stream": name, **v.__dict__} for v in violations)
        dominated = 0
        for length in range(1, max_length + 1):
            s = stream.prefix(length)
            for k in range(1, len(universal.registry) + 1):
                held = level_domination_holds(universal, k, s)
                if held is False:
                    audit.violations.append({"stream": name, "k": k, "length": length, "kind": "level-domination"})
                dominated += held is not None
        audit.records.append({"stream": name, "checks": checks, "violations": len(violations),
                              "level_pairs": dominated})
    return audit


# ---------------------------------------------------------------------------
# mistake bound


def mistake_battery(space: ObjectSpace, seed: int, count: int = 100, length: int = 4096):
    """``(name, stream, language)`` triples: IID, closed-form and member-stress streams.

    The member-stress entries configure the catalogue with singleton laws
    ``{ω^(8i)}`` so that the predictor does make mistakes on them.
    """
    out = []
    closed = [
        ("constant", Stream.constant(space)),
        ("periodic-2", Stream.periodic(space, [(0, 0), (0, 1)])),
        ("periodic-3", Stream.periodic(space, [(0, 1), (space.arity - 1, 0), (0, 0)])),
        ("shen-7", Stream.shen(space, 7)),
        ("shen-100", Stream.shen(space, 100)),
        ("adversarial-divisibility-1", Stream.adversarial_divisibility(space, 1)),
        ("adversarial-divisibility-3", Stream.adversarial_divisibility(space, 3)),
        ("adversarial-divisibility-6", Stream.adversarial_divisibility(space, 6)),
    ]
    plain = CatalogueLanguage(space)
    for name, stream in closed:
        out.append((name, stream, plain))
    probabilities = [0.5, 0.9, 0.1, 0.99, (0.2, 0.8)]
    stress = max(0, (count - len(closed)) // 5)
    i = 0
    while len(out) < count - stress:
        p = probabilities[i % len(probabilities)]
        if isinstance(p, tuple) and space.arity != len(p):
            p = p[0]
        out.append((f"iid-{i}", Stream.iid(space, derive_seed(seed, 3, i), p), plain))
        i += 1
    j = 0
    while len(out) < count:
        stream = Stream.iid(space, derive_seed(seed, 4, j))
        members = [[stream.prefix(8 * t)] for t in range(1, length // 8 + 1)]
        out.append((f"member-stress-{j}", stream, CatalogueLanguage(space, members)))
        j += 1
    return out


def mistake_rows(counts: dict[int, list[int]], checkpoints: Iterable[int]) -> list[dict]:
    rows = []
    for m, series in counts.items():
        for l in checkpoints:
            e = series[l - 1]
            rows.append({"m": m, "l": l, "errors": e, "bound": Fraction(l, 2**m)})
    return rows


def checkpoints(length: int) -> list[int]:
    points = sorted({2**j for j in range(length.bit_length()) if 2**j <= length} | {length})
    return points


def audit_mistakes(streams, length: int = 4096, levels: Sequence[int] = range(9)) -> Audit:
    audit = Audit("mistake-bound")
    total_errors = 0
    for name, stream, language in streams:
        counts = delta_error_counts(stream, length, language, levels)
        for m, series in counts.items():
            for l, e in enumerate(series, 1):
                audit.checks += 1
                if not e * 2**m < l:
                    audit.violations.append({"stream": name, "m": m, "l": l, "errors": e, "bound": Fraction(l, 2**m)})
        total_errors += sum(series[-1] for series in counts.values())
        audit.records.append({"stream": name, **{f"errors_m{m}": counts[m][-1] for m in counts}})
    audit.constants["total_final_errors"] = total_errors
    return audit


# ---------------------------------------------------------------------------
# density and combination


def naive_forced_member(base: LevelSystem, m: int, sigma: Seq, _memo=None) -> bool:
    """The forcing rule evaluated straight from its recursive definition."""
    memo = {} if _memo is None else _memo

    def member(level, s):
        if level < 0:
            return True
        if not s:
            return False
        key = (level, s)
        if key not in memo:
            ok = member(level - 1, s) and base.member(level, s)
            if ok:
                count = sum(1 for i in range(1, len(s)) if member(level, s[:i]))
                ok = (count + 1) * 2**level <= len(s)
            memo[key] = ok
        return memo[key]

    return member(m, sigma)


def density_registry(space: ObjectSpace, language: CatalogueLanguage, max_level: int = 10) -> list[LevelSystem]:
    everything = PredicateSystem(lambda m, s: True, "everything")
    return [
        ForcedSystem(everything, max_level, "forced(everything)"),
        ForcedSystem(default_dominance_registry(space, language, max_level)[0].base, max_level),
        ForcedSystem(DeltaSystem(language), max_level, "forced(delta)"),
        DeltaSystem(language),
    ]


def audit_density(space: ObjectSpace = BINARY, seed: int = 0, paths: int = 20, length: int = 512,
                  levels: Sequence[int] = range(9), exhaustive_length: int = 8) -> Audit:
    """Density of forced systems on seeded paths (tracker recount and naive recount),
    exhaustive paths over a one-object space, and ``Λ^k_(m+k) ⊆ 𝒟_m``."""
    audit = Audit("density-and-combination")
    language = CatalogueLanguage(space)
    registry = density_registry(space, language, max(levels) + 2)
    combined = CombinedSystem(registry)
    streams = [(f"iid-{i}", Stream.iid(space, derive_seed(seed, 5, i), 0.5 if i % 2 else 0.85)) for i in range(paths)]
    streams.append(("constant", Stream.constant(space)))
    for name, stream in streams:
        for system in registry[:3]:
            counts = level_counts(system, stream, length, levels)
            for m, l, c in density_violations(counts):
                audit.violations.append({"stream": name, "system": system.name, "m": m, "l": l, "count": c})
            audit.checks += len(levels) * length
        # union containment along the path, through trackers
        trackers = [s.tracker() for s in registry]
        ct = combined.tracker()
        for l in range(1, length + 1):
            obs = stream.observation(l)
            for t in trackers:
                t.step(obs)
            ct.step(obs)
            for m in levels:
                for k, t in enumerate(trackers, 1):
                    audit.checks += 1
                    if t.includes(m + k) and not ct.includes(m):
                        audit.violations.append({"stream": name, "k": k, "m": m, "l": l, "kind": "combination"})
    # naive recount on a short prefix of one path
    stream = streams[0][1]
    memo: dict = {}
    forced_delta = registry[2]
    t = forced_delta.tracker()
    for l in range(1, 65):
        obs = stream.observation(l)
        t.step(obs)
        for m in range(4):
            audit.checks += 1
            if t.includes(m) != naive_forced_member(forced_delta.base, m, stream.prefix(l), memo):
                audit.violations.append({"kind": "naive-recount", "m": m, "l": l})
    # every path of the one-object universe up to exhaustive_length
    one = SINGLETON
    lang1 = CatalogueLanguage(one)
    forced_all = ForcedSystem(PredicateSystem(lambda m, s: True, "everything"), 6)
    forced_d = ForcedSystem(DeltaSystem(lang1), 6)
    for path in one.sequences(exhaustive_length):
        for system in (forced_all, forced_d):
            memo = {}
            for m in range(0, 5):
                count = 0
                for l in range(1, exhaustive_length + 1):
                    count += naive_forced_member(system.base, m, path[:l], memo)
                    audit.checks += 1
                    if count * 2**m > l:
                        audit.violations.append({"kind": "exhaustive", "path": path, "m": m, "l": l})
    return audit


def measure_band_factor(max_m: int = 3, max_length: int = 11) -> Audit:
    """Universal level reached by the band systems of ``D_m`` (forced ``everything``).

    The band system for level ``m`` sits at registry index ``m + 1``; a member
    ``σ`` with component index ``n`` lands at universal index
    ``interleave_index(m + 1, n)``.  The reported factor is the largest
    ``index · 2^m / |σ|`` per level, the quantity compared with ``c · m^2``.
    """
    audit = Audit("band-factor")
    everything = PredicateSystem(lambda m, s: True, "everything")
    forced = ForcedSystem(everything, max_m + 1)
    universe = [s for s in SINGLETON.sequences_up_to(max_length) if s]
    factors = {}
    for m in range(max_m + 1):
        bands = band_construction((s for s in universe if forced.member(m, s)), m)
        worst = Fraction(0)
        for s, n in bands.index.items():
            audit.checks += 1
            if len(s) > 1 and not bands.within_bound(s):
                audit.violations.append({"m": m, "length": len(s), "index": n})
            worst = max(worst, Fraction(interleave_index(m + 1, n) * 2**m, len(s)))
        factors[m] = worst
        audit.records.append({"m": m, "members": len(bands.index), "factor": worst,
                              "factor_over_m2": worst / m**2 if m else None})
    audit.constants = {"max_factor": max(factors.values())}
    return audit


# ---------------------------------------------------------------------------
# partition


def tree_nodes(branching: int, depth: int) -> list[tuple]:
    nodes = []
    for length in range(depth + 1):
        nodes.extend(itertools.product(range(branching), repeat=length))
    return nodes


def _check_partition(items: list[tuple], m: int, audit: Audit, exact: bool = True, orders: int = 0, rng=None):
    chain = max_chain(items)
    if chain > 2**m:
        return
    audit.checks += 1
    orderings = [items]
    for _ in range(orders):
        shuffled = list(items)
        rng.shuffle(shuffled)
        orderings.append(shuffled)
    for order in orderings:
        try:
            coloring = prefix_free_partition(order, 2**m)
        except ColorExhausted as exc:
            audit.violations.append({"items": items, "m": m, "error": str(exc)})
            continue
        used = len(set(coloring.values()))
        if used > 2**m or not all(is_antichain(c) for c in color_classes(coloring).values()):
            audit.violations.append({"items": items, "m": m, "used": used})
    if exact and items and exact_coloring(items, 2**m) is None:
        audit.violations.append({"items": items, "m": m, "kind": "oracle-infeasible"})


def audit_partition(exhaustive_shapes=((2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (4, 1)),
                    sampled_shapes=((4, 2), (3, 3), (4, 3)), samples: int = 2000, seed: int = 0,
                    levels: Sequence[int] = (0, 1, 2)) -> Audit:
    """Greedy partition versus an exhaustive coloring search on small trees.

    Shapes are ``(branching, depth)``.  Every subset is tried for the
    exhaustive shapes; the larger shapes are sampled with a seeded generator.
    """
    audit = Audit("partition")
    rng = random.Random(seed)
    for b, d in exhaustive_shapes:
        nodes = tree_nodes(b, d)
        n = len(nodes)
        for mask in range(1 << n):
            items = [nodes[i] for i in range(n) if mask >> i & 1]
            for m in levels:
                _check_partition(items, m, audit)
        audit.records.append({"branching": b, "depth": d, "nodes": n, "subsets": 1 << n, "mode": "exhaustive"})
    for b, d in sampled_shapes:
        nodes = tree_nodes(b, d)
        for _ in range(samples):
            density = rng.random()
            items = [s for s in nodes if rng.random() < density]
            for m in levels:
                _check_partition(items, m, audit, orders=1, rng=rng)
        audit.records.append({"branching": b, "depth": d, "nodes": len(nodes), "subsets": samples, "mode": "sampled"})
    return audit


# ---------------------------------------------------------------------------
# Kraft and path sums


def kraft_sum(language: PrefixFreeLanguage, max_length: int = 16) -> tuple[Fraction, list[str]]:
    check = getattr(language, "in_system_domain", language.in_domain)
    domain = [d for d in strings_up_to(max_length) if check(d)]
    return sum((Fraction(1, 2 ** len(d)) for d in domain), Fraction(0)), domain


def _dyadic_sum(exponents: Iterable[int]) -> Fraction:
    exps = list(exponents)
    if not exps:
        return Fraction(0)
    top = max(exps)
    return Fraction(sum(1 << (top - e) for e in exps), 1 << top)


def complexity_path_sum(path: Seq, language: CatalogueLanguage, depth: int = 64) -> Fraction:
    """``Σ_l 2^-𝒦(ω^l)`` along ``path`` (the empty prefix has no describing law)."""
    tracker = PathComplexity(language, depth)
    exps = []
    for o in path:
        c = tracker.step(o)
        if is_known(c):
            exps.append(prefix_from_plain(c))
    return _dyadic_sum(exps)


def mixture_path_sum(path: Seq, language: CatalogueLanguage, horizon: int = 64) -> Fraction:
    """``Σ_l 𝕄(ω^l)`` for the default mixture, summed component by component."""
    mixture = default_mixture(language, horizon)
    total = Fraction(0)
    for k, P in enumerate(mixture.components, 1):
        if isinstance(P, ComplexitySemimeasure):
            s = complexity_path_sum(path, language)
        elif isinstance(P, GeometricSemimeasure):
            s = _dyadic_sum(l + 1 for l in range(len(path) + 1))
        else:
            s = path_sum(P, path)
        total += mixture.weight(k) * s
    return total


def audit_path_sums(space: ObjectSpace = BINARY, seed: int = 0, paths: int = 1000, length: int = 512) -> Audit:
    audit = Audit("kraft-and-path-sums")
    language = CatalogueLanguage(space)
    pf = PrefixFreeLanguage(language)
    kraft, domain = kraft_sum(pf, 16)
    audit.checks += 1
    audit.constants["kraft_sum"] = kraft
    audit.constants["domain_size"] = len(domain)
    if kraft > 1:
        audit.violations.append({"kind": "kraft", "sum": kraft})
    try:
        check_prefix_free([tuple(d) for d in domain], "effective domain")
    except ValueError as exc:
        audit.violations.append({"kind": "domain-not-prefix-free", "error": str(exc)})
    worst_k = worst_m = Fraction(0)
    for i in range(paths):
        path = Stream.iid(space, derive_seed(seed, 6, i)).prefix(length)
        sk = complexity_path_sum(path, language)
        sm = mixture_path_sum(path, language)
        audit.checks += 2
        worst_k, worst_m = max(worst_k, sk), max(worst_m, sm)
        if sk > 1 or sm > 1:
            audit.violations.append({"path": i, "complexity_sum": sk, "mixture_sum": sm})
    # the Shen path is where the witness component contributes
    for n in (1, 5, 32):
        path = Stream.shen(space, n).prefix(length)
        sm = mixture_path_sum(path, language)
        audit.checks += 1
        worst_m = max(worst_m, sm)
        if sm > 1:
            audit.violations.append({"path": f"shen-{n}", "mixture_sum": sm})
    audit.constants["max_complexity_path_sum"] = worst_k
    audit.constants["max_mixture_path_sum"] = worst_m
    return audit


# ---------------------------------------------------------------------------
# sandwiches


def _law_members_or_bound(universal: UniversalSystem, n: int, max_length: int):
    """``('bound', C)`` if component ``n`` is a catalogue law of complexity ``C``,
    else ``('members', [...])`` listed up to ``max_length``."""
    law = universal.component(n)
    if law.is_vacuous:
        return "members", []
    key = getattr(law, "key", None)
    if key is not None and key[0] in ("LEN", "HIT"):
        if key[0] == "LEN" and key[2] > max_length:
            return "members", []
        return "bound", catalogue_description_length(key)
    return "members", list(law.members(max_length))


def measure_universal_sandwich(max_N: int = 64, max_length: int = 64, direct_length: int = 12,
                               language: CatalogueLanguage | None = None) -> Audit:
    """Least ``c`` with ``{𝒞 <= log N - c} ⊆ 𝒰_{≤N} ⊆ {𝒞 <= log N + c}`` for ``N <= max_N``.

    Universe: the one-object space, lengths ``<= max_length``.  Both sides are
    reduced to laws: a sequence of complexity ``t`` lies in a law with a
    ``t``-bit description, and that law sits at a known universal index; a
    member of ``U_n`` has complexity at most that of ``U_n`` (catalogue laws)
    or is listed and measured (user laws).  A direct sequence-by-sequence
    check on lengths ``<= direct_length`` confirms the constant.
    """
    language = language or CatalogueLanguage(SINGLETON)
    universal = build_universal(default_registry(language))
    audit = Audit("universal-sandwich")
    log_max = max_N.bit_length() - 1
    # left: every law with a short description and its universal index
    left_pairs = []
    for d in strings_up_to(log_max):
        law = language.decode_law(d)
        if law.is_vacuous:
            continue
        index = next((n for n in range(1, max_N + 1) if universal.component(n) == law), None)
        left_pairs.append((len(d), index))
    c_left = 0
    while any(2 ** (t + c_left) <= max_N and (idx is None or idx > 2 ** (t + c_left)) for t, idx in left_pairs):
        c_left += 1
    # right: complexity of everything in U_n for n <= max_N
    right_pairs = []  # (n, complexity bound of members)
    for n in range(1, max_N + 1):
        kind, value = _law_members_or_bound(universal, n, max_length)
        if kind == "bound":
            right_pairs.append((n, value))
        else:
            for s in value:
                c = time_complexity(s, language, PLAIN)
                right_pairs.append((n, c))
    c_right = 0
    while any(2 ** max(0, c - c_right) > n for n, c in right_pairs if c - c_right > 0):
        c_right += 1
    c = max(c_left, c_right)
    audit.constants.update({"c_left": c_left, "c_right": c_right, "c": c,
                            "laws_left": len(left_pairs), "laws_right": len(right_pairs)})
    # direct check on short sequences
    for s in SINGLETON.sequences_up_to(direct_length):
        cs = time_complexity(s, language, PLAIN)
        level = universal.min_index(s)
        for N in range(1, max_N + 1):
            audit.checks += 1
            if is_known(cs) and 2 ** (cs + c) <= N and (level is NotAttained or level > N):
                audit.violations.append({"side": "left", "sigma_length": len(s), "N": N, "C": cs, "level": level})
            if level is not NotAttained and level <= N and not (is_known(cs) and 2 ** max(0, cs - c) <= N):
                audit.violations.append({"side": "right", "sigma_length": len(s), "N": N, "C": cs, "level": level})
    audit.checks += len(left_pairs) + len(right_pairs)
    return audit


def _has_complexity(language: CatalogueLanguage, t: int, max_length: int) -> bool:
    """Whether some ``σ`` of length ``<= max_length`` has ``𝒞(σ) = t`` (searched lazily)."""
    for d in strings_up_to(t):
        if len(d) != t:
            continue
        law = language.decode_law(d)
        if law.is_vacuous:
            continue
        for s in law.members(max_length):
            if time_complexity(s, language, PLAIN) == t:
                return True
    return False


def measure_complexity_type_sandwich(max_m: int = 6, max_length: int = 64,
                                     language: CatalogueLanguage | None = None) -> Audit:
    """``{𝒞 <= m - c} ⊆ 𝒱_m ⊆ {𝒞 <= m + c}`` for ``𝒱_m = {𝒞 <= m - 1}``, ``m <= max_m``.

    The right side is also established constructively: level ``m`` is
    colored with ``2^m`` colors (never running out), the color classes become
    a description language, and complexities in that language merged after
    the catalogue are compared with ``m``.
    """
    language = language or CatalogueLanguage(SINGLETON)
    threshold = ComplexityThresholdSystem(language)
    audit = Audit("complexity-type-sandwich")
    levels = {m: threshold.members(m - 1, max_length) if m >= 1 else set() for m in range(max_m + 1)}
    # {𝒞 <= m - c} ⊆ {𝒞 <= m - 1} is automatic for c >= 1; c = 0 fails iff some σ has 𝒞 = m
    c_left = 1 if any(_has_complexity(language, m, max_length) for m in levels) else 0
    c_right_catalogue = max(
        (time_complexity(s, language, PLAIN) - m for m, items in levels.items() for s in items), default=0
    )
    try:
        colored = coloring_language(levels, language.space)
    except ColorExhausted as exc:
        audit.violations.append({"kind": "colors-exhausted", "error": str(exc)})
        colored = None
    c_right_colored = None
    if colored is not None:
        merged = MergedLanguage([language, colored])
        c_right_colored = max(
            (time_complexity(s, merged, PLAIN) - m for m, items in levels.items() for s in items), default=0
        )
        for m, items in levels.items():
            for s in items:
                audit.checks += 1
                if time_complexity(s, colored, PLAIN) > m:
                    audit.violations.append({"kind": "colored-description", "m": m, "length": len(s)})
    for m, items in levels.items():
        audit.checks += 1
        path_count = max_chain(items)
        if path_count > 2**m:
            audit.violations.append({"kind": "per-path-count", "m": m, "count": path_count})
    c = max(c_left, c_right_catalogue)
    audit.constants.update({"c_left": c_left, "c_right_catalogue": c_right_catalogue,
                            "c_right_colored": c_right_colored, "c": c,
                            "level_sizes": {m: len(v) for m, v in levels.items()}})
    return audit


# ---------------------------------------------------------------------------
# Kolmogorov sweep


def catalogue_integer_complexity(n: int) -> int:
    """``C_cat(n)``: length of ``n`` in the catalogue's natural-number code."""
    return n.bit_length() - 1


def kolmogorov_sweep(max_n: int = 4096, language: CatalogueLanguage | None = None) -> Audit:
    """``𝒞(o^n) - C_cat(n)`` on the constant stream of a one-object space."""
    language = language or CatalogueLanguage(SINGLETON)
    audit = Audit("kolmogorov-sweep")
    tracker = PathComplexity(language)
    o = Observation(0, 0)
    windows: dict[int, list[int]] = {}
    for n in range(1, max_n + 1):
        c = tracker.step(o)
        gap = c - catalogue_integer_complexity(n)
        windows.setdefault(n.bit_length() - 1, []).append(gap)
        audit.checks += 1
    rows = []
    for j, gaps in sorted(windows.items()):
        rows.append({"window": j, "from": 2**j, "to": min(2 ** (j + 1) - 1, max_n),
                     "max_abs_gap": max(abs(g) for g in gaps), "min_gap": min(gaps), "max_gap": max(gaps)})
    audit.records = rows
    full = [r["max_abs_gap"] for r in rows if r["to"] == 2 ** (r["window"] + 1) - 1]
    growth = len(full) > 1 and full[-1] > max(full[:-1])
    if growth:
        audit.violations.append({"kind": "growth", "window_maxima": full})
    audit.constants["max_abs_gap"] = max(r["max_abs_gap"] for r in rows)
    return audit


# ---------------------------------------------------------------------------
# conformal


def audit_validity(space: ObjectSpace = BINARY, seed: int = 0, length: int = 10000,
                   epsilons=(Fraction(1, 20), Fraction(1, 10), Fraction(1, 5))) -> Audit:
    audit = Audit("conformal-validity")
    stream = Stream.iid(space, derive_seed(seed, 7), (0.2, 0.8) if space.arity == 2 else 0.3)
    for measure in (NearestNeighbor(space), LabelFrequency()):
        for r in validity_run(measure, stream, length, epsilons):
            audit.checks += 1
            audit.records.append({"measure": measure.name, **r.as_record()})
            if not r.ok:
                audit.violations.append({"measure": measure.name, **r.as_record()})
    return audit


def audit_dominance(space: ObjectSpace = BINARY, seed: int = 0, seeds: int = 20, horizon: int = 1000,
                    epsilon=Fraction(1, 5), required: int = 18) -> Audit:
    audit = Audit("conformal-dominance")
    language = CatalogueLanguage(space)
    measure = NearestNeighbor(space)
    achieved = 0
    for i in range(seeds):
        stream = Stream.iid(space, derive_seed(seed, 8, i), (0.2, 0.8) if space.arity == 2 else 0.3)
        system = CombinedSystem(default_dominance_registry(space, language))
        report = dominance_experiment(stream, epsilon, system, measure, horizon, seed=i)
        audit.records.append(report.as_record())
        achieved += report.best_c is not None
    audit.checks += 1
    audit.constants["seeds_with_eventual_containment"] = achieved
    best = [r["best_c"] for r in audit.records if r["best_c"] is not None]
    audit.constants["max_best_c"] = max(best) if best else None
    if achieved < required:
        audit.violations.append({"achieved": achieved, "required": required})
    return audit


# ---------------------------------------------------------------------------
# tightness


def audit_tightness(Ks: Sequence[int] = (3, 4, 5, 6), Ns: Sequence[int] = (1, 2, 3),
                    space: ObjectSpace = BINARY) -> Audit:
    language = CatalogueLanguage(space)
    universal = build_universal(default_registry(language))
    audit = Audit("tightness")
    for K in Ks:
        for N in Ns:
            audit.checks += 1
            witness = demonstrate_tightness(universal, K, N, Stream.constant(space), language)
            record = witness.as_record()
            audit.records.append(record)
            if witness.contained or witness.plain_complexity > K:
                audit.violations.append(record)
    if audit.records:
        audit.constants["a"] = max(r["a"] for r in audit.records)
        audit.constants["c"] = min(r["c"] for r in audit.records)
    return audit


# ---------------------------------------------------------------------------
# complexity sweep


def complexity_sweep(stream: Stream, length: int, language: CatalogueLanguage, depth: int = 64,
                     oracle_length: int = 0, oracle_depth: int = 10) -> Audit:
    """``𝒞`` and ``𝒦`` of every prefix; the brute-force oracle on the first prefixes."""
    from .complexity import time_complexity_bruteforce

    audit = Audit("complexity")
    tracker = PathComplexity(language, depth)
    for l in range(1, length + 1):
        c = tracker.step(stream.observation(l))
        k = prefix_from_plain(c)
        audit.records.append({"l": l, "C": c, "K": k})
        if l <= oracle_length:
            audit.checks += 1
            prefix = stream.prefix(l)
            fast = time_complexity(prefix, language, PLAIN, oracle_depth)
            slow = time_complexity_bruteforce(prefix, language, PLAIN, oracle_depth)
            if fast != slow:
                audit.violations.append({"l": l, "fast": fast, "oracle": slow})
    return audit
