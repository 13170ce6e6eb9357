"""Acceptance criteria 1-10, each at full size; every test prints one PASS/FAIL line."""

import time
from fractions import Fraction

import pytest

from unipred import audits
from unipred.core import BINARY


def report(number, ok, detail):
    print(f"\n{'PASS' if ok else 'FAIL'} criterion {number}: {detail}")
    return ok


def timed(fn, *args, **kwargs):
    start = time.perf_counter()
    out = fn(*args, **kwargs)
    return out, time.perf_counter() - start


def test_criterion_01_interleaving_arithmetic():
    audit, seconds = timed(audits.audit_interleaving_arithmetic, max_k=12, max_n=1024, vacuity_limit=4096)
    ok = audit.ok and seconds < 1.0
    assert report(1, ok, f"{audit.checks} index checks, {len(audit.violations)} violations, {seconds:.2f}s (< 1s)")


def test_criterion_02_registry_containment():
    audit = audits.audit_containment(BINARY, 0, max_length=256, max_N=32)
    ok = audit.ok and audit.constants["slack"] == 4
    assert report(2, ok, f"{audit.checks} containment checks over lengths <= 256, N <= 32, slack "
                         f"{audit.constants['slack']}, {len(audit.violations)} violations")


def test_criterion_03_mistake_bound():
    start = time.perf_counter()
    battery = audits.mistake_battery(BINARY, 0, count=100, length=4096)
    audit = audits.audit_mistakes(battery, 4096, range(9))
    seconds = time.perf_counter() - start
    ok = len(battery) == 100 and audit.ok and seconds < 60
    assert report(3, ok, f"{len(battery)} streams x 4096 steps, m = 0..8, {len(audit.violations)} violations of "
                         f"errors < l/2^m, {seconds:.1f}s (< 60s)")


def test_criterion_04_density_and_combination():
    audit = audits.audit_density(BINARY, 0, paths=20, length=512, levels=range(9))
    assert report(4, audit.ok, f"{audit.checks} density and containment checks for m <= 8, "
                               f"{len(audit.violations)} violations")


def test_criterion_05_partition_oracle():
    audit, seconds = timed(audits.audit_partition, levels=(0, 1, 2))
    shapes = [(r["branching"], r["depth"], r["mode"]) for r in audit.records]
    ok = audit.ok and seconds < 120
    assert report(5, ok, f"{audit.checks} item sets over shapes {shapes}, {len(audit.violations)} violations, "
                         f"{seconds:.1f}s (< 120s)")


def test_criterion_06_kraft_and_path_sums():
    audit = audits.audit_path_sums(BINARY, 0, paths=1000, length=512)
    c = audit.constants
    ok = audit.ok and c["kraft_sum"] <= 1 and c["max_complexity_path_sum"] <= 1 and c["max_mixture_path_sum"] <= 1
    assert report(6, ok, f"Kraft sum {c['kraft_sum']} over {c['domain_size']} descriptions; max path sums "
                         f"{float(c['max_complexity_path_sum']):.4f} (2^-K) and {float(c['max_mixture_path_sum']):.4f} "
                         f"(mixture) over 1000 paths of length 512")


def test_criterion_07_sandwich_constants():
    universal = audits.measure_universal_sandwich(max_N=64, max_length=64)
    ctype = audits.measure_complexity_type_sandwich(max_m=6, max_length=64)
    c = max(universal.constants["c"], ctype.constants["c"])
    ok = universal.ok and ctype.ok and c is not None
    assert report(7, ok, f"universal sandwich c = {universal.constants['c']} (N <= 64), complexity-type sandwich "
                         f"c = {ctype.constants['c']} (m <= 6), single constant c = {c}")


def test_criterion_08_kolmogorov_sweep():
    audit = audits.kolmogorov_sweep(max_n=4096)
    gaps = [r["max_abs_gap"] for r in audit.records]
    ok = audit.ok and max(gaps) == gaps[-1] == min(gaps)
    assert report(8, ok, f"max |C(o^n) - C_cat(n)| = {audit.constants['max_abs_gap']} for n <= 4096, "
                         f"per doubling window {gaps}")


def test_criterion_09_conformal_validity_and_dominance():
    validity = audits.audit_validity(BINARY, 0, length=10000,
                                     epsilons=(Fraction(1, 20), Fraction(1, 10), Fraction(1, 5)))
    dominance = audits.audit_dominance(BINARY, 0, seeds=20, horizon=1000, epsilon=Fraction(1, 5), required=18)
    errors = [(str(r["epsilon"]), r["errors"]) for r in validity.records if r["measure"] == "nearest-neighbor"]
    good = dominance.constants["seeds_with_eventual_containment"]
    l0 = [r["l0"] for r in dominance.records]
    ok = validity.ok and dominance.ok and good >= 18 and dominance.constants["max_best_c"] <= 8
    assert report(9, ok, f"errors at l = 10000 {errors} within envelope; containment on {good}/20 seeds with "
                         f"c <= {dominance.constants['max_best_c']}, l0 per seed {l0}")


def test_criterion_10_tightness_witnesses():
    audit = audits.audit_tightness(Ks=(3, 4, 5, 6), Ns=(1, 2, 3))
    witnessed = sorted({r["K"] for r in audit.records if not r["contained"]})
    ok = audit.ok and witnessed == [3, 4, 5, 6]
    witness = next(r for r in audit.records if r["K"] == 6 and not r["contained"])
    assert report(10, ok, f"witnesses for K = {witnessed} at measured c = {audit.constants['c']}; e.g. K=6: "
                          f"k={witness['k']}, N={witness['N']}, prefix length {witness['prefix_length']}, "
                          f"universal level {witness['universal_level']}")
