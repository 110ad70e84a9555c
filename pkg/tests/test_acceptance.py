"""Acceptance gate: one test per release criterion, at the stated budgets.

Each test re-derives its expectations independently (hardcoded target values,
an in-file sieve, the defining formulas) rather than trusting the library's
own tables, and asserts the criterion's wall-clock budget.
"""

import math
import random
import time

from lseq.arith import is_prime
from lseq.gcdlaws import (
    corollary2_divisor,
    gcd_l1,
    gcd_l1_cross,
    gcd_l3,
    gcd_l3_cross,
)
from lseq.lfamily import (
    LFamily,
    builtin_congruence_rules,
    eval_exact,
    residue,
    verify_product_identity,
    verify_statement1_orbit,
    verify_statement2_orbit,
    verify_theorem3,
)
from lseq.repunit import RepunitKind, gcd_repunit, repunit
from lseq.search import (
    resume,
    run_scan,
    scan_l1_pow3,
    scan_l2_pow2,
    scan_l2_prime_exponents,
    scan_l3_pow2,
    scan_l4_twins,
    scan_square_divisors,
)

GOLDEN_VALUES = [
    ("L1", 1, 7),
    ("L1", 3, 73),
    ("L1", 9, 262657),
    ("L2", 1, 5),
    ("L2", 2, 19),
    ("L2", 3, 71),
    ("L2", 4, 271),
    ("L2", 6, 4159),
    ("L2", 16, 4295032831),
    ("L3", 1, 3),
    ("L3", 2, 13),
    ("L3", 4, 241),
    ("L3", 32, 18446744069414584321),
    ("L4", 1, 1),
    ("L4", 2, 11),
    ("L4", 4, 239),
    ("L4", 5, 991),
    ("L4", 9, 261631),
    ("L4", 10, 1047551),
]

SQUARE_HITS = {
    "L1": {(7, 7, 2), (104, 13, 2), (114, 19, 2)},
    "L2": {(68, 11, 3), (97, 11, 2)},
    "L3": {(26, 13, 2), (130, 13, 2), (57, 19, 2)},
    "L4": {(13, 11, 2), (42, 11, 2), (123, 11, 2), (52, 19, 2), (119, 19, 2)},
}

ADMISSIBLE_T35 = [t for t in range(1, 36, 2) if t % 3 != 0]
ADMISSIBLE_T25 = [t for t in range(1, 26, 2) if t % 3 != 0]


def finish(start: float, budget: float, label: str) -> None:
    elapsed = time.perf_counter() - start
    assert elapsed < budget, f"{label} took {elapsed:.2f}s, budget {budget}s"
    print(f"PASS {label} ({elapsed:.2f}s)")


def test_criterion_01_golden_values():
    start = time.perf_counter()
    for name, n, expected in GOLDEN_VALUES:
        assert eval_exact(LFamily.parse(name), n) == expected
    assert len(GOLDEN_VALUES) == 19
    finish(start, 1.0, "criterion 1: 19 golden sequence values exact")


def test_criterion_02_congruence_audit():
    start = time.perf_counter()
    for family in LFamily:
        for rule in builtin_congruence_rules(family):
            assert rule.holds_through(10000), f"{family.name} mod {rule.modulus}"
    for name, hits in SQUARE_HITS.items():
        family = LFamily.parse(name)
        for n, p, e in hits:
            assert verify_statement1_orbit(family, n, p, 10)
            assert verify_statement2_orbit(family, n, p, e, 2)
    finish(start, 10.0, "criterion 2: builtin rules to 10000 + orbits at all hits")


def test_criterion_03_l1_insularity_suite():
    start = time.perf_counter()
    for k in range(0, 4):
        for t1 in ADMISSIBLE_T35:
            for t2 in ADMISSIBLE_T35:
                value, record = gcd_l1(k, t1, t2)
                assert record.match
                assert value == eval_exact(LFamily.L1, 3**k * math.gcd(t1, t2))
    for k1 in range(0, 4):
        for k2 in range(0, 4):
            if k1 == k2:
                continue
            for t1 in ADMISSIBLE_T35:
                for t2 in ADMISSIBLE_T35:
                    value, _ = gcd_l1_cross(k1, t1, k2, t2)
                    assert value == 1
    finish(start, 60.0, "criterion 3: L1 same-k grid + cross-k coprimality")


def test_criterion_04_l3_insularity_suite():
    start = time.perf_counter()
    exponents = [(m, n) for m in range(0, 3) for n in range(1, 5)]
    for m, n in exponents:
        for t1 in ADMISSIBLE_T25:
            for t2 in ADMISSIBLE_T25:
                value, record = gcd_l3(m, n, t1, t2)
                assert record.match
                assert value == eval_exact(LFamily.L3, 3**m * 2**n * math.gcd(t1, t2))
    for a in exponents:
        for b in exponents:
            if a == b:
                continue
            for t in ADMISSIBLE_T25:
                value, _ = gcd_l3_cross(a[0], a[1], t, b[0], b[1], t)
                assert value == 1
    # the divisor relation on a small grid
    for n in range(1, 4):
        for t in (3, 5, 7, 9, 11):
            assert corollary2_divisor(n, t)
    finish(start, 60.0, "criterion 4: L3 same-exponent grid + cross coprimality")


def test_criterion_05_repunit_suite():
    start = time.perf_counter()
    for b in (2, 3, 5, 10):
        for n in range(1, 41):
            for m in range(1, 41):
                computed, predicted, match = gcd_repunit(b, n, m, RepunitKind.MINUS)
                assert match
                assert computed == repunit(b, math.gcd(n, m), RepunitKind.MINUS)
        for n in range(1, 40, 2):
            for m in range(1, 40, 2):
                computed, predicted, match = gcd_repunit(b, n, m, RepunitKind.PLUS)
                assert match
                assert computed == repunit(b, math.gcd(n, m), RepunitKind.PLUS)
    finish(start, 30.0, "criterion 5: repunit gcd law, 4 bases, both kinds")


def test_criterion_06_theorem3():
    start = time.perf_counter()
    cells = 0
    for k in range(0, 4):
        for n in range(1, 21):
            if n % 3 == 0:
                continue
            assert verify_theorem3(k, n)
            cells += 1
    assert cells == 56
    finish(start, 5.0, "criterion 6: 7-power divisibility, 56 grid cells")


def test_criterion_07_product_identity():
    start = time.perf_counter()
    for k in range(0, 7):
        assert verify_product_identity(k)
    for i in range(0, 5):
        for j in range(i + 1, 6):
            a = eval_exact(LFamily.L1, 3**i)
            b = eval_exact(LFamily.L1, 3**j)
            assert math.gcd(a, b) == 1
    finish(start, 10.0, "criterion 7: exact products k <= 6 + pairwise coprimality")


def test_criterion_08_desk_scan_reproduction():
    start = time.perf_counter()
    assert set(scan_l2_prime_exponents(1000).prime_indices()) == {2, 3, 379}
    assert set(scan_l2_pow2(10).prime_indices()) == {1, 2, 4}
    assert set(scan_l3_pow2(10).prime_indices()) == {0, 1, 2, 5}
    assert set(scan_l1_pow3(5).prime_indices()) == {0, 1, 2}
    twins, flagged = scan_l4_twins(603).twin_pairs()
    assert set(twins) == {(4, 5), (9, 10), (224, 225)}
    assert flagged == [(1, 2)]
    finish(start, 1800.0, "criterion 8: five desk-scale scans reproduce targets")


def test_criterion_09_square_divisor_hits():
    start = time.perf_counter()
    for name, expected in SQUARE_HITS.items():
        found = set(scan_square_divisors(name, 130, 20).square_hits())
        missing = expected - found
        assert not missing, f"{name} missing hits {sorted(missing)}"
        # every reported hit must be a genuine prime-power divisor
        family = LFamily.parse(name)
        for n, p, e in found:
            assert residue(family, n, p**e) == 0
            assert residue(family, n, p ** (e + 1)) != 0
    finish(start, 60.0, "criterion 9: all 13 enumerated square-divisor hits found")


def test_criterion_10_scan_determinism(tmp_path):
    start = time.perf_counter()
    baseline = scan_l4_twins(120)
    expected = baseline.canonical_bytes()
    rng = random.Random(2026)
    for i, cut in enumerate(sorted(rng.sample(range(1, 119), 3))):
        path = str(tmp_path / f"cut{i}.jsonl")
        partial = scan_l4_twins(120, checkpoint_path=path, limit=cut)
        assert partial.completed_through == cut
        resumed = resume(path)
        assert resumed.complete
        assert resumed.canonical_bytes() == expected, f"cut at {cut} diverged"
    assert scan_l4_twins(120, jobs=8).canonical_bytes() == expected
    assert scan_l4_twins(120, jobs=1).canonical_bytes() == expected
    finish(start, 300.0, "criterion 10: byte-identical reports across cuts and jobs")


def test_criterion_11_oracle_cross_checks():
    start = time.perf_counter()
    limit = 10**6
    composite = bytearray(limit + 1)
    composite[0] = composite[1] = 1
    for d in range(2, math.isqrt(limit) + 1):
        if not composite[d]:
            composite[d * d :: d] = b"\x01" * len(range(d * d, limit + 1, d))
    for n in range(0, limit + 1):
        verdict = is_prime(n).classification
        if n == 1:
            assert verdict == "unit"
        elif composite[n]:
            assert verdict == "composite"
        else:
            assert verdict == "prime"
    for family in LFamily:
        for n in range(1, 65):
            value = eval_exact(family, n)
            for m in range(2, 1001):
                assert residue(family, n, m) == value % m
    finish(start, 60.0, "criterion 11: primality vs sieve to 1e6 + residue grid")
