"""Acceptance criteria 1-10, exact arithmetic, with their runtime budgets."""

import random
import subprocess
import sys
import time

from truncs.kernel_frame import classify_unital, kernel_frame
from truncs.representation import nonfunctorial_demo, w_morphism_factorizations, w_reflect
from truncs.suite import REGISTRY, SuiteConfig, run_check, run_suite
from truncs.trunc import EvSeq, random_finvec

CFG = SuiteConfig(seed=0, instances=200)


def _by_anchor(anchor):
    return next(c for c in REGISTRY if c.anchor == anchor)


def _timed(fn, *args, **kw):
    t = time.perf_counter()
    out = fn(*args, **kw)
    return out, time.perf_counter() - t


def test_criterion_01_axioms(verdict):
    chk = _by_anchor("check_axioms")
    clean, dt = _timed(run_check, chk, CFG)
    fixtures = {}
    for mode in ("zero", "identity"):
        out = run_check(chk, SuiteConfig(seed=0, instances=200, mutate=mode))
        fixtures[mode] = out
        print(f"  mutation {mode}: {out.failures} failing carriers, witness {out.witness}")
    ok = (clean.passed and clean.checked >= 1500 and dt < 5.0
          and all(not o.passed and o.witness for o in fixtures.values()))
    verdict(1, ok, f"T1-T4 on {clean.checked} instances in {dt:.2f}s; "
                   f"both mutations rejected with witnesses")
    assert ok


def test_criterion_02_kernel_oracle(verdict):
    out, dt = _timed(run_check, _by_anchor("ladder-closed supports are exactly the K_S"), CFG)
    ok = out.passed and dt < 1.0
    verdict(2, ok, f"ladder-closed supports equal brute-force closed sets "
                   f"({out.checked} candidates) in {dt:.2f}s")
    assert ok


LEMMA_ANCHORS = [
    "lies in a truncation kernel",
    "false without the hypothesis of convexity",
    "because A/K must satisfy (𝔗3)",
    "express a⊖(r+1/n) as",
    "is a frame, and the frame operations",
    "for s<r in ℚ⁺",
    "Suppose aᵢ ∈ Ā",
    "implies b ∈ a◀1",
    "By replacing b by a∧b",
    "Since any nonzero multiple of a generator",
    "Suppose K ∈ K A",
]


def test_criterion_03_lemma_suite(verdict):
    report, dt = _timed(run_suite, CFG, anchors=set(LEMMA_ANCHORS))
    results = report["suites"]["trunc-algebra"]
    missing = set(LEMMA_ANCHORS) - set(results)
    for a in LEMMA_ANCHORS:
        r = results.get(a)
        if r:
            print(f"  {'PASS' if r['passed'] else 'FAIL'} {a} ({r['checked']}) {r['stats']}")
    stab = results["because A/K must satisfy (𝔗3)"]["stats"]
    ok = (not missing and dt < 30.0
          and all(r["passed"] and r["checked"] >= 200 for r in results.values())
          and any(k.startswith("stabilizing_n") for k in stab))
    verdict(3, ok, f"{len(results)} lemmas, each >= 200 instances, in {dt:.2f}s")
    assert ok


def test_criterion_04_kappa(verdict):
    out, dt = _timed(run_check, _by_anchor("is a trunc isomorphism"), CFG)
    ok = out.passed and dt < 10.0
    verdict(4, ok, f"underline preserves +, meet, join, truncation, injective and matches the "
                   f"atom oracle ({out.checked} identity checks) in {dt:.2f}s")
    assert ok


def test_criterion_05_spectrum(verdict):
    rng = random.Random(5)
    sizes = all(len((b := kernel_frame(random_finvec(rng, n, min_dim=n))).frame) == 2 ** n
                and b.frame.is_boolean() for n in range(1, 5) for _ in range(5))
    # classify_unital raises when its three conditions disagree
    finvec = [classify_unital(random_finvec(rng, 4), seed=i) for i in range(30)]
    unital = all(r.unital and r.witness == r.witness.carrier.unit_element() for r in finvec)
    ev = classify_unital(EvSeq())
    ok = sizes and unital and not ev.unital
    verdict(5, ok, "K(FinVec n) Boolean of size 2^n for n <= 4; FinVec unital with witness u; "
                   "EvSeq non-unital; the three conditions agree")
    assert ok


def test_criterion_06_universal_arrow(verdict):
    demo, dt = _timed(nonfunctorial_demo)
    for line in demo.lines:
        print("  " + line)
    ind = demo.induced
    ok = (demo.frame_maps == 1 and demo.left != demo.right and ind.pointed and ind.square
          and ind.competitors == 1 and ind.unique and dt < 5.0)
    verdict(6, ok, f"1 frame map 2->4, probe {demo.failing_probe} fails, "
                   f"unique commuting pointed map, {dt:.2f}s")
    assert ok


def test_criterion_07_de_equivalence(verdict):
    out, dt = _timed(run_check, _by_anchor("constitute a categorical equivalence"), CFG)
    ok = out.passed and dt < 10.0
    verdict(7, ok, f"D/E round trips on {out.checked} filtered frames in {dt:.2f}s")
    assert ok


COZ_ANCHORS = [
    "⋁_S coz a = ⋁_[S] coz a",
    "coz b ≤ con a. Therefore",
    "we may assume that b=(1/2)·(2b)-bar",
    "Together, these two facts imply",
    "We begin with the observation that",
]


def test_criterion_08_coz_con(verdict):
    results = {a: run_check(_by_anchor(a), CFG) for a in COZ_ANCHORS}
    ok = all(o.passed and o.checked >= 200 and o.stats.get("joins_stable") == o.checked
             for o in results.values())
    verdict(8, ok, "five coz/con properties on 200 instances each, every join stable "
                   "on its generating set")
    assert ok


def test_criterion_09_w_reflection(verdict):
    c = EvSeq()
    refl = w_reflect(c, window=4)
    rng = random.Random(9)
    facts = [w_morphism_factorizations(refl, c, 4, rng) for _ in range(50)]
    ok = refl.unital and refl.b0_is_top and all(f.ok and f.factors == 1 for f in facts)
    verdict(9, ok, f"reflection of EvSeq is unital with top b0; "
                   f"{sum(f.ok for f in facts)}/50 sampled theta factor uniquely")
    assert ok


def _cli_suite(path):
    t = time.perf_counter()
    proc = subprocess.run([sys.executable, "-m", "truncs", "suite", "--seed", "0",
                           "--format", "json", "--output", str(path)],
                          capture_output=True, text=True)
    return proc, time.perf_counter() - t


def test_criterion_10_full_suite(verdict, tmp_path):
    first, dt1 = _cli_suite(tmp_path / "a.json")
    second, dt2 = _cli_suite(tmp_path / "b.json")
    same = (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()
    ok = first.returncode == 0 and second.returncode == 0 and dt1 < 60 and dt2 < 60 and same
    verdict(10, ok, f"suite exit {first.returncode} in {dt1:.1f}s; rerun "
                    f"{'byte-identical' if same else 'differs'} ({dt2:.1f}s)")
    assert ok
