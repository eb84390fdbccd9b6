from truncs.suite import MODULES, REGISTRY, SuiteConfig, report_json, report_text, run_suite, seed_for


def test_every_module_has_checks():
    assert {c.module for c in REGISTRY} == set(MODULES)
    assert len({c.anchor for c in REGISTRY}) == len(REGISTRY)


def test_seed_depends_on_anchor():
    assert seed_for(0, "a") != seed_for(0, "b")
    assert seed_for(1, "a") != seed_for(0, "a")


def test_report_deterministic_and_parallel_invariant():
    cfg = SuiteConfig(seed=3, instances=20)
    a = report_json(run_suite(cfg, modules={"lattice-core", "pointed-filtered"}))
    b = report_json(run_suite(SuiteConfig(seed=3, instances=20, jobs=2),
                              modules={"lattice-core", "pointed-filtered"}))
    assert a == b


def test_text_report_lines():
    rep = run_suite(SuiteConfig(instances=5), modules={"lattice-core"})
    text = report_text(rep)
    assert text.splitlines()[0] == "[lattice-core]"
    assert text.rstrip().endswith("ALL PASS")
    assert all(line.strip().startswith(("PASS", "[", "ALL")) for line in text.splitlines())


def test_mutation_fails_suite():
    rep = run_suite(SuiteConfig(instances=5, mutate="identity"), anchors={"check_axioms"})
    r = rep["suites"]["trunc-algebra"]["check_axioms"]
    assert not rep["passed"] and r["witness"] and r["stats"]["T3_failures"] > 0
