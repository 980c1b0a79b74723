import math

import pytest

import waring


def test_version_is_string():
    assert isinstance(waring.version(), str)
    assert waring.__version__ == waring.version()


def test_zk_k2_agrees_with_reference():
    est = waring.zk_estimate(2, precision=1e-3)
    assert est["converged"]
    assert est["lower"] <= est["upper"]
    assert est["agrees"] is True


def test_zeta_ratio():
    assert waring.zeta(2) / waring.zeta(4) == pytest.approx(15 / math.pi**2, rel=1e-9)


def test_kth_power_classes_mod_8():
    assert waring.kth_power_classes(8, 2) == [0, 1, 4]


def test_sumset_mod_5():
    assert waring.sumset(5, [0, 1], [0, 2]) == [0, 1, 2, 3]


def test_waring_pair_and_minimal_s():
    r = waring.waring_pair(5, 2, 2, exhaustive=True)
    assert r["holds"] is False
    assert r["counterexample"] is not None
    m = waring.minimal_s(5, 2, s_max=8)
    assert m["found"] and m["s"] >= 3


def test_vinogradov_methods_agree():
    counts = {m: waring.vinogradov_count(2, 2, 30, method=m) for m in ("hash", "multiset", "exhaustive")}
    assert len(set(counts.values())) == 1


def test_V_q_methods_agree():
    for q in (2, 3, 5):
        for a in range(q):
            d = waring.V_q(a, 1, q, 3, 3)
            c = waring.V_q(a, 1, q, 3, 3, method="crt")
            assert abs(d - c) < 1e-9


def test_shnirelman_density():
    evens_plus_one = [1] + list(range(2, 100, 2))
    assert waring.shnirelman_density(evens_plus_one, 99) == pytest.approx(50 / 99)


def test_representation_count_squares():
    A = [i * i for i in range(1, 10)]
    counts, overflow = waring.representation_count(A, 2, 20)
    assert not overflow
    assert counts[2] == 1 and counts[5] == 2 and counts[3] == 0


def test_precondition_error_is_raised():
    with pytest.raises(waring.PreconditionError):
        waring.zk_estimate(2, convention="bogus")
    assert issubclass(waring.PreconditionError, waring.WaringError)


def test_coverage_sanity_five_squares():
    r = waring.coverage_experiment({"k": 2, "s": 5, "N": 2000, "n_min": 34, "density": 1.0})
    assert r["all_hold"]
    coverage = next(c for c in r["checks"] if c["name"].startswith("coverage"))
    assert coverage["measured"]["coverage"] == pytest.approx(1.0)


def test_empirical_density_full_set():
    A = [i * i for i in range(1, 11)]
    assert waring.empirical_density(A, 2, 100) == pytest.approx(1.0)
