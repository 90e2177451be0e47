import itertools
import math

import pytest

import kwise_lab as kl


def brute_max(universe, k):
    best = 0
    for size in range(len(universe), 0, -1):
        for fam in itertools.combinations(universe, size):
            if all(set.intersection(*map(set, t)) for t in itertools.combinations(fam, min(k, size))):
                return size
    return best


def test_regime_and_bound():
    assert kl.frankl_bound(7, 3) == math.comb(6, 2)
    assert kl.regime(6, 3, 2) == "boundary"
    assert kl.regime(6, 4, 2) == "outside"


def test_verify_frankl_interior():
    rep = kl.verify_frankl(6, 3, 3)
    assert rep["bound_matches"]
    assert rep["all_extremal_are_stars"] is True
    assert rep["witness"]["size"] == 10
    assert sorted(rep["witness"]["star_centers"]) == list(range(1, 7))


@pytest.mark.parametrize("n,r,k", [(5, 2, 2), (5, 3, 3), (6, 4, 3)])
def test_search_matches_brute_force(n, r, k):
    universe = [list(c) for c in itertools.combinations(range(1, n + 1), r)][:12]
    got = kl.max_family_search(n, r, universe, k)
    assert got["size"] == brute_max(universe, k)
    for fam in got["families"]:
        assert kl.is_k_wise_intersecting(n, r, fam, k)


def test_star_and_errors():
    s = kl.star(5, 2, 1)
    assert len(s) == 4 and all(1 in x for x in s)
    with pytest.raises(kl.InvalidParameter):
        kl.star(5, 6, 1)
    with pytest.raises(kl.KwiseError):
        kl.verify_frankl(40, 20, 2)


def test_census_identity():
    fam = kl.star(6, 3, 6)
    c = kl.saturation_census(6, 3, fam, 3)
    assert c["identity_check"]
    assert c["interval_total"] == math.factorial(3) * math.factorial(3) * len(fam)
    assert len(c["counts"]) == math.factorial(5)


def test_circle_operations():
    assert kl.canonical_order([3, 4, 1, 2]) == [1, 2, 3, 4]
    assert kl.apply_adjacent_transposition([1, 2, 3, 4], 1) == [2, 1, 3, 4]
    size, witnesses = kl.max_interval_family([1, 2, 3, 4, 5, 6], 3, 3)
    assert size == 3
    assert len(witnesses) == 6


def test_cayley():
    rep = kl.cayley_expansion(3, "1/64")
    assert rep["holds"] and rep["worst_ratio"] == "2/3"
    assert kl.spectral_gap(3) == pytest.approx(1.0, abs=1e-9)
    with pytest.raises(kl.ResourceGuard):
        kl.spectral_gap(10)


def test_matching():
    assert [kl.good_order_count(n) for n in range(1, 6)] == [1, 2, 8, 48, 384]
    assert len(kl.good_orders(3)) == 8
    assert len(kl.hfamily(3, 4)) == 12
    rep = kl.verify_matching_bound(3, 3, 3)
    assert rep["bound_matches"] and rep["extremal_unique"] is True
    assert rep["witness"]["size"] == kl.theorem2_bound(3, 3)
    seq, end = kl.embed_as_interval(3, [1, 2, 6])
    assert sorted(seq) == list(range(1, 7))
    lem = kl.check_matching_lemmas(3, 4, kl.hfamily_star(3, 4, 6), 4)
    assert lem["t_applicable"] and not lem["violations"]


def test_run_cli_in_process():
    status, rep = kl.run("verify-frankl", n=5, r=2, k=2)
    assert status == kl.EXIT_OK
    assert rep["schema"] == kl.SCHEMA == "kwise-lab/v1"
    assert rep["status"] == "ok"
    status, rep = kl.run("verify-frankl", n=5, r=4, k=2)
    assert status == kl.EXIT_INVALID
    status, text = kl.run("circle-census", n=5, r=2, k=2, format="csv")
    assert status == kl.EXIT_OK and text.splitlines()[0].startswith("order_index")
