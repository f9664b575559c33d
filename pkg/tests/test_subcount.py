import json

import pytest

from densityforge.finitemod import ChainModule, FiniteField, brute_sub_count, enumerate_submodules
from densityforge.partitions import enumerate_partitions, partitions_up_to
from densityforge.subcount import (
    CACHE_FORMAT_VERSION,
    SubTable,
    gaussian_binomial,
    sub_degree,
    sub_poly,
    sub_poly_interp,
)
from densityforge.exactpoly import IntPoly1


@pytest.mark.parametrize("a,lam,text", [(1, (1, 1), "t + 1"), (1, (2,), "1"), (2, (2, 1), "t + 1")])
def test_sub_poly_examples(a, lam, text):
    assert sub_poly(a, lam).to_text() == text


def test_out_of_range_is_zero():
    assert sub_poly(-1, (2, 1)).is_zero()
    assert sub_poly(4, (2, 1)).is_zero()
    assert sub_poly(0, ()) == IntPoly1([1])
    assert sub_poly(1, ()).is_zero()


def test_sub_degree_examples():
    assert sub_degree(1, (1, 1)) == 1
    assert all(sub_degree(a, (5,)) == 0 for a in range(6))
    assert sub_degree(2, (1, 1, 1, 1)) == 4


@pytest.mark.parametrize("n", range(9))
def test_elementary_modules_give_gaussian_binomials(n):
    for a in range(n + 1):
        assert sub_poly(a, (1,) * n) == gaussian_binomial(n, a)


@pytest.mark.parametrize("lam", partitions_up_to(6))
def test_table_invariants(lam):
    assert sub_poly(0, lam) == IntPoly1([1])
    assert sub_poly(lam.size, lam) == IntPoly1([1])
    for a in range(lam.size + 1):
        P = sub_poly(a, lam)
        assert all(c > 0 for c in P.coeffs.values())
        assert all(P(q) > 0 for q in (3, 5, 7))


@pytest.mark.parametrize("lam", partitions_up_to(5))
def test_recursion_matches_brute_force_counts(lam):
    for q in (3, 5):
        if q ** lam.size > 20000:
            continue
        for a in range(lam.size + 1):
            assert sub_poly(a, lam)(q) == brute_sub_count(q, lam, a)


@pytest.mark.parametrize("lam", partitions_up_to(5))
def test_total_count_matches_enumeration(lam):
    M = ChainModule(FiniteField.of_order(3), lam)
    total = sum(sub_poly(a, lam)(3) for a in range(lam.size + 1))
    assert total == len(enumerate_submodules(M))


@pytest.mark.parametrize("a,lam", [(1, (1, 1)), (0, (3, 1)), (1, (2, 1)), (2, (2, 2)), (2, (2, 1, 1))])
def test_interpolation_examples(a, lam):
    assert sub_poly_interp(a, lam) == sub_poly(a, lam)


def test_interpolation_from_exhaustive_counts_only():
    # degree 1 needs three primes 3, 5, 7, all inside the exhaustive envelope
    assert sub_poly_interp(1, (1, 1), counter=brute_sub_count).to_text() == "t + 1"
    assert [brute_sub_count(q, (1, 1), 1) for q in (3, 5, 7)] == [4, 6, 8]


def test_cache_roundtrip(tmp_path):
    path = tmp_path / "sub.json"
    table = SubTable(path)
    want = {(a, lam): table.get(a, lam) for lam in enumerate_partitions(4) for a in range(5)}
    table.save()
    data = json.loads(path.read_text())
    assert data["version"] == CACHE_FORMAT_VERSION
    assert {"a", "lambda", "poly"} <= set(data["entries"][0])
    fresh = SubTable(path)
    for key, value in want.items():
        assert fresh.memo[key] == value


def test_stale_cache_is_ignored(tmp_path):
    path = tmp_path / "sub.json"
    path.write_text(json.dumps({"version": -1, "entries": [{"a": 1, "lambda": "1,1", "poly": [[0, 99]]}]}))
    assert SubTable(path).get(1, (1, 1)).to_text() == "t + 1"
