"""Smoke test for the liecensus extension module.

Run after `maturin develop -m crates/python/Cargo.toml`, or with the built
shared library copied next to this file as liecensus.so.
"""

import json
import sys

import liecensus as lc


def main():
    a2 = lc.LieType("A", 2)
    assert str(a2) == "A2"
    assert lc.weyl_dim(a2, [2, 5]) == 81
    assert a2.dim([1, 1]) == 8
    assert lc.dual_weight(a2, [2, 5]) == [5, 2]
    assert lc.is_self_dual(lc.LieType.parse("G2"), [1, 0])

    e8 = lc.LieType("E", 8)
    assert e8.positive_root_count() == 120
    assert len(e8.positive_roots()) == 120
    assert lc.weyl_dim(e8, [0] * 7 + [1]) == 248
    big = lc.weyl_dim(e8, [9] * 8)
    assert big > 2**64

    weights = lc.enumerate_weights(lc.LieType("B", 2), 30)
    assert ([0, 1], 4) in weights and ([1, 0], 5) in weights

    rep = lc.verify_kac(7)
    assert rep.matches and len(rep.found) == 5
    assert ("G2", [1, 0], 7) in rep.found
    assert len(lc.prime_degree_census(11)) == len(lc.verify_kac(11).found)

    pb = lc.p_bound(3)
    assert (pb.floor, pb.ceil) == (140, 141)
    bb1, th8, t11 = lc.candidate_count_caps(3)
    assert bb1.floor == 2025 and t11.floor == 159095
    assert lc.p_bound(2).flags == ["theorem_requires_r_gt_2"]
    assert lc.alternating_cap(5) == ("21/2", 10)
    assert len(lc.primes_below(140)) == 34
    assert lc.field_exponents(4, 2) == [2, 4]

    assert ([2, 1], 15) in lc.candidate_weights(a2, 3, 7)
    records, summary = lc.enumerate_candidates(3, 1)
    summary = json.loads(summary)
    assert summary["primes_considered"] == 34
    assert len(records) == summary["total_records"]
    assert {r.lie_type for r in records} == {a2}
    assert all(r.p < r.dim and r.t == 1 for r in records)

    try:
        lc.enumerate_candidates(7, 1)
    except lc.ResourceLimitError:
        pass
    else:
        raise AssertionError("expected ResourceLimitError")
    try:
        lc.weyl_dim(a2, [1, 2, 3])
    except ValueError:
        pass
    else:
        raise AssertionError("expected ValueError")

    print(f"liecensus {lc.__version__}: smoke test passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
