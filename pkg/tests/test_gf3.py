import random

import pytest

from cml3 import gf3
from cml3.gf3 import RankResult, SparseRow, rank_and_kernel, rank_only


def test_unit_rows_independent():
    rows = [SparseRow({"a": 1}), SparseRow({"b": 1})]
    res = rank_and_kernel(rows)
    assert res.rank == 2
    assert res.kernel_basis == ()
    assert res.pivot_keys == ("a", "b")


def test_proportional_rows():
    r = {"a": 1, "c": 2}
    res = rank_and_kernel([SparseRow(r), SparseRow({k: 2 * v for k, v in r.items()})])
    assert res.rank == 1
    assert res.kernel_basis == ((1, 1),)  # r + 2r = 0 mod 3


def test_empty_input():
    res = rank_and_kernel([])
    assert res == RankResult(0, (), ())


def test_zero_row_gets_unit_kernel_vector():
    res = rank_and_kernel([SparseRow({"a": 1}), SparseRow({})])
    assert res.rank == 1
    assert res.kernel_basis == ((0, 1),)


def test_sparse_row_normalizes():
    row = SparseRow({"b": 5, "a": 3, "c": 1})
    assert row.keys() == ("b", "c")  # 3 = 0 dropped, 5 = 2 kept
    assert row["b"] == 2
    assert list(row) == ["b", "c"]


def test_sparse_row_rejects_nothing_but_orders():
    row = SparseRow([("z", 1), ("a", 2)])
    assert row.keys() == ("a", "z")


def _random_rows(rng, nrows, ncols, density=0.5):
    rows = []
    for _ in range(nrows):
        row = {}
        for c in range(ncols):
            if rng.random() < density:
                row[c] = rng.choice((1, 2))
        rows.append(row)
    return rows


def test_rank_shuffle_invariant_and_kernel_exact():
    rng = random.Random(0)
    for _ in range(40):
        rows = _random_rows(rng, rng.randrange(1, 9), rng.randrange(1, 7))
        res = rank_and_kernel(rows)
        shuffled = rows[:]
        rng.shuffle(shuffled)
        assert rank_and_kernel(shuffled).rank == res.rank
        assert res.rank <= min(len(rows), len({k for r in rows for k in r}))
        assert res.rank + len(res.kernel_basis) == len(rows)
        for vec in res.kernel_basis:
            combo = {}
            for coeff, row in zip(vec, rows):
                for k, v in row.items():
                    combo[k] = (combo.get(k, 0) + coeff * v) % 3
            assert all(v == 0 for v in combo.values())


def test_dense_and_sparse_paths_agree(monkeypatch):
    rng = random.Random(1)
    for _ in range(25):
        rows = _random_rows(rng, rng.randrange(1, 8), rng.randrange(1, 6))
        dense = rank_and_kernel(rows)
        monkeypatch.setattr(gf3, "DENSE_MAX_COLS", 0)
        sparse = rank_and_kernel(rows)
        monkeypatch.undo()
        assert dense == sparse


def test_rank_only_matches_rank_and_kernel():
    rng = random.Random(2)
    for _ in range(25):
        rows = _random_rows(rng, rng.randrange(1, 10), rng.randrange(1, 7))
        full = rank_and_kernel(rows)
        rank, pivots = rank_only(rows)
        assert rank == full.rank
        assert pivots == full.pivot_keys


def test_gf3_inverse():
    assert gf3.gf3_inv(1) == 1
    assert gf3.gf3_inv(2) == 2
    with pytest.raises(ZeroDivisionError):
        gf3.gf3_inv(3)
