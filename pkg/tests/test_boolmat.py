import random

import numpy as np
import pytest

from dirdiam import boolmat as bm


def rand_matrix(rng, rows, cols, density):
    entries = [[c for c in range(cols) if rng.random() < density]
               for _ in range(rows)]
    return bm.SparseBoolMatrix.from_rows(rows, cols, entries)


def to_numpy(a):
    out = np.zeros((a.rows, a.cols), dtype=bool)
    for i, entries in enumerate(a.row_entries):
        out[i, list(entries)] = True
    return out


def test_product_matches_numpy():
    rng = random.Random(0)
    for trial in range(60):
        r = rng.randint(0, 25)
        k = rng.randint(1, 25)
        c = rng.randint(1, 25)
        density = rng.choice((0.02, 0.1, 0.5))
        a = rand_matrix(rng, r, k, density)
        b = rand_matrix(rng, k, c, density)
        got = to_numpy(bm.product(a, b))
        want = to_numpy(a) @ to_numpy(b)
        assert (got == want).all()


def test_blocking_is_invisible():
    rng = random.Random(1)
    a = rand_matrix(rng, 33, 20, 0.2)
    b = rand_matrix(rng, 20, 17, 0.2)
    base = bm.product(a, b)
    for block in (1, 2, 5, 33, 1000):
        assert bm.product(a, b, block_rows=block) == base


def test_shape_mismatch():
    a = bm.SparseBoolMatrix.from_rows(2, 3, [[0], [1]])
    b = bm.SparseBoolMatrix.from_rows(2, 2, [[0], [1]])
    with pytest.raises(ValueError):
        bm.product(a, b)


def test_identity_is_neutral():
    rng = random.Random(2)
    a = rand_matrix(rng, 9, 9, 0.3)
    assert bm.product(a, bm.SparseBoolMatrix.identity(9)) == a
    assert bm.product(bm.SparseBoolMatrix.identity(9), a) == a


def test_validation_rejects_bad_rows():
    with pytest.raises(ValueError):
        bm.SparseBoolMatrix(1, 3, ((2, 1),))  # not increasing
    with pytest.raises(ValueError):
        bm.SparseBoolMatrix(1, 3, ((3,),))  # out of range
    with pytest.raises(ValueError):
        bm.SparseBoolMatrix(2, 3, ((0,),))  # row count mismatch


def test_find_zero_entry():
    ones = bm.SparseBoolMatrix.from_rows(2, 2, [[0, 1], [0, 1]])
    assert bm.find_zero_entry(ones) is None
    holed = bm.SparseBoolMatrix.from_rows(2, 3, [[0, 1, 2], [0, 2]])
    assert bm.find_zero_entry(holed) == (1, 1)
    assert bm.find_zero_entry(holed, row_labels=["a", "b"],
                              col_labels=["x", "y", "z"]) == ("b", "y")
    empty = bm.SparseBoolMatrix.from_rows(0, 5, [])
    assert bm.find_zero_entry(empty) is None


def test_all_pairs_witnessed():
    rng = random.Random(3)
    fams = []
    for _ in range(4):
        fams.append((rand_matrix(rng, 10, 12, 0.4),
                     rand_matrix(rng, 12, 11, 0.4)))
    want = np.zeros((10, 11), dtype=bool)
    for a, b in fams:
        want |= to_numpy(a) @ to_numpy(b)
    assert bm.all_pairs_witnessed(fams) == bool(want.all())
    # degenerate outer shape: nothing to witness
    empty = bm.SparseBoolMatrix.from_rows(0, 4, [])
    right = rand_matrix(rng, 4, 0, 0.5)
    assert bm.all_pairs_witnessed([(empty, rand_matrix(rng, 4, 3, 0.5))])
    assert bm.all_pairs_witnessed([(rand_matrix(rng, 3, 4, 0.5), right)])
    with pytest.raises(ValueError):
        bm.all_pairs_witnessed([])


def test_all_pairs_witnessed_single_product():
    rng = random.Random(4)
    for _ in range(30):
        a = rand_matrix(rng, 8, 9, 0.6)
        b = rand_matrix(rng, 9, 7, 0.6)
        direct = bm.find_zero_entry(bm.product(a, b)) is None
        assert bm.all_pairs_witnessed([(a, b)]) == direct
