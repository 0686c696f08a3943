import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from opradius import matcore as mc
from opradius.matcore import DimensionError, Rng


seeds = st.integers(0, 2**32 - 1)


def test_block_layout():
    x, y, z, w = (np.full((2, 2), v) for v in (1, 2, 3, 4))
    m = mc.block(x, y, z, w)
    assert m.shape == (4, 4)
    assert m[0, 0] == 1 and m[0, 3] == 2 and m[3, 0] == 3 and m[3, 3] == 4


def test_block_zero_shorthand():
    x = np.eye(3)
    m = mc.block(0, x, x, 0)
    assert np.all(m[:3, :3] == 0) and np.all(m[:3, 3:] == x)


def test_block_rejects_mismatched_sizes():
    with pytest.raises(DimensionError):
        mc.block(np.eye(2), np.eye(3), np.eye(2), np.eye(2))
    with pytest.raises(DimensionError):
        mc.BlockSpec2x2(np.ones((2, 3)), np.eye(2), np.eye(2), np.eye(2))


@given(seeds, st.integers(1, 5))
def test_split_inverts_block(seed, d):
    g = Rng(seed).generator()
    parts = [mc.random_ginibre(d, g) for _ in range(4)]
    spec = mc.split2x2(mc.block(*parts))
    for got, want in zip((spec.x, spec.y, spec.z, spec.w), parts):
        assert np.array_equal(got, want)


def test_split_odd_dimension():
    with pytest.raises(DimensionError):
        mc.split2x2(np.eye(3))


@given(seeds, st.integers(1, 3), st.integers(1, 4))
def test_scalar_embed_is_kron(seed, n, d):
    alpha = mc.ginibre(n, n, Rng(seed))
    assert np.array_equal(mc.scalar_embed(alpha, d), np.kron(alpha, np.eye(d)))


def test_scalar_embed_rectangular():
    a = np.arange(6).reshape(2, 3)
    assert np.array_equal(mc.scalar_embed(a, 2), np.kron(a, np.eye(2)))


def test_scalar_embed_bad_d():
    with pytest.raises(ValueError):
        mc.scalar_embed(np.eye(2), 0)


def test_leading_principal_blocks():
    a = np.arange(36).reshape(6, 6).astype(complex)
    t = mc.leading_principal_blocks(a, 2, 2)
    # rows/cols {0,1} and {3,4} of the 3x3 block structure
    keep = [0, 1, 3, 4]
    assert np.array_equal(t, a[np.ix_(keep, keep)])


def test_arithmetic_and_errors():
    a, b = np.eye(2), np.ones((2, 2))
    assert np.array_equal(mc.add(a, b), a + b)
    assert np.array_equal(mc.sub(a, b), a - b)
    assert np.array_equal(mc.mul(a, b, b), b @ b)
    assert np.array_equal(mc.scale(2j, b), 2j * b)
    with pytest.raises(DimensionError):
        mc.add(a, np.eye(3))
    with pytest.raises(DimensionError):
        mc.mul(a, np.ones((3, 3)))


def test_adjoint_and_direct_sum():
    a = np.array([[1, 2j], [3, 4]])
    assert np.array_equal(mc.adjoint(a), a.conj().T)
    ds = mc.direct_sum(a, np.eye(1))
    assert ds.shape == (3, 3) and ds[2, 2] == 1 and ds[0, 2] == 0


def test_results_are_read_only():
    m = mc.block(np.eye(2), 0, 0, np.eye(2))
    with pytest.raises(ValueError):
        m[0, 0] = 5


def test_rng_streams_reproducible_and_distinct():
    a = mc.random_ginibre(3, Rng(7, 1))
    assert np.array_equal(a, mc.random_ginibre(3, Rng(7, 1)))
    assert not np.array_equal(a, mc.random_ginibre(3, Rng(7, 2)))
    assert not np.array_equal(a, mc.random_ginibre(3, Rng(8, 1)))
    g0, g1 = Rng(7, 1).generator(), Rng(7, 1).generator(substream=1)
    assert g0.standard_normal() != g1.standard_normal()


def test_rng_rejects_out_of_range_seed():
    with pytest.raises(ValueError):
        Rng(-1)
    with pytest.raises(ValueError):
        Rng(2**64)


@given(seeds, st.integers(1, 6))
def test_haar_unitary_is_unitary(seed, d):
    u = mc.random_haar_unitary(d, Rng(seed))
    assert np.allclose(u.conj().T @ u, np.eye(d), atol=1e-12)


def test_haar_first_moment():
    # E|u_11|^2 = 1/d for Haar measure
    g = Rng(3).generator()
    d = 3
    vals = [abs(mc.random_haar_unitary(d, g)[0, 0]) ** 2 for _ in range(4000)]
    assert abs(np.mean(vals) - 1 / d) < 0.02


def test_ginibre_second_moment():
    g = mc.ginibre(200, 200, Rng(5))
    assert abs(np.mean(np.abs(g) ** 2) - 1.0) < 0.02


def test_unit_vectors():
    v = mc.random_unit_vectors(4, 50, Rng(1))
    assert np.allclose(np.linalg.norm(v, axis=1), 1.0)


@given(seeds, st.integers(1, 4), st.integers(1, 4))
def test_json_round_trip(seed, r, c):
    a = mc.ginibre(r, c, Rng(seed))
    back = mc.matrix_from_json(json.loads(json.dumps(mc.matrix_to_json(a))))
    assert np.array_equal(back, a)


def test_json_file_round_trip(tmp_path):
    a = mc.random_ginibre(3, Rng(2))
    p = tmp_path / "m.json"
    mc.save_matrix(a, p)
    assert np.array_equal(mc.load_matrix(p), a)


@pytest.mark.parametrize("obj", [
    {"rows": 2, "cols": 2, "entries": [[0, 0]] * 3},
    {"rows": 1, "cols": 1, "entries": [[0]]},
    {"rows": 0, "cols": 1, "entries": []},
    {"rows": 1, "cols": 1, "entries": [[True, 0]]},
    {"cols": 1, "entries": [[0, 0]]},
    [1, 2, 3],
])
def test_json_malformed(obj):
    with pytest.raises(ValueError):
        mc.matrix_from_json(obj)


def test_json_rejects_nan_literal(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"rows": 1, "cols": 1, "entries": [[NaN, 0]]}')
    with pytest.raises(ValueError):
        mc.load_matrix(p)


def test_as_cmatrix_rejects_inf_and_bad_shapes():
    with pytest.raises(ValueError):
        mc.as_cmatrix([[np.inf]])
    with pytest.raises(DimensionError):
        mc.as_cmatrix([1, 2, 3])


def test_digest_stable_and_sensitive():
    a = np.eye(2)
    assert mc.digest([a, 1]) == mc.digest([a.copy(), 1])
    assert mc.digest([a, 1]) != mc.digest([a, -1])
    assert mc.digest([a]) != mc.digest([2 * a])
