import math
import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from strongmax import _kernels
from strongmax.grid import Basis, GridError, GridFunction, build_prefix_sum
from strongmax.maximal import (
    MaximalQuery,
    level_set_measure,
    maximal_reference_scan,
    multilinear_fractional_maximal,
    orlicz_maximal,
    strong_maximal,
)
from strongmax.young import identity, phi_n


def gf(values, h=None):
    values = np.asarray(values, dtype=np.float64)
    h = h or (1.0,) * values.ndim
    return GridFunction(values.shape, h, values)


ALL = Basis("all")


class TestStrongMaximal:
    def test_constant(self):
        f = gf(np.full((4, 4), 2.5))
        out = strong_maximal(f, ALL)
        assert np.allclose(out.values, 2.5)

    def test_demo_interval(self):
        f = gf([1.0, 0.0, 0.0, 0.0])
        out = strong_maximal(f, ALL)
        assert np.allclose(out.values, [1.0, 0.5, 1.0 / 3.0, 0.25])

    def test_dominates_input(self):
        rng = np.random.default_rng(0)
        f = gf(rng.uniform(0, 3, (6, 5)))
        out = strong_maximal(f, ALL)
        assert np.all(out.values >= f.values - 1e-15)

    def test_sublinearity(self):
        rng = np.random.default_rng(1)
        f = gf(rng.uniform(0, 2, (8,)))
        g = gf(rng.uniform(0, 2, (8,)))
        ms = strong_maximal(gf(f.values + g.values), ALL)
        assert np.all(
            ms.values <= strong_maximal(f, ALL).values + strong_maximal(g, ALL).values + 1e-12
        )

    def test_dyadic_below_all_rects(self):
        rng = np.random.default_rng(2)
        f = gf(rng.uniform(0, 3, (8, 16)))
        dy = strong_maximal(f, Basis("dyadic"))
        al = strong_maximal(f, ALL)
        assert np.all(dy.values <= al.values + 0.0)  # exact inequality


class TestFractional:
    def test_1d_alpha_half(self):
        f = gf([1.0, 0.0, 0.0, 0.0])
        q = MaximalQuery(basis=ALL, alpha=0.5, m=1)
        out = multilinear_fractional_maximal([f], q)
        expect = [1.0, 1 / math.sqrt(2), 1 / math.sqrt(3), 0.5]
        assert np.allclose(out.values, expect)

    def test_bilinear_product(self):
        f1 = gf([1.0, 0.0, 0.0, 0.0])
        f2 = gf([1.0, 1.0, 1.0, 1.0])
        q = MaximalQuery(basis=ALL, alpha=0.0, m=2)
        out = multilinear_fractional_maximal([f1, f2], q)
        assert np.allclose(out.values, [1.0, 0.5, 1 / 3, 0.25])

    def test_bilinear_constants(self):
        f = gf(np.ones((3, 3)))
        q = MaximalQuery(basis=ALL, alpha=0.0, m=2)
        out = multilinear_fractional_maximal([f, f], q)
        assert np.allclose(out.values, 1.0)

    def test_alpha_range_validated(self):
        f = gf(np.ones(4))
        with pytest.raises(GridError):
            multilinear_fractional_maximal([f], MaximalQuery(basis=ALL, alpha=1.0, m=1))

    def test_grid_mismatch(self):
        with pytest.raises(GridError):
            multilinear_fractional_maximal(
                [gf(np.ones(4)), gf(np.ones(5))], MaximalQuery(basis=ALL, m=2)
            )


class TestDualImplementations:
    @pytest.mark.parametrize("shape", [(16,), (16, 16), (5, 7), (4, 5, 6), (6, 6, 6)])
    @pytest.mark.parametrize("m,alpha", [(1, 0.0), (1, 0.5), (2, 0.0), (2, 1.0)])
    def test_exact_agreement_small_grids(self, shape, m, alpha):
        rng = np.random.default_rng(hash((shape, m)) % 2**31)
        h = tuple(rng.uniform(0.3, 1.5, len(shape)))
        fs = [gf(rng.uniform(0, 3, shape), h=h) for _ in range(m)]
        q = MaximalQuery(basis=ALL, alpha=alpha, m=m)
        fast = multilinear_fractional_maximal(fs, q)
        slow = maximal_reference_scan(fs, q)
        assert np.array_equal(fast.values, slow.values)  # bit-identical

    def test_numpy_backend_bit_identical_in_process(self):
        rng = np.random.default_rng(9)
        for shape in [(12,), (9, 11), (5, 4, 6)]:
            fs = [gf(rng.uniform(0, 2, shape))]
            P = np.stack([build_prefix_sum(f).cum for f in fs])
            h = fs[0].cell_size
            via_dispatch = _kernels.sweep_all_rects(P, h, -1.0)
            if len(shape) == 1:
                via_numpy = _kernels._sweep_1d_numpy(P, h, -1.0)
            elif len(shape) == 2:
                via_numpy = _kernels._sweep_2d_numpy(P, h, -1.0)
            else:
                via_numpy = _kernels._sweep_3d_numpy(P, h, -1.0)
            assert np.array_equal(via_dispatch, via_numpy)

    def test_env_flag_selects_numpy_backend(self, tmp_path):
        code = (
            "import os, numpy as np\n"
            "from strongmax import _kernels\n"
            "assert not _kernels.USING_NUMBA\n"
            "rng = np.random.default_rng(3)\n"
            "from strongmax.grid import GridFunction, build_prefix_sum\n"
            "f = GridFunction((6, 7), (1.0, 1.0), rng.uniform(0, 2, (6, 7)))\n"
            "P = np.stack([build_prefix_sum(f).cum])\n"
            "out = _kernels.sweep_all_rects(P, f.cell_size, -1.0)\n"
            "np.save(r'%s', out)\n" % (tmp_path / "out.npy")
        )
        env = dict(os.environ, STRONGMAX_NO_NUMBA="1")
        subprocess.run([sys.executable, "-c", code], check=True, env=env)
        rng = np.random.default_rng(3)
        f = gf(rng.uniform(0, 2, (6, 7)))
        here = strong_maximal(f, ALL)
        assert np.array_equal(np.load(tmp_path / "out.npy"), here.values)


class TestOrlicz:
    def test_identity_psi_matches_fractional(self):
        rng = np.random.default_rng(4)
        f = gf(rng.uniform(0, 3, (6, 6)))
        q_frac = MaximalQuery(basis=ALL, alpha=0.5, m=1)
        q_orl = MaximalQuery(basis=ALL, alpha=0.5, m=1, orlicz=(identity(),))
        a = multilinear_fractional_maximal([f], q_frac)
        b = orlicz_maximal([f], q_orl)
        assert np.allclose(a.values, b.values, rtol=1e-8)

    def test_constant_quadratic_norm(self):
        f = gf(np.full((4,), 2.0))
        from strongmax.young import power

        q = MaximalQuery(basis=ALL, alpha=0.0, m=1, orlicz=(power(2.0),))
        out = orlicz_maximal([f], q)
        assert np.allclose(out.values, 2.0, rtol=1e-9)

    def test_phi2_dominates_fractional(self):
        rng = np.random.default_rng(6)
        f = gf(rng.uniform(0, 2, (8,)))
        g = gf(rng.uniform(0, 2, (8,)))
        q_frac = MaximalQuery(basis=ALL, alpha=0.0, m=2)
        q_orl = MaximalQuery(basis=ALL, alpha=0.0, m=2, orlicz=(phi_n(2), phi_n(2)))
        a = multilinear_fractional_maximal([f, g], q_frac)
        b = orlicz_maximal([f, g], q_orl)
        assert np.all(b.values >= a.values - 1e-9)


class TestLevelSet:
    def test_empty(self):
        assert level_set_measure(gf(np.ones(5)), 2.0) == 0.0

    def test_counting(self):
        mf = gf([1.0, 0.5, 1 / 3, 0.25])
        assert level_set_measure(mf, 0.4) == 2.0

    def test_lambda_zero_full(self):
        mf = gf(np.full((3, 3), 0.1), h=(0.5, 0.5))
        assert level_set_measure(mf, 0.0) == pytest.approx(9 * 0.25)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**31))
def test_reduction_chain_random(seed):
    rng = np.random.default_rng(seed)
    f = gf(rng.uniform(0, 3, (5, 6)))
    sm = strong_maximal(f, ALL)
    frac = multilinear_fractional_maximal([f], MaximalQuery(basis=ALL, alpha=0.0, m=1))
    orl = orlicz_maximal([f], MaximalQuery(basis=ALL, alpha=0.0, m=1, orlicz=(identity(),)))
    assert np.allclose(sm.values, frac.values, rtol=1e-12)
    assert np.allclose(sm.values, orl.values, rtol=1e-8)
