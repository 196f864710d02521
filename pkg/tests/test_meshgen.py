import numpy as np
import pytest
from hypothesis import given, strategies as st

from shishkinfem.meshgen import (Region, transition_params, build_x_axis,
                                 build_y_axis, build_mesh, classify,
                                 classify_points)


class TestTransitionParams:
    def test_small_eps(self):
        lx, ly = transition_params(1e-6, 2.0, 1.0)
        assert lx == pytest.approx(1.38155e-5, rel=1e-4)
        assert ly == pytest.approx(4.14465e-2, rel=1e-4)

    def test_cap_active(self):
        lx, _ = transition_params(0.3, 0.5, 1.0)
        assert lx == 0.5  # 1.2*log(1/0.3) ~ 1.445 exceeds the cap

    def test_tiny_eps(self):
        lx, _ = transition_params(1e-9, 2.0, 1.0)
        assert lx == pytest.approx(2.0723e-8, rel=1e-4)

    @pytest.mark.parametrize("eps", [0.0, 1.0, 1.5, -0.1])
    def test_domain_errors(self, eps):
        with pytest.raises(ValueError):
            transition_params(eps, 2.0, 1.0)

    @given(st.floats(min_value=1e-12, max_value=0.999),
           st.floats(min_value=0.1, max_value=10.0),
           st.floats(min_value=0.1, max_value=10.0))
    def test_bounds(self, eps, alpha, beta):
        lx, ly = transition_params(eps, alpha, beta)
        assert 0.0 < lx <= 0.5
        assert 0.0 < ly <= 0.25


class TestXAxis:
    def test_hand_evaluated(self):
        ax = build_x_axis(4, 0.1)
        np.testing.assert_allclose(
            ax.nodes, [-1, -0.55, -0.1, -0.05, 0, 0.05, 0.1, 0.55, 1],
            atol=1e-15)

    def test_uniform_at_cap(self):
        ax = build_x_axis(4, 0.5)
        np.testing.assert_allclose(np.diff(ax.nodes), 0.25, atol=1e-15)

    def test_transition_node_and_spacings(self):
        ax = build_x_axis(8, 0.1)
        n = ax.n_intervals  # 2N intervals
        assert n == 16
        # positive half: node N/2 past center is the transition point
        assert ax.nodes[8 + 4] == pytest.approx(0.1)
        assert ax.nodes[8 + 1] - ax.nodes[8] == pytest.approx(0.05 / 2)
        assert ax.nodes[8 + 5] - ax.nodes[8 + 4] == pytest.approx(0.225)

    def test_symmetric(self):
        ax = build_x_axis(12, 0.3)
        np.testing.assert_allclose(ax.nodes, -ax.nodes[::-1], atol=1e-14)

    def test_odd_n_rejected(self):
        with pytest.raises(ValueError):
            build_x_axis(5, 0.1)


class TestYAxis:
    def test_hand_evaluated_n4(self):
        ay = build_y_axis(4, 0.25)
        np.testing.assert_allclose(ay.nodes, [-1, -0.75, 0, 0.75, 1],
                                   atol=1e-15)

    def test_hand_evaluated_n8(self):
        ay = build_y_axis(8, 0.2)
        np.testing.assert_allclose(
            ay.nodes, [-1, -0.9, -0.8, -0.4, 0, 0.4, 0.8, 0.9, 1], atol=1e-15)

    def test_branch_boundary(self):
        ay = build_y_axis(4, 0.25)
        assert ay.nodes[3] == pytest.approx(0.75)

    def test_not_multiple_of_4(self):
        with pytest.raises(ValueError):
            build_y_axis(6, 0.2)


class TestWidths:
    @pytest.mark.parametrize("N,lx,ly", [(8, 0.1, 0.2), (16, 0.02, 0.1)])
    def test_piecewise_spacings(self, N, lx, ly):
        ax = build_x_axis(N, lx)
        hx = np.diff(ax.nodes)
        # fine x-spacing 2*lx/N, coarse 2*(1-lx)/N on each half
        np.testing.assert_allclose(hx[N // 2:N], 2 * lx / N)
        np.testing.assert_allclose(hx[:N // 2], 2 * (1 - lx) / N)
        ay = build_y_axis(N, ly)
        hy = np.diff(ay.nodes)
        np.testing.assert_allclose(hy[:N // 4], 4 * ly / N)
        np.testing.assert_allclose(hy[N // 4:3 * N // 4], 4 * (1 - ly) / N)


class TestNestedness:
    @pytest.mark.parametrize("eps", [1e-5, 1e-8])
    def test_2n_contains_n(self, eps):
        lx, ly = transition_params(eps, 2.0, 1.0)
        for N in (8, 16, 32):
            coarse = build_mesh(N, lx, ly)
            fine = build_mesh(2 * N, lx, ly)
            np.testing.assert_allclose(fine.x_axis.nodes[::2],
                                       coarse.x_axis.nodes, atol=1e-12)
            np.testing.assert_allclose(fine.y_axis.nodes[::2],
                                       coarse.y_axis.nodes, atol=1e-12)


class TestClassify:
    def test_examples(self):
        assert classify(0.5, 0.0, 0.1, 0.2) is Region.COARSE
        assert classify(0.05, 0.95, 0.1, 0.2) is Region.LAYER_XY
        assert classify(-0.05, 0.0, 0.1, 0.2) is Region.LAYER_X

    def test_tie_break_layer_wins(self):
        assert classify(0.1, 0.0, 0.1, 0.2) is Region.LAYER_X
        assert classify(0.5, 0.8, 0.1, 0.2) is Region.LAYER_Y
        assert classify(0.1, 0.8, 0.1, 0.2) is Region.LAYER_XY

    def test_outside_domain(self):
        with pytest.raises(ValueError):
            classify(1.5, 0.0, 0.1, 0.2)

    @given(st.floats(min_value=-1, max_value=1),
           st.floats(min_value=-1, max_value=1))
    def test_even_symmetry(self, x, y):
        tag = classify(x, y, 0.1, 0.2)
        assert classify(-x, y, 0.1, 0.2) is tag
        assert classify(x, -y, 0.1, 0.2) is tag

    def test_vectorized_matches_scalar(self):
        rng = np.random.default_rng(0)
        pts = rng.uniform(-1, 1, size=(200, 2))
        tags = classify_points(pts[:, 0], pts[:, 1], 0.1, 0.2)
        for (x, y), tag in zip(pts, tags):
            assert classify(x, y, 0.1, 0.2) is tag

    def test_transition_lines_are_nodes(self):
        lx, ly = transition_params(1e-6, 2.0, 1.0)
        mesh = build_mesh(16, lx, ly)
        xs, ys = mesh.x_axis.nodes, mesh.y_axis.nodes
        for v in (-lx, lx):
            assert np.min(np.abs(xs - v)) < 1e-14
        for v in (-1 + ly, 1 - ly):
            assert np.min(np.abs(ys - v)) < 1e-14
