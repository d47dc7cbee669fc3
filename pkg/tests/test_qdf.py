import numpy as np
import pytest
import scipy.integrate
import scipy.stats

import qdentropy as qe
from qdentropy.stats import qdf
from qdentropy.stats.kernels import KERNELS, get_kernel
from qdentropy.errors import ConfigError, DomainError, NonPositiveQdf, QuadratureNotConverged


@pytest.fixture
def x50():
    return qe.sample('normal(0,1)', 50, qe.RngStream(7, 0))


def _qdf_oracle(xs, t, h, kernel):
    xs = np.sort(xs)
    n = xs.size
    total = kernel((t - 1) / h) * xs[-1] - kernel(t / h) * xs[0]
    for i in range(1, n):
        total += kernel((t - i / n) / h) * (xs[i] - xs[i - 1])
    return total / h


###############################################################################
# kernels
###############################################################################

@pytest.mark.parametrize('name', sorted(KERNELS))
def test_kernel_constants(name):
    k = get_kernel(name)
    lo, hi = (-np.inf, np.inf) if name == 'gaussian' else (-1, 1)
    mass, _ = scipy.integrate.quad(k, lo, hi)
    k2, _ = scipy.integrate.quad(lambda z: k(z) ** 2, lo, hi)
    x2k, _ = scipy.integrate.quad(lambda z: z ** 2 * k(z), lo, hi)
    assert mass == pytest.approx(1.0, abs=1e-10)
    assert k.int_k2 == pytest.approx(k2, abs=1e-10)
    assert k.int_x2k == pytest.approx(x2k, abs=1e-10)


def test_unknown_kernel():
    with pytest.raises(ConfigError):
        get_kernel('epanechnikov')


###############################################################################
# quantile density
###############################################################################

@pytest.mark.parametrize('kernel', sorted(KERNELS))
def test_qdf_hat_matches_sum(kernel, x50):
    t = np.linspace(0.01, 0.99, 17)
    cfg = qdf.KernelConfig(h=0.1, kernel=kernel)
    expected = [_qdf_oracle(x50.values, v, 0.1, get_kernel(kernel)) for v in t]
    np.testing.assert_allclose(qdf.qdf_hat(x50, t, cfg), expected, rtol=1e-12, atol=1e-12)


def test_qdf_hat_scalar_and_shortcut(x50):
    value = qdf.qdf_hat(x50, 0.5, h=0.05)
    assert isinstance(value, float)
    assert value == qdf.qdf_hat(x50, 0.5, qdf.KernelConfig(h=0.05))


def test_qdf_hat_is_linear_in_scale(x50):
    t = np.linspace(0.05, 0.95, 9)
    np.testing.assert_allclose(qdf.qdf_hat(3.0 * x50.values, t, h=0.05),
                               3.0 * qdf.qdf_hat(x50, t, h=0.05), rtol=1e-12)


def test_qdf_hat_near_truth():
    x = qe.sample('normal(0,1)', 5000, qe.RngStream(3))
    assert qdf.qdf_hat(x, 0.5, h=0.05) == pytest.approx(np.sqrt(2 * np.pi), rel=0.1)


def test_qdf_hat_requires_bandwidth(x50):
    with pytest.raises(ConfigError):
        qdf.qdf_hat(x50, 0.5)


def test_qdf_hat_hand_value():
    k = get_kernel('gaussian')
    expected = 10 * (k(2.5) + k(0.0) + k(-2.5))
    assert qdf.qdf_hat([1.0, 2.0, 3.0, 4.0], 0.5, h=0.1) == pytest.approx(expected, abs=1e-4)
    assert expected == pytest.approx(4.3400, abs=5e-4)


def test_qdf_hat_is_derivative_of_smoothed_quantile(x50):
    # Q(t) = int_0^1 Q_n(s) K_h(t - s) ds in closed form, away from the boundary
    xs = x50.sorted_view
    n, h = xs.size, 0.05
    cells = np.arange(n + 1) / n

    def smoothed(t):
        cdf = scipy.stats.norm.cdf((t - cells) / h)
        return np.sum(xs * (cdf[:-1] - cdf[1:]))

    delta = 1e-6
    for t in (0.3, 0.5, 0.65):
        fd = (smoothed(t + delta) - smoothed(t - delta)) / (2 * delta)
        assert qdf.qdf_hat(x50, t, h=h) == pytest.approx(fd, rel=1e-4)


def test_qdf_curve(x50):
    cfg = qdf.KernelConfig(h=0.05, eps=0.05)
    curve = qdf.qdf_curve(x50, cfg, nb_nodes=21)
    assert curve.t[0] == pytest.approx(0.05) and curve.t[-1] == pytest.approx(0.95)
    assert curve.q.shape == (21,)


def test_empirical_quantile():
    x = [3.0, 1.0, 2.0, 4.0]
    assert qdf.empirical_quantile(x, 0.25) == 1.0
    assert qdf.empirical_quantile(x, 0.26) == 2.0
    assert qdf.empirical_quantile(x, 1.0) == 4.0
    np.testing.assert_array_equal(qdf.empirical_quantile(x, [0.1, 0.6]), [1.0, 3.0])
    with pytest.raises(DomainError):
        qdf.empirical_quantile(x, 0.0)


###############################################################################
# entropy
###############################################################################

def test_entropy_hat_result(x50):
    est = qdf.entropy_hat(x50, h=0.05)
    assert est.estimator_id == 'kernel' and est.n == 50
    assert est.tuning.h == 0.05 and est.tuning.eps == 0.01
    assert 1.0 < est.value < 1.8


def test_entropy_hat_scale_equivariance(x50):
    cfg = qdf.KernelConfig(h=0.05, eps=0.05)
    h0 = qdf.entropy_hat(x50, cfg).value
    h1 = qdf.entropy_hat(2.5 * x50.values, cfg).value
    assert h1 == pytest.approx(h0 + np.log(2.5), abs=1e-9)


@pytest.mark.parametrize('b', [-3.0, 0.5, 10.0])
def test_entropy_hat_translation(b, x50):
    # with eps/h large the boundary terms vanish on the trimmed range
    cfg = qdf.KernelConfig(h=0.02, eps=0.2)
    assert qdf.translation_bound(cfg) < 1e-15
    h0 = qdf.entropy_hat(x50, cfg).value
    h1 = qdf.entropy_hat(x50.values + b, cfg).value
    assert h1 == pytest.approx(h0, abs=1e-9)


def test_translation_bound_is_large_for_wide_bandwidth():
    cfg = qdf.KernelConfig(h=0.2, eps=0.01)
    k = get_kernel('gaussian')
    assert qdf.translation_bound(cfg) >= 0.999 * (k(0.05) + k(4.95)) / 0.2


def test_entropy_hat_stable_under_refinement(x50):
    coarse = qdf.KernelConfig(h=0.05, quadrature=qdf.QuadratureConfig(start_nodes=65))
    fine = qdf.KernelConfig(h=0.05, quadrature=qdf.QuadratureConfig(start_nodes=1025))
    assert qdf.entropy_hat(x50, coarse).value == pytest.approx(qdf.entropy_hat(x50, fine).value,
                                                               abs=1e-6)


def test_entropy_hat_non_positive_qdf():
    # a far-from-zero sample with a wide kernel drives the boundary term negative
    x = [100.0, 100.1, 100.2, 100.3]
    with pytest.raises(NonPositiveQdf) as err:
        qdf.entropy_hat(x, h=0.5)
    assert err.value.value <= 0
    assert 0 < err.value.t < 1


def test_entropy_hat_quadrature_budget(x50):
    quad = qdf.QuadratureConfig(start_nodes=3, node_budget=5, refinement_tolerance=1e-14)
    with pytest.raises(QuadratureNotConverged) as err:
        qdf.entropy_hat(x50, qdf.KernelConfig(h=0.05, quadrature=quad))
    assert err.value.nb_nodes == 5


def test_single_pass_quadrature(x50):
    quad = qdf.QuadratureConfig(start_nodes=129, node_budget=129, refinement_tolerance=1e-14)
    value, nodes = qdf.trimmed_log_integral(x50, qdf.KernelConfig(h=0.05, quadrature=quad))
    assert nodes == 129 and np.isfinite(value)


def test_budget_below_one_doubling_gives_single_pass(x50):
    quad = qdf.QuadratureConfig(start_nodes=129, node_budget=200)
    cfg = qdf.KernelConfig(h=0.0333, quadrature=quad)
    value, nodes = qdf.trimmed_log_integral(x50, cfg)
    assert nodes == 129
    single = qdf.KernelConfig(h=0.0333, quadrature=qdf.QuadratureConfig(129, 129))
    assert value == qdf.trimmed_log_integral(x50, single)[0]
    assert np.isfinite(qdf.entropy_hat(x50, cfg).value)


def test_refined_simpson():
    value, nodes = qdf.refined_simpson(np.exp, 0.0, 1.0, qdf.QuadratureConfig(start_nodes=5))
    assert value == pytest.approx(np.e - 1, abs=1e-8)
    assert nodes >= 9


@pytest.mark.parametrize('kwargs', [dict(h=0.0), dict(h=-1.0), dict(h=0.1, eps=0.0),
                                    dict(h=0.1, eps=0.5), dict(h=0.1, kernel='box')])
def test_kernel_config_errors(kwargs):
    with pytest.raises(ConfigError):
        qdf.KernelConfig(**kwargs)


@pytest.mark.parametrize('kwargs', [dict(start_nodes=4), dict(start_nodes=1), dict(node_budget=2),
                                    dict(refinement_tolerance=0.0)])
def test_quadrature_config_errors(kwargs):
    with pytest.raises(ConfigError):
        qdf.QuadratureConfig(**kwargs)


def test_kernel_config_replace():
    cfg = qdf.KernelConfig(h=0.1).replace(h=0.2, kernel='biweight')
    assert (cfg.h, cfg.eps, cfg.kernel) == (0.2, 0.01, 'biweight')


###############################################################################
# reference quantities
###############################################################################

def test_trimmed_entropy_tends_to_entropy():
    assert qdf.trimmed_entropy('exp(1)', eps=1e-6) == pytest.approx(1.0, abs=1e-3)
    assert qdf.trimmed_entropy('uniform', eps=0.1) == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize('law,expected', [('normal(0,1)', 0.5), ('exp(1)', 1.0), ('uniform', 0.0)])
def test_asymptotic_variance(law, expected):
    assert qdf.asymptotic_variance(law) == pytest.approx(expected, abs=1e-6)


@pytest.mark.slow
def test_entropy_hat_consistency():
    eps = 0.05
    values = [qdf.entropy_hat(qe.sample('normal(0,1)', 1000, qe.RngStream(17, r)),
                              h=0.01, eps=eps).value for r in range(20)]
    assert np.median(values) == pytest.approx(qdf.trimmed_entropy('normal(0,1)', eps), abs=0.05)


def _rate_bandwidth(n):
    # MSE-optimal bandwidths shrink like n^(-1/5)
    return 0.0333 * (50 / n) ** 0.2


@pytest.mark.slow
def test_entropy_hat_error_decreases_with_n():
    truth = qe.true_entropy('normal(0,1)')
    medians = []
    for n in (50, 200, 1000):
        errors = [abs(qdf.entropy_hat(qe.sample('normal(0,1)', n, qe.RngStream(23, r)),
                                      h=_rate_bandwidth(n)).value - truth) for r in range(100)]
        medians.append(np.median(errors))
    assert medians[0] > medians[1] > medians[2]


@pytest.mark.slow
def test_entropy_hat_asymptotic_variance():
    n, eps = 1000, 0.01
    target = qdf.trimmed_entropy('normal(0,1)', eps)
    scaled = [np.sqrt(n) * (qdf.entropy_hat(qe.sample('normal(0,1)', n, qe.RngStream(29, r)),
                                            h=_rate_bandwidth(n), eps=eps).value - target)
              for r in range(200)]
    assert np.var(scaled, ddof=1) == pytest.approx(qdf.asymptotic_variance('normal(0,1)'), rel=0.3)
