import math

import numpy as np
import pytest

from hhmeasure import FourierSymbol
from hhmeasure.besov import (almost_normal_sufficient, analytic_besov_seminorm,
                             besov_membership, default_radii, hankel_schatten_probe,
                             jacobian_integrability)
from hhmeasure.errors import ConjugateError, RangeError, TailError

DIVERGENT_RADII = (0.75, 0.9375, 0.984375)  # stop before band-40 saturation


class TestAnalyticSeminorm:
    @pytest.mark.parametrize("k", range(1, 11))
    def test_monomial_identity(self, k):
        # polar closed form: int_D |k z^{k-1}|^2 = pi k
        rep = analytic_besov_seminorm(FourierSymbol({k: 1.0}), 2.0, radii=[0.5, 1.0])
        assert rep.seminorm_partial == pytest.approx(math.pi * k, abs=1e-6)

    def test_constant_zero(self):
        rep = analytic_besov_seminorm(FourierSymbol({0: 3.0}), 2.0)
        assert rep.seminorm_partial == 0.0
        assert rep.verdict == "converging"

    def test_harmonic_tail_divergence(self):
        f = FourierSymbol({k: 1.0 / k for k in range(1, 41)})
        rep = analytic_besov_seminorm(f, 2.0, radii=DIVERGENT_RADII)
        assert rep.verdict == "diverging"
        # partials head toward pi * H_40
        h40 = sum(1.0 / k for k in range(1, 41))
        assert rep.trend[-1] < math.pi * h40

    def test_termwise_identity_on_random_polys(self, rng):
        for _ in range(5):
            coeffs = {k: complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
                      for k in range(int(rng.integers(1, 8)))}
            f = FourierSymbol(coeffs)
            rep = analytic_besov_seminorm(f, 2.0, radii=[0.5, 1.0])
            exact = math.pi * sum(k * abs(c) ** 2 for k, c in coeffs.items())
            assert rep.seminorm_partial == pytest.approx(exact, abs=1e-9)

    def test_p1_second_derivative_form(self):
        # int_D |F''| with F = z^2: |F''| = 2, integral = 2 pi
        rep = analytic_besov_seminorm(FourierSymbol({2: 1.0}), 1.0, radii=[0.5, 1.0])
        assert rep.seminorm_partial == pytest.approx(2 * math.pi, abs=1e-8)

    def test_rejects_bad_exponent(self):
        with pytest.raises(RangeError):
            analytic_besov_seminorm(FourierSymbol({1: 1.0}), 0.5)

    def test_rejects_coanalytic(self):
        with pytest.raises(RangeError):
            analytic_besov_seminorm(FourierSymbol({-1: 1.0}), 2.0)

    def test_rejects_singular_weight_at_one(self):
        with pytest.raises(RangeError):
            analytic_besov_seminorm(FourierSymbol({1: 1.0}), 1.5, radii=[0.5, 1.0])

    def test_rejects_truncation_at_one(self):
        f = FourierSymbol({1: 1.0}, tail_bound=0.1)
        with pytest.raises(TailError):
            analytic_besov_seminorm(f, 2.0, radii=[0.5, 1.0])

    def test_monotone_in_added_coefficients(self):
        # Parseval route: at p = 2 adding a coefficient only adds energy
        base = FourierSymbol({1: 1.0})
        bigger = FourierSymbol({1: 1.0, 3: 0.5})
        r1 = analytic_besov_seminorm(base, 2.0, radii=default_radii())
        r2 = analytic_besov_seminorm(bigger, 2.0, radii=default_radii())
        assert all(b >= a - 1e-12 for a, b in zip(r1.trend, r2.trend))

    def test_trend_nondecreasing(self):
        rep = analytic_besov_seminorm(FourierSymbol({2: 1.0, 5: 0.3}), 2.0)
        assert all(b >= a for a, b in zip(rep.trend, rep.trend[1:]))


class TestMembership:
    def test_analytic_symbol_trivial_half(self):
        f_rep, g_rep = besov_membership(FourierSymbol({1: 1.0, 2: 0.5}), 2.0)
        assert g_rep.seminorm_partial == 0.0

    def test_cosine_both_halves(self):
        f_rep, g_rep = besov_membership(FourierSymbol({1: 1.0, -1: 1.0}), 2.0,
                                        radii=[0.5, 0.9, 1.0])
        assert f_rep.seminorm_partial == pytest.approx(math.pi, abs=1e-8)
        assert g_rep.seminorm_partial == pytest.approx(math.pi, abs=1e-8)

    def test_constant(self):
        f_rep, g_rep = besov_membership(FourierSymbol({0: 4.0}), 3.0)
        assert f_rep.seminorm_partial == 0.0 and g_rep.seminorm_partial == 0.0


class TestSufficientCondition:
    def test_finite_band_met(self):
        sym = FourierSymbol({1: 1.0, -2: 0.3j, 0: 0.5})
        verdict = almost_normal_sufficient(sym, 2.0, 2.0)
        assert verdict.verdict == "met"

    def test_divergent_real_part(self):
        coeffs = {}
        for k in range(1, 41):
            coeffs[k] = 0.5 / k
            coeffs[-k] = 0.5 / k  # real-valued 1/k cosine series
        sym = FourierSymbol(coeffs, real_valued=True)
        verdict = almost_normal_sufficient(sym, 2.0, 2.0, radii=DIVERGENT_RADII)
        assert verdict.verdict == "not met"

    def test_conjugate_error(self):
        with pytest.raises(ConjugateError):
            almost_normal_sufficient(FourierSymbol({1: 1.0}), 3.0, 1.4)

    def test_b1_linf_variant(self):
        sym = FourierSymbol({1: 1.0, -1: 0.5j})
        verdict = almost_normal_sufficient(sym, 1.0, math.inf)
        assert verdict.verdict == "met"


class TestJacobianIntegrability:
    def test_safe_example(self):
        # int |J| = 0.75 pi over the disk; bound = 2 sqrt(pi) sqrt(pi/4) = pi
        sym = FourierSymbol({1: 1.0, -1: 0.5})
        rep = jacobian_integrability(sym, radii=[0.5, 1.0])
        assert rep.partials[-1] == pytest.approx(0.75 * math.pi, abs=1e-8)
        assert rep.bound == pytest.approx(math.pi)
        assert rep.ok

    def test_analytic_reported_without_bound(self):
        rep = jacobian_integrability(FourierSymbol({1: 1.0}), radii=[0.5, 1.0])
        assert rep.partials[-1] == pytest.approx(math.pi, abs=1e-8)
        assert rep.bound is None and rep.ok is None

    def test_constant_zero(self):
        rep = jacobian_integrability(FourierSymbol({0: 1.0}), radii=[0.5, 0.9])
        assert rep.partials == (0.0, 0.0)

    def test_reim_identity_matches_split_jacobian(self, rng):
        # |J| = 4 |Im(R_z conj(I_z))| with R, I the Re/Im harmonic extensions
        from hhmeasure.symbols import _wirtinger
        sym = FourierSymbol({1: 0.8 + 0.1j, -1: 0.4j, 2: 0.2})
        re_sym, im_sym = sym.real_part(), sym.imag_part()
        z = 0.3 + 0.4j
        rz = _wirtinger(re_sym, z)[0]
        iz = _wirtinger(im_sym, z)[0]
        assert 4 * (rz * np.conj(iz)).imag == pytest.approx(sym.jacobian(z), abs=1e-13)


class TestHankelProbe:
    def test_analytic_zero(self):
        assert hankel_schatten_probe(FourierSymbol({1: 1.0}), 2.0, 8) == 0.0

    def test_rank_one(self):
        for p in (1.0, 2.0, 3.5):
            assert hankel_schatten_probe(FourierSymbol({-1: 1.0}), p, 6) == pytest.approx(1.0)

    def test_hilbert_schmidt_identity(self, rng):
        # ||H||_2^2 = sum_{k>=1} k |c(-k)|^2 on exact blocks
        for _ in range(5):
            band = int(rng.integers(1, 7))
            coeffs = {-k: complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
                      for k in range(1, band + 1)}
            sym = FourierSymbol(coeffs)
            hs = hankel_schatten_probe(sym, 2.0, band + 3)
            exact = math.sqrt(sum(k * abs(coeffs[-k]) ** 2
                                  for k in range(1, band + 1)))
            assert hs == pytest.approx(exact, abs=1e-12)

    def test_growth_vs_decay_families(self):
        # s = 0.6 diverges in n, s = 1.5 stays bounded
        norms = {}
        for s in (0.6, 1.5):
            vals = []
            for n in (8, 16, 32, 64):
                sym = FourierSymbol({-k: k ** -s for k in range(1, n + 1)})
                vals.append(hankel_schatten_probe(sym, 2.0, n + 1))
            norms[s] = vals
        growth_06 = norms[0.6][-1] - norms[0.6][0]
        growth_15 = norms[1.5][-1] - norms[1.5][0]
        assert growth_06 > 0.5
        assert growth_15 < 0.05
        assert all(b > a for a, b in zip(norms[0.6], norms[0.6][1:]))
