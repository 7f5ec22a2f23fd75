#include <gtest/gtest.h>

#include <random>

#include "ca/ellip.hpp"

using namespace ca;
using namespace ca::ell;

namespace {

SigmaTerm sig(int a, cd u, Branch b = Branch::plus, cd coeff = 1.0) { return {a, b, u, coeff}; }

}  // namespace

TEST(SigmaKernel, ParityShiftAndDegenerateModulus) {
  auto m = modulus_from_k(0.45);
  cd w{0.37, 0.21};
  for (int a = 1; a <= 3; ++a) {
    EXPECT_LT(std::abs(sigma_kernel(a, Branch::plus, -w, m) + sigma_kernel(a, Branch::plus, w, m)), 1e-13);
    EXPECT_EQ(sigma_kernel(a, Branch::minus, w, m), sigma_kernel(a, Branch::plus, w + I * m.K_prime, m));
  }
  // sn(u + iK') = 1/(k sn u)
  EXPECT_LT(std::abs(sigma_kernel(1, Branch::minus, w, m) - 0.45 * jacobi_sncndn(w, 0.45).sn), 1e-12);
  auto m0 = modulus_from_k(1e-7);
  EXPECT_LT(std::abs(sigma_kernel(1, Branch::plus, w, m0) - 1.0 / std::sin(w)), 1e-12);
  EXPECT_LT(std::abs(sigma_kernel(3, Branch::plus, w, m0) - std::cos(w) / std::sin(w)), 1e-12);
  EXPECT_THROW(sigma_kernel(2, Branch::plus, 0.0, m), domain_error);
}

TEST(Theta, OmegaMatchesJacobiRoute) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> d(-1.2, 1.2);
  for (double k : {0.2, 0.63, 0.9}) {
    auto m = modulus_from_k(k);
    EXPECT_LT(std::abs(half_period(m.tau) - m.K), 1e-12);
    for (int i = 0; i < 30; ++i) {
      cd u{d(rng), d(rng)};
      for (int a = 1; a <= 3; ++a)
        EXPECT_LT(std::abs(omega_theta(a, u, m.tau).value - omega(a, u, m)), 1e-11 * (1.0 + std::abs(omega(a, u, m))));
    }
  }
}

TEST(Theta, TauDerivativeAgainstReference) {
  // mpmath, 40 digits: derivative of omega_a(0.7+0.2i) in tau at tau = 1.1i
  const cd ref[3] = {{-0.019277325415069326934, 0.10069927035681153941},
                     {0.06349900816908654871, -0.22313511899351326609},
                     {-0.042419285082564473464, 0.12143084943732952445}};
  cd u{0.7, 0.2}, tau{0.0, 1.1};
  for (int a = 1; a <= 3; ++a) EXPECT_LT(std::abs(omega_theta(a, u, tau).d_tau - ref[a - 1]), 1e-12) << a;
  // complex tau
  cd tc{0.01, 1.1};
  EXPECT_LT(std::abs(omega_theta(1, {0.4, 0.1}, tc).value - cd(2.4458398144759306054, -0.56440083368346630788)),
            1e-12);
  EXPECT_LT(std::abs(omega_theta(3, {0.4, 0.1}, tc).d_tau - cd(-0.018770610200621058974, 0.065637319090637143458)),
            1e-12);
}

TEST(Cocycle, ClosedAgainstFiniteDifference) {
  auto m = modulus_from_tau({0.0, 1.1});
  cd w{0.7, 0.2};
  cd closed = ell_cocycle(2, 2, w, m, CocycleMode::closed);
  cd fd = ell_cocycle(2, 2, w, m, CocycleMode::numeric_tau_fd);
  EXPECT_LT(std::abs(closed - fd), 1e-6);
  EXPECT_LT(std::abs(closed - cd(0.035766384860006456851, -0.12568285350936588075)), 1e-12);
  EXPECT_EQ(ell_cocycle(1, 3, w, m), cd(0.0));
  for (int a = 1; a <= 3; ++a) EXPECT_LT(std::abs(ell_cocycle(a, a, -w, m) + ell_cocycle(a, a, w, m)), 1e-13);
}

TEST(Bracket, PrintedRelations) {
  auto m = modulus_from_k(0.5);
  cd u1{0.3, 0.4}, u2{-0.2, 0.1}, w = u1 - u2;
  auto br = ell_bracket(element(sig(1, u1), m), element(sig(2, u2), m), 1.0, m);
  ASSERT_EQ(br.terms.size(), 2u);
  EXPECT_EQ(br.central, cd(0.0));
  for (auto& t : br.terms) {
    EXPECT_EQ(t.a, 3);
    cd want = t.point == u2 ? 2.0 * I * omega(1, w, m) : -2.0 * I * omega(2, w, m);
    EXPECT_LT(std::abs(t.coeff - want), 1e-14);
  }
  auto same = ell_bracket(element(sig(1, u1), m), element(sig(1, u2), m), 1.0, m);
  EXPECT_TRUE(same.terms.empty());
  EXPECT_LT(std::abs(same.central - ell_cocycle(1, 1, w, m)), 1e-15);
  auto zero = ell_bracket(element(sig(1, u1), m), element(sig(1, u2), m), 0.0, m);
  EXPECT_EQ(zero.central, cd(0.0));

  // antisymmetry
  auto yx = ell_bracket(element(sig(2, u2), m), element(sig(1, u1), m), 1.0, m);
  EXPECT_LT(max_coeff(add(br, yx, m)), 1e-14);
  EXPECT_THROW(ell_bracket(element(sig(1, u1), m), element(sig(2, u1), m), 1.0, m), domain_error);
}

TEST(Bracket, MinusBranchIsShiftedPlus) {
  auto m = modulus_from_k(0.5);
  auto x = element(sig(3, {0.2, 0.5}, Branch::minus), m);
  ASSERT_EQ(x.terms.size(), 1u);
  EXPECT_EQ(x.terms[0].b, Branch::plus);
  EXPECT_LT(std::abs(x.terms[0].point - cd(0.2, 0.5 - m.K_prime)), 1e-15);
  auto y = add(x, element(sig(3, {0.2, 0.5 - m.K_prime}), m), m, -1.0);
  EXPECT_TRUE(y.terms.empty());
}

TEST(Bracket, JacobiOnSeededTriples) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(-0.8, 0.8);
  std::uniform_int_distribution<int> idx(1, 3), br(0, 1);
  auto m = modulus_from_k(0.6);
  double worst = 0.0;
  for (int i = 0; i < 60; ++i) {
    auto rnd = [&] {
      return element(sig(idx(rng), {d(rng), d(rng)}, br(rng) ? Branch::plus : Branch::minus, {d(rng), d(rng)}), m);
    };
    auto x = rnd(), y = rnd(), z = rnd();
    for (double c : {0.0, 1.0}) worst = std::max(worst, ell_jacobi_residual(x, y, z, c, m));
  }
  EXPECT_LT(worst, 1e-8);
}

TEST(Cobracket, CyclicWedges) {
  auto d1 = ell_cobracket(sig(1, 0.3));
  ASSERT_EQ(d1.size(), 1u);
  EXPECT_EQ(d1[0].left.a, 2);
  EXPECT_EQ(d1[0].right.a, 3);
  EXPECT_EQ(ell_cobracket(sig(2, 0.3))[0].left.a, 3);
  EXPECT_EQ(ell_cobracket(sig(2, 0.3))[0].right.a, 1);
  Wedge w = normalize(ell_cobracket(sig(2, 0.3, Branch::plus, 2.0))[0]);
  EXPECT_EQ(w.left.a, 1);
  EXPECT_EQ(w.coeff, cd(-2.0));
}

TEST(Fourier, ParityAndTruncation) {
  auto m = modulus_from_k(0.3);
  double s = 1.0 / (4.0 * m.K);
  int N = default_harmonics(m);
  cd w{0.5, -m.K_prime};
  // odd harmonics flip sign under w -> w + 2K, even ones do not
  EXPECT_LT(std::abs(sigma_fourier_series(1, w + 2.0 * m.K, N, m, s) + sigma_fourier_series(1, w, N, m, s)), 1e-13);
  EXPECT_LT(std::abs(sigma_fourier_series(3, w + 2.0 * m.K, N, m, s) - sigma_fourier_series(3, w, N, m, s)), 1e-13);
  double p = m.nome_p.real();
  for (int a = 1; a <= 3; ++a)
    for (int n : {1, 2, 3}) {
      double diff = std::abs(sigma_fourier_series(a, w, 2 * n, m, s) - sigma_fourier_series(a, w, n, m, s));
      EXPECT_LT(diff, std::pow(p, n)) << a << " " << n;
    }
  EXPECT_THROW(sigma_fourier_series(1, {0.5, 0.3}, 8, m, s), convergence_error);
}

TEST(Fourier, CalibratedScale) {
  auto m = modulus_from_k(0.3);
  for (int a = 1; a <= 3; ++a) {
    auto cal = calibrate_scale(a, m);
    EXPECT_LT(cal.residual, 1e-6) << a;
    EXPECT_NEAR(cal.scale * 4.0 * m.K, 1.0, 1e-9) << a;
  }
}

TEST(Modes, BracketTable) {
  auto r = ell_mode_bracket(2, 3, 2, -3, 1.5);
  EXPECT_FALSE(r.has_mode);
  EXPECT_EQ(r.central, cd(4.5));
  EXPECT_EQ(ell_mode_bracket(2, 3, 2, 1, 1.5).central, cd(0.0));
  auto ab = ell_mode_bracket(1, 2, 2, 5, 1.0), ba = ell_mode_bracket(2, 5, 1, 2, 1.0);
  EXPECT_EQ(ab.a, 3);
  EXPECT_EQ(ab.index, 7);
  EXPECT_EQ(ab.coeff, 2.0 * I);
  EXPECT_EQ(ba.coeff, -ab.coeff);
}

TEST(Modes, SeriesReproducesPointwiseBracket) {
  auto m = modulus_from_k(0.3);
  double s = 1.0 / (4.0 * m.K);
  int N = default_harmonics(m) + 4;
  cd z = 0.0;
  cd u1{0.4, -0.9 * m.K_prime}, u2{1.1, -1.1 * m.K_prime};
  for (int a = 1; a <= 3; ++a) EXPECT_LT(ell_mode_series_check(a, u1, u2, z, m, N, s), 1e-10) << a;
  // truncation is visible with few harmonics
  EXPECT_GT(ell_mode_series_check(1, u1, u2, z, m, 1, s), 1e-6);
}

TEST(Modes, CobracketCoefficients) {
  double p = 0.2;
  auto t = ell_mode_cobracket(1, 3, p, 4);
  for (auto& w : t.terms) {
    EXPECT_EQ(w.left_a, 2);
    EXPECT_EQ(w.right_a, 3);
    EXPECT_EQ(w.i + w.j, 3);
    EXPECT_NEAR(std::abs(w.coeff - (std::pow(p, 3) - 1.0) / ((std::pow(p, w.i) + 1.0) * (std::pow(p, w.j) + 1.0))), 0.0,
                1e-15);
  }
  for (auto& w : ell_mode_cobracket(1, 3, 1e-12, 3).terms) {
    if (w.i > 0 && w.j > 0) EXPECT_NEAR(w.coeff.real(), -1.0, 1e-11);
  }
  auto two = ell_mode_cobracket(2, 1, p, 3);
  ASSERT_EQ(two.poles.size(), 1u);
  EXPECT_EQ(two.poles[0], std::make_pair(1, 0));
  EXPECT_TRUE(ell_mode_cobracket(1, 1, p, 3).poles.empty());
}

TEST(RMatrix, SymmetricCybeAndDegenerate) {
  auto m = modulus_from_k(0.7);
  Mat4 r = r_ell({0.3, 0.2}, m);
  EXPECT_LT(rmat::norm(r - r.transpose()), 1e-15);
  EXPECT_LT(std::abs(r.trace()), 1e-14);
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> d(-0.9, 0.9);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    cd u{d(rng), d(rng)}, v{d(rng), d(rng)};
    worst = std::max(worst, rmat::cybe_residual([&](cd x) { return r_ell(x, m); }, u, v));
  }
  EXPECT_LT(worst, 1e-9);
  auto m0 = modulus_from_k(1e-8);
  cd u{0.4, 0.3};
  Mat4 want = (pauli_tensor(1) + pauli_tensor(2)) / std::sin(u) + pauli_tensor(3) * std::cos(u) / std::sin(u);
  EXPECT_LT(rmat::norm(r_ell(u, m0) - want), 1e-12);
}

TEST(LL, InducedBracketsMatch) {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> d(-0.9, 0.9);
  for (double k : {0.3, 0.7}) {
    auto m = modulus_from_k(k);
    for (int i = 0; i < 10; ++i) {
      cd u1{d(rng), d(rng)}, u2{d(rng), d(rng)};
      for (double c : {0.0, 1.0}) EXPECT_LT(ell_ll_check(u1, u2, m, c), 1e-8);
    }
  }
  auto m = modulus_from_k(0.5);
  EXPECT_THROW(ell_ll_check(0.3, 0.3, m, 1.0), domain_error);
}

TEST(Baxter, ProjectiveSklyanin) {
  auto bs = baxter_to_sklyanin(0.3, 0.2, 0.4);
  EXPECT_LT(bs.residual, 1e-8);
  Mat4 b = bs.baxter / bs.baxter(0, 0);
  // mpmath, 40 digits
  EXPECT_LT(std::abs(b(1, 1) - cd(0.68677791061395084022, 0.48133516150554692506)), 1e-13);
  EXPECT_LT(std::abs(b(1, 2) - cd(0.31290765802697349199, -0.44646243362462728448)), 1e-13);
  EXPECT_LT(std::abs(b(0, 3) - cd(0.0, 0.024235166572254143208)), 1e-13);

  EXPECT_EQ(baxter_to_sklyanin(0.0, 0.2, 0.4).baxter(1, 1), cd(0.0));
  Mat4 s0 = sklyanin(0.0, 0.1, modulus_from_k(0.5).tau);
  Mat4 want = Mat4::Identity() + pauli_tensor(1) + pauli_tensor(2) + pauli_tensor(3);
  EXPECT_LT(rmat::norm(s0 - want), 1e-13);

  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> v(-0.8, 0.8), h(0.05, 0.6), kt(0.1, 0.9);
  for (int i = 0; i < 20; ++i) EXPECT_LT(baxter_to_sklyanin(v(rng), h(rng), kt(rng)).residual, 1e-8);
}

TEST(ClassicalLimit, RatesAndTauShift) {
  auto m = modulus_from_tau({0.0, 1.1});
  cd u{0.4, 0.15};
  auto cl = ell_classical_limit(u, m, {2e-2, 1e-2, 5e-3}, 1.0);
  EXPECT_NEAR(cl.a[0] / cl.a[1], 2.0, 0.05);
  EXPECT_NEAR(cl.a[1] / cl.a[2], 2.0, 0.05);
  EXPECT_LT(cl.b[2], cl.b[1]);
  EXPECT_LT(cl.b_richardson[2], 1e-4);
  EXPECT_LT(cl.b_richardson[2], cl.b[2] / 10);
  auto c0 = ell_classical_limit(u, m, {1e-2}, 0.0);
  EXPECT_EQ(c0.b[0], 0.0);
  EXPECT_THROW(ell_classical_limit(u, m, {0.5}, 1.0), domain_error);
  EXPECT_THROW(ell_classical_limit(u, m, {1e-3, 2e-3}, 1.0), domain_error);
}
