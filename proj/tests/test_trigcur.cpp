#include <gtest/gtest.h>

#include <random>

#include "ca/trigcur.hpp"

using namespace ca;
using namespace ca::trig;

namespace {

cd rand_point(std::mt19937_64& rng, Branch b, double eta) {
  std::uniform_real_distribution<double> re(-1.0, 1.0), im(0.1, 0.9);
  double y = im(rng) / eta;
  return {re(rng), b == Branch::plus ? -y : y};
}

CurrentElement rand_element(std::mt19937_64& rng, const TrigParams& p) {
  std::uniform_int_distribution<int> ng(1, 2), gi(0, 2), bi(0, 1);
  std::uniform_real_distribution<double> c(-1.0, 1.0);
  CurrentElement x;
  int n = ng(rng);
  for (int i = 0; i < n; ++i) {
    Branch b = bi(rng) ? Branch::plus : Branch::minus;
    add_term(x, {Gen(gi(rng)), b, rand_point(rng, b, p.eta), {c(rng), c(rng)}}, p);
  }
  return x;
}

CurrentElement el(Gen g, Branch b, cd u, const TrigParams& p, cd k = 1.0) { return element({g, b, u, k}, p); }

}  // namespace

TEST(Kernel, SpecialValuesAndAutomorphy) {
  TrigParams p{1.3};
  EXPECT_LT(std::abs(kernel(Gen::H, Branch::plus, -I / (2 * p.eta), p)), 1e-14);
  cd w{0.2, -0.15};
  cd k = kernel(Gen::E, Branch::plus, w, p);
  EXPECT_LT(std::abs(kernel(Gen::E, Branch::plus, w + 2.0 * I / p.eta, p) - k), 1e-13);
  EXPECT_LT(std::abs(kernel(Gen::E, Branch::plus, w + I / p.eta, p) + k), 1e-13);
  TrigParams one{1.0};
  cd x = pi * cd(0.3, -0.4);
  cd expo = I * pi * 2.0 / (std::exp(x) - std::exp(-x));
  EXPECT_LT(std::abs(kernel(Gen::E, Branch::plus, {0.3, -0.4}, one) - expo), 1e-14);
  EXPECT_THROW(kernel(Gen::E, Branch::plus, 0.0, one), domain_error);
  // midline: i pi eta / sinh(i pi / 2) = pi eta, a real number
  EXPECT_LT(std::abs(kernel(Gen::E, Branch::plus, I / (2 * p.eta), p) - pi * p.eta), 1e-14);
}

TEST(Elements, StripAndMerging) {
  TrigParams p{1.0};
  EXPECT_THROW(el(Gen::E, Branch::plus, {0.0, 0.2}, p), domain_error);
  EXPECT_THROW(el(Gen::E, Branch::minus, {0.0, -0.2}, p), domain_error);
  EXPECT_THROW(el(Gen::E, Branch::plus, {0.0, -1.0}, p), domain_error);
  CurrentElement x = el(Gen::E, Branch::plus, {0.25, -0.5}, p, 2.0);
  // e_-(u + i/eta) = -e_+(u)
  add_term(x, {Gen::E, Branch::minus, {0.25, 0.5}, 2.0}, p);
  EXPECT_TRUE(x.terms.empty());
  CurrentElement y = el(Gen::H, Branch::plus, {0.25, -0.5}, p, 1.0);
  add_term(y, {Gen::H, Branch::minus, {0.25, 0.5}, 1.0}, p);
  ASSERT_EQ(y.terms.size(), 1u);
  EXPECT_EQ(y.terms[0].coeff, cd(2.0));
}

TEST(Bracket, Examples) {
  TrigParams p{1.0};
  cd u1{0.1, -0.2}, u2{0.1, 0.1 - 0.0};
  u2 = {0.1, -0.5};
  auto ee = bracket(el(Gen::E, Branch::plus, u1, p), el(Gen::E, Branch::plus, u2, p), 1.0, p);
  EXPECT_TRUE(ee.terms.empty());
  EXPECT_EQ(ee.central, cd(0.0));

  cd a{0.0, -0.4}, b{0.0, -0.1};  // a - b = -0.3 i
  auto hh = bracket(el(Gen::H, Branch::plus, a, p), el(Gen::H, Branch::plus, b, p), 1.0, p);
  cd u = a - b, x = pi * u;
  cd want = 2.0 * I * pi * (x / (std::sinh(x) * std::sinh(x)) - std::cosh(x) / std::sinh(x));
  EXPECT_LT(std::abs(hh.central - want), 1e-13);

  // mixed branches: shifted numerator
  cd v1{0.2, -0.3}, v2{-0.2, 0.4};
  auto ef = bracket(el(Gen::E, Branch::plus, v1, p), el(Gen::F, Branch::minus, v2, p), 1.0, p);
  cd w = v1 - v2, s = std::sinh(pi * w);
  cd bm = I * pi * (pi * (w + I) * std::cosh(pi * w) / (s * s) - 1.0 / s);
  EXPECT_LT(std::abs(ef.central - bm), 1e-13);
  // the h terms carry the branches of their own arguments
  for (auto& t : ef.terms) {
    EXPECT_EQ(t.g, Gen::H);
    if (t.point == v1) EXPECT_EQ(t.b, Branch::plus);
    if (t.point == v2) EXPECT_EQ(t.b, Branch::minus);
  }

  // h-e structure constants
  auto he = bracket(el(Gen::H, Branch::plus, v1, p), el(Gen::E, Branch::plus, a, p), 0.0, p);
  cd uu = v1 - a;
  for (auto& t : he.terms) {
    if (t.point == a) EXPECT_LT(std::abs(t.coeff + 2.0 * I * pi / std::tanh(pi * uu)), 1e-13);
    else EXPECT_LT(std::abs(t.coeff - 2.0 * I * pi / std::sinh(pi * uu)), 1e-13);
  }
  EXPECT_THROW(bracket(el(Gen::H, Branch::plus, a, p), el(Gen::E, Branch::plus, a, p), 0.0, p), domain_error);
}

TEST(Bracket, AntisymmetryAndJacobi) {
  TrigParams p{1.0};
  std::mt19937_64 rng(7);
  for (double c : {0.0, 1.0, 2.5}) {
    double worst = 0, anti = 0;
    for (int i = 0; i < 200; ++i) {
      auto x = rand_element(rng, p), y = rand_element(rng, p), z = rand_element(rng, p);
      worst = std::max(worst, jacobi_residual(x, y, z, c, p));
      anti = std::max(anti, max_coeff(add(bracket(x, y, c, p), bracket(y, x, c, p), p)));
    }
    EXPECT_LT(worst, 1e-9) << c;
    EXPECT_LT(anti, 1e-13) << c;
  }
  auto x = el(Gen::E, Branch::plus, {0.1, -0.3}, p);
  EXPECT_THROW(jacobi_residual(x, x, el(Gen::F, Branch::plus, {0.3, -0.3}, p), 1.0, p), domain_error);
}

TEST(Pairing, ValuesAndInvariance) {
  TrigParams p{1.4};
  cd u{0.1, -0.3}, v{-0.2, -0.2};
  EXPECT_EQ(pair(el(Gen::E, Branch::plus, u, p), el(Gen::E, Branch::plus, v, p), p), cd(0.0));
  cd near = pair(el(Gen::E, Branch::plus, u, p), el(Gen::F, Branch::plus, u + 1e-7, p), p);
  EXPECT_LT(std::abs(near - p.eta), 1e-10);
  cd v2{0.3, 0.2};
  cd hpm = pair(el(Gen::H, Branch::plus, u, p), el(Gen::H, Branch::minus, v2, p), p);
  cd w = u - v2;
  cd want = 2.0 * pi * p.eta * p.eta * (w + I / p.eta) * std::cosh(pi * p.eta * w) / std::sinh(pi * p.eta * w);
  EXPECT_LT(std::abs(hpm - want), 1e-12);

  std::mt19937_64 rng(9);
  double worst = 0;
  for (int i = 0; i < 200; ++i) {
    auto x = rand_element(rng, p), y = rand_element(rng, p), z = rand_element(rng, p);
    cd lhs = pair(bracket(x, y, 0.0, p), z, p) + pair(y, bracket(x, z, 0.0, p), p);
    worst = std::max(worst, std::abs(lhs));
  }
  EXPECT_LT(worst, 1e-9);
}

TEST(Cobracket, Pointwise) {
  GeneratorTerm h{Gen::H, Branch::plus, {0.0, -0.5}, 3.0};
  auto d = cobracket0(h);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].left.g, Gen::E);
  EXPECT_EQ(d[0].right.g, Gen::F);
  EXPECT_EQ(d[0].coeff, cd(6.0));
  auto e = cobracket0({Gen::E, Branch::minus, {0.0, 0.5}, 1.0});
  EXPECT_EQ(e[0].left.g, Gen::H);
  EXPECT_EQ(e[0].right.b, Branch::minus);
}

TEST(Cocycle, ClosedFormProperties) {
  TrigParams p{1.0};
  GeneratorTerm e{Gen::E, Branch::plus, {0.0, -0.4}, 1.0};
  GeneratorTerm f{Gen::F, Branch::plus, {1e-5, -0.4}, 1.0};
  EXPECT_LT(std::abs(cocycle_B(e, f, p)), 1e-4);
  GeneratorTerm f2{Gen::F, Branch::minus, {0.3, 0.3}, 1.0};
  EXPECT_LT(std::abs(cocycle_B(e, f2, p) + cocycle_B(f2, e, p)), 1e-14);
  GeneratorTerm h1{Gen::H, Branch::plus, {0.1, -0.2}, 1.0}, h2{Gen::H, Branch::minus, {-0.2, 0.7}, 1.0};
  EXPECT_LT(std::abs(cocycle_B(h1, h2, p) + cocycle_B(h2, h1, p)), 1e-14);
  EXPECT_THROW(cocycle_B(e, h1, p), domain_error);
}

TEST(Cocycle, BoundaryIntegral) {
  TrigParams p{1.0};
  GeneratorTerm e{Gen::E, Branch::plus, {0.0, -0.2}, 1.0}, f{Gen::F, Branch::plus, {0.0, -0.6}, 1.0};
  EXPECT_LT(std::abs(cocycle_B_numeric(e, f, p).value - cocycle_B(e, f, p)), 1e-7);
  std::mt19937_64 rng(4);
  TrigParams q{0.8};
  for (int i = 0; i < 8; ++i) {
    Branch b1 = i % 2 ? Branch::plus : Branch::minus, b2 = i % 3 ? Branch::plus : Branch::minus;
    GeneratorTerm x{i % 4 < 2 ? Gen::E : Gen::H, b1, rand_point(rng, b1, q.eta), 1.0};
    GeneratorTerm y{x.g == Gen::E ? Gen::F : Gen::H, b2, rand_point(rng, b2, q.eta), 1.0};
    EXPECT_LT(std::abs(cocycle_B_numeric(x, y, q).value - cocycle_B(x, y, q)), 1e-7) << i;
  }
}

TEST(Gauge, IdentityCompositionHomomorphism) {
  TrigParams p{1.0};
  std::mt19937_64 rng(21);
  auto x = rand_element(rng, p), y = rand_element(rng, p);
  auto same = gauge_map(x, 1.0, 1.0);
  EXPECT_LT(max_coeff(add(same, x, p, -1.0)), 1e-15);
  TrigParams q{1.7}, r{0.6};
  auto two = gauge_map(gauge_map(x, 1.0, 1.7), 1.7, 0.6);
  auto one = gauge_map(x, 1.0, 0.6);
  EXPECT_LT(max_coeff(add(two, one, r, -1.0)), 1e-14);
  auto lhs = gauge_map(bracket(x, y, 0.0, p), 1.0, 1.7);
  auto rhs = bracket(gauge_map(x, 1.0, 1.7), gauge_map(y, 1.0, 1.7), 0.0, q);
  EXPECT_LT(max_coeff(add(lhs, rhs, q, -1.0)), 1e-10);
  // the pairing rescales by eta/eta'
  cd before = pair(x, y, p);
  cd after = pair(gauge_map(x, 1.0, 1.7), gauge_map(y, 1.0, 1.7), q);
  EXPECT_LT(std::abs(after - before / 1.7), 1e-12);
  // (T (x) T) delta = (eta/eta') delta T
  GeneratorTerm t{Gen::E, Branch::plus, {0.1, -0.4}, 1.0};
  auto dt = cobracket0(t);
  auto tx = gauge_map(element(t, p), 1.0, 1.7).terms[0];
  auto dtx = cobracket0(tx);
  double s = 1.0 / 1.7;
  EXPECT_LT(std::abs(dt[0].coeff * s * s - s * dtx[0].coeff), 1e-15);
  EXPECT_THROW(gauge_map(x, 1.0, -1.0), domain_error);
}

TEST(Sokhotsky, AllTypes) {
  TrigParams p{1.0};
  for (Gen g : {Gen::E, Gen::F, Gen::H}) {
    EXPECT_LT(sokhotsky_check(g, 0.3, TestFunction{1.0, 0.0, 0.3}, p), 1e-8);
    EXPECT_LT(sokhotsky_check(g, -0.2, TestFunction{2.0, 1.5, {0.1, 0.05}}, p), 1e-8);
  }
  // test function negligible at u
  EXPECT_LT(sokhotsky_check(Gen::E, 0.0, TestFunction{4.0, 0.0, 3.2}, p), 1e-12);
}

TEST(Fourier, KernelsFromWeights) {
  TrigParams p{1.0};
  EXPECT_LT(fourier_kernel_check(Gen::E, Branch::plus, {0.0, -0.4}, 0.2, p), 1e-8);
  for (Gen g : {Gen::E, Gen::F, Gen::H})
    for (Branch b : {Branch::plus, Branch::minus}) {
      cd u{0.15, b == Branch::plus ? -0.35 : 0.6};
      EXPECT_LT(fourier_kernel_check(g, b, u, -0.3, p), 1e-8) << name(g);
    }
}

TEST(Modes, Relations) {
  auto ee = mode_bracket({Gen::E, 0.3}, {Gen::E, 1.2}, 1.0);
  EXPECT_FALSE(ee.has_mode);
  EXPECT_EQ(ee.central_density, 0.0);
  auto hh = mode_bracket({Gen::H, 0.7}, {Gen::H, -0.7}, 1.5);
  EXPECT_FALSE(hh.has_mode);
  EXPECT_DOUBLE_EQ(hh.central_density, 2 * 1.5 * 0.7);
  auto he = mode_bracket({Gen::H, 0.7}, {Gen::E, 0.2}, 1.0);
  EXPECT_EQ(he.g, Gen::E);
  EXPECT_DOUBLE_EQ(he.lambda, 0.9);
  EXPECT_DOUBLE_EQ(he.coeff, 2.0);
  // antisymmetry including the central density on the support
  auto ef = mode_bracket({Gen::E, 0.4}, {Gen::F, -0.4}, 1.0);
  auto fe = mode_bracket({Gen::F, -0.4}, {Gen::E, 0.4}, 1.0);
  EXPECT_DOUBLE_EQ(ef.coeff, -fe.coeff);
  EXPECT_DOUBLE_EQ(ef.central_density, -fe.central_density);
}

TEST(Modes, SmearedAgainstGeneratingFunctions) {
  TrigParams p{1.0};
  cd u1{0.2, -0.3}, u2{-0.1, -0.6};
  for (double nu : {0.7, -1.1}) {
    EXPECT_LT(mode_smeared_check(Gen::H, Gen::E, u1, u2, nu, 1.0, p), 1e-7);
    EXPECT_LT(mode_smeared_check(Gen::H, Gen::F, u1, u2, nu, 1.0, p), 1e-7);
    EXPECT_LT(mode_smeared_check(Gen::E, Gen::F, u1, u2, nu, 1.0, p), 1e-7);
    EXPECT_LT(mode_smeared_check(Gen::E, Gen::H, u1, u2, nu, 1.0, p), 1e-7);
  }
  EXPECT_LT(mode_smeared_check(Gen::H, Gen::H, u1, u2, 0.5, 2.0, p), 1e-7);
}

TEST(Modes, CobracketFromR) {
  TrigParams p{0.9};
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> d(-3.0, 3.0);
  for (int i = 0; i < 100; ++i) {
    double l = d(rng), t = d(rng);
    for (Gen g : {Gen::E, Gen::F, Gen::H}) {
      auto a = mode_cobracket_kernel(g, l, t, p), b = cobracket_from_r(g, l, t, p);
      EXPECT_LT(std::abs(a.kernel - b.kernel), 1e-9) << name(g) << " " << l << " " << t;
      EXPECT_LT(std::abs(a.c_coeff - b.c_coeff), 1e-9) << name(g);
    }
    // swapped tensor order carries the opposite coefficient
    double k = mode_cobracket_kernel(Gen::E, l, t, p).kernel;
    EXPECT_LT(std::abs(r_contraction(Gen::E, l, Gen::E, l - t, Gen::H, t, p) + k), 1e-12);
  }
  EXPECT_NEAR(mode_cobracket_kernel(Gen::E, 1.3, 0.4, p).c_coeff, 0.65 * std::tanh(1.3 / 1.8), 1e-15);
}

TEST(Modes, SmallEtaStepLimit) {
  TrigParams p{1e-3};
  double lam = 1.2;
  for (double t : {-0.5, 0.3, 0.9, 1.7}) {
    double want = (t > lam ? 1.0 : 0.0) - (t > 0 ? 1.0 : 0.0);
    EXPECT_NEAR(mode_cobracket_kernel(Gen::E, lam, t, p).kernel, want, 1e-12);
    EXPECT_NEAR(mode_cobracket_kernel(Gen::H, lam, t, p).kernel, 2 * want, 1e-12);
  }
}
