#include "ca/rmat_trig.hpp"

#include <algorithm>
#include <cmath>

namespace ca::rmat {

namespace {

using trig::Gen;

cd sinh_checked(cd x, const char* what) {
  cd s = std::sinh(x);
  if (std::abs(s) < 1e-14) throw domain_error(what);
  return s;
}

// cth x - x/sh^2 x and x ch x/sh^2 x - 1/sh x, series near 0
cd diag_part(cd x) {
  if (std::abs(x) < 1e-3) return 2.0 * x / 3.0 - 4.0 * x * x * x / 45.0;
  cd s = std::sinh(x);
  return std::cosh(x) / s - x / (s * s);
}
cd offdiag_part(cd x) {
  if (std::abs(x) < 1e-3) return x / 3.0 - 7.0 * x * x * x / 90.0;
  cd s = std::sinh(x);
  return x * std::cosh(x) / (s * s) - 1.0 / s;
}

constexpr double bernoulli[] = {1.0,
                                -0.5,
                                1.0 / 6,
                                0.0,
                                -1.0 / 30,
                                0.0,
                                1.0 / 42,
                                0.0,
                                -1.0 / 30,
                                0.0,
                                5.0 / 66,
                                0.0,
                                -691.0 / 2730,
                                0.0,
                                7.0 / 6,
                                0.0,
                                -3617.0 / 510,
                                0.0,
                                43867.0 / 798,
                                0.0,
                                -174611.0 / 330,
                                0.0,
                                854513.0 / 138,
                                0.0,
                                -236364091.0 / 2730};
constexpr int max_bernoulli = 24;

cd bernoulli_poly(int n, cd a) {
  // Horner in a with binomial coefficients
  cd acc = 0.0;
  double binom = 1.0;
  cd pw = 1.0;
  // sum_k C(n,k) B_k a^{n-k}, accumulated from k = n downwards
  std::vector<double> bin(n + 1);
  for (int k = 0; k <= n; ++k) {
    bin[k] = binom;
    binom = binom * (n - k) / (k + 1);
  }
  for (int k = n; k >= 0; --k) {
    acc += bin[k] * bernoulli[k] * pw;
    pw *= a;
  }
  return acc;
}

// Hurwitz zeta(m, a) for integer m >= 2 and large a, Euler-Maclaurin at a
double hurwitz_zeta(int m, double a) {
  double r = std::pow(a, 1.0 - m) / (m - 1) + 0.5 * std::pow(a, -m);
  double rising = m;  // m (m+1) ... (m+2j-2)
  double fact = 2.0;  // (2j)!
  for (int j = 1; 2 * j <= max_bernoulli; ++j) {
    double t = bernoulli[2 * j] / fact * rising * std::pow(a, -m - 2 * j + 1);
    r += t;
    if (std::abs(t) < 1e-18 * std::abs(r)) break;
    rising *= (m + 2 * j - 1) * (m + 2 * j);
    fact *= (2 * j + 1) * (2 * j + 2);
  }
  return r;
}

}  // namespace

Mat4 kron(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Mat4 m;
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k)
      for (int j = 0; j < 2; ++j)
        for (int l = 0; l < 2; ++l) m(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return m;
}

double norm(const Mat4& m) { return m.cwiseAbs().maxCoeff(); }

Mat4 rbar(cd u, double eta, double hbar) {
  cd den = sinh_checked(pi * eta * (u - I * hbar), "rbar: pole");
  cd b = std::sinh(pi * eta * u) / den;
  cd c = -std::sinh(I * pi * eta * hbar) / den;
  Mat4 m = Mat4::Zero();
  m(0, 0) = m(3, 3) = 1.0;
  m(1, 1) = m(2, 2) = b;
  m(1, 2) = m(2, 1) = c;
  return m;
}

cd tau_plus(cd u, double hbar) {
  cd x = pi * u / (2.0 * hbar);
  return std::cosh(x) / sinh_checked(x, "tau_plus: pole");
}

VarrhoResult varrho(cd u, double eta, double hbar, int P) {
  if (!(eta > 0) || !(hbar > 0) || P < 1) throw domain_error("varrho: need eta > 0, hbar > 0, P >= 1");
  const double h = hbar * eta;
  const cd vs[4] = {u, I * hbar - u, 0.0, I * hbar};
  const double sign[4] = {1.0, 1.0, -1.0, -1.0};
  double smax = 0.0;
  for (cd v : vs) smax = std::max(smax, std::abs(I * eta * v));
  const double zmin = std::max(20.0, 4.0 * (1.0 + smax));
  const int N = std::max(P, int(std::ceil(zmin / (2.0 * h))));

  auto term = [&](int p) {
    cd t = 0.0;
    for (int j = 0; j < 4; ++j) {
      cd s = I * eta * vs[j];
      double z = 2.0 * p * h;
      t += sign[j] * (-lgamma_step(z + s, h) + lgamma_step(1.0 + z - h + s, h));
    }
    return t;
  };
  // tail sum over p > n from the Stirling series of each log Gamma; with z >= 20
  // the terms still shrink at the last Bernoulli order, odd orders may cancel exactly
  auto tail = [&](int n) {
    cd acc = 0.0;
    for (int k = 3; k <= max_bernoulli; ++k) {
      cd cn = 0.0;
      for (int j = 0; j < 4; ++j) {
        cd s = I * eta * vs[j];
        cn += sign[j] * (bernoulli_poly(k, s) + bernoulli_poly(k, 1.0 + s) - bernoulli_poly(k, s + h) -
                         bernoulli_poly(k, 1.0 + s - h));
      }
      double sg = k % 2 ? -1.0 : 1.0;
      acc += sg * cn / double(k * (k - 1)) * std::pow(2.0 * h, 1.0 - k) * hurwitz_zeta(k - 1, n + 1.0);
    }
    return acc;
  };

  cd s = I * eta * u;
  cd pre = lngamma(h) + lngamma(1.0 + s) - lngamma(h + s);
  cd sumN = 0.0, sum2N = 0.0;
  for (int p = 1; p <= 2 * N; ++p) {
    sum2N += term(p);
    if (p == N) sumN = sum2N;
  }
  cd logN = pre + sumN + tail(N);
  cd log2N = pre + sum2N + tail(2 * N);
  VarrhoResult r;
  r.log_value = log2N;
  r.value = std::exp(log2N);
  r.monitor = std::abs(logN - log2N);
  r.terms = N;
  if (!std::isfinite(r.monitor) || r.monitor > 1e-8) throw convergence_error("varrho: product tail not converged");
  return r;
}

Mat4 r0(cd u, double eta) {
  cd x = pi * eta * u;
  cd s = sinh_checked(x, "r0: pole");
  cd k = -I * pi * eta;
  Mat4 m = Mat4::Zero();
  m(0, 0) = m(3, 3) = k * std::cosh(x) / s;
  m(1, 2) = m(2, 1) = k / s;
  return m;
}

Mat4 r1_diff(cd u, double eta) {
  cd x = pi * eta * u;
  cd k = I * pi * eta * eta;
  Mat4 m = Mat4::Zero();
  m(1, 1) = m(2, 2) = k * diag_part(x);
  m(1, 2) = m(2, 1) = k * offdiag_part(x);
  return m;
}

cd varrho0(cd u, double eta) { return 0.5 * I * pi * eta * eta * diag_part(pi * eta * u); }

TracelessShift traceless_shift(double eta, cd u) {
  Mat4 r = r0(u, eta);
  cd kappa = -r.trace() / 4.0;
  return {kappa, r + kappa * Mat4::Identity()};
}

double cybe_residual(const std::function<Mat4(cd)>& r, cd u, cd v) {
  // embed a two-site matrix at tensor factors (a, b) of three
  auto embed = [](const Mat4& m, int a, int b) {
    Mat8 out = Mat8::Zero();
    int c = 3 - a - b;
    for (int row = 0; row < 8; ++row)
      for (int col = 0; col < 8; ++col) {
        int ri[3] = {row >> 2 & 1, row >> 1 & 1, row & 1};
        int ci[3] = {col >> 2 & 1, col >> 1 & 1, col & 1};
        if (ri[c] != ci[c]) continue;
        out(row, col) = m(2 * ri[a] + ri[b], 2 * ci[a] + ci[b]);
      }
    return out;
  };
  Mat8 r12 = embed(r(u - v), 0, 1), r13 = embed(r(u), 0, 2), r23 = embed(r(v), 1, 2);
  auto com = [](const Mat8& a, const Mat8& b) { return Mat8(a * b - b * a); };
  return (com(r12, r13) + com(r12, r23) + com(r13, r23)).cwiseAbs().maxCoeff();
}

std::vector<double> richardson_weights(const std::vector<double>& h) {
  const int n = int(h.size());
  if (n == 0) throw domain_error("richardson_weights: empty grid");
  Eigen::MatrixXd a(n, n);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
  b(0) = 1.0;
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) a(k, j) = std::pow(h[j], k);
  Eigen::VectorXd w = a.colPivHouseholderQr().solve(b);
  return {w.data(), w.data() + n};
}

ExpansionResult expansion_check(cd u, double eta, const std::vector<double>& hbars, double c, int P) {
  if (hbars.size() < 2) throw domain_error("expansion_check: need at least two hbar values");
  for (size_t i = 0; i < hbars.size(); ++i) {
    if (!(hbars[i] > 0)) throw domain_error("expansion_check: hbar must be positive");
    if (i > 0 && !(hbars[i] < hbars[i - 1])) throw domain_error("expansion_check: hbar grid must decrease");
  }
  ExpansionResult r;
  r.hbars = hbars;
  const Mat4 id = Mat4::Identity();
  const Mat4 lin = r0(u, eta) + I * pi * eta * std::cosh(pi * eta * u) / std::sinh(pi * eta * u) * id;
  const Mat4 second = -c * r1_diff(u, eta);
  const cd rho0 = c * varrho0(u, eta);
  std::vector<Mat4> qb;
  std::vector<cd> qc;
  for (double hb : hbars) {
    double etap = eta / (1.0 + eta * c * hb);
    Mat4 rb = rbar(u, eta, hb);
    r.a.push_back(norm((rb - id) / hb - lin));
    qb.push_back((rbar(u, etap, hb) - rb) / (hb * hb));
    r.b.push_back(norm(qb.back() - second));
    VarrhoResult v1 = varrho(u, eta, hb, P), v2 = varrho(u, etap, hb, P);
    r.varrho_monitor = std::max({r.varrho_monitor, v1.monitor, v2.monitor});
    // exp(d) - 1 without cancellation
    cd d = v2.log_value - v1.log_value;
    d -= 2.0 * pi * I * std::round(d.imag() / (2.0 * pi));
    cd ratio_m1 = std::abs(d) < 1e-5 ? d + 0.5 * d * d + d * d * d / 6.0 : std::exp(d) - 1.0;
    qc.push_back(ratio_m1 / (hb * hb));
    r.c.push_back(std::abs(qc.back() - rho0));
  }
  auto decreasing = [](const std::vector<double>& v) {
    for (size_t i = 1; i < v.size(); ++i)
      if (!(v[i] < v[i - 1])) return false;
    return true;
  };
  r.a_monotone = decreasing(r.a);
  r.b_monotone = decreasing(r.b);
  r.c_monotone = decreasing(r.c);
  std::vector<double> w = richardson_weights(hbars);
  Mat4 eb = Mat4::Zero();
  cd ec = 0.0;
  for (size_t i = 0; i < w.size(); ++i) {
    eb += w[i] * qb[i];
    ec += w[i] * qc[i];
  }
  r.b_extrapolated = norm(eb - second);
  r.c_extrapolated = std::abs(ec - rho0);
  return r;
}

double eta_derivative_identity(cd u, double eta, double step) {
  if (!(step > 0) || !(step < eta)) throw domain_error("eta_derivative_identity: need 0 < step < eta");
  auto rt = [&](double e) { return traceless_shift(e, u).r0_tilde; };
  auto d = [&](double s) { return Mat4((rt(eta + s) - rt(eta - s)) / (2.0 * s)); };
  Mat4 deriv = (4.0 * d(0.5 * step) - d(step)) / 3.0;
  Mat4 lhs = r1_diff(u, eta) - varrho0(u, eta) * Mat4::Identity();
  double res = norm(lhs - eta * eta * deriv);
  if (!std::isfinite(res)) throw convergence_error("eta_derivative_identity: non-finite difference");
  return res;
}

namespace {

Eigen::Matrix2cd gen_matrix(Gen g) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  switch (g) {
    case Gen::H: m(0, 0) = 0.5, m(1, 1) = -0.5; break;
    case Gen::F: m(0, 1) = 1.0; break;
    case Gen::E: m(1, 0) = 1.0; break;
  }
  return m;
}

constexpr Gen gens[3] = {Gen::E, Gen::F, Gen::H};

// entry ((i,k),(j,l)) of the right side of (LL) as an element
trig::CurrentElement ll_entry(int i, int j, int k, int l, cd u1, cd u2, double eta, double c) {
  trig::TrigParams p{eta};
  const Eigen::Matrix2cd one = Eigen::Matrix2cd::Identity();
  cd w = u1 - u2;
  Mat4 r = r0(w, eta);
  int row = 2 * i + k, col = 2 * j + l;
  trig::CurrentElement out;
  for (Gen g : gens) {
    Mat4 a = kron(gen_matrix(g), one), b = kron(one, gen_matrix(g));
    cd ca = (a * r - r * a)(row, col), cb = (b * r - r * b)(row, col);
    trig::add_term(out, {g, trig::Branch::plus, u1, ca}, p);
    trig::add_term(out, {g, trig::Branch::plus, u2, cb}, p);
  }
  out.central = c * (r1_diff(w, eta) - varrho0(w, eta) * Mat4::Identity())(row, col);
  return out;
}

struct Slot {
  int i, j;
  double norm;  // generator = norm * L_ij
};
Slot slot(Gen g) {
  switch (g) {
    case Gen::E: return {1, 0, 1.0};
    case Gen::F: return {0, 1, 1.0};
    case Gen::H: return {0, 0, 2.0};
  }
  return {0, 0, 0.0};
}

}  // namespace

trig::CurrentElement ll_induced_bracket(Gen X, cd u1, Gen Y, cd u2, double eta, double c) {
  trig::TrigParams p{eta};
  trig::require_strip({X, trig::Branch::plus, u1, 1.0}, p);
  trig::require_strip({Y, trig::Branch::plus, u2, 1.0}, p);
  Slot a = slot(X), b = slot(Y);
  trig::CurrentElement e = ll_entry(a.i, a.j, b.i, b.j, u1, u2, eta, c);
  return trig::add(trig::CurrentElement{}, e, p, a.norm * b.norm);
}

double ll_structure_check(cd u1, cd u2, double eta, double c) {
  trig::TrigParams p{eta};
  auto el = [&](Gen g, cd u) { return trig::element({g, trig::Branch::plus, u, 1.0}, p); };
  double worst = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) {
          // L_ij = sum_X m_X(i,j) X
          trig::CurrentElement want;
          for (Gen X : gens) {
            cd mx = gen_matrix(X)(i, j);
            if (mx == 0.0) continue;
            for (Gen Y : gens) {
              cd my = gen_matrix(Y)(k, l);
              if (my == 0.0) continue;
              want = trig::add(want, trig::bracket(el(X, u1), el(Y, u2), c, p), p, mx * my);
            }
          }
          trig::CurrentElement got = ll_entry(i, j, k, l, u1, u2, eta, c);
          worst = std::max(worst, trig::max_coeff(trig::add(got, want, p, -1.0)));
        }
  return worst;
}

}  // namespace ca::rmat
