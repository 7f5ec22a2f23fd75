#include "ca/ellip.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ca::ell {

namespace {

int third(int a, int b) { return 6 - a - b; }

// epsilon_{a b c} for distinct a, b
double levi(int a, int b) { return (b - a + 3) % 3 == 1 ? 1.0 : -1.0; }

void require_index(int a) {
  if (a < 1 || a > 3) throw domain_error("sigma index must be 1..3");
}

Eigen::Matrix2cd pauli(int a) {
  Eigen::Matrix2cd s;
  switch (a) {
    case 1: s << 0.0, 1.0, 1.0, 0.0; break;
    case 2: s << 0.0, -I, I, 0.0; break;
    case 3: s << 1.0, 0.0, 0.0, -1.0; break;
    default: s = Eigen::Matrix2cd::Identity();
  }
  return s;
}

struct Theta {
  cd val[4], dv[4], dt[4];  // theta_1..4, d/dv, d/dtau at fixed v
};

Theta theta_all(cd v, cd tau) {
  if (!(tau.imag() > 0.0)) throw domain_error("theta: need Im tau > 0");
  Theta t{};
  t.val[2] = t.val[3] = 1.0;
  double grow = std::exp(std::abs(v.imag()));
  for (int n = 0; n < 2000; ++n) {
    double sg = n % 2 ? -1.0 : 1.0;
    // half-integer characteristic: theta_1, theta_2
    double x = (n + 0.5) * (n + 0.5);
    cd qx = std::exp(I * pi * tau * x);
    double m = 2.0 * n + 1.0;
    cd s = std::sin(m * v), c = std::cos(m * v);
    t.val[0] += 2.0 * sg * qx * s;
    t.dv[0] += 2.0 * sg * qx * m * c;
    t.dt[0] += 2.0 * sg * I * pi * x * qx * s;
    t.val[1] += 2.0 * qx * c;
    t.dv[1] += -2.0 * qx * m * s;
    t.dt[1] += 2.0 * I * pi * x * qx * c;
    double size = std::abs(qx) * std::pow(grow, m) * (1.0 + x);
    if (n >= 1) {
      double y = double(n) * n;
      cd qy = std::exp(I * pi * tau * y);
      cd s2 = std::sin(2.0 * n * v), c2 = std::cos(2.0 * n * v);
      t.val[2] += 2.0 * qy * c2;
      t.dv[2] += -4.0 * n * qy * s2;
      t.dt[2] += 2.0 * I * pi * y * qy * c2;
      t.val[3] += 2.0 * sg * qy * c2;
      t.dv[3] += -4.0 * n * sg * qy * s2;
      t.dt[3] += 2.0 * sg * I * pi * y * qy * c2;
      size = std::max(size, std::abs(qy) * std::pow(grow, 2.0 * n) * (1.0 + y));
    }
    if (n >= 2 && size < 1e-18) return t;
  }
  throw convergence_error("theta: series did not converge");
}

Mat4 from_omegas(const cd w[3]) {
  Mat4 r = Mat4::Zero();
  for (int a = 1; a <= 3; ++a) r += w[a - 1] * pauli_tensor(a);
  return r;
}

void require_distinct(cd a, cd b) {
  if (std::abs(a - b) <= 1e-13 * (1.0 + std::abs(a))) throw domain_error("elliptic: coincident points");
}

}  // namespace

Mat4 pauli_tensor(int a) { return rmat::kron(pauli(a), pauli(a)); }

cd sigma_kernel(int a, Branch b, cd w, const EllipticModulus& m) {
  require_index(a);
  return omega(a, b == Branch::plus ? w : w + I * m.K_prime, m);
}

SigmaTerm canonical(const SigmaTerm& t, const EllipticModulus& m) {
  require_index(t.a);
  if (t.b == Branch::plus) return t;
  return {t.a, Branch::plus, t.point - I * m.K_prime, t.coeff};
}

void add_term(EllipticElement& x, const SigmaTerm& t, const EllipticModulus& m) {
  SigmaTerm k = canonical(t, m);
  if (k.coeff == 0.0) return;
  for (auto it = x.terms.begin(); it != x.terms.end(); ++it) {
    if (it->a != k.a || it->point != k.point) continue;
    it->coeff += k.coeff;
    if (it->coeff == 0.0) x.terms.erase(it);
    return;
  }
  x.terms.push_back(k);
}

EllipticElement element(const SigmaTerm& t, const EllipticModulus& m) {
  EllipticElement x;
  add_term(x, t, m);
  return x;
}

EllipticElement add(const EllipticElement& x, const EllipticElement& y, const EllipticModulus& m, cd scale) {
  EllipticElement r = x;
  for (auto t : y.terms) {
    t.coeff *= scale;
    add_term(r, t, m);
  }
  r.central += scale * y.central;
  return r;
}

double max_coeff(const EllipticElement& x) {
  double r = std::abs(x.central);
  for (auto& t : x.terms) r = std::max(r, std::abs(t.coeff));
  return r;
}

ThetaOmega omega_theta(int a, cd u, cd tau) {
  require_index(a);
  Theta z = theta_all(0.0, tau);
  cd t3 = z.val[2];
  cd v = u / (t3 * t3);
  Theta t = theta_all(v, tau);
  if (std::abs(t.val[0]) < 1e-14 * std::abs(t.val[3])) throw domain_error("omega_theta: pole at lattice point");
  // omega_a = prod theta_j(0)^{e_j} * theta_num(v) / theta_1(v)
  int num;
  double e[4] = {0, 0, 0, 0};
  switch (a) {
    case 1: num = 3, e[1] = 1, e[2] = -1; break;
    case 2: num = 2, e[1] = 1, e[3] = 1, e[2] = -2; break;
    default: num = 1, e[3] = 1, e[2] = -1; break;
  }
  cd pre = 1.0, dlog = 0.0;
  for (int j = 1; j < 4; ++j) {
    if (e[j] == 0) continue;
    pre *= std::pow(z.val[j], e[j]);
    dlog += e[j] * z.dt[j] / z.val[j];
  }
  cd value = pre * t.val[num] / t.val[0];
  cd dv_dtau = -2.0 * v * z.dt[2] / t3;
  dlog += t.dt[num] / t.val[num] - t.dt[0] / t.val[0];
  dlog += dv_dtau * (t.dv[num] / t.val[num] - t.dv[0] / t.val[0]);
  return {value, value * dlog};
}

cd half_period(cd tau) {
  cd t3 = theta_all(0.0, tau).val[2];
  return 0.5 * pi * t3 * t3;
}

cd ell_cocycle(int a, int b, cd w, const EllipticModulus& m, CocycleMode mode) {
  require_index(a);
  require_index(b);
  if (a != b) return 0.0;
  cd d = mode == CocycleMode::closed ? omega_theta(a, w, m.tau).d_tau : d_omega_dtau(a, w, m.tau);
  return d / m.K;
}

EllipticElement ell_bracket(const EllipticElement& x, const EllipticElement& y, double c, const EllipticModulus& m) {
  EllipticElement r;
  for (auto& sx : x.terms) {
    SigmaTerm tx = canonical(sx, m);
    for (auto& sy : y.terms) {
      SigmaTerm ty = canonical(sy, m);
      require_distinct(tx.point, ty.point);
      cd w = tx.point - ty.point;
      cd k = tx.coeff * ty.coeff;
      if (tx.a == ty.a) {
        if (c != 0.0) r.central += k * c * ell_cocycle(tx.a, ty.a, w, m);
        continue;
      }
      int cc = third(tx.a, ty.a);
      cd s = 2.0 * I * levi(tx.a, ty.a) * k;
      add_term(r, {cc, Branch::plus, ty.point, s * omega(tx.a, w, m)}, m);
      add_term(r, {cc, Branch::plus, tx.point, -s * omega(ty.a, w, m)}, m);
    }
  }
  return r;
}

double ell_jacobi_residual(const EllipticElement& x, const EllipticElement& y, const EllipticElement& z, double c,
                           const EllipticModulus& m) {
  auto strip = [](EllipticElement e) {
    e.central = 0.0;
    return e;
  };
  EllipticElement a = ell_bracket(strip(ell_bracket(x, y, c, m)), z, c, m);
  EllipticElement b = ell_bracket(strip(ell_bracket(y, z, c, m)), x, c, m);
  EllipticElement d = ell_bracket(strip(ell_bracket(z, x, c, m)), y, c, m);
  return max_coeff(add(add(a, b, m), d, m));
}

std::vector<Wedge> ell_cobracket(const SigmaTerm& t) {
  require_index(t.a);
  int b = t.a % 3 + 1, c = b % 3 + 1;
  return {{{b, t.b, t.point, 1.0}, {c, t.b, t.point, 1.0}, t.coeff}};
}

Wedge normalize(Wedge w) {
  if (w.left.a > w.right.a) {
    std::swap(w.left, w.right);
    w.coeff = -w.coeff;
  }
  return w;
}

int default_harmonics(const EllipticModulus& m) {
  double p = std::abs(m.nome_p);
  if (!(p < 1.0)) throw domain_error("fourier: need |p| < 1");
  if (p == 0.0) return 1;
  return std::max(1, int(std::ceil(std::log(1e-12) / std::log(p))));
}

namespace {

cd fourier_coeff(int a, int l, double p) {
  // p^l / (p^l -+ 1) written through p^|l| for l < 0
  double q = std::pow(p, std::abs(l));
  if (l >= 0) return a == 1 ? q / (q - 1.0) : q / (q + 1.0);
  return a == 1 ? 1.0 / (1.0 - q) : 1.0 / (1.0 + q);
}

struct Series {
  cd value, d_scale;
};

Series fourier_sum(int a, cd w, int N, const EllipticModulus& m, double scale) {
  require_index(a);
  if (N < 1) throw domain_error("fourier: need N >= 1");
  double p = m.nome_p.real();
  if (!(std::abs(p) < 1.0)) throw domain_error("fourier: need |p| < 1");
  int start = a == 3 ? 0 : 1, lmax = a == 3 ? 2 * N : 2 * N - 1;
  Series s{0.0, 0.0};
  std::vector<double> mag[2];
  for (int l = start; l <= lmax; l += 2) {
    for (int side = 0; side < 2; ++side) {
      int ll = side ? -l : l;
      if (side && l == 0) continue;
      cd t = fourier_coeff(a, ll, p) * std::exp(2.0 * pi * I * double(ll) * scale * w);
      s.value += t;
      s.d_scale += t * 2.0 * pi * I * double(ll) * w;
      mag[side].push_back(std::abs(t));
    }
  }
  for (auto& v : mag)
    if (v.size() >= 2 && v.back() > v.front()) throw convergence_error("fourier: series grows with N");
  if (!std::isfinite(std::abs(s.value))) throw convergence_error("fourier: series grows with N");
  cd pre = I * pi / m.K;
  return {pre * s.value, pre * s.d_scale};
}

}  // namespace

cd sigma_fourier_series(int a, cd w, int N, const EllipticModulus& m, double scale) {
  return fourier_sum(a, w, N, m, scale).value;
}

Calibration calibrate_scale(int a, const EllipticModulus& m, int N) {
  if (N <= 0) N = default_harmonics(m);
  Calibration cal;
  for (double y : {0.75, 1.0, 1.25})
    for (int i = 1; i <= 9; ++i) cal.grid.push_back(cd(0.2 * i * m.K, -y * m.K_prime));
  std::vector<cd> target;
  for (cd w : cal.grid) target.push_back(omega(a, w, m));
  auto residual = [&](double s) {
    double r = 0.0;
    try {
      for (size_t j = 0; j < cal.grid.size(); ++j)
        r = std::max(r, std::abs(fourier_sum(a, cal.grid[j], N, m, s).value - target[j]));
    } catch (const convergence_error&) {
      return std::numeric_limits<double>::infinity();
    }
    return std::isfinite(r) ? r : std::numeric_limits<double>::infinity();
  };
  // coarse log scan, then Gauss-Newton on the squared residuals
  double best = 0.0, best_r = std::numeric_limits<double>::infinity();
  const int n_scan = 4000;
  for (int i = 0; i <= n_scan; ++i) {
    double s = std::pow(10.0, -3.0 + 4.0 * i / n_scan);
    double r = residual(s);
    if (r < best_r) best_r = r, best = s;
  }
  if (!std::isfinite(best_r)) throw convergence_error("calibrate_scale: no convergent scale");
  double s = best;
  for (int it = 0; it < 100; ++it) {
    double num = 0.0, den = 0.0;
    for (size_t j = 0; j < cal.grid.size(); ++j) {
      Series f = fourier_sum(a, cal.grid[j], N, m, s);
      cd r = f.value - target[j];
      num += (std::conj(f.d_scale) * r).real();
      den += std::norm(f.d_scale);
    }
    if (den == 0.0) break;
    double step = num / den;
    s -= step;
    if (std::abs(step) < 1e-16 * std::abs(s)) break;
  }
  cal.scale = s;
  cal.residual = residual(s);
  return cal;
}

EllModeBracket ell_mode_bracket(int a, int k, int b, int l, double c) {
  require_index(a);
  require_index(b);
  EllModeBracket r;
  if (a == b) {
    if (k == -l) r.central = c * double(k);
    return r;
  }
  r.has_mode = true;
  r.a = third(a, b);
  r.index = k + l;
  r.coeff = 2.0 * I * levi(a, b);
  return r;
}

double ell_mode_series_check(int a, cd u1, cd u2, cd z, const EllipticModulus& m, int N, double scale) {
  require_index(a);
  int b = a % 3 + 1, c = b % 3 + 1;
  require_distinct(u1, u2);
  for (cd u : {u1, u2}) {
    double y = (u - z).imag();
    if (!(y < 0.0 && y > -2.0 * m.K_prime)) throw domain_error("mode check: u - z outside the series strip");
  }
  auto S = [&](int i, cd w) { return sigma_fourier_series(i, w, N, m, scale); };
  cd w = u1 - u2;
  cd lhs = S(a, u1 - z) * S(b, u2 - z);
  cd rhs = omega(a, w, m) * S(c, u2 - z) - omega(b, w, m) * S(c, u1 - z);
  return std::abs(lhs - rhs);
}

ModeCobracket ell_mode_cobracket(int a, int k, double p, int Ncut) {
  require_index(a);
  if (!(std::abs(p) < 1.0)) throw domain_error("mode cobracket: need |p| < 1");
  int b = a % 3 + 1, c = b % 3 + 1;
  // signs in (p^k s0)/((p^i s1)(p^j s2))
  double s0, s1, s2;
  switch (a) {
    case 1: s0 = -1, s1 = 1, s2 = 1; break;
    case 2: s0 = 1, s1 = 1, s2 = -1; break;
    default: s0 = 1, s1 = -1, s2 = 1; break;
  }
  auto pw = [&](int n) { return std::pow(p, n); };
  ModeCobracket out;
  for (int i = -Ncut; i <= Ncut; ++i) {
    int j = k - i;
    if (std::abs(j) > Ncut) continue;
    double den = (pw(i) + s1) * (pw(j) + s2);
    if (den == 0.0) {
      out.poles.push_back({i, j});
      continue;
    }
    out.terms.push_back({b, i, c, j, (pw(k) + s0) / den});
  }
  return out;
}

Mat4 r_ell(cd u, const EllipticModulus& m) {
  cd w[3] = {omega(1, u, m), omega(2, u, m), omega(3, u, m)};
  return from_omegas(w);
}

Mat4 r_ell_theta(cd u, cd tau) {
  cd w[3];
  for (int a = 1; a <= 3; ++a) w[a - 1] = omega_theta(a, u, tau).value;
  return from_omegas(w);
}

Mat4 dr_dtau(cd u, cd tau) {
  cd w[3];
  for (int a = 1; a <= 3; ++a) w[a - 1] = omega_theta(a, u, tau).d_tau;
  return from_omegas(w);
}

double ell_ll_check(cd u1, cd u2, const EllipticModulus& m, double c) {
  require_distinct(u1, u2);
  cd w = u1 - u2;
  Mat4 r = r_ell(w, m);
  // tau-derivative by finite differences here, the bracket side uses the theta series
  cd dw[3];
  for (int a = 1; a <= 3; ++a) dw[a - 1] = d_omega_dtau(a, w, m.tau);
  Mat4 central = (c / m.K) * from_omegas(dw);
  const Eigen::Matrix2cd one = Eigen::Matrix2cd::Identity();
  auto el = [&](int a, cd u) { return element({a, Branch::plus, u, 1.0}, m); };

  double worst = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) {
          int row = 2 * i + j, col = 2 * k + l;
          // right side: [L1 + L2, r] + (c/K) dr/dtau with L = sum_a sigma_a^+ pauli_a
          EllipticElement got;
          for (int a = 1; a <= 3; ++a) {
            Mat4 A = rmat::kron(pauli(a), one), B = rmat::kron(one, pauli(a));
            add_term(got, {a, Branch::plus, u1, (A * r - r * A)(row, col)}, m);
            add_term(got, {a, Branch::plus, u2, (B * r - r * B)(row, col)}, m);
          }
          got.central = central(row, col);
          // left side: [L(u1)_ik, L(u2)_jl]
          EllipticElement want;
          for (int a = 1; a <= 3; ++a) {
            cd pa = pauli(a)(i, k);
            if (pa == 0.0) continue;
            for (int b = 1; b <= 3; ++b) {
              cd pb = pauli(b)(j, l);
              if (pb == 0.0) continue;
              want = add(want, ell_bracket(el(a, u1), el(b, u2), c, m), m, pa * pb);
            }
          }
          worst = std::max(worst, max_coeff(add(got, want, m, -1.0)));
        }
  return worst;
}

Mat4 sklyanin(cd u, double zeta, cd tau) {
  Mat4 R = Mat4::Identity();
  for (int a = 1; a <= 3; ++a) {
    cd W = omega_theta(a, u + zeta, tau).value / omega_theta(a, zeta, tau).value;
    R += W * pauli_tensor(a);
  }
  return R;
}

BaxterSklyanin baxter_to_sklyanin(double v, double hbar, double k_tilde) {
  if (!(k_tilde > 0.0 && k_tilde < 1.0)) throw domain_error("baxter_to_sklyanin: need 0 < k~ < 1");
  BaxterSklyanin out;
  auto sn = [&](cd x) { return jacobi_sncndn(x, k_tilde).sn; };
  cd a = sn(hbar + I * v), b = sn(I * v), c = sn(hbar), d = k_tilde * c * b * a;
  out.baxter << a, 0, 0, d, 0, b, c, 0, 0, c, b, 0, d, 0, 0, a;

  double kp = (1.0 - k_tilde) / (1.0 + k_tilde);
  double k = std::sqrt((1.0 - kp) * (1.0 + kp));
  double zeta = 0.5 * hbar * (1.0 + k_tilde);
  cd u = I * (1.0 + k_tilde) * v;
  out.sklyanin = sklyanin(u, zeta, modulus_from_k(k).tau);

  if (std::abs(out.baxter(0, 0)) < 1e-300 || std::abs(out.sklyanin(0, 0)) < 1e-300)
    throw domain_error("baxter_to_sklyanin: zero reference entry");
  out.residual = rmat::norm(out.baxter / out.baxter(0, 0) - out.sklyanin / out.sklyanin(0, 0));
  return out;
}

ClassicalLimit ell_classical_limit(cd u, const EllipticModulus& m, const std::vector<double>& zetas, double c) {
  if (zetas.empty()) throw domain_error("classical limit: empty zeta grid");
  for (size_t i = 0; i < zetas.size(); ++i) {
    if (!(zetas[i] > 0.0) || zetas[i] > 0.05) throw domain_error("classical limit: zeta grid too coarse");
    if (i && !(zetas[i] < zetas[i - 1])) throw domain_error("classical limit: zeta grid must decrease");
  }
  cd tau = m.tau;
  Mat4 r = r_ell_theta(u, tau);
  Mat4 target = (c / m.K) * dr_dtau(u, tau);
  auto D = [&](double z) -> Mat4 {
    cd ts = tau + z * c / m.K;
    return (sklyanin(u, z, ts) - sklyanin(u, z, tau)) / (z * z);
  };
  ClassicalLimit out;
  out.zetas = zetas;
  for (double z : zetas) {
    Mat4 R = sklyanin(u, z, tau);
    out.a.push_back(rmat::norm((R - Mat4::Identity()) / z - r));
    Mat4 d1 = D(z);
    out.b.push_back(rmat::norm(d1 - target));
    out.b_richardson.push_back(rmat::norm(2.0 * d1 - D(2.0 * z) - target));
  }
  return out;
}

}  // namespace ca::ell
