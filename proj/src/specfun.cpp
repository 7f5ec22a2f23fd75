#include "ca/specfun.hpp"

#include <cmath>

namespace ca {

namespace {

// Lanczos, g = 7, n = 9
constexpr double lanczos_g = 7.0;
constexpr double lanczos_p[9] = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

const double half_log_2pi = 0.5 * std::log(2.0 * pi);

cd lanczos_sum(cd zm1) {
  cd x = lanczos_p[0];
  for (int i = 1; i < 9; ++i) x += lanczos_p[i] / (zm1 + double(i));
  return x;
}

bool is_nonpositive_integer(cd z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

cd log1p_c(cd w) {
  if (std::abs(w) < 1e-4) {
    return w * (1.0 - w * (0.5 - w * (1.0 / 3.0 - 0.25 * w)));
  }
  return std::log(1.0 + w);
}

}  // namespace

cd cgamma(cd z) {
  if (is_nonpositive_integer(z)) throw domain_error("gamma: pole at non-positive integer");
  if (z.real() < 0.5) return pi / (std::sin(pi * z) * cgamma(1.0 - z));
  cd zm1 = z - 1.0;
  cd t = zm1 + lanczos_g + 0.5;
  return std::sqrt(2.0 * pi) * std::exp((zm1 + 0.5) * std::log(t) - t) * lanczos_sum(zm1);
}

cd lngamma(cd z) {
  if (is_nonpositive_integer(z)) throw domain_error("lgamma: pole at non-positive integer");
  if (z.real() < 0.5) return std::log(pi) - std::log(std::sin(pi * z)) - lngamma(1.0 - z);
  cd zm1 = z - 1.0;
  cd t = zm1 + lanczos_g + 0.5;
  return half_log_2pi + (zm1 + 0.5) * std::log(t) - t + std::log(lanczos_sum(zm1));
}

cd lgamma_step(cd z, double h) {
  cd acc = 0.0;
  // shift into the Lanczos region; each shift contributes -ln((z+h)/z)
  while (z.real() < 0.5) {
    if (std::abs(z) == 0.0 || is_nonpositive_integer(z + h))
      throw domain_error("lgamma_step: pole");
    acc -= log1p_c(h / z);
    z += 1.0;
  }
  cd zm1 = z - 1.0;
  cd t = zm1 + lanczos_g + 0.5;
  cd x = lanczos_sum(zm1);
  cd dx = 0.0;
  for (int i = 1; i < 9; ++i) dx += lanczos_p[i] / ((zm1 + double(i)) * (zm1 + double(i) + h));
  dx *= -h;
  acc += (zm1 + 0.5) * log1p_c(h / t) + h * std::log(t + h) - h + log1p_c(dx / x);
  return acc;
}

double agm(double a, double b) {
  for (int n = 0; n < 64; ++n) {
    double an = 0.5 * (a + b);
    double bn = std::sqrt(a * b);
    if (std::abs(an - bn) <= 1e-16 * an) return an;
    a = an;
    b = bn;
  }
  return a;
}

std::array<double, 3> jacobi_sncndn_real(double x, double k) {
  if (!(k >= 0.0 && k <= 1.0)) throw domain_error("jacobi: modulus out of range");
  if (k == 0.0) return {std::sin(x), std::cos(x), 1.0};
  if (k == 1.0) {
    double s = 1.0 / std::cosh(x);
    return {std::tanh(x), s, s};
  }
  double kp = std::sqrt((1.0 - k) * (1.0 + k));
  double a[32], c[32];
  a[0] = 1.0;
  c[0] = k;
  double b = kp;
  int n = 0;
  while (std::abs(c[n]) > 1e-16 * a[n] && n < 30) {
    a[n + 1] = 0.5 * (a[n] + b);
    c[n + 1] = 0.5 * (a[n] - b);
    b = std::sqrt(a[n] * b);
    ++n;
  }
  double phi = std::ldexp(a[n] * x, n);
  for (int j = n; j >= 1; --j) phi = 0.5 * (phi + std::asin(c[j] * std::sin(phi) / a[j]));
  double sn = std::sin(phi), cn = std::cos(phi);
  double dn = std::sqrt(kp * kp + k * k * cn * cn);
  return {sn, cn, dn};
}

SnCnDn jacobi_sncndn(cd u, double k) {
  if (!(k >= 0.0 && k < 1.0)) throw domain_error("jacobi_sncndn: need 0 <= k < 1");
  if (!std::isfinite(u.real()) || !std::isfinite(u.imag()))
    throw domain_error("jacobi_sncndn: non-finite argument");
  double kp = std::sqrt((1.0 - k) * (1.0 + k));
  auto [s, c, d] = jacobi_sncndn_real(u.real(), k);
  if (u.imag() == 0.0) return {s, c, d};
  // imaginary part through the complementary modulus
  auto [s1, c1, d1] = jacobi_sncndn_real(u.imag(), kp);
  double del = c1 * c1 + k * k * s * s * s1 * s1;
  return {cd(s * d1, c * d * s1 * c1) / del, cd(c * c1, -s * d * s1 * d1) / del,
          cd(d * c1 * d1, -k * k * s * c * s1) / del};
}

KPair elliptic_K(double k) {
  if (!(k > 0.0 && k < 1.0)) throw domain_error("elliptic_K: need 0 < k < 1");
  double kp = std::sqrt((1.0 - k) * (1.0 + k));
  return {pi / (2.0 * agm(1.0, kp)), pi / (2.0 * agm(1.0, k))};
}

EllipticModulus modulus_from_k(double k) {
  auto [K, Kp] = elliptic_K(k);
  EllipticModulus m;
  m.k = k;
  m.k_prime = std::sqrt((1.0 - k) * (1.0 + k));
  m.K = K;
  m.K_prime = Kp;
  m.tau = cd(0.0, Kp / K);
  m.nome_p = std::exp(-pi * Kp / K);
  return m;
}

EllipticModulus modulus_from_tau(cd tau) {
  if (!(tau.imag() > 0.0)) throw domain_error("modulus_from_tau: need Im tau > 0");
  if (std::abs(tau.real()) > 1e-14 * tau.imag())
    throw domain_error("modulus_from_tau: real modulus needs purely imaginary tau");
  double t = tau.imag();
  double q = std::exp(-pi * t);
  if (!(q < 1.0)) throw convergence_error("modulus_from_tau: |p| >= 1");
  double th2 = 0.0, th3 = 1.0, th4 = 1.0;
  for (int n = 0; n < 100000; ++n) {
    double a = std::exp(-pi * t * double(n) * double(n + 1));
    th2 += a;
    if (n >= 1) {
      double b = std::exp(-pi * t * double(n) * double(n));
      th3 += 2.0 * b;
      th4 += (n % 2 ? -2.0 : 2.0) * b;
    }
    if (n >= 1 && a < 1e-17 * th2) break;
    if (n == 99999) throw convergence_error("modulus_from_tau: theta series");
  }
  th2 *= 2.0 * std::exp(-pi * t / 4.0);
  EllipticModulus m;
  m.k = (th2 / th3) * (th2 / th3);
  m.k_prime = (th4 / th3) * (th4 / th3);
  m.K = 0.5 * pi * th3 * th3;
  m.K_prime = m.K * t;
  m.tau = cd(0.0, t);
  m.nome_p = q;
  return m;
}

cd omega(int a, cd u, const EllipticModulus& m) {
  auto [sn, cn, dn] = jacobi_sncndn(u, m.k);
  if (std::abs(sn) < 1e-14) throw domain_error("omega: pole at lattice point");
  switch (a) {
    case 1: return 1.0 / sn;
    case 2: return dn / sn;
    case 3: return cn / sn;
  }
  throw domain_error("omega: index must be 1..3");
}

Derivative d_omega_dtau_est(int a, cd u, cd tau, double step) {
  double h = step > 0 ? step : 1e-3 * tau.imag();
  if (tau.imag() - h <= 0.0) throw domain_error("d_omega_dtau: step leaves upper half-plane");
  auto diff = [&](double s) {
    cd up = omega(a, u, modulus_from_tau(tau + I * s));
    cd dn = omega(a, u, modulus_from_tau(tau - I * s));
    return (up - dn) / (2.0 * I * s);
  };
  cd d1 = diff(h), d2 = diff(0.5 * h);
  cd r = (4.0 * d2 - d1) / 3.0;
  double err = std::abs(r - d2);
  if (!std::isfinite(err) || err > 1e-2 * std::abs(r) + 1e-6)
    throw convergence_error("d_omega_dtau: step halving does not converge");
  return {r, err};
}

cd d_omega_dtau(int a, cd u, cd tau, double step) { return d_omega_dtau_est(a, u, tau, step).value; }

}  // namespace ca
