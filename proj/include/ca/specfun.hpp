#pragma once
// Complex special functions: gamma, Jacobi elliptic functions, complete
// elliptic integrals and the modulus <-> tau map.

#include <array>
#include <complex>
#include <stdexcept>

namespace ca {

using cd = std::complex<double>;
inline constexpr double pi = 3.14159265358979323846264338327950288;
inline constexpr cd I{0.0, 1.0};

struct domain_error : std::domain_error {
  using std::domain_error::domain_error;
};
struct convergence_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

cd cgamma(cd z);
// log Gamma, branch unspecified (only exp() of sums is used)
cd lngamma(cd z);
// lnGamma(z + h) - lnGamma(z), accurate when |h| is small; Re z > 0
cd lgamma_step(cd z, double h);

struct SnCnDn {
  cd sn, cn, dn;
};

SnCnDn jacobi_sncndn(cd u, double k);
// real argument, 0 <= k <= 1
std::array<double, 3> jacobi_sncndn_real(double x, double k);

struct EllipticModulus {
  double k = 0, k_prime = 1;
  double K = 0, K_prime = 0;
  cd tau, nome_p;
};

struct KPair {
  double K, K_prime;
};

KPair elliptic_K(double k);
double agm(double a, double b);

EllipticModulus modulus_from_k(double k);
EllipticModulus modulus_from_tau(cd tau);

// omega_1 = 1/sn, omega_2 = dn/sn, omega_3 = cn/sn
cd omega(int a, cd u, const EllipticModulus& m);

struct Derivative {
  cd value;
  double err;
};

// d omega_a / d tau at fixed u; step <= 0 selects 1e-3 Im tau
Derivative d_omega_dtau_est(int a, cd u, cd tau, double step = 0);
cd d_omega_dtau(int a, cd u, cd tau, double step = 0);

}  // namespace ca
