#pragma once
// Quantum trigonometric R-matrix, its semiclassical expansion and the
// (LL) bracket of the classical L-operator.

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "ca/trigcur.hpp"

namespace ca::rmat {

using Mat4 = Eigen::Matrix4cd;
using Mat8 = Eigen::Matrix<cd, 8, 8>;

// entries ((i,k),(j,l)) -> (2i+k, 2j+l)
Mat4 kron(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b);
// max |entry|
double norm(const Mat4& m);

Mat4 rbar(cd u, double eta, double hbar);
cd tau_plus(cd u, double hbar);

struct VarrhoResult {
  cd value;
  cd log_value;    // branch unspecified
  double monitor;  // |log value(N) - log value(2N)|
  int terms;       // N
};
// Gamma prefactor times prod_p R_p ratios; the product is summed in log form up to
// N = max(P, 10/(hbar eta)) and the rest is the asymptotic Stirling tail
VarrhoResult varrho(cd u, double eta, double hbar, int P = 400);

Mat4 r0(cd u, double eta);
Mat4 r1_diff(cd u, double eta);
cd varrho0(cd u, double eta);

struct TracelessShift {
  cd kappa;
  Mat4 r0_tilde;
};
TracelessShift traceless_shift(double eta, cd u);

// [r12(u-v), r13(u)] + [r12(u-v), r23(v)] + [r13(u), r23(v)], max |entry|
double cybe_residual(const std::function<Mat4(cd)>& r, cd u, cd v);

// weights w with sum w = 1 and sum w h^k = 0 for k = 1..n-1
std::vector<double> richardson_weights(const std::vector<double>& h);

struct ExpansionResult {
  std::vector<double> hbars;
  std::vector<double> a, b, c;  // raw residuals per hbar
  double b_extrapolated = 0.0, c_extrapolated = 0.0;
  double varrho_monitor = 0.0;
  bool a_monotone = false, b_monotone = false, c_monotone = false;
};
ExpansionResult expansion_check(cd u, double eta, const std::vector<double>& hbars, double c = 1.0, int P = 400);

// max |(r1_diff - varrho0 id) - eta^2 d r0_tilde / d eta|
double eta_derivative_identity(cd u, double eta, double step);

// bracket [X(u1), Y(u2)] read off from the right side of (LL) with
// L = [[h/2, f], [e, -h/2]]; points in Pi+
trig::CurrentElement ll_induced_bracket(trig::Gen X, cd u1, trig::Gen Y, cd u2, double eta, double c);
// max coefficient residual over all 16 entry pairs [L_ij(u1), L_kl(u2)] against trig::bracket
double ll_structure_check(cd u1, cd u2, double eta, double c);

}  // namespace ca::rmat
