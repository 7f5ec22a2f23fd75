#pragma once
// Rational degeneration eta -> 0: half-plane currents, brackets with
// 1/(u1-u2)^2 central terms, isotropic pairing, step-function mode cobracket.

#include <functional>
#include <vector>

#include "ca/trigcur.hpp"

namespace ca::rat {

using trig::Branch;
using trig::Gen;

// plus: analytic in the lower half-plane (Im u < 0); minus: upper (Im u > 0)
struct RatGeneratorTerm {
  Gen g = Gen::E;
  Branch b = Branch::plus;
  cd point{0.0, -1.0};
  cd coeff{1.0, 0.0};
};

struct RatElement {
  std::vector<RatGeneratorTerm> terms;
  cd central{0.0, 0.0};
};

void require_half_plane(const RatGeneratorTerm& t);
void add_term(RatElement& x, const RatGeneratorTerm& t);
RatElement element(const RatGeneratorTerm& t);
RatElement add(const RatElement& x, const RatElement& y, cd scale = 1.0);
double max_coeff(const RatElement& x);

RatElement rat_bracket(const RatElement& x, const RatElement& y, double c);
cd rat_pair(const RatElement& x, const RatElement& y);
double rat_jacobi_residual(const RatElement& x, const RatElement& y, const RatElement& z, double c);

double theta(double x);

// delta x_lambda = int_0^lambda dtau K(tau) (wedge at tau) + c_coeff x_lambda ^ c,
// integral oriented from 0 to lambda
struct RatModeCobracket {
  Gen g;
  double lambda;
  double weight;   // 2 for H, else 1
  double c_coeff;  // (lambda/2) sgn(lambda)
  double kernel(double tau) const;  // weight * (theta(tau - lambda) - theta(tau))
  // density on the real line: oriented measure folded in, zero outside the interval
  double density(double tau) const;
};
RatModeCobracket rat_mode_cobracket(Gen g, double lambda);

// smeared mode x = int dl phi(l) x_l
struct SmearedMode {
  Gen g;
  std::function<double(double)> phi;
  double lo, hi;  // support of phi
};
struct Duality {
  cd cobracket_side;  // <delta x, y (x) z>
  cd bracket_side;    // <x, [y, z]>
  double residual;
};
// both sides by nested quadrature
Duality double_duality(const SmearedMode& x, const SmearedMode& y, const SmearedMode& z, double tol = 1e-11);

struct EtaLimit {
  std::vector<double> residuals;  // |trig kernel - i/w| per eta
  std::vector<double> ratios;     // residual(eta_k) / residual(eta_{k+1})
  double laplace_residual = 0.0;  // numeric Laplace picture against i/(z-u)
};
// w must satisfy 0 < |w| and |Im w| < 1/(2 max eta)
EtaLimit eta_to_zero_check(Gen g, cd w, const std::vector<double>& etas);

// |int_0^inf dl (+-) e^{-+ i l (u - z)} - i/(z - u)| with the exponential envelope truncated at 1e-16
double laplace_check(Branch b, cd u, double z);

}  // namespace ca::rat
