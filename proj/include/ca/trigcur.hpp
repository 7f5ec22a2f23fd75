#pragma once
// Trigonometric current algebra: kernels, brackets with central terms,
// invariant pairing, cobrackets, cocycle and distributional checks.

#include <vector>

#include "ca/quad.hpp"

namespace ca::trig {

enum class Gen { E, F, H };
enum class Branch { plus, minus };

const char* name(Gen g);

struct TrigParams {
  double eta = 1.0;
};

struct GeneratorTerm {
  Gen g = Gen::E;
  Branch b = Branch::plus;
  cd point{0.0, 0.0};
  cd coeff{1.0, 0.0};
};

struct CurrentElement {
  std::vector<GeneratorTerm> terms;
  cd central{0.0, 0.0};
};

// x_-(u) = sign * x_+(u - i/eta); sign = -1 for E, F and +1 for H
struct Canonical {
  Gen g;
  cd point;
  double sign;
};

bool in_strip(Branch b, cd u, const TrigParams& p);
void require_strip(const GeneratorTerm& t, const TrigParams& p);
Canonical canonical(const GeneratorTerm& t, const TrigParams& p);

// adds t, merging with a term that has the same canonical key
void add_term(CurrentElement& x, const GeneratorTerm& t, const TrigParams& p);
CurrentElement element(const GeneratorTerm& t, const TrigParams& p);
CurrentElement add(const CurrentElement& x, const CurrentElement& y, const TrigParams& p, cd scale = 1.0);
// max |coefficient| after merging, central included
double max_coeff(const CurrentElement& x);

cd kernel(Gen g, Branch b, cd w, const TrigParams& p);

CurrentElement bracket(const CurrentElement& x, const CurrentElement& y, double c, const TrigParams& p);
cd pair(const CurrentElement& x, const CurrentElement& y, const TrigParams& p);

struct WedgeTerm {
  GeneratorTerm left, right;
  cd coeff;
};
std::vector<WedgeTerm> cobracket0(const GeneratorTerm& t);

// closed-form central value B(x, y) for unit-normalized terms, times the coefficients
cd cocycle_B(const GeneratorTerm& x, const GeneratorTerm& y, const TrigParams& p);
// boundary integral over the strip Pi+ with an eta finite difference of the kernels
QuadratureResult cocycle_B_numeric(const GeneratorTerm& x, const GeneratorTerm& y, const TrigParams& p,
                                   double tol = 1e-9);

double jacobi_residual(const CurrentElement& x, const CurrentElement& y, const CurrentElement& z, double c,
                       const TrigParams& p);

// point * (eta/eta_new), coefficient * (eta/eta_new)
CurrentElement gauge_map(const CurrentElement& x, double eta, double eta_new);

double sokhotsky_check(Gen g, double u, const TestFunction& s, const TrigParams& p);
double fourier_kernel_check(Gen g, Branch b, cd u, double z, const TrigParams& p);

// Fourier weights of the generating functions: x_+(u) = int dl w_x(l) e^{i l u} x_l
cd mode_weight(Gen g, double lambda, const TrigParams& p);

struct ModeSymbol {
  Gen g;
  double lambda;
};

struct ModeBracket {
  bool has_mode = false;
  Gen g = Gen::E;
  double lambda = 0.0;
  double coeff = 0.0;
  // coefficient of c * delta(lambda_a + lambda_b)
  double central_density = 0.0;
};
ModeBracket mode_bracket(ModeSymbol a, ModeSymbol b, double c);

// residual of [x_+(u1), y_+(u2)] computed from smeared mode brackets against
// bracket() at the Fourier variable nu (mode part) plus the central part
double mode_smeared_check(Gen a, Gen b, cd u1, cd u2, double nu, double c, const TrigParams& p);

struct ModeCobracket {
  double kernel;   // coefficient of the canonical wedge at tau
  double c_coeff;  // coefficient of x_lambda ^ c
};
// canonical wedges: E: h_tau ^ e_{lambda-tau}; F: f_{lambda-tau} ^ h_tau; H: e_tau ^ f_{lambda-tau}
ModeCobracket mode_cobracket_kernel(Gen g, double lambda, double tau, const TrigParams& p);
ModeCobracket cobracket_from_r(Gen g, double lambda, double tau, const TrigParams& p);
// coefficient of X_alpha (x) Y_beta in [x_lambda (x) 1 + 1 (x) x_lambda, r]
double r_contraction(Gen x, double lambda, Gen X, double alpha, Gen Y, double beta, const TrigParams& p);
// coefficient of x_lambda (x) c in the same contraction
double r_contraction_central(Gen x, double lambda, const TrigParams& p);

}  // namespace ca::trig
