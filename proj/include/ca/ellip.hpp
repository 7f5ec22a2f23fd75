#pragma once
// Elliptic current algebra: sigma generating functions, brackets with the
// tau-derivative cocycle, Fourier modes, the elliptic r-matrix and the
// Baxter/Sklyanin quantum R-matrices.

#include <vector>

#include "ca/rmat_trig.hpp"
#include "ca/specfun.hpp"

namespace ca::ell {

using rmat::Mat4;
using trig::Branch;

// sigma_a^-(u) = sigma_a^+(u - iK')
struct SigmaTerm {
  int a = 1;
  Branch b = Branch::plus;
  cd point{0.0, 0.0};
  cd coeff{1.0, 0.0};
};

struct EllipticElement {
  std::vector<SigmaTerm> terms;  // canonical: plus branch only
  cd central{0.0, 0.0};
};

// plus: omega_a(w); minus: omega_a(w + iK')
cd sigma_kernel(int a, Branch b, cd w, const EllipticModulus& m);

SigmaTerm canonical(const SigmaTerm& t, const EllipticModulus& m);
void add_term(EllipticElement& x, const SigmaTerm& t, const EllipticModulus& m);
EllipticElement element(const SigmaTerm& t, const EllipticModulus& m);
EllipticElement add(const EllipticElement& x, const EllipticElement& y, const EllipticModulus& m, cd scale = 1.0);
double max_coeff(const EllipticElement& x);

// omega_a and its tau-derivative at fixed u from theta series; tau may be complex
struct ThetaOmega {
  cd value, d_tau;
};
ThetaOmega omega_theta(int a, cd u, cd tau);
// K(tau) = pi/2 theta_3(0)^2
cd half_period(cd tau);

enum class CocycleMode { closed, numeric_tau_fd };
// delta_ab (1/K) d omega_a(w) / d tau
cd ell_cocycle(int a, int b, cd w, const EllipticModulus& m, CocycleMode mode = CocycleMode::closed);

EllipticElement ell_bracket(const EllipticElement& x, const EllipticElement& y, double c, const EllipticModulus& m);
double ell_jacobi_residual(const EllipticElement& x, const EllipticElement& y, const EllipticElement& z, double c,
                           const EllipticModulus& m);

struct Wedge {
  SigmaTerm left, right;
  cd coeff;
};
// delta sigma_a(u) = sigma_b(u) ^ sigma_c(u), (a,b,c) cyclic
std::vector<Wedge> ell_cobracket(const SigmaTerm& t);
// x ^ y = -(y ^ x): rewrite with the smaller index on the left
Wedge normalize(Wedge w);

// (i pi / K) sum_l C_a(l) exp(2 pi i l scale w) over N harmonics of the right parity on each side:
// odd |l| <= 2N-1 for a = 1, 2; even |l| <= 2N for a = 3
cd sigma_fourier_series(int a, cd w, int N, const EllipticModulus& m, double scale);
// N with |p|^N < 1e-12
int default_harmonics(const EllipticModulus& m);

struct Calibration {
  double scale;
  double residual;  // max |series - omega_a| on the grid
  std::vector<cd> grid;
};
// grid: x in (0, 2K), Im w in {-0.75, -1, -1.25} K'
Calibration calibrate_scale(int a, const EllipticModulus& m, int N = 0);

struct EllModeBracket {
  bool has_mode = false;
  int a = 0;
  int index = 0;
  cd coeff{0.0, 0.0};
  cd central{0.0, 0.0};
};
EllModeBracket ell_mode_bracket(int a, int k, int b, int l, double c);

// |S_a(u1-z) S_b(u2-z) - [omega_a(u12) S_c(u2-z) - omega_b(u12) S_c(u1-z)]| for cyclic (a,b,c),
// S the truncated series; all u_j - z in -2K' < Im < 0
double ell_mode_series_check(int a, cd u1, cd u2, cd z, const EllipticModulus& m, int N, double scale);

struct ModeWedge {
  int left_a, i;
  int right_a, j;
  cd coeff;
};
struct ModeCobracket {
  std::vector<ModeWedge> terms;
  std::vector<std::pair<int, int>> poles;  // (i, j) with a vanishing denominator, skipped
};
ModeCobracket ell_mode_cobracket(int a, int k, double p, int Ncut);

Mat4 pauli_tensor(int a);  // sigma_a (x) sigma_a
Mat4 r_ell(cd u, const EllipticModulus& m);
Mat4 r_ell_theta(cd u, cd tau);
Mat4 dr_dtau(cd u, cd tau);

// max coefficient residual of the brackets induced by (565) against ell_bracket
double ell_ll_check(cd u1, cd u2, const EllipticModulus& m, double c);

struct BaxterSklyanin {
  Mat4 baxter, sklyanin;
  double residual;  // max entrywise difference after dividing by the (0,0) entries
};
BaxterSklyanin baxter_to_sklyanin(double v, double hbar, double k_tilde);

// 1 + sum W_a sigma_a (x) sigma_a, W_a = omega_a(u + zeta) / omega_a(zeta)
Mat4 sklyanin(cd u, double zeta, cd tau);

struct ClassicalLimit {
  std::vector<double> zetas;
  std::vector<double> a;             // |(R - 1)/zeta - r|
  std::vector<double> b;             // |[R(tau*) - R(tau)]/zeta^2 - (c/K) dr/dtau|
  std::vector<double> b_richardson;  // same with 2 D(zeta) - D(2 zeta)
};
ClassicalLimit ell_classical_limit(cd u, const EllipticModulus& m, const std::vector<double>& zetas, double c);

}  // namespace ca::ell
