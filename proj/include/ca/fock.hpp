#pragma once
// Level-1 Fock representation by continuous free bosons [a_l, a_m] = (l/2) delta(l + m):
// normal-ordered exponentials, keyhole pairings and vacuum correlators.

#include <vector>

#include "ca/quad.hpp"
#include "ca/trigcur.hpp"

namespace ca::fock {

// l -> coef e^{i l u} / l^pole, times 1/(1 - e^{denom l / eta}) when denom = +-1
struct ExpTerm {
  cd coef{1.0, 0.0};
  cd u{0.0, 0.0};
  int pole = 0;
  int denom = 0;
  double eta = 1.0;
  cd operator()(cd l) const;
};

struct BosonExponent {
  std::vector<ExpTerm> terms;
  cd operator()(cd l) const;
};

// prefactor :exp(int g(l) a_l dl):
struct NormalOrderedOperator {
  cd prefactor{1.0, 0.0};
  BosonExponent exponent;
};

// an operator inside a correlator: a normal-ordered exponential or the linear boson int g(l) a_l dl
struct Operator {
  bool linear = false;
  NormalOrderedOperator op;
};

struct KeyholeOptions {
  double r0 = 1e-3;
  double epsilon = 1e-4;
  double tol = 1e-11;
  bool rotate = true;  // false: only the unrotated ray is admissible
};

Operator e_current(cd u);
Operator f_current(cd u);
Operator h_current(cd u);
// 2 int a_l e^{ilu} / (1 - e^{l/eta}) dl, pv at 0
Operator h_plus(cd u, double eta);
// -2 int a_l e^{ilu} / (1 - e^{-l/eta}) dl
Operator h_minus(cd u, double eta);

// int over the keyhole of ln(-l)/(2 pi i) (l/2) gX(l) gY(-l); X stands to the left of Y
cd contraction(const BosonExponent& x, const BosonExponent& y, const KeyholeOptions& o = {});

NormalOrderedOperator product_normal(const NormalOrderedOperator& a, const NormalOrderedOperator& b,
                                     const KeyholeOptions& o = {});

// Wick: exponentials fold by product_normal, linear bosons pair with each other or with the exponentials
cd vacuum_expectation(const std::vector<Operator>& ops, const KeyholeOptions& o = {});

enum class Current { e, f, h };
Operator current(Current t, cd u);
// <A(u) B(v)> on the unrotated ray; throws convergence_error outside the ordering band
cd two_point(Current a, cd u, Current b, cd v, const KeyholeOptions& o = {});

// <e(u) f(v)> (u - v)^2, measured once per run at a fixed reference pair
cd ef_constant();
cd measure_ef_constant(const KeyholeOptions& o = {});

struct SmearedCommutator {
  cd value;     // int s(u) [<e(u)f(v)> - <f(v)e(u)>] du
  cd oracle;    // int s(u) [1/(u-v+i0)^2 - 1/(u-v-i0)^2] du from the closed form
  cd s_prime;   // s'(v)
  cd constant;  // value / s'(v)
  double residual;  // |value - c_expect C_ef oracle|
};
// the two orderings are integrated on lines Im u = Im v +- offset
SmearedCommutator smeared_commutator_check(const TestFunction& s, cd v, double c_expect, double offset = 1.0,
                                           const KeyholeOptions& o = {});

struct HKernel {
  cd fock;     // [<f(w) h+(u) e(v)> - <f(w) e(v) h+(u)>] / <f(w) e(v)>
  cd algebra;  // 2 pv int e^{il(u-v)} / (1 - e^{l/eta}) dl
  double residual;
};
// swap: e and f exchanged on both sides of the comparison
HKernel h_action_kernel_check(cd u, cd v, cd w, const trig::TrigParams& p, bool swap = false,
                              const KeyholeOptions& o = {});

}  // namespace ca::fock
