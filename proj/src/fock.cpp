#include "ca/fock.hpp"

#include <functional>

namespace ca::fock {

namespace {

// e^x - 1 without cancellation near 0
cd expm1c(cd x) {
  if (std::abs(x) < 1e-2) return x * (1.0 + x / 2.0 * (1.0 + x / 3.0 * (1.0 + x / 4.0 * (1.0 + x / 5.0))));
  return std::exp(x) - 1.0;
}

const double euler_gamma = 0.57721566490153286061;

// u_x - u_y shifted by the decay the denominators add on Re l -> +inf
cd decay_point(const ExpTerm& x, const ExpTerm& y) {
  cd w = x.u - y.u;
  if (x.denom == 1) w += I / x.eta;
  if (y.denom == -1) w += I / y.eta;
  return w;
}

double ray_angle(cd w, bool rotate) {
  if (w == 0.0) throw convergence_error("fock: non-decaying contraction");
  if (!rotate) {
    if (w.imag() <= 1e-3 * std::abs(w)) throw convergence_error("fock: contraction outside the ordering band");
    return 0.0;
  }
  // e^{i l w} decays along e^{i phi} when 0 < phi + arg w < pi
  double a = std::arg(w), lo = 0.0, hi = -1.0;
  for (double k : {-2.0 * pi, 0.0, 2.0 * pi}) {
    double l = std::max(k - a, -0.5 * pi), h = std::min(k + pi - a, 0.5 * pi);
    if (h - l > hi - lo) lo = l, hi = h;
  }
  if (hi - lo < 0.1) throw convergence_error("fock: no admissible keyhole ray");
  return 0.5 * (lo + hi);
}

// smallest symmetric L with |f| below 1e-16 of its peak beyond L on both lines
double line_cutoff(const std::function<cd(cd)>& f, const ContourSpec& a, const ContourSpec& b) {
  double peak = 0.0;
  for (double x = -4.0; x <= 4.0; x += 0.125)
    peak = std::max({peak, std::abs(f(cd(x, a.offset))), std::abs(f(cd(x, b.offset)))});
  for (double L = 4.0; L < 4096.0; L *= 1.25) {
    double m = 0.0;
    for (double x : {L, -L, 1.25 * L, -1.25 * L})
      m = std::max({m, std::abs(f(cd(x, a.offset))), std::abs(f(cd(x, b.offset)))});
    if (m <= 1e-16 * peak) return L;
  }
  throw convergence_error("smeared_commutator_check: test function does not decay");
}

}  // namespace

cd ExpTerm::operator()(cd l) const {
  cd v = coef * std::exp(I * l * u);
  if (pole == 1) v /= l;
  if (denom != 0) v /= -expm1c(double(denom) * l / eta);
  return v;
}

cd BosonExponent::operator()(cd l) const {
  cd s = 0.0;
  for (auto& t : terms) s += t(l);
  return s;
}

Operator e_current(cd u) {
  return {false, {std::exp(euler_gamma), {{{-2.0, u, 1}}}}};
}

Operator f_current(cd u) {
  return {false, {std::exp(euler_gamma), {{{2.0, u, 1}}}}};
}

Operator h_current(cd u) { return {true, {1.0, {{{2.0, u, 0}}}}}; }

Operator h_plus(cd u, double eta) {
  if (!(eta > 0)) throw domain_error("h_plus: eta must be positive");
  return {true, {1.0, {{{2.0, u, 0, 1, eta}}}}};
}

Operator h_minus(cd u, double eta) {
  if (!(eta > 0)) throw domain_error("h_minus: eta must be positive");
  return {true, {1.0, {{{-2.0, u, 0, -1, eta}}}}};
}

cd contraction(const BosonExponent& x, const BosonExponent& y, const KeyholeOptions& o) {
  cd total = 0.0;
  for (auto& tx : x.terms)
    for (auto& ty : y.terms) {
      ContourSpec spec;
      spec.kind = ContourKind::keyhole_log;
      spec.r0 = o.r0;
      spec.epsilon = o.epsilon;
      spec.tol = o.tol;
      spec.angle = ray_angle(decay_point(tx, ty), o.rotate);
      auto g = [&](cd l) { return 0.5 * l * tx(l) * ty(-l); };
      total += integrate_keyhole_log(g, spec).value;
    }
  return total;
}

NormalOrderedOperator product_normal(const NormalOrderedOperator& a, const NormalOrderedOperator& b,
                                     const KeyholeOptions& o) {
  NormalOrderedOperator r;
  r.prefactor = a.prefactor * b.prefactor;
  if (!a.exponent.terms.empty() && !b.exponent.terms.empty())
    r.prefactor *= std::exp(contraction(a.exponent, b.exponent, o));
  r.exponent = a.exponent;
  r.exponent.terms.insert(r.exponent.terms.end(), b.exponent.terms.begin(), b.exponent.terms.end());
  return r;
}

cd vacuum_expectation(const std::vector<Operator>& ops, const KeyholeOptions& o) {
  NormalOrderedOperator fold;
  std::vector<size_t> lin;
  for (size_t i = 0; i < ops.size(); ++i) {
    if (ops[i].linear) lin.push_back(i);
    else fold = product_normal(fold, ops[i].op, o);
  }
  cd pre = fold.prefactor;
  if (lin.empty()) return pre;

  // a linear boson contracts with every exponential, in operator order
  std::vector<cd> shift(lin.size(), 0.0);
  for (size_t k = 0; k < lin.size(); ++k) {
    pre *= ops[lin[k]].op.prefactor;
    for (size_t j = 0; j < ops.size(); ++j) {
      if (ops[j].linear) continue;
      const auto& gl = ops[lin[k]].op.exponent;
      const auto& gv = ops[j].op.exponent;
      shift[k] += j > lin[k] ? contraction(gl, gv, o) : contraction(gv, gl, o);
    }
  }
  // partial matchings: each linear boson is paired with a later one or takes its shift
  std::function<cd(std::vector<size_t>)> wick = [&](std::vector<size_t> rest) -> cd {
    if (rest.empty()) return 1.0;
    size_t k = rest.front();
    std::vector<size_t> tail(rest.begin() + 1, rest.end());
    cd s = shift[k] * wick(tail);
    for (size_t m = 0; m < tail.size(); ++m) {
      std::vector<size_t> t2 = tail;
      t2.erase(t2.begin() + m);
      s += contraction(ops[lin[k]].op.exponent, ops[lin[tail[m]]].op.exponent, o) * wick(t2);
    }
    return s;
  };
  std::vector<size_t> all(lin.size());
  for (size_t k = 0; k < all.size(); ++k) all[k] = k;
  return pre * wick(all);
}

Operator current(Current t, cd u) {
  switch (t) {
    case Current::e: return e_current(u);
    case Current::f: return f_current(u);
    default: return h_current(u);
  }
}

cd two_point(Current a, cd u, Current b, cd v, const KeyholeOptions& o) {
  KeyholeOptions strict = o;
  strict.rotate = false;
  return vacuum_expectation({current(a, u), current(b, v)}, strict);
}

cd measure_ef_constant(const KeyholeOptions& o) {
  cd u{0.3, 0.4}, v{-0.1, -0.4};
  return two_point(Current::e, u, Current::f, v, o) * (u - v) * (u - v);
}

cd ef_constant() {
  static const cd c = measure_ef_constant();
  return c;
}

SmearedCommutator smeared_commutator_check(const TestFunction& s, cd v, double c_expect, double offset,
                                           const KeyholeOptions& o) {
  if (!(offset > 0)) throw domain_error("smeared_commutator_check: offset must be positive");
  ContourSpec above, below;
  above.offset = v.imag() + offset;
  below.offset = v.imag() - offset;
  above.tol = below.tol = 1e-9;
  KeyholeOptions strict = o;
  strict.rotate = false;

  SmearedCommutator r;
  auto dist = [&](cd u) { return s(u) / ((u - v) * (u - v)); };
  auto oa = integrate_line(dist, above), ob = integrate_line(dist, below);
  r.oracle = oa.value - ob.value;
  // both correlators fall off like the closed form; reuse its cutoff on the expensive lines
  above.cutoff = below.cutoff = line_cutoff(dist, above, below);
  auto ef = [&](cd u) { return s(u) * two_point(Current::e, u, Current::f, v, strict); };
  auto fe = [&](cd u) { return s(u) * two_point(Current::f, v, Current::e, u, strict); };
  r.value = integrate_line(ef, above).value - integrate_line(fe, below).value;
  r.s_prime = s.derivative(v);
  r.constant = r.value / r.s_prime;
  r.residual = std::abs(r.value - c_expect * ef_constant() * r.oracle);
  return r;
}

HKernel h_action_kernel_check(cd u, cd v, cd w, const trig::TrigParams& p, bool swap, const KeyholeOptions& o) {
  Operator x = swap ? f_current(v) : e_current(v);
  Operator y = swap ? e_current(w) : f_current(w);
  Operator h = h_plus(u, p.eta);
  HKernel r;
  try {
    cd a = vacuum_expectation({y, h, x}, o), b = vacuum_expectation({y, x, h}, o);
    r.fock = (a - b) / vacuum_expectation({y, x}, o);
  } catch (const convergence_error&) {
    // <y x> is outside every admissible ray; the contraction of y with h is common to both
    // orderings and divides out with it
    r.fock = contraction(h.op.exponent, x.op.exponent, o) - contraction(x.op.exponent, h.op.exponent, o);
  }
  r.algebra = 2.0 * trig::kernel(trig::Gen::H, trig::Branch::plus, v - u, p);
  if (swap) r.algebra = -r.algebra;
  r.residual = std::abs(r.fock - r.algebra);
  return r;
}

}  // namespace ca::fock
