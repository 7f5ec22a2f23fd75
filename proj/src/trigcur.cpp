#include "ca/trigcur.hpp"

#include <algorithm>
#include <cmath>

namespace ca::trig {

namespace {

constexpr double strip_margin = 1e-9;

double gen_sign(Gen g, Branch b) { return (b == Branch::minus && g != Gen::H) ? -1.0 : 1.0; }

bool same_point(cd a, cd b) { return std::abs(a - b) <= 1e-13 * (1.0 + std::abs(a)); }

cd sinh_checked(cd x) {
  cd s = std::sinh(x);
  if (std::abs(s) < 1e-14) throw domain_error("trig kernel: pole hit");
  return s;
}

// x / sinh x and x coth x with their removable points
cd x_over_sinh(cd x) {
  if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0;
  return x / std::sinh(x);
}
cd x_coth(cd x) {
  if (std::abs(x) < 1e-4) return 1.0 + x * x / 3.0;
  return x * std::cosh(x) / std::sinh(x);
}

cd B_ef(cd w, double eta) {
  cd x = pi * eta * w;
  cd s = sinh_checked(x);
  return I * pi * eta * eta * (x * std::cosh(x) / (s * s) - 1.0 / s);
}
cd B_hh(cd w, double eta) {
  cd x = pi * eta * w;
  cd s = sinh_checked(x);
  return 2.0 * I * pi * eta * eta * (x / (s * s) - std::cosh(x) / s);
}

cd kernel_plus(Gen g, cd w, double eta) {
  cd x = pi * eta * w;
  cd s = sinh_checked(x);
  if (g == Gen::H) return I * pi * eta * std::cosh(x) / s;
  return I * pi * eta / s;
}

cd kernel_eta(Gen g, Branch b, cd w, double eta) {
  if (b == Branch::plus) return kernel_plus(g, w, eta);
  return gen_sign(g, b) * kernel_plus(g, w + I / eta, eta);
}

// one canonical term produced by a bracket: generator at one of the two input points
struct Out {
  Gen g;
  int which;  // 0: first argument's point, 1: second's
  cd coeff;
};

struct Raw {
  Out t[2];
  int n = 0;
  cd central = 0.0;
};

// bracket of canonical plus generators at a and b, unit coefficients
Raw bracket_canonical(Gen ga, cd a, Gen gb, cd b, double c, double eta) {
  Raw r;
  cd w = a - b;
  cd x = pi * eta * w;
  auto push = [&](Gen g, int which, cd k) { r.t[r.n++] = {g, which, k}; };
  if (ga == Gen::H && gb == Gen::H) {
    r.central = c * B_hh(w, eta);
  } else if (ga == Gen::H && gb != Gen::H) {
    cd s = sinh_checked(x);
    double sg = gb == Gen::E ? 1.0 : -1.0;
    push(gb, 1, -sg * 2.0 * I * pi * eta * std::cosh(x) / s);
    push(gb, 0, sg * 2.0 * I * pi * eta / s);
  } else if (ga == Gen::E && gb == Gen::F) {
    cd s = sinh_checked(x);
    push(Gen::H, 0, I * pi * eta / s);
    push(Gen::H, 1, -I * pi * eta / s);
    r.central = c * B_ef(w, eta);
  } else if ((ga == Gen::E && gb == Gen::H) || (ga == Gen::F && gb == Gen::H) || (ga == Gen::F && gb == Gen::E)) {
    Raw s = bracket_canonical(gb, b, ga, a, c, eta);
    for (int i = 0; i < s.n; ++i) push(s.t[i].g, 1 - s.t[i].which, -s.t[i].coeff);
    r.central = -s.central;
  }
  return r;
}

}  // namespace

const char* name(Gen g) {
  switch (g) {
    case Gen::E: return "e";
    case Gen::F: return "f";
    case Gen::H: return "h";
  }
  return "?";
}

bool in_strip(Branch b, cd u, const TrigParams& p) {
  double y = u.imag(), w = 1.0 / p.eta;
  if (b == Branch::plus) return y > -w + strip_margin && y < -strip_margin;
  return y > strip_margin && y < w - strip_margin;
}

void require_strip(const GeneratorTerm& t, const TrigParams& p) {
  if (!(p.eta > 0) || !std::isfinite(p.eta)) throw domain_error("trig: eta must be finite and positive");
  if (!in_strip(t.b, t.point, p)) throw domain_error("trig: point outside its strip");
}

Canonical canonical(const GeneratorTerm& t, const TrigParams& p) {
  if (t.b == Branch::plus) return {t.g, t.point, 1.0};
  return {t.g, t.point - I / p.eta, gen_sign(t.g, t.b)};
}

void add_term(CurrentElement& x, const GeneratorTerm& t, const TrigParams& p) {
  if (t.coeff == 0.0) return;
  Canonical ct = canonical(t, p);
  for (auto it = x.terms.begin(); it != x.terms.end(); ++it) {
    if (it->g != t.g) continue;
    Canonical ce = canonical(*it, p);
    if (!same_point(ce.point, ct.point)) continue;
    it->coeff += t.coeff * ct.sign * ce.sign;
    if (it->coeff == 0.0) x.terms.erase(it);
    return;
  }
  x.terms.push_back(t);
}

CurrentElement element(const GeneratorTerm& t, const TrigParams& p) {
  require_strip(t, p);
  CurrentElement x;
  add_term(x, t, p);
  return x;
}

CurrentElement add(const CurrentElement& x, const CurrentElement& y, const TrigParams& p, cd scale) {
  CurrentElement r = x;
  for (auto t : y.terms) {
    t.coeff *= scale;
    add_term(r, t, p);
  }
  r.central += scale * y.central;
  return r;
}

double max_coeff(const CurrentElement& x) {
  double m = std::abs(x.central);
  for (auto& t : x.terms) m = std::max(m, std::abs(t.coeff));
  return m;
}

cd kernel(Gen g, Branch b, cd w, const TrigParams& p) { return kernel_eta(g, b, w, p.eta); }

CurrentElement bracket(const CurrentElement& x, const CurrentElement& y, double c, const TrigParams& p) {
  CurrentElement r;
  for (auto& tx : x.terms) {
    require_strip(tx, p);
    Canonical cx = canonical(tx, p);
    for (auto& ty : y.terms) {
      require_strip(ty, p);
      Canonical cy = canonical(ty, p);
      bool trivial = tx.g == ty.g && tx.g != Gen::H;
      if (trivial) continue;
      if (same_point(cx.point, cy.point)) throw domain_error("trig bracket: coincident points");
      Raw raw = bracket_canonical(cx.g, cx.point, cy.g, cy.point, c, p.eta);
      cd k = tx.coeff * ty.coeff * cx.sign * cy.sign;
      for (int i = 0; i < raw.n; ++i) {
        const GeneratorTerm& src = raw.t[i].which == 0 ? tx : ty;
        GeneratorTerm out{raw.t[i].g, src.b, src.point, k * raw.t[i].coeff * gen_sign(raw.t[i].g, src.b)};
        add_term(r, out, p);
      }
      r.central += k * raw.central;
    }
  }
  return r;
}

cd pair(const CurrentElement& x, const CurrentElement& y, const TrigParams& p) {
  cd acc = 0.0;
  const double eta = p.eta;
  for (auto& tx : x.terms) {
    Canonical cx = canonical(tx, p);
    for (auto& ty : y.terms) {
      Canonical cy = canonical(ty, p);
      cd k = tx.coeff * ty.coeff * cx.sign * cy.sign;
      cd xw = pi * eta * (cx.point - cy.point);
      bool ef = (cx.g == Gen::E && cy.g == Gen::F) || (cx.g == Gen::F && cy.g == Gen::E);
      if (ef) acc += k * eta * x_over_sinh(xw);
      else if (cx.g == Gen::H && cy.g == Gen::H) acc += k * 2.0 * eta * x_coth(xw);
    }
  }
  return acc;
}

std::vector<WedgeTerm> cobracket0(const GeneratorTerm& t) {
  auto at = [&](Gen g) { return GeneratorTerm{g, t.b, t.point, 1.0}; };
  switch (t.g) {
    case Gen::E: return {{at(Gen::H), at(Gen::E), t.coeff}};
    case Gen::F: return {{at(Gen::F), at(Gen::H), t.coeff}};
    case Gen::H: return {{at(Gen::E), at(Gen::F), 2.0 * t.coeff}};
  }
  return {};
}

cd cocycle_B(const GeneratorTerm& x, const GeneratorTerm& y, const TrigParams& p) {
  Canonical cx = canonical(x, p), cy = canonical(y, p);
  cd k = x.coeff * y.coeff * cx.sign * cy.sign;
  cd w = cx.point - cy.point;
  if (cx.g == Gen::E && cy.g == Gen::F) return k * B_ef(w, p.eta);
  if (cx.g == Gen::F && cy.g == Gen::E) return -k * B_ef(-w, p.eta);
  if (cx.g == Gen::H && cy.g == Gen::H) return k * B_hh(w, p.eta);
  throw domain_error("cocycle_B: needs an E-F or H-H pair");
}

QuadratureResult cocycle_B_numeric(const GeneratorTerm& x, const GeneratorTerm& y, const TrigParams& p,
                                   double tol) {
  double kil;
  if ((x.g == Gen::E && y.g == Gen::F) || (x.g == Gen::F && y.g == Gen::E)) kil = 1.0;
  else if (x.g == Gen::H && y.g == Gen::H) kil = 2.0;
  else throw domain_error("cocycle_B_numeric: needs an E-F or H-H pair");
  require_strip(x, p);
  require_strip(y, p);
  const double eta = p.eta;
  const double h = 5e-3 * eta;
  auto K = [&](const GeneratorTerm& t, cd z, double e) { return kernel_eta(t.g, t.b, z - t.point, e); };
  // central difference in eta with one Richardson step
  auto dK = [&](const GeneratorTerm& t, cd z) {
    auto d = [&](double s) { return (K(t, z, eta + s) - K(t, z, eta - s)) / (2.0 * s); };
    return (4.0 * d(0.5 * h) - d(h)) / 3.0;
  };
  auto g = [&](cd z) { return dK(y, z) * K(x, z, eta) - K(y, z, eta) * dK(x, z); };
  ContourSpec s;
  s.tol = tol;
  // the integrand decays like exp(-2 pi eta |x|) once the constant tails cancel
  s.cutoff = 8.0 / eta + std::max(std::abs(x.point.real()), std::abs(y.point.real()));
  s.offset = -1.0 / eta;
  auto bot = integrate_line(g, s);
  s.offset = 0.0;
  auto top = integrate_line(g, s);
  QuadratureResult r;
  r.value = x.coeff * y.coeff * kil * eta * eta / (4.0 * pi) * (bot.value - top.value);
  r.err_estimate = eta * eta / (4.0 * pi) * kil * std::abs(x.coeff * y.coeff) * (bot.err_estimate + top.err_estimate);
  r.evaluations = bot.evaluations + top.evaluations;
  return r;
}

double jacobi_residual(const CurrentElement& x, const CurrentElement& y, const CurrentElement& z, double c,
                       const TrigParams& p) {
  std::vector<cd> pts;
  for (auto* e : {&x, &y, &z})
    for (auto& t : e->terms) {
      cd q = canonical(t, p).point;
      for (cd o : pts)
        if (same_point(o, q)) throw domain_error("jacobi_residual: duplicated point");
      pts.push_back(q);
    }
  auto strip = [](CurrentElement e) {
    e.central = 0.0;
    return e;
  };
  CurrentElement a = bracket(strip(bracket(x, y, c, p)), z, c, p);
  CurrentElement b = bracket(strip(bracket(y, z, c, p)), x, c, p);
  CurrentElement d = bracket(strip(bracket(z, x, c, p)), y, c, p);
  return max_coeff(add(add(a, b, p), d, p));
}

CurrentElement gauge_map(const CurrentElement& x, double eta, double eta_new) {
  if (!(eta > 0 && eta_new > 0)) throw domain_error("gauge_map: parameters must be positive");
  TrigParams pn{eta_new};
  double r = eta / eta_new;
  CurrentElement out;
  for (auto t : x.terms) {
    t.point *= r;
    t.coeff *= r;
    if (!in_strip(t.b, t.point, pn)) throw domain_error("gauge_map: point leaves the new strip");
    add_term(out, t, pn);
  }
  out.central = x.central;
  return out;
}

double sokhotsky_check(Gen g, double u, const TestFunction& s, const TrigParams& p) {
  auto f = [&](cd z) { return kernel(g, Branch::plus, z - u, p) * s(z); };
  ContourSpec spec;
  spec.tol = 1e-12;
  spec.offset = 0.5 / p.eta;
  cd above = integrate_line(f, spec).value;
  spec.offset = -0.5 / p.eta;
  cd below = integrate_line(f, spec).value;
  return std::abs(above - below - 2.0 * pi * s(cd(u, 0.0)));
}

cd mode_weight(Gen g, double lambda, const TrigParams& p) {
  double x = lambda / p.eta;
  if (g == Gen::H) return -1.0 / std::expm1(x);
  if (x > 0) {
    double e = std::exp(-x);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(x));
}

double fourier_kernel_check(Gen g, Branch b, cd u, double z, const TrigParams& p) {
  GeneratorTerm t{g, b, u, 1.0};
  require_strip(t, p);
  double sgn = b == Branch::plus ? 1.0 : -1.0;
  auto f = [&](cd l) { return sgn * std::exp(I * l * (u - z)) * mode_weight(g, sgn * l.real(), p); };
  ContourSpec spec;
  spec.tol = 1e-12;
  cd num = g == Gen::H ? integrate_pv(f, spec).value : integrate_line(f, spec).value;
  return std::abs(num - kernel(g, b, z - u, p));
}

ModeBracket mode_bracket(ModeSymbol a, ModeSymbol b, double c) {
  ModeBracket r;
  auto mode = [&](Gen g, double k) {
    r.has_mode = true;
    r.g = g;
    r.lambda = a.lambda + b.lambda;
    r.coeff = k;
  };
  if (a.g == Gen::H && b.g == Gen::E) mode(Gen::E, 2.0);
  else if (a.g == Gen::E && b.g == Gen::H) mode(Gen::E, -2.0);
  else if (a.g == Gen::H && b.g == Gen::F) mode(Gen::F, -2.0);
  else if (a.g == Gen::F && b.g == Gen::H) mode(Gen::F, 2.0);
  else if (a.g == Gen::E && b.g == Gen::F) {
    mode(Gen::H, 1.0);
    r.central_density = c * a.lambda;
  } else if (a.g == Gen::F && b.g == Gen::E) {
    mode(Gen::H, -1.0);
    r.central_density = -c * b.lambda;
  } else if (a.g == Gen::H && b.g == Gen::H) {
    r.central_density = 2.0 * c * a.lambda;
  }
  return r;
}

double mode_smeared_check(Gen a, Gen b, cd u1, cd u2, double nu, double c, const TrigParams& p) {
  GeneratorTerm tx{a, Branch::plus, u1, 1.0}, ty{b, Branch::plus, u2, 1.0};
  CurrentElement want = bracket(element(tx, p), element(ty, p), c, p);
  ContourSpec spec;
  spec.tol = 1e-12;
  double res = 0.0;

  ModeBracket mb = mode_bracket({a, 0.0}, {b, nu}, 1.0);
  if (mb.has_mode) {
    auto f = [&](cd l) {
      double lam = l.real();
      return mode_weight(a, lam, p) * mode_weight(b, nu - lam, p) * mb.coeff * std::exp(I * (lam * u1 + (nu - lam) * u2));
    };
    bool pole = a == Gen::H || b == Gen::H;
    cd num = 0.0;
    if (pole && b == Gen::H) {
      // move the pole of the second weight to the origin
      auto g = [&](cd l) { return f(cd(nu, 0.0) - l); };
      num = integrate_pv(g, spec).value;
    } else {
      num = pole ? integrate_pv(f, spec).value : integrate_line(f, spec).value;
    }
    cd expect = 0.0;
    for (auto& t : want.terms) expect += t.coeff * mode_weight(t.g, nu, p) * std::exp(I * nu * t.point);
    res = std::max(res, std::abs(num - expect));
  }
  if (mode_bracket({a, 1.0}, {b, -1.0}, 1.0).central_density != 0.0) {
    auto f = [&](cd l) {
      double lam = l.real();
      double dens = mode_bracket({a, lam}, {b, -lam}, c).central_density;
      return mode_weight(a, lam, p) * mode_weight(b, -lam, p) * dens * std::exp(I * lam * (u1 - u2));
    };
    cd num = a == Gen::H ? integrate_pv(f, spec).value : integrate_line(f, spec).value;
    res = std::max(res, std::abs(num - want.central));
  }
  return res;
}

namespace {

double half_tanh(double x) { return 0.5 * std::tanh(x); }
double half_coth(double x) { return 0.5 / std::tanh(x); }

// r = int w1 (f_{-m} (x) e_m + e_{-m} (x) f_m) + 1/2 pv int w3 h_{-m} (x) h_m + (c (x) d + d (x) c)/2
struct RComponent {
  Gen A, B;
  double scale;
  Gen weight;
};
constexpr RComponent r_components[] = {
    {Gen::F, Gen::E, 1.0, Gen::E}, {Gen::E, Gen::F, 1.0, Gen::E}, {Gen::H, Gen::H, 0.5, Gen::H}};

}  // namespace

double r_contraction(Gen x, double lambda, Gen X, double alpha, Gen Y, double beta, const TrigParams& p) {
  if (std::abs(alpha + beta - lambda) > 1e-12 * (1.0 + std::abs(lambda))) return 0.0;
  double acc = 0.0;
  for (auto& rc : r_components) {
    // [x, A_{-m}] (x) B_m with m = beta
    if (rc.B == Y) {
      ModeBracket mb = mode_bracket({x, lambda}, {rc.A, -beta}, 0.0);
      if (mb.has_mode && mb.g == X) acc += mb.coeff * rc.scale * mode_weight(rc.weight, beta, p).real();
    }
    // A_{-m} (x) [x, B_m] with m = -alpha
    if (rc.A == X) {
      ModeBracket mb = mode_bracket({x, lambda}, {rc.B, -alpha}, 0.0);
      if (mb.has_mode && mb.g == Y) acc += mb.coeff * rc.scale * mode_weight(rc.weight, -alpha, p).real();
    }
  }
  return acc;
}

double r_contraction_central(Gen x, double lambda, const TrigParams& p) {
  double acc = 0.0;
  for (auto& rc : r_components) {
    if (rc.A != x) continue;
    // A_{-m} (x) [x_lambda, B_m] at m = -lambda carries A_lambda (x) c
    double dens = mode_bracket({x, lambda}, {rc.B, -lambda}, 1.0).central_density;
    acc += dens * rc.scale * mode_weight(rc.weight, -lambda, p).real();
  }
  // (c (x) [x, d] + [x, d] (x) c)/2 with [x_lambda, d] = -lambda x_lambda
  acc += -0.5 * lambda;
  return acc;
}

ModeCobracket mode_cobracket_kernel(Gen g, double lambda, double tau, const TrigParams& p) {
  double e2 = 2.0 * p.eta;
  switch (g) {
    case Gen::E:
    case Gen::F:
      return {-(half_coth(tau / e2) + half_tanh((lambda - tau) / e2)), 0.5 * lambda * std::tanh(lambda / e2)};
    case Gen::H:
      return {-(std::tanh(tau / e2) + std::tanh((lambda - tau) / e2)),
              lambda == 0.0 ? p.eta : 0.5 * lambda / std::tanh(lambda / e2)};
  }
  return {0, 0};
}

ModeCobracket cobracket_from_r(Gen g, double lambda, double tau, const TrigParams& p) {
  double k = 0;
  switch (g) {
    case Gen::E: k = r_contraction(g, lambda, Gen::H, tau, Gen::E, lambda - tau, p); break;
    case Gen::F: k = r_contraction(g, lambda, Gen::F, lambda - tau, Gen::H, tau, p); break;
    case Gen::H: k = r_contraction(g, lambda, Gen::E, tau, Gen::F, lambda - tau, p); break;
  }
  return {k, r_contraction_central(g, lambda, p)};
}

}  // namespace ca::trig
