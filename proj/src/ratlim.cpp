#include "ca/ratlim.hpp"

#include <algorithm>
#include <cmath>

namespace ca::rat {

namespace {

double branch_sign(Branch b) { return b == Branch::plus ? 1.0 : -1.0; }

// invariant form on sl2 in the basis e, f, h: <e,f> = 1, <h,h> = 2
double kill(Gen a, Gen b) {
  if ((a == Gen::E && b == Gen::F) || (a == Gen::F && b == Gen::E)) return 1.0;
  if (a == Gen::H && b == Gen::H) return 2.0;
  return 0.0;
}

struct Out {
  Gen g;
  int which;
  cd coeff;
};

struct Raw {
  Out t[2];
  int n = 0;
  double central = 0.0;  // coefficient of c / w^2
};

// structure constants of [x(u1), y(u2)] over k = i/(u1 - u2)
Raw bracket_raw(Gen a, Branch ba, Gen b, Branch bb) {
  Raw r;
  auto push = [&](Gen g, int which, cd k) { r.t[r.n++] = {g, which, k}; };
  // mixed-branch central terms: -1 for (plus, minus), +1 for (minus, plus)
  double mixed = ba == bb ? 0.0 : (ba == Branch::plus ? -1.0 : 1.0);
  if (a == Gen::H && b == Gen::H) {
    r.central = 2.0 * mixed;
  } else if (a == Gen::H) {
    double s = b == Gen::E ? 2.0 : -2.0;
    push(b, 0, s);
    push(b, 1, -s);
  } else if (a == Gen::E && b == Gen::F) {
    push(Gen::H, 0, 1.0);
    push(Gen::H, 1, -1.0);
    r.central = mixed;
  } else if (a != b) {
    Raw s = bracket_raw(b, bb, a, ba);
    for (int i = 0; i < s.n; ++i) push(s.t[i].g, 1 - s.t[i].which, s.t[i].coeff);
    // k(u2 - u1) = -k(u1 - u2) and the bracket flips sign: coefficients unchanged
    r.central = -s.central;
  }
  return r;
}

}  // namespace

void require_half_plane(const RatGeneratorTerm& t) {
  double y = t.point.imag();
  if (t.b == Branch::plus ? !(y < 0) : !(y > 0)) throw domain_error("rational: point in the wrong half-plane");
}

void add_term(RatElement& x, const RatGeneratorTerm& t) {
  if (t.coeff == 0.0) return;
  for (auto it = x.terms.begin(); it != x.terms.end(); ++it) {
    if (it->g != t.g || it->b != t.b || it->point != t.point) continue;
    it->coeff += t.coeff;
    if (it->coeff == 0.0) x.terms.erase(it);
    return;
  }
  x.terms.push_back(t);
}

RatElement element(const RatGeneratorTerm& t) {
  require_half_plane(t);
  RatElement x;
  add_term(x, t);
  return x;
}

RatElement add(const RatElement& x, const RatElement& y, cd scale) {
  RatElement r = x;
  for (auto t : y.terms) {
    t.coeff *= scale;
    add_term(r, t);
  }
  r.central += scale * y.central;
  return r;
}

double max_coeff(const RatElement& x) {
  double m = std::abs(x.central);
  for (auto& t : x.terms) m = std::max(m, std::abs(t.coeff));
  return m;
}

RatElement rat_bracket(const RatElement& x, const RatElement& y, double c) {
  RatElement r;
  for (auto& tx : x.terms) {
    require_half_plane(tx);
    for (auto& ty : y.terms) {
      require_half_plane(ty);
      if (tx.g == ty.g && tx.g != Gen::H) continue;
      cd w = tx.point - ty.point;
      if (std::abs(w) <= 1e-13 * (1.0 + std::abs(tx.point))) throw domain_error("rat_bracket: coincident points");
      Raw raw = bracket_raw(tx.g, tx.b, ty.g, ty.b);
      cd k = tx.coeff * ty.coeff;
      for (int i = 0; i < raw.n; ++i) {
        const RatGeneratorTerm& src = raw.t[i].which == 0 ? tx : ty;
        add_term(r, {raw.t[i].g, src.b, src.point, k * raw.t[i].coeff * I / w});
      }
      r.central += k * c * raw.central / (w * w);
    }
  }
  return r;
}

cd rat_pair(const RatElement& x, const RatElement& y) {
  cd acc = 0.0;
  for (auto& tx : x.terms)
    for (auto& ty : y.terms) {
      if (tx.b == ty.b) continue;
      double k = kill(tx.g, ty.g);
      if (k == 0.0) continue;
      const RatGeneratorTerm& p = tx.b == Branch::plus ? tx : ty;
      const RatGeneratorTerm& m = tx.b == Branch::plus ? ty : tx;
      acc += tx.coeff * ty.coeff * k * I / (p.point - m.point);
    }
  return acc;
}

double rat_jacobi_residual(const RatElement& x, const RatElement& y, const RatElement& z, double c) {
  auto strip = [](RatElement e) {
    e.central = 0.0;
    return e;
  };
  RatElement a = rat_bracket(strip(rat_bracket(x, y, c)), z, c);
  RatElement b = rat_bracket(strip(rat_bracket(y, z, c)), x, c);
  RatElement d = rat_bracket(strip(rat_bracket(z, x, c)), y, c);
  return max_coeff(add(add(a, b), d));
}

double theta(double x) { return x > 0 ? 1.0 : (x < 0 ? 0.0 : 0.5); }

double RatModeCobracket::kernel(double tau) const { return weight * (theta(tau - lambda) - theta(tau)); }

double RatModeCobracket::density(double tau) const {
  double lo = std::min(0.0, lambda), hi = std::max(0.0, lambda);
  if (!(tau > lo && tau < hi)) return 0.0;
  return (lambda > 0 ? 1.0 : -1.0) * kernel(tau);
}

RatModeCobracket rat_mode_cobracket(Gen g, double lambda) {
  double sgn = lambda > 0 ? 1.0 : (lambda < 0 ? -1.0 : 0.0);
  return {g, lambda, g == Gen::H ? 2.0 : 1.0, 0.5 * lambda * sgn};
}

Duality double_duality(const SmearedMode& x, const SmearedMode& y, const SmearedMode& z, double tol) {
  auto val = [](const SmearedMode& s, double l) { return (l >= s.lo && l <= s.hi) ? s.phi(l) : 0.0; };
  // <X_sigma, smeared(Y, psi)> = kill(X, Y) psi(-sigma)
  auto pairing = [&](Gen X, double sigma, const SmearedMode& s) { return kill(X, s.g) * val(s, -sigma); };

  // wedge A_{arg a} ^ B_{arg b}: arguments are tau or lambda - tau
  struct Wedge {
    Gen A;
    bool a_tau;
    Gen B;
    bool b_tau;
  };
  Wedge wd;
  switch (x.g) {
    case Gen::E: wd = {Gen::H, true, Gen::E, false}; break;
    case Gen::F: wd = {Gen::F, false, Gen::H, true}; break;
    default: wd = {Gen::E, true, Gen::F, false}; break;
  }

  RealFn outer = [&](double lam) -> cd {
    double ph = val(x, lam);
    if (ph == 0.0 || lam == 0.0) return 0.0;
    RatModeCobracket cb = rat_mode_cobracket(x.g, lam);
    RealFn inner = [&](double tau) -> cd {
      double sa = wd.a_tau ? tau : lam - tau, sb = wd.b_tau ? tau : lam - tau;
      double t = pairing(wd.A, sa, y) * pairing(wd.B, sb, z) - pairing(wd.B, sb, y) * pairing(wd.A, sa, z);
      return cb.kernel(tau) * t;
    };
    return ph * integrate_interval(inner, 0.0, lam, tol).value;
  };
  cd lhs = integrate_interval(outer, x.lo, x.hi, tol).value;

  RealFn rhs_outer = [&](double a) -> cd {
    RealFn in = [&](double b) -> cd {
      trig::ModeBracket mb = trig::mode_bracket({y.g, a}, {z.g, b}, 0.0);
      if (!mb.has_mode) return 0.0;
      return y.phi(a) * z.phi(b) * mb.coeff * pairing(mb.g, a + b, x);
    };
    return integrate_interval(in, z.lo, z.hi, tol).value;
  };
  cd rhs = integrate_interval(rhs_outer, y.lo, y.hi, tol).value;
  return {lhs, rhs, std::abs(lhs - rhs)};
}

double laplace_check(Branch b, cd u, double z) {
  double s = branch_sign(b);
  double decay = -s * u.imag();
  if (!(decay > 0)) throw domain_error("laplace_check: point in the wrong half-plane");
  double cut = std::log(1e16) / decay;
  RealFn f = [&](double l) -> cd { return s * std::exp(-s * I * l * (u - z)); };
  cd num = integrate_interval(f, 0.0, cut, 1e-13).value;
  return std::abs(num - I / (z - u));
}

EtaLimit eta_to_zero_check(Gen g, cd w, const std::vector<double>& etas) {
  if (etas.empty()) throw domain_error("eta_to_zero_check: empty eta list");
  double emax = *std::max_element(etas.begin(), etas.end());
  if (!(emax > 0) || std::abs(w) == 0.0 || !(std::abs(w.imag()) < 0.5 / emax))
    throw domain_error("eta_to_zero_check: w outside the common validity region");
  EtaLimit r;
  for (double eta : etas) {
    if (!(eta > 0)) throw domain_error("eta_to_zero_check: eta must be positive");
    trig::TrigParams p{eta};
    r.residuals.push_back(std::abs(trig::kernel(g, Branch::plus, w, p) - I / w));
  }
  for (size_t i = 0; i + 1 < r.residuals.size(); ++i) r.ratios.push_back(r.residuals[i] / r.residuals[i + 1]);
  if (w.imag() != 0.0) {
    // generating function at u paired with the delta at z: kernel i/(z - u) with w = z - u
    Branch b = w.imag() > 0 ? Branch::plus : Branch::minus;
    r.laplace_residual = laplace_check(b, -w, 0.0);
  }
  return r;
}

}  // namespace ca::rat
