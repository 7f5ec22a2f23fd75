#include "ca/quad.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace ca {

namespace {

constexpr double xgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                           0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                           0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                           0.207784955007898467600689403773245, 0.0};
constexpr double wgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                           0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                           0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                           0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr int max_depth = 48;
constexpr long max_evaluations = 4000000;

struct Panel {
  cd value;
  double absval;  // Kronrod estimate of int |f|, the round-off scale
};

Panel kronrod15(const RealFn& f, double a, double b, long& evals) {
  double c = 0.5 * (a + b), h = 0.5 * (b - a);
  cd fc = f(c);
  cd s = wgk[7] * fc;
  double sa = wgk[7] * std::abs(fc);
  for (int j = 0; j < 7; ++j) {
    cd f1 = f(c - h * xgk[j]), f2 = f(c + h * xgk[j]);
    s += wgk[j] * (f1 + f2);
    sa += wgk[j] * (std::abs(f1) + std::abs(f2));
  }
  evals += 15;
  return {s * h, sa * std::abs(h)};
}

struct Adaptive {
  const RealFn& f;
  double tol_density;  // absolute tolerance per unit length
  QuadratureResult res;

  void run(double a, double b, cd whole, int depth) {
    double m = 0.5 * (a + b);
    Panel pl = kronrod15(f, a, m, res.evaluations);
    Panel pr = kronrod15(f, m, b, res.evaluations);
    cd l = pl.value, r = pr.value;
    double diff = std::abs(l + r - whole);
    if (!std::isfinite(diff)) throw convergence_error("quadrature: non-finite integrand");
    if (res.evaluations > max_evaluations) throw convergence_error("quadrature: evaluation budget exhausted");
    if (diff <= tol_density * (b - a) || diff <= 1e-14 * (pl.absval + pr.absval) ||
        (b - a) < 1e-14 * (1.0 + std::abs(a))) {
      res.value += l + r;
      res.err_estimate += diff;
      return;
    }
    if (depth >= max_depth) throw convergence_error("quadrature: no convergence after max refinements");
    run(a, m, l, depth + 1);
    run(m, b, r, depth + 1);
  }
};

// adaptive over a list of breakpoints; tolerance relative to max(1, |coarse value|)
QuadratureResult adapt_panels(const RealFn& f, const std::vector<double>& pts, double tol) {
  QuadratureResult coarse;
  std::vector<cd> first(pts.size() - 1);
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    first[i] = kronrod15(f, pts[i], pts[i + 1], coarse.evaluations).value;
    coarse.value += first[i];
  }
  double total = pts.back() - pts.front();
  double scale = std::max(1.0, std::abs(coarse.value));
  Adaptive ad{f, tol * scale / total, {}};
  ad.res.evaluations = coarse.evaluations;
  for (size_t i = 0; i + 1 < pts.size(); ++i) ad.run(pts[i], pts[i + 1], first[i], 0);
  return ad.res;
}

std::vector<double> uniform_panels(double a, double b, double width, int min_panels) {
  int n = std::max(min_panels, int(std::ceil((b - a) / width)));
  n = std::min(n, 8192);
  std::vector<double> p(n + 1);
  for (int i = 0; i <= n; ++i) p[i] = a + (b - a) * double(i) / n;
  return p;
}

// first x = 2^j where |f| stays below 1e-16 of the largest sample; no decay by 4096 is an error
double decay_cutoff(const std::function<double(double)>& absf) {
  double peak = 0.0;
  for (double x = 0.125; x <= 4.0; x += 0.125) peak = std::max(peak, absf(x));
  for (int j = 2; j <= 12; ++j) {
    double x = std::ldexp(1.0, j);
    double v1 = absf(x), v2 = absf(1.37 * x);
    peak = std::max(peak, v1);
    if (!std::isfinite(v1) || !std::isfinite(v2)) throw convergence_error("quadrature: non-decaying integrand");
    if (v1 <= 1e-16 * peak && v2 <= 1e-16 * peak) return 1.37 * x;
    if (peak == 0.0 && j > 6) return x;
  }
  throw convergence_error("quadrature: non-decaying integrand");
}

}  // namespace

cd TestFunction::operator()(cd z) const {
  cd d = z - z0;
  return std::exp(-alpha * d * d + I * beta * z);
}

cd TestFunction::derivative(cd z) const { return (*this)(z) * (-2.0 * alpha * (z - z0) + I * beta); }

QuadratureResult integrate_interval(const RealFn& f, double a, double b, double tol) {
  if (a == b) return {};
  if (b < a) {
    auto r = integrate_interval(f, b, a, tol);
    r.value = -r.value;
    return r;
  }
  return adapt_panels(f, uniform_panels(a, b, (b - a) / 8.0, 8), tol);
}

QuadratureResult integrate_halfline(const RealFn& f, double tol, double cutoff) {
  double L = cutoff > 0 ? cutoff : decay_cutoff([&](double x) { return std::abs(f(x)); });
  return adapt_panels(f, uniform_panels(0.0, L, 0.5, 16), tol);
}

QuadratureResult integrate_line(const ComplexFn& f, const ContourSpec& spec) {
  RealFn g = [&](double x) { return f(cd(x, spec.offset)); };
  double L = spec.cutoff;
  if (L <= 0) {
    double Lp = decay_cutoff([&](double x) { return std::abs(g(x)); });
    double Lm = decay_cutoff([&](double x) { return std::abs(g(-x)); });
    L = std::max(Lp, Lm);
  }
  return adapt_panels(g, uniform_panels(-L, L, 0.5, 32), spec.tol);
}

QuadratureResult integrate_pv(const ComplexFn& f, const ContourSpec& spec) {
  RealFn g = [&](double x) { return f(cd(x, 0.0)) + f(cd(-x, 0.0)); };
  // excision slices shrink for a simple pole and grow for a higher one
  long ev = 0;
  double eps = spec.epsilon;
  cd prev = 0.0;
  for (int k = 0; k < 4; ++k) {
    cd s = kronrod15(g, 0.5 * eps, eps, ev).value;
    if (k > 0 && std::abs(s) > 1.5 * std::abs(prev) && std::abs(s) > 1e-12)
      throw convergence_error("integrate_pv: pole of order > 1 at the origin");
    prev = s;
    eps *= 0.5;
  }
  double L = spec.cutoff > 0 ? spec.cutoff : decay_cutoff([&](double x) { return std::abs(g(x)); });
  auto r = adapt_panels(g, uniform_panels(0.0, L, 0.5, 16), spec.tol);
  r.evaluations += ev;
  return r;
}

namespace {

QuadratureResult keyhole_once(const ComplexFn& g, const ContourSpec& spec, double r0, double eps) {
  if (!(eps > 0 && eps < r0 && r0 < 1)) throw domain_error("keyhole: need 0 < epsilon < r0 < 1");
  if (std::abs(spec.angle) >= 0.5 * pi) throw domain_error("keyhole: ray angle must satisfy |angle| < pi/2");
  const cd d = std::exp(I * spec.angle);
  auto L = [&](cd lam) { return std::log(-lam / d) + I * spec.angle; };
  double x0 = std::sqrt(r0 * r0 - eps * eps);
  double th0 = std::asin(eps / r0);

  double cut = spec.cutoff;
  if (cut <= 0) cut = decay_cutoff([&](double x) { return std::abs(g(d * x)); });
  if (cut <= x0) cut = 2.0 * x0;

  RealFn lips = [&](double rho) {
    cd lu = d * cd(rho, eps), ll = d * cd(rho, -eps);
    return d * (L(ll) * g(ll) - L(lu) * g(lu));
  };
  std::vector<double> pts{x0};
  while (pts.back() * 2.0 < cut) pts.push_back(pts.back() * 2.0);
  if (pts.size() > 1 && cut - pts.back() < 0.5) pts.back() = cut;
  else pts.push_back(cut);
  // refine the long outer panels uniformly
  std::vector<double> fine{pts.front()};
  for (size_t i = 1; i < pts.size(); ++i) {
    int n = std::max(1, int(std::ceil((pts[i] - pts[i - 1]) / 0.5)));
    for (int j = 1; j <= n; ++j) fine.push_back(pts[i - 1] + (pts[i] - pts[i - 1]) * j / n);
  }
  auto lip = adapt_panels(lips, fine, spec.tol);

  RealFn arc = [&](double th) {
    cd lam = d * r0 * std::exp(I * th);
    return L(lam) * g(lam) * I * lam;
  };
  auto circ = integrate_interval(arc, th0, 2.0 * pi - th0, spec.tol);

  QuadratureResult r;
  r.value = (lip.value + circ.value) / (2.0 * pi * I);
  r.err_estimate = (lip.err_estimate + circ.err_estimate) / (2.0 * pi);
  r.evaluations = lip.evaluations + circ.evaluations;
  return r;
}

}  // namespace

QuadratureResult integrate_keyhole_log(const ComplexFn& g, const ContourSpec& spec) {
  auto r = keyhole_once(g, spec, spec.r0, spec.epsilon);
  if (spec.check_r0) {
    auto h = keyhole_once(g, spec, 0.5 * spec.r0, 0.5 * spec.epsilon);
    r.evaluations += h.evaluations;
    r.r0_sensitive = std::abs(h.value - r.value) > 10.0 * spec.tol * std::max(1.0, std::abs(r.value));
  }
  return r;
}

}  // namespace ca
