#pragma once
// Adaptive Gauss-Kronrod quadrature on lines, half-lines, principal values
// and the log keyhole wrapped around the positive real axis.

#include <functional>

#include "ca/specfun.hpp"

namespace ca {

enum class ContourKind { line, principal_value, keyhole_log };

struct ContourSpec {
  ContourKind kind = ContourKind::line;
  double offset = 0.0;    // Im z of the line
  double epsilon = 1e-4;  // keyhole half-gap
  double r0 = 1e-3;       // keyhole origin circle
  double cutoff = 0.0;    // <= 0: chosen from the integrand's decay
  double tol = 1e-10;
  double angle = 0.0;     // keyhole ray direction, |angle| < pi/2
  bool check_r0 = false;  // rerun with r0/2, eps/2 and flag disagreement
};

struct QuadratureResult {
  cd value{0.0, 0.0};
  double err_estimate = 0.0;
  long evaluations = 0;
  bool r0_sensitive = false;
};

using RealFn = std::function<cd(double)>;
using ComplexFn = std::function<cd(cd)>;

// e^{-alpha (z - z0)^2} e^{i beta z}
struct TestFunction {
  double alpha = 1.0;
  double beta = 0.0;
  cd z0{0.0, 0.0};
  cd operator()(cd z) const;
  cd derivative(cd z) const;
};

QuadratureResult integrate_interval(const RealFn& f, double a, double b, double tol = 1e-10);
// int_0^inf f; cutoff <= 0 picks one from |f|
QuadratureResult integrate_halfline(const RealFn& f, double tol = 1e-10, double cutoff = 0.0);
// int over R of f(x + i offset)
QuadratureResult integrate_line(const ComplexFn& f, const ContourSpec& spec);
// symmetric-excision principal value across a simple pole at 0 (real line)
QuadratureResult integrate_pv(const ComplexFn& f, const ContourSpec& spec);
// int over the keyhole of ln(-l)/(2 pi i) g(l) dl, rotated by spec.angle
QuadratureResult integrate_keyhole_log(const ComplexFn& g, const ContourSpec& spec);

}  // namespace ca
