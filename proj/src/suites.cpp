#include "ca/suites.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <sstream>

#include "ca/ellip.hpp"
#include "ca/fock.hpp"
#include "ca/ratlim.hpp"
#include "ca/rmat_trig.hpp"

namespace ca::cli {

namespace {

using trig::Branch;
using trig::Gen;

const double inf = std::numeric_limits<double>::infinity();

std::uint64_t fnv(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string fmt(double x) {
  std::ostringstream o;
  o.precision(6);
  o << x;
  return o.str();
}

std::string fmt(cd z) { return "(" + fmt(z.real()) + "," + fmt(z.imag()) + ")"; }

struct Ctx {
  const SuiteConfig& cfg;
  VerificationReport& rep;

  int n(int fallback) const { return cfg.samples > 0 ? cfg.samples : fallback; }

  // independent substream per case
  std::mt19937_64 rng(const std::string& name) const {
    std::uint64_t h = fnv(name);
    std::seed_seq seq{std::uint32_t(cfg.seed), std::uint32_t(cfg.seed >> 32), std::uint32_t(h), std::uint32_t(h >> 32)};
    return std::mt19937_64(seq);
  }

  double tol(const std::string& name) const {
    if (auto it = cfg.tolerances.find(name); it != cfg.tolerances.end()) return it->second;
    return default_tolerances().at(name);
  }

  // fn returns the residual and may refine the inputs text; an exception fails the case
  void run(const std::string& name, std::string inputs, const std::function<double(std::mt19937_64&, std::string&)>& fn) {
    auto g = rng(name);
    double r;
    try {
      r = fn(g, inputs);
      if (std::isnan(r)) r = inf;
    } catch (const std::exception& e) {
      r = inf;
      inputs += "; error: " + std::string(e.what());
    }
    rep.cases.push_back(make_case(name, inputs, r, tol(name)));
  }
};

std::string cname(double c) { return fmt(c); }

// ---- trigonometric currents

cd strip_point(std::mt19937_64& g, Branch b, double eta) {
  std::uniform_real_distribution<double> re(-1.0, 1.0), im(0.1, 0.9);
  double y = im(g) / eta;
  return {re(g), b == Branch::plus ? -y : y};
}

trig::CurrentElement trig_element(std::mt19937_64& g, const trig::TrigParams& p) {
  std::uniform_int_distribution<int> ng(1, 2), gi(0, 2), bi(0, 1);
  std::uniform_real_distribution<double> c(-1.0, 1.0);
  trig::CurrentElement x;
  for (int i = 0, n = ng(g); i < n; ++i) {
    Branch b = bi(g) ? Branch::plus : Branch::minus;
    trig::add_term(x, {Gen(gi(g)), b, strip_point(g, b, p.eta), {c(g), c(g)}}, p);
  }
  return x;
}

void trig_jacobi(Ctx& x) {
  trig::TrigParams p{x.cfg.eta};
  int n = x.n(200);
  for (double c : {0.0, 1.0, 2.5}) {
    x.run("trig-jacobi/jacobi-c" + cname(c), std::to_string(n) + " seeded triples, eta=" + fmt(p.eta),
          [&](std::mt19937_64& g, std::string&) {
            double w = 0;
            for (int i = 0; i < n; ++i) {
              auto a = trig_element(g, p), b = trig_element(g, p), d = trig_element(g, p);
              w = std::max(w, trig::jacobi_residual(a, b, d, c, p));
            }
            return w;
          });
    x.run("trig-jacobi/antisymmetry-c" + cname(c), std::to_string(n) + " seeded pairs, eta=" + fmt(p.eta),
          [&](std::mt19937_64& g, std::string&) {
            double w = 0;
            for (int i = 0; i < n; ++i) {
              auto a = trig_element(g, p), b = trig_element(g, p);
              w = std::max(w, trig::max_coeff(trig::add(trig::bracket(a, b, c, p), trig::bracket(b, a, c, p), p)));
            }
            return w;
          });
  }
}

void trig_cocycle(Ctx& x) {
  trig::TrigParams p{x.cfg.eta};
  int n = x.n(50);
  x.run("trig-cocycle/closed-vs-boundary", std::to_string(n) + " seeded pairs (e,f), (f,e), (h,h)",
        [&](std::mt19937_64& g, std::string&) {
          std::uniform_int_distribution<int> bi(0, 1);
          double w = 0;
          for (int i = 0; i < n; ++i) {
            static const Gen pairs[3][2] = {{Gen::E, Gen::F}, {Gen::F, Gen::E}, {Gen::H, Gen::H}};
            Branch b1 = bi(g) ? Branch::plus : Branch::minus, b2 = bi(g) ? Branch::plus : Branch::minus;
            trig::GeneratorTerm s{pairs[i % 3][0], b1, strip_point(g, b1, p.eta), 1.0};
            trig::GeneratorTerm t{pairs[i % 3][1], b2, strip_point(g, b2, p.eta), 1.0};
            w = std::max(w, std::abs(trig::cocycle_B_numeric(s, t, p, 1e-9).value - trig::cocycle_B(s, t, p)));
          }
          return w;
        });
}

void sokhotsky(Ctx& x) {
  trig::TrigParams p{x.cfg.eta};
  int n = x.n(20);
  for (Gen gen : {Gen::E, Gen::F, Gen::H}) {
    x.run(std::string("sokhotsky/") + trig::name(gen), std::to_string(n) + " seeded (u, s) pairs",
          [&](std::mt19937_64& g, std::string&) {
            std::uniform_real_distribution<double> u(-1.0, 1.0), al(0.5, 2.0), be(-1.5, 1.5), z(-0.5, 0.5),
                zi(-0.1, 0.1);
            double w = 0;
            for (int i = 0; i < n; ++i) {
              double uu = u(g);
              TestFunction s{al(g), be(g), {z(g), zi(g)}};
              w = std::max(w, trig::sokhotsky_check(gen, uu, s, p));
            }
            return w;
          });
  }
}

void fourier_kernels(Ctx& x) {
  trig::TrigParams p{x.cfg.eta};
  for (Gen gen : {Gen::E, Gen::F, Gen::H})
    for (Branch b : {Branch::plus, Branch::minus}) {
      std::string name = std::string("fourier-kernels/") + trig::name(gen) + (b == Branch::plus ? "+" : "-");
      x.run(name, "5x5 grid: Im u at 10..90% of the strip, z in {-1,-0.5,0,0.5,1}", [&](std::mt19937_64&, std::string&) {
        double w = 0;
        for (int i = 0; i < 5; ++i)
          for (int j = 0; j < 5; ++j) {
            double y = (0.1 + 0.2 * i) / p.eta;
            cd u{0.15, b == Branch::plus ? -y : y};
            w = std::max(w, trig::fourier_kernel_check(gen, b, u, -1.0 + 0.5 * j, p));
          }
        return w;
      });
    }
}

void modes_cobracket(Ctx& x) {
  trig::TrigParams p{x.cfg.eta};
  int n = x.n(100);
  for (Gen gen : {Gen::E, Gen::F, Gen::H}) {
    x.run(std::string("modes-cobracket/") + trig::name(gen), std::to_string(n) + " seeded (lambda, tau) in [-3,3]^2",
          [&](std::mt19937_64& g, std::string&) {
            std::uniform_real_distribution<double> d(-3.0, 3.0);
            double w = 0;
            for (int i = 0; i < n; ++i) {
              double l = d(g), t = d(g);
              auto a = trig::mode_cobracket_kernel(gen, l, t, p), b = trig::cobracket_from_r(gen, l, t, p);
              w = std::max({w, std::abs(a.kernel - b.kernel), std::abs(a.c_coeff - b.c_coeff)});
            }
            return w;
          });
  }
}

void gauge(Ctx& x) {
  double eta = x.cfg.eta, eta2 = 1.7 * eta, eta3 = 0.6 * eta;
  trig::TrigParams p{eta}, q{eta2}, r{eta3};
  int n = x.n(50);
  std::string in = std::to_string(n) + " seeded pairs, eta=" + fmt(eta) + " -> " + fmt(eta2);
  x.run("gauge/homomorphism", in, [&](std::mt19937_64& g, std::string&) {
    double w = 0;
    for (int i = 0; i < n; ++i) {
      auto a = trig_element(g, p), b = trig_element(g, p);
      auto lhs = trig::gauge_map(trig::bracket(a, b, 0.0, p), eta, eta2);
      auto rhs = trig::bracket(trig::gauge_map(a, eta, eta2), trig::gauge_map(b, eta, eta2), 0.0, q);
      w = std::max(w, trig::max_coeff(trig::add(lhs, rhs, q, -1.0)));
    }
    return w;
  });
  x.run("gauge/pairing", in, [&](std::mt19937_64& g, std::string&) {
    double w = 0;
    for (int i = 0; i < n; ++i) {
      auto a = trig_element(g, p), b = trig_element(g, p);
      cd before = trig::pair(a, b, p), after = trig::pair(trig::gauge_map(a, eta, eta2), trig::gauge_map(b, eta, eta2), q);
      w = std::max(w, std::abs(after - before * eta / eta2));
    }
    return w;
  });
  x.run("gauge/composition", std::to_string(n) + " seeded elements, eta -> 1.7 eta -> 0.6 eta",
        [&](std::mt19937_64& g, std::string&) {
          double w = 0;
          for (int i = 0; i < n; ++i) {
            auto a = trig_element(g, p);
            auto two = trig::gauge_map(trig::gauge_map(a, eta, eta2), eta2, eta3);
            w = std::max(w, trig::max_coeff(trig::add(two, trig::gauge_map(a, eta, eta3), r, -1.0)));
          }
          return w;
        });
}

// ---- rational limit

void rational_limit(Ctx& x) {
  const std::vector<double> etas{0.2, 0.1, 0.05, 0.025};
  for (Gen gen : {Gen::E, Gen::F, Gen::H}) {
    x.run(std::string("rational-limit/rate-") + trig::name(gen), "w=-0.4i, eta in {0.2,0.1,0.05,0.025}; |order - 2|",
          [&](std::mt19937_64&, std::string& in) {
            auto r = rat::eta_to_zero_check(gen, {0.0, -0.4}, etas);
            double w = 0;
            for (double q : r.ratios) {
              w = std::max(w, std::abs(std::log2(q) - 2.0));
              in += "; ratio " + fmt(q);
            }
            return w;
          });
  }
  x.run("rational-limit/laplace", "Laplace picture against i/(z-u), both branches", [&](std::mt19937_64&, std::string&) {
    auto r = rat::eta_to_zero_check(Gen::E, {0.0, -0.4}, {0.1});
    return std::max({r.laplace_residual, rat::laplace_check(Branch::plus, {0.3, -0.7}, 0.2),
                     rat::laplace_check(Branch::minus, {-0.3, 0.5}, 0.1)});
  });
}

void rational_double(Ctx& x) {
  x.run("rational-double/duality", "6 generator triples x 2 sides, seeded smooth bumps", [&](std::mt19937_64& g, std::string&) {
    std::uniform_real_distribution<double> a(-0.3, 0.5), b(0.8, 1.4);
    auto mode = [&](Gen gen, bool positive) {
      double aa = a(g), bb = b(g);
      auto phi = [=](double l) { return l * l * (1.0 + aa * l) * std::exp(-bb * std::abs(l)); };
      return positive ? rat::SmearedMode{gen, phi, 0.0, 40.0 / bb} : rat::SmearedMode{gen, phi, -40.0 / bb, 0.0};
    };
    const Gen t[6][3] = {{Gen::E, Gen::H, Gen::F}, {Gen::E, Gen::F, Gen::H}, {Gen::F, Gen::H, Gen::E},
                         {Gen::F, Gen::E, Gen::H}, {Gen::H, Gen::E, Gen::F}, {Gen::H, Gen::F, Gen::E}};
    double w = 0;
    for (bool xplus : {true, false})
      for (auto& c : t) {
        auto m1 = mode(c[0], !xplus), m2 = mode(c[1], xplus), m3 = mode(c[2], xplus);
        w = std::max(w, rat::double_duality(m1, m2, m3).residual);
      }
    return w;
  });
}

// ---- R-matrices

void cybe_trig(Ctx& x) {
  double eta = x.cfg.eta;
  int n = x.n(100);
  x.run("cybe-trig/r0", std::to_string(n) + " seeded (u, v), |u|, |v|, |u-v| >= 0.1, eta=" + fmt(eta),
        [&](std::mt19937_64& g, std::string&) {
          std::uniform_real_distribution<double> d(-0.8, 0.8);
          double w = 0;
          for (int i = 0; i < n;) {
            cd u{d(g), d(g)}, v{d(g), d(g)};
            if (std::abs(u) < 0.1 || std::abs(v) < 0.1 || std::abs(u - v) < 0.1) continue;
            w = std::max(w, rmat::cybe_residual([&](cd z) { return rmat::r0(z, eta); }, u, v));
            ++i;
          }
          return w;
        });
}

void cybe_elliptic(Ctx& x) {
  auto m = modulus_from_k(x.cfg.k);
  int n = x.n(100);
  x.run("cybe-elliptic/r-ell", std::to_string(n) + " seeded (u, v), |u|, |v|, |u-v| >= 0.1, k=" + fmt(m.k),
        [&](std::mt19937_64& g, std::string&) {
          std::uniform_real_distribution<double> d(-0.9, 0.9);
          double w = 0;
          for (int i = 0; i < n;) {
            cd u{d(g), d(g)}, v{d(g), d(g)};
            if (std::abs(u) < 0.1 || std::abs(v) < 0.1 || std::abs(u - v) < 0.1) continue;
            w = std::max(w, rmat::cybe_residual([&](cd z) { return ell::r_ell(z, m); }, u, v));
            ++i;
          }
          return w;
        });
}

void rmatrix_expansion(Ctx& x) {
  const auto& h = x.cfg.hbar_grid;
  rmat::ExpansionResult e;
  std::string err;
  try {
    e = rmat::expansion_check(0.4, x.cfg.eta, h, 1.0, x.cfg.P);
  } catch (const std::exception& ex) {
    err = ex.what();
  }
  auto guard = [&](std::function<double(std::string&)> f) {
    return [&, f](std::mt19937_64&, std::string& in) {
      if (!err.empty()) throw std::runtime_error(err);
      return f(in);
    };
  };
  std::string in = "u=0.4, eta=" + fmt(x.cfg.eta) + ", P=" + std::to_string(x.cfg.P) + ", hbar grid of " +
                   std::to_string(h.size());
  x.run("rmatrix-expansion/a-rate", in + "; |measured order - 1|", guard([&](std::string& s) {
          double w = 0;
          for (size_t i = 0; i + 1 < e.a.size(); ++i) {
            double ord = std::log(e.a[i] / e.a[i + 1]) / std::log(h[i] / h[i + 1]);
            w = std::max(w, std::abs(ord - 1.0));
            s += "; order " + fmt(ord);
          }
          return w;
        }));
  x.run("rmatrix-expansion/raw-monotone", in + "; count of non-monotone raw residual sequences (a, b, c)",
        guard([&](std::string& s) {
          s += "; raw b " + fmt(e.b.back()) + ", raw c " + fmt(e.c.back());
          return double(!e.a_monotone + !e.b_monotone + !e.c_monotone);
        }));
  x.run("rmatrix-expansion/b-extrapolated", in + "; Richardson over the grid",
        guard([&](std::string&) { return e.b_extrapolated; }));
  x.run("rmatrix-expansion/c-extrapolated", in + "; Richardson over the grid",
        guard([&](std::string&) { return e.c_extrapolated; }));
  x.run("rmatrix-expansion/varrho-monitor", in + "; |log varrho(N) - log varrho(2N)|",
        guard([&](std::string&) { return e.varrho_monitor; }));
}

void eta_derivative(Ctx& x) {
  x.run("eta-derivative/grid", "u in {0.2,0.5,0.9} x eta in {0.6,1,1.5}, step 1e-3", [&](std::mt19937_64&, std::string&) {
    double w = 0;
    for (double u : {0.2, 0.5, 0.9})
      for (double eta : {0.6, 1.0, 1.5}) w = std::max(w, rmat::eta_derivative_identity(u, eta, 1e-3));
    return w;
  });
}

void ll_structure(Ctx& x) {
  double eta = x.cfg.eta;
  int n = x.n(20);
  for (double c : {0.0, 1.0}) {
    x.run("ll-structure/c" + cname(c), std::to_string(n) + " seeded (u1, u2) in the strip, eta=" + fmt(eta),
          [&](std::mt19937_64& g, std::string&) {
            double w = 0;
            for (int i = 0; i < n; ++i) {
              cd a = strip_point(g, Branch::plus, eta), b = strip_point(g, Branch::plus, eta);
              w = std::max(w, rmat::ll_structure_check(a, b, eta, c));
            }
            return w;
          });
  }
}

// ---- elliptic

ell::EllipticElement ell_element(std::mt19937_64& g, const EllipticModulus& m) {
  std::uniform_real_distribution<double> d(-0.8, 0.8);
  std::uniform_int_distribution<int> idx(1, 3), br(0, 1);
  ell::SigmaTerm t{idx(g), br(g) ? Branch::plus : Branch::minus, {d(g), d(g)}, {d(g), d(g)}};
  return ell::element(t, m);
}

void elliptic_jacobi(Ctx& x) {
  auto m = modulus_from_k(x.cfg.k);
  int n = x.n(60);
  for (double c : {0.0, 1.0}) {
    x.run("elliptic-jacobi/jacobi-c" + cname(c), std::to_string(n) + " seeded triples, k=" + fmt(m.k),
          [&](std::mt19937_64& g, std::string&) {
            double w = 0;
            for (int i = 0; i < n; ++i) {
              auto a = ell_element(g, m), b = ell_element(g, m), d = ell_element(g, m);
              w = std::max(w, ell::ell_jacobi_residual(a, b, d, c, m));
            }
            return w;
          });
  }
  x.run("elliptic-jacobi/antisymmetry", std::to_string(n) + " seeded pairs, c=1, k=" + fmt(m.k),
        [&](std::mt19937_64& g, std::string&) {
          double w = 0;
          for (int i = 0; i < n; ++i) {
            auto a = ell_element(g, m), b = ell_element(g, m);
            w = std::max(w, ell::max_coeff(ell::add(ell::ell_bracket(a, b, 1.0, m), ell::ell_bracket(b, a, 1.0, m), m)));
          }
          return w;
        });
}

void elliptic_cocycle(Ctx& x) {
  auto m = modulus_from_tau({0.0, x.cfg.tau});
  int n = x.n(20);
  x.run("elliptic-cocycle/closed-vs-fd", std::to_string(n) + " seeded w, a = 1..3, tau=" + fmt(x.cfg.tau) + "i",
        [&](std::mt19937_64& g, std::string&) {
          std::uniform_real_distribution<double> re(-0.9, 0.9), im(-0.9, 0.9);
          double w = 0;
          for (int i = 0; i < n;) {
            cd z{re(g) * m.K, im(g) * m.K_prime};
            if (std::abs(z) < 0.1) continue;
            int a = 1 + i % 3;
            cd c1 = ell::ell_cocycle(a, a, z, m, ell::CocycleMode::closed);
            cd c2 = ell::ell_cocycle(a, a, z, m, ell::CocycleMode::numeric_tau_fd);
            w = std::max(w, std::abs(c1 - c2));
            ++i;
          }
          return w;
        });
}

void elliptic_series(Ctx& x) {
  auto m = modulus_from_k(x.cfg.k);
  int N = x.cfg.N > 0 ? x.cfg.N : ell::default_harmonics(m);
  for (int a = 1; a <= 3; ++a) {
    x.run("elliptic-series/calibration-a" + std::to_string(a),
          "fit of the exponent scale, k=" + fmt(m.k) + ", N=" + std::to_string(N), [&](std::mt19937_64&, std::string& in) {
            auto cal = ell::calibrate_scale(a, m, N);
            in += "; scale*4K=" + fmt(cal.scale * 4.0 * m.K);
            return cal.residual;
          });
    x.run("elliptic-series/mode-bracket-a" + std::to_string(a),
          "truncated series against the pointwise bracket, scale 1/(4K), N=" + std::to_string(N + 4),
          [&](std::mt19937_64&, std::string&) {
            cd u1{0.4, -0.9 * m.K_prime}, u2{1.1, -1.1 * m.K_prime};
            return ell::ell_mode_series_check(a, u1, u2, 0.0, m, N + 4, 1.0 / (4.0 * m.K));
          });
  }
}

void elliptic_ll(Ctx& x) {
  auto m = modulus_from_k(x.cfg.k);
  int n = x.n(20);
  for (double c : {0.0, 1.0}) {
    x.run("elliptic-ll/c" + cname(c), std::to_string(n) + " seeded (u1, u2), k=" + fmt(m.k),
          [&](std::mt19937_64& g, std::string&) {
            std::uniform_real_distribution<double> d(-0.9, 0.9);
            double w = 0;
            for (int i = 0; i < n;) {
              cd a{d(g), d(g)}, b{d(g), d(g)};
              if (std::abs(a - b) < 0.1) continue;
              w = std::max(w, ell::ell_ll_check(a, b, m, c));
              ++i;
            }
            return w;
          });
  }
}

void baxter_sklyanin(Ctx& x) {
  int n = x.n(20);
  x.run("baxter-sklyanin/projective", std::to_string(n) + " seeded (v, hbar, k~)", [&](std::mt19937_64& g, std::string&) {
    std::uniform_real_distribution<double> v(-0.8, 0.8), h(0.05, 0.6), kt(0.1, 0.9);
    double w = 0;
    for (int i = 0; i < n; ++i) {
      double a = v(g), b = h(g), c = kt(g);
      w = std::max(w, ell::baxter_to_sklyanin(a, b, c).residual);
    }
    return w;
  });
}

void elliptic_limit(Ctx& x) {
  auto m = modulus_from_tau({0.0, x.cfg.tau});
  cd u{0.4, 0.15};
  const auto& z = x.cfg.zeta_grid;
  ell::ClassicalLimit cl;
  std::string err;
  try {
    cl = ell::ell_classical_limit(u, m, z, 1.0);
  } catch (const std::exception& e) {
    err = e.what();
  }
  std::string in = "u=0.4+0.15i, tau=" + fmt(x.cfg.tau) + "i, c=1";
  x.run("elliptic-limit/a-halving", in + "; max |a(zeta)/a(zeta') * zeta'/zeta - 1|", [&](std::mt19937_64&, std::string& s) {
    if (!err.empty()) throw std::runtime_error(err);
    double w = 0;
    for (size_t i = 0; i + 1 < z.size(); ++i) {
      double q = cl.a[i] / cl.a[i + 1] * z[i + 1] / z[i];
      w = std::max(w, std::abs(q - 1.0));
      s += "; a " + fmt(cl.a[i]);
    }
    return w;
  });
  x.run("elliptic-limit/b-richardson", in + "; 2D(zeta) - D(2 zeta) at the smallest zeta",
        [&](std::mt19937_64&, std::string& s) {
          if (!err.empty()) throw std::runtime_error(err);
          s += "; zeta=" + fmt(z.back()) + ", raw " + fmt(cl.b.back());
          return cl.b_richardson.back();
        });
  x.run("elliptic-limit/b-raw-decreasing", in + "; count of raw second-order residuals that fail to decrease",
        [&](std::mt19937_64&, std::string&) {
          if (!err.empty()) throw std::runtime_error(err);
          int bad = 0;
          for (size_t i = 0; i + 1 < cl.b.size(); ++i) bad += !(cl.b[i + 1] < cl.b[i]);
          return double(bad);
        });
}

// ---- Fock

void fock_two_point(Ctx& x) {
  using namespace fock;
  int n = x.n(10);
  auto sample = [](std::mt19937_64& g) {
    std::uniform_real_distribution<double> re(-1.0, 1.0), im(0.2, 1.5);
    cd v{re(g), re(g)};
    return std::pair<cd, cd>{v + cd(re(g), im(g)), v};
  };
  std::string in = std::to_string(n) + " seeded (u, v), 0.2 < Im(u-v) < 1.5";
  x.run("fock-two-point/hh", in + "; |<h h> (u-v)^2 + 2|", [&](std::mt19937_64& g, std::string&) {
    double w = 0;
    for (int i = 0; i < n; ++i) {
      auto [u, v] = sample(g);
      w = std::max(w, std::abs(two_point(Current::h, u, Current::h, v) * (u - v) * (u - v) + 2.0));
    }
    return w;
  });
  auto law = [&](Current b, double k) {
    return [&, b, k](std::mt19937_64& g, std::string&) {
      double w = 0;
      for (int i = 0; i < n; ++i) {
        auto [u1, v] = sample(g);
        auto [u2, v2] = sample(g);
        (void)v2;
        u2 = v + (u2 - v2);
        auto xb = current(b, v).op.exponent;
        cd d = contraction(e_current(u1).op.exponent, xb) - contraction(e_current(u2).op.exponent, xb);
        w = std::max(w, std::abs(d - k * std::log((u1 - v) / (u2 - v))));
      }
      return w;
    };
  };
  x.run("fock-two-point/ef-law", in + "; |I(w1) - I(w2) + 2 ln(w1/w2)|", law(Current::f, -2.0));
  x.run("fock-two-point/ee-law", in + "; |I(w1) - I(w2) - 2 ln(w1/w2)|", law(Current::e, 2.0));
  x.run("fock-two-point/ef-constant", in + "; |<e f> (u-v)^2 - C|, C measured once", [&](std::mt19937_64& g, std::string& s) {
    cd c = ef_constant();
    s += "; C=" + fmt(c);
    double w = 0;
    for (int i = 0; i < n; ++i) {
      auto [u, v] = sample(g);
      w = std::max(w, std::abs(two_point(Current::e, u, Current::f, v) * (u - v) * (u - v) - c));
    }
    return w;
  });
  x.run("fock-two-point/r0-halving", in + "; ratio observables under r0, epsilon -> half",
        [&](std::mt19937_64& g, std::string&) {
          KeyholeOptions a, b;
          b.r0 = a.r0 / 2;
          b.epsilon = a.epsilon / 2;
          double w = 0;
          for (int i = 0; i < n; ++i) {
            auto [u1, v] = sample(g);
            auto [u2, v2] = sample(g);
            u2 = v + (u2 - v2);
            for (Current t : {Current::e, Current::f}) {
              cd ra = two_point(Current::e, u1, t, v, a) / two_point(Current::e, u2, t, v, a);
              cd rb = two_point(Current::e, u1, t, v, b) / two_point(Current::e, u2, t, v, b);
              w = std::max(w, std::abs(ra - rb) / std::abs(ra));
            }
          }
          return w;
        });
}

void fock_commutator(Ctx& x) {
  using namespace fock;
  int n = x.n(5);
  cd v{0.2, 0.0};
  std::vector<SmearedCommutator> res;
  std::string err;
  {
    auto g = x.rng("fock-commutator/s-prime-linearity");
    std::uniform_real_distribution<double> al(0.8, 1.6), be(-1.0, 1.0), z0(-0.5, 0.5);
    try {
      for (int i = 0; i < n; ++i) {
        TestFunction s{al(g), be(g), {z0(g), 0.0}};
        res.push_back(smeared_commutator_check(s, v, 1.0));
      }
    } catch (const std::exception& e) {
      err = e.what();
    }
  }
  std::string in = std::to_string(n) + " seeded Gaussian test functions, v=0.2";
  x.run("fock-commutator/s-prime-linearity", in + "; max |K_j / K_0 - 1|, K = value / s'(v)",
        [&](std::mt19937_64&, std::string& s) {
          if (!err.empty() || res.empty()) throw std::runtime_error(err);
          s += "; K_0=" + fmt(res[0].constant);
          double w = 0;
          for (auto& r : res) w = std::max(w, std::abs(r.constant / res[0].constant - 1.0));
          return w;
        });
  x.run("fock-commutator/oracle", in + "; |value - C oracle| / |value|, oracle from 1/(w -+ i0)^2",
        [&](std::mt19937_64&, std::string&) {
          if (!err.empty() || res.empty()) throw std::runtime_error(err);
          double w = 0;
          for (auto& r : res) w = std::max(w, r.residual / std::abs(r.value));
          return w;
        });
  x.run("fock-commutator/stationary", "s centred at v: s'(v) = 0; |value|", [&](std::mt19937_64&, std::string&) {
    return std::abs(smeared_commutator_check(TestFunction{1.3, 0.0, v}, v, 1.0).value);
  });
}

void fock_h_kernel(Ctx& x) {
  using namespace fock;
  trig::TrigParams p{1.0};
  cd u{0.0, -0.3}, v{0.2, -0.5}, w{-0.4, -0.7};
  x.run("fock-h-kernel/reference-point", "u=-0.3i, v=0.2-0.5i, w=-0.4-0.7i, eta=1", [&](std::mt19937_64&, std::string&) {
    return h_action_kernel_check(u, v, w, p).residual;
  });
  x.run("fock-h-kernel/w-independence", "reference u, v; w=-0.4-0.7i against w=0.1+0.9i",
        [&](std::mt19937_64&, std::string&) {
          return std::abs(h_action_kernel_check(u, v, w, p).fock - h_action_kernel_check(u, v, {0.1, 0.9}, p).fock);
        });
  x.run("fock-h-kernel/swap-sign", "reference point with e and f exchanged; |K_f + K_e|", [&](std::mt19937_64&, std::string&) {
    return std::abs(h_action_kernel_check(u, v, w, p, true).fock + h_action_kernel_check(u, v, w, p).fock);
  });
  int n = x.n(4);
  x.run("fock-h-kernel/grid", std::to_string(n) + " seeded (u, v) per eta in {0.7,1,1.4}, |Re(u-v)| >= 0.2",
        [&](std::mt19937_64& g, std::string&) {
          std::uniform_real_distribution<double> mag(0.2, 0.5), im(0.05, 0.95), t(0.0, 1.0), re(-0.5, 0.5);
          double worst = 0;
          for (double eta : {0.7, 1.0, 1.4}) {
            trig::TrigParams q{eta};
            for (int i = 0; i < n; ++i) {
              cd uu{re(g), -im(g) / eta};
              cd d{(i % 2 ? 1.0 : -1.0) * mag(g), -0.8 / eta + t(g) * (0.8 / eta + 0.2)};
              worst = std::max(worst, h_action_kernel_check(uu, uu - d, {re(g), -1.0}, q).residual);
            }
          }
          return worst;
        });
}

struct Suite {
  const char* name;
  void (*run)(Ctx&);
};

const Suite suites[] = {{"trig-jacobi", trig_jacobi},
                        {"trig-cocycle", trig_cocycle},
                        {"sokhotsky", sokhotsky},
                        {"fourier-kernels", fourier_kernels},
                        {"gauge", gauge},
                        {"modes-cobracket", modes_cobracket},
                        {"rational-limit", rational_limit},
                        {"rational-double", rational_double},
                        {"cybe-trig", cybe_trig},
                        {"rmatrix-expansion", rmatrix_expansion},
                        {"eta-derivative", eta_derivative},
                        {"ll-structure", ll_structure},
                        {"elliptic-jacobi", elliptic_jacobi},
                        {"elliptic-cocycle", elliptic_cocycle},
                        {"elliptic-series", elliptic_series},
                        {"cybe-elliptic", cybe_elliptic},
                        {"elliptic-ll", elliptic_ll},
                        {"baxter-sklyanin", baxter_sklyanin},
                        {"elliptic-limit", elliptic_limit},
                        {"fock-two-point", fock_two_point},
                        {"fock-commutator", fock_commutator},
                        {"fock-h-kernel", fock_h_kernel}};

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (auto& s : suites) v.push_back(s.name);
    return v;
  }();
  return names;
}

const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> t = {
      {"trig-jacobi/jacobi-c0", 1e-9},
      {"trig-jacobi/jacobi-c1", 1e-9},
      {"trig-jacobi/jacobi-c2.5", 1e-9},
      {"trig-jacobi/antisymmetry-c0", 1e-13},
      {"trig-jacobi/antisymmetry-c1", 1e-13},
      {"trig-jacobi/antisymmetry-c2.5", 1e-13},
      {"trig-cocycle/closed-vs-boundary", 1e-6},
      {"sokhotsky/e", 1e-7},
      {"sokhotsky/f", 1e-7},
      {"sokhotsky/h", 1e-7},
      {"fourier-kernels/e+", 1e-7},
      {"fourier-kernels/e-", 1e-7},
      {"fourier-kernels/f+", 1e-7},
      {"fourier-kernels/f-", 1e-7},
      {"fourier-kernels/h+", 1e-7},
      {"fourier-kernels/h-", 1e-7},
      {"gauge/homomorphism", 1e-9},
      {"gauge/pairing", 1e-9},
      {"gauge/composition", 1e-9},
      {"modes-cobracket/e", 1e-9},
      {"modes-cobracket/f", 1e-9},
      {"modes-cobracket/h", 1e-9},
      {"rational-limit/rate-e", 0.05},
      {"rational-limit/rate-f", 0.05},
      {"rational-limit/rate-h", 0.05},
      {"rational-limit/laplace", 1e-10},
      {"rational-double/duality", 1e-7},
      {"cybe-trig/r0", 1e-10},
      {"rmatrix-expansion/a-rate", 0.1},
      {"rmatrix-expansion/raw-monotone", 0.5},
      {"rmatrix-expansion/b-extrapolated", 1e-5},
      {"rmatrix-expansion/c-extrapolated", 1e-5},
      {"rmatrix-expansion/varrho-monitor", 1e-10},
      {"eta-derivative/grid", 1e-7},
      {"ll-structure/c0", 1e-9},
      {"ll-structure/c1", 1e-9},
      {"elliptic-jacobi/jacobi-c0", 1e-8},
      {"elliptic-jacobi/jacobi-c1", 1e-8},
      {"elliptic-jacobi/antisymmetry", 1e-13},
      {"elliptic-cocycle/closed-vs-fd", 1e-6},
      {"elliptic-series/calibration-a1", 1e-6},
      {"elliptic-series/calibration-a2", 1e-6},
      {"elliptic-series/calibration-a3", 1e-6},
      {"elliptic-series/mode-bracket-a1", 1e-10},
      {"elliptic-series/mode-bracket-a2", 1e-10},
      {"elliptic-series/mode-bracket-a3", 1e-10},
      {"cybe-elliptic/r-ell", 1e-9},
      {"elliptic-ll/c0", 1e-8},
      {"elliptic-ll/c1", 1e-8},
      {"baxter-sklyanin/projective", 1e-8},
      {"elliptic-limit/a-halving", 0.05},
      {"elliptic-limit/b-richardson", 1e-4},
      {"elliptic-limit/b-raw-decreasing", 0.5},
      {"fock-two-point/hh", 1e-7},
      {"fock-two-point/ef-law", 1e-6},
      {"fock-two-point/ee-law", 1e-6},
      {"fock-two-point/ef-constant", 1e-6},
      {"fock-two-point/r0-halving", 1e-7},
      {"fock-commutator/s-prime-linearity", 1e-6},
      {"fock-commutator/oracle", 1e-6},
      {"fock-commutator/stationary", 1e-8},
      {"fock-h-kernel/reference-point", 1e-6},
      {"fock-h-kernel/w-independence", 1e-8},
      {"fock-h-kernel/swap-sign", 1e-8},
      {"fock-h-kernel/grid", 1e-6},
  };
  return t;
}

VerificationReport run_suite(const std::string& name, const SuiteConfig& config) {
  validate(config);
  VerificationReport rep;
  rep.suite = name;
  rep.seed = config.seed;
  rep.config_digest = config_digest(config);
  Ctx ctx{config, rep};
  bool found = false;
  for (auto& s : suites)
    if (name == "all" || name == s.name) {
      s.run(ctx);
      found = true;
    }
  if (!found) throw config_error("unknown suite " + name);
  finalize(rep);
  return rep;
}

}  // namespace ca::cli
