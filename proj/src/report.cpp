#include "ca/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <set>
#include <sstream>

#include "ca/suites.hpp"
#include "json.hpp"

namespace ca::cli {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r"), b = s.find_last_not_of(" \t\r");
  return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

double to_double(const std::string& key, const std::string& v) {
  size_t pos = 0;
  double x;
  try {
    x = std::stod(v, &pos);
  } catch (const std::exception&) {
    throw config_error("config: " + key + ": not a number: " + v);
  }
  if (pos != v.size() || !std::isfinite(x)) throw config_error("config: " + key + ": not a number: " + v);
  return x;
}

long long to_int(const std::string& key, const std::string& v) {
  size_t pos = 0;
  long long x;
  try {
    x = std::stoll(v, &pos);
  } catch (const std::exception&) {
    throw config_error("config: " + key + ": not an integer: " + v);
  }
  if (pos != v.size()) throw config_error("config: " + key + ": not an integer: " + v);
  return x;
}

std::vector<double> to_grid(const std::string& key, const std::string& v) {
  std::vector<double> g;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) g.push_back(to_double(key, trim(item)));
  return g;
}

std::string num(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

std::string grid_str(const std::vector<double>& g) {
  std::string s;
  for (size_t i = 0; i < g.size(); ++i) s += (i ? "," : "") + num(g[i]);
  return s;
}

}  // namespace

void validate(const SuiteConfig& c) {
  auto names = suite_names();
  if (c.suite != "all" && std::find(names.begin(), names.end(), c.suite) == names.end())
    throw config_error("config: unknown suite " + c.suite);
  if (c.samples < 0) throw config_error("config: samples must be >= 0");
  auto known = default_tolerances();
  for (auto& [k, v] : c.tolerances) {
    if (!known.count(k)) throw config_error("config: no case named " + k);
    if (!(v > 0)) throw config_error("config: tolerance for " + k + " must be > 0");
  }
  if (!(c.eta > 0)) throw config_error("config: eta must be > 0");
  auto check_grid = [](const std::vector<double>& g, const char* name) {
    if (g.empty()) throw config_error(std::string("config: ") + name + " is empty");
    for (size_t i = 0; i < g.size(); ++i) {
      if (!(g[i] > 0)) throw config_error(std::string("config: ") + name + " entries must be > 0");
      if (i && !(g[i] < g[i - 1])) throw config_error(std::string("config: ") + name + " must be strictly decreasing");
    }
  };
  check_grid(c.hbar_grid, "hbar_grid");
  check_grid(c.zeta_grid, "zeta_grid");
  if (c.hbar_grid.size() < 2) throw config_error("config: hbar_grid needs at least two entries");
  if (c.zeta_grid.size() < 2) throw config_error("config: zeta_grid needs at least two entries");
  if (c.zeta_grid.front() > 0.05) throw config_error("config: zeta_grid entries must be <= 0.05");
  if (!(c.k > 0 && c.k < 1)) throw config_error("config: k must lie in (0, 1)");
  if (!(c.tau > 0)) throw config_error("config: tau must be > 0");
  if (c.P < 1) throw config_error("config: P must be >= 1");
  if (c.N < 0) throw config_error("config: N must be >= 0");
  if (!(c.quad_tol > 0 && c.quad_tol < 1e-3)) throw config_error("config: quad_tol must lie in (0, 1e-3)");
}

SuiteConfig parse_config(const std::string& text) {
  SuiteConfig c;
  std::set<std::string> seen;
  std::stringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw config_error("config: line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
    if (key.empty() || val.empty())
      throw config_error("config: line " + std::to_string(lineno) + ": expected key = value");
    if (!seen.insert(key).second) throw config_error("config: duplicate key " + key);
    if (key.rfind("tol.", 0) == 0) c.tolerances[key.substr(4)] = to_double(key, val);
    else if (key == "suite") c.suite = val;
    else if (key == "seed") {
      long long s = to_int(key, val);
      if (s < 0) throw config_error("config: seed must be >= 0");
      c.seed = std::uint64_t(s);
    } else if (key == "samples") c.samples = int(to_int(key, val));
    else if (key == "eta") c.eta = to_double(key, val);
    else if (key == "hbar_grid") c.hbar_grid = to_grid(key, val);
    else if (key == "zeta_grid") c.zeta_grid = to_grid(key, val);
    else if (key == "k") c.k = to_double(key, val);
    else if (key == "tau") c.tau = to_double(key, val);
    else if (key == "P") c.P = int(to_int(key, val));
    else if (key == "N") c.N = int(to_int(key, val));
    else if (key == "quad_tol") c.quad_tol = to_double(key, val);
    else throw config_error("config: unknown key " + key);
  }
  validate(c);
  return c;
}

SuiteConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw config_error("config: cannot read " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

std::string canonical_form(const SuiteConfig& c) {
  std::ostringstream o;
  o << "N=" << c.N << "\nP=" << c.P << "\neta=" << num(c.eta) << "\nhbar_grid=" << grid_str(c.hbar_grid)
    << "\nk=" << num(c.k) << "\nquad_tol=" << num(c.quad_tol) << "\nsamples=" << c.samples << "\nseed=" << c.seed
    << "\nsuite=" << c.suite << "\ntau=" << num(c.tau) << "\n";
  for (auto& [k, v] : c.tolerances) o << "tol." << k << "=" << num(v) << "\n";
  o << "zeta_grid=" << grid_str(c.zeta_grid) << "\n";
  return o.str();
}

std::string config_digest(const SuiteConfig& c) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : canonical_form(c)) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Case make_case(std::string name, std::string inputs, double residual, double tolerance) {
  Case c{std::move(name), std::move(inputs), residual, tolerance, false};
  c.pass = std::isfinite(residual) && residual <= tolerance;
  return c;
}

void finalize(VerificationReport& r) {
  std::stable_sort(r.cases.begin(), r.cases.end(), [](const Case& a, const Case& b) { return a.name < b.name; });
  r.summary = {};
  r.summary.total = int(r.cases.size());
  for (auto& c : r.cases) {
    if (c.pass) ++r.summary.passed;
    double x = std::isfinite(c.residual) ? c.residual : std::numeric_limits<double>::infinity();
    r.summary.max_residual = std::max(r.summary.max_residual, x);
  }
}

bool all_pass(const VerificationReport& r) { return r.summary.passed == r.summary.total; }

std::string to_json(const VerificationReport& r) {
  using nlohmann::json;
  std::ostringstream o;
  o << "{\n  \"suite\": " << json(r.suite).dump() << ",\n  \"seed\": " << r.seed
    << ",\n  \"config_digest\": " << json(r.config_digest).dump() << ",\n  \"cases\": [";
  for (size_t i = 0; i < r.cases.size(); ++i) {
    auto& c = r.cases[i];
    o << (i ? "," : "") << "\n    {\"name\": " << json(c.name).dump() << ", \"inputs\": " << json(c.inputs).dump()
      << ", \"residual\": " << num(c.residual) << ", \"tolerance\": " << num(c.tolerance)
      << ", \"pass\": " << (c.pass ? "true" : "false") << "}";
  }
  o << (r.cases.empty() ? "" : "\n  ") << "],\n  \"summary\": {\"total\": " << r.summary.total
    << ", \"passed\": " << r.summary.passed << ", \"max_residual\": " << num(r.summary.max_residual) << "}\n}\n";
  return o.str();
}

std::string to_text(const VerificationReport& r) {
  std::ostringstream o;
  char buf[64];
  for (auto& c : r.cases) {
    std::snprintf(buf, sizeof buf, "residual=%.12e tol=%.3e", c.residual, c.tolerance);
    o << (c.pass ? "PASS " : "FAIL ") << c.name << " " << buf << " [" << c.inputs << "]\n";
  }
  std::snprintf(buf, sizeof buf, "max_residual=%.12e", r.summary.max_residual);
  o << (all_pass(r) ? "PASS " : "FAIL ") << r.suite << " " << r.summary.passed << "/" << r.summary.total
    << " passed " << buf << " seed=" << r.seed << " config=" << r.config_digest << "\n";
  return o.str();
}

VerificationReport from_json(const std::string& text) {
  using nlohmann::json;
  auto real = [](const json& j) {
    return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
  };
  json j = json::parse(text);
  VerificationReport r;
  r.suite = j.at("suite").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("config_digest")) r.config_digest = j["config_digest"].get<std::string>();
  for (auto& c : j.at("cases"))
    r.cases.push_back({c.at("name").get<std::string>(), c.at("inputs").get<std::string>(), real(c.at("residual")),
                       real(c.at("tolerance")), c.at("pass").get<bool>()});
  auto& s = j.at("summary");
  r.summary = {s.at("total").get<int>(), s.at("passed").get<int>(), real(s.at("max_residual"))};
  return r;
}

void emit_report(const VerificationReport& r, Format f, const std::string& path) {
  std::string body = f == Format::json ? to_json(r) : to_text(r);
  if (path.empty()) {
    std::cout << body << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw config_error("report: cannot write " + path);
  out << body;
  if (!out) throw config_error("report: write failed for " + path);
}

}  // namespace ca::cli
