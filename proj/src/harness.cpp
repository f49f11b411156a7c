#include "bn/harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>
#include <json.hpp>

namespace bn {

std::array<double, 7> variables(const PrimitiveState<double>& w) {
  return {w.alpha1, w.rho1, w.u1, w.p1, w.rho2, w.u2, w.p2};
}

std::optional<double> l1_error(const std::vector<double>& approx, const std::vector<double>& exact, double dx) {
  if (approx.size() != exact.size()) throw std::invalid_argument("l1_error: profile lengths differ");
  double num = 0, den = 0;
  for (std::size_t j = 0; j < approx.size(); ++j) {
    num += std::abs(approx[j] - exact[j]) * dx;
    den += std::abs(exact[j]) * dx;
  }
  if (!(den > 0)) return std::nullopt;
  return num / den;
}

ErrorVector l1_error(const std::vector<PrimitiveState<double>>& approx,
                     const std::vector<PrimitiveState<double>>& exact, double dx) {
  if (approx.size() != exact.size()) throw std::invalid_argument("l1_error: profile lengths differ");
  ErrorVector e;
  for (int v = 0; v < 7; ++v) {
    std::vector<double> a(approx.size()), b(exact.size());
    for (std::size_t j = 0; j < approx.size(); ++j) {
      a[j] = variables(approx[j])[v];
      b[j] = variables(exact[j])[v];
    }
    e[v] = l1_error(a, b, dx);
  }
  return e;
}

RunConfig<double> case_config(const TestCase& c, SchemeKind scheme, int cells) {
  RunConfig<double> cfg;
  cfg.cells = cells;
  cfg.x_min = c.domain[0];
  cfg.x_max = c.domain[1];
  cfg.cfl = c.cfl;
  cfg.t_final = c.t_max;
  cfg.scheme = scheme;
  return cfg;
}

CaseRun run_case(const TestCase& c, const RunConfig<double>& cfg,
                 const std::function<void(const StepAudit<double>&)>& observer) {
  cfg.validate();
  const PiecewiseData<double> data{c.left, c.right, c.x0};
  const Field<double> U0 = project_initial(data, cfg, c.eos1, c.eos2);
  CaseRun out;
  int steps = 0;
  auto counting = [&](const StepAudit<double>& a) {
    ++steps;
    if (observer) observer(a);
  };
  const auto t0 = std::chrono::steady_clock::now();
  auto r = run(U0, cfg, c.eos1, c.eos2, std::function<void(const StepAudit<double>&)>(counting), false);
  const auto t1 = std::chrono::steady_clock::now();
  out.wall_seconds = std::chrono::duration<double>(t1 - t0).count();
  out.steps = steps;
  out.cells = std::move(r.cells);
  out.profile.resize(cfg.cells);
  for (int j = 0; j < cfg.cells; ++j) out.profile[j] = to_primitive<double>(out.cells.col(j), c.eos1, c.eos2);
  return out;
}

std::vector<int> mesh_levels(int count, int base) {
  std::vector<int> v;
  for (int n = 0; n < count; ++n) v.push_back(base << n);
  return v;
}

std::vector<ErrorReport> convergence_study(const TestCase& c, SchemeKind scheme, const std::vector<int>& levels) {
  for (std::size_t i = 1; i < levels.size(); ++i)
    if (levels[i] <= levels[i - 1]) throw std::invalid_argument("convergence_study: levels must increase");
  std::vector<ErrorReport> out;
  for (int n : levels) {
    ErrorReport rep;
    auto cfg = case_config(c, scheme, n);
    rep.cells = n;
    rep.dx = cfg.dx();
    try {
      const auto r = run_case(c, cfg);
      rep.wall_seconds = r.wall_seconds;
      rep.error = l1_error(r.profile, exact_profile(c, n, c.t_max), rep.dx);
    } catch (const std::exception& e) {
      rep.failed = true;
      rep.failure = e.what();
    }
    if (!out.empty() && !rep.failed && !out.back().failed) {
      const auto& prev = out.back();
      for (int v = 0; v < 7; ++v) {
        if (prev.error[v] && rep.error[v] && *prev.error[v] > 0 && *rep.error[v] > 0)
          rep.order[v] = std::log(*prev.error[v] / *rep.error[v]) / std::log(prev.dx / rep.dx);
      }
    }
    out.push_back(rep);
  }
  return out;
}

std::vector<BenchRow> bench(const TestCase& c, const std::vector<int>& levels) {
  std::vector<BenchRow> rows;
  for (SchemeKind s : {SchemeKind::Relaxation, SchemeKind::Rusanov})
    for (const auto& rep : convergence_study(c, s, levels)) rows.push_back({s, rep});
  return rows;
}

std::optional<double> time_to_reach(const std::vector<ErrorReport>& reports, int var, double target) {
  const ErrorReport* prev = nullptr;
  for (const auto& r : reports) {
    if (r.failed || !r.error[var]) continue;
    const double e = *r.error[var];
    if (e <= target) {
      if (!prev || *prev->error[var] <= e) return r.wall_seconds;
      const double s = std::log(target / *prev->error[var]) / std::log(e / *prev->error[var]);
      return std::exp(std::log(prev->wall_seconds) + s * (std::log(r.wall_seconds) - std::log(prev->wall_seconds)));
    }
    prev = &r;
  }
  return std::nullopt;
}

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("least_squares_slope: need >= 2 points");
  Eigen::MatrixXd A(x.size(), 2);
  Eigen::VectorXd b(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    A(i, 0) = x[i];
    A(i, 1) = 1;
    b[i] = y[i];
  }
  const Eigen::Vector2d c = A.colPivHouseholderQr().solve(b);
  return c[0];
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  return os;
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_opt(const std::optional<double>& v) { return v ? fmt17(*v) : std::string("nan"); }

}  // namespace

void write_profile_csv(const std::string& path, const std::vector<double>& xs,
                       const std::vector<PrimitiveState<double>>& profile) {
  if (xs.size() != profile.size()) throw std::invalid_argument("write_profile_csv: size mismatch");
  auto os = open_out(path);
  os << "x";
  for (auto n : kVariableNames) os << ',' << n;
  os << '\n';
  for (std::size_t j = 0; j < xs.size(); ++j) {
    os << fmt17(xs[j]);
    for (double v : variables(profile[j])) os << ',' << fmt17(v);
    os << '\n';
  }
  if (!os) throw std::runtime_error("write failed: " + path);
}

ProfileData read_profile_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open for reading: " + path);
  std::string line;
  if (!std::getline(is, line) || line.rfind("x,alpha1", 0) != 0) throw std::runtime_error("bad profile header: " + path);
  ProfileData d;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::array<double, 8> v{};
    const char* p = line.c_str();
    for (int i = 0; i < 8; ++i) {
      char* end = nullptr;
      v[i] = std::strtod(p, &end);
      if (end == p) throw std::runtime_error("bad profile row in " + path + ": " + line);
      p = (*end == ',') ? end + 1 : end;
    }
    d.xs.push_back(v[0]);
    d.profile.push_back({v[1], v[2], v[3], v[4], v[5], v[6], v[7]});
  }
  return d;
}

void write_convergence_csv(const std::string& path, const std::vector<ErrorReport>& reports) {
  auto os = open_out(path);
  os << "cells,dx,wall_seconds";
  for (auto n : kVariableNames) os << ",err_" << n;
  for (auto n : kVariableNames) os << ",order_" << n;
  os << ",status\n";
  for (const auto& r : reports) {
    os << r.cells << ',' << fmt17(r.dx) << ',' << fmt17(r.wall_seconds);
    for (const auto& e : r.error) os << ',' << fmt_opt(e);
    for (const auto& o : r.order) os << ',' << fmt_opt(o);
    os << ',' << (r.failed ? "failed" : "ok") << '\n';
  }
}

void write_bench_csv(const std::string& path, const std::vector<BenchRow>& rows) {
  auto os = open_out(path);
  os << "scheme,cells,dx,wall_seconds";
  for (auto n : kVariableNames) os << ",err_" << n;
  os << ",status\n";
  for (const auto& row : rows) {
    const auto& r = row.report;
    os << to_string(row.scheme) << ',' << r.cells << ',' << fmt17(r.dx) << ',' << fmt17(r.wall_seconds);
    for (const auto& e : r.error) os << ',' << fmt_opt(e);
    os << ',' << (r.failed ? "failed" : "ok") << '\n';
  }
}

void write_log_csv(const std::string& path, const std::vector<StepLog<double>>& log) {
  auto os = open_out(path);
  os << "step,t,dt,mass1,mass2,momentum,energy,min_alpha1,min_alpha2,min_rho1,min_rho2,min_e1,min_e2\n";
  for (const auto& l : log) {
    os << l.step << ',' << fmt17(l.t) << ',' << fmt17(l.dt);
    for (int i = 0; i < 4; ++i) os << ',' << fmt17(l.totals[i]);
    os << ',' << fmt17(l.min_alpha1) << ',' << fmt17(l.min_alpha2) << ',' << fmt17(l.min_rho[0]) << ','
       << fmt17(l.min_rho[1]) << ',' << fmt17(l.min_e[0]) << ',' << fmt17(l.min_e[1]) << '\n';
  }
}

namespace {

using nlohmann::json;

const json& need(const json& j, const std::string& key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw std::runtime_error("case schema: missing key \"" + where + key + "\"");
  return j.at(key);
}

double number(const json& j, const std::string& key, const std::string& where = {}) {
  const json& v = need(j, key, where);
  if (!v.is_number()) throw std::runtime_error("case schema: key \"" + where + key + "\" must be a number");
  return v.get<double>();
}

EosParams<double> eos_from(const json& j, const std::string& key) {
  const json& e = need(j, key, "");
  EosParams<double> p;
  p.gamma = number(e, "gamma", key + ".");
  p.p_inf = number(e, "p_inf", key + ".");
  if (e.contains("cv")) p.cv = number(e, "cv", key + ".");
  if (e.contains("s_ref")) p.s_ref = number(e, "s_ref", key + ".");
  try {
    validate(p);
  } catch (const DomainError& err) {
    throw std::runtime_error("case schema: key \"" + key + "\": " + err.what());
  }
  return p;
}

PrimitiveState<double> state_from(const json& j, const std::string& key) {
  const json& s = need(j, key, "");
  const std::string w = key + ".";
  return {number(s, "alpha1", w), number(s, "rho1", w), number(s, "u1", w), number(s, "p1", w),
          number(s, "rho2", w),   number(s, "u2", w),   number(s, "p2", w)};
}

}  // namespace

TestCase parse_case_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("case schema: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw std::runtime_error("case schema: top level must be an object");
  TestCase c;
  c.id = 0;
  c.eos1 = eos_from(j, "eos1");
  c.eos2 = eos_from(j, "eos2");
  c.x0 = number(j, "x0");
  c.t_max = number(j, "t_max");
  c.cfl = number(j, "cfl");
  const json& d = need(j, "domain", "");
  if (!d.is_array() || d.size() != 2 || !d[0].is_number() || !d[1].is_number())
    throw std::runtime_error("case schema: key \"domain\" must be [a, b]");
  c.domain = {d[0].get<double>(), d[1].get<double>()};
  if (!(c.domain[1] > c.domain[0])) throw std::runtime_error("case schema: key \"domain\" must satisfy a < b");
  if (!(c.cfl > 0 && c.cfl < 0.5)) throw std::runtime_error("case schema: key \"cfl\" must lie in (0, 0.5)");
  if (!(c.t_max >= 0)) throw std::runtime_error("case schema: key \"t_max\" must be >= 0");
  c.left = state_from(j, "left");
  c.right = state_from(j, "right");
  check_admissible(c.left, c.eos1, c.eos2);
  check_admissible(c.right, c.eos1, c.eos2);
  return c;
}

TestCase load_case_json(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open case file: " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_case_json(ss.str());
}

}  // namespace bn
