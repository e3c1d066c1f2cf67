#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "polarspinor/polarspinor.hpp"

namespace polarspinor::cli {

using json = nlohmann::ordered_json;

inline const std::array<std::string, 7>& commands() {
  static const std::array<std::string, 7> c = {"classify", "bilinears",       "fierz", "polar",
                                               "dirac-check", "flagpole-matrix", "expand"};
  return c;
}

inline bool is_command(const std::string& name) {
  return std::find(commands().begin(), commands().end(), name) != commands().end();
}

enum ExitCode { kPass = 0, kToleranceFailure = 1, kInputFailure = 2 };

inline constexpr const char* kReportDirVariable = "POLARSPINOR_REPORT_DIR";

struct JobSpec {
  std::string command;
  std::string input_path;
  std::optional<std::string> output_path;
  double tol_class = kDefaultClassTolerance;
  double tol_residual = 1e-8;
  double fd_step = kDefaultFdStep;
};

struct RunResult {
  json report;
  int exit_code = kPass;

  std::string text() const { return report.dump(2) + "\n"; }
};

// ---------------------------------------------------------------- parsing

inline double read_number(const json& j, const std::string& what) {
  if (!j.is_number()) throw InputError(what + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw InputError(what + ": non-finite value");
  return v;
}

inline Complex read_complex(const json& j, const std::string& what) {
  if (j.is_number()) return {read_number(j, what), 0.0};
  if (!j.is_array() || j.size() != 2) throw InputError(what + ": complex numbers are [re, im] pairs");
  return {read_number(j[0], what), read_number(j[1], what)};
}

inline Spinor read_spinor(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 4) throw InputError(what + ": a spinor is 4 complex pairs");
  Spinor s;
  for (int k = 0; k < 4; ++k) s(k) = read_complex(j[k], what + "[" + std::to_string(k) + "]");
  return s;
}

inline Vec4 read_vec4(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 4) throw InputError(what + ": expected 4 numbers");
  Vec4 v;
  for (int k = 0; k < 4; ++k) v(k) = read_number(j[k], what);
  return v;
}

/// 24 values ordered by pair (01, 02, 03, 12, 13, 23), then mu.
inline Rank3 read_rank3_dense(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 24)
    throw InputError(what + ": expected 24 values ordered by (i, j, mu) with i < j");
  Rank3 r;
  for (std::size_t p = 0; p < kAntisymmetricPairs.size(); ++p)
    for (int mu = 0; mu < 4; ++mu) {
      const auto [i, jj] = kAntisymmetricPairs[p];
      r.set_antisymmetric(i, jj, mu, read_number(j[p * 4 + mu], what));
    }
  return r;
}

/// Sparse list of [i, j, mu, value]; the antisymmetric partner is implied.
inline Rank3 read_rank3_entries(const json& j, const std::string& what, Rank3 r = {}) {
  if (!j.is_array()) throw InputError(what + ": expected a list of [i, j, mu, value]");
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 4) throw InputError(what + ": entries are [i, j, mu, value]");
    std::array<int, 3> idx{};
    for (int k = 0; k < 3; ++k) {
      if (!e[k].is_number_integer()) throw InputError(what + ": indices must be integers");
      idx[k] = e[k].get<int>();
      if (idx[k] < 0 || idx[k] > 3) throw InputError(what + ": indices must lie in 0..3");
    }
    if (idx[0] == idx[1]) throw InputError(what + ": i = j violates antisymmetry");
    r.set_antisymmetric(idx[0], idx[1], idx[2], read_number(e[3], what));
  }
  return r;
}

inline Rank3 read_rank3(const json& obj, const std::string& dense_key, const std::string& sparse_key) {
  Rank3 r;
  if (obj.contains(dense_key)) r = read_rank3_dense(obj[dense_key], dense_key);
  if (obj.contains(sparse_key)) r = read_rank3_entries(obj[sparse_key], sparse_key, r);
  return r;
}

inline ConnectionField read_connection(const json& j) {
  if (!j.is_object()) throw InputError("connection: expected an object");
  const std::string type = j.value("type", "constant");
  const Vec4 p = j.contains("P") ? read_vec4(j["P"], "connection.P") : Vec4::Zero().eval();
  const Rank3 r = read_rank3(j, "R", "R_entries");
  if (type == "constant") return constant_connection(p, r);
  if (type != "linear") throw InputError("connection.type must be \"constant\" or \"linear\"");

  Tensor2 dp = Tensor2::Zero();
  if (j.contains("P_grad")) {
    const auto& g = j["P_grad"];
    if (!g.is_array() || g.size() != 4) throw InputError("connection.P_grad: expected 4 rows");
    for (int mu = 0; mu < 4; ++mu) dp.row(mu) = read_vec4(g[mu], "connection.P_grad").transpose();
  }
  std::array<Rank3, 4> dr{};
  if (j.contains("R_grad")) {
    const auto& g = j["R_grad"];
    if (!g.is_array() || g.size() != 4)
      throw InputError("connection.R_grad: expected 4 blocks, one per coordinate");
    for (int nu = 0; nu < 4; ++nu) dr[nu] = read_rank3_dense(g[nu], "connection.R_grad");
  }
  return linear_connection(p, r, dp, dr);
}

inline Path read_path(const json& j) {
  if (!j.is_object()) throw InputError("path: expected an object");
  Path p;
  p.start = j.contains("start") ? read_vec4(j["start"], "path.start") : Point::Zero().eval();
  if (!j.contains("end")) throw InputError("path.end is required");
  p.end = read_vec4(j["end"], "path.end");
  p.steps = 1;
  if (j.contains("steps")) {
    if (!j["steps"].is_number_integer()) throw InputError("path.steps must be an integer");
    p.steps = j["steps"].get<int>();
  }
  if (p.steps < 1) throw InputError("path.steps must be at least 1");
  return p;
}

inline const json& require(const json& doc, const std::string& key) {
  if (!doc.contains(key)) throw InputError("missing field \"" + key + "\"");
  return doc[key];
}

// ---------------------------------------------------------------- output

// Adding 0.0 folds negative zero into +0 for tidier reports.
inline double tidy(double v) { return v + 0.0; }

inline json to_json(const Complex& z) { return json::array({tidy(z.real()), tidy(z.imag())}); }

inline json to_json(const Spinor& s) {
  json a = json::array();
  for (int k = 0; k < 4; ++k) a.push_back(to_json(s(k)));
  return a;
}

inline json to_json(const Vec4& v) {
  return json::array({tidy(v(0)), tidy(v(1)), tidy(v(2)), tidy(v(3))});
}
inline json to_json(const Vec3& v) { return json::array({tidy(v(0)), tidy(v(1)), tidy(v(2))}); }

inline json to_json(const Tensor2& t) {
  json a = json::array();
  for (int r = 0; r < 4; ++r) a.push_back(to_json(Vec4(t.row(r).transpose())));
  return a;
}

inline json to_json(const Matrix4c& m) {
  json a = json::array();
  for (int r = 0; r < 4; ++r) {
    json row = json::array();
    for (int c = 0; c < 4; ++c) row.push_back(to_json(m(r, c)));
    a.push_back(row);
  }
  return a;
}

inline json convention_block() {
  const auto c = conventions();
  json j;
  j["representation"] = c.representation;
  j["signature"] = c.signature;
  j["epsilon_0123"] = c.epsilon_0123;
  j["pi_diagonal"] = c.pi_diagonal;
  return j;
}

inline json bilinears_json(const Bilinears& b) {
  json j;
  j["Theta"] = b.Theta;
  j["Phi"] = b.Phi;
  j["S"] = to_json(b.S);
  j["U"] = to_json(b.U);
  j["Sigma"] = to_json(b.Sigma);
  j["M"] = to_json(b.M);
  return j;
}

inline json polar_residuals_json(const PolarResiduals& p) {
  json entries = json::array();
  for (const auto& e : p.entries) {
    json item;
    item["name"] = e.name;
    item["values"] = e.values;
    item["max_abs"] = e.max_abs();
    entries.push_back(item);
  }
  return entries;
}

/// Accumulates named pass/fail checks for the report.
class Checks {
 public:
  void add(const std::string& name, double value, double tolerance) {
    json c;
    c["name"] = name;
    c["value"] = value;
    c["tolerance"] = tolerance;
    const bool ok = value <= tolerance;
    c["pass"] = ok;
    if (!ok && first_failure_.empty()) first_failure_ = name;
    list_.push_back(c);
  }
  bool passed() const { return first_failure_.empty(); }
  const std::string& first_failure() const { return first_failure_; }
  const json& list() const { return list_; }

 private:
  json list_ = json::array();
  std::string first_failure_;
};

// ---------------------------------------------------------------- commands

inline Checks run_classify(const json& doc, const JobSpec& job, json& results) {
  const auto c = classify(read_spinor(require(doc, "spinor"), "spinor"), job.tol_class);
  results["label"] = to_string(c.label);
  results["regular"] = is_regular(c.label);
  results["tolerance"] = c.tolerance_used;
  results["normalized"] = {{"Phi", c.phi_ratio}, {"Theta", c.theta_ratio}, {"S", c.s_ratio}, {"M", c.m_ratio}};
  return {};
}

inline Checks run_bilinears(const json& doc, const JobSpec&, json& results) {
  results = bilinears_json(compute_bilinears(read_spinor(require(doc, "spinor"), "spinor")));
  return {};
}

inline Checks run_fierz(const json& doc, const JobSpec& job, json& results) {
  const auto rep = fierz_check(compute_bilinears(read_spinor(require(doc, "spinor"), "spinor")));
  Checks checks;
  json table = json::array();
  for (const auto& [name, r] : rep.residuals) {
    table.push_back({{"identity", name}, {"residual", r}});
    checks.add(name, r, job.tol_residual);
  }
  results["residuals"] = table;
  results["worst"] = rep.worst();
  return checks;
}

inline Checks run_polar(const json& doc, const JobSpec& job, json& results) {
  const Spinor psi = read_spinor(require(doc, "spinor"), "spinor");
  const auto cls = classify(psi, job.tol_class);
  results["label"] = to_string(cls.label);
  const double scale = psi.cwiseAbs().maxCoeff();
  Checks checks;
  if (is_regular(cls.label)) {
    const auto p = decompose_regular(psi, job.tol_class);
    results["form"] = "regular";
    results["phi"] = p.phi;
    results["beta"] = p.beta;
    results["rapidity"] = to_json(p.rapidity);
    results["rotation"] = to_json(p.rotation);
    results["phase"] = p.phase;
    results["velocity"] = to_json(p.velocity());
    results["spin_axis"] = to_json(p.spin_axis());
    results["L_inverse"] = to_json(p.L_matrix);
    const double err = (reconstruct_regular(p) - psi).cwiseAbs().maxCoeff() / scale;
    results["round_trip_error"] = err;
    checks.add("round trip", err, job.tol_residual);
  } else {
    const auto p = decompose_singular(psi, job.tol_class);
    results["form"] = "singular";
    results["sin_alpha"] = p.sin_alpha;
    results["alpha"] = p.alpha;
    results["alpha_branch"] = "principal";
    results["alpha_supplementary"] = std::numbers::pi - p.alpha;
    results["boost_rapidity_axis3"] = p.boost_rapidity;
    results["rotation"] = to_json(p.rotation);
    results["phase"] = p.phase;
    results["L_inverse"] = to_json(p.L_matrix);
    const double err = (reconstruct_singular(p) - psi).cwiseAbs().maxCoeff() / scale;
    results["round_trip_error"] = err;
    checks.add("round trip", err, job.tol_residual);
  }
  return checks;
}

inline Vec4 optional_vec4(const json& doc, const std::string& key) {
  return doc.contains(key) ? read_vec4(doc[key], key) : Vec4::Zero().eval();
}

inline Checks run_dirac_check(const json& doc, const JobSpec& job, json& results) {
  const Spinor psi = read_spinor(require(doc, "spinor"), "spinor");
  const double m = read_number(require(doc, "mass"), "mass");
  const ConnectionField conn = read_connection(require(doc, "connection"));
  const Point x = optional_vec4(doc, "point");
  const auto cls = classify(psi, job.tol_class);

  PolarPointData d;
  d.P = conn.P(x);
  d.R = conn.R(x);
  d.grad_beta = optional_vec4(doc, "grad_beta");
  d.grad_log_phi = optional_vec4(doc, "grad_log_phi");
  d.grad_alpha = optional_vec4(doc, "grad_alpha");

  results["label"] = to_string(cls.label);
  results["point"] = to_json(x);
  const auto contraction = contract_R(d.R);
  results["R_mu"] = to_json(contraction.R_mu);
  results["B_mu"] = to_json(contraction.B_mu);

  Checks checks;
  PolarResiduals polar;
  double polar_scale = 1.0;
  if (is_regular(cls.label)) {
    const auto p = decompose_regular(psi, job.tol_class);
    const RegularPolarPoint pt{p.beta, d.grad_beta, p.phi, p.phi * d.grad_log_phi, p.velocity(),
                               p.spin_axis()};
    polar = regular_polar_residuals(pt, d.P, d.R, m);
  } else {
    const auto p = decompose_singular(psi, job.tol_class);
    d.alpha = p.alpha;
    const auto b = compute_bilinears(psi);
    polar = singular_polar_residuals(cls.label, SingularPolarPoint{p.alpha, d.grad_alpha, b.U, b.M},
                                     d.P, d.R, m);
    polar_scale = b.U(0);
    results["alpha"] = p.alpha;
  }
  const auto component = dirac_residual(psi, polar_derivative_matrix(cls.label, d), m);
  results["component_residual"] = to_json(component.residual);
  results["component_residual_norm"] = component.norm;
  results["polar_residuals"] = polar_residuals_json(polar);
  checks.add("component residual / |psi|", component.norm / psi.norm(), job.tol_residual);
  checks.add(is_regular(cls.label) ? "polar residuals" : "polar residuals / U^0",
             polar.worst() / polar_scale, job.tol_residual);
  return checks;
}

inline Checks run_flagpole_matrix(const json& doc, const JobSpec& job, json& results) {
  const double m = read_number(require(doc, "mass"), "mass");
  ContractionPair c;
  if (doc.contains("connection")) {
    const ConnectionField conn = read_connection(doc["connection"]);
    c = contract_R(conn.R(optional_vec4(doc, "point")));
  } else {
    c.R_mu = optional_vec4(doc, "R_mu");
    c.B_mu = optional_vec4(doc, "B_mu");
  }
  const Matrix4c f = flagpole_dirac_matrix(c, m);
  results["R_mu"] = to_json(c.R_mu);
  results["B_mu"] = to_json(c.B_mu);
  results["matrix"] = to_json(f);
  if (m != 0.0) {
    results["factor"] = -2.0 * m;
    results["factored_matrix"] = to_json(Matrix4c(f / (-2.0 * m)));
  }
  json elko = json::object();
  const auto q = elko_states();
  const std::array<std::pair<const char*, Spinor>, 4> named = {
      {{"lambda_S_plus", q.s_plus.components},
       {"lambda_A_plus", q.a_plus.components},
       {"lambda_S_minus", q.s_minus.components},
       {"lambda_A_minus", q.a_minus.components}}};
  for (const auto& [name, s] : named) elko[name] = to_json(Spinor(f * s));
  results["applied_to_elko"] = elko;

  Checks checks;
  if (doc.contains("spinor")) {
    const Spinor lam = read_spinor(doc["spinor"], "spinor");
    const Spinor out = f * lam;
    results["applied"] = to_json(out);
    checks.add("|F lambda| / |lambda|", out.norm() / lam.norm(), job.tol_residual);
    checks.add("|F C(lambda)| / |lambda|", (f * apply_C(lam)).norm() / lam.norm(), job.tol_residual);
  }
  return checks;
}

inline Checks run_expand(const json& doc, const JobSpec& job, json& results) {
  const Spinor psi0 = read_spinor(require(doc, "spinor"), "spinor");
  const ConnectionField conn = read_connection(require(doc, "connection"));
  const Path path = read_path(require(doc, "path"));
  const auto res = expand(psi0, path, conn);
  results["spinor"] = to_json(res.spinor);
  results["steps"] = res.step_count;
  results["ordering"] = res.ordering;
  const auto [cl, cr] = chiral_coefficients(res.spinor, psi0);
  results["chiral_coefficients"] = {{"left", to_json(cl)}, {"right", to_json(cr)}};
  results["classification"] = to_string(classify(res.spinor, job.tol_class).label);

  Checks checks;
  if (path.displacement().norm() > 0.0) {
    const double v = verify_expansion(psi0, path, conn, job.fd_step);
    results["derivative_residual"] = v;
    results["fd_step"] = job.fd_step;
    checks.add("derivative residual", v / psi0.norm(), job.tol_residual);
  }
  if (doc.contains("expected")) {
    const Spinor e = read_spinor(doc["expected"], "expected");
    checks.add("expected spinor", (res.spinor - e).cwiseAbs().maxCoeff(), job.tol_residual);
  }
  return checks;
}

// ---------------------------------------------------------------- driver

inline json parse_document(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed input document: ") + e.what());
  }
}

inline json report_header(const JobSpec& job) {
  json r;
  r["command"] = job.command;
  r["version"] = POLARSPINOR_VERSION;
  r["conventions"] = convention_block();
  r["tolerances"] = {{"class", job.tol_class}, {"residual", job.tol_residual}, {"fd_step", job.fd_step}};
  return r;
}

/// Runs one job on an in-memory document.
inline RunResult run_document(const JobSpec& job, const std::string& text) {
  RunResult out;
  out.report = report_header(job);
  try {
    if (!is_command(job.command)) throw InputError("unknown command \"" + job.command + "\"");
    if (!(job.tol_class > 0.0) || !(job.tol_residual > 0.0) || !(job.fd_step > 0.0))
      throw InputError("tolerances and the derivative step must be positive");
    const json doc = parse_document(text);
    if (!doc.is_object()) throw InputError("input document must be an object");

    json results = json::object();
    Checks checks;
    if (job.command == "classify") checks = run_classify(doc, job, results);
    else if (job.command == "bilinears") checks = run_bilinears(doc, job, results);
    else if (job.command == "fierz") checks = run_fierz(doc, job, results);
    else if (job.command == "polar") checks = run_polar(doc, job, results);
    else if (job.command == "dirac-check") checks = run_dirac_check(doc, job, results);
    else if (job.command == "flagpole-matrix") checks = run_flagpole_matrix(doc, job, results);
    else checks = run_expand(doc, job, results);

    out.report["results"] = results;
    out.report["checks"] = checks.list();
    out.report["status"] = checks.passed() ? "pass" : "fail";
    if (!checks.passed()) out.report["failed_check"] = checks.first_failure();
    out.exit_code = checks.passed() ? kPass : kToleranceFailure;
  } catch (const InputError& e) {
    out.report["status"] = "input-error";
    out.report["error"] = e.what();
    out.exit_code = kInputFailure;
  } catch (const std::exception& e) {
    // A well-formed document that the numerics reject (e.g. overflow).
    out.report["status"] = "error";
    out.report["error"] = e.what();
    out.exit_code = kInputFailure;
  }
  return out;
}

inline RunResult run(const JobSpec& job) {
  if (!is_command(job.command)) return run_document(job, "");
  std::ifstream in(job.input_path, std::ios::binary);
  if (!in) {
    RunResult r;
    r.report = report_header(job);
    r.report["status"] = "input-error";
    r.report["error"] = "cannot read input file " + job.input_path;
    r.exit_code = kInputFailure;
    return r;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return run_document(job, buf.str());
}

/// Destination for the report: -o wins; otherwise the report directory from
/// the environment, if set; otherwise standard output (empty result).
inline std::optional<std::filesystem::path> report_destination(const JobSpec& job) {
  const char* dir = std::getenv(kReportDirVariable);
  if (job.output_path) {
    std::filesystem::path p(*job.output_path);
    if (p.is_relative() && dir && *dir) p = std::filesystem::path(dir) / p;
    return p;
  }
  if (dir && *dir) return std::filesystem::path(dir) / (job.command + ".json");
  return std::nullopt;
}

}  // namespace polarspinor::cli
