#include "nabla_kit/serialization.hpp"

#include <cmath>

#include "nabla_kit/errors.hpp"

namespace nabla_kit {

namespace {

Verdict verdict_from(const std::string& s) {
  if (s == "certified") return Verdict::certified;
  if (s == "refuted") return Verdict::refuted;
  if (s == "inconclusive") return Verdict::inconclusive;
  throw ContractViolation("unknown verdict '" + s + "'");
}

// Infinite endpoints become null so the document survives a dump/parse cycle.
json bound(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json interval_json(const Interval& i) {
  return json{{"lo", bound(i.lo)}, {"hi", bound(i.hi)}, {"lo_open", i.lo_open}, {"hi_open", i.hi_open}};
}

}  // namespace

void to_json(json& j, const TolerancePolicy& t) {
  j = json{{"abs_tol", t.abs_tol}, {"rel_tol", t.rel_tol}, {"psd_eig_floor", t.psd_eig_floor}};
}

void from_json(const json& j, TolerancePolicy& t) {
  t.abs_tol = j.value("abs_tol", t.abs_tol);
  t.rel_tol = j.value("rel_tol", t.rel_tol);
  t.psd_eig_floor = j.value("psd_eig_floor", t.psd_eig_floor);
}

void to_json(json& j, const QuadratureScheme& s) {
  j = json{{"order", s.order}, {"panels", s.panels}};
}

void from_json(const json& j, QuadratureScheme& s) {
  s.order = j.value("order", s.order);
  s.panels = j.value("panels", s.panels);
}

void to_json(json& j, const Matrix& m) {
  j = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    j.push_back(std::move(row));
  }
}

void from_json(const json& j, Matrix& m) {
  if (!j.is_array() || j.empty() || !j[0].is_array() || j[0].empty()) {
    throw ContractViolation("matrix must be a nonempty array of nonempty rows");
  }
  m = Matrix(j.size(), j[0].size());
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array() || j[r].size() != m.cols()) {
      throw ContractViolation("matrix row " + std::to_string(r + 1) + " has the wrong length");
    }
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (!j[r][c].is_number()) throw ContractViolation("matrix entries must be numbers");
      m(r, c) = j[r][c].get<double>();
    }
  }
}

void to_json(json& j, const IdentityReport& r) {
  json blocks = json::array();
  for (const auto& [label, v] : r.block_values) blocks.push_back({{"label", label}, {"value", v}});
  j = json{{"lhs", r.lhs},
           {"rhs", r.rhs},
           {"blocks", blocks},
           {"abs_residual", r.abs_residual},
           {"rel_residual", r.rel_residual}};
}

void from_json(const json& j, IdentityReport& r) {
  r.lhs = j.at("lhs").get<double>();
  r.rhs = j.at("rhs").get<double>();
  r.abs_residual = j.at("abs_residual").get<double>();
  r.rel_residual = j.at("rel_residual").get<double>();
  r.block_values.clear();
  for (const auto& b : j.at("blocks"))
    r.block_values.emplace_back(b.at("label").get<std::string>(), b.at("value").get<double>());
}

void to_json(json& j, const Condition& c) {
  j = json{{"label", c.label},   {"kind", to_string(c.kind)}, {"value", c.value},
           {"tolerance", c.tolerance}, {"pass", c.pass}, {"where", c.where},
           {"instances", c.instances}};
}

void from_json(const json& j, Condition& c) {
  c.label = j.at("label").get<std::string>();
  c.kind = j.at("kind").get<std::string>() == "equality" ? ConditionKind::equality
                                                         : ConditionKind::inequality;
  c.value = j.at("value").get<double>();
  c.tolerance = j.at("tolerance").get<double>();
  c.pass = j.at("pass").get<bool>();
  c.where = j.value("where", std::string{});
  c.instances = j.value("instances", std::size_t{0});
}

void to_json(json& j, const Certificate& c) {
  j = json{{"conditions", c.conditions},
           {"verdict", to_string(c.verdict)},
           {"probes", c.probes},
           {"tolerances", c.tolerance},
           {"notes", c.notes}};
}

void from_json(const json& j, Certificate& c) {
  c.conditions = j.at("conditions").get<std::vector<Condition>>();
  c.verdict = verdict_from(j.at("verdict").get<std::string>());
  c.probes = j.at("probes").get<std::vector<std::size_t>>();
  c.tolerance = j.at("tolerances").get<TolerancePolicy>();
  c.notes = j.value("notes", std::vector<std::string>{});
}

void to_json(json& j, const PsdReport& r) {
  j = json{{"psd", r.psd},
           {"min_eigenvalue", r.min_eigenvalue},
           {"eigenvalues", r.eigenvalues},
           {"leading_minors", r.leading_minors},
           {"leading_minor_signs", r.leading_minor_signs},
           {"floor", r.floor},
           {"scale", r.scale}};
}

void to_json(json& j, const WindowValue& w) {
  j = json{{"y_start", w.y_start}, {"z_start", w.z_start}, {"value", w.value}};
}

void to_json(json& j, const ConvexityVerdict& v) {
  j = json{{"order_y", v.order_y},         {"order_z", v.order_z},
           {"convex", v.convex},           {"nabla_convex", v.nabla_convex},
           {"worst_delta", v.worst_delta}, {"worst_nabla", v.worst_nabla},
           {"windows", v.windows}};
}

void to_json(json& j, const CmVerdict& v) {
  j = json{{"verified", v.verified}, {"worst_value", v.worst_value}, {"worst_y", v.worst_y},
           {"worst_z", v.worst_z},   {"worst_i", v.worst_i},         {"worst_j", v.worst_j},
           {"checks", v.checks}};
}

void to_json(json& j, const MonotonicityClaim& c) {
  j = json{{"order_y", c.order_y},
           {"order_z", c.order_z},
           {"all_orders", c.all_orders},
           {"region", {{"y", interval_json(c.region.y)}, {"z", interval_json(c.region.z)}}},
           {"verified", c.verified},
           {"note", c.note}};
}

void to_json(json& j, const BracketResult& r) {
  j = json{{"ratio", r.ratio},
           {"range_min", r.range_min},
           {"range_max", r.range_max},
           {"bracketed", r.bracketed},
           {"witness", {{"y", r.witness_y}, {"z", r.witness_z}, {"value", r.witness_value}}},
           {"grid", r.grid}};
}

void to_json(json& j, const PowerMeanResult& r) {
  j = json{{"value", r.value},         {"lower", r.lower},       {"upper", r.upper},
           {"bracketed", r.bracketed}, {"lambda_p", r.lambda_p}, {"lambda_q", r.lambda_q}};
}

void to_json(json& j, const GramResult& r) {
  j = json{{"exponents", r.exponents}, {"matrix", r.matrix}, {"psd", r.psd}};
}

void to_json(json& j, const LyapunovResult& r) {
  j = json{{"applicable", r.applicable}, {"holds", r.holds},       {"residual", r.residual},
           {"lambda_r", r.lambda_r},     {"lambda_s", r.lambda_s}, {"lambda_t", r.lambda_t}};
}

void to_json(json& j, const StressResult& r) {
  j = json{{"worst", r.worst}, {"worst_index", r.worst_index}, {"values", r.values}};
}

}  // namespace nabla_kit
