#include "nabla_kit/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "nabla_kit/errors.hpp"

namespace nabla_kit::cli {

namespace {

// ------------------------------------------------------------ input access

const json& need(const json& in, const char* key) {
  if (!in.contains(key)) throw ContractViolation(std::string("missing input field '") + key + "'");
  return in.at(key);
}

double number(const json& j, const char* what) {
  if (!j.is_number()) throw ContractViolation(std::string("'") + what + "' must be a number");
  return j.get<double>();
}

std::vector<double> numbers(const json& j, const char* what) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (std::filesystem::is_regular_file(s)) return load_grid_csv(s);
    return parse_list(s);
  }
  if (!j.is_array()) throw ContractViolation(std::string("'") + what + "' must be a list of numbers");
  std::vector<double> out;
  for (const auto& v : j) out.push_back(number(v, what));
  return out;
}

std::vector<int> ints(const json& j, const char* what) {
  std::vector<int> out;
  auto one = [&](const json& v) {
    if (!v.is_number_integer()) throw ContractViolation(std::string("'") + what + "' must be integers");
    out.push_back(v.get<int>());
  };
  if (j.is_array()) {
    for (const auto& v : j) one(v);
  } else {
    one(j);
  }
  return out;
}

std::pair<int, int> order2(const json& in, int fallback = -1) {
  if (!in.contains("order")) {
    if (fallback < 0) throw ContractViolation("missing input field 'order'");
    return {fallback, fallback};
  }
  const auto o = ints(in.at("order"), "order");
  if (o.size() == 1) return {o[0], o[0]};
  if (o.size() == 2) return {o[0], o[1]};
  throw ContractViolation("'order' takes one or two integers");
}

int order1(const json& in) {
  const auto o = ints(need(in, "order"), "order");
  if (o.size() != 1) throw ContractViolation("'order' takes one integer here");
  return o[0];
}

Matrix matrix(const json& j) {
  if (j.is_string()) return load_weight_csv(j.get<std::string>());
  return j.get<Matrix>();
}

Grid1D grid(const json& j, const char* what) { return Grid1D(numbers(j, what)); }

Grid2D grid2(const json& in) {
  return Grid2D{grid(need(in, "grid"), "grid"), grid(need(in, "zgrid"), "zgrid")};
}

Interval interval(const json& in) {
  const auto v = numbers(need(in, "interval"), "interval");
  if (v.size() != 2) throw ContractViolation("'interval' takes two numbers");
  return Interval::closed(v[0], v[1]);
}

Rectangle rect(const json& in) {
  const auto v = numbers(need(in, "rect"), "rect");
  if (v.size() != 4) throw ContractViolation("'rect' takes four numbers a b c d");
  return Rectangle::closed(v[0], v[1], v[2], v[3]);
}

ParamRecord params(const json& j) {
  ParamRecord p;
  if (j.is_null()) return p;
  if (!j.is_object()) throw ContractViolation("'params' must be an object");
  for (const auto& [k, v] : j.items()) p[k] = number(v, k.c_str());
  return p;
}

double param_or(const ParamRecord& p, const char* key, double fallback) {
  auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

int int_param(const ParamRecord& p, const char* key, int fallback) {
  const double v = param_or(p, key, fallback);
  if (v != static_cast<int>(v)) throw ContractViolation(std::string("'") + key + "' must be an integer");
  return static_cast<int>(v);
}

QuadratureScheme scheme_of(const RunConfig& cfg) {
  QuadratureScheme s;
  if (cfg.input.contains("scheme")) s = cfg.input.at("scheme").get<QuadratureScheme>();
  if (cfg.scheme) s = *cfg.scheme;
  s.validate();
  return s;
}

TolerancePolicy tolerance_of(const RunConfig& cfg) {
  TolerancePolicy t = cfg.tolerance;
  if (cfg.input.contains("tolerance")) {
    const auto& j = cfg.input.at("tolerance");
    t.abs_tol = j.value("abs_tol", t.abs_tol);
    t.rel_tol = j.value("rel_tol", t.rel_tol);
    t.psd_eig_floor = j.value("psd_eig_floor", t.psd_eig_floor);
  }
  t.validate();
  return t;
}

std::pair<std::size_t, std::size_t> probes(const json& in) {
  if (!in.contains("probes")) return {21, 21};
  const auto p = ints(in.at("probes"), "probes");
  if (p.empty() || p.size() > 2 || p[0] < 2 || p.back() < 2) {
    throw ContractViolation("'probes' takes one or two integers >= 2");
  }
  return {static_cast<std::size_t>(p[0]), static_cast<std::size_t>(p.back())};
}

std::vector<std::string> labels(const Certificate& c) {
  std::vector<std::string> out;
  for (const auto& cond : c.conditions) out.push_back(cond.label);
  return out;
}

FunctionalSpec functional(const RunConfig& cfg, int default_order = -1) {
  const json& in = cfg.input;
  FunctionalSpec spec;
  spec.rect = rect(in);
  spec.kernel = parse_function_2d(need(in, "kernel"), spec.rect);
  const auto [M, N] = order2(in, default_order);
  spec.M = M;
  spec.N = N;
  spec.scheme = scheme_of(cfg);
  spec.validate();
  return spec;
}

MeanParams mean_params(const RunConfig& cfg) {
  MeanParams mp;
  mp.functional = functional(cfg);
  auto [k1, k2] = default_shifts(mp.functional.rect);
  if (cfg.input.contains("shift")) {
    const auto s = numbers(cfg.input.at("shift"), "shift");
    if (s.size() != 2) throw ContractViolation("'shift' takes two numbers k1 k2");
    k1 = s[0];
    k2 = s[1];
  }
  mp.k1 = k1;
  mp.k2 = k2;
  return mp;
}

// Certifies the functional and records a warning when it is not certified.
void note_certification(Report& rep, const FunctionalSpec& spec, const TolerancePolicy& tol) {
  const auto cert = certify_double_integral(spec, 21, 21, tol);
  rep.result["functional_verdict"] = to_string(cert.verdict);
  if (!cert.certified()) {
    rep.warnings.push_back("functional is " + to_string(cert.verdict) +
                           "; the positivity-based guarantees do not apply");
  }
}

// ---------------------------------------------------------------- commands

void cmd_diff(const RunConfig& cfg, Report& rep) {
  const json& in = cfg.input;
  const auto tol = tolerance_of(cfg);
  const bool two_d = in.contains("zgrid") || rep.kind == "2d";
  if (!two_d) {
    rep.kind = "1d";
    const Grid1D g = grid(need(in, "grid"), "grid");
    std::vector<double> values = in.contains("values")
                                     ? numbers(in.at("values"), "values")
                                     : sample(parse_function_1d(need(in, "function")), g);
    if (values.size() != g.size()) throw ContractViolation("one value per grid point required");
    const int full = static_cast<int>(g.size()) - 1;
    const double dd = divided_difference(g.points(), values);
    rep.result["divided_difference"] = dd;
    rep.result["nabla"] = (full % 2 == 0 ? 1.0 : -1.0) * dd;
    rep.result["full_order"] = full;
    const int m = in.contains("order") ? order1(in) : full;
    if (m < 0 || m > full) throw ContractViolation("order exceeds the grid");
    rep.result["classification"] = classify_sampled(g, values, m, tol);
    return;
  }
  rep.kind = "2d";
  const Grid2D g = grid2(in);
  const Matrix values =
      in.contains("values") ? matrix(in.at("values")) : sample(parse_function_2d(need(in, "function")), g);
  const int fm = static_cast<int>(g.ygrid.size()) - 1, fn = static_cast<int>(g.zgrid.size()) - 1;
  const double dd = divided_difference_2d(g.ygrid.points(), g.zgrid.points(), values);
  rep.result["divided_difference"] = dd;
  rep.result["nabla"] = ((fm + fn) % 2 == 0 ? 1.0 : -1.0) * dd;
  rep.result["full_order"] = {fm, fn};
  const auto [m, n] = in.contains("order") ? order2(in) : std::pair<int, int>{fm, fn};
  if (m < 0 || n < 0 || m > fm || n > fn) throw ContractViolation("order exceeds the grid");
  rep.result["classification"] = classify_sampled(g, values, m, n, tol);
}

void cmd_identity(const RunConfig& cfg, Report& rep) {
  const json& in = cfg.input;
  const std::string& kind = rep.kind;
  IdentityReport r;
  if (kind == "seq") {
    const auto p = numbers(need(in, "weights"), "weights");
    const auto a = numbers(need(in, "sequence"), "sequence");
    r = seq_identity(p, a, order1(in));
  } else if (kind == "func") {
    const auto p = numbers(need(in, "weights"), "weights");
    const Grid1D g = grid(need(in, "grid"), "grid");
    if (in.contains("values")) {
      r = func_identity(p, numbers(in.at("values"), "values"), g, order1(in));
    } else {
      r = func_identity(p, parse_function_1d(need(in, "function")), g, order1(in));
    }
  } else if (kind == "integral-1d") {
    const Interval iv = interval(in);
    r = integral_identity_1d(parse_function_1d(need(in, "kernel"), iv),
                             parse_function_1d(need(in, "function"), iv), iv.lo, iv.hi, order1(in),
                             scheme_of(cfg));
  } else if (kind == "double-sum") {
    const Grid2D g = grid2(in);
    const Matrix p = matrix(need(in, "matrix"));
    const auto [m, n] = order2(in);
    if (in.contains("values")) {
      r = double_sum_identity(p, matrix(in.at("values")), g, m, n);
    } else {
      r = double_sum_identity(p, parse_function_2d(need(in, "function")), g, m, n);
    }
  } else if (kind == "separable") {
    const Grid2D g = grid2(in);
    const auto [m, n] = order2(in);
    r = separable_double_sum_identity(matrix(need(in, "matrix")),
                                      parse_function_1d(need(in, "function_y")),
                                      parse_function_1d(need(in, "function_z")), g, m, n);
  } else if (kind == "double-integral" || kind == "corner") {
    const Rectangle R = rect(in);
    const auto [M, N] = order2(in);
    const auto P = parse_function_2d(need(in, "kernel"), R);
    const auto f = parse_function_2d(need(in, "function"), R);
    r = kind == "corner" ? corner_double_integral_identity(P, f, R, M, N, scheme_of(cfg))
                         : double_integral_identity(P, f, R, M, N, scheme_of(cfg));
  } else {
    throw ContractViolation("unknown identity kind '" + kind +
                            "' (seq, func, integral-1d, double-sum, separable, double-integral, corner)");
  }
  rep.result = r;
  const auto tol = tolerance_of(cfg);
  if (r.rel_residual > tol.rel_tol) {
    rep.warnings.push_back("relative residual exceeds rel_tol = " + std::to_string(tol.rel_tol));
  }
}

void cmd_certify(const RunConfig& cfg, Report& rep) {
  const json& in = cfg.input;
  const auto tol = tolerance_of(cfg);
  Certificate cert;
  if (rep.kind == "integral-1d") {
    const Interval iv = interval(in);
    MomentIndexing idx = MomentIndexing::from_zero;
    if (in.contains("indexing")) {
      const auto s = in.at("indexing").get<std::string>();
      if (s == "from_one") {
        idx = MomentIndexing::from_one;
      } else if (s != "from_zero") {
        throw ContractViolation("'indexing' must be from_zero or from_one");
      }
    }
    cert = certify_integral_1d(parse_function_1d(need(in, "kernel"), iv), iv.lo, iv.hi, order1(in),
                               probes(in).first, idx, tol, scheme_of(cfg));
  } else if (rep.kind == "double-sum") {
    const auto [m, n] = order2(in);
    cert = certify_double_sum(matrix(need(in, "matrix")), grid2(in), m, n, tol);
  } else if (rep.kind == "double-integral") {
    const auto [py, pz] = probes(in);
    cert = certify_double_integral(functional(cfg), py, pz, tol);
  } else {
    throw ContractViolation("unknown certify kind '" + rep.kind +
                            "' (integral-1d, double-sum, double-integral)");
  }
  rep.result = cert;
  rep.paper_conditions = labels(cert);
  for (const auto& n : cert.notes) rep.warnings.push_back(n);
  if (cert.verdict == Verdict::refuted) rep.exit_status = kExitRefuted;
  if (cert.verdict == Verdict::inconclusive) {
    rep.warnings.push_back("verdict is inconclusive: a condition misses its tolerance by less than 10x");
  }
}

std::vector<Function2D> function_list(const json& in, const Rectangle& R) {
  std::vector<Function2D> fs;
  if (in.contains("functions")) {
    for (const auto& f : in.at("functions")) fs.push_back(parse_function_2d(f, R));
  } else {
    fs.push_back(parse_function_2d(need(in, "function"), R));
  }
  return fs;
}

void cmd_functional(const RunConfig& cfg, Report& rep) {
  const auto spec = functional(cfg, 0);
  const auto fs = function_list(cfg.input, spec.rect);
  const auto r = positivity_stress(spec, fs);
  rep.result["values"] = r.values;
  rep.result["worst"] = r.worst;
  rep.result["worst_index"] = r.worst_index;
}

void cmd_mean(const RunConfig& cfg, Report& rep) {
  const json& in = cfg.input;
  const auto tol = tolerance_of(cfg);
  if (rep.kind == "power") {
    const auto spec = functional(cfg, 0);
    const auto r = power_mean(spec, number(need(in, "p"), "p"), number(need(in, "q"), "q"), tol);
    rep.result = r;
    if (!r.bracketed) rep.exit_status = kExitRefuted;
    return;
  }
  if (rep.kind == "mvt" || rep.kind == "cauchy") {
    const auto spec = functional(cfg);
    BracketResult r;
    if (rep.kind == "mvt") {
      r = mvt_localize(spec, parse_function_2d(need(in, "function"), spec.rect), 41, tol);
    } else {
      r = cauchy_ratio(spec, parse_function_2d(need(in, "function"), spec.rect),
                       parse_function_2d(need(in, "denominator"), spec.rect), 41, tol);
    }
    rep.result = r;
    note_certification(rep, spec, tol);
    if (!r.bracketed) rep.exit_status = kExitRefuted;
    return;
  }
  if (rep.kind == "mst") {
    const auto mp = mean_params(cfg);
    const double s = number(need(in, "s"), "s"), t = number(need(in, "t"), "t");
    rep.result["value"] = m_st_mean(mp, s, t);
    rep.result["s"] = s;
    rep.result["t"] = t;
    rep.result["shift"] = {mp.k1, mp.k2};
    note_certification(rep, mp.functional, tol);
    return;
  }
  throw ContractViolation("unknown mean kind '" + rep.kind + "' (mvt, cauchy, power, mst)");
}

void cmd_gram(const RunConfig& cfg, Report& rep) {
  const auto tol = tolerance_of(cfg);
  GramSpec gs{numbers(need(cfg.input, "exponents"), "exponents"), mean_params(cfg)};
  const auto r = gram_test(gs, tol);
  rep.result = r;
  rep.result["shift"] = {gs.params.k1, gs.params.k2};
  note_certification(rep, gs.params.functional, tol);
  if (!r.psd.psd) rep.exit_status = kExitRefuted;
}

void cmd_lyapunov(const RunConfig& cfg, Report& rep) {
  const json& in = cfg.input;
  const auto tol = tolerance_of(cfg);
  const auto mp = mean_params(cfg);
  const auto r = lyapunov_check(mp, number(need(in, "r"), "r"), number(need(in, "s"), "s"),
                                number(need(in, "t"), "t"), tol);
  rep.result = r;
  note_certification(rep, mp.functional, tol);
  if (!r.applicable) {
    rep.warnings.push_back("a Lambda value is nonpositive; the check does not apply");
  } else if (!r.holds) {
    rep.exit_status = kExitRefuted;
  }
}

void cmd_families(const RunConfig& cfg, Report& rep) {
  const json& in = cfg.input;
  const auto c1 = family_catalog_1d();
  const auto c2 = family_catalog_2d();
  if (rep.kind.empty() || rep.kind == "list") {
    rep.kind = "list";
    json list = json::array();
    for (const auto* cat : {&c1, &c2})
      for (const auto& e : cat->entries()) {
        json params = json::object();
        for (const auto& [k, v] : e.defaults) params[k] = v;
        list.push_back({{"name", e.name},
                        {"arity", e.arity},
                        {"description", e.description},
                        {"defaults", params},
                        {"claim", e.claim(e.defaults)}});
      }
    rep.result["families"] = list;
    return;
  }
  if (rep.kind != "verify") throw ContractViolation("unknown families kind '" + rep.kind + "' (list, verify)");
  const auto name = need(in, "family").get<std::string>();
  const auto p = params(in.value("params", json::object()));
  const auto tol = tolerance_of(cfg);
  if (c1.contains(name)) {
    const auto& e = c1.find(name);
    const auto resolved = c1.resolve(e, p);
    const auto claim = e.claim(resolved);
    const int m = in.contains("order") ? order1(in) : claim.order_y;
    const auto v = verify_cm_order(e.make_1d(resolved), grid(need(in, "grid"), "grid"), m, tol);
    rep.result["verdict"] = v;
    rep.result["claim"] = claim;
    if (!v.verified) rep.exit_status = kExitRefuted;
    return;
  }
  const auto& e = c2.find(name);
  const auto resolved = c2.resolve(e, p);
  const auto claim = e.claim(resolved);
  const auto [m, n] = in.contains("order") ? order2(in) : std::pair<int, int>{claim.order_y, claim.order_z};
  const auto v = verify_cm_order(e.make_2d(resolved), grid2(in), m, n, tol);
  rep.result["verdict"] = v;
  rep.result["claim"] = claim;
  if (!v.verified) rep.exit_status = kExitRefuted;
}

// -------------------------------------------------------------- functions

Function2D polynomial_2d(const Matrix& c) {
  return Function2D("polynomial2", Rectangle{}, 64, 64, [c](int i, int j, double y, double z) {
    CompensatedSum acc;
    for (std::size_t k = static_cast<std::size_t>(i); k < c.rows(); ++k)
      for (std::size_t l = static_cast<std::size_t>(j); l < c.cols(); ++l) {
        if (c(k, l) == 0.0) continue;
        acc.add(c(k, l) * falling_factorial(static_cast<double>(k), static_cast<unsigned>(i)) *
                std::pow(y, static_cast<double>(k) - i) *
                falling_factorial(static_cast<double>(l), static_cast<unsigned>(j)) *
                std::pow(z, static_cast<double>(l) - j));
      }
    return acc.value();
  });
}

std::string format_number(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

void render(std::ostream& os, const json& j, const std::string& prefix) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) render(os, v, prefix.empty() ? k : prefix + "." + k);
    return;
  }
  if (j.is_array() && !j.empty() && (j[0].is_object() || j[0].is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) render(os, j[i], prefix + "[" + std::to_string(i) + "]");
    return;
  }
  os << prefix << ": ";
  if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) os << ", ";
      os << (j[i].is_number_float() ? format_number(j[i].get<double>()) : j[i].dump());
    }
  } else if (j.is_number_float()) {
    os << format_number(j.get<double>());
  } else if (j.is_string()) {
    os << j.get<std::string>();
  } else {
    os << j.dump();
  }
  os << "\n";
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& cell, double& out) {
  const std::string t = trim(cell);
  if (t.empty()) return false;
  const char* first = t.data();
  if (*first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, t.data() + t.size(), out);
  return ec == std::errc() && ptr == t.data() + t.size() && std::isfinite(out);
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(line);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ContractViolation("cannot open '" + path + "'");
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

}  // namespace

// ------------------------------------------------------------------ public

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& cell : split(text, ',')) {
    double v = 0.0;
    if (!parse_double(cell, v)) throw ContractViolation("not a number: '" + trim(cell) + "'");
    out.push_back(v);
  }
  if (out.empty()) throw ContractViolation("empty number list");
  return out;
}

Matrix parse_weight_csv(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream is(text);
  std::string line;
  std::size_t lineno = 0;
  bool header_allowed = true;
  while (std::getline(is, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto cells = split(line, ',');
    std::vector<double> row;
    bool numeric = true;
    for (const auto& c : cells) {
      double v = 0.0;
      if (!parse_double(c, v)) {
        numeric = false;
        break;
      }
      row.push_back(v);
    }
    if (!numeric) {
      if (header_allowed) {
        header_allowed = false;
        continue;
      }
      throw ContractViolation("CSV line " + std::to_string(lineno) + ": non-numeric cell");
    }
    header_allowed = false;
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ContractViolation("CSV line " + std::to_string(lineno) + ": ragged row (" +
                              std::to_string(row.size()) + " cells, expected " +
                              std::to_string(rows.front().size()) + ")");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ContractViolation("CSV input contains no numeric rows");
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c];
  return m;
}

Matrix load_weight_csv(const std::string& path) { return parse_weight_csv(read_file(path)); }

std::vector<double> load_grid_csv(const std::string& path) {
  const Matrix m = load_weight_csv(path);
  if (m.rows() != 1 && m.cols() != 1) {
    throw ContractViolation("grid CSV '" + path + "' must be a single row or column");
  }
  return {m.data().begin(), m.data().end()};
}

Function1D parse_function_1d(const json& spec, std::optional<Interval> iv) {
  const auto cat = family_catalog_1d();
  if (spec.is_string()) {
    const auto name = spec.get<std::string>();
    if (name == "rodrigues") return parse_function_1d(json{{"family", name}}, iv);
    return cat.make_1d(name);
  }
  if (!spec.is_object()) throw ContractViolation("function spec must be a name or an object");
  if (spec.contains("scale")) {
    json rest = spec;
    rest.erase("scale");
    return scale(number(spec.at("scale"), "scale"), parse_function_1d(rest, iv));
  }
  if (spec.contains("family")) {
    const auto name = spec.at("family").get<std::string>();
    const auto p = params(spec.value("params", json::object()));
    if (name == "rodrigues") {
      const Interval span = iv.value_or(Interval::closed(-1, 1));
      return rodrigues_weight(int_param(p, "M", 1), param_or(p, "a", span.lo), param_or(p, "b", span.hi));
    }
    return cat.make_1d(name, p);
  }
  if (spec.contains("constant")) return Function1D::constant(number(spec.at("constant"), "constant"));
  if (spec.contains("polynomial")) {
    return Function1D::polynomial(Polynomial{numbers(spec.at("polynomial"), "polynomial")});
  }
  if (spec.contains("tabulated")) {
    const auto& t = spec.at("tabulated");
    return Function1D::tabulated(grid(need(t, "grid"), "grid"), numbers(need(t, "values"), "values"));
  }
  throw ContractViolation("unrecognised 1D function spec: " + spec.dump());
}

Function2D parse_function_2d(const json& spec, std::optional<Rectangle> R) {
  const auto cat = family_catalog_2d();
  if (spec.is_string()) return parse_function_2d(json{{"family", spec.get<std::string>()}}, R);
  if (!spec.is_object()) throw ContractViolation("function spec must be a name or an object");
  if (spec.contains("scale")) {
    json rest = spec;
    rest.erase("scale");
    return scale(number(spec.at("scale"), "scale"), parse_function_2d(rest, R));
  }
  if (spec.contains("family")) {
    const auto name = spec.at("family").get<std::string>();
    const auto p = params(spec.value("params", json::object()));
    if (name == "rodrigues") {
      if (!R) throw ContractViolation("rodrigues kernel needs a rectangle");
      return rodrigues_kernel(int_param(p, "M", 1), int_param(p, "N", int_param(p, "M", 1)), *R);
    }
    if (name == "g0") return g0(int_param(p, "M", 0), int_param(p, "N", int_param(p, "M", 0)));
    if (name == "constant") return Function2D::constant(param_or(p, "c", 1.0));
    return cat.make_2d(name, p);
  }
  if (spec.contains("constant")) return Function2D::constant(number(spec.at("constant"), "constant"));
  if (spec.contains("polynomial")) return polynomial_2d(matrix(spec.at("polynomial")));
  if (spec.contains("tensor")) {
    const auto& t = spec.at("tensor");
    if (!t.is_array() || t.size() != 2) throw ContractViolation("'tensor' takes two 1D specs");
    std::optional<Interval> iy, iz;
    if (R) {
      iy = R->y;
      iz = R->z;
    }
    return tensor(parse_function_1d(t[0], iy), parse_function_1d(t[1], iz));
  }
  if (spec.contains("tabulated")) {
    const auto& t = spec.at("tabulated");
    return Function2D::tabulated(
        Grid2D{grid(need(t, "grid"), "grid"), grid(need(t, "zgrid"), "zgrid")},
        matrix(need(t, "values")));
  }
  throw ContractViolation("unrecognised 2D function spec: " + spec.dump());
}

const std::vector<std::string>& commands() {
  static const std::vector<std::string> c{"diff", "identity", "certify", "functional",
                                          "mean", "gram",     "lyapunov", "families"};
  return c;
}

json Report::to_json_untimed() const {
  json j{{"schema", 1},
         {"command", command},
         {"kind", kind},
         {"result", result},
         {"warnings", warnings},
         {"paper_conditions", paper_conditions},
         {"exit_status", exit_status}};
  if (!error.empty()) j["error"] = error;
  return j;
}

json Report::to_json() const {
  json j = to_json_untimed();
  j["timing"] = {{"elapsed_ms", elapsed_ms}};
  return j;
}

std::string Report::to_text() const {
  std::ostringstream os;
  os << "command: " << command;
  if (!kind.empty()) os << " (" << kind << ")";
  os << "\n";
  if (!error.empty()) os << "error: " << error << "\n";
  render(os, result, "");
  for (const auto& w : warnings) os << "warning: " << w << "\n";
  os << "exit status: " << exit_status << "\n";
  return os.str();
}

Report run(const RunConfig& config) {
  Report rep;
  rep.command = config.command;
  rep.kind = config.input.value("kind", std::string{});
  const auto start = std::chrono::steady_clock::now();
  try {
    if (config.command == "diff") {
      cmd_diff(config, rep);
    } else if (config.command == "identity") {
      cmd_identity(config, rep);
    } else if (config.command == "certify") {
      cmd_certify(config, rep);
    } else if (config.command == "functional") {
      cmd_functional(config, rep);
    } else if (config.command == "mean") {
      cmd_mean(config, rep);
    } else if (config.command == "gram") {
      cmd_gram(config, rep);
    } else if (config.command == "lyapunov") {
      cmd_lyapunov(config, rep);
    } else if (config.command == "families") {
      cmd_families(config, rep);
    } else {
      throw ContractViolation("unknown command '" + config.command + "'");
    }
  } catch (const EvaluationError& e) {
    rep.error = e.what();
    rep.exit_status = kExitNumericalFailure;
  } catch (const NumericalError& e) {
    rep.error = e.what();
    rep.exit_status = kExitNumericalFailure;
  } catch (const std::exception& e) {
    // Contract, domain and capability errors, malformed JSON fields.
    rep.error = e.what();
    rep.exit_status = kExitInputError;
  }
  if (!rep.error.empty()) rep.result = json::object();
  rep.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

// ------------------------------------------------------------ command line

namespace {

struct Flags {
  std::string input, format = "text", output, kind, weights, sequence, values, matrix,
      values_matrix, kernel, function, exponents, indexing, family;
  std::vector<int> order, probes;
  std::vector<std::string> grids, kparams, fparams, params;
  std::vector<double> interval, rect, shift;
  std::optional<double> p, q, r, s, t, abs_tol, rel_tol;
  std::optional<int> quad_order, quad_panels;
};

void add_flags(CLI::App& sub, Flags& f) {
  sub.add_option("--input", f.input, "inline JSON object or path to a JSON file");
  sub.add_option("--format", f.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  sub.add_option("--output", f.output, "write the report to this file");
  sub.add_option("--kind", f.kind, "operation variant");
  sub.add_option("--order", f.order, "order m, or m n")->expected(1, 2);
  sub.add_option("--probes", f.probes, "probe count per axis")->expected(1, 2);
  sub.add_option("--weights", f.weights, "comma-separated weights p_i");
  sub.add_option("--sequence", f.sequence, "comma-separated sequence a_i");
  sub.add_option("--values", f.values, "comma-separated samples f(y_i)");
  sub.add_option("--matrix", f.matrix, "CSV file with the weight matrix p_ij");
  sub.add_option("--values-matrix", f.values_matrix, "CSV file with samples f(y_i, z_j)");
  sub.add_option("--grid", f.grids, "grid in y [and z]: CSV file or comma list")->expected(1, 2);
  sub.add_option("--kernel", f.kernel, "kernel family name");
  sub.add_option("--kparam", f.kparams, "kernel parameter key=value");
  sub.add_option("--function", f.function, "function family name");
  sub.add_option("--fparam", f.fparams, "function parameter key=value");
  sub.add_option("--family", f.family, "family name for 'families --kind verify'");
  sub.add_option("--param", f.params, "family parameter key=value");
  sub.add_option("--interval", f.interval, "a b")->expected(2);
  sub.add_option("--rect", f.rect, "a b c d")->expected(4);
  sub.add_option("--shift", f.shift, "k1 k2")->expected(2);
  sub.add_option("--exponents", f.exponents, "comma-separated exponents");
  sub.add_option("--indexing", f.indexing, "from_zero or from_one");
  sub.add_option("-p,--p", f.p, "exponent p");
  sub.add_option("-q,--q", f.q, "exponent q");
  sub.add_option("-r,--r", f.r, "exponent r");
  sub.add_option("-s,--s", f.s, "exponent s");
  sub.add_option("-t,--t", f.t, "exponent t");
  sub.add_option("--quad-order", f.quad_order, "Gauss-Legendre nodes per panel");
  sub.add_option("--quad-panels", f.quad_panels, "number of panels");
  sub.add_option("--abs-tol", f.abs_tol, "absolute tolerance");
  sub.add_option("--rel-tol", f.rel_tol, "relative tolerance");
}

json keyvals(const std::vector<std::string>& kv) {
  json out = json::object();
  for (const auto& s : kv) {
    const auto eq = s.find('=');
    double v = 0.0;
    if (eq == std::string::npos || !parse_double(s.substr(eq + 1), v)) {
      throw ContractViolation("parameter '" + s + "' must look like key=number");
    }
    out[trim(s.substr(0, eq))] = v;
  }
  return out;
}

json load_input(const std::string& text) {
  const std::string t = trim(text);
  if (t.empty()) return json::object();
  json j = t.front() == '{' ? json::parse(t) : json::parse(read_file(t));
  if (!j.is_object()) throw ContractViolation("--input must hold a JSON object");
  return j;
}

RunConfig to_config(const std::string& command, const Flags& f) {
  RunConfig cfg;
  cfg.command = command;
  cfg.input = load_input(f.input);
  json& in = cfg.input;
  if (!f.kind.empty()) in["kind"] = f.kind;
  if (!f.order.empty()) in["order"] = f.order;
  if (!f.probes.empty()) in["probes"] = f.probes;
  if (!f.weights.empty()) in["weights"] = parse_list(f.weights);
  if (!f.sequence.empty()) in["sequence"] = parse_list(f.sequence);
  if (!f.values.empty()) in["values"] = parse_list(f.values);
  if (!f.matrix.empty()) in["matrix"] = load_weight_csv(f.matrix);
  if (!f.values_matrix.empty()) in["values"] = load_weight_csv(f.values_matrix);
  if (!f.grids.empty()) {
    auto points = [](const std::string& g) {
      return std::filesystem::is_regular_file(g) ? load_grid_csv(g) : parse_list(g);
    };
    in["grid"] = points(f.grids[0]);
    if (f.grids.size() == 2) in["zgrid"] = points(f.grids[1]);
  }
  if (!f.kernel.empty()) in["kernel"] = {{"family", f.kernel}, {"params", keyvals(f.kparams)}};
  if (!f.function.empty()) in["function"] = {{"family", f.function}, {"params", keyvals(f.fparams)}};
  if (!f.family.empty()) in["family"] = f.family;
  if (!f.params.empty()) in["params"] = keyvals(f.params);
  if (!f.interval.empty()) in["interval"] = f.interval;
  if (!f.rect.empty()) in["rect"] = f.rect;
  if (!f.shift.empty()) in["shift"] = f.shift;
  if (!f.exponents.empty()) in["exponents"] = parse_list(f.exponents);
  if (!f.indexing.empty()) in["indexing"] = f.indexing;
  if (f.p) in["p"] = *f.p;
  if (f.q) in["q"] = *f.q;
  if (f.r) in["r"] = *f.r;
  if (f.s) in["s"] = *f.s;
  if (f.t) in["t"] = *f.t;
  if (f.quad_order || f.quad_panels) {
    QuadratureScheme s;
    if (in.contains("scheme")) s = in.at("scheme").get<QuadratureScheme>();
    if (f.quad_order) s.order = *f.quad_order;
    if (f.quad_panels) s.panels = *f.quad_panels;
    cfg.scheme = s;
  }
  cfg.tolerance = TolerancePolicy::from_environment();
  if (f.abs_tol) cfg.tolerance.abs_tol = *f.abs_tol;
  if (f.rel_tol) cfg.tolerance.rel_tol = *f.rel_tol;
  cfg.output_path = f.output;
  cfg.format = f.format == "json" ? Format::json : Format::text;
  return cfg;
}

}  // namespace

int main_entry(int argc, const char* const* argv) {
  CLI::App app{"nabla-kit: divided differences, weighted-sum identities and positivity certificates"};
  app.require_subcommand(1);
  Flags flags;
  std::vector<CLI::App*> subs;
  static const std::map<std::string, std::string> about{
      {"diff", "divided and nabla differences; sampled convexity classification"},
      {"identity", "evaluate both sides of a weighted-sum identity and its residual"},
      {"certify", "positivity certificate for a discrete or integral weight"},
      {"functional", "evaluate the weighted functional on a function"},
      {"mean", "power, mean-value and exponential-family means"},
      {"gram", "Gram matrix positive semidefiniteness"},
      {"lyapunov", "log-convexity check over an exponent triple or lattice"},
      {"families", "list catalog families or verify one on a grid"}};
  for (const auto& c : commands()) {
    auto* sub = app.add_subcommand(c, about.at(c));
    add_flags(*sub, flags);
    subs.push_back(sub);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }
  std::string command;
  for (auto* sub : subs)
    if (sub->parsed()) command = sub->get_name();

  Report rep;
  RunConfig cfg;
  try {
    cfg = to_config(command, flags);
    rep = run(cfg);
  } catch (const std::exception& e) {
    rep.command = command;
    rep.error = e.what();
    rep.exit_status = kExitInputError;
    cfg.format = flags.format == "json" ? Format::json : Format::text;
    cfg.output_path = flags.output;
  }
  const std::string body = cfg.format == Format::json ? rep.to_json().dump(2) + "\n" : rep.to_text();
  if (cfg.output_path.empty()) {
    std::cout << body;
  } else {
    std::ofstream out(cfg.output_path, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write '" << cfg.output_path << "'\n";
      return kExitInputError;
    }
    out << body;
  }
  if (!rep.error.empty()) std::cerr << "error: " << rep.error << "\n";
  return rep.exit_status;
}

}  // namespace nabla_kit::cli
