#include "hecke/report.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "hecke/catalog.hpp"
#include "hecke/errors.hpp"
#include "hecke/jolissaint.hpp"
#include "hecke/operator.hpp"
#include "hecke/random.hpp"
#include "hecke/rd.hpp"

namespace hecke {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::map<std::string, std::set<std::string>, std::less<>>& command_keys() {
  static const std::map<std::string, std::set<std::string>, std::less<>> keys{
      {"pairs", {}},
      {"enumerate", {"radius"}},
      {"degrees", {"radius", "probes"}},
      {"convolve", {"input"}},
      {"normest", {"f", "radius"}},
      {"rd-scan", {"operator_samples", "k_radius_factor", "operator_radius_factor", "coefficient_max"}},
      {"transfer-check", {"f", "k", "radius", "trials"}},
      {"jolissaint", {"f", "f2", "alpha", "q"}},
      {"validate-length", {"radius"}},
  };
  return keys;
}

const std::set<std::string> kGeneralKeys{"pair", "length", "seed", "mode", "out", "radii", "samples", "tol", "max_iter"};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

// Line of every "section.key" entry; property_tree drops positions.
std::map<std::string, int> key_lines(std::string_view text) {
  std::map<std::string, int> lines;
  std::istringstream in{std::string(text)};
  std::string line, section;
  for (int no = 1; std::getline(in, line); ++no) {
    const std::string t = trim(line);
    if (t.empty() || t[0] == ';' || t[0] == '#') continue;
    if (t.front() == '[' && t.back() == ']') {
      section = trim(std::string_view(t).substr(1, t.size() - 2));
      lines.emplace(section, no);
      continue;
    }
    const auto eq = t.find('=');
    if (eq != std::string::npos) lines.emplace(section + "." + trim(std::string_view(t).substr(0, eq)), no);
  }
  return lines;
}

int line_of(const ExperimentConfig& c, const std::string& field) {
  const auto it = c.lines.find(field);
  return it == c.lines.end() ? 0 : it->second;
}

[[noreturn]] void bad_value(const ExperimentConfig& c, const std::string& field, const std::string& why) {
  throw ConfigError(field + ": " + why, field, line_of(c, field));
}

double to_number(const ExperimentConfig& c, const std::string& field, const std::string& v) {
  double x = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc{} || p != v.data() + v.size()) bad_value(c, field, "expected a number, got '" + v + "'");
  return x;
}

long long to_integer(const ExperimentConfig& c, const std::string& field, const std::string& v, long long lo) {
  long long x = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc{} || p != v.data() + v.size()) bad_value(c, field, "expected an integer, got '" + v + "'");
  if (x < lo) bad_value(c, field, "must be at least " + std::to_string(lo));
  return x;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

class CsvWriter {
 public:
  CsvWriter(const fs::path& path, const std::vector<std::string>& header) : out_(path) {
    if (!out_) throw std::runtime_error("cannot write " + path.string());
    row(header);
  }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << csv_field(cells[i]);
    out_ << '\n';
  }

 private:
  std::ofstream out_;
};

struct Context {
  std::string command;
  const ExperimentConfig& config;
  RunOutcome outcome;

  fs::path artifact(const std::string& name) {
    fs::create_directories(config.out_dir);
    auto p = config.out_dir / name;
    outcome.artifacts.push_back(p);
    return p;
  }
  void write_json(const std::string& name, json result) {
    json doc{{"command", command}, {"config", to_json(config)}, {"result", std::move(result)}};
    std::ofstream(artifact(name)) << doc.dump(2) << '\n';
  }
  std::string option(const std::string& key, const std::string& fallback = {}) const {
    const auto it = config.options.find(key);
    return it == config.options.end() ? fallback : it->second;
  }
  bool has(const std::string& key) const { return config.options.contains(key); }
  std::string field(const std::string& key) const { return command + "." + key; }
  std::uint64_t seed() const {
    if (!config.seed) throw ConfigError("a seed is required for sampling (general.seed or --seed)", "general.seed");
    return *config.seed;
  }
  double radius(double fallback) const {
    if (has("radius")) return to_number(config, field("radius"), option("radius"));
    return config.radii.empty() ? fallback : config.radii.back();
  }
  PowerIterationOptions power() const {
    PowerIterationOptions p;
    p.tol = config.tol;
    p.max_iter = config.max_iter;
    p.seed = config.seed.value_or(0);
    return p;
  }
};

PairPtr make_pair(const ExperimentConfig& c) { return build_pair(c.pair, c.params); }

json load_document(const Context& ctx, const std::string& key) {
  const std::string v = ctx.option(key);
  if (v.empty()) throw ConfigError("missing required key", ctx.field(key), 0);
  try {
    if (v.front() == '{' || v.front() == '[') return json::parse(v);
    fs::path p = v.front() == '@' ? fs::path(v.substr(1)) : fs::path(v);
    if (p.is_relative()) p = ctx.config.base_dir / p;
    std::ifstream in(p);
    if (!in) throw ConfigError("cannot read " + p.string(), ctx.field(key), line_of(ctx.config, ctx.field(key)));
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what(), ctx.field(key), line_of(ctx.config, ctx.field(key)));
  }
}

template <class Scalar>
Scalar coefficient(const json& re, const json& im) {
  auto part = [](const json& v) -> Rational {
    if (v.is_null()) return Rational(0);
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long>());
    if constexpr (ScalarTraits<Scalar>::exact) {
      throw ConfigError("exact mode needs rational strings or integers as coefficients", "terms");
    } else {
      Rational q;
      q = v.get<double>();
      return q;
    }
  };
  if constexpr (ScalarTraits<Scalar>::exact) {
    return ExactComplex(part(re), part(im));
  } else {
    auto d = [&](const json& v) { return v.is_number() ? v.get<double>() : to_double(part(v)); };
    return {re.is_null() ? 0.0 : d(re), im.is_null() ? 0.0 : d(im)};
  }
}

GroupElement key_element(const PairPtr& pair, const json& key) {
  if (!key.is_array()) throw ConfigError("term key must be an array of components", "terms");
  std::vector<std::string> comps;
  for (const auto& c : key) comps.push_back(c.is_string() ? c.get<std::string>() : c.dump());
  GroupElement g;
  try {
    g = element_from_components(pair->backend(), comps);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("bad term key: ") + e.what(), "terms");
  }
  if (!pair->in_group(g)) throw ConfigError("term key " + key.dump() + " is not in the group of " + pair->name(), "terms");
  return g;
}

void check_pair(const PairPtr& pair, const json& doc) {
  if (doc.contains("pair") && doc["pair"].get<std::string>() != pair->name())
    throw ConfigError("element belongs to pair '" + doc["pair"].get<std::string>() + "', expected '" +
                          pair->name() + "'",
                      "pair");
  if (!doc.contains("terms") || !doc["terms"].is_array()) throw ConfigError("element needs a terms array", "terms");
}

template <class Scalar>
json scalar_json(const Scalar& c) {
  if constexpr (ScalarTraits<Scalar>::exact) return {{"re", to_string(c.re)}, {"im", to_string(c.im)}};
  else return {{"re", c.real()}, {"im", c.imag()}};
}

template <class Scalar>
BasicHeckeElement<Scalar> element_for(const Context& ctx, const PairPtr& pair, const std::string& key) {
  try {
    return element_from_json<Scalar>(pair, load_document(ctx, key));
  } catch (const ConfigError& e) {
    if (e.field() == ctx.field(key)) throw;
    throw ConfigError(std::string(e.what()), ctx.field(key), line_of(ctx.config, ctx.field(key)));
  }
}

std::string dims(std::size_t r, std::size_t c) { return std::to_string(r) + "x" + std::to_string(c); }

// ---------------------------------------------------------------- commands

void cmd_pairs(Context& ctx) {
  const auto list = catalog_list();
  CsvWriter csv(ctx.artifact("pairs.csv"),
                {"name", "rd_status", "length", "finite_subgroup", "params", "description"});
  json arr = json::array();
  for (const auto& d : list) {
    csv.row({d.name, to_string(d.rd_status), d.has_length ? d.length_name : "", d.finite_subgroup ? "1" : "0",
             d.params_help, d.description});
    arr.push_back({{"name", d.name},
                   {"rd_status", to_string(d.rd_status)},
                   {"length", d.has_length ? json(d.length_name) : json(nullptr)},
                   {"finite_subgroup", d.finite_subgroup},
                   {"params", d.params_help},
                   {"description", d.description}});
  }
  ctx.write_json("pairs.json", {{"pairs", arr}});
  ctx.outcome.summary = "pairs: " + std::to_string(list.size()) + " catalog pairs";
}

void cmd_enumerate(Context& ctx) {
  const auto pair = make_pair(ctx.config);
  const auto length = make_length(*pair, ctx.config.length);
  const double r = ctx.radius(5);
  const BallIndex ball = enumerate_ball(*pair, length, r);
  CsvWriter csv(ctx.artifact("enumerate.csv"), {"double_coset_key", "length", "degree"});
  for (const auto& e : ball.doubles())
    csv.row({e.key.rep.key_string(), format_double(e.length), std::to_string(e.degree)});
  ctx.write_json("enumerate.json", {{"pair", pair->name()},
                                    {"length", length.name()},
                                    {"radius", r},
                                    {"ball_double", ball.doubles().size()},
                                    {"ball_right", ball.rights().size()}});
  ctx.outcome.summary = "enumerate: radius " + format_double(r) + ", " + std::to_string(ball.doubles().size()) +
                        " double cosets, " + std::to_string(ball.rights().size()) + " right cosets";
}

std::vector<GroupElement> probes(const Context& ctx, const HeckePair& pair) {
  std::vector<GroupElement> out;
  if (ctx.has("probes")) {
    for (const auto& item : split(ctx.option("probes"), ';')) {
      if (item.empty()) continue;
      try {
        out.push_back(element_from_components(pair.backend(), split(item, ':')));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("bad probe '") + item + "': " + e.what(), ctx.field("probes"),
                          line_of(ctx.config, ctx.field("probes")));
      }
    }
  } else if (pair.name() == "gl2q") {
    for (const int p : {2, 3, 5, 7, 11, 13})
      out.push_back(GroupElement::matrix(2, {Rational(1), Rational(0), Rational(0), Rational(p)}));
  }
  if (out.empty())
    throw ConfigError("this length has no finite balls; list elements in 'probes' (components joined by ':', "
                      "separated by ';')",
                      ctx.field("probes"));
  return out;
}

void cmd_degrees(Context& ctx) {
  const auto pair = make_pair(ctx.config);
  const auto length = make_length(*pair, ctx.config.length);
  const DegreeFit fit = length.locally_finite() && !ctx.has("probes")
                            ? degree_growth_fit(*pair, length, ctx.radius(10))
                            : degree_growth_fit(*pair, length, probes(ctx, *pair));
  CsvWriter csv(ctx.artifact("degrees.csv"), {"double_coset_key", "length", "degree"});
  for (const auto& e : fit.table) csv.row({e.key.rep.key_string(), format_double(e.length), std::to_string(e.degree)});
  ctx.write_json("degrees.json", {{"pair", pair->name()},
                                  {"length", length.name()},
                                  {"entries", fit.table.size()},
                                  {"D", fit.D},
                                  {"t", fit.t},
                                  {"t_ceil", fit.t_ceil},
                                  {"minimal_D", fit.minimal_D},
                                  {"degenerate", fit.degenerate}});
  ctx.outcome.summary = "degrees: " + std::to_string(fit.table.size()) + " entries, D=" + format_double(fit.D) +
                        " t=" + format_double(fit.t);
}

template <class Scalar>
void convolve_with(Context& ctx) {
  const json doc = load_document(ctx, "input");
  if (!doc.contains("f1") || !doc.contains("f2"))
    throw ConfigError("convolve input needs members f1 and f2", ctx.field("input"), line_of(ctx.config, ctx.field("input")));
  ExperimentConfig pc = ctx.config;
  if (doc.contains("pair")) pc.pair = doc["pair"].get<std::string>();
  if (doc.contains("params"))
    for (const auto& item : doc["params"].items())
      pc.params[item.key()] = item.value().is_string() ? item.value().template get<std::string>() : item.value().dump();
  const auto pair = make_pair(pc);
  const auto f1 = element_from_json<Scalar>(pair, doc["f1"]);
  const auto f2 = element_from_json<Scalar>(pair, doc["f2"]);
  const auto product = convolve(f1, f2);
  ctx.write_json("convolve.json", {{"f1", element_to_json(f1)},
                                   {"f2", element_to_json(f2)},
                                   {"product", element_to_json(product)}});
  ctx.outcome.summary = "convolve: product has " + std::to_string(product.size()) + " terms";
}

template <class Scalar>
void normest_with(Context& ctx) {
  const auto pair = make_pair(ctx.config);
  const auto length = make_length(*pair, ctx.config.length);
  const auto f = element_for<Scalar>(ctx, pair, "f");
  std::vector<double> radii = ctx.has("radius") || ctx.config.radii.empty() ? std::vector<double>{ctx.radius(8)}
                                                                              : ctx.config.radii;
  const auto profile = norm_profile(f, length, radii, ctx.power());
  CsvWriter csv(ctx.artifact("normest.csv"),
                {"radius", "lower", "upper", "iterations", "residual", "converged"});
  json rows = json::array();
  for (const auto& b : profile) {
    csv.row({format_double(b.radius), format_double(b.lower), format_double(b.upper), std::to_string(b.iterations),
             format_double(b.residual), b.converged ? "1" : "0"});
    rows.push_back({{"radius", b.radius}, {"lower", b.lower}, {"upper", b.upper},
                    {"iterations", b.iterations}, {"residual", b.residual}, {"converged", b.converged}});
  }
  const NormBracket& last = profile.back();
  ctx.write_json("normest.json", {{"pair", pair->name()},
                                  {"f", element_to_json(f)},
                                  {"radius", last.radius},
                                  {"lower", last.lower},
                                  {"upper", last.upper},
                                  {"lower_method", last.lower_method},
                                  {"upper_method", last.upper_method},
                                  {"iterations", last.iterations},
                                  {"residual", last.residual},
                                  {"profile", rows}});
  ctx.outcome.summary = "normest: " + format_double(last.lower) + " <= ||lambda(f)|| <= " + format_double(last.upper) +
                        " (radius " + format_double(last.radius) + ")";
}

void cmd_rd_scan(Context& ctx) {
  const auto pair = make_pair(ctx.config);
  const auto length = make_length(*pair, ctx.config.length);
  ScanOptions opts;
  if (!ctx.config.radii.empty()) opts.radii = ctx.config.radii;
  opts.seed = ctx.seed();
  opts.samples = ctx.config.samples;
  opts.power = ctx.power();
  const auto& c = ctx.config;
  if (ctx.has("operator_samples"))
    opts.operator_samples = to_integer(c, ctx.field("operator_samples"), ctx.option("operator_samples"), 0);
  if (ctx.has("k_radius_factor"))
    opts.k_radius_factor = to_number(c, ctx.field("k_radius_factor"), ctx.option("k_radius_factor"));
  if (ctx.has("operator_radius_factor"))
    opts.operator_radius_factor = to_number(c, ctx.field("operator_radius_factor"), ctx.option("operator_radius_factor"));
  if (ctx.has("coefficient_max"))
    opts.coefficient_max = to_integer(c, ctx.field("coefficient_max"), ctx.option("coefficient_max"), 1);
  if (opts.k_radius_factor < 1) bad_value(c, ctx.field("k_radius_factor"), "must be at least 1");
  if (opts.operator_radius_factor < 0) bad_value(c, ctx.field("operator_radius_factor"), "must be nonnegative");

  const RDReport rep = haagerup_scan(pair, length, opts);
  CsvWriter csv(ctx.artifact("rd_scan.csv"), {"r", "ball_double", "ball_right", "max_ratio_exact",
                                              "max_ratio_operator_lower", "schur_upper", "fitted_C", "fitted_s"});
  json rows = json::array();
  for (const auto& r : rep.records) {
    csv.row({format_double(r.radius), std::to_string(r.ball_double), std::to_string(r.ball_right),
             format_double(r.max_ratio_exact), format_double(r.max_ratio_operator_lower), format_double(r.schur_upper),
             format_double(rep.fit_exact.C), format_double(rep.fit_exact.s)});
    rows.push_back({{"r", r.radius},
                    {"ball_double", r.ball_double},
                    {"ball_right", r.ball_right},
                    {"samples", r.samples},
                    {"max_ratio_exact_squared", to_string(r.max_ratio_exact_sq)},
                    {"max_ratio_exact", r.max_ratio_exact},
                    {"argmax_kind", r.argmax_kind},
                    {"max_ratio_operator_lower", r.max_ratio_operator_lower},
                    {"schur_upper", r.schur_upper}});
  }
  ctx.write_json("rd_scan.json", {{"pair", rep.pair},
                                  {"length", rep.length},
                                  {"rd_status", to_string(pair->rd_status())},
                                  {"seed", rep.seed},
                                  {"samples", rep.samples},
                                  {"fitted_C", rep.fit_exact.C},
                                  {"fitted_s", rep.fit_exact.s},
                                  {"fit_points", rep.fit_exact.points},
                                  {"operator_fitted_C", rep.fit_operator.C},
                                  {"operator_fitted_s", rep.fit_operator.s},
                                  {"haagerup_C", rep.haagerup_C},
                                  {"haagerup_s", rep.haagerup_s},
                                  {"records", rows}});
  ctx.outcome.summary = "rd-scan: " + std::to_string(rep.records.size()) + " radii, fitted C=" +
                        format_double(rep.fit_exact.C) + " s=" + format_double(rep.fit_exact.s);
}

void cmd_transfer_check(Context& ctx) {
  if (ctx.config.mode != CoefficientMode::exact)
    throw ConfigError("transfer-check runs in exact mode only", "general.mode", line_of(ctx.config, "general.mode"));
  const auto pair = make_pair(ctx.config);
  std::vector<std::pair<HeckeElement, L2Vector>> inputs;
  std::uint64_t seed = ctx.config.seed.value_or(0);
  if (ctx.has("f") || ctx.has("k")) {
    inputs.emplace_back(element_for<ExactComplex>(ctx, pair, "f"),
                        vector_from_json<ExactComplex>(pair, load_document(ctx, "k")));
  } else {
    seed = ctx.seed();
    const auto length = make_length(*pair, ctx.config.length);
    const BallIndex ball = enumerate_ball(*pair, length, ctx.radius(2));
    for (std::size_t i = 0; i < ctx.config.samples; ++i)
      inputs.emplace_back(sample_f(pair, ball, seed, 0, i, ctx.config.samples, 10),
                          sample_k(pair, ball, seed, 1, i, 10));
  }
  CsvWriter csv(ctx.artifact("transfer_check.csv"), {"sample", "check", "relation", "lhs", "rhs", "passed"});
  std::size_t checks = 0, failed = 0, n = 0;
  json failures = json::array();
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const TransferReport rep = transfer_check(inputs[i].first, inputs[i].second, task_seed(seed, 2, i));
    n = rep.n;
    for (const auto& c : rep.checks) {
      ++checks;
      csv.row({std::to_string(i), c.name, c.relation, to_string(c.lhs), to_string(c.rhs), c.passed ? "1" : "0"});
      if (!c.passed) {
        ++failed;
        failures.push_back({{"sample", i}, {"check", c.name}, {"lhs", to_string(c.lhs)}, {"rhs", to_string(c.rhs)}});
      }
    }
  }
  std::size_t trials = ctx.has("trials") ? to_integer(ctx.config, ctx.field("trials"), ctx.option("trials"), 1) : 100;
  json cs = json::array();
  for (const std::size_t m : {n, n * n}) {
    const auto r = cauchy_schwarz_check(m, trials, seed);
    ++checks;
    const bool ok = r.bounded && r.equality_at_constant;
    if (!ok) {
      ++failed;
      failures.push_back({{"check", "cauchy-schwarz c(" + std::to_string(m) + ")"}});
    }
    cs.push_back({{"m", m},
                  {"max_ratio", to_string(r.max_ratio)},
                  {"constant_ratio", to_string(r.constant_ratio)},
                  {"passed", ok}});
  }
  ctx.write_json("transfer_check.json", {{"pair", pair->name()},
                                         {"n", n},
                                         {"samples", inputs.size()},
                                         {"checks", checks},
                                         {"failed", failed},
                                         {"passed", failed == 0},
                                         {"cauchy_schwarz", cs},
                                         {"failures", failures}});
  ctx.outcome.summary = "transfer-check: " + std::to_string(checks - failed) + "/" + std::to_string(checks) +
                        " identities hold (n=" + std::to_string(n) + ")";
  if (failed) ctx.outcome.exit_code = 2;
}

template <class Scalar>
void jolissaint_with(Context& ctx) {
  const auto pair = make_pair(ctx.config);
  const auto length = make_length(*pair, ctx.config.length);
  const auto f = element_for<Scalar>(ctx, pair, "f");
  Rational alpha = make_rational(1, 2);
  int q = 1;
  if (ctx.has("alpha")) {
    try {
      alpha = parse_rational(ctx.option("alpha"));
    } catch (const std::invalid_argument&) {
      bad_value(ctx.config, ctx.field("alpha"), "expected a rational such as 1/2");
    }
    if (!(sgn(alpha) > 0 && alpha < 1)) bad_value(ctx.config, ctx.field("alpha"), "must lie in (0, 1)");
  }
  if (ctx.has("q")) q = static_cast<int>(to_integer(ctx.config, ctx.field("q"), ctx.option("q"), 1));

  const NuResult res = nu(f, length, alpha, q, ctx.power());
  CsvWriter csv(ctx.artifact("jolissaint.csv"), {"N", "rho", "block_dims"});
  for (const auto& r : res.profile)
    csv.row({std::to_string(r.N), format_double(r.rho),
             dims(r.lower_rows, r.lower_cols) + ";" + dims(r.upper_rows, r.upper_cols)});
  json result{{"pair", pair->name()}, {"length", length.name()}, {"alpha", to_string(alpha)}, {"q", q},
              {"nu", res.nu},         {"argmax_N", res.argmax_N}, {"N_max", res.N_max}};
  if (ctx.has("f2")) {
    const auto f2 = element_for<Scalar>(ctx, pair, "f2");
    const auto s = submultiplicativity_check(f, f2, length, alpha, q);
    result["submultiplicativity"] = {{"lhs", s.lhs},
                                     {"rhs", s.rhs},
                                     {"nu_half_f1", s.nu_half_f1},
                                     {"nu_half_f2", s.nu_half_f2},
                                     {"norm_upper_f1", s.norm_f1},
                                     {"norm_upper_f2", s.norm_f2},
                                     {"passed", s.passed}};
  }
  ctx.write_json("jolissaint.json", result);
  ctx.outcome.summary = "jolissaint: nu=" + format_double(res.nu) + " at N=" + std::to_string(res.argmax_N);
}

void cmd_validate_length(Context& ctx) {
  const auto pair = make_pair(ctx.config);
  const auto length = make_length(*pair, ctx.config.length);
  std::mt19937_64 rng(ctx.seed());
  std::vector<GroupElement> sample;
  for (std::size_t i = 0; i < ctx.config.samples; ++i) sample.push_back(pair->random_element(rng));
  const LengthReport rep = validate_length(length, *pair, sample);
  CsvWriter csv(ctx.artifact("validate_length.csv"), {"axiom", "witnesses", "lhs", "rhs"});
  json violations = json::array();
  for (const auto& v : rep.violations) {
    std::string w;
    json wj = json::array();
    for (const auto& g : v.witnesses) {
      w += (w.empty() ? "" : " ") + g.key_string();
      wj.push_back(g.components());
    }
    csv.row({v.axiom, w, format_double(v.lhs), format_double(v.rhs)});
    violations.push_back({{"axiom", v.axiom}, {"witnesses", wj}, {"lhs", v.lhs}, {"rhs", v.rhs}});
  }
  ctx.write_json("validate_length.json", {{"pair", pair->name()},
                                          {"length", rep.length_name},
                                          {"sample_size", rep.sample_size},
                                          {"checks", rep.checks},
                                          {"passed", rep.passed()},
                                          {"violations", violations}});
  ctx.outcome.summary = "validate-length: " + rep.length_name + " " + (rep.passed() ? "passes" : "fails") + " " +
                        std::to_string(rep.checks) + " checks (" + std::to_string(rep.violations.size()) +
                        " violations)";
  if (!rep.passed()) ctx.outcome.exit_code = 2;
}

template <template <class> class Fn>
void by_mode(Context& ctx) {
  if (ctx.config.mode == CoefficientMode::exact) Fn<ExactComplex>::run(ctx);
  else Fn<std::complex<double>>::run(ctx);
}
template <class S>
struct Convolve { static void run(Context& c) { convolve_with<S>(c); } };
template <class S>
struct Normest { static void run(Context& c) { normest_with<S>(c); } };
template <class S>
struct Jolissaint { static void run(Context& c) { jolissaint_with<S>(c); } };

const std::map<std::string, std::function<void(Context&)>, std::less<>>& dispatch() {
  static const std::map<std::string, std::function<void(Context&)>, std::less<>> table{
      {"pairs", cmd_pairs},
      {"enumerate", cmd_enumerate},
      {"degrees", cmd_degrees},
      {"convolve", by_mode<Convolve>},
      {"normest", by_mode<Normest>},
      {"rd-scan", cmd_rd_scan},
      {"transfer-check", cmd_transfer_check},
      {"jolissaint", by_mode<Jolissaint>},
      {"validate-length", cmd_validate_length},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"pairs",  "enumerate", "degrees",        "convolve",  "normest",
                                              "rd-scan", "transfer-check", "jolissaint", "validate-length"};
  return names;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, p);
}

ExperimentConfig parse_config(std::string_view text, std::string_view command) {
  if (!command_keys().contains(command)) throw ConfigError("unknown command '" + std::string(command) + "'", "command");
  ExperimentConfig c;
  c.lines = key_lines(text);
  boost::property_tree::ptree tree;
  try {
    std::istringstream in{std::string(text)};
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError("malformed config: " + e.message(), "", static_cast<int>(e.line()));
  }

  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty())
      throw ConfigError("key '" + section + "' outside of a section", section, line_of(c, "." + section));
    const bool known = section == "general" || section == "pair" || command_keys().contains(section);
    if (!known) throw ConfigError("unknown section [" + section + "]", section, line_of(c, section));
    for (const auto& [key, value] : body) {
      const std::string field = section + "." + key;
      const std::string v = trim(value.data());
      if (section == "general") {
        if (!kGeneralKeys.contains(key)) bad_value(c, field, "unknown key");
      } else if (section != "pair") {
        const auto& allowed = command_keys().find(section)->second;
        if (!allowed.contains(key)) bad_value(c, field, "unknown key for command " + section);
      }
      if (section == "pair") c.params[key] = v;
      else if (section == command) c.options[key] = v;
      if (section != "general") continue;

      if (key == "pair") {
        c.pair = v;
      } else if (key == "length") {
        c.length = v;
      } else if (key == "seed") {
        c.seed = static_cast<std::uint64_t>(to_integer(c, field, v, 0));
      } else if (key == "mode") {
        if (v == "exact") c.mode = CoefficientMode::exact;
        else if (v == "float") c.mode = CoefficientMode::floating;
        else bad_value(c, field, "expected exact or float");
      } else if (key == "out") {
        c.out_dir = v;
      } else if (key == "radii") {
        for (const auto& item : split(v, ',')) c.radii.push_back(to_number(c, field, item));
        for (std::size_t i = 0; i < c.radii.size(); ++i) {
          if (c.radii[i] < 0) bad_value(c, field, "radii must be nonnegative");
          if (i && c.radii[i] <= c.radii[i - 1]) bad_value(c, field, "radii must be strictly increasing");
        }
      } else if (key == "samples") {
        c.samples = static_cast<std::size_t>(to_integer(c, field, v, 1));
      } else if (key == "tol") {
        c.tol = to_number(c, field, v);
        if (!(c.tol > 0)) bad_value(c, field, "must be positive");
      } else if (key == "max_iter") {
        c.max_iter = static_cast<int>(to_integer(c, field, v, 1));
      }
    }
  }
  return c;
}

ExperimentConfig load_config(const fs::path& path, std::string_view command) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string(), "config");
  std::stringstream buf;
  buf << in.rdbuf();
  ExperimentConfig c = parse_config(buf.str(), command);
  c.base_dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
  if (c.out_dir.is_relative()) c.out_dir = c.base_dir / c.out_dir;
  return c;
}

json to_json(const ExperimentConfig& c) {
  json params = json::object();
  for (const auto& [k, v] : c.params) params[k] = v;
  json options = json::object();
  for (const auto& [k, v] : c.options) options[k] = v;
  return {{"pair", c.pair},
          {"params", params},
          {"length", c.length},
          {"radii", c.radii},
          {"seed", c.seed ? json(*c.seed) : json(nullptr)},
          {"samples", c.samples},
          {"tol", c.tol},
          {"max_iter", c.max_iter},
          {"mode", c.mode == CoefficientMode::exact ? "exact" : "float"},
          {"out", c.out_dir.generic_string()},
          {"options", options}};
}

template <class Scalar>
json element_to_json(const BasicHeckeElement<Scalar>& f) {
  json terms = json::array();
  for (const auto& [k, c] : f.terms()) {
    json t = scalar_json(c);
    t["key"] = k.rep.components();
    terms.push_back(t);
  }
  json params = json::object();
  if (f.pair())
    for (const auto& [k, v] : f.pair()->params()) params[k] = v;
  return {{"pair", f.pair() ? f.pair()->name() : ""}, {"params", params}, {"terms", terms}};
}

template <class Scalar>
json vector_to_json(const BasicL2Vector<Scalar>& xi) {
  json terms = json::array();
  for (const auto& [k, c] : xi.terms()) {
    json t = scalar_json(c);
    t["key"] = k.rep.components();
    terms.push_back(t);
  }
  json params = json::object();
  if (xi.pair())
    for (const auto& [k, v] : xi.pair()->params()) params[k] = v;
  return {{"pair", xi.pair() ? xi.pair()->name() : ""}, {"params", params}, {"terms", terms}};
}

template <class Scalar>
BasicHeckeElement<Scalar> element_from_json(const PairPtr& pair, const json& doc) {
  check_pair(pair, doc);
  BasicHeckeElement<Scalar> f(pair);
  try {
    for (const auto& t : doc["terms"])
      f.add(key_element(pair, t.at("key")), coefficient<Scalar>(t.value("re", json()), t.value("im", json())));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed term: ") + e.what(), "terms");
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("bad coefficient: ") + e.what(), "terms");
  }
  return f;
}

template <class Scalar>
BasicL2Vector<Scalar> vector_from_json(const PairPtr& pair, const json& doc) {
  check_pair(pair, doc);
  BasicL2Vector<Scalar> xi(pair);
  try {
    for (const auto& t : doc["terms"])
      xi.add(key_element(pair, t.at("key")), coefficient<Scalar>(t.value("re", json()), t.value("im", json())));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed term: ") + e.what(), "terms");
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("bad coefficient: ") + e.what(), "terms");
  }
  return xi;
}

template json element_to_json(const HeckeElement&);
template json element_to_json(const FloatHeckeElement&);
template json vector_to_json(const L2Vector&);
template json vector_to_json(const FloatL2Vector&);
template HeckeElement element_from_json(const PairPtr&, const json&);
template FloatHeckeElement element_from_json(const PairPtr&, const json&);
template L2Vector vector_from_json(const PairPtr&, const json&);
template FloatL2Vector vector_from_json(const PairPtr&, const json&);

RunOutcome run(std::string_view command, const ExperimentConfig& config, std::ostream& out) {
  Context ctx{std::string(command), config, {}};
  auto fail = [&](int code, const std::string& kind, const std::string& message, const std::string& field, int line) {
    json doc{{"status", "error"}, {"exit_code", code}, {"command", ctx.command}, {"error", kind}, {"message", message}};
    if (!field.empty()) doc["field"] = field;
    if (line > 0) doc["line"] = line;
    doc["config"] = to_json(config);
    out << doc.dump() << '\n';
    try {
      fs::create_directories(config.out_dir);
      std::ofstream(config.out_dir / "failure.json") << doc.dump(2) << '\n';
    } catch (const std::exception&) {
      // The out directory itself may be the problem; stdout already has the record.
    }
    ctx.outcome.exit_code = code;
    ctx.outcome.summary = message;
    return ctx.outcome;
  };
  const auto it = dispatch().find(command);
  if (it == dispatch().end()) return fail(2, "usage", "unknown command '" + ctx.command + "'", "command", 0);
  try {
    it->second(ctx);
  } catch (const ConfigError& e) {
    return fail(2, "config", e.what(), e.field(), e.line());
  } catch (const BudgetExceeded& e) {
    return fail(2, "budget", e.what(), "", 0);
  } catch (const Unsupported& e) {
    return fail(2, "unsupported", e.what(), "", 0);
  } catch (const AuditFailure& e) {
    return fail(1, "audit", e.what(), "", 0);
  } catch (const std::invalid_argument& e) {
    return fail(2, "invalid", e.what(), "", 0);
  } catch (const std::exception& e) {
    return fail(1, "internal", e.what(), "", 0);
  }
  out << ctx.outcome.summary << '\n';
  if (ctx.outcome.exit_code == 2) {
    json doc{{"status", "failed-checks"}, {"exit_code", 2}, {"command", ctx.command}, {"message", ctx.outcome.summary}};
    doc["config"] = to_json(config);
    out << doc.dump() << '\n';
    std::ofstream(config.out_dir / "failure.json") << doc.dump(2) << '\n';
  }
  return ctx.outcome;
}

}  // namespace hecke
