#include "marty/scenario.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <ostream>
#include <sstream>

#include "marty/blaschke.hpp"
#include "marty/corpus.hpp"
#include "marty/logderiv_expansion.hpp"
#include "marty/nevanlinna.hpp"

namespace marty {

using json = nlohmann::ordered_json;

namespace {

constexpr Command kAllCommands[] = {Command::fft_check,     Command::counting_check, Command::theorem2a,
                                    Command::theorem2b,     Command::theorem1_scan,  Command::sharpness,
                                    Command::estimates,     Command::harnack,        Command::expansion_dump};

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

std::string at_index(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

void require_object(const json& j, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path, "expected an object");
}

void reject_unknown(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw ConfigError(join(path, key), "unknown field");
  }
}

double as_double(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path, "expected a number");
  return j.get<double>();
}

long long as_integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ConfigError(path, "expected an integer");
  return j.get<long long>();
}

int as_int(const json& j, const std::string& path) {
  const long long v = as_integer(j, path);
  if (v < -1000000000LL || v > 1000000000LL) throw ConfigError(path, "integer out of range");
  return static_cast<int>(v);
}

cplx as_complex(const json& j, const std::string& path) {
  if (j.is_number()) return cplx{j.get<double>()};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return cplx{j[0].get<double>(), j[1].get<double>()};
  throw ConfigError(path, "expected a complex number [re, im] or a real number");
}

std::vector<cplx> as_complex_list(const json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError(path, "expected an array");
  std::vector<cplx> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_complex(j[i], at_index(path, i)));
  return out;
}

std::vector<int> as_int_list(const json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError(path, "expected an array of integers");
  std::vector<int> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_int(j[i], at_index(path, i)));
  return out;
}

RootList as_root_list(const json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError(path, "expected an array of {\"at\", \"mult\"} objects");
  std::vector<Root> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = at_index(path, i);
    require_object(j[i], p);
    reject_unknown(j[i], p, {"at", "mult"});
    if (!j[i].contains("at")) throw ConfigError(join(p, "at"), "missing");
    const int mult = j[i].contains("mult") ? as_int(j[i]["mult"], join(p, "mult")) : 1;
    if (mult < 1) throw ConfigError(join(p, "mult"), "must be >= 1");
    out.push_back({as_complex(j[i]["at"], join(p, "at")), mult});
  }
  return RootList(std::move(out));
}

RationalFunction parse_function(const json& j, const std::string& path) {
  require_object(j, path);
  reject_unknown(j, path, {"num", "den", "lead", "zeros", "poles"});
  const bool coefficient_form = j.contains("num") || j.contains("den");
  const bool factor_form = j.contains("lead") || j.contains("zeros") || j.contains("poles");
  if (coefficient_form == factor_form)
    throw ConfigError(path, "give either num/den coefficient lists or lead/zeros/poles factors");
  try {
    if (coefficient_form) {
      if (!j.contains("num")) throw ConfigError(join(path, "num"), "missing");
      const Polynomial num(as_complex_list(j["num"], join(path, "num")));
      const Polynomial den = j.contains("den") ? Polynomial(as_complex_list(j["den"], join(path, "den")))
                                               : Polynomial::constant(1.0);
      if (den.is_zero()) throw ConfigError(join(path, "den"), "denominator is identically zero");
      return RationalFunction(num, den);
    }
    const cplx lead = j.contains("lead") ? as_complex(j["lead"], join(path, "lead")) : cplx{1.0};
    const RootList zeros = j.contains("zeros") ? as_root_list(j["zeros"], join(path, "zeros")) : RootList{};
    const RootList poles = j.contains("poles") ? as_root_list(j["poles"], join(path, "poles")) : RootList{};
    if (lead == cplx{}) return RationalFunction();
    return RationalFunction::from_factors(lead, zeros, poles);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(path, e.what());
  }
}

FamilySpec parse_family(const json& j, const std::string& path) {
  require_object(j, path);
  reject_unknown(j, path, {"kind", "p", "m", "base", "indices", "members"});
  FamilySpec fam;
  if (!j.contains("kind") || !j["kind"].is_string()) throw ConfigError(join(path, "kind"), "expected a family kind string");
  try {
    fam.kind = family_kind_from_string(j["kind"].get<std::string>());
  } catch (const PreconditionError& e) {
    throw ConfigError(join(path, "kind"), e.what());
  }
  if (!j.contains("indices")) throw ConfigError(join(path, "indices"), "missing");
  fam.indices = as_int_list(j["indices"], join(path, "indices"));
  if (j.contains("p")) fam.param = as_int(j["p"], join(path, "p"));
  if (j.contains("m")) fam.param = as_int(j["m"], join(path, "m"));
  if (j.contains("base")) fam.base = as_complex(j["base"], join(path, "base"));
  if (j.contains("members")) {
    const std::string p = join(path, "members");
    if (!j["members"].is_array()) throw ConfigError(p, "expected an array of functions");
    for (std::size_t i = 0; i < j["members"].size(); ++i) fam.custom.push_back(parse_function(j["members"][i], at_index(p, i)));
  }
  try {
    fam.validate();
  } catch (const PreconditionError& e) {
    throw ConfigError(path, e.what());
  }
  return fam;
}

Command parse_command(const json& j) {
  if (!j.is_string()) throw ConfigError("command", "expected a command string");
  const std::string name = j.get<std::string>();
  for (Command c : kAllCommands)
    if (name == to_string(c)) return c;
  throw ConfigError("command", "unknown command '" + name + "'");
}

void need(bool present, const std::string& field, const std::string& why) {
  if (!present) throw ConfigError(field, why);
}

// Numeric constraints of the dispatched module, checked before running.
void validate_for_command(const ScenarioConfig& c) {
  const bool has_input = c.function.has_value() || c.corpus_count > 0;
  auto positive = [](int v, const char* field) {
    if (v < 1) throw ConfigError(field, "must be >= 1");
  };
  positive(c.k, "params.k");
  positive(c.m, "params.m");
  positive(c.p, "params.p");
  if (c.grid < 2) throw ConfigError("grid", "must be >= 2");
  if (!(c.tol > 0.0)) throw ConfigError("tol", "must be positive");
  try {
    c.quadrature.validate();
  } catch (const PreconditionError& e) {
    throw ConfigError("quadrature", e.what());
  }

  switch (c.command) {
    case Command::fft_check:
      need(has_input, "function", "fft-check needs a function or a corpus");
      if (!c.corpus_count) {
        if (!(c.r > 0.0)) throw ConfigError("geometry.r", "must be positive");
        if (!(std::abs(c.base) < c.r)) throw ConfigError("geometry.base", "must lie inside |z| < r");
      }
      break;
    case Command::counting_check:
      need(has_input, "function", "counting-check needs a function or a corpus");
      if (!c.corpus_count) {
        if (!(std::abs(c.base) < c.r && c.r < c.R && c.R < 1.0))
          throw ConfigError("geometry", "requires |base| < r < R < 1");
      }
      break;
    case Command::theorem2a:
    case Command::theorem2b:
    case Command::theorem1_scan:
      need(c.family.has_value(), "family", "this command needs a family");
      if (!(c.disk.radius > 0.0)) throw ConfigError("geometry.radius", "must be positive");
      if (c.command == Command::theorem1_scan && !(c.alpha > 1.0))
        throw ConfigError("params.alpha", "theorem1-scan requires alpha > 1");
      break;
    case Command::sharpness:
      if (c.example == "power_pole") {
        if (!(c.alpha > 0.0 && (c.alpha - 1.0) * c.p < c.k))
          throw ConfigError("params", "power_pole sharpness requires alpha > 0 and p < k/(alpha-1)");
      } else if (c.example == "shifted_power") {
        if (!(c.alpha > 0.0 && c.alpha <= 1.0)) throw ConfigError("params.alpha", "shifted_power requires 0 < alpha <= 1");
        for (int n : c.n_range)
          if (n <= c.k) throw ConfigError("params.n_range", "indices must exceed k");
      } else {
        throw ConfigError("params.example", "expected power_pole or shifted_power");
      }
      break;
    case Command::estimates:
    case Command::harnack:
      need(has_input, "function", "this command needs a function or a corpus");
      if (!c.corpus_count && !(0.0 < c.r && c.r < c.R && c.R < 1.0))
        throw ConfigError("geometry", "requires 0 < r < R < 1");
      break;
    case Command::expansion_dump:
      if (c.k > kMaxExpansionOrder) throw ConfigError("params.k", "must be <= " + std::to_string(kMaxExpansionOrder));
      break;
  }
}

struct Run {
  std::vector<ResultRecord> records;
  json residuals = json::object();
  std::string verdict;
  bool pass = true;
};

void run_fft(const ScenarioConfig& c, Run& run) {
  std::vector<CircleCase> cases;
  if (c.corpus_count > 0)
    cases = circle_corpus(c.seed, c.corpus_count);
  else
    cases.push_back({*c.function, c.r, c.base});

  double worst = 0.0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& cs = cases[i];
    const double res = check_first_fundamental(cs.f, cs.r, cs.base, c.quadrature);
    worst = std::max(worst, std::abs(res));
    run.records.push_back({static_cast<long long>(i), "fft_residual", res, c.tol, c.tol - std::abs(res)});
    if (!(std::abs(res) < c.tol)) run.pass = false;
  }
  run.residuals["max_abs_residual"] = worst;
  run.residuals["cases"] = cases.size();
}

void run_counting(const ScenarioConfig& c, Run& run) {
  std::vector<CountingCase> cases;
  if (c.corpus_count > 0)
    cases = counting_corpus(c.seed, c.corpus_count);
  else
    cases.push_back({*c.function, c.r, c.R, c.base});

  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& cs = cases[i];
    const double margin = check_counting_inequality(cs.f, cs.r, cs.R, cs.base);
    worst = std::min(worst, margin);
    run.records.push_back({static_cast<long long>(i), "counting_margin", margin, 0.0, margin});
    if (!(margin >= -1e-12)) run.pass = false;
  }
  run.residuals["min_margin"] = worst;
  run.residuals["cases"] = cases.size();
}

void record_report(const ConvergenceReport& report, const char* quantity, Run& run) {
  for (std::size_t i = 0; i < report.indices.size(); ++i)
    run.records.push_back({report.indices[i], quantity, report.sups[i], std::nullopt, std::nullopt});
  run.residuals["slope"] = report.slope;
  run.verdict = to_string(report.verdict);
  run.pass = report.verdict == Verdict::converges_to_zero;
}

void run_theorem2(const ScenarioConfig& c, Run& run) {
  ConvergenceThresholds th;
  th.grid = c.grid;
  try {
    if (c.command == Command::theorem2a)
      record_report(theorem2a_check(*c.family, c.k, c.m, c.disk, th), "sup_q", run);
    else
      record_report(theorem2b_check(*c.family, c.k, c.p, c.disk, th), "sup_d", run);
  } catch (const HolomorphyError& e) {
    run.verdict = "pole_error";
    run.records.push_back({0, "pole_order", static_cast<double>(e.order()), std::nullopt, std::nullopt});
    run.residuals["pole"] = {e.pole().real(), e.pole().imag()};
    run.residuals["message"] = e.what();
    run.pass = c.expect == Expectation::pole_error;
    return;
  }
  if (c.expect == Expectation::pole_error) run.pass = false;
}

void run_theorem1(const ScenarioConfig& c, Run& run) {
  ConvergenceThresholds th;
  th.grid = c.grid;
  const BoundednessScan scan = theorem1_scan(*c.family, c.k, c.alpha, c.disk, std::max(c.grid, 8), th);
  for (std::size_t i = 0; i < scan.indices.size(); ++i)
    run.records.push_back({scan.indices[i], "sup_F", scan.sups[i], std::nullopt, std::nullopt});
  run.verdict = to_string(scan.verdict);
  run.residuals["required_multiplicity"] = scan.required_multiplicity;
  run.residuals["warnings"] = scan.warnings;
  run.pass = c.expect == Expectation::unbounded ? scan.verdict == Boundedness::unbounded
                                                : scan.verdict == Boundedness::bounded;
}

void run_sharpness(const ScenarioConfig& c, Run& run) {
  if (c.example == "power_pole") {
    const SharpnessResult res = c.radii.empty() ? sharpness_power_pole(c.k, c.alpha, c.p)
                                                : sharpness_power_pole(c.k, c.alpha, c.p, c.radii);
    for (std::size_t i = 0; i < res.samples.size(); ++i)
      run.records.push_back({static_cast<long long>(i), "F", res.samples[i].value, std::nullopt, std::nullopt});
    run.residuals["predicted_slope"] = res.predicted_slope;
    run.residuals["fitted_slope"] = res.fitted_slope;
    run.residuals["relative_error"] = res.relative_error();
    run.pass = res.relative_error() <= 0.02;
    run.verdict = run.pass ? "slope_matches" : "slope_mismatch";
    return;
  }
  std::vector<int> n_range = c.n_range;
  if (n_range.empty())
    for (int n = 5; n <= 40; n += 5) n_range.push_back(n);
  const auto points = default_sharpness_points();
  const SharpnessResult res = sharpness_shifted_power(c.k, c.alpha, n_range, points);
  for (std::size_t i = 0; i < res.samples.size(); ++i) {
    const auto& s = res.samples[i];
    run.records.push_back({static_cast<long long>(s.coordinate), "F_point_" + std::to_string(i % points.size()), s.value,
                           s.bound, s.value - s.bound});
  }
  run.residuals["above_bound"] = res.above_bound;
  run.residuals["diverges"] = res.diverges;
  run.pass = res.above_bound && res.diverges;
  run.verdict = run.pass ? "diverges_above_bound" : "bound_or_divergence_failed";
}

void run_estimates(const ScenarioConfig& c, Run& run) {
  std::vector<EstimateCase> cases;
  if (c.corpus_count > 0) {
    cases = estimate_corpus(c.seed, c.corpus_count);
  } else {
    EstimateCase cs{*c.function, c.k, c.m, DiskGeometry(c.r, c.R)};
    if (c.rescale) cs.g = rescale_to_sup(cs.g, *c.rescale * x0_threshold(c.k, c.m, cs.geom));
    cases.push_back(std::move(cs));
  }

  json worst = json::object();
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& cs = cases[i];
    const EstimateChainReport report = estimate_chain_check(cs.g, cs.k, cs.m, cs.geom, c.grid);
    for (const auto& [name, margin] : report.all()) {
      if (!margin.applicable()) continue;
      run.records.push_back({static_cast<long long>(i), name, margin.lhs_at_worst, margin.rhs_at_worst,
                             margin.worst_relative});
      if (!margin.holds(1e-9)) run.pass = false;
      if (!worst.contains(name) || margin.worst_relative < worst[name].get<double>()) worst[name] = margin.worst_relative;
    }
  }
  run.residuals["worst_relative_margin"] = worst;
  run.residuals["cases"] = cases.size();
}

void run_harnack(const ScenarioConfig& c, Run& run) {
  std::vector<std::pair<RationalFunction, DiskGeometry>> cases;
  if (c.corpus_count > 0) {
    for (const auto& cs : estimate_corpus(c.seed, c.corpus_count)) cases.emplace_back(build_split(cs.g, cs.geom).h, cs.geom);
  } else {
    cases.emplace_back(*c.function, DiskGeometry(c.r, c.R));
  }
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const double margin = harnack_check(cases[i].first, cases[i].second, c.grid);
    worst = std::min(worst, margin);
    run.records.push_back({static_cast<long long>(i), "harnack_margin", margin, 0.0, margin});
    if (!(margin >= -1e-12)) run.pass = false;
  }
  run.residuals["min_margin"] = worst;
  run.residuals["cases"] = cases.size();
}

void run_expansion(const ScenarioConfig& c, Run& run) {
  const ExpansionTable& table = expansion_coefficients(c.k);
  for (std::size_t i = 0; i < table.terms.size(); ++i) {
    std::string label = "u";
    for (int part : table.terms[i].parts) label += "_" + std::to_string(part);
    run.records.push_back({static_cast<long long>(i), label, static_cast<double>(table.terms[i].coefficient),
                           std::nullopt, std::nullopt});
  }
  run.residuals["table"] = json::parse(expansion_to_json(table));
  run.verdict = "ok";
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

void write_atomically(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw Error("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
}

}  // namespace

const char* to_string(Command command) {
  switch (command) {
    case Command::fft_check: return "fft-check";
    case Command::counting_check: return "counting-check";
    case Command::theorem2a: return "theorem2a";
    case Command::theorem2b: return "theorem2b";
    case Command::theorem1_scan: return "theorem1-scan";
    case Command::sharpness: return "sharpness";
    case Command::estimates: return "estimates";
    case Command::harnack: return "harnack";
    case Command::expansion_dump: return "expansion-dump";
  }
  return "unknown";
}

ScenarioConfig parse_scenario(const json& j) {
  require_object(j, "");
  reject_unknown(j, "", {"command", "name", "function", "corpus", "family", "geometry", "params", "quadrature", "grid",
                         "tol", "seed", "expect", "output"});
  ScenarioConfig c;
  if (!j.contains("command")) throw ConfigError("command", "missing");
  c.command = parse_command(j["command"]);
  c.name = to_string(c.command);
  if (j.contains("name")) {
    if (!j["name"].is_string() || j["name"].get<std::string>().empty()) throw ConfigError("name", "expected a non-empty string");
    c.name = j["name"].get<std::string>();
    if (c.name.find_first_of("/\\") != std::string::npos) throw ConfigError("name", "must not contain path separators");
  }
  if (j.contains("function")) c.function = parse_function(j["function"], "function");
  if (j.contains("corpus")) {
    require_object(j["corpus"], "corpus");
    reject_unknown(j["corpus"], "corpus", {"count"});
    if (!j["corpus"].contains("count")) throw ConfigError("corpus.count", "missing");
    c.corpus_count = as_int(j["corpus"]["count"], "corpus.count");
    if (c.corpus_count < 1) throw ConfigError("corpus.count", "must be >= 1");
    if (c.function) throw ConfigError("corpus", "give either a function or a corpus, not both");
  }
  if (j.contains("family")) c.family = parse_family(j["family"], "family");
  if (c.corpus_count && j.contains("geometry")) throw ConfigError("geometry", "corpus cases carry their own geometry");

  if (j.contains("geometry")) {
    const json& g = j["geometry"];
    require_object(g, "geometry");
    reject_unknown(g, "geometry", {"r", "R", "center", "radius", "base"});
    if (g.contains("r")) c.r = as_double(g["r"], "geometry.r");
    if (g.contains("R")) c.R = as_double(g["R"], "geometry.R");
    if (g.contains("center")) c.disk.center = as_complex(g["center"], "geometry.center");
    if (g.contains("radius")) c.disk.radius = as_double(g["radius"], "geometry.radius");
    if (g.contains("base")) c.base = as_complex(g["base"], "geometry.base");
  }

  if (j.contains("params")) {
    const json& p = j["params"];
    require_object(p, "params");
    reject_unknown(p, "params", {"k", "m", "p", "alpha", "example", "n_range", "radii", "rescale"});
    if (p.contains("k")) c.k = as_int(p["k"], "params.k");
    if (p.contains("m")) c.m = as_int(p["m"], "params.m");
    if (p.contains("p")) c.p = as_int(p["p"], "params.p");
    if (p.contains("alpha")) c.alpha = as_double(p["alpha"], "params.alpha");
    if (p.contains("example")) {
      if (!p["example"].is_string()) throw ConfigError("params.example", "expected a string");
      c.example = p["example"].get<std::string>();
    }
    if (p.contains("n_range")) c.n_range = as_int_list(p["n_range"], "params.n_range");
    if (p.contains("radii")) {
      if (!p["radii"].is_array()) throw ConfigError("params.radii", "expected an array of numbers");
      for (std::size_t i = 0; i < p["radii"].size(); ++i) {
        const double r = as_double(p["radii"][i], at_index("params.radii", i));
        if (!(r > 0.0)) throw ConfigError(at_index("params.radii", i), "must be positive");
        c.radii.push_back(r);
      }
    }
    if (p.contains("rescale")) {
      c.rescale = as_double(p["rescale"], "params.rescale");
      if (!(*c.rescale > 0.0 && *c.rescale <= 1.0)) throw ConfigError("params.rescale", "must be in (0, 1]");
    }
  }

  if (j.contains("quadrature")) {
    const json& q = j["quadrature"];
    require_object(q, "quadrature");
    reject_unknown(q, "quadrature", {"initial_nodes", "tolerance", "max_doublings", "clearance"});
    if (q.contains("initial_nodes")) c.quadrature.initial_nodes = as_int(q["initial_nodes"], "quadrature.initial_nodes");
    if (q.contains("tolerance")) c.quadrature.tolerance = as_double(q["tolerance"], "quadrature.tolerance");
    if (q.contains("max_doublings")) c.quadrature.max_doublings = as_int(q["max_doublings"], "quadrature.max_doublings");
    if (q.contains("clearance")) c.quadrature.circle_clearance = as_double(q["clearance"], "quadrature.clearance");
  }
  if (j.contains("grid")) c.grid = as_int(j["grid"], "grid");
  if (j.contains("tol")) c.tol = as_double(j["tol"], "tol");
  if (j.contains("seed")) {
    const long long s = as_integer(j["seed"], "seed");
    if (s < 0) throw ConfigError("seed", "must be nonnegative");
    c.seed = static_cast<std::uint64_t>(s);
  }
  if (j.contains("expect")) {
    if (!j["expect"].is_string()) throw ConfigError("expect", "expected a string");
    const std::string e = j["expect"].get<std::string>();
    if (e == "pass")
      c.expect = Expectation::pass;
    else if (e == "pole_error")
      c.expect = Expectation::pole_error;
    else if (e == "unbounded")
      c.expect = Expectation::unbounded;
    else
      throw ConfigError("expect", "expected pass, pole_error or unbounded");
  }
  if (j.contains("output")) {
    if (!j["output"].is_string()) throw ConfigError("output", "expected a directory path string");
    c.output_dir = j["output"].get<std::string>();
  }

  c.params_echo = json::object();
  for (const char* key : {"function", "corpus", "family", "geometry", "params", "expect"})
    if (j.contains(key)) c.params_echo[key] = j[key];
  validate_for_command(c);
  return c;
}

std::vector<ScenarioConfig> load_scenarios(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("", "cannot open config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ConfigError("", path.string() + ": line " + std::to_string(line) + ", column " + std::to_string(column) +
                              ": JSON syntax error");
  }

  std::vector<ScenarioConfig> out;
  if (j.is_object() && j.contains("scenarios")) {
    if (j.size() != 1) throw ConfigError("", "a batch file holds only the \"scenarios\" array");
    if (!j["scenarios"].is_array()) throw ConfigError("scenarios", "expected an array");
    for (std::size_t i = 0; i < j["scenarios"].size(); ++i) {
      try {
        ScenarioConfig c = parse_scenario(j["scenarios"][i]);
        if (!j["scenarios"][i].contains("name")) c.name += "_" + std::to_string(i);
        out.push_back(std::move(c));
      } catch (const ConfigError& e) {
        throw ConfigError(at_index("scenarios", i) + (e.field().empty() ? "" : "." + e.field()), e.what());
      }
    }
  } else {
    out.push_back(parse_scenario(j));
  }
  return out;
}

void apply_overrides(ScenarioConfig& config, const Overrides& o) {
  if (o.out) config.output_dir = *o.out;
  if (o.seed) config.seed = *o.seed;
  if (o.quad_nodes) config.quadrature.initial_nodes = *o.quad_nodes;
  if (o.tol) config.quadrature.tolerance = *o.tol;
  if (o.grid) config.grid = *o.grid;
  validate_for_command(config);
}

ScenarioOutcome run_scenario(const ScenarioConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  ScenarioOutcome out;
  Run run;
  try {
    switch (config.command) {
      case Command::fft_check: run_fft(config, run); break;
      case Command::counting_check: run_counting(config, run); break;
      case Command::theorem2a:
      case Command::theorem2b: run_theorem2(config, run); break;
      case Command::theorem1_scan: run_theorem1(config, run); break;
      case Command::sharpness: run_sharpness(config, run); break;
      case Command::estimates: run_estimates(config, run); break;
      case Command::harnack: run_harnack(config, run); break;
      case Command::expansion_dump: run_expansion(config, run); break;
    }
    if (run.verdict.empty()) run.verdict = run.pass ? "pass" : "fail";
    out.exit_code = run.pass ? kExitPass : kExitContractFailure;
    if (!run.pass) out.diagnostics.push_back(config.name + ": contract failed (verdict " + run.verdict + ")");
  } catch (const PreconditionError& e) {
    out.exit_code = kExitInputError;
    run.verdict = "input_error";
    out.diagnostics.push_back(config.name + ": precondition failed: " + e.what());
  } catch (const std::exception& e) {
    out.exit_code = kExitContractFailure;
    run.verdict = "error";
    out.diagnostics.push_back(config.name + ": " + e.what());
  }
  out.verdict = run.verdict;
  out.records = std::move(run.records);
  out.residuals = std::move(run.residuals);
  out.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

std::string records_to_csv(const std::vector<ResultRecord>& records) {
  std::string out = std::string(kCsvHeader) + "\n";
  for (const auto& r : records) {
    out += std::to_string(r.index) + "," + csv_field(r.quantity) + "," + format_double(r.value) + ",";
    if (r.bound) out += format_double(*r.bound);
    out += ",";
    if (r.margin) out += format_double(*r.margin);
    out += "\n";
  }
  return out;
}

json summary_json(const ScenarioConfig& config, const ScenarioOutcome& outcome) {
  json params = config.params_echo;
  params["seed"] = config.seed;
  params["grid"] = config.grid;
  params["tol"] = config.tol;
  params["quadrature"] = {{"initial_nodes", config.quadrature.initial_nodes},
                          {"tolerance", config.quadrature.tolerance},
                          {"max_doublings", config.quadrature.max_doublings}};
  json j;
  j["command"] = to_string(config.command);
  j["params"] = std::move(params);
  j["verdict"] = outcome.verdict;
  j["residuals"] = outcome.residuals;
  j["runtime_ms"] = outcome.runtime_ms;
  return j;
}

void emit_results(const ScenarioConfig& config, const ScenarioOutcome& outcome) {
  std::error_code ec;
  std::filesystem::create_directories(config.output_dir, ec);
  if (ec) throw Error("cannot create output directory " + config.output_dir.string() + ": " + ec.message());
  write_atomically(config.output_dir / (config.name + ".csv"), records_to_csv(outcome.records));
  write_atomically(config.output_dir / (config.name + ".json"), summary_json(config, outcome).dump(2) + "\n");
}

int run_batch(const std::vector<ScenarioConfig>& configs, std::ostream& log) {
  std::vector<std::future<ScenarioOutcome>> futures;
  for (const auto& c : configs)
    futures.push_back(std::async(std::launch::async, [&c] {
      ScenarioOutcome o = run_scenario(c);
      try {
        emit_results(c, o);
      } catch (const std::exception& e) {
        o.exit_code = kExitInputError;
        o.diagnostics.push_back(c.name + ": " + e.what());
      }
      return o;
    }));

  int worst = kExitPass;
  for (std::size_t i = 0; i < futures.size(); ++i) {
    const ScenarioOutcome o = futures[i].get();
    for (const auto& d : o.diagnostics) log << d << "\n";
    log << configs[i].name << ": " << o.verdict << " (exit " << o.exit_code << ")\n";
    if (o.exit_code == kExitInputError || worst == kExitInputError)
      worst = kExitInputError;
    else
      worst = std::max(worst, o.exit_code);
  }
  return worst;
}

}  // namespace marty
