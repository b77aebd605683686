// gl2tool: command-line front end for the GL(2) torsion toolkit.
//
// Exit status: 0 when every check is within tolerance, 1 on a tolerance
// violation (the worst offender is named on stderr), 2 on bad input.

#include "gl2/acceptance.hpp"
#include "gl2/errors.hpp"
#include "gl2/gl2_structures.hpp"
#include "gl2/hflat_engine.hpp"
#include "gl2/jet_fields.hpp"
#include "gl2/kernels/batch.hpp"
#include "gl2/lax_pair.hpp"
#include "gl2/pde_system.hpp"
#include "gl2/taylor_solver.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace gl2;

namespace {

struct ToleranceFailure {
  std::string offender;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

// Relative artifact paths land in $GL2_OUT_DIR when it is set.
fs::path artifact_path(const std::string& p) {
  fs::path path(p);
  if (path.is_relative()) {
    if (const char* dir = std::getenv("GL2_OUT_DIR"); dir && *dir) path = fs::path(dir) / path;
  }
  return path;
}

void write_text(const std::string& p, const std::string& text) {
  if (p == "-") {
    std::cout << text;
    return;
  }
  const fs::path path = artifact_path(p);
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path.string());
  out << text;
}

json read_json(const std::string& arg) {
  std::string text;
  std::string where = arg;
  if (!arg.empty() && (arg.front() == '{' || arg.front() == '[')) {
    text = arg;
    where = "inline JSON";
  } else {
    std::ifstream in(arg);
    if (!in) throw UsageError("cannot read " + arg);
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw UsageError(where + ": " + e.what());
  }
}

template <std::size_t N>
std::array<double, N> parse_list(const std::string& s, const char* what) {
  std::array<double, N> out{};
  std::stringstream ss(s);
  std::string item;
  std::size_t i = 0;
  while (std::getline(ss, item, ',')) {
    if (i >= N) break;
    try {
      std::size_t used = 0;
      out[i] = std::stod(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(std::string(what) + ": bad number '" + item + "'");
    }
    ++i;
  }
  if (i != N || std::getline(ss, item, ','))
    throw UsageError(std::string(what) + ": expected " + std::to_string(N) + " comma-separated numbers");
  return out;
}

// ---------------------------------------------------------------------------
// Plain-text table with an optional CSV twin.

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string text() const {
    std::vector<std::size_t> w(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) w[c] = header[c].size();
    for (const auto& r : rows)
      for (std::size_t c = 0; c < r.size(); ++c) w[c] = std::max(w[c], r[c].size());
    std::ostringstream os;
    auto line = [&](const std::vector<std::string>& r) {
      for (std::size_t c = 0; c < r.size(); ++c) {
        os << (c ? "  " : "");
        os << std::string(w[c] - r[c].size(), ' ') << r[c];
      }
      os << '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
    return os.str();
  }

  std::string csv() const {
    std::ostringstream os;
    auto line = [&](const std::vector<std::string>& r) {
      for (std::size_t c = 0; c < r.size(); ++c) os << (c ? "," : "") << r[c];
      os << '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
    return os.str();
  }
};

// ---------------------------------------------------------------------------
// Options shared by the point-sampling commands.

struct Common {
  std::uint64_t seed = 0;
  std::optional<double> tol;
  bool expect_zero = false;
  std::string json_out;
  std::string csv_out;
  std::string backend = "auto";
};

struct Source {
  std::string fixture;
  std::string params;
  std::string fixture_json;
  std::string jet;
  int points = 8;
  std::vector<std::string> point;
};

void add_common(CLI::App* sub, Common& c, bool with_expect = true) {
  sub->add_option("--seed", c.seed, "Random seed for sampled points")->capture_default_str();
  sub->add_option("--tol", c.tol, "Override the default tolerance");
  if (with_expect) sub->add_flag("--expect-zero", c.expect_zero, "Fail unless every value is within tolerance");
  sub->add_option("--json", c.json_out, "Write a JSON artifact ('-' for stdout)");
  sub->add_option("--csv", c.csv_out, "Write the table as CSV");
}

void add_source(CLI::App* sub, Source& s) {
  auto* g = sub->add_option_group("fields", "Where the field jets come from");
  g->add_option("--fixture", s.fixture, "zero, constants, a_of_x0, d_of_x3, b_of_x3, perturbed_b");
  g->add_option("--fixture-json", s.fixture_json, "Fixture description {name, parameters}, file or inline");
  g->add_option("--jet", s.jet, "A single FieldJet JSON, file or inline");
  g->require_option(1);
  sub->add_option("--params", s.params, "Fixture parameters as inline JSON");
  sub->add_option("--points", s.points, "Number of random points in [-1,1]^4")->capture_default_str();
  sub->add_option("--point", s.point, "Explicit point x0,x1,x2,x3 (repeatable)");
}

json default_params(const std::string& name) {
  if (name == "constants") return {{"values", {0.0, 0.0, 0.0, 0.0}}};
  if (name == "a_of_x0") return {{"f", {0.0, 0.0, 1.0}}};
  if (name == "d_of_x3") return {{"g", {0.0, 0.0, 1.0}}};
  if (name == "b_of_x3") return {{"g", {0.0, 1.0}}};
  return json::object();
}

struct Sample {
  std::string label;
  jets::FieldJet jet;
};

std::vector<Sample> load_samples(const Source& s, std::uint64_t seed, json* description) {
  if (!s.jet.empty()) {
    jets::FieldJet j = jets::field_jet_from_json(read_json(s.jet));
    *description = {{"jet", s.jet}};
    return {{"jet", j}};
  }
  json desc;
  if (!s.fixture_json.empty()) {
    desc = read_json(s.fixture_json);
  } else {
    desc = {{"name", s.fixture}, {"parameters", s.params.empty() ? default_params(s.fixture) : read_json(s.params)}};
  }
  const auto fields = jets::fixture_from_json(desc);
  *description = fields->describe();

  std::vector<jets::Point4> pts;
  for (const auto& p : s.point) pts.push_back(parse_list<4>(p, "--point"));
  if (pts.empty()) {
    if (s.points < 1) throw UsageError("--points must be positive");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < s.points; ++i) pts.push_back({u(rng), u(rng), u(rng), u(rng)});
  }
  std::vector<Sample> out;
  for (const auto& p : pts) {
    std::string label;
    for (std::size_t i = 0; i < 4; ++i) label += (i ? "," : "") + fmt(p[i]);
    out.push_back({label, fields->evaluate(p)});
  }
  return out;
}

void emit(const Common& c, const Table& t, const json& artifact, const std::string& preamble) {
  std::cout << preamble << t.text();
  if (!c.csv_out.empty()) write_text(c.csv_out, t.csv());
  if (!c.json_out.empty()) write_text(c.json_out, artifact.dump(2) + "\n");
}

// Worst (largest) value across labelled rows.
struct Worst {
  double value = -1.0;
  std::string where;
  void see(double v, const std::string& w) {
    if (!(v <= value)) {
      value = v;
      where = w;
    }
  }
};

void check_zero(const Common& c, const Worst& w, double tol, const std::string& what) {
  if (c.expect_zero && !(w.value <= tol))
    throw ToleranceFailure{what + " " + fmt(w.value) + " > " + fmt(tol) + " at " + w.where};
}

// ---------------------------------------------------------------------------

int cmd_spencer(const Common& c, const std::string& input) {
  const auto bundle = hflat::spencer_bundle_from_json(read_json(input));
  const double tol = c.tol.value_or(hflat::kTorsionTol);
  const auto r = hflat::torsion_residual(bundle.jet, bundle.g);
  const bool free = r.is_torsion_free(tol);
  Table t{{"quantity", "value"}, {}};
  t.rows.push_back({"n", std::to_string(bundle.jet.h.rows())});
  t.rows.push_back({"dim g", std::to_string(bundle.g.dim())});
  t.rows.push_back({"|tau_h|", fmt(r.tau_norm)});
  t.rows.push_back({"residual", fmt(r.norm)});
  t.rows.push_back({"torsion_free", free ? "yes" : "no"});
  json art{{"tau_norm", r.tau_norm}, {"residual_norm", r.norm}, {"torsion_free", free}};
  if (free) {
    const auto alpha = hflat::recover_connection(bundle.jet, bundle.g, tol);
    json comps = json::array();
    for (const auto& a : alpha.components()) comps.push_back(hflat::matrix_to_json(a));
    art["connection"] = comps;
    const double defect = hflat::connection_defect(bundle.jet, alpha);
    art["connection_defect"] = defect;
    t.rows.push_back({"connection defect", fmt(defect)});
  }
  emit(c, t, art, "");
  if (c.expect_zero && !free) throw ToleranceFailure{"spencer residual " + fmt(r.norm) + " (torsion)"};
  return 0;
}

int cmd_residuals(const Common& c, const Source& s) {
  json desc;
  const auto samples = load_samples(s, c.seed, &desc);
  std::vector<jets::FieldJet> js;
  for (const auto& x : samples) js.push_back(x.jet);
  const auto backend = kernels::parse_backend(c.backend);
  const auto rb = kernels::residuals_batch(kernels::JetBatch::from_jets(js), backend);
  const double tol = c.tol.value_or(1e-10);
  Table t{{"point", "r1", "r2", "r3", "r4", "max|r|"}, {}};
  json rows = json::array();
  Worst w;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    double m = 0.0;
    std::vector<std::string> row{samples[i].label};
    json r = json::array();
    for (std::size_t k = 0; k < 4; ++k) {
      row.push_back(fmt(rb.r[k][i]));
      r.push_back(rb.r[k][i]);
      m = std::max(m, std::abs(rb.r[k][i]));
    }
    row.push_back(fmt(m));
    t.rows.push_back(row);
    rows.push_back({{"point", samples[i].jet.base_point}, {"residuals", r}, {"max_abs", m}});
    w.see(m, samples[i].label);
  }
  emit(c, t, {{"fields", desc}, {"seed", c.seed}, {"rows", rows}},
       "# fields " + desc.dump() + "\n# seed " + std::to_string(c.seed) + "\n");
  check_zero(c, w, tol, "residual");
  return 0;
}

int cmd_c_check(const Common& c, const Source& s) {
  json desc;
  const auto samples = load_samples(s, c.seed, &desc);
  const double tol = c.tol.value_or(1e-10);
  constexpr double kAngleTol = 1e-8;
  Table t{{"point", "c1", "c2", "c3", "c4", "kernel angle"}, {}};
  json rows = json::array();
  Worst w, angle;
  for (const auto& x : samples) {
    const auto e = pde::c_equations(pde::structure_constants(x.jet));
    const auto k = pde::compare_kernels(x.jet.values());
    double m = 0.0;
    std::vector<std::string> row{x.label};
    for (double v : e) {
      row.push_back(fmt(v));
      m = std::max(m, std::abs(v));
    }
    row.push_back(fmt(k.worst_angle()));
    t.rows.push_back(row);
    rows.push_back({{"point", x.jet.base_point}, {"c_equations", e}, {"kernel_angle", k.worst_angle()},
                    {"kernel_dims", {k.dim_residual, k.dim_c_equations, k.dim_spencer}}});
    w.see(m, x.label);
    angle.see(k.worst_angle(), x.label);
  }
  emit(c, t, {{"fields", desc}, {"seed", c.seed}, {"rows", rows}},
       "# fields " + desc.dump() + "\n# seed " + std::to_string(c.seed) + "\n");
  if (!(angle.value <= kAngleTol))
    throw ToleranceFailure{"kernel angle " + fmt(angle.value) + " > " + fmt(kAngleTol) + " at " + angle.where};
  check_zero(c, w, tol, "c-equation");
  return 0;
}

int cmd_bridge(const Common& c, const Source& s) {
  json desc;
  const auto samples = load_samples(s, c.seed, &desc);
  const double tol = c.tol.value_or(1e-10);
  static constexpr std::array<double, 5> kLambdas{-2.0, -1.0, 0.0, 1.0, 2.0};
  Table t{{"point", "spencer", "residual", "bracket", "agree"}, {}};
  json rows = json::array();
  Worst w;
  std::string disagreement;
  for (const auto& x : samples) {
    const auto b = pde::spencer_bridge(x.jet);
    const double br = pde::bracket_span_check(x.jet, kLambdas);
    const bool z1 = b.spencer_norm <= tol, z2 = b.residual_norm <= tol, z3 = br <= tol;
    const bool agree = z1 == z2 && z2 == z3;
    if (!agree && disagreement.empty()) disagreement = x.label;
    t.rows.push_back({x.label, fmt(b.spencer_norm), fmt(b.residual_norm), fmt(br), agree ? "yes" : "NO"});
    rows.push_back({{"point", x.jet.base_point}, {"spencer_norm", b.spencer_norm},
                    {"residual_norm", b.residual_norm}, {"bracket_defect", br}, {"agree", agree}});
    w.see(std::max({b.spencer_norm, b.residual_norm, br}), x.label);
  }
  emit(c, t, {{"fields", desc}, {"seed", c.seed}, {"rows", rows}},
       "# fields " + desc.dump() + "\n# seed " + std::to_string(c.seed) + "\n");
  if (!disagreement.empty()) throw ToleranceFailure{"zero sets disagree at " + disagreement};
  check_zero(c, w, tol, "bridge norm");
  return 0;
}

int cmd_symbol(const Common& c, const std::string& values, const std::string& xi_s) {
  const auto v = parse_list<4>(values, "--values");
  const auto xi = parse_list<4>(xi_s, "--xi");
  const double tol = c.tol.value_or(1e-8);
  const auto sigma = pde::principal_symbol(v, xi);
  const auto cubic = pde::symbol_cubic(v, xi);
  const double det = sigma.determinant();
  const double disc = structures::discriminant(cubic);
  double scale = 1.0;
  for (int k = 0; k < 4; ++k) scale *= sigma.col(k).norm();
  const bool characteristic = std::abs(det) <= tol * std::max(scale, 1e-300) || scale == 0.0;
  Table t{{"row", "A", "B", "C", "D"}, {}};
  json m = json::array();
  for (int r = 0; r < 4; ++r) {
    std::vector<std::string> row{"eq" + std::to_string(r + 1)};
    json jr = json::array();
    for (int k = 0; k < 4; ++k) {
      row.push_back(fmt(sigma(r, k)));
      jr.push_back(sigma(r, k));
    }
    t.rows.push_back(row);
    m.push_back(jr);
  }
  std::ostringstream post;
  post << "cubic " << fmt(cubic.p[0]) << " " << fmt(cubic.p[1]) << " " << fmt(cubic.p[2]) << " "
       << fmt(cubic.p[3]) << "\n"
       << "det " << fmt(det) << "\n"
       << "disc " << fmt(disc) << "\n";
  if (disc != 0.0) post << "det/disc " << fmt(det / disc) << "\n";
  post << (characteristic ? "characteristic covector\n" : "non-characteristic covector\n");
  emit(c, t, {{"values", v}, {"xi", xi}, {"symbol", m}, {"cubic", cubic.p}, {"det", det}, {"disc", disc},
              {"characteristic", characteristic}},
       "");
  std::cout << post.str();
  return 0;
}

int cmd_lax_check(const Common& c, const Source& s) {
  json desc;
  const auto samples = load_samples(s, c.seed, &desc);
  std::vector<jets::FieldJet> js;
  for (const auto& x : samples) {
    if (x.jet.order < 2) throw UsageError("lax-check: jets need second derivatives");
    js.push_back(x.jet);
  }
  const auto backend = kernels::parse_backend(c.backend);
  const auto cb = kernels::commutator_batch(kernels::JetBatch::from_jets(js), backend);
  const double tol = c.tol.value_or(1e-9);
  static constexpr std::array<const char*, 5> kComp{"d0", "d1", "d2", "d3", "dl"};
  Table t{{"point", "d0", "d1", "d2", "d3", "dl", "max"}, {}};
  json rows = json::array();
  Worst w;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    std::vector<std::string> row{samples[i].label};
    json comps;
    double all = 0.0;
    for (std::size_t k = 0; k < 5; ++k) {
      double m = 0.0;
      json coeffs = json::array();
      for (std::size_t p = 0; p < 7; ++p) {
        m = std::max(m, std::abs(cb.coeff[k][p][i]));
        coeffs.push_back(cb.coeff[k][p][i]);
      }
      comps[kComp[k]] = coeffs;
      row.push_back(fmt(m));
      all = std::max(all, m);
    }
    row.push_back(fmt(all));
    t.rows.push_back(row);
    rows.push_back({{"point", samples[i].jet.base_point}, {"commutator", comps}, {"max_abs", all}});
    w.see(all, samples[i].label);
  }
  emit(c, t, {{"fields", desc}, {"seed", c.seed}, {"backend", kernels::to_string(backend)}, {"rows", rows}},
       "# fields " + desc.dump() + "\n# seed " + std::to_string(c.seed) + "\n");
  check_zero(c, w, tol, "commutator coefficient");
  return 0;
}

struct TraceOpts {
  std::string start = "0.7,-0.3,0.2,0.1,-0.8";
  double s = 0.1, t = 0.1, step = 1e-3;
  bool convergence = false;
  std::string out = "surface_trace.json";
};

int cmd_surface_trace(const Common& c, const Source& src, const TraceOpts& o) {
  if (!src.jet.empty()) throw UsageError("surface-trace needs a fixture, not a single jet");
  json desc = !src.fixture_json.empty()
                  ? read_json(src.fixture_json)
                  : json{{"name", src.fixture},
                         {"parameters", src.params.empty() ? default_params(src.fixture) : read_json(src.params)}};
  const auto fields = jets::fixture_from_json(desc);
  const auto start = parse_list<5>(o.start, "--start");
  const auto path = lax::trace_polyline(*fields, start, o.s, o.t, o.step);
  const auto tr = lax::flow_trace(*fields, start, o.s, o.t, o.step);

  json rows = json::array();
  for (const auto& p : path) rows.push_back(p);
  json art{{"fields", fields->describe()}, {"start", start}, {"s", o.s}, {"t", o.t}, {"step", o.step},
           {"columns", {"x0", "x1", "x2", "x3", "lambda"}}, {"rows", rows},
           {"forward", tr.forward}, {"reversed", tr.reversed}, {"discrepancy", tr.discrepancy}};

  Table t{{"quantity", "value"}, {}};
  t.rows.push_back({"rows", std::to_string(path.size())});
  t.rows.push_back({"discrepancy", fmt(tr.discrepancy)});
  if (o.convergence) {
    const auto st = lax::flow_convergence(*fields, start, o.s, o.t, {1e-2, 5e-3, 2.5e-3, 1.25e-3});
    for (std::size_t i = 0; i < st.steps.size(); ++i)
      t.rows.push_back({"discrepancy@" + fmt(st.steps[i]), fmt(st.discrepancies[i])});
    for (std::size_t i = 0; i < st.pairwise_orders.size(); ++i)
      t.rows.push_back({"order " + std::to_string(i + 1), fmt(st.pairwise_orders[i])});
    t.rows.push_back({"fitted order", fmt(st.fitted_order)});
    art["convergence"] = {{"steps", st.steps}, {"discrepancies", st.discrepancies},
                          {"pairwise_orders", st.pairwise_orders}, {"fitted_order", st.fitted_order}};
  }
  std::cout << "# fields " << fields->describe().dump() << "\n" << t.text();
  write_text(c.json_out.empty() ? o.out : c.json_out, art.dump(2) + "\n");
  if (!c.csv_out.empty()) {
    Table pts{{"x0", "x1", "x2", "x3", "lambda"}, {}};
    for (const auto& p : path) pts.rows.push_back({fmt(p[0]), fmt(p[1]), fmt(p[2]), fmt(p[3]), fmt(p[4])});
    write_text(c.csv_out, pts.csv());
  }
  const double tol = c.tol.value_or(1e-8);
  if (c.expect_zero && !(tr.discrepancy <= tol))
    throw ToleranceFailure{"flow discrepancy " + fmt(tr.discrepancy) + " > " + fmt(tol)};
  return 0;
}

int cmd_taylor(const Common& c, const std::string& seed_arg, int order, const std::string& out) {
  taylor::Seed seed;
  std::string origin;
  bool numeric = !seed_arg.empty() && seed_arg.find_first_not_of("0123456789") == std::string::npos;
  if (numeric) {
    std::mt19937_64 rng(std::stoull(seed_arg));
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (auto& v : seed.values) v = u(rng);
    for (auto& g : seed.grad)
      for (auto& x : g) x = u(rng);
    seed = taylor::project_seed(seed);
    origin = "random admissible seed " + seed_arg;
  } else {
    seed = taylor::seed_from_json(read_json(seed_arg));
    origin = "seed " + seed_arg;
  }
  const double tol = c.tol.value_or(taylor::kProlongTol);
  taylor::Prolongation p;
  try {
    p = taylor::prolong(seed, order, tol);
  } catch (const NotInImageError& e) {
    throw ToleranceFailure{e.what()};
  }
  const double verify = taylor::verify_series(p.series);
  Table t{{"degree", "unknowns", "conditions", "rank", "free", "residual"}, {}};
  for (const auto& o : p.report.orders)
    t.rows.push_back({std::to_string(o.degree), std::to_string(o.unknowns), std::to_string(o.conditions),
                      std::to_string(o.rank), std::to_string(o.unknowns - o.rank), fmt(o.residual)});
  std::cout << "# " << origin << "\n# order " << order << "\n" << t.text() << "verify " << fmt(verify) << "\n";
  json art{{"seed", taylor::to_json(seed)}, {"series", taylor::to_json(p.series)},
           {"report", taylor::to_json(p.report)}, {"verify", verify}};
  write_text(c.json_out.empty() ? out : c.json_out, art.dump(2) + "\n");
  if (!c.csv_out.empty()) write_text(c.csv_out, t.csv());
  if (!(verify <= tol)) throw ToleranceFailure{"series residual " + fmt(verify) + " > " + fmt(tol)};
  return 0;
}

int cmd_acceptance(const Common& c, int only, bool timings) {
  std::vector<acceptance::CriterionResult> results;
  if (only > 0)
    results.push_back(acceptance::run_criterion(only, c.seed));
  else
    results = acceptance::run_all(c.seed);
  std::cout << "# seed " << c.seed << "\n";
  json art = json::array();
  const acceptance::CriterionResult* failed = nullptr;
  for (const auto& r : results) {
    std::cout << r.line() << "\n";
    if (timings) std::cerr << "criterion " << r.id << " " << fmt(r.seconds) << " s\n";
    art.push_back(acceptance::to_json(r));
    if (!r.passed() && !failed) failed = &r;
  }
  if (!c.json_out.empty()) write_text(c.json_out, json{{"seed", c.seed}, {"criteria", art}}.dump(2) + "\n");
  if (failed) throw ToleranceFailure{failed->line()};
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GL(2) torsion toolkit"};
  app.require_subcommand(1);

  Common common;
  Source source;

  auto* spencer = app.add_subcommand("spencer", "Torsion test for a map h with Lie algebra g");
  std::string spencer_input;
  spencer->add_option("--input", spencer_input, "Bundle JSON {h, dh, g_basis}, file or inline")->required();
  add_common(spencer, common);

  auto* residuals = app.add_subcommand("residuals", "The four residuals at sampled points");
  add_common(residuals, common);
  add_source(residuals, source);
  residuals->add_option("--backend", common.backend, "scalar, avx2 or auto")->capture_default_str();

  auto* ccheck = app.add_subcommand("c-check", "Structure-function equations and kernel agreement");
  add_common(ccheck, common);
  add_source(ccheck, source);

  auto* bridge = app.add_subcommand("bridge", "Spencer, residual and bracket-span norms side by side");
  add_common(bridge, common);
  add_source(bridge, source);

  auto* symbol = app.add_subcommand("symbol", "Principal symbol and discriminant at a 0-jet");
  std::string values, xi;
  symbol->add_option("--values", values, "A,B,C,D")->required();
  symbol->add_option("--xi", xi, "Covector xi0,xi1,xi2,xi3")->required();
  add_common(symbol, common, false);

  auto* lax_check = app.add_subcommand("lax-check", "Commutator [L0, L1] at sampled points");
  add_common(lax_check, common);
  add_source(lax_check, source);
  lax_check->add_option("--backend", common.backend, "scalar, avx2 or auto")->capture_default_str();

  auto* trace = app.add_subcommand("surface-trace", "Composed flows of L1 then L0 as a polyline");
  TraceOpts trace_opts;
  add_common(trace, common);
  auto* tg = trace->add_option_group("fields");
  tg->add_option("--fixture", source.fixture, "Fixture name");
  tg->add_option("--fixture-json", source.fixture_json, "Fixture description, file or inline");
  tg->require_option(1);
  trace->add_option("--params", source.params, "Fixture parameters as inline JSON");
  trace->add_option("--start", trace_opts.start, "x0,x1,x2,x3,lambda")->capture_default_str();
  trace->add_option("--s", trace_opts.s, "Flow time along L1")->capture_default_str();
  trace->add_option("--t", trace_opts.t, "Flow time along L0")->capture_default_str();
  trace->add_option("--step", trace_opts.step, "RK4 step")->capture_default_str();
  trace->add_flag("--convergence", trace_opts.convergence, "Add a step-halving study");
  trace->add_option("--out", trace_opts.out, "Polyline JSON path")->capture_default_str();

  auto* taylor_cmd = app.add_subcommand("taylor-solve", "Prolong seed data to a truncated series");
  std::string seed_arg = "0";
  int order = 4;
  std::string series_out = "taylor_series.json";
  taylor_cmd->add_option("--seed", seed_arg, "Seed JSON (file or inline), or an integer for a random admissible seed")
      ->capture_default_str();
  taylor_cmd->add_option("--order", order, "Total degree cap N (1..6)")->capture_default_str();
  taylor_cmd->add_option("--tol", common.tol, "Override the default tolerance");
  taylor_cmd->add_option("--json", common.json_out, "Series JSON path ('-' for stdout)");
  taylor_cmd->add_option("--csv", common.csv_out, "Report table as CSV");
  taylor_cmd->add_option("--out", series_out, "Series JSON path")->capture_default_str();

  auto* accept = app.add_subcommand("acceptance", "Run the acceptance criteria");
  int only = 0;
  bool timings = false;
  accept->add_option("--seed", common.seed, "Random seed")->capture_default_str();
  accept->add_option("--criterion", only, "Run a single criterion (1..10)");
  accept->add_option("--json", common.json_out, "Write results as JSON");
  accept->add_flag("--timings", timings, "Print per-criterion wall time to stderr");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (spencer->parsed()) return cmd_spencer(common, spencer_input);
    if (residuals->parsed()) return cmd_residuals(common, source);
    if (ccheck->parsed()) return cmd_c_check(common, source);
    if (bridge->parsed()) return cmd_bridge(common, source);
    if (symbol->parsed()) return cmd_symbol(common, values, xi);
    if (lax_check->parsed()) return cmd_lax_check(common, source);
    if (trace->parsed()) return cmd_surface_trace(common, source, trace_opts);
    if (taylor_cmd->parsed()) return cmd_taylor(common, seed_arg, order, series_out);
    if (accept->parsed()) return cmd_acceptance(common, only, timings);
  } catch (const ToleranceFailure& f) {
    std::cerr << "FAIL: " << f.offender << "\n";
    return 1;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
