#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "diagorbit/arith/expression.hpp"
#include "diagorbit/dioph/dioph.hpp"
#include "diagorbit/error.hpp"
#include "diagorbit/flows/diagonal.hpp"
#include "diagorbit/flows/roots.hpp"
#include "diagorbit/flows/trajectory.hpp"
#include "diagorbit/irregular/irregular.hpp"
#include "diagorbit/lattice/lattice_json.hpp"
#include "diagorbit/numberfield/field_json.hpp"
#include "diagorbit/numberfield/theorem5.hpp"
#include "diagorbit/numberfield/units.hpp"
#include "json.hpp"

using namespace diagorbit;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "diagorbit 1.0.0";
constexpr int kExitPrecondition = 2;
constexpr int kExitPrecision = 3;
constexpr int kExitUsage = 64;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

json dec(const BigReal& x) { return decimal_string(x); }

json matrix_json(const RealMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(dec(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_json(const std::vector<BigReal>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(dec(x));
  return out;
}

json integers_json(const std::vector<Integer>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(x.get_str());
  return out;
}

json coords_json(const Coords& c) {
  json out = json::array();
  for (const auto& q : c) out.push_back(q.get_str());
  return out;
}

int resolve_precision(int flag) {
  int prec = 256;
  if (const char* env = std::getenv("DIAGORBIT_PRECISION")) {
    try {
      std::size_t used = 0;
      prec = std::stoi(env, &used);
      if (used != std::string(env).size()) throw UsageError("");
    } catch (const std::exception&) {
      throw UsageError(std::string("DIAGORBIT_PRECISION is not an integer: ") + env);
    }
  }
  if (flag > 0) prec = flag;
  if (prec < 64) throw UsageError("precision must be >= 64");
  return prec;
}

// Field lattice from --minpoly/--basis or a field JSON file.
KLattice read_klattice(const std::string& minpoly, const std::string& basis, const std::string& field_file, int prec) {
  if (!field_file.empty()) {
    std::ifstream in(field_file);
    if (!in) throw Error(ErrorCode::kInvalidInput, "cannot open " + field_file);
    return field_from_json(json::parse(in), prec);
  }
  if (minpoly.empty()) throw UsageError("--minpoly or --field is required");
  FieldPtr field = NumberField::create(parse_minpoly(minpoly), prec);
  if (basis == "identity") return KLattice::standard(field);
  std::vector<Coords> rows;
  for (const auto& row : split(basis, ';')) {
    Coords c;
    for (const auto& e : split(row, ',')) c.push_back(parse_rational(e));
    if (c.size() != static_cast<std::size_t>(field->degree()))
      throw Error(ErrorCode::kDimensionMismatch, "basis rows need deg f coordinates");
    rows.push_back(std::move(c));
  }
  return KLattice(field, rows);
}

std::vector<BigReal> eval_list(const std::string& text, int prec) {
  ExpressionParser parser(prec);
  std::vector<BigReal> out;
  for (const auto& e : parse_exact_list(text, parser)) out.push_back(e.eval(prec));
  return out;
}

LatticeBasis read_lattice(const std::string& text, const std::string& file, int prec) {
  if (!file.empty()) {
    std::ifstream in(file);
    if (!in) throw Error(ErrorCode::kInvalidInput, "cannot open " + file);
    return lattice_from_json(json::parse(in)).at_precision(prec);
  }
  if (text.rfind("identity:", 0) == 0) return LatticeBasis::identity(std::stoul(text.substr(9)), prec);
  ExpressionParser parser(prec);
  if (text.rfind("zv:", 0) == 0) return make_zv(parse_exact_list(text.substr(3), parser), prec);
  if (text.rfind("xv:", 0) == 0) return make_xv(parse_exact_list(text.substr(3), parser), prec);
  throw UsageError("lattice must be identity:d, zv:v1,v2,..., xv:v1,v2,... or --lattice-json");
}

// The report envelope shared by all subcommands.
json envelope(const CLI::App& sub, int prec) {
  json inputs = json::object();
  for (const CLI::Option* opt : sub.get_options()) {
    if (opt->count() == 0 || opt->get_name() == "--help") continue;
    std::string key = opt->get_name();
    while (!key.empty() && key.front() == '-') key.erase(0, 1);
    std::vector<std::string> vals = opt->results();
    inputs[key] = vals.size() == 1 ? json(vals.front()) : json(vals);
  }
  return {{"command", sub.get_name()}, {"inputs", inputs}, {"precision", prec}, {"version", kVersion}};
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kInvalidInput, "cannot write " + path);
  out << text;
}

void emit(const json& report, const std::string& out_path) { write_text(out_path, report.dump(2) + "\n"); }

struct Options {
  int precision = 0;
  std::string out;
  std::string csv;
  std::string minpoly, basis = "identity", field;
  long height = 10;
  std::string direction;
  int random_directions = 0;
  unsigned long seed = 1;
  double tmax = 10;
  long steps = 200;
  double rho = 0.1;
  std::vector<std::string> matrices;
  std::string lattice, lattice_json;
  std::string alpha, beta;
  int family = 1;
  double tol = 1e-8;
  int grid = 5;
  std::string mode = "c1", v, gamma;
  long N = 1000;
  std::string shift, target = "0";
  double eps = 0.1;
  long bound = 1000;
};

json run_embed(const Options& o, int prec) {
  KLattice kl = read_klattice(o.minpoly, o.basis, o.field, prec);
  LatticeBasis x = lattice_from_basis(kl, prec);
  const NumberField& f = *kl.field();
  return {{"field", field_to_json(kl)},
          {"signature", {f.r(), f.s()}},
          {"lattice", lattice_to_json(x)},
          {"abs_det", dec(abs(x.determinant()))}};
}

json units_json(const NumberField& f, const UnitGroupData& u) {
  json gens = json::array();
  for (const auto& g : u.generators) gens.push_back({{"coords", coords_json(g)}, {"norm", nf_norm(f.minpoly(), g).get_str()}});
  return {{"rank", u.rank},
          {"expected_rank", u.expected_rank},
          {"height_bound", u.height_bound},
          {"generators", gens},
          {"log_matrix", matrix_json(u.log_matrix)},
          {"complete", u.complete()}};
}

json run_units(const Options& o, int prec) {
  KLattice kl = read_klattice(o.minpoly, o.basis, o.field, prec);
  UnitGroupData u = unit_search(kl, o.height, prec);
  const NumberField& f = *kl.field();
  CmReport cm = is_cm(f, u, prec);
  json out = units_json(f, u);
  out["compactness"] = verdict_name(torus_orbit_compactness(kl, u, prec));
  out["cm"] = {{"verdict", verdict_name(cm.verdict)}, {"real_unit_rank", cm.real_unit_rank}};
  return out;
}

// Direction in log coordinates of the r + s embeddings, spread to the d coordinates.
TracelessDiag spread_direction(const NumberField& f, const std::vector<BigReal>& a) {
  const int r = f.r(), s = f.s();
  if (a.size() != static_cast<std::size_t>(r + s) && a.size() != static_cast<std::size_t>(f.degree())) {
    throw Error(ErrorCode::kDimensionMismatch, "direction needs r + s or d entries");
  }
  if (a.size() == static_cast<std::size_t>(f.degree()) && a.size() != static_cast<std::size_t>(r + s)) {
    for (int j = 0; j < s; ++j)
      if (abs(a[r + 2 * j] - a[r + 2 * j + 1]) > BigReal::pow2(-a[0].precision() / 2, 64))
        throw Error(ErrorCode::kPreconditionViolated, "direction must be equal on each complex pair");
    return TracelessDiag(a);
  }
  std::vector<BigReal> full;
  for (int i = 0; i < r; ++i) full.push_back(a[i]);
  for (int j = 0; j < s; ++j) {
    full.push_back(a[r + j]);
    full.push_back(a[r + j]);
  }
  return TracelessDiag(full);
}

json trajectory_summary(const std::vector<TrajectorySample>& samples) {
  std::size_t arg = 0;
  long recurrences = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (samples[i].systole < samples[arg].systole) arg = i;
    recurrences += samples[i].recurrence ? 1 : 0;
  }
  return {{"samples", samples.size()},
          {"min_systole", dec(samples[arg].systole)},
          {"t_at_min", dec(samples[arg].t)},
          {"final_systole", dec(samples.back().systole)},
          {"recurrence_samples", recurrences}};
}

void write_trajectory(const std::string& path, const std::vector<TrajectorySample>& samples) {
  std::ostringstream csv;
  write_trajectory_csv(csv, samples);
  write_text(path, csv.str());
}

json run_torus_orbit(const Options& o, int prec) {
  KLattice kl = read_klattice(o.minpoly, o.basis, o.field, prec);
  const NumberField& f = *kl.field();
  LatticeBasis x = lattice_from_basis(kl, prec);
  std::vector<TracelessDiag> dirs;
  if (!o.direction.empty()) dirs.push_back(spread_direction(f, eval_list(o.direction, prec)));
  std::mt19937_64 rng(o.seed);
  std::uniform_real_distribution<double> unif(-1, 1);
  for (int k = 0; k < o.random_directions; ++k) {
    std::vector<BigReal> a;
    for (int i = 0; i < f.r() + f.s(); ++i) a.push_back(BigReal(unif(rng), prec));
    TracelessDiag v = spread_direction(f, a);
    dirs.push_back(v.scaled(1 / v.norm()));
  }
  if (dirs.empty()) throw UsageError("give --direction or --random");
  if (dirs.size() > 1 && !o.csv.empty()) throw UsageError("--csv needs a single direction");
  UnitGroupData u = unit_search(kl, o.height, prec);
  json runs = json::array();
  for (const auto& v : dirs) {
    auto samples = trajectory(x, v, BigReal(o.tmax, prec), o.steps, BigReal(o.rho, prec));
    json r = trajectory_summary(samples);
    r["direction"] = vector_json(v.entries());
    runs.push_back(std::move(r));
    if (!o.csv.empty()) write_trajectory(o.csv, samples);
  }
  return {{"signature", {f.r(), f.s()}},
          {"compactness", verdict_name(torus_orbit_compactness(kl, u, prec))},
          {"unit_rank", u.rank},
          {"expected_unit_rank", u.expected_rank},
          {"runs", runs}};
}

json run_cone(const Options& o, int prec) {
  if (o.matrices.empty()) throw UsageError("--matrix is required");
  std::vector<LieElement> h;
  for (const auto& text : o.matrices) {
    std::vector<std::string> rows = split(text, ';');
    RealMatrix m(rows.size(), rows.size(), BigReal::zero(prec));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      std::vector<BigReal> row = eval_list(rows[i], prec);
      if (row.size() != rows.size()) throw Error(ErrorCode::kDimensionMismatch, "matrix must be square");
      for (std::size_t j = 0; j < row.size(); ++j) m(i, j) = row[j];
    }
    h.emplace_back(m);
  }
  ConeCertificate c = cone_construct(h);
  json residuals = json::array();
  for (double r : c.residuals) {
    std::ostringstream s;
    s.precision(6);
    s << std::scientific << r;
    residuals.push_back(s.str());
  }
  std::ostringstream slope;
  slope.precision(6);
  slope << std::fixed << c.slope;
  return {{"root", c.root.to_string()},
          {"v0", vector_json(c.v0.entries())},
          {"margin", dec(c.margin)},
          {"normalized_margin", dec(c.normalized_margin)},
          {"x", matrix_json(c.x.matrix())},
          {"residuals", residuals},
          {"slope", slope.str()},
          {"reversed", c.reversed}};
}

json run_flow(const Options& o, int prec) {
  LatticeBasis x = read_lattice(o.lattice, o.lattice_json, prec);
  if (o.direction.empty()) throw UsageError("--direction is required");
  TracelessDiag v(eval_list(o.direction, prec));
  auto samples = trajectory(x, v, BigReal(o.tmax, prec), o.steps, BigReal(o.rho, prec));
  if (!o.csv.empty()) write_trajectory(o.csv, samples);
  json r = trajectory_summary(samples);
  r["direction"] = vector_json(v.entries());
  return r;
}

json run_irregular(const Options& o, int prec) {
  if (o.alpha.empty() || o.beta.empty()) throw UsageError("--alpha and --beta are required");
  ExpressionParser parser(prec);
  std::vector<ExactReal> v{parser.parse(o.alpha), parser.parse(o.beta)};
  OmegaOptions opt;
  opt.rho = o.rho;
  opt.tol = o.tol;
  opt.grid_points = o.grid;
  OmegaReport rep = omega_experiment(v, o.family, BigReal(o.tmax, prec), opt, prec);
  return omega_report_json(rep);
}

json run_dioph(const Options& o, int prec) {
  ExpressionParser parser(prec);
  std::vector<ExactReal> v = parse_exact_list(o.v, parser);
  RecordTrace t;
  if (o.mode == "c1") {
    std::vector<ExactReal> g = o.gamma.empty() ? std::vector<ExactReal>(v.size()) : parse_exact_list(o.gamma, parser);
    t = propC1_search(v, g, o.N, prec);
  } else if (o.mode == "c2") {
    ExactReal g = o.gamma.empty() ? ExactReal() : parser.parse(o.gamma);
    t = propC2_search(v, g, o.N, prec);
  } else {
    throw UsageError("--mode must be c1 or c2");
  }
  std::ostringstream csv;
  write_record_csv(csv, t);
  if (!o.csv.empty()) write_text(o.csv, csv.str());
  json recs = json::array();
  for (const auto& r : t.records) {
    BigReal check = o.mode == "c1" ? propC1_value(v, r.target, r.witness.front(), 2 * prec)
                                   : propC2_value(v, r.target.front(), r.witness, 2 * prec);
    recs.push_back({{"witness", integers_json(r.witness)},
                    {"value", dec(r.value)},
                    {"certified_2p", abs(check - r.value) < BigReal::pow2(-prec / 2, 64)}});
  }
  return {{"bound", t.bound}, {"records", recs}};
}

json run_gdp(const Options& o, int prec) {
  LatticeBasis x = read_lattice(o.lattice, o.lattice_json, prec);
  ExpressionParser parser(prec);
  std::vector<ExactReal> w = o.shift.empty() ? std::vector<ExactReal>(x.dim()) : parse_exact_list(o.shift, parser);
  ExactReal target = parser.parse(o.target);
  auto hit = gdp_probe(x, w, target, BigReal(o.eps, prec), o.bound);
  if (!hit) return {{"found", false}};
  return {{"found", true},
          {"coeffs", integers_json(hit->coeffs)},
          {"u", vector_json(hit->u)},
          {"product", dec(hit->product)},
          {"error", dec(hit->error)}};
}

json run_factor(const Options& o, int prec) {
  KLattice kl = read_klattice(o.minpoly, o.basis, o.field, prec);
  Theorem5Factor t = theorem5_factor(kl, prec);
  return {{"c", dec(t.c)},
          {"p", matrix_json(t.p)},
          {"phi", matrix_json(t.phi)},
          {"g_v", matrix_json(t.g_v)},
          {"det_p", dec(determinant(t.p))},
          {"max_first_row_off", dec(t.max_first_row_off)}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Diagonal orbit experiments"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* s) {
    s->add_option("--precision", o.precision, "working precision in bits (>= 64)");
    s->add_option("--out", o.out, "report JSON path (default stdout)");
  };
  auto field_flags = [&](CLI::App* s) {
    s->add_option("--minpoly", o.minpoly, "minimal polynomial coefficients, leading first");
    s->add_option("--basis", o.basis, "identity or rows of power-basis coordinates 'a,b;c,d'");
    s->add_option("--field", o.field, "field JSON file");
  };

  std::map<std::string, std::function<json(const Options&, int)>> handlers;
  auto add = [&](const char* name, const char* desc, std::function<json(const Options&, int)> h) {
    CLI::App* s = app.add_subcommand(name, desc);
    common(s);
    handlers[name] = std::move(h);
    return s;
  };

  CLI::App* embed = add("embed", "field lattice to a point of X_d", run_embed);
  field_flags(embed);

  CLI::App* units = add("units", "unit search and verdicts", run_units);
  field_flags(units);
  units->add_option("--height", o.height, "coefficient height bound");

  CLI::App* torus = add("torus-orbit", "diagonal flow on a field lattice", run_torus_orbit);
  field_flags(torus);
  torus->add_option("--direction", o.direction, "log scales per embedding (r + s or d entries)");
  torus->add_option("--random", o.random_directions, "number of random unit directions");
  torus->add_option("--seed", o.seed, "seed for random directions");
  torus->add_option("--tmax", o.tmax, "final time");
  torus->add_option("--steps", o.steps, "number of time steps");
  torus->add_option("--rho", o.rho, "recurrence threshold");
  torus->add_option("--height", o.height, "unit search height bound");
  torus->add_option("--csv", o.csv, "trajectory CSV path");

  CLI::App* cone = add("cone", "cone construction for a subalgebra", run_cone);
  cone->add_option("--matrix", o.matrices, "basis element 'a,b,c;d,e,f;g,h,i' (repeatable)")->take_all();

  CLI::App* flow = add("flow", "diagonal flow trajectory of a lattice", run_flow);
  flow->add_option("--lattice", o.lattice, "identity:d, zv:v..., or xv:v...");
  flow->add_option("--lattice-json", o.lattice_json, "lattice JSON file");
  flow->add_option("--direction", o.direction, "traceless diagonal entries");
  flow->add_option("--tmax", o.tmax, "final time");
  flow->add_option("--steps", o.steps, "number of time steps");
  flow->add_option("--rho", o.rho, "recurrence threshold");
  flow->add_option("--csv", o.csv, "trajectory CSV path");

  CLI::App* irr = add("irregular", "recurrences of a^(i)(t) x_v and membership", run_irregular);
  irr->add_option("--alpha", o.alpha, "alpha literal")->required();
  irr->add_option("--beta", o.beta, "beta literal")->required();
  irr->add_option("--family", o.family, "1 or 2")->check(CLI::IsMember({1, 2}));
  irr->add_option("--tmax", o.tmax, "final time");
  irr->add_option("--rho", o.rho, "recurrence threshold");
  irr->add_option("--tol", o.tol, "membership tolerance");
  irr->add_option("--grid", o.grid, "off-ray grid points per axis");

  CLI::App* dio = add("dioph", "record scans for products of distances", run_dioph);
  dio->add_option("--mode", o.mode, "c1 or c2")->check(CLI::IsMember({"c1", "c2"}));
  dio->add_option("--v", o.v, "comma-separated literals")->required();
  dio->add_option("--gamma", o.gamma, "shift list (c1) or single shift (c2)");
  dio->add_option("--N", o.N, "scan bound")->check(CLI::PositiveNumber);
  dio->add_option("--csv", o.csv, "record CSV path");

  CLI::App* gdp = add("gdp", "product-value probe on a grid", run_gdp);
  gdp->add_option("--lattice", o.lattice, "identity:d, zv:v..., or xv:v...");
  gdp->add_option("--lattice-json", o.lattice_json, "lattice JSON file");
  gdp->add_option("--shift", o.shift, "grid shift w");
  gdp->add_option("--target", o.target, "target value literal");
  gdp->add_option("--eps", o.eps, "tolerance")->check(CLI::PositiveNumber);
  gdp->add_option("--bound", o.bound, "coefficient bound")->check(CLI::PositiveNumber);

  CLI::App* factor = add("factor", "g_v = c p Phi factorization", run_factor);
  field_flags(factor);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  try {
    const int prec = resolve_precision(o.precision);
    PrecisionScope scope(prec);
    json report = envelope(*sub, prec);
    report["result"] = handlers.at(sub->get_name())(o, prec);
    emit(report, o.out);
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return is_precision_error(e.code()) ? kExitPrecision : kExitPrecondition;
  } catch (const json::exception& e) {
    std::cerr << "json: " << e.what() << "\n";
    return kExitPrecondition;
  }
}
