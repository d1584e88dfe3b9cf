#ifndef WPB_CLI_HPP
#define WPB_CLI_HPP

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "evolve.hpp"
#include "io.hpp"
#include "metrics.hpp"
#include "problems.hpp"
#include "regress.hpp"
#include "volume.hpp"
#include "wpb.hpp"

namespace wpb::cli
{

using nlohmann::json;

/// Bad flag combinations that CLI11 cannot see; mapped to exit code 2.
struct UsageError : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

inline auto default_workers() -> std::size_t
{
  if (const char* env = std::getenv("WPB_WORKERS")) {
    try {
      long v = std::stol(env);
      if (v >= 1)
        return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
  }
  return 1;
}

inline auto instance_json(const ProblemInstance& inst) -> json
{
  json j;
  j["name"] = inst.label();
  j["generator"] = to_string(inst.generator);
  j["m"] = inst.m();
  j["s"] = inst.params.s;
  j["p"] = inst.params.p;
  j["ell"] = inst.params.ell;
  if (!inst.params.d.empty())
    j["d"] = inst.params.d;
  if (inst.params.gap)
    j["gap"] = *inst.params.gap;
  j["ideal"] = inst.params.ideal;
  return j;
}

struct InstanceArgs
{
  std::string name;
  std::string config;
  std::string inline_params;
  std::size_t m = 3;

  void attach(CLI::App* app)
  {
    auto* a = app->add_option("--instance", name, "catalog instance (EMOP1..16, MOPW1..16)");
    auto* b = app->add_option("--config", config, "instance config file (key=value lines)");
    auto* c = app->add_option("--params", inline_params, "inline config, entries separated by ';'");
    a->excludes(b)->excludes(c);
    b->excludes(c);
    app->add_option("--m", m, "objective count for catalog instances")->check(CLI::Range(2, 64));
  }

  auto resolve() const -> ProblemInstance
  {
    if (!name.empty()) {
      auto names = catalog_names();
      if (std::find(names.begin(), names.end(), name) == names.end())
        throw UsageError("unknown instance '" + name + "'");
      return catalog(name, m);
    }
    if (!config.empty())
      return load_config(config);
    if (!inline_params.empty()) {
      auto text = inline_params;
      std::replace(text.begin(), text.end(), ';', '\n');
      try {
        return parse_config(text);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
    }
    throw UsageError("one of --instance, --config or --params is required");
  }
};

inline auto prepare_dir(const std::string& dir) -> std::filesystem::path
{
  std::filesystem::path p(dir);
  std::error_code ec;
  std::filesystem::create_directories(p, ec);
  if (ec)
    throw std::runtime_error("cannot create output directory '" + dir + "': " + ec.message());
  return p;
}

inline auto parse_p(const std::string& s) -> double
{
  if (s == "inf" || s == "infinity")
    return std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || !(v > 0))
    throw UsageError("--p must be a positive number or 'inf'");
  return v;
}

inline auto median(std::vector<double> v) -> double
{
  if (v.empty())
    return 0.0;
  std::sort(v.begin(), v.end());
  auto n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

inline auto mean_std(const std::vector<double>& v) -> std::pair<double, double>
{
  if (v.empty())
    return {0.0, 0.0};
  double m = 0;
  for (double x : v)
    m += x;
  m /= static_cast<double>(v.size());
  double s = 0;
  for (double x : v)
    s += (x - m) * (x - m);
  double sd = v.size() > 1 ? std::sqrt(s / static_cast<double>(v.size() - 1)) : 0.0;
  return {m, sd};
}

// ---- generate ----

struct GenerateArgs
{
  InstanceArgs inst;
  std::size_t resolution = 0;
  std::size_t pf_h = 30;
  std::string out = ".";
};

inline void cmd_generate(const GenerateArgs& a)
{
  auto inst = a.inst.resolve();
  const auto m = inst.m();
  auto res = a.resolution ? a.resolution : default_resolution(m);
  if (res < 2)
    throw UsageError("--resolution must be at least 2");
  if (a.pf_h < 1)
    throw UsageError("--pf-h must be at least 1");
  auto dir = prepare_dir(a.out);

  json meta;
  meta["command"] = "generate";
  meta["instance"] = instance_json(inst);
  meta["resolution"] = res;
  meta["pf_h"] = a.pf_h;

  {
    auto m2 = meta;
    m2["content"] = "pf";
    io::CsvWriter w((dir / "pf.csv").string(), m2, io::objective_columns(m));
    for (auto& z : pf_sample(inst, a.pf_h))
      w.row(z);
  }
  for (auto& s : sample_all(inst, res)) {
    auto m2 = meta;
    m2["content"] = "wpb";
    m2["wpb"] = s.descriptor.label();
    m2["nu"] = s.descriptor.nu;
    io::CsvWriter w((dir / ("wpb_" + s.descriptor.label() + ".csv")).string(), m2, io::objective_columns(m));
    for (auto& z : s.points())
      w.row(z);
  }
  std::ofstream cfg(dir / "instance.cfg");
  if (!cfg)
    throw std::runtime_error("cannot write instance.cfg");
  cfg << serialize_config(inst);
}

// ---- volume ----

struct VolumeArgs
{
  std::size_t m = 3;
  std::string p = "1";
  std::size_t nu = 0;
  std::string index_set;
  double r_free = 1.3;
  std::string sweep = "delta";
  std::vector<double> deltas;
  std::vector<double> positions;
  double delta = 0.1;
  std::vector<std::string> methods;
  std::size_t samples = 1000000;
  std::uint64_t seed = 1;
  std::size_t workers = 0;
  bool fit = false;
  std::size_t degree = 6;
  std::string out = "volume.csv";
};

inline void cmd_volume(VolumeArgs a)
{
  const double p = parse_p(a.p);
  CaseStudyFront front(a.m, p);
  IndexSet I;
  if (!a.index_set.empty()) {
    try {
      I = IndexSet::parse(a.index_set, a.m);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  } else {
    std::size_t nu = a.nu ? a.nu : 1;
    std::vector<std::size_t> idx;
    for (std::size_t j = 0; j < nu; ++j)
      idx.push_back(j);
    I = IndexSet(idx);
  }
  if (I.size() < 1 || I.size() >= a.m)
    throw UsageError("index set size must lie in [1, m-1]");
  if (a.sweep != "delta" && a.sweep != "midline")
    throw UsageError("--sweep must be 'delta' or 'midline'");
  if (a.fit && a.sweep != "delta")
    throw UsageError("--fit applies to delta sweeps only");
  if (a.methods.empty())
    a.methods = {p == 1.0 ? "exact" : "mc"};
  std::vector<VolumeMethod> methods;
  for (auto& s : a.methods) {
    try {
      methods.push_back(parse_volume_method(s));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    if (methods.back() == VolumeMethod::exact && p != 1.0)
      throw UsageError("method 'exact' needs --p 1");
  }
  auto& xs = a.sweep == "delta" ? a.deltas : a.positions;
  if (xs.empty()) {
    if (a.sweep == "delta")
      for (int i = 0; i <= 50; ++i)
        xs.push_back(0.01 * i);
    else
      for (int i = 0; i <= 20; ++i)
        xs.push_back(0.05 * i);
  }
  if (a.fit) {
    auto positive = std::count_if(xs.begin(), xs.end(), [](double x) { return x > 0; });
    if (static_cast<std::size_t>(positive) < a.degree + 2)
      throw UsageError("--fit needs at least degree + 2 positive deltas");
  }
  const auto workers = a.workers ? a.workers : default_workers();

  json meta;
  meta["command"] = "volume";
  meta["m"] = a.m;
  meta["p"] = a.p;
  meta["index_set"] = I.label();
  meta["nu"] = I.size();
  meta["r_free"] = a.r_free;
  meta["sweep"] = a.sweep;
  meta["x"] = xs;
  if (a.sweep == "midline")
    meta["delta"] = a.delta;
  meta["methods"] = a.methods;
  meta["samples"] = a.samples;
  meta["seed"] = a.seed;
  meta["workers"] = workers;
  meta["fit"] = a.fit;
  if (a.fit)
    meta["degree"] = a.degree;

  std::vector<std::vector<SweepPoint>> curves;
  for (auto mth : methods) {
    VolumeOptions opt{mth, a.samples, a.seed, workers};
    if (a.sweep == "delta")
      curves.push_back(delta_sweep(front, I, a.r_free, xs, opt));
    else
      curves.push_back(midline_sweep(front, I, a.delta, xs, a.r_free, opt));
  }

  const auto x_name = a.sweep == "delta" ? "delta" : "position";
  io::CsvWriter w(a.out, meta, {x_name, "volume", "std_error", "method", "m", "nu", "p", "r_free"});
  for (std::size_t k = 0; k < methods.size(); ++k)
    for (auto& pt : curves[k])
      w.row(std::vector<std::string>{io::fmt(pt.x), io::fmt(pt.estimate.value), io::fmt(pt.estimate.std_error),
                                     to_string(methods[k]), std::to_string(a.m), std::to_string(I.size()), a.p,
                                     io::fmt(a.r_free)});
  if (!a.fit)
    return;
  for (std::size_t k = 0; k < methods.size(); ++k) {
    auto tag = to_string(methods[k]);
    try {
      w.summary("growth_order_" + tag, growth_order(curves[k]));
    } catch (const std::invalid_argument& e) {
      w.summary("growth_order_" + tag, std::string("unavailable: ") + e.what());
    }
    Curve c;
    for (auto& pt : curves[k])
      if (pt.x > 0)
        c.emplace_back(pt.x, pt.estimate.value);
    auto f = lasso_poly_fit_cv(c, a.degree);
    w.summary("lambda_" + tag, f.lambda);
    w.summary("lowest_active_degree_" + tag, static_cast<double>(lowest_active_degree(f, 1e-3)));
    for (std::size_t d = 0; d < f.coefficients.size(); ++d)
      w.summary("coef" + std::to_string(d + 1) + "_" + tag, f.coefficients[d]);
  }
}

// ---- fit ----

struct FitArgs
{
  std::string input;
  std::string x_col;
  std::string y_col;
  std::string method;
  std::size_t degree = 6;
  double lambda = -1.0;
  double tol = 1e-3;
  std::string tag;
  std::string out = "fit.csv";
};

/// Accepts a sweep file (x, volume, method columns) or any two numeric columns.
inline void cmd_fit(const FitArgs& a)
{
  auto t = io::read_csv(a.input);
  if (t.columns.size() < 2)
    throw UsageError("input needs at least two columns");
  auto xi = a.x_col.empty() ? std::size_t{0} : t.column(a.x_col);
  auto yi = a.y_col.empty() ? (t.has("volume") ? t.column("volume") : std::size_t{1}) : t.column(a.y_col);
  std::optional<std::size_t> mi;
  if (t.has("method"))
    mi = t.column("method");
  std::string method = a.method;
  if (mi && method.empty() && !t.cells.empty())
    method = t.cells[0][*mi];
  Curve c;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    if (mi && t.cells[r][*mi] != method)
      continue;
    double x = t.rows[r][xi], y = t.rows[r][yi];
    if (std::isnan(x) || std::isnan(y))
      throw std::runtime_error("non-numeric value in the fitted columns");
    if (x > 0)
      c.emplace_back(x, y);
  }
  if (c.size() < a.degree + 2)
    throw UsageError("fit needs at least degree + 2 rows with positive x");
  auto f = a.lambda >= 0 ? lasso_poly_fit(c, a.degree, a.lambda) : lasso_poly_fit_cv(c, a.degree);

  std::string tag = a.tag;
  if (tag.empty()) {
    tag = std::filesystem::path(a.input).stem().string();
    if (!method.empty())
      tag += ":" + method;
  }
  json meta;
  meta["command"] = "fit";
  meta["input"] = a.input;
  meta["x"] = t.columns[xi];
  meta["y"] = t.columns[yi];
  if (!method.empty())
    meta["method"] = method;
  meta["degree"] = a.degree;
  meta["lambda"] = a.lambda >= 0 ? json(a.lambda) : json("cv");
  meta["tol"] = a.tol;
  meta["tag"] = tag;
  io::CsvWriter w(a.out, meta, {"degree", "coefficient", "lambda", "tag"});
  for (std::size_t d = 0; d < f.coefficients.size(); ++d)
    w.row(std::vector<std::string>{std::to_string(d + 1), io::fmt(f.coefficients[d]), io::fmt(f.lambda), tag});
  w.summary("lowest_active_degree", static_cast<double>(lowest_active_degree(f, a.tol)));
  try {
    w.summary("growth_order", growth_order(c));
  } catch (const std::invalid_argument&) {
  }
}

// ---- evolve ----

struct EvolveArgs
{
  InstanceArgs inst;
  std::string select = "pareto_crowding";
  double rho = 0.05;
  std::size_t neighborhood = 20;
  std::vector<double> cone_delta;
  std::size_t pop = 0;
  std::size_t budget = 0;
  std::size_t runs = 30;
  std::uint64_t seed = 1;
  std::size_t workers = 0;
  double threshold = 0.05;
  std::size_t resolution = 0;
  bool igd_down = false;
  bool build_baseline = false;
  std::size_t baseline_runs = 0;
  bool snapshots = false;
  std::string out = ".";
};

inline void cmd_evolve(const EvolveArgs& a)
{
  if (a.igd_down && !a.build_baseline)
    throw UsageError("--igd-down needs an ideal baseline; add --build-baseline");
  auto inst = a.inst.resolve();
  const auto m = inst.m();
  if (a.runs < 1)
    throw UsageError("--runs must be at least 1");
  EvolutionConfig cfg;
  try {
    cfg.selection.kind = parse_selection(a.select);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  cfg.selection.rho = a.rho;
  cfg.selection.neighborhood = a.neighborhood;
  cfg.selection.delta = a.cone_delta;
  cfg.population_size = a.pop ? a.pop : default_population(m);
  cfg.max_evaluations = a.budget ? a.budget : default_budget(m);
  const auto workers = a.workers ? a.workers : default_workers();
  const auto res = a.resolution ? a.resolution : default_resolution(m);
  if (res < 2)
    throw UsageError("--resolution must be at least 2");

  json meta;
  meta["command"] = "evolve";
  meta["instance"] = instance_json(inst);
  meta["selection"] = to_string(cfg.selection.kind);
  meta["rho"] = a.rho;
  meta["neighborhood"] = a.neighborhood;
  meta["cone_delta"] = a.cone_delta;
  meta["population"] = cfg.population_size;
  meta["budget"] = cfg.max_evaluations;
  meta["runs"] = a.runs;
  meta["seed"] = a.seed;
  meta["workers"] = workers;
  meta["threshold"] = a.threshold;
  meta["resolution"] = res;
  meta["igd_down"] = a.igd_down;
  meta["build_baseline"] = a.build_baseline;

  std::vector<RunRecord> recs(a.runs);
  parallel_for(a.runs, workers, [&](std::size_t r) {
    auto c = cfg;
    c.seed = a.seed + r;
    recs[r] = run(inst, c);
  });

  auto samples = sample_all(inst, res);
  std::vector<std::map<std::size_t, std::size_t>> gammas(a.runs);
  parallel_for(a.runs, workers, [&](std::size_t r) { gammas[r] = count_drs(recs[r].snapshots, samples, a.threshold); });

  auto pf = pf_baseline(inst);
  std::optional<BaselineSet> ideal;
  if (a.build_baseline) {
    auto nb = a.baseline_runs ? a.baseline_runs : a.runs;
    meta["baseline_runs"] = nb;
    ideal = build_ideal_baseline(inst, cfg, nb, a.seed, workers);
  }

  auto dir = prepare_dir(a.out);
  const auto tag = inst.label();
  const auto alg = to_string(cfg.selection.kind);
  for (std::size_t r = 0; r < a.runs; ++r) {
    auto rm = meta;
    rm["run"] = r;
    rm["run_seed"] = recs[r].seed;
    rm["evaluations"] = recs[r].evaluations;
    auto cols = io::objective_columns(m);
    cols.insert(cols.begin(), {"generation", "member_index"});
    io::CsvWriter w((dir / ("run_" + std::to_string(r) + ".csv")).string(), rm, cols);
    const auto& snaps = recs[r].snapshots;
    std::size_t first = a.snapshots ? 0 : snaps.size() - 1;
    for (std::size_t g = first; g < snaps.size(); ++g)
      for (std::size_t i = 0; i < snaps[g].size(); ++i) {
        std::vector<double> row{static_cast<double>(g), static_cast<double>(i)};
        row.insert(row.end(), snaps[g][i].begin(), snaps[g][i].end());
        w.row(row);
      }
  }
  {
    io::CsvWriter w((dir / "gamma.csv").string(), meta, {"instance", "algorithm", "seed", "nu", "gamma"});
    std::map<std::size_t, std::vector<double>> by_nu;
    for (std::size_t r = 0; r < a.runs; ++r)
      for (auto [nu, g] : gammas[r]) {
        w.row(std::vector<std::string>{tag, alg, std::to_string(recs[r].seed), std::to_string(nu), std::to_string(g)});
        by_nu[nu].push_back(static_cast<double>(g));
      }
    for (auto& [nu, v] : by_nu)
      w.summary("median_gamma_" + std::to_string(nu), median(v));
  }
  {
    io::CsvWriter w((dir / "metrics.csv").string(), meta, {"instance", "algorithm", "seed", "metric_name", "value"});
    std::vector<double> iv, dv;
    for (std::size_t r = 0; r < a.runs; ++r) {
      auto fin = recs[r].final_objectives();
      auto seed = std::to_string(recs[r].seed);
      iv.push_back(igd(fin, pf, inst.bounds()));
      w.row(std::vector<std::string>{tag, alg, seed, "igd", io::fmt(iv.back())});
      if (a.igd_down) {
        dv.push_back(igd(fin, *ideal, inst.bounds()));
        w.row(std::vector<std::string>{tag, alg, seed, "igd_down", io::fmt(dv.back())});
      }
    }
    auto [mi, si] = mean_std(iv);
    w.summary("igd_mean", mi);
    w.summary("igd_std", si);
    if (a.igd_down) {
      auto [md, sd] = mean_std(dv);
      w.summary("igd_down_mean", md);
      w.summary("igd_down_std", sd);
    }
  }
}

// ---- metrics ----

struct MetricsArgs
{
  std::vector<std::string> inputs;
  std::vector<double> reference;
  InstanceArgs inst;
  std::string baseline;
  std::string out = "metrics.csv";
};

inline auto objective_indices(const io::CsvTable& t) -> std::vector<std::size_t>
{
  std::vector<std::size_t> idx;
  for (std::size_t j = 1; t.has("f" + std::to_string(j)); ++j)
    idx.push_back(t.column("f" + std::to_string(j)));
  if (idx.empty())
    throw UsageError("input has no f1.. columns");
  return idx;
}

/// Objective vectors of a file; for run records only the last generation is used.
inline auto load_points(const io::CsvTable& t) -> std::vector<ObjectiveVector>
{
  auto fi = objective_indices(t);
  std::optional<std::size_t> gi;
  double last = -1;
  if (t.has("generation")) {
    gi = t.column("generation");
    for (auto& r : t.rows)
      last = std::max(last, r[*gi]);
  }
  std::vector<ObjectiveVector> pts;
  for (auto& r : t.rows) {
    if (gi && r[*gi] != last)
      continue;
    ObjectiveVector z;
    for (auto j : fi) {
      if (std::isnan(r[j]))
        throw std::runtime_error("non-numeric objective value");
      z.push_back(r[j]);
    }
    pts.push_back(std::move(z));
  }
  return pts;
}

inline auto meta_string(const json& meta, const char* key, const std::string& fallback) -> std::string
{
  if (meta.is_object() && meta.contains(key)) {
    const auto& v = meta[key];
    if (v.is_string())
      return v.get<std::string>();
    if (v.is_number_unsigned())
      return std::to_string(v.get<std::uint64_t>());
    if (v.is_object() && v.contains("name"))
      return v["name"].get<std::string>();
  }
  return fallback;
}

inline void cmd_metrics(const MetricsArgs& a)
{
  const bool has_inst = !a.inst.name.empty() || !a.inst.config.empty() || !a.inst.inline_params.empty();
  if (a.reference.empty() && !has_inst && a.baseline.empty())
    throw UsageError("nothing to compute: give --reference and/or an instance or --baseline");

  std::optional<ProblemInstance> inst;
  if (has_inst)
    inst = a.inst.resolve();

  json meta;
  meta["command"] = "metrics";
  meta["inputs"] = a.inputs;
  if (!a.reference.empty())
    meta["reference"] = a.reference;
  if (inst)
    meta["instance"] = instance_json(*inst);
  if (!a.baseline.empty())
    meta["baseline"] = a.baseline;

  std::optional<BaselineSet> base;
  if (!a.baseline.empty())
    base = BaselineSet{load_points(io::read_csv(a.baseline)), BaselineSet::Origin::pf_sample};
  else if (inst)
    base = pf_baseline(*inst);

  io::CsvWriter w(a.out, meta, {"instance", "algorithm", "seed", "metric_name", "value"});
  for (auto& path : a.inputs) {
    auto t = io::read_csv(path);
    auto pts = load_points(t);
    if (pts.empty())
      throw std::runtime_error("'" + path + "' holds no objective vectors");
    const auto m = pts[0].size();
    if (!a.reference.empty() && a.reference.size() != m)
      throw UsageError("--reference needs " + std::to_string(m) + " entries");
    if (inst && inst->m() != m)
      throw UsageError("instance dimension differs from '" + path + "'");
    if (base && base->points[0].size() != m)
      throw UsageError("baseline dimension differs from '" + path + "'");
    auto tag = inst ? inst->label() : meta_string(t.meta, "instance", "-");
    auto alg = meta_string(t.meta, "selection", "-");
    auto seed = meta_string(t.meta, "run_seed", "-");
    if (!a.reference.empty())
      w.row(std::vector<std::string>{tag, alg, seed, "hypervolume", io::fmt(hypervolume(pts, a.reference))});
    if (base) {
      auto bounds = inst ? inst->bounds() : FrontBounds::unit(m);
      w.row(std::vector<std::string>{tag, alg, seed, "igd", io::fmt(igd(pts, *base, bounds))});
    }
  }
}

// ---- entry point ----

inline int run(int argc, char** argv)
{
  CLI::App app{"weak Pareto boundary toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", io::version);

  GenerateArgs ga;
  auto* gen = app.add_subcommand("generate", "sample the PF and every WPB of an instance");
  ga.inst.attach(gen);
  gen->add_option("--resolution", ga.resolution, "points per surface axis (default depends on m)");
  gen->add_option("--pf-h", ga.pf_h, "lattice divisions for the PF sample");
  gen->add_option("--out", ga.out, "output directory");

  VolumeArgs va;
  auto* vol = app.add_subcommand("volume", "enclosed-volume sweeps on the case-study fronts");
  vol->add_option("--m", va.m, "objective count")->check(CLI::Range(2, 10));
  vol->add_option("--p", va.p, "front shape, positive or 'inf'");
  auto* nu_opt = vol->add_option("--nu", va.nu, "WPB category; uses indices 1..nu")->check(CLI::Range(1, 9));
  vol->add_option("--index-set", va.index_set, "explicit index set such as 1-3")->excludes(nu_opt);
  vol->add_option("--rfree", va.r_free, "reference value on the free axes");
  vol->add_option("--sweep", va.sweep, "delta or midline")->check(CLI::IsMember({"delta", "midline"}));
  vol->add_option("--deltas", va.deltas, "offsets for a delta sweep")->delimiter(',');
  vol->add_option("--positions", va.positions, "positions in [0,1] for a midline sweep")->delimiter(',');
  vol->add_option("--delta", va.delta, "offset for a midline sweep");
  vol->add_option("--method", va.methods, "exact, mc, scalarized, pinf, pzero")->delimiter(',');
  vol->add_option("--samples", va.samples, "Monte Carlo samples or scalarized directions");
  vol->add_option("--seed", va.seed);
  vol->add_option("--workers", va.workers, "threads (default: WPB_WORKERS or 1)");
  vol->add_flag("--fit", va.fit, "append growth order and lasso fit summaries");
  vol->add_option("--degree", va.degree, "polynomial degree cap for --fit");
  vol->add_option("--out", va.out, "output CSV file");

  FitArgs fa;
  auto* fit = app.add_subcommand("fit", "sparse polynomial fit of a volume curve");
  fit->add_option("--input", fa.input, "curve CSV")->required();
  fit->add_option("--x", fa.x_col, "x column (default: first)");
  fit->add_option("--y", fa.y_col, "y column (default: volume, else second)");
  fit->add_option("--method", fa.method, "rows of this method only (sweep files)");
  fit->add_option("--tag", fa.tag, "label written next to each coefficient");
  fit->add_option("--degree", fa.degree)->check(CLI::Range(1, 20));
  fit->add_option("--lambda", fa.lambda, "penalty; omit for cross-validation")->check(CLI::NonNegativeNumber);
  fit->add_option("--tol", fa.tol, "activity threshold for the lowest degree")->check(CLI::PositiveNumber);
  fit->add_option("--out", fa.out, "output CSV file");

  EvolveArgs ea;
  auto* evo = app.add_subcommand("evolve", "seeded evolutionary runs with DRS counts and IGD");
  ea.inst.attach(evo);
  evo->add_option("--select", ea.select, "pareto_crowding, cone_crowding or decomposition");
  evo->add_option("--rho", ea.rho, "augmentation weight for decomposition");
  evo->add_option("--neighborhood", ea.neighborhood, "decomposition neighborhood size");
  evo->add_option("--cone-delta", ea.cone_delta, "cone widths, one per objective")->delimiter(',');
  evo->add_option("--pop", ea.pop, "population size (default depends on m)");
  evo->add_option("--budget", ea.budget, "evaluations per run (default depends on m)");
  evo->add_option("--runs", ea.runs);
  evo->add_option("--seed", ea.seed, "seed of the first run; run r uses seed + r");
  evo->add_option("--workers", ea.workers, "threads (default: WPB_WORKERS or 1)");
  evo->add_option("--threshold", ea.threshold, "DRS distance threshold in normalized units");
  evo->add_option("--resolution", ea.resolution, "WPB sampling resolution");
  evo->add_flag("--igd-down", ea.igd_down, "also report IGD against the ideal baseline");
  evo->add_flag("--build-baseline", ea.build_baseline, "build the ideal baseline from position-only runs");
  evo->add_option("--baseline-runs", ea.baseline_runs, "runs used for the ideal baseline (default: --runs)");
  evo->add_flag("--snapshots", ea.snapshots, "write every generation, not only the last, to run_<k>.csv");
  evo->add_option("--out", ea.out, "output directory");

  MetricsArgs ma;
  auto* met = app.add_subcommand("metrics", "hypervolume and IGD of objective sets");
  met->add_option("--input", ma.inputs, "CSV files with f1..fm columns (run records use their last generation)")
    ->required();
  met->add_option("--reference", ma.reference, "hypervolume reference point")->delimiter(',');
  ma.inst.attach(met);
  met->add_option("--baseline", ma.baseline, "baseline CSV for IGD (default: PF sample of the instance)");
  met->add_option("--out", ma.out, "output CSV file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*gen)
      cmd_generate(ga);
    else if (*vol)
      cmd_volume(va);
    else if (*fit)
      cmd_fit(fa);
    else if (*evo)
      cmd_evolve(ea);
    else if (*met)
      cmd_metrics(ma);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

} // namespace wpb::cli

#endif
