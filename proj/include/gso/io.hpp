#pragma once

#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>

#include <json.hpp>

#include "gso/apps.hpp"

namespace gso {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Readings CSV. Header row names columns `loc<id>_<type>`; one row per time
// sample, numeric cells. Discretization into equal-width bins happens at
// ingestion.

inline void write_readings_csv(const RawReadings& raw, std::ostream& os) {
  for (int l = 0; l < raw.n_locations; ++l)
    for (int q = 0; q < raw.n_types; ++q)
      os << (l * raw.n_types + q ? "," : "") << "loc" << l << "_t" << q;
  os << "\n";
  const int cols = raw.n_cols();
  for (int r = 0; r < raw.n_rows(); ++r) {
    for (int c = 0; c < cols; ++c)
      os << (c ? "," : "") << format_real(raw.cells[static_cast<std::size_t>(r) * cols + c], 17);
    os << "\n";
  }
}

inline RawReadings read_readings_csv(std::istream& is) {
  std::string line;
  require(static_cast<bool>(std::getline(is, line)), "readings csv: missing header");
  // header: loc<id>_<type>; types are indexed by first appearance per location 0
  std::vector<std::pair<int, std::string>> cols;
  {
    std::istringstream hs(line);
    std::string cell;
    while (std::getline(hs, cell, ',')) {
      require(cell.rfind("loc", 0) == 0, "readings csv: header cells must look like loc<id>_<type>");
      const auto us = cell.find('_');
      require(us != std::string::npos, "readings csv: header cell missing _<type>");
      cols.emplace_back(std::stoi(cell.substr(3, us - 3)), cell.substr(us + 1));
    }
  }
  std::vector<std::string> type_names;
  int n_locations = 0;
  for (const auto& [loc, type] : cols) {
    n_locations = std::max(n_locations, loc + 1);
    if (std::find(type_names.begin(), type_names.end(), type) == type_names.end())
      type_names.push_back(type);
  }
  const int n_types = static_cast<int>(type_names.size());
  require(static_cast<int>(cols.size()) == n_locations * n_types,
          "readings csv: expected one column per (location, type) pair");

  RawReadings raw;
  raw.n_locations = n_locations;
  raw.n_types = n_types;
  std::vector<int> col_slot(cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const int t = static_cast<int>(std::find(type_names.begin(), type_names.end(), cols[c].second) -
                                   type_names.begin());
    col_slot[c] = cols[c].first * n_types + t;
  }
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string cell;
    std::vector<double> row(cols.size());
    std::size_t c = 0;
    while (std::getline(ls, cell, ',')) {
      require(c < cols.size(), "readings csv: too many cells in a row");
      row[col_slot[c]] = std::stod(cell);
      ++c;
    }
    require(c == cols.size(), "readings csv: short row");
    raw.cells.insert(raw.cells.end(), row.begin(), row.end());
  }
  return raw;
}

inline ReadingsTable load_readings_csv(const std::filesystem::path& path, int bins) {
  std::ifstream is(path);
  require(is.good(), "cannot open readings csv: " + path.string());
  return discretize(read_readings_csv(is), bins);
}

// ---------------------------------------------------------------------------
// Instance files.

/// JSON instance description. Canonical form sorts keys, so parse-serialize
/// is the identity on canonical files.
struct ProblemInstance {
  int schema_version = 1;
  std::string id;
  std::string kind;
  std::uint64_t seed = 0;
  json params = json::object();
  std::string readings_csv;  // optional, resolved against the instance dir
  std::filesystem::path base_dir;

  json to_json() const {
    json j;
    j["schema_version"] = schema_version;
    j["id"] = id;
    j["kind"] = kind;
    j["seed"] = seed;
    j["params"] = params;
    if (!readings_csv.empty()) j["readings_csv"] = readings_csv;
    return j;
  }
};

inline const std::vector<std::string>& known_kinds() {
  static const std::vector<std::string> kinds = {
      "submod-min", "submod-max", "ksub-max",     "bisub-min",   "ccmin",
      "mean-risk",  "sensor",     "robust-sensor", "feature-sel", "ad-influence"};
  return kinds;
}

inline ProblemInstance parse_instance(const json& j, const std::filesystem::path& base_dir = {}) {
  ProblemInstance inst;
  inst.base_dir = base_dir;
  try {
    require(j.contains("schema_version"), "missing field schema_version");
    inst.schema_version = j.at("schema_version").get<int>();
    require(inst.schema_version == 1, "unsupported schema_version");
    require(j.contains("kind"), "missing field kind");
    inst.kind = j.at("kind").get<std::string>();
    const auto& kinds = known_kinds();
    require(std::find(kinds.begin(), kinds.end(), inst.kind) != kinds.end(),
            "unknown kind: " + inst.kind);
    inst.id = j.value("id", inst.kind);
    inst.seed = j.value("seed", 0ULL);
    inst.params = j.value("params", json::object());
    inst.readings_csv = j.value("readings_csv", std::string());
  } catch (const json::exception& e) {
    throw GsoError(std::string("instance schema violation: ") + e.what());
  }
  return inst;
}

inline ProblemInstance load_instance(const std::filesystem::path& path) {
  std::ifstream is(path);
  require(is.good(), "cannot open instance file: " + path.string());
  json j;
  try {
    is >> j;
  } catch (const json::exception& e) {
    throw GsoError("instance parse error in " + path.string() + ": " + e.what());
  }
  return parse_instance(j, path.parent_path());
}

inline void save_instance(const ProblemInstance& inst, const std::filesystem::path& path) {
  std::ofstream os(path);
  require(os.good(), "cannot write instance file: " + path.string());
  os << inst.to_json().dump(2) << "\n";
}

inline ReadingsTable instance_readings(const ProblemInstance& inst, int n, int k, int rows,
                                       int bins) {
  if (!inst.readings_csv.empty()) {
    std::filesystem::path p = inst.readings_csv;
    if (p.is_relative() && !inst.base_dir.empty()) p = inst.base_dir / p;
    ReadingsTable t = load_readings_csv(p, bins);
    require(t.n_locations >= n && t.n_types >= k, "readings csv smaller than instance dimensions");
    return t;
  }
  return gen_readings_table(n, k, rows, bins, inst.seed);
}

// ---------------------------------------------------------------------------
// Report rows.

struct ReportRow {
  std::string instance_id;
  std::string method;  // dcg | es
  std::string status;  // gap | no_violation | ... | error:<msg>
  double value = std::numeric_limits<double>::quiet_NaN();
  double end_gap = kInf;
  long nodes = 0;
  std::map<CutFamily, long> cuts;
  double time_s = 0.0;

  long cuts_total() const {
    long t = 0;
    for (auto [fam, c] : cuts) t += c;
    return t;
  }

  bool converged(double eps) const { return end_gap <= eps; }
};

inline const std::vector<CutFamily>& report_families() {
  static const std::vector<CutFamily> fams = {CutFamily::EPI,    CutFamily::SI,
                                              CutFamily::ALI,    CutFamily::LEPI,
                                              CutFamily::SUBMAX, CutFamily::KSUB,
                                              CutFamily::EPBM,   CutFamily::MIR};
  return fams;
}

inline std::string report_csv_header() {
  std::string h = "instance,method,status,value,end_gap,nodes";
  for (CutFamily fam : report_families()) h += std::string(",cuts_") + to_string(fam);
  h += ",cuts_total,time_s";
  return h;
}

inline std::string report_csv_row(const ReportRow& row) {
  std::ostringstream os;
  os << row.instance_id << "," << row.method << "," << row.status << ","
     << format_real(row.value, 12) << "," << format_real(std::max(0.0, row.end_gap), 6) << ","
     << row.nodes;
  for (CutFamily fam : report_families()) {
    const auto it = row.cuts.find(fam);
    os << "," << (it == row.cuts.end() ? 0 : it->second);
  }
  os << "," << row.cuts_total() << "," << std::fixed << std::setprecision(4) << row.time_s;
  return os.str();
}

/// Aligned text table for humans.
inline void print_report_table(const std::vector<ReportRow>& rows, std::ostream& os) {
  std::vector<std::vector<std::string>> cells;
  cells.push_back({"instance", "method", "status", "value", "gap", "nodes", "cuts", "time_s"});
  for (const auto& r : rows) {
    cells.push_back({r.instance_id, r.method, r.status, format_real(r.value, 9),
                     format_real(std::max(0.0, r.end_gap), 3), std::to_string(r.nodes),
                     std::to_string(r.cuts_total()), format_real(r.time_s, 4)});
  }
  std::vector<std::size_t> width(cells[0].size(), 0);
  for (const auto& line : cells)
    for (std::size_t c = 0; c < line.size(); ++c) width[c] = std::max(width[c], line[c].size());
  for (const auto& line : cells) {
    for (std::size_t c = 0; c < line.size(); ++c)
      os << std::left << std::setw(static_cast<int>(width[c]) + 2) << line[c];
    os << "\n";
  }
}

// ---------------------------------------------------------------------------
// Instance solving / dispatch shared by the CLI and the bench runner.

struct SolveOptions {
  DcgConfig dcg;
  int bins = 4;
  int es_cap_bits = 26;
  double outer_cap = 1e6;
};

namespace detail {

inline std::vector<LinearRow> cardinality_rows_from_params(const json& params, int n) {
  std::vector<LinearRow> rows;
  auto add = [&](char rel, double rhs) {
    LinearRow row;
    for (int i = 0; i < n; ++i) row.terms.emplace_back(i, 1.0);
    row.relation = rel;
    row.rhs = rhs;
    rows.push_back(std::move(row));
  };
  if (params.contains("cardinality_max")) add('L', params.at("cardinality_max").get<double>());
  if (params.contains("cardinality_min")) add('G', params.at("cardinality_min").get<double>());
  return rows;
}

inline SetOracle set_oracle_from_params(const ProblemInstance& inst, int n) {
  const std::string oracle = inst.params.value("oracle", std::string("coverage-minus-modular"));
  SetOracle f = [&]() -> SetOracle {
    if (oracle == "coverage") return make_coverage_oracle(gen_coverage(n, inst.seed));
    if (oracle == "graph-cut") return make_graph_cut_oracle(gen_graph_cut(n, inst.seed));
    if (oracle == "concave-of-linear")
      return make_concave_of_linear_oracle(gen_concave_of_linear(n, inst.seed));
    if (oracle == "coverage-minus-modular") {
      Coverage cov = gen_coverage(n, inst.seed);
      std::vector<double> costs = gen_modular(n, splitmix64(inst.seed), 0.2, 1.4);
      return SetOracle(GroundSet(n), [cov, costs, n](const SetPoint& p) {
        double v = cov.eval(p);
        for (int i = 0; i < n; ++i)
          if (p.test(i)) v -= costs[i];
        return v;
      });
    }
    throw GsoError("unknown set oracle kind: " + oracle);
  }();
  normalize_set_oracle(f);
  return f;
}

inline MeanRiskSpec mean_risk_from_params(const ProblemInstance& inst) {
  MeanRiskSpec spec;
  if (inst.params.contains("mu")) {
    spec.mu = inst.params.at("mu").get<std::vector<double>>();
    spec.a = inst.params.at("a").get<std::vector<double>>();
    spec.omega = inst.params.value("omega", 1.0);
    spec.k = inst.params.value("k", 1);
  } else {
    spec = gen_mean_risk(inst.params.value("n", 10), inst.params.value("k", 3), inst.seed);
  }
  spec.check();
  return spec;
}

inline BisubConstraints bisub_constraints_from_params(const json& params, int n) {
  BisubConstraints cons;
  if (params.contains("fixed_zero"))
    cons.fixed_zero = params.at("fixed_zero").get<std::vector<int>>();
  auto bound_row = [&](int offset, double rhs) {
    LinearRow row;
    for (int i = 0; i < n; ++i) row.terms.emplace_back(offset + i, 1.0);
    row.relation = 'G';
    row.rhs = rhs;
    cons.rows_y.push_back(std::move(row));
  };
  if (params.contains("min_plus")) bound_row(0, params.at("min_plus").get<double>());
  if (params.contains("min_minus")) bound_row(n, params.at("min_minus").get<double>());
  return cons;
}

inline ReportRow report_from(const ProblemInstance& inst, const std::string& method,
                             const DcgReport& rep) {
  ReportRow row;
  row.instance_id = inst.id;
  row.method = method;
  row.status = rep.termination;
  row.value = rep.incumbent_value;
  row.end_gap = rep.gap;
  row.nodes = rep.nodes;
  row.cuts = rep.cuts_added;
  row.time_s = rep.time_s;
  return row;
}

}  // namespace detail

/// Runs one instance with the requested method ("dcg" or "es").
inline ReportRow solve_instance(const ProblemInstance& inst, const std::string& method,
                                const SolveOptions& opt = {}) {
  detail::Stopwatch clock;
  const bool es = method == "es";
  require(es || method == "dcg", "unknown method: " + method);
  ReportRow row;
  row.instance_id = inst.id;
  row.method = method;

  auto finish_es = [&](const EsResult& res) {
    row.status = res.found ? "exact" : "infeasible";
    row.value = res.found ? res.value : std::numeric_limits<double>::quiet_NaN();
    row.end_gap = 0.0;
    row.time_s = clock.seconds();
    return row;
  };

  const json& p = inst.params;
  if (inst.kind == "submod-min" || inst.kind == "submod-max") {
    const int n = p.value("n", 8);
    SetOracle f = detail::set_oracle_from_params(inst, n);
    auto rows = detail::cardinality_rows_from_params(p, n);
    const bool maximize = inst.kind == "submod-max";
    if (es) return finish_es(es_set_optimum(f, rows, maximize, opt.es_cap_bits));
    DcgReport rep = maximize ? dcg_max_submodular(f, rows, opt.dcg)
                             : dcg_min_submodular(f, rows, opt.dcg);
    return detail::report_from(inst, method, rep);
  }
  if (inst.kind == "ksub-max" || inst.kind == "sensor") {
    const int n = p.value("n", 6);
    const int k = p.value("k", 2);
    ReadingsTable t = instance_readings(inst, n, k, p.value("rows", 100), opt.bins);
    SensorInstance sensor{t, k, p.value("budgets", std::vector<double>{})};
    sensor.check();
    if (es) {
      KSetOracle f = make_entropy_oracle(t, k);
      f.normalize(KPoint(t.n_locations, k));
      return finish_es(es_kset_max(f, k, sensor.budgets, {}, opt.es_cap_bits));
    }
    SensorPlan plan = solve_sensor_placement(sensor, opt.dcg);
    return detail::report_from(inst, method, plan.report);
  }
  if (inst.kind == "bisub-min") {
    const int n = p.value("n", 6);
    BisetOracle f = make_bisub_oracle(gen_bisubmodular(n, inst.seed));
    f.normalize(TernaryPoint(n));
    BisubConstraints cons = detail::bisub_constraints_from_params(p, n);
    if (es) return finish_es(es_ternary_min(f, cons, opt.es_cap_bits));
    return detail::report_from(inst, method, dcg_min_bisub(f, cons, opt.dcg));
  }
  if (inst.kind == "ccmin") {
    const int n = p.value("n", 8);
    const int k = p.value("k", 3);
    CcminProblem prob;
    if (p.contains("a")) {
      const std::string g = p.value("g", std::string("sqrt"));
      Concave fn = g == "sqrt" ? Concave::sqrt_fn(p.value("scale", 1.0))
                               : Concave::log1p_fn(p.value("scale", 1.0));
      prob.spec = ConcaveOfLinear(p.at("a").get<std::vector<double>>(), fn);
    } else {
      prob.spec = gen_concave_of_linear(n, inst.seed);
    }
    if (p.contains("modular")) prob.modular = p.at("modular").get<std::vector<double>>();
    prob.k = k;
    SetOracle total(GroundSet(prob.spec.n()), [prob](const SetPoint& x) {
      double v = prob.spec.eval(x) - prob.spec.g(0.0);
      if (!prob.modular.empty())
        for (int i = 0; i < x.n(); ++i)
          if (x.test(i)) v += prob.modular[i];
      return v;
    });
    if (es) {
      LinearRow card;
      for (int i = 0; i < prob.spec.n(); ++i) card.terms.emplace_back(i, 1.0);
      card.relation = 'L';
      card.rhs = prob.k;
      return finish_es(es_set_optimum(total, {card}, false, opt.es_cap_bits));
    }
    DcgReport rep = ccmin_branch_and_cut(prob, opt.dcg);
    return detail::report_from(inst, method, rep);
  }
  if (inst.kind == "mean-risk") {
    MeanRiskSpec spec = detail::mean_risk_from_params(inst);
    SetOracle oracle = make_mean_risk_oracle(spec);
    if (es) {
      LinearRow card;
      for (int i = 0; i < spec.n(); ++i) card.terms.emplace_back(i, 1.0);
      card.relation = 'L';
      card.rhs = spec.k;
      return finish_es(es_set_optimum(oracle, {card}, false, opt.es_cap_bits));
    }
    MeanRiskResult res = solve_mean_risk(spec, oracle, opt.dcg);
    return detail::report_from(inst, method, res.report);
  }
  if (inst.kind == "robust-sensor") {
    const int n = p.value("n", 6);
    RobustInstance rinst;
    rinst.base.readings = instance_readings(inst, n, 2, p.value("rows", 50), opt.bins);
    rinst.base.k = 2;
    rinst.b1 = p.value("b1", 2);
    rinst.b2 = p.value("b2", 2);
    rinst.b1_min = p.value("b1_min", 1);
    rinst.b2_min = p.value("b2_min", 1);
    rinst.switch_budget = p.value("switch_budget", 1);
    if (es) {
      // double enumeration: outer plans plus inner ternary enumeration
      BisetOracle f = make_entropy_biset_oracle(rinst.base.readings);
      f.normalize(TernaryPoint(n));
      EsResult best;
      for_each_combination(n, rinst.b1, [&](const std::vector<int>& s1_items) {
        std::vector<int> rest;
        for (int i = 0; i < n; ++i)
          if (std::find(s1_items.begin(), s1_items.end(), i) == s1_items.end())
            rest.push_back(i);
        for_each_combination(static_cast<int>(rest.size()), rinst.b2,
                             [&](const std::vector<int>& pick) {
                               std::vector<int> s2_items;
                               for (int idx : pick) s2_items.push_back(rest[idx]);
                               SetPoint s1 = SetPoint::from_items(n, s1_items);
                               SetPoint s2 = SetPoint::from_items(n, s2_items);
                               EsResult inner = es_ternary_min(
                                   f, robust_inner_constraints(rinst, s1, s2), opt.es_cap_bits);
                               ++best.enumerated;
                               if (inner.found &&
                                   (!best.found || inner.value > best.value)) {
                                 best.found = true;
                                 best.value = inner.value;
                                 best.point = inner.point;
                               }
                             });
      });
      return finish_es(best);
    }
    RobustPlan plan = solve_robust_coupled(rinst, opt.dcg, opt.outer_cap);
    row.status = "gap";
    row.value = plan.value;
    row.end_gap = 0.0;
    row.nodes = plan.nodes;
    row.cuts = plan.cuts_added;
    row.time_s = plan.time_s;
    return row;
  }
  if (inst.kind == "feature-sel") {
    const int n = p.value("n", 4);
    FeatureTable t = gen_feature_table(n, inst.seed, p.value("feature_bins", 2),
                                       p.value("class_bins", 2));
    const int cap1 = p.value("cap1", 1), cap2 = p.value("cap2", 1);
    if (es) {
      BisetOracle mi = make_mutual_information_oracle(t);
      mi.normalize(TernaryPoint(n));
      EsResult best;
      for (std::uint64_t key = 0; key < pow_u64(3, n); ++key) {
        TernaryPoint x = TernaryPoint::from_key(key, n);
        if (x.plus_set().count() > cap1 || x.minus_set().count() > cap2) continue;
        ++best.enumerated;
        const double v = mi(x);
        if (!best.found || v > best.value) {
          best.found = true;
          best.value = v;
          best.point = x.to_vector();
        }
      }
      return finish_es(best);
    }
    FeatureSelection sel = solve_feature_selection(t, cap1, cap2, opt.dcg);
    ReportRow out = detail::report_from(inst, method, sel.report);
    out.value = sel.mutual_information;
    return out;
  }
  throw GsoError("solve_instance: no solver for kind " + inst.kind);
}

// ---------------------------------------------------------------------------
// Benchmark runner.

struct BenchConfig {
  std::vector<std::filesystem::path> instances;
  std::vector<std::string> methods = {"dcg", "es"};
  SolveOptions options;
  int jobs = 1;
};

struct BenchResult {
  std::vector<ReportRow> rows;
  bool all_converged = true;
};

/// Runs the method x instance grid. Failures become error rows; the run
/// continues. Rows are emitted in grid order regardless of --jobs.
inline BenchResult run_bench(const BenchConfig& cfg) {
  struct Task {
    ProblemInstance inst;
    std::string method;
  };
  std::vector<Task> tasks;
  for (const auto& path : cfg.instances) {
    ProblemInstance inst = load_instance(path);
    for (const auto& method : cfg.methods) tasks.push_back({inst, method});
  }
  std::vector<ReportRow> rows(tasks.size());
  auto run_one = [&](std::size_t idx) {
    const Task& t = tasks[idx];
    try {
      rows[idx] = solve_instance(t.inst, t.method, cfg.options);
    } catch (const std::exception& e) {
      ReportRow row;
      row.instance_id = t.inst.id;
      row.method = t.method;
      row.status = std::string("error:") + e.what();
      rows[idx] = row;
    }
  };
  if (cfg.jobs <= 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) run_one(i);
  } else {
    std::vector<std::future<void>> futs;
    std::atomic<std::size_t> next{0};
    for (int j = 0; j < cfg.jobs; ++j)
      futs.push_back(std::async(std::launch::async, [&] {
        for (std::size_t i = next.fetch_add(1); i < tasks.size(); i = next.fetch_add(1))
          run_one(i);
      }));
    for (auto& f : futs) f.get();
  }
  BenchResult out;
  out.rows = std::move(rows);
  for (const auto& row : out.rows)
    if (row.method == "dcg" && !(row.end_gap <= cfg.options.dcg.eps)) out.all_converged = false;
  return out;
}

inline void write_report_csv(const std::vector<ReportRow>& rows, std::ostream& os,
                             bool with_average = false) {
  os << report_csv_header() << "\n";
  for (const auto& row : rows) os << report_csv_row(row) << "\n";
  if (with_average && !rows.empty()) {
    ReportRow avg;
    avg.instance_id = "average";
    avg.method = "-";
    avg.status = "-";
    double val = 0, gap = 0, time = 0;
    long nodes = 0;
    for (const auto& row : rows) {
      val += row.value;
      gap += std::max(0.0, row.end_gap);
      time += row.time_s;
      nodes += row.nodes;
      for (auto [fam, c] : row.cuts) avg.cuts[fam] += c;
    }
    const double m = static_cast<double>(rows.size());
    avg.value = val / m;
    avg.end_gap = gap / m;
    avg.nodes = static_cast<long>(std::llround(nodes / m));
    for (auto& [fam, c] : avg.cuts) c = static_cast<long>(std::llround(c / m));
    avg.time_s = time / m;
    os << report_csv_row(avg) << "\n";
  }
}

/// Sensor-benchmark view: k, n, solver statistics, and the exhaustive-search
/// runtime, one row per instance.
inline void write_table2_csv(const std::vector<ProblemInstance>& instances,
                             const std::vector<ReportRow>& rows, std::ostream& os) {
  os << "k,n,time_s,cuts,nodes,end_gap,es_time_s\n";
  for (const auto& inst : instances) {
    const ReportRow* dcg_row = nullptr;
    const ReportRow* es_row = nullptr;
    for (const auto& row : rows) {
      if (row.instance_id != inst.id) continue;
      if (row.method == "dcg") dcg_row = &row;
      if (row.method == "es") es_row = &row;
    }
    if (!dcg_row) continue;
    os << inst.params.value("k", 0) << "," << inst.params.value("n", 0) << "," << std::fixed
       << std::setprecision(4) << dcg_row->time_s << "," << dcg_row->cuts_total() << ","
       << dcg_row->nodes << "," << format_real(std::max(0.0, dcg_row->end_gap), 6) << ",";
    if (es_row)
      os << std::fixed << std::setprecision(4) << es_row->time_s;
    else
      os << "-";
    os << "\n";
  }
}

}  // namespace gso
