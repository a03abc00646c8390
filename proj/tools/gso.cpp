// Command-line front end: solve / verify / cuts / bench / gen.

#include <CLI11.hpp>

#include <iostream>

#include "gso/io.hpp"

using namespace gso;

namespace {

struct CommonOpts {
  double eps = 1e-6;
  double time_limit = 0.0;
  std::string mode = "auto";
  int bins = 4;
  std::uint64_t cap_xi = 1ULL << 20;
  double cap_lift = 2e6;
  int cap_es_bits = 26;
  double cap_outer = 1e6;

  SolveOptions solve_options() const {
    SolveOptions opt;
    opt.dcg.eps = eps;
    opt.dcg.time_limit_s = time_limit;
    if (mode == "iterative") opt.dcg.mode = DcgConfig::Mode::iterative;
    if (mode == "single-tree") opt.dcg.mode = DcgConfig::Mode::single_tree;
    opt.dcg.xi_assignment_cap = cap_xi;
    opt.dcg.lift_budget_cap = cap_lift;
    opt.bins = bins;
    opt.es_cap_bits = cap_es_bits;
    opt.outer_cap = cap_outer;
    return opt;
  }
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--eps", opts.eps, "relative gap tolerance");
  cmd->add_option("--time-limit", opts.time_limit, "time limit in seconds (0: none)");
  cmd->add_option("--mode", opts.mode, "master mode: auto|iterative|single-tree")
      ->check(CLI::IsMember({"auto", "iterative", "single-tree"}));
  cmd->add_option("--bins", opts.bins, "discretization bins for readings");
  cmd->add_option("--cap-xi", opts.cap_xi, "xi table assignment-enumeration cap");
  cmd->add_option("--cap-lift", opts.cap_lift, "exact-lifting budget cap");
  cmd->add_option("--cap-es", opts.cap_es_bits, "exhaustive search cap (log2 of domain)");
  cmd->add_option("--cap-outer", opts.cap_outer, "outer enumeration cap for robust plans");
}

std::vector<double> parse_point(const std::string& csv) {
  std::vector<double> out;
  std::istringstream is(csv);
  std::string cell;
  while (std::getline(is, cell, ',')) out.push_back(std::stod(cell));
  return out;
}

std::vector<int> parse_ints(const std::string& csv) {
  std::vector<int> out;
  std::istringstream is(csv);
  std::string cell;
  while (std::getline(is, cell, ',')) out.push_back(std::stoi(cell));
  return out;
}

int run_solve(const std::string& instance_path, const std::string& method,
              const std::string& report_path, const CommonOpts& opts) {
  ProblemInstance inst = load_instance(instance_path);
  SolveOptions sopt = opts.solve_options();
  std::vector<ReportRow> rows;
  if (method == "both" || method == "dcg") rows.push_back(solve_instance(inst, "dcg", sopt));
  if (method == "both" || method == "es") rows.push_back(solve_instance(inst, "es", sopt));
  print_report_table(rows, std::cout);
  if (!report_path.empty()) {
    std::ofstream os(report_path);
    write_report_csv(rows, os);
  }
  for (const auto& row : rows)
    if (row.method == "dcg" && !row.converged(opts.eps)) return 1;
  return 0;
}

int run_verify(const std::string& instance_path, const std::string& property, int cap,
               const CommonOpts& opts) {
  ProblemInstance inst = load_instance(instance_path);
  const json& p = inst.params;
  const PropertyKind kind = property_kind_from_string(property);
  VerifyResult res;
  if (inst.kind == "submod-min" || inst.kind == "submod-max" || inst.kind == "mean-risk" ||
      inst.kind == "ccmin") {
    SetOracle f = inst.kind == "mean-risk"
                      ? make_mean_risk_oracle(detail::mean_risk_from_params(inst))
                      : detail::set_oracle_from_params(inst, p.value("n", 8));
    res = verify_property(f, kind, cap);
  } else if (inst.kind == "ksub-max" || inst.kind == "sensor") {
    const int n = p.value("n", 6), k = p.value("k", 2);
    ReadingsTable t = instance_readings(inst, n, k, p.value("rows", 100), opts.bins);
    KSetOracle f = make_entropy_oracle(t, k);
    res = verify_property(f, k, kind);
  } else if (inst.kind == "bisub-min") {
    BisetOracle f = make_bisub_oracle(gen_bisubmodular(p.value("n", 6), inst.seed));
    res = verify_property(f, kind);
  } else if (inst.kind == "feature-sel") {
    FeatureTable t = gen_feature_table(p.value("n", 4), inst.seed, p.value("feature_bins", 2),
                                       p.value("class_bins", 2));
    res = verify_property(make_mutual_information_oracle(t), kind);
  } else if (inst.kind == "ad-influence") {
    AdInfluence ad =
        gen_ad_influence(p.value("n_media", 3), p.value("n_targets", 4), inst.seed);
    if (kind == PropertyKind::dr_lattice) {
      LatticeOracle f = make_ad_influence_oracle(ad);
      LatticeBox box;
      box.upper = p.value("box", std::vector<double>(ad.n_media(), 2.0));
      box.integer_mask.assign(ad.n_media(), true);
      res = verify_dr_lattice(f, box);
    } else {
      res = hessian_dr_check([ad](const std::vector<double>& x) { return ad.eval(x); },
                             std::vector<double>(ad.n_media(), 0.0),
                             p.value("box", std::vector<double>(ad.n_media(), 2.0)));
    }
  } else {
    throw GsoError("verify: unsupported instance kind " + inst.kind);
  }
  std::cout << property << ": " << (res.pass ? "pass" : "FAIL") << " (" << res.pairs_checked
            << " checks)";
  if (!res.pass) std::cout << "  counterexample: " << res.counterexample;
  std::cout << "\n";
  return res.pass ? 0 : 1;
}

int run_cuts(const std::string& instance_path, const std::string& family_name,
             const std::string& at, const std::string& delta_csv, int i0, int cut_k,
             const std::string& anchor, const std::string& forest_csv,
             const std::string& bounds_csv, const std::string& integers_csv,
             const CommonOpts& opts) {
  CutPool pool;
  const CutFamily family = cut_family_from_string(family_name);
  if (family == CutFamily::MIR) {
    MonotoneForest forest;
    forest.parent = parse_ints(forest_csv);
    forest.integer_mask.assign(forest.parent.size(), false);
    for (int i : parse_ints(integers_csv)) forest.integer_mask[i] = true;
    for (Cut& cut : mir_generate(forest, parse_point(bounds_csv))) pool.add(std::move(cut));
    pool.serialize(std::cout);
    return 0;
  }

  ProblemInstance inst = load_instance(instance_path);
  const json& p = inst.params;
  const int n = p.value("n", 8);
  switch (family) {
    case CutFamily::EPI: {
      SetOracle f = detail::set_oracle_from_params(inst, n);
      pool.add(epi_separate(f, parse_point(at)));
      break;
    }
    case CutFamily::SUBMAX: {
      SetOracle f = detail::set_oracle_from_params(inst, n);
      SetPoint S = SetPoint::from_items(n, anchor.empty() ? std::vector<int>{} : parse_ints(anchor));
      pool.add(submax_cut_generate(f, S));
      break;
    }
    case CutFamily::SI:
    case CutFamily::ALI:
    case CutFamily::LEPI: {
      ConcaveOfLinear spec = [&] {
        if (inst.kind == "mean-risk") return detail::mean_risk_from_params(inst).risk_part();
        if (p.contains("a"))
          return ConcaveOfLinear(p.at("a").get<std::vector<double>>(),
                                 p.value("g", std::string("sqrt")) == "sqrt"
                                     ? Concave::sqrt_fn(p.value("scale", 1.0))
                                     : Concave::log1p_fn(p.value("scale", 1.0)));
        return gen_concave_of_linear(n, inst.seed);
      }();
      const int nn = spec.n();
      Permutation delta = delta_csv.empty() ? Permutation::identity(nn)
                                            : Permutation(parse_ints(delta_csv));
      const int k = cut_k > 0 ? cut_k : p.value("k", 2);
      if (family == CutFamily::SI) {
        pool.add(si_generate(spec.g, spec.weights[0], nn, k, i0, delta));
      } else if (family == CutFamily::ALI) {
        pool.add(ali_generate(spec, k, delta));
      } else {
        SetPoint seed(nn);
        for (int pos = 0; pos < k; ++pos) seed = seed.with(delta[pos]);
        pool.add(lift_epi_exact(spec, k, seed, delta, LiftOptions{opts.cap_lift}));
      }
      break;
    }
    case CutFamily::KSUB: {
      const int k = p.value("k", 2);
      ReadingsTable t = instance_readings(inst, n, k, p.value("rows", 100), opts.bins);
      KSetOracle f = make_entropy_oracle(t, k);
      f.normalize(KPoint(n, k));
      KPoint S(n, k);
      if (!anchor.empty())
        for (const auto& part : [&] {
               std::vector<std::string> items;
               std::istringstream is(anchor);
               std::string cell;
               while (std::getline(is, cell, ',')) items.push_back(cell);
               return items;
             }()) {
          const auto colon = part.find(':');
          require(colon != std::string::npos, "cuts: --anchor expects i:q pairs");
          S.assign(std::stoi(part.substr(0, colon)), std::stoi(part.substr(colon + 1)));
        }
      XiTable xi = XiTable::zeros(f, k);  // entropy readings are monotone
      pool.add(ksub_cut_generate(f, xi, S));
      break;
    }
    case CutFamily::EPBM: {
      BisetOracle f = make_bisub_oracle(gen_bisubmodular(n, inst.seed));
      f.normalize(TernaryPoint(n));
      pool.add(bisub_separate(f, parse_point(at)));
      break;
    }
    default:
      throw GsoError("cuts: unsupported family");
  }
  pool.serialize(std::cout);
  return 0;
}

int run_gen(const std::string& kind, int n, std::uint64_t seed, const std::string& out,
            const std::string& csv_out, const json& extra, const CommonOpts& opts) {
  ProblemInstance inst;
  inst.kind = kind;
  inst.seed = seed;
  inst.params = extra;
  inst.params["n"] = n;
  inst.id = kind + "-n" + std::to_string(n) + "-s" + std::to_string(seed);
  if (!csv_out.empty()) {
    require(kind == "sensor" || kind == "ksub-max" || kind == "robust-sensor",
            "gen: --csv applies to readings-backed kinds");
    RawReadings raw = gen_raw_readings(n, inst.params.value("k", 2),
                                       inst.params.value("rows", 100), seed);
    std::ofstream os(csv_out);
    require(os.good(), "gen: cannot write " + csv_out);
    write_readings_csv(raw, os);
    inst.readings_csv = csv_out;
  }
  (void)opts;
  if (out.empty()) {
    std::cout << inst.to_json().dump(2) << "\n";
  } else {
    save_instance(inst, out);
    std::cout << "wrote " << out << "\n";
  }
  return 0;
}

int run_bench_cmd(const std::vector<std::string>& instances, const std::string& methods_csv,
                  const std::string& report_path, const std::string& table2_path, int jobs,
                  const CommonOpts& opts) {
  BenchConfig cfg;
  for (const auto& p : instances) cfg.instances.emplace_back(p);
  cfg.methods.clear();
  {
    std::istringstream is(methods_csv);
    std::string cell;
    while (std::getline(is, cell, ',')) cfg.methods.push_back(cell);
  }
  cfg.options = opts.solve_options();
  cfg.jobs = jobs;
  BenchResult res = run_bench(cfg);
  print_report_table(res.rows, std::cout);
  if (!report_path.empty()) {
    std::ofstream os(report_path);
    write_report_csv(res.rows, os, /*with_average=*/true);
  }
  if (!table2_path.empty()) {
    std::vector<ProblemInstance> loaded;
    for (const auto& p : cfg.instances) loaded.push_back(load_instance(p));
    std::ofstream os(table2_path);
    write_table2_csv(loaded, res.rows, os);
  }
  return res.all_converged ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gso: exact solvers for generalized submodular optimization"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::string instance_path, method = "dcg", report_path;

  auto* solve = app.add_subcommand("solve", "solve an instance file");
  solve->add_option("--instance", instance_path, "instance JSON path")->required();
  solve->add_option("--method", method, "dcg|es|both")
      ->check(CLI::IsMember({"dcg", "es", "both"}));
  solve->add_option("--report", report_path, "write a report CSV here");
  add_common(solve, opts);

  std::string property = "submodular";
  int verify_cap = 14;
  auto* verify = app.add_subcommand("verify", "run a property checker on an instance oracle");
  verify->add_option("--instance", instance_path, "instance JSON path")->required();
  verify->add_option("--property", property,
                     "submodular|monotone|k-submodular|bisubmodular|dr-lattice|hessian");
  verify->add_option("--cap", verify_cap, "enumeration cap (set oracles)");
  add_common(verify, opts);

  std::string family, at_point, delta_csv, anchor, forest_csv, bounds_csv, integers_csv;
  int i0 = 0, cut_k = 0;
  auto* cuts = app.add_subcommand("cuts", "generate one cut and print it");
  cuts->add_option("--instance", instance_path, "instance JSON path");
  cuts->add_option("--family", family, "EPI|SI|ALI|LEPI|SUBMAX|KSUB|EPBM|MIR")->required();
  cuts->add_option("--at", at_point, "separation point, comma-separated");
  cuts->add_option("--delta", delta_csv, "permutation, comma-separated 0-based");
  cuts->add_option("--i0", i0, "SI breakpoint");
  cuts->add_option("--k", cut_k, "cardinality parameter override");
  cuts->add_option("--anchor", anchor, "anchor set (items, or i:q pairs for KSUB)");
  cuts->add_option("--forest", forest_csv, "MIR: parent per vertex (-1 for roots)");
  cuts->add_option("--bounds", bounds_csv, "MIR: upper bounds");
  cuts->add_option("--integers", integers_csv, "MIR: integer vertex list");
  add_common(cuts, opts);

  std::vector<std::string> bench_instances;
  std::string methods_csv = "dcg,es", table2_path;
  int jobs = 1;
  auto* bench = app.add_subcommand("bench", "run a method x instance grid");
  bench->add_option("--instance", bench_instances, "instance JSON paths")->required();
  bench->add_option("--methods", methods_csv, "comma-separated: dcg,es");
  bench->add_option("--report", report_path, "write the report CSV here");
  bench->add_option("--table2", table2_path, "write the sensor-benchmark view here");
  bench->add_option("--jobs", jobs, "parallel instances");
  add_common(bench, opts);

  std::string gen_kind = "mean-risk", gen_out, gen_csv;
  int gen_n = 8, gen_k = 2, gen_rows = 100;
  std::uint64_t gen_seed = 1;
  std::vector<double> gen_budgets;
  json gen_extra = json::object();
  auto* gen = app.add_subcommand("gen", "generate a synthetic instance file");
  gen->add_option("--kind", gen_kind, "instance kind");
  gen->add_option("--n", gen_n, "ground set size");
  gen->add_option("--k", gen_k, "types / cardinality parameter");
  gen->add_option("--rows", gen_rows, "readings rows");
  gen->add_option("--seed", gen_seed, "instance seed");
  gen->add_option("--budgets", gen_budgets, "per-type budgets");
  gen->add_option("--out", gen_out, "output instance path");
  gen->add_option("--csv", gen_csv, "also write a readings CSV here");
  add_common(gen, opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return run_solve(instance_path, method, report_path, opts);
    if (verify->parsed()) return run_verify(instance_path, property, verify_cap, opts);
    if (cuts->parsed())
      return run_cuts(instance_path, family, at_point, delta_csv, i0, cut_k, anchor, forest_csv,
                      bounds_csv, integers_csv, opts);
    if (bench->parsed())
      return run_bench_cmd(bench_instances, methods_csv, report_path, table2_path, jobs, opts);
    if (gen->parsed()) {
      gen_extra["k"] = gen_k;
      gen_extra["rows"] = gen_rows;
      if (!gen_budgets.empty()) gen_extra["budgets"] = gen_budgets;
      return run_gen(gen_kind, gen_n, gen_seed, gen_out, gen_csv, gen_extra, opts);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
