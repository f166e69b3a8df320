#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "gbvlab/experiment.hpp"

namespace {

using gbvlab::json;

// "4,8,16" or geometric "A:B" / "A:B:factor"
std::vector<std::int64_t> parse_degree_list(const std::string& s) {
  std::vector<std::int64_t> out;
  if (s.find(':') != std::string::npos) {
    std::int64_t a = 0, b = 0, factor = 2;
    std::stringstream ss(s);
    std::string tok;
    std::vector<std::int64_t> parts;
    while (std::getline(ss, tok, ':')) parts.push_back(std::stoll(tok));
    if (parts.size() < 2 || parts.size() > 3)
      throw gbvlab::InputError("bad degree range: " + s);
    a = parts[0];
    b = parts[1];
    if (parts.size() == 3) factor = parts[2];
    if (factor < 2) throw gbvlab::InputError("degree range factor must be >= 2");
    for (std::int64_t n = a; n <= b; n *= factor) out.push_back(n);
    return out;
  }
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stoll(tok));
  return out;
}

std::string output_dir_override(const std::string& configured) {
  const char* env = std::getenv("GBVLAB_OUT");
  return env && *env ? std::string(env) : configured;
}

void emit(const std::string& dir, const std::string& stem,
          const std::string& format, const std::string& csv, const json& js) {
  if (dir.empty()) {
    std::cout << (format == "json" ? js.dump(2) + "\n" : csv);
    return;
  }
  std::string path = dir + "/" + stem + (format == "json" ? ".json" : ".csv");
  gbvlab::write_file_atomic(path,
                            format == "json" ? js.dump(2) + "\n" : csv);
  std::cout << "wrote " << path << "\n";
}

int cmd_classify(const std::string& family_spec, std::int64_t n0_cap,
                 const std::string& range) {
  gbvlab::Family fam = gbvlab::parse_family(family_spec);
  std::int64_t lo = 1, hi = 4096;
  if (!range.empty()) {
    auto pos = range.find(':');
    if (pos == std::string::npos)
      throw gbvlab::InputError("range must be A:B");
    lo = std::stoll(range.substr(0, pos));
    hi = std::stoll(range.substr(pos + 1));
  }
  gbvlab::IndexRange r(lo, hi);
  gbvlab::IndexRange gbv_range(lo, std::max(lo, hi / 2));

  json out;
  out["family"] = fam.label;
  out["sector"] = to_json(gbvlab::sector_spread(fam.classify, r));
  if (fam.theta_hint) {
    gbvlab::CoeffSeq unit = gbvlab::make_real_seq(
        [](std::int64_t) { return 1.0; }, "R=1");
    out["orv_quasimonotone"] = to_json(gbvlab::is_orv_quasimonotone(
        fam.classify, unit, gbvlab::SectorAngle(*fam.theta_hint), r));
  }
  auto [n0, gbv] = gbvlab::find_min_N0(fam.classify, n0_cap, gbv_range);
  out["gbv"] = to_json(gbv);
  out["gbv_N0"] = n0 ? json(*n0) : json(nullptr);
  auto [cn0, cgbv] =
      gbvlab::find_min_N0(fam.series.combined(), n0_cap, gbv_range);
  out["combined_gbv"] = to_json(cgbv);
  out["combined_gbv_N0"] = cn0 ? json(*cn0) : json(nullptr);
  std::cout << out.dump(2) << "\n";
  return (n0 && cn0) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gbvlab: coefficient-class tests and best-approximation rates "
               "for trigonometric series"};
  app.require_subcommand(1);

  // classify
  std::string cl_family, cl_range;
  std::int64_t cl_cap = 8;
  auto* classify = app.add_subcommand(
      "classify", "membership tests for a coefficient family");
  classify->add_option("family", cl_family, "family spec, e.g. power_cosine(2)")
      ->required();
  classify->add_option("--n0-cap", cl_cap, "largest window width to try");
  classify->add_option("--range", cl_range, "index range A:B");

  // rates
  std::string rt_family, rt_degrees, rt_out, rt_format = "csv";
  std::vector<std::string> rt_checks;
  double rt_tail = 1e-7;
  auto* rates =
      app.add_subcommand("rates", "per-degree rate records for one family");
  rates->add_option("family", rt_family)->required();
  rates->add_option("--degrees", rt_degrees, "list 4,8,16 or range A:B[:f]")
      ->required();
  rates->add_option("--checks", rt_checks,
                    "subset of classes,q_proxy,minimax,dual_bound,theorem2,"
                    "theorem3,lacunary_sharpness");
  rates->add_option("--tail-tolerance", rt_tail);
  rates->add_option("--out", rt_out, "output directory");
  rates->add_option("--format", rt_format, "csv or json");

  // suite
  std::string su_config;
  auto* suite =
      app.add_subcommand("suite", "equivalence study from a config file");
  suite->add_option("config", su_config, "JSON config file")->required();

  // lacunary
  double la_alpha = 2.0;
  auto* lacunary =
      app.add_subcommand("lacunary", "sharpness study for lacunary sine series");
  lacunary->add_option("--alpha", la_alpha, "decay exponent (> 1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (classify->parsed()) return cmd_classify(cl_family, cl_cap, cl_range);

    if (rates->parsed()) {
      gbvlab::ExperimentConfig cfg;
      cfg.family = gbvlab::parse_family(rt_family);
      cfg.degrees = parse_degree_list(rt_degrees);
      for (const auto& c : rt_checks) cfg.checks.insert(c);
      if (cfg.checks.empty())
        cfg.checks = {"classes", "q_proxy", "minimax", "dual_bound"};
      cfg.tol.tail_tolerance = rt_tail;
      cfg.output_dir = output_dir_override(rt_out);
      cfg.format = rt_format;
      cfg.validate();
      gbvlab::ExperimentReport rep = gbvlab::run_experiment(cfg);
      emit(cfg.output_dir, "rates_" + cfg.family.name, cfg.format,
           gbvlab::to_csv(rep), gbvlab::to_json(rep));
      return rep.ok ? 0 : 1;
    }

    if (suite->parsed()) {
      std::ifstream in(su_config);
      if (!in) throw gbvlab::InputError("cannot open config: " + su_config);
      json j = json::parse(in);
      std::vector<gbvlab::Family> families;
      std::vector<std::int64_t> degrees;
      gbvlab::Tolerances tol;
      std::string out_dir, format = "csv";
      for (const auto& [k, v] : j.items()) {
        if (k == "families") {
          for (const auto& f : v)
            families.push_back(f.is_string()
                                   ? gbvlab::parse_family(f.get<std::string>())
                                   : gbvlab::parse_family(
                                         f.at("name").get<std::string>()));
        } else if (k == "degrees") {
          for (const auto& d : v) degrees.push_back(d.get<std::int64_t>());
        } else if (k == "tolerances") {
          json tl = v;
          if (tl.contains("tail_tolerance"))
            tol.tail_tolerance = tl["tail_tolerance"].get<double>();
          if (tl.contains("grid_oversample"))
            tol.grid_oversample = tl["grid_oversample"].get<int>();
          if (tl.contains("N_max")) tol.N_max = tl["N_max"].get<std::int64_t>();
          for (const auto& [tk, tv] : tl.items())
            if (tk != "tail_tolerance" && tk != "grid_oversample" &&
                tk != "N_max")
              throw gbvlab::InputError("tolerances: unknown key '" + tk + "'");
        } else if (k == "output") {
          for (const auto& [ok, ov] : v.items()) {
            if (ok == "dir")
              out_dir = ov.get<std::string>();
            else if (ok == "format")
              format = ov.get<std::string>();
            else
              throw gbvlab::InputError("output: unknown key '" + ok + "'");
          }
        } else {
          throw gbvlab::InputError("suite config: unknown key '" + k + "'");
        }
      }
      if (degrees.empty())
        throw gbvlab::InputError("suite config: degrees must be nonempty");
      out_dir = output_dir_override(out_dir);
      gbvlab::SuiteReport rep =
          gbvlab::run_equivalence_suite(families, degrees, tol);
      emit(out_dir, "suite", format, gbvlab::to_csv(rep), gbvlab::to_json(rep));
      return rep.ok ? 0 : 1;
    }

    if (lacunary->parsed()) {
      gbvlab::ExperimentConfig cfg;
      cfg.family = gbvlab::make_family("lacunary_sine", {la_alpha});
      cfg.degrees = {4};
      cfg.checks = {"lacunary_sharpness"};
      cfg.validate();
      gbvlab::ExperimentReport rep = gbvlab::run_experiment(cfg);
      std::cout << gbvlab::to_json(rep).dump(2) << "\n";
      bool sharp = rep.summary.contains("lacunary_gbv_N0_found") &&
                   rep.summary["lacunary_gbv_N0_found"].is_null();
      return sharp ? 0 : 1;
    }
  } catch (const gbvlab::InputError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
