#include "gbvlab/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

namespace gbvlab {

namespace {

std::vector<std::int64_t> parse_degrees(const json& j) {
  std::vector<std::int64_t> out;
  if (j.is_array()) {
    for (const auto& v : j) out.push_back(v.get<std::int64_t>());
  } else if (j.is_object()) {
    for (const auto& [k, v] : j.items())
      if (k != "from" && k != "to" && k != "factor")
        throw InputError("degrees: unknown key '" + k + "'");
    std::int64_t from = j.at("from").get<std::int64_t>();
    std::int64_t to = j.at("to").get<std::int64_t>();
    std::int64_t factor = j.value("factor", 2);
    if (factor < 2) throw InputError("degrees: factor must be >= 2");
    for (std::int64_t n = from; n <= to; n *= factor) out.push_back(n);
  } else {
    throw InputError("degrees: expected array or {from,to,factor}");
  }
  return out;
}

Family parse_family_json(const json& j) {
  if (j.is_string()) return parse_family(j.get<std::string>());
  for (const auto& [k, v] : j.items())
    if (k != "name" && k != "params")
      throw InputError("family: unknown key '" + k + "'");
  std::vector<double> params;
  if (j.contains("params"))
    for (const auto& v : j.at("params")) params.push_back(v.get<double>());
  return make_family(j.at("name").get<std::string>(), params);
}

Tolerances parse_tolerances(const json& j) {
  Tolerances t;
  for (const auto& [k, v] : j.items()) {
    if (k == "tail_tolerance")
      t.tail_tolerance = v.get<double>();
    else if (k == "grid_oversample")
      t.grid_oversample = v.get<int>();
    else if (k == "N_max")
      t.N_max = v.get<std::int64_t>();
    else if (k == "n0_cap")
      t.n0_cap = v.get<std::int64_t>();
    else
      throw InputError("tolerances: unknown key '" + k + "'");
  }
  if (!(t.tail_tolerance > 0.0))
    throw InputError("tolerances: tail_tolerance must be > 0");
  if (t.grid_oversample < 4)
    throw InputError("tolerances: grid_oversample must be >= 4");
  return t;
}

}  // namespace

const std::set<std::string>& ExperimentConfig::known_checks() {
  static const std::set<std::string> k = {
      "classes",  "q_proxy",  "minimax",           "dual_bound",
      "theorem2", "theorem3", "lacunary_sharpness"};
  return k;
}

void ExperimentConfig::validate() const {
  if (degrees.empty()) throw InputError("config: degrees must be nonempty");
  for (size_t i = 1; i < degrees.size(); ++i)
    if (degrees[i] <= degrees[i - 1])
      throw InputError("config: degrees must be strictly increasing");
  bool minimax_only = checks == std::set<std::string>{"minimax"};
  if (degrees.front() < (minimax_only ? 0 : 1))
    throw InputError("config: min degree is 1 (0 allowed only minimax-only)");
  for (const auto& c : checks)
    if (!known_checks().count(c))
      throw InputError("config: unknown check '" + c + "'");
  if (format != "csv" && format != "json")
    throw InputError("config: format must be csv or json");
}

ExperimentConfig parse_experiment_config(const json& j) {
  ExperimentConfig cfg;
  bool have_family = false, have_degrees = false;
  for (const auto& [k, v] : j.items()) {
    if (k == "family") {
      cfg.family = parse_family_json(v);
      have_family = true;
    } else if (k == "degrees") {
      cfg.degrees = parse_degrees(v);
      have_degrees = true;
    } else if (k == "checks") {
      for (const auto& c : v) cfg.checks.insert(c.get<std::string>());
    } else if (k == "tolerances") {
      cfg.tol = parse_tolerances(v);
    } else if (k == "output") {
      for (const auto& [ok, ov] : v.items()) {
        if (ok == "dir")
          cfg.output_dir = ov.get<std::string>();
        else if (ok == "format")
          cfg.format = ov.get<std::string>();
        else
          throw InputError("output: unknown key '" + ok + "'");
      }
    } else {
      throw InputError("config: unknown key '" + k + "'");
    }
  }
  if (!have_family) throw InputError("config: missing 'family'");
  if (!have_degrees) throw InputError("config: missing 'degrees'");
  if (cfg.checks.empty())
    cfg.checks = {"classes", "q_proxy", "minimax", "dual_bound"};
  cfg.validate();
  return cfg;
}

std::string format_float(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

json to_json(const ClassReport& rep) {
  json j;
  j["verdict"] = to_string(rep.verdict);
  if (rep.constant) j["constant"] = *rep.constant;
  if (rep.witness) j["witness"] = *rep.witness;
  j["range"] = {rep.range_lo, rep.range_hi};
  if (!rep.note.empty()) j["note"] = rep.note;
  return j;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  ExperimentReport rep;
  rep.family_label = cfg.family.label;
  const CoeffSeq& series = cfg.family.series;
  const CoeffSeq& cls = cfg.family.classify;
  SeriesHandle handle(series, cfg.tol.tail_tolerance, cfg.tol.grid_oversample);

  std::int64_t gbv_n0 = 0;
  double gbv_m = 0.0;
  std::string class_verdict = "-";

  if (cfg.checks.count("classes")) {
    rep.class_reports["sector"] = sector_spread(cls, IndexRange(1, 4096));
    auto [n0, gbv] = find_min_N0(cls, cfg.tol.n0_cap, IndexRange(1, 2048));
    rep.class_reports["gbv"] = gbv;
    class_verdict = to_string(gbv.verdict);
    if (n0) gbv_n0 = *n0;
    if (gbv.constant) gbv_m = *gbv.constant;
    auto [cn0, cgbv] =
        find_min_N0(series.combined(), cfg.tol.n0_cap, IndexRange(1, 2048));
    rep.class_reports["combined_gbv"] = cgbv;
    if (!gbv.holds() || !cgbv.holds()) rep.ok = rep.ok && false;
  }

  for (std::int64_t n : cfg.degrees) {
    RateRecord row;
    row.n = n;
    try {
      if (cfg.checks.count("q_proxy")) {
        QProxy qp = q_proxy(series, n);
        row.q_n = qp.q;
        row.q_parts = qp.parts;
      }
      if (cfg.checks.count("dual_bound"))
        row.e_n_lower = best_lower_bound(
            series, n, cfg.tol.N_max > 0 ? cfg.tol.N_max : 4 * n);
      if (cfg.checks.count("minimax")) {
        row.e_n_numeric = minimax_en(handle, n).value;
        if (cfg.checks.count("theorem3") && series.is_real_series())
          row.s_n_error = partial_sum_error(handle, n);
      }
    } catch (const std::exception& e) {
      rep.row_errors[n] = e.what();
      rep.ok = false;
    }
    rep.rows.push_back(row);
  }

  json summary;
  summary["family"] = cfg.family.label;
  summary["class_verdict"] = class_verdict;
  summary["gbv_N0"] = gbv_n0;
  summary["gbv_M"] = gbv_m;

  if (cfg.checks.count("minimax") && cfg.checks.count("q_proxy")) {
    double rmin = 0.0, rmax = 0.0;
    bool first = true;
    for (const auto& row : rep.rows) {
      if (row.q_n <= 0.0 || rep.row_errors.count(row.n)) continue;
      double r = row.e_n_numeric / row.q_n;
      rmin = first ? r : std::min(rmin, r);
      rmax = first ? r : std::max(rmax, r);
      first = false;
    }
    if (!first) {
      summary["ratio_en_qn_min"] = rmin;
      summary["ratio_en_qn_max"] = rmax;
    }
    // q_n = 0 against a clearly positive minimax value is the interesting
    // equivalence-failure event; diagnose, do not error.
    for (const auto& row : rep.rows)
      if (row.q_n == 0.0 && row.e_n_numeric > 1e-8)
        summary["equivalence_failure"].push_back(row.n);
  }

  if (cfg.checks.count("theorem2")) {
    json trace = json::array();
    double ref = 0.0;
    bool decayed = true;
    for (int jj = 1; jj <= 12; ++jj) {
      std::int64_t n = std::int64_t(1) << jj;
      double v = static_cast<double>(n) *
                 (std::abs(series.coeff(n)) + std::abs(series.coeff(-n)));
      trace.push_back({{"n", n}, {"n_coeff", v}});
      if (jj == 2) ref = v;
      if (jj == 12 && ref > 0.0) decayed = v < 0.1 * ref;
    }
    summary["theorem2_trace"] = trace;
    summary["theorem2_decayed"] = decayed;
    if (!decayed) rep.ok = false;
  }

  if (cfg.checks.count("theorem3") && series.is_real_series()) {
    double rmax = 0.0;
    for (std::int64_t n : cfg.degrees) {
      if (rep.row_errors.count(n)) continue;
      try {
        Theorem3Result t3 = theorem3_ratio(handle, n);
        if (t3.ratio) rmax = std::max(rmax, *t3.ratio);
      } catch (const std::exception& e) {
        rep.row_errors[n] = e.what();
        rep.ok = false;
      }
    }
    summary["theorem3_ratio_max"] = rmax;
  }

  if (cfg.checks.count("lacunary_sharpness")) {
    auto [n0, gbv] = find_min_N0(cls, 64, IndexRange(1, 8192));
    summary["lacunary_gbv_N0_found"] = n0 ? json(*n0) : json(nullptr);
    rep.class_reports["lacunary_gbv"] = gbv;
    // Growth trace of n^eps * b_n along the support n = 2^k. With
    // b_{2^k} = k^{-alpha} the product 2^{eps k} k^{-alpha} turns increasing
    // only past k* = alpha / (eps log 2), so the trace starts there.
    json trace = json::array();
    const double eps = 0.1;
    const double alpha =
        cfg.family.params.empty() ? 2.0 : cfg.family.params[0];
    const int kstar =
        static_cast<int>(std::ceil(alpha / (eps * std::numbers::ln2)));
    for (int k = kstar; k <= kstar + 13; ++k) {
      double value = std::pow(2.0, eps * k) * std::pow(double(k), -alpha);
      trace.push_back({{"k", k}, {"n_eps_b_n", value}});
    }
    summary["lacunary_growth_eps"] = eps;
    summary["lacunary_growth_kstar"] = kstar;
    summary["lacunary_growth_trace"] = trace;
  }

  rep.summary = std::move(summary);
  return rep;
}

SuiteReport run_equivalence_suite(const std::vector<Family>& families,
                                  const std::vector<std::int64_t>& degrees,
                                  const Tolerances& tol) {
  SuiteReport rep;
  for (const Family& fam : families) {
    auto [n0, gbv] = find_min_N0(fam.classify, tol.n0_cap, IndexRange(1, 2048));
    if (!n0) {
      rep.skipped[fam.label] = "GBV prerequisite failed: " + gbv.note;
      continue;
    }
    auto [cn0, cgbv] =
        find_min_N0(fam.series.combined(), tol.n0_cap, IndexRange(1, 2048));
    if (!cn0) {
      rep.skipped[fam.label] =
          "combined-sequence GBV prerequisite failed: " + cgbv.note;
      continue;
    }
    SeriesHandle handle(fam.series, tol.tail_tolerance, tol.grid_oversample);
    double first_ratio = 0.0;
    double rmin = 0.0, rmax = 0.0;
    bool first = true;
    for (std::int64_t n : degrees) {
      SuiteRow row;
      row.family = fam.label;
      row.n = n;
      row.class_verdict = to_string(gbv.verdict);
      row.gbv_M = gbv.constant.value_or(0.0);
      row.gbv_N0 = *n0;
      row.rate.n = n;
      QProxy qp = q_proxy(fam.series, n);
      row.rate.q_n = qp.q;
      row.rate.q_parts = qp.parts;
      row.rate.e_n_lower = best_lower_bound(
          fam.series, n, tol.N_max > 0 ? tol.N_max : 4 * n);
      row.rate.e_n_numeric = minimax_en(handle, n).value;
      if (qp.q > 0.0) {
        row.ratio_en_qn = row.rate.e_n_numeric / qp.q;
        if (first) {
          first_ratio = row.ratio_en_qn;
          rmin = rmax = row.ratio_en_qn;
          first = false;
        } else {
          rmin = std::min(rmin, row.ratio_en_qn);
          rmax = std::max(rmax, row.ratio_en_qn);
        }
      }
      if (fam.series.is_real_series()) {
        row.rate.s_n_error = partial_sum_error(handle, n);
        if (row.rate.e_n_numeric > 1e-13)
          row.thm3_ratio =
              format_float(row.rate.s_n_error / row.rate.e_n_numeric);
      }
      rep.rows.push_back(row);
    }
    if (!first) {
      rep.ratio_band[fam.label] = {rmin, rmax};
      if (first_ratio > 0.0 &&
          (rmax > 4.0 * first_ratio || rmin < 0.25 * first_ratio)) {
        rep.flags.push_back(fam.label);
        rep.ok = false;
      }
    }
  }
  return rep;
}

namespace {
const char* kCsvHeader =
    "family,n,class_verdict,gbv_M,gbv_N0,e_n_lower,e_n_numeric,q_head,"
    "q_odd_tail,q_even_tail,q_n,ratio_en_qn,s_n_error,ratio_thm3\n";

void append_row(std::ostringstream& os, const std::string& family,
                std::int64_t n, const std::string& verdict, double gbv_M,
                std::int64_t gbv_N0, const RateRecord& r, double ratio,
                const std::string& thm3) {
  os << family << ',' << n << ',' << verdict << ',' << format_float(gbv_M)
     << ',' << gbv_N0 << ',' << format_float(r.e_n_lower) << ','
     << format_float(r.e_n_numeric) << ',' << format_float(r.q_parts.head_max)
     << ',' << format_float(r.q_parts.odd_tail_max) << ','
     << format_float(r.q_parts.even_tail_sum) << ',' << format_float(r.q_n)
     << ',' << format_float(ratio) << ',' << format_float(r.s_n_error) << ','
     << (thm3.empty() ? "-" : thm3) << '\n';
}
}  // namespace

std::string to_csv(const ExperimentReport& rep) {
  std::ostringstream os;
  os << kCsvHeader;
  std::string verdict = "-";
  double gbv_M = 0.0;
  std::int64_t gbv_N0 = 0;
  if (auto it = rep.class_reports.find("gbv"); it != rep.class_reports.end()) {
    verdict = to_string(it->second.verdict);
    gbv_M = it->second.constant.value_or(0.0);
  }
  if (rep.summary.contains("gbv_N0"))
    gbv_N0 = rep.summary["gbv_N0"].get<std::int64_t>();
  for (const auto& r : rep.rows) {
    double ratio = r.q_n > 0.0 ? r.e_n_numeric / r.q_n : 0.0;
    std::string thm3;
    if (r.e_n_numeric > 1e-13 && r.s_n_error > 0.0)
      thm3 = format_float(r.s_n_error / r.e_n_numeric);
    append_row(os, rep.family_label, r.n, verdict, gbv_M, gbv_N0, r, ratio,
               thm3);
  }
  return os.str();
}

std::string to_csv(const SuiteReport& rep) {
  std::ostringstream os;
  os << kCsvHeader;
  for (const auto& row : rep.rows)
    append_row(os, row.family, row.n, row.class_verdict, row.gbv_M, row.gbv_N0,
               row.rate, row.ratio_en_qn, row.thm3_ratio);
  return os.str();
}

json to_json(const ExperimentReport& rep) {
  json j;
  j["family"] = rep.family_label;
  for (const auto& [name, r] : rep.class_reports)
    j["class_reports"][name] = to_json(r);
  j["rows"] = json::array();
  for (const auto& r : rep.rows) {
    json row;
    row["n"] = r.n;
    row["e_n_numeric"] = r.e_n_numeric;
    row["e_n_lower"] = r.e_n_lower;
    row["q_n"] = r.q_n;
    row["q_head"] = r.q_parts.head_max;
    row["q_odd_tail"] = r.q_parts.odd_tail_max;
    row["q_even_tail"] = r.q_parts.even_tail_sum;
    row["s_n_error"] = r.s_n_error;
    if (rep.row_errors.count(r.n)) row["error"] = rep.row_errors.at(r.n);
    j["rows"].push_back(row);
  }
  j["summary"] = rep.summary;
  j["ok"] = rep.ok;
  return j;
}

json to_json(const SuiteReport& rep) {
  json j;
  j["rows"] = json::array();
  for (const auto& row : rep.rows) {
    json r;
    r["family"] = row.family;
    r["n"] = row.n;
    r["e_n_numeric"] = row.rate.e_n_numeric;
    r["e_n_lower"] = row.rate.e_n_lower;
    r["q_n"] = row.rate.q_n;
    r["ratio_en_qn"] = row.ratio_en_qn;
    j["rows"].push_back(r);
  }
  for (const auto& [fam, reason] : rep.skipped) j["skipped"][fam] = reason;
  for (const auto& [fam, band] : rep.ratio_band)
    j["ratio_band"][fam] = {band.first, band.second};
  j["flags"] = rep.flags;
  j["ok"] = rep.ok;
  return j;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot open output file: " + tmp);
    out << content;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw InputError("cannot rename output file into place: " + path);
}

}  // namespace gbvlab
