#include "gbvlab/classes.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace gbvlab {

namespace {
constexpr double kPi = 3.14159265358979323846;

double real_value(const CoeffSeq& s, std::int64_t n, const char* what) {
  cplx v = s.coeff(n);
  if (std::abs(v.imag()) > 1e-13 * std::max(1.0, std::abs(v)))
    throw InputError(std::string(what) + ": non-real value in sequence");
  return v.real();
}
}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::fails: return "fails";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

ClassReport is_quasimonotone(const CoeffSeq& b, double alpha,
                             IndexRange horizon) {
  if (alpha < 0.0) throw InputError("is_quasimonotone: alpha must be >= 0");
  ClassReport rep;
  rep.range_lo = std::max<std::int64_t>(horizon.lo, 1);
  rep.range_hi = horizon.hi;
  double prev = real_value(b, rep.range_lo, "is_quasimonotone") *
                std::pow(static_cast<double>(rep.range_lo), -alpha);
  for (std::int64_t n = rep.range_lo; n < rep.range_hi; ++n) {
    double next = real_value(b, n + 1, "is_quasimonotone") *
                  std::pow(static_cast<double>(n + 1), -alpha);
    if (next > prev + 1e-12 * std::abs(prev) + 1e-300) {
      rep.verdict = Verdict::fails;
      rep.witness = n;
      rep.note = "b_n/n^alpha increases at n";
      return rep;
    }
    prev = next;
  }
  rep.verdict = Verdict::holds;
  rep.constant = alpha;
  return rep;
}

ClassReport is_o_regularly_varying(const CoeffSeq& R, IndexRange horizon) {
  ClassReport rep;
  rep.range_lo = std::max<std::int64_t>(horizon.lo, 1);
  rep.range_hi = horizon.hi;
  double prev = 0.0;
  for (std::int64_t n = rep.range_lo; n <= rep.range_hi; ++n) {
    double v = real_value(R, n, "is_o_regularly_varying");
    if (!(v > 0.0))
      throw InputError("is_o_regularly_varying: nonpositive value");
    if (n > rep.range_lo && v < prev * (1.0 - 1e-12)) {
      rep.verdict = Verdict::fails;
      rep.witness = n;
      rep.note = "sequence decreases at n";
      return rep;
    }
    prev = v;
  }
  std::int64_t n_hi = rep.range_hi / 2;
  if (n_hi < rep.range_lo)
    throw InputError("is_o_regularly_varying: horizon too short");
  std::vector<double> ratios;
  ratios.reserve(n_hi - rep.range_lo + 1);
  for (std::int64_t n = rep.range_lo; n <= n_hi; ++n)
    ratios.push_back(real_value(R, 2 * n, "orv") / real_value(R, n, "orv"));
  double full_max = *std::max_element(ratios.begin(), ratios.end());
  size_t tail_start = ratios.size() - ratios.size() / 4;
  if (tail_start >= ratios.size()) tail_start = ratios.size() - 1;
  double head_max = 0.0, tail_max = 0.0;
  for (size_t i = 0; i < ratios.size(); ++i)
    (i >= tail_start ? tail_max : head_max) =
        std::max(i >= tail_start ? tail_max : head_max, ratios[i]);
  rep.constant = full_max;
  // The limsup is not finitely decidable; declare holds only when the last
  // quarter of the horizon shows no growth beyond what came before.
  if (ratios.size() >= 8 && tail_max > head_max * (1.0 + 1e-9)) {
    rep.verdict = Verdict::inconclusive;
    rep.note = "ratio R(2n)/R(n) still growing at horizon end";
  } else {
    rep.verdict = Verdict::holds;
  }
  return rep;
}

ClassReport is_orv_quasimonotone(const CoeffSeq& c, const CoeffSeq& R,
                                 SectorAngle theta0, IndexRange horizon) {
  ClassReport r_check = is_o_regularly_varying(R, horizon);
  if (!r_check.holds()) {
    r_check.note = "R validation failed: " + r_check.note;
    return r_check;
  }
  ClassReport rep;
  rep.range_lo = std::max<std::int64_t>(horizon.lo, 1);
  rep.range_hi = horizon.hi;
  double max_arg = 0.0;
  for (std::int64_t n = rep.range_lo; n <= rep.range_hi; ++n) {
    cplx d = c.coeff(n) / real_value(R, n, "is_orv_quasimonotone") -
             c.coeff(n + 1) / real_value(R, n + 1, "is_orv_quasimonotone");
    if (!in_sector(d, theta0)) {
      rep.verdict = Verdict::fails;
      rep.witness = n;
      rep.note = "delta(c_n/R(n)) outside K(theta0)";
      return rep;
    }
    if (d != cplx(0.0)) max_arg = std::max(max_arg, std::abs(std::arg(d)));
  }
  rep.verdict = Verdict::holds;
  rep.constant = max_arg;
  return rep;
}

ClassReport sector_spread(const CoeffSeq& c, IndexRange range) {
  ClassReport rep;
  rep.range_lo = range.lo;
  rep.range_hi = range.hi;
  std::vector<std::pair<double, std::int64_t>> args;
  for (std::int64_t n = range.lo; n <= range.hi; ++n) {
    cplx v = c.coeff(n);
    if (v != cplx(0.0)) args.push_back({std::arg(v), n});
  }
  if (args.empty()) {
    rep.verdict = Verdict::holds;
    rep.constant = 0.0;
    return rep;
  }
  std::sort(args.begin(), args.end());
  // Largest circular gap between consecutive arguments; the values fit in a
  // sector of half-angle (2*pi - gap) / 2.
  double max_gap = 2.0 * kPi - (args.back().first - args.front().first);
  std::int64_t witness = args.back().second;
  for (size_t i = 1; i < args.size(); ++i) {
    double gap = args[i].first - args[i - 1].first;
    if (gap > max_gap) {
      max_gap = gap;
      witness = args[i].second;
    }
  }
  double spread = 2.0 * kPi - max_gap;
  rep.constant = 0.5 * spread;
  if (spread < kPi - 1e-12) {
    rep.verdict = Verdict::holds;
  } else {
    rep.verdict = Verdict::fails;
    rep.witness = witness;
    rep.note = "values span a sector at least as wide as a half-plane";
  }
  return rep;
}

ClassReport gbv_check(const CoeffSeq& c, std::int64_t N0, IndexRange m_range) {
  if (N0 < 1) throw InputError("gbv_check: N0 must be >= 1");
  if (m_range.lo < 1) throw InputError("gbv_check: m_range must start >= 1");

  ClassReport sector =
      sector_spread(c, IndexRange(m_range.lo, 2 * m_range.hi + 1));
  if (!sector.holds()) {
    sector.range_lo = m_range.lo;
    sector.range_hi = m_range.hi;
    sector.note = "sector prerequisite failed: " + sector.note;
    return sector;
  }

  ClassReport rep;
  rep.range_lo = m_range.lo;
  rep.range_hi = m_range.hi;
  double max_ratio = 0.0;
  for (std::int64_t m = m_range.lo; m <= m_range.hi; ++m) {
    double var = 0.0;
    for (std::int64_t n = m; n <= 2 * m; ++n) var += std::abs(c.delta(n));
    double wmax = 0.0;
    for (std::int64_t n = m; n < m + N0; ++n)
      wmax = std::max(wmax, std::abs(c.coeff(n)));
    if (wmax == 0.0) {
      if (var > 0.0) {
        rep.verdict = Verdict::fails;
        rep.witness = m;
        rep.note = "window max is zero but block variation is positive";
        return rep;
      }
      continue;  // 0/0 window contributes 0
    }
    max_ratio = std::max(max_ratio, var / wmax);
  }
  rep.verdict = Verdict::holds;
  rep.constant = max_ratio;
  return rep;
}

std::pair<std::optional<std::int64_t>, ClassReport> find_min_N0(
    const CoeffSeq& c, std::int64_t N0_cap, IndexRange m_range) {
  if (N0_cap < 1) throw InputError("find_min_N0: cap must be >= 1");
  ClassReport last;
  for (std::int64_t N0 = 1; N0 <= N0_cap; ++N0) {
    last = gbv_check(c, N0, m_range);
    if (last.holds()) return {N0, last};
  }
  return {std::nullopt, last};
}

ClassReport lemma1_sector_bound(const CoeffSeq& c, const CoeffSeq& R,
                                SectorAngle theta0, IndexRange horizon) {
  ClassReport pre = is_orv_quasimonotone(c, R, theta0, horizon);
  if (!pre.holds()) {
    pre.note = "ORV-quasimonotone prerequisite failed: " + pre.note;
    return pre;
  }
  ClassReport rep;
  rep.range_lo = std::max<std::int64_t>(horizon.lo, 1);
  rep.range_hi = horizon.hi;
  double sup = 0.0;
  for (std::int64_t n = rep.range_lo; n <= rep.range_hi; ++n) {
    cplx v = c.coeff(n);
    if (v == cplx(0.0)) continue;
    if (v.real() <= 0.0) {
      rep.verdict = Verdict::fails;
      rep.witness = n;
      rep.note = "Re c_n <= 0";
      return rep;
    }
    sup = std::max(sup, std::abs(v) / v.real());
  }
  rep.verdict = Verdict::holds;
  rep.constant = sup;
  return rep;
}

}  // namespace gbvlab
