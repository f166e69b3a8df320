#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "gbvlab/coeff.hpp"

namespace gbvlab {

enum class Verdict { holds, fails, inconclusive };

const char* to_string(Verdict v);

/// Outcome of a sequence-class membership test over a finite index range,
/// with either a certifying constant or a re-checkable violation witness.
struct ClassReport {
  Verdict verdict = Verdict::inconclusive;
  std::optional<double> constant;
  std::optional<std::int64_t> witness;
  std::int64_t range_lo = 0;
  std::int64_t range_hi = 0;
  std::string note;

  bool holds() const { return verdict == Verdict::holds; }
};

/// Index interval [lo, hi], inclusive.
struct IndexRange {
  std::int64_t lo = 1;
  std::int64_t hi = 1;
  IndexRange(std::int64_t l, std::int64_t h) : lo(l), hi(h) {
    if (l < 0 || h < l) throw InputError("IndexRange: need 0 <= lo <= hi");
  }
};

/// Quasimonotone test: b_n / n^alpha non-increasing on the horizon.
ClassReport is_quasimonotone(const CoeffSeq& b, double alpha,
                             IndexRange horizon);

/// O-regular variation test on a positive non-decreasing sequence:
/// R(2n)/R(n) bounded, judged by the absence of a growth trend at the
/// horizon tail (holds / inconclusive), with positivity and monotonicity
/// violations reported as failures.
ClassReport is_o_regularly_varying(const CoeffSeq& R, IndexRange horizon);

/// Complex O-regularly varying quasimonotonicity:
/// delta(c_n / R(n)) in K(theta0) for every n in the horizon.
ClassReport is_orv_quasimonotone(const CoeffSeq& c, const CoeffSeq& R,
                                 SectorAngle theta0, IndexRange horizon);

/// The generalized bounded variation condition: for every window start m,
///   sum_{n=m}^{2m} |delta c_n| <= M * max_{m <= n < m+N0} |c_n|.
/// The report constant is the smallest admissible M over the range.
ClassReport gbv_check(const CoeffSeq& c, std::int64_t N0, IndexRange m_range);

/// Smallest window width N0 <= cap for which gbv_check holds.
std::pair<std::optional<std::int64_t>, ClassReport> find_min_N0(
    const CoeffSeq& c, std::int64_t N0_cap, IndexRange m_range);

/// Sector comparability |c_n| <= M Re c_n for ORV-quasimonotone sequences;
/// the constant is the supremum of |c_n| / Re c_n over the horizon.
ClassReport lemma1_sector_bound(const CoeffSeq& c, const CoeffSeq& R,
                                SectorAngle theta0, IndexRange horizon);

/// Smallest half-angle theta such that all nonzero c_n, n in range, fit in a
/// rotated sector of half-angle theta; fails when no sector narrower than a
/// half-plane contains them. Rotation-invariant, so the GBV verdict is stable
/// under c -> lambda*c.
ClassReport sector_spread(const CoeffSeq& c, IndexRange range);

}  // namespace gbvlab
