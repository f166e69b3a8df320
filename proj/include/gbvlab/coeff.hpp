#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gbvlab {

using cplx = std::complex<double>;

/// Error raised when an operation cannot certify its result (missing decay
/// metadata, divergence diagnosis, uncertifiable truncation).
class CertificateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Error raised for invalid inputs (bad parameters, malformed ranges).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Half-angle of the sector K(theta) = { z : |arg z| <= theta }.
struct SectorAngle {
  double theta = 0.0;

  explicit SectorAngle(double t) : theta(t) {
    if (!(t >= 0.0) || !(t < 1.5707963267948966))
      throw InputError("SectorAngle: theta must lie in [0, pi/2)");
  }
};

/// true iff z = 0 or |arg z| <= theta. Zero belongs to every sector.
bool in_sector(cplx z, SectorAngle theta);

/// Certified upper envelope for coefficient tails: |c(+-k)| <= constant *
/// envelope(k) for k >= valid_from. The optional `diff` member bounds the
/// first differences |c(k) - c(k+1)| the same way; Abel-transform remainder
/// certificates need it.
struct TailDecay {
  enum class Kind { power, geometric, lacunary, finite_support, none };

  Kind kind = Kind::none;
  double exponent = 0.0;    // power: p; lacunary: exponent on the block index
  double ratio = 0.0;       // geometric ratio in (0,1)
  double base = 0.0;        // lacunary base (integer >= 2)
  std::int64_t max_degree = 0;  // finite_support
  double constant = 0.0;
  std::int64_t valid_from = 1;
  std::shared_ptr<TailDecay> diff;  // envelope for |delta c(k)|, optional

  static TailDecay power(double p, double c, std::int64_t from = 1);
  static TailDecay geometric(double r, double c, std::int64_t from = 1);
  static TailDecay lacunary(double base, double p, double c,
                            std::int64_t from = 1);
  static TailDecay finite(std::int64_t max_degree);
  static TailDecay none() { return TailDecay{}; }

  bool has_envelope() const { return kind != Kind::none; }

  /// Pointwise envelope value (without the constant factor).
  double envelope(std::int64_t k) const;

  /// Upper bound on sum_{k >= K} constant*envelope(k); +inf when divergent.
  double tail_sum_bound(std::int64_t K) const;

  /// Upper bound on sup_{k >= K} k*constant*envelope(k); +inf when unbounded.
  double tail_kmax_bound(std::int64_t K) const;

  /// Envelope bound merge for termwise sums of two sequences.
  static TailDecay combine(const TailDecay& a, const TailDecay& b);
};

enum class Support {
  two_sided,
  nonnegative_only,
  cosine_symmetric,
  sine_antisymmetric,
  finite,
};

/// A two-sided complex coefficient sequence c(k), k in Z, with symmetry
/// metadata and a certified decay envelope. Values are memoized up to a fixed
/// horizon; the fill is idempotent so sharing across threads is safe.
class CoeffSeq {
 public:
  static constexpr std::int64_t kCacheHorizon = 1 << 16;

  using Generator = std::function<cplx(std::int64_t)>;

  CoeffSeq() = default;
  CoeffSeq(Generator gen, Support support, TailDecay decay, std::string label,
           std::int64_t max_degree = 0);

  /// c(k); symmetric values are derived from the one-sided generator, indices
  /// outside a finite or one-sided support return exactly zero.
  cplx coeff(std::int64_t k) const;
  cplx operator()(std::int64_t k) const { return coeff(k); }

  /// Forward difference c(n) - c(n+1).
  cplx delta(std::int64_t n) const { return coeff(n) - coeff(n + 1); }

  /// One-sided sequence n -> c(n) + c(-n), n >= 1, with merged decay.
  CoeffSeq combined() const;

  Support support() const { return support_; }
  const TailDecay& decay() const { return decay_; }
  const std::string& label() const { return label_; }
  std::int64_t max_degree() const { return max_degree_; }

  /// true when the series sum c(k) e^{ikx} is real-valued, i.e. c(-k) equals
  /// conj(c(k)) on a sampled range and c(0) is real.
  bool is_real_series() const;

 private:
  cplx raw(std::int64_t k) const;

  Generator gen_;
  Support support_ = Support::finite;
  TailDecay decay_ = TailDecay::finite(0);
  std::string label_;
  std::int64_t max_degree_ = 0;

  struct Cache {
    std::mutex mu;
    std::vector<cplx> pos, neg;
    std::vector<std::uint8_t> pos_ok, neg_ok;
  };
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

/// Wrap a real-valued one-sided sequence (used for R(n) and test sequences).
CoeffSeq make_real_seq(std::function<double(std::int64_t)> f, std::string label,
                       TailDecay decay = TailDecay::none());

}  // namespace gbvlab
