#include "gbvlab/coeff.hpp"

#include <cmath>
#include <limits>

namespace gbvlab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

// Exact check whether k = base^j for integer j >= 1; returns j or 0.
std::int64_t lacunary_index(std::int64_t k, std::int64_t base) {
  if (k < base) return 0;
  std::int64_t v = base, j = 1;
  while (v < k && v <= (std::numeric_limits<std::int64_t>::max() / base)) {
    v *= base;
    ++j;
  }
  return v == k ? j : 0;
}
}  // namespace

bool in_sector(cplx z, SectorAngle theta) {
  if (z == cplx(0.0, 0.0)) return true;
  // small absolute slack so exact-boundary arguments survive rounding
  return std::abs(std::arg(z)) <= theta.theta + 1e-12;
}

TailDecay TailDecay::power(double p, double c, std::int64_t from) {
  if (!(p > 0.0) || !(c > 0.0) || from < 1)
    throw InputError("TailDecay::power: need p > 0, c > 0, from >= 1");
  TailDecay d;
  d.kind = Kind::power;
  d.exponent = p;
  d.constant = c;
  d.valid_from = from;
  return d;
}

TailDecay TailDecay::geometric(double r, double c, std::int64_t from) {
  if (!(r > 0.0) || !(r < 1.0) || !(c > 0.0) || from < 1)
    throw InputError("TailDecay::geometric: need r in (0,1), c > 0");
  TailDecay d;
  d.kind = Kind::geometric;
  d.ratio = r;
  d.constant = c;
  d.valid_from = from;
  return d;
}

TailDecay TailDecay::lacunary(double base, double p, double c,
                              std::int64_t from) {
  if (!(base >= 2.0) || base != std::floor(base) || !(p > 0.0) || !(c > 0.0))
    throw InputError("TailDecay::lacunary: need integer base >= 2, p > 0");
  TailDecay d;
  d.kind = Kind::lacunary;
  d.base = base;
  d.exponent = p;
  d.constant = c;
  d.valid_from = from;
  return d;
}

TailDecay TailDecay::finite(std::int64_t max_degree) {
  TailDecay d;
  d.kind = Kind::finite_support;
  d.max_degree = max_degree < 0 ? 0 : max_degree;
  d.constant = 0.0;
  d.valid_from = d.max_degree + 1;
  return d;
}

double TailDecay::envelope(std::int64_t k) const {
  switch (kind) {
    case Kind::power:
      return std::pow(static_cast<double>(k), -exponent);
    case Kind::geometric:
      return std::pow(ratio, static_cast<double>(k));
    case Kind::lacunary: {
      std::int64_t j = lacunary_index(k, static_cast<std::int64_t>(base));
      return j == 0 ? 0.0 : std::pow(static_cast<double>(j), -exponent);
    }
    case Kind::finite_support:
      return k > max_degree ? 0.0 : kInf;
    case Kind::none:
      return kInf;
  }
  return kInf;
}

double TailDecay::tail_sum_bound(std::int64_t K) const {
  if (K < 1) K = 1;
  switch (kind) {
    case Kind::power: {
      if (exponent <= 1.0) return kInf;
      double Kd = static_cast<double>(std::max(K, valid_from));
      // sum_{k>=K} k^-p <= K^-p + integral_K^inf x^-p dx
      return constant *
             (std::pow(Kd, -exponent) +
              std::pow(Kd, 1.0 - exponent) / (exponent - 1.0));
    }
    case Kind::geometric: {
      double Kd = static_cast<double>(std::max(K, valid_from));
      return constant * std::pow(ratio, Kd) / (1.0 - ratio);
    }
    case Kind::lacunary: {
      if (exponent <= 1.0) return kInf;
      // blocks live at k = base^j; j0 = smallest block index with base^j >= K
      double j0 = std::ceil(std::log(static_cast<double>(K)) / std::log(base));
      if (j0 < 1.0) j0 = 1.0;
      return constant * (std::pow(j0, -exponent) +
                         std::pow(j0, 1.0 - exponent) / (exponent - 1.0));
    }
    case Kind::finite_support:
      return K > max_degree ? 0.0 : kInf;
    case Kind::none:
      return kInf;
  }
  return kInf;
}

double TailDecay::tail_kmax_bound(std::int64_t K) const {
  if (K < 1) K = 1;
  switch (kind) {
    case Kind::power: {
      if (exponent <= 1.0) return kInf;
      double Kd = static_cast<double>(std::max(K, valid_from));
      return constant * std::pow(Kd, 1.0 - exponent);
    }
    case Kind::geometric: {
      // k r^k is unimodal with peak near 1/ln(1/r)
      double peak = 1.0 / std::log(1.0 / ratio);
      double best = 0.0;
      for (double k :
           {static_cast<double>(K), std::floor(peak), std::ceil(peak)}) {
        if (k < static_cast<double>(K)) continue;
        best = std::max(best, k * std::pow(ratio, k));
      }
      return constant * best;
    }
    case Kind::lacunary:
      return kInf;  // base^j j^-p is unbounded
    case Kind::finite_support:
      return K > max_degree ? 0.0 : kInf;
    case Kind::none:
      return kInf;
  }
  return kInf;
}

TailDecay TailDecay::combine(const TailDecay& a, const TailDecay& b) {
  if (a.kind == Kind::finite_support && b.kind == Kind::finite_support)
    return finite(std::max(a.max_degree, b.max_degree));
  if (a.kind == Kind::finite_support) return b;
  if (b.kind == Kind::finite_support) return a;
  if (a.kind == Kind::none || b.kind == Kind::none) return TailDecay{};
  if (a.kind != b.kind)
    throw InputError("TailDecay::combine: mismatched envelope kinds");
  TailDecay d = a;
  d.constant = a.constant + b.constant;
  d.valid_from = std::max(a.valid_from, b.valid_from);
  switch (a.kind) {
    case Kind::power:
      d.exponent = std::min(a.exponent, b.exponent);
      break;
    case Kind::geometric:
      d.ratio = std::max(a.ratio, b.ratio);
      break;
    case Kind::lacunary:
      if (a.base != b.base)
        throw InputError("TailDecay::combine: mismatched lacunary bases");
      d.exponent = std::min(a.exponent, b.exponent);
      break;
    default:
      break;
  }
  if (a.diff && b.diff)
    d.diff = std::make_shared<TailDecay>(combine(*a.diff, *b.diff));
  else
    d.diff.reset();
  return d;
}

CoeffSeq::CoeffSeq(Generator gen, Support support, TailDecay decay,
                   std::string label, std::int64_t max_degree)
    : gen_(std::move(gen)),
      support_(support),
      decay_(std::move(decay)),
      label_(std::move(label)),
      max_degree_(max_degree) {
  if (support_ == Support::finite && decay_.kind == TailDecay::Kind::none)
    decay_ = TailDecay::finite(max_degree_);
}

cplx CoeffSeq::raw(std::int64_t k) const {
  std::int64_t a = std::abs(k);
  if (a >= kCacheHorizon) return gen_(k);
  auto& c = *cache_;
  std::lock_guard<std::mutex> lock(c.mu);
  auto& vals = k >= 0 ? c.pos : c.neg;
  auto& ok = k >= 0 ? c.pos_ok : c.neg_ok;
  if (static_cast<std::int64_t>(ok.size()) <= a) {
    vals.resize(a + 1);
    ok.resize(a + 1, 0);
  }
  if (!ok[a]) {
    vals[a] = gen_(k);
    ok[a] = 1;
  }
  return vals[a];
}

cplx CoeffSeq::coeff(std::int64_t k) const {
  switch (support_) {
    case Support::two_sided:
      return raw(k);
    case Support::nonnegative_only:
      return k < 0 ? cplx(0.0) : raw(k);
    case Support::cosine_symmetric:
      return raw(std::abs(k));
    case Support::sine_antisymmetric:
      if (k == 0) return cplx(0.0);
      return k > 0 ? raw(k) : -raw(-k);
    case Support::finite:
      if (std::abs(k) > max_degree_) return cplx(0.0);
      return raw(k);
  }
  return cplx(0.0);
}

CoeffSeq CoeffSeq::combined() const {
  CoeffSeq self = *this;  // shares cache
  TailDecay d;
  switch (support_) {
    case Support::finite:
      d = TailDecay::finite(max_degree_);
      break;
    default:
      d = TailDecay::combine(decay_, decay_);
      break;
  }
  std::int64_t deg = support_ == Support::finite ? max_degree_ : 0;
  return CoeffSeq(
      [self](std::int64_t n) { return self.coeff(n) + self.coeff(-n); },
      support_ == Support::finite ? Support::finite : Support::nonnegative_only,
      d, label_ + "+reflect", deg);
}

bool CoeffSeq::is_real_series() const {
  if (std::abs(coeff(0).imag()) > 1e-13) return false;
  for (std::int64_t k = 1; k <= 64; ++k) {
    cplx a = coeff(k), b = coeff(-k);
    double scale = std::max({1.0, std::abs(a), std::abs(b)});
    if (std::abs(a - std::conj(b)) > 1e-13 * scale) return false;
  }
  return true;
}

CoeffSeq make_real_seq(std::function<double(std::int64_t)> f, std::string label,
                       TailDecay decay) {
  return CoeffSeq(
      [f = std::move(f)](std::int64_t k) {
        return cplx(k >= 0 ? f(k) : 0.0, 0.0);
      },
      Support::nonnegative_only, std::move(decay), std::move(label));
}

}  // namespace gbvlab
