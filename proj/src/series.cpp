#include "gbvlab/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gbvlab {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
constexpr std::int64_t kMaxTerms = 1'000'000'000;

double wrap_2pi(double x) {
  double y = std::fmod(x, kTwoPi);
  if (y < 0.0) y += kTwoPi;
  return y;
}

// Incremental (cos kx, sin kx) via rotation, resynced periodically against
// libm to keep the drift below ~1e-12 over long runs.
struct Rotor {
  double x, c, s, dc, ds;
  std::int64_t k, last_sync;

  Rotor(std::int64_t k0, double x_) : x(x_) {
    dc = std::cos(x);
    ds = std::sin(x);
    sync(k0);
  }
  void sync(std::int64_t k0) {
    k = last_sync = k0;
    double a = std::fmod(static_cast<double>(k0) * x, kTwoPi);
    c = std::cos(a);
    s = std::sin(a);
  }
  void advance() {
    double nc = c * dc - s * ds;
    double ns = s * dc + c * ds;
    c = nc;
    s = ns;
    ++k;
    if (k - last_sync >= (1 << 14)) sync(k);
  }
};

// Smallest M in [from, cap] with bound(M) <= tol (bound non-increasing),
// or -1 when even bound(cap) > tol.
template <class Bound>
std::int64_t find_stop(const Bound& bound, std::int64_t from, double tol,
                       std::int64_t cap) {
  if (from > cap) return -1;
  if (!(bound(cap) <= tol)) return -1;
  std::int64_t lo = from, hi = from;
  while (!(bound(hi) <= tol)) {
    lo = hi + 1;
    hi = hi > cap / 2 ? cap : hi * 2;
  }
  while (lo < hi) {
    std::int64_t mid = lo + (hi - lo) / 2;
    if (bound(mid) <= tol)
      hi = mid;
    else
      lo = mid + 1;
  }
  return hi;
}

double kernel_value(const Rotor& r, TrigKernel kern) {
  return kern == TrigKernel::sine ? r.s : r.c;
}

}  // namespace

double conj_dirichlet(std::int64_t k, double x) {
  if (k < 1) throw InputError("conj_dirichlet: k must be >= 1");
  double s = std::sin(0.5 * x);
  if (s == 0.0)
    throw InputError("conj_dirichlet: x is a multiple of 2*pi; the sum is 0");
  return std::sin(0.5 * k * x) * std::sin(0.5 * (k + 1) * x) / s;
}

TailResult trig_tail(const std::function<cplx(std::int64_t)>& c,
                     const TailDecay& decay, std::int64_t m, double x,
                     TrigKernel kern, double tol) {
  if (m < 1) throw InputError("trig_tail: m must be >= 1");
  if (!decay.has_envelope())
    throw CertificateError("trig_tail: no decay certificate for the sequence");
  x = wrap_2pi(x);
  TailResult out;

  double s_half = std::abs(std::sin(0.5 * x));

  // Candidate stop indices for the two certified summation routes.
  std::int64_t m_direct = find_stop(
      [&](std::int64_t K) { return decay.tail_sum_bound(K + 1); }, m, tol,
      kMaxTerms);
  std::int64_t m_abel = -1;
  std::int64_t k_split = m;
  if (decay.diff && s_half > 1e-12) {
    double inv_s = 1.0 / s_half;
    m_abel = find_stop(
        [&](std::int64_t K) {
          return inv_s * decay.diff->tail_sum_bound(K + 1);
        },
        m, tol, kMaxTerms);
    k_split = std::max<std::int64_t>(
        {m, static_cast<std::int64_t>(std::min(4.0 / std::max(x, 1e-9), 1e7)),
         64});
    if (m_abel >= 0) m_abel = std::max(m_abel, k_split);
  }

  bool use_abel;
  if (m_abel < 0 && m_direct < 0)
    throw CertificateError(
        "trig_tail: decay envelope cannot certify the requested tolerance");
  if (m_abel < 0)
    use_abel = false;
  else if (m_direct < 0)
    use_abel = true;
  else
    use_abel = m_abel < m_direct;

  if (!use_abel) {
    // Plain absolutely convergent summation.
    if (x == 0.0 && kern == TrigKernel::cosine) {
      cplx acc(0.0);
      for (std::int64_t k = m; k <= m_direct; ++k) acc += c(k);
      out.value = acc;
    } else if (x == 0.0) {
      out.value = cplx(0.0);
    } else {
      Rotor r(m, x);
      cplx acc(0.0);
      for (std::int64_t k = m; k <= m_direct; ++k, r.advance())
        acc += c(k) * kernel_value(r, kern);
      out.value = acc;
    }
    out.remainder = decay.tail_sum_bound(m_direct + 1);
    out.terms = m_direct - m + 1;
    return out;
  }

  // Direct head up to the split point, Abel transformation beyond:
  //   sum_{k>=K} c(k) phi_k = sum_{k>=K} (c(k)-c(k+1)) Phi_k,
  // Phi_k = sum_{j=K}^{k} phi_j, |Phi_k| <= 1/|sin(x/2)|.
  cplx acc(0.0);
  Rotor r(m, x);
  for (std::int64_t k = m; k < k_split; ++k, r.advance())
    acc += c(k) * kernel_value(r, kern);
  double phi_sum = 0.0;
  cplx ck = c(k_split);
  for (std::int64_t k = k_split; k <= m_abel; ++k, r.advance()) {
    phi_sum += kernel_value(r, kern);
    cplx cnext = c(k + 1);
    acc += (ck - cnext) * phi_sum;
    ck = cnext;
  }
  out.value = acc;
  out.remainder = decay.diff->tail_sum_bound(m_abel + 1) / s_half;
  out.terms = m_abel - m + 1;
  return out;
}

cplx partial_sum(const SeriesHandle& h, std::int64_t n, double x) {
  if (n < 0) throw InputError("partial_sum: n must be >= 0");
  x = wrap_2pi(x);
  cplx acc = h.seq.coeff(0);
  Rotor r(1, x);
  for (std::int64_t k = 1; k <= n; ++k, r.advance()) {
    cplx e(r.c, r.s);
    acc += h.seq.coeff(k) * e + h.seq.coeff(-k) * std::conj(e);
  }
  return acc;
}

cplx tail_sum(const SeriesHandle& h, std::int64_t m, double x) {
  if (m < 1) throw InputError("tail_sum: m must be >= 1");
  if (x < -1e-15 || x > kPi + 1e-15)
    throw InputError("tail_sum: x must lie in [0, pi]");
  if (x <= 0.0 || x >= kPi) return cplx(0.0);  // sin(k*0) = sin(k*pi) = 0
  const CoeffSeq& seq = h.seq;
  if (!seq.decay().has_envelope())
    throw CertificateError("tail_sum: sequence carries no decay certificate");
  return trig_tail([&seq](std::int64_t k) { return seq.coeff(k); }, seq.decay(),
                   m, x, TrigKernel::sine, h.tail_tolerance)
      .value;
}

cplx eval(const SeriesHandle& h, double x) {
  x = wrap_2pi(x);
  const CoeffSeq& seq = h.seq;
  if (seq.support() == Support::finite) return partial_sum(h, seq.max_degree(), x);
  if (!seq.decay().has_envelope())
    throw CertificateError("eval: sequence carries no decay certificate");

  TailDecay comb = TailDecay::combine(seq.decay(), seq.decay());
  if (!std::isfinite(comb.tail_sum_bound(kMaxTerms)))
    throw CertificateError(
        "eval: sum |c(k)+c(-k)| cannot be certified finite (divergence)");

  const std::int64_t head = 64;
  cplx value = partial_sum(h, head, x);

  if (seq.support() != Support::sine_antisymmetric) {
    TailResult tc = trig_tail(
        [&seq](std::int64_t k) { return seq.coeff(k) + seq.coeff(-k); }, comb,
        head + 1, x, TrigKernel::cosine, h.tail_tolerance);
    value += tc.value;
  }
  if (seq.support() != Support::cosine_symmetric) {
    TailResult ts = trig_tail(
        [&seq](std::int64_t k) { return seq.coeff(k) - seq.coeff(-k); }, comb,
        head + 1, x, TrigKernel::sine, h.tail_tolerance);
    value += cplx(0.0, 1.0) * ts.value;
  }
  return value;
}

double sup_norm(const SeriesHandle& h, std::int64_t resolve_degree) {
  if (resolve_degree < 0) throw InputError("sup_norm: degree must be >= 0");
  std::int64_t M =
      std::max<std::int64_t>(8, h.grid_oversample * (resolve_degree + 1));
  double dx = kTwoPi / static_cast<double>(M);
  double best = 0.0, best_x = 0.0;
  for (std::int64_t i = 0; i < M; ++i) {
    double x = (static_cast<double>(i) + 0.5) * dx;
    double v = std::abs(eval(h, x));
    if (v > best) {
      best = v;
      best_x = x;
    }
  }
  // Golden-section refinement of |f| around the grid argmax.
  double a = best_x - dx, b = best_x + dx;
  const double gr = 0.6180339887498949;
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = std::abs(eval(h, x1)), f2 = std::abs(eval(h, x2));
  for (int it = 0; it < 80 && (b - a) > 1e-13; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = std::abs(eval(h, x2));
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = std::abs(eval(h, x1));
    }
    best = std::max({best, f1, f2});
  }
  return best;
}

}  // namespace gbvlab
