#include "gbvlab/rate.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

namespace gbvlab {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
constexpr std::int64_t kScanCap = 1'000'000'000;
constexpr std::int64_t kCheckStride = 1024;

double scale_check(double cur) { return std::max(1e-3 * cur, 1e-12); }

// Tail maximum of a weighted coefficient magnitude: cur = max_{k>=from} w(k),
// scanned until the envelope certifies the rest cannot matter. The scan stops
// as soon as the remaining-max bound drops to cur (zero truncation effect) or
// below the 1e-3-relative / 1e-12-absolute floor.
template <class Weight, class Bound>
double certified_tail_max(const Weight& w, const Bound& rest_bound,
                          std::int64_t from, const char* what) {
  double cur = 0.0;
  for (std::int64_t k = from; k <= from + kScanCap; ++k) {
    if ((k - from) % kCheckStride == 0) {
      double b = rest_bound(k);
      if (b <= std::max(cur, scale_check(cur))) return cur;
    }
    cur = std::max(cur, w(k));
  }
  throw CertificateError(std::string(what) +
                         ": tail maximum truncation not certifiable");
}

template <class Term, class Bound>
double certified_tail_sum(const Term& t, const Bound& rest_bound,
                          std::int64_t from, const char* what) {
  double cur = 0.0;
  for (std::int64_t k = from; k <= from + kScanCap; ++k) {
    if ((k - from) % kCheckStride == 0 && rest_bound(k) <= scale_check(cur))
      return cur;
    cur += t(k);
  }
  throw CertificateError(std::string(what) +
                         ": tail sum truncation not certifiable");
}

}  // namespace

QProxy q_proxy(const CoeffSeq& seq, std::int64_t n) {
  if (n < 1) throw InputError("q_proxy: n must be >= 1");
  const TailDecay& d = seq.decay();
  if (!d.has_envelope())
    throw CertificateError("q_proxy: sequence carries no decay certificate");

  QProxy out;
  for (std::int64_t k = 1; k <= n; ++k) {
    double v = static_cast<double>(k) *
               (std::abs(seq.coeff(n + k)) + std::abs(seq.coeff(-n - k)));
    out.parts.head_max = std::max(out.parts.head_max, v);
  }

  // Odd-part tail max; exactly zero under cosine symmetry.
  if (seq.support() == Support::cosine_symmetric) {
    out.parts.odd_tail_max = 0.0;
  } else {
    out.parts.odd_tail_max = certified_tail_max(
        [&](std::int64_t k) {
          return static_cast<double>(k) *
                 std::abs(seq.coeff(k) - seq.coeff(-k));
        },
        [&](std::int64_t k) { return 2.0 * d.tail_kmax_bound(k); }, 2 * n + 1,
        "q_proxy(odd tail)");
  }

  // Even-part tail sum; exactly zero under sine antisymmetry.
  if (seq.support() == Support::sine_antisymmetric) {
    out.parts.even_tail_sum = 0.0;
  } else {
    TailDecay comb = TailDecay::combine(d, d);
    out.parts.even_tail_sum = certified_tail_sum(
        [&](std::int64_t k) { return std::abs(seq.coeff(k) + seq.coeff(-k)); },
        [&](std::int64_t k) { return comb.tail_sum_bound(k); }, 2 * n + 1,
        "q_proxy(even tail)");
  }

  out.q = out.parts.head_max + out.parts.odd_tail_max + out.parts.even_tail_sum;
  return out;
}

double dual_lower_bound(const CoeffSeq& seq, std::int64_t n, std::int64_t N,
                        int sign) {
  if (n < 1 || N < 1) throw InputError("dual_lower_bound: need n, N >= 1");
  if (sign != 1 && sign != -1)
    throw InputError("dual_lower_bound: sign must be +-1");
  cplx acc(0.0);
  for (std::int64_t k = 1; k <= N; ++k) {
    acc += static_cast<double>(k) * seq.coeff(sign * (n + k));
    acc += static_cast<double>(N - k) * seq.coeff(sign * (n + N + k));
  }
  return std::abs(acc) / static_cast<double>(N);
}

double best_lower_bound(const CoeffSeq& seq, std::int64_t n,
                        std::int64_t N_max) {
  if (N_max < 1) N_max = 4 * n;
  double best = 0.0;
  for (std::int64_t N = 1; N <= N_max; ++N)
    for (int sign : {+1, -1})
      best = std::max(best, dual_lower_bound(seq, n, N, sign));
  return best;
}

std::vector<double> minimax_grid(const SeriesHandle& h, std::int64_t n) {
  std::int64_t M = 4 * h.grid_oversample * (n + 1);
  // Anchor the grid at x = 0 when evaluation there is certifiable at
  // reasonable cost; otherwise shift by a half step, since x = 0 admits no
  // Abel-transform remainder bound and slow power tails cannot be summed
  // directly to tolerance.
  bool anchored = h.seq.support() == Support::finite;
  if (!anchored) {
    TailDecay comb = TailDecay::combine(h.seq.decay(), h.seq.decay());
    anchored = comb.tail_sum_bound(1'000'000) <= h.tail_tolerance;
  }
  double offset = anchored ? 0.0 : 0.5;
  std::vector<double> xs(M);
  for (std::int64_t i = 0; i < M; ++i)
    xs[i] = (static_cast<double>(i) + offset) * kTwoPi / static_cast<double>(M);
  return xs;
}

namespace {

// ----- real path: exchange (Remez) on the grid ------------------------------

struct RealBasis {
  // columns: 1, cos x, sin x, ..., cos nx, sin nx
  Eigen::MatrixXd B;  // M x (2n+1)
  RealBasis(const std::vector<double>& xs, std::int64_t n) {
    std::int64_t M = xs.size();
    B.resize(M, 2 * n + 1);
    for (std::int64_t i = 0; i < M; ++i) {
      B(i, 0) = 1.0;
      for (std::int64_t j = 1; j <= n; ++j) {
        B(i, 2 * j - 1) = std::cos(j * xs[i]);
        B(i, 2 * j) = std::sin(j * xs[i]);
      }
    }
  }
};

// Pick one extremum per maximal sign run of the residual.
std::vector<std::int64_t> sign_run_extrema(const Eigen::VectorXd& r) {
  std::vector<std::int64_t> out;
  int cur_sign = 0;
  std::int64_t best = -1;
  for (std::int64_t i = 0; i < r.size(); ++i) {
    int s = r[i] > 0 ? 1 : (r[i] < 0 ? -1 : 0);
    if (s == 0) s = cur_sign;
    if (s != cur_sign && cur_sign != 0) {
      out.push_back(best);
      best = -1;
    }
    cur_sign = s == 0 ? cur_sign : s;
    if (best < 0 || std::abs(r[i]) > std::abs(r[best])) best = i;
  }
  if (best >= 0) out.push_back(best);
  return out;
}

// Reduce an alternating candidate list to exactly `target` entries, dropping
// the weakest while preserving alternation.
void trim_alternating(std::vector<std::int64_t>& idx, const Eigen::VectorXd& r,
                      std::int64_t target) {
  auto weakest = [&](size_t lo, size_t hi) {
    size_t w = lo;
    for (size_t i = lo; i < hi; ++i)
      if (std::abs(r[idx[i]]) < std::abs(r[idx[w]])) w = i;
    return w;
  };
  while (static_cast<std::int64_t>(idx.size()) > target) {
    if (static_cast<std::int64_t>(idx.size()) - target == 1) {
      // drop the weaker endpoint
      if (std::abs(r[idx.front()]) <= std::abs(r[idx.back()]))
        idx.erase(idx.begin());
      else
        idx.pop_back();
      continue;
    }
    size_t w = weakest(0, idx.size());
    if (w == 0) {
      idx.erase(idx.begin());
    } else if (w == idx.size() - 1) {
      idx.pop_back();
    } else {
      // removing an interior point leaves same-signed neighbors; drop the
      // weaker of the pair as well
      size_t other = std::abs(r[idx[w - 1]]) < std::abs(r[idx[w + 1]])
                         ? w - 1
                         : w + 1;
      size_t a = std::min(w, other), b = std::max(w, other);
      idx.erase(idx.begin() + b);
      idx.erase(idx.begin() + a);
    }
  }
}

MinimaxResult remez_real(const std::vector<double>& xs,
                         const Eigen::VectorXd& f, std::int64_t n) {
  const std::int64_t M = f.size();
  const std::int64_t dim = 2 * n + 1;
  const std::int64_t refsz = 2 * n + 2;
  RealBasis basis(xs, n);
  double fscale = std::max(1.0, f.cwiseAbs().maxCoeff());

  std::vector<std::int64_t> ref(refsz);
  for (std::int64_t t = 0; t < refsz; ++t)
    ref[t] = (t * M + M / 2) / refsz % M;

  MinimaxResult res;
  Eigen::VectorXd coef;
  double h = 0.0;
  Eigen::VectorXd r(M);
  for (int it = 0; it < 100; ++it) {
    Eigen::MatrixXd A(refsz, refsz);
    Eigen::VectorXd rhs(refsz);
    for (std::int64_t t = 0; t < refsz; ++t) {
      A.block(t, 0, 1, dim) = basis.B.row(ref[t]);
      A(t, dim) = (t % 2 == 0) ? 1.0 : -1.0;
      rhs(t) = f(ref[t]);
    }
    Eigen::VectorXd u = A.colPivHouseholderQr().solve(rhs);
    coef = u.head(dim);
    h = u(dim);
    r = f - basis.B * coef;
    double maxr = r.cwiseAbs().maxCoeff();
    res.cert.iterations = it + 1;
    res.cert.levelled_error = std::abs(h);
    res.cert.max_residual = maxr;

    if (maxr <= 1e-12 * fscale) {
      res.cert.degenerate = true;
      res.cert.converged = true;
      res.cert.real_path = true;
      res.value = maxr;
      return res;
    }
    if (maxr - std::abs(h) <= 1e-10 * maxr) {
      res.cert.converged = true;
      break;
    }

    std::vector<std::int64_t> cand = sign_run_extrema(r);
    if (static_cast<std::int64_t>(cand.size()) < refsz) {
      // not enough alternation to exchange; accept the current bracket
      break;
    }
    trim_alternating(cand, r, refsz);
    if (cand == ref) {
      res.cert.converged = true;
      break;
    }
    ref = cand;
  }

  res.cert.real_path = true;
  res.value = res.cert.max_residual;
  // count sign-alternating near-extremal residuals on the final reference
  int alt = 0;
  int prev_sign = 0;
  for (std::int64_t t = 0; t < refsz; ++t) {
    double v = r(ref[t]);
    int s = v >= 0 ? 1 : -1;
    if (std::abs(v) >= res.value * (1.0 - 1e-8) && s != prev_sign) {
      ++alt;
      prev_sign = s;
    }
  }
  res.cert.alternations = alt;
  if (!res.cert.converged)
    throw CertificateError(
        "minimax_en: exchange did not converge; bracket [" +
        std::to_string(res.cert.levelled_error) + ", " +
        std::to_string(res.cert.max_residual) + "]");
  return res;
}

// ----- complex path: Lawson iterative reweighting ---------------------------

MinimaxResult lawson_complex(const std::vector<double>& xs,
                             const Eigen::VectorXcd& f, std::int64_t n) {
  const std::int64_t M = f.size();
  const std::int64_t dim = 2 * n + 1;  // exponentials e^{ijx}, j = -n..n
  Eigen::VectorXd w = Eigen::VectorXd::Constant(M, 1.0 / M);
  std::vector<cplx> u(M);  // e^{i x_i}
  for (std::int64_t i = 0; i < M; ++i) u[i] = std::polar(1.0, xs[i]);

  MinimaxResult res;
  double best_upper = std::numeric_limits<double>::infinity();
  double best_lower = 0.0;
  const int max_iter = 800;
  for (int it = 0; it < max_iter; ++it) {
    // tau(t) = sum_i w_i e^{i t x_i}, t = 0..dim-1 (Hermitian Toeplitz Gram)
    Eigen::VectorXcd tau(dim);
    // b_j = sum_i w_i f_i e^{-i j x_i}, j = -n..n
    Eigen::VectorXcd b(dim);
    {
      std::vector<cplx> z(M, cplx(1.0, 0.0));
      for (std::int64_t t = 0; t < dim; ++t) {
        cplx acc(0.0);
        for (std::int64_t i = 0; i < M; ++i) acc += w[i] * z[i];
        tau(t) = acc;
        if (t + 1 < dim)
          for (std::int64_t i = 0; i < M; ++i) z[i] *= u[i];
      }
      std::vector<cplx> y(M);
      for (std::int64_t i = 0; i < M; ++i)
        y[i] = w[i] * f(i) * std::polar(1.0, n * xs[i]);
      // y_i currently w_i f_i e^{+i n x_i} = w_i f_i e^{-i(-n)x_i}
      for (std::int64_t j = 0; j < dim; ++j) {
        cplx acc(0.0);
        for (std::int64_t i = 0; i < M; ++i) acc += y[i];
        b(j) = acc;
        if (j + 1 < dim)
          for (std::int64_t i = 0; i < M; ++i) y[i] /= u[i];
      }
    }
    Eigen::MatrixXcd H(dim, dim);
    for (std::int64_t j = 0; j < dim; ++j)
      for (std::int64_t l = 0; l < dim; ++l) {
        std::int64_t t = l - j;
        H(j, l) = t >= 0 ? tau(t) : std::conj(tau(-t));
      }
    Eigen::VectorXcd c = H.ldlt().solve(b);

    // residuals
    double upper = 0.0, wsq = 0.0;
    Eigen::VectorXd absr(M);
    for (std::int64_t i = 0; i < M; ++i) {
      cplx e = std::polar(1.0, -n * xs[i]);
      cplx t(0.0);
      for (std::int64_t j = 0; j < dim; ++j) {
        t += c(j) * e;
        e *= u[i];
      }
      cplx r = f(i) - t;
      absr(i) = std::abs(r);
      upper = std::max(upper, absr(i));
      wsq += w[i] * absr(i) * absr(i);
    }
    best_lower = std::max(best_lower, std::sqrt(wsq));
    best_upper = std::min(best_upper, upper);
    res.cert.iterations = it + 1;
    res.cert.max_residual = best_upper;
    res.cert.dual_gap = best_lower > 0.0
                            ? best_upper / best_lower - 1.0
                            : std::numeric_limits<double>::infinity();
    if (best_upper <= 1e-13 * std::max(1.0, f.cwiseAbs().maxCoeff())) {
      res.cert.degenerate = true;
      res.cert.converged = true;
      break;
    }
    if (res.cert.dual_gap <= 1e-6) {
      res.cert.converged = true;
      break;
    }
    double total = 0.0;
    for (std::int64_t i = 0; i < M; ++i) {
      w[i] = std::max(w[i] * absr(i), 1e-300);
      total += w[i];
    }
    w /= total;
  }
  res.cert.real_path = false;
  res.value = best_upper;
  // Lawson's reweighting closes the dual gap only linearly; accept the run
  // once the recorded gap is small enough for downstream ratio checks.
  if (!res.cert.converged && res.cert.dual_gap <= 5e-3)
    res.cert.converged = true;
  return res;
}

}  // namespace

MinimaxResult minimax_en(const SeriesHandle& h, std::int64_t n) {
  if (n < 0) throw InputError("minimax_en: n must be >= 0");
  std::vector<double> xs = minimax_grid(h, n);
  const std::int64_t M = xs.size();
  Eigen::VectorXcd fv(M);
  for (std::int64_t i = 0; i < M; ++i) fv(i) = eval(h, xs[i]);

  if (h.seq.is_real_series()) {
    Eigen::VectorXd fr(M);
    for (std::int64_t i = 0; i < M; ++i) fr(i) = fv(i).real();
    return remez_real(xs, fr, n);
  }
  return lawson_complex(xs, fv, n);
}

double partial_sum_error(const SeriesHandle& h, std::int64_t n) {
  std::vector<double> xs = minimax_grid(h, n);
  double err = 0.0;
  for (double x : xs)
    err = std::max(err, std::abs(eval(h, x) - partial_sum(h, n, x)));
  return err;
}

double belov_cosine_proxy(const CoeffSeq& a, std::int64_t n) {
  // validate nonnegativity on a sampled prefix
  for (std::int64_t k = 0; k <= std::min<std::int64_t>(4096, 8 * n + 64); ++k) {
    cplx v = a.coeff(k);
    if (std::abs(v.imag()) > 1e-13 || v.real() < 0.0)
      throw InputError("belov_cosine_proxy: coefficients must be nonnegative");
  }
  // cosine-symmetric embedding c(+-k) = a_k / 2; the proxy must agree with
  // q_proxy of the embedding exactly, so it is computed through it
  TailDecay half = a.decay();
  half.constant *= 0.5;
  if (half.diff) {
    half.diff = std::make_shared<TailDecay>(*half.diff);
    half.diff->constant *= 0.5;
  }
  CoeffSeq embedded(
      [a](std::int64_t k) {
        return k == 0 ? a.coeff(0) : 0.5 * a.coeff(std::abs(k));
      },
      Support::cosine_symmetric, half, a.label() + ":cos-embed",
      a.max_degree());
  QProxy p = q_proxy(embedded, n);
  return p.q;
}

double belov_sine_proxy(const CoeffSeq& b, std::int64_t n) {
  const TailDecay& d = b.decay();
  if (!d.has_envelope() || !std::isfinite(d.tail_kmax_bound(n + 1)))
    throw CertificateError(
        "belov_sine_proxy: envelope cannot certify n*b_n -> 0");
  return certified_tail_max(
      [&](std::int64_t k) {
        cplx v = b.coeff(k);
        if (std::abs(v.imag()) > 1e-13 || v.real() < 0.0)
          throw InputError("belov_sine_proxy: coefficients must be nonnegative");
        return static_cast<double>(k - n) * v.real();
      },
      [&](std::int64_t k) { return d.tail_kmax_bound(k); }, n + 1,
      "belov_sine_proxy");
}

Theorem3Result theorem3_ratio(const SeriesHandle& h, std::int64_t n) {
  Theorem3Result out;
  out.s_n_error = partial_sum_error(h, n);
  MinimaxResult mm = minimax_en(h, n);
  out.e_n = mm.value;
  if (out.e_n > 1e-13) out.ratio = out.s_n_error / out.e_n;
  return out;
}

ClassReport theorem3_condition(const CoeffSeq& seq, IndexRange n_range) {
  ClassReport rep;
  rep.range_lo = std::max<std::int64_t>(n_range.lo, 1);
  rep.range_hi = n_range.hi;
  double sup = 0.0;
  for (std::int64_t n = rep.range_lo; n <= rep.range_hi; ++n) {
    double num = 0.0;
    for (std::int64_t k = n + 1; k <= 2 * n; ++k) {
      cplx v = seq.coeff(k);
      if (std::abs(v.imag()) > 1e-13)
        throw InputError("theorem3_condition: sequence must be real");
      num += v.real();
    }
    double den = 0.0;
    for (std::int64_t k = 1; k <= n; ++k)
      den = std::max(den, static_cast<double>(k) * seq.coeff(n + k).real());
    if (den == 0.0) {
      if (num != 0.0) {
        rep.verdict = Verdict::fails;
        rep.witness = n;
        rep.note = "window sum nonzero with zero weighted max";
        return rep;
      }
      continue;  // 0/0 contributes 0
    }
    sup = std::max(sup, num / den);
  }
  rep.verdict = Verdict::holds;
  rep.constant = sup;
  return rep;
}

}  // namespace gbvlab
