#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gbvlab/classes.hpp"
#include "gbvlab/series.hpp"

namespace gbvlab {

/// The three coefficient-only terms whose sum is the two-sided rate proxy:
/// near-degree head maximum, weighted odd-part tail maximum, even-part tail
/// sum.
struct QParts {
  double head_max = 0.0;
  double odd_tail_max = 0.0;
  double even_tail_sum = 0.0;
};

struct QProxy {
  double q = 0.0;
  QParts parts;
};

/// Coefficient-only proxy for E_n(f):
///   max_{1<=k<=n} k(|c(n+k)| + |c(-n-k)|)
/// + max_{k>=2n+1} k|c(k) - c(-k)|
/// + sum_{k>=2n+1} |c(k) + c(-k)|,
/// with envelope-certified tail truncation.
QProxy q_proxy(const CoeffSeq& seq, std::int64_t n);

/// Duality-based lower bound on E_n(f), exact in the coefficients:
///   |sum_{k=1}^{N} (k c(sign*(n+k)) + (N-k) c(sign*(n+N+k)))| / N.
double dual_lower_bound(const CoeffSeq& seq, std::int64_t n, std::int64_t N,
                        int sign);

/// Best dual bound over N in [1, N_max] and both signs.
double best_lower_bound(const CoeffSeq& seq, std::int64_t n,
                        std::int64_t N_max);

/// Solver certificate for the discretized minimax problem.
struct MinimaxCert {
  bool real_path = false;
  int alternations = 0;       // real exchange: sign-alternating extrema found
  double levelled_error = 0;  // real exchange: |h| on the final reference
  double max_residual = 0.0;
  double dual_gap = 0.0;      // complex path: upper/lower - 1
  int iterations = 0;
  bool converged = false;
  bool degenerate = false;    // residual at rounding level
};

struct MinimaxResult {
  double value = 0.0;  // grid minimax value
  MinimaxCert cert;
};

/// Evaluation grid for the degree-n minimax problem: M = 4*oversample*(n+1)
/// uniform points on [0, 2pi), offset by a half step.
std::vector<double> minimax_grid(const SeriesHandle& h, std::int64_t n);

/// Discretized best uniform approximation by trigonometric polynomials of
/// degree n. Real-valued series are solved by the exchange method with an
/// equioscillation certificate; complex-valued series by Lawson iterative
/// reweighting with a dual-gap certificate.
MinimaxResult minimax_en(const SeriesHandle& h, std::int64_t n);

/// Grid sup of |f - S_n(f)| on the minimax grid.
double partial_sum_error(const SeriesHandle& h, std::int64_t n);

/// Theorem-B cosine specialization: max_{1<=k<=n} k a(n+k) + sum_{k>2n} a(k).
double belov_cosine_proxy(const CoeffSeq& a, std::int64_t n);

/// Theorem-B sine specialization: max_{k>=1} k b(n+k).
double belov_sine_proxy(const CoeffSeq& b, std::int64_t n);

struct Theorem3Result {
  double s_n_error = 0.0;
  double e_n = 0.0;
  std::optional<double> ratio;  // absent when e_n is zero on the grid
};

/// Ratio ||f - S_n(f)|| / E_n measured on the shared minimax grid.
Theorem3Result theorem3_ratio(const SeriesHandle& h, std::int64_t n);

/// Theorem-3 hypothesis scan: sum_{k=n+1}^{2n} c(k) controlled by
/// max_{1<=k<=n} k c(n+k).
ClassReport theorem3_condition(const CoeffSeq& seq, IndexRange n_range);

/// Per-degree record for sweeps and CSV emission.
struct RateRecord {
  std::int64_t n = 0;
  double e_n_numeric = 0.0;
  double e_n_lower = 0.0;
  double q_n = 0.0;
  QParts q_parts;
  double s_n_error = 0.0;
};

}  // namespace gbvlab
