#pragma once

#include <cstdint>
#include <functional>

#include "gbvlab/coeff.hpp"

namespace gbvlab {

/// Conjugate Dirichlet sum: sum_{j=1}^{k} sin(j x) in closed form
/// sin(kx/2) sin((k+1)x/2) / sin(x/2). Requires sin(x/2) != 0.
double conj_dirichlet(std::int64_t k, double x);

/// A coefficient sequence together with the evaluation policy used for
/// pointwise values and sup-norm estimates.
struct SeriesHandle {
  CoeffSeq seq;
  double tail_tolerance = 1e-10;  // absolute, per tail component
  int grid_oversample = 4;        // grid points per unit degree

  SeriesHandle() = default;
  explicit SeriesHandle(CoeffSeq s, double tol = 1e-10, int oversample = 4)
      : seq(std::move(s)), tail_tolerance(tol), grid_oversample(oversample) {
    if (!(tail_tolerance > 0.0))
      throw InputError("SeriesHandle: tail_tolerance must be > 0");
    if (grid_oversample < 4)
      throw InputError("SeriesHandle: grid_oversample must be >= 4");
  }
};

enum class TrigKernel { sine, cosine };

struct TailResult {
  cplx value{0.0};
  double remainder = 0.0;  // certified bound on the truncation error
  std::int64_t terms = 0;
};

/// Certified value of sum_{k=m}^{inf} c(k) * kern(k x): direct summation up
/// to the proof's split point, Abel transformation against bounded kernel
/// partial sums beyond it, with the remainder certified from the decay
/// envelope (the plain absolute-convergence path is used where it is
/// cheaper or where the kernel sums are unbounded).
TailResult trig_tail(const std::function<cplx(std::int64_t)>& c,
                     const TailDecay& decay, std::int64_t m, double x,
                     TrigKernel kern, double tol);

/// Symmetric partial sum S_n(f, x) = sum_{k=-n}^{n} c(k) e^{ikx}, summed in
/// (k, -k) pairs so real-symmetric series stay numerically real.
cplx partial_sum(const SeriesHandle& h, std::int64_t n, double x);

/// Tail sum_{k=m}^{inf} c(k) sin(kx), certified to h.tail_tolerance.
cplx tail_sum(const SeriesHandle& h, std::int64_t m, double x);

/// f(x) to absolute accuracy 2 * tail_tolerance, assembled as a symmetric
/// head plus sine-type and cosine-type tails. Refuses (CertificateError)
/// when the decay metadata cannot certify convergence.
cplx eval(const SeriesHandle& h, double x);

/// Sup norm over [0, 2pi): oversampled grid max of |f| followed by one
/// golden-section refinement around the grid argmax.
double sup_norm(const SeriesHandle& h, std::int64_t resolve_degree);

}  // namespace gbvlab
