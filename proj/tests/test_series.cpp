#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "gbvlab/families.hpp"
#include "gbvlab/series.hpp"

using namespace gbvlab;

namespace {

constexpr double kPi = 3.14159265358979323846;

CoeffSeq sine_b(double beta) {
  TailDecay d = TailDecay::power(beta, 1.0);
  d.diff = std::make_shared<TailDecay>(TailDecay::power(beta + 1.0, beta));
  return make_real_seq(
      [beta](std::int64_t n) {
        return n >= 1 ? std::pow(double(n), -beta) : 0.0;
      },
      "b=k^-beta", d);
}

double brute_sine_tail(double beta, std::int64_t m, double x, std::int64_t K) {
  long double acc = 0.0L;
  for (std::int64_t k = K; k >= m; --k)
    acc += std::pow((long double)k, (long double)-beta) *
           std::sin((long double)k * x);
  return (double)acc;
}

}  // namespace

TEST_CASE("conj_dirichlet closed form") {
  CHECK(conj_dirichlet(1, 1.0) == doctest::Approx(std::sin(1.0)).epsilon(1e-15));
  CHECK(conj_dirichlet(2, kPi) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(conj_dirichlet(3, kPi / 2.0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK_THROWS_AS(conj_dirichlet(5, 0.0), InputError);
  CHECK_THROWS_AS(conj_dirichlet(0, 1.0), InputError);

  for (double x : {0.01, 0.1, 1.0, 2.0, 3.0}) {
    long double direct = 0.0L;
    for (std::int64_t k = 1; k <= 1000; ++k) {
      direct += std::sin((long double)k * x);
      double closed = conj_dirichlet(k, x);
      if (std::abs(closed - (double)direct) > 1e-10)
        FAIL("mismatch at k=", k, " x=", x);
    }
  }
}

TEST_CASE("partial_sum basics") {
  CoeffSeq delta0([](std::int64_t k) { return cplx(k == 0 ? 1.0 : 0.0, 0.0); },
                  Support::finite, TailDecay::finite(0), "c0", 0);
  SeriesHandle h0(delta0);
  CHECK(partial_sum(h0, 5, 0.37) == cplx(1.0));

  Family cosx = make_family("finite_poly", {0.0, 1.0});
  SeriesHandle hc(cosx.series);
  CHECK(partial_sum(hc, 1, 0.0).real() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(partial_sum(hc, 0, 0.7) == cosx.series.coeff(0));
}

TEST_CASE("partial_sum of a real-symmetric series stays numerically real") {
  Family fam = make_family("power_cosine", {2.0});
  SeriesHandle h(fam.series);
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> ux(0.0, 2.0 * kPi);
  for (int i = 0; i < 1000; ++i) {
    cplx v = partial_sum(h, 64, ux(rng));
    CHECK(std::abs(v.imag()) <= 1e-12);
  }
}

TEST_CASE("tail_sum endpoints and oracle") {
  SeriesHandle h(sine_b(3.0), 1e-10);
  CHECK(tail_sum(h, 7, 0.0) == cplx(0.0));
  CHECK(tail_sum(h, 7, kPi) == cplx(0.0));
  CHECK_THROWS_AS(tail_sum(h, 0, 1.0), InputError);
  CHECK_THROWS_AS(tail_sum(h, 1, 4.0), InputError);

  double oracle = brute_sine_tail(3.0, 2, kPi / 2.0, 1'000'000);
  cplx got = tail_sum(h, 2, kPi / 2.0);
  CHECK(std::abs(got.real() - oracle) <= 2e-10);
  CHECK(std::abs(got.imag()) <= 1e-15);

  CoeffSeq bare = make_real_seq(
      [](std::int64_t n) { return n >= 1 ? 1.0 / double(n * n) : 0.0; },
      "no-cert");
  SeriesHandle hb(bare);
  CHECK_THROWS_AS(tail_sum(hb, 1, 1.0), CertificateError);
}

TEST_CASE("tail_sum matches brute force across decay rates and x") {
  for (double beta : {1.5, 2.0}) {
    SeriesHandle h(sine_b(beta), 1e-8);
    for (double x : {0.05, 0.9, 2.5}) {
      double oracle = brute_sine_tail(beta, 5, x, 3'000'000);
      // brute truncation error <= sum_{k>3e6} k^-beta
      double brute_err =
          std::pow(3e6, 1.0 - beta) / (beta - 1.0) + std::pow(3e6, -beta);
      double got = tail_sum(h, 5, x).real();
      CHECK(std::abs(got - oracle) <= 2e-8 + brute_err / std::sin(0.5 * x));
    }
  }
}

TEST_CASE("eval oracles") {
  Family cosx = make_family("finite_poly", {0.0, 1.0});
  SeriesHandle hc(cosx.series);
  CHECK(eval(hc, kPi / 3.0).real() == doctest::Approx(0.5).epsilon(1e-12));

  Family basel = make_family("power_cosine", {2.0});
  SeriesHandle hb(basel.series, 1e-6);
  CHECK(eval(hb, 0.0).real() ==
        doctest::Approx(kPi * kPi / 6.0).epsilon(3e-6));

  Family sine3 = make_family("power_sine", {3.0});
  SeriesHandle hs(sine3.series);
  CHECK(std::abs(eval(hs, kPi)) <= 1e-9);
}

TEST_CASE("eval agrees with long partial sums at interior points") {
  Family fam = make_family("power_sine", {1.5});
  SeriesHandle h(fam.series, 1e-9);
  for (double x : {0.3, 1.0, 2.0, 5.0}) {
    cplx head = partial_sum(h, 2'000'000, x);
    // remaining tail of sum b_k sin kx, bounded crudely by Abel:
    // |sum_{k>K} k^-1.5 sin kx| <= 1.5 K^-1.5 / sin(x/2) (diff envelope)
    double rest = 3.0 * std::pow(2e6, -1.5) / std::abs(std::sin(0.5 * x));
    CHECK(std::abs(eval(h, x) - head) <= 2e-9 + rest);
  }
}

TEST_CASE("eval of a real-symmetric series has negligible imaginary part") {
  Family fam = make_family("power_cosine", {1.5});
  SeriesHandle h(fam.series, 1e-8);
  std::mt19937 rng(777);
  std::uniform_real_distribution<double> ux(0.05, 2.0 * kPi - 0.05);
  for (int i = 0; i < 50; ++i)
    CHECK(std::abs(eval(h, ux(rng)).imag()) <= 1e-12);
}

TEST_CASE("eval refuses without a usable certificate") {
  Family lac = make_family("lacunary_sine", {2.0});
  SeriesHandle h(lac.series);
  CHECK_THROWS_AS(eval(h, 1.0), CertificateError);

  // slow decay below summability with no diff envelope: nothing certifiable
  CoeffSeq slow = make_real_seq(
      [](std::int64_t n) { return n >= 1 ? 1.0 / double(n) : 0.0; }, "1/n",
      TailDecay::power(1.0, 1.0));
  SeriesHandle hs(slow);
  CHECK_THROWS_AS(eval(hs, 0.5), CertificateError);
}

TEST_CASE("sup_norm") {
  Family cosx = make_family("finite_poly", {0.0, 1.0});
  CHECK(sup_norm(SeriesHandle(cosx.series), 1) ==
        doctest::Approx(1.0).epsilon(1e-10));

  // sin x + sin 2x: closed-form argmax at cos x = (-1+sqrt(33))/8
  CoeffSeq two_sines(
      [](std::int64_t k) {
        if (k == 1 || k == 2) return cplx(0.0, -0.5);
        return cplx(0.0);
      },
      Support::sine_antisymmetric, TailDecay::finite(2), "sinx+sin2x", 2);
  CoeffSeq finite_two(
      [&two_sines](std::int64_t k) { return two_sines.coeff(k); },
      Support::finite, TailDecay::finite(2), "sinx+sin2x", 2);
  double c = (-1.0 + std::sqrt(33.0)) / 8.0;
  double xstar = std::acos(c);
  double oracle = std::sin(xstar) + std::sin(2.0 * xstar);
  CHECK(oracle == doctest::Approx(1.76017).epsilon(1e-5));
  CHECK(sup_norm(SeriesHandle(finite_two), 2) ==
        doctest::Approx(oracle).epsilon(1e-6));

  CoeffSeq zero([](std::int64_t) { return cplx(0.0); }, Support::finite,
                TailDecay::finite(0), "zero", 0);
  CHECK(sup_norm(SeriesHandle(zero), 4) == 0.0);
}

TEST_CASE("lemma 6 empirical bound is n-stable") {
  for (const char* name : {"power_cosine", "power_sine"}) {
    Family fam = make_family(name, {2.0});
    const CoeffSeq& c = fam.series;
    double c_emp_8 = 0.0, c_emp_64 = 0.0;
    for (std::int64_t n : {8, 16, 32, 64}) {
      double denom = 0.0;
      for (std::int64_t k = 1; k <= n; ++k)
        denom = std::max(denom, double(k) * std::abs(c.coeff(n + k)));
      double sup = 0.0;
      for (int i = 0; i < 4096; ++i) {
        double x = kPi * (i + 0.5) / 4096.0;
        cplx acc(0.0);
        for (std::int64_t k = 1; k <= n; ++k)
          acc += c.coeff(n + k) * std::sin(double(k) * x);
        sup = std::max(sup, std::abs(acc));
      }
      double c_emp = sup / denom;
      if (n == 8) c_emp_8 = c_emp;
      if (n == 64) c_emp_64 = c_emp;
    }
    CHECK(c_emp_64 <= 2.0 * c_emp_8);
  }
}

TEST_CASE("lemma 7 empirical bound is m-stable") {
  SeriesHandle h(sine_b(2.0), 1e-10);
  double c17 = 0.0, c257 = 0.0;
  for (std::int64_t m : {17, 65, 257}) {
    double denom = 1.0 / double(m);  // max_{k>=m} k * k^-2
    double sup = 0.0;
    for (int i = 1; i < 64; ++i) {
      double x = kPi * i / 64.0;
      sup = std::max(sup, std::abs(tail_sum(h, m, x)));
    }
    double c_emp = sup / denom;
    if (m == 17) c17 = c_emp;
    if (m == 257) c257 = c_emp;
  }
  CHECK(c257 <= 2.0 * c17);
}

TEST_CASE("series handle validation") {
  Family fam = make_family("power_cosine", {2.0});
  CHECK_THROWS_AS(SeriesHandle(fam.series, 0.0), InputError);
  CHECK_THROWS_AS(SeriesHandle(fam.series, 1e-8, 2), InputError);
}
