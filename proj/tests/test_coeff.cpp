#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <thread>

#include "gbvlab/families.hpp"

using namespace gbvlab;

namespace {

CoeffSeq two_sided_example() {
  // c(n) = 1/n, c(-n) = 1/n^2, c(0) = 0
  return CoeffSeq(
      [](std::int64_t k) {
        if (k == 0) return cplx(0.0);
        double a = static_cast<double>(std::abs(k));
        return cplx(k > 0 ? 1.0 / a : 1.0 / (a * a), 0.0);
      },
      Support::two_sided, TailDecay::power(1.0, 1.0), "mixed");
}

}  // namespace

TEST_CASE("coeff respects cosine symmetry") {
  Family fam = make_family("power_cosine", {2.0});
  CHECK(fam.series.coeff(3) == cplx(0.5 / 9.0, 0.0));
  CHECK(fam.series.coeff(-3) == fam.series.coeff(3));
  for (std::int64_t k = 1; k <= 4096; ++k)
    CHECK(fam.series.coeff(k) == fam.series.coeff(-k));
}

TEST_CASE("coeff respects sine antisymmetry") {
  Family fam = make_family("power_sine", {2.0});
  cplx c2 = fam.series.coeff(2);
  cplx cm2 = fam.series.coeff(-2);
  CHECK(cm2 == -c2);
  CHECK(c2.real() == 0.0);
  CHECK(c2.imag() == doctest::Approx(-0.125).epsilon(1e-15));
  CHECK(std::abs(cm2) == doctest::Approx(0.125).epsilon(1e-15));
}

TEST_CASE("coeff outside finite support is exactly zero") {
  CoeffSeq seq([](std::int64_t k) { return cplx(k == 1 ? 1.0 : 0.0, 0.0); },
               Support::finite, TailDecay::finite(2), "finite2", 2);
  CHECK(seq.coeff(5) == cplx(0.0));
  CHECK(seq.coeff(-3) == cplx(0.0));
  CHECK(seq.coeff(1) == cplx(1.0));
}

TEST_CASE("coeff is deterministic and cache-stable") {
  Family fam = make_family("log_power_sine", {1.5, 1.0});
  cplx first = fam.series.coeff(100);
  for (int i = 0; i < 3; ++i) CHECK(fam.series.coeff(100) == first);
}

TEST_CASE("delta is the forward difference c(n) - c(n+1)") {
  CoeffSeq inv = make_real_seq(
      [](std::int64_t n) { return n >= 1 ? 1.0 / n : 0.0; }, "1/n");
  CHECK(inv.delta(1) == cplx(0.5, 0.0));

  CoeffSeq constant = make_real_seq([](std::int64_t) { return 1.0; }, "1");
  CHECK(constant.delta(7) == cplx(0.0));

  CoeffSeq imag(
      [](std::int64_t k) {
        return k >= 1 ? cplx(0.0, 1.0 / k) : cplx(0.0);
      },
      Support::nonnegative_only, TailDecay::none(), "i/n");
  CHECK(imag.delta(1) == cplx(0.0, 0.5));
}

TEST_CASE("combined sequence") {
  SUBCASE("cosine family reduces to a_n") {
    Family fam = make_family("power_cosine", {2.0});
    CoeffSeq comb = fam.series.combined();
    for (std::int64_t n : {1, 2, 5, 100}) {
      CHECK(comb.coeff(n).real() ==
            doctest::Approx(std::pow(double(n), -2.0)).epsilon(1e-15));
      CHECK(comb.coeff(n).imag() == 0.0);
    }
  }
  SUBCASE("sine family cancels identically") {
    Family fam = make_family("power_sine", {1.5});
    CoeffSeq comb = fam.series.combined();
    for (std::int64_t n = 1; n <= 4096; ++n)
      CHECK(comb.coeff(n) == cplx(0.0));
  }
  SUBCASE("general two-sided sum") {
    CoeffSeq comb = two_sided_example().combined();
    CHECK(comb.coeff(2) == cplx(0.75, 0.0));
    CHECK(comb.coeff(-2) == cplx(0.0));
    CHECK(comb.support() == Support::nonnegative_only);
  }
}

TEST_CASE("tail decay envelopes certify every registered family") {
  struct Probe {
    const char* name;
    std::vector<double> params;
  };
  const Probe probes[] = {
      {"power_cosine", {1.5}},       {"power_cosine", {3.0}},
      {"power_sine", {2.0}},         {"log_power_sine", {1.5, 1.0}},
      {"log_power_sine", {2.0, 2.0}},
      {"complex_sector", {2.0, 0.7}},
      {"lacunary_sine", {2.0}},      {"finite_poly", {1.0, 0.5, 0.25}},
  };
  for (const Probe& p : probes) {
    Family fam = make_family(p.name, p.params);
    for (const CoeffSeq* seq : {&fam.series, &fam.classify}) {
      const TailDecay& d = seq->decay();
      REQUIRE(d.has_envelope());
      for (std::int64_t k = d.valid_from; k <= CoeffSeq::kCacheHorizon; ++k) {
        double bound = d.constant * d.envelope(k);
        double mag = std::max(std::abs(seq->coeff(k)), std::abs(seq->coeff(-k)));
        if (d.kind == TailDecay::Kind::finite_support) {
          if (k > d.max_degree) CHECK(mag == 0.0);
          continue;
        }
        if (!(mag <= bound * (1.0 + 1e-12)))
          FAIL(fam.label, ": envelope violated at k=", k, " (", mag, " > ",
               bound, ")");
      }
      if (d.diff) {
        for (std::int64_t k = d.diff->valid_from;
             k <= CoeffSeq::kCacheHorizon; ++k) {
          double bound = d.diff->constant * d.diff->envelope(k);
          double mag = std::abs(seq->delta(k));
          if (!(mag <= bound * (1.0 + 1e-12)))
            FAIL(fam.label, ": diff envelope violated at k=", k);
        }
      }
    }
  }
}

TEST_CASE("tail bounds dominate the true tails") {
  TailDecay d = TailDecay::power(2.0, 1.0);
  for (std::int64_t K : {1, 4, 100, 5000}) {
    double true_tail = 0.0;
    for (std::int64_t k = 2'000'000; k >= K; --k) true_tail += 1.0 / double(k * k);
    CHECK(d.tail_sum_bound(K) >= true_tail);
    CHECK(d.tail_kmax_bound(K) >=
          doctest::Approx(1.0 / double(K)).epsilon(1e-12));
  }

  TailDecay g = TailDecay::geometric(0.5, 1.0);
  CHECK(g.tail_sum_bound(3) == doctest::Approx(0.25).epsilon(1e-12));

  TailDecay lac = TailDecay::lacunary(2.0, 2.0, 1.0);
  // blocks at 2^j carry j^-2; tail past K=5 starts at j0=3
  double lac_tail = 0.0;
  for (int j = 3; j <= 60; ++j) lac_tail += std::pow(double(j), -2.0);
  CHECK(lac.tail_sum_bound(5) >= lac_tail);
  CHECK(lac.tail_kmax_bound(5) == std::numeric_limits<double>::infinity());

  TailDecay fin = TailDecay::finite(3);
  CHECK(fin.tail_sum_bound(4) == 0.0);
  CHECK(fin.tail_sum_bound(2) == std::numeric_limits<double>::infinity());
}

TEST_CASE("combine merges envelopes conservatively") {
  TailDecay a = TailDecay::power(2.0, 0.5);
  TailDecay b = TailDecay::power(3.0, 1.0);
  TailDecay c = TailDecay::combine(a, b);
  CHECK(c.exponent == 2.0);
  CHECK(c.constant == 1.5);
  CHECK_THROWS_AS(TailDecay::combine(a, TailDecay::geometric(0.5, 1.0)),
                  InputError);
  CHECK(TailDecay::combine(a, TailDecay::finite(7)).kind ==
        TailDecay::Kind::power);
}

TEST_CASE("sector membership") {
  CHECK(in_sector(cplx(1.0, 0.0), SectorAngle(0.0)));
  CHECK(in_sector(cplx(0.0, 0.0), SectorAngle(0.0)));
  CHECK_FALSE(in_sector(cplx(0.0, 1.0), SectorAngle(0.5)));
  CHECK_THROWS_AS(SectorAngle(2.0), InputError);
  CHECK_THROWS_AS(SectorAngle(-0.1), InputError);
}

TEST_CASE("concurrent reads agree with sequential evaluation") {
  Family fam = make_family("power_cosine", {2.0});
  const CoeffSeq& seq = fam.series;
  cplx expected(0.0);
  for (std::int64_t k = 1; k <= 20000; ++k) expected += seq.coeff(k);

  auto worker = [&seq](cplx* out) {
    cplx acc(0.0);
    for (std::int64_t k = 1; k <= 20000; ++k) acc += seq.coeff(k);
    *out = acc;
  };
  cplx r1, r2, r3;
  std::thread t1(worker, &r1), t2(worker, &r2), t3(worker, &r3);
  t1.join();
  t2.join();
  t3.join();
  CHECK(r1 == expected);
  CHECK(r2 == expected);
  CHECK(r3 == expected);
}

TEST_CASE("family registry and parsing") {
  CHECK(family_names().size() == 6);
  Family fam = parse_family("complex_sector(2, 0.5)");
  CHECK(fam.params == std::vector<double>{2.0, 0.5});
  CHECK(fam.series.coeff(-4) == cplx(0.0));
  CHECK(std::abs(std::arg(fam.series.coeff(4)) - 0.5) < 1e-15);

  CHECK_THROWS_AS(parse_family("no_such_family"), InputError);
  CHECK_THROWS_AS(parse_family("power_cosine(1,2)"), InputError);
  CHECK_THROWS_AS(parse_family("power_cosine(x)"), InputError);
  CHECK_THROWS_AS(parse_family("power_cosine(2"), InputError);
  CHECK_THROWS_AS(make_family("power_sine", {-1.0}), InputError);
  CHECK_THROWS_AS(make_family("lacunary_sine", {1.0}), InputError);
}

TEST_CASE("lacunary support uses exact integer index matching") {
  Family fam = make_family("lacunary_sine", {2.0});
  const CoeffSeq& b = fam.classify;
  CHECK(b.coeff(1024).real() == doctest::Approx(0.01).epsilon(1e-15));
  CHECK(b.coeff(1023) == cplx(0.0));
  CHECK(b.coeff(1025) == cplx(0.0));
  CHECK(b.coeff(3) == cplx(0.0));
  CHECK(b.coeff(2).real() == 1.0);
}
