#include "gbvlab/families.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace gbvlab {

namespace {

const cplx kMinusHalfI(0.0, -0.5);  // sin kx = -i/2 (e^{ikx} - e^{-ikx})

std::string format_label(const std::string& name,
                         const std::vector<double>& params) {
  std::ostringstream os;
  os << name;
  if (!params.empty()) {
    os << '(';
    for (size_t i = 0; i < params.size(); ++i) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%g", params[i]);
      os << (i ? "," : "") << buf;
    }
    os << ')';
  }
  return os.str();
}

void require_params(const std::vector<double>& params, size_t lo, size_t hi,
                    const std::string& name) {
  if (params.size() < lo || params.size() > hi)
    throw InputError("family " + name + ": wrong parameter count");
}

double log_power(std::int64_t n, double beta, double gamma) {
  return std::pow(std::log(static_cast<double>(n) + 1.0), gamma) *
         std::pow(static_cast<double>(n), -beta);
}

// Numeric calibration of an envelope constant: sup over a long horizon of
// |v(n)| * n^p. Valid as a global bound when the maximizer sits well inside
// the horizon, which holds for log-power families with gamma <= 2.5.
double calibrate_constant(const std::function<double(std::int64_t)>& v,
                          double p, std::int64_t horizon) {
  double sup = 0.0;
  for (std::int64_t n = 1; n <= horizon; ++n)
    sup = std::max(sup,
                   std::abs(v(n)) * std::pow(static_cast<double>(n), p));
  return sup;
}

bool is_power_of(std::int64_t n, std::int64_t base) {
  if (n < base) return false;
  while (n % base == 0) n /= base;
  return n == 1;
}

std::int64_t ilog(std::int64_t n, std::int64_t base) {
  std::int64_t j = 0;
  while (n > 1) {
    n /= base;
    ++j;
  }
  return j;
}

}  // namespace

std::vector<std::string> family_names() {
  return {"power_cosine",   "power_sine", "log_power_sine",
          "complex_sector", "lacunary_sine", "finite_poly"};
}

Family make_family(const std::string& name, const std::vector<double>& params) {
  Family fam;
  fam.name = name;
  fam.params = params;
  fam.label = format_label(name, params);

  if (name == "power_cosine") {
    require_params(params, 1, 1, name);
    double beta = params[0];
    if (!(beta > 0.0)) throw InputError("power_cosine: beta must be > 0");
    auto a = [beta](std::int64_t n) {
      return n == 0 ? 0.0 : std::pow(static_cast<double>(n), -beta);
    };
    TailDecay d = TailDecay::power(beta, 0.5);
    // |delta(k^-beta / 2)| <= (beta/2) k^-(beta+1) by the mean value theorem
    d.diff = std::make_shared<TailDecay>(TailDecay::power(beta + 1.0,
                                                          0.5 * beta));
    fam.series = CoeffSeq([a](std::int64_t k) { return cplx(0.5 * a(k), 0.0); },
                          Support::cosine_symmetric, d, fam.label);
    fam.classify = make_real_seq(a, fam.label + ":a",
                                 [&] {
                                   TailDecay cd = TailDecay::power(beta, 1.0);
                                   cd.diff = std::make_shared<TailDecay>(
                                       TailDecay::power(beta + 1.0, beta));
                                   return cd;
                                 }());
    fam.theta_hint = 0.0;
    return fam;
  }

  if (name == "power_sine") {
    require_params(params, 1, 1, name);
    double beta = params[0];
    if (!(beta > 0.0)) throw InputError("power_sine: beta must be > 0");
    auto b = [beta](std::int64_t n) {
      return n <= 0 ? 0.0 : std::pow(static_cast<double>(n), -beta);
    };
    TailDecay d = TailDecay::power(beta, 0.5);
    d.diff = std::make_shared<TailDecay>(TailDecay::power(beta + 1.0,
                                                          0.5 * beta));
    fam.series =
        CoeffSeq([b](std::int64_t k) { return kMinusHalfI * b(k); },
                 Support::sine_antisymmetric, d, fam.label);
    fam.classify = make_real_seq(b, fam.label + ":b",
                                 [&] {
                                   TailDecay cd = TailDecay::power(beta, 1.0);
                                   cd.diff = std::make_shared<TailDecay>(
                                       TailDecay::power(beta + 1.0, beta));
                                   return cd;
                                 }());
    fam.theta_hint = 0.0;
    return fam;
  }

  if (name == "log_power_sine") {
    require_params(params, 2, 2, name);
    double beta = params[0], gamma = params[1];
    if (!(beta > 0.0)) throw InputError("log_power_sine: beta must be > 0");
    if (!(gamma >= 0.0) || gamma > 2.5)
      throw InputError("log_power_sine: gamma must lie in [0, 2.5]");
    auto b = [beta, gamma](std::int64_t n) {
      return n <= 0 ? 0.0 : log_power(n, beta, gamma);
    };
    // Envelope exponent is backed off by 1/4 to absorb the log factor; the
    // constants are calibrated on a horizon past the maximizer of
    // log(n+1)^gamma / n^(1/4).
    double delta = 0.25;
    std::int64_t horizon = 1 << 17;
    double c_env = calibrate_constant(b, beta - delta, horizon);
    double c_diff = 1.02 * calibrate_constant(
                               [&b](std::int64_t n) { return b(n) - b(n + 1); },
                               beta + 1.0 - delta, horizon);
    TailDecay d = TailDecay::power(beta - delta, 0.5 * c_env);
    d.diff = std::make_shared<TailDecay>(
        TailDecay::power(beta + 1.0 - delta, 0.5 * c_diff));
    fam.series = CoeffSeq([b](std::int64_t k) { return kMinusHalfI * b(k); },
                          Support::sine_antisymmetric, d, fam.label);
    TailDecay cd = TailDecay::power(beta - delta, c_env);
    cd.diff = std::make_shared<TailDecay>(
        TailDecay::power(beta + 1.0 - delta, c_diff));
    fam.classify = make_real_seq(b, fam.label + ":b", cd);
    fam.theta_hint = 0.0;
    return fam;
  }

  if (name == "complex_sector") {
    require_params(params, 2, 2, name);
    double beta = params[0], theta = params[1];
    if (!(beta > 0.0)) throw InputError("complex_sector: beta must be > 0");
    SectorAngle check(theta);  // validates [0, pi/2)
    cplx phase = std::polar(1.0, theta);
    auto c = [beta, phase](std::int64_t k) {
      return k <= 0 ? cplx(0.0)
                    : phase * std::pow(static_cast<double>(k), -beta);
    };
    TailDecay d = TailDecay::power(beta, 1.0);
    d.diff = std::make_shared<TailDecay>(TailDecay::power(beta + 1.0, beta));
    fam.series = CoeffSeq(c, Support::nonnegative_only, d, fam.label);
    fam.classify = CoeffSeq(c, Support::nonnegative_only, d, fam.label + ":c");
    fam.theta_hint = theta;
    return fam;
  }

  if (name == "lacunary_sine") {
    require_params(params, 1, 1, name);
    double alpha = params[0];
    if (!(alpha > 1.0)) throw InputError("lacunary_sine: alpha must be > 1");
    // b_n = j^-alpha when n = 2^j exactly, zero elsewhere.
    auto b = [alpha](std::int64_t n) {
      if (n < 2 || !is_power_of(n, 2)) return 0.0;
      return std::pow(static_cast<double>(ilog(n, 2)), -alpha);
    };
    TailDecay d = TailDecay::lacunary(2.0, alpha, 0.5);
    fam.series = CoeffSeq([b](std::int64_t k) { return kMinusHalfI * b(k); },
                          Support::sine_antisymmetric, d, fam.label);
    fam.classify =
        make_real_seq(b, fam.label + ":b", TailDecay::lacunary(2.0, alpha, 1.0));
    fam.theta_hint = 0.0;
    return fam;
  }

  if (name == "finite_poly") {
    // Parameters are cosine coefficients a_0, a_1, ..., a_N:
    // f(x) = sum a_k cos kx.
    std::vector<double> a = params;
    if (a.empty()) a.push_back(0.0);
    std::int64_t deg = static_cast<std::int64_t>(a.size()) - 1;
    auto gen = [a, deg](std::int64_t k) {
      std::int64_t j = std::abs(k);
      if (j > deg) return cplx(0.0);
      return cplx(j == 0 ? a[0] : 0.5 * a[j], 0.0);
    };
    fam.series = CoeffSeq(gen, Support::finite, TailDecay::finite(deg),
                          fam.label, deg);
    fam.classify = make_real_seq(
        [a, deg](std::int64_t n) {
          return n >= 1 && n <= deg ? a[n] : 0.0;
        },
        fam.label + ":a", TailDecay::finite(deg));
    fam.theta_hint = 0.0;
    return fam;
  }

  throw InputError("unknown family: " + name);
}

Family parse_family(const std::string& spec) {
  auto open = spec.find('(');
  if (open == std::string::npos) return make_family(spec, {});
  if (spec.back() != ')') throw InputError("malformed family spec: " + spec);
  std::string name = spec.substr(0, open);
  std::string args = spec.substr(open + 1, spec.size() - open - 2);
  std::vector<double> params;
  std::stringstream ss(args);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    size_t pos = 0;
    double v;
    try {
      v = std::stod(tok, &pos);
    } catch (const std::exception&) {
      throw InputError("malformed family parameter: " + tok);
    }
    while (pos < tok.size() && std::isspace(static_cast<unsigned char>(tok[pos])))
      ++pos;
    if (pos != tok.size())
      throw InputError("malformed family parameter: " + tok);
    params.push_back(v);
  }
  return make_family(name, params);
}

}  // namespace gbvlab
