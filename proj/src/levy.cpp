#include "qemcq/levy.hpp"

#include <cmath>
#include <stdexcept>

namespace qemcq {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Lanczos coefficients for g = 7, n = 9.
constexpr double kLanczos[9] = {
    0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
    771.32342877765313,       -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7,
};

}  // namespace

double lanczos_gamma(double x) {
  if (x < 0.5) {
    // Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x).
    return kPi / (std::sin(kPi * x) * lanczos_gamma(1.0 - x));
  }
  x -= 1.0;
  double a = kLanczos[0];
  const double t = x + 7.5;
  for (int i = 1; i < 9; ++i) a += kLanczos[i] / (x + i);
  return std::sqrt(2.0 * kPi) * std::pow(t, x + 0.5) * std::exp(-t) * a;
}

double mantegna_sigma_u(double beta) {
  if (beta <= 0.0 || beta > 2.0) {
    throw std::invalid_argument("mantegna_sigma_u: beta outside (0, 2]");
  }
  const double num = lanczos_gamma(1.0 + beta) * std::sin(kPi * beta / 2.0);
  const double den = lanczos_gamma((1.0 + beta) / 2.0) * beta *
                     std::pow(2.0, (beta - 1.0) / 2.0);
  return std::pow(num / den, 1.0 / beta);
}

double levy_step(const LevyParams& params, Rng& rng) {
  // sigma_u depends only on beta; cache across the hot loop.
  thread_local double cached_beta = -1.0;
  thread_local double cached_sigma = 0.0;
  if (params.beta != cached_beta) {
    cached_sigma = mantegna_sigma_u(params.beta);
    cached_beta = params.beta;
  }
  const double sigma_u = cached_sigma;
  const double u = sigma_u * rng.normal();
  double v = params.sigma_v * rng.normal();
  while (v == 0.0) v = params.sigma_v * rng.normal();
  return u / std::pow(std::fabs(v), 1.0 / params.beta);
}

}  // namespace qemcq
