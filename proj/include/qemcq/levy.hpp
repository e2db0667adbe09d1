#pragma once

#include "qemcq/rng.hpp"

namespace qemcq {

// Mantegna-style heavy-tailed step generator used by the Levy-flight and
// global-pollination operators.
struct LevyParams {
  double beta = 1.5;        // stability index, 0 < beta <= 2
  double sigma_v = 1.0;
  double alpha_scale = 1.0; // outer step scale for the perturbation operator
};

// Gamma function via the Lanczos approximation (g = 7, 9 coefficients).
double lanczos_gamma(double x);

// sigma_u = [Gamma(1+b) sin(pi b/2) / (Gamma((1+b)/2) b 2^((b-1)/2))]^(1/b).
// ~0.696575 for beta = 1.5.
double mantegna_sigma_u(double beta);

// One step: u / |v|^(1/beta) with u = sigma_u * N(0,1), v = sigma_v * N(0,1);
// v is resampled while exactly zero. Consumes normals in the order u, v.
double levy_step(const LevyParams& params, Rng& rng);

}  // namespace qemcq
