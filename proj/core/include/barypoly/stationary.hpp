#pragma once

#include "barypoly/dynamics.hpp"

namespace barypoly {

// Spectral data of the unique stationary point of the derived system.
//
// In conjugate coordinates the stationary point has every coordinate equal
// to alpha, the root in (0, 1) of x^(p-1) + x - 1. The linearised update is
// -beta (J - I) with beta = alpha^(p-2): eigenvalue beta on the sum-zero
// subspace and (1 - p) beta along the all-ones direction.
struct StationaryCertificate {
  int p = 0;
  double alpha = 0.0;
  double beta = 0.0;
  double lambda_repulsive = 0.0;    // (1 - p) beta, below -1 for p >= 3
  double lambda_contractive = 0.0;  // beta, multiplicity p - 1
  double instability_margin = 0.0;  // |lambda_repulsive| - 1
};

// x^(p-1) + x - 1, evaluated as exp((p-1) ln x) + x - 1.
double theta(int p, double x);

// Root of theta(p, .) in (0, 1): bisection to a 1e-15 bracket, then Newton
// polish. Throws std::invalid_argument for p < 2 or tol <= 0 and
// std::domain_error if |theta| <= tol is not reachable in binary64.
double solve_alpha(int p, double tol = 1e-14);

// Throws std::invalid_argument for p < 3.
StationaryCertificate certificate(int p);

// The stationary point of (S): every weight equal to 1 - alpha.
WeightTuple stationary_point(int p);
// The same point in conjugate coordinates: every coordinate equal to alpha.
ConjugateTuple stationary_conjugate(int p);

}  // namespace barypoly
