#pragma once

// Smallest generalized eigenpairs of K v = lambda M v by shift-inverted
// block subspace iteration with Rayleigh-Ritz projection. Deterministic:
// the starting block comes from a fixed linear-congruential stream.

#include "randers/assembly.hpp"

#include <Eigen/Dense>

#include <vector>

namespace randers {

struct SolverError : std::runtime_error {
  SolverError(const std::string& what, std::vector<double> residuals = {})
      : std::runtime_error(what), best_residuals(std::move(residuals)) {}
  std::vector<double> best_residuals;
};

struct SpectrumResult {
  // Ascending; eigenvalues[0] is the near-zero constant mode lambda_0.
  Eigen::VectorXd eigenvalues;
  // Column i pairs with eigenvalues[i]; M-orthonormal, sign-normalized so
  // the first component above 1e-12*max|v| is positive.
  Eigen::MatrixXd eigenvectors;
  // Relative residuals |K v - lambda M v| / |K v| (operator-scale floor for
  // the numerically exact kernel mode).
  Eigen::VectorXd residuals;
  int iterations = 0;
  // cluster[i] = cluster[j] iff |lambda_i - lambda_j| <= 1e-6 * max(|.|,1).
  std::vector<int> cluster;
};

struct EigenOptions {
  double tol = 1e-8;
  int max_iterations = 500;
  int extra_block = 0;  // 0: pick automatically
  uint64_t seed = 0x9e3779b97f4a7c15ull;
};

// Returns the k+1 smallest eigenpairs (the constant mode included as
// lambda_0). Throws SolverError with the best residuals on non-convergence
// and on an indefinite mass matrix.
SpectrumResult smallest_eigenpairs(const OperatorPair& pair, int k,
                                   const EigenOptions& opts = {});

inline SpectrumResult smallest_eigenpairs(const OperatorPair& pair, int k, double tol) {
  EigenOptions o;
  o.tol = tol;
  return smallest_eigenpairs(pair, k, o);
}

// f^T K f / f^T M f. Throws on zero M-norm input.
double rayleigh_quotient(const OperatorPair& pair, const Eigen::VectorXd& f);

// Max Rayleigh quotient over span(columns of basis): the Min-Max upper
// bound produced by an explicit trial subspace.
double subspace_max_rayleigh(const OperatorPair& pair, const Eigen::MatrixXd& basis);

}  // namespace randers
