#pragma once

#include <Eigen/Dense>
#include <vector>

#include "agent_thermo/distribution.hpp"

namespace agent_thermo {

inline constexpr double kPsdTolerance = 1e-9;

// Pairwise-overlap matrix of a pure-state family: symmetric, unit
// diagonal, entries in [-1,1], PSD down to -1e-9 on the smallest
// eigenvalue. Construction validates all of that.
class GramKernel {
 public:
  explicit GramKernel(Eigen::MatrixXd entries);

  static GramKernel identity(int dimension);

  int dimension() const { return static_cast<int>(entries_.rows()); }
  const Eigen::MatrixXd& entries() const { return entries_; }
  double operator()(int i, int j) const { return entries_(i, j); }

  bool is_identity(double tol = kPsdTolerance) const;

 private:
  Eigen::MatrixXd entries_;
};

// A Gram kernel together with mixing weights over the same index set.
// The mixture it describes is rho = sum_i w_i |s_i><s_i|, whose spectrum
// equals that of K_ij = sqrt(w_i w_j) G_ij.
struct WeightedKernel {
  WeightedKernel(GramKernel kernel, Distribution weights);

  Eigen::MatrixXd weighted() const;

  GramKernel kernel;
  Distribution weights;
};

// Eigenvalues of the weighted kernel, clamped to 0 below -1e-9 (a
// violation past that tolerance throws KernelError), descending order.
std::vector<double> kernel_spectrum(const WeightedKernel& wk);

// von Neumann entropy of the pure-state mixture: -sum lambda log2 lambda
// over the clamped spectrum.
double ensemble_entropy(const WeightedKernel& wk);

// H(rho_mix) - sum_z P(z) H(rho_z) where rho_mix mixes the conditionals
// with the prior. All conditionals must share one kernel.
double holevo_information(const Distribution& prior,
                          const std::vector<WeightedKernel>& conditionals);

// Unit vectors realizing the kernel: columns of the returned r x n matrix
// have pairwise inner products reproducing G within 1e-9; r = rank of G
// with eigenvalues below rank_tol dropped (minimal embedding dimension).
Eigen::MatrixXd factorize(const GramKernel& gram, double rank_tol = 1e-10);

}  // namespace agent_thermo
