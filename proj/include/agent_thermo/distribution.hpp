#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

namespace agent_thermo {

// Finite probability distribution, base-2 entropies throughout.
// Weights must lie in [0,1] and sum to 1 within 1e-12.
class Distribution {
 public:
  explicit Distribution(std::vector<double> weights);

  static Distribution uniform(std::size_t n);
  static Distribution point_mass(std::size_t n, std::size_t index);
  // Rescales nonnegative weights by their sum, then validates.
  static Distribution normalized(std::vector<double> weights);

  std::size_t size() const { return weights_.size(); }
  double operator[](std::size_t i) const { return weights_[i]; }
  const std::vector<double>& weights() const { return weights_; }

 private:
  std::vector<double> weights_;
};

inline constexpr double kDistributionTolerance = 1e-12;

// H(d) = -sum w_i log2 w_i, with 0 log 0 = 0.
double shannon_entropy(const Distribution& d);

// Entropy of a raw weight vector (assumed normalized by the caller).
double shannon_entropy(const std::vector<double>& w);

// I(A;B) = H(A) + H(B) - H(A,B) for a joint laid out as a matrix
// (rows = A outcomes, cols = B outcomes). Entries must sum to 1.
double mutual_information(const Eigen::MatrixXd& joint);

// sum p_i log2(p_i / q_i); +infinity when support(p) is not contained
// in support(q) (explicit signal, not a throw).
double kl_divergence(const Distribution& p, const Distribution& q);

}  // namespace agent_thermo
