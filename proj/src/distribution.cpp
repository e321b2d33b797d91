#include "agent_thermo/distribution.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "agent_thermo/errors.hpp"

namespace agent_thermo {

namespace {

double plog2p(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

}  // namespace

Distribution::Distribution(std::vector<double> weights)
    : weights_(std::move(weights)) {
  if (weights_.empty()) throw ValidationError("distribution has no outcomes");
  double sum = 0.0;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    const double w = weights_[i];
    if (!(w >= -kDistributionTolerance && w <= 1.0 + kDistributionTolerance)) {
      std::ostringstream os;
      os << "weight " << i << " = " << w << " outside [0,1]";
      throw ValidationError(os.str());
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    std::ostringstream os;
    os << "weights sum to " << sum << ", expected 1";
    throw ValidationError(os.str());
  }
  // Scrub tolerance-level negatives so downstream logs stay finite.
  for (double& w : weights_)
    if (w < 0.0) w = 0.0;
}

Distribution Distribution::uniform(std::size_t n) {
  if (n == 0) throw ValidationError("distribution has no outcomes");
  return Distribution(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

Distribution Distribution::point_mass(std::size_t n, std::size_t index) {
  if (index >= n) throw ValidationError("point mass index out of range");
  std::vector<double> w(n, 0.0);
  w[index] = 1.0;
  return Distribution(std::move(w));
}

Distribution Distribution::normalized(std::vector<double> weights) {
  double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(sum > 0.0)) throw ValidationError("cannot normalize zero-mass weights");
  for (double& w : weights) w /= sum;
  return Distribution(std::move(weights));
}

double shannon_entropy(const Distribution& d) {
  return shannon_entropy(d.weights());
}

double shannon_entropy(const std::vector<double>& w) {
  double h = 0.0;
  for (double p : w) h += plog2p(p);
  return h;
}

double mutual_information(const Eigen::MatrixXd& joint) {
  if (joint.rows() < 1 || joint.cols() < 1)
    throw ShapeError("joint distribution must be a non-empty matrix");
  if (joint.minCoeff() < -kDistributionTolerance)
    throw ValidationError("joint distribution has negative entries");
  if (std::abs(joint.sum() - 1.0) > 1e-9)
    throw ValidationError("joint distribution does not sum to 1");

  double ha = 0.0, hb = 0.0, hab = 0.0;
  for (Eigen::Index a = 0; a < joint.rows(); ++a) ha += plog2p(joint.row(a).sum());
  for (Eigen::Index b = 0; b < joint.cols(); ++b) hb += plog2p(joint.col(b).sum());
  for (Eigen::Index a = 0; a < joint.rows(); ++a)
    for (Eigen::Index b = 0; b < joint.cols(); ++b) hab += plog2p(joint(a, b));
  return ha + hb - hab;
}

double kl_divergence(const Distribution& p, const Distribution& q) {
  if (p.size() != q.size())
    throw ShapeError("kl_divergence: index sets differ in size");
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    if (q[i] <= 0.0) return std::numeric_limits<double>::infinity();
    d += p[i] * std::log2(p[i] / q[i]);
  }
  return d;
}

}  // namespace agent_thermo
