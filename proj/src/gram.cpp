#include "agent_thermo/gram.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "agent_thermo/errors.hpp"

namespace agent_thermo {

GramKernel::GramKernel(Eigen::MatrixXd entries) : entries_(std::move(entries)) {
  const auto n = entries_.rows();
  if (n < 1 || entries_.cols() != n)
    throw KernelError("gram kernel must be square and non-empty");
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(entries_(i, i) - 1.0) > 1e-9)
      throw KernelError("gram kernel diagonal must be 1");
    for (Eigen::Index j = 0; j < n; ++j) {
      if (std::abs(entries_(i, j) - entries_(j, i)) > 1e-9)
        throw KernelError("gram kernel must be symmetric");
      if (std::abs(entries_(i, j)) > 1.0 + 1e-9)
        throw KernelError("gram kernel entries must lie in [-1, 1]");
    }
  }
  // Symmetrize tolerance-level asymmetry so eigensolves see an exactly
  // symmetric matrix.
  entries_ = ((entries_ + entries_.transpose()) / 2.0).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(entries_,
                                                    Eigen::EigenvaluesOnly);
  const double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < -kPsdTolerance) {
    std::ostringstream os;
    os << "gram kernel is not PSD: smallest eigenvalue " << min_eig;
    throw KernelError(os.str());
  }
}

GramKernel GramKernel::identity(int dimension) {
  return GramKernel(Eigen::MatrixXd::Identity(dimension, dimension));
}

bool GramKernel::is_identity(double tol) const {
  return (entries_ - Eigen::MatrixXd::Identity(dimension(), dimension()))
             .cwiseAbs()
             .maxCoeff() <= tol;
}

WeightedKernel::WeightedKernel(GramKernel kernel_in, Distribution weights_in)
    : kernel(std::move(kernel_in)), weights(std::move(weights_in)) {
  if (static_cast<int>(weights.size()) != kernel.dimension())
    throw ShapeError("weighted kernel: weights and kernel dimension differ");
  const auto spectrum = kernel_spectrum(*this);
  double sum = 0.0;
  for (double l : spectrum) sum += l;
  if (std::abs(sum - 1.0) > 1e-9)
    throw KernelError("weighted kernel spectrum does not sum to 1");
}

Eigen::MatrixXd WeightedKernel::weighted() const {
  const int n = kernel.dimension();
  Eigen::VectorXd root(n);
  for (int i = 0; i < n; ++i) root(i) = std::sqrt(weights[i]);
  return root.asDiagonal() * kernel.entries() * root.asDiagonal();
}

std::vector<double> kernel_spectrum(const WeightedKernel& wk) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(wk.weighted(),
                                                    Eigen::EigenvaluesOnly);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(es.eigenvalues().size()));
  for (Eigen::Index i = es.eigenvalues().size(); i-- > 0;) {
    double l = es.eigenvalues()(i);
    if (l < -kPsdTolerance)
      throw KernelError("weighted kernel has an eigenvalue below -1e-9");
    out.push_back(std::max(l, 0.0));
  }
  return out;
}

double ensemble_entropy(const WeightedKernel& wk) {
  double h = 0.0;
  for (double l : kernel_spectrum(wk))
    if (l > 0.0) h -= l * std::log2(l);
  return h;
}

double holevo_information(const Distribution& prior,
                          const std::vector<WeightedKernel>& conditionals) {
  if (prior.size() != conditionals.size())
    throw ShapeError("holevo_information: prior and conditionals differ");
  if (conditionals.empty())
    throw ShapeError("holevo_information: no conditionals");
  const auto& shared = conditionals.front().kernel.entries();
  const int n = conditionals.front().kernel.dimension();
  std::vector<double> mix(static_cast<std::size_t>(n), 0.0);
  double conditional_term = 0.0;
  for (std::size_t z = 0; z < conditionals.size(); ++z) {
    const auto& wk = conditionals[z];
    if (wk.kernel.dimension() != n ||
        (wk.kernel.entries() - shared).cwiseAbs().maxCoeff() > 1e-12)
      throw ShapeError("holevo_information: conditionals must share one kernel");
    for (int i = 0; i < n; ++i) mix[static_cast<std::size_t>(i)] += prior[z] * wk.weights[i];
    conditional_term += prior[z] * ensemble_entropy(wk);
  }
  WeightedKernel mixed(conditionals.front().kernel,
                       Distribution::normalized(std::move(mix)));
  return ensemble_entropy(mixed) - conditional_term;
}

Eigen::MatrixXd factorize(const GramKernel& gram, double rank_tol) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram.entries());
  const int n = gram.dimension();
  std::vector<int> kept;
  for (int i = 0; i < n; ++i)
    if (es.eigenvalues()(i) > rank_tol) kept.push_back(i);
  Eigen::MatrixXd vectors(static_cast<int>(kept.size()), n);
  for (std::size_t r = 0; r < kept.size(); ++r) {
    const int k = kept[r];
    vectors.row(static_cast<int>(r)) =
        std::sqrt(es.eigenvalues()(k)) * es.eigenvectors().col(k).transpose();
  }
  return vectors;
}

}  // namespace agent_thermo
