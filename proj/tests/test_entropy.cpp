#include <doctest.h>

#include <cmath>
#include <random>

#include "agent_thermo/distribution.hpp"
#include "agent_thermo/errors.hpp"
#include "agent_thermo/gram.hpp"

using namespace agent_thermo;

TEST_CASE("shannon entropy basics") {
  CHECK(shannon_entropy(Distribution::uniform(4)) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(shannon_entropy(Distribution::point_mass(5, 2)) == 0.0);
  // h_dflt of a binary output tape
  CHECK(shannon_entropy(Distribution::uniform(2)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("distribution validation") {
  CHECK_THROWS_AS(Distribution({0.5, 0.6}), ValidationError);
  CHECK_THROWS_AS(Distribution({1.2, -0.2}), ValidationError);
  CHECK_THROWS_AS(Distribution(std::vector<double>{}), ValidationError);
  CHECK_THROWS_AS(shannon_entropy(Distribution({0.5, 0.4})), ValidationError);
}

TEST_CASE("mutual information on joints") {
  Eigen::MatrixXd independent(2, 2);
  independent << 0.25, 0.25, 0.25, 0.25;
  CHECK(mutual_information(independent) == doctest::Approx(0.0).epsilon(1e-12));

  Eigen::MatrixXd copy(2, 2);
  copy << 0.5, 0.0, 0.0, 0.5;
  CHECK(mutual_information(copy) == doctest::Approx(1.0).epsilon(1e-12));

  Eigen::MatrixXd bad(2, 2);
  bad << 0.5, 0.5, 0.5, 0.5;
  CHECK_THROWS_AS(mutual_information(bad), ValidationError);
}

TEST_CASE("kl divergence") {
  const Distribution p({1.0, 0.0});
  const Distribution q = Distribution::uniform(2);
  CHECK(kl_divergence(q, q) == doctest::Approx(0.0));
  CHECK(kl_divergence(p, q) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::isinf(kl_divergence(q, p)));
  CHECK_THROWS_AS(kl_divergence(p, Distribution::uniform(3)), ShapeError);
}

TEST_CASE("gram kernel validation") {
  Eigen::MatrixXd asym(2, 2);
  asym << 1.0, 0.5, 0.3, 1.0;
  CHECK_THROWS_AS(GramKernel{asym}, KernelError);

  Eigen::MatrixXd not_psd(2, 2);
  not_psd << 1.0, -1.5, -1.5, 1.0;
  CHECK_THROWS_AS(GramKernel{not_psd}, KernelError);

  Eigen::MatrixXd diag(2, 2);
  diag << 0.9, 0.0, 0.0, 1.0;
  CHECK_THROWS_AS(GramKernel{diag}, KernelError);
}

TEST_CASE("ensemble entropy: orthogonal states reduce to shannon") {
  const Distribution w({0.1, 0.2, 0.3, 0.4});
  const WeightedKernel wk(GramKernel::identity(4), w);
  CHECK(ensemble_entropy(wk) == doctest::Approx(shannon_entropy(w)).epsilon(1e-12));
}

TEST_CASE("ensemble entropy: qubit encoding of four uniform states") {
  const double r = 1.0 / std::sqrt(2.0);
  Eigen::MatrixXd g(4, 4);
  g << 1, 0, r, r,
       0, 1, r, -r,
       r, r, 1, 0,
       r, -r, 0, 1;
  const WeightedKernel wk(GramKernel(g), Distribution::uniform(4));
  CHECK(ensemble_entropy(wk) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("holevo information") {
  const GramKernel id = GramKernel::identity(2);
  std::vector<WeightedKernel> same{{id, Distribution({0.3, 0.7})},
                                   {id, Distribution({0.3, 0.7})}};
  CHECK(holevo_information(Distribution::uniform(2), same) ==
        doctest::Approx(0.0).epsilon(1e-12));

  // Orthogonal kernel reduces to classical mutual information.
  std::vector<WeightedKernel> point{{id, Distribution::point_mass(2, 0)},
                                    {id, Distribution::point_mass(2, 1)}};
  CHECK(holevo_information(Distribution::uniform(2), point) ==
        doctest::Approx(1.0).epsilon(1e-12));

  std::vector<WeightedKernel> mismatched{{id, Distribution({0.3, 0.7})},
                                         {GramKernel::identity(3),
                                          Distribution::uniform(3)}};
  CHECK_THROWS_AS(holevo_information(Distribution::uniform(2), mismatched),
                  ShapeError);
}

TEST_CASE("factorization reproduces the kernel") {
  const double r = 1.0 / std::sqrt(2.0);
  Eigen::MatrixXd g(4, 4);
  g << 1, 0, r, r,
       0, 1, r, -r,
       r, r, 1, 0,
       r, -r, 0, 1;
  const GramKernel kernel(g);
  const Eigen::MatrixXd v = factorize(kernel);
  CHECK(v.rows() == 2);  // a single qubit suffices
  CHECK((v.transpose() * v - g).cwiseAbs().maxCoeff() < 1e-9);
}

namespace {

WeightedKernel random_weighted_kernel(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  // Gram of random unit vectors in dimension n.
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd v(n);
    for (int j = 0; j < n; ++j) v(j) = unit(rng) - 0.5;
    m.col(i) = v.normalized();
  }
  Eigen::MatrixXd g = m.transpose() * m;
  g.diagonal().setOnes();
  std::vector<double> w(static_cast<std::size_t>(n));
  for (double& x : w) x = unit(rng) + 0.01;
  return WeightedKernel(GramKernel(g), Distribution::normalized(std::move(w)));
}

}  // namespace

TEST_CASE("properties: mixing bound, spectrum, permutation invariance") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> dim(2, 6);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = dim(rng);
    const WeightedKernel wk = random_weighted_kernel(rng, n);

    // Mixing pure states cannot exceed the classical label entropy.
    const double he = ensemble_entropy(wk);
    const double hs = shannon_entropy(wk.weights);
    CHECK(he <= hs + 1e-9);
    if (wk.kernel.is_identity()) CHECK(he == doctest::Approx(hs).epsilon(1e-9));

    // Spectrum is a probability vector.
    double sum = 0.0;
    for (double l : kernel_spectrum(wk)) {
      CHECK(l >= 0.0);
      sum += l;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));

    // Entropies are invariant under index permutation.
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    Eigen::MatrixXd pg(n, n);
    std::vector<double> pw(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      pw[static_cast<std::size_t>(i)] =
          wk.weights[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
      for (int j = 0; j < n; ++j)
        pg(i, j) = wk.kernel(perm[static_cast<std::size_t>(i)],
                             perm[static_cast<std::size_t>(j)]);
    }
    const WeightedKernel permuted(GramKernel(pg), Distribution{pw});
    CHECK(ensemble_entropy(permuted) == doctest::Approx(he).epsilon(1e-9));
  }
}

TEST_CASE("property: I(A;B) equals expected KL of rows") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 40; ++trial) {
    const int rows = 2 + static_cast<int>(unit(rng) * 3);
    const int cols = 2 + static_cast<int>(unit(rng) * 3);
    Eigen::MatrixXd joint(rows, cols);
    for (int a = 0; a < rows; ++a)
      for (int b = 0; b < cols; ++b) joint(a, b) = unit(rng) + 1e-3;
    joint /= joint.sum();

    std::vector<double> marginal_b(static_cast<std::size_t>(cols));
    for (int b = 0; b < cols; ++b) marginal_b[static_cast<std::size_t>(b)] = joint.col(b).sum();
    const Distribution qb(marginal_b);
    double expected_kl = 0.0;
    for (int a = 0; a < rows; ++a) {
      const double pa = joint.row(a).sum();
      std::vector<double> row(static_cast<std::size_t>(cols));
      for (int b = 0; b < cols; ++b) row[static_cast<std::size_t>(b)] = joint(a, b) / pa;
      expected_kl += pa * kl_divergence(Distribution(row), qb);
    }
    CHECK(mutual_information(joint) ==
          doctest::Approx(expected_kl).epsilon(1e-9));
  }
}
