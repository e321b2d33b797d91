#include "agent_thermo/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "agent_thermo/errors.hpp"

namespace agent_thermo {

namespace {

void require_minimal(const Transducer& t, const char* op) {
  if (!is_minimal(t)) {
    std::ostringstream os;
    os << op << " requires a minimal machine; run minimize first";
    throw PreconditionError(os.str());
  }
}

}  // namespace

OverlapFamily solve_overlaps(const Transducer& t,
                             const OverlapSolveOptions& options) {
  require_valid(t);
  require_minimal(t, "solve_overlaps");
  const int n = t.num_states();
  const int nx = t.num_inputs();
  std::vector<Eigen::MatrixXd> c(static_cast<std::size_t>(nx),
                                 Eigen::MatrixXd::Ones(n, n));
  double residual = 0.0;
  double max_increase = 0.0;
  int iterations = 0;
  for (; iterations < options.max_iterations; ++iterations) {
    std::vector<Eigen::MatrixXd> next(static_cast<std::size_t>(nx),
                                      Eigen::MatrixXd::Ones(n, n));
    for (int x = 0; x < nx; ++x) {
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          double value = 0.0;
          for (const auto& ei : t.row(i, x)) {
            if (ei.probability <= 0.0) continue;
            const double pj = t.probability(j, x, ei.output);
            if (pj <= 0.0) continue;
            const auto sj = t.successor(j, x, ei.output);
            double term = std::sqrt(ei.probability * pj);
            for (int xp = 0; xp < nx; ++xp)
              term *= c[static_cast<std::size_t>(xp)](ei.successor, *sj);
            value += term;
          }
          next[static_cast<std::size_t>(x)](i, j) = value;
          next[static_cast<std::size_t>(x)](j, i) = value;
        }
      }
    }
    residual = 0.0;
    for (int x = 0; x < nx; ++x) {
      const Eigen::MatrixXd diff =
          next[static_cast<std::size_t>(x)] - c[static_cast<std::size_t>(x)];
      residual = std::max(residual, diff.cwiseAbs().maxCoeff());
      max_increase = std::max(max_increase, diff.maxCoeff());
    }
    c = std::move(next);
    if (residual < options.tolerance) break;
  }
  if (residual >= options.failure_residual) {
    std::ostringstream os;
    os << "overlap fixed point did not converge: residual " << residual
       << " after " << iterations << " iterations";
    throw ConvergenceError(os.str(), residual);
  }
  return OverlapFamily{std::move(c), residual, iterations, max_increase};
}

GramEncoding gram_from_overlaps(const OverlapFamily& family) {
  if (family.per_input.empty())
    throw ShapeError("overlap family has no per-input matrices");
  Eigen::MatrixXd g = family.per_input.front();
  for (std::size_t x = 1; x < family.per_input.size(); ++x)
    g = g.cwiseProduct(family.per_input[x]).eval();
  GramKernel kernel(std::move(g));  // KernelError here signals a solver bug
  Eigen::MatrixXd vectors = factorize(kernel);
  return GramEncoding{std::move(kernel), Provenance::Systematic,
                      std::move(vectors)};
}

std::pair<GramEncoding, EncodingFeasibility> user_encoding(
    const GramKernel& gram, const Transducer& t) {
  require_valid(t);
  if (gram.dimension() != t.num_states())
    throw ShapeError("encoding dimension does not match the causal states");
  EncodingFeasibility feasibility;
  const int n = t.num_states();
  for (int x = 0; x < t.num_inputs(); ++x) {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        double rhs = 0.0;
        for (const auto& ei : t.row(i, x)) {
          if (ei.probability <= 0.0) continue;
          const double pj = t.probability(j, x, ei.output);
          if (pj <= 0.0) continue;
          const auto sj = t.successor(j, x, ei.output);
          rhs += std::sqrt(ei.probability * pj) *
                 std::abs(gram(ei.successor, *sj));
        }
        const double lhs = std::abs(gram(i, j));
        if (lhs > rhs + 1e-9)
          feasibility.failures.push_back({i, j, x, lhs, rhs});
      }
    }
  }
  GramEncoding enc{gram, Provenance::UserSupplied, factorize(gram)};
  return {std::move(enc), std::move(feasibility)};
}

DistinguishabilityRelation::DistinguishabilityRelation(
    Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> distinguishable)
    : d_(std::move(distinguishable)) {}

std::vector<std::pair<int, int>> DistinguishabilityRelation::wasteful_pairs()
    const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < dimension(); ++i)
    for (int j = i + 1; j < dimension(); ++j)
      if (!d_(i, j)) out.emplace_back(i, j);
  return out;
}

bool DistinguishabilityRelation::in_wasteful_pair(int i) const {
  for (int j = 0; j < dimension(); ++j)
    if (j != i && !d_(i, j)) return true;
  return false;
}

std::vector<std::vector<int>> DistinguishabilityRelation::overlap_blocks()
    const {
  const int n = dimension();
  std::vector<int> parent(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) parent[static_cast<std::size_t>(i)] = i;
  std::function<int(int)> find = [&](int a) {
    while (parent[static_cast<std::size_t>(a)] != a) {
      parent[static_cast<std::size_t>(a)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
      a = parent[static_cast<std::size_t>(a)];
    }
    return a;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!d_(i, j)) parent[static_cast<std::size_t>(find(i))] = find(j);
  std::vector<std::vector<int>> blocks;
  std::vector<int> root_block(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < n; ++i) {
    const int r = find(i);
    if (root_block[static_cast<std::size_t>(r)] < 0) {
      root_block[static_cast<std::size_t>(r)] = static_cast<int>(blocks.size());
      blocks.emplace_back();
    }
    blocks[static_cast<std::size_t>(root_block[static_cast<std::size_t>(r)])]
        .push_back(i);
  }
  return blocks;
}

DistinguishabilityRelation distinguishability(const Transducer& t) {
  require_valid(t);
  require_minimal(t, "distinguishability");
  const int n = t.num_states();
  const int nx = t.num_inputs();
  // wasteful_var(x, i<j) == true once the (x, pair) overlap variable is
  // known to stay positive: some common-support output's successor pair
  // coincides or is itself fully positive. Least fixed point.
  std::vector<Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>> grounded(
      static_cast<std::size_t>(nx),
      Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(n, n,
                                                                    false));
  bool changed = true;
  while (changed) {
    changed = false;
    for (int x = 0; x < nx; ++x) {
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          if (grounded[static_cast<std::size_t>(x)](i, j)) continue;
          bool positive = false;
          for (const auto& ei : t.row(i, x)) {
            if (ei.probability <= 0.0) continue;
            if (t.probability(j, x, ei.output) <= 0.0) continue;
            const int si = ei.successor;
            const int sj = *t.successor(j, x, ei.output);
            if (si == sj) {
              positive = true;
              break;
            }
            bool all = true;
            for (int xp = 0; xp < nx && all; ++xp)
              all = grounded[static_cast<std::size_t>(xp)](std::min(si, sj),
                                                           std::max(si, sj));
            if (all) {
              positive = true;
              break;
            }
          }
          if (positive) {
            grounded[static_cast<std::size_t>(x)](i, j) = true;
            grounded[static_cast<std::size_t>(x)](j, i) = true;
            changed = true;
          }
        }
      }
    }
  }
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> distinguishable =
      Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(n, n,
                                                                    false);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      bool all_positive = true;
      for (int x = 0; x < nx && all_positive; ++x)
        all_positive = grounded[static_cast<std::size_t>(x)](i, j);
      // The pair is wasteful iff every per-input overlap stays positive.
      distinguishable(i, j) = !all_positive;
      distinguishable(j, i) = !all_positive;
    }
  }
  return DistinguishabilityRelation(std::move(distinguishable));
}

Eigen::MatrixXd interrogation_values(const Transducer& t, int depth,
                                     std::uint64_t budget) {
  require_valid(t);
  if (depth < 0) throw ValidationError("depth must be nonnegative");
  const int n = t.num_states();
  const double work = static_cast<double>(depth) * n * n * t.num_inputs() *
                      t.num_outputs();
  if (work > static_cast<double>(budget))
    throw CapacityError("interrogation DP exceeds the configured budget");
  Eigen::MatrixXd v = Eigen::MatrixXd::Ones(n, n);
  for (int d = 0; d < depth; ++d) {
    Eigen::MatrixXd next = Eigen::MatrixXd::Ones(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        double best = std::numeric_limits<double>::infinity();
        for (int x = 0; x < t.num_inputs(); ++x) {
          double sum = 0.0;
          for (const auto& ei : t.row(i, x)) {
            if (ei.probability <= 0.0) continue;
            const double pj = t.probability(j, x, ei.output);
            if (pj <= 0.0) continue;
            const auto sj = t.successor(j, x, ei.output);
            sum += std::sqrt(ei.probability * pj) * v(ei.successor, *sj);
          }
          best = std::min(best, sum);
        }
        next(i, j) = best;
      }
    }
    v = std::move(next);
  }
  return v;
}

double interrogation_oracle(const Transducer& t, int i, int j, int depth,
                            std::uint64_t budget) {
  if (i < 0 || i >= t.num_states() || j < 0 || j >= t.num_states())
    throw ShapeError("interrogation_oracle: state index out of range");
  return interrogation_values(t, depth, budget)(i, j);
}

double quantum_block_mutual_information(const BlockLaw& bl,
                                        const GramEncoding& enc) {
  if (enc.gram.dimension() != static_cast<int>(bl.stationary.size()))
    throw ShapeError(
        "encoding dimension does not match the block law's causal states");
  std::vector<double> prior;
  std::vector<WeightedKernel> conditionals;
  prior.reserve(bl.words.size());
  conditionals.reserve(bl.words.size());
  for (const auto& w : bl.words) {
    prior.push_back(w.probability);
    conditionals.emplace_back(enc.gram, w.posterior);
  }
  return holevo_information(Distribution(std::move(prior)), conditionals);
}

}  // namespace agent_thermo
