#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

#include "agent_thermo/gram.hpp"
#include "agent_thermo/transducer.hpp"

namespace agent_thermo {

// Converged per-input overlap matrices c^x over causal-state pairs,
// the maximal fixed point of
//   c^x_ij = sum_y sqrt(P(y|x,i) P(y|x,j)) prod_{x'} c^{x'}_{l(x,y,i), l(x,y,j)}
// reached from the all-ones start by monotone non-increasing iteration.
struct OverlapFamily {
  std::vector<Eigen::MatrixXd> per_input;
  double residual;               // max entrywise change at the last step
  int iterations;
  double max_entrywise_increase;  // monotonicity diagnostic, ~0 in exact math
};

struct OverlapSolveOptions {
  double tolerance = 1e-12;
  int max_iterations = 100000;
  double failure_residual = 1e-8;  // cap hit above this throws
};

// Requires a minimal machine (PreconditionError otherwise); throws
// ConvergenceError if the iteration cap is hit with residual > 1e-8.
OverlapFamily solve_overlaps(const Transducer& t,
                             const OverlapSolveOptions& options = {});

enum class Provenance { Systematic, UserSupplied };

// Quantum memory encoding of the causal states: the Gram matrix
// <sigma_i|sigma_j> plus unit vectors realizing it in the minimal
// embedding dimension (rank of G).
struct GramEncoding {
  GramKernel gram;
  Provenance provenance;
  Eigen::MatrixXd vectors;  // r x n, column i realizes state i
};

// G_ij = prod_x c^x_ij, PSD-validated (a violation signals a solver bug).
GramEncoding gram_from_overlaps(const OverlapFamily& family);

struct EncodingFeasibility {
  struct Failure {
    int i, j, input;
    double lhs, rhs;  // |G_ij| vs sum_y sqrt(PP)|G_{l,l'}|
  };
  std::vector<Failure> failures;
  bool ok() const { return failures.empty(); }
};

// Accepts a user-supplied Gram over the causal states and reports, per
// input, the necessary isometry condition
//   |G_ij| <= sum_y sqrt(P(y|x,i)P(y|x,j)) |G_{l(x,y,i),l(x,y,j)}|.
// Full junk-state sufficiency is not certified.
std::pair<GramEncoding, EncodingFeasibility> user_encoding(
    const GramKernel& gram, const Transducer& t);

// Exact pairwise distinguishability: a pair is distinguishable iff the
// systematic Gram entry is exactly zero, decided by the boolean least
// fixed point grounded in coinciding successors:
//   wasteful(i,j) <= for every x there is a common-support y whose
//                    successor pair coincides or is already wasteful.
// Unmarked-off-diagonal = wasteful = exactly the nonzero Gram entries.
class DistinguishabilityRelation {
 public:
  explicit DistinguishabilityRelation(Eigen::Matrix<bool, Eigen::Dynamic,
                                                    Eigen::Dynamic>
                                          distinguishable);

  int dimension() const { return static_cast<int>(d_.rows()); }
  bool distinguishable(int i, int j) const { return d_(i, j); }
  bool wasteful(int i, int j) const { return i != j && !d_(i, j); }
  std::vector<std::pair<int, int>> wasteful_pairs() const;
  // True if state i belongs to at least one wasteful pair.
  bool in_wasteful_pair(int i) const;
  // Connected components of the wasteful (overlap) graph; singletons are
  // states orthogonal to everything.
  std::vector<std::vector<int>> overlap_blocks() const;

 private:
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> d_;
};

DistinguishabilityRelation distinguishability(const Transducer& t);

// Depth-D adaptive interrogation values over all state pairs:
//   V_0 = 1;  V_{d+1}(i,j) = min_x sum_y sqrt(P(y|x,i)P(y|x,j)) V_d(l,l').
// Monotone non-increasing in depth; an upper bound on the achievable
// asymptotic overlap magnitude of any encoding.
Eigen::MatrixXd interrogation_values(const Transducer& t, int depth,
                                     std::uint64_t budget = default_budget());

double interrogation_oracle(const Transducer& t, int i, int j, int depth,
                            std::uint64_t budget = default_budget());

// I(Z_{0:L}; M_L): holevo information of the encoding against the block
// law's word prior and end-of-block posteriors.
double quantum_block_mutual_information(const BlockLaw& bl,
                                        const GramEncoding& enc);

}  // namespace agent_thermo
