#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "agent_thermo/distribution.hpp"

namespace agent_thermo {

// One transition edge: on (state, input) emit `output` with
// `probability` and move to `successor`.
struct Transition {
  int from;
  int input;
  int output;
  double probability;
  int to;
};

// Finite input-output machine with a stochastic output/transition tensor
// T^{y|x}_{jk}. Stochasticity and unifilarity are checked by validate(),
// not by the constructor, so defective tensors remain representable and
// reportable. All analysis functions assume a validated machine.
class Transducer {
 public:
  Transducer(std::vector<std::string> input_alphabet,
             std::vector<std::string> output_alphabet,
             std::vector<std::string> states,
             const std::vector<Transition>& transitions);

  int num_inputs() const { return static_cast<int>(inputs_.size()); }
  int num_outputs() const { return static_cast<int>(outputs_.size()); }
  int num_states() const { return static_cast<int>(states_.size()); }

  const std::vector<std::string>& input_alphabet() const { return inputs_; }
  const std::vector<std::string>& output_alphabet() const { return outputs_; }
  const std::vector<std::string>& state_names() const { return states_; }

  struct Emission {
    int output;
    double probability;
    int successor;
  };

  // Emissions available from (state, input), in insertion order.
  const std::vector<Emission>& row(int state, int input) const {
    return rows_[static_cast<std::size_t>(state) * inputs_.size() + input];
  }

  // P(y | x, state); 0 when the edge is absent.
  double probability(int state, int input, int output) const;
  // lambda(state, x, y); nullopt when P(y|x,state) = 0.
  std::optional<int> successor(int state, int input, int output) const;

  std::vector<Transition> transitions() const;

 private:
  std::vector<std::string> inputs_, outputs_, states_;
  std::vector<std::vector<Emission>> rows_;  // state-major, then input
};

struct ValidationIssue {
  enum class Kind { Stochasticity, Unifilarity, Probability };
  Kind kind;
  int state;
  int input;
  int output;  // -1 when not output-specific
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
};

// Reports every stochasticity violation (sum_y P != 1 at some (j,x)),
// every duplicated (j,x,y) edge (unifilarity), and out-of-range
// probabilities. Empty report iff the machine is valid.
ValidationReport validate(const Transducer& t);

// Throws ValidationError with the report's first few issues if invalid.
void require_valid(const Transducer& t);

// i.i.d. environment: input distribution plus the default entropy of the
// blank output tape (log2 |Y| unless overridden).
struct InputModel {
  InputModel(Distribution input_distribution, double default_output_entropy);
  static InputModel uniform(const Transducer& t);

  Distribution input_distribution;
  double default_output_entropy;
};

// Stationary distribution of the induced state chain
// P(k|j) = sum_x q(x) sum_y T^{y|x}_{jk}, by power iteration from uniform
// to residual 1e-12. Reducible chains throw StructureError (checked via
// strong connectivity first); non-convergence (periodic chains) too.
Distribution steady_state(const Transducer& t, const InputModel& im,
                          int max_iterations = 2000000);

struct Minimization {
  Transducer machine;        // the quotient (epsilon-transducer)
  std::vector<int> state_map;  // old state -> quotient state
};

// Moore-style partition refinement: initial blocks group states with
// identical conditional output rows for every input (within 1e-10),
// refined by successor-block signatures until stable.
Minimization minimize(const Transducer& t);

bool is_minimal(const Transducer& t);

// Default enumeration budget, overridable via AGENT_THERMO_BUDGET.
std::uint64_t default_budget();

// A length-L input-output word as (input, output) index pairs.
using Word = std::vector<std::pair<int, int>>;

struct WordEntry {
  Word word;
  double probability;
  Distribution posterior;  // over end-of-block states S_L
};

// Exact joint law of length-L words under stationary driving, with the
// posterior over the end-of-block memory state for each word.
struct BlockLaw {
  int stride;
  std::vector<WordEntry> words;
  Distribution stationary;
  double word_entropy() const;  // H(Z_{0:L})
};

// Exact enumeration; throws CapacityError when
// (|X||Y|)^L * |states| exceeds the budget.
BlockLaw block_law(const Transducer& t, const InputModel& im, int stride,
                   std::uint64_t budget = default_budget());

// H(Y_{0:L} | X_{0:L}) = H(Z_{0:L}) - L h_x.
double block_conditional_output_entropy(const BlockLaw& bl,
                                        const InputModel& im);

// I(Z_{0:L}; S_L) = H(pi) - sum_z P(z) H(posterior_z).
double classical_block_mutual_information(const BlockLaw& bl);

struct EntropyRateEstimate {
  double block_average;     // H(Z_{0:L})/L at L = L_max
  double conditional_form;  // H(Z_0|S_0) = sum_j pi_j H(Z_0|S_0=j)
  double gap;               // block_average - conditional_form
  int stride;
};

EntropyRateEstimate entropy_rate_estimate(const Transducer& t,
                                          const InputModel& im, int L_max,
                                          std::uint64_t budget = default_budget());

struct Step {
  std::uint64_t t;
  int input;
  int output;
  int state;  // memory state after the step
};

// Deterministic given the seed; starts from a stationary-sampled state.
std::vector<Step> simulate(const Transducer& t, const InputModel& im,
                           std::uint64_t steps, std::uint64_t seed);

}  // namespace agent_thermo
