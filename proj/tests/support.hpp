#pragma once

#include <random>
#include <vector>

#include "agent_thermo/quantum.hpp"
#include "agent_thermo/transducer.hpp"

namespace agent_thermo::testing {

// Random machine over binary alphabets; not necessarily valid-chain or
// minimal. With dyadic=true, probabilities come from a small rational
// grid so posterior shifts are either exact zeros or well separated.
Transducer random_machine(std::mt19937_64& rng, int states, bool dyadic);

// Draws until the minimized machine has an irreducible aperiodic chain,
// full-support stationary law, and at most max_states states.
Transducer random_minimal_machine(std::mt19937_64& rng, int max_states,
                                  bool dyadic);

// Unifilar refinement of t whose states are (state, last input-output)
// pairs; realizes the same strategy with strictly more memory detail.
Transducer history_refinement(const Transducer& t);

// P(y-word | x-word, start) for every input word of length `depth`;
// outer index = flattened x-word, inner = flattened y-word.
std::vector<std::vector<double>> behavior_table(const Transducer& t, int start,
                                                int depth);

// Max |P(y|x,a from ta) - P(y|x,b from tb)| over all words up to depth.
double behavioral_distance(const Transducer& ta, int a, const Transducer& tb,
                           int b, int depth);

struct LinearFit {
  double slope;
  double intercept;
  double r_squared;
};

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace agent_thermo::testing
