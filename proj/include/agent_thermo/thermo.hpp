#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "agent_thermo/quantum.hpp"
#include "agent_thermo/transducer.hpp"

namespace agent_thermo {

// All rates are dimensionless multiples of kT ln 2 per step; an optional
// kT scale is applied only at report emission.

// h_dflt + (I(Z_{0:L};M_L) - H(Y_{0:L}|X_{0:L})) / L.
double work_rate(const BlockLaw& bl, const InputModel& im,
                 double memory_information);

// h_dflt - H(Y_{0:L}|X_{0:L})/L: the reversible floor of the block.
double landauer_floor(const BlockLaw& bl, const InputModel& im);

struct OnlineCost {
  double value;           // I(Z_0;S_1) - I(Z_0;S_0)
  double main_text_form;  // I(Z_0;S_1) - I(Z_1;S_1), via joint-matrix route
  double residual;        // |value - main_text_form|
};

// Extra dissipation of online (L=1) response for the minimal agent.
// Both published forms are computed through independent code paths.
OnlineCost online_cost(const Transducer& t, const InputModel& im);

struct AdvantageGap {
  double gap;                   // (I(Z;S_L) - I(Z;M_L)) / L
  double cross_check_residual;  // vs the relative-entropy route
};

// Primary route: mutual-information difference. Secondary route: per-word
// D(posterior||pi) minus the quantum relative entropy of the conditional
// kernel vs the stationary mixture, evaluated from eigen-decompositions
// in the encoding's embedding space.
AdvantageGap advantage_gap(const BlockLaw& bl, const GramEncoding& enc);

// I_q(Z_0;M_1) - I(Z_0;S_0): online dissipation with quantum memory held.
double quantum_online_dissipation(const Transducer& t, const InputModel& im,
                                  const GramEncoding& enc);

struct AdvantageWitness {
  std::pair<int, int> pair;  // a wasteful pair containing the shifted state
  Word word;
  int state;
  double shift;  // block-renormalized posterior deviation
};

struct AdvantagePredicate {
  bool value;
  // The literal per-state reading (shift without block renormalization);
  // may disagree with `value` on machines where the shift is carried
  // entirely by overlap-block weights.
  bool state_level_value;
  std::optional<AdvantageWitness> witness;
};

// True iff some overlap block B (|B| >= 2) and some word z put a
// block-renormalized posterior on B different from the stationary
// restriction (tolerance 1e-10). Equivalent to a strictly positive
// systematic-encoding gap.
AdvantagePredicate advantage_predicate(const Transducer& t,
                                       const InputModel& im, int stride,
                                       std::uint64_t budget = default_budget());

struct EncodingReport {
  std::string name;  // "systematic" or "supplied"
  double memory_information;        // I(Z_{0:L}; M_L)
  double stationary_memory_entropy;  // H(M_0)
  double work_rate;
  double gap;
  double gap_cross_check_residual;
  double online_dissipation;  // L=1 quantity
};

struct ThermoReport {
  int stride;
  double h_dflt;
  double h_x;
  double classical_information;  // I(Z_{0:L}; S_L)
  double classical_rate;
  double online_cost;
  double online_cost_main_text_form;
  double landauer_floor;
  std::vector<EncodingReport> encodings;
  std::vector<std::pair<int, int>> wasteful_pairs;
  bool advantage_predicted;
  std::optional<AdvantageWitness> witness;
  double kT_scale;  // joules per kT ln 2 when set; 1.0 = dimensionless
};

// Full Result-1/Result-2 accounting for a validated machine: minimizes,
// builds the systematic encoding (plus the supplied one if given over the
// minimal states), and evaluates every rate at the given stride.
ThermoReport analyze(const Transducer& t, const InputModel& im, int stride,
                     const std::optional<GramKernel>& supplied_encoding = {},
                     std::uint64_t budget = default_budget(),
                     double kT_scale = 1.0);

}  // namespace agent_thermo
