#pragma once

#include <Eigen/Dense>
#include <complex>
#include <utility>
#include <vector>

#include "agent_thermo/gram.hpp"
#include "agent_thermo/transducer.hpp"

namespace agent_thermo {

// Two-question strategy: repeat the last answer when the question
// repeats, answer uniformly at random when it changes. Four memory
// states (x', y') in order (00, 01, 10, 11); the qubit Gram is that of
// {|0>, |+>, |1>, |->} in the same order.
struct AliceBob {
  Transducer machine;
  GramKernel qubit_gram;
};

AliceBob alice_bob();

// Diffusion on a ring of N bins with a half-turn jump on input 1.
struct BrownianRingParams {
  int bins;      // N >= 2
  double sigma;  // Gaussian width in ring-circumference units, > 0
};

Transducer brownian_ring(const BrownianRingParams& params);

// Row-normalized transition matrix P of the x = 0 dynamics.
Eigen::MatrixXd brownian_rows(const BrownianRingParams& params);

// Closed-form encoding Gram B_ij = sum_k sqrt(P_ik P_jk) of the states
// |sigma_i> = sum_k sqrt(P_ik) |k>.
GramKernel brownian_closed_form_gram(const BrownianRingParams& params);

// 1/(2 ln 2) - (1 + 4 sqrt(2 pi) sigma) log2(2 sqrt(2 pi) sigma);
// valid for 2 sqrt(2 pi) sigma < 1 (DomainError otherwise).
double brownian_quantum_entropy_bound(double sigma);

struct BrownianSweepRow {
  int bins;
  double classical_bits;  // log2 N exactly
  double quantum_bits;    // ensemble entropy of the closed-form encoding
  double gap_bits;
};

std::vector<BrownianSweepRow> brownian_sweep(double sigma,
                                             const std::vector<int>& bins_list);

// Stochastic reset clock, temporally coarse-grained at step dt and
// truncated at a maximal tracked age (tail merged, hazard renormalized).
struct ResetClockParams {
  double p;       // mixture weight in [0,1]
  double gamma0;  // decay rates, > 0
  double gamma1;
  double gammax;  // input rate, > 0
  double dt;      // step length, > 0
  double tau;     // decision window, positive multiple of dt
  int truncation = -1;  // max tracked age; -1 = ceil(1/dt)

  int resolved_truncation() const;
  int stride() const;  // L = tau/dt
};

// The truncated machine together with the closed-form quantum memory.
// The amplitudes carry a complex phase, so the encoding's Gram is
// complex Hermitian; the rank-2 structure makes every entropy a 2x2
// eigenproblem.
struct ClockSystem {
  Transducer machine;
  ResetClockParams params;
  double g;  // <h_0|h_1>
  // |sigma_n> in an orthonormal basis of span{|h_0>, |h_1>}.
  std::vector<Eigen::Vector2cd> amplitudes;

  Eigen::MatrixXcd gram() const;
  // Stationary law: pi_n proportional to Gamma_x^n Phi(n), tail state by
  // exact flow balance.
  Distribution stationary_closed_form() const;
  // Entropy of the 2x2 mixture sum_n w_n |sigma_n><sigma_n|.
  double mixture_entropy(const std::vector<double>& weights) const;
  double quantum_stationary_entropy() const;
};

ClockSystem reset_clock(const ResetClockParams& params);

struct ClockBlockInfo {
  double classical_bits;  // I(Z_{0:L}; S_L)
  double quantum_bits;    // I(Z_{0:L}; M_L), closed-form encoding
  double silent_probability;
};

// Structure-exploiting evaluation at L = tau/dt: only the all-silent
// window leaves a spread posterior; every other word synchronizes.
ClockBlockInfo clock_block_information(const ResetClockParams& params);

struct ClockSweepRow {
  double dt;
  int stride;
  double classical_per_time;  // (1/tau) I(Z;S_L), kT ln 2 per unit time
  double quantum_per_time;
};

std::vector<ClockSweepRow> clock_sweep(const ResetClockParams& base,
                                       const std::vector<double>& dt_list);

struct ContinuumEntropy {
  double bits;       // log2(1/(mu dt)) - (1/mu^-1...) via quadrature
  double tail_mass;  // stationary mass beyond the tracked ages
  bool precision_warning;  // tail_mass > 1e-6
};

// Closed-form continuum approximation to the stationary memory entropy,
// with the survival integral evaluated by adaptive quadrature to 1e-8
// relative error.
ContinuumEntropy clock_continuum_entropy(const ResetClockParams& params);

// The two three-state pure ensembles with published entropies 1 and 0.61,
// under uniform weights (the unique weights reproducing both values).
std::pair<WeightedKernel, WeightedKernel> appendix_i_ensembles();

}  // namespace agent_thermo
