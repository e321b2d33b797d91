#include "agent_thermo/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "agent_thermo/errors.hpp"

namespace agent_thermo {

double work_rate(const BlockLaw& bl, const InputModel& im,
                 double memory_information) {
  return im.default_output_entropy +
         (memory_information - block_conditional_output_entropy(bl, im)) /
             bl.stride;
}

double landauer_floor(const BlockLaw& bl, const InputModel& im) {
  return im.default_output_entropy -
         block_conditional_output_entropy(bl, im) / bl.stride;
}

namespace {

// H(Z_0 | S_0) = h_x + sum_j pi_j sum_x q(x) H(P(.|x,j)).
double step_entropy_given_state(const Transducer& t, const InputModel& im,
                                const Distribution& pi) {
  double h = shannon_entropy(im.input_distribution);
  for (int s = 0; s < t.num_states(); ++s) {
    double h_s = 0.0;
    for (int x = 0; x < t.num_inputs(); ++x) {
      const double qx = im.input_distribution[static_cast<std::size_t>(x)];
      if (qx <= 0.0) continue;
      std::vector<double> row(static_cast<std::size_t>(t.num_outputs()), 0.0);
      for (const auto& e : t.row(s, x))
        row[static_cast<std::size_t>(e.output)] += e.probability;
      h_s += qx * shannon_entropy(row);
    }
    h += pi[static_cast<std::size_t>(s)] * h_s;
  }
  return h;
}

// I(Z_0; S_0) through the conditional-entropy route.
double state_word_information(const Transducer& t, const InputModel& im,
                              const BlockLaw& bl1) {
  return bl1.word_entropy() - step_entropy_given_state(t, im, bl1.stationary);
}

// Joint matrix P(z, s) with z = (x,y) flattened row index, s the state
// generating z. By stationarity this is the law of (Z_1, S_1).
Eigen::MatrixXd state_word_joint(const Transducer& t, const InputModel& im,
                                 const Distribution& pi) {
  Eigen::MatrixXd joint =
      Eigen::MatrixXd::Zero(t.num_inputs() * t.num_outputs(), t.num_states());
  for (int s = 0; s < t.num_states(); ++s)
    for (int x = 0; x < t.num_inputs(); ++x) {
      const double qx = im.input_distribution[static_cast<std::size_t>(x)];
      for (const auto& e : t.row(s, x))
        joint(x * t.num_outputs() + e.output, s) +=
            pi[static_cast<std::size_t>(s)] * qx * e.probability;
    }
  return joint;
}

void require_minimal(const Transducer& t, const char* op) {
  if (!is_minimal(t)) {
    std::ostringstream os;
    os << op << " requires a minimal machine; run minimize first";
    throw PreconditionError(os.str());
  }
}

constexpr double kPosteriorShiftTolerance = 1e-10;

}  // namespace

OnlineCost online_cost(const Transducer& t, const InputModel& im) {
  require_valid(t);
  require_minimal(t, "online_cost");
  const BlockLaw bl1 = block_law(t, im, 1);
  const double i_z0_s1 = classical_block_mutual_information(bl1);
  const double appendix = i_z0_s1 - state_word_information(t, im, bl1);
  const double main_text =
      i_z0_s1 - mutual_information(state_word_joint(t, im, bl1.stationary));
  return OnlineCost{appendix, main_text, std::abs(appendix - main_text)};
}

namespace {

// Quantum relative entropy D(rho || sigma) in bits, from the encoding's
// embedding-space density matrices; sigma must have full support there.
double quantum_relative_entropy(const Eigen::MatrixXd& rho,
                                const Eigen::MatrixXd& sigma) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es_sigma(sigma);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es_rho(rho);
  const double floor = 1e-14;
  double tr_rho_log_rho = 0.0;
  for (Eigen::Index k = 0; k < es_rho.eigenvalues().size(); ++k) {
    const double l = es_rho.eigenvalues()(k);
    if (l > floor) tr_rho_log_rho += l * std::log2(l);
  }
  Eigen::VectorXd log_sigma = es_sigma.eigenvalues();
  for (Eigen::Index k = 0; k < log_sigma.size(); ++k)
    log_sigma(k) = std::log2(std::max(log_sigma(k), floor));
  const Eigen::MatrixXd log_sigma_mat = es_sigma.eigenvectors() *
                                        log_sigma.asDiagonal() *
                                        es_sigma.eigenvectors().transpose();
  const double tr_rho_log_sigma = (rho * log_sigma_mat).trace();
  return tr_rho_log_rho - tr_rho_log_sigma;
}

Eigen::MatrixXd embedded_density(const Eigen::MatrixXd& vectors,
                                 const Distribution& weights) {
  Eigen::VectorXd w(static_cast<Eigen::Index>(weights.size()));
  for (std::size_t i = 0; i < weights.size(); ++i)
    w(static_cast<Eigen::Index>(i)) = weights[i];
  return vectors * w.asDiagonal() * vectors.transpose();
}

}  // namespace

AdvantageGap advantage_gap(const BlockLaw& bl, const GramEncoding& enc) {
  const double primary = (classical_block_mutual_information(bl) -
                          quantum_block_mutual_information(bl, enc)) /
                         bl.stride;
  // Cross-check: expected relative-entropy difference, Appendix-E style.
  const Eigen::MatrixXd rho_mix = embedded_density(enc.vectors, bl.stationary);
  double secondary = 0.0;
  for (const auto& w : bl.words) {
    const double classical = kl_divergence(w.posterior, bl.stationary);
    const double quantum = quantum_relative_entropy(
        embedded_density(enc.vectors, w.posterior), rho_mix);
    secondary += w.probability * (classical - quantum);
  }
  secondary /= bl.stride;
  return AdvantageGap{primary, std::abs(primary - secondary)};
}

double quantum_online_dissipation(const Transducer& t, const InputModel& im,
                                  const GramEncoding& enc) {
  require_valid(t);
  require_minimal(t, "quantum_online_dissipation");
  const BlockLaw bl1 = block_law(t, im, 1);
  return quantum_block_mutual_information(bl1, enc) -
         state_word_information(t, im, bl1);
}

AdvantagePredicate advantage_predicate(const Transducer& t,
                                       const InputModel& im, int stride,
                                       std::uint64_t budget) {
  require_valid(t);
  require_minimal(t, "advantage_predicate");
  const DistinguishabilityRelation relation = distinguishability(t);
  const BlockLaw bl = block_law(t, im, stride, budget);
  const Distribution& pi = bl.stationary;

  bool state_level = false;
  for (const auto& w : bl.words) {
    for (int s = 0; s < t.num_states() && !state_level; ++s)
      if (relation.in_wasteful_pair(s) &&
          std::abs(w.posterior[static_cast<std::size_t>(s)] -
                   pi[static_cast<std::size_t>(s)]) > kPosteriorShiftTolerance)
        state_level = true;
    if (state_level) break;
  }

  AdvantagePredicate result{false, state_level, std::nullopt};
  for (const auto& block : relation.overlap_blocks()) {
    if (block.size() < 2) continue;
    double pi_block = 0.0;
    for (int s : block) pi_block += pi[static_cast<std::size_t>(s)];
    for (const auto& w : bl.words) {
      double mass = 0.0;
      for (int s : block) mass += w.posterior[static_cast<std::size_t>(s)];
      if (mass <= 1e-15) continue;
      for (int s : block) {
        const double shift =
            std::abs(w.posterior[static_cast<std::size_t>(s)] / mass -
                     pi[static_cast<std::size_t>(s)] / pi_block);
        if (shift > kPosteriorShiftTolerance) {
          int partner = -1;
          for (int j : block)
            if (j != s && relation.wasteful(s, j)) {
              partner = j;
              break;
            }
          if (partner < 0) continue;  // shifted state orthogonal inside block
          result.value = true;
          result.witness = AdvantageWitness{
              {std::min(s, partner), std::max(s, partner)}, w.word, s, shift};
          return result;
        }
      }
    }
  }
  return result;
}

ThermoReport analyze(const Transducer& t, const InputModel& im, int stride,
                     const std::optional<GramKernel>& supplied_encoding,
                     std::uint64_t budget, double kT_scale) {
  require_valid(t);
  const Minimization minimization = minimize(t);
  const Transducer& m = minimization.machine;
  if (supplied_encoding &&
      supplied_encoding->dimension() != m.num_states()) {
    std::ostringstream os;
    os << "supplied encoding has dimension " << supplied_encoding->dimension()
       << " but the strategy has " << m.num_states() << " causal states";
    throw ShapeError(os.str());
  }

  const BlockLaw bl = block_law(m, im, stride, budget);
  const BlockLaw bl1 = stride == 1 ? bl : block_law(m, im, 1, budget);
  const double classical_information = classical_block_mutual_information(bl);
  const double i_z0_s0 = state_word_information(m, im, bl1);
  const OnlineCost onl = online_cost(m, im);
  const DistinguishabilityRelation relation = distinguishability(m);
  const AdvantagePredicate predicate = advantage_predicate(m, im, stride, budget);

  ThermoReport report;
  report.stride = stride;
  report.h_dflt = im.default_output_entropy;
  report.h_x = shannon_entropy(im.input_distribution);
  report.classical_information = classical_information;
  report.classical_rate = work_rate(bl, im, classical_information);
  report.online_cost = onl.value;
  report.online_cost_main_text_form = onl.main_text_form;
  report.landauer_floor = landauer_floor(bl, im);
  report.wasteful_pairs = relation.wasteful_pairs();
  report.advantage_predicted = predicate.value;
  report.witness = predicate.witness;
  report.kT_scale = kT_scale;

  auto add_encoding = [&](const std::string& name, const GramEncoding& enc) {
    EncodingReport er;
    er.name = name;
    er.memory_information = quantum_block_mutual_information(bl, enc);
    er.stationary_memory_entropy =
        ensemble_entropy(WeightedKernel(enc.gram, bl.stationary));
    er.work_rate = work_rate(bl, im, er.memory_information);
    const AdvantageGap gap = advantage_gap(bl, enc);
    er.gap = gap.gap;
    er.gap_cross_check_residual = gap.cross_check_residual;
    er.online_dissipation =
        quantum_block_mutual_information(bl1, enc) - i_z0_s0;
    report.encodings.push_back(std::move(er));
  };

  add_encoding("systematic", gram_from_overlaps(solve_overlaps(m)));
  if (supplied_encoding)
    add_encoding("supplied", user_encoding(*supplied_encoding, m).first);
  return report;
}

}  // namespace agent_thermo
