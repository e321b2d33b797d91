#include "agent_thermo/case_studies.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "agent_thermo/errors.hpp"

namespace agent_thermo {

AliceBob alice_bob() {
  // State (x', y') at index 2 x' + y'.
  std::vector<Transition> transitions;
  for (int xp = 0; xp < 2; ++xp) {
    for (int yp = 0; yp < 2; ++yp) {
      const int s = 2 * xp + yp;
      for (int x = 0; x < 2; ++x) {
        if (x == xp) {
          transitions.push_back({s, x, yp, 1.0, 2 * x + yp});
        } else {
          for (int y = 0; y < 2; ++y)
            transitions.push_back({s, x, y, 0.5, 2 * x + y});
        }
      }
    }
  }
  Transducer machine({"0", "1"}, {"0", "1"}, {"s00", "s01", "s10", "s11"},
                     transitions);
  const double r = 1.0 / std::numbers::sqrt2;
  Eigen::MatrixXd g(4, 4);
  // Qubit belief states: s00 -> |0>, s01 -> |1>, s10 -> |+>, s11 -> |->.
  // This is the assignment that satisfies the isometry condition: states
  // sharing a last question answer in orthogonal states of one basis.
  g << 1, 0, r, r,
       0, 1, r, -r,
       r, r, 1, 0,
       r, -r, 0, 1;
  return AliceBob{std::move(machine), GramKernel(std::move(g))};
}

Eigen::MatrixXd brownian_rows(const BrownianRingParams& params) {
  if (params.bins < 2) throw ValidationError("brownian ring needs N >= 2");
  if (!(params.sigma > 0.0)) throw ValidationError("sigma must be positive");
  const int n = params.bins;
  Eigen::MatrixXd rows(n, n);
  for (int k = 0; k < n; ++k) {
    double sum = 0.0;
    for (int j = 0; j < n; ++j) {
      const int steps = std::min((j - k + n) % n, (k - j + n) % n);
      const double d = static_cast<double>(steps) / n;  // circumference units
      rows(k, j) = std::exp(-d * d / (2.0 * params.sigma * params.sigma));
      sum += rows(k, j);
    }
    rows.row(k) /= sum;
  }
  return rows;
}

Transducer brownian_ring(const BrownianRingParams& params) {
  const Eigen::MatrixXd rows = brownian_rows(params);
  const int n = params.bins;
  const int half = n / 2;
  std::vector<std::string> bins;
  bins.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) bins.push_back(std::to_string(j));
  std::vector<Transition> transitions;
  transitions.reserve(static_cast<std::size_t>(2 * n) * n);
  for (int k = 0; k < n; ++k) {
    const int jumped = (k + half) % n;
    for (int j = 0; j < n; ++j) {
      transitions.push_back({k, 0, j, rows(k, j), j});
      transitions.push_back({k, 1, j, rows(jumped, j), j});
    }
  }
  return Transducer({"0", "1"}, bins, bins, transitions);
}

GramKernel brownian_closed_form_gram(const BrownianRingParams& params) {
  const Eigen::MatrixXd root = brownian_rows(params).cwiseSqrt();
  Eigen::MatrixXd gram = root * root.transpose();
  gram.diagonal().setOnes();
  return GramKernel(std::move(gram));
}

double brownian_quantum_entropy_bound(double sigma) {
  const double arg = 2.0 * std::sqrt(2.0 * std::numbers::pi) * sigma;
  if (!(sigma > 0.0) || arg >= 1.0) {
    std::ostringstream os;
    os << "entropy bound needs 2 sqrt(2 pi) sigma < 1, got " << arg;
    throw DomainError(os.str());
  }
  return 1.0 / (2.0 * std::numbers::ln2) -
         (1.0 + 2.0 * arg) * std::log2(arg);
}

std::vector<BrownianSweepRow> brownian_sweep(double sigma,
                                             const std::vector<int>& bins_list) {
  std::vector<BrownianSweepRow> rows;
  rows.reserve(bins_list.size());
  for (int n : bins_list) {
    if (n > 4096) throw CapacityError("brownian sweep limited to N <= 4096");
    const GramKernel gram = brownian_closed_form_gram({n, sigma});
    const double hq = ensemble_entropy(
        WeightedKernel(gram, Distribution::uniform(static_cast<std::size_t>(n))));
    const double hc = std::log2(static_cast<double>(n));
    rows.push_back({n, hc, hq, hc - hq});
  }
  return rows;
}

int ResetClockParams::resolved_truncation() const {
  return truncation >= 1 ? truncation
                         : static_cast<int>(std::ceil(1.0 / dt));
}

int ResetClockParams::stride() const {
  const double ratio = tau / dt;
  const int L = static_cast<int>(std::llround(ratio));
  if (L < 1 || std::abs(ratio - L) > 1e-9 * std::max(1.0, ratio))
    throw ValidationError("tau must be a positive multiple of dt");
  return L;
}

namespace {

void validate_clock(const ResetClockParams& p) {
  if (!(p.p >= 0.0 && p.p <= 1.0))
    throw ValidationError("clock mixture weight p must lie in [0,1]");
  if (!(p.gamma0 > 0.0 && p.gamma1 > 0.0 && p.gammax > 0.0))
    throw ValidationError("clock rates must be positive");
  if (!(p.dt > 0.0)) throw ValidationError("dt must be positive");
  p.stride();
}

struct ClockKinematics {
  double g0, g1, gx;  // per-step survival factors Gamma_i, Gamma_x
  std::vector<double> phi;     // Phi(0..T+1)
  std::vector<double> hazard;  // h_n = 1 - Phi(n+1)/Phi(n), n = 0..T
};

ClockKinematics clock_kinematics(const ResetClockParams& p) {
  const int trunc = p.resolved_truncation();
  ClockKinematics k;
  k.g0 = std::exp(-p.gamma0 * p.dt);
  k.g1 = std::exp(-p.gamma1 * p.dt);
  k.gx = std::exp(-p.gammax * p.dt);
  k.phi.resize(static_cast<std::size_t>(trunc) + 2);
  for (int n = 0; n <= trunc + 1; ++n)
    k.phi[static_cast<std::size_t>(n)] =
        p.p * std::pow(k.g0, n) + (1.0 - p.p) * std::pow(k.g1, n);
  k.hazard.resize(static_cast<std::size_t>(trunc) + 1);
  for (int n = 0; n <= trunc; ++n)
    k.hazard[static_cast<std::size_t>(n)] =
        1.0 - k.phi[static_cast<std::size_t>(n) + 1] /
                  k.phi[static_cast<std::size_t>(n)];
  return k;
}

}  // namespace

ClockSystem reset_clock(const ResetClockParams& params) {
  validate_clock(params);
  const int trunc = params.resolved_truncation();
  const ClockKinematics k = clock_kinematics(params);

  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(trunc) + 1);
  for (int n = 0; n <= trunc; ++n) names.push_back("s" + std::to_string(n));
  std::vector<Transition> transitions;
  for (int n = 0; n <= trunc; ++n) {
    const double h = k.hazard[static_cast<std::size_t>(n)];
    transitions.push_back({n, 0, 1, h, 0});
    transitions.push_back({n, 0, 0, 1.0 - h, std::min(n + 1, trunc)});
    transitions.push_back({n, 1, 1, 1.0, 0});
  }
  Transducer machine({"0", "1"}, {"0", "1"}, std::move(names), transitions);

  const double g = std::sqrt((1.0 - k.g0) * (1.0 - k.g1)) /
                   (1.0 - std::sqrt(k.g0 * k.g1));
  const double orth = std::sqrt(std::max(1.0 - g * g, 0.0));
  std::vector<Eigen::Vector2cd> amplitudes;
  amplitudes.reserve(static_cast<std::size_t>(trunc) + 1);
  for (int n = 0; n <= trunc; ++n) {
    const double phi = k.phi[static_cast<std::size_t>(n)];
    const double a = std::sqrt(params.p * std::pow(k.g0, n) / phi);
    const double b = std::sqrt((1.0 - params.p) * std::pow(k.g1, n) / phi);
    amplitudes.emplace_back(std::complex<double>(a, g * b),
                            std::complex<double>(0.0, orth * b));
  }
  return ClockSystem{std::move(machine), params, g, std::move(amplitudes)};
}

Eigen::MatrixXcd ClockSystem::gram() const {
  const int n = static_cast<int>(amplitudes.size());
  Eigen::MatrixXcd g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      g(i, j) = amplitudes[static_cast<std::size_t>(i)].dot(
          amplitudes[static_cast<std::size_t>(j)]);
  return g;
}

Distribution ClockSystem::stationary_closed_form() const {
  const ClockKinematics k = clock_kinematics(params);
  const int trunc = params.resolved_truncation();
  std::vector<double> w(static_cast<std::size_t>(trunc) + 1);
  for (int n = 0; n < trunc; ++n)
    w[static_cast<std::size_t>(n)] =
        std::pow(k.gx, n) * k.phi[static_cast<std::size_t>(n)];
  // Tail state by flow balance: everything that survives past the last
  // tracked age pools here until the next tick.
  const double tail_stay =
      k.gx * (1.0 - k.hazard[static_cast<std::size_t>(trunc)]);
  w[static_cast<std::size_t>(trunc)] =
      std::pow(k.gx, trunc) * k.phi[static_cast<std::size_t>(trunc)] /
      (1.0 - tail_stay);
  return Distribution::normalized(std::move(w));
}

double ClockSystem::mixture_entropy(const std::vector<double>& weights) const {
  if (weights.size() != amplitudes.size())
    throw ShapeError("clock mixture weights do not match the state count");
  Eigen::Matrix2cd rho = Eigen::Matrix2cd::Zero();
  for (std::size_t n = 0; n < weights.size(); ++n)
    if (weights[n] > 0.0)
      rho += weights[n] * amplitudes[n] * amplitudes[n].adjoint();
  const double tr = rho.trace().real();
  const double diff = (rho(0, 0) - rho(1, 1)).real();
  const double radius =
      std::sqrt(diff * diff / 4.0 + std::norm(rho(0, 1)));
  double h = 0.0;
  for (double l : {tr / 2.0 + radius, tr / 2.0 - radius})
    if (l > 1e-15) h -= l * std::log2(l);
  return h;
}

double ClockSystem::quantum_stationary_entropy() const {
  return mixture_entropy(stationary_closed_form().weights());
}

ClockBlockInfo clock_block_information(const ResetClockParams& params) {
  const ClockSystem system = reset_clock(params);
  const ClockKinematics k = clock_kinematics(params);
  const int trunc = params.resolved_truncation();
  const int stride = params.stride();
  const Distribution pi = system.stationary_closed_form();

  // Only the all-silent word leaves a spread posterior; any tick (forced
  // or spontaneous) synchronizes the memory.
  std::vector<double> aged(static_cast<std::size_t>(trunc) + 1, 0.0);
  double silent = 0.0;
  const double gx_block = std::pow(k.gx, stride);
  for (int n = 0; n <= trunc; ++n) {
    double survive = gx_block;
    for (int j = 0; j < stride; ++j)
      survive *= 1.0 - k.hazard[static_cast<std::size_t>(std::min(n + j, trunc))];
    const double mass = pi[static_cast<std::size_t>(n)] * survive;
    aged[static_cast<std::size_t>(std::min(n + stride, trunc))] += mass;
    silent += mass;
  }
  std::vector<double> aged_posterior = aged;
  for (double& v : aged_posterior) v /= silent;

  const double classical =
      shannon_entropy(pi) - silent * shannon_entropy(aged_posterior);
  const double quantum = system.mixture_entropy(pi.weights()) -
                         silent * system.mixture_entropy(aged_posterior);
  return ClockBlockInfo{classical, quantum, silent};
}

std::vector<ClockSweepRow> clock_sweep(const ResetClockParams& base,
                                       const std::vector<double>& dt_list) {
  std::vector<ClockSweepRow> rows;
  rows.reserve(dt_list.size());
  for (double dt : dt_list) {
    ResetClockParams p = base;
    p.dt = dt;
    const ClockBlockInfo info = clock_block_information(p);
    rows.push_back({dt, p.stride(), info.classical_bits / p.tau,
                    info.quantum_bits / p.tau});
  }
  return rows;
}

namespace {

// Adaptive Simpson to relative tolerance; integrand is smooth here.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double fa, double fm, double fb, double whole,
                        double tol, int depth) {
  const double m = (a + b) / 2.0;
  const double lm = (a + m) / 2.0, rm = (m + b) / 2.0;
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol) {
  const double fa = f(a), fb = f(b), fm = f((a + b) / 2.0);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double tol = std::max(std::abs(whole), 1.0) * rel_tol;
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace

ContinuumEntropy clock_continuum_entropy(const ResetClockParams& params) {
  validate_clock(params);
  const double r0 = params.gamma0 + params.gammax;
  const double r1 = params.gamma1 + params.gammax;
  const double pb = 1.0 - params.p;
  auto survival = [&](double t) {
    return params.p * std::exp(-r0 * t) + pb * std::exp(-r1 * t);
  };
  const double mu = 1.0 / (params.p / r0 + pb / r1);
  // Integrate to where the survival weight is negligible; the integrand
  // Phi log2 Phi vanishes there.
  const double t_max = std::log(1e30) / std::min(r0, r1);
  auto integrand = [&](double t) {
    const double phi = survival(t);
    return phi > 1e-300 ? phi * std::log2(phi) : 0.0;
  };
  const double integral = integrate(integrand, 0.0, t_max, 1e-8);
  const double bits = std::log2(1.0 / (mu * params.dt)) - mu * integral;

  // Discrete stationary mass beyond the tracked ages.
  const ClockKinematics k = clock_kinematics(params);
  const int trunc = params.resolved_truncation();
  const double gt0 = k.gx * k.g0, gt1 = k.gx * k.g1;
  const double total = params.p / (1.0 - gt0) + pb / (1.0 - gt1);
  const double beyond = params.p * std::pow(gt0, trunc) / (1.0 - gt0) +
                        pb * std::pow(gt1, trunc) / (1.0 - gt1);
  const double tail_mass = beyond / total;
  return ContinuumEntropy{bits, tail_mass, tail_mass > 1e-6};
}

std::pair<WeightedKernel, WeightedKernel> appendix_i_ensembles() {
  Eigen::MatrixXd m(3, 3);
  m << 1.0, 0.5, 0.5,
       0.5, 1.0, -0.5,
       0.5, -0.5, 1.0;
  const double c = 5.0 / 6.0;
  Eigen::MatrixXd n(3, 3);
  n << 1.0, c, c,
       c, 1.0, c,
       c, c, 1.0;
  const Distribution uniform = Distribution::uniform(3);
  return {WeightedKernel(GramKernel(std::move(m)), uniform),
          WeightedKernel(GramKernel(std::move(n)), uniform)};
}

}  // namespace agent_thermo
