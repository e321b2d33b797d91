#include "agent_thermo/transducer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <random>
#include <sstream>

#include "agent_thermo/errors.hpp"

namespace agent_thermo {

Transducer::Transducer(std::vector<std::string> input_alphabet,
                       std::vector<std::string> output_alphabet,
                       std::vector<std::string> states,
                       const std::vector<Transition>& transitions)
    : inputs_(std::move(input_alphabet)),
      outputs_(std::move(output_alphabet)),
      states_(std::move(states)) {
  if (inputs_.empty() || outputs_.empty() || states_.empty())
    throw ValidationError("transducer alphabets and state list must be non-empty");
  rows_.resize(states_.size() * inputs_.size());
  for (const auto& tr : transitions) {
    if (tr.from < 0 || tr.from >= num_states() || tr.to < 0 ||
        tr.to >= num_states() || tr.input < 0 || tr.input >= num_inputs() ||
        tr.output < 0 || tr.output >= num_outputs()) {
      std::ostringstream os;
      os << "transition (" << tr.from << "," << tr.input << "," << tr.output
         << "->" << tr.to << ") references an unknown index";
      throw ValidationError(os.str());
    }
    rows_[static_cast<std::size_t>(tr.from) * inputs_.size() + tr.input]
        .push_back({tr.output, tr.probability, tr.to});
  }
}

double Transducer::probability(int state, int input, int output) const {
  for (const auto& e : row(state, input))
    if (e.output == output) return e.probability;
  return 0.0;
}

std::optional<int> Transducer::successor(int state, int input, int output) const {
  for (const auto& e : row(state, input))
    if (e.output == output && e.probability > 0.0) return e.successor;
  return std::nullopt;
}

std::vector<Transition> Transducer::transitions() const {
  std::vector<Transition> out;
  for (int s = 0; s < num_states(); ++s)
    for (int x = 0; x < num_inputs(); ++x)
      for (const auto& e : row(s, x))
        out.push_back({s, x, e.output, e.probability, e.successor});
  return out;
}

ValidationReport validate(const Transducer& t) {
  ValidationReport report;
  for (int s = 0; s < t.num_states(); ++s) {
    for (int x = 0; x < t.num_inputs(); ++x) {
      double sum = 0.0;
      std::map<int, int> seen;  // output -> positive-probability edge count
      for (const auto& e : t.row(s, x)) {
        sum += e.probability;
        if (e.probability < -kDistributionTolerance ||
            e.probability > 1.0 + kDistributionTolerance) {
          std::ostringstream os;
          os << "P(" << t.output_alphabet()[e.output] << "|"
             << t.input_alphabet()[x] << "," << t.state_names()[s]
             << ") = " << e.probability << " outside [0,1]";
          report.issues.push_back({ValidationIssue::Kind::Probability, s, x,
                                   e.output, os.str()});
        }
        if (e.probability > 0.0) seen[e.output] += 1;
      }
      if (std::abs(sum - 1.0) > kDistributionTolerance * 10) {
        std::ostringstream os;
        os << "outputs at (state " << t.state_names()[s] << ", input "
           << t.input_alphabet()[x] << ") sum to " << sum;
        report.issues.push_back(
            {ValidationIssue::Kind::Stochasticity, s, x, -1, os.str()});
      }
      for (const auto& [y, count] : seen) {
        if (count > 1) {
          std::ostringstream os;
          os << count << " successors for (state " << t.state_names()[s]
             << ", input " << t.input_alphabet()[x] << ", output "
             << t.output_alphabet()[y] << ")";
          report.issues.push_back(
              {ValidationIssue::Kind::Unifilarity, s, x, y, os.str()});
        }
      }
    }
  }
  return report;
}

void require_valid(const Transducer& t) {
  const auto report = validate(t);
  if (report.ok()) return;
  std::ostringstream os;
  os << "invalid transducer (" << report.issues.size() << " issues):";
  for (std::size_t i = 0; i < report.issues.size() && i < 4; ++i)
    os << " [" << report.issues[i].detail << "]";
  throw ValidationError(os.str());
}

InputModel::InputModel(Distribution d, double h_dflt)
    : input_distribution(std::move(d)), default_output_entropy(h_dflt) {
  if (!(default_output_entropy >= 0.0))
    throw ValidationError("default output entropy must be nonnegative");
}

InputModel InputModel::uniform(const Transducer& t) {
  return InputModel(
      Distribution::uniform(static_cast<std::size_t>(t.num_inputs())),
      std::log2(static_cast<double>(t.num_outputs())));
}

namespace {

Eigen::MatrixXd induced_chain(const Transducer& t, const InputModel& im) {
  const int n = t.num_states();
  Eigen::MatrixXd chain = Eigen::MatrixXd::Zero(n, n);
  for (int s = 0; s < n; ++s)
    for (int x = 0; x < t.num_inputs(); ++x)
      for (const auto& e : t.row(s, x))
        chain(s, e.successor) +=
            im.input_distribution[static_cast<std::size_t>(x)] * e.probability;
  return chain;
}

bool strongly_connected(const Eigen::MatrixXd& chain) {
  const int n = static_cast<int>(chain.rows());
  auto reachable = [&](bool transpose) {
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    std::vector<int> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w = 0; w < n; ++w) {
        const double p = transpose ? chain(w, v) : chain(v, w);
        if (p > 0.0 && !seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = true;
          stack.push_back(w);
        }
      }
    }
    return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
  };
  return reachable(false) && reachable(true);
}

}  // namespace

Distribution steady_state(const Transducer& t, const InputModel& im,
                          int max_iterations) {
  if (static_cast<int>(im.input_distribution.size()) != t.num_inputs())
    throw ShapeError("input distribution size does not match input alphabet");
  const Eigen::MatrixXd chain = induced_chain(t, im);
  if (!strongly_connected(chain))
    throw StructureError(
        "induced state chain is reducible: no unique stationary strategy state");
  const int n = t.num_states();
  Eigen::RowVectorXd pi = Eigen::RowVectorXd::Constant(n, 1.0 / n);
  for (int it = 0; it < max_iterations; ++it) {
    Eigen::RowVectorXd next = pi * chain;
    const double residual = (next - pi).cwiseAbs().maxCoeff();
    pi = next;
    if (residual <= 1e-12 &&
        (pi * chain - pi).cwiseAbs().maxCoeff() <= 1e-12)
      return Distribution::normalized(
          std::vector<double>(pi.data(), pi.data() + n));
  }
  throw StructureError(
      "power iteration did not converge: induced chain appears periodic");
}

namespace {

// Dense output row P(.|x,s) for tolerance comparisons.
std::vector<double> output_row(const Transducer& t, int state, int input) {
  std::vector<double> row(static_cast<std::size_t>(t.num_outputs()), 0.0);
  for (const auto& e : t.row(state, input))
    row[static_cast<std::size_t>(e.output)] += e.probability;
  return row;
}

constexpr double kRowTolerance = 1e-10;

bool rows_equal(const Transducer& t, int a, int b) {
  for (int x = 0; x < t.num_inputs(); ++x) {
    const auto ra = output_row(t, a, x);
    const auto rb = output_row(t, b, x);
    for (std::size_t y = 0; y < ra.size(); ++y)
      if (std::abs(ra[y] - rb[y]) > kRowTolerance) return false;
  }
  return true;
}

}  // namespace

Minimization minimize(const Transducer& t) {
  require_valid(t);
  const int n = t.num_states();
  // Initial partition: group states with identical conditional output rows.
  std::vector<int> block(static_cast<std::size_t>(n), -1);
  std::vector<int> representatives;
  for (int s = 0; s < n; ++s) {
    for (std::size_t b = 0; b < representatives.size(); ++b) {
      if (rows_equal(t, s, representatives[b])) {
        block[static_cast<std::size_t>(s)] = static_cast<int>(b);
        break;
      }
    }
    if (block[static_cast<std::size_t>(s)] < 0) {
      block[static_cast<std::size_t>(s)] = static_cast<int>(representatives.size());
      representatives.push_back(s);
    }
  }
  // Refine by successor-block signatures until stable.
  for (;;) {
    std::map<std::vector<int>, int> signature_block;
    std::vector<int> next(static_cast<std::size_t>(n));
    for (int s = 0; s < n; ++s) {
      std::vector<int> sig{block[static_cast<std::size_t>(s)]};
      for (int x = 0; x < t.num_inputs(); ++x)
        for (int y = 0; y < t.num_outputs(); ++y) {
          const auto succ = t.successor(s, x, y);
          sig.push_back(succ ? block[static_cast<std::size_t>(*succ)] : -1);
        }
      auto [it, inserted] = signature_block.try_emplace(
          std::move(sig), static_cast<int>(signature_block.size()));
      next[static_cast<std::size_t>(s)] = it->second;
    }
    if (next == block) break;
    block = std::move(next);
  }

  const int m = 1 + *std::max_element(block.begin(), block.end());
  std::vector<int> rep(static_cast<std::size_t>(m), -1);
  for (int s = 0; s < n; ++s)
    if (rep[static_cast<std::size_t>(block[static_cast<std::size_t>(s)])] < 0)
      rep[static_cast<std::size_t>(block[static_cast<std::size_t>(s)])] = s;

  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(m));
  for (int b = 0; b < m; ++b)
    names.push_back(t.state_names()[static_cast<std::size_t>(rep[static_cast<std::size_t>(b)])]);
  std::vector<Transition> transitions;
  for (int b = 0; b < m; ++b) {
    const int s = rep[static_cast<std::size_t>(b)];
    for (int x = 0; x < t.num_inputs(); ++x)
      for (const auto& e : t.row(s, x))
        transitions.push_back(
            {b, x, e.output, e.probability,
             block[static_cast<std::size_t>(e.successor)]});
  }
  return Minimization{
      Transducer(t.input_alphabet(), t.output_alphabet(), std::move(names),
                 transitions),
      std::move(block)};
}

bool is_minimal(const Transducer& t) {
  return minimize(t).machine.num_states() == t.num_states();
}

std::uint64_t default_budget() {
  if (const char* env = std::getenv("AGENT_THERMO_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return 10'000'000ULL;
}

double BlockLaw::word_entropy() const {
  double h = 0.0;
  for (const auto& w : words)
    if (w.probability > 0.0) h -= w.probability * std::log2(w.probability);
  return h;
}

BlockLaw block_law(const Transducer& t, const InputModel& im, int stride,
                   std::uint64_t budget) {
  require_valid(t);
  if (stride < 1) throw ValidationError("stride must be positive");
  const double per_step =
      static_cast<double>(t.num_inputs()) * t.num_outputs();
  const double worst =
      std::pow(per_step, stride) * static_cast<double>(t.num_states());
  if (worst > static_cast<double>(budget)) {
    std::ostringstream os;
    os << "block enumeration needs up to " << worst
       << " path slots, over the budget of " << budget
       << "; raise AGENT_THERMO_BUDGET / --budget, lower the stride, or use "
          "the structured case-study evaluators";
    throw CapacityError(os.str());
  }

  const Distribution pi = steady_state(t, im);
  struct Partial {
    Word word;
    std::vector<double> mass;  // over current end state, joint with the word
  };
  std::vector<Partial> frontier{
      Partial{{}, std::vector<double>(pi.weights().begin(), pi.weights().end())}};
  for (int step = 0; step < stride; ++step) {
    std::vector<Partial> next;
    next.reserve(frontier.size() * static_cast<std::size_t>(per_step));
    for (const auto& part : frontier) {
      for (int x = 0; x < t.num_inputs(); ++x) {
        const double qx = im.input_distribution[static_cast<std::size_t>(x)];
        if (qx <= 0.0) continue;
        for (int y = 0; y < t.num_outputs(); ++y) {
          std::vector<double> mass(static_cast<std::size_t>(t.num_states()), 0.0);
          double total = 0.0;
          for (int s = 0; s < t.num_states(); ++s) {
            const double m = part.mass[static_cast<std::size_t>(s)];
            if (m <= 0.0) continue;
            const double p = t.probability(s, x, y);
            if (p <= 0.0) continue;
            const auto succ = t.successor(s, x, y);
            mass[static_cast<std::size_t>(*succ)] += m * qx * p;
            total += m * qx * p;
          }
          if (total <= 0.0) continue;
          Word w = part.word;
          w.emplace_back(x, y);
          next.push_back(Partial{std::move(w), std::move(mass)});
        }
      }
    }
    frontier = std::move(next);
  }

  BlockLaw bl{stride, {}, pi};
  double total = 0.0;
  for (auto& part : frontier) {
    double prob = 0.0;
    for (double m : part.mass) prob += m;
    total += prob;
    bl.words.push_back(
        {std::move(part.word), prob, Distribution::normalized(std::move(part.mass))});
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw ValidationError("block law probabilities do not sum to 1");
  return bl;
}

double block_conditional_output_entropy(const BlockLaw& bl,
                                        const InputModel& im) {
  return bl.word_entropy() -
         bl.stride * shannon_entropy(im.input_distribution);
}

double classical_block_mutual_information(const BlockLaw& bl) {
  double conditional = 0.0;
  for (const auto& w : bl.words)
    conditional += w.probability * shannon_entropy(w.posterior);
  return shannon_entropy(bl.stationary) - conditional;
}

EntropyRateEstimate entropy_rate_estimate(const Transducer& t,
                                          const InputModel& im, int L_max,
                                          std::uint64_t budget) {
  const BlockLaw bl = block_law(t, im, L_max, budget);
  const double block_average = bl.word_entropy() / L_max;
  const Distribution pi = bl.stationary;
  const double h_x = shannon_entropy(im.input_distribution);
  double conditional = 0.0;
  for (int s = 0; s < t.num_states(); ++s) {
    double h_out = 0.0;
    for (int x = 0; x < t.num_inputs(); ++x) {
      const double qx = im.input_distribution[static_cast<std::size_t>(x)];
      if (qx <= 0.0) continue;
      h_out += qx * shannon_entropy(output_row(t, s, x));
    }
    conditional += pi[static_cast<std::size_t>(s)] * h_out;
  }
  conditional += h_x;
  return EntropyRateEstimate{block_average, conditional,
                             block_average - conditional, L_max};
}

std::vector<Step> simulate(const Transducer& t, const InputModel& im,
                           std::uint64_t steps, std::uint64_t seed) {
  require_valid(t);
  const Distribution pi = steady_state(t, im);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto sample = [&](const std::vector<double>& w) {
    double u = unit(rng);
    for (std::size_t i = 0; i < w.size(); ++i) {
      u -= w[i];
      if (u <= 0.0) return static_cast<int>(i);
    }
    return static_cast<int>(w.size()) - 1;
  };
  int state = sample(pi.weights());
  std::vector<Step> trajectory;
  trajectory.reserve(static_cast<std::size_t>(steps));
  for (std::uint64_t k = 0; k < steps; ++k) {
    const int x = sample(im.input_distribution.weights());
    const auto& row = t.row(state, x);
    double u = unit(rng);
    const Transducer::Emission* chosen = &row.back();
    for (const auto& e : row) {
      u -= e.probability;
      if (u <= 0.0) {
        chosen = &e;
        break;
      }
    }
    state = chosen->successor;
    trajectory.push_back({k, x, chosen->output, state});
  }
  return trajectory;
}

}  // namespace agent_thermo
