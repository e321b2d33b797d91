#include "support.hpp"

#include <cmath>
#include <map>
#include <numeric>

#include "agent_thermo/errors.hpp"

namespace agent_thermo::testing {

Transducer random_machine(std::mt19937_64& rng, int states, bool dyadic) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> pick_state(0, states - 1);
  std::uniform_int_distribution<int> numerator(1, 8);
  std::vector<Transition> transitions;
  for (int s = 0; s < states; ++s) {
    for (int x = 0; x < 2; ++x) {
      std::vector<int> support;
      for (int y = 0; y < 2; ++y)
        if (unit(rng) < 0.7) support.push_back(y);
      if (support.empty()) support.push_back(unit(rng) < 0.5 ? 0 : 1);
      std::vector<double> weights;
      double sum = 0.0;
      for (std::size_t i = 0; i < support.size(); ++i) {
        weights.push_back(dyadic ? static_cast<double>(numerator(rng))
                                 : unit(rng) + 0.05);
        sum += weights.back();
      }
      for (std::size_t i = 0; i < support.size(); ++i)
        transitions.push_back(
            {s, x, support[i], weights[i] / sum, pick_state(rng)});
    }
  }
  std::vector<std::string> names;
  for (int s = 0; s < states; ++s) names.push_back("q" + std::to_string(s));
  return Transducer({"0", "1"}, {"0", "1"}, names, transitions);
}

Transducer random_minimal_machine(std::mt19937_64& rng, int max_states,
                                  bool dyadic) {
  std::uniform_int_distribution<int> size(2, max_states + 1);
  for (;;) {
    Transducer candidate = random_machine(rng, size(rng), dyadic);
    Transducer minimal = minimize(candidate).machine;
    if (minimal.num_states() > max_states) continue;
    try {
      const Distribution pi =
          steady_state(minimal, InputModel::uniform(minimal));
      bool full_support = true;
      for (std::size_t i = 0; i < pi.size(); ++i)
        if (pi[i] < 1e-9) full_support = false;
      if (!full_support) continue;
    } catch (const StructureError&) {
      continue;
    }
    return minimal;
  }
}

Transducer history_refinement(const Transducer& t) {
  const int n = t.num_states();
  const int zs = t.num_inputs() * t.num_outputs();
  auto encode = [&](int state, int z) { return state * zs + z; };
  std::vector<Transition> transitions;
  std::vector<std::string> names;
  for (int s = 0; s < n; ++s)
    for (int z = 0; z < zs; ++z)
      names.push_back(t.state_names()[static_cast<std::size_t>(s)] + "#" +
                      std::to_string(z));
  for (int s = 0; s < n; ++s)
    for (int z = 0; z < zs; ++z)
      for (int x = 0; x < t.num_inputs(); ++x)
        for (const auto& e : t.row(s, x))
          transitions.push_back({encode(s, z), x, e.output, e.probability,
                                 encode(e.successor,
                                        x * t.num_outputs() + e.output)});
  return Transducer(t.input_alphabet(), t.output_alphabet(), names,
                    transitions);
}

std::vector<std::vector<double>> behavior_table(const Transducer& t, int start,
                                                int depth) {
  const int nx = t.num_inputs();
  const int ny = t.num_outputs();
  int x_words = 1, y_words = 1;
  for (int d = 0; d < depth; ++d) {
    x_words *= nx;
    y_words *= ny;
  }
  std::vector<std::vector<double>> table(
      static_cast<std::size_t>(x_words),
      std::vector<double>(static_cast<std::size_t>(y_words), 0.0));
  for (int xw = 0; xw < x_words; ++xw) {
    // digits of xw, most significant first
    std::vector<int> xs(static_cast<std::size_t>(depth));
    int rest = xw;
    for (int d = depth - 1; d >= 0; --d) {
      xs[static_cast<std::size_t>(d)] = rest % nx;
      rest /= nx;
    }
    std::map<std::pair<int, int>, double> frontier{{{start, 0}, 1.0}};
    for (int d = 0; d < depth; ++d) {
      std::map<std::pair<int, int>, double> next;
      for (const auto& [key, prob] : frontier) {
        const auto [state, yw] = key;
        for (const auto& e : t.row(state, xs[static_cast<std::size_t>(d)])) {
          if (e.probability <= 0.0) continue;
          next[{e.successor, yw * ny + e.output}] += prob * e.probability;
        }
      }
      frontier = std::move(next);
    }
    for (const auto& [key, prob] : frontier)
      table[static_cast<std::size_t>(xw)][static_cast<std::size_t>(key.second)] +=
          prob;
  }
  return table;
}

double behavioral_distance(const Transducer& ta, int a, const Transducer& tb,
                           int b, int depth) {
  double worst = 0.0;
  for (int d = 1; d <= depth; ++d) {
    const auto ta_table = behavior_table(ta, a, d);
    const auto tb_table = behavior_table(tb, b, d);
    for (std::size_t xw = 0; xw < ta_table.size(); ++xw)
      for (std::size_t yw = 0; yw < ta_table[xw].size(); ++yw)
        worst = std::max(worst,
                         std::abs(ta_table[xw][yw] - tb_table[xw][yw]));
  }
  return worst;
}

LinearFit linear_fit(const std::vector<double>& x,
                     const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - (intercept + slope * x[i]);
    ss_res += e * e;
  }
  return LinearFit{slope, intercept, 1.0 - ss_res / syy};
}

}  // namespace agent_thermo::testing
