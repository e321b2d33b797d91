#include "agent_thermo/spec_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "agent_thermo/errors.hpp"

namespace agent_thermo {

namespace {

using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ValidationError("spec field '" + where + "': " + what);
}

int symbol_index(const std::vector<std::string>& alphabet,
                 const std::string& symbol, const std::string& where) {
  for (std::size_t i = 0; i < alphabet.size(); ++i)
    if (alphabet[i] == symbol) return static_cast<int>(i);
  fail(where, "unknown symbol '" + symbol + "'");
}

std::vector<std::string> string_list(const ordered_json& doc,
                                     const std::string& key) {
  if (!doc.contains(key)) fail(key, "missing");
  if (!doc[key].is_array() || doc[key].empty()) fail(key, "must be a non-empty array");
  std::vector<std::string> out;
  for (const auto& v : doc[key]) {
    if (!v.is_string()) fail(key, "entries must be strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

}  // namespace

double round_sig(double value) {
  if (!std::isfinite(value)) return value;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return std::strtod(buf, nullptr);
}

ProcessSpec parse_spec_text(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("spec is not valid JSON: ") + e.what());
  }
  const auto inputs = string_list(doc, "inputs");
  const auto outputs = string_list(doc, "outputs");
  const auto states = string_list(doc, "states");

  if (!doc.contains("input_distribution") ||
      !doc["input_distribution"].is_object())
    fail("input_distribution", "missing or not an object");
  std::vector<double> q(inputs.size(), 0.0);
  for (const auto& [symbol, value] : doc["input_distribution"].items()) {
    const int x = symbol_index(inputs, symbol, "input_distribution");
    if (!value.is_number()) fail("input_distribution", "probabilities must be numbers");
    q[static_cast<std::size_t>(x)] = value.get<double>();
  }
  Distribution input_distribution = [&] {
    try {
      return Distribution(q);
    } catch (const ValidationError& e) {
      fail("input_distribution", e.what());
    }
  }();

  if (!doc.contains("transitions") || !doc["transitions"].is_array())
    fail("transitions", "missing or not an array");
  std::vector<Transition> transitions;
  int index = 0;
  for (const auto& tr : doc["transitions"]) {
    const std::string where = "transitions[" + std::to_string(index++) + "]";
    for (const char* key : {"from", "x", "y", "to"})
      if (!tr.contains(key) || !tr[key].is_string())
        fail(where, std::string("missing string field '") + key + "'");
    if (!tr.contains("p") || !tr["p"].is_number())
      fail(where, "missing numeric field 'p'");
    transitions.push_back(
        {symbol_index(states, tr["from"].get<std::string>(), where + ".from"),
         symbol_index(inputs, tr["x"].get<std::string>(), where + ".x"),
         symbol_index(outputs, tr["y"].get<std::string>(), where + ".y"),
         tr["p"].get<double>(),
         symbol_index(states, tr["to"].get<std::string>(), where + ".to")});
  }

  Transducer machine(inputs, outputs, states, transitions);
  const auto report = validate(machine);
  if (!report.ok()) {
    std::ostringstream os;
    os << "machine validation failed with " << report.issues.size()
       << " issue(s):";
    for (const auto& issue : report.issues) os << "\n  - " << issue.detail;
    throw ValidationError(os.str());
  }

  double h_dflt = std::log2(static_cast<double>(outputs.size()));
  if (doc.contains("default_output_entropy")) {
    if (!doc["default_output_entropy"].is_number())
      fail("default_output_entropy", "must be a number");
    h_dflt = doc["default_output_entropy"].get<double>();
  }

  std::optional<GramKernel> encoding;
  if (doc.contains("encoding")) {
    if (!doc["encoding"].is_object() || !doc["encoding"].contains("gram"))
      fail("encoding", "must be an object with a 'gram' table");
    const auto& rows = doc["encoding"]["gram"];
    const int n = static_cast<int>(states.size());
    if (!rows.is_array() || static_cast<int>(rows.size()) != n)
      fail("encoding.gram", "must have one row per state");
    Eigen::MatrixXd g(n, n);
    for (int i = 0; i < n; ++i) {
      if (!rows[static_cast<std::size_t>(i)].is_array() ||
          static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != n)
        fail("encoding.gram", "row " + std::to_string(i) + " has wrong length");
      for (int j = 0; j < n; ++j)
        g(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]
                      .get<double>();
    }
    try {
      encoding = GramKernel(std::move(g));
    } catch (const KernelError& e) {
      fail("encoding.gram", e.what());
    }
  }

  return ProcessSpec{std::move(machine),
                     InputModel(std::move(input_distribution), h_dflt),
                     std::move(encoding)};
}

ProcessSpec parse_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read spec file: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_spec_text(buffer.str());
}

ordered_json spec_to_json(const Transducer& t, const InputModel& im,
                          const std::optional<GramKernel>& encoding) {
  ordered_json doc;
  doc["inputs"] = t.input_alphabet();
  doc["outputs"] = t.output_alphabet();
  doc["states"] = t.state_names();
  ordered_json q;
  for (int x = 0; x < t.num_inputs(); ++x)
    q[t.input_alphabet()[static_cast<std::size_t>(x)]] =
        round_sig(im.input_distribution[static_cast<std::size_t>(x)]);
  doc["input_distribution"] = std::move(q);
  doc["default_output_entropy"] = round_sig(im.default_output_entropy);
  ordered_json transitions = ordered_json::array();
  for (const auto& tr : t.transitions()) {
    ordered_json row;
    row["from"] = t.state_names()[static_cast<std::size_t>(tr.from)];
    row["x"] = t.input_alphabet()[static_cast<std::size_t>(tr.input)];
    row["y"] = t.output_alphabet()[static_cast<std::size_t>(tr.output)];
    row["p"] = round_sig(tr.probability);
    row["to"] = t.state_names()[static_cast<std::size_t>(tr.to)];
    transitions.push_back(std::move(row));
  }
  doc["transitions"] = std::move(transitions);
  if (encoding) {
    ordered_json rows = ordered_json::array();
    for (int i = 0; i < encoding->dimension(); ++i) {
      ordered_json row = ordered_json::array();
      for (int j = 0; j < encoding->dimension(); ++j)
        row.push_back(round_sig((*encoding)(i, j)));
      rows.push_back(std::move(row));
    }
    doc["encoding"] = ordered_json{{"gram", std::move(rows)}};
  }
  return doc;
}

ordered_json report_to_json(const ThermoReport& report,
                            const Transducer& minimal_machine,
                            const ordered_json& spec_echo) {
  ordered_json doc;
  doc["tool_version"] = kToolVersion;
  doc["spec"] = spec_echo;
  doc["stride"] = report.stride;
  doc["units"] = report.kT_scale == 1.0 ? "kT ln2 per step" : "joules per step";
  doc["kT_scale"] = round_sig(report.kT_scale);
  const double scale = report.kT_scale;
  auto rate = [&](double v) { return round_sig(v * scale); };

  doc["h_dflt_bits"] = round_sig(report.h_dflt);
  doc["h_x_bits"] = round_sig(report.h_x);
  doc["causal_states"] = minimal_machine.state_names();
  doc["classical_information_bits"] = round_sig(report.classical_information);
  doc["classical_rate"] = rate(report.classical_rate);
  doc["online_cost"] = rate(report.online_cost);
  doc["online_cost_main_text_form"] = rate(report.online_cost_main_text_form);
  doc["landauer_floor"] = rate(report.landauer_floor);

  ordered_json encodings = ordered_json::array();
  for (const auto& enc : report.encodings) {
    ordered_json e;
    e["name"] = enc.name;
    e["provenance"] =
        enc.name == "systematic" ? "systematic" : "user_supplied";
    e["memory_information_bits"] = round_sig(enc.memory_information);
    e["stationary_memory_entropy_bits"] =
        round_sig(enc.stationary_memory_entropy);
    e["quantum_rate"] = rate(enc.work_rate);
    e["gap"] = rate(enc.gap);
    e["gap_cross_check_residual"] = round_sig(enc.gap_cross_check_residual);
    e["online_dissipation"] = rate(enc.online_dissipation);
    encodings.push_back(std::move(e));
  }
  doc["encodings"] = std::move(encodings);

  ordered_json pairs = ordered_json::array();
  for (const auto& [i, j] : report.wasteful_pairs)
    pairs.push_back(ordered_json::array(
        {minimal_machine.state_names()[static_cast<std::size_t>(i)],
         minimal_machine.state_names()[static_cast<std::size_t>(j)]}));
  doc["wasteful_pairs"] = std::move(pairs);
  doc["advantage_predicted"] = report.advantage_predicted;
  if (report.witness) {
    ordered_json w;
    w["pair"] = ordered_json::array(
        {minimal_machine.state_names()[static_cast<std::size_t>(
             report.witness->pair.first)],
         minimal_machine.state_names()[static_cast<std::size_t>(
             report.witness->pair.second)]});
    std::string word;
    for (const auto& [x, y] : report.witness->word) {
      if (!word.empty()) word += " ";
      word += minimal_machine.input_alphabet()[static_cast<std::size_t>(x)] +
              "/" +
              minimal_machine.output_alphabet()[static_cast<std::size_t>(y)];
    }
    w["word"] = word;
    w["state"] = minimal_machine
                     .state_names()[static_cast<std::size_t>(report.witness->state)];
    w["posterior_shift"] = round_sig(report.witness->shift);
    doc["witness"] = std::move(w);
  }
  return doc;
}

}  // namespace agent_thermo
