#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "agent_thermo/gram.hpp"
#include "agent_thermo/thermo.hpp"
#include "agent_thermo/transducer.hpp"

namespace agent_thermo {

inline constexpr const char* kToolVersion = "1.0.0";

// Parsed process-spec document: machine + environment + optional
// user-supplied encoding given as a row-major Gram table.
struct ProcessSpec {
  Transducer machine;
  InputModel inputs;
  std::optional<GramKernel> encoding;
};

// JSON document with keys: inputs, outputs, states, input_distribution,
// transitions [{from,x,y,p,to}], optional encoding {gram: [[...]]},
// optional default_output_entropy. Parse errors carry field context;
// machine validation failures list every violation.
ProcessSpec parse_spec_text(const std::string& text);
ProcessSpec parse_spec(const std::filesystem::path& path);

// Serializes a machine (+ optional encoding) back to the spec format.
nlohmann::ordered_json spec_to_json(const Transducer& t, const InputModel& im,
                                    const std::optional<GramKernel>& encoding);

// Machine-readable report: echo of the spec, every ThermoReport field,
// witnesses, encoding provenance, tool version. Numbers are emitted at
// 12 significant digits and round-trip losslessly.
nlohmann::ordered_json report_to_json(const ThermoReport& report,
                                      const Transducer& minimal_machine,
                                      const nlohmann::ordered_json& spec_echo);

// 12-significant-digit rounding used for every serialized number.
double round_sig(double value);

}  // namespace agent_thermo
