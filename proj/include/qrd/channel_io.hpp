#pragma once
// JSON formats for states, channels, and numeric configuration.
//
// State file:
//   {"dim": 2, "matrix": [[[re, im], [re, im]], [[re, im], [re, im]]]}
// with rows listed top to bottom (row-major) and every entry an [re, im]
// pair.
//
// Channel file:
//   {"dim": 2,
//    "inputs": [{"label": "x0", "matrix": ...}, ...],
//    "kraus": [matrix, ...],            // optional, rows x cols = dim x d_in
//    "prior": {"x0": 0.5, "x1": 0.5}}   // optional, omitted labels get 0
//
// Config file: a flat object whose keys are the field names of Tolerances.
//
// Numbers are written by the shortest decimal that round-trips the binary
// double, so write/parse cycles reproduce operators exactly.

#include <optional>
#include <string>

#include "qrd/cq_channel.hpp"
#include "qrd/exponents.hpp"
#include "qrd/operator_core.hpp"

namespace qrd {

struct ChannelSpec {
  CqChannel channel;
  std::optional<KrausChannel> kraus;
  std::optional<InputDistribution> prior;  // aligned with channel label order
};

// Parsers throw InputError for malformed JSON (message carries the parser's
// line/column diagnostics) and for semantically invalid content; operator
// validation errors propagate from the constructed types.
DensityOperator parse_state_json(const std::string& text);
DensityOperator read_state_file(const std::string& path);
std::string state_to_json(const DensityOperator& rho);

ChannelSpec parse_channel_json(const std::string& text);
ChannelSpec read_channel_file(const std::string& path);
std::string channel_to_json(const CqChannel& W, const InputDistribution* prior = nullptr,
                            const KrausChannel* kraus = nullptr);

// Overrides fields of config() from a flat JSON object; unknown keys are
// rejected so typos cannot silently leave a tolerance at its default.
void apply_config_json(const std::string& text);
void apply_config_file(const std::string& path);

}  // namespace qrd
