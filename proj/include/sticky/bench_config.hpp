#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sticky {

// One sampler row of a benchmark: which target, which kernel/construction/
// update rule, the replication protocol, and where the outputs go.  A file
// holds flat TOML `key = value` lines; unset keys take the defaults below
// (notably rule = ratio-power with beta = 1, and a bare "asmtm" kernel
// means 10 tries).
struct ExperimentConfig {
  std::string name;                // row label; empty -> "<kernel>-<construction>"
  std::string target;              // registry key, required
  std::string kernel = "asm";      // asm | asmtm[:M] | arms | imh
  std::string construction = "c4";
  std::string rule = "ratio-power";  // random-exp | threshold | ratio-power
  double eps = 0.01;
  double beta = 1.0;
  std::vector<double> s0;          // explicit points; empty -> target default
  std::string s0_spec;             // or "uniform:<a>,<b>,<m>" drawn per run
  std::optional<double> x0;        // unset -> target default
  long T = 5000;
  int runs = 200;
  std::uint64_t seed = 42;
  std::string out = "out";
  std::vector<double> eps_sweep;   // expand into one threshold-rule row per value
  int workers = 0;                 // 0 = all cores
  bool traces = true;              // write the run-0 trace CSV

  bool operator==(const ExperimentConfig&) const = default;
};

// Parse / validate.  Syntax problems raise ParseError with the line number;
// semantic problems raise ValidationError naming the offending field.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config(const std::string& path);

// Full serialization (every field, floats at round-trip precision):
// parse_config_text(serialize_config(c)) == c.
std::string serialize_config(const ExperimentConfig& cfg);

// FNV-1a over the serialized form; stamped on every output row.
std::uint64_t config_hash(const ExperimentConfig& cfg);

}  // namespace sticky
