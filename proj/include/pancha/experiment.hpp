#pragma once

// Experiment runner behind the command line tool: schema-checked configs,
// dispatch to the physics modules, sweeps and run records.
//
// Config files are YAML:
//
//   experiment: triangle          # pair | mixed | triangle | two-photon |
//                                 # precession | dual | sweep
//   seed: 7                       # optional
//   format: csv                   # optional, csv | json
//   output: octant.csv            # optional
//   subdivisions: 4096            # optional default for path experiments
//   jobs: 4                       # optional sweep worker count
//   parameters:
//     vertices: [[0, 0], [pi/2, 0], [pi/2, pi/2]]
//
// Angles are radians. A number may also be written as a multiple of pi
// ("pi", "-pi/2", "3*pi/4", "0.5*pi"). The accepted parameters of every
// experiment are listed in parameter_schema().

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pancha/geometry.hpp"
#include "pancha/phase.hpp"

namespace pancha::experiment {

enum class Kind { Pair, Mixed, Triangle, TwoPhoton, Precession, Dual, Sweep };
enum class Format { Csv, Json };

std::string_view to_string(Kind kind);
std::string_view to_string(Format format);
std::optional<Kind> parse_kind(std::string_view name);
std::optional<Format> parse_format(std::string_view name);

enum class ParamType {
  Scalar,    // a number; sweepable as a list of numbers
  Integer,   // a positive whole number; sweepable
  Point,     // [theta, phi]
  Triangle,  // three points
  Text,
};

struct ParamSpec {
  std::string name;
  ParamType type;
  bool required;
  std::vector<double> fallback;  // default numeric value(s) when not required
  std::string fallback_text;
};

// Every parameter accepted by an experiment.
const std::vector<ParamSpec>& parameter_schema(Kind kind);

// Laws available to the `sweep` experiment and the scalar parameters each needs.
const std::map<std::string, std::vector<std::string>>& sweep_laws();

struct Param {
  ParamType type = ParamType::Scalar;
  std::vector<double> values;  // scalar: 1 value (or the sweep list), point: 2, triangle: 6
  std::string text;
  bool swept = false;
};

struct ExperimentConfig {
  Kind experiment = Kind::Pair;
  std::map<std::string, Param> parameters;
  std::uint64_t seed = 1;
  bool seed_given = false;
  std::optional<std::string> output;
  std::optional<Format> format;
  std::size_t subdivisions = 4096;
  std::size_t jobs = 0;  // 0 = hardware concurrency

  double scalar(const std::string& name) const;
  std::size_t integer(const std::string& name) const;
  BlochPoint point(const std::string& name) const;
  SphericalTriangle triangle(const std::string& name) const;
  const std::string& text(const std::string& name) const;

  // Name of the list-valued parameters.
  std::vector<std::string> swept_parameters() const;
};

// Parses and validates; every problem raises ConfigError naming the key.
ExperimentConfig parse_config(std::string_view yaml_text);
ExperimentConfig load_config(const std::string& path);

// Reads "1.5", "pi/2", "-3*pi/4", ... Throws ConfigError otherwise.
double parse_angle_expression(std::string_view text);

struct NamedValue {
  std::string name;
  double value = 0.0;
};

struct SweepRow {
  double value = 0.0;
  PhaseResult result;
  double phase_unwrapped = 0.0;
  double oracle_delta = 0.0;
  std::string error;  // error name when the point had no defined phase
};

struct RunRecord {
  ExperimentConfig config;
  std::vector<NamedValue> results;
  std::vector<NamedValue> oracle_deltas;  // closed form vs simulated, absolute
  std::vector<FringeSample> profile;
  PhaseResult primary;

  std::string swept_parameter;
  std::vector<SweepRow> rows;

  std::map<std::string, std::string> versions;
  std::string timestamp;  // UTC wall clock of the run; not written to files

  double max_oracle_delta() const;
  const NamedValue* find_result(std::string_view name) const;
  const NamedValue* find_delta(std::string_view name) const;
};

// Runs a config without list-valued parameters; `sweep` experiments are
// forwarded to sweep(). Domain failures propagate as pancha::Error.
RunRecord run(const ExperimentConfig& config);

// Exactly one list-valued parameter is required: none raises ConfigError,
// several raise MultipleSweptParameters. Points are evaluated on
// `config.jobs` workers and merged in input order; a point whose phase does
// not exist is recorded with its error name instead of aborting the sweep.
RunRecord sweep(const ExperimentConfig& config);

// Continuity-tracked copy of a phase sequence (adds multiples of 2 pi).
// Undefined entries (NaN) are passed through and skipped.
std::vector<double> unwrap_phases(const std::vector<double>& phases);

std::string render(const RunRecord& record, Format format);
void write_record(const RunRecord& record, const std::string& path, Format format);

}  // namespace pancha::experiment
