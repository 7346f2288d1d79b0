#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "pancha/error.hpp"
#include "pancha/experiment.hpp"

namespace pancha::experiment {

namespace {

[[noreturn]] void config_error(const std::string& message) {
  raise(ErrorCode::ConfigError, message);
}

const std::vector<double> kOctant = {0.0, 0.0, kPi / 2.0, 0.0, kPi / 2.0, kPi / 2.0};
const std::vector<double> kNorthPoleLoop = {0.0, 0.0, 0.0, 0.0, 0.0, 0.0};

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::optional<double> parse_plain_number(const std::string& s) {
  double value = 0.0;
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  if (begin != end && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) return std::nullopt;
  return value;
}

double scalar_from(const YAML::Node& node, const std::string& where) {
  if (!node.IsScalar()) config_error(where + ": expected a number");
  try {
    return parse_angle_expression(node.Scalar());
  } catch (const Error&) {
    config_error(where + ": expected a number or a multiple of pi, got '" + node.Scalar() + "'");
  }
}

double integer_from(const YAML::Node& node, const std::string& where) {
  const double v = scalar_from(node, where);
  if (v < 1.0 || v != std::floor(v) || v > 1e9) {
    config_error(where + ": expected a positive whole number");
  }
  return v;
}

std::vector<double> point_from(const YAML::Node& node, const std::string& where) {
  if (!node.IsSequence() || node.size() != 2) config_error(where + ": expected [theta, phi]");
  return {scalar_from(node[0], where + "[0]"), scalar_from(node[1], where + "[1]")};
}

Param parse_param(const ParamSpec& spec, const YAML::Node& node) {
  const std::string where = "parameter '" + spec.name + "'";
  Param p;
  p.type = spec.type;
  switch (spec.type) {
    case ParamType::Scalar:
    case ParamType::Integer: {
      const auto read = [&](const YAML::Node& n, const std::string& w) {
        return spec.type == ParamType::Integer ? integer_from(n, w) : scalar_from(n, w);
      };
      if (node.IsSequence()) {
        if (node.size() == 0) config_error(where + ": sweep list is empty");
        p.swept = true;
        for (std::size_t i = 0; i < node.size(); ++i) {
          p.values.push_back(read(node[i], where + "[" + std::to_string(i) + "]"));
        }
      } else {
        p.values.push_back(read(node, where));
      }
      break;
    }
    case ParamType::Point:
      p.values = point_from(node, where);
      break;
    case ParamType::Triangle: {
      if (!node.IsSequence() || node.size() != 3) config_error(where + ": expected three [theta, phi] points");
      for (std::size_t i = 0; i < 3; ++i) {
        const auto pt = point_from(node[i], where + "[" + std::to_string(i) + "]");
        p.values.insert(p.values.end(), pt.begin(), pt.end());
      }
      break;
    }
    case ParamType::Text:
      if (!node.IsScalar()) config_error(where + ": expected text");
      p.text = node.Scalar();
      break;
  }
  return p;
}

std::uint64_t unsigned_from(const YAML::Node& node, const std::string& key) {
  if (!node.IsScalar()) config_error("'" + key + "' must be a whole number");
  std::uint64_t v = 0;
  const std::string& s = node.Scalar();
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    config_error("'" + key + "' must be a whole number, got '" + s + "'");
  }
  return v;
}

void validate_sweep_law(ExperimentConfig& cfg) {
  const std::string& law = cfg.text("law");
  const auto& laws = sweep_laws();
  const auto it = laws.find(law);
  if (it == laws.end()) {
    std::string known;
    for (const auto& [name, _] : laws) known += (known.empty() ? "" : ", ") + name;
    config_error("unknown sweep law '" + law + "' (known: " + known + ")");
  }
  const std::set<std::string> needed(it->second.begin(), it->second.end());
  for (const auto& name : needed) {
    if (!cfg.parameters.count(name)) config_error("sweep law '" + law + "' needs parameter '" + name + "'");
  }
  for (const auto& [name, param] : cfg.parameters) {
    if (name == "law" || name == "samples") continue;
    if (!needed.count(name)) {
      config_error("parameter '" + name + "' is not used by sweep law '" + law + "'");
    }
  }
}

}  // namespace

std::string_view to_string(Kind kind) {
  switch (kind) {
    case Kind::Pair: return "pair";
    case Kind::Mixed: return "mixed";
    case Kind::Triangle: return "triangle";
    case Kind::TwoPhoton: return "two-photon";
    case Kind::Precession: return "precession";
    case Kind::Dual: return "dual";
    case Kind::Sweep: return "sweep";
  }
  return "unknown";
}

std::string_view to_string(Format format) { return format == Format::Json ? "json" : "csv"; }

std::optional<Kind> parse_kind(std::string_view name) {
  for (Kind k : {Kind::Pair, Kind::Mixed, Kind::Triangle, Kind::TwoPhoton, Kind::Precession,
                 Kind::Dual, Kind::Sweep}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

std::optional<Format> parse_format(std::string_view name) {
  if (name == "csv") return Format::Csv;
  if (name == "json") return Format::Json;
  return std::nullopt;
}

const std::vector<ParamSpec>& parameter_schema(Kind kind) {
  using T = ParamType;
  static const ParamSpec samples{"samples", T::Integer, false, {64.0}, {}};
  static const ParamSpec noise{"noise", T::Scalar, false, {0.0}, {}};
  static const std::map<Kind, std::vector<ParamSpec>> schemas = {
      {Kind::Pair, {{"a", T::Point, true, {}, {}}, {"b", T::Point, true, {}, {}}, samples, noise}},
      {Kind::Mixed, {{"r", T::Scalar, true, {}, {}}, {"vertices", T::Triangle, false, kOctant, {}}, samples, noise}},
      {Kind::Triangle, {{"vertices", T::Triangle, true, {}, {}}}},
      {Kind::TwoPhoton,
       {{"lambda", T::Scalar, true, {}, {}},
        {"loop1", T::Triangle, true, {}, {}},
        {"loop2", T::Triangle, false, kNorthPoleLoop, {}},
        samples,
        noise}},
      {Kind::Precession,
       {{"theta", T::Scalar, true, {}, {}},
        {"phi", T::Scalar, true, {}, {}},
        {"r", T::Scalar, false, {1.0}, {}},
        {"subdivisions", T::Integer, false, {}, {}}}},
      {Kind::Dual, {{"theta", T::Scalar, true, {}, {}}, {"delta_phi", T::Scalar, true, {}, {}}, samples, noise}},
      {Kind::Sweep,
       {{"law", T::Text, true, {}, {}},
        {"r", T::Scalar, false, {}, {}},
        {"omega", T::Scalar, false, {}, {}},
        {"omega_prime", T::Scalar, false, {}, {}},
        {"lambda", T::Scalar, false, {}, {}},
        {"theta", T::Scalar, false, {}, {}},
        {"phi", T::Scalar, false, {}, {}},
        {"delta_phi", T::Scalar, false, {}, {}},
        samples}},
  };
  return schemas.at(kind);
}

const std::map<std::string, std::vector<std::string>>& sweep_laws() {
  static const std::map<std::string, std::vector<std::string>> laws = {
      {"mixed-solid-angle", {"r", "omega"}},
      {"entangled", {"lambda", "omega", "omega_prime"}},
      {"ancilla", {"lambda", "omega"}},
      {"precession", {"theta", "phi"}},
      {"mixed-noncyclic", {"theta", "phi", "r"}},
      {"spin", {"theta", "phi"}},
      {"dual", {"theta", "delta_phi"}},
  };
  return laws;
}

double parse_angle_expression(std::string_view text) {
  const std::string s = trim(text);
  if (auto v = parse_plain_number(s)) return *v;
  static const std::regex pi_form(
      R"(^([+-])?\s*(?:([0-9]*\.?[0-9]+(?:[eE][+-]?[0-9]+)?)\s*\*\s*)?pi(?:\s*/\s*([0-9]*\.?[0-9]+))?$)");
  std::smatch m;
  if (!std::regex_match(s, m, pi_form)) {
    raise(ErrorCode::ConfigError, "'" + s + "' is not a number");
  }
  double value = kPi;
  if (m[2].matched) value *= *parse_plain_number(m[2].str());
  if (m[3].matched) {
    const double d = *parse_plain_number(m[3].str());
    if (d == 0.0) raise(ErrorCode::ConfigError, "'" + s + "' divides by zero");
    value /= d;
  }
  if (m[1].matched && m[1].str() == "-") value = -value;
  return value;
}

double ExperimentConfig::scalar(const std::string& name) const {
  const auto it = parameters.find(name);
  if (it == parameters.end() || it->second.values.empty()) {
    raise(ErrorCode::ConfigError, "missing parameter '" + name + "'");
  }
  if (it->second.swept) raise(ErrorCode::ConfigError, "parameter '" + name + "' is a sweep list");
  return it->second.values.front();
}

std::size_t ExperimentConfig::integer(const std::string& name) const {
  return static_cast<std::size_t>(scalar(name));
}

BlochPoint ExperimentConfig::point(const std::string& name) const {
  const auto it = parameters.find(name);
  if (it == parameters.end() || it->second.values.size() != 2) {
    raise(ErrorCode::ConfigError, "missing point '" + name + "'");
  }
  return {it->second.values[0], it->second.values[1]};
}

SphericalTriangle ExperimentConfig::triangle(const std::string& name) const {
  const auto it = parameters.find(name);
  if (it == parameters.end() || it->second.values.size() != 6) {
    raise(ErrorCode::ConfigError, "missing triangle '" + name + "'");
  }
  const auto& v = it->second.values;
  return {{v[0], v[1]}, {v[2], v[3]}, {v[4], v[5]}};
}

const std::string& ExperimentConfig::text(const std::string& name) const {
  const auto it = parameters.find(name);
  if (it == parameters.end()) raise(ErrorCode::ConfigError, "missing parameter '" + name + "'");
  return it->second.text;
}

std::vector<std::string> ExperimentConfig::swept_parameters() const {
  std::vector<std::string> out;
  for (const auto& [name, p] : parameters) {
    if (p.swept) out.push_back(name);
  }
  return out;
}

ExperimentConfig parse_config(std::string_view yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml_text));
  } catch (const YAML::Exception& e) {
    config_error(std::string("malformed config: ") + e.what());
  }
  if (!root.IsMap()) config_error("config must be a mapping with an 'experiment' key");

  static const std::set<std::string> top_keys = {"experiment", "parameters", "seed", "output",
                                                 "format", "subdivisions", "jobs"};
  for (const auto& kv : root) {
    const std::string key = kv.first.as<std::string>();
    if (!top_keys.count(key)) config_error("unknown config key '" + key + "'");
  }

  ExperimentConfig cfg;
  if (!root["experiment"] || !root["experiment"].IsScalar()) config_error("'experiment' is required");
  const std::string kind_name = root["experiment"].Scalar();
  const auto kind = parse_kind(kind_name);
  if (!kind) config_error("unknown experiment '" + kind_name + "'");
  cfg.experiment = *kind;

  if (const auto n = root["seed"]) {
    cfg.seed = unsigned_from(n, "seed");
    cfg.seed_given = true;
  }
  if (const auto n = root["output"]) {
    if (!n.IsScalar()) config_error("'output' must be a path");
    cfg.output = n.Scalar();
  }
  if (const auto n = root["format"]) {
    const auto f = n.IsScalar() ? parse_format(n.Scalar()) : std::nullopt;
    if (!f) config_error("'format' must be csv or json");
    cfg.format = f;
  }
  if (const auto n = root["subdivisions"]) {
    cfg.subdivisions = unsigned_from(n, "subdivisions");
    if (cfg.subdivisions < 1) config_error("'subdivisions' must be positive");
  }
  if (const auto n = root["jobs"]) cfg.jobs = unsigned_from(n, "jobs");

  const YAML::Node params = root["parameters"];
  if (params && !params.IsMap()) config_error("'parameters' must be a mapping");

  const auto& schema = parameter_schema(cfg.experiment);
  if (params) {
    for (const auto& kv : params) {
      const std::string name = kv.first.as<std::string>();
      const auto spec = std::find_if(schema.begin(), schema.end(),
                                     [&](const ParamSpec& s) { return s.name == name; });
      if (spec == schema.end()) {
        config_error("unknown parameter '" + name + "' for experiment '" + kind_name + "'");
      }
      cfg.parameters[name] = parse_param(*spec, kv.second);
    }
  }
  for (const auto& spec : schema) {
    if (cfg.parameters.count(spec.name)) continue;
    if (spec.required) config_error("missing parameter '" + spec.name + "'");
    if (!spec.fallback.empty() || !spec.fallback_text.empty()) {
      Param p;
      p.type = spec.type;
      p.values = spec.fallback;
      p.text = spec.fallback_text;
      cfg.parameters[spec.name] = std::move(p);
    }
  }
  if (cfg.experiment == Kind::Sweep) validate_sweep_law(cfg);
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorCode::IoError, "cannot read config '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

}  // namespace pancha::experiment
