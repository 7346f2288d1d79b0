#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pancha/error.hpp"
#include "pancha/experiment.hpp"

namespace pancha::experiment {

namespace {

using Json = nlohmann::ordered_json;

std::string number(double x) {
  if (std::isnan(x)) return "nan";
  if (x == 0.0) x = 0.0;  // no "-0"
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Json json_number(double x) { return std::isfinite(x) ? Json(x == 0.0 ? 0.0 : x) : Json(nullptr); }

Json param_json(const Param& p) {
  switch (p.type) {
    case ParamType::Text: return p.text;
    case ParamType::Point: return Json::array({p.values[0], p.values[1]});
    case ParamType::Triangle: {
      Json t = Json::array();
      for (std::size_t i = 0; i < 3; ++i) t.push_back(Json::array({p.values[2 * i], p.values[2 * i + 1]}));
      return t;
    }
    case ParamType::Integer:
      if (p.swept) {
        Json list = Json::array();
        for (double v : p.values) list.push_back(static_cast<std::int64_t>(v));
        return list;
      }
      return static_cast<std::int64_t>(p.values.front());
    case ParamType::Scalar:
      if (p.swept) return Json(p.values);
      return p.values.front();
  }
  return nullptr;
}

std::string param_text(const Param& p) {
  auto list = [](const double* v, std::size_t n) {
    std::string s = "[";
    for (std::size_t i = 0; i < n; ++i) s += (i ? ", " : "") + number(v[i]);
    return s + "]";
  };
  switch (p.type) {
    case ParamType::Text: return p.text;
    case ParamType::Point: return "\"" + list(p.values.data(), 2) + "\"";
    case ParamType::Triangle: {
      std::string s = "\"[";
      for (std::size_t i = 0; i < 3; ++i) s += (i ? ", " : "") + list(p.values.data() + 2 * i, 2);
      return s + "]\"";
    }
    case ParamType::Scalar:
    case ParamType::Integer:
      if (p.swept) return "\"" + list(p.values.data(), p.values.size()) + "\"";
      return number(p.values.front());
  }
  return "";
}

Json config_json(const ExperimentConfig& cfg) {
  Json j;
  j["experiment"] = to_string(cfg.experiment);
  j["seed"] = cfg.seed;
  j["subdivisions"] = cfg.subdivisions;
  Json params = Json::object();
  for (const auto& [name, p] : cfg.parameters) params[name] = param_json(p);
  j["parameters"] = params;
  return j;
}

std::string render_json(const RunRecord& record) {
  Json j;
  j["config"] = config_json(record.config);
  if (!record.rows.empty()) {
    j["swept_parameter"] = record.swept_parameter;
    Json rows = Json::array();
    for (std::size_t i = 0; i < record.rows.size(); ++i) {
      const SweepRow& r = record.rows[i];
      Json row;
      row["index"] = i;
      row[record.swept_parameter] = r.value;
      row["phase"] = json_number(r.result.phase);
      row["phase_unwrapped"] = json_number(r.phase_unwrapped);
      row["visibility"] = json_number(r.result.visibility);
      row["defined"] = r.result.defined;
      row["oracle_delta"] = json_number(r.oracle_delta);
      row["error"] = r.error.empty() ? Json(nullptr) : Json(r.error);
      rows.push_back(row);
    }
    j["rows"] = rows;
  } else {
    Json results = Json::object();
    for (const auto& r : record.results) results[r.name] = json_number(r.value);
    j["results"] = results;
    Json deltas = Json::object();
    for (const auto& d : record.oracle_deltas) deltas[d.name] = json_number(d.value);
    j["oracle_deltas"] = deltas;
    Json profile = Json::array();
    for (const auto& s : record.profile) profile.push_back({{"chi", s.chi}, {"intensity", s.intensity}});
    j["profile"] = profile;
  }
  j["versions"] = record.versions;
  return j.dump(2) + "\n";
}

std::string render_csv(const RunRecord& record) {
  std::ostringstream out;
  if (!record.rows.empty()) {
    out << "index," << record.swept_parameter
        << ",phase,phase_unwrapped,visibility,defined,oracle_delta,error\n";
    for (std::size_t i = 0; i < record.rows.size(); ++i) {
      const SweepRow& r = record.rows[i];
      out << i << ',' << number(r.value) << ',' << number(r.result.phase) << ','
          << number(r.phase_unwrapped) << ',' << number(r.result.visibility) << ','
          << (r.result.defined ? "true" : "false") << ',' << number(r.oracle_delta) << ',' << r.error << '\n';
    }
    return out.str();
  }
  out << "section,name,value\n";
  out << "config,experiment," << to_string(record.config.experiment) << '\n';
  out << "config,seed," << record.config.seed << '\n';
  out << "config,subdivisions," << record.config.subdivisions << '\n';
  for (const auto& [name, p] : record.config.parameters) out << "config," << name << ',' << param_text(p) << '\n';
  for (const auto& r : record.results) out << "result," << r.name << ',' << number(r.value) << '\n';
  for (const auto& d : record.oracle_deltas) out << "oracle_delta," << d.name << ',' << number(d.value) << '\n';
  for (const auto& [name, v] : record.versions) out << "version," << name << ',' << v << '\n';
  for (const auto& s : record.profile) out << "profile," << number(s.chi) << ',' << number(s.intensity) << '\n';
  return out.str();
}

}  // namespace

std::string render(const RunRecord& record, Format format) {
  return format == Format::Json ? render_json(record) : render_csv(record);
}

void write_record(const RunRecord& record, const std::string& path, Format format) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) raise(ErrorCode::IoError, "cannot open '" + path + "' for writing");
  file << render(record, format);
  if (!file.flush()) raise(ErrorCode::IoError, "failed writing '" + path + "'");
}

}  // namespace pancha::experiment
