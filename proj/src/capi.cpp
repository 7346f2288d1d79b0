#include "pancha/pancha.h"

#include <cstring>
#include <exception>
#include <string>
#include <vector>

#include "pancha/dual.hpp"
#include "pancha/error.hpp"
#include "pancha/experiment.hpp"
#include "pancha/geometric_phase.hpp"
#include "pancha/geometry.hpp"
#include "pancha/two_photon.hpp"
#include "pancha/verify.hpp"

struct pancha_state {
  pancha::StateVector value;
};

struct pancha_config {
  pancha::experiment::ExperimentConfig value;
  std::string format_name;
};

struct pancha_record {
  pancha::experiment::RunRecord value;
};

namespace {

using pancha::ErrorCode;
namespace ex = pancha::experiment;

thread_local std::string last_error;

pancha_status to_status(ErrorCode code) { return static_cast<pancha_status>(static_cast<int>(code) + 1); }

// Runs body, translating exceptions into status codes.
template <class F>
pancha_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return PANCHA_OK;
  } catch (const pancha::Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const std::exception& e) {
    last_error = e.what();
    return PANCHA_INTERNAL;
  } catch (...) {
    last_error = "unknown failure";
    return PANCHA_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (p == nullptr) pancha::raise(ErrorCode::InvalidArgument, std::string(what) + " is null");
}

pancha_phase_result to_c(const pancha::PhaseResult& r) { return {r.phase, r.visibility, r.defined ? 1 : 0}; }

pancha::SphericalTriangle triangle_from(const double* v) {
  need(v, "triangle");
  return {{v[0], v[1]}, {v[2], v[3]}, {v[4], v[5]}};
}

ex::Format format_from(const char* name) {
  need(name, "format");
  const auto f = ex::parse_format(name);
  if (!f) pancha::raise(ErrorCode::InvalidArgument, std::string("unknown format '") + name + "'");
  return *f;
}

pancha_status make_record(const pancha_config* config, pancha_record** out, bool sweep) {
  return guarded([&] {
    need(config, "config");
    need(out, "out");
    auto record = sweep ? ex::sweep(config->value) : ex::run(config->value);
    *out = new pancha_record{std::move(record)};
  });
}

}  // namespace

extern "C" {

const char* pancha_status_name(pancha_status status) {
  if (status == PANCHA_OK) return "Ok";
  if (status < PANCHA_OK || status > PANCHA_INTERNAL) return "Unknown";
  return pancha::to_string(static_cast<ErrorCode>(static_cast<int>(status) - 1)).data();
}

int pancha_status_is_domain(pancha_status status) {
  if (status <= PANCHA_OK || status > PANCHA_INTERNAL) return 0;
  return pancha::is_domain_error(static_cast<ErrorCode>(static_cast<int>(status) - 1)) ? 1 : 0;
}

const char* pancha_last_error(void) { return last_error.c_str(); }

const char* pancha_version(void) { return PANCHA_VERSION; }

pancha_status pancha_state_create(const double* re, const double* im, size_t dim, pancha_state** out) {
  return guarded([&] {
    need(re, "re");
    need(im, "im");
    need(out, "out");
    pancha::CVector v(static_cast<Eigen::Index>(dim));
    for (size_t i = 0; i < dim; ++i) v[static_cast<Eigen::Index>(i)] = {re[i], im[i]};
    *out = new pancha_state{pancha::StateVector(v)};
  });
}

pancha_status pancha_state_from_bloch(double theta, double phi, pancha_state** out) {
  return guarded([&] {
    need(out, "out");
    *out = new pancha_state{pancha::bloch_to_state({theta, phi})};
  });
}

pancha_status pancha_state_random(uint64_t seed, size_t dim, pancha_state** out) {
  return guarded([&] {
    need(out, "out");
    *out = new pancha_state{pancha::random_state(seed, dim)};
  });
}

size_t pancha_state_dim(const pancha_state* state) { return state ? state->value.dim() : 0; }

pancha_status pancha_state_amplitude(const pancha_state* state, size_t index, double* re, double* im) {
  return guarded([&] {
    need(state, "state");
    need(re, "re");
    need(im, "im");
    if (index >= state->value.dim()) pancha::raise(ErrorCode::InvalidArgument, "amplitude index out of range");
    const auto z = state->value[index];
    *re = z.real();
    *im = z.imag();
  });
}

pancha_status pancha_state_to_bloch(const pancha_state* state, double* theta, double* phi) {
  return guarded([&] {
    need(state, "state");
    need(theta, "theta");
    need(phi, "phi");
    const auto p = pancha::state_to_bloch(state->value);
    *theta = p.theta;
    *phi = p.phi;
  });
}

void pancha_state_free(pancha_state* state) { delete state; }

pancha_status pancha_pancharatnam_phase(const pancha_state* a, const pancha_state* b, pancha_phase_result* out) {
  return guarded([&] {
    need(a, "a");
    need(b, "b");
    need(out, "out");
    *out = to_c(pancha::pancharatnam_phase(a->value, b->value));
  });
}

pancha_status pancha_bargmann_invariant(const pancha_state* a, const pancha_state* b, const pancha_state* c,
                                        double* out) {
  return guarded([&] {
    need(a, "a");
    need(b, "b");
    need(c, "c");
    need(out, "out");
    *out = pancha::bargmann_invariant(a->value, b->value, c->value);
  });
}

pancha_status pancha_solid_angle(const double triangle[6], double* out) {
  return guarded([&] {
    need(out, "out");
    *out = pancha::solid_angle(triangle_from(triangle));
  });
}

pancha_status pancha_mixed_bargmann_qubit(double r, const double triangle[6], double* out) {
  return guarded([&] {
    need(out, "out");
    *out = pancha::mixed_bargmann(pancha::qubit_mixed_triple(r, triangle_from(triangle)));
  });
}

pancha_status pancha_mixed_solid_angle_phase(double r, double omega, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = pancha::mixed_solid_angle_phase(r, omega);
  });
}

pancha_status pancha_entangled_phase(double lambda, double omega, double omega_prime, pancha_phase_result* out) {
  return guarded([&] {
    need(out, "out");
    *out = to_c(pancha::entangled_phase_closed_form(lambda, omega, omega_prime));
  });
}

pancha_status pancha_precession_phase(double theta, double phi, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = pancha::precession_phase_closed_form({theta, phi});
  });
}

pancha_status pancha_precession_chain_phase(double theta, double phi, size_t subdivisions, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = pancha::chain_phase(pancha::precession_path({theta, phi}, subdivisions));
  });
}

pancha_status pancha_mixed_noncyclic_phase(double theta, double phi, double r, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = pancha::mixed_noncyclic_phase({theta, phi, r});
  });
}

pancha_status pancha_dual_phase(double theta, double delta_phi, pancha_phase_result* out) {
  return guarded([&] {
    need(out, "out");
    *out = to_c(pancha::dual_phase_closed_form(pancha::DualSweepSpec{theta, delta_phi}.at(0.0)));
  });
}

pancha_status pancha_fit_fringe(const double* chi, const double* intensity, size_t count, pancha_phase_result* out) {
  return guarded([&] {
    need(chi, "chi");
    need(intensity, "intensity");
    need(out, "out");
    std::vector<pancha::FringeSample> samples(count);
    for (size_t i = 0; i < count; ++i) samples[i] = {chi[i], intensity[i]};
    *out = to_c(pancha::fit_fringe(samples));
  });
}

pancha_status pancha_config_parse(const char* yaml, pancha_config** out) {
  return guarded([&] {
    need(yaml, "yaml");
    need(out, "out");
    *out = new pancha_config{ex::parse_config(yaml), {}};
  });
}

pancha_status pancha_config_load(const char* path, pancha_config** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new pancha_config{ex::load_config(path), {}};
  });
}

pancha_status pancha_config_set_seed(pancha_config* config, uint64_t seed) {
  return guarded([&] {
    need(config, "config");
    config->value.seed = seed;
    config->value.seed_given = true;
  });
}

int pancha_config_has_seed(const pancha_config* config) { return config && config->value.seed_given ? 1 : 0; }

pancha_status pancha_config_set_subdivisions(pancha_config* config, size_t subdivisions) {
  return guarded([&] {
    need(config, "config");
    if (subdivisions < 1) pancha::raise(ErrorCode::InvalidArgument, "subdivisions must be positive");
    config->value.subdivisions = subdivisions;
  });
}

pancha_status pancha_config_set_jobs(pancha_config* config, size_t jobs) {
  return guarded([&] {
    need(config, "config");
    config->value.jobs = jobs;
  });
}

pancha_status pancha_config_set_format(pancha_config* config, const char* format) {
  return guarded([&] {
    need(config, "config");
    config->value.format = format_from(format);
  });
}

pancha_status pancha_config_set_output(pancha_config* config, const char* path) {
  return guarded([&] {
    need(config, "config");
    need(path, "path");
    config->value.output = path;
  });
}

const char* pancha_config_format(const pancha_config* config) {
  if (!config || !config->value.format) return nullptr;
  return ex::to_string(*config->value.format).data();
}

const char* pancha_config_output(const pancha_config* config) {
  if (!config || !config->value.output) return nullptr;
  return config->value.output->c_str();
}

void pancha_config_free(pancha_config* config) { delete config; }

pancha_status pancha_run(const pancha_config* config, pancha_record** out) { return make_record(config, out, false); }

pancha_status pancha_sweep(const pancha_config* config, pancha_record** out) { return make_record(config, out, true); }

pancha_status pancha_record_render(const pancha_record* record, const char* format, char** text) {
  return guarded([&] {
    need(record, "record");
    need(text, "text");
    const std::string s = ex::render(record->value, format_from(format));
    char* buf = new char[s.size() + 1];
    std::memcpy(buf, s.c_str(), s.size() + 1);
    *text = buf;
  });
}

pancha_status pancha_record_write(const pancha_record* record, const char* path, const char* format) {
  return guarded([&] {
    need(record, "record");
    need(path, "path");
    ex::write_record(record->value, path, format_from(format));
  });
}

size_t pancha_record_result_count(const pancha_record* record) { return record ? record->value.results.size() : 0; }

pancha_status pancha_record_result(const pancha_record* record, size_t index, const char** name, double* value) {
  return guarded([&] {
    need(record, "record");
    if (index >= record->value.results.size()) pancha::raise(ErrorCode::InvalidArgument, "result index out of range");
    const auto& r = record->value.results[index];
    if (name) *name = r.name.c_str();
    if (value) *value = r.value;
  });
}

size_t pancha_record_delta_count(const pancha_record* record) {
  return record ? record->value.oracle_deltas.size() : 0;
}

pancha_status pancha_record_delta(const pancha_record* record, size_t index, const char** name, double* value) {
  return guarded([&] {
    need(record, "record");
    if (index >= record->value.oracle_deltas.size()) {
      pancha::raise(ErrorCode::InvalidArgument, "delta index out of range");
    }
    const auto& d = record->value.oracle_deltas[index];
    if (name) *name = d.name.c_str();
    if (value) *value = d.value;
  });
}

pancha_status pancha_record_find_result(const pancha_record* record, const char* name, double* value) {
  return guarded([&] {
    need(record, "record");
    need(name, "name");
    need(value, "value");
    const auto* r = record->value.find_result(name);
    if (!r) pancha::raise(ErrorCode::InvalidArgument, std::string("no result named '") + name + "'");
    *value = r->value;
  });
}

double pancha_record_max_oracle_delta(const pancha_record* record) {
  return record ? record->value.max_oracle_delta() : 0.0;
}

size_t pancha_record_row_count(const pancha_record* record) { return record ? record->value.rows.size() : 0; }

pancha_status pancha_record_row(const pancha_record* record, size_t index, double* value, pancha_phase_result* result,
                                double* phase_unwrapped, const char** error) {
  return guarded([&] {
    need(record, "record");
    if (index >= record->value.rows.size()) pancha::raise(ErrorCode::InvalidArgument, "row index out of range");
    const auto& row = record->value.rows[index];
    if (value) *value = row.value;
    if (result) *result = to_c(row.result);
    if (phase_unwrapped) *phase_unwrapped = row.phase_unwrapped;
    if (error) *error = row.error.c_str();
  });
}

const char* pancha_record_timestamp(const pancha_record* record) {
  return record ? record->value.timestamp.c_str() : "";
}

void pancha_record_free(pancha_record* record) { delete record; }

void pancha_string_free(char* text) { delete[] text; }

pancha_status pancha_verify(const char* suite, double tolerance_scale, pancha_check_callback callback, void* user,
                            int* all_pass) {
  return guarded([&] {
    need(suite, "suite");
    const auto s = pancha::verify::parse_suite(suite);
    if (!s) pancha::raise(ErrorCode::InvalidArgument, std::string("unknown suite '") + suite + "'");
    if (!(tolerance_scale >= 0.0)) pancha::raise(ErrorCode::InvalidArgument, "tolerance scale must be >= 0");
    const auto checks = pancha::verify::run_suite(*s, tolerance_scale, [&](const pancha::verify::PropertyCheck& c) {
      if (callback) callback(c.line().c_str(), c.pass ? 1 : 0, user);
    });
    if (all_pass) *all_pass = pancha::verify::all_passed(checks) ? 1 : 0;
  });
}

}  // extern "C"
