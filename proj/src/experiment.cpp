#include "pancha/experiment.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <exception>
#include <limits>
#include <thread>

#include "pancha/dual.hpp"
#include "pancha/error.hpp"
#include "pancha/geometric_phase.hpp"
#include "pancha/geometry.hpp"
#include "pancha/two_photon.hpp"

#ifndef PANCHA_VERSION
#define PANCHA_VERSION "0.0.0"
#endif

namespace pancha::experiment {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Outcome {
  std::vector<NamedValue> results;
  std::vector<NamedValue> deltas;
  std::vector<FringeSample> profile;
  PhaseResult primary;
};

double phase_gap(double a, double b) { return std::abs(wrap_phase(a - b)); }

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finaliser over (seed, stream)
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Noise-free samples first; noise (if any) is added to a copy that is refit.
PhaseResult noisy_readout(InterferenceProfile& profile, double sigma, std::uint64_t seed) {
  if (sigma != 0.0) {
    if (sigma < 0.0) raise(ErrorCode::InvalidArgument, "noise must be non-negative");
    Rng rng(seed);
    add_gaussian_noise(profile.samples, sigma, rng);
    profile.extracted = fit_fringe(profile.samples);
  }
  return profile.extracted;
}

std::vector<double> chi_grid(const ExperimentConfig& cfg) {
  const std::size_t n = cfg.integer("samples");
  if (n < 3) raise(ErrorCode::InvalidArgument, "samples must be at least 3");
  return uniform_chis(n);
}

// Loops may shrink to a point or retrace a geodesic; both enclose no area.
double loop_solid_angle(const SphericalTriangle& t) {
  const Vec3 a = t.a.direction();
  const Vec3 b = t.b.direction();
  const Vec3 c = t.c.direction();
  for (const auto& [p, q] : {std::pair{a, b}, std::pair{b, c}, std::pair{c, a}}) {
    if (p.cross(q).norm() < kGeodesicEpsilon && p.dot(q) < 0.0) {
      raise(ErrorCode::AntipodalPoints, "loop has antipodal vertices");
    }
  }
  return triangle_solid_angle(a, b, c);
}

void add_fit(Outcome& out, const PhaseResult& fit, const PhaseResult& reference) {
  out.results.push_back({"fit_phase", fit.defined ? fit.phase : kNaN});
  out.results.push_back({"fit_visibility", fit.visibility});
  out.deltas.push_back({"fit_phase", fit.defined && reference.defined ? phase_gap(fit.phase, reference.phase) : 0.0});
  out.deltas.push_back({"fit_visibility", std::abs(fit.visibility - reference.visibility)});
}

Outcome evaluate_pair(const ExperimentConfig& cfg, std::uint64_t seed) {
  const StateVector a = bloch_to_state(cfg.point("a"));
  const StateVector b = bloch_to_state(cfg.point("b"));
  const PhaseResult pr = pancharatnam_phase(a, b);
  InterferenceProfile profile = pure_interference_profile(a, b, chi_grid(cfg));
  Outcome out;
  out.results = {{"phase", pr.phase}, {"visibility", pr.visibility}};
  out.deltas.push_back({"profile_closed_form", closed_form_profile_deviation(profile.samples, pr.phase, pr.visibility)});
  const PhaseResult fit = noisy_readout(profile, cfg.scalar("noise"), seed);
  add_fit(out, fit, pr);
  out.profile = std::move(profile.samples);
  out.primary = pr;
  return out;
}

Outcome evaluate_mixed(const ExperimentConfig& cfg, std::uint64_t seed) {
  const double r = cfg.scalar("r");
  const SphericalTriangle t = cfg.triangle("vertices");
  const double omega = solid_angle(t);
  const MixedTriple mt = qubit_mixed_triple(r, t);
  const double bargmann = mixed_bargmann(mt);
  const double closed = mixed_solid_angle_phase(r, omega);
  const DensityOperator rho = DensityOperator::qubit(r, t.a);
  const PhaseResult trace = mixed_phase(rho, mt.u);
  InterferenceProfile profile = mixed_interference_profile(rho, mt.u, chi_grid(cfg));

  Outcome out;
  out.results = {{"solid_angle", omega},        {"mixed_bargmann", bargmann},
                 {"closed_form", closed},       {"trace_phase", trace.phase},
                 {"trace_visibility", trace.visibility}};
  out.deltas = {{"bargmann_vs_closed_form", phase_gap(bargmann, closed)},
                {"trace_vs_closed_form", phase_gap(trace.phase, closed)},
                {"profile_routes", closed_form_profile_deviation(profile.samples, trace.phase, trace.visibility)}};
  const PhaseResult fit = noisy_readout(profile, cfg.scalar("noise"), seed);
  add_fit(out, fit, trace);
  out.profile = std::move(profile.samples);
  out.primary = {bargmann, trace.visibility, true};
  return out;
}

Outcome evaluate_triangle(const ExperimentConfig& cfg) {
  const SphericalTriangle t = cfg.triangle("vertices");
  const StateVector a = bloch_to_state(t.a);
  const StateVector b = bloch_to_state(t.b);
  const StateVector c = bloch_to_state(t.c);
  const double bargmann = bargmann_invariant(a, b, c);
  const double omega = solid_angle(t);
  const UnitaryOperator loop = loop_holonomy(t);
  const double holonomy = arg(inner_product(a, loop * a));
  const StateVector a_perp = orthogonal_complement(a);
  const double complement = arg(inner_product(a_perp, loop * a_perp));
  const double modulus =
      std::abs(inner_product(a, c) * inner_product(c, b) * inner_product(b, a));

  Outcome out;
  out.results = {{"bargmann", bargmann},
                 {"solid_angle", omega},
                 {"minus_half_solid_angle", wrap_phase(-omega / 2.0)},
                 {"holonomy_phase", holonomy},
                 {"complement_holonomy_phase", complement}};
  out.deltas = {{"bargmann_vs_solid_angle", phase_gap(bargmann, -omega / 2.0)},
                {"holonomy_vs_solid_angle", phase_gap(holonomy, -omega / 2.0)},
                {"complement_vs_solid_angle", phase_gap(complement, omega / 2.0)}};
  out.primary = {bargmann, modulus, true};
  return out;
}

Outcome evaluate_two_photon(const ExperimentConfig& cfg, std::uint64_t seed) {
  const double lambda = cfg.scalar("lambda");
  const LoopPair loops{cfg.triangle("loop1"), cfg.triangle("loop2")};
  const SchmidtState s =
      SchmidtState::aligned(lambda, bloch_to_state(loops.photon1.a), bloch_to_state(loops.photon2.a));
  const double omega1 = loop_solid_angle(loops.photon1);
  const double omega2 = loop_solid_angle(loops.photon2);
  const PhaseResult closed = entangled_phase_closed_form(lambda, omega1, omega2);
  const PhaseResult simulated = simulate_loop_pair(s, loops);
  InterferenceProfile profile = franson_coincidence_profile(s, loops, chi_grid(cfg));

  Outcome out;
  out.results = {{"degree_of_entanglement", degree_of_entanglement(s)},
                 {"omega1", omega1},
                 {"omega2", omega2},
                 {"product_phase", product_loop_phase(omega1, omega2)},
                 {"closed_phase", closed.phase},
                 {"closed_visibility", closed.visibility},
                 {"simulated_phase", simulated.phase},
                 {"simulated_visibility", simulated.visibility}};
  out.deltas = {{"simulated_vs_closed_phase", phase_gap(simulated.phase, closed.phase)},
                {"simulated_vs_closed_visibility", std::abs(simulated.visibility - closed.visibility)}};
  const PhaseResult fit = noisy_readout(profile, cfg.scalar("noise"), seed);
  add_fit(out, fit, simulated);
  out.profile = std::move(profile.samples);
  out.primary = simulated;
  return out;
}

Outcome evaluate_precession(const ExperimentConfig& cfg) {
  PrecessionSpec spec{cfg.scalar("theta"), cfg.scalar("phi"), cfg.scalar("r")};
  const std::size_t n = cfg.parameters.count("subdivisions") ? cfg.integer("subdivisions") : cfg.subdivisions;
  const DiscretePath path = precession_path(spec, n);
  const double closed = precession_phase_closed_form(spec);
  const double chain = chain_phase(path);
  const double simulated = auxiliary_simulated_phase(spec);
  const double via_path = pancharatnam_vs_auxiliary(path);
  const double omega_gc = geodesic_closure_solid_angle(path);
  const DiscretePath lift = make_parallel_lift(path);
  const double lift_endpoint = arg(inner_product(lift.states().front(), lift.states().back()));
  const double mixed = mixed_noncyclic_phase(spec);
  const PhaseResult trace = mixed_phase(DensityOperator::qubit(spec.r, {0.0, 0.0}), noncyclic_holonomy(spec));
  const double visibility = std::abs(inner_product(path.states().front(), path.states().back()));

  Outcome out;
  out.results = {{"closed_form", closed},
                 {"chain_phase", chain},
                 {"auxiliary_simulated", simulated},
                 {"auxiliary_path", via_path},
                 {"parallel_lift_endpoint", lift_endpoint},
                 {"dynamical_phase", dynamical_phase(path)},
                 {"omega_gc", omega_gc},
                 {"minus_half_omega_gc", -omega_gc / 2.0},
                 {"mixed_noncyclic", mixed},
                 {"mixed_trace_phase", trace.phase},
                 {"subdivisions", static_cast<double>(n)}};
  out.deltas = {{"chain_vs_closed", phase_gap(chain, closed)},
                {"auxiliary_simulated_vs_closed", phase_gap(simulated, closed)},
                {"auxiliary_path_vs_closed", phase_gap(via_path, closed)},
                {"parallel_lift_vs_chain", phase_gap(lift_endpoint, chain)},
                {"geodesic_closure_vs_closed", phase_gap(-omega_gc / 2.0, closed)},
                {"mixed_trace_vs_closed", phase_gap(trace.phase, mixed)}};
  out.primary = {chain, visibility, true};
  return out;
}

Outcome evaluate_dual(const ExperimentConfig& cfg, std::uint64_t seed) {
  const DualSweepSpec spec{cfg.scalar("theta"), cfg.scalar("delta_phi")};
  const PhaseResult closed = dual_phase_closed_form(spec.at(0.0));
  const PhaseResult spin = spin_pancharatnam({spec.theta, spec.delta_phi});
  const auto chis = chi_grid(cfg);
  InterferenceProfile profile = dual_coincidence_profile(spec, chis);
  const auto minus = dual_channel_intensities(spec, chis, false);
  double channel_sum = 0.0;
  double expansion = 0.0;
  for (std::size_t i = 0; i < chis.size(); ++i) {
    channel_sum = std::max(channel_sum, std::abs(profile.samples[i].intensity + minus[i].intensity - 4.0));
    const DualSetupSpec setup = spec.at(chis[i]);
    const StateVector direct = apply_arm_fields(prepare_beam_state(setup), setup);
    expansion = std::max(expansion, (direct.amplitudes() - dual_expansion(setup).amplitudes()).cwiseAbs().maxCoeff());
  }

  Outcome out;
  out.results = {{"closed_phase", closed.phase},
                 {"closed_visibility", closed.visibility},
                 {"spin_phase", spin.phase},
                 {"spin_visibility", spin.visibility}};
  out.deltas = {{"duality_phase", phase_gap(spin.phase, closed.phase)},
                {"duality_visibility", std::abs(spin.visibility - closed.visibility)},
                {"channel_sum", channel_sum},
                {"expansion", expansion}};
  const PhaseResult fit = noisy_readout(profile, cfg.scalar("noise"), seed);
  add_fit(out, fit, closed);
  out.profile = std::move(profile.samples);
  out.primary = fit;
  return out;
}

Outcome evaluate_law(const ExperimentConfig& cfg) {
  const std::string& law = cfg.text("law");
  Outcome out;
  PhaseResult closed;
  PhaseResult oracle;
  if (law == "mixed-solid-angle") {
    const double r = cfg.scalar("r");
    const double omega = cfg.scalar("omega");
    closed.phase = mixed_solid_angle_phase(r, omega);
    oracle = mixed_phase(DensityOperator::qubit(r, {0.0, 0.0}), matrix_exponential_su2(Vec3::UnitZ(), omega));
    closed.visibility = oracle.visibility;
    closed.defined = true;
  } else if (law == "entangled" || law == "ancilla") {
    const double lambda = cfg.scalar("lambda");
    const double omega = cfg.scalar("omega");
    const double omega_prime = law == "entangled" ? cfg.scalar("omega_prime") : 0.0;
    if (law == "entangled") {
      closed = entangled_phase_closed_form(lambda, omega, omega_prime);
    } else {
      closed = {ancilla_reduction_phase(lambda, omega),
                entangled_phase_closed_form(lambda, omega, 0.0).visibility, true};
    }
    const StateVector up = StateVector::basis(2, 0);
    const StateVector initial = SchmidtState::aligned(lambda, up, up).vector();
    const UnitaryOperator u = tensor(matrix_exponential_su2(Vec3::UnitZ(), omega),
                                     matrix_exponential_su2(Vec3::UnitZ(), omega_prime));
    oracle = pancharatnam_phase(initial, u * initial);
  } else if (law == "precession" || law == "mixed-noncyclic") {
    PrecessionSpec spec{cfg.scalar("theta"), cfg.scalar("phi"), 1.0};
    if (law == "precession") {
      closed.phase = precession_phase_closed_form(spec);
      oracle.phase = auxiliary_simulated_phase(spec);
    } else {
      spec.r = cfg.scalar("r");
      closed.phase = mixed_noncyclic_phase(spec);
      oracle = mixed_phase(DensityOperator::qubit(spec.r, {0.0, 0.0}), noncyclic_holonomy(spec));
    }
    const UnitaryOperator h = noncyclic_holonomy(spec);
    closed.visibility = std::abs(h.matrix()(0, 0));
    oracle.visibility = oracle.defined ? oracle.visibility : closed.visibility;
    closed.defined = oracle.defined = true;
  } else if (law == "spin") {
    const SpinArmSpec spec{cfg.scalar("theta"), cfg.scalar("phi")};
    closed = spin_pancharatnam(spec);
    oracle = spin_interference_profile(spec, chi_grid(cfg)).extracted;
  } else if (law == "dual") {
    const DualSweepSpec spec{cfg.scalar("theta"), cfg.scalar("delta_phi")};
    closed = dual_phase_closed_form(spec.at(0.0));
    oracle = dual_coincidence_profile(spec, chi_grid(cfg)).extracted;
  } else {
    raise(ErrorCode::ConfigError, "unknown sweep law '" + law + "'");
  }
  out.results = {{"closed_phase", closed.phase},
                 {"closed_visibility", closed.visibility},
                 {"oracle_phase", oracle.phase},
                 {"oracle_visibility", oracle.visibility}};
  out.deltas = {{"phase", phase_gap(closed.phase, oracle.phase)},
                {"visibility", std::abs(closed.visibility - oracle.visibility)}};
  out.primary = closed;
  return out;
}

Outcome evaluate(const ExperimentConfig& cfg, std::uint64_t seed) {
  switch (cfg.experiment) {
    case Kind::Pair: return evaluate_pair(cfg, seed);
    case Kind::Mixed: return evaluate_mixed(cfg, seed);
    case Kind::Triangle: return evaluate_triangle(cfg);
    case Kind::TwoPhoton: return evaluate_two_photon(cfg, seed);
    case Kind::Precession: return evaluate_precession(cfg);
    case Kind::Dual: return evaluate_dual(cfg, seed);
    case Kind::Sweep: return evaluate_law(cfg);
  }
  raise(ErrorCode::Internal, "unhandled experiment");
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

RunRecord new_record(const ExperimentConfig& cfg) {
  RunRecord record;
  record.config = cfg;
  record.versions = {{"pancha", PANCHA_VERSION},
                     {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) +
                                   "." + std::to_string(EIGEN_MINOR_VERSION)}};
  record.timestamp = utc_timestamp();
  return record;
}

}  // namespace

double RunRecord::max_oracle_delta() const {
  double worst = 0.0;
  for (const auto& d : oracle_deltas) worst = std::max(worst, d.value);
  return worst;
}

const NamedValue* RunRecord::find_result(std::string_view name) const {
  for (const auto& r : results) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

const NamedValue* RunRecord::find_delta(std::string_view name) const {
  for (const auto& r : oracle_deltas) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

std::vector<double> unwrap_phases(const std::vector<double>& phases) {
  std::vector<double> out(phases.size(), kNaN);
  double previous = kNaN;
  for (std::size_t i = 0; i < phases.size(); ++i) {
    if (std::isnan(phases[i])) continue;
    double v = phases[i];
    if (!std::isnan(previous)) v = previous + wrap_phase(phases[i] - previous);
    out[i] = v;
    previous = v;
  }
  return out;
}

RunRecord run(const ExperimentConfig& config) {
  if (config.experiment == Kind::Sweep) return sweep(config);
  const auto swept = config.swept_parameters();
  if (!swept.empty()) {
    raise(ErrorCode::ConfigError, "parameter '" + swept.front() + "' is a list; use the sweep verb");
  }
  RunRecord record = new_record(config);
  Outcome out = evaluate(config, mix_seed(config.seed, 0));
  record.results = std::move(out.results);
  record.oracle_deltas = std::move(out.deltas);
  record.profile = std::move(out.profile);
  record.primary = out.primary;
  return record;
}

RunRecord sweep(const ExperimentConfig& config) {
  const auto swept = config.swept_parameters();
  if (swept.empty()) raise(ErrorCode::ConfigError, "sweep needs one list-valued parameter");
  if (swept.size() > 1) {
    std::string names;
    for (const auto& n : swept) names += (names.empty() ? "" : ", ") + n;
    raise(ErrorCode::MultipleSweptParameters, "only one parameter may be a list (got " + names + ")");
  }
  const std::string& name = swept.front();
  const std::vector<double> values = config.parameters.at(name).values;

  RunRecord record = new_record(config);
  record.swept_parameter = name;
  record.rows.resize(values.size());
  std::vector<std::exception_ptr> failures(values.size());

  auto evaluate_point = [&](std::size_t i) {
    ExperimentConfig point = config;
    Param& p = point.parameters.at(name);
    p.values = {values[i]};
    p.swept = false;
    SweepRow& row = record.rows[i];
    row.value = values[i];
    try {
      const Outcome out = evaluate(point, mix_seed(config.seed, i));
      row.result = out.primary;
      if (!row.result.defined) row.result.phase = kNaN;
      for (const auto& d : out.deltas) row.oracle_delta = std::max(row.oracle_delta, d.value);
    } catch (const Error& e) {
      if (!is_domain_error(e.code())) {
        failures[i] = std::current_exception();
        return;
      }
      row.result = {kNaN, kNaN, false};
      row.oracle_delta = kNaN;
      row.error = std::string(to_string(e.code()));
    } catch (...) {
      failures[i] = std::current_exception();
    }
  };

  std::size_t workers = config.jobs != 0 ? config.jobs : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, values.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < values.size(); ++i) evaluate_point(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < values.size(); i = next++) evaluate_point(i);
      });
    }
    for (auto& t : pool) t.join();
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  std::vector<double> phases;
  phases.reserve(values.size());
  for (const auto& row : record.rows) phases.push_back(row.result.phase);
  const auto unwrapped = unwrap_phases(phases);
  for (std::size_t i = 0; i < values.size(); ++i) record.rows[i].phase_unwrapped = unwrapped[i];
  record.primary = record.rows.front().result;
  return record;
}

}  // namespace pancha::experiment
