// pancha: run interference experiments from YAML configs, sweep one
// parameter, or run the built-in property batteries.
//
//   pancha run    --config FILE [--out FILE] [--format csv|json] [--seed N]
//                 [--subdivisions N] [--jobs N]
//   pancha sweep  (same flags)
//   pancha verify geometry|mixed|two-photon|geometric-phase|dual|all
//
// Exit status: 0 success, 1 a verify property failed, 2 bad input,
// 3 the requested phase does not exist (the error name goes to stderr).

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "pancha/pancha.h"

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kBadInput = 2;
constexpr int kDomain = 3;

int report(pancha_status status) {
  const std::string name = pancha_status_name(status);
  const std::string message = pancha_last_error();
  if (message.rfind(name, 0) == 0) {
    std::cerr << "error: " << message << '\n';
  } else {
    std::cerr << "error: " << name << ": " << message << '\n';
  }
  return pancha_status_is_domain(status) ? kDomain : kBadInput;
}

struct RunOptions {
  std::string config;
  std::string out;
  std::string format;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> subdivisions;
  std::optional<std::size_t> jobs;
};

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

int execute(const RunOptions& opt, bool sweep) {
  pancha_config* config = nullptr;
  pancha_status st = pancha_config_load(opt.config.c_str(), &config);
  if (st != PANCHA_OK) return report(st);

  std::optional<std::uint64_t> seed = opt.seed;
  if (!seed && !pancha_config_has_seed(config)) {
    if (const char* env = std::getenv("PANCHA_SEED")) {
      try {
        std::size_t used = 0;
        seed = std::stoull(env, &used);
        if (used != std::string(env).size()) throw std::invalid_argument(env);
      } catch (const std::exception&) {
        std::cerr << "error: ConfigError: PANCHA_SEED is not an unsigned integer\n";
        pancha_config_free(config);
        return kBadInput;
      }
    }
  }
  if (seed) st = pancha_config_set_seed(config, *seed);
  if (st == PANCHA_OK && opt.subdivisions) st = pancha_config_set_subdivisions(config, *opt.subdivisions);
  if (st == PANCHA_OK && opt.jobs) st = pancha_config_set_jobs(config, *opt.jobs);
  if (st == PANCHA_OK && !opt.out.empty()) st = pancha_config_set_output(config, opt.out.c_str());
  if (st != PANCHA_OK) {
    pancha_config_free(config);
    return report(st);
  }

  const char* configured_out = pancha_config_output(config);
  const std::string out = configured_out ? configured_out : "";
  std::string format = opt.format;
  if (format.empty() && pancha_config_format(config)) format = pancha_config_format(config);
  if (format.empty()) format = ends_with(out, ".json") ? "json" : "csv";

  pancha_record* record = nullptr;
  st = sweep ? pancha_sweep(config, &record) : pancha_run(config, &record);
  pancha_config_free(config);
  if (st != PANCHA_OK) return report(st);

  if (out.empty()) {
    char* text = nullptr;
    st = pancha_record_render(record, format.c_str(), &text);
    if (st == PANCHA_OK) {
      std::fputs(text, stdout);
      pancha_string_free(text);
    }
  } else {
    st = pancha_record_write(record, out.c_str(), format.c_str());
  }
  pancha_record_free(record);
  return st == PANCHA_OK ? kOk : report(st);
}

void print_check(const char* line, int, void*) { std::printf("%s\n", line); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pancharatnam phase experiments and property checks"};
  app.set_version_flag("--version", std::string(pancha_version()));
  app.require_subcommand(1);

  RunOptions opt;
  auto add_run_flags = [&](CLI::App* cmd) {
    cmd->add_option("--config", opt.config, "experiment config (YAML)")->required();
    cmd->add_option("--out", opt.out, "output file (default: stdout)");
    cmd->add_option("--format", opt.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--seed", opt.seed, "RNG seed (falls back to the config, then PANCHA_SEED)");
    cmd->add_option("--subdivisions", opt.subdivisions, "path samples for simulated evolutions")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--jobs", opt.jobs, "sweep workers (default: number of processors)")
        ->check(CLI::PositiveNumber);
  };
  CLI::App* run = app.add_subcommand("run", "run one experiment");
  add_run_flags(run);
  CLI::App* sweep = app.add_subcommand("sweep", "sweep the list-valued parameter of an experiment");
  add_run_flags(sweep);

  std::string suite;
  double scale = 1.0;
  CLI::App* verify = app.add_subcommand("verify", "run the seeded property batteries");
  verify->add_option("suite", suite, "geometry, mixed, two-photon, geometric-phase, dual or all")
      ->check(CLI::IsMember({"geometry", "mixed", "two-photon", "geometric-phase", "dual", "all"}))
      ->default_val("all");
  verify->add_option("--tolerance-scale", scale, "multiply every tolerance (testing the harness)")
      ->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadInput;
  }

  if (*run) return execute(opt, false);
  if (*sweep) return execute(opt, true);

  int all_pass = 0;
  const pancha_status st = pancha_verify(suite.c_str(), scale, print_check, nullptr, &all_pass);
  if (st != PANCHA_OK) return report(st);
  std::printf("%s\n", all_pass ? "all properties hold" : "some properties FAILED");
  return all_pass ? kOk : kCheckFailed;
}
