#pragma once

// Seeded property batteries run by `pancha verify <suite>`.

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pancha::verify {

enum class Suite { Geometry, Mixed, TwoPhoton, GeometricPhase, Dual, All };

std::string_view to_string(Suite suite);
std::optional<Suite> parse_suite(std::string_view name);

struct PropertyCheck {
  std::string suite;
  std::string name;
  double observed = 0.0;   // max deviation, or the measured quantity when at_least
  double tolerance = 0.0;  // already scaled
  bool at_least = false;   // pass iff observed >= tolerance
  bool pass = false;

  // "<name>: max dev 3.1e-12 PASS"
  std::string line() const;
};

// tolerance_scale multiplies every upper-bound tolerance; a tiny scale is
// how the harness is shown to fail. Checks are reported through on_check as
// they finish.
std::vector<PropertyCheck> run_suite(Suite suite, double tolerance_scale = 1.0,
                                     const std::function<void(const PropertyCheck&)>& on_check = {});

bool all_passed(const std::vector<PropertyCheck>& checks);

}  // namespace pancha::verify
