#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"

#include "core/types.hpp"

namespace et::verify {

using json = nlohmann::json;

// A single identity check.  For bound == upper the check passes iff
// residual <= tolerance; lower-bound checks (negative controls, nonvanishing
// claims) pass iff residual > tolerance.
enum class Bound { upper, lower };

struct Check {
  std::string name;
  std::string anchor;  // the statement being checked, in words
  json parameters = json::object();
  double residual = 0.0;
  bool has_residual = true;  // false when evaluation raised an error
  double tolerance = 0.0;
  Bound bound = Bound::upper;
  bool pass = false;
  bool acceptance = false;  // part of the suite's acceptance criterion
  bool skipped = false;     // regime violation in a relation that may be skipped
  std::string note;
  double seconds = 0.0;
};

struct SuiteOptions {
  int kappa = 5;
  std::uint64_t seed = 20240601;
  Truncation trunc = Truncation::defaults();
};

struct Report {
  std::string suite;
  SuiteOptions options;
  std::vector<Check> checks;  // sorted by name
  double seconds = 0.0;

  int passed() const;
  int failed() const;   // excludes skipped
  int skipped() const;
  bool all_pass() const { return failed() == 0; }
  // all checks flagged as acceptance checks pass
  bool acceptance_pass() const;
  // timing fields live under the top-level "timing" key only
  json to_json(bool with_timing = true) const;
};

const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);
Report run_suite(const std::string& name, const SuiteOptions& opt = {});

// Deterministic samples: mt19937_64 output is fixed by the standard, the
// distributions are not, so the mapping to [0,1) is done here.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}
  double uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }

 private:
  std::mt19937_64 rng_;
};

}  // namespace et::verify
