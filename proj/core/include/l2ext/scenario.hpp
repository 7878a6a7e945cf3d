#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace l2ext {

inline constexpr const char* kVersion = "0.1.0";

// Malformed configuration; `field` names the offending key.
class UsageError : public std::invalid_argument {
public:
  UsageError(std::string field, const std::string& what)
      : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

private:
  std::string field_;
};

enum class ScenarioKind { FubiniIdentity, BallLiftRatio, RadialMinimal, BoundComparison, ScalingLimit };

std::string scenario_name(ScenarioKind kind);
// Accepts canonical names and the alias "example41".
std::optional<ScenarioKind> parse_scenario_name(const std::string& name);

struct Tolerances {
  double exact_rel = 1e-12;      // exact-integer constants vs quadrature
  double identity_rel = 1e-6;    // quadrature identities and closed forms
  double mc_rel = 0.01;          // Monte Carlo oracles
  double transverse_abs = 1e-8;  // z'-coefficients of the minimal extension
  double convergence_rel = 1e-6; // degree d vs d - 2
  double limit_rel = 0.05;       // sublevel limit for the ball-pair model
};

struct FTerm {
  std::vector<int> exponent; // z''-exponent, length n - k
  double re = 1.0;
  double im = 0.0;
};

struct ScenarioConfig {
  ScenarioKind scenario = ScenarioKind::FubiniIdentity;
  int n = 1;
  int k = 1;
  std::string weight = "radial";   // radial | ball_standard | trivial
  std::string profile = "log_singular";
  double profile_scale = 1.0;      // scaled_log a
  double ball_coefficient = 1.0;   // ball_standard c
  double epsilon = 0.0;            // regularization
  double zpp_norm = 0.0;
  int degree = 8;
  std::string model = "ball_point"; // scaling_limit: ball_point | ball_pair
  std::vector<double> t_ladder{-4.0, -8.0, -12.0};
  std::vector<FTerm> f{FTerm{}};    // default f = 1
  std::int64_t samples = 0;         // 0: scenario default
  std::optional<std::uint64_t> seed;
  Tolerances tol;
};

// Parses JSON text. Parameters may sit at top level or under "params".
ScenarioConfig parse_config(const std::string& json_text);
ScenarioConfig load_config(const std::string& path);

struct ReportValue {
  std::string name;
  double value = 0.0;
  double error = 0.0;
  std::string provenance; // closed_form | quadrature | monte_carlo | linear_solve | derived
};

struct ReportAssertion {
  std::string name;
  bool pass = false;
  double lhs = 0.0;
  double rhs = 0.0;
  double tol = 0.0;
};

struct Report {
  std::string scenario;
  std::vector<std::pair<std::string, std::string>> params; // key, JSON-encoded value
  std::vector<ReportValue> values;
  std::vector<ReportAssertion> assertions;
  std::optional<std::uint64_t> seed;
  std::string version = kVersion;
  double wall_clock_seconds = 0.0;

  bool passed() const;
  const ReportValue* value(const std::string& name) const;
  const ReportAssertion* assertion(const std::string& name) const;
};

// Runs one scenario. Throws UsageError for out-of-range parameters (or a
// missing seed on Monte Carlo paths) and UnsupportedError on catalog misses.
Report run_scenario(const ScenarioConfig& config);

// `include_wall_clock = false` gives the deterministic report body.
std::string to_json(const Report& report, bool include_wall_clock = true);
std::string to_table(const Report& report);

// Scenario catalog with parameter ranges, one entry per line.
std::string catalog_listing();

} // namespace l2ext
