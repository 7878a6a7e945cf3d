#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "l2ext/bergman.hpp"
#include "l2ext/constants.hpp"
#include "l2ext/green.hpp"
#include "l2ext/integrate.hpp"
#include "l2ext/weights.hpp"

namespace l2ext {

// Extension problem on the unit ball B^n with V = {z_1 = ... = z_k = 0},
// a catalog weight and polynomial data f on V.
struct RadialScenario {
  std::string id;
  int n = 1;
  int k = 1;
  Weight weight = Weight::trivial();
  VPolynomial f;
};

// Sanity checks (1 <= k <= n, f exponents of length n - k).
void validate(const RadialScenario& s);

// Closed-form Green model of (B^n, V): ball_pair(k, n - k).
GreenModel base_green_model(const RadialScenario& s);

// C_jac * sigma_k * weighted_trace.
double green_gap_rhs(double c_jac, int k, double weighted_trace);

// int_V |f|^2 e^{-phi + 2kB} with B the gap function of the base Green model.
double weighted_trace(const RadialScenario& s);
// C_jac = 1 (linear generators).
double green_gap_rhs(const RadialScenario& s);

// int_V vol(I_{Omega,V,v}) |f|^2 e^{-phi}.
double indicatrix_rhs(const RadialScenario& s);

// Green model of the Hartogs lift (radial_lift); throws UnsupportedError
// when the weight is not a catalog radial weight with respect to V.
GreenModel lift_green_model(const RadialScenario& s);

// int_{V~} |f~|^2 e^{2k B~}  (trivial weight on the lift).
double lift_trace(const RadialScenario& s);
// int_{V~} vol(I_{Omega~,V~,v}) |f~|^2.
double lift_indicatrix_integral(const RadialScenario& s);

// Mean-value descent from the lift:
// (1/sigma_k) min(green_gap_rhs on the lift, lift_indicatrix_integral).
double lift_route_rhs(const RadialScenario& s);

// (mu_n / 2) (n-1)! n! / (2n)! = pi^n n! / (2n)!, from exact integers; n in [1, 12].
// Equals int_{B^n} (1 - |w|^2)^n.
double ball_lift_ratio(int n);
QuadratureResult ball_lift_ratio_quadrature(int n);
QuadratureResult ball_lift_ratio_mc(int n, std::int64_t samples, std::uint64_t seed);

struct StrictnessGap {
  double left = 0.0;  // int_{V~} |f~|^2 e^{2k B~}
  double right = 0.0; // sigma_k int_V |f|^2 e^{-phi + 2kB}
  double gap = 0.0;   // right - left
  bool strict = false;
};

StrictnessGap strictness_gap(const RadialScenario& s);

struct BoundReport {
  std::string scenario_id;
  double green_gap_rhs = 0.0;
  std::optional<double> lift_route_rhs; // empty when the lift has no catalog model
  double indicatrix_rhs = 0.0;
  double minimal_norm_sq = 0.0;
  double strictness_margin = 0.0;
  double sigma_k = 0.0;
  double mu_k = 0.0;
};

BoundReport bound_report(const RadialScenario& s, double minimal_norm_sq);

// Copies the bounds into the extension result's comparison list.
void attach_bounds(ExtensionResult& ext, const BoundReport& report);

} // namespace l2ext
