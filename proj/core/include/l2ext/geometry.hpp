#pragma once

#include <memory>
#include <string>
#include <vector>

#include "l2ext/point.hpp"
#include "l2ext/weights.hpp"

namespace l2ext {

// Open domain in C^m: a ball, a polydisc, or a Hartogs lift
//   {(z, w) : z in base, |w|^2 < exp(-phi(z)/k)}  in C^{n+k}.
// Immutable; copies share the lift data.
class DomainSpec {
public:
  enum class Kind { Ball, Polydisc, HartogsLift };

  static DomainSpec ball(double radius, int dim);
  static DomainSpec polydisc(std::vector<double> radii);

  Kind kind() const noexcept { return kind_; }
  int ambient_dim() const noexcept { return dim_; }
  std::string name() const;

  double radius() const noexcept { return radius_; }             // Ball
  const std::vector<double>& radii() const noexcept { return radii_; } // Polydisc

  // HartogsLift accessors; throw for other kinds.
  const DomainSpec& base() const;
  const Weight& weight() const;
  int fiber_dim() const;

  // Strict interior test. Throws InvalidArgument on dimension mismatch.
  bool contains(const Point& p) const;
  bool contains(std::span<const Complex> z) const noexcept;

  // Half-width per complex coordinate of a centred box containing the domain
  // (real and imaginary parts share the half-width).
  std::vector<double> bounding_box() const;

  friend DomainSpec make_hartogs_lift(const DomainSpec& base, const Weight& weight, int k);

private:
  struct Lift;

  DomainSpec() = default;

  Kind kind_ = Kind::Ball;
  int dim_ = 0;
  double radius_ = 1.0;
  std::vector<double> radii_;
  std::shared_ptr<const Lift> lift_;
};

DomainSpec make_hartogs_lift(const DomainSpec& base, const Weight& weight, int k);

bool contains(const DomainSpec& domain, const Point& p);

// V = {z_1 = ... = z_k = 0} in C^n with generators psi_i(z) = z_i. The lifted
// subvariety lives in C^{n+k} and its generators ignore the fiber
// coordinates w.
class SubvarietySpec {
public:
  SubvarietySpec(int ambient_dim, int codim);

  int ambient_dim() const noexcept { return ambient_dim_; }
  int codim() const noexcept { return codim_; }
  bool lifted() const noexcept { return lifted_; }

  // psi(p) = (p_1, ..., p_k) and |psi(p)|.
  std::vector<Complex> generators(const Point& p) const;
  double generator_norm(const Point& p) const;
  bool on_subvariety(const Point& p) const;

  // Lower bound 1/C for |J_psi|; the Jacobian of linear generators is 1.
  static constexpr double jacobian_constant() noexcept { return 1.0; }

  friend SubvarietySpec lift_generators(const SubvarietySpec& v);

private:
  int ambient_dim_;
  int codim_;
  bool lifted_ = false;
};

SubvarietySpec lift_generators(const SubvarietySpec& v);

} // namespace l2ext
