#include "l2ext/geometry.hpp"

#include <cmath>
#include <sstream>

#include "l2ext/errors.hpp"

namespace l2ext {

Point::Point(std::vector<Complex> coords) : coords_(std::move(coords)) {
  for (const auto& c : coords_)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw InvalidArgument("Point coordinates must be finite");
}

Point::Point(std::initializer_list<Complex> coords) : Point(std::vector<Complex>(coords)) {}

struct DomainSpec::Lift {
  DomainSpec base;
  Weight weight;
  int k;
};

DomainSpec DomainSpec::ball(double radius, int dim) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw InvalidArgument("ball radius must be > 0");
  if (dim < 1) throw InvalidArgument("ball dimension must be >= 1");
  DomainSpec d;
  d.kind_ = Kind::Ball;
  d.dim_ = dim;
  d.radius_ = radius;
  return d;
}

DomainSpec DomainSpec::polydisc(std::vector<double> radii) {
  if (radii.empty()) throw InvalidArgument("polydisc needs at least one radius");
  for (double r : radii)
    if (!(r > 0.0) || !std::isfinite(r)) throw InvalidArgument("polydisc radii must be > 0");
  DomainSpec d;
  d.kind_ = Kind::Polydisc;
  d.dim_ = static_cast<int>(radii.size());
  d.radii_ = std::move(radii);
  return d;
}

DomainSpec make_hartogs_lift(const DomainSpec& base, const Weight& weight, int k) {
  if (k < 1) throw InvalidArgument("Hartogs lift needs fiber dimension k >= 1");
  DomainSpec d;
  d.kind_ = DomainSpec::Kind::HartogsLift;
  d.dim_ = base.ambient_dim() + k;
  d.lift_ = std::make_shared<const DomainSpec::Lift>(DomainSpec::Lift{base, weight, k});
  return d;
}

std::string DomainSpec::name() const {
  std::ostringstream os;
  switch (kind_) {
  case Kind::Ball: os << "ball(r=" << radius_ << ", dim=" << dim_ << ")"; break;
  case Kind::Polydisc: {
    os << "polydisc(";
    for (std::size_t i = 0; i < radii_.size(); ++i) os << (i ? "," : "") << radii_[i];
    os << ")";
    break;
  }
  case Kind::HartogsLift:
    os << "hartogs_lift(" << lift_->base.name() << ", " << lift_->weight.name()
       << ", k=" << lift_->k << ")";
    break;
  }
  return os.str();
}

const DomainSpec& DomainSpec::base() const {
  if (!lift_) throw InvalidArgument("base() requires a Hartogs lift");
  return lift_->base;
}

const Weight& DomainSpec::weight() const {
  if (!lift_) throw InvalidArgument("weight() requires a Hartogs lift");
  return lift_->weight;
}

int DomainSpec::fiber_dim() const {
  if (!lift_) throw InvalidArgument("fiber_dim() requires a Hartogs lift");
  return lift_->k;
}

bool DomainSpec::contains(std::span<const Complex> z) const noexcept {
  if (z.size() != static_cast<std::size_t>(dim_)) return false;
  switch (kind_) {
  case Kind::Ball: return norm_sq(z) < radius_ * radius_;
  case Kind::Polydisc:
    for (std::size_t i = 0; i < z.size(); ++i)
      if (!(std::norm(z[i]) < radii_[i] * radii_[i])) return false;
    return true;
  case Kind::HartogsLift: {
    const auto n = static_cast<std::size_t>(lift_->base.ambient_dim());
    const auto zb = z.first(n);
    if (!lift_->base.contains(zb)) return false;
    const double phi = lift_->weight.value_or_inf(zb);
    if (!std::isfinite(phi)) return false;
    return norm_sq(z.subspan(n)) < std::exp(-phi / lift_->k);
  }
  }
  return false;
}

bool DomainSpec::contains(const Point& p) const {
  if (p.dim() != static_cast<std::size_t>(dim_))
    throw InvalidArgument("contains: point dimension does not match the domain");
  return contains(p.coords());
}

std::vector<double> DomainSpec::bounding_box() const {
  switch (kind_) {
  case Kind::Ball: return std::vector<double>(dim_, radius_);
  case Kind::Polydisc: return radii_;
  case Kind::HartogsLift: {
    auto box = lift_->base.bounding_box();
    const double fiber = std::exp(-lift_->weight.infimum() / (2.0 * lift_->k));
    box.insert(box.end(), lift_->k, fiber);
    return box;
  }
  }
  return {};
}

bool contains(const DomainSpec& domain, const Point& p) { return domain.contains(p); }

SubvarietySpec::SubvarietySpec(int ambient_dim, int codim)
    : ambient_dim_(ambient_dim), codim_(codim) {
  if (codim < 1 || codim > ambient_dim)
    throw InvalidArgument("subvariety codimension must lie in [1, ambient_dim]");
}

std::vector<Complex> SubvarietySpec::generators(const Point& p) const {
  if (p.dim() != static_cast<std::size_t>(ambient_dim_))
    throw InvalidArgument("generators: point dimension does not match the ambient space");
  auto g = p.slice(0, codim_);
  return {g.begin(), g.end()};
}

double SubvarietySpec::generator_norm(const Point& p) const {
  if (p.dim() != static_cast<std::size_t>(ambient_dim_))
    throw InvalidArgument("generator_norm: point dimension does not match the ambient space");
  return norm(p.slice(0, codim_));
}

bool SubvarietySpec::on_subvariety(const Point& p) const { return generator_norm(p) == 0.0; }

SubvarietySpec lift_generators(const SubvarietySpec& v) {
  if (v.lifted_) throw InvalidArgument("lift_generators expects a base subvariety");
  SubvarietySpec lifted(v.ambient_dim_ + v.codim_, v.codim_);
  lifted.lifted_ = true;
  return lifted;
}

} // namespace l2ext
