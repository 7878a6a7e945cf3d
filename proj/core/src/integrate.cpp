#include "l2ext/integrate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <queue>
#include <thread>

#include "l2ext/constants.hpp"
#include "l2ext/errors.hpp"
#include "l2ext/rng.hpp"

namespace l2ext {
namespace {

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077830272555360, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
// Gauss weights for the odd-indexed Kronrod abscissae.
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gauss_kronrod21(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double kronrod = kWgk[10] * fc;
  double gauss = 0.0;
  for (int j = 0; j < 10; ++j) {
    const double dx = h * kXgk[j];
    const double sum = f(c - dx) + f(c + dx);
    kronrod += kWgk[j] * sum;
    if (j % 2 == 1) gauss += kWg[j / 2] * sum;
  }
  return {a, b, kronrod * h, std::abs((kronrod - gauss) * h)};
}

} // namespace

QuadratureResult integrate_interval(const std::function<double(double)>& f, double a, double b,
                                    const AdaptiveOptions& opts) {
  if (!std::isfinite(a) || !std::isfinite(b)) throw InvalidArgument("integration bounds must be finite");
  QuadratureResult out;
  if (a == b) return out;
  const double sign = (b > a) ? 1.0 : -1.0;
  if (b < a) std::swap(a, b);

  std::priority_queue<Segment> heap;
  heap.push(gauss_kronrod21(f, a, b));
  std::int64_t nodes = 21;
  double value = heap.top().value;
  double error = heap.top().error;

  auto done = [&] { return error <= std::max(opts.abs_tol, opts.rel_tol * std::abs(value)); };

  bool capped = false;
  bool stalled = false;
  while (!done()) {
    if (nodes + 42 > opts.node_cap) { capped = true; break; }
    Segment worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) { stalled = true; break; }
    heap.pop();
    const Segment left = gauss_kronrod21(f, worst.a, mid);
    const Segment right = gauss_kronrod21(f, mid, worst.b);
    nodes += 42;
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }

  // Re-sum to avoid drift from the incremental updates.
  value = 0.0;
  error = 0.0;
  std::vector<Segment> segs;
  segs.reserve(heap.size());
  while (!heap.empty()) { segs.push_back(heap.top()); heap.pop(); }
  std::sort(segs.begin(), segs.end(), [](const Segment& x, const Segment& y) { return x.a < y.a; });
  for (const auto& s : segs) { value += s.value; error += s.error; }

  out.value = sign * value;
  out.error_estimate = error;
  out.samples_or_nodes = nodes;
  out.converged = !capped && std::isfinite(value) &&
                  (!stalled || error <= std::max(opts.abs_tol, 1e-8 * std::abs(value)));
  if (capped) out.warning = "node cap reached";
  else if (stalled) out.warning = "interval subdivision stalled";
  if (!std::isfinite(value)) out.warning = "integrand not integrable";
  return out;
}

QuadratureResult radial_integrate(const std::function<double(double)>& g, int k, double r_max,
                                  const AdaptiveOptions& opts) {
  if (k < 1) throw InvalidArgument("radial_integrate: k must be >= 1");
  if (!(r_max > 0.0 && r_max <= 1.0)) throw InvalidArgument("radial_integrate: r_max must lie in (0, 1]");
  const double mu = sigma_mu(k).mu;
  const int power = 2 * k - 1;
  auto res = integrate_interval([&](double r) { return g(r) * std::pow(r, power); }, 0.0, r_max, opts);
  res.value *= mu;
  res.error_estimate *= mu;
  return res;
}

// ---------------------------------------------------------------------------

McMoments mc_box_moments(std::span<const double> half_widths, int outputs,
                         const MomentIntegrand& fill, const McOptions& opts) {
  if (opts.samples < 1) throw InvalidArgument("Monte Carlo needs at least one sample");
  if (outputs < 1) throw InvalidArgument("Monte Carlo needs at least one output");
  if (opts.shards < 1) throw InvalidArgument("Monte Carlo needs at least one shard");
  const std::size_t dim = half_widths.size();
  double box_volume = 1.0;
  for (double h : half_widths) {
    if (!(h > 0.0) || !std::isfinite(h)) throw InvalidArgument("box half-widths must be > 0");
    box_volume *= 4.0 * h * h;
  }

  const auto nout = static_cast<std::size_t>(outputs);
  struct ShardSums {
    std::vector<double> sum, sumsq;
    std::int64_t accepted = 0, nonfinite = 0;
  };
  const int shards = opts.shards;
  std::vector<ShardSums> sums(static_cast<std::size_t>(shards));
  const std::vector<double> widths(half_widths.begin(), half_widths.end());

  auto run_shard = [&](int s) {
    ShardSums& acc = sums[static_cast<std::size_t>(s)];
    acc.sum.assign(nout, 0.0);
    acc.sumsq.assign(nout, 0.0);
    const std::int64_t begin = opts.samples * s / shards;
    const std::int64_t end = opts.samples * (s + 1) / shards;
    RngStream rng(opts.seed, static_cast<std::uint64_t>(s));
    std::vector<Complex> z(dim);
    std::vector<double> out(nout);
    for (std::int64_t i = begin; i < end; ++i) {
      for (std::size_t d = 0; d < dim; ++d) {
        const double re = (2.0 * rng.next_uniform() - 1.0) * widths[d];
        const double im = (2.0 * rng.next_uniform() - 1.0) * widths[d];
        z[d] = Complex(re, im);
      }
      if (!fill(z, out)) continue;
      ++acc.accepted;
      bool finite = true;
      for (double v : out) finite = finite && std::isfinite(v);
      if (!finite) { ++acc.nonfinite; continue; }
      for (std::size_t j = 0; j < nout; ++j) {
        acc.sum[j] += out[j];
        acc.sumsq[j] += out[j] * out[j];
      }
    }
  };

  int threads = opts.threads > 0 ? opts.threads : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, shards);
  if (threads == 1) {
    for (int s = 0; s < shards; ++s) run_shard(s);
  } else {
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (int s = t; s < shards; s += threads) run_shard(s);
        } catch (...) {
          errors[static_cast<std::size_t>(t)] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  // Fixed shard order keeps the reduction deterministic.
  McMoments m;
  m.samples = opts.samples;
  m.box_volume = box_volume;
  std::vector<double> sum(nout, 0.0), sumsq(nout, 0.0);
  for (const auto& acc : sums) {
    m.accepted += acc.accepted;
    m.nonfinite += acc.nonfinite;
    for (std::size_t j = 0; j < nout; ++j) {
      sum[j] += acc.sum[j];
      sumsq[j] += acc.sumsq[j];
    }
  }
  const auto n = static_cast<double>(opts.samples);
  m.value.resize(nout);
  m.half_width.resize(nout);
  for (std::size_t j = 0; j < nout; ++j) {
    const double mean = sum[j] / n;
    const double var = std::max(0.0, sumsq[j] / n - mean * mean);
    m.value[j] = box_volume * mean;
    m.half_width[j] = kZ99 * box_volume * std::sqrt(var / n);
  }
  return m;
}

QuadratureResult mc_box_integrate(std::span<const double> half_widths, const BoxIntegrand& f,
                                  const McOptions& opts) {
  const auto m = mc_box_moments(
      half_widths, 1,
      [&](std::span<const Complex> z, std::span<double> out) {
        const auto v = f(z);
        if (!v) return false;
        out[0] = *v;
        return true;
      },
      opts);
  QuadratureResult r;
  r.value = m.value[0];
  r.error_estimate = m.half_width[0];
  r.samples_or_nodes = m.samples;
  r.seed = opts.seed;
  r.rejected = m.samples - m.accepted;
  r.nonfinite = m.nonfinite;
  if (m.nonfinite > 0) r.warning = "non-finite integrand values were rejected";
  return r;
}

QuadratureResult mc_integrate(const DomainSpec& domain,
                              const std::function<double(const Point&)>& integrand,
                              const McOptions& opts) {
  const auto box = domain.bounding_box();
  const auto dim = static_cast<std::size_t>(domain.ambient_dim());
  // One scratch point per worker thread; the integrand sees a Point view.
  auto r = mc_box_integrate(
      box,
      [&](std::span<const Complex> z) -> std::optional<double> {
        if (!domain.contains(z)) return std::nullopt;
        thread_local Point p;
        if (p.dim() != dim) p = Point::zeros(dim);
        std::copy(z.begin(), z.end(), p.coords().begin());
        return integrand(p);
      },
      opts);
  const double rate = static_cast<double>(r.rejected) / static_cast<double>(r.samples_or_nodes);
  if (rate > opts.max_rejection)
    throw NumericalError("mc_integrate: rejection rate " + std::to_string(rate) +
                         " exceeds the limit (degenerate domain)");
  return r;
}

QuadratureResult mc_integrate(const DomainSpec& domain,
                              const std::function<double(const Point&)>& integrand,
                              std::int64_t samples, std::uint64_t seed) {
  McOptions opts;
  opts.samples = samples;
  opts.seed = seed;
  return mc_integrate(domain, integrand, opts);
}

// ---------------------------------------------------------------------------

RadialProfile slice_adapted(const RadialProfile& u, double zpp_norm) {
  if (!(zpp_norm >= 0.0 && zpp_norm < 1.0)) throw InvalidArgument("|z''| must lie in [0, 1)");
  const double log_c = std::log1p(-zpp_norm * zpp_norm);
  const double delta = log_c - u.blowup();
  return delta == 0.0 ? u : u.translated(delta);
}

FubiniSides fubini_sides(const RadialProfile& u, int k, double zpp_norm) {
  if (k < 1) throw InvalidArgument("fubini_sides: k must be >= 1");
  const RadialProfile uc = slice_adapted(u, zpp_norm);
  const double log_c = uc.blowup();
  const double mu = sigma_mu(k).mu;
  const double T = kFubiniTruncation;

  auto lhs = integrate_interval(
      [&](double t) { return std::exp(k * (t - uc(t))); }, T, log_c);
  lhs.value *= 0.5 * mu;
  // e^{-ku} <= 1 on the tail (u >= 0).
  lhs.error_estimate = 0.5 * mu * (lhs.error_estimate + std::exp(k * T) / k);

  auto rhs = integrate_interval(
      [&](double t) {
        const double s = uc.inverse(-t / k);
        return std::exp(k * s + t);
      },
      T, 0.0);
  rhs.value *= 0.5 * mu / k;
  // e^{k u^{-1}} <= e^{k log c} <= 1 on the tail.
  rhs.error_estimate = 0.5 * mu / k * (rhs.error_estimate + std::exp(T + k * log_c));

  return {lhs, rhs, uc};
}

QuadratureResult fubini_lift_volume(const RadialProfile& u, int k, double zpp_norm,
                                    const McOptions& opts) {
  const RadialProfile uc = slice_adapted(u, zpp_norm);
  const double c = 1.0 - zpp_norm * zpp_norm;
  const auto lift = make_hartogs_lift(DomainSpec::ball(std::sqrt(c), k), Weight::radial(uc, k), k);
  auto r = mc_integrate(lift, [](const Point&) { return 1.0; }, opts);
  const double sigma = sigma_mu(k).sigma;
  r.value /= sigma;
  r.error_estimate /= sigma;
  return r;
}

} // namespace l2ext
