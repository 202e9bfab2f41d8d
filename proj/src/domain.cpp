#include "freeplate/domain.hpp"

#include <boost/math/special_functions/beta.hpp>

#include <array>
#include <cmath>
#include <numbers>

#include "freeplate/errors.hpp"
#include "freeplate/expression.hpp"

namespace freeplate {
namespace {

void check_dim(int d) {
  if (d < 1 || d > kMaxDomainDim) {
    throw DomainError("dimension must be in [1, " + std::to_string(kMaxDomainDim) + "]");
  }
}

Eigen::VectorXd center_or_zero(const Eigen::VectorXd& center, int d) {
  if (center.size() == 0) return Eigen::VectorXd::Zero(d);
  if (center.size() != d) throw DomainError("center has the wrong dimension");
  return center;
}

double squared_distance(std::span<const double> y, const Eigen::VectorXd& c) {
  double s = 0.0;
  for (Eigen::Index k = 0; k < c.size(); ++k) {
    const double t = y[static_cast<std::size_t>(k)] - c[k];
    s += t * t;
  }
  return s;
}

BoundingBox cube_around(const Eigen::VectorXd& c, double half) {
  return {c.array() - half, c.array() + half};
}

// Midpoint count over n^d cells, one row (last axis) at a time.
double count_cells(const Membership& member, const BoundingBox& bbox, long n) {
  const int d = static_cast<int>(bbox.lo.size());
  const Eigen::VectorXd h = (bbox.hi - bbox.lo) / static_cast<double>(n);
  std::array<long, kMaxDomainDim> idx{};
  std::array<double, kMaxDomainDim> y{};
  long hits = 0;
  for (;;) {
    for (int k = 0; k < d; ++k) y[static_cast<std::size_t>(k)] = bbox.lo[k] + (idx[static_cast<std::size_t>(k)] + 0.5) * h[k];
    if (member(std::span<const double>(y.data(), static_cast<std::size_t>(d)))) ++hits;
    int k = 0;
    while (k < d && ++idx[static_cast<std::size_t>(k)] == n) idx[static_cast<std::size_t>(k++)] = 0;
    if (k == d) break;
  }
  return static_cast<double>(hits) * h.prod();
}

}  // namespace

double unit_ball_volume(int d) {
  return std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
}

double ball_cap_volume(int d, double r, double h) {
  if (h <= 0.0) return 0.0;
  const double full = unit_ball_volume(d) * std::pow(r, d);
  if (h >= 2.0 * r) return full;
  if (h > r) return full - ball_cap_volume(d, r, 2.0 * r - h);
  const double x = (2.0 * r * h - h * h) / (r * r);
  return 0.5 * full * boost::math::ibeta(0.5 * (d + 1), 0.5, x);
}

Domain::Domain(std::string name, int dim, Membership member, BoundingBox bbox,
               VolumeEstimate volume, std::optional<BallInfo> ball)
    : name_(std::move(name)),
      dim_(dim),
      member_(std::make_shared<const Membership>(std::move(member))),
      bbox_(std::move(bbox)),
      volume_(volume),
      ball_(std::move(ball)),
      translation_(Eigen::VectorXd::Zero(dim)) {
  check_dim(dim);
  if (bbox_.lo.size() != dim || bbox_.hi.size() != dim) throw DomainError("bbox has the wrong dimension");
  if (!((bbox_.hi - bbox_.lo).array() > 0.0).all()) throw DomainError("bbox must have positive extent");
}

bool Domain::contains(std::span<const double> x) const {
  std::array<double, kMaxDomainDim> y{};
  for (int k = 0; k < dim_; ++k) {
    y[static_cast<std::size_t>(k)] = (x[static_cast<std::size_t>(k)] - translation_[k]) / scale_;
  }
  const std::span<const double> ys(y.data(), static_cast<std::size_t>(dim_));
  for (int k = 0; k < dim_; ++k) {
    if (ys[static_cast<std::size_t>(k)] < bbox_.lo[k] || ys[static_cast<std::size_t>(k)] > bbox_.hi[k]) return false;
  }
  return (*member_)(ys);
}

bool Domain::contains(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  if (x.size() != dim_) throw DomainError("point has the wrong dimension");
  return contains(std::span<const double>(x.data(), static_cast<std::size_t>(dim_)));
}

BoundingBox Domain::bbox() const {
  return {scale_ * bbox_.lo + translation_, scale_ * bbox_.hi + translation_};
}

VolumeEstimate Domain::volume() const {
  const double factor = std::pow(scale_, dim_);
  return {volume_.value * factor, volume_.error * factor, volume_.exact};
}

std::optional<BallInfo> Domain::ball() const {
  if (!ball_) return std::nullopt;
  return BallInfo{scale_ * ball_->center + translation_, scale_ * ball_->radius};
}

Domain Domain::scaled(double s) const {
  if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("scale must be positive");
  Domain out = *this;
  out.scale_ *= s;
  out.translation_ *= s;
  return out;
}

Domain Domain::translated(const Eigen::VectorXd& t) const {
  if (t.size() != dim_) throw DomainError("translation has the wrong dimension");
  Domain out = *this;
  out.translation_ += t;
  return out;
}

Domain make_ball(int d, double radius, const Eigen::VectorXd& center) {
  check_dim(d);
  if (!(radius > 0.0)) throw DomainError("radius must be positive");
  const Eigen::VectorXd c = center_or_zero(center, d);
  const double r2 = radius * radius;
  return Domain("ball", d,
                [c, r2](std::span<const double> y) { return squared_distance(y, c) < r2; },
                cube_around(c, radius),
                {unit_ball_volume(d) * std::pow(radius, d), 0.0, true}, BallInfo{c, radius});
}

Domain make_ellipsoid(const Eigen::VectorXd& semiaxes, const Eigen::VectorXd& center) {
  const int d = static_cast<int>(semiaxes.size());
  check_dim(d);
  if (!(semiaxes.array() > 0.0).all()) throw DomainError("semiaxes must be positive");
  const Eigen::VectorXd c = center_or_zero(center, d);
  const Eigen::VectorXd inv = semiaxes.cwiseInverse();
  return Domain("ellipsoid", d,
                [c, inv](std::span<const double> y) {
                  double s = 0.0;
                  for (Eigen::Index k = 0; k < c.size(); ++k) {
                    const double t = (y[static_cast<std::size_t>(k)] - c[k]) * inv[k];
                    s += t * t;
                  }
                  return s < 1.0;
                },
                {c - semiaxes, c + semiaxes},
                {unit_ball_volume(d) * semiaxes.prod(), 0.0, true});
}

Domain make_box(const Eigen::VectorXd& sides, const Eigen::VectorXd& center) {
  const int d = static_cast<int>(sides.size());
  check_dim(d);
  if (!(sides.array() > 0.0).all()) throw DomainError("sides must be positive");
  const Eigen::VectorXd c = center_or_zero(center, d);
  const Eigen::VectorXd half = 0.5 * sides;
  return Domain("box", d,
                [c, half](std::span<const double> y) {
                  for (Eigen::Index k = 0; k < c.size(); ++k) {
                    if (std::abs(y[static_cast<std::size_t>(k)] - c[k]) >= half[k]) return false;
                  }
                  return true;
                },
                {c - half, c + half}, {sides.prod(), 0.0, true});
}

Domain make_annulus(int d, double inner, double outer, const Eigen::VectorXd& center) {
  check_dim(d);
  if (!(inner > 0.0) || !(outer > inner)) throw DomainError("annulus needs 0 < inner < outer");
  const Eigen::VectorXd c = center_or_zero(center, d);
  const double lo2 = inner * inner;
  const double hi2 = outer * outer;
  return Domain("annulus", d,
                [c, lo2, hi2](std::span<const double> y) {
                  const double s = squared_distance(y, c);
                  return s > lo2 && s < hi2;
                },
                cube_around(c, outer),
                {unit_ball_volume(d) * (std::pow(outer, d) - std::pow(inner, d)), 0.0, true});
}

Domain make_two_balls(const Eigen::VectorXd& c1, double r1, const Eigen::VectorXd& c2, double r2) {
  const int d = static_cast<int>(c1.size());
  check_dim(d);
  if (c2.size() != d) throw DomainError("centers have different dimensions");
  if (!(r1 > 0.0) || !(r2 > 0.0)) throw DomainError("radii must be positive");
  const double dist = (c1 - c2).norm();
  const double v1 = unit_ball_volume(d) * std::pow(r1, d);
  const double v2 = unit_ball_volume(d) * std::pow(r2, d);
  double overlap = 0.0;
  if (dist <= std::abs(r1 - r2)) {
    overlap = std::min(v1, v2);
  } else if (dist < r1 + r2) {
    // Plane of the intersection sphere at distance x1 from c1.
    const double x1 = (dist * dist + r1 * r1 - r2 * r2) / (2.0 * dist);
    overlap = ball_cap_volume(d, r1, r1 - x1) + ball_cap_volume(d, r2, r2 - (dist - x1));
  }
  const double s1 = r1 * r1;
  const double s2 = r2 * r2;
  const BoundingBox box{(c1.array() - r1).min(c2.array() - r2), (c1.array() + r1).max(c2.array() + r2)};
  return Domain("two_balls", d,
                [c1, c2, s1, s2](std::span<const double> y) {
                  return squared_distance(y, c1) < s1 || squared_distance(y, c2) < s2;
                },
                box, {v1 + v2 - overlap, 0.0, true});
}

Domain make_implicit(int d, const std::string& expr, const BoundingBox& bbox,
                     std::optional<double> volume) {
  check_dim(d);
  const Expression e = Expression::parse(expr, d);
  Membership member = [e](std::span<const double> y) { return e.holds(y); };
  VolumeEstimate v;
  if (volume) {
    if (!(*volume > 0.0)) throw DomainError("volume must be positive");
    v = {*volume, 0.0, true};
  } else {
    v = estimate_volume(member, bbox);
    if (!(v.value > 0.0)) throw DomainError("implicit domain '" + expr + "' is empty inside its bbox");
  }
  return Domain("implicit", d, std::move(member), bbox, v);
}

VolumeEstimate estimate_volume(const Membership& member, const BoundingBox& bbox, int n) {
  const int d = static_cast<int>(bbox.lo.size());
  check_dim(d);
  if (n <= 0) n = 2 * static_cast<int>(std::lround(0.5 * std::pow(2.0, 24.0 / d)));
  if (n < 4) n = 4;
  if (std::pow(static_cast<double>(n), d) > 1e8) {
    throw DomainError("volume grid too large in dimension " + std::to_string(d) + "; give the volume");
  }
  const double fine = count_cells(member, bbox, n);
  const double coarse = count_cells(member, bbox, n / 2);
  return {fine, std::abs(fine - coarse), false};
}

}  // namespace freeplate
