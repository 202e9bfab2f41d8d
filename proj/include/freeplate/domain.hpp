#pragma once

#include <Eigen/Dense>

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>

namespace freeplate {

inline constexpr int kMaxDomainDim = 32;

/// |B_1| in dimension d.
double unit_ball_volume(int d);

struct BoundingBox {
  Eigen::VectorXd lo;
  Eigen::VectorXd hi;

  double volume() const { return (hi - lo).prod(); }
  double diameter() const { return (hi - lo).norm(); }
  Eigen::VectorXd center() const { return 0.5 * (lo + hi); }
};

struct VolumeEstimate {
  double value = 0.0;
  double error = 0.0;
  bool exact = false;
};

struct BallInfo {
  Eigen::VectorXd center;
  double radius = 1.0;
};

/// Membership test in the shape's own coordinates.
using Membership = std::function<bool(std::span<const double>)>;

/// A bounded region of R^d given by a membership predicate, placed in space
/// by x = scale * y + translation with y in the shape's own coordinates.
class Domain {
 public:
  Domain(std::string name, int dim, Membership member, BoundingBox bbox,
         VolumeEstimate volume, std::optional<BallInfo> ball = std::nullopt);

  int dim() const noexcept { return dim_; }
  const std::string& name() const noexcept { return name_; }

  bool contains(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  bool contains(std::span<const double> x) const;

  BoundingBox bbox() const;
  VolumeEstimate volume() const;
  /// Set for balls: center and radius after scaling and translation.
  std::optional<BallInfo> ball() const;

  double scale() const noexcept { return scale_; }
  const Eigen::VectorXd& translation() const noexcept { return translation_; }

  /// s * Omega, scaling about the origin.
  Domain scaled(double s) const;
  /// Omega + t.
  Domain translated(const Eigen::VectorXd& t) const;

 private:
  std::string name_;
  int dim_;
  std::shared_ptr<const Membership> member_;
  BoundingBox bbox_;
  VolumeEstimate volume_;
  std::optional<BallInfo> ball_;
  double scale_ = 1.0;
  Eigen::VectorXd translation_;
};

Domain make_ball(int d, double radius, const Eigen::VectorXd& center = {});
Domain make_ellipsoid(const Eigen::VectorXd& semiaxes, const Eigen::VectorXd& center = {});
Domain make_box(const Eigen::VectorXd& sides, const Eigen::VectorXd& center = {});
/// inner < |x - center| < outer.
Domain make_annulus(int d, double inner, double outer, const Eigen::VectorXd& center = {});
/// Union of two balls; the volume accounts for the overlap lens.
Domain make_two_balls(const Eigen::VectorXd& c1, double r1, const Eigen::VectorXd& c2, double r2);
/// Points of the box where `expr` holds. Without a given volume it is
/// estimated on a midpoint grid (see estimate_volume).
Domain make_implicit(int d, const std::string& expr, const BoundingBox& bbox,
                     std::optional<double> volume = std::nullopt);

/// Volume of {member} inside the box by midpoint counting on n^d cells, with
/// error |V_n - V_(n/2)|. n defaults so that n^d is about 2^24.
VolumeEstimate estimate_volume(const Membership& member, const BoundingBox& bbox, int n = 0);

/// Volume of the part of a d-ball of radius r cut off by a plane at
/// distance r - h from the center, 0 <= h <= 2r.
double ball_cap_volume(int d, double r, double h);

}  // namespace freeplate
