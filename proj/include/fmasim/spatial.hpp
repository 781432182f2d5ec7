// Copyright 2026 The fmasim Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Rotations, poses, twists, wrenches and the 6x6 spatial force transform.
//
// Wrenches are ordered (force; moment) and twists (linear; angular). A
// SpatialTransform built from the rotation R of frame F1 in F0 and the
// position p of the F1 origin in F0 maps a wrench expressed in F1 to the
// equivalent wrench in F0:
//
//        | R      0 |
//   X =  |          |
//        | [p]x R  R |
//
// Orientation angles use fixed X-Y-Z axes: R = Rz(phi_z) * Ry(phi_y) * Rx(phi_x).

#ifndef FMASIM_SPATIAL_HPP_
#define FMASIM_SPATIAL_HPP_

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

namespace fmasim {

using Vector3 = Eigen::Vector3d;
using Vector6 = Eigen::Matrix<double, 6, 1>;
using Matrix3 = Eigen::Matrix3d;
using Matrix6 = Eigen::Matrix<double, 6, 6>;

// Proper rotation matrix. Construction does not re-orthonormalise; callers
// are expected to pass matrices that are already orthonormal.
class Rotation {
 public:
  Rotation() : m_(Matrix3::Identity()) {}
  explicit Rotation(const Matrix3& m) : m_(m) {}

  static Rotation identity() { return Rotation(); }
  static Rotation about_x(double a) {
    return Rotation(Eigen::AngleAxisd(a, Vector3::UnitX()).toRotationMatrix());
  }
  static Rotation about_y(double a) {
    return Rotation(Eigen::AngleAxisd(a, Vector3::UnitY()).toRotationMatrix());
  }
  static Rotation about_z(double a) {
    return Rotation(Eigen::AngleAxisd(a, Vector3::UnitZ()).toRotationMatrix());
  }

  const Matrix3& matrix() const { return m_; }
  Rotation inverse() const { return Rotation(m_.transpose()); }
  Rotation operator*(const Rotation& o) const { return Rotation(m_ * o.m_); }
  Vector3 operator*(const Vector3& v) const { return m_ * v; }

  // max |RᵀR - I| and |det R - 1|.
  double orthonormality_error() const {
    const double ortho =
        (m_.transpose() * m_ - Matrix3::Identity()).cwiseAbs().maxCoeff();
    return std::max(ortho, std::abs(m_.determinant() - 1.0));
  }

 private:
  Matrix3 m_;
};

// Wraps an angle to (-pi, pi].
inline double wrap_angle(double a) {
  constexpr double kPi = std::numbers::pi;
  double w = std::remainder(a, 2.0 * kPi);
  if (w <= -kPi) w += 2.0 * kPi;
  return w;
}

struct EulerXYZ {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

inline Rotation rotation_from_fixed_euler(double phi_x, double phi_y,
                                          double phi_z) {
  return Rotation::about_z(phi_z) * Rotation::about_y(phi_y) *
         Rotation::about_x(phi_x);
}

// Inverse of rotation_from_fixed_euler away from phi_y = ±pi/2.
inline EulerXYZ fixed_euler_from_rotation(const Rotation& r) {
  const Matrix3& m = r.matrix();
  EulerXYZ e;
  e.y = std::atan2(-m(2, 0), std::hypot(m(0, 0), m(1, 0)));
  e.x = wrap_angle(std::atan2(m(2, 1), m(2, 2)));
  e.z = wrap_angle(std::atan2(m(1, 0), m(0, 0)));
  e.y = wrap_angle(e.y);
  return e;
}

struct Pose {
  Vector3 position = Vector3::Zero();
  EulerXYZ orientation;

  Rotation rotation() const {
    return rotation_from_fixed_euler(orientation.x, orientation.y,
                                     orientation.z);
  }
  Vector6 as_vector() const {
    Vector6 u;
    u << position, orientation.x, orientation.y, orientation.z;
    return u;
  }
  static Pose from(const Rotation& r, const Vector3& p) {
    return Pose{p, fixed_euler_from_rotation(r)};
  }
};

struct Wrench {
  Vector3 force = Vector3::Zero();
  Vector3 moment = Vector3::Zero();

  static Wrench from_vector(const Vector6& w) {
    return Wrench{w.head<3>(), w.tail<3>()};
  }
  Vector6 as_vector() const {
    Vector6 w;
    w << force, moment;
    return w;
  }
  bool is_finite() const { return as_vector().allFinite(); }
  Wrench operator+(const Wrench& o) const {
    return {force + o.force, moment + o.moment};
  }
  Wrench operator-(const Wrench& o) const {
    return {force - o.force, moment - o.moment};
  }
  Wrench operator*(double s) const { return {force * s, moment * s}; }
};

struct Twist {
  Vector3 linear = Vector3::Zero();
  Vector3 angular = Vector3::Zero();

  static Twist from_vector(const Vector6& t) {
    return Twist{t.head<3>(), t.tail<3>()};
  }
  Vector6 as_vector() const {
    Vector6 t;
    t << linear, angular;
    return t;
  }
  bool is_finite() const { return as_vector().allFinite(); }
};

inline Matrix3 skew(const Vector3& v) {
  Matrix3 s;
  s << 0.0, -v.z(), v.y(),  //
      v.z(), 0.0, -v.x(),   //
      -v.y(), v.x(), 0.0;
  return s;
}

class SpatialTransform {
 public:
  SpatialTransform() = default;
  SpatialTransform(const Rotation& r, const Vector3& p) : r_(r), p_(p) {}

  static SpatialTransform identity() { return {}; }

  const Rotation& rotation() const { return r_; }
  const Vector3& translation() const { return p_; }

  Matrix6 matrix() const {
    Matrix6 x = Matrix6::Zero();
    x.topLeftCorner<3, 3>() = r_.matrix();
    x.bottomLeftCorner<3, 3>() = skew(p_) * r_.matrix();
    x.bottomRightCorner<3, 3>() = r_.matrix();
    return x;
  }

  SpatialTransform inverse() const {
    const Rotation rt = r_.inverse();
    return {rt, -(rt * p_)};
  }

 private:
  Rotation r_;
  Vector3 p_ = Vector3::Zero();
};

inline SpatialTransform spatial_force_transform(const Rotation& r,
                                                const Vector3& p) {
  return {r, p};
}

inline Wrench transform_wrench(const SpatialTransform& x, const Wrench& w) {
  const Vector3 f = x.rotation() * w.force;
  return {f, x.translation().cross(f) + x.rotation() * w.moment};
}

// Matrix product x1 * x2: apply x2 first, then x1.
inline SpatialTransform compose(const SpatialTransform& x1,
                                const SpatialTransform& x2) {
  return {x1.rotation() * x2.rotation(),
          x1.translation() + x1.rotation() * x2.translation()};
}

// Force/torque sensor frame relative to the tool frame of the PowerCube
// test bed: a half turn about X_T followed by a quarter turn about Z_T,
// sensor and tool origins coincident.
inline Rotation sensor_to_tool_rotation() {
  Matrix3 r;
  r << 0.0, -1.0, 0.0,  //
      -1.0, 0.0, 0.0,   //
      0.0, 0.0, -1.0;
  return Rotation(r);
}

inline SpatialTransform sensor_to_tool_transform() {
  return spatial_force_transform(sensor_to_tool_rotation(), Vector3::Zero());
}

}  // namespace fmasim

#endif  // FMASIM_SPATIAL_HPP_
