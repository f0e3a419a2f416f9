// Copyright 2026 The dynkit Authors
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

// 6D spatial vector algebra in coordinates. Motion vectors are stacked
// (angular; linear), force vectors (moment; force). All types are small
// values; nothing here allocates.

#ifndef DYNKIT_SPATIAL_HPP_
#define DYNKIT_SPATIAL_HPP_

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace dynkit {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat6 = Eigen::Matrix<double, 6, 6>;

/// Default absolute tolerance for internal consistency checks.
inline constexpr double kDefaultTolerance = 1e-12;

/// Skew-symmetric cross-product matrix: skew(p) * x == p.cross(x).
inline Mat3 skew(const Vec3& p) {
  Mat3 s;
  s << 0.0, -p.z(), p.y(),
       p.z(), 0.0, -p.x(),
       -p.y(), p.x(), 0.0;
  return s;
}

/// Spatial motion vector (velocity, acceleration, joint axis).
class MotionVector {
 public:
  MotionVector() : data_(Vec6::Zero()) {}
  MotionVector(const Vec3& ang, const Vec3& lin) {
    data_.head<3>() = ang;
    data_.tail<3>() = lin;
  }
  explicit MotionVector(const Vec6& coeffs) : data_(coeffs) {}

  static MotionVector Zero() { return MotionVector(); }

  Vec3 ang() const { return data_.head<3>(); }
  Vec3 lin() const { return data_.tail<3>(); }
  const Vec6& coeffs() const { return data_; }
  double operator[](int i) const { return data_[i]; }

  bool is_finite() const { return data_.allFinite(); }

  MotionVector& operator+=(const MotionVector& o) {
    data_ += o.data_;
    return *this;
  }
  MotionVector& operator-=(const MotionVector& o) {
    data_ -= o.data_;
    return *this;
  }
  friend MotionVector operator+(MotionVector a, const MotionVector& b) {
    return a += b;
  }
  friend MotionVector operator-(MotionVector a, const MotionVector& b) {
    return a -= b;
  }
  friend MotionVector operator-(const MotionVector& a) {
    return MotionVector(Vec6(-a.data_));
  }
  friend MotionVector operator*(double s, const MotionVector& a) {
    return MotionVector(Vec6(s * a.data_));
  }
  friend MotionVector operator*(const MotionVector& a, double s) {
    return s * a;
  }

 private:
  Vec6 data_;
};

/// Spatial force vector (moment about the frame origin; linear force).
class ForceVector {
 public:
  ForceVector() : data_(Vec6::Zero()) {}
  ForceVector(const Vec3& moment, const Vec3& force) {
    data_.head<3>() = moment;
    data_.tail<3>() = force;
  }
  explicit ForceVector(const Vec6& coeffs) : data_(coeffs) {}

  static ForceVector Zero() { return ForceVector(); }

  Vec3 moment() const { return data_.head<3>(); }
  Vec3 force() const { return data_.tail<3>(); }
  const Vec6& coeffs() const { return data_; }
  double operator[](int i) const { return data_[i]; }

  bool is_finite() const { return data_.allFinite(); }

  ForceVector& operator+=(const ForceVector& o) {
    data_ += o.data_;
    return *this;
  }
  ForceVector& operator-=(const ForceVector& o) {
    data_ -= o.data_;
    return *this;
  }
  friend ForceVector operator+(ForceVector a, const ForceVector& b) {
    return a += b;
  }
  friend ForceVector operator-(ForceVector a, const ForceVector& b) {
    return a -= b;
  }
  friend ForceVector operator-(const ForceVector& a) {
    return ForceVector(Vec6(-a.data_));
  }
  friend ForceVector operator*(double s, const ForceVector& a) {
    return ForceVector(Vec6(s * a.data_));
  }
  friend ForceVector operator*(const ForceVector& a, double s) {
    return s * a;
  }

 private:
  Vec6 data_;
};

/// Power pairing v . f.
inline double dot(const MotionVector& v, const ForceVector& f) {
  return v.coeffs().dot(f.coeffs());
}

/// (v x) w.
inline MotionVector cross_motion(const MotionVector& v, const MotionVector& w) {
  const Vec3 om = v.ang();
  const Vec3 wa = w.ang();
  return MotionVector(om.cross(wa), v.lin().cross(wa) + om.cross(w.lin()));
}

/// (v x*) f.
inline ForceVector cross_force(const MotionVector& v, const ForceVector& f) {
  const Vec3 om = v.ang();
  const Vec3 fl = f.force();
  return ForceVector(om.cross(f.moment()) + v.lin().cross(fl), om.cross(fl));
}

/// 6x6 matrix of (v x).
Mat6 motion_cross_matrix(const MotionVector& v);

/// 6x6 matrix of (v x*) == -(v x)^T.
Mat6 force_cross_matrix(const MotionVector& v);

/// Dense 6x6 operator from motion space to force space. Used for the
/// body-level factorizations and their composites; no structure assumed.
class RateMatrix {
 public:
  RateMatrix() : m_(Mat6::Zero()) {}
  explicit RateMatrix(const Mat6& m) : m_(m) {}

  static RateMatrix Zero() { return RateMatrix(); }

  const Mat6& matrix() const { return m_; }
  Mat6& mutable_matrix() { return m_; }

  /// A v.
  ForceVector operator*(const MotionVector& v) const {
    return ForceVector(Vec6(m_ * v.coeffs()));
  }
  /// A^T v. A^T is again a map from motion to force space.
  ForceVector transpose_apply(const MotionVector& v) const {
    return ForceVector(Vec6(m_.transpose() * v.coeffs()));
  }
  RateMatrix transpose() const { return RateMatrix(Mat6(m_.transpose())); }

  RateMatrix& operator+=(const RateMatrix& o) {
    m_ += o.m_;
    return *this;
  }
  RateMatrix& operator-=(const RateMatrix& o) {
    m_ -= o.m_;
    return *this;
  }
  friend RateMatrix operator+(RateMatrix a, const RateMatrix& b) {
    return a += b;
  }
  friend RateMatrix operator-(RateMatrix a, const RateMatrix& b) {
    return a -= b;
  }
  friend RateMatrix operator*(double s, const RateMatrix& a) {
    return RateMatrix(Mat6(s * a.m_));
  }

 private:
  Mat6 m_;
};

/// Motion-to-force operator of the shape [[A, 0], [-S(g), 0]]. The
/// Niemeyer-Slotine factorization has this shape and congruence preserves
/// it, so composites are stored as (A, g) instead of a dense 6x6.
class CompactRateMatrix {
 public:
  CompactRateMatrix() : a_(Mat3::Zero()), g_(Vec3::Zero()) {}
  CompactRateMatrix(const Mat3& upper_left, const Vec3& lower_axial)
      : a_(upper_left), g_(lower_axial) {}

  const Mat3& upper_left() const { return a_; }
  const Vec3& lower_axial() const { return g_; }
  Mat3& mutable_upper_left() { return a_; }
  Vec3& mutable_lower_axial() { return g_; }

  void set_zero() {
    a_.setZero();
    g_.setZero();
  }

  RateMatrix full() const;

  /// B v = (A w; -g x w) for v = (w; u).
  ForceVector operator*(const MotionVector& v) const {
    const Vec3 w = v.ang();
    return ForceVector(a_ * w, w.cross(g_));
  }
  /// B^T v = (A^T w + g x u; 0).
  ForceVector transpose_apply(const MotionVector& v) const {
    return ForceVector(a_.transpose() * v.ang() + g_.cross(v.lin()),
                       Vec3::Zero());
  }

 private:
  Mat3 a_;
  Vec3 g_;
};

/// The operator (f xbar*) with (f xbar*) v == (v x*) f.
inline RateMatrix cross_force_swapped(const ForceVector& f) {
  const Mat3 sn = skew(f.moment());
  const Mat3 sf = skew(f.force());
  Mat6 m;
  m.topLeftCorner<3, 3>() = -sn;
  m.topRightCorner<3, 3>() = -sf;
  m.bottomLeftCorner<3, 3>() = -sf;
  m.bottomRightCorner<3, 3>().setZero();
  return RateMatrix(m);
}

class PluckerTransform;

/// Rigid-body spatial inertia in the 10-parameter form
/// (mass, first moment m*c, rotational inertia about the frame origin).
class SpatialInertia {
 public:
  SpatialInertia() : mass_(0.0), h_(Vec3::Zero()), rot_(Mat3::Zero()) {}
  SpatialInertia(double mass, const Vec3& com_moment, const Mat3& rot_inertia)
      : mass_(mass), h_(com_moment), rot_(rot_inertia) {}

  /// Body of `mass` with centre of mass `com` and rotational inertia
  /// `inertia_about_com` taken about the centre of mass.
  static SpatialInertia FromCom(double mass, const Vec3& com,
                                const Mat3& inertia_about_com);
  static SpatialInertia Zero() { return SpatialInertia(); }

  double mass() const { return mass_; }
  const Vec3& com_moment() const { return h_; }
  const Mat3& rot_inertia() const { return rot_; }

  /// Block realization [[Ibar, S(h)], [S(h)^T, m 1]].
  Mat6 matrix() const;

  /// I v.
  ForceVector operator*(const MotionVector& v) const {
    const Vec3 om = v.ang();
    const Vec3 vl = v.lin();
    return ForceVector(rot_ * om + h_.cross(vl), mass_ * vl - h_.cross(om));
  }

  /// this += X^T other X, without temporaries.
  void add_congruence(const PluckerTransform& x, const SpatialInertia& other);

  SpatialInertia& operator+=(const SpatialInertia& o) {
    mass_ += o.mass_;
    h_ += o.h_;
    rot_ += o.rot_;
    return *this;
  }
  friend SpatialInertia operator+(SpatialInertia a, const SpatialInertia& b) {
    return a += b;
  }

 private:
  double mass_;
  Vec3 h_;
  Mat3 rot_;
};

inline ForceVector apply_inertia(const SpatialInertia& inertia,
                                 const MotionVector& v) {
  return inertia * v;
}

/// Plucker transform jXi changing motion-vector coordinates from frame i to
/// frame j. `rot` maps frame-i coordinates to frame-j coordinates and
/// `trans` is the origin of j expressed in frame i, so the 6x6 form is
/// [[E, 0], [-E S(p), E]].
class PluckerTransform {
 public:
  PluckerTransform() : rot_(Mat3::Identity()), trans_(Vec3::Zero()) {}
  PluckerTransform(const Mat3& rot, const Vec3& trans)
      : rot_(rot), trans_(trans) {}

  static PluckerTransform Identity() { return PluckerTransform(); }

  const Mat3& rot() const { return rot_; }
  const Vec3& trans() const { return trans_; }

  Mat6 matrix() const;

  /// True when rot is orthonormal with determinant +1 within `tol`.
  bool is_valid(double tol = kDefaultTolerance) const;

  /// X v.
  MotionVector apply(const MotionVector& v) const {
    const Vec3 om = v.ang();
    return MotionVector(rot_ * om, rot_ * (v.lin() - trans_.cross(om)));
  }
  /// X^-T f: force coordinates from frame i to frame j.
  ForceVector apply_force(const ForceVector& f) const {
    const Vec3 fl = f.force();
    return ForceVector(rot_ * (f.moment() - trans_.cross(fl)), rot_ * fl);
  }
  /// X^T f: force coordinates from frame j back to frame i.
  ForceVector apply_transpose(const ForceVector& f) const {
    const Vec3 fl = rot_.transpose() * f.force();
    return ForceVector(rot_.transpose() * f.moment() + trans_.cross(fl), fl);
  }

  PluckerTransform inverse() const {
    return PluckerTransform(rot_.transpose(), -(rot_ * trans_));
  }

  /// Composition: (a * b) applies b first.
  friend PluckerTransform operator*(const PluckerTransform& a,
                                    const PluckerTransform& b) {
    return PluckerTransform(a.rot_ * b.rot_,
                            b.trans_ + b.rot_.transpose() * a.trans_);
  }

 private:
  Mat3 rot_;
  Vec3 trans_;
};

inline MotionVector transform_motion(const PluckerTransform& x,
                                     const MotionVector& v) {
  return x.apply(v);
}

inline ForceVector transform_force(const PluckerTransform& x,
                                   const ForceVector& f) {
  return x.apply_force(f);
}

/// X^T I X: re-expresses an inertia given in the destination frame of X in
/// the source frame of X (child to parent for X = iX_p(i)).
SpatialInertia congruence(const PluckerTransform& x,
                          const SpatialInertia& inertia);

/// X^T A X for a general motion-to-force operator.
RateMatrix congruence(const PluckerTransform& x, const RateMatrix& a);

/// acc += X^T A X. `acc` must not alias `a`.
void add_congruence(const PluckerTransform& x, const RateMatrix& a,
                    RateMatrix& acc);

/// acc += X^T A X in compact form. `acc` must not alias `a`.
void add_congruence(const PluckerTransform& x, const CompactRateMatrix& a,
                    CompactRateMatrix& acc);

}  // namespace dynkit

#endif  // DYNKIT_SPATIAL_HPP_
