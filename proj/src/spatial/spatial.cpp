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

#include "dynkit/spatial.hpp"

#include <cmath>

namespace dynkit {

Mat6 motion_cross_matrix(const MotionVector& v) {
  const Mat3 sw = skew(v.ang());
  Mat6 m;
  m << sw, Mat3::Zero(),
       skew(v.lin()), sw;
  return m;
}

Mat6 force_cross_matrix(const MotionVector& v) {
  const Mat3 sw = skew(v.ang());
  Mat6 m;
  m << sw, skew(v.lin()),
       Mat3::Zero(), sw;
  return m;
}

SpatialInertia SpatialInertia::FromCom(double mass, const Vec3& com,
                                       const Mat3& inertia_about_com) {
  const Mat3 sc = skew(com);
  // Parallel-axis shift to the frame origin.
  return SpatialInertia(mass, mass * com,
                        inertia_about_com - mass * sc * sc);
}

Mat6 SpatialInertia::matrix() const {
  const Mat3 sh = skew(h_);
  Mat6 m;
  m << rot_, sh,
       sh.transpose(), mass_ * Mat3::Identity();
  return m;
}

Mat6 PluckerTransform::matrix() const {
  Mat6 m;
  m << rot_, Mat3::Zero(),
       -rot_ * skew(trans_), rot_;
  return m;
}

bool PluckerTransform::is_valid(double tol) const {
  if (!rot_.allFinite() || !trans_.allFinite()) return false;
  const double ortho =
      (rot_.transpose() * rot_ - Mat3::Identity()).cwiseAbs().maxCoeff();
  return ortho <= tol && std::abs(rot_.determinant() - 1.0) <= tol;
}

namespace {

// S(r) m, column by column.
Mat3 skew_mul(const Vec3& r, const Mat3& m) {
  Mat3 out;
  for (int c = 0; c < 3; ++c) out.col(c) = r.cross(m.col(c));
  return out;
}

// m S(r), row by row.
Mat3 mul_skew(const Mat3& m, const Vec3& r) {
  Mat3 out;
  for (int k = 0; k < 3; ++k) {
    out.row(k) = Vec3(m.row(k).transpose()).cross(r).transpose();
  }
  return out;
}

}  // namespace

void SpatialInertia::add_congruence(const PluckerTransform& x,
                                    const SpatialInertia& other) {
  const Mat3& e = x.rot();
  const Vec3& r = x.trans();
  const double m = other.mass_;
  const Vec3 eh = e.transpose() * other.h_;
  const Vec3 h = eh + m * r;
  Mat3 ie;
  ie.noalias() = other.rot_ * e;
  rot_.noalias() += e.transpose() * ie;
  // - S(r) S(eh) - S(h) S(r), with S(a) S(b) == b a^T - (a . b) 1.
  rot_.noalias() -= eh * r.transpose();
  rot_.noalias() -= r * h.transpose();
  rot_.diagonal().array() += r.dot(eh) + h.dot(r);
  mass_ += m;
  h_ += h;
}

SpatialInertia congruence(const PluckerTransform& x,
                          const SpatialInertia& inertia) {
  SpatialInertia out;
  out.add_congruence(x, inertia);
  return out;
}

void add_congruence(const PluckerTransform& x, const RateMatrix& a,
                    RateMatrix& acc) {
  // X = diag(E, E) T with T = [[1, 0], [-S(r), 1]]: rotate the blocks,
  // then shift by r. A block column or row of A that is exactly zero stays
  // exactly zero and is skipped.
  const Mat3& e = x.rot();
  const Vec3& r = x.trans();
  const Mat6& am = a.matrix();
  Mat6& out = acc.mutable_matrix();
  const bool right_zero = (am.rightCols<3>().array() == 0.0).all();
  const bool bottom_zero = (am.bottomRows<3>().array() == 0.0).all();

  Mat3 t;
  Mat3 c11;
  Mat3 c21;
  t.noalias() = am.topLeftCorner<3, 3>() * e;
  c11.noalias() = e.transpose() * t;
  if (bottom_zero) {
    c21.setZero();
  } else {
    t.noalias() = am.bottomLeftCorner<3, 3>() * e;
    c21.noalias() = e.transpose() * t;
  }
  if (!right_zero) {
    Mat3 c12;
    Mat3 c22;
    t.noalias() = am.topRightCorner<3, 3>() * e;
    c12.noalias() = e.transpose() * t;
    if (bottom_zero) {
      c22.setZero();
    } else {
      t.noalias() = am.bottomRightCorner<3, 3>() * e;
      c22.noalias() = e.transpose() * t;
    }
    // A T = [[c11 - c12 S, c12], [c21 - c22 S, c22]].
    c11 -= mul_skew(c12, r);
    c21 -= mul_skew(c22, r);
    // T^T (A T) adds S times the lower block row to the upper one.
    out.topRightCorner<3, 3>() += c12 + skew_mul(r, c22);
    out.bottomRightCorner<3, 3>() += c22;
  }
  out.topLeftCorner<3, 3>() += c11 + skew_mul(r, c21);
  out.bottomLeftCorner<3, 3>() += c21;
}

RateMatrix CompactRateMatrix::full() const {
  Mat6 m = Mat6::Zero();
  m.topLeftCorner<3, 3>() = a_;
  m.bottomLeftCorner<3, 3>() = -skew(g_);
  return RateMatrix(m);
}

void add_congruence(const PluckerTransform& x, const CompactRateMatrix& a,
                    CompactRateMatrix& acc) {
  // The lower block -S(g) maps to -S(E^T g); the upper block gains
  // -S(r) S(g') = (r . g') 1 - g' r^T.
  const Mat3& e = x.rot();
  const Vec3& r = x.trans();
  const Vec3 g = e.transpose() * a.lower_axial();
  Mat3 t;
  t.noalias() = a.upper_left() * e;
  Mat3& out = acc.mutable_upper_left();
  out.noalias() += e.transpose() * t;
  out.noalias() -= g * r.transpose();
  out.diagonal().array() += r.dot(g);
  acc.mutable_lower_axial() += g;
}

RateMatrix congruence(const PluckerTransform& x, const RateMatrix& a) {
  RateMatrix out;
  add_congruence(x, a, out);
  return out;
}

}  // namespace dynkit
