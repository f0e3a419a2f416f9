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

#include "dynkit/dynamics.hpp"

namespace dynkit {

std::string_view to_string(FactorizationKind kind) {
  switch (kind) {
    case FactorizationKind::kSimple:
      return "simple";
    case FactorizationKind::kNiemeyerSlotine:
      return "niemeyer_slotine";
  }
  return "unknown";
}

std::optional<FactorizationKind> parse_factorization(std::string_view name) {
  if (name == "simple") return FactorizationKind::kSimple;
  if (name == "niemeyer_slotine" || name == "ns") {
    return FactorizationKind::kNiemeyerSlotine;
  }
  return std::nullopt;
}

void body_factorization(FactorizationKind kind, const MotionVector& v,
                        const SpatialInertia& inertia, RateMatrix& out) {
  const Vec3 w = v.ang();
  const Vec3 u = v.lin();
  const Vec3& h = inertia.com_moment();
  const Mat3& rot = inertia.rot_inertia();
  const double m = inertia.mass();
  Mat6& b = out.mutable_matrix();
  if (kind == FactorizationKind::kSimple) {
    // (v x*) I = [[S(w) Ibar - S(u) S(h), S(w) S(h) + m S(u)],
    //             [-S(w) S(h), m S(w)]], S(a) S(b) == b a^T - (a . b) 1.
    for (int c = 0; c < 3; ++c) b.block<3, 1>(0, c) = w.cross(rot.col(c));
    b.topLeftCorner<3, 3>().noalias() -= h * u.transpose();
    b.topLeftCorner<3, 3>().diagonal().array() += u.dot(h);
    b.bottomLeftCorner<3, 3>().noalias() = -h * w.transpose();
    b.bottomLeftCorner<3, 3>().diagonal().array() += w.dot(h);
    b.topRightCorner<3, 3>() = m * skew(u) - b.bottomLeftCorner<3, 3>();
    b.bottomRightCorner<3, 3>() = m * skew(w);
    return;
  }
  // 1/2 ((v x*) I + (I v xbar*) - I (v x)) expanded blockwise. With
  // (n; f) = I v the right block column cancels and the lower-left block
  // is -S(f); the upper-left block is
  // 1/2 (S(w) Ibar - Ibar S(w) - h u^T - u h^T - S(n)) + (u . h) 1.
  const Vec3 n = rot * w + h.cross(u);
  const Vec3 f = m * u - h.cross(w);
  const double uh = u.dot(h);
  for (int c = 0; c < 3; ++c) {
    const int c1 = (c + 1) % 3;
    const int c2 = (c + 2) % 3;
    for (int r = 0; r < 3; ++r) {
      const int r1 = (r + 1) % 3;
      const int r2 = (r + 2) % 3;
      const double sw_i = w[r1] * rot(r2, c) - w[r2] * rot(r1, c);
      const double i_sw = rot(r, c1) * w[c2] - rot(r, c2) * w[c1];
      b(r, c) = 0.5 * (sw_i - i_sw - h[r] * u[c] - u[r] * h[c]);
    }
    b(c, c) += uh;
    // -1/2 S(n) above, -S(f) below.
    b(c1, c) -= 0.5 * n[c2];
    b(c2, c) += 0.5 * n[c1];
    b(3 + c, c) = 0.0;
    b(3 + c1, c) = -f[c2];
    b(3 + c2, c) = f[c1];
  }
  b.rightCols<3>().setZero();
}

void body_factorization_ns(const MotionVector& v, const SpatialInertia& inertia,
                           CompactRateMatrix& out) {
  const Vec3 w = v.ang();
  const Vec3 u = v.lin();
  const Vec3& h = inertia.com_moment();
  const Mat3& rot = inertia.rot_inertia();
  const Vec3 n = rot * w + h.cross(u);
  out.mutable_lower_axial() = inertia.mass() * u - h.cross(w);
  // Same upper-left block as the dense path; Ibar symmetric gives
  // S(w) Ibar - Ibar S(w) == K + K^T with K = S(w) Ibar.
  Mat3 k;
  for (int c = 0; c < 3; ++c) k.col(c) = w.cross(rot.col(c));
  k.noalias() -= h * u.transpose();
  Mat3& a = out.mutable_upper_left();
  a = 0.5 * (k + k.transpose());
  a.diagonal().array() += u.dot(h);
  a(1, 0) -= 0.5 * n[2];
  a(2, 0) += 0.5 * n[1];
  a(0, 1) += 0.5 * n[2];
  a(2, 1) -= 0.5 * n[0];
  a(0, 2) -= 0.5 * n[1];
  a(1, 2) += 0.5 * n[0];
}

RateMatrix body_factorization(FactorizationKind kind, const MotionVector& v,
                              const SpatialInertia& inertia) {
  RateMatrix out;
  body_factorization(kind, v, inertia, out);
  return out;
}

}  // namespace dynkit
