/*
 * Copyright 2026 The Semmap Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "semmap/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace semmap {

double cuboid_volume(const Cuboid& c) { return c.extent.prod(); }

double overlap_volume(const Cuboid& a, const Cuboid& b) {
  const Eigen::Vector3d lo = a.min_corner().cwiseMax(b.min_corner());
  const Eigen::Vector3d hi = a.max_corner().cwiseMin(b.max_corner());
  const Eigen::Vector3d side = (hi - lo).cwiseMax(0.0);
  return side.prod();
}

double iou3d(const Cuboid& a, const Cuboid& b) {
  const double overlap = overlap_volume(a, b);
  if (overlap <= 0.0) return 0.0;
  const double uni = cuboid_volume(a) + cuboid_volume(b) - overlap;
  return overlap / uni;
}

Cuboid fit_axis_aligned_cuboid(const PointSet& points, double min_extent) {
  if (points.empty()) throw std::invalid_argument("empty instance");
  Eigen::Vector3d lo = points.front();
  Eigen::Vector3d hi = points.front();
  for (const Eigen::Vector3d& p : points) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  Cuboid c;
  c.centroid = 0.5 * (lo + hi);
  c.extent = (hi - lo).cwiseMax(min_extent);
  return c;
}

RigidPose compose(const RigidPose& a, const RigidPose& b) {
  RigidPose out;
  out.rotation = a.rotation * b.rotation;
  out.translation = a.rotation * b.translation + a.translation;
  return out;
}

RigidPose inverse(const RigidPose& p) {
  RigidPose out;
  out.rotation = p.rotation.conjugate();
  out.translation = -(out.rotation * p.translation);
  return out;
}

Eigen::Vector3d apply(const RigidPose& p, const Eigen::Vector3d& x) {
  return p.rotation * x + p.translation;
}

double rotation_angle(const RigidPose& p) {
  const double vec_norm = p.rotation.vec().norm();
  return 2.0 * std::atan2(vec_norm, std::abs(p.rotation.w()));
}

}  // namespace semmap
