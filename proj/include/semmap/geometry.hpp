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

#ifndef SEMMAP_GEOMETRY_HPP_
#define SEMMAP_GEOMETRY_HPP_

#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace semmap {

/// Reserved label id for free space / unlabeled; never part of the
/// class vocabulary. Object class ids are 1-based indices into it.
inline constexpr int kBackgroundId = 0;

/// World-axis-aligned box parameterized by its centroid and full side
/// lengths. The unit of object-map evaluation.
///
/// `label_probs`, when non-empty, has one entry per label id (background
/// at index 0, then the vocabulary in order) and sums to 1. An empty
/// vector means a one-hot distribution on `class_id`.
struct Cuboid {
  Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
  Eigen::Vector3d extent = Eigen::Vector3d::Ones();  // full lengths, > 0
  int class_id = kBackgroundId;
  Eigen::VectorXd label_probs;  // empty = implied one-hot on class_id
  double confidence = 1.0;

  Eigen::Vector3d min_corner() const { return centroid - 0.5 * extent; }
  Eigen::Vector3d max_corner() const { return centroid + 0.5 * extent; }
  bool contains(const Eigen::Vector3d& p) const {
    return (p.array() >= min_corner().array()).all() &&
           (p.array() <= max_corner().array()).all();
  }
};

/// Probability the cuboid assigns to `label_id` (implied one-hot when no
/// explicit distribution is stored).
inline double label_probability(const Cuboid& c, int label_id) {
  if (c.label_probs.size() == 0) return label_id == c.class_id ? 1.0 : 0.0;
  if (label_id < 0 || label_id >= c.label_probs.size()) return 0.0;
  return c.label_probs[label_id];
}

/// Rigid transform (SE(3)): x_out = rotation * x + translation.
struct RigidPose {
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();
  Eigen::Quaterniond rotation = Eigen::Quaterniond::Identity();
};

using PointSet = std::vector<Eigen::Vector3d>;

double cuboid_volume(const Cuboid& c);
double overlap_volume(const Cuboid& a, const Cuboid& b);

/// Intersection volume over union volume; 1 iff the boxes coincide,
/// 0 when disjoint on any axis.
double iou3d(const Cuboid& a, const Cuboid& b);

/// Smallest axis-aligned cuboid containing all points. Extents are floored
/// at `min_extent` so degenerate (flat or single-point) sets keep a
/// positive volume. Class, labels and confidence are left for the caller.
/// Throws std::invalid_argument on an empty point set.
Cuboid fit_axis_aligned_cuboid(const PointSet& points,
                               double min_extent = 1e-6);

/// apply(compose(a, b), x) == apply(a, apply(b, x)).
RigidPose compose(const RigidPose& a, const RigidPose& b);
RigidPose inverse(const RigidPose& p);
Eigen::Vector3d apply(const RigidPose& p, const Eigen::Vector3d& x);

/// Rotation angle of the pose in radians, in [0, pi].
double rotation_angle(const RigidPose& p);

}  // namespace semmap

#endif  // SEMMAP_GEOMETRY_HPP_
