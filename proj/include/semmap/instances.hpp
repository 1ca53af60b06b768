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

#ifndef SEMMAP_INSTANCES_HPP_
#define SEMMAP_INSTANCES_HPP_

#include <map>
#include <vector>

#include "semmap/object_map.hpp"

namespace semmap {

inline constexpr int kNoInstance = -1;

struct LabeledPoint {
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  int class_id = kBackgroundId;
  int instance_id = kNoInstance;
};

/// Class-labeled (optionally instance-labeled) global point cloud; the
/// input to instance extraction.
struct LabeledPointCloud {
  std::vector<LabeledPoint> points;
};

struct ClusterParams {
  double max_link_distance = 0.10;  // meters
  int min_cluster_points = 20;
};

/// Partition of the cloud's points by class id; the union of the values
/// equals the input.
std::map<int, PointSet> split_by_class(const LabeledPointCloud& cloud);

/// Single-linkage connected components under Euclidean distance
/// <= max_link_distance, computed on a uniform spatial hash grid with cell
/// size equal to the link distance. Components smaller than
/// min_cluster_points are discarded. Clusters are ordered by their
/// lexicographically smallest point, and points within a cluster are in
/// input order, so the result is independent of internal hashing.
std::vector<PointSet> euclidean_cluster(const PointSet& points,
                                        const ClusterParams& params);

/// Per-class clustering followed by axis-aligned cuboid fitting. Output
/// cuboids carry one-hot labels on their class and confidence 1.
ObjectMap extract_object_map(const LabeledPointCloud& cloud,
                             const ClusterParams& params,
                             const std::vector<std::string>& vocabulary);

/// One cuboid per instance id; class is the majority class of the
/// instance's points (ties broken by lowest class id). Throws
/// std::invalid_argument when any point lacks an instance id.
ObjectMap instance_map_from_ids(const LabeledPointCloud& cloud,
                                const std::vector<std::string>& vocabulary);

}  // namespace semmap

#endif  // SEMMAP_INSTANCES_HPP_
