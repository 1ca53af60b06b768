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

#include "semmap/instances.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "semmap/rng.hpp"

namespace semmap {
namespace {

struct UnionFind {
  explicit UnionFind(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<int> parent;
};

std::uint64_t cell_key(const Eigen::Vector3d& p, double cell) {
  const auto ix = static_cast<std::int64_t>(std::floor(p.x() / cell));
  const auto iy = static_cast<std::int64_t>(std::floor(p.y() / cell));
  const auto iz = static_cast<std::int64_t>(std::floor(p.z() / cell));
  return mix_seed(static_cast<std::uint64_t>(ix),
                  static_cast<std::uint64_t>(iy),
                  static_cast<std::uint64_t>(iz));
}

std::uint64_t cell_key(std::int64_t ix, std::int64_t iy, std::int64_t iz) {
  return mix_seed(static_cast<std::uint64_t>(ix),
                  static_cast<std::uint64_t>(iy),
                  static_cast<std::uint64_t>(iz));
}

bool lex_less(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  if (a.x() != b.x()) return a.x() < b.x();
  if (a.y() != b.y()) return a.y() < b.y();
  return a.z() < b.z();
}

void validate(const ClusterParams& params) {
  if (!(params.max_link_distance > 0.0))
    throw std::invalid_argument("max_link_distance must be positive");
  if (params.min_cluster_points < 1)
    throw std::invalid_argument("min_cluster_points must be >= 1");
}

}  // namespace

std::map<int, PointSet> split_by_class(const LabeledPointCloud& cloud) {
  std::map<int, PointSet> by_class;
  for (const LabeledPoint& p : cloud.points)
    by_class[p.class_id].push_back(p.position);
  return by_class;
}

std::vector<PointSet> euclidean_cluster(const PointSet& points,
                                        const ClusterParams& params) {
  validate(params);
  const int n = static_cast<int>(points.size());
  if (n == 0) return {};

  const double cell = params.max_link_distance;
  const double link_sq = params.max_link_distance * params.max_link_distance;

  // Hash collisions between distinct cells only add candidates; the exact
  // distance test below keeps the result identical to brute force.
  std::unordered_map<std::uint64_t, std::vector<int>> grid;
  grid.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) grid[cell_key(points[i], cell)].push_back(i);

  UnionFind uf(n);
  for (int i = 0; i < n; ++i) {
    const Eigen::Vector3d& p = points[i];
    const auto ix = static_cast<std::int64_t>(std::floor(p.x() / cell));
    const auto iy = static_cast<std::int64_t>(std::floor(p.y() / cell));
    const auto iz = static_cast<std::int64_t>(std::floor(p.z() / cell));
    for (std::int64_t dx = -1; dx <= 1; ++dx)
      for (std::int64_t dy = -1; dy <= 1; ++dy)
        for (std::int64_t dz = -1; dz <= 1; ++dz) {
          auto it = grid.find(cell_key(ix + dx, iy + dy, iz + dz));
          if (it == grid.end()) continue;
          for (int j : it->second) {
            if (j <= i) continue;
            if ((points[j] - p).squaredNorm() <= link_sq) uf.unite(i, j);
          }
        }
  }

  std::map<int, std::vector<int>> components;  // root -> member indices
  for (int i = 0; i < n; ++i) components[uf.find(i)].push_back(i);

  struct Entry {
    Eigen::Vector3d min_point;
    PointSet cluster;
  };
  std::vector<Entry> entries;
  for (auto& [root, members] : components) {
    if (static_cast<int>(members.size()) < params.min_cluster_points) continue;
    Entry e;
    e.min_point = points[members.front()];
    for (int idx : members) {
      e.cluster.push_back(points[idx]);
      if (lex_less(points[idx], e.min_point)) e.min_point = points[idx];
    }
    entries.push_back(std::move(e));
  }
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) {
              return lex_less(a.min_point, b.min_point);
            });

  std::vector<PointSet> clusters;
  clusters.reserve(entries.size());
  for (Entry& e : entries) clusters.push_back(std::move(e.cluster));
  return clusters;
}

ObjectMap extract_object_map(const LabeledPointCloud& cloud,
                             const ClusterParams& params,
                             const std::vector<std::string>& vocabulary) {
  validate(params);
  ObjectMap map;
  map.class_vocabulary = vocabulary;
  const int num_labels = map.num_labels();
  for (const auto& [class_id, points] : split_by_class(cloud)) {
    if (class_id == kBackgroundId) continue;
    if (class_id < 0 || class_id >= num_labels)
      throw std::invalid_argument("point class id outside vocabulary");
    for (const PointSet& cluster : euclidean_cluster(points, params)) {
      Cuboid c = fit_axis_aligned_cuboid(cluster);
      c.class_id = class_id;
      c.label_probs = one_hot_labels(class_id, num_labels);
      c.confidence = 1.0;
      map.objects.push_back(std::move(c));
    }
  }
  return map;
}

ObjectMap instance_map_from_ids(const LabeledPointCloud& cloud,
                                const std::vector<std::string>& vocabulary) {
  ObjectMap map;
  map.class_vocabulary = vocabulary;
  const int num_labels = map.num_labels();

  std::map<int, std::vector<const LabeledPoint*>> by_instance;
  for (const LabeledPoint& p : cloud.points) {
    if (p.instance_id == kNoInstance)
      throw std::invalid_argument("instance ids required");
    by_instance[p.instance_id].push_back(&p);
  }

  for (const auto& [instance_id, members] : by_instance) {
    std::map<int, int> votes;
    PointSet points;
    points.reserve(members.size());
    for (const LabeledPoint* p : members) {
      ++votes[p->class_id];
      points.push_back(p->position);
    }
    int best_class = kBackgroundId;
    int best_count = -1;
    for (const auto& [class_id, count] : votes) {
      if (count > best_count) {  // ascending iteration: ties keep lowest id
        best_count = count;
        best_class = class_id;
      }
    }
    if (best_class < 0 || best_class >= num_labels)
      throw std::invalid_argument("point class id outside vocabulary");
    Cuboid c = fit_axis_aligned_cuboid(points);
    c.class_id = best_class;
    c.label_probs = one_hot_labels(best_class, num_labels);
    c.confidence = 1.0;
    map.objects.push_back(std::move(c));
  }
  return map;
}

}  // namespace semmap
