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

#ifndef SEMMAP_OBJECT_MAP_HPP_
#define SEMMAP_OBJECT_MAP_HPP_

#include <string>
#include <vector>

#include "semmap/geometry.hpp"

namespace semmap {

/// A set of labeled cuboids over a shared class vocabulary. Class ids are
/// 1-based indices into `class_vocabulary`; id 0 is the reserved background
/// label and never appears in the vocabulary.
struct ObjectMap {
  std::vector<Cuboid> objects;
  std::vector<std::string> class_vocabulary;

  int num_classes() const { return static_cast<int>(class_vocabulary.size()); }
  /// Label ids including background: [0, num_classes].
  int num_labels() const { return num_classes() + 1; }
};

/// The 30 indoor object classes used throughout; id i+1 maps to entry i.
const std::vector<std::string>& default_vocabulary();

/// Label distribution with all mass on `class_id` (size num_labels,
/// background at index 0).
Eigen::VectorXd one_hot_labels(int class_id, int num_labels);

/// Checks extent positivity, label_probs normalization/size and the
/// class-id/argmax agreement. Throws std::invalid_argument with `where`
/// prefixed to the message.
void validate_cuboid(const Cuboid& c, int num_labels,
                     const std::string& where = "cuboid");

/// Throws std::invalid_argument unless both maps share one vocabulary.
void require_shared_vocabulary(const ObjectMap& a, const ObjectMap& b);

}  // namespace semmap

#endif  // SEMMAP_OBJECT_MAP_HPP_
