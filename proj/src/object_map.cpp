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

#include "semmap/object_map.hpp"

#include <cmath>
#include <stdexcept>

namespace semmap {

const std::vector<std::string>& default_vocabulary() {
  static const std::vector<std::string> kClasses = {
      "bottle",       "cup",       "knife",   "bowl",      "wine glass",
      "fork",         "spoon",     "banana",  "apple",     "orange",
      "cake",         "potted plant", "mouse", "keyboard",  "laptop",
      "cellphone",    "book",      "clock",   "chair",     "dining table",
      "couch",        "bed",       "toilet",  "monitor",   "microwave",
      "toaster",      "refrigerator", "oven", "sink",      "person"};
  return kClasses;
}

Eigen::VectorXd one_hot_labels(int class_id, int num_labels) {
  if (class_id < 0 || class_id >= num_labels)
    throw std::invalid_argument("one_hot_labels: class id out of range");
  Eigen::VectorXd probs = Eigen::VectorXd::Zero(num_labels);
  probs[class_id] = 1.0;
  return probs;
}

void validate_cuboid(const Cuboid& c, int num_labels,
                     const std::string& where) {
  if (!(c.extent.array() > 0.0).all())
    throw std::invalid_argument(where + ": non-positive extent");
  if (c.class_id < 0 || c.class_id >= num_labels)
    throw std::invalid_argument(where + ": class id out of range");
  if (!(c.confidence >= 0.0 && c.confidence <= 1.0))
    throw std::invalid_argument(where + ": confidence outside [0, 1]");
  if (c.label_probs.size() != 0) {
    if (c.label_probs.size() != num_labels)
      throw std::invalid_argument(where + ": label_probs size mismatch");
    if ((c.label_probs.array() < 0.0).any())
      throw std::invalid_argument(where + ": negative label probability");
    if (std::abs(c.label_probs.sum() - 1.0) > 1e-6)
      throw std::invalid_argument(where + ": label_probs do not sum to 1");
    int argmax = 0;
    c.label_probs.maxCoeff(&argmax);
    if (c.label_probs[c.class_id] != c.label_probs[argmax])
      throw std::invalid_argument(where +
                                  ": class id is not the label argmax");
  }
}

void require_shared_vocabulary(const ObjectMap& a, const ObjectMap& b) {
  if (a.class_vocabulary != b.class_vocabulary)
    throw std::invalid_argument("object maps use different vocabularies");
}

}  // namespace semmap
