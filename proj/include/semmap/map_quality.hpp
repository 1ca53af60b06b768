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

#ifndef SEMMAP_MAP_QUALITY_HPP_
#define SEMMAP_MAP_QUALITY_HPP_

#include <array>
#include <utility>
#include <vector>

#include "semmap/object_map.hpp"

namespace semmap {

/// Greedy per-class detection/ground-truth matching. Detections are
/// processed in descending confidence (ties: descending best-IoU, then
/// ascending index); each claims the unclaimed same-class ground truth
/// with the highest IoU when that IoU reaches the threshold.
struct MatchResult {
  struct Pair {
    int est_index;
    int gt_index;
    double iou;
  };
  std::vector<Pair> pairs;        // by ascending est index
  std::vector<int> unmatched_est;  // false positives
  std::vector<int> unmatched_gt;   // false negatives
  double iou_threshold = 0.0;
};

MatchResult match_detections(const ObjectMap& est, const ObjectMap& gt,
                             double iou_threshold);

/// AP integration rule: 101-point interpolated sampling (default) or the
/// exact area under the monotone envelope over achieved recalls.
enum class ApIntegration { kGrid101, kContinuous };

struct PRCurve {
  std::vector<Eigen::Vector2d> points;  // (recall, precision) envelope
  double ap = 0.0;
};

/// Per-class precision-recall curve at one IoU threshold. A class absent
/// from both maps yields an empty curve; detections without any ground
/// truth yield AP 0.
PRCurve pr_curve(const ObjectMap& est, const ObjectMap& gt, int class_id,
                 double iou_threshold,
                 ApIntegration integration = ApIntegration::kGrid101);

inline constexpr int kNumMapThresholds = 15;

/// IoU thresholds 0.25:0.05:0.95.
const std::array<double, kNumMapThresholds>& map_iou_thresholds();

struct MapScores {
  double map3d = 0.0;  // mean AP over classes and all 15 thresholds
  double map25 = 0.0;  // mean AP at IoU 0.25
  double map50 = 0.0;  // mean AP at IoU 0.50
  std::vector<int> class_ids;    // evaluated classes, ascending
  Eigen::MatrixXd per_class_ap;  // |class_ids| x 15
};

/// mAP over the union of classes present in either map. Classes with
/// detections but no ground truth contribute AP 0; classes absent from
/// both contribute nothing.
MapScores map3d(const ObjectMap& est, const ObjectMap& gt,
                ApIntegration integration = ApIntegration::kGrid101);

/// Error-breakdown PR curves. iou75/iou50/iou25 are plain curves at those
/// thresholds. loc is the curve at IoU 0.10 with duplicate detections on
/// already-claimed ground truths dropped; bg additionally drops detections
/// with zero IoU against every same-class ground truth; fn removes all
/// remaining errors and is the unit curve by construction. Curves are
/// class-averaged unless `pooled`, which ranks all classes' detections in
/// one sweep.
struct BreakdownCurves {
  PRCurve iou75, iou50, iou25, loc, bg, fn;
};

BreakdownCurves error_breakdown_curves(const ObjectMap& est,
                                       const ObjectMap& gt,
                                       bool pooled = false);

/// Pairwise object quality: geometric mean of spatial quality (3D IoU)
/// and label quality (probability the estimate gives the ground truth's
/// class). Zero whenever either factor is zero.
double pairwise_quality(const Cuboid& estimate, const Cuboid& ground_truth);

/// False-positive cost: the largest non-background label probability.
double fp_cost(const Cuboid& estimate);

/// Maximum-total-quality assignment (Kuhn-Munkres on the padded square
/// matrix). Zero-quality assignments are treated as unassigned. Returns
/// (row, column) pairs by ascending row.
std::vector<std::pair<int, int>> optimal_assignment(
    const Eigen::MatrixXd& quality);

struct OmqReport {
  double omq = 0.0;
  double mpoq = 0.0;  // mean pairwise quality of true positives
  double mlq = 0.0;   // mean label quality of true positives
  double msq = 0.0;   // mean spatial quality (3D IoU) of true positives
  double mfpq = 0.0;  // mean false-positive cost (0 when no FPs)
  int n_tp = 0;
  int n_fn = 0;
  int n_fp = 0;
  std::vector<double> q_tp;
  std::vector<double> c_fp;
};

/// Object map quality: sum of assigned true-positive qualities over
/// (n_tp + n_fn + summed false-positive costs).
OmqReport omq(const ObjectMap& est, const ObjectMap& gt);

/// Case-over-baseline score ratios. A zero baseline yields NaN (reported
/// downstream as an undefined marker, never infinity).
struct RatioScores {
  double rmap = 1.0;
  double rap25 = 1.0;
  double rap50 = 1.0;
  double romq = 1.0;
};

RatioScores ratio_scores(const MapScores& scores, const OmqReport& quality,
                         const MapScores& baseline_scores,
                         const OmqReport& baseline_quality);

}  // namespace semmap

#endif  // SEMMAP_MAP_QUALITY_HPP_
