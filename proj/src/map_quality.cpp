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

#include "semmap/map_quality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace semmap {
namespace {

constexpr int kGridPoints = 101;
constexpr double kLocThreshold = 0.10;

enum class Outcome : char { kTp, kFp, kDuplicate, kBackgroundFp };

// Everything needed to sweep one class at any threshold.
struct ClassEval {
  int class_id = 0;
  int n_gt = 0;
  std::vector<int> det_indices;   // est indices in ranked order
  std::vector<double> confidence; // per ranked detection
  std::vector<double> best_iou;   // max IoU over all same-class gts
  Eigen::MatrixXd iou;            // ranked detection x gt-of-class
};

ClassEval build_class_eval(const ObjectMap& est, const ObjectMap& gt,
                           int class_id) {
  ClassEval ce;
  ce.class_id = class_id;
  std::vector<int> gt_indices;
  for (int j = 0; j < static_cast<int>(gt.objects.size()); ++j)
    if (gt.objects[j].class_id == class_id) gt_indices.push_back(j);
  ce.n_gt = static_cast<int>(gt_indices.size());

  std::vector<int> dets;
  for (int i = 0; i < static_cast<int>(est.objects.size()); ++i)
    if (est.objects[i].class_id == class_id) dets.push_back(i);

  Eigen::MatrixXd iou(dets.size(), gt_indices.size());
  std::vector<double> best(dets.size(), 0.0);
  for (std::size_t d = 0; d < dets.size(); ++d) {
    for (std::size_t g = 0; g < gt_indices.size(); ++g) {
      iou(d, g) = iou3d(est.objects[dets[d]], gt.objects[gt_indices[g]]);
      best[d] = std::max(best[d], iou(d, g));
    }
  }

  std::vector<int> order(dets.size());
  for (std::size_t k = 0; k < dets.size(); ++k) order[k] = static_cast<int>(k);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const double ca = est.objects[dets[a]].confidence;
    const double cb = est.objects[dets[b]].confidence;
    if (ca != cb) return ca > cb;
    if (best[a] != best[b]) return best[a] > best[b];
    return dets[a] < dets[b];
  });

  ce.det_indices.reserve(dets.size());
  ce.confidence.reserve(dets.size());
  ce.best_iou.reserve(dets.size());
  ce.iou.resize(dets.size(), gt_indices.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    ce.det_indices.push_back(dets[order[k]]);
    ce.confidence.push_back(est.objects[dets[order[k]]].confidence);
    ce.best_iou.push_back(best[order[k]]);
    ce.iou.row(k) = iou.row(order[k]);
  }
  ce.gt_indices = std::move(gt_indices);
  return ce;
}

// Greedy claim sweep over the ranked detections. matched_gt (optional)
// receives the claimed gt column per detection, -1 when unmatched.
std::vector<Outcome> sweep_outcomes(const ClassEval& ce, double threshold,
                                    std::vector<int>* matched_gt = nullptr) {
  const int n_det = static_cast<int>(ce.det_indices.size());
  std::vector<Outcome> outcomes(n_det, Outcome::kFp);
  std::vector<char> claimed(ce.n_gt, 0);
  if (matched_gt) matched_gt->assign(n_det, -1);

  for (int d = 0; d < n_det; ++d) {
    int best_g = -1;
    double best = 0.0;
    for (int g = 0; g < ce.n_gt; ++g) {
      if (claimed[g]) continue;
      if (ce.iou(d, g) > best) {  // strict: ties keep the lowest gt index
        best = ce.iou(d, g);
        best_g = g;
      }
    }
    if (best_g >= 0 && best >= threshold) {
      claimed[best_g] = 1;
      outcomes[d] = Outcome::kTp;
      if (matched_gt) (*matched_gt)[d] = best_g;
      continue;
    }
    bool duplicate = false;
    for (int g = 0; g < ce.n_gt && !duplicate; ++g)
      duplicate = claimed[g] && ce.iou(d, g) >= threshold;
    if (duplicate)
      outcomes[d] = Outcome::kDuplicate;
    else if (ce.best_iou[d] == 0.0)
      outcomes[d] = Outcome::kBackgroundFp;
  }
  return outcomes;
}

// Monotone non-increasing precision envelope sampled at recalls
// {0, 0.01, ..., 1.00}: env[k] = max precision over sweep points whose
// recall is >= k/100, zero past the achieved recall.
std::array<double, kGridPoints> grid_envelope(
    const std::vector<double>& recall, const std::vector<double>& precision) {
  std::array<double, kGridPoints> env{};
  env.fill(0.0);
  const int n = static_cast<int>(recall.size());
  if (n == 0) return env;
  std::vector<double> suffix_max(n);
  double running = 0.0;
  for (int i = n - 1; i >= 0; --i) {
    running = std::max(running, precision[i]);
    suffix_max[i] = running;
  }
  for (int k = 0; k < kGridPoints; ++k) {
    const double r = static_cast<double>(k) / (kGridPoints - 1);
    const auto it = std::lower_bound(recall.begin(), recall.end(), r);
    if (it != recall.end())
      env[k] = suffix_max[static_cast<std::size_t>(it - recall.begin())];
  }
  return env;
}

double grid_ap(const std::array<double, kGridPoints>& env) {
  double sum = 0.0;
  for (double p : env) sum += p;
  return sum / kGridPoints;
}

double continuous_ap(const std::vector<double>& recall,
                     const std::vector<double>& precision) {
  const int n = static_cast<int>(recall.size());
  if (n == 0) return 0.0;
  std::vector<double> suffix_max(n);
  double running = 0.0;
  for (int i = n - 1; i >= 0; --i) {
    running = std::max(running, precision[i]);
    suffix_max[i] = running;
  }
  double ap = 0.0;
  double prev_recall = 0.0;
  for (int i = 0; i < n; ++i) {
    if (i + 1 < n && recall[i + 1] == recall[i]) continue;
    ap += (recall[i] - prev_recall) * suffix_max[i];
    prev_recall = recall[i];
  }
  return ap;
}

// Cumulative precision/recall over ranked binary TP flags.
void cumulative_sweep(const std::vector<char>& tp_flags, int n_gt,
                      std::vector<double>* recall,
                      std::vector<double>* precision) {
  recall->clear();
  precision->clear();
  int tp = 0;
  for (std::size_t i = 0; i < tp_flags.size(); ++i) {
    tp += tp_flags[i] ? 1 : 0;
    recall->push_back(n_gt > 0 ? static_cast<double>(tp) / n_gt : 0.0);
    precision->push_back(static_cast<double>(tp) /
                         static_cast<double>(i + 1));
  }
}

std::vector<int> present_classes(const ObjectMap& est, const ObjectMap& gt) {
  std::set<int> classes;
  for (const Cuboid& c : est.objects) classes.insert(c.class_id);
  for (const Cuboid& c : gt.objects) classes.insert(c.class_id);
  return {classes.begin(), classes.end()};
}

PRCurve curve_from_grid(const std::array<double, kGridPoints>& env) {
  PRCurve curve;
  curve.points.reserve(kGridPoints);
  for (int k = 0; k < kGridPoints; ++k)
    curve.points.emplace_back(static_cast<double>(k) / (kGridPoints - 1),
                              env[k]);
  curve.ap = grid_ap(env);
  return curve;
}

std::array<double, kGridPoints> unit_envelope() {
  std::array<double, kGridPoints> env{};
  env.fill(1.0);
  return env;
}

// One breakdown stage for one class: which outcomes are dropped from the
// ranked list and which threshold drives the claim sweep.
enum class Stage { kPlain75, kPlain50, kPlain25, kLoc, kBg, kFn };

struct StageSweep {
  std::vector<char> tp_flags;
  std::vector<double> confidence;  // aligned with tp_flags
  int n_gt = 0;
};

StageSweep stage_sweep(const ClassEval& ce, Stage stage) {
  double threshold = kLocThreshold;
  if (stage == Stage::kPlain75) threshold = 0.75;
  if (stage == Stage::kPlain50) threshold = 0.50;
  if (stage == Stage::kPlain25) threshold = 0.25;
  const std::vector<Outcome> outcomes = sweep_outcomes(ce, threshold);

  StageSweep sweep;
  sweep.n_gt = ce.n_gt;
  for (std::size_t d = 0; d < outcomes.size(); ++d) {
    const Outcome o = outcomes[d];
    const bool drop_duplicates = stage == Stage::kLoc || stage == Stage::kBg ||
                                 stage == Stage::kFn;
    const bool drop_background = stage == Stage::kBg || stage == Stage::kFn;
    if (drop_duplicates && o == Outcome::kDuplicate) continue;
    if (drop_background && o == Outcome::kBackgroundFp) continue;
    if (stage == Stage::kFn && o != Outcome::kTp) continue;
    sweep.tp_flags.push_back(o == Outcome::kTp ? 1 : 0);
    sweep.confidence.push_back(ce.confidence[d]);
  }
  if (stage == Stage::kFn) sweep.n_gt = static_cast<int>(sweep.tp_flags.size());
  return sweep;
}

std::array<double, kGridPoints> stage_envelope(const StageSweep& sweep) {
  if (sweep.n_gt == 0) {
    // No ground truth left to recover: an empty stage is vacuously perfect,
    // a stage with detections scores zero.
    return sweep.tp_flags.empty() ? unit_envelope()
                                  : std::array<double, kGridPoints>{};
  }
  std::vector<double> recall, precision;
  cumulative_sweep(sweep.tp_flags, sweep.n_gt, &recall, &precision);
  return grid_envelope(recall, precision);
}

}  // namespace

MatchResult match_detections(const ObjectMap& est, const ObjectMap& gt,
                             double iou_threshold) {
  require_shared_vocabulary(est, gt);
  MatchResult result;
  result.iou_threshold = iou_threshold;
  for (int class_id : present_classes(est, gt)) {
    const ClassEval ce = build_class_eval(est, gt, class_id);
    std::vector<int> matched_gt;
    const std::vector<Outcome> outcomes =
        sweep_outcomes(ce, iou_threshold, &matched_gt);
    std::vector<char> gt_claimed(ce.n_gt, 0);
    for (std::size_t d = 0; d < outcomes.size(); ++d) {
      if (outcomes[d] == Outcome::kTp) {
        const int g = matched_gt[d];
        gt_claimed[g] = 1;
        result.pairs.push_back({ce.det_indices[d], ce.gt_indices[g],
                                ce.iou(static_cast<int>(d), g)});
      } else {
        result.unmatched_est.push_back(ce.det_indices[d]);
      }
    }
    for (int g = 0; g < ce.n_gt; ++g)
      if (!gt_claimed[g]) result.unmatched_gt.push_back(ce.gt_indices[g]);
  }
  std::sort(result.pairs.begin(), result.pairs.end(),
            [](const MatchResult::Pair& a, const MatchResult::Pair& b) {
              return a.est_index < b.est_index;
            });
  std::sort(result.unmatched_est.begin(), result.unmatched_est.end());
  std::sort(result.unmatched_gt.begin(), result.unmatched_gt.end());
  return result;
}

const std::array<double, kNumMapThresholds>& map_iou_thresholds() {
  static const std::array<double, kNumMapThresholds> kThresholds = [] {
    std::array<double, kNumMapThresholds> t{};
    for (int k = 0; k < kNumMapThresholds; ++k) t[k] = (25 + 5 * k) / 100.0;
    return t;
  }();
  return kThresholds;
}

PRCurve pr_curve(const ObjectMap& est, const ObjectMap& gt, int class_id,
                 double iou_threshold, ApIntegration integration) {
  require_shared_vocabulary(est, gt);
  const ClassEval ce = build_class_eval(est, gt, class_id);
  if (ce.n_gt == 0 && ce.det_indices.empty()) return {};  // skipped class
  if (ce.n_gt == 0) {
    // Detections without ground truth: hallucinated class, AP 0.
    return curve_from_grid(std::array<double, kGridPoints>{});
  }
  const std::vector<Outcome> outcomes = sweep_outcomes(ce, iou_threshold);
  std::vector<char> tp_flags;
  tp_flags.reserve(outcomes.size());
  for (Outcome o : outcomes) tp_flags.push_back(o == Outcome::kTp ? 1 : 0);
  std::vector<double> recall, precision;
  cumulative_sweep(tp_flags, ce.n_gt, &recall, &precision);
  PRCurve curve = curve_from_grid(grid_envelope(recall, precision));
  if (integration == ApIntegration::kContinuous)
    curve.ap = continuous_ap(recall, precision);
  return curve;
}

MapScores map3d(const ObjectMap& est, const ObjectMap& gt,
                ApIntegration integration) {
  require_shared_vocabulary(est, gt);
  MapScores scores;
  scores.class_ids = present_classes(est, gt);
  const int n_classes = static_cast<int>(scores.class_ids.size());
  scores.per_class_ap = Eigen::MatrixXd::Zero(n_classes, kNumMapThresholds);
  if (n_classes == 0) return scores;
  for (int c = 0; c < n_classes; ++c) {
    for (int t = 0; t < kNumMapThresholds; ++t) {
      scores.per_class_ap(c, t) =
          pr_curve(est, gt, scores.class_ids[c], map_iou_thresholds()[t],
                   integration)
              .ap;
    }
  }
  scores.map3d = scores.per_class_ap.mean();
  scores.map25 = scores.per_class_ap.col(0).mean();
  scores.map50 = scores.per_class_ap.col(5).mean();
  return scores;
}

BreakdownCurves error_breakdown_curves(const ObjectMap& est,
                                       const ObjectMap& gt, bool pooled) {
  require_shared_vocabulary(est, gt);
  const std::vector<int> classes = present_classes(est, gt);
  const std::array<Stage, 6> stages = {Stage::kPlain75, Stage::kPlain50,
                                       Stage::kPlain25, Stage::kLoc,
                                       Stage::kBg,      Stage::kFn};
  std::array<std::array<double, kGridPoints>, 6> envs{};
  for (auto& env : envs) env.fill(0.0);

  if (classes.empty()) {
    envs[5] = unit_envelope();
  } else if (!pooled) {
    std::vector<ClassEval> evals;
    evals.reserve(classes.size());
    for (int class_id : classes)
      evals.push_back(build_class_eval(est, gt, class_id));
    for (std::size_t s = 0; s < stages.size(); ++s) {
      for (const ClassEval& ce : evals) {
        const auto env = stage_envelope(stage_sweep(ce, stages[s]));
        for (int k = 0; k < kGridPoints; ++k) envs[s][k] += env[k];
      }
      for (int k = 0; k < kGridPoints; ++k)
        envs[s][k] /= static_cast<double>(classes.size());
    }
  } else {
    // Pooled: merge every class's ranked detections into one sweep per
    // stage, ordered by confidence (ties by class id, then arrival order).
    for (std::size_t s = 0; s < stages.size(); ++s) {
      struct Det {
        double confidence;
        int class_id;
        int seq;
        char tp;
      };
      std::vector<Det> dets;
      int total_gt = 0;
      int seq = 0;
      for (int class_id : classes) {
        const ClassEval ce = build_class_eval(est, gt, class_id);
        const StageSweep sweep = stage_sweep(ce, stages[s]);
        total_gt += sweep.n_gt;
        for (std::size_t d = 0; d < sweep.tp_flags.size(); ++d)
          dets.push_back(
              {sweep.confidence[d], class_id, seq++, sweep.tp_flags[d]});
      }
      std::sort(dets.begin(), dets.end(), [](const Det& a, const Det& b) {
        if (a.confidence != b.confidence) return a.confidence > b.confidence;
        if (a.class_id != b.class_id) return a.class_id < b.class_id;
        return a.seq < b.seq;
      });
      std::vector<char> tp_flags;
      tp_flags.reserve(dets.size());
      for (const Det& d : dets) tp_flags.push_back(d.tp);
      StageSweep pooled_sweep;
      pooled_sweep.tp_flags = std::move(tp_flags);
      pooled_sweep.n_gt = total_gt;
      envs[s] = stage_envelope(pooled_sweep);
    }
  }

  BreakdownCurves curves;
  curves.iou75 = curve_from_grid(envs[0]);
  curves.iou50 = curve_from_grid(envs[1]);
  curves.iou25 = curve_from_grid(envs[2]);
  curves.loc = curve_from_grid(envs[3]);
  curves.bg = curve_from_grid(envs[4]);
  curves.fn = curve_from_grid(envs[5]);
  return curves;
}

double pairwise_quality(const Cuboid& estimate, const Cuboid& ground_truth) {
  const double spatial = iou3d(estimate, ground_truth);
  if (spatial == 0.0) return 0.0;
  const double label = label_probability(estimate, ground_truth.class_id);
  if (label == 0.0) return 0.0;
  return std::sqrt(spatial * label);
}

double fp_cost(const Cuboid& estimate) {
  if (estimate.label_probs.size() == 0)
    return estimate.class_id == kBackgroundId ? 0.0 : 1.0;
  if (estimate.label_probs.size() <= 1) return 0.0;
  return estimate.label_probs.tail(estimate.label_probs.size() - 1)
      .maxCoeff();
}

std::vector<std::pair<int, int>> optimal_assignment(
    const Eigen::MatrixXd& quality) {
  const int rows = static_cast<int>(quality.rows());
  const int cols = static_cast<int>(quality.cols());
  if (rows == 0 || cols == 0) return {};
  if ((quality.array() < 0.0).any())
    throw std::invalid_argument("optimal_assignment: negative quality");

  const int n = std::max(rows, cols);
  Eigen::MatrixXd cost = Eigen::MatrixXd::Zero(n, n);
  cost.topLeftCorner(rows, cols) = -quality;

  // Kuhn-Munkres with potentials (shortest augmenting paths), 1-indexed.
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      int j1 = 0;
      double delta = kInf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<std::pair<int, int>> pairs;
  for (int j = 1; j <= n; ++j) {
    const int i = p[j];
    if (i >= 1 && i <= rows && j <= cols && quality(i - 1, j - 1) > 0.0)
      pairs.emplace_back(i - 1, j - 1);
  }
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

OmqReport omq(const ObjectMap& est, const ObjectMap& gt) {
  require_shared_vocabulary(est, gt);
  const int n_est = static_cast<int>(est.objects.size());
  const int n_gt = static_cast<int>(gt.objects.size());

  Eigen::MatrixXd quality(n_est, n_gt);
  for (int i = 0; i < n_est; ++i)
    for (int j = 0; j < n_gt; ++j)
      quality(i, j) = pairwise_quality(est.objects[i], gt.objects[j]);

  OmqReport report;
  std::vector<char> est_assigned(n_est, 0);
  double label_sum = 0.0;
  double spatial_sum = 0.0;
  for (const auto& [i, j] : optimal_assignment(quality)) {
    est_assigned[i] = 1;
    report.q_tp.push_back(quality(i, j));
    label_sum += label_probability(est.objects[i], gt.objects[j].class_id);
    spatial_sum += iou3d(est.objects[i], gt.objects[j]);
  }
  report.n_tp = static_cast<int>(report.q_tp.size());
  report.n_fn = n_gt - report.n_tp;
  for (int i = 0; i < n_est; ++i)
    if (!est_assigned[i]) report.c_fp.push_back(fp_cost(est.objects[i]));
  report.n_fp = static_cast<int>(report.c_fp.size());

  double q_sum = 0.0;
  for (double q : report.q_tp) q_sum += q;
  double c_sum = 0.0;
  for (double c : report.c_fp) c_sum += c;
  const double denom = report.n_tp + report.n_fn + c_sum;
  report.omq = denom > 0.0 ? q_sum / denom : 0.0;
  if (report.n_tp > 0) {
    report.mpoq = q_sum / report.n_tp;
    report.mlq = label_sum / report.n_tp;
    report.msq = spatial_sum / report.n_tp;
  }
  if (report.n_fp > 0) report.mfpq = c_sum / report.n_fp;
  return report;
}

RatioScores ratio_scores(const MapScores& scores, const OmqReport& quality,
                         const MapScores& baseline_scores,
                         const OmqReport& baseline_quality) {
  const auto ratio = [](double value, double baseline) {
    if (baseline <= 0.0) return std::numeric_limits<double>::quiet_NaN();
    return value / baseline;
  };
  RatioScores r;
  r.rmap = ratio(scores.map3d, baseline_scores.map3d);
  r.rap25 = ratio(scores.map25, baseline_scores.map25);
  r.rap50 = ratio(scores.map50, baseline_scores.map50);
  r.romq = ratio(quality.omq, baseline_quality.omq);
  return r;
}

}  // namespace semmap
