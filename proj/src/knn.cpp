#include "pcalda/knn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <fmt/format.h>

#include "pcalda/error.hpp"
#include "pcalda/kernels.hpp"

namespace pcalda {

double euclidean_distance(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size())
    throw Error(ErrorCode::DimensionMismatch,
                fmt::format("distance between vectors of length {} and {}", x.size(), y.size()));
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - y[i];
    s += d * d;
  }
  return std::sqrt(s);
}

DistanceReport distance_report(std::span<const double> probe, const Matrix& exemplars) {
  if (probe.size() != exemplars.rows())
    throw Error(ErrorCode::DimensionMismatch,
                fmt::format("probe has {} features, exemplars have {}", probe.size(), exemplars.rows()));

  DistanceReport report;
  report.distances = kernels::column_distances(probe, exemplars);
  report.min = report.distances.front();
  for (std::size_t j = 0; j < report.distances.size(); ++j) {
    const double d = report.distances[j];
    report.column_sum += d;
    report.sqrt_sum += std::sqrt(d);
    if (d < report.min) {
      report.min = d;
      report.min_index = j;
    }
  }
  report.mean = report.column_sum / static_cast<double>(report.distances.size());
  return report;
}

Verdict classify_report(const DistanceReport& report, std::span<const std::size_t> labels,
                        std::size_t class_count, std::size_t k, std::optional<double> threshold) {
  const std::size_t p = report.distances.size();
  if (p == 0) throw Error(ErrorCode::InvalidArgument, "no exemplars to classify against");
  if (labels.size() != p)
    throw Error(ErrorCode::DimensionMismatch,
                fmt::format("{} labels for {} exemplars", labels.size(), p));
  if (k < 1 || k > p)
    throw Error(ErrorCode::InvalidArgument, fmt::format("k = {} out of range [1, {}]", k, p));
  if (threshold && !std::isfinite(*threshold))
    throw Error(ErrorCode::InvalidArgument, "threshold must be finite");

  const auto& dist = report.distances;
  std::vector<std::size_t> order(p);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                    [&](std::size_t a, std::size_t b) {
                      return dist[a] < dist[b] || (dist[a] == dist[b] && a < b);
                    });
  order.resize(k);

  Verdict verdict;
  verdict.votes.assign(class_count, 0);
  // Closest neighbor per class among the k; neighbors arrive nearest first.
  std::vector<double> closest(class_count, std::numeric_limits<double>::infinity());
  for (std::size_t idx : order) {
    const std::size_t label = labels[idx];
    if (label >= class_count)
      throw Error(ErrorCode::InvalidArgument,
                  fmt::format("label {} out of range for {} classes", label, class_count));
    if (verdict.votes[label]++ == 0) closest[label] = dist[idx];
  }

  const std::size_t top = *std::ranges::max_element(verdict.votes);
  std::size_t winner = class_count;
  std::size_t tied = 0;
  for (std::size_t c = 0; c < class_count; ++c) {
    if (verdict.votes[c] != top) continue;
    ++tied;
    if (winner == class_count || closest[c] < closest[winner]) winner = c;
  }

  verdict.vote_tie = tied > 1;
  verdict.neighbors = std::move(order);
  verdict.min_distance = report.min;
  verdict.threshold_used = threshold;
  if (!threshold || report.min <= *threshold) verdict.identified = winner;
  return verdict;
}

Verdict classify(std::span<const double> probe, const Matrix& exemplars,
                 std::span<const std::size_t> labels, std::size_t class_count, std::size_t k,
                 std::optional<double> threshold) {
  return classify_report(distance_report(probe, exemplars), labels, class_count, k, threshold);
}

std::vector<double> leave_one_out_min_distances(const Matrix& exemplars) {
  const std::size_t p = exemplars.cols();
  if (p < 2)
    throw Error(ErrorCode::InvalidArgument, "leave-one-out needs at least 2 exemplars");
  std::vector<double> out(p);
  for (std::size_t i = 0; i < p; ++i) {
    const auto dist = kernels::column_distances(exemplars.col(i), exemplars);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < p; ++j)
      if (j != i) best = std::min(best, dist[j]);
    out[i] = best;
  }
  return out;
}

double suggest_threshold(std::span<const double> genuine_min_distances, double margin_factor) {
  if (genuine_min_distances.empty())
    throw Error(ErrorCode::InvalidArgument, "cannot suggest a threshold from no distances");
  if (!(margin_factor > 0.0) || !std::isfinite(margin_factor))
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("margin factor must be positive, got {}", margin_factor));
  return margin_factor * *std::ranges::max_element(genuine_min_distances);
}

}  // namespace pcalda
