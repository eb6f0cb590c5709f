#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "pcalda/matrix.hpp"

namespace pcalda {

/// Probe-to-exemplar distances and their summary statistics.
struct DistanceReport {
  std::vector<double> distances;  // one per exemplar, exemplar order
  double column_sum = 0.0;        // Σ d
  double sqrt_sum = 0.0;          // Σ √d
  double mean = 0.0;
  double min = 0.0;
  std::size_t min_index = 0;      // lowest index on ties
};

struct Verdict {
  std::optional<std::size_t> identified;  // class index, empty when rejected
  std::vector<std::size_t> votes;         // per class, among the k nearest
  std::vector<std::size_t> neighbors;     // exemplar indices, nearest first
  double min_distance = 0.0;
  std::optional<double> threshold_used;
  bool vote_tie = false;                  // the tie-break rule decided the winner

  bool rejected() const noexcept { return !identified.has_value(); }
};

double euclidean_distance(std::span<const double> x, std::span<const double> y);

/// Distances from `probe` to every column of `exemplars` plus the summary
/// statistics.
DistanceReport distance_report(std::span<const double> probe, const Matrix& exemplars);

/// k-nearest-neighbor vote.
///
/// The k smallest distances are taken with ties at the boundary going to the
/// lower exemplar index. Majority vote over their labels; a vote tie goes to
/// the tied class whose closest neighbor is nearest, then to the lower class
/// index (class indices follow class-name order). With a threshold, the probe
/// is rejected when the overall minimum distance exceeds it.
Verdict classify(std::span<const double> probe, const Matrix& exemplars,
                 std::span<const std::size_t> labels, std::size_t class_count, std::size_t k,
                 std::optional<double> threshold = std::nullopt);

/// Same as classify() given a precomputed report for the probe.
Verdict classify_report(const DistanceReport& report, std::span<const std::size_t> labels,
                        std::size_t class_count, std::size_t k,
                        std::optional<double> threshold = std::nullopt);

/// For every exemplar, its distance to the nearest *other* exemplar.
std::vector<double> leave_one_out_min_distances(const Matrix& exemplars);

/// margin_factor × max(genuine_min_distances).
double suggest_threshold(std::span<const double> genuine_min_distances, double margin_factor);

}  // namespace pcalda
