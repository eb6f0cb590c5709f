#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pcalda/gallery.hpp"
#include "pcalda/image.hpp"
#include "pcalda/knn.hpp"
#include "pcalda/lda.hpp"
#include "pcalda/pca.hpp"

namespace pcalda {

inline constexpr std::uint32_t kModelFormatVersion = 1;
inline constexpr std::size_t kDefaultK = 3;
inline constexpr double kDefaultMargin = 1.5;

struct NoThreshold {};
/// threshold = margin × max leave-one-out nearest-exemplar distance.
struct AutoThreshold {
  double margin = kDefaultMargin;
};
struct FixedThreshold {
  double value = 0.0;
};
using ThresholdPolicy = std::variant<NoThreshold, AutoThreshold, FixedThreshold>;

struct TrainOptions {
  std::optional<std::size_t> pca_dim;     // empty: p − C
  std::optional<std::size_t> fisher_dim;  // empty: C − 1
  std::size_t k = kDefaultK;
  ThresholdPolicy threshold = NoThreshold{};
};

/// A trained PCA→LDA→kNN recognizer. Immutable once built; identify() and
/// evaluate() may run concurrently against one instance.
struct RecognizerModel {
  PcaModel pca;
  FisherModel fisher;
  Matrix exemplars;                  // f×p, training images through both projections
  std::vector<std::size_t> labels;   // p, class index per exemplar
  std::size_t k = kDefaultK;
  std::optional<double> threshold;
  std::size_t width = 0;
  std::size_t height = 0;
  std::uint32_t format_version = kModelFormatVersion;

  const std::vector<std::string>& class_names() const noexcept { return fisher.class_names; }
  std::size_t class_count() const noexcept { return fisher.class_names.size(); }
  std::size_t exemplar_count() const noexcept { return exemplars.cols(); }
};

/// Checks every cross-field invariant; throws InvariantViolation.
void validate_model(const RecognizerModel& model);

/// True when every field, including every stored double, is bitwise equal.
bool bit_identical(const RecognizerModel& a, const RecognizerModel& b);

RecognizerModel train(const LabeledGallery& gallery, const TrainOptions& options = {});

struct Identification {
  Verdict verdict;
  DistanceReport report;
  std::vector<double> features;  // the probe in Fisher space
};

/// Full composed map y ↦ fisherᵀ·(Vᵀ·(y − m)).
std::vector<double> extract_features(const RecognizerModel& model, std::span<const double> pixels);

Identification identify(const RecognizerModel& model, const ImageVector& probe);

struct ClassResult {
  std::string name;
  std::size_t total = 0;
  std::size_t correct = 0;
  std::size_t rejected = 0;
};

struct EvaluationSummary {
  std::vector<ClassResult> classes;  // gallery class order
  std::size_t total = 0;
  std::size_t correct = 0;
  std::size_t rejected = 0;
  std::size_t vote_ties = 0;
  /// Mean nearest-exemplar distance over probes whose class the model knows;
  /// zero when there are none.
  double mean_genuine_min_distance = 0.0;

  double accuracy() const noexcept {
    return total == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(total);
  }
  double rejection_rate() const noexcept {
    return total == 0 ? 0.0 : static_cast<double>(rejected) / static_cast<double>(total);
  }
};

/// Identify every image of `gallery`. A probe counts as correct when it is
/// identified as the model class with the same name as its gallery class.
EvaluationSummary evaluate(const RecognizerModel& model, const LabeledGallery& gallery);

struct LeaveOneOutResult {
  double accuracy = 0.0;              // each exemplar classified against the others
  std::vector<double> min_distances;  // nearest other exemplar, per exemplar
};

/// Resubstitution-free training accuracy: exemplar i is classified against
/// the remaining p − 1 exemplars with k clamped to p − 1 and no threshold.
LeaveOneOutResult leave_one_out(const RecognizerModel& model);

}  // namespace pcalda
