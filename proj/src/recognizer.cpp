#include "pcalda/recognizer.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>

#include <fmt/format.h>

#include "pcalda/error.hpp"

namespace pcalda {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool doubles_bit_equal(std::span<const double> a, std::span<const double> b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

void require(bool condition, const std::string& what) {
  if (!condition) throw Error(ErrorCode::InvariantViolation, "model: " + what);
}

bool all_finite(std::span<const double> v) {
  return std::ranges::all_of(v, [](double x) { return std::isfinite(x); });
}

bool non_increasing(std::span<const double> v) {
  return std::ranges::is_sorted(v, std::greater<>{});
}

}  // namespace

void validate_model(const RecognizerModel& model) {
  const std::size_t n = model.width * model.height;
  const std::size_t d = model.pca.dim();
  const std::size_t f = model.fisher.dim();
  const std::size_t p = model.exemplar_count();
  const std::size_t c = model.class_count();

  require(model.format_version == kModelFormatVersion, "unexpected format version");
  require(model.width >= 1 && model.height >= 1, "image dimensions must be positive");
  require(model.pca.mean.size() == n,
          fmt::format("mean has {} entries, expected width*height = {}", model.pca.mean.size(), n));
  require(model.pca.basis.rows() == n, "PCA basis row count differs from pixel count");
  require(model.pca.eigenvalues.size() == d, "PCA eigenvalue count differs from basis width");
  require(c >= 2, fmt::format("at least 2 classes required, found {}", c));
  require(p >= 2 && d >= 1 && d <= p - 1, fmt::format("PCA dimension {} invalid for {} exemplars", d, p));
  require(f >= 1 && f <= c - 1 && f <= d, fmt::format("Fisher dimension {} invalid (d={}, C={})", f, d, c));
  require(model.fisher.basis.rows() == d, "Fisher basis rows differ from PCA dimension");
  require(model.fisher.eigenvalues.size() == f, "Fisher eigenvalue count differs from basis width");
  require(model.fisher.class_means.rows() == f && model.fisher.class_means.cols() == c,
          "class means have the wrong shape");
  require(model.exemplars.rows() == f, "exemplar rows differ from Fisher dimension");
  require(model.labels.size() == p, "label count differs from exemplar count");
  require(model.k >= 1 && model.k <= p, fmt::format("k = {} out of range [1, {}]", model.k, p));
  if (model.threshold)
    require(std::isfinite(*model.threshold) && *model.threshold >= 0.0, "threshold must be finite and non-negative");

  for (std::size_t i = 1; i < c; ++i)
    require(model.class_names()[i - 1] < model.class_names()[i], "class names must be distinct and sorted");
  std::vector<std::size_t> counts(c, 0);
  for (std::size_t label : model.labels) {
    require(label < c, fmt::format("label {} out of range for {} classes", label, c));
    ++counts[label];
  }
  require(std::ranges::none_of(counts, [](std::size_t k) { return k == 0; }),
          "every class needs at least one exemplar");

  require(all_finite(model.pca.mean) && all_finite(model.pca.eigenvalues) &&
              model.pca.basis.all_finite() && all_finite(model.fisher.eigenvalues) &&
              model.fisher.basis.all_finite() && model.fisher.class_means.all_finite() &&
              model.exemplars.all_finite(),
          "non-finite values present");
  require(non_increasing(model.pca.eigenvalues) && non_increasing(model.fisher.eigenvalues),
          "eigenvalues must be non-increasing");
  require(model.pca.eigenvalues.back() >= -1e-9 && model.fisher.eigenvalues.back() >= -1e-9,
          "eigenvalues must be non-negative");

  const Matrix gram = transpose_matmul(model.pca.basis, model.pca.basis);
  require(max_abs_diff(gram, Matrix::identity(d)) <= 1e-8, "PCA basis is not orthonormal");
  for (std::size_t j = 0; j < f; ++j)
    require(std::abs(norm2(model.fisher.basis.col(j)) - 1.0) <= 1e-8, "Fisher basis columns must have unit length");
}

bool bit_identical(const RecognizerModel& a, const RecognizerModel& b) {
  const bool same_threshold =
      a.threshold.has_value() == b.threshold.has_value() &&
      (!a.threshold || std::memcmp(&*a.threshold, &*b.threshold, sizeof(double)) == 0);
  return a.format_version == b.format_version && a.width == b.width && a.height == b.height &&
         a.k == b.k && same_threshold && a.labels == b.labels &&
         a.class_names() == b.class_names() && doubles_bit_equal(a.pca.mean, b.pca.mean) &&
         doubles_bit_equal(a.pca.eigenvalues, b.pca.eigenvalues) &&
         a.pca.basis.bit_equal(b.pca.basis) &&
         doubles_bit_equal(a.fisher.eigenvalues, b.fisher.eigenvalues) &&
         a.fisher.basis.bit_equal(b.fisher.basis) &&
         a.fisher.class_means.bit_equal(b.fisher.class_means) && a.exemplars.bit_equal(b.exemplars);
}

RecognizerModel train(const LabeledGallery& gallery, const TrainOptions& options) {
  validate_gallery(gallery);
  const std::size_t p = gallery.size();
  const std::size_t c = gallery.class_count();
  const std::size_t d = options.pca_dim.value_or(p - c);
  const std::size_t f = options.fisher_dim.value_or(c - 1);
  if (options.k < 1 || options.k > p)
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("k = {} out of range [1, {}] for a gallery of {} images", options.k, p, p));

  const Matrix x = data_matrix(gallery);
  PcaModel pca = fit_pca(x, d);
  const Matrix z = project_matrix(pca, x);
  FisherModel fisher = fit_lda(z, gallery.labels, gallery.class_names, f);
  Matrix exemplars = project_fisher_matrix(fisher, z);

  RecognizerModel model{std::move(pca), std::move(fisher), std::move(exemplars), gallery.labels,
                        options.k, std::nullopt, gallery.width, gallery.height, kModelFormatVersion};

  model.threshold = std::visit(
      Overloaded{
          [](NoThreshold) -> std::optional<double> { return std::nullopt; },
          [&](AutoThreshold a) -> std::optional<double> {
            return suggest_threshold(leave_one_out_min_distances(model.exemplars), a.margin);
          },
          [](FixedThreshold t) -> std::optional<double> {
            if (!std::isfinite(t.value) || t.value < 0.0)
              throw Error(ErrorCode::InvalidArgument,
                          fmt::format("fixed threshold must be finite and non-negative, got {}", t.value));
            return t.value;
          },
      },
      options.threshold);
  return model;
}

std::vector<double> extract_features(const RecognizerModel& model, std::span<const double> pixels) {
  return project_fisher(model.fisher, project(model.pca, pixels));
}

Identification identify(const RecognizerModel& model, const ImageVector& probe) {
  if (probe.width != model.width || probe.height != model.height ||
      probe.pixels.size() != model.width * model.height)
    throw Error(ErrorCode::DimensionMismatch,
                fmt::format("probe {} is {}x{} but the model expects {}x{}", probe.source_path,
                            probe.width, probe.height, model.width, model.height));
  Identification out;
  out.features = extract_features(model, probe.pixels);
  out.report = distance_report(out.features, model.exemplars);
  out.verdict =
      classify_report(out.report, model.labels, model.class_count(), model.k, model.threshold);
  return out;
}

EvaluationSummary evaluate(const RecognizerModel& model, const LabeledGallery& gallery) {
  if (gallery.width != model.width || gallery.height != model.height)
    throw Error(ErrorCode::DimensionMismatch,
                fmt::format("gallery is {}x{} but the model expects {}x{}", gallery.width,
                            gallery.height, model.width, model.height));
  for (const auto& image : gallery.images)
    if (image.pixels.size() != model.width * model.height)
      throw Error(ErrorCode::DimensionMismatch,
                  fmt::format("{}: {} pixels, model expects {}", image.source_path,
                              image.pixels.size(), model.width * model.height));
  if (gallery.labels.size() != gallery.images.size())
    throw Error(ErrorCode::InvariantViolation, "gallery labels are not parallel to its images");

  std::map<std::string, std::size_t> known;
  for (std::size_t c = 0; c < model.class_count(); ++c) known.emplace(model.class_names()[c], c);

  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(gallery.size());
  std::vector<Verdict> verdicts(gallery.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i)
    verdicts[static_cast<std::size_t>(i)] = identify(model, gallery.images[static_cast<std::size_t>(i)]).verdict;

  EvaluationSummary summary;
  summary.classes.resize(gallery.class_count());
  for (std::size_t c = 0; c < gallery.class_count(); ++c) summary.classes[c].name = gallery.class_names[c];

  double genuine_sum = 0.0;
  std::size_t genuine = 0;
  for (std::size_t i = 0; i < gallery.size(); ++i) {
    const Verdict& v = verdicts[i];
    ClassResult& result = summary.classes[gallery.labels[i]];
    const auto truth = known.find(gallery.class_names[gallery.labels[i]]);
    ++result.total;
    if (v.rejected()) ++result.rejected;
    if (truth != known.end()) {
      genuine_sum += v.min_distance;
      ++genuine;
      if (v.identified == truth->second) ++result.correct;
    }
    if (v.vote_tie) ++summary.vote_ties;
  }
  for (const auto& r : summary.classes) {
    summary.total += r.total;
    summary.correct += r.correct;
    summary.rejected += r.rejected;
  }
  if (genuine > 0) summary.mean_genuine_min_distance = genuine_sum / static_cast<double>(genuine);
  return summary;
}

LeaveOneOutResult leave_one_out(const RecognizerModel& model) {
  const std::size_t p = model.exemplar_count();
  const std::size_t f = model.exemplars.rows();
  const std::size_t k = std::min(model.k, p - 1);
  LeaveOneOutResult result;
  result.min_distances = leave_one_out_min_distances(model.exemplars);

  std::size_t correct = 0;
  for (std::size_t i = 0; i < p; ++i) {
    std::vector<double> rest;
    std::vector<std::size_t> rest_labels;
    rest.reserve(f * (p - 1));
    for (std::size_t j = 0; j < p; ++j) {
      if (j == i) continue;
      auto col = model.exemplars.col(j);
      rest.insert(rest.end(), col.begin(), col.end());
      rest_labels.push_back(model.labels[j]);
    }
    const Matrix others(f, p - 1, std::move(rest));
    const Verdict v = classify(model.exemplars.col(i), others, rest_labels, model.class_count(), k);
    if (v.identified == model.labels[i]) ++correct;
  }
  result.accuracy = static_cast<double>(correct) / static_cast<double>(p);
  return result;
}

}  // namespace pcalda
