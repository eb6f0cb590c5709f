#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <ostream>
#include <stdexcept>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "pcalda/error.hpp"
#include "pcalda/gallery.hpp"
#include "pcalda/model_io.hpp"
#include "pcalda/recognizer.hpp"
#include "pcalda/synthetic.hpp"

namespace pcalda::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fixed6(double v) { return fmt::format("{:.6f}", v); }

std::size_t parse_count(const std::string& text, const char* what) {
  std::size_t value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || value < 1)
    throw UsageError(fmt::format("{} must be a positive integer, got '{}'", what, text));
  return value;
}

std::optional<std::size_t> parse_dim(const std::string& text, const char* what) {
  if (text == "auto") return std::nullopt;
  return parse_count(text, what);
}

double parse_real(const std::string& text, const char* what) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || !std::isfinite(value))
    throw UsageError(fmt::format("{} must be a number, got '{}'", what, text));
  return value;
}

ThresholdPolicy parse_threshold(const std::string& text) {
  if (text == "none") return NoThreshold{};
  if (text.starts_with("auto:")) {
    const double margin = parse_real(text.substr(5), "threshold margin");
    if (!(margin > 0.0)) throw UsageError(fmt::format("threshold margin must be > 0, got {}", margin));
    return AutoThreshold{margin};
  }
  if (text == "auto") return AutoThreshold{};
  if (text.starts_with("fixed:")) {
    const double value = parse_real(text.substr(6), "fixed threshold");
    if (value < 0.0) throw UsageError(fmt::format("fixed threshold must be >= 0, got {}", value));
    return FixedThreshold{value};
  }
  throw UsageError(fmt::format("threshold must be none, auto:<margin> or fixed:<value>, got '{}'", text));
}

std::string render_threshold(const std::optional<double>& t) { return t ? fixed6(*t) : "none"; }

std::string render_votes(const RecognizerModel& model, const Verdict& v) {
  std::string out;
  for (std::size_t c = 0; c < v.votes.size(); ++c) {
    if (v.votes[c] == 0) continue;
    if (!out.empty()) out += ',';
    out += fmt::format("{}:{}", model.class_names()[c], v.votes[c]);
  }
  return out;
}

struct TrainArgs {
  std::string data_dir;
  std::string out_path;
  std::string pca_dim = "auto";
  std::string fisher_dim = "auto";
  std::string k = "3";
  std::string threshold = "none";
};

int cmd_train(const TrainArgs& a, bool machine, std::ostream& out) {
  TrainOptions options;
  options.pca_dim = parse_dim(a.pca_dim, "--pca-dim");
  options.fisher_dim = parse_dim(a.fisher_dim, "--fisher-dim");
  options.k = parse_count(a.k, "--k");
  options.threshold = parse_threshold(a.threshold);

  const LabeledGallery gallery = load_gallery(a.data_dir);
  const RecognizerModel model = train(gallery, options);
  save_model(model, a.out_path);
  const LeaveOneOutResult loo = leave_one_out(model);

  if (machine) {
    fmt::print(out, "p={} C={} d={} f={} k={} threshold={} loo_accuracy={}\n", model.exemplar_count(),
               model.class_count(), model.pca.dim(), model.fisher.dim(), model.k,
               render_threshold(model.threshold), fixed6(loo.accuracy));
  } else {
    fmt::print(out, "trained {}\n", a.out_path);
    fmt::print(out, "  images p: {}\n  classes C: {}\n", model.exemplar_count(), model.class_count());
    fmt::print(out, "  pca dim d: {}\n  fisher dim f: {}\n", model.pca.dim(), model.fisher.dim());
    fmt::print(out, "  k: {}\n  threshold: {}\n", model.k, render_threshold(model.threshold));
    fmt::print(out, "  leave-one-out accuracy: {:.3f}\n", loo.accuracy);
  }
  return kSuccess;
}

int cmd_identify(const std::string& model_path, const std::string& image_path, const std::string& report,
                 std::ostream& out) {
  if (report != "none" && report != "full")
    throw UsageError(fmt::format("--report must be none or full, got '{}'", report));
  const RecognizerModel model = load_model(model_path);
  const ImageVector probe = load_pgm(image_path);
  const Identification id = identify(model, probe);
  const Verdict& v = id.verdict;

  if (v.rejected())
    fmt::print(out, "REJECTED min={} threshold={}\n", fixed6(v.min_distance), fixed6(*v.threshold_used));
  else
    fmt::print(out, "IDENTIFIED {} min={} votes={}\n", model.class_names()[*v.identified],
               fixed6(v.min_distance), render_votes(model, v));
  if (report == "full") {
    const DistanceReport& r = id.report;
    fmt::print(out, "column_sum={} sqrt_sum={} mean={} min={} min_index={}\n", fixed6(r.column_sum),
               fixed6(r.sqrt_sum), fixed6(r.mean), fixed6(r.min), r.min_index);
  }
  return v.rejected() ? kRejected : kSuccess;
}

int cmd_eval(const std::string& model_path, const std::string& data_dir, bool machine, std::ostream& out) {
  const RecognizerModel model = load_model(model_path);
  const LabeledGallery probes = load_probe_set(data_dir);
  const EvaluationSummary s = evaluate(model, probes);

  if (machine) {
    for (const auto& c : s.classes) fmt::print(out, "{},{},{},{}\n", c.name, c.total, c.correct, c.rejected);
    fmt::print(out, "TOTAL,{},{},{}\n", s.total, s.correct, s.rejected);
    return kSuccess;
  }
  for (const auto& c : s.classes) {
    const double acc = c.total ? static_cast<double>(c.correct) / static_cast<double>(c.total) : 0.0;
    fmt::print(out, "{:<16} accuracy {:.3f} ({}/{}) rejected {}\n", c.name, acc, c.correct, c.total, c.rejected);
  }
  fmt::print(out, "TOTAL accuracy {:.3f} ({}/{}) rejected {}\n", s.accuracy(), s.correct, s.total, s.rejected);
  fmt::print(out, "mean genuine min-distance {}\n", fixed6(s.mean_genuine_min_distance));
  if (s.vote_ties > 0) fmt::print(out, "vote ties resolved by tie rule: {}\n", s.vote_ties);
  return kSuccess;
}

int cmd_inspect(const std::string& model_path, std::ostream& out) {
  const RecognizerModel model = load_model(model_path);
  fmt::print(out, "format_version: {}\n", model.format_version);
  fmt::print(out, "image: {}x{} (N = {})\n", model.width, model.height, model.pca.input_dim());
  fmt::print(out, "dims: N={} d={} f={} p={} C={}\n", model.pca.input_dim(), model.pca.dim(),
             model.fisher.dim(), model.exemplar_count(), model.class_count());
  fmt::print(out, "k: {}\n", model.k);
  fmt::print(out, "threshold: {}\n", render_threshold(model.threshold));
  fmt::print(out, "classes: {}\n", fmt::join(model.class_names(), " "));

  const auto& pca = model.pca.eigenvalues;
  std::vector<std::string> top;
  for (std::size_t i = 0; i < std::min<std::size_t>(5, pca.size()); ++i) top.push_back(fixed6(pca[i]));
  fmt::print(out, "pca eigenvalues (top {}): {}\n", top.size(), fmt::join(top, " "));
  std::vector<std::string> fisher;
  for (double v : model.fisher.eigenvalues) fisher.push_back(fixed6(v));
  fmt::print(out, "fisher eigenvalues ({}): {}\n", fisher.size(), fmt::join(fisher, " "));
  return kSuccess;
}

struct SyntheticArgs {
  std::string out_dir;
  std::string classes = "5";
  std::string per_class = "4";
  std::string width = "16";
  std::string height = "16";
  std::uint64_t seed = 42;
};

int cmd_gen_synthetic(const SyntheticArgs& a, std::ostream& out) {
  SyntheticSpec spec;
  spec.classes = parse_count(a.classes, "--classes");
  spec.per_class = parse_count(a.per_class, "--per-class");
  spec.width = parse_count(a.width, "--width");
  spec.height = parse_count(a.height, "--height");
  spec.seed = a.seed;
  const LabeledGallery gallery = synthesize_gallery(spec);
  write_gallery(gallery, a.out_dir);
  fmt::print(out, "wrote {} images in {} classes to {}\n", gallery.size(), gallery.class_count(), a.out_dir);
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"PCA + LDA feature extraction with k-nearest-neighbor identification", "pcalda"};
  app.require_subcommand(1);
  app.fallthrough();
  bool machine = false;
  app.add_flag("--machine", machine, "Machine-readable output");

  TrainArgs train_args;
  auto* train_cmd = app.add_subcommand("train", "Train a recognizer from <data_dir>/<class>/*.pgm");
  train_cmd->add_option("data_dir", train_args.data_dir, "Gallery root")->required();
  train_cmd->add_option("out_path", train_args.out_path, "Model file to write")->required();
  train_cmd->add_option("--pca-dim", train_args.pca_dim, "PCA dimension or 'auto' (p - C)");
  train_cmd->add_option("--fisher-dim", train_args.fisher_dim, "Fisher dimension or 'auto' (C - 1)");
  train_cmd->add_option("--k", train_args.k, "Neighbors to vote");
  train_cmd->add_option("--threshold", train_args.threshold, "none | auto:<margin> | fixed:<value>");

  std::string model_path, image_path, data_dir, report = "none";
  auto* identify_cmd = app.add_subcommand("identify", "Identify one probe image");
  identify_cmd->add_option("model", model_path, "Model file")->required();
  identify_cmd->add_option("image", image_path, "Probe PGM")->required();
  identify_cmd->add_option("--report", report, "none | full");

  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a model on a labeled directory");
  eval_cmd->add_option("model", model_path, "Model file")->required();
  eval_cmd->add_option("data_dir", data_dir, "Probe root")->required();

  auto* inspect_cmd = app.add_subcommand("inspect", "Describe a model file");
  inspect_cmd->add_option("model", model_path, "Model file")->required();

  SyntheticArgs synth;
  auto* synth_cmd = app.add_subcommand("gen-synthetic", "Write a seeded synthetic gallery");
  synth_cmd->add_option("out_dir", synth.out_dir, "Output root")->required();
  synth_cmd->add_option("--classes", synth.classes, "Number of classes");
  synth_cmd->add_option("--per-class", synth.per_class, "Images per class");
  synth_cmd->add_option("--width", synth.width, "Image width");
  synth_cmd->add_option("--height", synth.height, "Image height");
  synth_cmd->add_option("--seed", synth.seed, "RNG seed");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kError;
  }

  try {
    if (*train_cmd) return cmd_train(train_args, machine, out);
    if (*identify_cmd) return cmd_identify(model_path, image_path, report, out);
    if (*eval_cmd) return cmd_eval(model_path, data_dir, machine, out);
    if (*inspect_cmd) return cmd_inspect(model_path, out);
    if (*synth_cmd) return cmd_gen_synthetic(synth, out);
  } catch (const UsageError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kError;
  } catch (const Error& e) {
    fmt::print(err, "error [{}]: {}\n", to_string(e.code()), e.what());
    return kError;
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kError;
  }
  return kError;
}

}  // namespace pcalda::cli
