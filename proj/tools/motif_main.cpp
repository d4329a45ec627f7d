// Command-line frontend for the MOTIF hand pipelines. Talks to the library
// exclusively through the C API in motif/motif_c.h; the vendored headers are
// used only for argument parsing and output formatting.
//
// Exit codes: 0 success, 1 pipeline/domain error, 2 usage error.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "motif/motif_c.h"

namespace {

using nlohmann::json;

struct CliError {
  motif_status status;
  std::string message;
};

void check(motif_status status) {
  if (status != MOTIF_OK) {
    throw CliError{status, motif_last_error()};
  }
}

[[noreturn]] void fail(motif_status status, const std::string& message) {
  throw CliError{status, message};
}

// RAII for C-API handles.
template <typename T, void (*Free)(T*)>
struct Handle {
  T* ptr = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  Handle(Handle&& other) noexcept : ptr(other.ptr) { other.ptr = nullptr; }
  ~Handle() { Free(ptr); }
  T** out() { return &ptr; }
  operator T*() const { return ptr; }
};

using ConfigH = Handle<motif_config_t, motif_config_free>;
using FramesH = Handle<motif_frames_t, motif_frames_free>;
using CloudH = Handle<motif_cloud_t, motif_cloud_free>;
using CameraH = Handle<motif_camera_t, motif_camera_free>;
using ThermalH = Handle<motif_thermal_t, motif_thermal_free>;
using DepthH = Handle<motif_depth_t, motif_depth_free>;
using GraspsH = Handle<motif_grasps_t, motif_grasps_free>;
using TracesH = Handle<motif_traces_t, motif_traces_free>;
using FeaturesH = Handle<motif_features_t, motif_features_free>;
using LdaH = Handle<motif_lda_t, motif_lda_free>;

struct StringOut {
  char* str = nullptr;
  ~StringOut() { motif_string_free(str); }
  char** out() { return &str; }
  json parse() const { return str ? json::parse(str) : json(); }
};

// Global output mode and config source.
bool g_json = false;
std::string g_config_path;

ConfigH load_config() {
  ConfigH config;
  std::string path = g_config_path;
  if (path.empty()) {
    if (const char* env = std::getenv("MOTIF_CONFIG"); env != nullptr) {
      path = env;
    }
  }
  if (path.empty()) {
    check(motif_config_default(config.out()));
  } else {
    check(motif_config_load(path.c_str(), config.out()));
  }
  return config;
}

// Success output: the full document with --json, otherwise one summary line.
void emit(const json& document, const std::string& human) {
  if (g_json) {
    std::cout << document.dump(2) << '\n';
  } else {
    std::cout << human << '\n';
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) fail(MOTIF_ERR_IO, "cannot write " + path);
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
  if (!out) fail(MOTIF_ERR_IO, "write failed: " + path);
}

std::vector<std::uint8_t> read_binary_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(MOTIF_ERR_FILE_NOT_FOUND, "no such file: " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// ---- subcommand bodies ----

void run_decode(const std::string& input, const std::string& out_csv) {
  const std::vector<std::uint8_t> bytes = read_binary_file(input);
  FramesH frames;
  size_t dropped = 0;
  check(motif_decode(bytes.data(), bytes.size(), frames.out(), &dropped));
  size_t count = 0;
  check(motif_frames_count(frames, &count));
  check(motif_frames_save_csv(frames, out_csv.c_str()));
  json doc{{"frames", count}, {"dropped", dropped}, {"out", out_csv}};
  emit(doc, "decoded " + std::to_string(count) + " frames (" +
                std::to_string(dropped) + " dropped) -> " + out_csv);
}

void run_paint(const std::string& cloud_path, const std::string& camera_path,
               const std::string& thermal_path, const std::string& depth_path,
               const std::string& out_path) {
  ConfigH config = load_config();
  CloudH cloud;
  check(motif_cloud_load_ply(cloud_path.c_str(), cloud.out()));
  CameraH camera;
  check(motif_camera_load(camera_path.c_str(), camera.out()));
  ThermalH thermal;
  check(motif_thermal_load(thermal_path.c_str(), thermal.out()));
  DepthH depth;
  check(motif_depth_load(depth_path.c_str(), depth.out()));

  StringOut stats;
  check(motif_paint(cloud, camera, thermal, depth, config, stats.out()));
  check(motif_cloud_save_ply(cloud, out_path.c_str()));

  json doc = stats.parse();
  doc["out"] = out_path;
  emit(doc, "painted " + doc["painted"].dump() + "/" + doc["total"].dump() +
                " points (" + doc["occluded"].dump() + " occluded, " +
                doc["out_of_view"].dump() + " out of view) -> " + out_path);
}

void run_denoise(const std::string& cloud_path, const std::string& out_path,
                 const std::string& report_path) {
  ConfigH config = load_config();
  CloudH cloud;
  check(motif_cloud_load_ply(cloud_path.c_str(), cloud.out()));
  CloudH cleaned;
  StringOut report;
  check(motif_denoise(cloud, config, cleaned.out(), report.out()));
  check(motif_cloud_save_ply(cleaned, out_path.c_str()));

  json doc = report.parse();
  doc["out"] = out_path;
  if (!report_path.empty()) write_text_file(report_path, doc.dump(2));
  emit(doc, "boundary at slice " + doc["boundary"]["upper_slice"].dump() +
                (doc["boundary"]["qualified"].get<bool>() ? ""
                                                          : " (low confidence)") +
                ", corrected " + doc["anomaly_count"].dump() + " points -> " +
                out_path);
}

void run_filter_grasps(const std::string& cloud_path,
                       const std::string& grasps_path,
                       const std::string& out_path, double radius) {
  ConfigH config = load_config();
  CloudH cloud;
  check(motif_cloud_load_ply(cloud_path.c_str(), cloud.out()));
  GraspsH grasps;
  check(motif_grasps_load(grasps_path.c_str(), grasps.out()));
  GraspsH kept;
  StringOut report;
  check(motif_filter_grasps(cloud, grasps, config, radius, kept.out(),
                            report.out()));
  check(motif_grasps_save(kept, out_path.c_str()));

  json doc = report.parse();
  doc["out"] = out_path;
  emit(doc, "kept " + doc["kept"].dump() + "/" + doc["total"].dump() +
                " grasps against " + doc["hot_points"].dump() +
                " hot points -> " + out_path);
}

void run_features(const std::string& traces_dir, const std::string& out_csv) {
  ConfigH config = load_config();
  TracesH traces;
  check(motif_traces_load_dir(traces_dir.c_str(), traces.out()));
  FeaturesH features;
  StringOut stats;
  check(motif_features_extract(traces, config, features.out(), stats.out()));
  check(motif_features_save_csv(features, out_csv.c_str()));

  json doc = stats.parse();
  doc["out"] = out_csv;
  emit(doc, "extracted features for " + doc["traces"].dump() + " traces (" +
                doc["filled_samples"].dump() + " samples filled) -> " + out_csv);
}

void run_lda_fit(const std::string& features_csv, const std::string& out_model) {
  ConfigH config = load_config();
  FeaturesH features;
  check(motif_features_load_csv(features_csv.c_str(), features.out()));
  LdaH model;
  check(motif_lda_fit(features, config, model.out()));
  check(motif_lda_save(model, out_model.c_str()));

  StringOut card;
  check(motif_lda_describe(model, card.out()));
  json doc = card.parse();
  doc["out"] = out_model;
  emit(doc, "fitted " + std::to_string(doc["class_labels"].size()) +
                " classes, retained " + doc["retained_directions"].dump() +
                " directions, explained variance " +
                doc["explained_variance"].dump() + " -> " + out_model);
}

void run_lda_classify(const std::string& model_path,
                      const std::string& features_csv,
                      const std::string& out_path) {
  LdaH model;
  check(motif_lda_load(model_path.c_str(), model.out()));
  FeaturesH features;
  check(motif_features_load_csv(features_csv.c_str(), features.out()));
  StringOut results;
  check(motif_lda_classify(model, features, results.out()));

  json doc = results.parse();
  if (!out_path.empty()) write_text_file(out_path, doc.dump(2));
  std::string human =
      "classified " + std::to_string(doc["results"].size()) + " rows";
  if (doc.contains("accuracy")) {
    human += ", accuracy " + doc["accuracy"].dump() + " on " +
             doc["labeled"].dump() + " labeled rows";
  }
  if (!out_path.empty()) human += " -> " + out_path;
  emit(doc, human);
}

json make_lda_report(const motif_features_t* features, double coverage) {
  ConfigH config = load_config();
  StringOut report;
  check(motif_lda_report(features, config, coverage, report.out()));
  return report.parse();
}

void emit_lda_report(const json& doc, const std::string& out_path) {
  json printed = doc;
  if (!out_path.empty()) {
    write_text_file(out_path, printed.dump(2));
    printed["out"] = out_path;
  }
  std::string human = "leave-one-out accuracy " +
                      printed["loo"]["accuracy"].dump() +
                      ", explained variance " +
                      printed["explained_variance"].dump();
  if (!out_path.empty()) human += " -> " + out_path;
  emit(printed, human);
}

void run_lda_report(const std::string& features_csv, double coverage,
                    const std::string& out_path) {
  FeaturesH features;
  check(motif_features_load_csv(features_csv.c_str(), features.out()));
  emit_lda_report(make_lda_report(features, coverage), out_path);
}

void run_synth_cylinder(std::uint64_t seed, std::int64_t anomalies,
                        const std::string& out_ply,
                        const std::string& truth_path) {
  ConfigH config = load_config();
  CloudH cloud;
  StringOut truth;
  check(motif_synth_cylinder(config, seed, anomalies, cloud.out(), truth.out()));
  check(motif_cloud_save_ply(cloud, out_ply.c_str()));

  size_t count = 0;
  check(motif_cloud_count(cloud, &count));
  json truth_doc = truth.parse();
  if (!truth_path.empty()) write_text_file(truth_path, truth_doc.dump(2));
  json doc{{"points", count},
           {"anomalies", truth_doc["anomaly_indices"].size()},
           {"boundary_z", truth_doc["boundary_z"]},
           {"out", out_ply}};
  emit(doc, "generated " + std::to_string(count) + " points with " +
                std::to_string(truth_doc["anomaly_indices"].size()) +
                " anomalies -> " + out_ply);
}

void run_synth_flicks(std::uint64_t seed, const std::string& out_dir) {
  ConfigH config = load_config();
  TracesH traces;
  check(motif_synth_flicks(config, seed, traces.out()));
  check(motif_traces_save_dir(traces, out_dir.c_str()));
  size_t count = 0;
  check(motif_traces_count(traces, &count));
  json doc{{"traces", count}, {"out", out_dir}};
  emit(doc, "generated " + std::to_string(count) + " flick traces -> " + out_dir);
}

void run_pipeline_thermal(const std::string& cloud_path,
                          const std::string& camera_path,
                          const std::string& thermal_path,
                          const std::string& depth_path,
                          const std::string& grasps_path,
                          const std::string& out_path, double radius,
                          const std::string& cleaned_path) {
  ConfigH config = load_config();
  CloudH cloud;
  check(motif_cloud_load_ply(cloud_path.c_str(), cloud.out()));

  json doc;
  const bool with_paint = !camera_path.empty();
  if (with_paint) {
    CameraH camera;
    check(motif_camera_load(camera_path.c_str(), camera.out()));
    ThermalH thermal;
    check(motif_thermal_load(thermal_path.c_str(), thermal.out()));
    DepthH depth;
    check(motif_depth_load(depth_path.c_str(), depth.out()));
    StringOut stats;
    check(motif_paint(cloud, camera, thermal, depth, config, stats.out()));
    doc["paint"] = stats.parse();
  }

  CloudH cleaned;
  StringOut denoise_report;
  check(motif_denoise(cloud, config, cleaned.out(), denoise_report.out()));
  doc["denoise"] = denoise_report.parse();
  if (!cleaned_path.empty()) {
    check(motif_cloud_save_ply(cleaned, cleaned_path.c_str()));
  }

  GraspsH grasps;
  check(motif_grasps_load(grasps_path.c_str(), grasps.out()));
  GraspsH kept;
  StringOut filter_report;
  check(motif_filter_grasps(cleaned, grasps, config, radius, kept.out(),
                            filter_report.out()));
  check(motif_grasps_save(kept, out_path.c_str()));
  doc["filter"] = filter_report.parse();
  doc["out"] = out_path;

  emit(doc, "boundary at slice " +
                doc["denoise"]["boundary"]["upper_slice"].dump() +
                ", corrected " + doc["denoise"]["anomaly_count"].dump() +
                " points, kept " + doc["filter"]["kept"].dump() + "/" +
                doc["filter"]["total"].dump() + " grasps -> " + out_path);
}

void run_pipeline_flick(const std::string& traces_dir, bool synth,
                        std::uint64_t seed, double coverage,
                        const std::string& features_out,
                        const std::string& model_out,
                        const std::string& out_path) {
  ConfigH config = load_config();
  TracesH traces;
  if (synth) {
    check(motif_synth_flicks(config, seed, traces.out()));
  } else {
    check(motif_traces_load_dir(traces_dir.c_str(), traces.out()));
  }

  FeaturesH features;
  StringOut stats;
  check(motif_features_extract(traces, config, features.out(), stats.out()));
  if (!features_out.empty()) {
    check(motif_features_save_csv(features, features_out.c_str()));
  }
  if (!model_out.empty()) {
    LdaH model;
    check(motif_lda_fit(features, config, model.out()));
    check(motif_lda_save(model, model_out.c_str()));
  }

  json doc = make_lda_report(features, coverage);
  doc["extraction"] = stats.parse();
  emit_lda_report(doc, out_path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MOTIF hand pipelines: thermal grasp filtering and "
               "flick-based mass classification"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_flag("--json", g_json, "machine-readable JSON on stdout");
  app.add_option("--config", g_config_path,
                 "pipeline config file (falls back to $MOTIF_CONFIG)");

  // decode
  std::string in_path, out_path, cloud_path, camera_path, thermal_path,
      depth_path, grasps_path, report_path, traces_dir, features_csv,
      model_path, cleaned_path, truth_path;
  double radius = -1.0;
  double coverage = 0.95;
  std::uint64_t seed = 42;
  std::int64_t anomalies = -1;
  bool use_synth = false;

  auto* decode = app.add_subcommand("decode", "decode wire bytes to a CSV table");
  decode->add_option("input", in_path, "binary stream")->required();
  decode->add_option("--out", out_path, "output CSV")->required();
  decode->callback([&] { run_decode(in_path, out_path); });

  auto* paint = app.add_subcommand(
      "paint", "attach thermal readings to visible cloud points");
  paint->add_option("--cloud", cloud_path, "input PLY")->required();
  paint->add_option("--camera", camera_path, "camera JSON")->required();
  paint->add_option("--thermal", thermal_path, "thermal PGM16")->required();
  paint->add_option("--depth", depth_path, "depth PGM16")->required();
  paint->add_option("--out", out_path, "output PLY")->required();
  paint->callback([&] {
    run_paint(cloud_path, camera_path, thermal_path, depth_path, out_path);
  });

  auto* denoise = app.add_subcommand(
      "denoise", "find the hot/cool boundary and correct color anomalies");
  denoise->add_option("--cloud", cloud_path, "input PLY")->required();
  denoise->add_option("--out", out_path, "output PLY")->required();
  denoise->add_option("--report", report_path, "write the JSON report here");
  denoise->callback([&] { run_denoise(cloud_path, out_path, report_path); });

  auto* filter = app.add_subcommand(
      "filter-grasps", "drop grasps with contacts near the hot region");
  filter->add_option("--cloud", cloud_path, "scored cloud PLY")->required();
  filter->add_option("--grasps", grasps_path, "candidate grasps JSON")->required();
  filter->add_option("--out", out_path, "kept grasps JSON")->required();
  filter->add_option("--radius", radius, "safety radius in meters");
  filter->callback(
      [&] { run_filter_grasps(cloud_path, grasps_path, out_path, radius); });

  auto* features = app.add_subcommand(
      "features", "window flick traces and extract the 42 statistics");
  features->add_option("--traces", traces_dir, "trace directory")->required();
  features->add_option("--out", out_path, "features CSV")->required();
  features->callback([&] { run_features(traces_dir, out_path); });

  auto* lda = app.add_subcommand("lda", "mass-classifier operations");
  lda->require_subcommand(1);
  auto* lda_fit = lda->add_subcommand("fit", "fit a discriminant model");
  lda_fit->add_option("--features", features_csv, "features CSV")->required();
  lda_fit->add_option("--out", out_path, "model JSON")->required();
  lda_fit->callback([&] { run_lda_fit(features_csv, out_path); });

  auto* lda_classify = lda->add_subcommand("classify", "label feature rows");
  lda_classify->add_option("--model", model_path, "model JSON")->required();
  lda_classify->add_option("--features", features_csv, "features CSV")->required();
  lda_classify->add_option("--out", out_path, "write results JSON here");
  lda_classify->callback(
      [&] { run_lda_classify(model_path, features_csv, out_path); });

  auto* lda_report = lda->add_subcommand(
      "report", "fit, cross-validate and summarize");
  lda_report->add_option("--features", features_csv, "features CSV")->required();
  lda_report->add_option("--coverage", coverage, "ellipse coverage (0,1)");
  lda_report->add_option("--out", out_path, "write the report JSON here");
  lda_report->callback([&] { run_lda_report(features_csv, coverage, out_path); });

  auto* synth = app.add_subcommand("synth", "generate synthetic inputs");
  synth->require_subcommand(1);
  auto* synth_cyl = synth->add_subcommand(
      "cylinder", "hot-banded cylinder cloud with seeded anomalies");
  synth_cyl->add_option("--seed", seed, "RNG seed");
  synth_cyl->add_option("--anomalies", anomalies,
                        "anomaly count (default: configured value)");
  synth_cyl->add_option("--out", out_path, "output PLY")->required();
  synth_cyl->add_option("--truth", truth_path, "write ground truth JSON here");
  synth_cyl->callback(
      [&] { run_synth_cylinder(seed, anomalies, out_path, truth_path); });

  auto* synth_flicks = synth->add_subcommand(
      "flicks", "labeled flick traces for the three reference masses");
  synth_flicks->add_option("--seed", seed, "RNG seed");
  synth_flicks->add_option("--out", out_path, "output directory")->required();
  synth_flicks->callback([&] { run_synth_flicks(seed, out_path); });

  auto* pipeline = app.add_subcommand("pipeline", "end-to-end runs");
  pipeline->require_subcommand(1);
  auto* pipe_thermal = pipeline->add_subcommand(
      "thermal", "paint (optional), denoise, filter grasps");
  pipe_thermal->add_option("--cloud", cloud_path, "input PLY")->required();
  auto* pt_cam = pipe_thermal->add_option("--camera", camera_path, "camera JSON");
  auto* pt_thm = pipe_thermal->add_option("--thermal", thermal_path, "thermal PGM16");
  auto* pt_dep = pipe_thermal->add_option("--depth", depth_path, "depth PGM16");
  pt_cam->needs(pt_thm, pt_dep);
  pt_thm->needs(pt_cam, pt_dep);
  pt_dep->needs(pt_cam, pt_thm);
  pipe_thermal->add_option("--grasps", grasps_path, "candidate grasps JSON")
      ->required();
  pipe_thermal->add_option("--out", out_path, "kept grasps JSON")->required();
  pipe_thermal->add_option("--radius", radius, "safety radius in meters");
  pipe_thermal->add_option("--cleaned", cleaned_path, "write the denoised PLY here");
  pipe_thermal->callback([&] {
    run_pipeline_thermal(cloud_path, camera_path, thermal_path, depth_path,
                         grasps_path, out_path, radius, cleaned_path);
  });

  auto* pipe_flick = pipeline->add_subcommand(
      "flick", "features + fit + leave-one-out report");
  auto* pf_traces = pipe_flick->add_option("--traces", traces_dir,
                                           "trace directory");
  auto* pf_synth = pipe_flick->add_flag("--synth", use_synth,
                                        "generate synthetic traces instead");
  pf_traces->excludes(pf_synth);
  pipe_flick->add_option("--seed", seed, "RNG seed for --synth");
  pipe_flick->add_option("--coverage", coverage, "ellipse coverage (0,1)");
  pipe_flick->add_option("--features-out", features_csv, "write features CSV here");
  pipe_flick->add_option("--model-out", model_path, "write the model JSON here");
  pipe_flick->add_option("--out", out_path, "write the report JSON here");
  pipe_flick->callback([&] {
    if (!use_synth && traces_dir.empty()) {
      throw CLI::RequiredError("--traces or --synth");
    }
    run_pipeline_flick(traces_dir, use_synth, seed, coverage, features_csv,
                       model_path, out_path);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const CliError& e) {
    if (g_json) {
      json envelope;
      envelope["error"] = {{"code", motif_status_name(e.status)},
                           {"message", e.message}};
      std::cout << envelope.dump(2) << '\n';
    }
    std::cerr << "error [" << motif_status_name(e.status) << "]: " << e.message
              << '\n';
    return 1;
  }
  return 0;
}
