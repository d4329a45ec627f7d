#include "motif/motif_c.h"

#include <cstdlib>
#include <cstring>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "motif/affordance.hpp"
#include "motif/config.hpp"
#include "motif/errors.hpp"
#include "motif/features.hpp"
#include "motif/io.hpp"
#include "motif/lda.hpp"
#include "motif/projection.hpp"
#include "motif/synth.hpp"
#include "motif/wire.hpp"

using nlohmann::json;

// Handle definitions. Each wraps exactly one core value.
struct motif_config { motif::config::PipelineConfig value; };
struct motif_frames { std::vector<motif::wire::SensorFrame> value; };
struct motif_cloud { motif::PointCloud value; };
struct motif_camera { motif::projection::CameraModel value; };
struct motif_thermal { motif::projection::ThermalImage value; };
struct motif_depth { motif::projection::DepthImage value; };
struct motif_grasps { std::vector<motif::affordance::GraspCandidate> value; };
struct motif_traces { std::vector<motif::io::RecordedTrace> value; };
struct motif_features { motif::features::FeatureMatrix value; };
struct motif_lda { motif::lda::LdaModel value; };

namespace {

thread_local std::string g_last_error;

motif_status map_code(motif::ErrorCode code) {
  using motif::ErrorCode;
  switch (code) {
    case ErrorCode::ok: return MOTIF_OK;
    case ErrorCode::invalid_argument: return MOTIF_ERR_INVALID_ARGUMENT;
    case ErrorCode::file_not_found: return MOTIF_ERR_FILE_NOT_FOUND;
    case ErrorCode::io: return MOTIF_ERR_IO;
    case ErrorCode::parse: return MOTIF_ERR_PARSE;
    case ErrorCode::config: return MOTIF_ERR_CONFIG;
    case ErrorCode::incomplete_frame: return MOTIF_ERR_INCOMPLETE_FRAME;
    case ErrorCode::crc_mismatch: return MOTIF_ERR_CRC_MISMATCH;
    case ErrorCode::non_positive_depth: return MOTIF_ERR_NON_POSITIVE_DEPTH;
    case ErrorCode::pixel_out_of_bounds: return MOTIF_ERR_PIXEL_OUT_OF_BOUNDS;
    case ErrorCode::behind_camera: return MOTIF_ERR_BEHIND_CAMERA;
    case ErrorCode::dimension_mismatch: return MOTIF_ERR_DIMENSION_MISMATCH;
    case ErrorCode::empty_cloud: return MOTIF_ERR_EMPTY_CLOUD;
    case ErrorCode::too_few_slices: return MOTIF_ERR_TOO_FEW_SLICES;
    case ErrorCode::missing_scores: return MOTIF_ERR_MISSING_SCORES;
    case ErrorCode::insufficient_coverage:
      return MOTIF_ERR_INSUFFICIENT_COVERAGE;
    case ErrorCode::empty_trace: return MOTIF_ERR_EMPTY_TRACE;
    case ErrorCode::unlabeled_trace: return MOTIF_ERR_UNLABELED_TRACE;
    case ErrorCode::degenerate_class: return MOTIF_ERR_DEGENERATE_CLASS;
    case ErrorCode::rank_collapse: return MOTIF_ERR_RANK_COLLAPSE;
    case ErrorCode::too_few_points: return MOTIF_ERR_TOO_FEW_POINTS;
    case ErrorCode::degenerate_covariance:
      return MOTIF_ERR_DEGENERATE_COVARIANCE;
    case ErrorCode::invalid_geometry: return MOTIF_ERR_INVALID_GEOMETRY;
    case ErrorCode::internal: return MOTIF_ERR_INTERNAL;
  }
  return MOTIF_ERR_INTERNAL;
}

// Runs the body, translating exceptions into statuses. Out-parameters must
// be written only after the last throwing statement.
template <typename Fn>
motif_status guarded(Fn&& fn) noexcept {
  try {
    fn();
    return MOTIF_OK;
  } catch (const motif::Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return MOTIF_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return MOTIF_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return MOTIF_ERR_INTERNAL;
  }
}

motif_status fail_null(const char* what) {
  g_last_error = std::string("null argument: ") + what;
  return MOTIF_ERR_INVALID_ARGUMENT;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

char* dup_json(const json& j) { return dup_string(j.dump(2)); }

const motif::config::PipelineConfig& cfg_or_default(
    const motif_config_t* config) {
  static const motif::config::PipelineConfig defaults;
  return config != nullptr ? config->value : defaults;
}

json rgb_to_json(const std::array<std::uint8_t, 3>& rgb) {
  return json::array({rgb[0], rgb[1], rgb[2]});
}

// Windowing shared by extraction: aligns every recorded trace and keeps its
// label (possibly absent).
std::vector<motif::features::FlickTrace> window_all(
    const std::vector<motif::io::RecordedTrace>& recs,
    const motif::wire::FrameStreamConfig& stream) {
  std::vector<motif::features::FlickTrace> out;
  out.reserve(recs.size());
  for (const auto& rec : recs) {
    motif::features::FlickTrace trace =
        motif::features::window_trace(rec.frames, rec.trigger_us, stream);
    trace.label = rec.label;
    out.push_back(std::move(trace));
  }
  return out;
}

}  // namespace

extern "C" {

const char* motif_status_name(motif_status status) {
  switch (status) {
    case MOTIF_OK: return "Ok";
    case MOTIF_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case MOTIF_ERR_FILE_NOT_FOUND: return "FileNotFound";
    case MOTIF_ERR_IO: return "Io";
    case MOTIF_ERR_PARSE: return "Parse";
    case MOTIF_ERR_CONFIG: return "Config";
    case MOTIF_ERR_INCOMPLETE_FRAME: return "IncompleteFrame";
    case MOTIF_ERR_CRC_MISMATCH: return "CrcMismatch";
    case MOTIF_ERR_NON_POSITIVE_DEPTH: return "NonPositiveDepth";
    case MOTIF_ERR_PIXEL_OUT_OF_BOUNDS: return "PixelOutOfBounds";
    case MOTIF_ERR_BEHIND_CAMERA: return "BehindCamera";
    case MOTIF_ERR_DIMENSION_MISMATCH: return "DimensionMismatch";
    case MOTIF_ERR_EMPTY_CLOUD: return "EmptyCloud";
    case MOTIF_ERR_TOO_FEW_SLICES: return "TooFewSlices";
    case MOTIF_ERR_MISSING_SCORES: return "MissingScores";
    case MOTIF_ERR_INSUFFICIENT_COVERAGE: return "InsufficientCoverage";
    case MOTIF_ERR_EMPTY_TRACE: return "EmptyTrace";
    case MOTIF_ERR_UNLABELED_TRACE: return "UnlabeledTrace";
    case MOTIF_ERR_DEGENERATE_CLASS: return "DegenerateClass";
    case MOTIF_ERR_RANK_COLLAPSE: return "RankCollapse";
    case MOTIF_ERR_TOO_FEW_POINTS: return "TooFewPoints";
    case MOTIF_ERR_DEGENERATE_COVARIANCE: return "DegenerateCovariance";
    case MOTIF_ERR_INVALID_GEOMETRY: return "InvalidGeometry";
    case MOTIF_ERR_INTERNAL: return "Internal";
  }
  return "Internal";
}

const char* motif_last_error(void) { return g_last_error.c_str(); }

void motif_string_free(char* str) { std::free(str); }
void motif_buffer_free(uint8_t* buf) { std::free(buf); }

/* ---- configuration ---- */

motif_status motif_config_default(motif_config_t** out) {
  if (out == nullptr) return fail_null("out");
  return guarded([&] { *out = new motif_config{}; });
}

motif_status motif_config_load(const char* path, motif_config_t** out) {
  if (path == nullptr) return fail_null("path");
  if (out == nullptr) return fail_null("out");
  return guarded([&] {
    auto value = motif::config::load_config(path);
    *out = new motif_config{std::move(value)};
  });
}

void motif_config_free(motif_config_t* config) { delete config; }

/* ---- frames ---- */

motif_status motif_frames_create(motif_frames_t** out) {
  if (out == nullptr) return fail_null("out");
  return guarded([&] { *out = new motif_frames{}; });
}

motif_status motif_frames_push(motif_frames_t* frames,
                               const motif_frame_t* frame) {
  if (frames == nullptr) return fail_null("frames");
  if (frame == nullptr) return fail_null("frame");
  return guarded([&] {
    if (frame->unit_id > motif::wire::k_max_unit_id) {
      motif::raise(motif::ErrorCode::invalid_argument, "unit_id exceeds 11");
    }
    motif::wire::SensorFrame f;
    f.unit_id = frame->unit_id;
    f.timestamp_us = frame->timestamp_us;
    for (std::size_t a = 0; a < 3; ++a) {
      f.acc[a] = frame->acc[a];
      f.gyro[a] = frame->gyro[a];
      f.mag[a] = frame->mag[a];
    }
    if (frame->has_tactile != 0) {
      std::array<std::uint16_t, 36> tact{};
      for (std::size_t i = 0; i < 36; ++i) tact[i] = frame->tactile[i];
      f.tactile = tact;
    }
    frames->value.push_back(f);
  });
}

motif_status motif_frames_count(const motif_frames_t* frames, size_t* out) {
  if (frames == nullptr) return fail_null("frames");
  if (out == nullptr) return fail_null("out");
  *out = frames->value.size();
  return MOTIF_OK;
}

motif_status motif_frames_get(const motif_frames_t* frames, size_t index,
                              motif_frame_t* out) {
  if (frames == nullptr) return fail_null("frames");
  if (out == nullptr) return fail_null("out");
  if (index >= frames->value.size()) {
    g_last_error = "frame index out of range";
    return MOTIF_ERR_INVALID_ARGUMENT;
  }
  const motif::wire::SensorFrame& f = frames->value[index];
  std::memset(out, 0, sizeof(*out));
  out->unit_id = f.unit_id;
  out->has_tactile = f.tactile.has_value() ? 1 : 0;
  out->timestamp_us = f.timestamp_us;
  for (std::size_t a = 0; a < 3; ++a) {
    out->acc[a] = f.acc[a];
    out->gyro[a] = f.gyro[a];
    out->mag[a] = f.mag[a];
  }
  if (f.tactile) {
    for (std::size_t i = 0; i < 36; ++i) out->tactile[i] = (*f.tactile)[i];
  }
  return MOTIF_OK;
}

void motif_frames_free(motif_frames_t* frames) { delete frames; }

motif_status motif_decode(const uint8_t* data, size_t size,
                          motif_frames_t** out, size_t* dropped) {
  if (data == nullptr && size > 0) return fail_null("data");
  if (out == nullptr) return fail_null("out");
  return guarded([&] {
    const motif::wire::StreamDecode decoded =
        motif::wire::decode_stream({data, size});
    auto* handle = new motif_frames{std::move(decoded.frames)};
    *out = handle;
    if (dropped != nullptr) *dropped = decoded.dropped;
  });
}

motif_status motif_encode(const motif_frames_t* frames, uint8_t** out,
                          size_t* size) {
  if (frames == nullptr) return fail_null("frames");
  if (out == nullptr) return fail_null("out");
  if (size == nullptr) return fail_null("size");
  return guarded([&] {
    std::vector<std::uint8_t> bytes;
    for (const auto& frame : frames->value) {
      motif::wire::encode_frame(frame, bytes);
    }
    auto* buf = static_cast<uint8_t*>(std::malloc(bytes.empty() ? 1 : bytes.size()));
    if (buf == nullptr) throw std::bad_alloc();
    std::memcpy(buf, bytes.data(), bytes.size());
    *out = buf;
    *size = bytes.size();
  });
}

motif_status motif_frames_save_csv(const motif_frames_t* frames,
                                   const char* path) {
  if (frames == nullptr) return fail_null("frames");
  if (path == nullptr) return fail_null("path");
  return guarded([&] { motif::io::save_frames(path, frames->value); });
}

/* ---- clouds, cameras, rasters ---- */

motif_status motif_cloud_load_ply(const char* path, motif_cloud_t** out) {
  if (path == nullptr) return fail_null("path");
  if (out == nullptr) return fail_null("out");
  return guarded([&] {
    auto cloud = motif::io::load_ply(path);
    *out = new motif_cloud{std::move(cloud)};
  });
}

motif_status motif_cloud_save_ply(const motif_cloud_t* cloud,
                                  const char* path) {
  if (cloud == nullptr) return fail_null("cloud");
  if (path == nullptr) return fail_null("path");
  return guarded([&] { motif::io::save_ply(path, cloud->value); });
}

motif_status motif_cloud_count(const motif_cloud_t* cloud, size_t* out) {
  if (cloud == nullptr) return fail_null("cloud");
  if (out == nullptr) return fail_null("out");
  *out = cloud->value.size();
  return MOTIF_OK;
}

void motif_cloud_free(motif_cloud_t* cloud) { delete cloud; }

motif_status motif_camera_load(const char* path, motif_camera_t** out) {
  if (path == nullptr) return fail_null("path");
  if (out == nullptr) return fail_null("out");
  return guarded([&] {
    auto camera = motif::io::load_camera(path);
    *out = new motif_camera{std::move(camera)};
  });
}

void motif_camera_free(motif_camera_t* camera) { delete camera; }

motif_status motif_thermal_load(const char* path, motif_thermal_t** out) {
  if (path == nullptr) return fail_null("path");
  if (out == nullptr) return fail_null("out");
  return guarded([&] {
    auto image = motif::io::load_thermal(path);
    *out = new motif_thermal{std::move(image)};
  });
}

void motif_thermal_free(motif_thermal_t* thermal) { delete thermal; }

motif_status motif_depth_load(const char* path, motif_depth_t** out) {
  if (path == nullptr) return fail_null("path");
  if (out == nullptr) return fail_null("out");
  return guarded([&] {
    auto image = motif::io::load_depth(path);
    *out = new motif_depth{std::move(image)};
  });
}

void motif_depth_free(motif_depth_t* depth) { delete depth; }

/* ---- thermal pipeline ---- */

motif_status motif_paint(motif_cloud_t* cloud, const motif_camera_t* camera,
                         const motif_thermal_t* thermal,
                         const motif_depth_t* depth,
                         const motif_config_t* config, char** stats_json) {
  if (cloud == nullptr) return fail_null("cloud");
  if (camera == nullptr) return fail_null("camera");
  if (thermal == nullptr) return fail_null("thermal");
  if (depth == nullptr) return fail_null("depth");
  return guarded([&] {
    const auto& cfg = cfg_or_default(config);
    motif::projection::PaintResult result =
        motif::projection::paint_thermal(cloud->value, camera->value,
                                         thermal->value, depth->value,
                                         cfg.depth_tolerance);
    json stats;
    stats["total"] = result.cloud.size();
    stats["painted"] = result.painted;
    stats["occluded"] = result.occluded;
    stats["out_of_view"] = result.out_of_view;
    char* stats_out = stats_json != nullptr ? dup_json(stats) : nullptr;
    cloud->value = std::move(result.cloud);
    if (stats_json != nullptr) *stats_json = stats_out;
  });
}

motif_status motif_denoise(const motif_cloud_t* cloud,
                           const motif_config_t* config,
                           motif_cloud_t** cleaned, char** report_json) {
  if (cloud == nullptr) return fail_null("cloud");
  if (cleaned == nullptr) return fail_null("cleaned");
  return guarded([&] {
    const auto& cfg = cfg_or_default(config).denoise;
    motif::PointCloud scored = cloud->value;
    motif::affordance::score_cloud(scored, cfg);
    const motif::affordance::SliceProfile profile =
        motif::affordance::slice_cloud(scored, cfg.axis, cfg.slice_height);
    const motif::affordance::BoundaryResult boundary =
        motif::affordance::find_boundary(profile, cfg);
    motif::affordance::DenoiseResult result =
        motif::affordance::denoise(scored, profile, boundary.upper_slice, cfg);

    json report;
    report["boundary"] = {{"upper_slice", boundary.upper_slice},
                          {"drop", boundary.drop},
                          {"qualified", boundary.qualified}};
    report["slice_count"] = profile.slices.size();
    report["anomaly_count"] = result.anomaly_count;
    report["dominant_below"] = rgb_to_json(result.dominant_below);
    report["dominant_above"] = rgb_to_json(result.dominant_above);
    char* report_out = report_json != nullptr ? dup_json(report) : nullptr;

    *cleaned = new motif_cloud{std::move(result.cloud)};
    if (report_json != nullptr) *report_json = report_out;
  });
}

/* ---- grasps ---- */

motif_status motif_grasps_load(const char* path, motif_grasps_t** out) {
  if (path == nullptr) return fail_null("path");
  if (out == nullptr) return fail_null("out");
  return guarded([&] {
    auto grasps = motif::io::load_grasps(path);
    *out = new motif_grasps{std::move(grasps)};
  });
}

motif_status motif_grasps_save(const motif_grasps_t* grasps,
                               const char* path) {
  if (grasps == nullptr) return fail_null("grasps");
  if (path == nullptr) return fail_null("path");
  return guarded([&] { motif::io::save_grasps(path, grasps->value); });
}

motif_status motif_grasps_count(const motif_grasps_t* grasps, size_t* out) {
  if (grasps == nullptr) return fail_null("grasps");
  if (out == nullptr) return fail_null("out");
  *out = grasps->value.size();
  return MOTIF_OK;
}

void motif_grasps_free(motif_grasps_t* grasps) { delete grasps; }

motif_status motif_filter_grasps(const motif_cloud_t* cloud,
                                 const motif_grasps_t* grasps,
                                 const motif_config_t* config,
                                 double safety_radius, motif_grasps_t** kept,
                                 char** report_json) {
  if (cloud == nullptr) return fail_null("cloud");
  if (grasps == nullptr) return fail_null("grasps");
  if (kept == nullptr) return fail_null("kept");
  return guarded([&] {
    const auto& cfg = cfg_or_default(config);
    const double radius = safety_radius < 0.0 ? cfg.safety_radius : safety_radius;
    motif::PointCloud scored = cloud->value;
    motif::affordance::score_cloud(scored, cfg.denoise);
    const motif::affordance::AffordanceMap map = motif::affordance::build_affordance(
        std::move(scored), cfg.denoise.upper_hot_threshold);
    motif::affordance::FilterResult result =
        motif::affordance::filter_grasps(grasps->value, map, radius);

    json report;
    report["total"] = grasps->value.size();
    report["kept"] = result.kept_indices.size();
    report["kept_indices"] = result.kept_indices;
    report["hot_points"] = map.hot_indices.size();
    report["safety_radius"] = radius;
    json rejections = json::array();
    for (const auto& r : result.rejections) {
      rejections.push_back({{"candidate", r.candidate},
                            {"contact", r.contact},
                            {"hot_point", r.hot_point},
                            {"distance", r.distance}});
    }
    report["rejections"] = std::move(rejections);
    char* report_out = report_json != nullptr ? dup_json(report) : nullptr;

    *kept = new motif_grasps{std::move(result.kept)};
    if (report_json != nullptr) *report_json = report_out;
  });
}

/* ---- traces and features ---- */

motif_status motif_traces_load_dir(const char* dir, motif_traces_t** out) {
  if (dir == nullptr) return fail_null("dir");
  if (out == nullptr) return fail_null("out");
  return guarded([&] {
    auto traces = motif::io::load_traces(dir);
    *out = new motif_traces{std::move(traces)};
  });
}

motif_status motif_traces_save_dir(const motif_traces_t* traces,
                                   const char* dir) {
  if (traces == nullptr) return fail_null("traces");
  if (dir == nullptr) return fail_null("dir");
  return guarded([&] {
    const std::filesystem::path base(dir);
    std::filesystem::create_directories(base);
    char name[32];
    for (std::size_t i = 0; i < traces->value.size(); ++i) {
      std::snprintf(name, sizeof(name), "trace_%03zu.csv", i);
      motif::io::save_trace(base / name, traces->value[i]);
    }
  });
}

motif_status motif_traces_count(const motif_traces_t* traces, size_t* out) {
  if (traces == nullptr) return fail_null("traces");
  if (out == nullptr) return fail_null("out");
  *out = traces->value.size();
  return MOTIF_OK;
}

void motif_traces_free(motif_traces_t* traces) { delete traces; }

motif_status motif_features_extract(const motif_traces_t* traces,
                                    const motif_config_t* config,
                                    motif_features_t** out,
                                    char** stats_json) {
  if (traces == nullptr) return fail_null("traces");
  if (out == nullptr) return fail_null("out");
  return guarded([&] {
    const auto& cfg = cfg_or_default(config);
    const auto windowed = window_all(traces->value, cfg.stream);

    // Labels stay optional here (classification input); fitting rejects
    // unlabeled rows later.
    motif::features::FeatureMatrix matrix;
    matrix.values.resize(static_cast<Eigen::Index>(windowed.size()),
                         static_cast<Eigen::Index>(motif::features::k_feature_count));
    matrix.labels.reserve(windowed.size());
    std::size_t filled = 0;
    for (std::size_t i = 0; i < windowed.size(); ++i) {
      const motif::features::FeatureVector row = motif::features::extract_features(
          windowed[i], cfg.features_std_divisor);
      for (std::size_t c = 0; c < motif::features::k_feature_count; ++c) {
        matrix.values(static_cast<Eigen::Index>(i),
                      static_cast<Eigen::Index>(c)) = row[c];
      }
      matrix.labels.push_back(windowed[i].label.value_or(""));
      filled += windowed[i].fill_count;
    }

    json stats;
    stats["traces"] = windowed.size();
    stats["filled_samples"] = filled;
    char* stats_out = stats_json != nullptr ? dup_json(stats) : nullptr;

    *out = new motif_features{std::move(matrix)};
    if (stats_json != nullptr) *stats_json = stats_out;
  });
}

motif_status motif_features_save_csv(const motif_features_t* features,
                                     const char* path) {
  if (features == nullptr) return fail_null("features");
  if (path == nullptr) return fail_null("path");
  return guarded([&] { motif::io::save_features(path, features->value); });
}

motif_status motif_features_load_csv(const char* path,
                                     motif_features_t** out) {
  if (path == nullptr) return fail_null("path");
  if (out == nullptr) return fail_null("out");
  return guarded([&] {
    auto matrix = motif::io::load_features(path);
    *out = new motif_features{std::move(matrix)};
  });
}

motif_status motif_features_count(const motif_features_t* features,
                                  size_t* out) {
  if (features == nullptr) return fail_null("features");
  if (out == nullptr) return fail_null("out");
  *out = features->value.labels.size();
  return MOTIF_OK;
}

void motif_features_free(motif_features_t* features) { delete features; }

/* ---- LDA ---- */

namespace {

void require_all_labeled(const motif::features::FeatureMatrix& matrix) {
  for (const auto& label : matrix.labels) {
    if (label.empty()) {
      motif::raise(motif::ErrorCode::unlabeled_trace,
                   "fitting requires a label on every row");
    }
  }
}

json loo_to_json(const motif::lda::LooReport& loo) {
  json confusion = json::array();
  for (Eigen::Index r = 0; r < loo.confusion.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < loo.confusion.cols(); ++c) {
      row.push_back(loo.confusion(r, c));
    }
    confusion.push_back(std::move(row));
  }
  json out;
  out["accuracy"] = loo.accuracy;
  out["labels"] = loo.labels;
  out["confusion"] = std::move(confusion);
  return out;
}

json vector_to_json_arr(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

}  // namespace

motif_status motif_lda_fit(const motif_features_t* features,
                           const motif_config_t* config, motif_lda_t** out) {
  if (features == nullptr) return fail_null("features");
  if (out == nullptr) return fail_null("out");
  return guarded([&] {
    require_all_labeled(features->value);
    auto model = motif::lda::fit(features->value.values,
                                 features->value.labels,
                                 cfg_or_default(config).lda);
    *out = new motif_lda{std::move(model)};
  });
}

motif_status motif_lda_save(const motif_lda_t* model, const char* path) {
  if (model == nullptr) return fail_null("model");
  if (path == nullptr) return fail_null("path");
  return guarded([&] { motif::io::save_lda(path, model->value); });
}

motif_status motif_lda_load(const char* path, motif_lda_t** out) {
  if (path == nullptr) return fail_null("path");
  if (out == nullptr) return fail_null("out");
  return guarded([&] {
    auto model = motif::io::load_lda(path);
    *out = new motif_lda{std::move(model)};
  });
}

void motif_lda_free(motif_lda_t* model) { delete model; }

motif_status motif_lda_classify(const motif_lda_t* model,
                                const motif_features_t* features,
                                char** results_json) {
  if (model == nullptr) return fail_null("model");
  if (features == nullptr) return fail_null("features");
  if (results_json == nullptr) return fail_null("results_json");
  return guarded([&] {
    const auto& matrix = features->value;
    json results = json::array();
    std::size_t correct = 0;
    std::size_t labeled = 0;
    for (Eigen::Index r = 0; r < matrix.values.rows(); ++r) {
      const motif::lda::Classification cls =
          motif::lda::classify(model->value, matrix.values.row(r).transpose());
      json entry;
      entry["index"] = static_cast<std::size_t>(r);
      entry["label"] = cls.label;
      json distances;
      for (std::size_t c = 0; c < model->value.class_labels.size(); ++c) {
        distances[model->value.class_labels[c]] =
            cls.distances(static_cast<Eigen::Index>(c));
      }
      entry["distances"] = std::move(distances);
      const std::string& truth = matrix.labels[static_cast<std::size_t>(r)];
      if (!truth.empty()) {
        entry["true_label"] = truth;
        ++labeled;
        if (truth == cls.label) ++correct;
      }
      results.push_back(std::move(entry));
    }
    json out;
    out["results"] = std::move(results);
    if (labeled > 0) {
      out["labeled"] = labeled;
      out["accuracy"] = static_cast<double>(correct) / labeled;
    }
    *results_json = dup_json(out);
  });
}

motif_status motif_lda_describe(const motif_lda_t* model, char** card_json) {
  if (model == nullptr) return fail_null("model");
  if (card_json == nullptr) return fail_null("card_json");
  return guarded([&] {
    const auto& m = model->value;
    json card;
    card["class_labels"] = m.class_labels;
    card["retained_directions"] = m.retained();
    card["eigenvalues"] = vector_to_json_arr(m.eigenvalues);
    card["explained_variance"] = vector_to_json_arr(m.explained_variance);
    json per_direction = json::array();
    for (const auto& contribs : motif::lda::feature_contributions(m)) {
      json list = json::array();
      for (const auto& c : contribs) {
        list.push_back({{"feature", c.feature}, {"weight", c.weight}});
      }
      per_direction.push_back(std::move(list));
    }
    card["contributions"] = std::move(per_direction);
    *card_json = dup_json(card);
  });
}

motif_status motif_lda_report(const motif_features_t* features,
                              const motif_config_t* config,
                              double ellipse_coverage, char** report_json) {
  if (features == nullptr) return fail_null("features");
  if (report_json == nullptr) return fail_null("report_json");
  return guarded([&] {
    const auto& matrix = features->value;
    require_all_labeled(matrix);
    const auto& options = cfg_or_default(config).lda;

    const motif::lda::LdaModel model =
        motif::lda::fit(matrix.values, matrix.labels, options);
    const motif::lda::LooReport loo =
        motif::lda::leave_one_out(matrix.values, matrix.labels, options);

    json report;
    report["classes"] = model.class_labels;
    report["eigenvalues"] = vector_to_json_arr(model.eigenvalues);
    report["explained_variance"] = vector_to_json_arr(model.explained_variance);
    report["loo"] = loo_to_json(loo);

    if (model.retained() >= 2) {
      const Eigen::MatrixXd projected =
          motif::lda::project(model, matrix.values);
      json ellipses = json::array();
      for (std::size_t c = 0; c < model.class_labels.size(); ++c) {
        std::vector<Eigen::Index> rows;
        for (std::size_t i = 0; i < matrix.labels.size(); ++i) {
          if (matrix.labels[i] == model.class_labels[c]) {
            rows.push_back(static_cast<Eigen::Index>(i));
          }
        }
        Eigen::MatrixXd points(static_cast<Eigen::Index>(rows.size()), 2);
        for (std::size_t i = 0; i < rows.size(); ++i) {
          points.row(static_cast<Eigen::Index>(i)) =
              projected.row(rows[i]).leftCols<2>();
        }
        const motif::lda::ConfidenceEllipse ell =
            motif::lda::confidence_ellipse(points, ellipse_coverage);
        ellipses.push_back({{"label", model.class_labels[c]},
                            {"center", {ell.center.x(), ell.center.y()}},
                            {"major_axis", ell.major_axis},
                            {"minor_axis", ell.minor_axis},
                            {"orientation", ell.orientation},
                            {"coverage", ell.coverage}});
      }
      report["ellipses"] = std::move(ellipses);
    }
    *report_json = dup_json(report);
  });
}

/* ---- synthetic data ---- */

motif_status motif_synth_cylinder(const motif_config_t* config, uint64_t seed,
                                  int64_t anomaly_count, motif_cloud_t** out,
                                  char** truth_json) {
  if (out == nullptr) return fail_null("out");
  return guarded([&] {
    motif::synth::CylinderScene scene = cfg_or_default(config).synth_cylinder;
    scene.seed = seed;
    if (anomaly_count >= 0) {
      scene.anomaly_count = static_cast<std::size_t>(anomaly_count);
    }
    motif::synth::CylinderResult result = motif::synth::gen_cylinder(scene);

    json truth;
    truth["anomaly_indices"] = result.truth.anomaly_indices;
    truth["boundary_z"] = result.truth.boundary_z;
    char* truth_out = truth_json != nullptr ? dup_json(truth) : nullptr;

    *out = new motif_cloud{std::move(result.cloud)};
    if (truth_json != nullptr) *truth_json = truth_out;
  });
}

motif_status motif_synth_flicks(const motif_config_t* config, uint64_t seed,
                                motif_traces_t** out) {
  if (out == nullptr) return fail_null("out");
  return guarded([&] {
    const auto& cfg = cfg_or_default(config);
    const auto flicks = motif::synth::gen_mass_benchmark(
        seed, cfg.synth_flick, cfg.synth_trials_per_class);
    std::vector<motif::io::RecordedTrace> recs;
    recs.reserve(flicks.size());
    for (const auto& trace : flicks) {
      recs.push_back(motif::io::to_recorded(trace));
    }
    *out = new motif_traces{std::move(recs)};
  });
}

} /* extern "C" */
