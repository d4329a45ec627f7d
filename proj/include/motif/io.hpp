#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "motif/affordance.hpp"
#include "motif/cloud.hpp"
#include "motif/features.hpp"
#include "motif/lda.hpp"
#include "motif/projection.hpp"
#include "motif/wire.hpp"

namespace motif::io {

// ---- point clouds (ASCII PLY) ----
//
// Vertices carry x y z red green blue and, when present, a scalar thermal
// property. Thermal is all-or-nothing per file.

PointCloud load_ply(const std::filesystem::path& path);
void save_ply(const std::filesystem::path& path, const PointCloud& cloud);

// ---- cameras (JSON) ----

projection::CameraModel load_camera(const std::filesystem::path& path);
void save_camera(const std::filesystem::path& path,
                 const projection::CameraModel& camera);

// ---- 16-bit grayscale rasters (binary PGM + JSON sidecar) ----
//
// The sidecar at <path>.json holds {"scale": s, "offset": o}; a raw value v
// decodes to v*s + o. Raw 0 stays reserved for "no reading" in depth images,
// so depth sidecars keep offset 0.

struct Raster16 {
  int width = 0;
  int height = 0;
  std::vector<double> values;  // row-major, already scaled
  double scale = 1.0;
  double offset = 0.0;
};

Raster16 load_pgm16(const std::filesystem::path& path);
void save_pgm16(const std::filesystem::path& path, int width, int height,
                const std::vector<double>& values, double scale,
                double offset);

projection::ThermalImage load_thermal(const std::filesystem::path& path);
projection::DepthImage load_depth(const std::filesystem::path& path);

// ---- recorded sensor traces (CSV + JSON sidecar) ----
//
// <stem>.csv rows: t_us,acc_x..acc_z,gyro_x..gyro_z,mag_x..mag_z.
// <stem>.json: {"trigger_us": ..., "label": ...} with label optional.

struct RecordedTrace {
  std::vector<wire::SensorFrame> frames;
  std::uint32_t trigger_us = 0;
  std::optional<std::string> label;
};

RecordedTrace load_trace(const std::filesystem::path& csv_path);
void save_trace(const std::filesystem::path& csv_path,
                const RecordedTrace& trace);

// All *.csv in the directory, sorted by filename.
std::vector<RecordedTrace> load_traces(const std::filesystem::path& dir);

// Re-serializes a windowed trace on its own sample grid so that windowing
// the saved file reproduces it exactly.
RecordedTrace to_recorded(const features::FlickTrace& trace,
                          std::uint32_t trigger_us = 1'000'000);

// ---- decoded frame tables (CSV) ----
//
// unit_id,t_us,<9 sensor columns>[,tact_00..tact_35 when any frame carries
// tactile data].

void save_frames(const std::filesystem::path& path,
                 const std::vector<wire::SensorFrame>& frames);

// ---- feature tables (CSV, label column first) ----

void save_features(const std::filesystem::path& path,
                   const features::FeatureMatrix& matrix);
features::FeatureMatrix load_features(const std::filesystem::path& path);

// ---- fitted mass-classifier models (JSON) ----

void save_lda(const std::filesystem::path& path, const lda::LdaModel& model);
lda::LdaModel load_lda(const std::filesystem::path& path);

// ---- grasp candidate sets (JSON) ----

std::vector<affordance::GraspCandidate> load_grasps(
    const std::filesystem::path& path);
void save_grasps(const std::filesystem::path& path,
                 const std::vector<affordance::GraspCandidate>& grasps);

}  // namespace motif::io
