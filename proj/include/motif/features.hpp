#pragma once

#include <Eigen/Core>
#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "motif/wire.hpp"

namespace motif::features {

struct ImuSample {
  std::array<float, 3> acc{};
  std::array<float, 3> gyro{};
  std::array<float, 3> mag{};
};

// Flick window: 0.25 s before the trigger through 1.0 s after, inclusive on
// the 2 ms tick grid -> 626 samples with the trigger at index 125.
inline constexpr std::size_t k_window_samples = 626;
inline constexpr std::size_t k_trigger_index = 125;
inline constexpr std::int64_t k_pre_trigger_us = 250'000;
inline constexpr std::int64_t k_post_trigger_us = 1'000'000;

struct FlickTrace {
  std::vector<ImuSample> samples;
  std::uint32_t tick_interval_us = 2000;
  std::size_t trigger_index = k_trigger_index;
  std::optional<std::string> label;  // object-mass class
  std::size_t fill_count = 0;        // ticks filled by sample-and-hold
};

// Divisor for standard deviations: population (n) is the default so a
// degenerate one-sample trace yields 0 rather than NaN.
enum class StdDivisor { population, sample };

// Aligns a single-unit frame stream to the ideal tick grid around the
// trigger. A grid tick with no frame within half a tick is filled by holding
// the previous sample and counted. Throws insufficient_coverage when the
// stream does not span the window.
FlickTrace window_trace(std::span<const wire::SensorFrame> frames,
                        std::uint32_t trigger_timestamp_us,
                        const wire::FrameStreamConfig& cfg = {});

inline constexpr std::size_t k_feature_count = 42;

// Canonical order: per sensor (ACC, GYRO, MAG), per axis (X, Y, Z) the
// Min/Max/Mean/Std block, then the sensor's Range and MagMean.
const std::array<std::string, k_feature_count>& feature_names();

struct FeatureVector {
  std::array<double, k_feature_count> values{};

  double operator[](std::size_t i) const { return values[i]; }
};

// The 42 statistics over the full window. Per axis min/max/mean/std;
// S_Range is the largest per-axis (max - min) within the sensor; S_MagMean
// the mean of sqrt(x^2 + y^2 + z^2). Throws empty_trace.
FeatureVector extract_features(const FlickTrace& trace,
                               StdDivisor divisor = StdDivisor::population);

struct FeatureMatrix {
  Eigen::MatrixXd values;           // N x 42, canonical column order
  std::vector<std::string> labels;  // N
};

// Row i = extract_features(traces[i]). Throws unlabeled_trace.
FeatureMatrix batch_extract(std::span<const FlickTrace> traces,
                            StdDivisor divisor = StdDivisor::population);

}  // namespace motif::features
