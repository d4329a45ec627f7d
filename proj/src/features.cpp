#include "motif/features.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "motif/errors.hpp"

namespace motif::features {

FlickTrace window_trace(std::span<const wire::SensorFrame> frames,
                        std::uint32_t trigger_timestamp_us,
                        const wire::FrameStreamConfig& cfg) {
  if (cfg.tick_interval_us == 0)
    raise(ErrorCode::invalid_argument, "tick interval must be positive");
  if (frames.empty())
    raise(ErrorCode::insufficient_coverage, "empty frame stream");

  const auto tick = static_cast<std::int64_t>(cfg.tick_interval_us);
  const auto trigger = static_cast<std::int64_t>(trigger_timestamp_us);
  const std::int64_t pre_ticks = (k_pre_trigger_us + tick - 1) / tick;
  const std::int64_t post_ticks = (k_post_trigger_us + tick - 1) / tick;
  const std::int64_t start = trigger - pre_ticks * tick;
  const std::int64_t end = trigger + post_ticks * tick;
  const std::size_t count = static_cast<std::size_t>(pre_ticks + post_ticks) + 1;

  const std::int64_t first = static_cast<std::int64_t>(frames.front().timestamp_us);
  const std::int64_t last = static_cast<std::int64_t>(frames.back().timestamp_us);
  if (first > start + tick / 2 || last < end - tick / 2)
    raise(ErrorCode::insufficient_coverage,
          "stream covers [" + std::to_string(first) + ", " + std::to_string(last) +
              "] us but the window needs [" + std::to_string(start) + ", " +
              std::to_string(end) + "] us");

  FlickTrace trace;
  trace.tick_interval_us = cfg.tick_interval_us;
  trace.trigger_index = static_cast<std::size_t>(pre_ticks);
  trace.samples.resize(count);

  auto sample_of = [](const wire::SensorFrame& f) {
    return ImuSample{f.acc, f.gyro, f.mag};
  };

  // frames are sorted by timestamp (precondition); walk a cursor instead of
  // binary-searching every tick.
  std::size_t cursor = 0;
  for (std::size_t k = 0; k < count; ++k) {
    const std::int64_t t = start + static_cast<std::int64_t>(k) * tick;
    while (cursor + 1 < frames.size() &&
           static_cast<std::int64_t>(frames[cursor + 1].timestamp_us) <= t)
      ++cursor;
    // cursor is the last frame at or before t (or the first frame if all
    // are later); the candidate nearest to t is cursor or cursor+1.
    std::size_t nearest = cursor;
    std::int64_t best = std::llabs(static_cast<std::int64_t>(frames[cursor].timestamp_us) - t);
    if (cursor + 1 < frames.size()) {
      const std::int64_t d =
          std::llabs(static_cast<std::int64_t>(frames[cursor + 1].timestamp_us) - t);
      if (d < best) {
        nearest = cursor + 1;
        best = d;
      }
    }
    if (best <= tick / 2) {
      trace.samples[k] = sample_of(frames[nearest]);
    } else {
      ++trace.fill_count;
      if (k > 0) {
        trace.samples[k] = trace.samples[k - 1];
      } else {
        // No grid sample to hold yet: hold the latest frame before the
        // window (coverage guarantees one exists this side of start).
        trace.samples[k] = sample_of(frames[cursor]);
      }
    }
  }
  return trace;
}

const std::array<std::string, k_feature_count>& feature_names() {
  static const std::array<std::string, k_feature_count> names = [] {
    std::array<std::string, k_feature_count> out;
    const char* sensors[] = {"ACC", "GYRO", "MAG"};
    const char* axes[] = {"X", "Y", "Z"};
    const char* stats[] = {"Min", "Max", "Mean", "Std"};
    std::size_t i = 0;
    for (const char* sensor : sensors) {
      for (const char* axis : axes)
        for (const char* stat : stats)
          out[i++] = std::string(sensor) + "_" + axis + "_" + stat;
      out[i++] = std::string(sensor) + "_Range";
      out[i++] = std::string(sensor) + "_MagMean";
    }
    return out;
  }();
  return names;
}

FeatureVector extract_features(const FlickTrace& trace, StdDivisor divisor) {
  if (trace.samples.empty()) raise(ErrorCode::empty_trace, "trace has no samples");

  const std::size_t n = trace.samples.size();

  FeatureVector out;
  std::size_t f = 0;
  const std::array<float, 3> ImuSample::* sensors[] = {
      &ImuSample::acc, &ImuSample::gyro, &ImuSample::mag};

  for (auto member : sensors) {
    double range = 0.0;
    for (int axis = 0; axis < 3; ++axis) {
      double lo = std::numeric_limits<double>::infinity();
      double hi = -std::numeric_limits<double>::infinity();
      double sum = 0.0;
      for (const ImuSample& s : trace.samples) {
        const double v = (s.*member)[axis];
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        sum += v;
      }
      const double mean = sum / static_cast<double>(n);
      // Two-pass variance; the single-pass moment identity is left to tests.
      double sq_dev = 0.0;
      for (const ImuSample& s : trace.samples) {
        const double d = (s.*member)[axis] - mean;
        sq_dev += d * d;
      }
      double var;
      if (divisor == StdDivisor::sample)
        var = n > 1 ? sq_dev / static_cast<double>(n - 1) : 0.0;
      else
        var = sq_dev / static_cast<double>(n);
      out.values[f++] = lo;
      out.values[f++] = hi;
      out.values[f++] = mean;
      out.values[f++] = std::sqrt(var);
      range = std::max(range, hi - lo);
    }
    double mag_sum = 0.0;
    for (const ImuSample& s : trace.samples) {
      const auto& v = s.*member;
      mag_sum += std::sqrt(static_cast<double>(v[0]) * v[0] +
                           static_cast<double>(v[1]) * v[1] +
                           static_cast<double>(v[2]) * v[2]);
    }
    out.values[f++] = range;
    out.values[f++] = mag_sum / static_cast<double>(n);
  }
  return out;
}

FeatureMatrix batch_extract(std::span<const FlickTrace> traces, StdDivisor divisor) {
  FeatureMatrix matrix;
  matrix.values.resize(static_cast<Eigen::Index>(traces.size()),
                       static_cast<Eigen::Index>(k_feature_count));
  matrix.labels.reserve(traces.size());
  for (std::size_t i = 0; i < traces.size(); ++i) {
    if (!traces[i].label)
      raise(ErrorCode::unlabeled_trace,
            "trace " + std::to_string(i) + " has no label");
    const FeatureVector fv = extract_features(traces[i], divisor);
    for (std::size_t j = 0; j < k_feature_count; ++j)
      matrix.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          fv.values[j];
    matrix.labels.push_back(*traces[i].label);
  }
  return matrix;
}

}  // namespace motif::features
