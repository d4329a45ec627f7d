#include "motif/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "motif/errors.hpp"
#include "motif/rng.hpp"

namespace motif::synth {
namespace {

constexpr double k_pi = 3.14159265358979323846;
constexpr double k_gravity = 9.81;

// Rest-pose magnetometer reading, microtesla.
constexpr double k_mag_rest_x = 18.0;
constexpr double k_mag_rest_y = -4.0;
constexpr double k_mag_rest_z = 43.0;

double clamp_mult(double m) { return std::clamp(m, 0.35, 1.65); }

}  // namespace

CylinderResult gen_cylinder(const CylinderScene& scene) {
  if (scene.radius <= 0.0 || scene.height <= 0.0 || scene.rings <= 0 ||
      scene.points_per_ring <= 0) {
    raise(ErrorCode::invalid_geometry, "cylinder dimensions must be positive");
  }
  if (scene.band_low > scene.band_high) {
    raise(ErrorCode::invalid_geometry, "band_low exceeds band_high");
  }
  const std::size_t total =
      static_cast<std::size_t>(scene.rings) *
      static_cast<std::size_t>(scene.points_per_ring);
  if (scene.anomaly_count > total) {
    raise(ErrorCode::invalid_geometry, "more anomalies than points");
  }

  CylinderResult result;
  result.cloud.reserve(total);
  for (int ring = 0; ring < scene.rings; ++ring) {
    const double z = scene.height * (ring + 0.5) / scene.rings;
    const bool hot = z >= scene.band_low && z <= scene.band_high;
    for (int j = 0; j < scene.points_per_ring; ++j) {
      const double theta = 2.0 * k_pi * j / scene.points_per_ring;
      ColoredPoint point;
      point.position = Eigen::Vector3d(scene.radius * std::cos(theta),
                                       scene.radius * std::sin(theta), z);
      point.rgb = hot ? scene.hot_rgb : scene.cool_rgb;
      result.cloud.push_back(point);
    }
  }
  result.truth.boundary_z = std::min(scene.band_high, scene.height);

  if (scene.anomaly_count > 0) {
    // Partial Fisher-Yates over an index array, deterministic per seed.
    rng::Xoshiro256pp gen(scene.seed);
    std::vector<std::size_t> indices(total);
    for (std::size_t i = 0; i < total; ++i) indices[i] = i;
    for (std::size_t i = 0; i < scene.anomaly_count; ++i) {
      const std::size_t j = i + gen.uniform_u64(total - i);
      std::swap(indices[i], indices[j]);
    }
    indices.resize(scene.anomaly_count);
    std::sort(indices.begin(), indices.end());
    for (const std::size_t idx : indices) {
      auto& point = result.cloud[idx];
      point.rgb = point.rgb == scene.hot_rgb ? scene.cool_rgb : scene.hot_rgb;
    }
    result.truth.anomaly_indices = std::move(indices);
  }
  return result;
}

FlickModel FlickModel::for_mass(double mass_grams, std::uint64_t seed,
                                const FlickNoise& noise) {
  if (mass_grams <= 0.0) {
    raise(ErrorCode::invalid_argument, "mass must be positive");
  }
  FlickModel model;
  model.mass_grams = mass_grams;
  const double rel = mass_grams / 125.0;
  // Lighter objects let the finger swing through faster; heavier ones
  // produce a deeper, longer contact spike.
  model.impact_acc_peak = 18.0 * std::pow(1.0 / rel, 0.35);
  model.contact_duration_ms = 22.0 * std::pow(rel, 0.4);
  model.noise = noise;
  model.seed = seed;
  return model;
}

std::string mass_label(double mass_grams) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%ldg", std::lround(mass_grams));
  return buf;
}

std::vector<features::FlickTrace> gen_flick(const FlickModel& model,
                                            std::size_t trials) {
  if (model.mass_grams <= 0.0) {
    raise(ErrorCode::invalid_argument, "mass must be positive");
  }
  const double rel = model.mass_grams / 125.0;
  const double spike_depth_base = 22.0 * std::pow(rel, 0.6);
  const double rebound_amp_base = 6.5 / rel;
  const double gyro_peak_base = 3.2 * model.impact_acc_peak / 18.0;
  const double drift_amp_base = 2.4 * std::pow(1.0 / rel, 0.8);

  std::vector<features::FlickTrace> traces;
  traces.reserve(trials);
  for (std::size_t trial = 0; trial < trials; ++trial) {
    rng::Xoshiro256pp gen = rng::Xoshiro256pp::for_stream(model.seed, trial);
    const double j = model.noise.template_jitter;
    const double impact =
        model.impact_acc_peak * clamp_mult(1.0 + j * gen.gaussian());
    const double spike_depth =
        spike_depth_base * clamp_mult(1.0 + j * gen.gaussian());
    const double duration_ms =
        model.contact_duration_ms * clamp_mult(1.0 + j * gen.gaussian());
    const double rebound_amp =
        rebound_amp_base * clamp_mult(1.0 + j * gen.gaussian());
    const double drift_amp =
        drift_amp_base * clamp_mult(1.0 + j * gen.gaussian());
    const double gyro_peak =
        gyro_peak_base * clamp_mult(1.0 + j * gen.gaussian());

    features::FlickTrace trace;
    trace.samples.resize(features::k_window_samples);
    for (std::size_t k = 0; k < features::k_window_samples; ++k) {
      const double t =  // milliseconds relative to the trigger
          (static_cast<double>(k) -
           static_cast<double>(features::k_trigger_index)) *
          trace.tick_interval_us / 1000.0;

      double acc_x = 0.0, acc_y = 0.0, acc_z = k_gravity;
      double gyro_x = 0.0, gyro_y = 0.0, gyro_z = 0.0;
      double mag_y = k_mag_rest_y;

      if (t >= -50.0 && t < 0.0) {
        // Finger swing toward the object.
        const double phase = (t + 50.0) / 50.0;
        acc_x = impact * std::sin(k_pi * phase);
        gyro_y = gyro_peak * std::sin(k_pi * phase);
      } else if (t >= 0.0 && t < duration_ms) {
        // Contact: sharp deceleration spike, deeper for heavier objects.
        const double phase = t / duration_ms;
        acc_z = k_gravity - spike_depth * std::sin(k_pi * phase);
        acc_x = impact * 0.2 * std::exp(-t / 10.0);
        gyro_y = -0.8 * gyro_peak * std::sin(k_pi * phase);
      } else if (t >= duration_ms) {
        // Rebound ringing, stronger and quicker for lighter objects.
        const double dt = t - duration_ms;
        const double envelope = std::exp(-dt / 90.0);
        acc_y = rebound_amp * envelope * std::sin(2.0 * k_pi * 14.0 * dt / 1000.0);
        acc_z = k_gravity +
                0.3 * rebound_amp * envelope *
                    std::cos(2.0 * k_pi * 11.0 * dt / 1000.0);
        gyro_y = 0.4 * gyro_peak * envelope *
                 std::cos(2.0 * k_pi * 9.0 * dt / 1000.0);
      }
      gyro_x = 0.25 * gyro_y;
      gyro_z = -0.15 * gyro_y;
      if (t >= 0.0) {
        // Displaced object shifts the local field; lighter objects travel
        // farther.
        mag_y += drift_amp * (1.0 - std::exp(-t / 130.0));
      }

      features::ImuSample& s = trace.samples[k];
      s.acc = {static_cast<float>(acc_x + model.noise.acc * gen.gaussian()),
               static_cast<float>(acc_y + model.noise.acc * gen.gaussian()),
               static_cast<float>(acc_z + model.noise.acc * gen.gaussian())};
      s.gyro = {static_cast<float>(gyro_x + model.noise.gyro * gen.gaussian()),
                static_cast<float>(gyro_y + model.noise.gyro * gen.gaussian()),
                static_cast<float>(gyro_z + model.noise.gyro * gen.gaussian())};
      s.mag = {
          static_cast<float>(k_mag_rest_x + model.noise.mag * gen.gaussian()),
          static_cast<float>(mag_y + model.noise.mag * gen.gaussian()),
          static_cast<float>(k_mag_rest_z + model.noise.mag * gen.gaussian())};
    }
    traces.push_back(std::move(trace));
  }
  return traces;
}

std::vector<features::FlickTrace> gen_mass_benchmark(
    std::uint64_t seed, const FlickNoise& noise, std::size_t trials_per_class) {
  std::vector<features::FlickTrace> dataset;
  dataset.reserve(trials_per_class * k_bench_masses_grams.size());
  std::uint64_t class_stream = 0;
  for (const double mass : k_bench_masses_grams) {
    ++class_stream;
    const std::uint64_t class_seed =
        seed ^ (0x9E3779B97F4A7C15ULL * class_stream);
    const FlickModel model = FlickModel::for_mass(mass, class_seed, noise);
    std::vector<features::FlickTrace> traces = gen_flick(model, trials_per_class);
    const std::string label = mass_label(mass);
    for (auto& trace : traces) {
      trace.label = label;
      dataset.push_back(std::move(trace));
    }
  }
  return dataset;
}

}  // namespace motif::synth
