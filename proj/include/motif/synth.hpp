#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "motif/cloud.hpp"
#include "motif/features.hpp"

namespace motif::synth {

// Lateral-surface cylinder scene standing in for the heated-can captures: a
// hot color band over [band_low, band_high] along z, cool elsewhere, plus
// seeded opposite-color anomalies.
struct CylinderScene {
  double radius = 0.033;   // meters
  double height = 0.12;
  int points_per_ring = 160;
  int rings = 48;
  double band_low = 0.0;   // hot band, meters along z
  double band_high = 0.08;
  std::array<std::uint8_t, 3> hot_rgb{220, 60, 40};
  std::array<std::uint8_t, 3> cool_rgb{60, 80, 200};
  std::size_t anomaly_count = 0;
  std::uint64_t seed = 0;
};

struct CylinderTruth {
  std::vector<std::size_t> anomaly_indices;  // ascending
  double boundary_z = 0.0;                   // hot-to-cool transition height
};

struct CylinderResult {
  PointCloud cloud;
  CylinderTruth truth;
};

// Deterministic per seed. Throws invalid_geometry.
CylinderResult gen_cylinder(const CylinderScene& scene);

// Noise applied to every generated sample, plus the trial-to-trial template
// jitter (relative sigma on strike strength, contact duration and rebound)
// that controls how much the mass classes overlap.
struct FlickNoise {
  double acc = 0.9;    // m/s^2
  double gyro = 0.045; // rad/s
  double mag = 0.35;   // microtesla
  double template_jitter = 0.16;
};

// Phenomenological flick template for one object mass: pre-trigger rest,
// downward strike, contact spike whose depth grows with mass, exponential
// rebound that is quicker and stronger for lighter objects, lateral
// magnetometer drift.
struct FlickModel {
  double mass_grams = 125.0;
  double impact_acc_peak = 18.0;     // m/s^2 free-swing peak, falls with mass
  double contact_duration_ms = 22.0; // grows with mass
  FlickNoise noise;
  std::uint64_t seed = 0;

  // Derives the mass-dependent template parameters.
  static FlickModel for_mass(double mass_grams, std::uint64_t seed,
                             const FlickNoise& noise = {});
};

inline constexpr std::array<double, 3> k_bench_masses_grams{82.0, 125.0, 219.0};

// Object-mass class labels used by the benchmark dataset ("82g", ...).
std::string mass_label(double mass_grams);

// Each trace spans the standard 626-sample window with the trigger at index
// 125; deterministic per (seed, trial index).
std::vector<features::FlickTrace> gen_flick(const FlickModel& model,
                                            std::size_t trials);

// 50 labeled trials for each of the three benchmark object masses.
std::vector<features::FlickTrace> gen_mass_benchmark(
    std::uint64_t seed, const FlickNoise& noise = {},
    std::size_t trials_per_class = 50);

}  // namespace motif::synth
