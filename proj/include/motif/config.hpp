#pragma once

#include <cstddef>
#include <filesystem>

#include "motif/affordance.hpp"
#include "motif/features.hpp"
#include "motif/lda.hpp"
#include "motif/synth.hpp"
#include "motif/wire.hpp"

namespace motif::config {

// Every knob the pipelines expose. Defaults match the member initializers of
// the underlying structs; a config file only needs the keys it overrides.
struct PipelineConfig {
  affordance::DenoiseConfig denoise;
  wire::FrameStreamConfig stream;
  features::StdDivisor features_std_divisor = features::StdDivisor::population;
  lda::LdaOptions lda;
  double depth_tolerance = 0.005;  // meters, thermal painting visibility
  double safety_radius = 0.02;     // meters, grasp filtering
  synth::CylinderScene synth_cylinder;
  synth::FlickNoise synth_flick;
  std::size_t synth_trials_per_class = 50;
};

// Strict JSON load: unknown keys at any level are rejected, as are values
// that violate an invariant (non-positive slice height, zero axis, ...).
PipelineConfig load_config(const std::filesystem::path& path);

// Same validation applied to an in-memory document.
PipelineConfig parse_config(const std::string& text,
                            const std::string& origin = "<config>");

}  // namespace motif::config
