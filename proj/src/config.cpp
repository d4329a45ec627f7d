#include "motif/config.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string_view>

#include <json.hpp>

#include "motif/errors.hpp"

namespace motif::config {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& origin, const std::string& what) {
  raise(ErrorCode::config, origin + ": " + what);
}

void check_keys(const json& j, const std::string& origin,
                const std::string& where,
                std::initializer_list<std::string_view> allowed) {
  if (!j.is_object()) fail(origin, where + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      fail(origin, "unknown key '" + key + "' in " + where);
    }
  }
}

double get_double(const json& j, const char* key, const std::string& origin,
                  const std::string& where, double fallback) {
  const auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (!it->is_number()) {
    fail(origin, where + "." + key + " must be a number");
  }
  return it->get<double>();
}

bool get_bool(const json& j, const char* key, const std::string& origin,
              const std::string& where, bool fallback) {
  const auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (!it->is_boolean()) {
    fail(origin, where + "." + key + " must be a boolean");
  }
  return it->get<bool>();
}

std::int64_t get_int(const json& j, const char* key, const std::string& origin,
                     const std::string& where, std::int64_t fallback) {
  const auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (!it->is_number_integer() && !it->is_number_unsigned()) {
    fail(origin, where + "." + key + " must be an integer");
  }
  return it->get<std::int64_t>();
}

features::StdDivisor get_divisor(const json& j, const char* key,
                                 const std::string& origin,
                                 const std::string& where,
                                 features::StdDivisor fallback) {
  const auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (it->is_string()) {
    const std::string v = it->get<std::string>();
    if (v == "population") return features::StdDivisor::population;
    if (v == "sample") return features::StdDivisor::sample;
  }
  fail(origin, where + "." + key + " must be \"population\" or \"sample\"");
}

std::array<std::uint8_t, 3> get_rgb(const json& j, const char* key,
                                    const std::string& origin,
                                    const std::string& where,
                                    std::array<std::uint8_t, 3> fallback) {
  const auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (!it->is_array() || it->size() != 3) {
    fail(origin, where + "." + key + " must be [r, g, b]");
  }
  std::array<std::uint8_t, 3> rgb{};
  for (std::size_t c = 0; c < 3; ++c) {
    const json& v = (*it)[c];
    if (!v.is_number_integer() && !v.is_number_unsigned()) {
      fail(origin, where + "." + key + " entries must be integers");
    }
    const std::int64_t raw = v.get<std::int64_t>();
    if (raw < 0 || raw > 255) {
      fail(origin, where + "." + key + " entries must be in [0, 255]");
    }
    rgb[c] = static_cast<std::uint8_t>(raw);
  }
  return rgb;
}

void parse_denoise(const json& j, const std::string& origin,
                   affordance::DenoiseConfig& out) {
  check_keys(j, origin, "denoise",
             {"red_weight", "green_weight", "blue_weight",
              "upper_hot_threshold", "lower_cool_threshold", "jump_threshold",
              "slice_height", "axis", "literal_thresholds"});
  out.red_weight = get_double(j, "red_weight", origin, "denoise", out.red_weight);
  out.green_weight =
      get_double(j, "green_weight", origin, "denoise", out.green_weight);
  out.blue_weight =
      get_double(j, "blue_weight", origin, "denoise", out.blue_weight);
  out.upper_hot_threshold = get_double(j, "upper_hot_threshold", origin,
                                       "denoise", out.upper_hot_threshold);
  out.lower_cool_threshold = get_double(j, "lower_cool_threshold", origin,
                                        "denoise", out.lower_cool_threshold);
  out.jump_threshold =
      get_double(j, "jump_threshold", origin, "denoise", out.jump_threshold);
  out.slice_height =
      get_double(j, "slice_height", origin, "denoise", out.slice_height);
  if (const auto it = j.find("axis"); it != j.end()) {
    if (!it->is_array() || it->size() != 3) {
      fail(origin, "denoise.axis must be [x, y, z]");
    }
    for (std::size_t a = 0; a < 3; ++a) {
      const json& v = (*it)[a];
      if (!v.is_number()) fail(origin, "denoise.axis entries must be numbers");
      out.axis(static_cast<Eigen::Index>(a)) = v.get<double>();
    }
  }
  out.literal_thresholds = get_bool(j, "literal_thresholds", origin, "denoise",
                                    out.literal_thresholds);

  if (out.slice_height <= 0.0) fail(origin, "denoise.slice_height must be > 0");
  if (out.jump_threshold <= 0.0) fail(origin, "denoise.jump_threshold must be > 0");
  if (out.upper_hot_threshold <= out.lower_cool_threshold) {
    fail(origin, "denoise.upper_hot_threshold must exceed lower_cool_threshold");
  }
  if (out.axis.norm() == 0.0) fail(origin, "denoise.axis must be non-zero");
}

void parse_stream(const json& j, const std::string& origin,
                  wire::FrameStreamConfig& out) {
  check_keys(j, origin, "stream", {"tick_interval_us", "baud"});
  const std::int64_t tick = get_int(j, "tick_interval_us", origin, "stream",
                                    out.tick_interval_us);
  const std::int64_t baud = get_int(j, "baud", origin, "stream", out.baud);
  if (tick <= 0) fail(origin, "stream.tick_interval_us must be > 0");
  if (baud <= 0) fail(origin, "stream.baud must be > 0");
  out.tick_interval_us = static_cast<std::uint32_t>(tick);
  out.baud = static_cast<std::uint32_t>(baud);
}

void parse_synth_cylinder(const json& j, const std::string& origin,
                          synth::CylinderScene& out) {
  check_keys(j, origin, "synth.cylinder",
             {"radius", "height", "points_per_ring", "rings", "band_low",
              "band_high", "anomaly_count", "hot_rgb", "cool_rgb"});
  out.radius = get_double(j, "radius", origin, "synth.cylinder", out.radius);
  out.height = get_double(j, "height", origin, "synth.cylinder", out.height);
  out.points_per_ring = static_cast<int>(get_int(
      j, "points_per_ring", origin, "synth.cylinder", out.points_per_ring));
  out.rings =
      static_cast<int>(get_int(j, "rings", origin, "synth.cylinder", out.rings));
  out.band_low =
      get_double(j, "band_low", origin, "synth.cylinder", out.band_low);
  out.band_high =
      get_double(j, "band_high", origin, "synth.cylinder", out.band_high);
  const std::int64_t anomalies =
      get_int(j, "anomaly_count", origin, "synth.cylinder",
              static_cast<std::int64_t>(out.anomaly_count));
  out.hot_rgb = get_rgb(j, "hot_rgb", origin, "synth.cylinder", out.hot_rgb);
  out.cool_rgb = get_rgb(j, "cool_rgb", origin, "synth.cylinder", out.cool_rgb);

  if (out.radius <= 0.0 || out.height <= 0.0) {
    fail(origin, "synth.cylinder dimensions must be positive");
  }
  if (out.points_per_ring < 1 || out.rings < 1) {
    fail(origin, "synth.cylinder ring counts must be >= 1");
  }
  if (out.band_low > out.band_high) {
    fail(origin, "synth.cylinder.band_low must not exceed band_high");
  }
  if (anomalies < 0) fail(origin, "synth.cylinder.anomaly_count must be >= 0");
  out.anomaly_count = static_cast<std::size_t>(anomalies);
}

}  // namespace

PipelineConfig parse_config(const std::string& text, const std::string& origin) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(origin, "malformed JSON");

  PipelineConfig cfg;
  check_keys(j, origin, "config root",
             {"denoise", "stream", "features", "lda", "paint", "filter",
              "synth"});

  if (const auto it = j.find("denoise"); it != j.end()) {
    parse_denoise(*it, origin, cfg.denoise);
  }
  if (const auto it = j.find("stream"); it != j.end()) {
    parse_stream(*it, origin, cfg.stream);
  }
  if (const auto it = j.find("features"); it != j.end()) {
    check_keys(*it, origin, "features", {"std_divisor"});
    cfg.features_std_divisor = get_divisor(*it, "std_divisor", origin,
                                           "features", cfg.features_std_divisor);
  }
  if (const auto it = j.find("lda"); it != j.end()) {
    check_keys(*it, origin, "lda", {"ridge_scale", "std_divisor"});
    cfg.lda.ridge_scale =
        get_double(*it, "ridge_scale", origin, "lda", cfg.lda.ridge_scale);
    if (cfg.lda.ridge_scale < 0.0) fail(origin, "lda.ridge_scale must be >= 0");
    cfg.lda.std_divisor =
        get_divisor(*it, "std_divisor", origin, "lda", cfg.lda.std_divisor);
  }
  if (const auto it = j.find("paint"); it != j.end()) {
    check_keys(*it, origin, "paint", {"depth_tolerance"});
    cfg.depth_tolerance =
        get_double(*it, "depth_tolerance", origin, "paint", cfg.depth_tolerance);
    if (cfg.depth_tolerance < 0.0) {
      fail(origin, "paint.depth_tolerance must be >= 0");
    }
  }
  if (const auto it = j.find("filter"); it != j.end()) {
    check_keys(*it, origin, "filter", {"safety_radius"});
    cfg.safety_radius =
        get_double(*it, "safety_radius", origin, "filter", cfg.safety_radius);
    if (cfg.safety_radius < 0.0) fail(origin, "filter.safety_radius must be >= 0");
  }
  if (const auto it = j.find("synth"); it != j.end()) {
    check_keys(*it, origin, "synth", {"cylinder", "flick"});
    if (const auto cyl = it->find("cylinder"); cyl != it->end()) {
      parse_synth_cylinder(*cyl, origin, cfg.synth_cylinder);
    }
    if (const auto flick = it->find("flick"); flick != it->end()) {
      check_keys(*flick, origin, "synth.flick",
                 {"noise_acc", "noise_gyro", "noise_mag", "template_jitter",
                  "trials_per_class"});
      cfg.synth_flick.acc = get_double(*flick, "noise_acc", origin,
                                       "synth.flick", cfg.synth_flick.acc);
      cfg.synth_flick.gyro = get_double(*flick, "noise_gyro", origin,
                                        "synth.flick", cfg.synth_flick.gyro);
      cfg.synth_flick.mag = get_double(*flick, "noise_mag", origin,
                                       "synth.flick", cfg.synth_flick.mag);
      cfg.synth_flick.template_jitter =
          get_double(*flick, "template_jitter", origin, "synth.flick",
                     cfg.synth_flick.template_jitter);
      if (cfg.synth_flick.acc < 0.0 || cfg.synth_flick.gyro < 0.0 ||
          cfg.synth_flick.mag < 0.0 || cfg.synth_flick.template_jitter < 0.0) {
        fail(origin, "synth.flick noise levels must be >= 0");
      }
      const std::int64_t trials =
          get_int(*flick, "trials_per_class", origin, "synth.flick",
                  static_cast<std::int64_t>(cfg.synth_trials_per_class));
      if (trials < 1) fail(origin, "synth.flick.trials_per_class must be >= 1");
      cfg.synth_trials_per_class = static_cast<std::size_t>(trials);
    }
  }
  return cfg;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) {
    raise(ErrorCode::file_not_found, "no such config file: " + path.string());
  }
  std::ifstream in(path);
  if (!in) raise(ErrorCode::io, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), path.string());
}

}  // namespace motif::config
