#include "motif/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string_view>

#include <json.hpp>

#include "motif/errors.hpp"

namespace motif::io {
namespace {

using nlohmann::json;

std::ifstream open_input(const std::filesystem::path& path, bool binary) {
  if (!std::filesystem::exists(path)) {
    raise(ErrorCode::file_not_found, "no such file: " + path.string());
  }
  std::ifstream in(path, binary ? std::ios::binary : std::ios::in);
  if (!in) {
    raise(ErrorCode::io, "cannot open " + path.string());
  }
  return in;
}

std::ofstream open_output(const std::filesystem::path& path, bool binary) {
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) {
    raise(ErrorCode::io, "cannot write " + path.string());
  }
  return out;
}

[[noreturn]] void parse_fail(const std::filesystem::path& path,
                             const std::string& what) {
  raise(ErrorCode::parse, path.string() + ": " + what);
}

json parse_json_file(const std::filesystem::path& path) {
  std::ifstream in = open_input(path, false);
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) {
    parse_fail(path, "malformed JSON");
  }
  return j;
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out = open_output(path, false);
  out << j.dump(2) << '\n';
  if (!out) {
    raise(ErrorCode::io, "write failed: " + path.string());
  }
}

double parse_double(std::string_view token, const std::filesystem::path& path,
                    std::size_t line_no) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    parse_fail(path, "bad number '" + std::string(token) + "' on line " +
                         std::to_string(line_no));
  }
  return value;
}

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::string format_float(float value) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%.9g", static_cast<double>(value));
  return buf;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Eigen::MatrixXd matrix_from_json(const json& j, Eigen::Index rows,
                                 Eigen::Index cols,
                                 const std::filesystem::path& path,
                                 const char* field) {
  if (!j.is_array() ||
      (rows >= 0 && static_cast<Eigen::Index>(j.size()) != rows)) {
    parse_fail(path, std::string(field) + ": wrong row count");
  }
  const Eigen::Index n = static_cast<Eigen::Index>(j.size());
  Eigen::MatrixXd m(n, cols >= 0 ? cols : 0);
  for (Eigen::Index r = 0; r < n; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array()) {
      parse_fail(path, std::string(field) + ": row is not an array");
    }
    if (r == 0 && cols < 0) {
      m.resize(n, static_cast<Eigen::Index>(row.size()));
    }
    if (static_cast<Eigen::Index>(row.size()) != m.cols()) {
      parse_fail(path, std::string(field) + ": ragged rows");
    }
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const json& cell = row[static_cast<std::size_t>(c)];
      if (!cell.is_number()) {
        parse_fail(path, std::string(field) + ": non-numeric entry");
      }
      m(r, c) = cell.get<double>();
    }
  }
  return m;
}

Eigen::VectorXd vector_from_json(const json& j, Eigen::Index size,
                                 const std::filesystem::path& path,
                                 const char* field) {
  if (!j.is_array() ||
      (size >= 0 && static_cast<Eigen::Index>(j.size()) != size)) {
    parse_fail(path, std::string(field) + ": wrong length");
  }
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const json& cell = j[static_cast<std::size_t>(i)];
    if (!cell.is_number()) {
      parse_fail(path, std::string(field) + ": non-numeric entry");
    }
    v(i) = cell.get<double>();
  }
  return v;
}

const json& required(const json& j, const char* key,
                     const std::filesystem::path& path) {
  const auto it = j.find(key);
  if (it == j.end()) {
    parse_fail(path, std::string("missing key '") + key + "'");
  }
  return *it;
}

std::filesystem::path sidecar_path(const std::filesystem::path& path) {
  std::filesystem::path p = path;
  p.replace_extension(".json");
  return p;
}

}  // namespace

// ---- PLY ----

PointCloud load_ply(const std::filesystem::path& path) {
  std::ifstream in = open_input(path, false);
  std::string line;
  std::size_t line_no = 0;

  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      return true;
    }
    return false;
  };

  if (!next_line() || line != "ply") parse_fail(path, "missing ply magic");
  if (!next_line() || line != "format ascii 1.0") {
    parse_fail(path, "only ascii 1.0 is supported");
  }

  std::size_t vertex_count = 0;
  bool saw_vertex_element = false;
  bool has_thermal = false;
  std::vector<std::string> property_names;
  while (true) {
    if (!next_line()) parse_fail(path, "unterminated header");
    if (line == "end_header") break;
    std::istringstream ls(line);
    std::string word;
    ls >> word;
    if (word == "comment") continue;
    if (word == "element") {
      std::string name;
      ls >> name >> vertex_count;
      if (name != "vertex" || saw_vertex_element) {
        parse_fail(path, "expected a single vertex element");
      }
      saw_vertex_element = true;
      continue;
    }
    if (word == "property") {
      std::string type, name;
      ls >> type >> name;
      if (!saw_vertex_element) parse_fail(path, "property before element");
      property_names.push_back(name);
      continue;
    }
    parse_fail(path, "unexpected header line: " + line);
  }

  const std::vector<std::string> base{"x", "y", "z", "red", "green", "blue"};
  if (property_names.size() == base.size() + 1 &&
      property_names.back() == "thermal") {
    has_thermal = true;
    property_names.pop_back();
  }
  if (property_names != base) {
    parse_fail(path, "vertex properties must be x y z red green blue [thermal]");
  }

  PointCloud cloud;
  cloud.reserve(vertex_count);
  const std::size_t fields_expected = has_thermal ? 7 : 6;
  for (std::size_t i = 0; i < vertex_count; ++i) {
    if (!next_line()) parse_fail(path, "fewer vertices than declared");
    std::istringstream ls(line);
    std::vector<std::string> fields;
    std::string tok;
    while (ls >> tok) fields.push_back(tok);
    if (fields.size() != fields_expected) {
      parse_fail(path, "vertex on line " + std::to_string(line_no) + " has " +
                           std::to_string(fields.size()) + " fields");
    }
    ColoredPoint point;
    for (int a = 0; a < 3; ++a) {
      point.position(a) = parse_double(fields[a], path, line_no);
    }
    for (int c = 0; c < 3; ++c) {
      const double raw = parse_double(fields[3 + c], path, line_no);
      if (raw < 0.0 || raw > 255.0 || raw != std::floor(raw)) {
        parse_fail(path, "color out of range on line " + std::to_string(line_no));
      }
      point.rgb[static_cast<std::size_t>(c)] = static_cast<std::uint8_t>(raw);
    }
    if (has_thermal) {
      point.thermal_raw = parse_double(fields[6], path, line_no);
    }
    cloud.push_back(point);
  }
  return cloud;
}

void save_ply(const std::filesystem::path& path, const PointCloud& cloud) {
  const bool has_thermal = !cloud.empty() && cloud.front().thermal_raw.has_value();
  for (const auto& point : cloud) {
    if (point.thermal_raw.has_value() != has_thermal) {
      raise(ErrorCode::invalid_argument,
            "thermal values must be present on all points or none");
    }
  }
  std::ofstream out = open_output(path, false);
  out << "ply\nformat ascii 1.0\nelement vertex " << cloud.size() << '\n';
  out << "property double x\nproperty double y\nproperty double z\n";
  out << "property uchar red\nproperty uchar green\nproperty uchar blue\n";
  if (has_thermal) out << "property double thermal\n";
  out << "end_header\n";
  for (const auto& point : cloud) {
    out << format_double(point.position.x()) << ' '
        << format_double(point.position.y()) << ' '
        << format_double(point.position.z()) << ' '
        << static_cast<int>(point.rgb[0]) << ' '
        << static_cast<int>(point.rgb[1]) << ' '
        << static_cast<int>(point.rgb[2]);
    if (has_thermal) out << ' ' << format_double(*point.thermal_raw);
    out << '\n';
  }
  if (!out) raise(ErrorCode::io, "write failed: " + path.string());
}

// ---- camera ----

projection::CameraModel load_camera(const std::filesystem::path& path) {
  const json j = parse_json_file(path);
  if (!j.is_object()) parse_fail(path, "camera file must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (key != "K" && key != "R" && key != "t" && key != "width" &&
        key != "height" && key != "pose_convention") {
      parse_fail(path, "unknown key '" + key + "'");
    }
  }
  projection::CameraModel cam;
  cam.intrinsics = matrix_from_json(required(j, "K", path), 3, 3, path, "K");
  cam.rotation = matrix_from_json(required(j, "R", path), 3, 3, path, "R");
  cam.translation = vector_from_json(required(j, "t", path), 3, path, "t");
  const json& w = required(j, "width", path);
  const json& h = required(j, "height", path);
  if (!w.is_number_integer() || !h.is_number_integer()) {
    parse_fail(path, "width/height must be integers");
  }
  cam.width = w.get<int>();
  cam.height = h.get<int>();
  if (const auto it = j.find("pose_convention"); it != j.end()) {
    const std::string conv = it->get<std::string>();
    if (conv == "cam_to_world") {
      cam.convention = projection::PoseConvention::cam_to_world;
    } else if (conv == "world_to_cam") {
      cam.convention = projection::PoseConvention::world_to_cam;
    } else {
      parse_fail(path, "pose_convention must be cam_to_world or world_to_cam");
    }
  }
  cam.validate();
  return cam;
}

void save_camera(const std::filesystem::path& path,
                 const projection::CameraModel& camera) {
  json j;
  j["K"] = matrix_to_json(camera.intrinsics);
  j["R"] = matrix_to_json(camera.rotation);
  j["t"] = vector_to_json(camera.translation);
  j["width"] = camera.width;
  j["height"] = camera.height;
  j["pose_convention"] =
      camera.convention == projection::PoseConvention::cam_to_world
          ? "cam_to_world"
          : "world_to_cam";
  write_json_file(path, j);
}

// ---- PGM16 rasters ----

Raster16 load_pgm16(const std::filesystem::path& path) {
  std::ifstream in = open_input(path, true);

  // Header tokens may be separated by whitespace and '#' comments.
  auto next_token = [&]() -> std::string {
    std::string tok;
    int c;
    while ((c = in.get()) != EOF) {
      if (c == '#') {
        while ((c = in.get()) != EOF && c != '\n') {
        }
        continue;
      }
      if (std::isspace(c)) {
        if (!tok.empty()) return tok;
        continue;
      }
      tok.push_back(static_cast<char>(c));
    }
    return tok;
  };

  if (next_token() != "P5") parse_fail(path, "not a binary PGM (P5)");
  Raster16 raster;
  try {
    raster.width = std::stoi(next_token());
    raster.height = std::stoi(next_token());
    const int maxval = std::stoi(next_token());
    if (maxval != 65535) parse_fail(path, "maxval must be 65535");
  } catch (const std::logic_error&) {
    parse_fail(path, "malformed PGM header");
  }
  if (raster.width <= 0 || raster.height <= 0) {
    parse_fail(path, "non-positive dimensions");
  }

  const json sidecar = parse_json_file(sidecar_path(path));
  if (!sidecar.is_object()) parse_fail(sidecar_path(path), "expected object");
  for (const auto& [key, value] : sidecar.items()) {
    (void)value;
    if (key != "scale" && key != "offset") {
      parse_fail(sidecar_path(path), "unknown key '" + key + "'");
    }
  }
  raster.scale = required(sidecar, "scale", sidecar_path(path)).get<double>();
  raster.offset = required(sidecar, "offset", sidecar_path(path)).get<double>();

  const std::size_t count =
      static_cast<std::size_t>(raster.width) *
      static_cast<std::size_t>(raster.height);
  std::vector<unsigned char> bytes(count * 2);
  in.read(reinterpret_cast<char*>(bytes.data()),
          static_cast<std::streamsize>(bytes.size()));
  if (static_cast<std::size_t>(in.gcount()) != bytes.size()) {
    parse_fail(path, "truncated pixel data");
  }
  raster.values.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    const unsigned raw =  // PGM stores the most significant byte first
        (static_cast<unsigned>(bytes[2 * i]) << 8) | bytes[2 * i + 1];
    raster.values[i] = raw * raster.scale + raster.offset;
  }
  return raster;
}

void save_pgm16(const std::filesystem::path& path, int width, int height,
                const std::vector<double>& values, double scale,
                double offset) {
  if (width <= 0 || height <= 0 || scale <= 0.0) {
    raise(ErrorCode::invalid_argument, "bad raster parameters");
  }
  const std::size_t count =
      static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  if (values.size() != count) {
    raise(ErrorCode::dimension_mismatch, "raster value count mismatch");
  }
  std::ofstream out = open_output(path, true);
  out << "P5\n" << width << ' ' << height << "\n65535\n";
  std::vector<unsigned char> bytes(count * 2);
  for (std::size_t i = 0; i < count; ++i) {
    const double raw = std::round((values[i] - offset) / scale);
    const unsigned clamped =
        static_cast<unsigned>(std::clamp(raw, 0.0, 65535.0));
    bytes[2 * i] = static_cast<unsigned char>(clamped >> 8);
    bytes[2 * i + 1] = static_cast<unsigned char>(clamped & 0xFF);
  }
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) raise(ErrorCode::io, "write failed: " + path.string());

  json sidecar;
  sidecar["scale"] = scale;
  sidecar["offset"] = offset;
  write_json_file(sidecar_path(path), sidecar);
}

projection::ThermalImage load_thermal(const std::filesystem::path& path) {
  Raster16 raster = load_pgm16(path);
  projection::ThermalImage image;
  image.width = raster.width;
  image.height = raster.height;
  image.values = std::move(raster.values);
  return image;
}

projection::DepthImage load_depth(const std::filesystem::path& path) {
  Raster16 raster = load_pgm16(path);
  if (raster.offset != 0.0) {
    // Raw 0 means "no reading"; an offset would turn it into a real depth.
    parse_fail(sidecar_path(path), "depth sidecars must use offset 0");
  }
  projection::DepthImage image;
  image.width = raster.width;
  image.height = raster.height;
  image.depths = std::move(raster.values);
  return image;
}

// ---- recorded traces ----

namespace {
constexpr std::string_view k_trace_header =
    "t_us,acc_x,acc_y,acc_z,gyro_x,gyro_y,gyro_z,mag_x,mag_y,mag_z";
}

RecordedTrace load_trace(const std::filesystem::path& csv_path) {
  std::ifstream in = open_input(csv_path, false);
  std::string line;
  if (!std::getline(in, line)) parse_fail(csv_path, "empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != k_trace_header) parse_fail(csv_path, "unexpected CSV header");

  RecordedTrace trace;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_csv(line);
    if (fields.size() != 10) {
      parse_fail(csv_path, "expected 10 fields on line " + std::to_string(line_no));
    }
    wire::SensorFrame frame;
    const double t = parse_double(fields[0], csv_path, line_no);
    if (t < 0.0 || t != std::floor(t) || t > 4294967295.0) {
      parse_fail(csv_path, "bad timestamp on line " + std::to_string(line_no));
    }
    frame.timestamp_us = static_cast<std::uint32_t>(t);
    for (int a = 0; a < 3; ++a) {
      frame.acc[static_cast<std::size_t>(a)] = static_cast<float>(
          parse_double(fields[1 + a], csv_path, line_no));
      frame.gyro[static_cast<std::size_t>(a)] = static_cast<float>(
          parse_double(fields[4 + a], csv_path, line_no));
      frame.mag[static_cast<std::size_t>(a)] = static_cast<float>(
          parse_double(fields[7 + a], csv_path, line_no));
    }
    if (!trace.frames.empty() &&
        frame.timestamp_us < trace.frames.back().timestamp_us) {
      parse_fail(csv_path, "timestamps must be non-decreasing (line " +
                               std::to_string(line_no) + ")");
    }
    trace.frames.push_back(frame);
  }

  const std::filesystem::path side = sidecar_path(csv_path);
  const json j = parse_json_file(side);
  if (!j.is_object()) parse_fail(side, "expected object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (key != "trigger_us" && key != "label") {
      parse_fail(side, "unknown key '" + key + "'");
    }
  }
  const json& trig = required(j, "trigger_us", side);
  if (!trig.is_number_unsigned() && !trig.is_number_integer()) {
    parse_fail(side, "trigger_us must be an integer");
  }
  const std::int64_t trig_v = trig.get<std::int64_t>();
  if (trig_v < 0 || trig_v > 4294967295LL) {
    parse_fail(side, "trigger_us out of range");
  }
  trace.trigger_us = static_cast<std::uint32_t>(trig_v);
  if (const auto it = j.find("label"); it != j.end()) {
    if (!it->is_string()) parse_fail(side, "label must be a string");
    trace.label = it->get<std::string>();
  }
  return trace;
}

void save_trace(const std::filesystem::path& csv_path,
                const RecordedTrace& trace) {
  std::ofstream out = open_output(csv_path, false);
  out << k_trace_header << '\n';
  for (const auto& frame : trace.frames) {
    out << frame.timestamp_us;
    for (int a = 0; a < 3; ++a) out << ',' << format_float(frame.acc[a]);
    for (int a = 0; a < 3; ++a) out << ',' << format_float(frame.gyro[a]);
    for (int a = 0; a < 3; ++a) out << ',' << format_float(frame.mag[a]);
    out << '\n';
  }
  if (!out) raise(ErrorCode::io, "write failed: " + csv_path.string());

  json j;
  j["trigger_us"] = trace.trigger_us;
  if (trace.label) j["label"] = *trace.label;
  write_json_file(sidecar_path(csv_path), j);
}

std::vector<RecordedTrace> load_traces(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    raise(ErrorCode::file_not_found, "no such directory: " + dir.string());
  }
  std::vector<std::filesystem::path> csvs;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".csv") {
      csvs.push_back(entry.path());
    }
  }
  std::sort(csvs.begin(), csvs.end());
  std::vector<RecordedTrace> traces;
  traces.reserve(csvs.size());
  for (const auto& p : csvs) traces.push_back(load_trace(p));
  return traces;
}

RecordedTrace to_recorded(const features::FlickTrace& trace,
                          std::uint32_t trigger_us) {
  const std::int64_t span_before =
      static_cast<std::int64_t>(trace.trigger_index) *
      trace.tick_interval_us;
  if (span_before > static_cast<std::int64_t>(trigger_us)) {
    raise(ErrorCode::invalid_argument,
          "trigger_us too small for the pre-trigger span");
  }
  RecordedTrace rec;
  rec.trigger_us = trigger_us;
  rec.label = trace.label;
  rec.frames.reserve(trace.samples.size());
  for (std::size_t k = 0; k < trace.samples.size(); ++k) {
    wire::SensorFrame frame;
    frame.timestamp_us = static_cast<std::uint32_t>(
        static_cast<std::int64_t>(trigger_us) +
        (static_cast<std::int64_t>(k) -
         static_cast<std::int64_t>(trace.trigger_index)) *
            trace.tick_interval_us);
    frame.acc = trace.samples[k].acc;
    frame.gyro = trace.samples[k].gyro;
    frame.mag = trace.samples[k].mag;
    rec.frames.push_back(frame);
  }
  return rec;
}

// ---- decoded frame tables ----

void save_frames(const std::filesystem::path& path,
                 const std::vector<wire::SensorFrame>& frames) {
  const bool any_tactile =
      std::any_of(frames.begin(), frames.end(),
                  [](const wire::SensorFrame& f) { return f.tactile.has_value(); });
  std::ofstream out = open_output(path, false);
  out << "unit_id," << k_trace_header;
  if (any_tactile) {
    for (int i = 0; i < 36; ++i) {
      char buf[16];
      std::snprintf(buf, sizeof(buf), ",tact_%02d", i);
      out << buf;
    }
  }
  out << '\n';
  for (const auto& frame : frames) {
    out << static_cast<int>(frame.unit_id) << ',' << frame.timestamp_us;
    for (int a = 0; a < 3; ++a) out << ',' << format_float(frame.acc[a]);
    for (int a = 0; a < 3; ++a) out << ',' << format_float(frame.gyro[a]);
    for (int a = 0; a < 3; ++a) out << ',' << format_float(frame.mag[a]);
    if (any_tactile) {
      for (int i = 0; i < 36; ++i) {
        out << ',';
        if (frame.tactile) out << (*frame.tactile)[static_cast<std::size_t>(i)];
      }
    }
    out << '\n';
  }
  if (!out) raise(ErrorCode::io, "write failed: " + path.string());
}

// ---- feature tables ----

void save_features(const std::filesystem::path& path,
                   const features::FeatureMatrix& matrix) {
  if (matrix.values.rows() != static_cast<Eigen::Index>(matrix.labels.size())) {
    raise(ErrorCode::dimension_mismatch, "labels do not match rows");
  }
  const auto& names = features::feature_names();
  if (matrix.values.cols() != static_cast<Eigen::Index>(names.size())) {
    raise(ErrorCode::dimension_mismatch, "expected 42 feature columns");
  }
  std::ofstream out = open_output(path, false);
  out << "label";
  for (const auto& name : names) out << ',' << name;
  out << '\n';
  for (Eigen::Index r = 0; r < matrix.values.rows(); ++r) {
    out << matrix.labels[static_cast<std::size_t>(r)];
    for (Eigen::Index c = 0; c < matrix.values.cols(); ++c) {
      out << ',' << format_double(matrix.values(r, c));
    }
    out << '\n';
  }
  if (!out) raise(ErrorCode::io, "write failed: " + path.string());
}

features::FeatureMatrix load_features(const std::filesystem::path& path) {
  std::ifstream in = open_input(path, false);
  std::string line;
  if (!std::getline(in, line)) parse_fail(path, "empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();

  const auto& names = features::feature_names();
  {
    const auto header = split_csv(line);
    if (header.size() != names.size() + 1 || header[0] != "label") {
      parse_fail(path, "unexpected CSV header");
    }
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (header[i + 1] != names[i]) {
        parse_fail(path, "feature column " + std::to_string(i) +
                             " must be " + names[i]);
      }
    }
  }

  std::vector<std::string> labels;
  std::vector<double> data;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_csv(line);
    if (fields.size() != names.size() + 1) {
      parse_fail(path, "expected " + std::to_string(names.size() + 1) +
                           " fields on line " + std::to_string(line_no));
    }
    labels.emplace_back(fields[0]);  // may be empty: unlabeled row
    for (std::size_t i = 1; i < fields.size(); ++i) {
      data.push_back(parse_double(fields[i], path, line_no));
    }
  }

  features::FeatureMatrix matrix;
  matrix.labels = std::move(labels);
  matrix.values.resize(static_cast<Eigen::Index>(matrix.labels.size()),
                       static_cast<Eigen::Index>(names.size()));
  for (Eigen::Index r = 0; r < matrix.values.rows(); ++r) {
    for (Eigen::Index c = 0; c < matrix.values.cols(); ++c) {
      matrix.values(r, c) =
          data[static_cast<std::size_t>(r) * names.size() +
               static_cast<std::size_t>(c)];
    }
  }
  return matrix;
}

// ---- LDA models ----

void save_lda(const std::filesystem::path& path, const lda::LdaModel& model) {
  json j;
  j["class_labels"] = model.class_labels;
  j["feature_names"] = model.feature_names;
  j["standardize_mean"] = vector_to_json(model.standardize_mean);
  j["standardize_std"] = vector_to_json(model.standardize_std);
  j["std_divisor"] =
      model.std_divisor == features::StdDivisor::population ? "population"
                                                            : "sample";
  j["global_mean"] = vector_to_json(model.global_mean);
  j["class_means"] = matrix_to_json(model.class_means);
  j["directions"] = matrix_to_json(model.directions);
  j["eigenvalues"] = vector_to_json(model.eigenvalues);
  j["explained_variance"] = vector_to_json(model.explained_variance);
  j["projected_centroids"] = matrix_to_json(model.projected_centroids);
  write_json_file(path, j);
}

lda::LdaModel load_lda(const std::filesystem::path& path) {
  const json j = parse_json_file(path);
  if (!j.is_object()) parse_fail(path, "model file must be a JSON object");
  static const std::vector<std::string> keys{
      "class_labels",  "feature_names", "standardize_mean",
      "standardize_std", "std_divisor", "global_mean",
      "class_means",   "directions",    "eigenvalues",
      "explained_variance", "projected_centroids"};
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      parse_fail(path, "unknown key '" + key + "'");
    }
  }

  lda::LdaModel model;
  const json& labels = required(j, "class_labels", path);
  const json& names = required(j, "feature_names", path);
  if (!labels.is_array() || labels.size() < 2) {
    parse_fail(path, "class_labels must list at least two classes");
  }
  if (!names.is_array() || names.empty()) {
    parse_fail(path, "feature_names must be a non-empty array");
  }
  for (const auto& v : labels) {
    if (!v.is_string()) parse_fail(path, "class_labels entries must be strings");
    model.class_labels.push_back(v.get<std::string>());
  }
  for (const auto& v : names) {
    if (!v.is_string()) parse_fail(path, "feature_names entries must be strings");
    model.feature_names.push_back(v.get<std::string>());
  }

  const auto p = static_cast<Eigen::Index>(model.feature_names.size());
  const auto c = static_cast<Eigen::Index>(model.class_labels.size());
  model.standardize_mean = vector_from_json(required(j, "standardize_mean", path),
                                            p, path, "standardize_mean");
  model.standardize_std = vector_from_json(required(j, "standardize_std", path),
                                           p, path, "standardize_std");
  const std::string divisor = required(j, "std_divisor", path).get<std::string>();
  if (divisor == "population") {
    model.std_divisor = features::StdDivisor::population;
  } else if (divisor == "sample") {
    model.std_divisor = features::StdDivisor::sample;
  } else {
    parse_fail(path, "std_divisor must be population or sample");
  }
  model.global_mean =
      vector_from_json(required(j, "global_mean", path), p, path, "global_mean");
  model.class_means = matrix_from_json(required(j, "class_means", path), c, p,
                                       path, "class_means");
  model.directions =
      matrix_from_json(required(j, "directions", path), p, -1, path, "directions");
  const auto k = model.directions.cols();
  if (k < 1 || k > std::min<Eigen::Index>(c - 1, p)) {
    parse_fail(path, "directions: invalid retained dimension");
  }
  model.eigenvalues =
      vector_from_json(required(j, "eigenvalues", path), k, path, "eigenvalues");
  model.explained_variance = vector_from_json(
      required(j, "explained_variance", path), k, path, "explained_variance");
  model.projected_centroids = matrix_from_json(
      required(j, "projected_centroids", path), c, k, path, "projected_centroids");
  return model;
}

// ---- grasp candidate sets ----

std::vector<affordance::GraspCandidate> load_grasps(
    const std::filesystem::path& path) {
  const json j = parse_json_file(path);
  if (!j.is_array()) parse_fail(path, "grasp file must be a JSON array");
  std::vector<affordance::GraspCandidate> grasps;
  grasps.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    const json& g = j[i];
    const std::string at = "grasp " + std::to_string(i);
    if (!g.is_object()) parse_fail(path, at + ": expected object");
    for (const auto& [key, value] : g.items()) {
      (void)value;
      if (key != "pose" && key != "contacts") {
        parse_fail(path, at + ": unknown key '" + key + "'");
      }
    }
    const json& pose = required(g, "pose", path);
    affordance::GraspCandidate grasp;
    grasp.rotation =
        matrix_from_json(required(pose, "R", path), 3, 3, path, "pose.R");
    grasp.translation =
        vector_from_json(required(pose, "t", path), 3, path, "pose.t");
    const json& contacts = required(g, "contacts", path);
    if (!contacts.is_array() || contacts.empty()) {
      parse_fail(path, at + ": contacts must be a non-empty array");
    }
    for (const json& point : contacts) {
      grasp.contacts.emplace_back(
          vector_from_json(point, 3, path, "contact point"));
    }
    grasps.push_back(std::move(grasp));
  }
  return grasps;
}

void save_grasps(const std::filesystem::path& path,
                 const std::vector<affordance::GraspCandidate>& grasps) {
  json out = json::array();
  for (const auto& grasp : grasps) {
    json g;
    g["pose"]["R"] = matrix_to_json(grasp.rotation);
    g["pose"]["t"] = vector_to_json(grasp.translation);
    json contacts = json::array();
    for (const auto& contact : grasp.contacts) {
      contacts.push_back(vector_to_json(contact));
    }
    g["contacts"] = std::move(contacts);
    out.push_back(std::move(g));
  }
  write_json_file(path, out);
}

}  // namespace motif::io
