#include "motif/wire.hpp"

#include <cstring>

#include "motif/errors.hpp"

namespace motif::wire {

namespace {

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xFF));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i)
    out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xFF));
}

void put_f32(std::vector<std::uint8_t>& out, float v) {
  std::uint32_t bits;
  std::memcpy(&bits, &v, sizeof bits);
  put_u32(out, bits);
}

std::uint16_t get_u16(const std::uint8_t* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t get_u32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

float get_f32(const std::uint8_t* p) {
  std::uint32_t bits = get_u32(p);
  float v;
  std::memcpy(&v, &bits, sizeof v);
  return v;
}

}  // namespace

std::uint16_t crc16_ccitt_false(std::span<const std::uint8_t> data) {
  std::uint16_t crc = 0xFFFF;
  for (std::uint8_t byte : data) {
    crc ^= static_cast<std::uint16_t>(byte) << 8;
    for (int bit = 0; bit < 8; ++bit) {
      if (crc & 0x8000)
        crc = static_cast<std::uint16_t>((crc << 1) ^ 0x1021);
      else
        crc = static_cast<std::uint16_t>(crc << 1);
    }
  }
  return crc;
}

void encode_frame(const SensorFrame& frame, std::vector<std::uint8_t>& out) {
  if (frame.unit_id > k_max_unit_id)
    raise(ErrorCode::invalid_argument,
          "unit_id " + std::to_string(frame.unit_id) + " exceeds 11");

  const std::size_t start = out.size();
  out.push_back(k_sync0);
  out.push_back(k_sync1);
  out.push_back(frame.unit_id);
  out.push_back(frame.tactile ? 0x01 : 0x00);
  put_u32(out, frame.timestamp_us);
  for (float v : frame.acc) put_f32(out, v);
  for (float v : frame.gyro) put_f32(out, v);
  for (float v : frame.mag) put_f32(out, v);
  if (frame.tactile)
    for (std::uint16_t g : *frame.tactile) put_u16(out, g);

  std::span<const std::uint8_t> body(out.data() + start + 2,
                                     out.size() - start - 2);
  put_u16(out, crc16_ccitt_false(body));
}

std::vector<std::uint8_t> encode_frame(const SensorFrame& frame) {
  std::vector<std::uint8_t> out;
  out.reserve(frame.tactile ? k_message_bytes_tactile : k_message_bytes);
  encode_frame(frame, out);
  return out;
}

DecodeResult decode_frame(std::span<const std::uint8_t> bytes) {
  const std::size_t n = bytes.size();
  std::size_t i = 0;
  while (true) {
    // Scan to the next sync marker.
    while (i < n && bytes[i] != k_sync0) ++i;
    if (i >= n) return {DecodeStatus::incomplete_frame, {}, n};
    if (i + 1 >= n) return {DecodeStatus::incomplete_frame, {}, i};
    if (bytes[i + 1] != k_sync1) {
      ++i;
      continue;
    }

    if (i + 4 > n) return {DecodeStatus::incomplete_frame, {}, i};
    const std::uint8_t flags = bytes[i + 3];
    const bool tactile = flags & 0x01;
    const std::size_t len = tactile ? k_message_bytes_tactile : k_message_bytes;
    if (i + len > n) return {DecodeStatus::incomplete_frame, {}, i};

    const std::uint8_t* msg = bytes.data() + i;
    std::span<const std::uint8_t> body(msg + 2, len - 4);
    const std::uint16_t expected = crc16_ccitt_false(body);
    const std::uint16_t stored = get_u16(msg + len - 2);
    const std::uint8_t unit = msg[2];
    if (expected != stored || unit > k_max_unit_id || (flags & ~0x01u)) {
      // Bad frame: consume through the sync marker so the caller rescans
      // inside what this frame claimed to span.
      return {DecodeStatus::crc_mismatch, {}, i + 2};
    }

    SensorFrame frame;
    frame.unit_id = unit;
    frame.timestamp_us = get_u32(msg + 4);
    const std::uint8_t* p = msg + 8;
    for (auto* vec : {&frame.acc, &frame.gyro, &frame.mag})
      for (int k = 0; k < 3; ++k, p += 4) (*vec)[k] = get_f32(p);
    if (tactile) {
      frame.tactile.emplace();
      for (int k = 0; k < 36; ++k, p += 2) (*frame.tactile)[k] = get_u16(p);
    }
    return {DecodeStatus::ok, frame, i + len};
  }
}

StreamDecode decode_stream(std::span<const std::uint8_t> bytes) {
  StreamDecode result;
  std::size_t offset = 0;
  while (offset < bytes.size()) {
    DecodeResult r = decode_frame(bytes.subspan(offset));
    if (r.status == DecodeStatus::ok) {
      result.frames.push_back(r.frame);
      offset += r.consumed;
    } else if (r.status == DecodeStatus::crc_mismatch) {
      ++result.dropped;
      offset += r.consumed;
    } else {
      break;  // trailing fragment; nothing more decodable
    }
  }
  return result;
}

}  // namespace motif::wire
