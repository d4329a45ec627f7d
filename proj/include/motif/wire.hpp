#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace motif::wire {

// Stream parameters of the palm-to-host serial link.
struct FrameStreamConfig {
  std::uint32_t tick_interval_us = 2000;
  std::uint32_t baud = 115200;
};

// One reading from a sensing unit. Unit 0 is the palm, 1-11 the finger
// joints. The tactile grid is present only on pad-bearing units.
struct SensorFrame {
  std::uint8_t unit_id = 0;
  std::uint32_t timestamp_us = 0;
  std::array<float, 3> acc{};   // m/s^2, x/y/z
  std::array<float, 3> gyro{};  // rad/s
  std::array<float, 3> mag{};   // microtesla
  std::optional<std::array<std::uint16_t, 36>> tactile;  // grams, row-major 6x6

  bool operator==(const SensorFrame&) const = default;
};

inline constexpr std::uint8_t k_sync0 = 0xAA;
inline constexpr std::uint8_t k_sync1 = 0x55;
inline constexpr std::uint8_t k_max_unit_id = 11;
inline constexpr std::size_t k_message_bytes = 46;           // without tactile
inline constexpr std::size_t k_message_bytes_tactile = 118;  // with tactile

// CRC-16/CCITT-FALSE (poly 0x1021, init 0xFFFF, no reflection, no xor-out).
std::uint16_t crc16_ccitt_false(std::span<const std::uint8_t> data);

// Message layout:
//   0xAA 0x55 | unit_id (1) | flags (1, bit 0 = tactile present)
//   | timestamp_us (4, LE) | 9 x float32 LE (acc, gyro, mag; x/y/z each)
//   | [36 x uint16 LE tactile grams] | CRC-16/CCITT-FALSE (2, LE)
// The CRC covers every byte after the sync marker and is stored
// little-endian like the other multi-byte fields.
std::vector<std::uint8_t> encode_frame(const SensorFrame& frame);
void encode_frame(const SensorFrame& frame, std::vector<std::uint8_t>& out);

enum class DecodeStatus {
  ok,
  incomplete_frame,  // buffer ends mid-message; await more bytes
  crc_mismatch,      // frame skipped; rescan after the bad sync marker
};

struct DecodeResult {
  DecodeStatus status = DecodeStatus::incomplete_frame;
  SensorFrame frame;
  // ok: total bytes consumed including skipped garbage.
  // crc_mismatch: bytes to skip before rescanning (garbage + sync marker).
  // incomplete_frame: garbage bytes that can be discarded for good.
  std::size_t consumed = 0;
};

DecodeResult decode_frame(std::span<const std::uint8_t> bytes);

struct StreamDecode {
  std::vector<SensorFrame> frames;
  std::uint64_t dropped = 0;
};

// Repeatedly applies decode_frame; corrupt frames are dropped and counted.
StreamDecode decode_stream(std::span<const std::uint8_t> bytes);

}  // namespace motif::wire
