#pragma once

#include <cstdint>
#include <cstring>
#include <filesystem>
#include <string>
#include <string_view>

#include "adfkit/audio/clip.hpp"
#include "adfkit/error.hpp"
#include "adfkit/text.hpp"

namespace adfkit::audio {

enum class WavEncoding { pcm16, float32 };

namespace detail {

inline std::uint16_t le16(const unsigned char* p) { return static_cast<std::uint16_t>(p[0] | (p[1] << 8)); }
inline std::uint32_t le32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}
inline void put16(std::string& out, std::uint16_t v) {
  out += static_cast<char>(v & 0xFF);
  out += static_cast<char>(v >> 8);
}
inline void put32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out += static_cast<char>((v >> (8 * i)) & 0xFF);
}

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

}  // namespace detail

/// Decodes a RIFF/WAVE byte string: PCM 16-bit or IEEE float 32-bit, one or
/// two channels. Stereo is down-mixed by channel mean; PCM is scaled by
/// 1/32768.
inline AudioClip decode_wav(std::string_view bytes) {
  const auto* b = reinterpret_cast<const unsigned char*>(bytes.data());
  const std::size_t n = bytes.size();
  if (n < 12 || std::memcmp(b, "RIFF", 4) != 0 || std::memcmp(b + 8, "WAVE", 4) != 0)
    throw InputError("not a RIFF/WAVE file");

  bool have_fmt = false;
  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t rate = 0;
  const unsigned char* data = nullptr;
  std::size_t data_size = 0;

  std::size_t pos = 12;
  while (pos + 8 <= n) {
    const unsigned char* chunk = b + pos;
    const std::uint32_t size = detail::le32(chunk + 4);
    if (pos + 8 + size > n) throw InputError("truncated WAV chunk");
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (size < 16) throw InputError("truncated WAV fmt chunk");
      format = detail::le16(chunk + 8);
      channels = detail::le16(chunk + 10);
      rate = detail::le32(chunk + 12);
      bits = detail::le16(chunk + 22);
      if (format == detail::kFormatExtensible) {
        if (size < 40) throw InputError("truncated WAV extensible fmt chunk");
        format = detail::le16(chunk + 8 + 24);  // first two bytes of the subformat GUID
      }
      have_fmt = true;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      data = chunk + 8;
      data_size = size;
    }
    pos += 8 + size + (size & 1);
  }
  if (!have_fmt) throw InputError("WAV file has no fmt chunk");
  if (!data) throw InputError("WAV file has no data chunk");
  if (format != detail::kFormatPcm && format != detail::kFormatFloat)
    throw InputError("unsupported codec (WAV format tag " + std::to_string(format) + ")");
  if (format == detail::kFormatPcm && bits != 16) throw InputError("unsupported PCM bit depth " + std::to_string(bits));
  if (format == detail::kFormatFloat && bits != 32) throw InputError("unsupported float bit depth " + std::to_string(bits));
  if (channels == 0) throw InputError("WAV file declares zero channels");
  if (channels > 2) throw InputError("unsupported channel count " + std::to_string(channels));
  if (rate == 0) throw InputError("WAV file declares zero sample rate");

  const std::size_t bytes_per_sample = bits / 8;
  const std::size_t frame = bytes_per_sample * channels;
  if (data_size % frame != 0) throw InputError("truncated WAV data chunk");
  const std::size_t frames = data_size / frame;

  auto sample = [&](std::size_t i, std::size_t ch) -> double {
    const unsigned char* p = data + i * frame + ch * bytes_per_sample;
    if (format == detail::kFormatPcm) return static_cast<std::int16_t>(detail::le16(p)) / 32768.0;
    const std::uint32_t u = detail::le32(p);
    float f;
    std::memcpy(&f, &u, sizeof f);
    return f;
  };

  AudioClip clip;
  clip.sample_rate_hz = static_cast<int>(rate);
  clip.samples.resize(frames);
  for (std::size_t i = 0; i < frames; ++i) {
    if (channels == 1) {
      clip.samples[i] = static_cast<float>(sample(i, 0));
    } else {
      clip.samples[i] = static_cast<float>((sample(i, 0) + sample(i, 1)) / 2.0);
    }
  }
  return clip;
}

/// Mono WAV bytes. pcm16 clamps to [-1, 1) and rounds to nearest.
inline std::string encode_wav(const AudioClip& clip, WavEncoding enc = WavEncoding::float32) {
  const std::uint16_t bits = enc == WavEncoding::pcm16 ? 16 : 32;
  const std::uint32_t data_size = static_cast<std::uint32_t>(clip.samples.size() * (bits / 8));
  std::string out;
  out.reserve(44 + data_size);
  out += "RIFF";
  detail::put32(out, 36 + data_size);
  out += "WAVEfmt ";
  detail::put32(out, 16);
  detail::put16(out, enc == WavEncoding::pcm16 ? detail::kFormatPcm : detail::kFormatFloat);
  detail::put16(out, 1);
  detail::put32(out, static_cast<std::uint32_t>(clip.sample_rate_hz));
  detail::put32(out, static_cast<std::uint32_t>(clip.sample_rate_hz) * (bits / 8));
  detail::put16(out, bits / 8);
  detail::put16(out, bits);
  out += "data";
  detail::put32(out, data_size);
  for (const float v : clip.samples) {
    if (enc == WavEncoding::pcm16) {
      const double s = std::clamp(std::round(static_cast<double>(v) * 32768.0), -32768.0, 32767.0);
      detail::put16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(s)));
    } else {
      std::uint32_t u;
      std::memcpy(&u, &v, sizeof u);
      detail::put32(out, u);
    }
  }
  return out;
}

inline AudioClip read_wav(const std::filesystem::path& path) {
  const std::string bytes = text::read_file(path);
  try {
    return decode_wav(bytes);
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

inline void write_wav(const std::filesystem::path& path, const AudioClip& clip, WavEncoding enc = WavEncoding::float32) {
  text::write_file(path, encode_wav(clip, enc));
}

}  // namespace adfkit::audio
