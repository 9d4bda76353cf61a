// overair/wav.cc

// Copyright 2026  Overair Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "overair/wav.h"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "overair/error.h"

namespace overair {

namespace {

constexpr uint16_t kFormatPcm = 1;

uint32_t read_u32(const unsigned char* p) {
  return static_cast<uint32_t>(p[0]) | static_cast<uint32_t>(p[1]) << 8 |
         static_cast<uint32_t>(p[2]) << 16 | static_cast<uint32_t>(p[3]) << 24;
}

uint16_t read_u16(const unsigned char* p) {
  return static_cast<uint16_t>(p[0] | p[1] << 8);
}

void write_u32(std::ofstream& out, uint32_t v) {
  const char b[4] = {static_cast<char>(v & 0xff), static_cast<char>(v >> 8 & 0xff),
                     static_cast<char>(v >> 16 & 0xff),
                     static_cast<char>(v >> 24 & 0xff)};
  out.write(b, 4);
}

void write_u16(std::ofstream& out, uint16_t v) {
  const char b[2] = {static_cast<char>(v & 0xff), static_cast<char>(v >> 8 & 0xff)};
  out.write(b, 2);
}

}  // namespace

AudioClip load_wav(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::kIo, "load_wav: cannot open '" + path + "'");
  }

  unsigned char header[12];
  if (!in.read(reinterpret_cast<char*>(header), 12) ||
      std::memcmp(header, "RIFF", 4) != 0 ||
      std::memcmp(header + 8, "WAVE", 4) != 0) {
    throw Error(ErrorKind::kIo, "load_wav: '" + path + "' is not a RIFF/WAVE file");
  }

  uint16_t format = 0, channels = 0, bits_per_sample = 0;
  uint32_t sample_rate = 0;
  bool have_fmt = false;
  std::vector<unsigned char> data;
  bool have_data = false;

  unsigned char chunk[8];
  while (in.read(reinterpret_cast<char*>(chunk), 8)) {
    const uint32_t chunk_size = read_u32(chunk + 4);
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (chunk_size < 16) {
        throw Error(ErrorKind::kIo, "load_wav: malformed fmt chunk in '" + path + "'");
      }
      std::vector<unsigned char> fmt(chunk_size);
      if (!in.read(reinterpret_cast<char*>(fmt.data()), chunk_size)) {
        throw Error(ErrorKind::kIo, "load_wav: truncated fmt chunk in '" + path + "'");
      }
      format = read_u16(fmt.data());
      channels = read_u16(fmt.data() + 2);
      sample_rate = read_u32(fmt.data() + 4);
      bits_per_sample = read_u16(fmt.data() + 14);
      have_fmt = true;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      data.resize(chunk_size);
      if (!in.read(reinterpret_cast<char*>(data.data()), chunk_size)) {
        throw Error(ErrorKind::kIo, "load_wav: truncated data chunk in '" + path + "'");
      }
      have_data = true;
    } else {
      in.seekg(chunk_size, std::ios::cur);
    }
    if (chunk_size % 2 == 1) in.seekg(1, std::ios::cur);  // chunks are word-aligned
  }

  if (!have_fmt || !have_data) {
    throw Error(ErrorKind::kIo, "load_wav: missing fmt/data chunk in '" + path + "'");
  }
  if (format != kFormatPcm || bits_per_sample != 16) {
    throw Error(ErrorKind::kIo,
                "load_wav: unsupported codec in '" + path +
                    "' (only 16-bit PCM is handled)");
  }
  if (channels == 0 || sample_rate == 0) {
    throw Error(ErrorKind::kIo, "load_wav: malformed header in '" + path + "'");
  }

  const std::size_t frame_bytes = 2u * channels;
  const std::size_t num_frames = data.size() / frame_bytes;
  if (num_frames == 0) {
    throw Error(ErrorKind::kIo, "load_wav: '" + path + "' holds no samples");
  }

  AudioClip clip;
  clip.sample_rate = static_cast<int>(sample_rate);
  clip.samples.resize(num_frames);
  for (std::size_t i = 0; i < num_frames; ++i) {
    double acc = 0.0;
    for (uint16_t c = 0; c < channels; ++c) {
      const unsigned char* p = data.data() + i * frame_bytes + 2u * c;
      const int16_t s = static_cast<int16_t>(p[0] | p[1] << 8);
      acc += static_cast<double>(s);
    }
    clip.samples[i] = acc / channels / 32768.0;
  }
  return clip;
}

AudioClip load_wav(const std::string& path, int required_rate) {
  AudioClip clip = load_wav(path);
  if (clip.sample_rate != required_rate) {
    throw Error(ErrorKind::kDomain,
                "load_wav: '" + path + "' is " + std::to_string(clip.sample_rate) +
                    " Hz, expected " + std::to_string(required_rate) + " Hz");
  }
  return clip;
}

std::size_t save_wav(const AudioClip& clip, const std::string& path) {
  if (path.empty()) {
    throw Error(ErrorKind::kIo, "save_wav: empty path");
  }
  if (clip.samples.empty()) {
    throw Error(ErrorKind::kDomain, "save_wav: empty clip");
  }
  for (double s : clip.samples) {
    if (!std::isfinite(s)) {
      throw Error(ErrorKind::kDomain, "save_wav: non-finite amplitude");
    }
  }

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorKind::kIo, "save_wav: cannot write '" + path + "'");
  }

  const uint32_t data_bytes = static_cast<uint32_t>(clip.samples.size() * 2);
  out.write("RIFF", 4);
  write_u32(out, 36 + data_bytes);
  out.write("WAVE", 4);
  out.write("fmt ", 4);
  write_u32(out, 16);
  write_u16(out, kFormatPcm);
  write_u16(out, 1);  // mono
  write_u32(out, static_cast<uint32_t>(clip.sample_rate));
  write_u32(out, static_cast<uint32_t>(clip.sample_rate) * 2);  // byte rate
  write_u16(out, 2);                                            // block align
  write_u16(out, 16);                                           // bits
  out.write("data", 4);
  write_u32(out, data_bytes);

  std::size_t clipped = 0;
  for (double s : clip.samples) {
    if (s > 1.0 || s < -1.0) ++clipped;
    long q = std::lround(s * 32768.0);
    if (q > 32767) q = 32767;
    if (q < -32768) q = -32768;
    write_u16(out, static_cast<uint16_t>(static_cast<int16_t>(q)));
  }
  out.flush();
  if (!out) {
    throw Error(ErrorKind::kIo, "save_wav: write failed for '" + path + "'");
  }
  return clipped;
}

}  // namespace overair
