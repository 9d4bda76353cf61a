// overair/wav.h

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

#ifndef OVERAIR_WAV_H_
#define OVERAIR_WAV_H_

#include <cstddef>
#include <string>

#include "overair/audio.h"

namespace overair {

// Reads a RIFF/PCM 16-bit WAV file. Multi-channel input is averaged down to
// mono; integer samples are scaled to [-1, 1] by division by 32768.
AudioClip load_wav(const std::string& path);

// Same, but rejects files whose sample rate differs from required_rate.
AudioClip load_wav(const std::string& path, int required_rate);

// Writes a mono 16-bit PCM WAV. Amplitudes outside [-1, 1] are hard-clipped;
// the number of clipped samples is returned so callers can warn.
std::size_t save_wav(const AudioClip& clip, const std::string& path);

}  // namespace overair

#endif  // OVERAIR_WAV_H_
