// Copyright 2026 The paxlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace paxlab {

// Block compression applied to pages or compression units. None is always
// available; Lz is whatever general-purpose codec is registered for it (zlib
// DEFLATE at level 1 by default).
enum class CodecId : uint8_t { None = 0, Lz = 1 };

const char* codec_name(CodecId id);
std::optional<CodecId> parse_codec(std::string_view name);

struct Codec {
  std::string name;
  std::function<std::vector<uint8_t>(std::span<const uint8_t>)> compress;
  // Second argument is the exact uncompressed size.
  std::function<std::vector<uint8_t>(std::span<const uint8_t>, size_t)> decompress;
};

// Replaces the codec bound to `id`. Registering CodecId::None is rejected.
void register_codec(CodecId id, Codec codec);
bool codec_available(CodecId id);
std::string codec_backend(CodecId id);

std::vector<uint8_t> compress(CodecId id, std::span<const uint8_t> raw);
std::vector<uint8_t> decompress(CodecId id, std::span<const uint8_t> data, size_t raw_size);

}  // namespace paxlab
