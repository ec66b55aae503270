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

#include "paxlab/codec.hpp"

#include <zlib.h>

#include <map>
#include <mutex>

#include "paxlab/status.hpp"

namespace paxlab {

const char* codec_name(CodecId id) {
  switch (id) {
    case CodecId::None: return "none";
    case CodecId::Lz: return "lz";
  }
  return "unknown";
}

std::optional<CodecId> parse_codec(std::string_view name) {
  if (name == "none") return CodecId::None;
  if (name == "lz") return CodecId::Lz;
  return std::nullopt;
}

namespace {

Codec zlib_codec() {
  Codec c;
  c.name = "zlib-1";
  c.compress = [](std::span<const uint8_t> raw) {
    uLongf bound = compressBound(static_cast<uLong>(raw.size()));
    std::vector<uint8_t> out(bound);
    const int rc = compress2(out.data(), &bound, raw.data(), static_cast<uLong>(raw.size()), 1);
    if (rc != Z_OK) fail(ErrorCode::kIoError, "zlib compress failed");
    out.resize(bound);
    return out;
  };
  c.decompress = [](std::span<const uint8_t> data, size_t raw_size) {
    std::vector<uint8_t> out(raw_size);
    uLongf len = static_cast<uLongf>(raw_size);
    const int rc = uncompress(out.data(), &len, data.data(), static_cast<uLong>(data.size()));
    if (rc != Z_OK || len != raw_size) fail(ErrorCode::kDecodeError, "zlib decompress failed");
    return out;
  };
  return c;
}

struct Registry {
  std::mutex mu;
  std::map<CodecId, Codec> codecs{{CodecId::Lz, zlib_codec()}};
};

Registry& registry() {
  static Registry r;
  return r;
}

Codec lookup(CodecId id) {
  auto& r = registry();
  std::lock_guard lock(r.mu);
  auto it = r.codecs.find(id);
  if (it == r.codecs.end()) {
    fail(ErrorCode::kInvalidConfig, std::string("codec '") + codec_name(id) + "' is not registered");
  }
  return it->second;
}

}  // namespace

void register_codec(CodecId id, Codec codec) {
  if (id == CodecId::None) fail(ErrorCode::kInvalidConfig, "codec None cannot be replaced");
  if (!codec.compress || !codec.decompress) {
    fail(ErrorCode::kInvalidConfig, "codec needs compress and decompress");
  }
  auto& r = registry();
  std::lock_guard lock(r.mu);
  r.codecs[id] = std::move(codec);
}

bool codec_available(CodecId id) {
  if (id == CodecId::None) return true;
  auto& r = registry();
  std::lock_guard lock(r.mu);
  return r.codecs.count(id) != 0;
}

std::string codec_backend(CodecId id) {
  if (id == CodecId::None) return "none";
  return lookup(id).name;
}

std::vector<uint8_t> compress(CodecId id, std::span<const uint8_t> raw) {
  if (id == CodecId::None) return {raw.begin(), raw.end()};
  return lookup(id).compress(raw);
}

std::vector<uint8_t> decompress(CodecId id, std::span<const uint8_t> data, size_t raw_size) {
  if (id == CodecId::None) {
    if (data.size() != raw_size) fail(ErrorCode::kDecodeError, "stored size mismatch");
    return {data.begin(), data.end()};
  }
  return lookup(id).decompress(data, raw_size);
}

}  // namespace paxlab
