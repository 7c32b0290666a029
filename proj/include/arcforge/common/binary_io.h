/** Copyright 2026 The ArcForge Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * 	http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>

#include "arcforge/common/error.h"
#include "arcforge/common/types.h"
#include "arcforge/common/value.h"

namespace arcforge {

static_assert(std::endian::native == std::endian::little,
              "on-disk formats assume a little-endian host");

/// CRC32C (Castagnoli), as used by the WAL and checkpoint framing.
uint32_t Crc32c(std::string_view data);

/// Append-only little-endian encoder.
class ByteWriter {
 public:
  template <typename T>
    requires std::is_arithmetic_v<T>
  void Put(T v) {
    char buf[sizeof(T)];
    std::memcpy(buf, &v, sizeof(T));
    out_.append(buf, sizeof(T));
  }

  void PutBytes(std::string_view bytes) { out_.append(bytes); }
  void PutString(std::string_view s) {
    Put<uint32_t>(static_cast<uint32_t>(s.size()));
    out_.append(s);
  }
  void PutVertex(const VertexId& v) {
    Put<uint16_t>(v.label);
    Put<uint64_t>(v.local);
  }
  void PutEdgeKey(const EdgeKey& k) {
    Put<uint16_t>(k.edge_label);
    PutVertex(k.neighbor());
    Put<uint64_t>(k.edge_id);
  }
  void PutFloats(std::span<const float> values) {
    out_.append(reinterpret_cast<const char*>(values.data()),
                values.size_bytes());
  }
  void PutValue(const PropertyValue& v);

  const std::string& data() const { return out_; }
  std::string&& Take() { return std::move(out_); }
  size_t size() const { return out_.size(); }

 private:
  std::string out_;
};

/// Bounds-checked decoder over a byte view. Every read past the end throws
/// Error(kCorruptLog) unless a different code is configured.
class ByteReader {
 public:
  explicit ByteReader(std::string_view data,
                      ErrorCode on_error = ErrorCode::kCorruptLog)
      : data_(data), on_error_(on_error) {}

  template <typename T>
    requires std::is_arithmetic_v<T>
  T Get() {
    Require(sizeof(T));
    T v;
    std::memcpy(&v, data_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return v;
  }

  std::string_view GetBytes(size_t n) {
    Require(n);
    auto s = data_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  std::string GetString() {
    auto n = Get<uint32_t>();
    return std::string(GetBytes(n));
  }
  VertexId GetVertex() {
    VertexId v;
    v.label = Get<uint16_t>();
    v.local = Get<uint64_t>();
    return v;
  }
  EdgeKey GetEdgeKey() {
    auto label = Get<uint16_t>();
    auto neighbor = GetVertex();
    auto id = Get<uint64_t>();
    return EdgeKey(label, neighbor, id);
  }
  void GetFloats(std::span<float> out) {
    auto bytes = GetBytes(out.size_bytes());
    std::memcpy(out.data(), bytes.data(), bytes.size());
  }
  PropertyValue GetValue();

  bool AtEnd() const { return pos_ == data_.size(); }
  size_t position() const { return pos_; }
  size_t remaining() const { return data_.size() - pos_; }

 private:
  void Require(size_t n) const;

  std::string_view data_;
  size_t pos_ = 0;
  ErrorCode on_error_;
};

}  // namespace arcforge
