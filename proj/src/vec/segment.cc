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

#include "arcforge/vec/segment.h"

#include <fmt/format.h>

#include "arcforge/common/binary_io.h"
#include "arcforge/common/error.h"

namespace arcforge::vec {

namespace {

uint64_t SegmentSeed(uint32_t id) { return 0xa5c0ffee00000000ULL ^ (uint64_t{id} * 0x9e3779b97f4a7c15ULL); }

}  // namespace

Segment::Segment(uint32_t id, uint32_t dimension, Metric metric, HnswParams params)
    : id_(id),
      metric_(metric),
      vectors_(dimension),
      index_(&vectors_, metric, params, SegmentSeed(id)) {}

uint32_t Segment::Add(const VertexId& key, std::span<const float> vector) {
  if (sealed_) Throw(ErrorCode::kInvalidArgument, fmt::format("segment {} is sealed", id_));
  uint32_t ordinal = vectors_.Append(vector);
  keys_.push_back(key);
  dead_.push_back(false);
  index_.Add(ordinal);
  return ordinal;
}

void Segment::MaybeRefine() {
  if (size() >= kRefineMinSize && size() >= 2 * refined_at_) {
    index_.Refine();
    refined_at_ = size();
  }
}

void Segment::Seal() {
  if (!sealed_ && size() > refined_at_ && size() >= kRefineMinSize) {
    index_.Refine();
    refined_at_ = size();
  }
  sealed_ = true;
}

void Segment::Tombstone(uint32_t ordinal) {
  if (!dead_[ordinal]) {
    dead_[ordinal] = true;
    ++tombstones_;
  }
}

std::string Segment::Encode() const {
  ByteWriter out;
  out.PutBytes(kMagic);
  out.Put<uint32_t>(dimension());
  out.Put<uint8_t>(static_cast<uint8_t>(metric_));
  out.Put<uint64_t>(size());
  out.Put<uint32_t>(id_);
  out.Put<uint8_t>(sealed_ ? 1 : 0);
  out.Put<uint64_t>(refined_at_);
  out.Put<uint32_t>(index_.params().m);
  out.Put<uint32_t>(index_.params().ef_construction);
  out.PutFloats(vectors_.raw());
  index_.Serialize(out);
  for (const auto& k : keys_) out.PutVertex(k);
  out.Put<uint64_t>(tombstones_);
  for (uint32_t i = 0; i < dead_.size(); ++i) {
    if (dead_[i]) out.Put<uint32_t>(i);
  }
  out.Put<uint32_t>(Crc32c(out.data()));
  return out.Take();
}

std::unique_ptr<Segment> Segment::Decode(std::string_view bytes) {
  if (bytes.size() < 8) Throw(ErrorCode::kCorruptCheckpoint, "segment file too short");
  auto body = bytes.substr(0, bytes.size() - 4);
  ByteReader trailer(bytes.substr(bytes.size() - 4), ErrorCode::kCorruptCheckpoint);
  if (trailer.Get<uint32_t>() != Crc32c(body)) {
    Throw(ErrorCode::kCorruptCheckpoint, "segment checksum mismatch");
  }
  ByteReader in(body, ErrorCode::kCorruptCheckpoint);
  if (in.GetBytes(4) != kMagic) Throw(ErrorCode::kCorruptCheckpoint, "bad segment magic");
  auto dimension = in.Get<uint32_t>();
  auto metric = static_cast<Metric>(in.Get<uint8_t>());
  auto count = in.Get<uint64_t>();
  auto id = in.Get<uint32_t>();
  bool sealed = in.Get<uint8_t>() != 0;
  auto refined_at = in.Get<uint64_t>();
  HnswParams params;
  params.m = in.Get<uint32_t>();
  params.ef_construction = in.Get<uint32_t>();
  if (dimension == 0 || static_cast<uint8_t>(metric) > 2) {
    Throw(ErrorCode::kCorruptCheckpoint, "bad segment header");
  }

  auto segment = std::make_unique<Segment>(id, dimension, metric, params);
  std::vector<float> row(dimension);
  for (uint64_t i = 0; i < count; ++i) {
    in.GetFloats(row);
    segment->vectors_.Append(row);
  }
  segment->index_.Deserialize(in);
  segment->keys_.reserve(count);
  for (uint64_t i = 0; i < count; ++i) segment->keys_.push_back(in.GetVertex());
  segment->dead_.assign(count, false);
  auto tombstones = in.Get<uint64_t>();
  for (uint64_t i = 0; i < tombstones; ++i) {
    auto ordinal = in.Get<uint32_t>();
    if (ordinal >= count) Throw(ErrorCode::kCorruptCheckpoint, "tombstone out of range");
    segment->Tombstone(ordinal);
  }
  if (!in.AtEnd()) Throw(ErrorCode::kCorruptCheckpoint, "trailing bytes in segment");
  segment->sealed_ = sealed;
  segment->refined_at_ = refined_at;
  return segment;
}

}  // namespace arcforge::vec
