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

#include "arcforge/vec/collection.h"

#include <fmt/format.h>

#include <algorithm>
#include <limits>
#include <mutex>

#include "arcforge/common/binary_io.h"
#include "arcforge/common/error.h"

namespace arcforge::vec {

namespace {

// Values are only comparable within a kind.
enum class Kind { kBool, kNumber, kText, kOther };

Kind KindOf(const PropertyValue& v) {
  switch (v.type()) {
    case ValueType::kBool: return Kind::kBool;
    case ValueType::kInt:
    case ValueType::kFloat: return Kind::kNumber;
    case ValueType::kText: return Kind::kText;
    default: return Kind::kOther;
  }
}

// Smallest value of a kind under CompareValues.
PropertyValue KindFloor(Kind kind) {
  switch (kind) {
    case Kind::kBool: return PropertyValue(false);
    case Kind::kNumber: return PropertyValue(-std::numeric_limits<double>::infinity());
    case Kind::kText: return PropertyValue(std::string());
    default: return PropertyValue();
  }
}

bool Satisfies(CompareOp op, int cmp) {
  switch (op) {
    case CompareOp::kEq: return cmp == 0;
    case CompareOp::kLt: return cmp < 0;
    case CompareOp::kLe: return cmp <= 0;
    case CompareOp::kGt: return cmp > 0;
    case CompareOp::kGe: return cmp >= 0;
  }
  return false;
}

bool IsPayloadType(ValueType t) {
  return t == ValueType::kBool || t == ValueType::kInt || t == ValueType::kFloat ||
         t == ValueType::kText;
}

constexpr uint32_t kManifestMagic = 0x31435641;  // "AVC1"

}  // namespace

std::string_view CompareOpSymbol(CompareOp op) {
  switch (op) {
    case CompareOp::kEq: return "=";
    case CompareOp::kLt: return "<";
    case CompareOp::kLe: return "<=";
    case CompareOp::kGt: return ">";
    case CompareOp::kGe: return ">=";
  }
  return "?";
}

bool PayloadPredicate::Matches(const Payload& payload) const {
  auto it = payload.find(field);
  if (it == payload.end()) return false;
  Kind kind = KindOf(value);
  if (kind == Kind::kOther || KindOf(it->second) != kind) return false;
  return Satisfies(op, CompareValues(it->second, value));
}

std::string PayloadPredicate::ToString() const {
  return fmt::format("{} {} {}", field, CompareOpSymbol(op), value.ToString());
}

bool PayloadFilter::Matches(const Payload& payload) const {
  return std::all_of(terms.begin(), terms.end(),
                     [&](const PayloadPredicate& p) { return p.Matches(payload); });
}

std::string PayloadFilter::ToString() const {
  std::string out;
  for (const auto& t : terms) {
    if (!out.empty()) out += " AND ";
    out += t.ToString();
  }
  return out;
}

VectorCollection::VectorCollection(std::string name, CollectionConfig config)
    : name_(std::move(name)), config_(config) {
  if (config_.dimension == 0) Throw(ErrorCode::kBadDimension, "dimension must be at least 1");
  if (config_.seal_threshold == 0) config_.seal_threshold = 1;
  segments_.push_back(std::make_unique<Segment>(next_segment_id_++, config_.dimension,
                                                config_.metric, config_.hnsw));
}

Segment& VectorCollection::MutableSegment() {
  if (segments_.back()->size() >= config_.seal_threshold) {
    segments_.back()->Seal();
    segments_.push_back(std::make_unique<Segment>(next_segment_id_++, config_.dimension,
                                                  config_.metric, config_.hnsw));
  }
  return *segments_.back();
}

void VectorCollection::CheckPayload(const Payload& payload) const {
  for (const auto& [field, value] : payload) {
    if (!value.is_null() && !IsPayloadType(value.type())) {
      Throw(ErrorCode::kTypeMismatch,
            fmt::format("payload field '{}' of collection '{}' must be scalar or text, got {}",
                        field, name_, ValueTypeName(value.type())));
    }
  }
}

void VectorCollection::IndexPayload(const VertexId& key, const Payload& payload) {
  for (const auto& [field, value] : payload) payload_index_[field][value].insert(key);
}

void VectorCollection::UnindexPayload(const VertexId& key, const Payload& payload) {
  for (const auto& [field, value] : payload) {
    auto f = payload_index_.find(field);
    if (f == payload_index_.end()) continue;
    auto bucket = f->second.find(value);
    if (bucket == f->second.end()) continue;
    bucket->second.erase(key);
    if (bucket->second.empty()) f->second.erase(bucket);
  }
}

size_t VectorCollection::BulkUpsert(const std::vector<Point>& points) {
  for (const auto& p : points) {
    if (p.vector.size() != config_.dimension) {
      Throw(ErrorCode::kDimensionMismatch,
            fmt::format("collection '{}' expects {}-d vectors, point {} has {}", name_,
                        config_.dimension, ToString(p.key), p.vector.size()));
    }
    CheckPayload(p.payload);
  }

  std::unique_lock lock(mu_);
  for (const auto& p : points) {
    if (auto it = locations_.find(p.key); it != locations_.end()) {
      segments_[it->second.segment]->Tombstone(it->second.ordinal);
      auto old = payloads_.find(p.key);
      UnindexPayload(p.key, old->second);
      payloads_.erase(old);
    }
    Segment& seg = MutableSegment();
    uint32_t ordinal = seg.Add(p.key, p.vector);
    locations_[p.key] = {static_cast<uint32_t>(segments_.size() - 1), ordinal};
    Payload payload;
    for (const auto& [field, value] : p.payload) {
      if (!value.is_null()) payload.emplace(field, value);
    }
    IndexPayload(p.key, payload);
    payloads_[p.key] = std::move(payload);
  }
  if (!points.empty()) segments_.back()->MaybeRefine();
  ++version_;
  return points.size();
}

size_t VectorCollection::DeletePoints(const std::vector<VertexId>& keys) {
  std::unique_lock lock(mu_);
  size_t removed = 0;
  for (const auto& key : keys) {
    auto it = locations_.find(key);
    if (it == locations_.end()) continue;
    segments_[it->second.segment]->Tombstone(it->second.ordinal);
    locations_.erase(it);
    auto p = payloads_.find(key);
    UnindexPayload(key, p->second);
    payloads_.erase(p);
    ++removed;
  }
  ++version_;
  return removed;
}

bool VectorCollection::UpdatePayload(const VertexId& key, const std::string& field,
                                     const PropertyValue& value) {
  if (!value.is_null() && !IsPayloadType(value.type())) {
    Throw(ErrorCode::kTypeMismatch,
          fmt::format("payload field '{}' must be scalar or text, got {}", field,
                      ValueTypeName(value.type())));
  }
  std::unique_lock lock(mu_);
  auto it = payloads_.find(key);
  if (it == payloads_.end()) return false;
  Payload& payload = it->second;
  if (auto old = payload.find(field); old != payload.end()) {
    UnindexPayload(key, Payload{{field, old->second}});
    payload.erase(old);
  }
  if (!value.is_null()) {
    payload.emplace(field, value);
    payload_index_[field][value].insert(key);
  }
  ++version_;
  return true;
}

std::vector<VertexId> VectorCollection::Candidates(const PayloadFilter& filter) const {
  // Resolve every term against the index, then keep the smallest key set and
  // check the rest of the conjunction directly on the payloads.
  std::vector<VertexId> best;
  bool have_best = false;
  for (const auto& term : filter.terms) {
    std::vector<VertexId> keys;
    Kind kind = KindOf(term.value);
    auto f = payload_index_.find(term.field);
    if (f != payload_index_.end() && kind != Kind::kOther) {
      const FieldIndex& index = f->second;
      auto it = (term.op == CompareOp::kEq || term.op == CompareOp::kGe) ? index.lower_bound(term.value)
                : term.op == CompareOp::kGt ? index.upper_bound(term.value)
                                            : index.lower_bound(KindFloor(kind));
      for (; it != index.end() && KindOf(it->first) == kind; ++it) {
        if (!Satisfies(term.op, CompareValues(it->first, term.value))) {
          if (term.op == CompareOp::kLt || term.op == CompareOp::kLe || term.op == CompareOp::kEq) {
            break;
          }
          continue;
        }
        keys.insert(keys.end(), it->second.begin(), it->second.end());
      }
    }
    if (!have_best || keys.size() < best.size()) {
      best = std::move(keys);
      have_best = true;
    }
    if (best.empty()) break;
  }
  std::vector<VertexId> out;
  for (const auto& key : best) {
    if (filter.Matches(payloads_.at(key))) out.push_back(key);
  }
  return out;
}

std::vector<ScoredHit> VectorCollection::Search(std::span<const float> query, size_t k,
                                                size_t ef_search,
                                                const PayloadFilter& filter) const {
  if (query.size() != config_.dimension) {
    Throw(ErrorCode::kDimensionMismatch,
          fmt::format("collection '{}' expects a {}-d query, got {}", name_, config_.dimension,
                      query.size()));
  }
  if (k == 0) Throw(ErrorCode::kInvalidArgument, "k must be at least 1");
  QueryScorer scorer(config_.metric, query);

  std::shared_lock lock(mu_);
  std::vector<ScoredHit> hits;

  // Per-segment acceptance bitmaps; empty means "every live point".
  std::vector<std::vector<bool>> accepted;
  if (!filter.empty()) {
    auto candidates = Candidates(filter);
    if (candidates.size() <= config_.brute_force_limit) {
      for (const auto& key : candidates) {
        auto loc = locations_.at(key);
        const Segment& seg = *segments_[loc.segment];
        hits.push_back({key, scorer(seg.vector(loc.ordinal), seg.norm(loc.ordinal))});
      }
      std::sort(hits.begin(), hits.end(), HitBefore);
      if (hits.size() > k) hits.resize(k);
      return hits;
    }
    accepted.resize(segments_.size());
    for (size_t s = 0; s < segments_.size(); ++s) accepted[s].assign(segments_[s]->size(), false);
    for (const auto& key : candidates) {
      auto loc = locations_.at(key);
      accepted[loc.segment][loc.ordinal] = true;
    }
  }

  for (size_t s = 0; s < segments_.size(); ++s) {
    const Segment& seg = *segments_[s];
    if (seg.live_count() == 0) continue;
    HnswIndex::AcceptFn accept;
    if (!accepted.empty()) {
      const auto& bits = accepted[s];
      accept = [&bits](uint32_t n) { return bool(bits[n]); };
    } else if (seg.tombstone_count() > 0) {
      accept = [&seg](uint32_t n) { return seg.is_live(n); };
    }
    // Grow ef until k accepted hits turn up or the whole segment was in reach.
    size_t ef = std::max(ef_search, k);
    std::vector<HnswIndex::Hit> found;
    while (true) {
      found = seg.Search(scorer, ef, accept);
      if (found.size() >= k || ef >= seg.size()) break;
      ef = std::min(ef * 2, seg.size());
    }
    for (size_t i = 0; i < found.size() && i < k; ++i) {
      hits.push_back({seg.key(found[i].node), found[i].score});
    }
  }
  std::sort(hits.begin(), hits.end(), HitBefore);
  if (hits.size() > k) hits.resize(k);
  return hits;
}

size_t VectorCollection::Compact() {
  std::vector<std::unique_ptr<Segment>> kept;
  std::unique_ptr<Segment> merged;
  size_t victims = 0;
  bool mutable_victim = false;
  uint64_t version = 0;
  uint32_t merged_id = 0;
  {
    // Build the merged segment while searches keep running; writers wait.
    std::shared_lock lock(mu_);
    version = version_;
    std::vector<const Segment*> sources;
    for (size_t s = 0; s < segments_.size(); ++s) {
      const Segment& seg = *segments_[s];
      if (seg.tombstone_count() > 0 && seg.tombstone_ratio() >= config_.compact_ratio) {
        sources.push_back(&seg);
        if (s + 1 == segments_.size()) mutable_victim = true;
      }
    }
    if (sources.empty()) return 0;
    victims = sources.size();
    merged_id = next_segment_id_;
    merged = std::make_unique<Segment>(merged_id, config_.dimension, config_.metric, config_.hnsw);
    for (const Segment* seg : sources) {
      for (uint32_t i = 0; i < seg->size(); ++i) {
        if (seg->is_live(i)) merged->Add(seg->key(i), seg->vector(i));
      }
    }
    merged->Seal();
  }

  std::unique_lock lock(mu_);
  if (version != version_ || next_segment_id_ != merged_id) return 0;  // raced with a writer
  std::vector<std::unique_ptr<Segment>> next;
  for (size_t s = 0; s < segments_.size(); ++s) {
    const Segment& seg = *segments_[s];
    bool victim = seg.tombstone_count() > 0 && seg.tombstone_ratio() >= config_.compact_ratio;
    if (!victim && s + 1 < segments_.size()) next.push_back(std::move(segments_[s]));
  }
  ++next_segment_id_;
  next.push_back(std::move(merged));
  if (mutable_victim) {
    next.push_back(std::make_unique<Segment>(next_segment_id_++, config_.dimension,
                                             config_.metric, config_.hnsw));
  } else {
    next.push_back(std::move(segments_.back()));
  }
  segments_ = std::move(next);
  RebuildLocations();
  ++version_;
  return victims;
}

void VectorCollection::RebuildLocations() {
  locations_.clear();
  for (uint32_t s = 0; s < segments_.size(); ++s) {
    const Segment& seg = *segments_[s];
    for (uint32_t i = 0; i < seg.size(); ++i) {
      if (!seg.is_live(i)) continue;
      if (!locations_.emplace(seg.key(i), Location{s, i}).second) {
        Throw(ErrorCode::kCorruptCheckpoint,
              fmt::format("collection '{}' has two live points for {}", name_,
                          ToString(seg.key(i))));
      }
    }
  }
}

size_t VectorCollection::point_count() const {
  std::shared_lock lock(mu_);
  return locations_.size();
}

CollectionStats VectorCollection::Stats() const {
  std::shared_lock lock(mu_);
  CollectionStats stats;
  stats.live_points = locations_.size();
  stats.segments = segments_.size();
  for (const auto& seg : segments_) {
    stats.physical_points += seg->size();
    stats.tombstones += seg->tombstone_count();
    if (seg->sealed()) ++stats.sealed_segments;
  }
  return stats;
}

bool VectorCollection::Contains(const VertexId& key) const {
  std::shared_lock lock(mu_);
  return locations_.contains(key);
}

std::optional<Point> VectorCollection::Get(const VertexId& key) const {
  std::shared_lock lock(mu_);
  auto it = locations_.find(key);
  if (it == locations_.end()) return std::nullopt;
  auto v = segments_[it->second.segment]->vector(it->second.ordinal);
  return Point{key, FloatVector(v.begin(), v.end()), payloads_.at(key)};
}

std::vector<Point> VectorCollection::Snapshot() const {
  std::shared_lock lock(mu_);
  std::vector<Point> out;
  out.reserve(payloads_.size());
  for (const auto& [key, payload] : payloads_) {
    auto loc = locations_.at(key);
    auto v = segments_[loc.segment]->vector(loc.ordinal);
    out.push_back({key, FloatVector(v.begin(), v.end()), payload});
  }
  return out;
}

VectorCollection::Image VectorCollection::Encode() const {
  std::shared_lock lock(mu_);
  Image image;
  ByteWriter out;
  out.Put<uint32_t>(kManifestMagic);
  out.Put<uint32_t>(config_.dimension);
  out.Put<uint8_t>(static_cast<uint8_t>(config_.metric));
  out.Put<uint32_t>(config_.hnsw.m);
  out.Put<uint32_t>(config_.hnsw.ef_construction);
  out.Put<uint64_t>(config_.seal_threshold);
  out.Put<double>(config_.compact_ratio);
  out.Put<uint64_t>(config_.brute_force_limit);
  out.Put<uint32_t>(next_segment_id_);
  out.Put<uint32_t>(static_cast<uint32_t>(segments_.size()));
  for (const auto& seg : segments_) {
    out.Put<uint32_t>(seg->id());
    image.segment_files.emplace_back(seg->id(), seg->Encode());
  }
  out.Put<uint32_t>(Crc32c(out.data()));
  image.manifest = out.Take();
  return image;
}

std::unique_ptr<VectorCollection> VectorCollection::Decode(
    std::string name, std::string_view manifest,
    const std::vector<std::pair<uint32_t, std::string>>& segment_files) {
  if (manifest.size() < 4) Throw(ErrorCode::kCorruptCheckpoint, "collection manifest too short");
  auto body = manifest.substr(0, manifest.size() - 4);
  ByteReader trailer(manifest.substr(manifest.size() - 4), ErrorCode::kCorruptCheckpoint);
  if (trailer.Get<uint32_t>() != Crc32c(body)) {
    Throw(ErrorCode::kCorruptCheckpoint, fmt::format("collection '{}' manifest checksum", name));
  }
  ByteReader in(body, ErrorCode::kCorruptCheckpoint);
  if (in.Get<uint32_t>() != kManifestMagic) {
    Throw(ErrorCode::kCorruptCheckpoint, "bad collection manifest magic");
  }
  CollectionConfig config;
  config.dimension = in.Get<uint32_t>();
  config.metric = static_cast<Metric>(in.Get<uint8_t>());
  config.hnsw.m = in.Get<uint32_t>();
  config.hnsw.ef_construction = in.Get<uint32_t>();
  config.seal_threshold = in.Get<uint64_t>();
  config.compact_ratio = in.Get<double>();
  config.brute_force_limit = in.Get<uint64_t>();
  auto collection = std::make_unique<VectorCollection>(std::move(name), config);
  collection->next_segment_id_ = in.Get<uint32_t>();
  auto count = in.Get<uint32_t>();
  if (count == 0) Throw(ErrorCode::kCorruptCheckpoint, "collection without segments");
  collection->segments_.clear();
  for (uint32_t i = 0; i < count; ++i) {
    auto id = in.Get<uint32_t>();
    auto file = std::find_if(segment_files.begin(), segment_files.end(),
                             [&](const auto& f) { return f.first == id; });
    if (file == segment_files.end()) {
      Throw(ErrorCode::kCorruptCheckpoint, fmt::format("missing segment file {}", id));
    }
    auto seg = Segment::Decode(file->second);
    if (seg->id() != id || seg->dimension() != config.dimension || seg->metric() != config.metric) {
      Throw(ErrorCode::kCorruptCheckpoint, fmt::format("segment {} does not match its manifest", id));
    }
    collection->segments_.push_back(std::move(seg));
  }
  if (!in.AtEnd()) Throw(ErrorCode::kCorruptCheckpoint, "trailing bytes in collection manifest");
  collection->RebuildLocations();
  for (const auto& [key, loc] : collection->locations_) collection->payloads_[key];
  return collection;
}

void VectorCollection::EncodePayloads(ByteWriter& out) const {
  std::shared_lock lock(mu_);
  out.Put<uint64_t>(payloads_.size());
  for (const auto& [key, payload] : payloads_) {
    out.PutVertex(key);
    out.Put<uint32_t>(static_cast<uint32_t>(payload.size()));
    for (const auto& [field, value] : payload) {
      out.PutString(field);
      out.PutValue(value);
    }
  }
}

void VectorCollection::DecodePayloads(ByteReader& in) {
  std::unique_lock lock(mu_);
  payload_index_.clear();
  for (auto& [key, payload] : payloads_) payload.clear();
  auto n = in.Get<uint64_t>();
  for (uint64_t i = 0; i < n; ++i) {
    auto key = in.GetVertex();
    auto it = payloads_.find(key);
    if (it == payloads_.end()) {
      Throw(ErrorCode::kCorruptCheckpoint,
            fmt::format("payload for {} which has no point in '{}'", ToString(key), name_));
    }
    auto fields = in.Get<uint32_t>();
    for (uint32_t f = 0; f < fields; ++f) {
      auto field = in.GetString();
      it->second.emplace(std::move(field), in.GetValue());
    }
    IndexPayload(key, it->second);
  }
}

}  // namespace arcforge::vec
