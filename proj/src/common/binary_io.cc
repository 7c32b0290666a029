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

#include "arcforge/common/binary_io.h"

#include <boost/crc.hpp>
#include <fmt/format.h>

#include "arcforge/common/error.h"

namespace arcforge {

using Crc32cComputer = boost::crc_optimal<32, 0x1EDC6F41, 0xFFFFFFFF, 0xFFFFFFFF, true, true>;

uint32_t Crc32c(std::string_view data) {
  Crc32cComputer crc;
  crc.process_bytes(data.data(), data.size());
  return crc.checksum();
}

void ByteWriter::PutValue(const PropertyValue& v) {
  Put<uint8_t>(static_cast<uint8_t>(v.type()));
  switch (v.type()) {
    case ValueType::kNull: break;
    case ValueType::kBool: Put<uint8_t>(v.as_bool() ? 1 : 0); break;
    case ValueType::kInt: Put<int64_t>(v.as_int()); break;
    case ValueType::kFloat: Put<double>(v.as_float()); break;
    case ValueType::kText: PutString(v.as_text()); break;
    case ValueType::kJson: PutString(v.as_json().dump()); break;
    case ValueType::kVector:
      Put<uint32_t>(static_cast<uint32_t>(v.as_vector().size()));
      PutFloats(v.as_vector());
      break;
  }
}

PropertyValue ByteReader::GetValue() {
  auto tag = Get<uint8_t>();
  switch (static_cast<ValueType>(tag)) {
    case ValueType::kNull: return {};
    case ValueType::kBool: return Get<uint8_t>() != 0;
    case ValueType::kInt: return Get<int64_t>();
    case ValueType::kFloat: return Get<double>();
    case ValueType::kText: return GetString();
    case ValueType::kJson: {
      auto text = GetString();
      auto doc = Json::parse(text, nullptr, false);
      if (doc.is_discarded()) Throw(on_error_, "malformed json value");
      return JsonDoc{std::move(doc)};
    }
    case ValueType::kVector: {
      auto n = Get<uint32_t>();
      if (static_cast<size_t>(n) * sizeof(float) > remaining()) {
        Throw(on_error_, "vector length exceeds buffer");
      }
      FloatVector v(n);
      GetFloats(v);
      return v;
    }
  }
  Throw(on_error_, fmt::format("unknown value tag {}", tag));
}

void ByteReader::Require(size_t n) const {
  if (data_.size() - pos_ < n) {
    Throw(on_error_, fmt::format("truncated record: need {} bytes at {}, have {}",
                                 n, pos_, data_.size() - pos_));
  }
}

}  // namespace arcforge
