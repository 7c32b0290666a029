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

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <memory>

namespace arcforge::mem {

/// Running total of bytes requested through CountingAllocator instances
/// that share it.
struct AllocationCounter {
  std::atomic<int64_t> bytes{0};

  int64_t load() const { return bytes.load(std::memory_order_relaxed); }
};

/// std::allocator wrapper that charges every allocation (at the size the
/// container requests, including node headers for tree containers) to an
/// AllocationCounter. A null counter disables accounting.
template <typename T>
class CountingAllocator {
 public:
  using value_type = T;

  CountingAllocator() noexcept = default;
  explicit CountingAllocator(AllocationCounter* counter) noexcept
      : counter_(counter) {}
  template <typename U>
  CountingAllocator(const CountingAllocator<U>& other) noexcept
      : counter_(other.counter()) {}

  T* allocate(size_t n) {
    if (counter_ != nullptr) {
      counter_->bytes.fetch_add(static_cast<int64_t>(n * sizeof(T)),
                                std::memory_order_relaxed);
    }
    return std::allocator<T>{}.allocate(n);
  }

  void deallocate(T* p, size_t n) noexcept {
    if (counter_ != nullptr) {
      counter_->bytes.fetch_sub(static_cast<int64_t>(n * sizeof(T)),
                                std::memory_order_relaxed);
    }
    std::allocator<T>{}.deallocate(p, n);
  }

  AllocationCounter* counter() const noexcept { return counter_; }

  template <typename U>
  friend bool operator==(const CountingAllocator& a,
                         const CountingAllocator<U>& b) noexcept {
    return a.counter() == b.counter();
  }

 private:
  AllocationCounter* counter_ = nullptr;
};

}  // namespace arcforge::mem
