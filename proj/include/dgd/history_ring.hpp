#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace dgd {

/// Fixed-capacity window over the most recent values. Pushing into a full
/// ring overwrites the oldest slot; lag(0) is the newest value.
template <typename T>
class HistoryRing {
 public:
  explicit HistoryRing(std::size_t capacity) : capacity_(capacity) {
    if (capacity == 0) throw std::invalid_argument("HistoryRing: capacity must be positive");
    slots_.reserve(capacity);
  }

  void push(T value) {
    if (slots_.size() < capacity_) {
      slots_.push_back(std::move(value));
      return;
    }
    slots_[oldest_] = std::move(value);
    oldest_ = (oldest_ + 1) % capacity_;
  }

  std::size_t size() const { return slots_.size(); }
  std::size_t capacity() const { return capacity_; }
  bool empty() const { return slots_.empty(); }
  bool full() const { return slots_.size() == capacity_; }

  /// Value pushed k pushes ago; k < size().
  const T& lag(std::size_t k) const {
    if (k >= slots_.size()) throw std::out_of_range("HistoryRing: lag beyond stored history");
    const std::size_t newest = (oldest_ + slots_.size() - 1) % slots_.size();
    return slots_[(newest + slots_.size() - k) % slots_.size()];
  }

  const T& newest() const { return lag(0); }
  const T& oldest() const { return lag(slots_.size() - 1); }

 private:
  std::size_t capacity_;
  std::size_t oldest_ = 0;
  std::vector<T> slots_;
};

}  // namespace dgd
