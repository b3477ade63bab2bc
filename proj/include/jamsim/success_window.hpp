#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace jamsim {

/// Ring buffer of per-slot success flags with windowed accuracy queries.
class SuccessWindow {
 public:
  explicit SuccessWindow(int capacity) : ring_(static_cast<size_t>(capacity), 0) {
    if (capacity <= 0) throw std::invalid_argument("SuccessWindow: capacity must be positive");
  }

  void append(bool success) {
    ring_[head_] = success ? 1 : 0;
    head_ = (head_ + 1) % ring_.size();
    if (count_ < ring_.size()) ++count_;
    ++total_;
  }

  // Fraction of successes over the last min(window, recorded) slots.
  double accuracy(int window) const {
    if (window <= 0) throw std::invalid_argument("SuccessWindow: window must be positive");
    if (count_ == 0) throw std::logic_error("SuccessWindow: no recorded slots");
    const size_t w = std::min({static_cast<size_t>(window), count_});
    size_t idx = (head_ + ring_.size() - 1) % ring_.size();
    size_t hits = 0;
    for (size_t i = 0; i < w; ++i) {
      hits += ring_[idx];
      idx = (idx + ring_.size() - 1) % ring_.size();
    }
    return static_cast<double>(hits) / static_cast<double>(w);
  }

  size_t recorded() const { return count_; }
  size_t total_slots() const { return total_; }

 private:
  std::vector<unsigned char> ring_;
  size_t head_ = 0;
  size_t count_ = 0;
  size_t total_ = 0;
};

}  // namespace jamsim
