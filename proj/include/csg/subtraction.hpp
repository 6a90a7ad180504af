#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace csg {

// The set L of legal removal sizes: sorted, distinct, positive, max <= 64.
class SubtractionSet {
 public:
  SubtractionSet(std::initializer_list<int> values)
      : SubtractionSet(std::vector<int>(values)) {}

  explicit SubtractionSet(std::vector<int> values) {
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    if (values.empty())
      throw std::invalid_argument("subtraction set must be nonempty");
    if (values.front() < 1 || values.back() > 64)
      throw std::invalid_argument("subtraction set values must lie in [1,64]");
    values_ = std::move(values);
    for (int v : values_) mask_ |= std::uint64_t{1} << (v - 1);
  }

  // I_N = {1,...,N}
  static SubtractionSet interval(int n) {
    std::vector<int> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), 1);
    return SubtractionSet(std::move(v));
  }

  SubtractionSet with(int extra) const {
    std::vector<int> v = values_;
    v.push_back(extra);
    return SubtractionSet(std::move(v));
  }

  bool contains(int size) const {
    return size >= 1 && size <= 64 && (mask_ >> (size - 1) & 1);
  }

  int max() const { return values_.back(); }
  const std::vector<int>& values() const { return values_; }

  // Returns N when this set is exactly {1,...,N}, 0 otherwise.
  int interval_bound() const {
    int n = static_cast<int>(values_.size());
    return values_.back() == n ? n : 0;
  }

  std::string to_string() const {
    std::string s;
    for (int v : values_) {
      if (!s.empty()) s += ',';
      s += std::to_string(v);
    }
    return s;
  }

  bool operator==(const SubtractionSet&) const = default;

 private:
  std::vector<int> values_;
  std::uint64_t mask_ = 0;
};

}  // namespace csg
