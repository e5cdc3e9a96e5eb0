#pragma once

#include <algorithm>
#include <cstdint>

#include "cvp/types.hpp"

namespace cvp {

inline IndexSet mask_to_set(std::uint64_t mask) {
  IndexSet out;
  for (std::size_t i = 0; mask != 0; ++i, mask >>= 1)
    if (mask & 1u) out.push_back(i);
  return out;
}

inline std::uint64_t set_to_mask(const IndexSet& s) {
  std::uint64_t m = 0;
  for (auto i : s) m |= std::uint64_t{1} << i;
  return m;
}

inline IndexSet full_set(std::size_t n) {
  IndexSet out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = i;
  return out;
}

inline IndexSet set_union(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline IndexSet set_intersection(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline IndexSet set_difference(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline IndexSet complement(const IndexSet& a, std::size_t n) { return set_difference(full_set(n), a); }

inline bool is_subset(const IndexSet& a, const IndexSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline bool contains(const IndexSet& a, std::size_t i) {
  return std::binary_search(a.begin(), a.end(), i);
}

// Sorts and removes duplicates; throws if any index is out of range.
IndexSet normalize_index_set(IndexSet s, std::size_t n);

}  // namespace cvp
