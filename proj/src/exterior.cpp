#include "crinv/exterior.hpp"

#include <algorithm>

namespace crinv::exterior {

namespace {

std::uint64_t bit(int index) { return std::uint64_t{1} << (index - 1); }

void check_universe(int universe) {
  if (universe < 0 || universe > kMaxUniverse)
    throw std::domain_error("multi-index universe " + std::to_string(universe) + " out of range");
}

}  // namespace

MultiIndex::MultiIndex(std::span<const int> entries, int universe) : universe_(universe) {
  check_universe(universe);
  int prev = 0;
  for (int e : entries) {
    if (e <= prev || e > universe)
      throw std::domain_error("multi-index entries must be strictly increasing in 1.." + std::to_string(universe));
    mask_ |= bit(e);
    prev = e;
  }
}

MultiIndex MultiIndex::from_mask(std::uint64_t mask, int universe) {
  check_universe(universe);
  if (universe < 64 && (mask >> universe) != 0) throw std::domain_error("multi-index mask exceeds universe");
  MultiIndex m;
  m.mask_ = mask;
  m.universe_ = universe;
  return m;
}

MultiIndex MultiIndex::full(int universe) {
  check_universe(universe);
  return from_mask(universe == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << universe) - 1, universe);
}

bool MultiIndex::contains(int index) const {
  return index >= 1 && index <= universe_ && (mask_ & bit(index)) != 0;
}

std::vector<int> MultiIndex::entries() const {
  std::vector<int> out;
  out.reserve(size());
  for (std::uint64_t m = mask_; m != 0; m &= m - 1) out.push_back(std::countr_zero(m) + 1);
  return out;
}

std::string to_string(const MultiIndex& m) {
  std::string s = "(";
  bool first = true;
  for (int e : m.entries()) {
    if (!first) s += ",";
    s += std::to_string(e);
    first = false;
  }
  return s + ")";
}

int permutation_sign(int sigma, const MultiIndex& J) {
  if (!J.contains(sigma))
    throw std::domain_error("index " + std::to_string(sigma) + " is not in " + to_string(J));
  int below = std::popcount(J.mask() & (bit(sigma) - 1));
  return below % 2 == 0 ? 1 : -1;
}

MultiIndex remove_index(const MultiIndex& J, int sigma) {
  if (!J.contains(sigma))
    throw std::domain_error("index " + std::to_string(sigma) + " is not in " + to_string(J));
  return MultiIndex::from_mask(J.mask() & ~bit(sigma), J.universe());
}

int merge_sign(const MultiIndex& J, const MultiIndex& K) {
  if ((J.mask() & K.mask()) != 0) return 0;
  // Each k in K must pass the elements of J larger than k.
  int swaps = 0;
  for (std::uint64_t m = K.mask(); m != 0; m &= m - 1) {
    std::uint64_t below = (m & -m) - 1;
    swaps += std::popcount(J.mask() & ~below);
  }
  return swaps % 2 == 0 ? 1 : -1;
}

std::optional<std::pair<MultiIndex, int>> normalize(std::span<const int> tuple, int universe) {
  check_universe(universe);
  std::vector<int> v(tuple.begin(), tuple.end());
  for (int e : v)
    if (e < 1 || e > universe) throw std::domain_error("index " + std::to_string(e) + " out of range");
  // Insertion sort, counting transpositions.
  int swaps = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    for (std::size_t j = i; j > 0 && v[j - 1] > v[j]; --j) {
      std::swap(v[j - 1], v[j]);
      ++swaps;
    }
  if (std::adjacent_find(v.begin(), v.end()) != v.end()) return std::nullopt;
  return std::make_pair(MultiIndex(v, universe), swaps % 2 == 0 ? 1 : -1);
}

std::vector<MultiIndex> all_multi_indices(int universe, int size) {
  check_universe(universe);
  std::vector<MultiIndex> out;
  if (size < 0 || size > universe) return out;
  std::vector<int> idx(size);
  for (int i = 0; i < size; ++i) idx[i] = i + 1;
  while (true) {
    out.emplace_back(idx, universe);
    int i = size - 1;
    while (i >= 0 && idx[i] == universe - size + i + 1) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

}  // namespace crinv::exterior
