#pragma once

// Multi-index combinatorics and alternating forms of type (0,q).
//
// A MultiIndex is a strictly increasing tuple in 1..n, stored as a bitmask
// (n <= 64). An AltForm is a sparse map MultiIndex -> coefficient with zero
// coefficients pruned, so the zero form is the empty map.

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "crinv/scalar.hpp"

namespace crinv::exterior {

inline constexpr int kMaxUniverse = 64;

class MultiIndex {
 public:
  MultiIndex() = default;

  /// Strictly increasing entries in 1..universe; throws std::domain_error otherwise.
  MultiIndex(std::span<const int> entries, int universe);
  MultiIndex(std::initializer_list<int> entries, int universe)
      : MultiIndex(std::span<const int>(entries.begin(), entries.size()), universe) {}

  static MultiIndex from_mask(std::uint64_t mask, int universe);
  static MultiIndex full(int universe);

  int universe() const { return universe_; }
  int size() const { return std::popcount(mask_); }
  std::uint64_t mask() const { return mask_; }
  bool contains(int index) const;
  std::vector<int> entries() const;

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  friend auto operator<=>(const MultiIndex& a, const MultiIndex& b) {
    // Graded lexicographic on the entry tuple: degree first, then entries.
    // For equal sizes the lowest differing bit belongs to the smaller tuple.
    if (a.size() != b.size()) return a.size() <=> b.size();
    std::uint64_t diff = a.mask_ ^ b.mask_;
    if (diff == 0) return std::strong_ordering::equal;
    return (a.mask_ & diff & -diff) ? std::strong_ordering::less : std::strong_ordering::greater;
  }

 private:
  std::uint64_t mask_ = 0;
  int universe_ = 0;
};

std::string to_string(const MultiIndex& m);

/// (-1)^p with p = #{j in J : j < sigma}: the sign taking (sigma, J\sigma) to J.
int permutation_sign(int sigma, const MultiIndex& J);

/// J with sigma deleted.
MultiIndex remove_index(const MultiIndex& J, int sigma);

/// Sign of tau_J ^ tau_K relative to tau_{J u K}; 0 when J and K intersect.
int merge_sign(const MultiIndex& J, const MultiIndex& K);

/// Sorts an arbitrary index tuple. Returns the sorted multi-index and the
/// sign of the sorting permutation, or nullopt if an index repeats.
std::optional<std::pair<MultiIndex, int>> normalize(std::span<const int> tuple, int universe);

/// All multi-indices of the given size in 1..universe, in increasing order.
std::vector<MultiIndex> all_multi_indices(int universe, int size);

template <FieldScalar S>
class AltForm {
 public:
  using Map = std::map<MultiIndex, S>;

  AltForm() = default;
  AltForm(int degree, int universe) : degree_(degree), universe_(universe) {
    if (universe < 0 || universe > kMaxUniverse) throw std::domain_error("AltForm universe out of range");
    if (degree < 0) throw std::domain_error("AltForm degree must be nonnegative");
  }

  /// The degree-0 form with the given constant value.
  static AltForm constant(int universe, S value) {
    AltForm f(0, universe);
    f.add(MultiIndex({}, universe), std::move(value));
    return f;
  }

  /// tau_{i1} ^ ... ^ tau_{iq} for an arbitrary tuple, sign-normalized.
  static AltForm basis(std::span<const int> tuple, int universe) {
    AltForm f(static_cast<int>(tuple.size()), universe);
    if (auto n = normalize(tuple, universe)) f.add(n->first, from_int<S>(n->second));
    return f;
  }
  static AltForm basis(std::initializer_list<int> tuple, int universe) {
    return basis(std::span<const int>(tuple.begin(), tuple.size()), universe);
  }

  int degree() const { return degree_; }
  int universe() const { return universe_; }
  const Map& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Coefficient on tau_J (zero if absent).
  S coeff(const MultiIndex& J) const {
    auto it = terms_.find(J);
    return it == terms_.end() ? S{} : it->second;
  }

  /// Accumulates value * tau_J, pruning a resulting zero.
  void add(const MultiIndex& J, const S& value) {
    check_key(J);
    if (crinv::is_zero(value)) return;
    auto [it, inserted] = terms_.try_emplace(J, value);
    if (!inserted) {
      it->second += value;
      if (crinv::is_zero(it->second)) terms_.erase(it);
    }
  }

  AltForm& operator+=(const AltForm& o) {
    check_compatible(o);
    for (const auto& [J, c] : o.terms_) add(J, c);
    return *this;
  }
  AltForm& operator-=(const AltForm& o) {
    check_compatible(o);
    for (const auto& [J, c] : o.terms_) add(J, -c);
    return *this;
  }
  AltForm& operator*=(const S& s) {
    if (crinv::is_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto it = terms_.begin(); it != terms_.end();) {
      it->second *= s;
      it = crinv::is_zero(it->second) ? terms_.erase(it) : std::next(it);
    }
    return *this;
  }

  friend AltForm operator+(AltForm a, const AltForm& b) { return a += b; }
  friend AltForm operator-(AltForm a, const AltForm& b) { return a -= b; }
  friend AltForm operator*(AltForm a, const S& s) { return a *= s; }
  friend AltForm operator*(const S& s, AltForm a) { return a *= s; }
  friend AltForm operator-(AltForm a) { return a *= from_int<S>(-1); }

  friend bool operator==(const AltForm& a, const AltForm& b) {
    return a.degree_ == b.degree_ && a.universe_ == b.universe_ && a.terms_ == b.terms_;
  }

  /// Applies f to every coefficient, producing a form over another scalar.
  template <class Fn>
  auto map_coefficients(Fn&& f) const {
    using T = std::decay_t<decltype(f(std::declval<const S&>()))>;
    AltForm<T> out(degree_, universe_);
    for (const auto& [J, c] : terms_) out.add(J, f(c));
    return out;
  }

 private:
  void check_key(const MultiIndex& J) const {
    if (J.universe() != universe_ || J.size() != degree_)
      throw std::domain_error("multi-index " + to_string(J) + " does not fit a degree-" + std::to_string(degree_) +
                              " form over " + std::to_string(universe_) + " generators");
  }
  void check_compatible(const AltForm& o) const {
    if (o.degree_ != degree_ || o.universe_ != universe_)
      throw std::domain_error("adding alternating forms of different shapes");
  }

  int degree_ = 0;
  int universe_ = 0;
  Map terms_;
};

template <FieldScalar S>
AltForm<S> wedge(const AltForm<S>& a, const AltForm<S>& b) {
  if (a.universe() != b.universe()) throw std::domain_error("wedge of forms over different universes");
  AltForm<S> out(a.degree() + b.degree(), a.universe());
  for (const auto& [J, x] : a.terms()) {
    for (const auto& [K, y] : b.terms()) {
      int s = merge_sign(J, K);
      if (s == 0) continue;
      S c = x * y;
      if (s < 0) c = -c;
      out.add(MultiIndex::from_mask(J.mask() | K.mask(), a.universe()), c);
    }
  }
  return out;
}

/// max_J |a_J|, 0 for the zero form.
template <FieldScalar S>
double sup_coeff_norm(const AltForm<S>& a) {
  double m = 0.0;
  for (const auto& [J, c] : a.terms()) m = std::max(m, modulus(c));
  return m;
}

/// The 1-form sum_k c_k tau_k.
template <FieldScalar S>
AltForm<S> covector(std::span<const S> coefficients) {
  int n = static_cast<int>(coefficients.size());
  AltForm<S> out(1, n);
  for (int k = 0; k < n; ++k) out.add(MultiIndex({k + 1}, n), coefficients[k]);
  return out;
}

}  // namespace crinv::exterior
