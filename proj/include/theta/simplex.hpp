#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace theta {

/// Thrown when an operation's preconditions are violated (mismatched
/// sources/targets, invalid map data, out-of-range arguments).
struct domain_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An object [n] = {0,...,n} of the simplex category.
struct SimplexObject {
  int n = 0;

  SimplexObject() = default;
  explicit SimplexObject(int n_) : n(n_) {
    if (n < 0) throw domain_error("SimplexObject: n must be >= 0");
  }

  auto operator<=>(const SimplexObject&) const = default;
};

/// A weakly monotone map [m] -> [n], stored in tabulated form: values[i] is
/// the image of i. Composition and equality are structural; generator words
/// (d^i, s^j) are derived on demand, never stored.
class SimplexMap {
 public:
  SimplexMap(SimplexObject src, SimplexObject tgt, std::vector<int> values)
      : src_(src), tgt_(tgt), values_(std::move(values)) {
    if (static_cast<int>(values_.size()) != src_.n + 1)
      throw domain_error("SimplexMap: wrong number of values");
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (values_[i] < 0 || values_[i] > tgt_.n)
        throw domain_error("SimplexMap: value out of range");
      if (i > 0 && values_[i - 1] > values_[i])
        throw domain_error("SimplexMap: values not monotone");
    }
  }

  static SimplexMap identity(SimplexObject s) {
    std::vector<int> v(s.n + 1);
    for (int i = 0; i <= s.n; ++i) v[i] = i;
    return SimplexMap(s, s, std::move(v));
  }

  /// Coface d^i : [n] -> [n+1], the injection omitting i.
  static SimplexMap coface(int n, int i) {
    if (n < 0 || i < 0 || i > n + 1) throw domain_error("coface: bad indices");
    std::vector<int> v(n + 1);
    for (int k = 0; k <= n; ++k) v[k] = k < i ? k : k + 1;
    return SimplexMap(SimplexObject(n), SimplexObject(n + 1), std::move(v));
  }

  /// Codegeneracy s^j : [n+1] -> [n], the surjection repeating j.
  static SimplexMap codegeneracy(int n, int j) {
    if (n < 0 || j < 0 || j > n) throw domain_error("codegeneracy: bad indices");
    std::vector<int> v(n + 2);
    for (int k = 0; k <= n + 1; ++k) v[k] = k <= j ? k : k - 1;
    return SimplexMap(SimplexObject(n + 1), SimplexObject(n), std::move(v));
  }

  SimplexObject src() const { return src_; }
  SimplexObject tgt() const { return tgt_; }
  const std::vector<int>& values() const { return values_; }
  int operator()(int i) const { return values_.at(i); }

  bool is_identity() const {
    if (src_ != tgt_) return false;
    for (int i = 0; i <= src_.n; ++i)
      if (values_[i] != i) return false;
    return true;
  }

  bool is_injective() const {
    for (std::size_t i = 1; i < values_.size(); ++i)
      if (values_[i - 1] == values_[i]) return false;
    return true;
  }

  bool is_surjective() const {
    // Monotone, so surjectivity means hitting 0, tgt.n and never skipping.
    if (values_.empty()) return tgt_.n < 0;
    if (values_.front() != 0 || values_.back() != tgt_.n) return false;
    for (std::size_t i = 1; i < values_.size(); ++i)
      if (values_[i] - values_[i - 1] > 1) return false;
    return true;
  }

  auto operator<=>(const SimplexMap&) const = default;

 private:
  SimplexObject src_, tgt_;
  std::vector<int> values_;
};

/// Pointwise composition g . f; requires f.tgt == g.src.
inline SimplexMap simplex_compose(const SimplexMap& g, const SimplexMap& f) {
  if (f.tgt() != g.src())
    throw domain_error("simplex_compose: source/target mismatch");
  std::vector<int> v(f.values().size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = g(f.values()[i]);
  return SimplexMap(f.src(), g.tgt(), std::move(v));
}

/// All weakly monotone maps [m] -> [n], each exactly once, in lexicographic
/// order of their value sequences.
inline std::vector<SimplexMap> simplex_hom_enumerate(SimplexObject m,
                                                     SimplexObject n) {
  std::vector<SimplexMap> out;
  std::vector<int> cur(m.n + 1, 0);
  while (true) {
    out.push_back(SimplexMap(m, n, cur));
    // advance to next monotone sequence
    int i = m.n;
    while (i >= 0 && cur[i] == n.n) --i;
    if (i < 0) break;
    int v = cur[i] + 1;
    for (int k = i; k <= m.n; ++k) cur[k] = v;
  }
  return out;
}

/// The unique epi-mono factorization f = mono . epi through the image of f.
inline std::pair<SimplexMap, SimplexMap> simplex_factorize(const SimplexMap& f) {
  std::vector<int> image;
  for (int v : f.values())
    if (image.empty() || image.back() != v) image.push_back(v);
  int k = static_cast<int>(image.size()) - 1;
  std::vector<int> epi(f.values().size());
  for (std::size_t i = 0; i < epi.size(); ++i) {
    epi[i] = static_cast<int>(
        std::lower_bound(image.begin(), image.end(), f.values()[i]) -
        image.begin());
  }
  SimplexMap e(f.src(), SimplexObject(k), std::move(epi));
  SimplexMap m(SimplexObject(k), f.tgt(), std::move(image));
  return {e, m};
}

}  // namespace theta
