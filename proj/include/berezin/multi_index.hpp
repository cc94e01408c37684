#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

namespace berezin {

/// Exponent vector (q_1, ..., q_d) of the monomial mu_1^q_1 ... mu_d^q_d.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<unsigned> exponents) : q_(std::move(exponents)) {}

  std::size_t dim() const noexcept { return q_.size(); }
  unsigned operator[](std::size_t i) const { return q_[i]; }
  const std::vector<unsigned>& exponents() const noexcept { return q_; }
  unsigned degree() const noexcept;

  std::string to_string() const;

  /// Graded lexicographic: degree first, then lexicographic on the exponents.
  friend std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b);
  friend bool operator==(const MultiIndex& a, const MultiIndex& b) = default;

 private:
  std::vector<unsigned> q_;
};

/// All indices of degree <= m in graded lexicographic order; C(m+d, d) of them.
std::vector<MultiIndex> enumerate_indices(std::size_t d, unsigned m);

/// C(n, k) as a double (exact for the sizes used here).
double binomial(unsigned n, unsigned k);

}  // namespace berezin
