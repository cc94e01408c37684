#include "berezin/multi_index.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "berezin/error.hpp"

namespace berezin {

unsigned MultiIndex::degree() const noexcept { return std::accumulate(q_.begin(), q_.end(), 0u); }

std::string MultiIndex::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < q_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(q_[i]);
  }
  return s + ")";
}

std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b) {
  if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  return std::lexicographical_compare_three_way(a.q_.begin(), a.q_.end(), b.q_.begin(), b.q_.end());
}

namespace {

// Appends every exponent vector with the given total degree, in lexicographic order.
void fill_degree(std::size_t pos, unsigned remaining, std::vector<unsigned>& cur, std::vector<MultiIndex>& out) {
  if (pos + 1 == cur.size()) {
    cur[pos] = remaining;
    out.emplace_back(cur);
    return;
  }
  for (unsigned q = 0; q <= remaining; ++q) {
    cur[pos] = q;
    fill_degree(pos + 1, remaining - q, cur, out);
  }
}

}  // namespace

std::vector<MultiIndex> enumerate_indices(std::size_t d, unsigned m) {
  if (d == 0) throw Error(ErrorKind::InvalidArgument, "dimension must be >= 1");
  std::vector<MultiIndex> out;
  out.reserve(static_cast<std::size_t>(binomial(m + static_cast<unsigned>(d), static_cast<unsigned>(d))));
  std::vector<unsigned> cur(d, 0);
  for (unsigned q = 0; q <= m; ++q) fill_degree(0, q, cur, out);
  return out;
}

double binomial(unsigned n, unsigned k) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (unsigned i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return std::round(r);
}

}  // namespace berezin
