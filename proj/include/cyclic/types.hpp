#pragma once

// Core value types shared by every module: complex sequences indexed mod n,
// index sets over Z_n, and the small number-theoretic helpers.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cyclic {

using Complex = std::complex<double>;

/// Raised when something the underlying theory rules out actually happens
/// (a singular DFT minor, a degenerate start that does not solve phi = 0).
/// Never used for bad user input.
class IntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Coordinates with modulus below this are treated as zero wherever a
/// formula divides by them.
inline constexpr double kNearZero = 1e-13;

/// Default absolute threshold for support computations.
inline constexpr double kSupportTol = 1e-9;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Non-negative remainder of i modulo n.
inline std::size_t wrap(long long i, std::size_t n) {
  const auto m = static_cast<long long>(n);
  const long long r = i % m;
  return static_cast<std::size_t>(r < 0 ? r + m : r);
}

/// Fixed-length sequence of finite complex numbers with cyclic indexing.
class ComplexVector {
 public:
  explicit ComplexVector(std::vector<Complex> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) throw std::invalid_argument("ComplexVector: length must be >= 1");
    for (const Complex& c : entries_) {
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
        throw std::invalid_argument("ComplexVector: non-finite entry");
    }
  }
  ComplexVector(std::initializer_list<Complex> entries)
      : ComplexVector(std::vector<Complex>(entries)) {}

  static ComplexVector constant(std::size_t n, Complex value) {
    return ComplexVector(std::vector<Complex>(n, value));
  }
  static ComplexVector delta(std::size_t n, std::size_t at = 0) {
    std::vector<Complex> v(n, Complex{0.0, 0.0});
    v.at(at) = 1.0;
    return ComplexVector(std::move(v));
  }

  std::size_t size() const noexcept { return entries_.size(); }
  const Complex& operator[](std::size_t i) const { return entries_[i]; }
  /// Entry at i taken modulo the length; negative i allowed.
  const Complex& cyclic(long long i) const { return entries_[wrap(i, entries_.size())]; }

  std::span<const Complex> values() const noexcept { return entries_; }
  const std::vector<Complex>& vector() const noexcept { return entries_; }
  auto begin() const noexcept { return entries_.begin(); }
  auto end() const noexcept { return entries_.end(); }

  friend bool operator==(const ComplexVector&, const ComplexVector&) = default;

 private:
  std::vector<Complex> entries_;
};

inline double max_abs(std::span<const Complex> v) {
  double m = 0.0;
  for (const Complex& c : v) m = std::max(m, std::abs(c));
  return m;
}

inline double max_abs_diff(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw std::invalid_argument("max_abs_diff: length mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

/// Sorted set of residues in {0, ..., n-1}.
class IndexSet {
 public:
  IndexSet(std::size_t modulus, std::vector<std::size_t> members)
      : modulus_(modulus), members_(std::move(members)) {
    if (modulus_ == 0) throw std::invalid_argument("IndexSet: modulus must be >= 1");
    std::sort(members_.begin(), members_.end());
    if (std::adjacent_find(members_.begin(), members_.end()) != members_.end())
      throw std::invalid_argument("IndexSet: duplicate member");
    if (!members_.empty() && members_.back() >= modulus_)
      throw std::invalid_argument("IndexSet: member out of range");
  }

  static IndexSet all(std::size_t modulus) {
    std::vector<std::size_t> m(modulus);
    for (std::size_t i = 0; i < modulus; ++i) m[i] = i;
    return IndexSet(modulus, std::move(m));
  }
  /// {1, ..., n-1}
  static IndexSet units(std::size_t modulus) {
    std::vector<std::size_t> m;
    for (std::size_t i = 1; i < modulus; ++i) m.push_back(i);
    return IndexSet(modulus, std::move(m));
  }

  std::size_t modulus() const noexcept { return modulus_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  const std::vector<std::size_t>& members() const noexcept { return members_; }
  auto begin() const noexcept { return members_.begin(); }
  auto end() const noexcept { return members_.end(); }

  bool contains(std::size_t i) const {
    return std::binary_search(members_.begin(), members_.end(), i);
  }

  /// -S computed mod n.
  IndexSet negated() const {
    std::vector<std::size_t> m;
    m.reserve(members_.size());
    for (std::size_t i : members_) m.push_back((modulus_ - i) % modulus_);
    return IndexSet(modulus_, std::move(m));
  }

  /// universe \ this
  IndexSet complement_in(const IndexSet& universe) const {
    std::vector<std::size_t> m;
    std::set_difference(universe.begin(), universe.end(), members_.begin(), members_.end(),
                        std::back_inserter(m));
    return IndexSet(modulus_, std::move(m));
  }

  IndexSet with(std::size_t i) const {
    std::vector<std::size_t> m = members_;
    if (!contains(i)) m.push_back(i);
    return IndexSet(modulus_, std::move(m));
  }

  friend bool operator==(const IndexSet&, const IndexSet&) = default;
  friend auto operator<=>(const IndexSet& a, const IndexSet& b) {
    return a.members_ <=> b.members_;
  }

 private:
  std::size_t modulus_;
  std::vector<std::size_t> members_;
};

inline std::string to_string(const IndexSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s.members()[i]);
  }
  return out + "}";
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline void require_prime(std::uint64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("expected a prime, got " + std::to_string(p));
}

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// All size-r subsets of `pool` in lexicographic order.
inline std::vector<std::vector<std::size_t>> combinations(const std::vector<std::size_t>& pool,
                                                          std::size_t r) {
  std::vector<std::vector<std::size_t>> out;
  if (r > pool.size()) return out;
  std::vector<std::size_t> idx(r);
  for (std::size_t i = 0; i < r; ++i) idx[i] = i;
  while (true) {
    std::vector<std::size_t> pick(r);
    for (std::size_t i = 0; i < r; ++i) pick[i] = pool[idx[i]];
    out.push_back(std::move(pick));
    std::size_t i = r;
    while (i > 0 && idx[i - 1] == pool.size() - r + (i - 1)) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

}  // namespace cyclic
