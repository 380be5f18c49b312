#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sfnet/error.hpp"

namespace sfnet {

inline bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// q = p^k with p prime, k >= 1; nullopt otherwise.
inline std::optional<std::pair<int, int>> prime_power_decompose(int q) {
  if (q < 2) return std::nullopt;
  for (int p = 2; p <= q; ++p) {
    if (q % p != 0) continue;
    if (!is_prime(p)) return std::nullopt;  // smallest divisor is always prime
    int k = 0, n = q;
    while (n % p == 0) {
      n /= p;
      ++k;
    }
    if (n != 1) return std::nullopt;
    return std::make_pair(p, k);
  }
  return std::nullopt;
}

// Arithmetic in GF(p^k). Elements are encoded as integers in [0, q):
// the polynomial c_{k-1} x^{k-1} + ... + c_0 maps to c_{k-1} p^{k-1} + ... + c_0.
// For k > 1 the field is GF(p)[x] modulo the smallest irreducible monic
// polynomial of degree k, "smallest" by the base-p encoding of its lower
// coefficients.
class GaloisField {
 public:
  explicit GaloisField(int q) : q_(q) {
    auto pk = prime_power_decompose(q);
    if (!pk) throw ConfigError("GF(" + std::to_string(q) + "): not a prime power");
    p_ = pk->first;
    k_ = pk->second;
    if (k_ > 1) reducer_ = find_irreducible();
    build_tables();
  }

  int q() const { return q_; }
  int characteristic() const { return p_; }
  int degree() const { return k_; }

  int add(int a, int b) const { return add_[a * q_ + b]; }
  int sub(int a, int b) const { return add(a, neg_[b]); }
  int neg(int a) const { return neg_[a]; }
  int mul(int a, int b) const { return mul_[a * q_ + b]; }

  // Smallest element (by encoding) generating the multiplicative group.
  int primitive_element() const {
    for (int cand = 2; cand < q_; ++cand) {
      int x = 1, count = 0;
      do {
        x = mul(x, cand);
        ++count;
      } while (x != 1);
      if (count == q_ - 1) return cand;
    }
    throw ValidationError("GF: no primitive element found");
  }

  std::vector<int> reducer_polynomial() const { return reducer_; }

 private:
  std::vector<int> decode(int n) const {
    std::vector<int> c(k_);
    for (int i = 0; i < k_; ++i) {
      c[i] = n % p_;
      n /= p_;
    }
    return c;
  }

  int encode(const std::vector<int>& c) const {
    int n = 0;
    for (int i = k_ - 1; i >= 0; --i) n = n * p_ + c[i];
    return n;
  }

  // poly mod divisor, coefficients low-to-high, divisor monic.
  static void poly_mod(std::vector<int>& a, const std::vector<int>& divisor, int p) {
    const int dd = static_cast<int>(divisor.size()) - 1;
    for (int i = static_cast<int>(a.size()) - 1; i >= dd; --i) {
      int c = a[i];
      if (c == 0) continue;
      for (int j = 0; j <= dd; ++j) {
        int& t = a[i - dd + j];
        t = (t - c * divisor[j]) % p;
        if (t < 0) t += p;
      }
    }
    a.resize(dd);
  }

  bool is_irreducible(const std::vector<int>& poly) const {
    // No monic divisor of degree 1..k/2.
    for (int d = 1; d <= k_ / 2; ++d) {
      int count = 1;
      for (int i = 0; i < d; ++i) count *= p_;
      for (int low = 0; low < count; ++low) {
        std::vector<int> divisor(d + 1);
        int n = low;
        for (int i = 0; i < d; ++i) {
          divisor[i] = n % p_;
          n /= p_;
        }
        divisor[d] = 1;
        std::vector<int> rem(poly);
        poly_mod(rem, divisor, p_);
        bool zero = true;
        for (int v : rem) zero &= (v == 0);
        if (zero) return false;
      }
    }
    return true;
  }

  std::vector<int> find_irreducible() const {
    int count = 1;
    for (int i = 0; i < k_; ++i) count *= p_;
    for (int low = 0; low < count; ++low) {
      std::vector<int> poly(k_ + 1);
      int n = low;
      for (int i = 0; i < k_; ++i) {
        poly[i] = n % p_;
        n /= p_;
      }
      poly[k_] = 1;
      if (is_irreducible(poly)) return poly;
    }
    throw ValidationError("GF: no irreducible polynomial found");
  }

  void build_tables() {
    add_.resize(static_cast<size_t>(q_) * q_);
    mul_.resize(static_cast<size_t>(q_) * q_);
    neg_.resize(q_);
    for (int a = 0; a < q_; ++a) {
      const auto ca = decode(a);
      for (int b = 0; b < q_; ++b) {
        const auto cb = decode(b);
        std::vector<int> sum(k_);
        for (int i = 0; i < k_; ++i) sum[i] = (ca[i] + cb[i]) % p_;
        add_[a * q_ + b] = encode(sum);
        std::vector<int> prod(2 * k_ - 1, 0);
        for (int i = 0; i < k_; ++i)
          for (int j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p_;
        if (k_ > 1) poly_mod(prod, reducer_, p_);
        prod.resize(k_);
        mul_[a * q_ + b] = encode(prod);
      }
      std::vector<int> nc(k_);
      for (int i = 0; i < k_; ++i) nc[i] = (p_ - ca[i]) % p_;
      neg_[a] = encode(nc);
    }
  }

  int q_, p_, k_;
  std::vector<int> reducer_;  // empty for prime fields
  std::vector<int> add_, mul_, neg_;
};

}  // namespace sfnet
