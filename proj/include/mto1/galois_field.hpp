#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "mto1/error.hpp"

namespace mto1 {

inline constexpr std::uint64_t kDefaultSizeCap = std::uint64_t{1} << 20;

bool is_prime(std::uint64_t n);
std::uint64_t ipow(std::uint64_t base, unsigned exp);
std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);

// Dense polynomials over F_p, low-degree-first. Only what irreducibility
// testing and table construction need.
namespace fp_poly {
using Poly = std::vector<std::uint32_t>;
void trim(Poly& f);
Poly mul_mod(const Poly& f, const Poly& g, const Poly& modulus, std::uint32_t p);
Poly pow_mod(const Poly& base, std::uint64_t e, const Poly& modulus, std::uint32_t p);
Poly gcd(Poly f, Poly g, std::uint32_t p);
bool is_irreducible(const Poly& f, std::uint32_t p);
// Lexicographically smallest monic irreducible of the given degree, with
// coefficient vectors compared low-degree-first.
Poly smallest_irreducible(std::uint32_t p, unsigned degree);
}  // namespace fp_poly

// F_{p^d} in the power basis of a monic irreducible modulus. Elements are
// indices idx = sum c_i p^i over the coefficient vector (c_0 .. c_{d-1});
// multiplication goes through exp/log tables.
class GaloisField {
 public:
  static std::shared_ptr<const GaloisField> build(std::uint32_t p, unsigned degree,
                                                  std::uint64_t size_cap = kDefaultSizeCap);
  // Uses the given modulus; the generator is still chosen as the smallest
  // primitive element unless `generator_coeffs` is non-empty.
  static std::shared_ptr<const GaloisField> with_modulus(
      std::uint32_t p, fp_poly::Poly modulus, std::span<const std::uint32_t> generator_coeffs = {},
      std::uint64_t size_cap = kDefaultSizeCap);

  std::uint32_t characteristic() const noexcept { return p_; }
  unsigned degree() const noexcept { return degree_; }
  std::uint32_t size() const noexcept { return size_; }
  // Order of the multiplicative group.
  std::uint32_t group_order() const noexcept { return size_ - 1; }
  const fp_poly::Poly& modulus() const noexcept { return modulus_; }
  std::uint32_t generator() const noexcept { return generator_; }

  std::uint32_t zero() const noexcept { return 0; }
  std::uint32_t one() const noexcept { return 1; }

  std::uint32_t add(std::uint32_t x, std::uint32_t y) const noexcept {
    if (p_ == 2) return x ^ y;
    if (!add_table_.empty()) return add_table_[static_cast<std::size_t>(x) * size_ + y];
    return add_digits(x, y);
  }
  std::uint32_t neg(std::uint32_t x) const noexcept { return neg_table_[x]; }
  std::uint32_t sub(std::uint32_t x, std::uint32_t y) const noexcept { return add(x, neg_table_[y]); }
  std::uint32_t mul(std::uint32_t x, std::uint32_t y) const noexcept {
    if (x == 0 || y == 0) return 0;
    return exp_[log_[x] + log_[y]];
  }
  std::uint32_t inv(std::uint32_t x) const;
  std::uint32_t div(std::uint32_t x, std::uint32_t y) const;
  // 0^0 = 1; negative exponents require x != 0.
  std::uint32_t pow(std::uint32_t x, std::int64_t e) const;
  std::uint32_t pow_u(std::uint32_t x, std::uint64_t e) const noexcept;
  std::uint32_t log(std::uint32_t x) const;
  std::uint32_t exp(std::uint64_t e) const noexcept { return exp_[e % group_order()]; }
  // x^(p^times)
  std::uint32_t frobenius(std::uint32_t x, std::uint64_t times = 1) const noexcept;
  std::uint32_t from_int(std::int64_t n) const noexcept;
  // Sum n * x.
  std::uint32_t scale(std::uint32_t x, std::int64_t n) const noexcept { return mul(from_int(n), x); }

  std::vector<std::uint32_t> coeffs(std::uint32_t x) const;
  std::uint32_t from_coeffs(std::span<const std::uint32_t> coeffs) const;
  // Integer whose base-p digits are the coefficient vector read c_0 first;
  // ordering by this key is lexicographic low-degree-first ordering.
  std::uint32_t lex_key(std::uint32_t x) const noexcept;
  std::uint32_t from_lex_key(std::uint32_t key) const noexcept;
  // Multiplicative order of a nonzero element.
  std::uint32_t element_order(std::uint32_t x) const;

 private:
  GaloisField() = default;
  void build_tables(std::span<const std::uint32_t> generator_coeffs);
  std::uint32_t add_digits(std::uint32_t x, std::uint32_t y) const noexcept;

  std::uint32_t p_ = 2;
  unsigned degree_ = 1;
  std::uint32_t size_ = 2;
  fp_poly::Poly modulus_;
  std::uint32_t generator_ = 1;
  std::vector<std::uint32_t> exp_;  // length 2 * group_order
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> neg_table_;
  std::vector<std::uint32_t> add_table_;  // only for small odd-characteristic fields
};

using FieldPtr = std::shared_ptr<const GaloisField>;

}  // namespace mto1
