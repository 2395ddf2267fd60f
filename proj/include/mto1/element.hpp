#pragma once

#include <cstdint>
#include <vector>

#include "mto1/galois_field.hpp"

namespace mto1 {

struct ExtTag {};
struct BaseTag {};

// Value type bound to a field. The tag keeps F_{q^2} and F_q values apart at
// compile time; the field pointer must outlive the element.
template <class Tag>
class Element {
 public:
  Element() = default;
  Element(const GaloisField* field, std::uint32_t idx) : field_(field), idx_(idx) {}

  static Element zero(const GaloisField* f) { return {f, 0}; }
  static Element one(const GaloisField* f) { return {f, 1}; }
  static Element from_int(const GaloisField* f, std::int64_t v) { return {f, f->from_int(v)}; }

  const GaloisField* field() const noexcept { return field_; }
  std::uint32_t index() const noexcept { return idx_; }
  bool is_zero() const noexcept { return idx_ == 0; }
  bool is_one() const noexcept { return idx_ == 1; }

  Element operator+(Element o) const { return {field_, field_->add(idx_, o.idx_)}; }
  Element operator-(Element o) const { return {field_, field_->sub(idx_, o.idx_)}; }
  Element operator*(Element o) const { return {field_, field_->mul(idx_, o.idx_)}; }
  Element operator/(Element o) const { return {field_, field_->div(idx_, o.idx_)}; }
  Element operator-() const { return {field_, field_->neg(idx_)}; }
  Element& operator+=(Element o) { return *this = *this + o; }
  Element& operator-=(Element o) { return *this = *this - o; }
  Element& operator*=(Element o) { return *this = *this * o; }

  friend Element operator*(std::int64_t n, Element x) { return {x.field_, x.field_->scale(x.idx_, n)}; }

  Element pow(std::int64_t e) const { return {field_, field_->pow(idx_, e)}; }
  Element pow_u(std::uint64_t e) const { return {field_, field_->pow_u(idx_, e)}; }
  Element inv() const { return {field_, field_->inv(idx_)}; }
  Element frob(std::uint64_t times = 1) const { return {field_, field_->frobenius(idx_, times)}; }

  std::vector<std::uint32_t> coeffs() const { return field_->coeffs(idx_); }

  friend bool operator==(Element x, Element y) { return x.idx_ == y.idx_; }
  friend bool operator!=(Element x, Element y) { return x.idx_ != y.idx_; }
  friend bool operator<(Element x, Element y) { return x.idx_ < y.idx_; }

 private:
  const GaloisField* field_ = nullptr;
  std::uint32_t idx_ = 0;
};

using Fq2 = Element<ExtTag>;
using Fq = Element<BaseTag>;

}  // namespace mto1
