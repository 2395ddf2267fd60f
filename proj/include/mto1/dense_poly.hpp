#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <json.hpp>

#include "mto1/galois_field.hpp"

namespace mto1 {

// Dense polynomial over a single field, low-degree-first, raw coefficients.
struct DensePoly {
  const GaloisField* field = nullptr;
  std::vector<std::uint32_t> c;

  DensePoly() = default;
  DensePoly(const GaloisField* f, std::vector<std::uint32_t> coeffs);

  static DensePoly monomial(const GaloisField* f, std::size_t deg, std::uint32_t coeff = 1);

  void trim();
  bool is_zero() const { return c.empty(); }
  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c.size()) - 1; }
  std::uint32_t coeff(std::size_t i) const { return i < c.size() ? c[i] : 0; }
  std::uint32_t lead() const { return c.empty() ? 0 : c.back(); }

  std::uint32_t eval(std::uint32_t x) const;
  std::vector<std::uint32_t> table() const;

  DensePoly operator+(const DensePoly& o) const;
  DensePoly operator-(const DensePoly& o) const;
  DensePoly operator*(const DensePoly& o) const;
  DensePoly scaled(std::uint32_t s) const;
  // p(x + shift)
  DensePoly shifted(std::uint32_t shift) const;
  // p(q(x))
  DensePoly compose(const DensePoly& inner) const;

  friend bool operator==(const DensePoly& a, const DensePoly& b) { return a.c == b.c; }
};

// The unique polynomial of degree < #F agreeing with values[x] at every raw
// element x of the field.
DensePoly interpolate(const GaloisField& field, std::span<const std::uint32_t> values);

nlohmann::json coeffs_json(const DensePoly& p);

}  // namespace mto1
