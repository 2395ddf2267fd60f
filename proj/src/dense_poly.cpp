#include "mto1/dense_poly.hpp"

#include <algorithm>

namespace mto1 {

DensePoly::DensePoly(const GaloisField* f, std::vector<std::uint32_t> coeffs) : field(f), c(std::move(coeffs)) {
  trim();
}

DensePoly DensePoly::monomial(const GaloisField* f, std::size_t deg, std::uint32_t coeff) {
  std::vector<std::uint32_t> c(deg + 1, 0);
  c[deg] = coeff;
  return {f, std::move(c)};
}

void DensePoly::trim() {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

std::uint32_t DensePoly::eval(std::uint32_t x) const {
  std::uint32_t acc = 0;
  for (std::size_t i = c.size(); i-- > 0;) acc = field->add(field->mul(acc, x), c[i]);
  return acc;
}

std::vector<std::uint32_t> DensePoly::table() const {
  std::vector<std::uint32_t> out(field->size());
  for (std::uint32_t x = 0; x < field->size(); ++x) out[x] = eval(x);
  return out;
}

DensePoly DensePoly::operator+(const DensePoly& o) const {
  std::vector<std::uint32_t> r(std::max(c.size(), o.c.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = field->add(coeff(i), o.coeff(i));
  return {field, std::move(r)};
}

DensePoly DensePoly::operator-(const DensePoly& o) const {
  std::vector<std::uint32_t> r(std::max(c.size(), o.c.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = field->sub(coeff(i), o.coeff(i));
  return {field, std::move(r)};
}

DensePoly DensePoly::operator*(const DensePoly& o) const {
  if (c.empty() || o.c.empty()) return {field, {}};
  std::vector<std::uint32_t> r(c.size() + o.c.size() - 1, 0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    for (std::size_t j = 0; j < o.c.size(); ++j) r[i + j] = field->add(r[i + j], field->mul(c[i], o.c[j]));
  }
  return {field, std::move(r)};
}

DensePoly DensePoly::scaled(std::uint32_t s) const {
  std::vector<std::uint32_t> r(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) r[i] = field->mul(c[i], s);
  return {field, std::move(r)};
}

DensePoly DensePoly::shifted(std::uint32_t shift) const {
  return compose(DensePoly(field, {shift, 1}));
}

DensePoly DensePoly::compose(const DensePoly& inner) const {
  DensePoly acc(field, {});
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * inner + DensePoly(field, {c[i]});
  return acc;
}

DensePoly interpolate(const GaloisField& field, std::span<const std::uint32_t> values) {
  const std::uint32_t n = field.size();
  const std::uint32_t order = field.group_order();
  // g = sum_a g(a) (1 - (x - a)^{n-1}); c_0 = g(0), c_j = -sum_a g(a) a^{n-1-j}.
  std::vector<std::uint32_t> c(n, 0);
  c[0] = values[0];
  for (std::uint32_t j = 1; j < n; ++j) {
    std::uint32_t acc = 0;
    if (j == n - 1) acc = values[0];  // 0^0
    for (std::uint32_t a = 1; a < n; ++a) {
      if (values[a] == 0) continue;
      const std::uint64_t e = (static_cast<std::uint64_t>(field.log(a)) * (n - 1 - j)) % order;
      acc = field.add(acc, field.mul(values[a], field.exp(e)));
    }
    c[j] = field.neg(acc);
  }
  return {&field, std::move(c)};
}

nlohmann::json coeffs_json(const DensePoly& p) {
  nlohmann::json out = nlohmann::json::array();
  for (auto x : p.c) out.push_back(p.field->coeffs(x));
  return out;
}

}  // namespace mto1
