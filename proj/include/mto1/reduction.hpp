#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include <json.hpp>

#include "mto1/dense_poly.hpp"
#include "mto1/family_kind.hpp"
#include "mto1/field_ctx.hpp"
#include "mto1/oracle.hpp"

namespace mto1 {

// f(x) = h(a x^q + b x + c) + u x^q + v x on F_{q^2}. h is either a dense
// polynomial over F_{q^2} or a monomial x^r named by a family tag.
struct MapSpec {
  CtxPtr ctx;
  Fq2 a, b, c, u, v;
  std::variant<DensePoly, FamilyTag> h;

  bool is_family() const { return std::holds_alternative<FamilyTag>(h); }
  const FamilyTag& family() const { return std::get<FamilyTag>(h); }
};

struct DerivedConstants {
  Fq2 A;  // b u - a v
  Fq2 B;  // a u^q - b v^q
  unsigned k = 0;
  Fq gamma0;  // u^{q+1} - v^{q+1}
  Fq2 xik;      // xi^k
  Fq2 xik_inv;  // xi^{-k}
};

// Throws NormMismatch or DegenerateAB.
void validate(const MapSpec& spec);
// Validates, then checks the identities relating a, b, A, B, k (InternalError
// on failure, which would mean an arithmetic bug).
DerivedConstants derive(const MapSpec& spec);

// h evaluated on every element of F_{q^2}; family exponents are used
// literally, so 0^r = 0 for r > 0.
std::vector<std::uint32_t> h_table(const MapSpec& spec);
std::vector<std::uint32_t> build_f(const MapSpec& spec, const std::vector<std::uint32_t>* htab = nullptr);
// g on F_q; values are F_q indices. Throws ValueNotInSubfield if a value
// escapes F_q.
std::vector<std::uint32_t> build_g(const MapSpec& spec, const DerivedConstants& dc,
                                   const std::vector<std::uint32_t>* htab = nullptr);
std::vector<std::uint32_t> build_g(const MapSpec& spec);
// lambda(x) = xi^k (a x^q + b x) as F_q indices.
std::vector<std::uint32_t> lambda_table(const MapSpec& spec, const DerivedConstants& dc);
// Dense form of g over F_q, degree < q.
DensePoly g_poly(const MapSpec& spec);

// xi^k (A f(x)^q + B f(x)) == g(xi^k (a x^q + b x)) for every x, with both
// sides in F_q. The second form takes the constants as given, so a corrupted
// k is a negative control.
bool check_commute(const MapSpec& spec);
bool check_commute(const MapSpec& spec, const DerivedConstants& dc);

struct ReductionVerdict {
  bool m_to_1 = false;   // m | q and g is m-to-1
  bool divides = false;  // m | q
  bool g_m_to_1 = false;
  // q * #E_g(m) when g is m-to-1: the number of exceptional points of f
  // forced by the lambda fibres, which must equal q^2 mod m.
  std::uint64_t lifted_exceptional = 0;
};

// 1 <= m <= q, else MOutOfRange.
ReductionVerdict reduce_classify(const MapSpec& spec, std::uint32_t m);
ReductionVerdict reduce_classify(const MapSpec& spec, const DerivedConstants& dc, std::uint32_t m,
                                 std::span<const std::uint32_t> g_values);

// JSON: {field, a, b, c, u, v, h: {type: "poly", coeffs} | {type: "family", kind, s?, t?}}.
MapSpec spec_from_json(const nlohmann::json& j, std::uint64_t size_cap = kDefaultSizeCap);
nlohmann::json spec_to_json(const MapSpec& spec);
Fq2 element_from_json(const FieldCtx& ctx, const nlohmann::json& j);

}  // namespace mto1
