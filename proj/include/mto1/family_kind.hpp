#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "mto1/field_ctx.hpp"

namespace mto1 {

enum class FamilyKind {
  R2,
  R2Q,
  RQplus1,
  RhalfQ2Q,
  RQT1,
  R3,
  R3Q,
  RQplus2,
  R2Qplus1,
  R2Q2Q_div3,
  RQ2_2Q_div3,
  R4,
  R4Q,
  RQ2Q2_div2,
  RPS,
  RPS1,
};

inline constexpr std::array<FamilyKind, 16> kAllFamilies = {
    FamilyKind::R2,         FamilyKind::R2Q,         FamilyKind::RQplus1, FamilyKind::RhalfQ2Q,
    FamilyKind::RQT1,       FamilyKind::R3,          FamilyKind::R3Q,     FamilyKind::RQplus2,
    FamilyKind::R2Qplus1,   FamilyKind::R2Q2Q_div3,  FamilyKind::RQ2_2Q_div3, FamilyKind::R4,
    FamilyKind::R4Q,        FamilyKind::RQ2Q2_div2,  FamilyKind::RPS,     FamilyKind::RPS1,
};

// h = x^r with r determined by the kind, q, and for the parametrised kinds
// `param`: j with t = p^j for RQT1, s for RPS and RPS1.
struct FamilyTag {
  FamilyKind kind = FamilyKind::R2;
  unsigned param = 0;

  friend bool operator==(const FamilyTag&, const FamilyTag&) = default;
};

std::string_view family_name(FamilyKind kind);
std::optional<FamilyKind> parse_family(std::string_view name);
bool family_has_param(FamilyKind kind);
// Clause-label prefix, e.g. "r=q+1".
std::string_view family_label(FamilyKind kind);
std::string family_display(const FamilyTag& tag);

// The literal exponent r. Throws IndivisibleExponent when the defining
// fraction is not an integer for this q.
std::uint64_t family_exponent(const FamilyTag& tag, const FieldCtx& ctx);

// Reason the field itself is outside the family's hypotheses (parity, q = 3^n
// >= 9, ...), or nullopt. The q >= 7 restriction of the cubic families is not
// a field error; see below_cubic_range.
std::optional<std::string> family_field_violation(FamilyKind kind, const FieldCtx& ctx);
bool below_cubic_range(FamilyKind kind, const FieldCtx& ctx);

// Field sizes q <= 16 on which the family is tested.
bool family_admissible_q(FamilyKind kind, std::uint32_t p, unsigned n);

}  // namespace mto1
