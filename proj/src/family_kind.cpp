#include "mto1/family_kind.hpp"

namespace mto1 {

namespace {

struct KindInfo {
  FamilyKind kind;
  std::string_view name;
  std::string_view label;
};

constexpr std::array<KindInfo, 16> kInfo = {{
    {FamilyKind::R2, "R2", "r=2"},
    {FamilyKind::R2Q, "R2Q", "r=2q"},
    {FamilyKind::RQplus1, "RQplus1", "r=q+1"},
    {FamilyKind::RhalfQ2Q, "RhalfQ2Q", "r=(q^2+q)/2"},
    {FamilyKind::RQT1, "RQT1", "r=q+t+1"},
    {FamilyKind::R3, "R3", "r=3"},
    {FamilyKind::R3Q, "R3Q", "r=3q"},
    {FamilyKind::RQplus2, "RQplus2", "r=q+2"},
    {FamilyKind::R2Qplus1, "R2Qplus1", "r=2q+1"},
    {FamilyKind::R2Q2Q_div3, "R2Q2Q_div3", "r=(2q^2+q)/3"},
    {FamilyKind::RQ2_2Q_div3, "RQ2_2Q_div3", "r=(q^2+2q)/3"},
    {FamilyKind::R4, "R4", "r=4"},
    {FamilyKind::R4Q, "R4Q", "r=4q"},
    {FamilyKind::RQ2Q2_div2, "RQ2Q2_div2", "r=(q^2+q+2)/2"},
    {FamilyKind::RPS, "RPS", "r=p^s"},
    {FamilyKind::RPS1, "RPS1", "r=p^s+1"},
}};

const KindInfo& info(FamilyKind kind) {
  for (const auto& i : kInfo) {
    if (i.kind == kind) return i;
  }
  throw Error(ErrorCode::InternalError, "unknown family kind");
}

bool is_cubic(FamilyKind kind) {
  return kind == FamilyKind::R3 || kind == FamilyKind::R3Q || kind == FamilyKind::RQplus2 ||
         kind == FamilyKind::R2Qplus1;
}

}  // namespace

std::string_view family_name(FamilyKind kind) { return info(kind).name; }
std::string_view family_label(FamilyKind kind) { return info(kind).label; }

std::optional<FamilyKind> parse_family(std::string_view name) {
  for (const auto& i : kInfo) {
    if (i.name == name) return i.kind;
  }
  return std::nullopt;
}

bool family_has_param(FamilyKind kind) {
  return kind == FamilyKind::RQT1 || kind == FamilyKind::RPS || kind == FamilyKind::RPS1;
}

std::string family_display(const FamilyTag& tag) {
  std::string out(family_name(tag.kind));
  if (tag.kind == FamilyKind::RQT1) out += "(j=" + std::to_string(tag.param) + ")";
  if (tag.kind == FamilyKind::RPS || tag.kind == FamilyKind::RPS1) out += "(s=" + std::to_string(tag.param) + ")";
  return out;
}

std::uint64_t family_exponent(const FamilyTag& tag, const FieldCtx& ctx) {
  const std::uint64_t q = ctx.q(), p = ctx.p();
  auto exact = [&](std::uint64_t num, std::uint64_t den) {
    if (num % den != 0) {
      throw Error(ErrorCode::IndivisibleExponent, std::string(family_name(tag.kind)) + ": " + std::to_string(num) +
                                                      " is not divisible by " + std::to_string(den));
    }
    return num / den;
  };
  auto p_pow = [&](unsigned e) {
    if (e > 40) throw Error(ErrorCode::PreconditionViolated, "exponent parameter too large");
    return ipow(p, e);
  };
  switch (tag.kind) {
    case FamilyKind::R2: return 2;
    case FamilyKind::R2Q: return 2 * q;
    case FamilyKind::RQplus1: return q + 1;
    case FamilyKind::RhalfQ2Q: return exact(q * q + q, 2);
    case FamilyKind::RQT1: return q + p_pow(tag.param) + 1;
    case FamilyKind::R3: return 3;
    case FamilyKind::R3Q: return 3 * q;
    case FamilyKind::RQplus2: return q + 2;
    case FamilyKind::R2Qplus1: return 2 * q + 1;
    case FamilyKind::R2Q2Q_div3: return exact(2 * q * q + q, 3);
    case FamilyKind::RQ2_2Q_div3: return exact(q * q + 2 * q, 3);
    case FamilyKind::R4: return 4;
    case FamilyKind::R4Q: return 4 * q;
    case FamilyKind::RQ2Q2_div2: return exact(q * q + q + 2, 2);
    case FamilyKind::RPS: return p_pow(tag.param);
    case FamilyKind::RPS1: return p_pow(tag.param) + 1;
  }
  throw Error(ErrorCode::InternalError, "unknown family kind");
}

std::optional<std::string> family_field_violation(FamilyKind kind, const FieldCtx& ctx) {
  const auto q = ctx.q();
  switch (kind) {
    case FamilyKind::RhalfQ2Q:
      if (ctx.p() != 2) return "needs even q";
      break;
    case FamilyKind::R2Q2Q_div3:
    case FamilyKind::RQ2_2Q_div3:
      if (ctx.p() != 3 || q < 9) return "needs q = 3^n >= 9";
      break;
    case FamilyKind::R4:
    case FamilyKind::R4Q:
    case FamilyKind::RQ2Q2_div2:
      if (ctx.p() != 2 || q < 4) return "needs q = 2^n >= 4";
      break;
    default:
      break;
  }
  return std::nullopt;
}

bool below_cubic_range(FamilyKind kind, const FieldCtx& ctx) { return is_cubic(kind) && ctx.q() < 7; }

bool family_admissible_q(FamilyKind kind, std::uint32_t p, unsigned n) {
  const std::uint64_t q = ipow(p, n);
  if (q > 16) return false;
  switch (kind) {
    case FamilyKind::RhalfQ2Q: return p == 2;
    case FamilyKind::R2Q2Q_div3:
    case FamilyKind::RQ2_2Q_div3: return p == 3 && q >= 9;
    case FamilyKind::R4:
    case FamilyKind::R4Q:
    case FamilyKind::RQ2Q2_div2: return p == 2 && q >= 4;
    default:
      if (is_cubic(kind)) return q >= 7;
      return true;
  }
}

}  // namespace mto1
