#include "mto1/classifiers.hpp"

#include <numeric>

#include "mto1/field_ctx.hpp"

namespace mto1 {

std::string_view status_name(Verdict::Status s) {
  switch (s) {
    case Verdict::Status::MTo1: return "MTo1";
    case Verdict::Status::NotMTo1ForAskedM: return "NotMTo1ForAskedM";
    case Verdict::Status::OutOfTheoremScope: return "OutOfTheoremScope";
  }
  return "?";
}

nlohmann::json to_json(const Verdict& v) {
  nlohmann::json j{{"status", status_name(v.status)}, {"m", v.m}};
  if (!v.label.empty()) j["clause"] = v.label;
  if (!v.reason.empty()) j["reason"] = v.reason;
  return j;
}

bool CaseSet::grants(std::uint32_t m) const {
  for (const auto& c : cases) {
    if (c.m == m) return true;
  }
  return false;
}

Verdict CaseSet::verdict(std::uint32_t m) const {
  Verdict v;
  v.m = m;
  for (const auto& c : cases) {
    if (c.m == m) {
      v.status = Verdict::Status::MTo1;
      v.label = c.label;
      return v;
    }
  }
  for (const auto& [om, why] : out_of_scope) {
    if (om == m) {
      v.status = Verdict::Status::OutOfTheoremScope;
      v.reason = why;
      return v;
    }
  }
  v.status = Verdict::Status::NotMTo1ForAskedM;
  return v;
}

CaseSet classify_deg_le2(const GaloisField& F, std::uint32_t a2, std::uint32_t a1, std::uint32_t /*a0*/) {
  const std::uint32_t q = F.size();
  const bool even = F.characteristic() == 2;
  CaseSet out;
  if (a2 == 0 && a1 != 0) out.cases.push_back({1, "deg2:(1)"});
  if (a2 != 0 && a1 == 0 && even) out.cases.push_back({1, "deg2:(2)"});
  if (a2 != 0 && a1 != 0 && even) out.cases.push_back({2, "deg2:(3)"});
  if (a2 != 0 && !even) out.cases.push_back({2, "deg2:(4)"});
  if (a2 == 0 && a1 == 0) out.cases.push_back({q, "deg2:(5)"});
  return out;
}

CaseSet classify_deg3(const GaloisField& F, std::uint32_t a3, std::uint32_t a2, std::uint32_t a1,
                      std::uint32_t /*a0*/) {
  if (a3 == 0) throw Error(ErrorCode::LeadingZero, "cubic classifier needs a nonzero x^3 coefficient");
  const std::uint32_t q = F.size();
  const std::uint32_t a = a3, b = a2, c = a1;
  const std::uint32_t ac = F.mul(a, c);
  const std::uint32_t b2 = F.mul(b, b);
  const std::uint32_t three_ac = F.scale(ac, 3);
  CaseSet out;
  if (q % 3 == 0 && b == 0) {
    const std::uint32_t s = F.pow_u(F.neg(ac), (q - 1) / 2);
    if (s != 1) out.cases.push_back({1, "deg3-1to1:(1)"});
    if (s == 1) out.cases.push_back({3, "deg3-3to1:(1)"});
  }
  if (q % 3 == 2 && b2 == three_ac) out.cases.push_back({1, "deg3-1to1:(2)"});
  if (q % 3 == 1 && b2 == three_ac) out.cases.push_back({3, "deg3-3to1:(2)"});
  if (q == 5) {
    const std::uint32_t lhs = F.add(b2, F.scale(ac, 2));
    const std::uint32_t two_a2 = F.scale(F.mul(a, a), 2);
    if (lhs == two_a2 || lhs == F.neg(two_a2)) out.cases.push_back({3, "deg3-3to1:(3)"});
  }
  if (q < 7) out.out_of_scope.emplace_back(2, "degree-3 2-to-1 non-existence is only known for q >= 7");
  for (std::uint32_t m = 4; m <= q; ++m) out.out_of_scope.emplace_back(m, "cubic classifier covers m <= 3");
  // m = 3 is undefined on a 2-element field.
  if (q < 3) {
    std::erase_if(out.cases, [&](const Case& cs) { return cs.m > q; });
  }
  return out;
}

std::optional<std::string> classify_deg4_2to1_even(const GaloisField& F, std::uint32_t a3, std::uint32_t a2,
                                                   std::uint32_t a1) {
  if (F.characteristic() != 2) throw Error(ErrorCode::WrongCharacteristic, "quartic 2-to-1 test needs q = 2^n");
  if (a3 == 0 && a1 == 0 && a2 != 0) return "deg4-2to1:(1)";
  if (a3 == 0 && a1 != 0) {
    const std::uint32_t t = F.div(F.pow_u(a2, 3), F.mul(a1, a1));
    if (abs_trace(F, t) != abs_trace(F, 1)) return "deg4-2to1:(2)";
  }
  if (a3 != 0 && F.mul(a2, a2) == F.mul(a1, a3) && F.degree() % 2 == 1) return "deg4-2to1:(3)";
  return std::nullopt;
}

bool quartic_1to1_necessary_a3(const GaloisField& F, const std::vector<std::uint32_t>& coeffs) {
  if (F.characteristic() != 2) throw Error(ErrorCode::WrongCharacteristic, "quartic filter needs q = 2^n");
  if (F.degree() < 3) throw Error(ErrorCode::PreconditionViolated, "quartic filter needs n >= 3");
  if (coeffs.size() != 5 || coeffs[4] != 1) throw Error(ErrorCode::PreconditionViolated, "expected a monic quartic");
  return coeffs[3] == 0;
}

LinearizedResult classify_linearized_binomial(const GaloisField& F, unsigned e, std::uint32_t b, std::uint32_t c,
                                              unsigned s, unsigned t) {
  if (e == 0 || F.degree() % e != 0) {
    throw Error(ErrorCode::PreconditionViolated, "base field degree must divide the field degree");
  }
  if (t > s) throw Error(ErrorCode::PreconditionViolated, "need t <= s");
  if (b == 0) throw Error(ErrorCode::ZeroLeading, "linearized binomial needs b != 0");
  const unsigned n = F.degree() / e;
  const unsigned d = std::gcd(s - t, n);  // gcd(0, n) = n
  const std::uint64_t qd = ipow(F.characteristic(), e * d);
  const std::uint64_t norm_exp = (static_cast<std::uint64_t>(F.size()) - 1) / (qd - 1);
  const std::uint32_t norm = F.pow_u(F.div(c, b), norm_exp);
  LinearizedResult r;
  r.m = norm == 1 ? qd : 1;
  r.kernel_size = r.m;
  return r;
}

QuadraticRoots solve_quadratic_char2(const GaloisField& F, std::uint32_t a, std::uint32_t b, std::uint32_t c) {
  if (F.characteristic() != 2) throw Error(ErrorCode::WrongCharacteristic, "char-2 quadratic solver");
  if (a == 0) throw Error(ErrorCode::LeadingZero, "quadratic needs a != 0");
  QuadraticRoots out;
  for (std::uint32_t x = 0; x < F.size(); ++x) {
    if (F.add(F.add(F.mul(a, F.mul(x, x)), F.mul(b, x)), c) == 0) out.roots.push_back(x);
  }
  out.count = static_cast<unsigned>(out.roots.size());
  return out;
}

unsigned quadratic_root_count_char2(const GaloisField& F, std::uint32_t a, std::uint32_t b, std::uint32_t c) {
  if (F.characteristic() != 2) throw Error(ErrorCode::WrongCharacteristic, "char-2 quadratic root count");
  if (a == 0) throw Error(ErrorCode::LeadingZero, "quadratic needs a != 0");
  if (b == 0) return 1;
  return abs_trace(F, F.div(F.mul(a, c), F.mul(b, b))) == 0 ? 2 : 0;
}

}  // namespace mto1
