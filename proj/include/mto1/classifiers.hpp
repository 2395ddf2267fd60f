#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mto1/galois_field.hpp"

namespace mto1 {

struct Verdict {
  enum class Status { MTo1, NotMTo1ForAskedM, OutOfTheoremScope };
  Status status = Status::NotMTo1ForAskedM;
  std::uint32_t m = 0;
  std::string label;   // firing clause, e.g. "deg2:(3)"
  std::string reason;  // for OutOfTheoremScope

  bool is_m_to_1() const { return status == Status::MTo1; }
};

std::string_view status_name(Verdict::Status s);
nlohmann::json to_json(const Verdict& v);

struct Case {
  std::uint32_t m = 0;
  std::string label;
  friend bool operator==(const Case&, const Case&) = default;
};

// The clauses that fire, plus the m values on which the theorem is silent.
struct CaseSet {
  std::vector<Case> cases;
  std::vector<std::pair<std::uint32_t, std::string>> out_of_scope;

  bool grants(std::uint32_t m) const;
  Verdict verdict(std::uint32_t m) const;
};

// a2 x^2 + a1 x + a0 over F; all m in 1..#F.
CaseSet classify_deg_le2(const GaloisField& F, std::uint32_t a2, std::uint32_t a1, std::uint32_t a0);

// a3 x^3 + a2 x^2 + a1 x + a0 with a3 != 0 (LeadingZero otherwise); covers
// m = 1, 2, 3. For #F < 7 the m = 2 question is reported out of scope.
CaseSet classify_deg3(const GaloisField& F, std::uint32_t a3, std::uint32_t a2, std::uint32_t a1, std::uint32_t a0);

// x^4 + a3 x^3 + a2 x^2 + a1 x over F_{2^n}: label of the firing clause when
// 2-to-1.
std::optional<std::string> classify_deg4_2to1_even(const GaloisField& F, std::uint32_t a3, std::uint32_t a2,
                                                   std::uint32_t a1);

// Necessary condition for a monic quartic over F_{2^n}, n >= 3, to permute:
// a3 = 0. `coeffs` is low-degree-first with coeffs[4] = 1.
bool quartic_1to1_necessary_a3(const GaloisField& F, const std::vector<std::uint32_t>& coeffs);

struct LinearizedResult {
  std::uint64_t m = 1;
  std::uint64_t kernel_size = 1;
  std::vector<std::uint32_t> exceptional;  // always empty
};

// L(x) = b x^{Q^s} - c x^{Q^t} over F = F_{Q^n} with Q = p^e.
LinearizedResult classify_linearized_binomial(const GaloisField& F, unsigned e, std::uint32_t b, std::uint32_t c,
                                              unsigned s, unsigned t);

struct QuadraticRoots {
  unsigned count = 0;
  std::vector<std::uint32_t> roots;
};

// Roots of a x^2 + b x + c over F_{2^n} by scanning.
QuadraticRoots solve_quadratic_char2(const GaloisField& F, std::uint32_t a, std::uint32_t b, std::uint32_t c);
// Root count predicted from b and the absolute trace of a c / b^2.
unsigned quadratic_root_count_char2(const GaloisField& F, std::uint32_t a, std::uint32_t b, std::uint32_t c);

}  // namespace mto1
