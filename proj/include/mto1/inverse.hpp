#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mto1/dense_poly.hpp"
#include "mto1/reduction.hpp"

namespace mto1 {

// gbar(x) = scale * g(x + shift) + offset, monic with gbar(0) = 0 and, when
// the characteristic does not divide the degree, no x^{d-1} term. When it
// does, the shift clears x^{d-3} through x^{d-2} where that is possible.
struct Normalized {
  std::uint32_t scale = 1;
  std::uint32_t shift = 0;
  std::uint32_t offset = 0;
  DensePoly poly;
};

// Throws DegreeTooHigh for degree > 5 and PreconditionViolated for constants.
Normalized normalize(const DensePoly& g);
// g^{-1}(y) = gbar^{-1}(scale * y + offset) + shift, tabulated.
std::vector<std::uint32_t> denormalize_inverse(const Normalized& n, const std::vector<std::uint32_t>& gbar_inverse);

struct RowInverse {
  int row = 0;
  std::string label;
  std::vector<std::uint32_t> table;  // inverse on the field, by raw index
};

// Inverse of a normalized permutation polynomial of degree <= 5 from the
// table of known forms; composition-verified. Throws NoMatchingRow.
RowInverse invert_normalized(const DensePoly& gbar);

// All instances of the table's rows over F: every parameter value meeting
// the row's side condition. Used for exhaustive row checks.
struct RowInstance {
  int row = 0;
  std::string label;
  DensePoly g;
};
std::vector<RowInstance> table_row_instances(const GaloisField& F);
int table_row_count();

// L(x) = x^{Q^r} - a x over F = F_{Q^n}, Q = p^e, 1 <= r <= n-1. Throws
// NotAPermutation when the norm of a down to F_{Q^gcd(n,r)} is 1.
std::vector<std::uint32_t> invert_linearized_binomial(const GaloisField& F, unsigned e, std::uint32_t a, unsigned r);

struct GInverse {
  std::vector<std::uint32_t> table;
  std::string route;  // "table:<row>[;sigma=x^j]", "linearized[;sigma=x^j]" or "lookup"
};

// Inverse of a permutation of F given as a table, preferring closed forms.
GInverse invert_permutation_of(const GaloisField& F, const std::vector<std::uint32_t>& g);

struct InverseResult {
  std::vector<std::uint32_t> table;  // f^{-1} on F_{q^2}
  std::string g_route;
  bool verified = false;
};

// Throws NotInjective if f is not a permutation, VerificationFailed if the
// assembled inverse does not undo f.
InverseResult invert_f(const MapSpec& spec);
InverseResult invert_f(const MapSpec& spec, const DerivedConstants& dc, const std::vector<std::uint32_t>& f,
                       const std::vector<std::uint32_t>& g, const std::vector<std::uint32_t>* htab = nullptr);

// Closed form for h = x^2 in the two branches alpha = 0 != beta and
// (alpha != 0 = beta, q even); nullopt outside them.
std::optional<std::vector<std::uint32_t>> invert_f_square(const MapSpec& spec);

// alpha != 0 with g(x + alpha) = g(x) for all x. Throws NotTwoToOne or
// FibersNotTranslations.
std::uint32_t involution_of_g(const GaloisField& F, const std::vector<std::uint32_t>& g);

struct InvolutionResult {
  std::vector<std::uint32_t> table;
  std::optional<std::uint32_t> alpha;  // F_q index when I_g is a translation
  std::string route;  // "translation" or "pairing"
  bool verified = false;
};

// I_f with I_f(I_f(x)) = x, I_f(x) != x and f(I_f(x)) = f(x). With
// allow_pairing = false, non-translation g raises NoTranslationInvolution.
InvolutionResult involution_of_f(const MapSpec& spec, bool allow_pairing = true);
InvolutionResult involution_of_f(const MapSpec& spec, const DerivedConstants& dc, const std::vector<std::uint32_t>& f,
                                 const std::vector<std::uint32_t>& g, bool allow_pairing,
                                 const std::vector<std::uint32_t>* htab = nullptr);
// The general form a A^{-1} f(x) + a A^{-1} H(I_g(lambda(x))) for a given
// I_g table; used to cross-check the translation formula.
std::vector<std::uint32_t> involution_general(const MapSpec& spec, const DerivedConstants& dc,
                                              const std::vector<std::uint32_t>& f,
                                              const std::vector<std::uint32_t>& ig,
                                              const std::vector<std::uint32_t>& htab);

}  // namespace mto1
