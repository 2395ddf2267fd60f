#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mto1/classifiers.hpp"
#include "mto1/reduction.hpp"

namespace mto1 {

// The named quantities of one family theorem, all in F_{q^2}.
struct FamilyConstants {
  Fq2 alpha, beta, gamma, delta;
  bool has_gamma = false;
  bool has_delta = false;
};

struct Prediction {
  FamilyConstants constants;
  std::vector<Case> fired;
  // Set when the tuple or field is outside the theorem's hypotheses; `fired`
  // then lists what the clauses would say, for information only.
  std::optional<std::string> out_of_scope;
  // m values the theorem does not speak about even in scope.
  std::vector<std::uint32_t> silent_ms;
};

// The tuple-level hypothesis (a^q/b)^t A = -B of the q+t+1 and p^s+1
// families; true for the other kinds.
bool family_hypothesis_holds(const MapSpec& spec, const DerivedConstants& dc);

FamilyConstants family_constants(const MapSpec& spec, const DerivedConstants& dc);

// Evaluates every clause. Throws PreconditionViolated when h is not a family
// tag or the field violates the family's parity/characteristic hypotheses.
Prediction evaluate_family(const MapSpec& spec, const DerivedConstants& dc);

// 1 <= m <= q (MOutOfRange otherwise).
Verdict predict(const MapSpec& spec, std::uint32_t m);
Verdict predict(const Prediction& pred, std::uint32_t q, std::uint32_t m);

nlohmann::json to_json(const FamilyConstants& c);

// Every clause label the family theorem can emit, in clause order.
std::vector<std::string> family_clause_labels(FamilyKind kind);

}  // namespace mto1
