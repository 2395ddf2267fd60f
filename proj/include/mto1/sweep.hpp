#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mto1/family_kind.hpp"
#include "mto1/field_ctx.hpp"

namespace mto1 {

enum class BudgetMode { Auto, Exhaustive, Sampled };

struct SweepOptions {
  BudgetMode mode = BudgetMode::Auto;
  std::uint64_t samples = 10000;
  std::uint64_t seed = 1;
  // Auto mode enumerates exhaustively up to this many tuples.
  std::uint64_t exhaustive_limit = 1000000;
  // Restrict a parametrised family to one parameter value.
  std::optional<unsigned> param;
  bool check_inverses = true;
  bool collect_rows = false;
  std::size_t max_mismatches_kept = 50;
  // 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
};

struct Mismatch {
  std::uint64_t tuple = 0;
  nlohmann::json spec;
  std::uint32_t m = 0;
  std::string what;
};

struct SweepReport {
  FamilyKind kind = FamilyKind::R2;
  std::optional<unsigned> param;
  CtxPtr ctx;
  bool exhaustive = false;
  std::uint64_t seed = 0;
  std::uint64_t tuples_checked = 0;
  std::uint64_t in_scope = 0;
  std::optional<std::string> scope_note;  // set when the whole sweep is out of scope
  std::map<std::string, std::uint64_t> clause_tally;
  std::map<std::uint32_t, std::uint64_t> oracle_tally;  // m -> tuples whose f is m-to-1
  std::uint64_t beyond_q = 0;                           // tuples with some valid m > q
  std::uint64_t multiple_fired = 0;
  // Out-of-scope (tuple, m) pairs where the clauses, applied anyway,
  // disagree with the oracle. Informational only.
  std::uint64_t out_of_scope_disagreements = 0;
  std::uint64_t mismatch_count = 0;
  std::vector<Mismatch> mismatches;
  std::uint64_t inverses_checked = 0;
  std::uint64_t inverse_failures = 0;
  std::map<std::string, std::uint64_t> inverse_routes;
  std::uint64_t involutions_checked = 0;
  std::uint64_t involution_failures = 0;
  std::map<std::string, std::uint64_t> involution_routes;
  std::vector<std::string> rows;  // CSV lines without header

  bool ok() const { return mismatch_count == 0 && inverse_failures == 0 && involution_failures == 0; }
  // Clause labels that never fired in scope.
  std::vector<std::string> uncovered_clauses() const;
};

// (q^2 - 1)(q + 1) q^2 (q^4 - q^2): choices of a, k, c and (u, v) with av != bu.
std::uint64_t tuple_count(std::uint32_t q);
// Parameter values swept for the family: j in [0, 2n) for q+t+1, s in
// [0, 2n] for p^s and p^s+1, a single 0 otherwise.
std::vector<unsigned> family_params(FamilyKind kind, const FieldCtx& ctx);

// Compares, per tuple and per 1 <= m <= q, the oracle on f, the reduction
// through g and the theorem's verdict. Mismatches are report content.
// Throws PreconditionViolated when the field violates the family's
// hypotheses.
SweepReport verify_family(const CtxPtr& ctx, FamilyKind kind, const SweepOptions& opts);

nlohmann::json to_json(const SweepReport& r);
std::string csv_header();
std::string to_csv(const SweepReport& r);

}  // namespace mto1
