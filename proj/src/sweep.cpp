#include "mto1/sweep.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <thread>

#include "mto1/families.hpp"
#include "mto1/inverse.hpp"
#include "mto1/oracle.hpp"
#include "mto1/reduction.hpp"

namespace mto1 {

namespace {

struct Tuple {
  unsigned param = 0;
  std::uint32_t a = 0, b = 0, c = 0, u = 0, v = 0;
};

std::uint32_t make_b(const FieldCtx& ctx, std::uint32_t a, unsigned k) {
  const GaloisField& F = ctx.ext();
  return F.mul(F.exp(static_cast<std::uint64_t>(ctx.q() - 1) * k), ctx.conj_raw(a));
}

// v ranges over F_{q^2} minus the single value bu/a that makes av = bu.
std::uint32_t skip_degenerate(const GaloisField& F, std::uint32_t a, std::uint32_t b, std::uint32_t u,
                              std::uint32_t vj) {
  const std::uint32_t bad = F.div(F.mul(b, u), a);
  return vj < bad ? vj : vj + 1;
}

Tuple decode(const FieldCtx& ctx, const std::vector<unsigned>& params, std::uint64_t idx) {
  const GaloisField& F = ctx.ext();
  const std::uint64_t Q2 = F.size();
  Tuple t;
  const std::uint64_t vj = idx % (Q2 - 1);
  idx /= Q2 - 1;
  t.u = static_cast<std::uint32_t>(idx % Q2);
  idx /= Q2;
  t.c = static_cast<std::uint32_t>(idx % Q2);
  idx /= Q2;
  const unsigned k = static_cast<unsigned>(idx % (ctx.q() + 1)) + 1;
  idx /= ctx.q() + 1;
  t.a = F.exp(idx % (Q2 - 1));
  idx /= Q2 - 1;
  t.param = params[idx];
  t.b = make_b(ctx, t.a, k);
  t.v = skip_degenerate(F, t.a, t.b, t.u, static_cast<std::uint32_t>(vj));
  return t;
}

bool hypothesis_family(FamilyKind kind) { return kind == FamilyKind::RQT1 || kind == FamilyKind::RPS1; }

// (a^q/b)^e (bu - av) = -(a u^q - b v^q), e = p^param (+1 for p^s+1).
bool tuple_hypothesis(const FieldCtx& ctx, FamilyKind kind, const Tuple& t) {
  const GaloisField& F = ctx.ext();
  const std::uint64_t e = kind == FamilyKind::RQT1 ? ipow(ctx.p(), t.param) : ipow(ctx.p(), t.param) + 1;
  const std::uint32_t ratio = F.pow_u(F.div(ctx.conj_raw(t.a), t.b), e);
  const std::uint32_t A = F.sub(F.mul(t.b, t.u), F.mul(t.a, t.v));
  const std::uint32_t B = F.sub(F.mul(t.a, ctx.conj_raw(t.u)), F.mul(t.b, ctx.conj_raw(t.v)));
  return F.mul(ratio, A) == F.neg(B);
}

std::vector<Tuple> sample_tuples(const FieldCtx& ctx, FamilyKind kind, const std::vector<unsigned>& params,
                                 const SweepOptions& opts) {
  const GaloisField& F = ctx.ext();
  const std::uint64_t Q2 = F.size();
  std::seed_seq seq{static_cast<std::uint32_t>(opts.seed), static_cast<std::uint32_t>(opts.seed >> 32),
                    static_cast<std::uint32_t>(kind), ctx.p(), ctx.n()};
  std::mt19937_64 rng(seq);
  std::vector<Tuple> out;
  out.reserve(opts.samples);
  std::vector<std::uint32_t> candidates;
  while (out.size() < opts.samples) {
    Tuple t;
    t.param = params[rng() % params.size()];
    t.a = F.exp(rng() % (Q2 - 1));
    t.b = make_b(ctx, t.a, static_cast<unsigned>(rng() % (ctx.q() + 1)) + 1);
    t.c = static_cast<std::uint32_t>(rng() % Q2);
    t.u = static_cast<std::uint32_t>(rng() % Q2);
    if (hypothesis_family(kind)) {
      candidates.clear();
      const std::uint32_t bad = F.div(F.mul(t.b, t.u), t.a);
      for (std::uint32_t v = 0; v < Q2; ++v) {
        if (v == bad) continue;
        t.v = v;
        if (tuple_hypothesis(ctx, kind, t)) candidates.push_back(v);
      }
      if (candidates.empty()) continue;
      t.v = candidates[rng() % candidates.size()];
    } else {
      t.v = skip_degenerate(F, t.a, t.b, t.u, static_cast<std::uint32_t>(rng() % (Q2 - 1)));
    }
    out.push_back(t);
  }
  return out;
}

std::string render_csv(const GaloisField& F, std::uint32_t x) {
  std::string s;
  for (auto d : F.coeffs(x)) s += (s.empty() ? "" : " ") + std::to_string(d);
  return s;
}

struct Worker {
  const CtxPtr& ctx;
  FamilyKind kind;
  const SweepOptions& opts;
  const std::map<unsigned, std::vector<std::uint32_t>>& htabs;
  SweepReport rep;
  FiberCounter fc_f;
  FiberCounter fc_g;

  Worker(const CtxPtr& c, FamilyKind k, const SweepOptions& o, const std::map<unsigned, std::vector<std::uint32_t>>& h)
      : ctx(c), kind(k), opts(o), htabs(h), fc_f(c->q2()), fc_g(c->q()) {}

  void mismatch(std::uint64_t idx, const MapSpec& spec, std::uint32_t m, std::string what) {
    ++rep.mismatch_count;
    if (rep.mismatches.size() < opts.max_mismatches_kept) {
      rep.mismatches.push_back({idx, spec_to_json(spec), m, std::move(what)});
    }
  }

  void run(std::uint64_t idx, const Tuple& t) {
    const FieldCtx& C = *ctx;
    MapSpec spec{ctx, C.e2(t.a), C.e2(t.b), C.e2(t.c), C.e2(t.u), C.e2(t.v), FamilyTag{kind, t.param}};
    ++rep.tuples_checked;
    try {
      check(idx, spec, t);
    } catch (const Error& e) {
      mismatch(idx, spec, 0, std::string("error: ") + e.what());
    }
  }

  void check(std::uint64_t idx, const MapSpec& spec, const Tuple& t) {
    const FieldCtx& C = *ctx;
    const std::uint32_t q = C.q();
    const auto& htab = htabs.at(t.param);
    const DerivedConstants dc = derive(spec);
    const auto f = build_f(spec, &htab);
    const auto g = build_g(spec, dc, &htab);
    fc_f.count(f);
    fc_g.count(g);
    const Prediction pred = evaluate_family(spec, dc);
    const bool in_scope = !pred.out_of_scope;
    if (in_scope) ++rep.in_scope;
    std::string fired;
    for (std::uint32_t m = 1; m <= q; ++m) {
      const bool oracle = fc_f.valid(m);
      const bool reduced = q % m == 0 && fc_g.valid(m);
      if (oracle) ++rep.oracle_tally[m];
      if (oracle != reduced) {
        mismatch(idx, spec, m, std::string("reduction: oracle on f ") + (oracle ? "accepts" : "rejects") +
                                   ", g-side test " + (reduced ? "accepts" : "rejects"));
      }
      const Verdict v = predict(pred, q, m);
      if (v.status == Verdict::Status::OutOfTheoremScope) {
        if (pred.out_of_scope && v.label.empty() == oracle) ++rep.out_of_scope_disagreements;
        continue;
      }
      if (v.is_m_to_1() != oracle) {
        mismatch(idx, spec, m, std::string("theorem: ") + (v.is_m_to_1() ? "clause " + v.label + " fires" : "no clause fires") +
                                   " but oracle " + (oracle ? "accepts" : "rejects"));
      } else if (oracle) {
        ++rep.clause_tally[v.label];
      }
    }
    if (in_scope && pred.fired.size() > 1) ++rep.multiple_fired;
    const auto valid = fc_f.valid_ms();
    if (!valid.empty() && valid.back() > q) ++rep.beyond_q;
    if (opts.check_inverses && fc_f.valid(1)) {
      ++rep.inverses_checked;
      try {
        const auto r = invert_f(spec, dc, f, g, &htab);
        ++rep.inverse_routes[r.g_route.substr(0, r.g_route.find(';'))];
      } catch (const Error& e) {
        ++rep.inverse_failures;
        mismatch(idx, spec, 1, std::string("inverse: ") + e.what());
      }
    }
    if (opts.check_inverses && C.p() == 2 && fc_f.valid(2)) {
      ++rep.involutions_checked;
      try {
        const auto r = involution_of_f(spec, dc, f, g, true, &htab);
        ++rep.involution_routes[r.route];
      } catch (const Error& e) {
        ++rep.involution_failures;
        mismatch(idx, spec, 2, std::string("involution: ") + e.what());
      }
    }
    if (opts.collect_rows) {
      for (const auto& c : pred.fired) fired += (fired.empty() ? "" : " ") + c.label;
      std::string ms;
      for (auto m : valid) ms += (ms.empty() ? "" : " ") + std::to_string(m);
      const GaloisField& F = C.ext();
      std::ostringstream row;
      row << idx << ',' << t.param << ',' << render_csv(F, t.a) << ',' << render_csv(F, t.b) << ','
          << render_csv(F, t.c) << ',' << render_csv(F, t.u) << ',' << render_csv(F, t.v) << ',' << ms << ','
          << fired << ',' << (in_scope ? "in" : "out");
      rep.rows.push_back(row.str());
    }
  }
};

void merge(SweepReport& into, SweepReport&& from, std::size_t cap) {
  into.tuples_checked += from.tuples_checked;
  into.in_scope += from.in_scope;
  for (const auto& [k, v] : from.clause_tally) into.clause_tally[k] += v;
  for (const auto& [k, v] : from.oracle_tally) into.oracle_tally[k] += v;
  into.beyond_q += from.beyond_q;
  into.multiple_fired += from.multiple_fired;
  into.out_of_scope_disagreements += from.out_of_scope_disagreements;
  into.mismatch_count += from.mismatch_count;
  for (auto& m : from.mismatches) {
    if (into.mismatches.size() < cap) into.mismatches.push_back(std::move(m));
  }
  into.inverses_checked += from.inverses_checked;
  into.inverse_failures += from.inverse_failures;
  for (const auto& [k, v] : from.inverse_routes) into.inverse_routes[k] += v;
  into.involutions_checked += from.involutions_checked;
  into.involution_failures += from.involution_failures;
  for (const auto& [k, v] : from.involution_routes) into.involution_routes[k] += v;
  for (auto& r : from.rows) into.rows.push_back(std::move(r));
}

}  // namespace

std::vector<std::string> SweepReport::uncovered_clauses() const {
  std::vector<std::string> out;
  for (const auto& [label, n] : clause_tally) {
    if (n == 0) out.push_back(label);
  }
  return out;
}

std::uint64_t tuple_count(std::uint32_t q) {
  const std::uint64_t Q = q, Q2 = Q * Q;
  return (Q2 - 1) * (Q + 1) * Q2 * (Q2 * Q2 - Q2);
}

std::vector<unsigned> family_params(FamilyKind kind, const FieldCtx& ctx) {
  std::vector<unsigned> out;
  if (kind == FamilyKind::RQT1) {
    for (unsigned j = 0; j < 2 * ctx.n(); ++j) out.push_back(j);
  } else if (kind == FamilyKind::RPS || kind == FamilyKind::RPS1) {
    for (unsigned s = 0; s <= 2 * ctx.n(); ++s) out.push_back(s);
  } else {
    out.push_back(0);
  }
  return out;
}

SweepReport verify_family(const CtxPtr& ctx, FamilyKind kind, const SweepOptions& opts) {
  if (auto why = family_field_violation(kind, *ctx)) {
    throw Error(ErrorCode::PreconditionViolated, std::string(family_name(kind)) + " " + *why);
  }
  std::vector<unsigned> params = family_params(kind, *ctx);
  if (opts.param) {
    if (!family_has_param(kind)) {
      throw Error(ErrorCode::InvalidConfig, std::string(family_name(kind)) + " takes no parameter");
    }
    if (std::find(params.begin(), params.end(), *opts.param) == params.end()) {
      throw Error(ErrorCode::InvalidConfig, "parameter out of range for " + std::string(family_name(kind)));
    }
    params = {*opts.param};
  }
  std::map<unsigned, std::vector<std::uint32_t>> htabs;
  for (unsigned prm : params) {
    const std::uint64_t r = family_exponent(FamilyTag{kind, prm}, *ctx);
    const GaloisField& F = ctx->ext();
    htabs[prm] = tabulate(F.size(), [&](std::uint32_t y) { return F.pow_u(y, r); });
  }

  SweepReport rep;
  rep.kind = kind;
  rep.param = opts.param;
  rep.ctx = ctx;
  rep.seed = opts.seed;
  for (const auto& label : family_clause_labels(kind)) rep.clause_tally[label] = 0;
  if (below_cubic_range(kind, *ctx)) rep.scope_note = "theorem assumes q >= 7; oracle-only tallies";

  const std::uint64_t total = params.size() * tuple_count(ctx->q());
  rep.exhaustive = opts.mode == BudgetMode::Exhaustive || (opts.mode == BudgetMode::Auto && total <= opts.exhaustive_limit);
  std::vector<Tuple> sampled;
  if (!rep.exhaustive) sampled = sample_tuples(*ctx, kind, params, opts);
  const std::uint64_t count = rep.exhaustive ? total : sampled.size();

  unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(1, count / 256)));
  std::vector<Worker> workers;
  workers.reserve(threads);
  for (unsigned i = 0; i < threads; ++i) workers.emplace_back(ctx, kind, opts, htabs);
  auto body = [&](unsigned w) {
    const std::uint64_t lo = count * w / threads, hi = count * (w + 1) / threads;
    for (std::uint64_t i = lo; i < hi; ++i) {
      workers[w].run(i, rep.exhaustive ? decode(*ctx, params, i) : sampled[i]);
    }
  };
  if (threads == 1) {
    body(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(body, w);
    for (auto& t : pool) t.join();
  }
  for (auto& w : workers) merge(rep, std::move(w.rep), opts.max_mismatches_kept);
  return rep;
}

nlohmann::json to_json(const SweepReport& r) {
  nlohmann::json j;
  j["family"] = family_name(r.kind);
  if (r.param) j["param"] = *r.param;
  j["field"] = r.ctx->to_json();
  j["budget"] = r.exhaustive ? nlohmann::json{{"mode", "exhaustive"}}
                             : nlohmann::json{{"mode", "sampled"}, {"samples", r.tuples_checked}, {"seed", r.seed}};
  j["tuples_checked"] = r.tuples_checked;
  j["in_scope"] = r.in_scope;
  if (r.scope_note) j["scope_note"] = *r.scope_note;
  j["clause_tally"] = r.clause_tally;
  j["uncovered_clauses"] = r.uncovered_clauses();
  nlohmann::json ot = nlohmann::json::object();
  for (const auto& [m, n] : r.oracle_tally) ot[std::to_string(m)] = n;
  j["oracle_tally"] = ot;
  j["outside_theorem_range"] = r.beyond_q;
  j["multiple_clauses_fired"] = r.multiple_fired;
  j["out_of_scope_disagreements"] = r.out_of_scope_disagreements;
  j["mismatch_count"] = r.mismatch_count;
  nlohmann::json mm = nlohmann::json::array();
  for (const auto& m : r.mismatches) mm.push_back({{"tuple", m.tuple}, {"m", m.m}, {"what", m.what}, {"spec", m.spec}});
  j["mismatches"] = mm;
  j["inverses"] = {{"checked", r.inverses_checked}, {"failures", r.inverse_failures}, {"routes", r.inverse_routes}};
  j["involutions"] = {
      {"checked", r.involutions_checked}, {"failures", r.involution_failures}, {"routes", r.involution_routes}};
  return j;
}

std::string csv_header() { return "tuple,param,a,b,c,u,v,valid_ms,fired,scope"; }

std::string to_csv(const SweepReport& r) {
  std::string out = csv_header() + "\n";
  for (const auto& row : r.rows) out += row + "\n";
  return out;
}

}  // namespace mto1
