#include "mto1/families.hpp"

#include <numeric>
#include <string>

namespace mto1 {

namespace {

// Shorthand bundle for the clause formulas.
struct Vars {
  const FieldCtx& ctx;
  std::uint32_t q;
  bool even;
  Fq2 a, b, c, u, v, A, B;
  Fq2 aq, bq, cq, Aq, Bq;
  Fq2 nuv;  // u^{q+1} - v^{q+1}

  Fq2 k(std::int64_t n) const { return ctx.int2(n); }
};

Vars make_vars(const MapSpec& s, const DerivedConstants& dc) {
  const auto& ctx = *s.ctx;
  return Vars{ctx,
              ctx.q(),
              ctx.p() == 2,
              s.a,
              s.b,
              s.c,
              s.u,
              s.v,
              dc.A,
              dc.B,
              ctx.conj(s.a),
              ctx.conj(s.b),
              ctx.conj(s.c),
              ctx.conj(dc.A),
              ctx.conj(dc.B),
              s.u * ctx.conj(s.u) - s.v * ctx.conj(s.v)};
}

std::string lbl(FamilyKind kind, int clause) {
  return std::string(family_label(kind)) + ":(" + std::to_string(clause) + ")";
}

// Clause list shared by the r = 2, 2q, q+1 theorems.
void deg2_clauses(FamilyKind kind, const Vars& V, Fq2 alpha, Fq2 beta, std::vector<Case>& out) {
  const bool a0 = alpha.is_zero(), b0 = beta.is_zero();
  if (a0 && !b0) out.push_back({1, lbl(kind, 1)});
  if (!a0 && b0 && V.even) out.push_back({1, lbl(kind, 2)});
  if (!a0 && !b0 && V.even) out.push_back({2, lbl(kind, 3)});
  if (a0 && b0) out.push_back({V.q, lbl(kind, 4)});
}

void ps_clauses(FamilyKind kind, const Vars& V, unsigned s, Fq2 alpha, Fq2 beta, std::vector<Case>& out) {
  const unsigned n = V.ctx.n();
  const unsigned g = std::gcd(s, n);
  const std::uint64_t pg = ipow(V.ctx.p(), g);
  const std::uint64_t d = pg - 1;
  const std::uint64_t ps = ipow(V.ctx.p(), s);
  if (alpha.is_zero()) {
    if (!beta.is_zero()) out.push_back({1, lbl(kind, 1)});
    if (beta.is_zero()) out.push_back({V.q, lbl(kind, 4)});
    return;
  }
  const Fq2 lhs = (-(beta / alpha)).pow_u((V.q - 1) / d);
  const Fq2 rhs = (V.aq / V.b).pow_u((ps - 1) / d);
  if (lhs != rhs) out.push_back({1, lbl(kind, 2)});
  if (lhs == rhs) out.push_back({static_cast<std::uint32_t>(pg), lbl(kind, 3)});
}

}  // namespace

bool family_hypothesis_holds(const MapSpec& spec, const DerivedConstants& dc) {
  if (!spec.is_family()) return true;
  const auto& tag = spec.family();
  if (tag.kind != FamilyKind::RQT1 && tag.kind != FamilyKind::RPS1) return true;
  const auto& ctx = *spec.ctx;
  const std::uint64_t e = tag.kind == FamilyKind::RQT1 ? ipow(ctx.p(), tag.param)
                                                       : ipow(ctx.p(), tag.param) + 1;
  const Fq2 ratio = ctx.conj(spec.a) / spec.b;
  return ratio.pow_u(e) * dc.A == -dc.B;
}

FamilyConstants family_constants(const MapSpec& spec, const DerivedConstants& dc) {
  if (!spec.is_family()) throw Error(ErrorCode::PreconditionViolated, "h is not a family monomial");
  const Vars V = make_vars(spec, dc);
  const auto& ctx = V.ctx;
  const auto& tag = spec.family();
  FamilyConstants K;
  auto set_g = [&](Fq2 g) {
    K.gamma = g;
    K.has_gamma = true;
  };
  auto set_d = [&](Fq2 d) {
    K.delta = d;
    K.has_delta = true;
  };
  const Fq2 aq2 = V.aq * V.aq;
  switch (tag.kind) {
    case FamilyKind::R2:
      K.alpha = V.aq * V.Bq + V.b * V.B;
      K.beta = V.k(2) * V.B * V.c + V.k(2) * V.Bq * V.cq + V.nuv;
      break;
    case FamilyKind::R2Q:
      K.alpha = V.aq * V.Aq + V.b * V.A;
      K.beta = V.k(2) * V.A * V.c + V.k(2) * V.Aq * V.cq + V.nuv;
      break;
    case FamilyKind::RQplus1:
      K.alpha = V.A + V.B;
      K.beta = K.alpha * (V.aq * V.c + V.b * V.cq) + V.b * V.nuv;
      break;
    case FamilyKind::RhalfQ2Q: {
      const Fq2 s = V.A + V.B;
      const Fq2 w = V.u * ctx.conj(V.u) + V.v * ctx.conj(V.v);
      K.alpha = V.aq * s * s + V.b * w * w;
      K.beta = s * s * (V.aq * V.c + V.b * V.cq);
      break;
    }
    case FamilyKind::RQT1: {
      const std::uint64_t t = ipow(ctx.p(), tag.param);
      K.alpha = V.aq * V.c - V.b * V.cq;
      K.beta = V.B * K.alpha.pow_u(t) * (V.aq * V.c + V.b * V.cq) + V.aq.pow_u(t) * V.b * V.nuv;
      break;
    }
    case FamilyKind::R3:
    case FamilyKind::R3Q: {
      const bool swap = tag.kind == FamilyKind::R3Q;
      const Fq2 X = swap ? V.A : V.B, Xq = swap ? V.Aq : V.Bq;
      K.alpha = aq2 * Xq + V.b * V.b * X;
      K.beta = V.k(3) * (V.aq * V.c - V.b * V.cq);
      set_g(-V.nuv);
      set_d(K.beta * K.beta * X - aq2 * K.gamma);
      break;
    }
    case FamilyKind::RQplus2:
    case FamilyKind::R2Qplus1: {
      const bool swap = tag.kind == FamilyKind::R2Qplus1;
      const Fq2 X = swap ? V.A : V.B, Xq = swap ? V.Aq : V.Bq;
      const Fq2 Y = swap ? V.B : V.A, Yq = swap ? V.Bq : V.Aq;
      K.alpha = X + Xq;
      K.beta = (V.k(2) * V.aq * V.c + V.b * V.cq) * X + (V.aq * V.c + V.k(2) * V.b * V.cq) * Xq;
      set_g(V.k(2) * K.alpha * V.c * V.cq + Y * V.cq * V.cq + Yq * V.c * V.c + V.nuv);
      break;
    }
    case FamilyKind::R2Q2Q_div3:
    case FamilyKind::RQ2_2Q_div3: {
      const Fq2 A3 = V.A.pow_u(3), B3 = V.B.pow_u(3);
      const Fq2 w = V.aq * V.c - V.b * V.cq;
      const Fq2 n3 = V.nuv.pow_u(3);
      if (tag.kind == FamilyKind::R2Q2Q_div3) {
        K.alpha = V.aq * (V.aq * A3 + V.b * B3) + V.b * V.b * n3;
        K.beta = w * (V.aq * A3 - V.b * B3);
        set_g(w * (B3 * V.c - A3 * V.cq));
      } else {
        K.alpha = V.aq * (V.b * A3 + V.aq * B3) + V.b * V.b * n3;
        K.beta = w * (V.aq * B3 - V.b * A3);
        set_g(w * (A3 * V.c - B3 * V.cq));
      }
      break;
    }
    case FamilyKind::R4:
    case FamilyKind::R4Q: {
      const bool swap = tag.kind == FamilyKind::R4Q;
      const Fq2 X = swap ? V.A : V.B, Xq = swap ? V.Aq : V.Bq;
      K.alpha = V.aq.pow_u(3) * Xq + V.b.pow_u(3) * X;
      K.beta = V.u * ctx.conj(V.u) + V.v * ctx.conj(V.v);
      break;
    }
    case FamilyKind::RQ2Q2_div2: {
      K.alpha = V.B + V.Bq;
      K.beta = V.aq * V.c + V.b * V.cq;
      set_g(V.u * ctx.conj(V.u) + V.v * ctx.conj(V.v));
      const Fq2 w = V.A * V.cq + V.B * V.c;
      set_d(V.c * V.cq * K.alpha * K.alpha + V.aq / V.b * w * w + K.gamma * K.gamma);
      break;
    }
    case FamilyKind::RPS: {
      const std::uint64_t r = ipow(ctx.p(), tag.param);
      K.alpha = (V.aq / V.b).pow_u(r) * V.A + V.B;
      K.beta = V.nuv;
      break;
    }
    case FamilyKind::RPS1: {
      const std::uint64_t ps = ipow(ctx.p(), tag.param);
      const Fq2 w = V.c - V.b * V.cq / V.aq;
      K.alpha = V.B * w;
      K.beta = V.B * w.pow_u(ps) + V.nuv;
      break;
    }
  }
  return K;
}

Prediction evaluate_family(const MapSpec& spec, const DerivedConstants& dc) {
  if (!spec.is_family()) throw Error(ErrorCode::PreconditionViolated, "h is not a family monomial");
  const auto& ctx = *spec.ctx;
  const auto& tag = spec.family();
  if (auto why = family_field_violation(tag.kind, ctx)) {
    throw Error(ErrorCode::PreconditionViolated, std::string(family_name(tag.kind)) + " " + *why);
  }
  Prediction P;
  P.constants = family_constants(spec, dc);
  const FamilyConstants& K = P.constants;
  const Vars V = make_vars(spec, dc);
  const std::uint32_t q = V.q;
  const FamilyKind kind = tag.kind;
  auto& out = P.fired;
  const bool a0 = K.alpha.is_zero(), b0 = K.beta.is_zero();

  if (below_cubic_range(kind, ctx)) P.out_of_scope = "theorem assumes q >= 7";
  if (!family_hypothesis_holds(spec, dc)) P.out_of_scope = "tuple violates (a^q/b)^t A = -B";

  switch (kind) {
    case FamilyKind::R2:
    case FamilyKind::R2Q:
    case FamilyKind::RQplus1:
      deg2_clauses(kind, V, K.alpha, K.beta, out);
      break;
    case FamilyKind::RhalfQ2Q:
      if (a0 && !b0) out.push_back({1, lbl(kind, 1)});
      if (!a0 && b0) out.push_back({1, lbl(kind, 2)});
      if (!a0 && !b0) out.push_back({2, lbl(kind, 3)});
      if (a0 && b0) out.push_back({q, lbl(kind, 4)});
      break;
    case FamilyKind::RQT1: {
      const bool n0 = V.nuv.is_zero();
      if (a0 && !n0) out.push_back({1, lbl(kind, 1)});
      if (!a0 && b0 && V.even) out.push_back({1, lbl(kind, 2)});
      if (!a0 && !b0 && V.even) out.push_back({2, lbl(kind, 3)});
      if (a0 && n0) out.push_back({q, lbl(kind, 4)});
      break;
    }
    case FamilyKind::R3:
    case FamilyKind::R3Q: {
      const Fq2 X = kind == FamilyKind::R3Q ? V.A : V.B;
      const bool g0 = K.gamma.is_zero(), d0 = K.delta.is_zero();
      const bool three = q % 3 == 0;
      if (a0 && b0 && !g0) out.push_back({1, lbl(kind, 1)});
      if (V.even && a0 && !b0 && d0) out.push_back({1, lbl(kind, 2)});
      if (three && !a0) {
        const bool eq = (K.alpha * K.gamma).pow_u((q - 1) / 2) == V.a / V.b;
        if (!eq) out.push_back({1, lbl(kind, 3)});
        if (eq) out.push_back({3, lbl(kind, 6)});
      }
      if (q % 3 == 2 && !a0 && K.beta * K.beta * X * ctx.conj(X) == V.k(3) * K.alpha * K.gamma) {
        out.push_back({1, lbl(kind, 4)});
      }
      if (V.even && a0 && !b0 && !d0) out.push_back({2, lbl(kind, 5)});
      if (a0 && b0 && g0) out.push_back({q, lbl(kind, 7)});
      break;
    }
    case FamilyKind::RQplus2:
    case FamilyKind::R2Qplus1: {
      const bool g0 = K.gamma.is_zero();
      const bool lin = V.aq * V.c == V.b * V.cq;
      const bool three = q % 3 == 0;
      if (a0 && lin && !V.nuv.is_zero()) out.push_back({1, lbl(kind, 1)});
      if (V.even && a0 && !lin && g0) out.push_back({1, lbl(kind, 2)});
      if (q % 3 == 2 && !a0 && K.beta * K.beta == V.k(3) * V.aq * V.b * K.alpha * K.gamma) {
        out.push_back({1, lbl(kind, 3)});
      }
      if (three && !a0 && b0) {
        const Fq2 lhs = (-(K.alpha * K.gamma)).pow_u((q - 1) / 2);
        const Fq2 rhs = (V.a / V.bq).pow_u((q + 1) / 2);
        if (lhs != rhs) out.push_back({1, lbl(kind, 4)});
        if (lhs == rhs) out.push_back({3, lbl(kind, 6)});
      }
      if (V.even && a0 && !lin && !g0) out.push_back({2, lbl(kind, 5)});
      if (a0 && b0 && g0) out.push_back({q, lbl(kind, 7)});
      break;
    }
    case FamilyKind::R2Q2Q_div3:
    case FamilyKind::RQ2_2Q_div3: {
      const bool g0 = K.gamma.is_zero();
      const bool lin = V.aq * V.c == V.b * V.cq;
      if (a0 && b0 && !lin) out.push_back({1, lbl(kind, 1)});
      if (!a0 && b0) {
        const Fq2 lhs = (-(K.alpha * K.gamma)).pow_u((q - 1) / 2);
        const Fq2 rhs = V.aq * V.b.pow_u((3 * static_cast<std::uint64_t>(q) - 5) / 2);
        if (lhs != rhs) out.push_back({1, lbl(kind, 2)});
        if (lhs == rhs) out.push_back({3, lbl(kind, 3)});
      }
      if (a0 && b0 && g0) out.push_back({q, lbl(kind, 4)});
      break;
    }
    case FamilyKind::R4:
    case FamilyKind::R4Q: {
      const bool n_even = ctx.n() % 2 == 0;
      if (a0 && !b0) out.push_back({1, lbl(kind, 1)});
      if (!a0 && b0) out.push_back({1, lbl(kind, 2)});
      if (!a0 && !b0) {
        if (n_even) {
          const bool eq = (K.beta / K.alpha).pow_u((q - 1) / 3) == V.b / V.a;
          if (!eq) out.push_back({1, lbl(kind, 3)});
          if (eq) out.push_back({4, lbl(kind, 5)});
        } else {
          out.push_back({2, lbl(kind, 4)});
        }
      }
      if (a0 && b0) out.push_back({q, lbl(kind, 6)});
      break;
    }
    case FamilyKind::RQ2Q2_div2: {
      const bool g0 = K.gamma.is_zero(), d0 = K.delta.is_zero();
      if (a0 && b0 && !g0) out.push_back({1, lbl(kind, 1)});
      if (a0 && !b0 && d0) out.push_back({1, lbl(kind, 2)});
      if (!a0 && b0 && g0) out.push_back({1, lbl(kind, 3)});
      if (a0 && !b0 && !d0) out.push_back({2, lbl(kind, 4)});
      if (!a0 && b0 && !g0) out.push_back({2, lbl(kind, 5)});
      if (!a0 && !b0 && ctx.n() % 2 == 1 && V.b * K.delta == K.alpha * K.beta * (V.A * V.cq + V.B * V.c)) {
        out.push_back({2, lbl(kind, 6)});
      }
      for (std::uint32_t m = 3; m <= q; ++m) P.silent_ms.push_back(m);
      break;
    }
    case FamilyKind::RPS:
    case FamilyKind::RPS1:
      ps_clauses(kind, V, tag.param, K.alpha, K.beta, out);
      break;
  }

  for (const auto& c : out) {
    if (c.m < 1 || c.m > q || q % c.m != 0) {
      throw Error(ErrorCode::InternalError, "clause " + c.label + " granted m = " + std::to_string(c.m) +
                                                " which does not divide q = " + std::to_string(q));
    }
  }
  return P;
}

Verdict predict(const Prediction& pred, std::uint32_t q, std::uint32_t m) {
  if (m < 1 || m > q) {
    throw Error(ErrorCode::MOutOfRange, "m = " + std::to_string(m) + " outside [1, " + std::to_string(q) + "]");
  }
  Verdict v;
  v.m = m;
  for (const auto& c : pred.fired) {
    if (c.m == m) {
      v.label = c.label;
      break;
    }
  }
  if (pred.out_of_scope) {
    v.status = Verdict::Status::OutOfTheoremScope;
    v.reason = *pred.out_of_scope;
    return v;
  }
  for (auto s : pred.silent_ms) {
    if (s == m && v.label.empty()) {
      v.status = Verdict::Status::OutOfTheoremScope;
      v.reason = "theorem only classifies m in {1, 2}";
      return v;
    }
  }
  v.status = v.label.empty() ? Verdict::Status::NotMTo1ForAskedM : Verdict::Status::MTo1;
  return v;
}

Verdict predict(const MapSpec& spec, std::uint32_t m) {
  const auto dc = derive(spec);
  const auto q = spec.ctx->q();
  if (m < 1 || m > q) {
    throw Error(ErrorCode::MOutOfRange, "m = " + std::to_string(m) + " outside [1, " + std::to_string(q) + "]");
  }
  return predict(evaluate_family(spec, dc), q, m);
}

nlohmann::json to_json(const FamilyConstants& c) {
  nlohmann::json j{{"alpha", c.alpha.coeffs()}, {"beta", c.beta.coeffs()}};
  if (c.has_gamma) j["gamma"] = c.gamma.coeffs();
  if (c.has_delta) j["delta"] = c.delta.coeffs();
  return j;
}

std::vector<std::string> family_clause_labels(FamilyKind kind) {
  int count = 4;
  switch (kind) {
    case FamilyKind::R3:
    case FamilyKind::R3Q:
    case FamilyKind::RQplus2:
    case FamilyKind::R2Qplus1:
      count = 7;
      break;
    case FamilyKind::R4:
    case FamilyKind::R4Q:
    case FamilyKind::RQ2Q2_div2:
      count = 6;
      break;
    default:
      break;
  }
  std::vector<std::string> out;
  for (int i = 1; i <= count; ++i) out.push_back(lbl(kind, i));
  return out;
}

}  // namespace mto1
