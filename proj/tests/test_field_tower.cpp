#include <gtest/gtest.h>

#include <random>
#include <set>

#include "mto1/field_ctx.hpp"

using namespace mto1;

namespace {

// F_4 element t, i.e. coefficient vector (0, 1).
std::uint32_t t_of(const GaloisField& f) { return f.from_coeffs(std::vector<std::uint32_t>{0, 1}); }

}  // namespace

TEST(BuildFieldCtx, F2TowerUsesTheOnlyIrreducibleQuadratic) {
  auto ctx = FieldCtx::build(2, 1);
  EXPECT_EQ(ctx->irr_q2(), (fp_poly::Poly{1, 1, 1}));
  EXPECT_EQ(ctx->q(), 2u);
  EXPECT_EQ(ctx->q2(), 4u);
}

TEST(BuildFieldCtx, XiHasFullOrder) {
  auto c5 = FieldCtx::build(5, 1);
  EXPECT_EQ(c5->ext().element_order(c5->xi().index()), 24u);
  auto c4 = FieldCtx::build(2, 2);
  EXPECT_EQ(c4->ext().element_order(c4->xi().index()), 15u);
}

TEST(BuildFieldCtx, XiIsLexSmallestPrimitive) {
  for (auto [p, n] : std::vector<std::pair<unsigned, unsigned>>{{2, 2}, {3, 1}, {5, 1}, {2, 3}, {3, 2}}) {
    auto ctx = FieldCtx::build(p, n);
    const auto& F = ctx->ext();
    for (std::uint32_t key = 0; key < F.lex_key(ctx->xi().index()); ++key) {
      const auto x = F.from_lex_key(key);
      if (x != 0) EXPECT_LT(F.element_order(x), F.group_order());
    }
  }
}

TEST(BuildFieldCtx, IrreduciblesAreLexSmallest) {
  // Anything with constant term 0 is divisible by x.
  auto ctx = FieldCtx::build(3, 1);
  EXPECT_EQ(ctx->irr_q2(), (fp_poly::Poly{1, 0, 1}));
  auto c7 = FieldCtx::build(7, 1);
  EXPECT_EQ(c7->irr_q2(), (fp_poly::Poly{1, 0, 1}));
  auto c2 = FieldCtx::build(2, 2);
  EXPECT_EQ(c2->irr_q(), (fp_poly::Poly{1, 1, 1}));
  // 1 + x^3 + x^4 precedes 1 + x + x^4 when compared from the constant term up.
  EXPECT_EQ(c2->irr_q2(), (fp_poly::Poly{1, 0, 0, 1, 1}));
}

TEST(BuildFieldCtx, Errors) {
  EXPECT_THROW(FieldCtx::build(6, 1), Error);
  try {
    FieldCtx::build(6, 1);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotPrime);
  }
  try {
    FieldCtx::build(2, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegreeZero);
  }
  try {
    FieldCtx::build(2, 11);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SizeCapExceeded);
  }
  EXPECT_NO_THROW(FieldCtx::build(2, 10));
}

TEST(BuildFieldCtx, JsonRoundTrip) {
  auto ctx = FieldCtx::build(3, 2);
  auto j = ctx->to_json();
  auto back = FieldCtx::from_json(j);
  EXPECT_EQ(back->to_json(), j);
  EXPECT_EQ(back->xi(), ctx->xi());
}

TEST(BuildFieldCtx, JsonRejectsBadXi) {
  auto j = FieldCtx::build(2, 2)->to_json();
  j["xi"] = {1, 0, 0, 0};
  try {
    FieldCtx::from_json(j);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotPrimitive);
  }
}

TEST(Arith, F4Products) {
  auto f4 = GaloisField::build(2, 2);
  const auto t = t_of(*f4);
  const auto t1 = f4->add(t, 1);
  EXPECT_EQ(f4->mul(t, t1), 1u);
  EXPECT_EQ(f4->pow(t, 3), 1u);
}

TEST(Arith, FieldAxiomsExhaustive) {
  for (auto [p, d] : std::vector<std::pair<unsigned, unsigned>>{{2, 3}, {3, 2}, {5, 1}, {7, 1}, {2, 4}}) {
    auto F = GaloisField::build(p, d);
    const auto n = F->size();
    for (std::uint32_t x = 0; x < n; ++x) {
      EXPECT_EQ(F->add(x, 0), x);
      EXPECT_EQ(F->add(x, F->neg(x)), 0u);
      if (x != 0) EXPECT_EQ(F->mul(x, F->inv(x)), 1u);
      for (std::uint32_t y = 0; y < n; ++y) {
        for (std::uint32_t z = 0; z < n; z += 3) {
          EXPECT_EQ(F->mul(x, F->add(y, z)), F->add(F->mul(x, y), F->mul(x, z)));
        }
      }
    }
  }
}

TEST(Arith, DivisionByZero) {
  auto F = GaloisField::build(5, 1);
  try {
    F->div(3, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DivisionByZero);
  }
}

TEST(Pow, Basics) {
  auto F5 = GaloisField::build(5, 1);
  EXPECT_EQ(F5->pow(2, 4), 1u);
  EXPECT_EQ(F5->pow(0, 0), 1u);
  EXPECT_EQ(F5->pow(0, 3), 0u);
  EXPECT_EQ(F5->pow(2, -1), 3u);
  try {
    F5->pow(0, -2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroToNegativePower);
  }
  auto ctx = FieldCtx::build(3, 2);
  EXPECT_TRUE(ctx->xi().pow(ctx->q2() - 1).is_one());
}

TEST(Frobenius, InvolutionAndFixedField) {
  for (auto [p, n] : std::vector<std::pair<unsigned, unsigned>>{{2, 2}, {3, 2}, {5, 1}, {2, 3}}) {
    auto ctx = FieldCtx::build(p, n);
    for (std::uint32_t i = 0; i < ctx->q2(); ++i) {
      const auto x = ctx->e2(i);
      EXPECT_EQ(ctx->conj(ctx->conj(x)), x);
    }
    for (std::uint32_t i = 0; i < ctx->q(); ++i) {
      const auto c = ctx->e1(i);
      EXPECT_EQ(ctx->conj(ctx->embed(c)), ctx->embed(c));
    }
    EXPECT_EQ(ctx->conj(ctx->xi()), ctx->xi().pow(ctx->q()));
  }
}

TEST(Embed, IsRingHomomorphism) {
  auto ctx = FieldCtx::build(3, 2);
  std::set<std::uint32_t> seen;
  for (std::uint32_t i = 0; i < ctx->q(); ++i) {
    const auto x = ctx->e1(i);
    seen.insert(ctx->embed(x).index());
    for (std::uint32_t j = 0; j < ctx->q(); ++j) {
      const auto y = ctx->e1(j);
      EXPECT_EQ(ctx->embed(x + y), ctx->embed(x) + ctx->embed(y));
      EXPECT_EQ(ctx->embed(x * y), ctx->embed(x) * ctx->embed(y));
    }
  }
  EXPECT_EQ(seen.size(), ctx->q());
}

TEST(TraceNorm, LandInBaseField) {
  auto ctx = FieldCtx::build(2, 2);
  std::map<std::uint32_t, int> fib;
  for (std::uint32_t i = 0; i < ctx->q2(); ++i) {
    const auto x = ctx->e2(i);
    ++fib[ctx->trace(x).index()];
    EXPECT_NO_THROW(ctx->norm(x));
  }
  EXPECT_EQ(fib.size(), ctx->q());
  for (auto [k, v] : fib) EXPECT_EQ(v, static_cast<int>(ctx->q()));
}

TEST(TraceNorm, TraceOfEmbeddedIsDouble) {
  auto ctx = FieldCtx::build(5, 1);
  for (std::uint32_t i = 0; i < ctx->q(); ++i) {
    const auto c = ctx->e1(i);
    EXPECT_EQ(ctx->trace(ctx->embed(c)), c + c);
  }
}

TEST(TraceNorm, NormOfXiGeneratesBase) {
  for (auto [p, n] : std::vector<std::pair<unsigned, unsigned>>{{3, 1}, {5, 1}, {2, 2}, {3, 2}}) {
    auto ctx = FieldCtx::build(p, n);
    const auto nx = ctx->norm(ctx->xi());
    EXPECT_EQ(ctx->base().element_order(nx.index()), ctx->q() - 1);
  }
}

TEST(AbsTrace, F4Values) {
  auto f4 = GaloisField::build(2, 2);
  EXPECT_EQ(abs_trace(*f4, 0), 0);
  EXPECT_EQ(abs_trace(*f4, 1), 0);
  EXPECT_EQ(abs_trace(*f4, t_of(*f4)), 1);
  auto f5 = GaloisField::build(5, 1);
  try {
    abs_trace(*f5, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::WrongCharacteristic);
  }
}

TEST(QuadChar, ValuesAndMultiplicativity) {
  auto ctx = FieldCtx::build(5, 1);
  EXPECT_EQ(ctx->quad_char(ctx->int1(1)), 1);
  EXPECT_EQ(ctx->quad_char(ctx->int1(2)), -1);
  EXPECT_EQ(ctx->quad_char(ctx->int1(0)), 0);
  auto c9 = FieldCtx::build(3, 2);
  for (std::uint32_t i = 0; i < 9; ++i) {
    for (std::uint32_t j = 0; j < 9; ++j) {
      EXPECT_EQ(c9->quad_char(c9->e1(i) * c9->e1(j)), c9->quad_char(c9->e1(i)) * c9->quad_char(c9->e1(j)));
    }
  }
  auto c4 = FieldCtx::build(2, 2);
  try {
    c4->quad_char(c4->one1());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EvenCharacteristic);
  }
}

TEST(DiscreteLog, Examples) {
  auto ctx = FieldCtx::build(3, 2);
  const auto& F = ctx->ext();
  EXPECT_EQ(discrete_log(F, 1, ctx->xi().index()), 0u);
  EXPECT_EQ(discrete_log(F, ctx->xi_pow(7).index(), ctx->xi().index()), 7u);
  auto f4 = GaloisField::build(2, 2);
  const auto t = t_of(*f4);
  EXPECT_EQ(discrete_log(*f4, t, f4->add(t, 1)), 2u);
  // 1 generates nothing else.
  EXPECT_FALSE(discrete_log(*f4, t, 1).has_value());
  try {
    discrete_log(*f4, 0, t);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroInput);
  }
}

TEST(DiscreteLog, SmallestExponent) {
  auto F = GaloisField::build(3, 2);
  for (std::uint32_t b = 1; b < F->size(); ++b) {
    for (std::uint32_t y = 1; y < F->size(); ++y) {
      std::optional<std::uint64_t> brute;
      for (std::uint64_t e = 0; e < F->group_order(); ++e) {
        if (F->pow_u(b, e) == y) {
          brute = e;
          break;
        }
      }
      EXPECT_EQ(discrete_log(*F, y, b), brute);
    }
  }
}

TEST(FindK, RoundTrip) {
  for (auto [p, n] : std::vector<std::pair<unsigned, unsigned>>{{2, 1}, {2, 2}, {3, 1}, {5, 1}, {3, 2}}) {
    auto ctx = FieldCtx::build(p, n);
    const auto q = ctx->q();
    std::mt19937_64 rng(7);
    for (int it = 0; it < 200; ++it) {
      const auto a = ctx->e2(1 + rng() % (ctx->q2() - 1));
      const unsigned k = 1 + rng() % (q + 1);
      const auto b = ctx->xi().pow_u(static_cast<std::uint64_t>(q - 1) * k) * ctx->conj(a);
      EXPECT_EQ(ctx->find_k(a, b), k);
    }
    const auto a = ctx->xi_pow(3);
    EXPECT_EQ(ctx->find_k(a, ctx->conj(a)), q + 1);
    EXPECT_EQ(ctx->find_k(a, ctx->xi_pow(q - 1) * ctx->conj(a)), 1u);
  }
}

TEST(FindK, Preconditions) {
  auto ctx = FieldCtx::build(3, 1);
  try {
    ctx->find_k(ctx->zero2(), ctx->one2());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PreconditionViolated);
  }
  try {
    ctx->find_k(ctx->one2(), ctx->xi());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PreconditionViolated);
  }
}
