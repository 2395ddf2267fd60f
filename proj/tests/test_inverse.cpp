#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <random>

#include "mto1/families.hpp"
#include "mto1/inverse.hpp"
#include "mto1/oracle.hpp"
#include "support.hpp"

using namespace mto1;
using mto1::testing::random_poly;
using mto1::testing::random_spec;

namespace {

using Fields = std::vector<std::pair<unsigned, unsigned>>;
using Table = std::vector<std::uint32_t>;

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InternalError;
}

bool undoes(const Table& fwd, const Table& inv) {
  for (std::uint32_t x = 0; x < fwd.size(); ++x) {
    if (inv[fwd[x]] != x) return false;
  }
  return true;
}

DensePoly from_ints(const GaloisField& F, const std::vector<std::int64_t>& c) {
  std::vector<std::uint32_t> raw;
  for (auto v : c) raw.push_back(F.from_int(v));
  return DensePoly(&F, raw);
}

}  // namespace

TEST(Normalize, QuadraticOverF5) {
  const auto F = GaloisField::build(5, 1);
  const auto n = normalize(from_ints(*F, {1, 0, 2}));
  EXPECT_EQ(n.scale, 3u);
  EXPECT_EQ(n.shift, 0u);
  EXPECT_EQ(n.offset, F->from_int(-3));
  EXPECT_EQ(n.poly, from_ints(*F, {0, 0, 1}));
}

TEST(Normalize, AlreadyNormalized) {
  const auto F5 = GaloisField::build(5, 1);
  const auto g = from_ints(*F5, {0, 1, 0, 1});
  const auto n = normalize(g);
  EXPECT_EQ(n.poly, g);
  EXPECT_EQ(n.scale, 1u);
  EXPECT_EQ(n.shift, 0u);
  EXPECT_EQ(n.offset, 0u);
  const auto F4 = GaloisField::build(2, 2);
  const auto g4 = from_ints(*F4, {0, 1, 1});
  EXPECT_EQ(normalize(g4).poly, g4);
}

TEST(Normalize, Errors) {
  const auto F = GaloisField::build(7, 1);
  EXPECT_EQ(code_of([&] { normalize(from_ints(*F, {0, 0, 0, 0, 0, 0, 1})); }), ErrorCode::DegreeTooHigh);
  EXPECT_EQ(code_of([&] { normalize(from_ints(*F, {3})); }), ErrorCode::PreconditionViolated);
}

TEST(InvertNormalized, SquareOverF4) {
  const auto F = GaloisField::build(2, 2);
  const auto g = from_ints(*F, {0, 0, 1});
  const auto r = invert_normalized(g);
  EXPECT_EQ(r.table, g.table());
}

TEST(InvertNormalized, CubeOverF5) {
  const auto F = GaloisField::build(5, 1);
  const auto g = from_ints(*F, {0, 0, 0, 1});
  EXPECT_EQ(invert_normalized(g).table, g.table());
}

TEST(InvertNormalized, QuarticPlusMinusThreeXOverF7) {
  const auto F = GaloisField::build(7, 1);
  const auto minus = from_ints(*F, {0, -3, 0, 0, 1});
  const auto plus = from_ints(*F, {0, 3, 0, 0, 1});
  EXPECT_EQ(invert_normalized(plus).table, from_ints(*F, {0, 3, 0, 0, -1}).table());
  EXPECT_EQ(invert_normalized(minus).table, minus.table());
}

TEST(InvertNormalized, NoMatchingRow) {
  const auto F = GaloisField::build(7, 1);
  EXPECT_EQ(code_of([&] { invert_normalized(from_ints(*F, {0, 0, 1})); }), ErrorCode::NoMatchingRow);
}

TEST(InvertNormalized, EveryRowInstanceUpToTwentyFive) {
  std::vector<int> seen(static_cast<std::size_t>(table_row_count()) + 1, 0);
  for (auto [p, n] : Fields{{2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}, {11, 1}, {13, 1}, {2, 4},
                            {17, 1}, {19, 1}, {23, 1}, {5, 2}}) {
    const auto F = GaloisField::build(p, n);
    for (const auto& inst : table_row_instances(*F)) {
      const auto r = invert_normalized(inst.g);
      ASSERT_TRUE(undoes(inst.g.table(), r.table)) << inst.label << " over F_" << F->size();
      ++seen[static_cast<std::size_t>(inst.row)];
    }
  }
  for (int row = 1; row <= table_row_count(); ++row) EXPECT_GT(seen[static_cast<std::size_t>(row)], 0) << row;
}

TEST(InvertNormalized, DenormalizeAgreesWithLookup) {
  std::mt19937_64 rng(77);
  for (auto [p, n] : Fields{{5, 1}, {7, 1}, {2, 3}, {11, 1}, {3, 2}, {2, 4}, {13, 1}, {5, 2}}) {
    const auto F = GaloisField::build(p, n);
    const auto rows = table_row_instances(*F);
    ASSERT_FALSE(rows.empty());
    for (int trial = 0; trial < 60; ++trial) {
      const auto& base = rows[rng() % rows.size()].g;
      const std::uint32_t s = 1 + static_cast<std::uint32_t>(rng() % (F->size() - 1));
      const std::uint32_t l = 1 + static_cast<std::uint32_t>(rng() % (F->size() - 1));
      const std::uint32_t t = static_cast<std::uint32_t>(rng() % F->size());
      const std::uint32_t o = static_cast<std::uint32_t>(rng() % F->size());
      // g(x) = s * base(l x + t) + o is again a permutation of degree <= 5.
      const DensePoly g = base.compose(DensePoly(F.get(), {t, l})).scaled(s) + DensePoly(F.get(), {o});
      const auto nz = normalize(g);
      const auto inv = denormalize_inverse(nz, invert_normalized(nz.poly).table);
      ASSERT_TRUE(undoes(g.table(), inv)) << "q=" << F->size() << " base row";
    }
  }
}

TEST(InvertNormalized, RandomLowDegreePermutations) {
  std::mt19937_64 rng(78);
  for (auto [p, n] : Fields{{3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}}) {
    const auto F = GaloisField::build(p, n);
    const std::uint32_t q = F->size();
    const int max_deg = static_cast<int>(std::min<std::uint32_t>(5, q - 1));
    int perms = 0;
    for (int trial = 0; trial < 200000 && perms < 200; ++trial) {
      const auto g = random_poly(*F, rng, max_deg);
      if (g.degree() < 1) continue;
      const auto tab = g.table();
      if (!classify(tab).contains(1)) continue;
      ++perms;
      const auto nz = normalize(g);
      const auto inv = denormalize_inverse(nz, invert_normalized(nz.poly).table);
      ASSERT_TRUE(undoes(tab, inv)) << "q=" << q;
    }
    EXPECT_GT(perms, 0) << "q=" << q;
  }
}

TEST(LinearizedInverse, NormOneIsNotAPermutation) {
  const auto F = GaloisField::build(2, 4);
  const std::uint32_t xi3 = F->exp(3);
  EXPECT_EQ(F->pow_u(xi3, 5), 1u);
  EXPECT_EQ(code_of([&] { invert_linearized_binomial(*F, 1, xi3, 2); }), ErrorCode::NotAPermutation);
}

TEST(LinearizedInverse, QuarticOverF16) {
  const auto F = GaloisField::build(2, 4);
  const std::uint32_t xi = F->exp(1);
  const auto inv = invert_linearized_binomial(*F, 1, xi, 2);
  const Table L = tabulate(F->size(), [&](std::uint32_t x) { return F->sub(F->frobenius(x, 2), F->mul(xi, x)); });
  EXPECT_TRUE(undoes(L, inv));
}

TEST(LinearizedInverse, FrobeniusMinusAOverF9) {
  const auto F = GaloisField::build(3, 2);
  int checked = 0;
  for (std::uint32_t a = 1; a < F->size(); ++a) {
    if (F->pow_u(a, 4) == 1) {
      EXPECT_EQ(code_of([&] { invert_linearized_binomial(*F, 1, a, 1); }), ErrorCode::NotAPermutation);
      continue;
    }
    const auto inv = invert_linearized_binomial(*F, 1, a, 1);
    const Table L = tabulate(F->size(), [&](std::uint32_t x) { return F->sub(F->frobenius(x, 1), F->mul(a, x)); });
    EXPECT_TRUE(undoes(L, inv));
    ++checked;
  }
  EXPECT_EQ(checked, 4);
}

TEST(LinearizedInverse, ZeroAIsFrobenius) {
  const auto F = GaloisField::build(2, 5);
  const auto inv = invert_linearized_binomial(*F, 1, 0, 2);
  for (std::uint32_t x = 0; x < F->size(); ++x) EXPECT_EQ(inv[x], F->frobenius(x, 3));
}

TEST(LinearizedInverse, RangeOfR) {
  const auto F = GaloisField::build(3, 2);
  EXPECT_EQ(code_of([&] { invert_linearized_binomial(*F, 1, 2, 0); }), ErrorCode::PreconditionViolated);
  EXPECT_EQ(code_of([&] { invert_linearized_binomial(*F, 1, 2, 2); }), ErrorCode::PreconditionViolated);
}

TEST(InvertF, SquareFamilyOverF16) {
  const auto ctx = FieldCtx::build(2, 2);
  std::mt19937_64 rng(16);
  int checked = 0;
  for (int i = 0; i < 400; ++i) {
    const auto s = random_spec(ctx, rng, FamilyTag{FamilyKind::R2, 0});
    const auto f = build_f(s);
    if (!classify(f).contains(1)) continue;
    const auto r = invert_f(s);
    EXPECT_TRUE(r.verified);
    EXPECT_TRUE(undoes(f, r.table));
    ++checked;
  }
  EXPECT_GT(checked, 20);
}

TEST(InvertF, RandomPolynomialH) {
  for (auto [p, n] : Fields{{3, 1}, {2, 2}, {5, 1}, {2, 3}}) {
    const auto ctx = FieldCtx::build(p, n);
    std::mt19937_64 rng(60 + p * n);
    int checked = 0;
    for (int i = 0; i < 3000 && checked < 20; ++i) {
      const auto s = random_spec(ctx, rng, random_poly(ctx->ext(), rng, 1 + static_cast<int>(rng() % 6)));
      const auto f = build_f(s);
      if (!classify(f).contains(1)) continue;
      EXPECT_TRUE(undoes(f, invert_f(s).table));
      ++checked;
    }
    EXPECT_GT(checked, 0);
  }
}

TEST(InvertF, NotInjective) {
  const auto ctx = FieldCtx::build(3, 1);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const auto s = random_spec(ctx, rng, FamilyTag{FamilyKind::R2, 0});
    if (classify(build_f(s)).contains(1)) continue;
    EXPECT_EQ(code_of([&] { invert_f(s); }), ErrorCode::NotInjective);
    return;
  }
  FAIL() << "no non-permutation drawn";
}

TEST(InvertF, SquareClosedFormBranches) {
  int hits_alpha0 = 0, hits_beta0 = 0;
  for (auto [p, n] : Fields{{2, 2}, {3, 1}, {5, 1}, {2, 3}, {3, 2}}) {
    const auto ctx = FieldCtx::build(p, n);
    std::mt19937_64 rng(90 + p * n);
    for (int i = 0; i < 600; ++i) {
      const auto s = random_spec(ctx, rng, FamilyTag{FamilyKind::R2, 0});
      const auto K = family_constants(s, derive(s));
      const auto closed = invert_f_square(s);
      const bool branch1 = K.alpha.is_zero() && !K.beta.is_zero();
      const bool branch2 = !K.alpha.is_zero() && K.beta.is_zero() && p == 2;
      ASSERT_EQ(closed.has_value(), branch1 || branch2);
      if (!closed) continue;
      hits_alpha0 += branch1;
      hits_beta0 += branch2;
      EXPECT_TRUE(undoes(build_f(s), *closed));
      EXPECT_EQ(*closed, invert_f(s).table);
    }
  }
  EXPECT_GT(hits_alpha0, 0);
  EXPECT_GT(hits_beta0, 0);
}

TEST(InvertF, SquareClosedFormNeedsSquare) {
  const auto ctx = FieldCtx::build(3, 1);
  std::mt19937_64 rng(4);
  const auto s = random_spec(ctx, rng, FamilyTag{FamilyKind::R3, 0});
  EXPECT_EQ(code_of([&] { invert_f_square(s); }), ErrorCode::PreconditionViolated);
}

TEST(InvolutionOfG, Examples) {
  const auto F4 = GaloisField::build(2, 2);
  EXPECT_EQ(involution_of_g(*F4, from_ints(*F4, {0, 1, 1}).table()), 1u);
  for (unsigned n : {2u, 3u, 4u}) {
    const auto F = GaloisField::build(2, n);
    for (std::uint32_t beta = 1; beta < F->size(); ++beta) {
      for (std::uint32_t gamma : {0u, 1u, F->size() - 1}) {
        const DensePoly g(F.get(), {gamma, beta, 1});
        EXPECT_EQ(involution_of_g(*F, g.table()), beta);
      }
    }
  }
}

TEST(InvolutionOfG, Errors) {
  const auto F8 = GaloisField::build(2, 3);
  EXPECT_EQ(code_of([&] { involution_of_g(*F8, {0, 0, 1, 2, 1, 2, 3, 3}); }), ErrorCode::FibersNotTranslations);
  EXPECT_EQ(code_of([&] { involution_of_g(*F8, {0, 1, 2, 3, 4, 5, 6, 7}); }), ErrorCode::NotTwoToOne);
  const auto F5 = GaloisField::build(5, 1);
  EXPECT_EQ(code_of([&] { involution_of_g(*F5, {0, 1, 4, 4, 1}); }), ErrorCode::WrongCharacteristic);
}

TEST(InvolutionOfF, QPlusOneOverF4) {
  const auto ctx = FieldCtx::build(2, 1);
  std::mt19937_64 rng(41);
  int checked = 0;
  for (int i = 0; i < 300; ++i) {
    const auto s = random_spec(ctx, rng, FamilyTag{FamilyKind::RQplus1, 0});
    const auto f = build_f(s);
    if (!classify(f).contains(2)) continue;
    const auto r = involution_of_f(s);
    EXPECT_TRUE(r.verified);
    for (std::uint32_t x = 0; x < f.size(); ++x) {
      EXPECT_NE(r.table[x], x);
      EXPECT_EQ(r.table[r.table[x]], x);
      EXPECT_EQ(f[r.table[x]], f[x]);
    }
    ++checked;
  }
  EXPECT_GT(checked, 10);
}

TEST(InvolutionOfF, ZeroUDropsTheTail) {
  const auto ctx = FieldCtx::build(2, 3);
  std::mt19937_64 rng(42);
  int checked = 0;
  for (int i = 0; i < 2000 && checked < 10; ++i) {
    auto s = random_spec(ctx, rng, FamilyTag{FamilyKind::R2, 0});
    s.u = ctx->zero2();
    const auto f = build_f(s);
    if (!classify(f).contains(2)) continue;
    const auto r = involution_of_f(s);
    ASSERT_EQ(r.route, "translation");
    const auto dc = derive(s);
    const Fq2 shift = dc.xik_inv * ctx->embed(ctx->e1(*r.alpha));
    for (std::uint32_t x = 0; x < f.size(); ++x) {
      const Fq2 X = ctx->e2(x);
      const Fq2 y = s.a * ctx->conj(X) + s.b * X + s.c;
      const Fq2 expect = s.a / dc.A * (y * y + (y + shift) * (y + shift)) + X;
      EXPECT_EQ(r.table[x], expect.index());
    }
    ++checked;
  }
  EXPECT_EQ(checked, 10);
}

TEST(InvolutionOfF, GeneralFormMatchesTranslationForm) {
  for (unsigned n : {1u, 2u, 3u}) {
    const auto ctx = FieldCtx::build(2, n);
    std::mt19937_64 rng(43 + n);
    int checked = 0;
    for (int i = 0; i < 3000 && checked < 15; ++i) {
      const auto kind = n >= 2 && i % 2 ? FamilyKind::R4 : FamilyKind::R2;
      const auto s = random_spec(ctx, rng, FamilyTag{kind, 0});
      const auto dc = derive(s);
      const auto htab = h_table(s);
      const auto f = build_f(s, &htab);
      if (!classify(f).contains(2)) continue;
      const auto g = build_g(s, dc, &htab);
      const auto r = involution_of_f(s, dc, f, g, false, &htab);
      Table ig(ctx->q());
      for (std::uint32_t x = 0; x < ctx->q(); ++x) ig[x] = ctx->base().add(x, *r.alpha);
      EXPECT_EQ(involution_general(s, dc, f, ig, htab), r.table);
      ++checked;
    }
    EXPECT_GT(checked, 0);
  }
}

TEST(InvolutionOfF, FourToOneIsRejected) {
  const auto ctx = FieldCtx::build(2, 2);
  std::mt19937_64 rng(44);
  for (int i = 0; i < 20000; ++i) {
    const auto s = random_spec(ctx, rng, FamilyTag{FamilyKind::R4, 0});
    if (!classify(build_f(s)).contains(4)) continue;
    try {
      involution_of_f(s);
      FAIL() << "expected NotTwoToOne";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::NotTwoToOne);
      EXPECT_NE(std::string(e.what()).find("{4}"), std::string::npos) << e.what();
    }
    return;
  }
  FAIL() << "no 4-to-1 instance drawn";
}

TEST(InvolutionOfF, OddCharacteristic) {
  const auto ctx = FieldCtx::build(3, 1);
  std::mt19937_64 rng(45);
  const auto s = random_spec(ctx, rng, FamilyTag{FamilyKind::R2, 0});
  EXPECT_EQ(code_of([&] { involution_of_f(s); }), ErrorCode::WrongCharacteristic);
}

TEST(InvolutionOfF, PairingFallbackForNonTranslationG) {
  const auto ctx = FieldCtx::build(2, 3);
  std::mt19937_64 rng(46);
  int checked = 0;
  for (int i = 0; i < 20000 && checked < 3; ++i) {
    const auto s = random_spec(ctx, rng, FamilyTag{FamilyKind::RQ2Q2_div2, 0});
    const auto dc = derive(s);
    const auto htab = h_table(s);
    const auto f = build_f(s, &htab);
    if (!classify(f).contains(2)) continue;
    const auto g = build_g(s, dc, &htab);
    if (code_of([&] { involution_of_g(ctx->base(), g); }) != ErrorCode::FibersNotTranslations) continue;
    EXPECT_EQ(code_of([&] { involution_of_f(s, dc, f, g, false, &htab); }), ErrorCode::NoTranslationInvolution);
    const auto r = involution_of_f(s);
    EXPECT_EQ(r.route, "pairing");
    EXPECT_TRUE(r.verified);
    ++checked;
  }
  EXPECT_EQ(checked, 3);
}
