#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "mto1/field_ctx.hpp"
#include "mto1/oracle.hpp"

using namespace mto1;

namespace {

std::vector<std::uint32_t> poly_table(const GaloisField& F, const std::vector<std::int64_t>& coeffs) {
  return tabulate(F.size(), [&](std::uint32_t x) {
    std::uint32_t acc = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = F.add(F.mul(acc, x), F.from_int(coeffs[i]));
    return acc;
  });
}

}  // namespace

TEST(FiberHistogram, IdentityOnF5) {
  const auto F = GaloisField::build(5, 1);
  const auto h = fiber_histogram(poly_table(*F, {0, 1}));
  ASSERT_EQ(h.size(), 5u);
  for (const auto& [img, n] : h) EXPECT_EQ(n, 1u);
}

TEST(FiberHistogram, ConstantOnF5) {
  const auto F = GaloisField::build(5, 1);
  const auto h = fiber_histogram(poly_table(*F, {2}));
  ASSERT_EQ(h.size(), 1u);
  EXPECT_EQ(h.at(2), 5u);
}

TEST(FiberHistogram, CubicOnF5) {
  const auto F = GaloisField::build(5, 1);
  const auto t = poly_table(*F, {1, 1, 0, 1});
  EXPECT_EQ(t, (std::vector<std::uint32_t>{1, 3, 1, 1, 4}));
  EXPECT_EQ(fiber_histogram(t), (Histogram{{1, 3}, {3, 1}, {4, 1}}));
}

TEST(Classify, CubicOnF5IsThreeToOne) {
  const auto F = GaloisField::build(5, 1);
  const auto c = classify(poly_table(*F, {1, 1, 0, 1}));
  EXPECT_EQ(c.valid_ms, (std::vector<std::uint32_t>{3}));
  EXPECT_EQ(c.exceptional.at(3), (std::vector<std::uint32_t>{1, 4}));
}

TEST(Classify, IdentityIsOneToOne) {
  for (auto [p, n] : std::vector<std::pair<unsigned, unsigned>>{{2, 3}, {3, 2}, {7, 1}}) {
    const auto F = GaloisField::build(p, n);
    const auto c = classify(poly_table(*F, {0, 1}));
    EXPECT_EQ(c.valid_ms, (std::vector<std::uint32_t>{1}));
    EXPECT_TRUE(c.exceptional.at(1).empty());
  }
}

TEST(Classify, SquareOnF5) {
  const auto F = GaloisField::build(5, 1);
  const auto c = classify(poly_table(*F, {0, 0, 1}));
  EXPECT_EQ(c.valid_ms, (std::vector<std::uint32_t>{2}));
  EXPECT_EQ(c.exceptional.at(2), (std::vector<std::uint32_t>{0}));
}

TEST(Classify, SmallHistograms) {
  const std::vector<std::uint32_t> two_one{0, 0, 1};
  EXPECT_EQ(classify(two_one).valid_ms, (std::vector<std::uint32_t>{2}));
  const std::vector<std::uint32_t> konst{5, 5, 5, 5};
  EXPECT_EQ(classify(konst).valid_ms, (std::vector<std::uint32_t>{4}));
  const std::vector<std::uint32_t> three_one{0, 0, 0, 1};
  EXPECT_EQ(classify(three_one).valid_ms, (std::vector<std::uint32_t>{3}));
  const std::vector<std::uint32_t> two_two{0, 0, 1, 1};
  EXPECT_EQ(classify(two_two).valid_ms, (std::vector<std::uint32_t>{2}));
  const std::vector<std::uint32_t> ragged{0, 0, 0, 1, 1, 2};
  EXPECT_TRUE(classify(ragged).valid_ms.empty());
}

TEST(Classify, DomainLabels) {
  const std::vector<std::uint32_t> images{7, 7, 9};
  const std::vector<std::uint32_t> labels{10, 11, 12};
  const auto c = classify(images, labels);
  EXPECT_EQ(c.exceptional.at(2), (std::vector<std::uint32_t>{12}));
}

TEST(IsMTo1, Examples) {
  const auto F7 = GaloisField::build(7, 1);
  EXPECT_TRUE(is_m_to_1(poly_table(*F7, {0, 0, 0, 1}), 3));
  const auto F8 = GaloisField::build(2, 3);
  EXPECT_TRUE(is_m_to_1(poly_table(*F8, {0, 0, 0, 1}), 1));
  const auto F5 = GaloisField::build(5, 1);
  EXPECT_FALSE(is_m_to_1(poly_table(*F5, {1, 1, 0, 1}), 2));
}

TEST(IsMTo1, MOutOfRange) {
  const std::vector<std::uint32_t> t{0, 1, 2};
  for (std::uint64_t m : {0ull, 4ull}) {
    try {
      is_m_to_1(t, m);
      FAIL() << "expected MOutOfRange";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::MOutOfRange);
    }
  }
}

TEST(MonomialLaw, GcdToOneOnMultiplicativeGroup) {
  for (auto [p, n] : std::vector<std::pair<unsigned, unsigned>>{
           {2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}, {11, 1}, {13, 1}, {2, 4}}) {
    const auto F = GaloisField::build(p, n);
    std::vector<std::uint32_t> domain(F->size() - 1);
    std::iota(domain.begin(), domain.end(), 1u);
    for (std::uint64_t e = 1; e <= 30; ++e) {
      std::vector<std::uint32_t> img;
      for (auto x : domain) img.push_back(F->pow_u(x, e));
      const auto c = classify(img, domain);
      const std::uint32_t d = static_cast<std::uint32_t>(std::gcd<std::uint64_t>(e, F->size() - 1));
      ASSERT_TRUE(c.contains(d)) << "q=" << F->size() << " e=" << e;
      EXPECT_TRUE(c.exceptional.at(d).empty());
    }
  }
}

TEST(FiberCounter, AgreesWithClassifyOnRandomMaps) {
  std::mt19937_64 rng(7);
  FiberCounter fc(16);
  for (int trial = 0; trial < 300; ++trial) {
    const std::uint32_t n = 1 + rng() % 16;
    const std::uint32_t range = 1 + rng() % 16;
    std::vector<std::uint32_t> img(n);
    for (auto& y : img) y = static_cast<std::uint32_t>(rng() % range);
    fc.count(img);
    const auto c = classify(img);
    EXPECT_EQ(fc.valid_ms(), c.valid_ms);
    for (std::uint32_t m = 1; m <= n; ++m) EXPECT_EQ(fc.valid(m), is_m_to_1(img, m));
  }
}

TEST(ClassificationJson, Shape) {
  const auto F = GaloisField::build(5, 1);
  const auto j = to_json(classify(poly_table(*F, {1, 1, 0, 1})));
  EXPECT_EQ(j.at("domain_size"), 5);
  EXPECT_EQ(j.at("valid_ms"), nlohmann::json::array({3}));
  EXPECT_EQ(j.at("exceptional").at("3"), nlohmann::json::array({1, 4}));
  EXPECT_EQ(j.at("histogram").size(), 3u);
}
