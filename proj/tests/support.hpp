#pragma once

#include <random>
#include <variant>

#include "mto1/reduction.hpp"

namespace mto1::testing {

// a random, b = xi^{(q-1)k} a^q, c, u random and v with av != bu.
inline MapSpec random_spec(const CtxPtr& ctx, std::mt19937_64& rng, std::variant<DensePoly, FamilyTag> h) {
  const GaloisField& F = ctx->ext();
  const std::uint32_t Q2 = F.size();
  MapSpec s;
  s.ctx = ctx;
  s.a = ctx->e2(F.exp(rng() % (Q2 - 1)));
  const unsigned k = 1 + static_cast<unsigned>(rng() % (ctx->q() + 1));
  s.b = ctx->xi_pow(static_cast<std::int64_t>(ctx->q() - 1) * k) * ctx->conj(s.a);
  s.c = ctx->e2(static_cast<std::uint32_t>(rng() % Q2));
  s.u = ctx->e2(static_cast<std::uint32_t>(rng() % Q2));
  do {
    s.v = ctx->e2(static_cast<std::uint32_t>(rng() % Q2));
  } while (s.a * s.v == s.b * s.u);
  s.h = std::move(h);
  return s;
}

inline DensePoly random_poly(const GaloisField& F, std::mt19937_64& rng, int max_degree) {
  std::vector<std::uint32_t> c(static_cast<std::size_t>(max_degree) + 1);
  for (auto& x : c) x = static_cast<std::uint32_t>(rng() % F.size());
  return DensePoly(&F, std::move(c));
}

inline MapSpec simple_spec(const CtxPtr& ctx, Fq2 a, Fq2 b, Fq2 c, Fq2 u, Fq2 v,
                           std::variant<DensePoly, FamilyTag> h) {
  MapSpec s;
  s.ctx = ctx;
  s.a = a;
  s.b = b;
  s.c = c;
  s.u = u;
  s.v = v;
  s.h = std::move(h);
  return s;
}

}  // namespace mto1::testing
