#include "mto1/inverse.hpp"

#include <functional>
#include <numeric>

namespace mto1 {

namespace {

using Table = std::vector<std::uint32_t>;
using Eval = std::function<std::uint32_t(std::uint32_t)>;

Table tabulate_eval(const GaloisField& F, const Eval& fn) {
  return tabulate(F.size(), [&](std::uint32_t x) { return fn(x); });
}

bool undoes(const Table& g, const Table& ginv) {
  for (std::uint32_t x = 0; x < g.size(); ++x) {
    if (ginv[g[x]] != x) return false;
  }
  return true;
}

bool is_kth_power(const GaloisField& F, std::uint32_t a, std::uint64_t k) {
  if (a == 0) return true;
  const std::uint64_t N = F.group_order();
  return F.pow_u(a, N / gcd_u64(k, N)) == 1;
}

bool non_square(const GaloisField& F, std::uint32_t a) { return a != 0 && !is_kth_power(F, a, 2); }

// Exponent sum_{j=0}^{i} Q^{j r} reduced modulo the group order.
std::uint64_t geometric_exponent(std::uint64_t Q_r, unsigned terms, std::uint64_t N) {
  std::uint64_t acc = 0, term = 1;
  for (unsigned j = 0; j < terms; ++j) {
    acc = (acc + term) % N;
    term = term * (Q_r % N) % N;
  }
  return acc;
}

// C(n, k) mod p by Lucas.
std::uint32_t binom_mod(std::uint64_t n, std::uint64_t k, std::uint32_t p) {
  std::uint64_t r = 1;
  while (n > 0 || k > 0) {
    const std::uint64_t ni = n % p, ki = k % p;
    if (ki > ni) return 0;
    std::uint64_t c = 1;
    for (std::uint64_t i = 0; i < ki; ++i) c = c * (ni - i) % p;
    std::uint64_t d = 1;
    for (std::uint64_t i = 1; i <= ki; ++i) d = d * i % p;
    std::uint64_t dinv = 1, base = d, e = p - 2;
    while (e > 0) {
      if (e & 1) dinv = dinv * base % p;
      base = base * base % p;
      e >>= 1;
    }
    r = r * c % p * dinv % p;
    n /= p;
    k /= p;
  }
  return static_cast<std::uint32_t>(r);
}

// k/(k-i) * C(k-i, i) = C(k-i, i) + C(k-i-1, i-1) for i >= 1.
std::uint32_t dickson_coeff(std::uint64_t k, std::uint64_t i, std::uint32_t p) {
  if (i == 0) return 1 % p;
  return (binom_mod(k - i, i, p) + binom_mod(k - i - 1, i - 1, p)) % p;
}

// Inverses of the rows, as evaluators on F given the row parameters.
Eval inv_power(const GaloisField& F, std::uint64_t e) {
  return [&F, e](std::uint32_t x) { return F.pow_u(x, e); };
}

std::uint64_t monomial_inverse_exponent(std::uint32_t q, std::uint32_t d) {
  // a == (1 - q)^{d-2} mod d makes (a q - a + 1) divisible by d.
  const std::int64_t one_minus_q = ((1 - static_cast<std::int64_t>(q % d)) % d + d) % d;
  std::int64_t a = 1;
  for (std::uint32_t i = 0; i + 2 < d; ++i) a = a * one_minus_q % d;
  return (static_cast<std::uint64_t>(a) * q - a + 1) / d;
}

// a^{N/(Q-1)}/(1 - a^{N/(Q-1)})-style sums of the form
// coeff * sum_{i<terms} a^{-(Q^{i+1}-1)/(Q-1)} x^{Q^i}, with Q = p^step.
Eval inv_linearized_sum(const GaloisField& F, std::uint32_t a, std::uint32_t coeff, unsigned step, unsigned terms) {
  const std::uint64_t N = F.group_order();
  const std::uint64_t Q = ipow(F.characteristic(), step);
  std::vector<std::uint32_t> ks(terms);
  const std::uint32_t ainv = F.inv(a);
  for (unsigned i = 0; i < terms; ++i) ks[i] = F.mul(coeff, F.pow_u(ainv, geometric_exponent(Q, i + 1, N)));
  return [&F, ks, step](std::uint32_t x) {
    std::uint32_t acc = 0;
    for (std::size_t i = 0; i < ks.size(); ++i) acc = F.add(acc, F.mul(ks[i], F.frobenius(x, step * i)));
    return acc;
  };
}

Eval inv_sparse(const GaloisField& F, std::vector<std::pair<std::uint32_t, std::uint64_t>> terms) {
  return [&F, terms](std::uint32_t x) {
    std::uint32_t acc = 0;
    for (const auto& [c, e] : terms) acc = F.add(acc, F.mul(c, F.pow_u(x, e)));
    return acc;
  };
}

struct Row {
  int id;
  const char* label;
  std::function<std::optional<Eval>(const GaloisField&, const DensePoly&)> match;
  std::function<std::vector<DensePoly>(const GaloisField&)> instances;
};

DensePoly poly(const GaloisField& F, std::vector<std::uint32_t> c) { return DensePoly(&F, std::move(c)); }

bool zero_at(const DensePoly& g, std::initializer_list<std::size_t> idx) {
  for (auto i : idx) {
    if (g.coeff(i) != 0) return false;
  }
  return true;
}

std::vector<std::uint32_t> s_sequence(const GaloisField& F, std::uint32_t a, std::uint32_t b) {
  // S[i + 1] holds S_i for i = -1 .. n.
  const unsigned n = F.degree();
  std::vector<std::uint32_t> S(n + 2, 0);
  S[0] = 0;
  S[1] = 1;
  for (unsigned i = 1; i <= n; ++i) {
    S[i + 1] = F.add(F.mul(F.frobenius(b, i - 1), S[i]), F.mul(F.frobenius(a, i - 1), S[i - 1]));
  }
  return S;
}

const std::vector<Row>& rows() {
  static const std::vector<Row> table = [] {
    std::vector<Row> r;
    r.push_back({1, "x",
                 [](const GaloisField&, const DensePoly& g) -> std::optional<Eval> {
                   if (g.degree() != 1) return std::nullopt;
                   return Eval([](std::uint32_t x) { return x; });
                 },
                 [](const GaloisField& F) { return std::vector<DensePoly>{poly(F, {0, 1})}; }});
    r.push_back({2, "x^2",
                 [](const GaloisField& F, const DensePoly& g) -> std::optional<Eval> {
                   if (F.characteristic() != 2 || g.degree() != 2 || !zero_at(g, {1})) return std::nullopt;
                   return inv_power(F, F.size() / 2);
                 },
                 [](const GaloisField& F) {
                   if (F.characteristic() != 2) return std::vector<DensePoly>{};
                   return std::vector<DensePoly>{poly(F, {0, 0, 1})};
                 }});
    r.push_back({3, "x^3",
                 [](const GaloisField& F, const DensePoly& g) -> std::optional<Eval> {
                   if (F.size() % 3 == 1 || g.degree() != 3 || !zero_at(g, {1, 2})) return std::nullopt;
                   return inv_power(F, monomial_inverse_exponent(F.size(), 3));
                 },
                 [](const GaloisField& F) {
                   if (F.size() % 3 == 1) return std::vector<DensePoly>{};
                   return std::vector<DensePoly>{poly(F, {0, 0, 0, 1})};
                 }});
    r.push_back({4, "x^3-ax",
                 [](const GaloisField& F, const DensePoly& g) -> std::optional<Eval> {
                   if (F.characteristic() != 3 || g.degree() != 3 || !zero_at(g, {2})) return std::nullopt;
                   const std::uint32_t a = F.neg(g.coeff(1));
                   if (!non_square(F, a)) return std::nullopt;
                   return inv_linearized_sum(F, a, 1, 1, F.degree());
                 },
                 [](const GaloisField& F) {
                   std::vector<DensePoly> out;
                   if (F.characteristic() != 3) return out;
                   for (std::uint32_t a = 1; a < F.size(); ++a) {
                     if (non_square(F, a)) out.push_back(poly(F, {0, F.neg(a), 0, 1}));
                   }
                   return out;
                 }});
    r.push_back({5, "x^4",
                 [](const GaloisField& F, const DensePoly& g) -> std::optional<Eval> {
                   if (F.characteristic() != 2 || F.degree() < 2 || g.degree() != 4 || !zero_at(g, {1, 2, 3})) {
                     return std::nullopt;
                   }
                   return inv_power(F, F.size() / 4);
                 },
                 [](const GaloisField& F) {
                   if (F.characteristic() != 2 || F.degree() < 2) return std::vector<DensePoly>{};
                   return std::vector<DensePoly>{poly(F, {0, 0, 0, 0, 1})};
                 }});
    r.push_back({6, "x^4+-3x",
                 [](const GaloisField& F, const DensePoly& g) -> std::optional<Eval> {
                   if (F.size() != 7 || g.degree() != 4 || !zero_at(g, {2, 3})) return std::nullopt;
                   const std::uint32_t c1 = g.coeff(1);
                   const std::uint32_t three = F.from_int(3);
                   if (c1 != three && c1 != F.neg(three)) return std::nullopt;
                   const std::uint32_t sign = c1 == three ? F.neg(1) : 1;
                   return inv_sparse(F, {{sign, 4}, {F.mul(sign, F.neg(three)), 1}});
                 },
                 [](const GaloisField& F) {
                   if (F.size() != 7) return std::vector<DensePoly>{};
                   return std::vector<DensePoly>{poly(F, {0, F.from_int(3), 0, 0, 1}),
                                                 poly(F, {0, F.from_int(-3), 0, 0, 1})};
                 }});
    r.push_back({7, "x^4+ax",
                 [](const GaloisField& F, const DensePoly& g) -> std::optional<Eval> {
                   if (F.characteristic() != 2 || F.degree() % 2 != 0 || g.degree() != 4 || !zero_at(g, {2, 3})) {
                     return std::nullopt;
                   }
                   const std::uint32_t a = g.coeff(1);
                   if (a == 0 || is_kth_power(F, a, 3)) return std::nullopt;
                   const std::uint32_t t = F.pow_u(a, (F.size() - 1) / 3);
                   return inv_linearized_sum(F, a, F.div(t, F.add(1, t)), 2, F.degree() / 2);
                 },
                 [](const GaloisField& F) {
                   std::vector<DensePoly> out;
                   if (F.characteristic() != 2 || F.degree() % 2 != 0) return out;
                   for (std::uint32_t a = 1; a < F.size(); ++a) {
                     if (!is_kth_power(F, a, 3)) out.push_back(poly(F, {0, a, 0, 0, 1}));
                   }
                   return out;
                 }});
    r.push_back({8, "x^4+bx^2+ax",
                 [](const GaloisField& F, const DensePoly& g) -> std::optional<Eval> {
                   if (F.characteristic() != 2 || g.degree() != 4 || !zero_at(g, {3})) return std::nullopt;
                   const std::uint32_t b = g.coeff(2), a = g.coeff(1);
                   if (a == 0 || b == 0) return std::nullopt;
                   const auto S = s_sequence(F, a, b);
                   const unsigned n = F.degree();
                   auto s_at = [&](int i) { return S[static_cast<std::size_t>(i + 1)]; };
                   if (F.add(s_at(static_cast<int>(n)), F.mul(a, F.mul(s_at(static_cast<int>(n) - 2),
                                                                      s_at(static_cast<int>(n) - 2)))) != 1) {
                     return std::nullopt;
                   }
                   std::vector<std::uint32_t> ks(n);
                   for (unsigned i = 0; i < n; ++i) {
                     const std::uint32_t first = F.frobenius(s_at(static_cast<int>(n) - 2 - static_cast<int>(i)), i + 1);
                     const std::int64_t e = 1 - (std::int64_t{1} << (i + 1));
                     ks[i] = F.add(first, F.mul(F.pow(a, e), s_at(static_cast<int>(i))));
                   }
                   return Eval([&F, ks](std::uint32_t x) {
                     std::uint32_t acc = 0;
                     for (std::size_t i = 0; i < ks.size(); ++i) acc = F.add(acc, F.mul(ks[i], F.frobenius(x, i)));
                     return acc;
                   });
                 },
                 [](const GaloisField& F) {
                   std::vector<DensePoly> out;
                   if (F.characteristic() != 2) return out;
                   const unsigned n = F.degree();
                   for (std::uint32_t b = 1; b < F.size(); ++b) {
                     for (std::uint32_t a = 1; a < F.size(); ++a) {
                       const auto S = s_sequence(F, a, b);
                       const std::uint32_t sn = S[n + 1];
                       const std::uint32_t sn2 = S[n - 1];
                       if (F.add(sn, F.mul(a, F.mul(sn2, sn2))) == 1) out.push_back(poly(F, {0, a, b, 0, 1}));
                     }
                   }
                   return out;
                 }});
    r.push_back({9, "x^5",
                 [](const GaloisField& F, const DensePoly& g) -> std::optional<Eval> {
                   if (F.size() % 5 == 1 || g.degree() != 5 || !zero_at(g, {1, 2, 3, 4})) return std::nullopt;
                   return inv_power(F, monomial_inverse_exponent(F.size(), 5));
                 },
                 [](const GaloisField& F) {
                   if (F.size() % 5 == 1) return std::vector<DensePoly>{};
                   return std::vector<DensePoly>{poly(F, {0, 0, 0, 0, 0, 1})};
                 }});
    r.push_back({10, "x^5+ax",
                 [](const GaloisField& F, const DensePoly& g) -> std::optional<Eval> {
                   if (F.size() != 9 || g.degree() != 5 || !zero_at(g, {2, 3, 4})) return std::nullopt;
                   const std::uint32_t a = g.coeff(1);
                   if (F.mul(a, a) != F.from_int(2)) return std::nullopt;
                   return inv_sparse(F, {{1, 5}, {a, 1}});
                 },
                 [](const GaloisField& F) {
                   std::vector<DensePoly> out;
                   if (F.size() != 9) return out;
                   for (std::uint32_t a = 1; a < F.size(); ++a) {
                     if (F.mul(a, a) == F.from_int(2)) out.push_back(poly(F, {0, a, 0, 0, 0, 1}));
                   }
                   return out;
                 }});
    r.push_back({11, "x^5-ax",
                 [](const GaloisField& F, const DensePoly& g) -> std::optional<Eval> {
                   if (F.characteristic() != 5 || g.degree() != 5 || !zero_at(g, {2, 3, 4})) return std::nullopt;
                   const std::uint32_t a = F.neg(g.coeff(1));
                   if (a == 0 || is_kth_power(F, a, 4)) return std::nullopt;
                   const std::uint32_t t = F.pow_u(a, (F.size() - 1) / 4);
                   return inv_linearized_sum(F, a, F.div(t, F.sub(1, t)), 1, F.degree());
                 },
                 [](const GaloisField& F) {
                   std::vector<DensePoly> out;
                   if (F.characteristic() != 5) return out;
                   for (std::uint32_t a = 1; a < F.size(); ++a) {
                     if (!is_kth_power(F, a, 4)) out.push_back(poly(F, {0, F.neg(a), 0, 0, 0, 1}));
                   }
                   return out;
                 }});
    r.push_back({12, "x^5+-2x^2",
                 [](const GaloisField& F, const DensePoly& g) -> std::optional<Eval> {
                   if (F.size() != 7 || g.degree() != 5 || !zero_at(g, {1, 3, 4})) return std::nullopt;
                   const std::uint32_t c2 = g.coeff(2), two = F.from_int(2);
                   if (c2 != two && c2 != F.neg(two)) return std::nullopt;
                   return inv_sparse(F, {{1, 5}, {F.neg(c2), 2}});
                 },
                 [](const GaloisField& F) {
                   if (F.size() != 7) return std::vector<DensePoly>{};
                   return std::vector<DensePoly>{poly(F, {0, 0, F.from_int(2), 0, 0, 1}),
                                                 poly(F, {0, 0, F.from_int(-2), 0, 0, 1})};
                 }});
    r.push_back({13, "x^5+ax^3+3a^2x",
                 [](const GaloisField& F, const DensePoly& g) -> std::optional<Eval> {
                   if (F.size() != 13 || g.degree() != 5 || !zero_at(g, {2, 4})) return std::nullopt;
                   const std::uint32_t a = g.coeff(3);
                   if (!non_square(F, a) || g.coeff(1) != F.scale(F.mul(a, a), 3)) return std::nullopt;
                   return inv_sparse(F, {{F.neg(F.pow_u(a, 2)), 9},
                                         {F.neg(a), 7},
                                         {F.from_int(4), 5},
                                         {F.scale(F.pow_u(a, 5), 4), 3},
                                         {F.scale(F.pow_u(a, 4), -5), 1}});
                 },
                 [](const GaloisField& F) {
                   std::vector<DensePoly> out;
                   if (F.size() != 13) return out;
                   for (std::uint32_t a = 1; a < F.size(); ++a) {
                     if (non_square(F, a)) out.push_back(poly(F, {0, F.scale(F.mul(a, a), 3), 0, a, 0, 1}));
                   }
                   return out;
                 }});
    r.push_back({14, "x^5+ax^3+a^2x/5",
                 [](const GaloisField& F, const DensePoly& g) -> std::optional<Eval> {
                   const std::uint32_t qm = F.size() % 5;
                   if ((qm != 2 && qm != 3) || g.degree() != 5 || !zero_at(g, {2, 4})) return std::nullopt;
                   const std::uint32_t a = g.coeff(3);
                   const std::uint32_t fifth = F.inv(F.from_int(5));
                   if (a == 0 || g.coeff(1) != F.mul(fifth, F.mul(a, a))) return std::nullopt;
                   const std::uint64_t q = F.size();
                   const std::uint64_t k = (3 * q * q - 2) / 5;
                   const std::uint32_t base = F.pow_u(F.mul(fifth, a), 5);
                   std::vector<std::pair<std::uint32_t, std::uint64_t>> terms;
                   for (std::uint64_t i = 0; i <= k / 2; ++i) {
                     const std::uint32_t c = F.mul(F.from_int(dickson_coeff(k, i, F.characteristic())), F.pow_u(base, i));
                     if (c != 0) terms.emplace_back(c, k - 2 * i);
                   }
                   return inv_sparse(F, std::move(terms));
                 },
                 [](const GaloisField& F) {
                   std::vector<DensePoly> out;
                   const std::uint32_t qm = F.size() % 5;
                   if (qm != 2 && qm != 3) return out;
                   const std::uint32_t fifth = F.inv(F.from_int(5));
                   for (std::uint32_t a = 1; a < F.size(); ++a) {
                     out.push_back(poly(F, {0, F.mul(fifth, F.mul(a, a)), 0, a, 0, 1}));
                   }
                   return out;
                 }});
    r.push_back({15, "x^5-2ax^3+a^2x",
                 [](const GaloisField& F, const DensePoly& g) -> std::optional<Eval> {
                   if (F.characteristic() != 5 || g.degree() != 5 || !zero_at(g, {2, 4})) return std::nullopt;
                   const std::uint32_t a = F.div(g.coeff(3), F.from_int(-2));
                   if (!non_square(F, a) || g.coeff(1) != F.mul(a, a)) return std::nullopt;
                   const std::int64_t q = F.size();
                   const unsigned n = F.degree();
                   std::vector<std::pair<std::uint32_t, std::uint64_t>> terms;
                   for (unsigned i = 0; i < n; ++i) {
                     for (unsigned j = 0; j < n; ++j) {
                       const std::int64_t pi = static_cast<std::int64_t>(ipow(5, i)), pj = static_cast<std::int64_t>(ipow(5, j));
                       const std::int64_t ea = (q - 5 * pi - 5 * pj + 1) / 4;
                       const std::uint64_t ex = static_cast<std::uint64_t>((q + pi + pj - 1) / 2);
                       terms.emplace_back(F.scale(F.pow(a, ea), 2), ex);
                     }
                   }
                   return inv_sparse(F, std::move(terms));
                 },
                 [](const GaloisField& F) {
                   std::vector<DensePoly> out;
                   if (F.characteristic() != 5) return out;
                   for (std::uint32_t a = 1; a < F.size(); ++a) {
                     if (non_square(F, a)) out.push_back(poly(F, {0, F.mul(a, a), 0, F.scale(a, -2), 0, 1}));
                   }
                   return out;
                 }});
    r.push_back({16, "x^5+ax^3+-x^2+3a^2x",
                 [](const GaloisField& F, const DensePoly& g) -> std::optional<Eval> {
                   if (F.size() != 7 || g.degree() != 5 || !zero_at(g, {4})) return std::nullopt;
                   const std::uint32_t a = g.coeff(3), e = g.coeff(2);
                   if (!non_square(F, a) || (e != 1 && e != F.neg(1)) || g.coeff(1) != F.scale(F.mul(a, a), 3)) {
                     return std::nullopt;
                   }
                   return inv_sparse(F, {{1, 5},
                                         {F.mul(e, F.scale(a, 2)), 4},
                                         {F.mul(e, F.from_int(-2)), 2},
                                         {F.mul(a, a), 3},
                                         {a, 1}});
                 },
                 [](const GaloisField& F) {
                   std::vector<DensePoly> out;
                   if (F.size() != 7) return out;
                   for (std::uint32_t a = 1; a < F.size(); ++a) {
                     if (!non_square(F, a)) continue;
                     for (std::uint32_t e : {1u, F.neg(1)}) {
                       out.push_back(poly(F, {0, F.scale(F.mul(a, a), 3), e, a, 0, 1}));
                     }
                   }
                   return out;
                 }});
    return r;
  }();
  return table;
}

}  // namespace

Normalized normalize(const DensePoly& g) {
  const GaloisField& F = *g.field;
  const int d = g.degree();
  if (d > 5) throw Error(ErrorCode::DegreeTooHigh, "normalization covers degree <= 5, got " + std::to_string(d));
  if (d < 1) throw Error(ErrorCode::PreconditionViolated, "cannot normalize a constant");
  Normalized n;
  n.scale = F.inv(g.lead());
  const std::uint32_t ch = F.characteristic();
  if (static_cast<std::uint32_t>(d) % ch != 0) {
    n.shift = F.neg(F.div(g.coeff(d - 1), F.scale(g.lead(), d)));
  } else if (d >= 4 && g.coeff(d - 1) == 0 && g.coeff(d - 2) != 0 && static_cast<std::uint32_t>(d - 2) % ch != 0) {
    n.shift = F.neg(F.div(g.coeff(d - 3), F.scale(g.coeff(d - 2), d - 2)));
  }
  n.offset = F.neg(F.mul(n.scale, g.eval(n.shift)));
  DensePoly r = g.shifted(n.shift).scaled(n.scale);
  r = r + DensePoly(&F, {n.offset});
  n.poly = r;
  return n;
}

Table denormalize_inverse(const Normalized& n, const Table& gbar_inverse) {
  const GaloisField& F = *n.poly.field;
  return tabulate(F.size(), [&](std::uint32_t y) {
    return F.add(gbar_inverse[F.add(F.mul(n.scale, y), n.offset)], n.shift);
  });
}

RowInverse invert_normalized(const DensePoly& gbar) {
  const GaloisField& F = *gbar.field;
  if (gbar.degree() > 5) throw Error(ErrorCode::DegreeTooHigh, "table covers degree <= 5");
  if (gbar.degree() < 1 || gbar.lead() != 1 || gbar.coeff(0) != 0) {
    throw Error(ErrorCode::PreconditionViolated, "polynomial is not normalized");
  }
  for (const auto& row : rows()) {
    auto ev = row.match(F, gbar);
    if (!ev) continue;
    RowInverse out;
    out.row = row.id;
    out.label = row.label;
    out.table = tabulate_eval(F, *ev);
    if (!undoes(gbar.table(), out.table)) {
      throw Error(ErrorCode::VerificationFailed, std::string("row ") + row.label + " does not invert its polynomial");
    }
    return out;
  }
  throw Error(ErrorCode::NoMatchingRow, "no known normalized permutation matches");
}

std::vector<RowInstance> table_row_instances(const GaloisField& F) {
  std::vector<RowInstance> out;
  for (const auto& row : rows()) {
    for (auto& g : row.instances(F)) out.push_back({row.id, row.label, std::move(g)});
  }
  return out;
}

int table_row_count() { return static_cast<int>(rows().size()); }

Table invert_linearized_binomial(const GaloisField& F, unsigned e, std::uint32_t a, unsigned r) {
  if (e == 0 || F.degree() % e != 0) {
    throw Error(ErrorCode::PreconditionViolated, "base field degree must divide the field degree");
  }
  const unsigned n = F.degree() / e;
  if (r < 1 || r >= n) throw Error(ErrorCode::PreconditionViolated, "need 1 <= r <= n - 1");
  const std::uint64_t N = F.group_order();
  Table L = tabulate(F.size(), [&](std::uint32_t x) { return F.sub(F.frobenius(x, e * r), F.mul(a, x)); });
  Table inv;
  if (a == 0) {
    inv = tabulate(F.size(), [&](std::uint32_t x) { return F.frobenius(x, e * (n - r)); });
  } else {
    const unsigned d = std::gcd(n, r);
    const std::uint64_t Qd = ipow(F.characteristic(), e * d);
    const std::uint32_t norm = F.pow_u(a, N / (Qd - 1));
    if (norm == 1) throw Error(ErrorCode::NotAPermutation, "norm of a equals 1");
    const std::uint32_t coeff = F.div(norm, F.sub(1, norm));
    const std::uint64_t Qr = ipow(F.characteristic(), e * r) % N;
    const std::uint32_t ainv = F.inv(a);
    const unsigned terms = n / d;
    std::vector<std::uint32_t> ks(terms);
    for (unsigned i = 0; i < terms; ++i) ks[i] = F.mul(coeff, F.pow_u(ainv, geometric_exponent(Qr, i + 1, N)));
    inv = tabulate(F.size(), [&](std::uint32_t x) {
      std::uint32_t acc = 0;
      for (unsigned i = 0; i < terms; ++i) acc = F.add(acc, F.mul(ks[i], F.frobenius(x, std::uint64_t{e} * r * i)));
      return acc;
    });
  }
  if (!undoes(L, inv)) throw Error(ErrorCode::VerificationFailed, "linearized inverse does not undo L");
  return inv;
}

namespace {

// c_s x^{p^s} + c_0 x + e with s >= 1 and c_s != 0.
struct LinearizedShape {
  unsigned s;
  std::uint32_t cs, c0, e;
};

std::optional<LinearizedShape> linearized_shape(const GaloisField& F, const DensePoly& G) {
  const int d = G.degree();
  if (d < 2) return std::nullopt;
  unsigned s = 0;
  std::uint64_t pw = 1;
  while (pw < static_cast<std::uint64_t>(d)) {
    pw *= F.characteristic();
    ++s;
  }
  if (pw != static_cast<std::uint64_t>(d) || s >= F.degree()) return std::nullopt;
  for (int i = 2; i < d; ++i) {
    if (G.coeff(i) != 0) return std::nullopt;
  }
  return LinearizedShape{s, G.lead(), G.coeff(1), G.coeff(0)};
}

std::optional<GInverse> closed_form_inverse(const GaloisField& F, const Table& G, const std::string& suffix) {
  const DensePoly P = interpolate(F, G);
  if (P.degree() >= 1 && P.degree() <= 5) {
    const Normalized nz = normalize(P);
    try {
      const RowInverse ri = invert_normalized(nz.poly);
      return GInverse{denormalize_inverse(nz, ri.table), "table:" + std::to_string(ri.row) + suffix};
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NoMatchingRow) throw;
    }
  }
  if (auto sh = linearized_shape(F, P)) {
    const std::uint32_t a = F.neg(F.div(sh->c0, sh->cs));
    try {
      const Table Linv = invert_linearized_binomial(F, 1, a, sh->s);
      const std::uint32_t cs_inv = F.inv(sh->cs);
      Table out = tabulate(F.size(), [&](std::uint32_t y) { return Linv[F.mul(cs_inv, F.sub(y, sh->e))]; });
      return GInverse{std::move(out), "linearized" + suffix};
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotAPermutation) throw;
    }
  }
  return std::nullopt;
}

}  // namespace

GInverse invert_permutation_of(const GaloisField& F, const Table& g) {
  const auto cls = classify(g);
  if (!cls.contains(1)) throw Error(ErrorCode::NotAPermutation, "g is not a permutation");
  for (std::uint32_t sigma : {1u, 2u, 3u}) {
    if (gcd_u64(sigma, F.group_order()) != 1) continue;
    Table G = tabulate(F.size(), [&](std::uint32_t x) { return F.pow_u(g[x], sigma); });
    const std::string suffix = sigma == 1 ? "" : ";sigma=x^" + std::to_string(sigma);
    if (auto r = closed_form_inverse(F, G, suffix)) {
      if (sigma != 1) {
        Table out = tabulate(F.size(), [&](std::uint32_t y) { return r->table[F.pow_u(y, sigma)]; });
        r->table = std::move(out);
      }
      if (!undoes(g, r->table)) throw Error(ErrorCode::VerificationFailed, "closed-form g inverse is wrong");
      return *r;
    }
  }
  Table inv(F.size());
  for (std::uint32_t x = 0; x < F.size(); ++x) inv[g[x]] = x;
  return GInverse{std::move(inv), "lookup"};
}

namespace {

// H(z) = h(xi^{-k} z + c) + a^{-1} u xi^{-k} z for z in F_{q^2}.
struct HEval {
  const GaloisField& F;
  const Table& htab;
  std::uint32_t xik_inv, c, auxik_inv;

  std::uint32_t operator()(std::uint32_t z) const {
    const std::uint32_t w = F.mul(xik_inv, z);
    return F.add(htab[F.add(w, c)], F.mul(auxik_inv, z));
  }
};

HEval make_h(const MapSpec& spec, const DerivedConstants& dc, const Table& htab) {
  const GaloisField& F = spec.ctx->ext();
  return HEval{F, htab, dc.xik_inv.index(), spec.c.index(), (spec.a.inv() * spec.u * dc.xik_inv).index()};
}

}  // namespace

InverseResult invert_f(const MapSpec& spec) {
  const auto dc = derive(spec);
  const Table htab = h_table(spec);
  const Table f = build_f(spec, &htab);
  const Table g = build_g(spec, dc, &htab);
  return invert_f(spec, dc, f, g, &htab);
}

InverseResult invert_f(const MapSpec& spec, const DerivedConstants& dc, const Table& f, const Table& g,
                       const Table* htab) {
  Table local;
  if (!htab) {
    local = h_table(spec);
    htab = &local;
  }
  const auto& ctx = *spec.ctx;
  const GaloisField& F = ctx.ext();
  if (!is_m_to_1(f, 1)) throw Error(ErrorCode::NotInjective, "f is not a permutation of F_{q^2}");
  const GInverse gi = invert_permutation_of(ctx.base(), g);
  const HEval H = make_h(spec, dc, *htab);
  const std::uint32_t Axik = (dc.A * dc.xik).index(), Bxik = (dc.B * dc.xik).index();
  const std::uint32_t aAinv = (spec.a / dc.A).index();
  InverseResult out;
  out.g_route = gi.route;
  out.table = tabulate(F.size(), [&](std::uint32_t y) {
    const std::uint32_t lb = ctx.project_raw(F.add(F.mul(Axik, ctx.conj_raw(y)), F.mul(Bxik, y)));
    if (lb == FieldCtx::kNone) throw Error(ErrorCode::InternalError, "lambda-bar left F_q");
    const std::uint32_t z = ctx.embed_raw(gi.table[lb]);
    return F.mul(aAinv, F.sub(H(z), y));
  });
  if (!undoes(f, out.table)) throw Error(ErrorCode::VerificationFailed, "assembled inverse does not undo f");
  out.verified = true;
  return out;
}

std::optional<Table> invert_f_square(const MapSpec& spec) {
  const auto& ctx = *spec.ctx;
  const GaloisField& F = ctx.ext();
  bool square = false;
  if (spec.is_family()) {
    square = spec.family().kind == FamilyKind::R2;
  } else {
    const auto& h = std::get<DensePoly>(spec.h);
    square = h.degree() == 2 && h.coeff(0) == 0 && h.coeff(1) == 0 && h.coeff(2) == 1;
  }
  if (!square) throw Error(ErrorCode::PreconditionViolated, "h is not x^2");
  const auto dc = derive(spec);
  const Fq2 a = spec.a, b = spec.b, c = spec.c, u = spec.u, v = spec.v, A = dc.A, B = dc.B;
  const Fq2 alpha = ctx.conj(a) * ctx.conj(B) + b * B;
  const Fq2 beta = ctx.int2(2) * B * c + ctx.int2(2) * ctx.conj(B) * ctx.conj(c) + u * ctx.conj(u) - v * ctx.conj(v);
  const Fq2 cq = ctx.conj(c);
  const Fq2 C = A * cq * cq + B * c * c;
  std::function<Fq2(Fq2)> phi;
  if (alpha.is_zero() && !beta.is_zero()) {
    phi = [&](Fq2 x) { return (A * ctx.conj(x) + B * x - C) / beta; };
  } else if (!alpha.is_zero() && beta.is_zero() && ctx.p() == 2) {
    phi = [&](Fq2 x) { return a * ((A * ctx.conj(x) + B * x - C) / (b * alpha)).pow_u(ctx.q() / 2); };
  } else {
    return std::nullopt;
  }
  const Fq2 aAinv = a / A, ainv_u = u / a;
  return tabulate(F.size(), [&](std::uint32_t y) {
    const Fq2 x = ctx.e2(y);
    const Fq2 ph = phi(x);
    const Fq2 s = ph + c;
    return (aAinv * (s * s + ainv_u * ph - x)).index();
  });
}

std::uint32_t involution_of_g(const GaloisField& F, const Table& g) {
  if (F.characteristic() != 2) throw Error(ErrorCode::WrongCharacteristic, "involutions need q = 2^n");
  if (!is_m_to_1(g, 2)) throw Error(ErrorCode::NotTwoToOne, "g is not 2-to-1");
  std::uint32_t alpha = 0;
  for (std::uint32_t x = 1; x < F.size(); ++x) {
    if (g[x] == g[0]) {
      alpha = x;
      break;
    }
  }
  for (std::uint32_t x = 0; x < F.size(); ++x) {
    if (g[F.add(x, alpha)] != g[x]) throw Error(ErrorCode::FibersNotTranslations, "fibers of g are not translates");
  }
  return alpha;
}

Table involution_general(const MapSpec& spec, const DerivedConstants& dc, const Table& f, const Table& ig,
                         const Table& htab) {
  const auto& ctx = *spec.ctx;
  const GaloisField& F = ctx.ext();
  const Table lam = lambda_table(spec, dc);
  const HEval H = make_h(spec, dc, htab);
  const std::uint32_t aAinv = (spec.a / dc.A).index();
  return tabulate(F.size(), [&](std::uint32_t x) {
    const std::uint32_t z = ctx.embed_raw(ig[lam[x]]);
    return F.mul(aAinv, F.add(f[x], H(z)));
  });
}

InvolutionResult involution_of_f(const MapSpec& spec, bool allow_pairing) {
  const auto dc = derive(spec);
  const Table htab = h_table(spec);
  const Table f = build_f(spec, &htab);
  const Table g = build_g(spec, dc, &htab);
  return involution_of_f(spec, dc, f, g, allow_pairing, &htab);
}

InvolutionResult involution_of_f(const MapSpec& spec, const DerivedConstants& dc, const Table& f, const Table& g,
                                 bool allow_pairing, const Table* htab) {
  Table local;
  if (!htab) {
    local = h_table(spec);
    htab = &local;
  }
  const auto& ctx = *spec.ctx;
  const GaloisField& F = ctx.ext();
  if (ctx.p() != 2) throw Error(ErrorCode::WrongCharacteristic, "involutions need q = 2^n");
  const auto cls = classify(f);
  if (!cls.contains(2)) {
    std::string ms;
    for (auto m : cls.valid_ms) ms += (ms.empty() ? "" : ",") + std::to_string(m);
    throw Error(ErrorCode::NotTwoToOne, "f is not 2-to-1; valid m: {" + ms + "}");
  }
  InvolutionResult out;
  try {
    const std::uint32_t alpha = involution_of_g(ctx.base(), g);
    out.alpha = alpha;
    out.route = "translation";
    const std::uint32_t da = F.mul(dc.xik_inv.index(), ctx.embed_raw(alpha));
    const std::uint32_t aAinv = (spec.a / dc.A).index();
    const std::uint32_t tail = F.mul((spec.u / dc.A).index(), da);
    const auto a = spec.a.index(), b = spec.b.index(), c = spec.c.index();
    out.table = tabulate(F.size(), [&](std::uint32_t x) {
      const std::uint32_t y = F.add(F.add(F.mul(a, ctx.conj_raw(x)), F.mul(b, x)), c);
      const std::uint32_t s = F.add((*htab)[y], (*htab)[F.add(y, da)]);
      return F.add(F.add(F.mul(aAinv, s), x), tail);
    });
  } catch (const Error& e) {
    if (e.code() != ErrorCode::FibersNotTranslations) throw;
    if (!allow_pairing) throw Error(ErrorCode::NoTranslationInvolution, "g has no translation involution");
    Table ig(ctx.q(), FieldCtx::kNone);
    Table first(ctx.q(), FieldCtx::kNone);
    for (std::uint32_t x = 0; x < ctx.q(); ++x) {
      const std::uint32_t y = g[x];
      if (first[y] == FieldCtx::kNone) {
        first[y] = x;
      } else {
        ig[x] = first[y];
        ig[first[y]] = x;
      }
    }
    out.route = "pairing";
    out.table = involution_general(spec, dc, f, ig, *htab);
  }
  for (std::uint32_t x = 0; x < F.size(); ++x) {
    const std::uint32_t y = out.table[x];
    if (y == x || out.table[y] != x || f[y] != f[x]) {
      throw Error(ErrorCode::VerificationFailed, "I_f is not a fixed-point-free involution preserving f");
    }
  }
  out.verified = true;
  return out;
}

}  // namespace mto1
