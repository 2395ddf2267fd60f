#include "mto1/field_ctx.hpp"

#include <string>

namespace mto1 {

int abs_trace(const GaloisField& field, std::uint32_t x) {
  if (field.characteristic() != 2) {
    throw Error(ErrorCode::WrongCharacteristic, "absolute trace needs characteristic 2");
  }
  std::uint32_t acc = 0, cur = x;
  for (unsigned i = 0; i < field.degree(); ++i) {
    acc = field.add(acc, cur);
    cur = field.mul(cur, cur);
  }
  if (acc > 1) throw Error(ErrorCode::InternalError, "trace left the prime field");
  return static_cast<int>(acc);
}

std::optional<std::uint64_t> discrete_log(const GaloisField& field, std::uint32_t y, std::uint32_t base) {
  if (y == 0 || base == 0) throw Error(ErrorCode::ZeroInput, "discrete log of or to zero");
  const std::uint64_t n = field.group_order();
  const std::uint64_t ly = field.log(y), lb = field.log(base);
  // e * lb = ly (mod n)
  const std::uint64_t g = gcd_u64(lb, n);
  if (ly % g != 0) return std::nullopt;
  const std::uint64_t mod = n / g;
  if (mod == 1) return 0;
  const std::int64_t m = static_cast<std::int64_t>(mod);
  std::int64_t r0 = m, r1 = static_cast<std::int64_t>((lb / g) % mod), s0 = 0, s1 = 1;
  while (r1 != 0) {
    const std::int64_t qt = r0 / r1;
    std::int64_t t = r0 - qt * r1;
    r0 = r1;
    r1 = t;
    t = s0 - qt * s1;
    s0 = s1;
    s1 = t;
  }
  std::int64_t inv = s0 % m;
  if (inv < 0) inv += m;
  const unsigned __int128 e = static_cast<unsigned __int128>(ly / g) * static_cast<std::uint64_t>(inv);
  return static_cast<std::uint64_t>(e % mod);
}

namespace {

void check_tower_params(std::uint32_t p, unsigned n, std::uint64_t size_cap) {
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  if (n == 0) throw Error(ErrorCode::DegreeZero, "extension degree must be >= 1");
  std::uint64_t size = 1;
  for (unsigned i = 0; i < 2 * n; ++i) {
    size *= p;
    if (size > size_cap) {
      throw Error(ErrorCode::SizeCapExceeded, "p^(2n) = " + std::to_string(p) + "^" + std::to_string(2 * n) +
                                                  " exceeds cap " + std::to_string(size_cap));
    }
  }
}

}  // namespace

std::shared_ptr<const FieldCtx> FieldCtx::build(std::uint32_t p, unsigned n, std::uint64_t size_cap) {
  check_tower_params(p, n, size_cap);
  auto ctx = std::shared_ptr<FieldCtx>(new FieldCtx());
  ctx->p_ = p;
  ctx->n_ = n;
  ctx->q_ = static_cast<std::uint32_t>(ipow(p, n));
  ctx->fq_ = GaloisField::build(p, n, size_cap);
  ctx->fq2_ = GaloisField::build(p, 2 * n, size_cap);
  ctx->build_maps();
  return ctx;
}

std::shared_ptr<const FieldCtx> FieldCtx::from_json(const nlohmann::json& j, std::uint64_t size_cap) {
  std::uint32_t p = 0;
  unsigned n = 0;
  fp_poly::Poly irr_q, irr_q2;
  std::vector<std::uint32_t> xi;
  try {
    p = j.at("p").get<std::uint32_t>();
    n = j.at("n").get<unsigned>();
    if (j.contains("irr_q")) irr_q = j.at("irr_q").get<fp_poly::Poly>();
    if (j.contains("irr_q2")) irr_q2 = j.at("irr_q2").get<fp_poly::Poly>();
    if (j.contains("xi")) xi = j.at("xi").get<std::vector<std::uint32_t>>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidSpec, std::string("field spec: ") + e.what());
  }
  check_tower_params(p, n, size_cap);
  if (irr_q.empty() && irr_q2.empty() && xi.empty()) return build(p, n, size_cap);
  if (irr_q.size() != n + 1) throw Error(ErrorCode::InvalidSpec, "irr_q must have n+1 coefficients");
  if (irr_q2.size() != 2 * n + 1) throw Error(ErrorCode::InvalidSpec, "irr_q2 must have 2n+1 coefficients");
  if (!xi.empty() && xi.size() != 2 * n) throw Error(ErrorCode::InvalidSpec, "xi must have 2n coefficients");
  auto ctx = std::shared_ptr<FieldCtx>(new FieldCtx());
  ctx->p_ = p;
  ctx->n_ = n;
  ctx->q_ = static_cast<std::uint32_t>(ipow(p, n));
  ctx->fq_ = GaloisField::with_modulus(p, irr_q, {}, size_cap);
  ctx->fq2_ = GaloisField::with_modulus(p, irr_q2, xi, size_cap);
  ctx->build_maps();
  return ctx;
}

nlohmann::json FieldCtx::to_json() const {
  return {{"p", p_},
          {"n", n_},
          {"irr_q", fq_->modulus()},
          {"irr_q2", fq2_->modulus()},
          {"xi", fq2_->coeffs(fq2_->generator())}};
}

void FieldCtx::build_maps() {
  const GaloisField& big = *fq2_;
  const std::uint32_t size2 = big.size();
  conj_.resize(size2);
  for (std::uint32_t x = 0; x < size2; ++x) conj_[x] = big.frobenius(x, n_);

  const auto& f = fq_->modulus();
  auto eval = [&](std::uint32_t t) {
    std::uint32_t acc = 0;
    for (std::size_t i = f.size(); i-- > 0;) acc = big.add(big.mul(acc, t), big.from_int(f[i]));
    return acc;
  };
  std::uint32_t theta = kNone;
  for (std::uint32_t key = 0; key < size2; ++key) {
    const std::uint32_t t = big.from_lex_key(key);
    if (eval(t) == 0) {
      theta = t;
      break;
    }
  }
  if (theta == kNone) throw Error(ErrorCode::InternalError, "modulus of F_q has no root in F_{q^2}");

  embed_.resize(q_);
  project_.assign(size2, kNone);
  for (std::uint32_t x = 0; x < q_; ++x) {
    const auto c = fq_->coeffs(x);
    std::uint32_t acc = 0;
    for (std::size_t i = c.size(); i-- > 0;) acc = big.add(big.mul(acc, theta), big.from_int(c[i]));
    embed_[x] = acc;
    project_[acc] = x;
  }
}

Fq FieldCtx::project(Fq2 x) const {
  const std::uint32_t r = project_[x.index()];
  if (r == kNone) throw Error(ErrorCode::ValueNotInSubfield, "value is not fixed by x -> x^q");
  return e1(r);
}

int FieldCtx::quad_char(Fq x) const {
  if (p_ == 2) throw Error(ErrorCode::EvenCharacteristic, "quadratic character needs odd q");
  if (x.is_zero()) return 0;
  return x.pow_u((q_ - 1) / 2).is_one() ? 1 : -1;
}

unsigned FieldCtx::find_k(Fq2 a, Fq2 b) const {
  if (a.is_zero()) throw Error(ErrorCode::PreconditionViolated, "find_k needs a != 0");
  if (a * conj(a) != b * conj(b)) throw Error(ErrorCode::PreconditionViolated, "a^{q+1} != b^{q+1}");
  const Fq2 ratio = b / conj(a);
  const auto e = discrete_log(*fq2_, ratio.index(), xi().pow_u(q_ - 1).index());
  if (!e) throw Error(ErrorCode::InternalError, "norm-one element outside <xi^(q-1)>");
  return *e == 0 ? q_ + 1 : static_cast<unsigned>(*e);
}

}  // namespace mto1
