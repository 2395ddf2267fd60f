#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include <json.hpp>

#include "mto1/element.hpp"
#include "mto1/galois_field.hpp"

namespace mto1 {

// Absolute trace F_{2^m} -> F_2 of a raw element.
int abs_trace(const GaloisField& field, std::uint32_t x);
// Smallest e >= 0 with base^e = y, if any.
std::optional<std::uint64_t> discrete_log(const GaloisField& field, std::uint32_t y, std::uint32_t base);

// The tower F_p < F_q < F_{q^2}. F_q is built on its own modulus and mapped
// into F_{q^2} through a fixed root of that modulus.
class FieldCtx {
 public:
  static std::shared_ptr<const FieldCtx> build(std::uint32_t p, unsigned n,
                                               std::uint64_t size_cap = kDefaultSizeCap);
  static std::shared_ptr<const FieldCtx> from_json(const nlohmann::json& j,
                                                   std::uint64_t size_cap = kDefaultSizeCap);
  nlohmann::json to_json() const;

  std::uint32_t p() const noexcept { return p_; }
  unsigned n() const noexcept { return n_; }
  std::uint32_t q() const noexcept { return q_; }
  std::uint32_t q2() const noexcept { return q_ * q_; }

  const GaloisField& ext() const noexcept { return *fq2_; }
  const GaloisField& base() const noexcept { return *fq_; }
  const GaloisField* ext_ptr() const noexcept { return fq2_.get(); }
  const GaloisField* base_ptr() const noexcept { return fq_.get(); }

  Fq2 e2(std::uint32_t idx) const { return {fq2_.get(), idx}; }
  Fq e1(std::uint32_t idx) const { return {fq_.get(), idx}; }
  Fq2 zero2() const { return e2(0); }
  Fq2 one2() const { return e2(1); }
  Fq zero1() const { return e1(0); }
  Fq one1() const { return e1(1); }
  Fq2 int2(std::int64_t v) const { return Fq2::from_int(fq2_.get(), v); }
  Fq int1(std::int64_t v) const { return Fq::from_int(fq_.get(), v); }

  Fq2 xi() const { return e2(fq2_->generator()); }
  Fq2 xi_pow(std::int64_t e) const { return xi().pow(e); }

  Fq2 conj(Fq2 x) const { return e2(conj_[x.index()]); }
  std::uint32_t conj_raw(std::uint32_t x) const noexcept { return conj_[x]; }
  Fq2 embed(Fq x) const { return e2(embed_[x.index()]); }
  std::uint32_t embed_raw(std::uint32_t x) const noexcept { return embed_[x]; }
  bool in_subfield(Fq2 x) const noexcept { return project_[x.index()] != kNone; }
  Fq project(Fq2 x) const;
  // kNone when x is not in F_q.
  std::uint32_t project_raw(std::uint32_t x) const noexcept { return project_[x]; }
  static constexpr std::uint32_t kNone = 0xffffffffU;

  Fq trace(Fq2 x) const { return project(x + conj(x)); }
  Fq norm(Fq2 x) const { return project(x * conj(x)); }

  int abs_trace_base(Fq x) const { return abs_trace(*fq_, x.index()); }
  int abs_trace_ext(Fq2 x) const { return abs_trace(*fq2_, x.index()); }
  // Quadratic character on F_q; q must be odd.
  int quad_char(Fq x) const;

  // The k in [1, q+1] with b = xi^{(q-1)k} a^q.
  unsigned find_k(Fq2 a, Fq2 b) const;

  const fp_poly::Poly& irr_q() const { return fq_->modulus(); }
  const fp_poly::Poly& irr_q2() const { return fq2_->modulus(); }

 private:
  FieldCtx() = default;
  void build_maps();

  std::uint32_t p_ = 2;
  unsigned n_ = 1;
  std::uint32_t q_ = 2;
  FieldPtr fq_;
  FieldPtr fq2_;
  std::vector<std::uint32_t> conj_;
  std::vector<std::uint32_t> embed_;
  std::vector<std::uint32_t> project_;
};

using CtxPtr = std::shared_ptr<const FieldCtx>;

}  // namespace mto1
