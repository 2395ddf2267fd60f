#include "mto1/reduction.hpp"

#include <string>

namespace mto1 {

void validate(const MapSpec& spec) {
  if (!spec.ctx) throw Error(ErrorCode::InvalidSpec, "spec has no field");
  const auto& ctx = *spec.ctx;
  if (spec.a * ctx.conj(spec.a) != spec.b * ctx.conj(spec.b)) {
    throw Error(ErrorCode::NormMismatch, "a^{q+1} != b^{q+1}");
  }
  if (spec.a * spec.v == spec.b * spec.u) throw Error(ErrorCode::DegenerateAB, "a v == b u");
  if (const auto* p = std::get_if<DensePoly>(&spec.h)) {
    if (p->field != ctx.ext_ptr() && !p->c.empty()) {
      throw Error(ErrorCode::InvalidSpec, "h must have coefficients in F_{q^2}");
    }
  }
}

DerivedConstants derive(const MapSpec& spec) {
  validate(spec);
  const auto& ctx = *spec.ctx;
  const Fq2 a = spec.a, b = spec.b, u = spec.u, v = spec.v;
  DerivedConstants dc;
  dc.A = b * u - a * v;
  dc.B = a * ctx.conj(u) - b * ctx.conj(v);
  dc.k = ctx.find_k(a, b);
  dc.xik = ctx.xi().pow_u(dc.k);
  dc.xik_inv = dc.xik.inv();
  dc.gamma0 = ctx.project(u * ctx.conj(u) - v * ctx.conj(v));

  const Fq2 A = dc.A, B = dc.B;
  const bool ok = A * ctx.conj(A) == B * ctx.conj(B) && ctx.conj(a) * A == b * ctx.conj(B) &&
                  ctx.conj(a) * B == b * ctx.conj(A) && !(a * b * A * B).is_zero() &&
                  A * dc.xik == ctx.conj(B * dc.xik);
  if (!ok) throw Error(ErrorCode::InternalError, "derived constants violate the A/B identities");
  return dc;
}

std::vector<std::uint32_t> h_table(const MapSpec& spec) {
  const auto& ctx = *spec.ctx;
  const GaloisField& F = ctx.ext();
  if (spec.is_family()) {
    const std::uint64_t r = family_exponent(spec.family(), ctx);
    return tabulate(F.size(), [&](std::uint32_t y) { return F.pow_u(y, r); });
  }
  const auto& poly = std::get<DensePoly>(spec.h);
  if (poly.c.empty()) return std::vector<std::uint32_t>(F.size(), 0);
  return poly.table();
}

std::vector<std::uint32_t> build_f(const MapSpec& spec, const std::vector<std::uint32_t>* htab) {
  validate(spec);
  std::vector<std::uint32_t> local;
  if (!htab) {
    local = h_table(spec);
    htab = &local;
  }
  const auto& ctx = *spec.ctx;
  const GaloisField& F = ctx.ext();
  const auto a = spec.a.index(), b = spec.b.index(), c = spec.c.index(), u = spec.u.index(),
             v = spec.v.index();
  return tabulate(F.size(), [&](std::uint32_t x) {
    const std::uint32_t xq = ctx.conj_raw(x);
    const std::uint32_t y = F.add(F.add(F.mul(a, xq), F.mul(b, x)), c);
    return F.add((*htab)[y], F.add(F.mul(u, xq), F.mul(v, x)));
  });
}

namespace {

// g extended to all of F_{q^2} by the same formula.
struct GRaw {
  const FieldCtx& ctx;
  const std::vector<std::uint32_t>& htab;
  std::uint32_t Axik, Bxik, xik_inv, c, gamma0;

  std::uint32_t operator()(std::uint32_t x) const {
    const GaloisField& F = ctx.ext();
    const std::uint32_t y = F.add(F.mul(xik_inv, x), c);
    const std::uint32_t h = htab[y];
    return F.add(F.add(F.mul(Axik, ctx.conj_raw(h)), F.mul(Bxik, h)), F.mul(gamma0, x));
  }
};

GRaw make_graw(const MapSpec& spec, const DerivedConstants& dc, const std::vector<std::uint32_t>& htab) {
  const auto& ctx = *spec.ctx;
  return GRaw{ctx,
              htab,
              (dc.A * dc.xik).index(),
              (dc.B * dc.xik).index(),
              dc.xik_inv.index(),
              spec.c.index(),
              ctx.embed(dc.gamma0).index()};
}

}  // namespace

std::vector<std::uint32_t> build_g(const MapSpec& spec, const DerivedConstants& dc,
                                   const std::vector<std::uint32_t>* htab) {
  std::vector<std::uint32_t> local;
  if (!htab) {
    local = h_table(spec);
    htab = &local;
  }
  const auto& ctx = *spec.ctx;
  const GRaw g = make_graw(spec, dc, *htab);
  return tabulate(ctx.q(), [&](std::uint32_t x) {
    const std::uint32_t val = g(ctx.embed_raw(x));
    const std::uint32_t r = ctx.project_raw(val);
    if (r == FieldCtx::kNone) throw Error(ErrorCode::ValueNotInSubfield, "g left F_q");
    return r;
  });
}

std::vector<std::uint32_t> build_g(const MapSpec& spec) { return build_g(spec, derive(spec)); }

std::vector<std::uint32_t> lambda_table(const MapSpec& spec, const DerivedConstants& dc) {
  const auto& ctx = *spec.ctx;
  const GaloisField& F = ctx.ext();
  const std::uint32_t xa = (dc.xik * spec.a).index(), xb = (dc.xik * spec.b).index();
  return tabulate(F.size(), [&](std::uint32_t x) {
    const std::uint32_t val = F.add(F.mul(xa, ctx.conj_raw(x)), F.mul(xb, x));
    const std::uint32_t r = ctx.project_raw(val);
    if (r == FieldCtx::kNone) throw Error(ErrorCode::InternalError, "lambda left F_q");
    return r;
  });
}

DensePoly g_poly(const MapSpec& spec) {
  const auto g = build_g(spec);
  return interpolate(spec.ctx->base(), g);
}

bool check_commute(const MapSpec& spec) { return check_commute(spec, derive(spec)); }

bool check_commute(const MapSpec& spec, const DerivedConstants& dc) {
  const auto& ctx = *spec.ctx;
  const GaloisField& F = ctx.ext();
  const auto htab = h_table(spec);
  const auto f = build_f(spec, &htab);
  const GRaw g = make_graw(spec, dc, htab);
  const std::uint32_t xA = (dc.xik * dc.A).index(), xB = (dc.xik * dc.B).index();
  const std::uint32_t xa = (dc.xik * spec.a).index(), xb = (dc.xik * spec.b).index();
  for (std::uint32_t x = 0; x < F.size(); ++x) {
    const std::uint32_t lhs = F.add(F.mul(xA, ctx.conj_raw(f[x])), F.mul(xB, f[x]));
    const std::uint32_t lam = F.add(F.mul(xa, ctx.conj_raw(x)), F.mul(xb, x));
    if (ctx.project_raw(lam) == FieldCtx::kNone || ctx.project_raw(lhs) == FieldCtx::kNone) return false;
    if (lhs != g(lam)) return false;
  }
  return true;
}

ReductionVerdict reduce_classify(const MapSpec& spec, std::uint32_t m) {
  const auto dc = derive(spec);
  const auto g = build_g(spec, dc);
  return reduce_classify(spec, dc, m, g);
}

ReductionVerdict reduce_classify(const MapSpec& spec, const DerivedConstants& dc, std::uint32_t m,
                                 std::span<const std::uint32_t> g_values) {
  const auto& ctx = *spec.ctx;
  const std::uint32_t q = ctx.q();
  if (m < 1 || m > q) {
    throw Error(ErrorCode::MOutOfRange, "m = " + std::to_string(m) + " outside [1, " + std::to_string(q) + "]");
  }
  const auto lam = lambda_table(spec, dc);
  std::vector<std::uint32_t> fibre(q, 0);
  for (auto s : lam) ++fibre[s];
  for (auto s : fibre) {
    if (s != q) throw Error(ErrorCode::InternalError, "lambda fibre of size != q");
  }
  ReductionVerdict v;
  v.divides = q % m == 0;
  const auto cls = classify(g_values);
  v.g_m_to_1 = cls.contains(m);
  v.m_to_1 = v.divides && v.g_m_to_1;
  if (v.g_m_to_1) {
    std::uint64_t lifted = 0;
    for (auto s : cls.exceptional.at(m)) lifted += fibre[s];
    v.lifted_exceptional = lifted;
    if (v.divides && lifted != (static_cast<std::uint64_t>(q) * q) % m) {
      throw Error(ErrorCode::InternalError, "lifted exceptional count disagrees with q^2 mod m");
    }
  }
  return v;
}

Fq2 element_from_json(const FieldCtx& ctx, const nlohmann::json& j) {
  if (j.is_object() && j.contains("xi_pow")) return ctx.xi_pow(j.at("xi_pow").get<std::int64_t>());
  if (!j.is_array()) throw Error(ErrorCode::InvalidSpec, "element must be a coefficient array or {xi_pow: e}");
  auto c = j.get<std::vector<std::uint32_t>>();
  if (c.size() > 2 * ctx.n()) throw Error(ErrorCode::InvalidSpec, "element has more than 2n coefficients");
  return ctx.e2(ctx.ext().from_coeffs(c));
}

MapSpec spec_from_json(const nlohmann::json& j, std::uint64_t size_cap) {
  MapSpec spec;
  try {
    spec.ctx = FieldCtx::from_json(j.at("field"), size_cap);
    const auto& ctx = *spec.ctx;
    spec.a = element_from_json(ctx, j.at("a"));
    spec.b = element_from_json(ctx, j.at("b"));
    spec.c = element_from_json(ctx, j.value("c", nlohmann::json::array()));
    spec.u = element_from_json(ctx, j.value("u", nlohmann::json::array()));
    spec.v = element_from_json(ctx, j.value("v", nlohmann::json::array()));
    const auto& h = j.at("h");
    const auto type = h.at("type").get<std::string>();
    if (type == "poly") {
      std::vector<std::uint32_t> coeffs;
      for (const auto& e : h.at("coeffs")) coeffs.push_back(element_from_json(ctx, e).index());
      spec.h = DensePoly(ctx.ext_ptr(), std::move(coeffs));
    } else if (type == "family") {
      const auto name = h.at("kind").get<std::string>();
      const auto kind = parse_family(name);
      if (!kind) throw Error(ErrorCode::InvalidSpec, "unknown family kind '" + name + "'");
      FamilyTag tag{*kind, 0};
      if (*kind == FamilyKind::RQT1) {
        const auto t = h.at("t").get<std::uint64_t>();
        unsigned jexp = 0;
        std::uint64_t acc = 1;
        while (acc < t) {
          acc *= ctx.p();
          ++jexp;
        }
        if (acc != t) throw Error(ErrorCode::InvalidSpec, "t must be a power of the characteristic");
        tag.param = jexp;
      } else if (*kind == FamilyKind::RPS || *kind == FamilyKind::RPS1) {
        tag.param = h.at("s").get<unsigned>();
      }
      spec.h = tag;
    } else {
      throw Error(ErrorCode::InvalidSpec, "h.type must be 'poly' or 'family'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidSpec, std::string("map spec: ") + e.what());
  }
  return spec;
}

nlohmann::json spec_to_json(const MapSpec& spec) {
  const auto& ctx = *spec.ctx;
  nlohmann::json j{{"field", ctx.to_json()},
                   {"a", spec.a.coeffs()},
                   {"b", spec.b.coeffs()},
                   {"c", spec.c.coeffs()},
                   {"u", spec.u.coeffs()},
                   {"v", spec.v.coeffs()}};
  if (spec.is_family()) {
    const auto& tag = spec.family();
    nlohmann::json h{{"type", "family"}, {"kind", family_name(tag.kind)}};
    if (tag.kind == FamilyKind::RQT1) h["t"] = ipow(ctx.p(), tag.param);
    if (tag.kind == FamilyKind::RPS || tag.kind == FamilyKind::RPS1) h["s"] = tag.param;
    j["h"] = h;
  } else {
    j["h"] = {{"type", "poly"}, {"coeffs", coeffs_json(std::get<DensePoly>(spec.h))}};
  }
  return j;
}

}  // namespace mto1
