#include "mto1/galois_field.hpp"

#include <algorithm>
#include <string>

namespace mto1 {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::DegreeZero: return "DegreeZero";
    case ErrorCode::SizeCapExceeded: return "SizeCapExceeded";
    case ErrorCode::NotIrreducible: return "NotIrreducible";
    case ErrorCode::NotPrimitive: return "NotPrimitive";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::ZeroToNegativePower: return "ZeroToNegativePower";
    case ErrorCode::WrongCharacteristic: return "WrongCharacteristic";
    case ErrorCode::EvenCharacteristic: return "EvenCharacteristic";
    case ErrorCode::ZeroInput: return "ZeroInput";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::MOutOfRange: return "MOutOfRange";
    case ErrorCode::NormMismatch: return "NormMismatch";
    case ErrorCode::DegenerateAB: return "DegenerateAB";
    case ErrorCode::ValueNotInSubfield: return "ValueNotInSubfield";
    case ErrorCode::LeadingZero: return "LeadingZero";
    case ErrorCode::ZeroLeading: return "ZeroLeading";
    case ErrorCode::IndivisibleExponent: return "IndivisibleExponent";
    case ErrorCode::DegreeTooHigh: return "DegreeTooHigh";
    case ErrorCode::NoMatchingRow: return "NoMatchingRow";
    case ErrorCode::NotAPermutation: return "NotAPermutation";
    case ErrorCode::NotInjective: return "NotInjective";
    case ErrorCode::NotTwoToOne: return "NotTwoToOne";
    case ErrorCode::FibersNotTranslations: return "FibersNotTranslations";
    case ErrorCode::NoTranslationInvolution: return "NoTranslationInvolution";
    case ErrorCode::VerificationFailed: return "VerificationFailed";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::InternalError: return "InternalError";
  }
  return "Unknown";
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::uint64_t ipow(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
  while (b != 0) {
    const std::uint64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

namespace fp_poly {

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

namespace {

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  // p is prime and small; Fermat is fine here.
  std::uint64_t r = 1, b = a % p, e = p - 2;
  while (e > 0) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

Poly rem(Poly f, const Poly& g, std::uint32_t p) {
  trim(f);
  const std::size_t dg = g.size() - 1;
  const std::uint32_t lead_inv = inv_mod(g.back(), p);
  while (f.size() >= g.size()) {
    const std::uint64_t factor = static_cast<std::uint64_t>(f.back()) * lead_inv % p;
    const std::size_t shift = f.size() - 1 - dg;
    for (std::size_t i = 0; i <= dg; ++i) {
      const std::uint64_t sub = factor * g[i] % p;
      f[shift + i] = static_cast<std::uint32_t>((f[shift + i] + p - sub) % p);
    }
    trim(f);
  }
  return f;
}

}  // namespace

Poly mul_mod(const Poly& f, const Poly& g, const Poly& modulus, std::uint32_t p) {
  if (f.empty() || g.empty()) return {};
  Poly prod(f.size() + g.size() - 1, 0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] == 0) continue;
    for (std::size_t j = 0; j < g.size(); ++j) {
      prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + static_cast<std::uint64_t>(f[i]) * g[j]) % p);
    }
  }
  return rem(std::move(prod), modulus, p);
}

Poly pow_mod(const Poly& base, std::uint64_t e, const Poly& modulus, std::uint32_t p) {
  Poly result{1};
  Poly b = rem(base, modulus, p);
  while (e > 0) {
    if (e & 1) result = mul_mod(result, b, modulus, p);
    e >>= 1;
    if (e > 0) b = mul_mod(b, b, modulus, p);
  }
  return rem(result, modulus, p);
}

Poly gcd(Poly f, Poly g, std::uint32_t p) {
  trim(f);
  trim(g);
  while (!g.empty()) {
    Poly r = rem(f, g, p);
    f = std::move(g);
    g = std::move(r);
  }
  return f;
}

bool is_irreducible(const Poly& f_in, std::uint32_t p) {
  Poly f = f_in;
  trim(f);
  if (f.size() < 2) return false;
  const std::size_t d = f.size() - 1;
  if (d == 1) return true;
  // Ben-Or: no factor of degree i <= d/2 iff gcd(f, x^{p^i} - x) = 1.
  Poly xp{0, 1};
  for (std::size_t i = 1; i <= d / 2; ++i) {
    xp = pow_mod(xp, p, f, p);
    Poly diff = xp;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = (diff[1] + p - 1) % p;
    trim(diff);
    if (diff.empty()) return false;
    const Poly g = gcd(f, diff, p);
    if (g.size() > 1) return false;
  }
  return true;
}

Poly smallest_irreducible(std::uint32_t p, unsigned degree) {
  const std::uint64_t count = ipow(p, degree);
  for (std::uint64_t key = 0; key < count; ++key) {
    Poly f(degree + 1, 0);
    std::uint64_t k = key;
    for (unsigned i = degree; i-- > 0;) {  // c_0 is the most significant digit
      f[i] = static_cast<std::uint32_t>(k % p);
      k /= p;
    }
    f[degree] = 1;
    if (is_irreducible(f, p)) return f;
  }
  throw Error(ErrorCode::NotIrreducible, "no irreducible polynomial found");
}

}  // namespace fp_poly

namespace {

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

void check_field_params(std::uint32_t p, unsigned degree, std::uint64_t size_cap) {
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  if (degree == 0) throw Error(ErrorCode::DegreeZero, "extension degree must be >= 1");
  std::uint64_t size = 1;
  for (unsigned i = 0; i < degree; ++i) {
    size *= p;
    if (size > size_cap) {
      throw Error(ErrorCode::SizeCapExceeded, "field of size " + std::to_string(p) + "^" +
                                                  std::to_string(degree) + " exceeds cap " +
                                                  std::to_string(size_cap));
    }
  }
}

}  // namespace

FieldPtr GaloisField::build(std::uint32_t p, unsigned degree, std::uint64_t size_cap) {
  check_field_params(p, degree, size_cap);
  return with_modulus(p, fp_poly::smallest_irreducible(p, degree), {}, size_cap);
}

FieldPtr GaloisField::with_modulus(std::uint32_t p, fp_poly::Poly modulus,
                                   std::span<const std::uint32_t> generator_coeffs,
                                   std::uint64_t size_cap) {
  fp_poly::trim(modulus);
  const unsigned degree = modulus.empty() ? 0 : static_cast<unsigned>(modulus.size() - 1);
  check_field_params(p, degree, size_cap);
  for (auto c : modulus) {
    if (c >= p) throw Error(ErrorCode::InvalidSpec, "modulus coefficient out of range");
  }
  if (modulus.back() != 1) throw Error(ErrorCode::InvalidSpec, "modulus must be monic");
  if (!fp_poly::is_irreducible(modulus, p)) {
    throw Error(ErrorCode::NotIrreducible, "modulus is reducible over F_" + std::to_string(p));
  }
  auto field = std::shared_ptr<GaloisField>(new GaloisField());
  field->p_ = p;
  field->degree_ = degree;
  field->size_ = static_cast<std::uint32_t>(ipow(p, degree));
  field->modulus_ = std::move(modulus);
  field->build_tables(generator_coeffs);
  return field;
}

void GaloisField::build_tables(std::span<const std::uint32_t> generator_coeffs) {
  const std::uint32_t n = group_order();
  const auto factors = prime_factors(n);
  auto is_primitive = [&](const fp_poly::Poly& g) {
    if (n == 1) return !g.empty() && g[0] == 1 && std::all_of(g.begin() + 1, g.end(), [](auto c) { return c == 0; });
    for (auto l : factors) {
      fp_poly::Poly r = fp_poly::pow_mod(g, n / l, modulus_, p_);
      if (r.size() == 1 && r[0] == 1) return false;
    }
    return true;
  };

  fp_poly::Poly gen;
  if (!generator_coeffs.empty()) {
    if (generator_coeffs.size() != degree_) {
      throw Error(ErrorCode::InvalidSpec, "generator has wrong number of coefficients");
    }
    gen.assign(generator_coeffs.begin(), generator_coeffs.end());
    for (auto c : gen) {
      if (c >= p_) throw Error(ErrorCode::InvalidSpec, "generator coefficient out of range");
    }
    fp_poly::trim(gen);
    if (gen.empty() || !is_primitive(gen)) {
      throw Error(ErrorCode::NotPrimitive, "given generator does not have full order");
    }
  } else {
    for (std::uint32_t key = 1; key < size_; ++key) {
      fp_poly::Poly cand = coeffs(from_lex_key(key));
      fp_poly::trim(cand);
      if (is_primitive(cand)) {
        gen = std::move(cand);
        break;
      }
    }
  }
  {
    fp_poly::Poly full = gen;
    full.resize(degree_, 0);
    generator_ = from_coeffs(full);
  }

  // Multiplication by the generator is F_p-linear; column j is gen * t^j.
  std::vector<std::vector<std::uint32_t>> cols(degree_);
  for (unsigned j = 0; j < degree_; ++j) {
    fp_poly::Poly tj(j + 1, 0);
    tj[j] = 1;
    fp_poly::Poly c = fp_poly::mul_mod(gen, tj, modulus_, p_);
    c.resize(degree_, 0);
    cols[j] = std::move(c);
  }

  exp_.assign(2 * static_cast<std::size_t>(n), 0);
  log_.assign(size_, 0);
  std::vector<std::uint32_t> cur(degree_, 0), next(degree_, 0);
  cur[0] = 1;
  std::vector<std::uint32_t> col_masks;
  if (p_ == 2) {
    col_masks.resize(degree_);
    for (unsigned j = 0; j < degree_; ++j) col_masks[j] = from_coeffs(cols[j]);
  }
  std::uint32_t cur_idx = 1;
  for (std::uint32_t i = 0; i < n; ++i) {
    exp_[i] = cur_idx;
    exp_[i + n] = cur_idx;
    log_[cur_idx] = i;
    if (p_ == 2) {
      std::uint32_t nxt = 0;
      for (unsigned j = 0; j < degree_; ++j) {
        if ((cur_idx >> j) & 1U) nxt ^= col_masks[j];
      }
      cur_idx = nxt;
    } else {
      std::fill(next.begin(), next.end(), 0);
      for (unsigned j = 0; j < degree_; ++j) {
        if (cur[j] == 0) continue;
        for (unsigned r = 0; r < degree_; ++r) {
          next[r] = static_cast<std::uint32_t>((next[r] + static_cast<std::uint64_t>(cur[j]) * cols[j][r]) % p_);
        }
      }
      cur.swap(next);
      cur_idx = from_coeffs(cur);
    }
  }

  neg_table_.resize(size_);
  for (std::uint32_t x = 0; x < size_; ++x) {
    std::uint32_t out = 0, mult = 1, v = x;
    for (unsigned i = 0; i < degree_; ++i) {
      const std::uint32_t d = v % p_;
      v /= p_;
      out += ((p_ - d) % p_) * mult;
      mult *= p_;
    }
    neg_table_[x] = out;
  }
  if (p_ != 2 && size_ <= 1024) {
    add_table_.resize(static_cast<std::size_t>(size_) * size_);
    for (std::uint32_t x = 0; x < size_; ++x) {
      for (std::uint32_t y = 0; y < size_; ++y) add_table_[static_cast<std::size_t>(x) * size_ + y] = add_digits(x, y);
    }
  }
}

std::uint32_t GaloisField::add_digits(std::uint32_t x, std::uint32_t y) const noexcept {
  std::uint32_t out = 0, mult = 1;
  for (unsigned i = 0; i < degree_; ++i) {
    const std::uint32_t s = (x % p_ + y % p_) % p_;
    out += s * mult;
    x /= p_;
    y /= p_;
    mult *= p_;
  }
  return out;
}

std::uint32_t GaloisField::inv(std::uint32_t x) const {
  if (x == 0) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  const std::uint32_t n = group_order();
  return exp_[(n - log_[x]) % n];
}

std::uint32_t GaloisField::div(std::uint32_t x, std::uint32_t y) const {
  if (y == 0) throw Error(ErrorCode::DivisionByZero, "division by zero");
  return mul(x, inv(y));
}

std::uint32_t GaloisField::pow_u(std::uint32_t x, std::uint64_t e) const noexcept {
  if (x == 0) return e == 0 ? 1 : 0;
  const std::uint64_t n = group_order();
  return exp_[(static_cast<std::uint64_t>(log_[x]) * (e % n)) % n];
}

std::uint32_t GaloisField::pow(std::uint32_t x, std::int64_t e) const {
  if (e >= 0) return pow_u(x, static_cast<std::uint64_t>(e));
  if (x == 0) throw Error(ErrorCode::ZeroToNegativePower, "0 raised to a negative power");
  const std::int64_t n = group_order();
  std::int64_t r = e % n;
  if (r < 0) r += n;
  return pow_u(x, static_cast<std::uint64_t>(r));
}

std::uint32_t GaloisField::log(std::uint32_t x) const {
  if (x == 0) throw Error(ErrorCode::ZeroInput, "logarithm of zero");
  return log_[x];
}

std::uint32_t GaloisField::frobenius(std::uint32_t x, std::uint64_t times) const noexcept {
  const std::uint64_t n = group_order();
  std::uint64_t e = 1 % n, b = p_ % n;
  while (times > 0) {
    if (times & 1) e = e * b % n;
    b = b * b % n;
    times >>= 1;
  }
  if (x == 0) return 0;
  if (e == 0) e = n;  // only reachable when n == 1
  return pow_u(x, e);
}

std::uint32_t GaloisField::from_int(std::int64_t v) const noexcept {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return static_cast<std::uint32_t>(r);
}

std::vector<std::uint32_t> GaloisField::coeffs(std::uint32_t x) const {
  std::vector<std::uint32_t> out(degree_);
  for (unsigned i = 0; i < degree_; ++i) {
    out[i] = x % p_;
    x /= p_;
  }
  return out;
}

std::uint32_t GaloisField::from_coeffs(std::span<const std::uint32_t> c) const {
  if (c.size() > degree_) throw Error(ErrorCode::InvalidSpec, "too many coefficients for field element");
  std::uint32_t out = 0, mult = 1;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] >= p_) throw Error(ErrorCode::InvalidSpec, "coefficient out of range [0, p)");
    out += c[i] * mult;
    mult *= p_;
  }
  return out;
}

std::uint32_t GaloisField::lex_key(std::uint32_t x) const noexcept {
  std::uint32_t key = 0;
  for (unsigned i = 0; i < degree_; ++i) {
    key = key * p_ + x % p_;
    x /= p_;
  }
  return key;
}

std::uint32_t GaloisField::from_lex_key(std::uint32_t key) const noexcept {
  // Digit reversal is an involution.
  return lex_key(key);
}

std::uint32_t GaloisField::element_order(std::uint32_t x) const {
  if (x == 0) throw Error(ErrorCode::ZeroInput, "order of zero");
  const std::uint32_t n = group_order();
  return static_cast<std::uint32_t>(n / gcd_u64(n, log_[x]));
}

}  // namespace mto1
