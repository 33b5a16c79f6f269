#pragma once

// Exact field arithmetic: GF(p) for 64-bit primes p, GF(p^k) extensions, and
// arbitrary-precision rationals.  Elements carry their own field context so
// the linear-algebra and tensor templates stay field-generic.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "sgap/errors.hpp"
#include "sgap/rng.hpp"

namespace sgap {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

inline std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod_u64(r, a, p);
    a = mulmod_u64(a, a, p);
    e >>= 1;
  }
  return r;
}

// Inverse of a modulo m (gcd(a, m) must be 1).
inline std::uint64_t mod_inverse_u64(std::uint64_t a, std::uint64_t m) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(m), new_r = static_cast<std::int64_t>(a % m);
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    t -= q * new_t;
    std::swap(t, new_t);
    r -= q * new_r;
    std::swap(r, new_r);
  }
  if (r != 1) throw singular_error("element has no modular inverse");
  if (t < 0) t += static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(t);
}

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  // deterministic Miller-Rabin for 64-bit inputs
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) d >>= 1, ++s;
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod_u64(a % n, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// GF(p)

class Fp {
 public:
  Fp() : v_(0), p_(0) {}
  Fp(std::uint64_t v, std::uint64_t p) : v_(v % p), p_(p) {}

  static Fp from_int(std::int64_t n, std::uint64_t p) {
    std::int64_t r = n % static_cast<std::int64_t>(p);
    if (r < 0) r += static_cast<std::int64_t>(p);
    return Fp(static_cast<std::uint64_t>(r), p);
  }

  std::uint64_t value() const { return v_; }
  std::uint64_t modulus() const { return p_; }
  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1 % p_; }

  Fp operator+(const Fp& o) const {
    check(o);
    std::uint64_t s = v_ + o.v_;
    if (s >= p_) s -= p_;
    return raw(s, p_);
  }
  Fp operator-(const Fp& o) const {
    check(o);
    return raw(v_ >= o.v_ ? v_ - o.v_ : v_ + p_ - o.v_, p_);
  }
  Fp operator-() const { return raw(v_ == 0 ? 0 : p_ - v_, p_); }
  Fp operator*(const Fp& o) const {
    check(o);
    return raw(mulmod_u64(v_, o.v_, p_), p_);
  }
  Fp inv() const {
    if (v_ == 0) throw singular_error("inverse of zero in GF(p)");
    return raw(mod_inverse_u64(v_, p_), p_);
  }
  Fp operator/(const Fp& o) const { return *this * o.inv(); }
  Fp& operator+=(const Fp& o) { return *this = *this + o; }
  Fp& operator-=(const Fp& o) { return *this = *this - o; }
  Fp& operator*=(const Fp& o) { return *this = *this * o; }

  bool operator==(const Fp& o) const {
    check(o);
    return v_ == o.v_;
  }
  bool operator!=(const Fp& o) const { return !(*this == o); }

  std::string str() const { return std::to_string(v_); }

 private:
  static Fp raw(std::uint64_t v, std::uint64_t p) {
    Fp e;
    e.v_ = v;
    e.p_ = p;
    return e;
  }
  void check(const Fp& o) const {
    if (p_ != o.p_) throw field_mismatch_error("GF(p) moduli differ");
  }
  std::uint64_t v_;
  std::uint64_t p_;
};

// ---------------------------------------------------------------------------
// Polynomials over GF(p), little-endian coefficients; helper layer for GF(p^k).

namespace polygf {

using Poly = std::vector<std::uint64_t>;

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Poly mul(const Poly& a, const Poly& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      c[i + j] = (c[i + j] + static_cast<unsigned __int128>(a[i]) * b[j]) % p;
    }
  }
  trim(c);
  return c;
}

// Remainder of a modulo monic m.
inline Poly mod(Poly a, const Poly& m, std::uint64_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  while (a.size() > dm) {
    const std::uint64_t lead = a.back();
    const std::size_t shift = a.size() - 1 - dm;
    if (lead != 0) {
      for (std::size_t i = 0; i <= dm; ++i) {
        std::uint64_t sub = mulmod_u64(lead, m[i], p);
        std::uint64_t& tgt = a[i + shift];
        tgt = (tgt >= sub) ? tgt - sub : tgt + p - sub;
      }
    }
    a.pop_back();
    trim(a);
  }
  return a;
}

inline Poly mulmod(const Poly& a, const Poly& b, const Poly& m, std::uint64_t p) {
  return mod(mul(a, b, p), m, p);
}

inline Poly powmod(Poly base, BigInt e, const Poly& m, std::uint64_t p) {
  Poly r = {1};
  base = mod(std::move(base), m, p);
  while (e > 0) {
    if ((e & 1) != 0) r = mulmod(r, base, m, p);
    base = mulmod(base, base, m, p);
    e >>= 1;
  }
  return r;
}

inline Poly gcd(Poly a, Poly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    // reduce a mod b (b not necessarily monic: scale)
    std::uint64_t lead_inv = mod_inverse_u64(b.back(), p);
    Poly bm = b;
    for (auto& c : bm) c = mulmod_u64(c, lead_inv, p);
    a = mod(std::move(a), bm, p);
    std::swap(a, b);
  }
  return a;
}

// g -= x, in place (g is already reduced mod f, so degree < deg f).
inline Poly minus_x(Poly g, std::uint64_t p) {
  if (g.size() < 2) g.resize(2, 0);
  g[1] = (g[1] >= 1) ? g[1] - 1 : p - 1;
  trim(g);
  return g;
}

// Rabin's test: f (monic, degree k) is irreducible over GF(p) iff
// x^(p^k) == x mod f and gcd(x^(p^(k/q)) - x, f) = 1 for every prime q | k.
inline bool is_irreducible(const Poly& f, std::uint64_t p) {
  const std::size_t k = f.size() - 1;
  if (k == 0) return false;
  const Poly x = {0, 1};
  BigInt pk = 1;
  for (std::size_t i = 0; i < k; ++i) pk *= p;
  if (!minus_x(powmod(x, pk, f, p), p).empty()) return false;
  std::vector<std::size_t> primes;
  std::size_t rest = k;
  for (std::size_t q = 2; q * q <= rest; ++q) {
    if (rest % q) continue;
    primes.push_back(q);
    while (rest % q == 0) rest /= q;
  }
  if (rest > 1) primes.push_back(rest);
  for (std::size_t q : primes) {
    BigInt e = 1;
    for (std::size_t i = 0; i < k / q; ++i) e *= p;
    Poly g = minus_x(powmod(x, e, f, p), p);
    if (gcd(f, g, p).size() > 1) return false;
  }
  return true;
}

}  // namespace polygf

// ---------------------------------------------------------------------------
// GF(p^k)

struct FqCtx {
  std::uint64_t p = 0;
  unsigned k = 1;
  std::vector<std::uint64_t> modulus;  // monic, size k+1, little-endian

  std::uint64_t size() const {
    std::uint64_t s = 1;
    for (unsigned i = 0; i < k; ++i) s *= p;
    return s;
  }
  bool same(const FqCtx& o) const { return p == o.p && k == o.k && modulus == o.modulus; }
};

using FqCtxPtr = std::shared_ptr<const FqCtx>;

// Lexicographically-first irreducible monic polynomial of degree k over GF(p);
// deterministic so that lifted-field certificates are reproducible.
inline std::shared_ptr<const FqCtx> make_extension(std::uint64_t p, unsigned k) {
  if (!is_prime_u64(p)) throw degenerate_input_error("extension base must be prime");
  if (k < 2) throw degenerate_input_error("extension degree must be >= 2");
  std::uint64_t count = 1;
  for (unsigned i = 0; i < k; ++i) count *= p;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::vector<std::uint64_t> f(k + 1, 0);
    std::uint64_t t = idx;
    for (unsigned i = 0; i < k; ++i) {
      f[i] = t % p;
      t /= p;
    }
    f[k] = 1;
    if (polygf::is_irreducible(f, p)) {
      auto ctx = std::make_shared<FqCtx>();
      ctx->p = p;
      ctx->k = k;
      ctx->modulus = f;
      return ctx;
    }
  }
  throw internal_error("no irreducible polynomial found");
}

class Fq {
 public:
  Fq() = default;
  Fq(std::vector<std::uint64_t> coeffs, std::shared_ptr<const FqCtx> ctx)
      : c_(std::move(coeffs)), ctx_(std::move(ctx)) {
    c_.resize(ctx_->k, 0);
    for (auto& x : c_) x %= ctx_->p;
  }

  static Fq from_int(std::int64_t n, std::shared_ptr<const FqCtx> ctx) {
    std::int64_t r = n % static_cast<std::int64_t>(ctx->p);
    if (r < 0) r += static_cast<std::int64_t>(ctx->p);
    std::vector<std::uint64_t> c(ctx->k, 0);
    c[0] = static_cast<std::uint64_t>(r);
    return Fq(std::move(c), std::move(ctx));
  }
  static Fq from_base(const Fp& e, std::shared_ptr<const FqCtx> ctx) {
    if (e.modulus() != ctx->p) throw field_mismatch_error("lift from wrong base field");
    std::vector<std::uint64_t> c(ctx->k, 0);
    c[0] = e.value();
    return Fq(std::move(c), std::move(ctx));
  }

  const std::vector<std::uint64_t>& coeffs() const { return c_; }
  const std::shared_ptr<const FqCtx>& ctx() const { return ctx_; }

  bool is_zero() const {
    for (auto x : c_)
      if (x) return false;
    return true;
  }
  bool is_one() const {
    if (c_.empty() || c_[0] != 1) return false;
    for (std::size_t i = 1; i < c_.size(); ++i)
      if (c_[i]) return false;
    return true;
  }

  Fq operator+(const Fq& o) const {
    check(o);
    Fq r = *this;
    for (unsigned i = 0; i < ctx_->k; ++i) {
      r.c_[i] += o.c_[i];
      if (r.c_[i] >= ctx_->p) r.c_[i] -= ctx_->p;
    }
    return r;
  }
  Fq operator-(const Fq& o) const {
    check(o);
    Fq r = *this;
    for (unsigned i = 0; i < ctx_->k; ++i) {
      r.c_[i] = (r.c_[i] >= o.c_[i]) ? r.c_[i] - o.c_[i] : r.c_[i] + ctx_->p - o.c_[i];
    }
    return r;
  }
  Fq operator-() const {
    Fq r = *this;
    for (auto& x : r.c_) x = (x == 0) ? 0 : ctx_->p - x;
    return r;
  }
  Fq operator*(const Fq& o) const {
    check(o);
    polygf::Poly prod = polygf::mulmod(c_, o.c_, ctx_->modulus, ctx_->p);
    prod.resize(ctx_->k, 0);
    return Fq(std::move(prod), ctx_);
  }
  Fq inv() const {
    if (is_zero()) throw singular_error("inverse of zero in GF(p^k)");
    // Fermat: a^(q-2)
    return pow_u64(ctx_->size() - 2);
  }
  Fq operator/(const Fq& o) const { return *this * o.inv(); }
  Fq& operator+=(const Fq& o) { return *this = *this + o; }
  Fq& operator-=(const Fq& o) { return *this = *this - o; }
  Fq& operator*=(const Fq& o) { return *this = *this * o; }

  Fq pow_u64(std::uint64_t e) const {
    polygf::Poly r = polygf::powmod(c_, BigInt(e), ctx_->modulus, ctx_->p);
    r.resize(ctx_->k, 0);
    return Fq(std::move(r), ctx_);
  }

  bool operator==(const Fq& o) const {
    check(o);
    return c_ == o.c_;
  }
  bool operator!=(const Fq& o) const { return !(*this == o); }

  std::string str() const {
    std::string s = "[";
    for (unsigned i = 0; i < ctx_->k; ++i) {
      if (i) s += ",";
      s += std::to_string(c_[i]);
    }
    return s + "]";
  }

 private:
  void check(const Fq& o) const {
    if (!ctx_ || !o.ctx_ || !ctx_->same(*o.ctx_)) throw field_mismatch_error("GF(p^k) contexts differ");
  }
  std::vector<std::uint64_t> c_;
  std::shared_ptr<const FqCtx> ctx_;
};

// ---------------------------------------------------------------------------
// Rationals (exact, arbitrary precision)

class Rat {
 public:
  Rat() : v_(0) {}
  explicit Rat(BigRational v) : v_(std::move(v)) {}
  Rat(std::int64_t n) : v_(n) {}
  Rat(std::int64_t n, std::int64_t d) : v_(BigRational(n, d)) {}

  static Rat from_int(std::int64_t n) { return Rat(n); }

  const BigRational& value() const { return v_; }
  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }

  Rat operator+(const Rat& o) const { return Rat(v_ + o.v_); }
  Rat operator-(const Rat& o) const { return Rat(v_ - o.v_); }
  Rat operator-() const { return Rat(-v_); }
  Rat operator*(const Rat& o) const { return Rat(v_ * o.v_); }
  Rat inv() const {
    if (v_ == 0) throw singular_error("inverse of zero rational");
    return Rat(1 / v_);
  }
  Rat operator/(const Rat& o) const { return *this * o.inv(); }
  Rat& operator+=(const Rat& o) { return *this = *this + o; }
  Rat& operator-=(const Rat& o) { return *this = *this - o; }
  Rat& operator*=(const Rat& o) { return *this = *this * o; }

  bool operator==(const Rat& o) const { return v_ == o.v_; }
  bool operator!=(const Rat& o) const { return v_ != o.v_; }

  std::string str() const {
    BigInt num = boost::multiprecision::numerator(v_);
    BigInt den = boost::multiprecision::denominator(v_);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
  }

 private:
  BigRational v_;
};

// ---------------------------------------------------------------------------
// Generic element helpers used by the templated linear algebra.

inline Fp zero_like(const Fp& e) { return Fp(0, e.modulus()); }
inline Fp one_like(const Fp& e) { return Fp(1, e.modulus()); }
inline Fp from_int_like(const Fp& e, std::int64_t n) { return Fp::from_int(n, e.modulus()); }
inline Fq zero_like(const Fq& e) { return Fq::from_int(0, e.ctx()); }
inline Fq one_like(const Fq& e) { return Fq::from_int(1, e.ctx()); }
inline Fq from_int_like(const Fq& e, std::int64_t n) { return Fq::from_int(n, e.ctx()); }
inline Rat zero_like(const Rat&) { return Rat(0); }
inline Rat one_like(const Rat&) { return Rat(1); }
inline Rat from_int_like(const Rat&, std::int64_t n) { return Rat(n); }

// Field size: 0 means infinite.
inline std::uint64_t field_size_like(const Fp& e) { return e.modulus(); }
inline std::uint64_t field_size_like(const Fq& e) { return e.ctx()->size(); }
inline std::uint64_t field_size_like(const Rat&) { return 0; }

// idx-th field element in the fixed enumeration order (finite fields only).
inline Fp element_at_like(const Fp& e, std::uint64_t idx) { return Fp(idx, e.modulus()); }
inline Fq element_at_like(const Fq& e, std::uint64_t idx) {
  const auto& ctx = e.ctx();
  std::vector<std::uint64_t> c(ctx->k, 0);
  for (unsigned i = 0; i < ctx->k; ++i) {
    c[i] = idx % ctx->p;
    idx /= ctx->p;
  }
  return Fq(std::move(c), ctx);
}
inline Rat element_at_like(const Rat&, std::uint64_t) {
  throw degenerate_input_error("rationals cannot be enumerated");
}

// Uniform random element (for rationals: integers from a large window, which
// is what genericity arguments over an infinite field need).
inline Fp sample_like(const Fp& e, Rng& rng) { return Fp(rng.bounded(e.modulus()), e.modulus()); }
inline Fq sample_like(const Fq& e, Rng& rng) {
  const auto& ctx = e.ctx();
  std::vector<std::uint64_t> c(ctx->k, 0);
  for (unsigned i = 0; i < ctx->k; ++i) c[i] = rng.bounded(ctx->p);
  return Fq(std::move(c), ctx);
}
inline Rat sample_like(const Rat&, Rng& rng) { return Rat(rng.range(-(1 << 20), 1 << 20)); }

template <class E>
std::uint64_t field_characteristic_like(const E& e);
template <>
inline std::uint64_t field_characteristic_like<Fp>(const Fp& e) {
  return e.modulus();
}
template <>
inline std::uint64_t field_characteristic_like<Fq>(const Fq& e) {
  return e.ctx()->p;
}
template <>
inline std::uint64_t field_characteristic_like<Rat>(const Rat&) {
  return 0;
}

// ---------------------------------------------------------------------------
// Exact square roots. Odd finite fields use Tonelli-Shanks, with the
// nonresidue found by scanning (half of the nonzero elements qualify).
// Characteristic two squares bijectively, so the root is an iterated square.
// Rationals take exact integer roots of numerator and denominator.

namespace detail {

template <class E>
E pow_like(E base, std::uint64_t e) {
  E out = one_like(base);
  while (e != 0) {
    if (e & 1) out = out * base;
    base = base * base;
    e >>= 1;
  }
  return out;
}

template <class E>
std::optional<E> sqrt_odd_field(const E& a) {
  if (a.is_zero()) return a;
  const std::uint64_t q = field_size_like(a);
  const E one = one_like(a);
  auto is_residue = [&](const E& x) { return pow_like(x, (q - 1) / 2) == one; };
  if (!is_residue(a)) return std::nullopt;
  if (q % 4 == 3) return pow_like(a, (q + 1) / 4);
  std::uint64_t m = q - 1;
  unsigned s = 0;
  while ((m & 1) == 0) {
    m >>= 1;
    ++s;
  }
  E z = one;
  for (std::uint64_t idx = 2; idx < q; ++idx) {
    z = element_at_like(a, idx);
    if (!z.is_zero() && !is_residue(z)) break;
  }
  unsigned order = s;
  E c = pow_like(z, m);
  E t = pow_like(a, m);
  E r = pow_like(a, (m + 1) / 2);
  while (!(t == one)) {
    E walk = t;
    unsigned i = 0;
    while (!(walk == one)) {
      walk = walk * walk;
      ++i;
    }
    E b = c;
    for (unsigned j = 0; j + i + 1 < order; ++j) b = b * b;
    order = i;
    c = b * b;
    t = t * c;
    r = r * b;
  }
  return r;
}

}  // namespace detail

inline std::optional<Fp> sqrt_element(const Fp& a) {
  if (a.modulus() == 2) return a;
  return detail::sqrt_odd_field(a);
}

inline std::optional<Fq> sqrt_element(const Fq& a) {
  if (a.ctx()->p == 2) {
    Fq r = a;
    for (unsigned i = 0; i + 1 < a.ctx()->k; ++i) r = r * r;
    return r;
  }
  return detail::sqrt_odd_field(a);
}

inline std::optional<Rat> sqrt_element(const Rat& a) {
  if (a.value() < 0) return std::nullopt;
  const BigInt num = boost::multiprecision::numerator(a.value());
  const BigInt den = boost::multiprecision::denominator(a.value());
  const BigInt rn = boost::multiprecision::sqrt(num);
  const BigInt rd = boost::multiprecision::sqrt(den);
  if (rn * rn != num || rd * rd != den) return std::nullopt;
  return Rat(BigRational(rn, rd));
}

// ---------------------------------------------------------------------------
// Runtime field descriptor, as written in input/output documents.

struct FieldSpec {
  enum class Kind { Rationals, Prime, Extension };
  Kind kind = Kind::Rationals;
  std::uint64_t p = 0;
  unsigned k = 1;
  std::vector<std::uint64_t> modulus;  // extension only

  static FieldSpec rationals() { return FieldSpec{}; }
  static FieldSpec prime(std::uint64_t p) {
    if (!is_prime_u64(p)) throw degenerate_input_error("GF(p) requires prime p");
    FieldSpec f;
    f.kind = Kind::Prime;
    f.p = p;
    return f;
  }
  static FieldSpec extension(const std::shared_ptr<const FqCtx>& ctx) {
    FieldSpec f;
    f.kind = Kind::Extension;
    f.p = ctx->p;
    f.k = ctx->k;
    f.modulus = ctx->modulus;
    return f;
  }

  std::string str() const {
    switch (kind) {
      case Kind::Rationals:
        return "Qq";
      case Kind::Prime:
        return "GF(" + std::to_string(p) + ")";
      case Kind::Extension:
        return "GF(" + std::to_string(p) + "^" + std::to_string(k) + ")";
    }
    return "?";
  }
};

// Smallest k with p^k >= min_size (genericity threshold for sampling).
inline unsigned extension_degree_for(std::uint64_t p, std::uint64_t min_size) {
  unsigned k = 1;
  std::uint64_t s = p;
  while (s < min_size) {
    s *= p;
    ++k;
  }
  return k;
}

inline constexpr std::uint64_t kGenericFieldSize = 101;

}  // namespace sgap
