// Copyright 2026 The tatetower Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tatetower/arith.h"

#include <random>
#include <string>

#include "tatetower/error.h"

namespace tatetower {
namespace {

constexpr std::int64_t kKernelLimit = std::int64_t{1} << 62;
constexpr std::uint64_t kGeneratorSeed = 0x7a7e70f3d1ULL;

std::int64_t Mod(__int128 v, std::int64_t m) {
  __int128 r = v % m;
  if (r < 0) r += m;
  return static_cast<std::int64_t>(r);
}

std::int64_t InverseMod(std::int64_t v, std::int64_t m) {
  __int128 old_r = Mod(v, m), r = m;
  __int128 old_s = 1, s = 0;
  while (r != 0) {
    const __int128 quot = old_r / r;
    __int128 t = old_r - quot * r;
    old_r = r;
    r = t;
    t = old_s - quot * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1) throw Error(ErrorCode::kInvalidArgument, "not a unit");
  return Mod(old_s, m);
}

bool IsPrime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

int IntValuation(std::int64_t v, std::int64_t p) {
  if (v == 0) return UnramifiedCoeff::kExact;
  int t = 0;
  while (v % p == 0) {
    v /= p;
    ++t;
  }
  return t;
}

}  // namespace

ContextPtr PrimeContext::Create(std::int64_t p, int working_digits) {
  if (p < 3 || !IsPrime(p) || p > (std::int64_t{1} << 20)) {
    throw Error(ErrorCode::kInvalidArgument,
                "p must be an odd prime below 2^20, got " + std::to_string(p));
  }
  auto ctx = std::shared_ptr<PrimeContext>(new PrimeContext());
  ctx->p_ = p;
  ctx->pow_p_.push_back(1);
  while (ctx->pow_p_.back() <= (kKernelLimit - 1) / p) {
    ctx->pow_p_.push_back(ctx->pow_p_.back() * p);
  }
  ctx->max_digits_ = static_cast<int>(ctx->pow_p_.size()) - 1;
  if (working_digits < 1 || working_digits > ctx->max_digits_) {
    throw Error(ErrorCode::kInvalidArgument,
                "working digits must lie in 1.." +
                    std::to_string(ctx->max_digits_));
  }
  ctx->working_digits_ = working_digits;

  for (std::int64_t nu = 2; nu < p; ++nu) {
    bool residue = false;
    for (std::int64_t x = 1; x < p && !residue; ++x) {
      residue = (x * x) % p == nu;
    }
    if (!residue) {
      ctx->nu_ = nu;
      break;
    }
  }

  std::mt19937_64 rng(kGeneratorSeed);
  const std::uint64_t target = 2 * static_cast<std::uint64_t>(p - 1);
  while (true) {
    const std::uint64_t r = rng();
    Fp2 x{static_cast<std::int64_t>(r % p),
          static_cast<std::int64_t>((r / p) % p)};
    if (x.is_zero()) continue;
    if (ctx->fp_order(x) == target) {
      ctx->generator_ = x;
      break;
    }
  }
  ctx->zeta_ = Teichmueller(*ctx, ctx->generator_, ctx->max_digits_);
  return ctx;
}

std::int64_t PrimeContext::pow_p(int k) const {
  if (k < 0 || k > max_digits_) {
    throw Error(ErrorCode::kOverflow,
                "p^" + std::to_string(k) + " exceeds the coefficient kernel");
  }
  return pow_p_[k];
}

Fp2 PrimeContext::fp_add(const Fp2& x, const Fp2& y) const {
  return {(x.a + y.a) % p_, (x.b + y.b) % p_};
}

Fp2 PrimeContext::fp_sub(const Fp2& x, const Fp2& y) const {
  return {(x.a - y.a + p_) % p_, (x.b - y.b + p_) % p_};
}

Fp2 PrimeContext::fp_mul(const Fp2& x, const Fp2& y) const {
  return {(x.a * y.a + nu_ * (x.b * y.b % p_)) % p_, (x.a * y.b + x.b * y.a) % p_};
}

Fp2 PrimeContext::fp_pow(Fp2 x, std::uint64_t e) const {
  Fp2 r{1, 0};
  while (e > 0) {
    if (e & 1) r = fp_mul(r, x);
    x = fp_mul(x, x);
    e >>= 1;
  }
  return r;
}

Fp2 PrimeContext::fp_inv(const Fp2& x) const {
  if (x.is_zero()) throw Error(ErrorCode::kInvalidArgument, "inverse of 0");
  return fp_pow(x, static_cast<std::uint64_t>(q() - 2));
}

Fp2 PrimeContext::fp_from_int(std::int64_t v) const { return {Mod(v, p_), 0}; }

std::uint64_t PrimeContext::fp_order(const Fp2& x) const {
  if (x.is_zero()) throw Error(ErrorCode::kInvalidArgument, "order of 0");
  Fp2 y = x;
  std::uint64_t k = 1;
  while (!(y == Fp2{1, 0})) {
    y = fp_mul(y, x);
    ++k;
  }
  return k;
}

Fp2 PrimeContext::fp_decode(std::int64_t code) const {
  if (code < 0 || code >= q()) {
    throw Error(ErrorCode::kInvalidArgument,
                "digit code out of range: " + std::to_string(code));
  }
  return {code % p_, code / p_};
}

UnramifiedCoeff PrimeContext::coeff(std::int64_t a, std::int64_t b,
                                    int digits) const {
  if (digits == UnramifiedCoeff::kExact) return UnramifiedCoeff::Exact(a, b);
  if (digits < 1) throw Error(ErrorCode::kInvalidArgument, "digits < 1");
  UnramifiedCoeff c;
  c.digits_ = std::min(digits, max_digits_);
  const std::int64_t m = pow_p_[c.digits_];
  c.a_ = Mod(a, m);
  c.b_ = Mod(b, m);
  return c;
}

UnramifiedCoeff PrimeContext::reduce(const UnramifiedCoeff& c,
                                     int digits) const {
  if (digits >= c.digits_) return c;
  return coeff(c.a_, c.b_, digits);
}

UnramifiedCoeff PrimeContext::add(const UnramifiedCoeff& x,
                                  const UnramifiedCoeff& y) const {
  if (x.is_exact() && y.is_exact()) {
    std::int64_t a, b;
    if (!__builtin_add_overflow(x.a_, y.a_, &a) &&
        !__builtin_add_overflow(x.b_, y.b_, &b)) {
      return UnramifiedCoeff::Exact(a, b);
    }
    return add(coeff(x.a_, x.b_, max_digits_), coeff(y.a_, y.b_, max_digits_));
  }
  const int d = std::min(x.digits_, y.digits_);
  const std::int64_t m = pow_p_[d];
  const __int128 a = static_cast<__int128>(Mod(x.a_, m)) + Mod(y.a_, m);
  const __int128 b = static_cast<__int128>(Mod(x.b_, m)) + Mod(y.b_, m);
  UnramifiedCoeff c;
  c.digits_ = d;
  c.a_ = Mod(a, m);
  c.b_ = Mod(b, m);
  return c;
}

UnramifiedCoeff PrimeContext::neg(const UnramifiedCoeff& x) const {
  if (x.is_exact()) return UnramifiedCoeff::Exact(-x.a_, -x.b_);
  return coeff(-x.a_, -x.b_, x.digits_);
}

UnramifiedCoeff PrimeContext::sub(const UnramifiedCoeff& x,
                                  const UnramifiedCoeff& y) const {
  return add(x, neg(y));
}

UnramifiedCoeff PrimeContext::mul(const UnramifiedCoeff& x,
                                  const UnramifiedCoeff& y) const {
  if (x.is_exact() && y.is_exact()) {
    std::int64_t ac, bd, nbd, ad, bc, a, b;
    if (!__builtin_mul_overflow(x.a_, y.a_, &ac) &&
        !__builtin_mul_overflow(x.b_, y.b_, &bd) &&
        !__builtin_mul_overflow(bd, nu_, &nbd) &&
        !__builtin_mul_overflow(x.a_, y.b_, &ad) &&
        !__builtin_mul_overflow(x.b_, y.a_, &bc) &&
        !__builtin_add_overflow(ac, nbd, &a) &&
        !__builtin_add_overflow(ad, bc, &b)) {
      return UnramifiedCoeff::Exact(a, b);
    }
    return mul(coeff(x.a_, x.b_, max_digits_), coeff(y.a_, y.b_, max_digits_));
  }
  const int d = std::min(x.digits_, y.digits_);
  const std::int64_t m = pow_p_[d];
  const std::int64_t xa = Mod(x.a_, m), xb = Mod(x.b_, m);
  const std::int64_t ya = Mod(y.a_, m), yb = Mod(y.b_, m);
  const std::int64_t bd = Mod(static_cast<__int128>(xb) * yb, m);
  const std::int64_t nbd = Mod(static_cast<__int128>(bd) * nu_, m);
  UnramifiedCoeff c;
  c.digits_ = d;
  c.a_ = Mod(static_cast<__int128>(xa) * ya + nbd, m);
  c.b_ = Mod(static_cast<__int128>(xa) * yb + static_cast<__int128>(xb) * ya, m);
  return c;
}

UnramifiedCoeff PrimeContext::pow(UnramifiedCoeff x, std::uint64_t e) const {
  UnramifiedCoeff r = UnramifiedCoeff::Exact(1);
  while (e > 0) {
    if (e & 1) r = mul(r, x);
    e >>= 1;
    if (e > 0) x = mul(x, x);
  }
  return r;
}

UnramifiedCoeff PrimeContext::inverse(const UnramifiedCoeff& x,
                                      int digits) const {
  if (x.is_exact() && x.b_ == 0 && (x.a_ == 1 || x.a_ == -1)) return x;
  const int d = x.is_exact() ? std::min(digits, max_digits_) : x.digits_;
  const std::int64_t m = pow_p_[d];
  const std::int64_t a = Mod(x.a_, m), b = Mod(x.b_, m);
  const std::int64_t bb = Mod(static_cast<__int128>(b) * b, m);
  const std::int64_t norm =
      Mod(static_cast<__int128>(a) * a - static_cast<__int128>(bb) * nu_, m);
  if (norm % p_ == 0) {
    throw Error(ErrorCode::kInvalidArgument, "coefficient is not a unit");
  }
  const std::int64_t ninv = InverseMod(norm, m);
  UnramifiedCoeff c;
  c.digits_ = d;
  c.a_ = Mod(static_cast<__int128>(a) * ninv, m);
  c.b_ = Mod(-static_cast<__int128>(b) * ninv, m);
  return c;
}

int PrimeContext::valuation(const UnramifiedCoeff& x) const {
  if (x.is_zero()) return x.digits_;
  const int t = std::min(IntValuation(x.a_, p_), IntValuation(x.b_, p_));
  return x.is_exact() ? t : std::min(t, x.digits_);
}

UnramifiedCoeff PrimeContext::shift_down(const UnramifiedCoeff& x,
                                         int t) const {
  if (t == 0) return x;
  const std::int64_t pt = pow_p(t);
  if (x.is_exact()) return UnramifiedCoeff::Exact(x.a_ / pt, x.b_ / pt);
  if (t >= x.digits_) {
    throw Error(ErrorCode::kInvalidArgument, "shift consumes every digit");
  }
  UnramifiedCoeff c;
  c.digits_ = x.digits_ - t;
  c.a_ = x.a_ / pt;
  c.b_ = x.b_ / pt;
  return c;
}

Fp2 PrimeContext::residue(const UnramifiedCoeff& x) const {
  return {Mod(x.a_, p_), Mod(x.b_, p_)};
}

UnramifiedCoeff PrimeContext::to_exact(const UnramifiedCoeff& x) const {
  if (x.is_exact()) return x;
  const std::int64_t m = pow_p_[x.digits_];
  const std::int64_t half = m / 2;
  return UnramifiedCoeff::Exact(x.a_ > half ? x.a_ - m : x.a_,
                                x.b_ > half ? x.b_ - m : x.b_);
}

UnramifiedCoeff Teichmueller(const PrimeContext& ctx, const Fp2& u,
                             int digits) {
  if (digits < 1) throw Error(ErrorCode::kInvalidArgument, "digits < 1");
  UnramifiedCoeff x = ctx.coeff(u.a, u.b, digits);
  if (u.is_zero()) return x;
  // x -> x^q gains one correct digit per step; stop at the fixpoint.
  const auto q = static_cast<std::uint64_t>(ctx.q());
  for (int i = 0; i <= x.digits(); ++i) {
    UnramifiedCoeff next = ctx.pow(x, q);
    if (next == x) break;
    x = next;
  }
  return x;
}

mpq_class Harmonic(unsigned k) {
  mpq_class h = 0;
  for (unsigned i = 1; i <= k; ++i) h += mpq_class(1, i);
  h.canonicalize();
  return h;
}

mpz_class Factorial(unsigned k) {
  mpz_class f = 1;
  for (unsigned i = 2; i <= k; ++i) f *= i;
  return f;
}

long RationalValuation(const mpq_class& r, std::int64_t p) {
  if (r == 0) throw Error(ErrorCode::kInvalidArgument, "valuation of 0");
  const mpz_class pz(static_cast<long>(p));
  long v = 0;
  mpz_class n = r.get_num(), d = r.get_den();
  while (n % pz == 0) {
    n /= pz;
    ++v;
  }
  while (d % pz == 0) {
    d /= pz;
    --v;
  }
  return v;
}

UnramifiedCoeff EmbedRational(const PrimeContext& ctx, const mpq_class& r,
                              int digits) {
  const mpz_class pz(static_cast<long>(ctx.p()));
  if (r.get_den() % pz == 0) {
    throw Error(ErrorCode::kDenominatorDivisibleByP,
                "cannot embed " + r.get_str() + " into Z_(p)");
  }
  const int d = std::min(digits, ctx.max_digits());
  const mpz_class m(std::to_string(ctx.pow_p(d)));
  mpz_class num = r.get_num() % m;
  if (num < 0) num += m;
  mpz_class den = r.get_den() % m;
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t());
  mpz_class v = (num * inv) % m;
  return ctx.coeff(std::stoll(v.get_str()), 0, d);
}

BezoutResult Bezout(const mpz_class& a, const mpz_class& b) {
  if (a == 0 && b == 0) {
    throw Error(ErrorCode::kInvalidArgument, "bezout(0, 0)");
  }
  BezoutResult r;
  mpz_gcdext(r.g.get_mpz_t(), r.x.get_mpz_t(), r.y.get_mpz_t(), a.get_mpz_t(),
             b.get_mpz_t());
  if (a > 0) {
    const mpz_class period = a / r.g;
    mpz_class y = r.y % period;
    if (y < 0) y += period;
    r.y = y;
    r.x = (r.g - b * y) / a;
  }
  return r;
}

}  // namespace tatetower
