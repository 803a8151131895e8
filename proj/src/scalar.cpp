#include "qp/scalar.hpp"

#include <charconv>

namespace qp {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n && d < 100000; ++d) {
    if (n % d == 0) return n == d;
  }
  if (n < 100000ULL * 100000ULL) return true;
  // Deterministic Miller-Rabin for 64-bit inputs.
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s && composite; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) composite = false;
    }
    if (composite) return false;
  }
  return true;
}

FpModulus::Scope::Scope(std::uint64_t p) : saved_(current()) {
  if (!is_prime(p) || p > (1ULL << 31)) {
    throw std::invalid_argument("FpModulus: " + std::to_string(p) + " is not a prime <= 2^31");
  }
  current() = p;
}

Fp::Fp(long long v) {
  const auto p = static_cast<long long>(FpModulus::get());
  long long r = v % p;
  if (r < 0) r += p;
  value_ = static_cast<std::uint64_t>(r);
}

Fp& Fp::operator+=(const Fp& o) {
  const auto p = FpModulus::get();
  value_ = (value_ + o.value_) % p;
  return *this;
}

Fp& Fp::operator-=(const Fp& o) {
  const auto p = FpModulus::get();
  value_ = (value_ + p - o.value_) % p;
  return *this;
}

Fp& Fp::operator*=(const Fp& o) {
  value_ = mulmod(value_, o.value_, FpModulus::get());
  return *this;
}

Fp& Fp::operator/=(const Fp& o) { return *this *= o.inverse(); }

Fp Fp::operator-() const {
  Fp r;
  r.value_ = value_ == 0 ? 0 : FpModulus::get() - value_;
  return r;
}

Fp Fp::inverse() const {
  if (value_ == 0) throw std::domain_error("Fp: division by zero");
  const auto p = FpModulus::get();
  Fp r;
  r.value_ = powmod(value_, p - 2, p);
  return r;
}

Fp ScalarTraits<Fp>::make(const BigInt& num, const BigInt& den) {
  const BigInt p(FpModulus::get());
  auto reduce = [&](const BigInt& x) {
    BigInt r = x % p;
    if (r < 0) r += p;
    return Fp(static_cast<long long>(r.convert_to<long long>()));
  };
  return reduce(num) / reduce(den);
}

FieldSpec FieldSpec::parse(const std::string& text) {
  FieldSpec spec;
  if (text == "q" || text == "Q") return spec;
  if (text.rfind("fp:", 0) == 0) {
    std::uint64_t p = 0;
    const char* first = text.data() + 3;
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, p);
    if (ec != std::errc() || ptr != last || !is_prime(p) || p > (1ULL << 31)) {
      throw std::invalid_argument("field: '" + text + "' is not fp:<prime> with prime <= 2^31");
    }
    spec.kind = Kind::Prime;
    spec.prime = p;
    return spec;
  }
  throw std::invalid_argument("field: expected 'q' or 'fp:<prime>', got '" + text + "'");
}

std::string FieldSpec::to_string() const {
  return kind == Kind::Rational ? "q" : "fp:" + std::to_string(prime);
}

}  // namespace qp
