#pragma once

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

namespace qp {

/// Arbitrary-precision rational, no expression templates (plays well with Eigen).
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;

/// Modulus for Fp arithmetic on the current thread.
class FpModulus {
 public:
  static constexpr std::uint64_t kDefault = 2147483647ULL;  // 2^31 - 1

  static std::uint64_t get() noexcept { return current(); }

  /// Installs a prime modulus for the lifetime of the scope.
  class Scope {
   public:
    explicit Scope(std::uint64_t p);
    ~Scope() { current() = saved_; }
    Scope(const Scope&) = delete;
    Scope& operator=(const Scope&) = delete;

   private:
    std::uint64_t saved_;
  };

 private:
  static std::uint64_t& current() noexcept {
    thread_local std::uint64_t p = kDefault;
    return p;
  }
};

bool is_prime(std::uint64_t n);

/// Element of the prime field Z/pZ, p taken from FpModulus at construction.
class Fp {
 public:
  Fp() : value_(0) {}
  Fp(long long v);  // NOLINT(google-explicit-constructor): literals like Fp(1), 0
  Fp(int v) : Fp(static_cast<long long>(v)) {}

  std::uint64_t value() const noexcept { return value_; }

  Fp& operator+=(const Fp& o);
  Fp& operator-=(const Fp& o);
  Fp& operator*=(const Fp& o);
  Fp& operator/=(const Fp& o);
  Fp operator-() const;
  Fp inverse() const;

  friend Fp operator+(Fp a, const Fp& b) { return a += b; }
  friend Fp operator-(Fp a, const Fp& b) { return a -= b; }
  friend Fp operator*(Fp a, const Fp& b) { return a *= b; }
  friend Fp operator/(Fp a, const Fp& b) { return a /= b; }
  friend bool operator==(const Fp& a, const Fp& b) { return a.value_ == b.value_; }
  friend bool operator!=(const Fp& a, const Fp& b) { return a.value_ != b.value_; }
  // Total order on representatives; only used for container keys and Eigen's pivot heuristics.
  friend bool operator<(const Fp& a, const Fp& b) { return a.value_ < b.value_; }
  friend bool operator>(const Fp& a, const Fp& b) { return a.value_ > b.value_; }
  friend bool operator<=(const Fp& a, const Fp& b) { return a.value_ <= b.value_; }
  friend bool operator>=(const Fp& a, const Fp& b) { return a.value_ >= b.value_; }
  friend std::ostream& operator<<(std::ostream& os, const Fp& a) { return os << a.value_; }

 private:
  std::uint64_t value_;
};

inline Fp abs(const Fp& a) { return a; }

/// Scalar helpers shared by the algebra templates.
template <typename Scalar>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr const char* name = "q";
  static Rational make(long long num, long long den = 1) { return Rational(num) / Rational(den); }
  static Rational make(const BigInt& num, const BigInt& den) { return Rational(num) / Rational(den); }
  static bool is_zero(const Rational& a) { return a == 0; }
  static std::string to_string(const Rational& a) { return a.str(); }
};

template <>
struct ScalarTraits<Fp> {
  static constexpr const char* name = "fp";
  static Fp make(long long num, long long den = 1) { return Fp(num) / Fp(den); }
  static Fp make(const BigInt& num, const BigInt& den);
  static bool is_zero(const Fp& a) { return a.value() == 0; }
  static std::string to_string(const Fp& a) { return std::to_string(a.value()); }
};

/// Field selected on the command line: "q" or "fp:<prime>".
struct FieldSpec {
  enum class Kind { Rational, Prime } kind = Kind::Rational;
  std::uint64_t prime = 0;

  static FieldSpec parse(const std::string& text);
  std::string to_string() const;
};

}  // namespace qp

namespace Eigen {

template <>
struct NumTraits<qp::Fp> : GenericNumTraits<qp::Fp> {
  using Real = qp::Fp;
  using NonInteger = qp::Fp;
  using Nested = qp::Fp;
  enum {
    IsInteger = 0,
    IsSigned = 0,
    IsComplex = 0,
    RequireInitialization = 0,
    ReadCost = 1,
    AddCost = 2,
    MulCost = 4
  };
  static inline Real epsilon() { return qp::Fp(0); }
  static inline Real dummy_precision() { return qp::Fp(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
