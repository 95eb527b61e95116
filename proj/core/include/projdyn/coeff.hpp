#pragma once

// Exact scalar arithmetic: rationals (GMP), odd prime fields, and the CRT /
// rational-reconstruction glue used by the modular algorithms.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace projdyn {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Default working prime for modular runs: 2^62 - 57.
inline constexpr std::uint64_t kDefaultPrime = 4611686018427387847ULL;

/// Numerators and denominators drawn by `random_element` over QQ lie in
/// [-kRandomRationalBound, kRandomRationalBound] and [1, kRandomRationalBound].
inline constexpr long kRandomRationalBound = 100;

// ---------------------------------------------------------------------------
// Word-size modular helpers. All arguments are assumed reduced mod p.

bool is_prime(std::uint64_t n);

inline std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  std::uint64_t s = a + b;
  return s >= p ? s - p : s;
}
inline std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return a >= b ? a - b : a + p - b;
}
inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}
std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p);
/// Throws InvalidInput when a is not invertible.
std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p);

/// The index-th prime below 2^62 - 57 (index 0 is kDefaultPrime itself).
/// Used as the deterministic prime sequence of the CRT loops.
std::uint64_t modular_prime(std::size_t index);

/// Reduces a rational mod p. Returns nullopt when p divides the denominator.
std::optional<std::uint64_t> reduce_rational(const Rational& q, std::uint64_t p);

// ---------------------------------------------------------------------------

/// The coefficient field: QQ or F_p for an odd prime p.
class Field {
 public:
  enum class Kind { kRationals, kPrime };

  constexpr Field() = default;

  static constexpr Field rationals() { return Field(); }
  /// Throws InvalidInput unless p is an odd prime.
  static Field prime(std::uint64_t p);
  /// Accepts `QQ` and `Fp:<prime>`.
  static Field parse(std::string_view text);

  Kind kind() const { return p_ == 0 ? Kind::kRationals : Kind::kPrime; }
  bool is_rationals() const { return p_ == 0; }
  bool is_prime_field() const { return p_ != 0; }
  /// 0 for QQ.
  std::uint64_t characteristic() const { return p_; }

  std::string to_string() const;

  friend constexpr bool operator==(const Field&, const Field&) = default;

 private:
  friend class Scalar;
  explicit constexpr Field(std::uint64_t p) : p_(p) {}
  std::uint64_t p_ = 0;
};

/// An element of a Field. Rationals are kept in lowest terms with positive
/// denominator; prime-field residues in [0, p).
class Scalar {
 public:
  Scalar() = default;
  Scalar(const Field& field, long value);
  Scalar(const Field& field, const Rational& value);
  Scalar(const Field& field, const BigInt& value);

  static Scalar zero(const Field& field) { return Scalar(field, 0L); }
  static Scalar one(const Field& field) { return Scalar(field, 1L); }
  /// Prime fields only; r must already be reduced.
  static Scalar from_residue(const Field& field, std::uint64_t r);

  Field field() const;
  bool is_zero() const { return p_ ? r_ == 0 : sgn(q_) == 0; }
  bool is_one() const { return p_ ? r_ == 1 : q_ == 1; }
  /// Sign of a rational; 0/1 for prime fields.
  int sign() const { return p_ ? (r_ != 0) : sgn(q_); }

  const Rational& rational() const;
  std::uint64_t residue() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  /// Throws InvalidInput for zero.
  Scalar inverse() const;
  /// Negative exponents invert.
  Scalar pow(long e) const;

  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  std::string to_string() const;

 private:
  void check_same(const Scalar& o) const;

  std::uint64_t p_ = 0;
  std::uint64_t r_ = 0;
  Rational q_;
};

// ---------------------------------------------------------------------------

struct Residue {
  BigInt value;
  BigInt modulus;
};
using ModularResidueSet = std::vector<Residue>;

/// The symmetric representative in (-M/2, M/2] of the unique class mod
/// M = prod(moduli) matching every residue. Throws InvalidInput on repeated
/// or non-coprime moduli.
BigInt crt_combine(const ModularResidueSet& residues);

/// Finds a/b with |a|, b <= sqrt(modulus / 2), gcd(b, modulus) = 1 and
/// a = b * value (mod modulus). nullopt when no such fraction exists.
/// Throws InvalidInput for modulus <= 1 or value outside [0, modulus).
std::optional<Rational> rational_reconstruct(const BigInt& value, const BigInt& modulus);

/// Deterministic in (field, seed). Over QQ the numerator is uniform in
/// [-kRandomRationalBound, kRandomRationalBound] and the denominator in
/// [1, kRandomRationalBound]; over F_p the residue is uniform.
Scalar random_element(const Field& field, std::uint64_t seed);

}  // namespace projdyn
