#include "projdyn/coeff.hpp"

#include <mutex>
#include <random>
#include <set>

#include "projdyn/error.hpp"

namespace projdyn {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidInput: return "invalid-input";
    case ErrorCode::kRingMismatch: return "ring-mismatch";
    case ErrorCode::kBasePoint: return "base-point";
    case ErrorCode::kNotMorphism: return "not-morphism";
    case ErrorCode::kDegeneracy: return "degeneracy";
    case ErrorCode::kInterpolation: return "interpolation";
    case ErrorCode::kUnsupported: return "unsupported";
  }
  return "unknown";
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t result = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) result = mul_mod(result, a, p);
    a = mul_mod(a, a, p);
    e >>= 1;
  }
  return result;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  // Extended Euclid on signed 128-bit to avoid overflow for 62-bit p.
  __int128 t = 0, new_t = 1;
  __int128 r = p, new_r = a % p;
  while (new_r != 0) {
    __int128 q = r / new_r;
    __int128 tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (r != 1) throw InvalidInput("element is not invertible modulo " + std::to_string(p));
  if (t < 0) t += p;
  return static_cast<std::uint64_t>(t);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These bases are deterministic for all 64-bit n.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t modular_prime(std::size_t index) {
  static std::mutex mutex;
  static std::vector<std::uint64_t> primes{kDefaultPrime};
  std::lock_guard lock(mutex);
  while (primes.size() <= index) {
    std::uint64_t candidate = primes.back() - 2;
    while (!is_prime(candidate)) candidate -= 2;
    primes.push_back(candidate);
  }
  return primes[index];
}

std::optional<std::uint64_t> reduce_rational(const Rational& q, std::uint64_t p) {
  static_assert(sizeof(unsigned long) == sizeof(std::uint64_t));
  std::uint64_t d = mpz_fdiv_ui(q.get_den_mpz_t(), p);
  if (d == 0) return std::nullopt;
  std::uint64_t n = mpz_fdiv_ui(q.get_num_mpz_t(), p);
  return mul_mod(n, inv_mod(d, p), p);
}

// ---------------------------------------------------------------------------

Field Field::prime(std::uint64_t p) {
  if (p < 3 || !is_prime(p)) {
    throw InvalidInput("field characteristic must be an odd prime, got " + std::to_string(p));
  }
  return Field(p);
}

Field Field::parse(std::string_view text) {
  if (text == "QQ") return rationals();
  if (text.substr(0, 3) == "Fp:") {
    std::string digits(text.substr(3));
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
      throw InvalidInput("malformed field spec '" + std::string(text) + "'");
    }
    return prime(std::stoull(digits));
  }
  throw InvalidInput("unknown field spec '" + std::string(text) + "' (expected QQ or Fp:<prime>)");
}

std::string Field::to_string() const {
  return p_ == 0 ? "QQ" : "Fp:" + std::to_string(p_);
}

// ---------------------------------------------------------------------------

Scalar::Scalar(const Field& field, long value) : p_(field.characteristic()) {
  if (p_) {
    __int128 m = static_cast<__int128>(value) % static_cast<__int128>(p_);
    if (m < 0) m += p_;
    r_ = static_cast<std::uint64_t>(m);
  } else {
    q_ = value;
  }
}

Scalar::Scalar(const Field& field, const Rational& value) : p_(field.characteristic()) {
  // Copying an mpq with a negative denominator is undefined in GMP.
  BigInt num = value.get_num(), den = value.get_den();
  if (den == 0) throw InvalidInput("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  Rational q(num, den);
  q.canonicalize();
  if (p_) {
    auto r = reduce_rational(q, p_);
    if (!r) throw InvalidInput("denominator of " + q.get_str() + " vanishes modulo " + std::to_string(p_));
    r_ = *r;
  } else {
    q_ = std::move(q);
  }
}

Scalar::Scalar(const Field& field, const BigInt& value) : Scalar(field, Rational(value)) {}

Scalar Scalar::from_residue(const Field& field, std::uint64_t r) {
  Scalar s;
  s.p_ = field.characteristic();
  if (!s.p_) throw InvalidInput("from_residue requires a prime field");
  s.r_ = r % s.p_;
  return s;
}

Field Scalar::field() const { return p_ ? Field(p_) : Field::rationals(); }

const Rational& Scalar::rational() const {
  if (p_) throw InvalidInput("rational() called on a prime-field element");
  return q_;
}

std::uint64_t Scalar::residue() const {
  if (!p_) throw InvalidInput("residue() called on a rational");
  return r_;
}

void Scalar::check_same(const Scalar& o) const {
  if (p_ != o.p_) {
    throw RingMismatch("scalar field mismatch: " + field().to_string() + " vs " + o.field().to_string());
  }
}

Scalar Scalar::operator-() const {
  Scalar s = *this;
  if (p_) {
    s.r_ = r_ ? p_ - r_ : 0;
  } else {
    s.q_ = -q_;
  }
  return s;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  check_same(o);
  if (p_) r_ = add_mod(r_, o.r_, p_);
  else q_ += o.q_;
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  check_same(o);
  if (p_) r_ = sub_mod(r_, o.r_, p_);
  else q_ -= o.q_;
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  check_same(o);
  if (p_) r_ = mul_mod(r_, o.r_, p_);
  else q_ *= o.q_;
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  check_same(o);
  if (o.is_zero()) throw InvalidInput("division by zero");
  if (p_) r_ = mul_mod(r_, inv_mod(o.r_, p_), p_);
  else q_ /= o.q_;
  return *this;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw InvalidInput("zero has no inverse");
  Scalar s = *this;
  if (p_) s.r_ = inv_mod(r_, p_);
  else s.q_ = 1 / q_;
  return s;
}

Scalar Scalar::pow(long e) const {
  Scalar base = e < 0 ? inverse() : *this;
  unsigned long k = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  Scalar result = one(field());
  while (k) {
    if (k & 1) result *= base;
    base *= base;
    k >>= 1;
  }
  return result;
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.p_ != b.p_) return false;
  return a.p_ ? a.r_ == b.r_ : a.q_ == b.q_;
}

std::string Scalar::to_string() const {
  return p_ ? std::to_string(r_) : q_.get_str();
}

// ---------------------------------------------------------------------------

BigInt crt_combine(const ModularResidueSet& residues) {
  if (residues.empty()) throw InvalidInput("crt_combine needs at least one residue");
  std::set<BigInt> seen;
  BigInt value = 0;
  BigInt modulus = 1;
  for (const auto& [v, m] : residues) {
    if (m <= 1) throw InvalidInput("CRT modulus must exceed 1");
    if (!seen.insert(m).second) throw InvalidInput("duplicate CRT modulus " + m.get_str());
    BigInt g;
    mpz_gcd(g.get_mpz_t(), modulus.get_mpz_t(), m.get_mpz_t());
    if (g != 1) throw InvalidInput("CRT moduli are not pairwise coprime");
    // value + modulus * k = v (mod m)
    BigInt diff = (v - value) % m;
    if (diff < 0) diff += m;
    BigInt inv;
    BigInt mod_m = modulus % m;
    mpz_invert(inv.get_mpz_t(), mod_m.get_mpz_t(), m.get_mpz_t());
    BigInt k = diff * inv % m;
    value += modulus * k;
    modulus *= m;
  }
  value %= modulus;
  if (value < 0) value += modulus;
  if (2 * value > modulus) value -= modulus;
  return value;
}

std::optional<Rational> rational_reconstruct(const BigInt& value, const BigInt& modulus) {
  if (modulus <= 1) throw InvalidInput("rational_reconstruct: modulus must exceed 1");
  if (value < 0 || value >= modulus) throw InvalidInput("rational_reconstruct: value outside [0, modulus)");
  BigInt bound;
  BigInt half = modulus / 2;
  mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());

  BigInt r0 = modulus, r1 = value;
  BigInt t0 = 0, t1 = 1;
  while (r1 > bound) {
    BigInt q = r0 / r1;
    BigInt r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    BigInt t2 = t0 - q * t1;
    t0 = t1;
    t1 = t2;
  }
  BigInt den = abs(t1);
  if (den > bound || den == 0) return std::nullopt;
  BigInt g;
  mpz_gcd(g.get_mpz_t(), den.get_mpz_t(), modulus.get_mpz_t());
  if (g != 1) return std::nullopt;
  Rational result(t1 < 0 ? BigInt(-r1) : r1, den);
  result.canonicalize();
  return result;
}

Scalar random_element(const Field& field, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  if (field.is_prime_field()) {
    std::uniform_int_distribution<std::uint64_t> dist(0, field.characteristic() - 1);
    return Scalar::from_residue(field, dist(rng));
  }
  std::uniform_int_distribution<long> num(-kRandomRationalBound, kRandomRationalBound);
  std::uniform_int_distribution<long> den(1, kRandomRationalBound);
  long a = num(rng);
  long b = den(rng);
  return Scalar(field, Rational(a, b));
}

}  // namespace projdyn
