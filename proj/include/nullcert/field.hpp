#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <vector>

namespace nullcert {

/// Largest modulus accepted by default. Primality is decided by trial
/// division, so this also bounds the cost of constructing a field.
inline constexpr std::uint64_t kDefaultModulusCap = std::uint64_t{1} << 20;

/// Raw residue arithmetic. Inputs must already be reduced mod p.
namespace modp {

inline std::uint32_t add(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  std::uint32_t s = a + b;
  return s >= p ? s - p : s;
}
inline std::uint32_t sub(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return a >= b ? a - b : a + p - b;
}
inline std::uint32_t neg(std::uint32_t a, std::uint32_t p) { return a == 0 ? 0 : p - a; }
inline std::uint32_t mul(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return static_cast<std::uint32_t>(std::uint64_t{a} * b % p);
}
std::uint32_t pow(std::uint32_t a, std::uint64_t e, std::uint32_t p);
// Extended Euclid. a must be nonzero.
std::uint32_t inv(std::uint32_t a, std::uint32_t p);
// Reduce any signed integer into [0, p).
std::uint32_t reduce(std::int64_t v, std::uint32_t p);

}  // namespace modp

bool is_prime(std::uint64_t n);

class FieldElement;

/// GF(p) for a prime p that fits comfortably in a machine word.
class PrimeField {
 public:
  /// Throws ConfigError if p is not prime or exceeds `cap`.
  explicit PrimeField(std::uint64_t p, std::uint64_t cap = kDefaultModulusCap);

  std::uint32_t modulus() const { return p_; }
  std::uint32_t group_order(bool multiplicative) const { return multiplicative ? p_ - 1 : p_; }

  FieldElement element(std::int64_t value) const;
  FieldElement zero() const;
  FieldElement one() const;

  friend bool operator==(PrimeField, PrimeField) = default;

 private:
  std::uint32_t p_;
};

class FieldElement {
 public:
  FieldElement(PrimeField field, std::int64_t value)
      : field_(field), value_(modp::reduce(value, field.modulus())) {}

  std::uint32_t value() const { return value_; }
  PrimeField field() const { return field_; }
  std::uint32_t modulus() const { return field_.modulus(); }
  bool is_zero() const { return value_ == 0; }

  FieldElement operator+(FieldElement o) const;
  FieldElement operator-(FieldElement o) const;
  FieldElement operator*(FieldElement o) const;
  FieldElement operator/(FieldElement o) const { return *this * o.inverse(); }
  FieldElement operator-() const { return raw(field_, modp::neg(value_, field_.modulus())); }
  FieldElement& operator+=(FieldElement o) { return *this = *this + o; }
  FieldElement& operator-=(FieldElement o) { return *this = *this - o; }
  FieldElement& operator*=(FieldElement o) { return *this = *this * o; }

  /// Throws PreconditionError on zero.
  FieldElement inverse() const;
  /// Negative exponents are allowed for nonzero elements.
  FieldElement pow(std::int64_t e) const;

  // Elements of different fields compare unequal; ordering is by residue.
  friend bool operator==(FieldElement a, FieldElement b) {
    return a.field_ == b.field_ && a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(FieldElement a, FieldElement b) {
    if (auto c = a.field_.modulus() <=> b.field_.modulus(); c != 0) return c;
    return a.value_ <=> b.value_;
  }

  friend std::ostream& operator<<(std::ostream& os, FieldElement x) { return os << x.value_; }

 private:
  struct RawTag {};
  FieldElement(PrimeField field, std::uint32_t value, RawTag) : field_(field), value_(value) {}
  static FieldElement raw(PrimeField f, std::uint32_t v) { return FieldElement(f, v, RawTag{}); }
  void require_same_field(FieldElement o) const;

  PrimeField field_;
  std::uint32_t value_;
};

/// Multiplicative order of a nonzero element. Always divides p - 1.
std::uint64_t element_order(FieldElement x);

/// Smallest prime p >= max(start, 3) with p = 1 (mod d).
/// Throws ConfigError when no such prime exists below `cap`.
PrimeField find_prime_with_subgroup(std::uint64_t d, std::uint64_t start = 3,
                                    std::uint64_t cap = kDefaultModulusCap);

/// Smallest residue whose multiplicative order is exactly d.
/// Throws PreconditionError unless d divides p - 1.
FieldElement primitive_root_of_unity(PrimeField field, std::uint64_t d);

/// Positive divisors of n in increasing order.
std::vector<std::uint64_t> divisors(std::uint64_t n);

}  // namespace nullcert
