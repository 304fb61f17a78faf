#include "nullcert/field.hpp"

#include <string>

#include "nullcert/error.hpp"

namespace nullcert {

namespace modp {

std::uint32_t pow(std::uint32_t a, std::uint64_t e, std::uint32_t p) {
  std::uint64_t result = 1 % p;
  std::uint64_t base = a;
  while (e != 0) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(result);
}

std::uint32_t inv(std::uint32_t a, std::uint32_t p) {
  std::int64_t r0 = p, r1 = a;
  std::int64_t t0 = 0, t1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::int64_t r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    std::int64_t t2 = t0 - q * t1;
    t0 = t1;
    t1 = t2;
  }
  return reduce(t0, p);
}

std::uint32_t reduce(std::int64_t v, std::uint32_t p) {
  std::int64_t r = v % static_cast<std::int64_t>(p);
  if (r < 0) r += p;
  return static_cast<std::uint32_t>(r);
}

}  // namespace modp

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint64_t p, std::uint64_t cap) {
  if (p > cap) {
    throw ConfigError("modulus " + std::to_string(p) + " exceeds cap " + std::to_string(cap));
  }
  if (!is_prime(p)) throw ConfigError(std::to_string(p) + " is not prime");
  p_ = static_cast<std::uint32_t>(p);
}

FieldElement PrimeField::element(std::int64_t value) const { return FieldElement(*this, value); }
FieldElement PrimeField::zero() const { return FieldElement(*this, 0); }
FieldElement PrimeField::one() const { return FieldElement(*this, 1); }

void FieldElement::require_same_field(FieldElement o) const {
  if (field_ != o.field_) throw FieldMismatch();
}

FieldElement FieldElement::operator+(FieldElement o) const {
  require_same_field(o);
  return raw(field_, modp::add(value_, o.value_, modulus()));
}

FieldElement FieldElement::operator-(FieldElement o) const {
  require_same_field(o);
  return raw(field_, modp::sub(value_, o.value_, modulus()));
}

FieldElement FieldElement::operator*(FieldElement o) const {
  require_same_field(o);
  return raw(field_, modp::mul(value_, o.value_, modulus()));
}

FieldElement FieldElement::inverse() const {
  if (value_ == 0) throw PreconditionError("zero has no inverse");
  return raw(field_, modp::inv(value_, modulus()));
}

FieldElement FieldElement::pow(std::int64_t e) const {
  if (e < 0) return inverse().pow(-e);
  return raw(field_, modp::pow(value_, static_cast<std::uint64_t>(e), modulus()));
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> small, large;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    small.push_back(d);
    if (d != n / d) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

std::uint64_t element_order(FieldElement x) {
  if (x.is_zero()) throw PreconditionError("zero has no multiplicative order");
  const std::uint32_t p = x.modulus();
  for (std::uint64_t k : divisors(p - 1)) {
    if (modp::pow(x.value(), k, p) == 1) return k;
  }
  throw InvariantError("element order does not divide p - 1");
}

PrimeField find_prime_with_subgroup(std::uint64_t d, std::uint64_t start, std::uint64_t cap) {
  if (d == 0) throw PreconditionError("subgroup order must be positive");
  std::uint64_t candidate = start < 3 ? 3 : start;
  // First candidate congruent to 1 mod d.
  if (d > 1) {
    std::uint64_t r = (candidate + d - 1) % d;
    if (r != 0) candidate += d - r;
  }
  for (; candidate <= cap; candidate += d) {
    if (is_prime(candidate)) return PrimeField(candidate, cap);
  }
  throw ConfigError("no prime p = 1 mod " + std::to_string(d) + " found below cap " +
                    std::to_string(cap));
}

FieldElement primitive_root_of_unity(PrimeField field, std::uint64_t d) {
  const std::uint32_t p = field.modulus();
  if (d == 0 || (p - 1) % d != 0) {
    throw PreconditionError("order " + std::to_string(d) + " does not divide p - 1 = " +
                            std::to_string(p - 1));
  }
  for (std::uint32_t v = 1; v < p; ++v) {
    FieldElement x = field.element(v);
    if (element_order(x) == d) return x;
  }
  throw InvariantError("cyclic group lacks an element of order dividing its size");
}

}  // namespace nullcert
