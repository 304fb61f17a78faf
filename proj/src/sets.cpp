#include "nullcert/sets.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <sstream>

#include "nullcert/error.hpp"

namespace nullcert {

std::string_view to_string(GroupMode mode) {
  return mode == GroupMode::Additive ? "add" : "mult";
}

GroupMode parse_group_mode(std::string_view text) {
  if (text == "add" || text == "additive") return GroupMode::Additive;
  if (text == "mult" || text == "multiplicative") return GroupMode::Multiplicative;
  throw ConfigError("unknown group mode '" + std::string(text) + "' (expected add|mult)");
}

std::size_t ResidueMask::count() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool ResidueMask::none() const {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

ResidueMask& ResidueMask::operator|=(const ResidueMask& o) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
  return *this;
}

ResidueMask& ResidueMask::operator&=(const ResidueMask& o) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
  return *this;
}

std::vector<std::uint32_t> ResidueMask::positions() const {
  std::vector<std::uint32_t> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t bits = words_[w];
    while (bits != 0) {
      out.push_back(static_cast<std::uint32_t>(w * 64 + std::countr_zero(bits)));
      bits &= bits - 1;
    }
  }
  return out;
}

ElementSet::ElementSet(PrimeField field, GroupMode mode, std::span<const std::uint32_t> residues)
    : field_(field), mode_(mode), mask_(field.modulus()) {
  for (std::uint32_t r : residues) {
    if (r >= field.modulus()) {
      throw PreconditionError("residue " + std::to_string(r) + " is not reduced mod " +
                              std::to_string(field.modulus()));
    }
    if (r == 0 && mode == GroupMode::Multiplicative) {
      throw PreconditionError("0 is not in the multiplicative group");
    }
    if (mask_.test(r)) throw PreconditionError("duplicate element " + std::to_string(r));
    mask_.set(r);
  }
  residues_ = mask_.positions();
}

ElementSet::ElementSet(PrimeField field, GroupMode mode, const ResidueMask& mask)
    : field_(field), mode_(mode), residues_(mask.positions()), mask_(mask) {
  if (mask.bits() != field.modulus()) throw InvariantError("mask width differs from modulus");
  if (mode == GroupMode::Multiplicative && mask.test(0)) {
    throw PreconditionError("0 is not in the multiplicative group");
  }
}

std::vector<FieldElement> ElementSet::elements() const {
  std::vector<FieldElement> out;
  out.reserve(residues_.size());
  for (auto r : residues_) out.push_back(field_.element(r));
  return out;
}

void ElementSet::require_compatible(const ElementSet& other) const {
  if (field_ != other.field_) throw FieldMismatch();
  if (mode_ != other.mode_) throw PreconditionError("group mode mismatch");
}

std::string ElementSet::to_string() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < residues_.size(); ++i) os << (i ? "," : "") << residues_[i];
  os << '}';
  return os.str();
}

ElementSet parse_set_literal(std::string_view text, PrimeField field, GroupMode mode) {
  std::vector<std::uint32_t> residues;
  std::string token;
  auto flush = [&](bool final_token) {
    if (token.empty()) {
      if (final_token && residues.empty()) return;
      throw ConfigError("malformed set literal '" + std::string(text) + "'");
    }
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
      throw ConfigError("not a residue: '" + token + "'");
    }
    if (v >= field.modulus()) {
      throw ConfigError("residue " + token + " out of range for p = " +
                        std::to_string(field.modulus()));
    }
    residues.push_back(static_cast<std::uint32_t>(v));
    token.clear();
  };
  for (char ch : text) {
    if (ch == ' ' || ch == '\t' || ch == '{' || ch == '}') continue;
    if (ch == ',') {
      flush(false);
    } else {
      token.push_back(ch);
    }
  }
  flush(true);
  try {
    return ElementSet(field, mode, residues);
  } catch (const PreconditionError& e) {
    throw ConfigError(std::string("invalid set literal: ") + e.what());
  }
}

FieldElement combine(GroupMode mode, FieldElement x, FieldElement y) {
  return mode == GroupMode::Additive ? x + y : x * y;
}

FieldElement identity(PrimeField field, GroupMode mode) {
  return mode == GroupMode::Additive ? field.zero() : field.one();
}

namespace {

std::uint32_t combine_raw(GroupMode mode, std::uint32_t x, std::uint32_t y, std::uint32_t p) {
  return mode == GroupMode::Additive ? modp::add(x, y, p) : modp::mul(x, y, p);
}

ElementSet combine_sets(const ElementSet& a, const ElementSet& b, bool restricted) {
  a.require_compatible(b);
  const std::uint32_t p = a.field().modulus();
  ResidueMask out(p);
  for (auto x : a.residues()) {
    for (auto y : b.residues()) {
      if (restricted && x == y) continue;
      out.set(combine_raw(a.mode(), x, y, p));
    }
  }
  return ElementSet(a.field(), a.mode(), out);
}

ElementSet map_set(const ElementSet& s, auto&& fn) {
  ResidueMask out(s.field().modulus());
  for (auto r : s.residues()) out.set(fn(r));
  return ElementSet(s.field(), s.mode(), out);
}

}  // namespace

ElementSet restricted_combine(const ElementSet& a, const ElementSet& b) {
  return combine_sets(a, b, true);
}

ElementSet full_combine(const ElementSet& a, const ElementSet& b) {
  return combine_sets(a, b, false);
}

std::vector<std::uint32_t> representation_counts(const ElementSet& a, const ElementSet& b,
                                                 bool restricted) {
  a.require_compatible(b);
  const std::uint32_t p = a.field().modulus();
  std::vector<std::uint32_t> counts(p, 0);
  for (auto x : a.residues()) {
    for (auto y : b.residues()) {
      if (restricted && x == y) continue;
      ++counts[combine_raw(a.mode(), x, y, p)];
    }
  }
  return counts;
}

std::vector<Representation> representations(const ElementSet& a, const ElementSet& b,
                                            FieldElement c, bool restricted) {
  a.require_compatible(b);
  if (c.field() != a.field()) throw FieldMismatch();
  std::vector<Representation> out;
  for (auto x : a.elements()) {
    for (auto y : b.elements()) {
      if (restricted && x == y) continue;
      if (combine(a.mode(), x, y) == c) out.push_back({x, y, c});
    }
  }
  return out;
}

std::vector<FieldElement> unique_rep_elements(const ElementSet& a, const ElementSet& b,
                                              bool restricted, RepresentationFilter filter) {
  const auto counts = representation_counts(a, b, restricted);
  std::vector<FieldElement> out;
  for (std::uint32_t r = 0; r < counts.size(); ++r) {
    if (filter == RepresentationFilter::Unique) {
      if (counts[r] == 1) out.push_back(a.field().element(r));
      continue;
    }
    if (counts[r] != 2) continue;
    auto reps = representations(a, b, a.field().element(r), restricted);
    const auto& r0 = reps[0];
    const auto& r1 = reps[1];
    if (r0.a != r0.b && r0.a == r1.b && r0.b == r1.a) out.push_back(a.field().element(r));
  }
  return out;
}

ElementSet inverse_set(const ElementSet& b) {
  if (b.mode() != GroupMode::Multiplicative) {
    throw PreconditionError("inverse_set needs a multiplicative set; use negate_set");
  }
  const std::uint32_t p = b.field().modulus();
  return map_set(b, [p](std::uint32_t r) { return modp::inv(r, p); });
}

ElementSet negate_set(const ElementSet& b) {
  if (b.mode() != GroupMode::Additive) {
    throw PreconditionError("negate_set needs an additive set; use inverse_set");
  }
  const std::uint32_t p = b.field().modulus();
  return map_set(b, [p](std::uint32_t r) { return modp::neg(r, p); });
}

ElementSet translate(const ElementSet& b, FieldElement x) {
  if (x.field() != b.field()) throw FieldMismatch();
  if (b.mode() == GroupMode::Multiplicative && x.is_zero()) {
    throw PreconditionError("0 is not in the multiplicative group");
  }
  const std::uint32_t p = b.field().modulus();
  const auto mode = b.mode();
  return map_set(b, [=](std::uint32_t r) { return combine_raw(mode, x.value(), r, p); });
}

ElementSet set_intersection(const ElementSet& a, const ElementSet& b) {
  a.require_compatible(b);
  ResidueMask m = a.mask();
  m &= b.mask();
  return ElementSet(a.field(), a.mode(), m);
}

ElementSet set_union(const ElementSet& a, const ElementSet& b) {
  a.require_compatible(b);
  ResidueMask m = a.mask();
  m |= b.mask();
  return ElementSet(a.field(), a.mode(), m);
}

bool is_subset(const ElementSet& a, const ElementSet& b) {
  a.require_compatible(b);
  return std::all_of(a.residues().begin(), a.residues().end(),
                     [&](std::uint32_t r) { return b.contains(r); });
}

DysonPair dyson_transform(const ElementSet& a, const ElementSet& b, FieldElement x) {
  a.require_compatible(b);
  ElementSet shifted = translate(b, x);
  return {set_intersection(a, shifted), set_union(a, shifted)};
}

ElementSet exceptional_set_N(const ElementSet& a, const ElementSet& b) {
  a.require_compatible(b);
  if (a.mode() != GroupMode::Multiplicative) {
    throw PreconditionError("exceptional set is defined for multiplicative sets");
  }
  const std::uint32_t p = a.field().modulus();
  const ElementSet product = restricted_combine(a, b);
  ResidueMask out(p);
  for (auto r : a.residues()) {
    if (b.contains(r) && !product.contains(modp::mul(r, r, p))) out.set(r);
  }
  return ElementSet(a.field(), a.mode(), out);
}

}  // namespace nullcert
