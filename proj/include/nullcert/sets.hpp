#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nullcert/field.hpp"

namespace nullcert {

enum class GroupMode { Additive, Multiplicative };

std::string_view to_string(GroupMode mode);
/// Accepts "add"/"additive" and "mult"/"multiplicative".
GroupMode parse_group_mode(std::string_view text);

/// Fixed-width bitmask over residues 0..p-1.
class ResidueMask {
 public:
  ResidueMask() = default;
  explicit ResidueMask(std::size_t bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

  std::size_t bits() const { return bits_; }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1u; }
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  void reset(std::size_t i) { words_[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }
  std::size_t count() const;
  bool none() const;

  ResidueMask& operator|=(const ResidueMask& o);
  ResidueMask& operator&=(const ResidueMask& o);
  friend bool operator==(const ResidueMask&, const ResidueMask&) = default;

  /// Set bit positions in increasing order.
  std::vector<std::uint32_t> positions() const;

 private:
  std::size_t bits_ = 0;
  std::vector<std::uint64_t> words_;
};

/// A finite subset of GF(p)+ or GF(p)*. Elements are distinct and kept
/// sorted by residue; multiplicative sets never contain 0.
class ElementSet {
 public:
  /// Validates every residue against the field and mode. Duplicates and
  /// out-of-range residues are rejected rather than normalized.
  ElementSet(PrimeField field, GroupMode mode, std::span<const std::uint32_t> residues);
  ElementSet(PrimeField field, GroupMode mode, std::initializer_list<std::uint32_t> residues)
      : ElementSet(field, mode, std::span<const std::uint32_t>(residues.begin(), residues.size())) {}
  ElementSet(PrimeField field, GroupMode mode, const ResidueMask& mask);

  static ElementSet empty(PrimeField field, GroupMode mode) {
    return ElementSet(field, mode, ResidueMask(field.modulus()));
  }

  PrimeField field() const { return field_; }
  GroupMode mode() const { return mode_; }
  std::size_t size() const { return residues_.size(); }
  bool empty() const { return residues_.empty(); }
  std::span<const std::uint32_t> residues() const { return residues_; }
  const ResidueMask& mask() const { return mask_; }
  FieldElement operator[](std::size_t i) const { return field_.element(residues_[i]); }
  std::vector<FieldElement> elements() const;

  bool contains(std::uint32_t residue) const {
    return residue < mask_.bits() && mask_.test(residue);
  }
  bool contains(FieldElement x) const { return x.field() == field_ && contains(x.value()); }

  /// Same field and same mode; throws otherwise.
  void require_compatible(const ElementSet& other) const;

  /// "{1,2,4}"
  std::string to_string() const;

  friend bool operator==(const ElementSet& a, const ElementSet& b) {
    return a.field_ == b.field_ && a.mode_ == b.mode_ && a.residues_ == b.residues_;
  }

 private:
  PrimeField field_;
  GroupMode mode_;
  std::vector<std::uint32_t> residues_;
  ResidueMask mask_;
};

/// Comma-separated residues, e.g. "1,2,4". Whitespace is ignored; an
/// empty string is the empty set.
ElementSet parse_set_literal(std::string_view text, PrimeField field, GroupMode mode);

/// The group operation selected by `mode`.
FieldElement combine(GroupMode mode, FieldElement x, FieldElement y);
/// Group identity: 0 or 1.
FieldElement identity(PrimeField field, GroupMode mode);

struct Representation {
  FieldElement a;
  FieldElement b;
  FieldElement product;

  friend bool operator==(const Representation&, const Representation&) = default;
};

/// {a o b : a in A, b in B, a != b}
ElementSet restricted_combine(const ElementSet& a, const ElementSet& b);
/// {a o b : a in A, b in B}
ElementSet full_combine(const ElementSet& a, const ElementSet& b);

/// Number of (restricted) representations of every residue, indexed by residue.
std::vector<std::uint32_t> representation_counts(const ElementSet& a, const ElementSet& b,
                                                 bool restricted);

/// All (a, b) with a o b = c, lexicographic by (a, b).
std::vector<Representation> representations(const ElementSet& a, const ElementSet& b,
                                            FieldElement c, bool restricted);

enum class RepresentationFilter {
  Unique,         // exactly one representation
  SymmetricPair,  // exactly two, of the form (x, y) and (y, x) with x != y
};

/// Elements c selected by `filter`, in increasing residue order.
std::vector<FieldElement> unique_rep_elements(const ElementSet& a, const ElementSet& b,
                                              bool restricted,
                                              RepresentationFilter filter =
                                                  RepresentationFilter::Unique);

/// {b^-1 : b in B}. Multiplicative sets only.
ElementSet inverse_set(const ElementSet& b);
/// {-b : b in B}. Additive sets only.
ElementSet negate_set(const ElementSet& b);
/// x o B
ElementSet translate(const ElementSet& b, FieldElement x);

ElementSet set_intersection(const ElementSet& a, const ElementSet& b);
ElementSet set_union(const ElementSet& a, const ElementSet& b);
bool is_subset(const ElementSet& a, const ElementSet& b);

struct DysonPair {
  ElementSet first;
  ElementSet second;
};

/// (A, B) -> (A n xB, A u xB). Preserves |A| + |B| and shrinks the full
/// combine: first o second is contained in A o (xB).
DysonPair dyson_transform(const ElementSet& a, const ElementSet& b, FieldElement x);

/// {a in A n B : a^2 not in A x' B}. Multiplicative sets only.
ElementSet exceptional_set_N(const ElementSet& a, const ElementSet& b);

}  // namespace nullcert
