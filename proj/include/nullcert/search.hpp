#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "nullcert/certify.hpp"
#include "nullcert/field.hpp"
#include "nullcert/sets.hpp"
#include "nullcert/theorem.hpp"

namespace nullcert {

/// Hypothesis checks allowed per exhaustive sweep unless overridden.
inline constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 26;
inline constexpr std::size_t kDefaultTightLimit = 1000;
inline constexpr std::size_t kDefaultSampleMaxSize = 8;
/// Identifier of the sampling generator, echoed into every report.
inline constexpr std::string_view kRngName = "splitmix64";

/// SplitMix64: 64-bit state, one add and a fixed mixing function per draw.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, bound), by rejection.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::uint64_t state_;
};

/// Outcome of checking one theorem on one input.
struct Evaluation {
  bool hypothesis = false;
  std::size_t combined_size = 0;
  std::int64_t bound = 0;
  // Smallest residue c witnessing the hypothesis, when the theorem has one.
  std::optional<std::uint32_t> target;
  // Single-set theorem only: every c satisfying the full hypothesis.
  std::vector<std::uint32_t> main_targets;

  friend bool operator==(const Evaluation&, const Evaluation&) = default;
};

/// Reference evaluator on ElementSets; `b` is ignored for single-set theorems.
Evaluation evaluate_instance(TheoremTag theorem, const ElementSet& a, const ElementSet& b);

/// The group GF(p)+ or GF(p)* viewed as Z/m with subsets as m-bit masks.
/// Multiplicative elements are indexed by discrete logarithm, so
/// multiplying by an element is a rotation in both modes.
class CyclicMaskGroup {
 public:
  static constexpr std::uint32_t kMaxOrder = 63;

  CyclicMaskGroup(PrimeField field, GroupMode mode);

  PrimeField field() const { return field_; }
  GroupMode mode() const { return mode_; }
  std::uint32_t order() const { return order_; }
  std::uint64_t full() const { return full_; }
  std::uint32_t residue_of(std::uint32_t index) const { return residue_of_[index]; }
  std::uint32_t index_of(std::uint32_t residue) const { return index_of_[residue]; }

  std::uint64_t rotate(std::uint64_t mask, std::uint32_t shift) const;
  std::uint64_t to_mask(const ElementSet& set) const;
  ElementSet to_set(std::uint64_t mask) const;
  std::vector<std::uint32_t> residues(std::uint64_t mask) const;

  Evaluation evaluate(TheoremTag theorem, std::uint64_t a, std::uint64_t b) const;

 private:
  struct Multiplicity {
    std::uint64_t once = 0;  // hit exactly once
    std::uint64_t twice = 0; // hit exactly twice
    std::uint64_t any = 0;
  };
  Multiplicity multiplicity(std::uint64_t a, std::uint64_t b, bool restricted) const;
  std::optional<std::uint32_t> smallest_residue(std::uint64_t mask) const;

  PrimeField field_;
  GroupMode mode_;
  std::uint32_t order_;
  std::uint64_t full_;
  std::vector<std::uint32_t> residue_of_;
  std::vector<std::uint32_t> index_of_;
};

struct SweepConfig {
  TheoremTag theorem = TheoremTag::KempermanScherk;
  std::vector<std::uint32_t> primes;
  // Only ks may choose; other theorems fix their group.
  std::optional<GroupMode> mode;
  // 0 means: every size (exhaustive) or kDefaultSampleMaxSize (sampled).
  std::size_t max_set_size = 0;
  bool exhaustive = true;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  // Static partitions of the sweep space, run on separate threads.
  unsigned partitions = 1;
  std::uint64_t budget = kDefaultBudget;
  std::size_t tight_limit = kDefaultTightLimit;
  bool attach_certificates = false;
  bool include_timing = false;

  GroupMode group() const;
  /// Throws ConfigError on unusable settings.
  void validate() const;
};

struct Instance {
  std::uint32_t p = 0;
  std::vector<std::uint32_t> a;
  std::optional<std::vector<std::uint32_t>> b;
  std::optional<std::uint32_t> c;
  std::size_t combined_size = 0;
  std::int64_t bound = 0;
  std::optional<Certificate> certificate;
};

struct PrimeSummary {
  std::uint32_t p = 0;
  std::uint64_t examined = 0;
  std::uint64_t hypothesis_satisfying = 0;
  std::uint64_t bound_holding = 0;
  std::uint64_t tight = 0;
  std::uint64_t counterexamples = 0;
  // Single-set theorem: certificates built, and how many hit the
  // contradiction branch.
  std::uint64_t certificates_checked = 0;
  std::uint64_t contradictions = 0;

  PrimeSummary& operator+=(const PrimeSummary& o);
  friend bool operator==(const PrimeSummary&, const PrimeSummary&) = default;
};

struct Report {
  SweepConfig config;
  std::vector<PrimeSummary> per_prime;
  std::vector<Instance> tight;           // capped at tight_limit per prime
  std::vector<Instance> counterexamples; // capped at tight_limit per prime
  double wall_seconds = 0;

  PrimeSummary totals() const;
};

/// Number of hypothesis checks an exhaustive sweep would perform: the
/// number of sets (or set pairs) times the group order, summed over primes.
std::uint64_t exhaustive_cost(const SweepConfig& config);

/// Every nonempty set (or set pair) of the chosen group up to the size limit.
Report exhaustive_verify(const SweepConfig& config);

/// Seeded random sets; each sample draws from its own generator, seeded from
/// (seed, p, sample index), so results do not depend on partitioning.
Report hunt_counterexample(const SweepConfig& config);

/// Certificate for a recorded instance, or nullopt for ks (no polynomial
/// argument). Corollaries reduce to the pair theorems with B = A minus one
/// element of the representation.
std::optional<Certificate> certificate_for(TheoremTag theorem, const ElementSet& a,
                                           const ElementSet& b, std::optional<FieldElement> c);

/// A = {1, w, ..., w^(n-1)}, B = {1, w, ..., w^(n-2)} with w of order 2n-4,
/// where |A x' B| = 2n - 4 and 1 = w^(n-1) w^(n-3) uniquely.
struct TightExample {
  std::uint32_t n;
  PrimeField field;
  FieldElement w;
  ElementSet a;
  ElementSet b;
  FieldElement c;
  // Absent only in the degenerate case.
  std::optional<Representation> unique_rep;
  std::size_t restricted_size;
  // n = 3: w = -1, so A and B collapse to {1, -1} and nothing is tight.
  bool degenerate = false;
};

/// Throws PreconditionError for n < 3, ConfigError when no prime is found
/// below `cap`, and InvariantError when an n >= 4 construction does not have
/// the promised shape.
TightExample construct_tight_example(std::uint32_t n, std::uint64_t cap = kDefaultModulusCap);

}  // namespace nullcert
