#include "nullcert/search.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <thread>

#include "nullcert/error.hpp"

namespace nullcert {

std::uint64_t SplitMix64::below(std::uint64_t bound) {
  if (bound == 0) throw PreconditionError("empty sampling range");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = next();
  } while (x >= limit);
  return x % bound;
}

namespace {

std::int64_t signed_size(std::size_t n) { return static_cast<std::int64_t>(n); }

std::int64_t pair_bound(TheoremTag theorem, std::size_t a, std::size_t b, std::size_t n_size) {
  const std::int64_t sum = signed_size(a + b);
  switch (theorem) {
    case TheoremTag::KempermanScherk: return sum - 1;
    case TheoremTag::Additive: return sum - 2;
    case TheoremTag::Multiplicative: return sum - 3;
    case TheoremTag::Cover: return sum - 2 - signed_size(n_size / 2);
    default: throw InvariantError("not a pair theorem");
  }
}

std::int64_t single_bound(TheoremTag theorem, std::size_t n) {
  switch (theorem) {
    case TheoremTag::Main:
    case TheoremTag::CorollaryAdditive: return 2 * signed_size(n) - 3;
    case TheoremTag::CorollaryMultiplicative: return 2 * signed_size(n) - 4;
    default: throw InvariantError("not a single-set theorem");
  }
}

bool restricted_theorem(TheoremTag theorem) { return theorem != TheoremTag::KempermanScherk; }

}  // namespace

Evaluation evaluate_instance(TheoremTag theorem, const ElementSet& a, const ElementSet& b_in) {
  const bool single = is_single_set(theorem);
  const ElementSet& b = single ? a : b_in;
  a.require_compatible(b);
  if (mode_is_fixed(theorem) && a.mode() != default_mode(theorem)) {
    throw PreconditionError("theorem '" + std::string(to_string(theorem)) + "' needs " +
                            std::string(to_string(default_mode(theorem))) + " sets");
  }

  const bool restricted = restricted_theorem(theorem);
  const auto counts = representation_counts(a, b, restricted);
  Evaluation ev;
  ev.combined_size = static_cast<std::size_t>(
      std::count_if(counts.begin(), counts.end(), [](std::uint32_t k) { return k > 0; }));

  auto first_with = [&](std::uint32_t k) -> std::optional<std::uint32_t> {
    for (std::uint32_t r = 0; r < counts.size(); ++r) {
      if (counts[r] == k) return r;
    }
    return std::nullopt;
  };

  if (!single) {
    std::size_t n_size = 0;
    if (theorem == TheoremTag::Cover) {
      n_size = exceptional_set_N(a, b).size();
      ev.hypothesis = n_size > 0;
    } else {
      ev.target = first_with(1);
      ev.hypothesis = ev.target.has_value();
    }
    ev.bound = pair_bound(theorem, a.size(), b.size(), n_size);
    return ev;
  }

  ev.bound = single_bound(theorem, a.size());
  if (theorem != TheoremTag::Main) {
    ev.target = first_with(2);
    ev.hypothesis = ev.target.has_value();
    return ev;
  }
  const auto n = signed_size(a.size());
  for (std::uint32_t r = 0; r < counts.size(); ++r) {
    if (counts[r] != 2) continue;
    const auto reps = representations(a, a, a.field().element(r), true);
    if (reps[0].a.pow(n - 2) != reps[0].b.pow(n - 2)) ev.main_targets.push_back(r);
  }
  ev.hypothesis = !ev.main_targets.empty();
  if (ev.hypothesis) ev.target = ev.main_targets.front();
  return ev;
}

CyclicMaskGroup::CyclicMaskGroup(PrimeField field, GroupMode mode)
    : field_(field), mode_(mode), order_(field.group_order(mode == GroupMode::Multiplicative)) {
  if (order_ > kMaxOrder) {
    throw ConfigError("group order " + std::to_string(order_) + " exceeds mask width " +
                      std::to_string(kMaxOrder));
  }
  full_ = (std::uint64_t{1} << order_) - 1;
  const std::uint32_t p = field.modulus();
  residue_of_.resize(order_);
  index_of_.assign(p, 0);
  if (mode == GroupMode::Additive) {
    for (std::uint32_t r = 0; r < p; ++r) residue_of_[r] = index_of_[r] = r;
    return;
  }
  const std::uint32_t g = primitive_root_of_unity(field, order_).value();
  std::uint32_t x = 1;
  for (std::uint32_t k = 0; k < order_; ++k) {
    residue_of_[k] = x;
    index_of_[x] = k;
    x = modp::mul(x, g, p);
  }
}

std::uint64_t CyclicMaskGroup::rotate(std::uint64_t mask, std::uint32_t shift) const {
  shift %= order_;
  if (shift == 0) return mask;
  return ((mask << shift) | (mask >> (order_ - shift))) & full_;
}

std::uint64_t CyclicMaskGroup::to_mask(const ElementSet& set) const {
  if (set.field() != field_ || set.mode() != mode_) throw PreconditionError("set not in group");
  std::uint64_t m = 0;
  for (auto r : set.residues()) m |= std::uint64_t{1} << index_of_[r];
  return m;
}

std::vector<std::uint32_t> CyclicMaskGroup::residues(std::uint64_t mask) const {
  std::vector<std::uint32_t> out;
  for (; mask != 0; mask &= mask - 1) out.push_back(residue_of_[std::countr_zero(mask)]);
  std::sort(out.begin(), out.end());
  return out;
}

ElementSet CyclicMaskGroup::to_set(std::uint64_t mask) const {
  const auto rs = residues(mask);
  return ElementSet(field_, mode_, rs);
}

CyclicMaskGroup::Multiplicity CyclicMaskGroup::multiplicity(std::uint64_t a, std::uint64_t b,
                                                            bool restricted) const {
  // Saturating per-element counters: hit at least 1, 2, 3 times.
  std::uint64_t c1 = 0, c2 = 0, c3 = 0;
  for (std::uint64_t rest = a; rest != 0; rest &= rest - 1) {
    const auto k = static_cast<std::uint32_t>(std::countr_zero(rest));
    const std::uint64_t partners = restricted ? b & ~(std::uint64_t{1} << k) : b;
    const std::uint64_t hit = rotate(partners, k);
    c3 |= c2 & hit;
    c2 |= c1 & hit;
    c1 |= hit;
  }
  return {c1 & ~c2, c2 & ~c3, c1};
}

std::optional<std::uint32_t> CyclicMaskGroup::smallest_residue(std::uint64_t mask) const {
  std::optional<std::uint32_t> best;
  for (; mask != 0; mask &= mask - 1) {
    const std::uint32_t r = residue_of_[std::countr_zero(mask)];
    if (!best || r < *best) best = r;
  }
  return best;
}

Evaluation CyclicMaskGroup::evaluate(TheoremTag theorem, std::uint64_t a, std::uint64_t b) const {
  const bool single = is_single_set(theorem);
  if (single) b = a;
  const auto size_a = static_cast<std::size_t>(std::popcount(a));
  const auto size_b = static_cast<std::size_t>(std::popcount(b));
  const Multiplicity mult = multiplicity(a, b, restricted_theorem(theorem));

  Evaluation ev;
  ev.combined_size = static_cast<std::size_t>(std::popcount(mult.any));
  if (!single) {
    std::size_t n_size = 0;
    if (theorem == TheoremTag::Cover) {
      for (std::uint64_t common = a & b; common != 0; common &= common - 1) {
        const auto k = static_cast<std::uint32_t>(std::countr_zero(common));
        if (!((mult.any >> ((2 * k) % order_)) & 1u)) ++n_size;
      }
      ev.hypothesis = n_size > 0;
    } else {
      ev.target = smallest_residue(mult.once);
      ev.hypothesis = ev.target.has_value();
    }
    ev.bound = pair_bound(theorem, size_a, size_b, n_size);
    return ev;
  }

  ev.bound = single_bound(theorem, size_a);
  if (theorem != TheoremTag::Main) {
    ev.target = smallest_residue(mult.twice);
    ev.hypothesis = ev.target.has_value();
    return ev;
  }
  const std::uint64_t e = size_a - 2;
  for (std::uint64_t rest = mult.twice; rest != 0; rest &= rest - 1) {
    const auto c = static_cast<std::uint32_t>(std::countr_zero(rest));
    for (std::uint64_t cand = a; cand != 0; cand &= cand - 1) {
      const auto i = static_cast<std::uint32_t>(std::countr_zero(cand));
      const std::uint32_t j = (c + order_ - i) % order_;
      if (j == i || !((a >> j) & 1u)) continue;
      // a^(n-2) = b^(n-2)  iff  (n-2)(i - j) = 0 mod m
      const std::uint64_t diff = (i + order_ - j) % order_;
      if ((e * diff) % order_ != 0) ev.main_targets.push_back(residue_of_[c]);
      break;
    }
  }
  std::sort(ev.main_targets.begin(), ev.main_targets.end());
  ev.hypothesis = !ev.main_targets.empty();
  if (ev.hypothesis) ev.target = ev.main_targets.front();
  return ev;
}

GroupMode SweepConfig::group() const { return mode.value_or(default_mode(theorem)); }

namespace {

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  const unsigned __int128 r = static_cast<unsigned __int128>(a) * b;
  return r > UINT64_MAX ? UINT64_MAX : static_cast<std::uint64_t>(r);
}

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return a > UINT64_MAX - b ? UINT64_MAX : a + b;
}

// Nonempty subsets of an m-set with at most k elements.
std::uint64_t subset_count(std::uint32_t m, std::size_t k) {
  std::uint64_t total = 0;
  std::uint64_t binom = 1;  // C(m, s)
  for (std::uint32_t s = 1; s <= std::min<std::size_t>(k, m); ++s) {
    binom = saturating_mul(binom, m - s + 1) / s;  // exact while unsaturated
    total = saturating_add(total, binom);
  }
  return total;
}

std::size_t size_limit(const SweepConfig& config, std::uint32_t order) {
  std::size_t k = config.max_set_size;
  if (k == 0) k = config.exhaustive ? order : kDefaultSampleMaxSize;
  return std::min<std::size_t>(k, order);
}

}  // namespace

void SweepConfig::validate() const {
  if (primes.empty()) throw ConfigError("at least one prime is required");
  for (auto p : primes) (void)PrimeField(p);
  if (mode && mode_is_fixed(theorem) && *mode != default_mode(theorem)) {
    throw ConfigError("theorem '" + std::string(to_string(theorem)) + "' is stated for " +
                      std::string(to_string(default_mode(theorem))) + " sets");
  }
  if (partitions == 0) throw ConfigError("partition count must be positive");
  if (!exhaustive) return;
  for (auto p : primes) {
    const std::uint32_t order = PrimeField(p).group_order(group() == GroupMode::Multiplicative);
    if (order > CyclicMaskGroup::kMaxOrder) {
      throw ConfigError("exhaustive sweep over a group of order " + std::to_string(order) +
                        " is not supported; use sampling");
    }
  }
  const std::uint64_t cost = exhaustive_cost(*this);
  if (cost > budget) {
    throw ConfigError("exhaustive sweep needs " + std::to_string(cost) +
                      " hypothesis checks, over budget " + std::to_string(budget));
  }
}

std::uint64_t exhaustive_cost(const SweepConfig& config) {
  std::uint64_t total = 0;
  for (auto p : config.primes) {
    const std::uint32_t order = p - (config.group() == GroupMode::Multiplicative ? 1 : 0);
    const std::uint64_t sets = subset_count(order, size_limit(config, order));
    const std::uint64_t instances =
        is_single_set(config.theorem) ? sets : saturating_mul(sets, sets);
    total = saturating_add(total, saturating_mul(instances, order));
  }
  return total;
}

PrimeSummary& PrimeSummary::operator+=(const PrimeSummary& o) {
  examined += o.examined;
  hypothesis_satisfying += o.hypothesis_satisfying;
  bound_holding += o.bound_holding;
  tight += o.tight;
  counterexamples += o.counterexamples;
  certificates_checked += o.certificates_checked;
  contradictions += o.contradictions;
  return *this;
}

PrimeSummary Report::totals() const {
  PrimeSummary t;
  for (const auto& s : per_prime) t += s;
  return t;
}

std::optional<Certificate> certificate_for(TheoremTag theorem, const ElementSet& a,
                                           const ElementSet& b, std::optional<FieldElement> c) {
  auto need_target = [&]() {
    if (!c) throw PreconditionError("theorem needs a target element");
    return *c;
  };
  switch (theorem) {
    case TheoremTag::KempermanScherk:
      return std::nullopt;
    case TheoremTag::Additive:
      return additive_cover_certificate(a, b, need_target());
    case TheoremTag::Multiplicative:
      return multiplicative_cover_certificate(a, b, need_target());
    case TheoremTag::Cover:
      return hyperbola_cover_certificate(a, b);
    case TheoremTag::Main:
      return theorem5_certificate(a, need_target());
    case TheoremTag::CorollaryAdditive:
    case TheoremTag::CorollaryMultiplicative: {
      const FieldElement target = need_target();
      const auto reps = representations(a, a, target, true);
      if (reps.empty()) return std::nullopt;
      // Drop one side of the symmetric pair so the remaining representation is unique.
      const bool additive = theorem == TheoremTag::CorollaryAdditive;
      const FieldElement dropped = additive ? reps[0].a : reps[0].b;
      ResidueMask kept = a.mask();
      kept.reset(dropped.value());
      const ElementSet reduced(a.field(), a.mode(), kept);
      Certificate cert = additive ? additive_cover_certificate(a, reduced, target)
                                  : multiplicative_cover_certificate(a, reduced, target);
      cert.note = "corollary reduction: B = A \\ {" + std::to_string(dropped.value()) + "}";
      return cert;
    }
  }
  return std::nullopt;
}

namespace {

// Results of one partition of one prime. Instances are appended in
// enumeration order, so concatenating partitions in order and truncating
// reproduces the single-partition result exactly.
struct Partial {
  PrimeSummary summary;
  std::vector<Instance> tight;
  std::vector<Instance> counterexamples;
};

class Recorder {
 public:
  Recorder(const SweepConfig& config, PrimeField field, bool all_main_targets)
      : config_(config), field_(field), all_main_targets_(all_main_targets) {}

  template <typename MakeInstance, typename MakeSet>
  void record(Partial& out, const Evaluation& ev, MakeInstance&& make_instance,
              MakeSet&& make_set) const {
    ++out.summary.examined;
    if (!ev.hypothesis) return;
    ++out.summary.hypothesis_satisfying;

    if (config_.theorem == TheoremTag::Main) {
      const ElementSet a = make_set();
      const std::size_t count = all_main_targets_ ? ev.main_targets.size() : 1;
      for (std::size_t i = 0; i < count; ++i) {
        const Certificate cert = theorem5_certificate(a, field_.element(ev.main_targets[i]));
        ++out.summary.certificates_checked;
        if (cert.verdict == Verdict::Contradiction) ++out.summary.contradictions;
      }
    }

    const auto size = signed_size(ev.combined_size);
    if (size >= ev.bound) {
      ++out.summary.bound_holding;
      if (size == ev.bound) {
        ++out.summary.tight;
        if (out.tight.size() < config_.tight_limit) out.tight.push_back(make_instance());
      }
    } else {
      ++out.summary.counterexamples;
      if (out.counterexamples.size() < config_.tight_limit) {
        out.counterexamples.push_back(make_instance());
      }
    }
  }

 private:
  const SweepConfig& config_;
  PrimeField field_;
  bool all_main_targets_;
};

template <typename Work>
std::vector<Partial> run_partitions(unsigned partitions, Work&& work) {
  std::vector<Partial> parts(partitions);
  if (partitions == 1) {
    work(0u, parts[0]);
    return parts;
  }
  std::vector<std::thread> threads;
  threads.reserve(partitions);
  for (unsigned k = 0; k < partitions; ++k) {
    threads.emplace_back([&, k] { work(k, parts[k]); });
  }
  for (auto& t : threads) t.join();
  return parts;
}

void merge_into(Report& report, std::uint32_t p, std::vector<Partial> parts) {
  PrimeSummary summary;
  summary.p = p;
  std::vector<Instance> tight, counter;
  for (auto& part : parts) {
    summary += part.summary;
    for (auto& inst : part.tight) tight.push_back(std::move(inst));
    for (auto& inst : part.counterexamples) counter.push_back(std::move(inst));
  }
  const std::size_t limit = report.config.tight_limit;
  if (tight.size() > limit) tight.resize(limit);
  if (counter.size() > limit) counter.resize(limit);
  report.per_prime.push_back(summary);
  for (auto& inst : tight) report.tight.push_back(std::move(inst));
  for (auto& inst : counter) report.counterexamples.push_back(std::move(inst));
}

void attach_certificates(Report& report) {
  const SweepConfig& config = report.config;
  auto attach = [&](Instance& inst, bool always) {
    if (!always && !config.attach_certificates) return;
    const PrimeField field(inst.p);
    const ElementSet a(field, config.group(), inst.a);
    const ElementSet b = inst.b ? ElementSet(field, config.group(), *inst.b) : a;
    std::optional<FieldElement> c;
    if (inst.c) c = field.element(*inst.c);
    inst.certificate = certificate_for(config.theorem, a, b, c);
  };
  for (auto& inst : report.tight) attach(inst, false);
  for (auto& inst : report.counterexamples) attach(inst, true);
}

// Contiguous slice [lo, hi) of [begin, end) for partition k of n.
std::pair<std::uint64_t, std::uint64_t> slice(std::uint64_t begin, std::uint64_t end, unsigned k,
                                              unsigned n) {
  const std::uint64_t span = end - begin;
  return {begin + span * k / n, begin + span * (k + 1) / n};
}

}  // namespace

Report exhaustive_verify(const SweepConfig& config) {
  SweepConfig effective = config;
  effective.exhaustive = true;
  effective.validate();
  const auto start = std::chrono::steady_clock::now();

  Report report;
  report.config = effective;
  const bool single = is_single_set(effective.theorem);
  for (auto p : effective.primes) {
    const PrimeField field(p);
    const CyclicMaskGroup group(field, effective.group());
    const std::size_t limit = size_limit(effective, group.order());
    const std::uint64_t end = group.full() + 1;
    const Recorder recorder(effective, field, true);

    auto parts = run_partitions(effective.partitions, [&](unsigned k, Partial& out) {
      const auto [lo, hi] = slice(1, end, k, effective.partitions);
      for (std::uint64_t a = lo; a < hi; ++a) {
        if (static_cast<std::size_t>(std::popcount(a)) > limit) continue;
        auto make_set = [&] { return group.to_set(a); };
        if (single) {
          const Evaluation ev = group.evaluate(effective.theorem, a, a);
          recorder.record(
              out, ev,
              [&] {
                return Instance{p, group.residues(a), std::nullopt, ev.target, ev.combined_size,
                                ev.bound, std::nullopt};
              },
              make_set);
          continue;
        }
        for (std::uint64_t b = 1; b < end; ++b) {
          if (static_cast<std::size_t>(std::popcount(b)) > limit) continue;
          const Evaluation ev = group.evaluate(effective.theorem, a, b);
          recorder.record(
              out, ev,
              [&] {
                return Instance{p, group.residues(a), group.residues(b), ev.target,
                                ev.combined_size, ev.bound, std::nullopt};
              },
              make_set);
        }
      }
    });
    merge_into(report, p, std::move(parts));
  }
  attach_certificates(report);
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

namespace {

std::uint64_t sample_seed(std::uint64_t seed, std::uint32_t p, std::uint64_t index) {
  SplitMix64 mix(seed ^ (std::uint64_t{p} << 40));
  const std::uint64_t base = mix.next();
  SplitMix64 per_sample(base + index * 0xd1342543de82ef95ULL);
  return per_sample.next();
}

std::vector<std::uint32_t> draw_set(SplitMix64& rng, PrimeField field, GroupMode mode,
                                    std::size_t max_size) {
  const bool mult = mode == GroupMode::Multiplicative;
  const std::uint32_t order = field.group_order(mult);
  const std::size_t size = 1 + rng.below(max_size);
  std::vector<std::uint32_t> chosen;
  while (chosen.size() < size) {
    const auto r = static_cast<std::uint32_t>(rng.below(order)) + (mult ? 1 : 0);
    if (std::find(chosen.begin(), chosen.end(), r) == chosen.end()) chosen.push_back(r);
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

}  // namespace

Report hunt_counterexample(const SweepConfig& config) {
  SweepConfig effective = config;
  effective.exhaustive = false;
  effective.validate();
  const auto start = std::chrono::steady_clock::now();

  Report report;
  report.config = effective;
  const bool single = is_single_set(effective.theorem);
  const GroupMode mode = effective.group();
  for (auto p : effective.primes) {
    const PrimeField field(p);
    const std::size_t limit = size_limit(effective, field.group_order(mode == GroupMode::Multiplicative));
    const Recorder recorder(effective, field, false);

    auto parts = run_partitions(effective.partitions, [&](unsigned k, Partial& out) {
      const auto [lo, hi] = slice(0, effective.samples, k, effective.partitions);
      for (std::uint64_t i = lo; i < hi; ++i) {
        SplitMix64 rng(sample_seed(effective.seed, p, i));
        const auto ra = draw_set(rng, field, mode, limit);
        const ElementSet a(field, mode, ra);
        std::optional<ElementSet> b;
        if (!single) b = ElementSet(field, mode, draw_set(rng, field, mode, limit));
        const Evaluation ev = evaluate_instance(effective.theorem, a, b ? *b : a);
        recorder.record(
            out, ev,
            [&] {
              std::optional<std::vector<std::uint32_t>> rb;
              if (b) rb = std::vector<std::uint32_t>(b->residues().begin(), b->residues().end());
              return Instance{p, ra, rb, ev.target, ev.combined_size, ev.bound, std::nullopt};
            },
            [&] { return a; });
      }
    });
    merge_into(report, p, std::move(parts));
  }
  attach_certificates(report);
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

TightExample construct_tight_example(std::uint32_t n, std::uint64_t cap) {
  if (n < 3) throw PreconditionError("tight example needs n >= 3");
  const std::uint64_t d = 2 * std::uint64_t{n} - 4;
  const PrimeField field = find_prime_with_subgroup(d, 3, cap);
  const FieldElement w = primitive_root_of_unity(field, d);

  ResidueMask ma(field.modulus()), mb(field.modulus());
  for (std::uint32_t k = 0; k < n; ++k) {
    ma.set(w.pow(k).value());
    if (k + 1 < n) mb.set(w.pow(k).value());
  }
  const ElementSet a(field, GroupMode::Multiplicative, ma);
  const ElementSet b(field, GroupMode::Multiplicative, mb);
  const FieldElement c = field.one();
  const std::size_t restricted = restricted_combine(a, b).size();
  const auto reps = representations(a, b, c, true);
  if (n == 3) {
    std::optional<Representation> rep;
    if (reps.size() == 1) rep = reps[0];
    return TightExample{n, field, w, a, b, c, rep, restricted, true};
  }

  auto fail = [&](const std::string& what) {
    throw InvariantError("tight example for n = " + std::to_string(n) + " (p = " +
                         std::to_string(field.modulus()) + ", w = " +
                         std::to_string(w.value()) + "): " + what);
  };
  if (a.size() != n) fail("|A| = " + std::to_string(a.size()) + ", expected n");
  if (b.size() != n - 1) fail("|B| = " + std::to_string(b.size()) + ", expected n-1");
  if (restricted != d) fail("|A x' B| = " + std::to_string(restricted) + ", expected 2n-4");
  const FieldElement rep_a = w.pow(n - 1), rep_b = w.pow(std::int64_t{n} - 3);
  if (reps.size() != 1 || reps[0].a != rep_a || reps[0].b != rep_b) {
    fail("1 is not uniquely represented as w^(n-1) w^(n-3)");
  }
  return TightExample{n, field, w, a, b, c, reps[0], restricted, false};
}

}  // namespace nullcert
