#include "nullcert/theorem.hpp"

#include <array>
#include <string>
#include <utility>

#include "nullcert/error.hpp"

namespace nullcert {

namespace {

constexpr std::array<std::pair<TheoremTag, std::string_view>, 7> kTags{{
    {TheoremTag::KempermanScherk, "ks"},
    {TheoremTag::Additive, "additive"},
    {TheoremTag::Multiplicative, "mult"},
    {TheoremTag::Main, "main"},
    {TheoremTag::Cover, "cover"},
    {TheoremTag::CorollaryAdditive, "corollary-add"},
    {TheoremTag::CorollaryMultiplicative, "corollary-mult"},
}};

}  // namespace

std::string_view to_string(TheoremTag tag) {
  for (const auto& [t, name] : kTags) {
    if (t == tag) return name;
  }
  return "unknown";
}

TheoremTag parse_theorem_tag(std::string_view text) {
  for (const auto& [t, name] : kTags) {
    if (name == text) return t;
  }
  throw ConfigError("unknown theorem tag '" + std::string(text) +
                    "' (expected ks|additive|mult|main|cover|corollary-add|corollary-mult)");
}

GroupMode default_mode(TheoremTag tag) {
  switch (tag) {
    case TheoremTag::KempermanScherk:
    case TheoremTag::Additive:
    case TheoremTag::CorollaryAdditive:
      return GroupMode::Additive;
    default:
      return GroupMode::Multiplicative;
  }
}

bool mode_is_fixed(TheoremTag tag) { return tag != TheoremTag::KempermanScherk; }

bool is_single_set(TheoremTag tag) {
  return tag == TheoremTag::Main || tag == TheoremTag::CorollaryAdditive ||
         tag == TheoremTag::CorollaryMultiplicative;
}

}  // namespace nullcert
