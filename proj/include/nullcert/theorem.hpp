#pragma once

#include <string_view>

#include "nullcert/sets.hpp"

namespace nullcert {

/// The inequalities the workbench can certify or sweep.
enum class TheoremTag {
  KempermanScherk,          // ks:             |A.B|  >= |A|+|B|-1, unique rep
  Additive,                 // additive:       |A+'B| >= |A|+|B|-2, unique restricted rep
  Multiplicative,           // mult:           |Ax'B| >= |A|+|B|-3, unique restricted rep
  Main,                     // main:           |Ax'A| >= 2n-3, symmetric pair, a^(n-2) != b^(n-2)
  Cover,                    // cover:          |Ax'B| >= |A|+|B|-2-floor(|N|/2), N nonempty
  CorollaryAdditive,        // corollary-add:  |A+'A| >= 2|A|-3, symmetric pair
  CorollaryMultiplicative,  // corollary-mult: |Ax'A| >= 2|A|-4, symmetric pair
};

std::string_view to_string(TheoremTag tag);
/// Throws ConfigError on unknown tags.
TheoremTag parse_theorem_tag(std::string_view text);

/// Group the theorem lives in; ks works in either, defaulting to additive.
GroupMode default_mode(TheoremTag tag);
bool mode_is_fixed(TheoremTag tag);
/// Theorems about a single set A (rather than a pair A, B).
bool is_single_set(TheoremTag tag);

}  // namespace nullcert
