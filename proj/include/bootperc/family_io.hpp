// Text forms of update families.
//
// Threshold literal:  N[a_1,...,a_d]r=R      e.g. "N[1,2,4]r=6"
// Explicit family:    JSON document {"dims": d, "rules": [[[x,..],[x,..]], ...]}
#pragma once

#include "bootperc/family.hpp"

#include <string>
#include <string_view>

namespace bootperc {

// Throws UsageError on malformed text, InvalidSpec on invalid values.
ThresholdFamily parse_family_literal(std::string_view text);

ExplicitFamily parse_explicit_family(std::string_view json_text);
ExplicitFamily load_explicit_family(const std::string& path);
std::string explicit_family_to_json(const ExplicitFamily& family);

} // namespace bootperc
