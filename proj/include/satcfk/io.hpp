#pragma once

#include <string>

#include "satcfk/assembly.hpp"
#include "satcfk/companion.hpp"
#include "satcfk/pattern.hpp"

namespace satcfk {

// chain-engine schema:
// {"generators":[{"id","grw","grz","alex":[...], "algdeg"?}],
//  "diff":[{"from","to","coef"}]}
// grading and Alexander values are written as twice-the-value integers
std::string complex_to_json(const FreeComplex& C);
FreeComplex complex_from_json(const std::string& json);

// polynomial schema: {"lk": int, "terms":[{"a1","a2","c"}]} (a1, a2 doubled)
std::string poly2_to_json(const LaurentPoly2& p, int64_t lk);
std::pair<LaurentPoly2, int64_t> poly2_from_json(const std::string& json);

// companion schema: chain-engine schema plus sigma/tauBase arrow lists
std::string companion_to_json(const CompanionData& K);
CompanionData companion_from_json(const std::string& json);
CompanionData load_companion(const std::string& json);  // parse + verify

std::string complex_to_dot(const FreeComplex& C);
std::string complex_to_text(const FreeComplex& C);

// H table: s1 across, s2 down from the top
std::string hfunction_to_text(const HFunction& H);

// Fig-7-style arrow table of a pattern bimodule
std::string bimodule_to_text(const PatternBimodule& B);

}  // namespace satcfk
