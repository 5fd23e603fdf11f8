#pragma once

#include <map>
#include <string>

#include "satcfk/alexander.hpp"
#include "satcfk/complex.hpp"

namespace satcfk {

struct PatternData {
    std::string name;
    LaurentPoly2 delta_l;   // 2-variable Alexander polynomial of mu u P
    LaurentPoly1 delta_p;   // Alexander polynomial of the pattern as a knot
    int64_t winding = 0;    // l = lk(mu, P)
};

// Built-in pattern library. Names: torus2q (param q), cable (p, q),
// whitehead, mazur, ktwobridge (param m).
PatternData builtin_pattern(const std::string& name, int64_t p = 0, int64_t q = 0);

// staircase of an L-space knot from its Alexander polynomial (alternating
// +-1 coefficients), with standard gradings
FreeComplex pattern_staircase(const LaurentPoly1& delta_p);

// staircase complex of the slice H(s, -): one algdeg-0 generator per corner,
// connecting algdeg-1 generators with monomial weights fixed by gradings
FreeComplex staircase_from_slice(const HFunction& H, Half s);

struct PatternBimodule {
    PatternData data;
    HFunction H;
    Half N{};               // truncation parameter
    Half window_min{}, window_max{};   // available C_s indices
    std::map<Half, FreeComplex> C;
    FreeComplex S;
    // structure maps; LW[s]: C_s -> C_{s-1}, LZ[s]: C_s -> C_{s+1},
    // Lsigma[s], Ltau[s]: C_s -> S
    std::map<Half, Morphism> LW, LZ, Lsigma, Ltau;
    // corrector homotopies; hWZ/hZW[s]: C_s -> C_s, the four mixed ones C_s -> S
    std::map<Half, Homotopy> hWZ, hZW, hSigW, hSigZ, hTauW, hTauZ;

    int64_t lk() const { return data.winding; }
    const FreeComplex& staircase(Half s) const;
};

// Build all staircases and structure maps on a window containing [-N-2, N+2].
PatternBimodule build_bimodule(const PatternData& P);

// Check every defining equation and grading of the bimodule exactly.
ValidationReport verify_bimodule(const PatternBimodule& B);

// reduce(Cone(L_sigma)) empty at q = N and nonempty at q = N-1 (mirror for L_tau)
bool verify_N(const PatternBimodule& B, Half N);

FreeComplex mapping_cone(const FreeComplex& A, const FreeComplex& B, const Morphism& f);

}  // namespace satcfk
