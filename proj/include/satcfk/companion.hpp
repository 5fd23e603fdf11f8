#pragma once

#include <string>
#include <vector>

#include "satcfk/alexander.hpp"
#include "satcfk/complex.hpp"

namespace satcfk {

// A sigma/tau arrow of the surgery module: from a cycle generator of the
// knot complex into the single B(K) generator, weighted U^u T^t. Tau arrows
// store the framing-free T-power; assembly adds n.
struct SurgeryArrow {
    std::string from;
    int64_t upow = 0;
    int64_t tpow = 0;
};

struct CompanionData {
    std::string name;
    FreeComplex cfk;  // over the idempotent-0 ring, 1-component Alexander grading
    std::vector<SurgeryArrow> sigma;
    std::vector<SurgeryArrow> tau_base;
    int64_t genus = 0;

    int64_t alexander_of(const std::string& id) const;
};

// staircase companion synthesized from the Alexander polynomial of an
// L-space knot; sigma arrow on each cycle x: U^{H_K(A(x))} T^{A(x)-1},
// tau base arrow U^{H_K(-A(x))} T^{A(x)-1}
CompanionData staircase_companion(const LaurentPoly1& delta_k, const std::string& name = "");

// staircase plus unit boxes (thin knots). Placement: (gr_w, gr_z, A) of the
// box corner generator carrying both outgoing arrows.
struct BoxPlacement {
    Bigrading gr;
    Half alex;
};
CompanionData thin_companion(const LaurentPoly1& delta_k, const std::vector<BoxPlacement>& boxes,
                             const std::string& name = "");

// built-ins: unknot, trefoil-rh, torus(2,k) via "torus2k" with odd k >= 3,
// figure-eight
CompanionData builtin_companion(const std::string& name, int64_t k = 0);

// full consistency check: validates cfk, Alexander symmetry, genus, and the
// delta^2 = 0 consistency of the sigma/tau arrows through phi_sigma/phi_tau
ValidationReport verify_companion(const CompanionData& K);

}  // namespace satcfk
