#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "satcfk/ring.hpp"

namespace satcfk {

struct Generator {
    std::string id;
    Bigrading gr;
    std::vector<Half> alex;  // 0-3 coordinates; last one is the R-module coordinate
    int8_t algdeg = -1;      // algebraic (cube) grading for staircases, -1 if unset
    std::string block;       // optional lattice label, diagnostics only
};

// Finitely generated free bigraded complex over F[W,Z] (a type-D module).
class FreeComplex {
public:
    uint32_t add_generator(Generator g);
    // accumulates GF(2)
    void add_diff(uint32_t from, uint32_t to, const RingElement& coef);
    void add_diff(const std::string& from, const std::string& to, const RingElement& coef);

    size_t size() const { return gens_.size(); }
    const Generator& gen(uint32_t i) const { return gens_[i]; }
    const std::vector<Generator>& gens() const { return gens_; }
    uint32_t index_of(const std::string& id) const;
    bool has_id(const std::string& id) const { return index_.count(id) != 0; }

    const std::vector<std::pair<uint32_t, RingElement>>& diff_row(uint32_t i) const { return rows_[i]; }
    RingElement diff_entry(uint32_t from, uint32_t to) const;

    bool all_algdeg_set() const;

    std::string str() const;

private:
    std::vector<Generator> gens_;
    std::map<std::string, uint32_t> index_;
    std::vector<std::vector<std::pair<uint32_t, RingElement>>> rows_;
};

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> errors;
    void fail(std::string msg) { ok = false; errors.push_back(std::move(msg)); }
    std::string str() const;
};

// d^2 = 0 plus grading homogeneity of every differential entry.
ValidationReport validate(const FreeComplex& C);
bool is_reduced(const FreeComplex& C);

// Graded morphism of complexes, stored sparsely against explicit source/target.
class Morphism {
public:
    Morphism() = default;
    Morphism(size_t src_size, Bigrading deg) : deg_(deg), rows_(src_size) {}

    static Morphism identity(const FreeComplex& C);

    Bigrading degree() const { return deg_; }
    void set_degree(Bigrading d) { deg_ = d; }

    void add_entry(uint32_t from, uint32_t to, const RingElement& coef);
    const std::vector<std::pair<uint32_t, RingElement>>& row(uint32_t i) const { return rows_[i]; }
    size_t src_size() const { return rows_.size(); }
    bool is_zero() const;

    // scalar multiple (monomial or sum)
    Morphism scaled(const RingElement& c) const;

    std::string str(const FreeComplex& src, const FreeComplex& tgt) const;

private:
    Bigrading deg_{};
    std::vector<std::vector<std::pair<uint32_t, RingElement>>> rows_;
};

using Homotopy = Morphism;

Morphism add(const Morphism& f, const Morphism& g);
// (g after f): f maps A->B, g maps B->C
Morphism compose(const Morphism& g, const Morphism& f);
// morphism differential dF = d_tgt . F + F . d_src
Morphism boundary(const FreeComplex& src, const FreeComplex& tgt, const Morphism& f);
bool is_chain_map(const FreeComplex& src, const FreeComplex& tgt, const Morphism& f);
bool morphisms_equal(const Morphism& f, const Morphism& g);
// entries homogeneous of the stated degree
ValidationReport validate_morphism(const FreeComplex& src, const FreeComplex& tgt, const Morphism& f);

struct Reduction {
    FreeComplex reduced;
    Morphism incl;  // reduced -> original
    Morphism proj;  // original -> reduced
    Homotopy h;     // original -> original, dh + hd = id + incl.proj
};

// Deterministic Gaussian cancellation of unit-coefficient differential
// entries, in (source-id, target-id) lexicographic order, tracking a strong
// deformation retraction onto the reduced complex.
Reduction reduce(const FreeComplex& C);

// Same cancellation order, without the SDR bookkeeping.
FreeComplex reduce_fast(const FreeComplex& C);

// Chain map between staircases of the given (gr_w,gr_z) shift, nonzero on
// homology, preserving the algebraic grading. Throws when no grading-
// admissible map exists.
Morphism lift_chain_map(const FreeComplex& A, const FreeComplex& B, Bigrading shift);

// Solve dH + Hd = F for a null-homotopic chain map F of known degree. The
// homotopy raises the algebraic grading by 1 when both complexes carry
// algdeg labels. Throws when the linear system is inconsistent.
Homotopy solve_null_homotopy(const FreeComplex& src, const FreeComplex& tgt, const Morphism& f);

enum class IsoGrading {
    Exact,              // gradings must match on the nose
    PerComponentShift,  // each connected component may carry its own (gr_w,gr_z) offset
};

// Grading-preserving isomorphism matching differentials, by backtracking.
// Both complexes should be reduced for a meaningful homotopy-type answer.
bool iso_check(const FreeComplex& C1, const FreeComplex& C2,
               IsoGrading mode = IsoGrading::Exact);

// Permutation isomorphism allowing one global grading offset applied to C1;
// returns the matching (C1 index -> C2 index) and the offset used.
struct PermIso {
    std::vector<uint32_t> match;
    Bigrading offset;
};
std::optional<PermIso> find_permutation_iso(const FreeComplex& C1, const FreeComplex& C2);

FreeComplex direct_sum(const std::vector<const FreeComplex*>& parts,
                       const std::vector<std::string>& prefixes);

}  // namespace satcfk
