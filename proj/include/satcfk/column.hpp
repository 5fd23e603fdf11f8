#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>

#include "satcfk/complex.hpp"
#include "satcfk/halfint.hpp"

namespace satcfk {

// One column of a row diagram: a staircase complex, a grading shift, the
// single-letter actions leaving the column, and the corrector homotopies
// seated at it. Step and corrector morphisms are stored between the
// unshifted complexes; pointers are non-owning and must outlive the diagram.
struct Column {
    const FreeComplex* cx = nullptr;
    Bigrading shift{};
    Half alex_shift{};            // added to the last Alexander coordinate
    std::optional<Morphism> stepW;  // to column p-1
    std::optional<Morphism> stepZ;  // to column p+1
    std::optional<Homotopy> hWZ;    // delta3(W,Z,-) seed: this column to itself
    std::optional<Homotopy> hZW;    // delta3(Z,W,-) seed
};

class ColumnDiagram {
public:
    void set_column(Half p, Column c) { cols_[p] = std::move(c); }
    bool has_column(Half p) const { return cols_.count(p) != 0; }
    const Column& column(Half p) const;
    const std::map<Half, Column>& columns() const { return cols_; }

    // single-letter relations: W then Z == Z then W == U up to the declared
    // correctors, on every column with both neighbours present
    ValidationReport check_relations() const;

private:
    std::map<Half, Column> cols_;
};

// Sparse element of the total complex of a diagram.
using DiagramElement = std::map<std::pair<Half, uint32_t>, RingElement>;

// apply one W/Z step (letter = 'W' or 'Z')
DiagramElement apply_step(const ColumnDiagram& D, char letter, const DiagramElement& v);
// U-equivariant action of a monomial: U^min pulled out, pure letter power stepped
DiagramElement apply_monomial(const ColumnDiagram& D, const Monomial& m, const DiagramElement& v);
// delta3(b, a, -): a acts first; nonzero only for opposite pure letters
DiagramElement apply_delta3(const ColumnDiagram& D, const Monomial& b, const Monomial& a,
                            const DiagramElement& v);

// Finitely generated box tensor product: each generator x of X is replaced by
// the column complex at position wall - A(x); differential entries become
// single-letter composites plus corrector-derived delta3 terms over
// composable pairs of X-arrows.
struct BlockComplex {
    FreeComplex cx;
    // (X generator index, column, column-complex generator index) -> block index
    std::map<std::tuple<uint32_t, Half, uint32_t>, uint32_t> lookup;
    std::map<uint32_t, std::tuple<uint32_t, Half, uint32_t>> rev;
};

BlockComplex box_tensor(const FreeComplex& X, const ColumnDiagram& D, Half wall,
                        const std::string& id_prefix = "");

// Column-wise morphism data for tensoring a map of diagrams with X.
struct RowMorphismData {
    const ColumnDiagram* src = nullptr;
    const ColumnDiagram* tgt = nullptr;
    Half col_shift{};                 // f1 maps source column p to target column p+col_shift
    std::map<Half, Morphism> f1;      // keyed by source column
    // f2 correctors keyed by the column where the interrupting letter step starts;
    // the corrector maps into target column p + f2W/Z_col_shift
    std::map<Half, Morphism> f2W, f2Z;
    Half f2W_col_shift{}, f2Z_col_shift{};
};

// Phi(x (x) m) = x (x) f1(m) + sum over dx = x' (x) a of x' (x) f2(a, m)
Morphism box_tensor_morphism(const FreeComplex& X, const BlockComplex& src,
                             const BlockComplex& tgt, const RowMorphismData& f,
                             Bigrading expected_degree);

// key helpers for deterministic, lexicographically sortable ids
std::string key_half(Half h);

}  // namespace satcfk
