#include "satcfk/gf2.hpp"

namespace satcfk {

void Gf2System::add_equation(const std::vector<size_t>& vars, bool rhs) {
    std::vector<uint64_t> row(words_, 0);
    for (size_t v : vars) row[v / 64] ^= (uint64_t(1) << (v % 64));
    rows_.push_back(std::move(row));
    rhs_.push_back(rhs ? 1 : 0);
}

namespace {

struct Elim {
    size_t nvars, words;
    std::vector<std::vector<uint64_t>> rows;
    std::vector<uint8_t> rhs;
    std::vector<ssize_t> pivot_row_of_var;

    Elim(size_t nv, size_t w) : nvars(nv), words(w), pivot_row_of_var(nv, -1) {}

    static ssize_t leading(const std::vector<uint64_t>& r, size_t nvars) {
        for (size_t w = 0; w * 64 < nvars; ++w) {
            if (r[w]) {
                uint64_t x = r[w];
                return ssize_t(w * 64 + __builtin_ctzll(x));
            }
        }
        return -1;
    }

    // Insert a row, eliminating against existing pivots. Returns false on 0 = 1.
    bool insert(std::vector<uint64_t> row, uint8_t b) {
        for (;;) {
            ssize_t lead = leading(row, nvars);
            if (lead < 0) return b == 0;
            ssize_t pr = pivot_row_of_var[lead];
            if (pr < 0) {
                pivot_row_of_var[lead] = ssize_t(rows.size());
                rows.push_back(std::move(row));
                rhs.push_back(b);
                return true;
            }
            for (size_t w = 0; w < words; ++w) row[w] ^= rows[pr][w];
            b ^= rhs[pr];
        }
    }
};

}  // namespace

std::optional<std::vector<bool>> Gf2System::solve_lex_min() const {
    Elim e(nvars_, words_);
    for (size_t i = 0; i < rows_.size(); ++i)
        if (!e.insert(rows_[i], rhs_[i])) return std::nullopt;

    // Greedily pin variables to 0 in order; a variable is forced only when
    // pinning it to 0 makes the system inconsistent.
    std::vector<bool> sol(nvars_, false);
    for (size_t v = 0; v < nvars_; ++v) {
        std::vector<uint64_t> unit(words_, 0);
        unit[v / 64] |= uint64_t(1) << (v % 64);
        Elim trial = e;
        if (trial.insert(unit, 0)) {
            e = std::move(trial);
            sol[v] = false;
        } else {
            std::vector<uint64_t> unit2(words_, 0);
            unit2[v / 64] |= uint64_t(1) << (v % 64);
            if (!e.insert(std::move(unit2), 1)) return std::nullopt;
            sol[v] = true;
        }
    }
    return sol;
}

}  // namespace satcfk
