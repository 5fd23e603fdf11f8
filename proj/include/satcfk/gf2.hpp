#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace satcfk {

// Dense GF(2) linear system A x = b, rows packed into 64-bit words.
class Gf2System {
public:
    explicit Gf2System(size_t num_vars) : nvars_(num_vars), words_((num_vars + 63) / 64) {}

    void add_equation(const std::vector<size_t>& vars, bool rhs);

    // Lexicographically least solution in variable order 0,1,2,... or nullopt.
    std::optional<std::vector<bool>> solve_lex_min() const;

    size_t num_vars() const { return nvars_; }

private:
    size_t nvars_;
    size_t words_;
    std::vector<std::vector<uint64_t>> rows_;
    std::vector<uint8_t> rhs_;
};

}  // namespace satcfk
