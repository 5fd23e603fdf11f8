#pragma once

#include <map>
#include <string>
#include <vector>

#include "satcfk/complex.hpp"
#include "satcfk/halfint.hpp"

namespace satcfk {

// One-variable Laurent polynomial with integer coefficients and integer
// exponents (Alexander polynomials of knots).
class LaurentPoly1 {
public:
    LaurentPoly1() = default;
    explicit LaurentPoly1(std::map<int64_t, int64_t> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
    static LaurentPoly1 one() { return LaurentPoly1(std::map<int64_t, int64_t>{{0, 1}}); }

    int64_t coeff(int64_t e) const {
        auto it = coeffs_.find(e);
        return it == coeffs_.end() ? 0 : it->second;
    }
    const std::map<int64_t, int64_t>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    int64_t max_degree() const;
    int64_t eval_at_one() const;
    bool symmetric() const;  // p(t^-1) = p(t)

    void set(int64_t e, int64_t c) {
        if (c == 0) coeffs_.erase(e); else coeffs_[e] = c;
    }
    void add(int64_t e, int64_t c) {
        coeffs_[e] += c;
        if (coeffs_[e] == 0) coeffs_.erase(e);
    }

    LaurentPoly1 operator*(const LaurentPoly1& o) const;
    LaurentPoly1 operator+(const LaurentPoly1& o) const;
    // substitute t -> t^k
    LaurentPoly1 compose_power(int64_t k) const;
    bool operator==(const LaurentPoly1&) const = default;

    std::string str() const;

private:
    std::map<int64_t, int64_t> coeffs_;
    void trim();
};

// Two-variable Laurent polynomial; exponents are half-integers lying in the
// Alexander lattice of the link.
class LaurentPoly2 {
public:
    LaurentPoly2() = default;

    void add(Half a1, Half a2, int64_t c) {
        auto key = std::make_pair(a1, a2);
        coeffs_[key] += c;
        if (coeffs_[key] == 0) coeffs_.erase(key);
    }
    int64_t coeff(Half a1, Half a2) const {
        auto it = coeffs_.find({a1, a2});
        return it == coeffs_.end() ? 0 : it->second;
    }
    const std::map<std::pair<Half, Half>, int64_t>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    // coeff(a1,a2) == coeff(1-a1, 1-a2), possibly after a global sign
    bool symmetric_normalized() const;

    std::string str() const;

private:
    std::map<std::pair<Half, Half>, int64_t> coeffs_;
};

// Sum over s' >= m of the chi-series coefficients of Delta_K(t)/(1 - t^-1);
// equals H_K(m-1) for L-space knots.
int64_t knot_tail_sum(const LaurentPoly1& delta, int64_t m);

// Windowed H-function table with boundary extrapolation.
class HFunction {
public:
    HFunction() = default;
    HFunction(Half lk_half, Half s_min, Half s_max, Half t_min, Half t_max,
              std::vector<std::vector<int64_t>> table);

    Half lk_half() const { return lk_half_; }
    Half s_min() const { return s_min_; }
    Half s_max() const { return s_max_; }
    Half t_min() const { return t_min_; }
    Half t_max() const { return t_max_; }

    // extrapolates outside the window: +1 per step to the left/bottom,
    // constant to the right/top
    int64_t at(Half s, Half t) const;

    // step sizes in {0,1} and the symmetry H(-s,-t) = H(s,t) + s + t on the
    // whole window
    ValidationReport check_invariants() const;

private:
    Half lk_half_{}, s_min_{}, s_max_{}, t_min_{}, t_max_{};
    std::vector<std::vector<int64_t>> table_;  // [s index][t index]
};

// Gorsky-Nemethi formula for a 2-component L-space link:
//   H(s1,s2) = tail(D1, s1-lk/2+1) + tail(D2, s2-lk/2+1)
//              - sum_{(a1,a2) >= (s1+1,s2+1)} coeff_{DL}(a1,a2)
HFunction h_function_2comp(const LaurentPoly2& delta_l, const LaurentPoly1& delta1,
                           const LaurentPoly1& delta2, int64_t lk, Half s_min, Half s_max,
                           Half t_min, Half t_max);

// highest power of t1 in the normalized 2-variable Alexander polynomial
Half compute_N(const LaurentPoly2& delta_l);

// graded Euler characteristic: sum over generators of (-1)^{gr_w} t^{A},
// reading A from the last Alexander coordinate.
LaurentPoly1 euler_char(const FreeComplex& C);

}  // namespace satcfk
