#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "satcfk/halfint.hpp"

namespace satcfk {

// (gr_w, gr_z) bigrading. Alexander degree A = (gr_w - gr_z)/2.
struct Bigrading {
    Half w, z;

    Bigrading() = default;
    Bigrading(Half w_, Half z_) : w(w_), z(z_) {}
    static Bigrading ints(int64_t w_, int64_t z_) { return {Half::whole(w_), Half::whole(z_)}; }

    Half alexander() const { return Half::from_twice((w - z).twice() / 2); }

    Bigrading operator+(const Bigrading& o) const { return {w + o.w, z + o.z}; }
    Bigrading operator-(const Bigrading& o) const { return {w - o.w, z - o.z}; }
    auto operator<=>(const Bigrading&) const = default;

    std::string str() const { return "(" + w.str() + "," + z.str() + ")"; }
};

// A monomial in one of the two idempotent rings.
//   idempotent 0: W^a Z^b with a, b >= 0
//   idempotent 1: U^a T^b with a >= 0, b any integer
struct Monomial {
    int8_t idem = 0;
    int32_t a = 0;
    int32_t b = 0;

    static Monomial one(int8_t idem = 0) { return {idem, 0, 0}; }
    static Monomial WZ(int32_t wpow, int32_t zpow);
    static Monomial W(int32_t p = 1) { return WZ(p, 0); }
    static Monomial Z(int32_t p = 1) { return WZ(0, p); }
    static Monomial U0(int32_t p = 1) { return WZ(p, p); }  // U = WZ in idempotent 0
    static Monomial UT(int32_t upow, int32_t tpow);

    bool is_one() const { return a == 0 && b == 0; }

    Bigrading grading() const {
        if (idem == 0) return Bigrading::ints(-2 * a, -2 * b);
        return Bigrading::ints(-2 * a, -2 * a);
    }
    // Alexander degree: A(W) = -1, A(Z) = +1, A(U) = A(T) = 0.
    Half alexander() const {
        if (idem == 0) return Half::whole(b - a);
        return Half::whole(0);
    }

    auto operator<=>(const Monomial&) const = default;

    std::string str() const;
};

Monomial mul(const Monomial& x, const Monomial& y);

// Algebra maps to idempotent 1:  phi_sigma(W^i Z^j) = U^i T^{j-i},
// phi_tau(W^i Z^j) = U^j T^{j-i}.
Monomial phi_sigma(const Monomial& m);
Monomial phi_tau(const Monomial& m);

// GF(2) sum of monomials of a single idempotent; presence of a term means
// coefficient 1, addition is symmetric difference.
class RingElement {
public:
    RingElement() = default;
    RingElement(Monomial m) { terms_.push_back(m); }

    static RingElement zero() { return RingElement(); }
    static RingElement one(int8_t idem = 0) { return RingElement(Monomial::one(idem)); }

    bool is_zero() const { return terms_.empty(); }
    bool is_one() const { return terms_.size() == 1 && terms_[0].is_one(); }
    bool is_monomial() const { return terms_.size() == 1; }
    const Monomial& monomial() const {
        if (!is_monomial()) throw std::runtime_error("RingElement: not a monomial: " + str());
        return terms_[0];
    }
    const std::vector<Monomial>& terms() const { return terms_; }

    // Homogeneous bigrading when all terms agree; nullopt otherwise.
    std::optional<Bigrading> grading() const;

    RingElement operator+(const RingElement& o) const;
    RingElement operator*(const RingElement& o) const;
    RingElement& operator+=(const RingElement& o) { *this = *this + o; return *this; }

    bool operator==(const RingElement&) const = default;

    std::string str() const;
    static RingElement parse(const std::string& s);

private:
    std::vector<Monomial> terms_;  // sorted, unique
    void normalize();
    friend RingElement make_ring_element(std::vector<Monomial> terms);
};

RingElement make_ring_element(std::vector<Monomial> terms);

Monomial parse_monomial(const std::string& s);

}  // namespace satcfk
