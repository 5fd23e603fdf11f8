#include "doctest.h"
#include "satcfk/pattern.hpp"

using namespace satcfk;

namespace {

RingElement entry(const Morphism& f, const FreeComplex& src, const FreeComplex& tgt,
                  const std::string& from, const std::string& to) {
    for (const auto& [j, c] : f.row(src.index_of(from)))
        if (tgt.gen(j).id == to) return c;
    return RingElement::zero();
}

}  // namespace

TEST_CASE("pattern staircases from Alexander polynomials") {
    // unknot
    FreeComplex u = pattern_staircase(LaurentPoly1::one());
    CHECK(u.size() == 1);
    CHECK(u.gen(0).gr == Bigrading::ints(0, 0));

    // trefoil
    FreeComplex s = pattern_staircase(LaurentPoly1(std::map<int64_t, int64_t>{{1, 1}, {0, -1}, {-1, 1}}));
    CHECK(s.size() == 3);
    CHECK(validate(s).ok);
    CHECK(s.gen(0).gr == Bigrading::ints(0, -2));
    CHECK(s.gen(2).gr == Bigrading::ints(-2, 0));

    // T(2,5): 5 generators, steps (1,1,1,1); cross-check gr_w against the
    // tail sums of the H-function
    LaurentPoly1 t25(std::map<int64_t, int64_t>{{2, 1}, {1, -1}, {0, 1}, {-1, -1}, {-2, 1}});
    FreeComplex s5 = pattern_staircase(t25);
    CHECK(s5.size() == 5);
    CHECK(validate(s5).ok);
    for (uint32_t i = 0; i < 5; i += 2) {
        int64_t a = s5.gen(i).alex[0].as_integer();
        CHECK(s5.gen(i).gr.w.as_integer() == -2 * knot_tail_sum(t25, a + 1));
    }
    // not alternating
    CHECK_THROWS(pattern_staircase(LaurentPoly1(std::map<int64_t, int64_t>{{1, 1}, {-1, 1}})));
    CHECK_THROWS(pattern_staircase(LaurentPoly1(std::map<int64_t, int64_t>{{1, 1}, {0, -2}, {-1, 1}})));
}

TEST_CASE("T(2,6) slices and bimodule arrows match the reference data") {
    auto B = build_bimodule(builtin_pattern("torus2q", 0, 3));
    CHECK(B.N == Half::from_twice(3));
    // s = 1/2 slice: single generator at gr_w = -2
    const FreeComplex& C12 = B.staircase(Half::from_twice(1));
    CHECK(C12.size() == 1);
    CHECK(C12.gen(0).gr.w == Half::whole(-2));

    // L_sigma(x_{1/2}) = W, L_tau(x_{1/2}) = Z^2
    CHECK(entry(B.Lsigma.at(Half::from_twice(1)), C12, B.S, "x0", "x0") ==
          RingElement(Monomial::W()));
    CHECK(entry(B.Ltau.at(Half::from_twice(1)), C12, B.S, "x0", "x0") ==
          RingElement(Monomial::Z(2)));

    // L_W for T(2,6): C_{1/2} -> C_{-1/2} is multiplication by Z
    const FreeComplex& Cm12 = B.staircase(Half::from_twice(-1));
    CHECK(entry(B.LW.at(Half::from_twice(1)), C12, Cm12, "x0", "x0") ==
          RingElement(Monomial::Z()));
    // and the full row of sigma weights: 1, 1, W, W^2, W^3, W^3 U going left
    auto sig = [&](int64_t s2) {
        const FreeComplex& C = B.staircase(Half::from_twice(s2));
        return entry(B.Lsigma.at(Half::from_twice(s2)), C, B.S, "x0", "x0");
    };
    CHECK(sig(5) == RingElement::one());
    CHECK(sig(3) == RingElement::one());
    CHECK(sig(1) == RingElement(Monomial::W()));
    CHECK(sig(-1) == RingElement(Monomial::W(2)));
    CHECK(sig(-3) == RingElement(Monomial::W(3)));
    CHECK(sig(-5) == RingElement(Monomial::WZ(4, 1)));  // W^3 U

    CHECK(verify_bimodule(B).ok);
    CHECK(verify_N(B, B.N));
}

TEST_CASE("whitehead bimodule matches the reference data") {
    auto B = build_bimodule(builtin_pattern("whitehead"));
    CHECK(B.N == Half::whole(1));
    const FreeComplex& C0 = B.staircase(Half::whole(0));
    CHECK(C0.size() == 3);
    // x0 at (0,1), z0 at (0,-1), connecting y
    CHECK(C0.gen(0).alex[1] == Half::whole(1));
    CHECK(C0.gen(0).gr.w == Half::whole(0));
    CHECK(C0.gen(C0.index_of("x2")).alex[1] == Half::whole(-1));
    CHECK(C0.gen(C0.index_of("x2")).gr.w == Half::whole(-2));

    const FreeComplex& Cm1 = B.staircase(Half::whole(-1));
    const FreeComplex& C1 = B.staircase(Half::whole(1));
    CHECK(Cm1.size() == 1);

    // reference arrows: L_Z(x_{-1}) = x_0 (x) W, L_W(x_0) = x_{-1} (x) Z,
    // L_Z(x_0) = x_1 (x) Z, L_W(z_0) = x_{-1} (x) W
    CHECK(entry(B.LZ.at(Half::whole(-1)), Cm1, C0, "x0", "x0") == RingElement(Monomial::W()));
    CHECK(entry(B.LW.at(Half::whole(0)), C0, Cm1, "x0", "x0") == RingElement(Monomial::Z()));
    CHECK(entry(B.LZ.at(Half::whole(0)), C0, C1, "x0", "x0") == RingElement(Monomial::Z()));
    CHECK(entry(B.LW.at(Half::whole(0)), C0, Cm1, "x2", "x0") == RingElement(Monomial::W()));

    // h_{Z,W}(z_0) = y_0 (x) W as in the reference; h_{W,Z} depends on the
    // deterministic lift choice, so check its defining equation instead
    CHECK(entry(B.hZW.at(Half::whole(0)), C0, C0, "x2", "y1") == RingElement(Monomial::W()));
    {
        Morphism lhs = boundary(C0, C0, B.hWZ.at(Half::whole(0)));
        Morphism rhs = add(compose(B.LW.at(Half::whole(1)), B.LZ.at(Half::whole(0))),
                           Morphism::identity(C0).scaled(RingElement(Monomial::U0(1))));
        CHECK(morphisms_equal(lhs, rhs));
    }

    // sigma and tau on x_0 and z_0 are both multiplication by Z resp. W
    CHECK(entry(B.Lsigma.at(Half::whole(0)), C0, B.S, "x0", "x0") == RingElement(Monomial::Z()));
    CHECK(entry(B.Ltau.at(Half::whole(0)), C0, B.S, "x0", "x0") == RingElement(Monomial::Z()));
    CHECK(entry(B.Lsigma.at(Half::whole(0)), C0, B.S, "x2", "x0") == RingElement(Monomial::W()));
    CHECK(entry(B.Ltau.at(Half::whole(0)), C0, B.S, "x2", "x0") == RingElement(Monomial::W()));

    CHECK(verify_bimodule(B).ok);
    CHECK(verify_N(B, B.N));
}

TEST_CASE("T(2,2q) patterns have vanishing internal correctors") {
    auto B = build_bimodule(builtin_pattern("torus2q", 0, 2));
    for (const auto& [s, h] : B.hWZ) CHECK(h.is_zero());
    for (const auto& [s, h] : B.hZW) CHECK(h.is_zero());
    CHECK(verify_bimodule(B).ok);
    CHECK(verify_N(B, Half::whole(1)));
}

TEST_CASE("mazur bimodule matches the reference data") {
    auto B = build_bimodule(builtin_pattern("mazur"));
    CHECK(B.N == Half::from_twice(3));
    const FreeComplex& Cm = B.staircase(Half::from_twice(-1));  // C_{-1/2}
    CHECK(Cm.size() == 3);
    // h_{Z,W}(z_{-1/2}) = y_{-1/2} (x) W
    CHECK(entry(B.hZW.at(Half::from_twice(-1)), Cm, Cm, "x2", "y1") ==
          RingElement(Monomial::W()));
    // h_{W,Z} at s = 1/2 satisfies its defining equation (the particular
    // representative depends on the deterministic lift choices)
    const FreeComplex& Cp = B.staircase(Half::from_twice(1));
    {
        Morphism lhs = boundary(Cp, Cp, B.hWZ.at(Half::from_twice(1)));
        Morphism rhs = add(compose(B.LW.at(Half::from_twice(3)), B.LZ.at(Half::from_twice(1))),
                           Morphism::identity(Cp).scaled(RingElement(Monomial::U0(1))));
        CHECK(morphisms_equal(lhs, rhs));
    }
    CHECK(verify_bimodule(B).ok);
    CHECK(verify_N(B, B.N));
}

TEST_CASE("forced bimodule failures are reported") {
    auto B = build_bimodule(builtin_pattern("whitehead"));
    // zero out hWZ at s=0
    PatternBimodule bad = B;
    bad.hWZ.at(Half::whole(0)) = Homotopy(bad.staircase(Half::whole(0)).size(),
                                          Bigrading::ints(-1, -1));
    CHECK_FALSE(verify_bimodule(bad).ok);

    // break the Lsigma grading by (0,2)
    PatternBimodule bad2 = B;
    Morphism& f = bad2.Lsigma.at(Half::whole(0));
    f.set_degree(f.degree() + Bigrading::ints(0, 2));
    CHECK_FALSE(verify_bimodule(bad2).ok);
}

TEST_CASE("cable(3,2) bimodule and its nontrivial mixed homotopies") {
    auto B = build_bimodule(builtin_pattern("cable", 3, 2));
    CHECK(B.N == Half::from_twice(3));
    CHECK(B.S.size() == 3);  // trefoil staircase
    CHECK(verify_bimodule(B).ok);
    CHECK(verify_N(B, B.N));
    // this pattern carries nontrivial mixed homotopies; the solver returns
    // some valid choice, so the defining equations hold and at least one of
    // the mixed maps is nonzero
    bool any = false;
    for (const auto& [s, h] : B.hSigW) any = any || !h.is_zero();
    for (const auto& [s, h] : B.hSigZ) any = any || !h.is_zero();
    for (const auto& [s, h] : B.hTauW) any = any || !h.is_zero();
    for (const auto& [s, h] : B.hTauZ) any = any || !h.is_zero();
    CHECK(any);
}

TEST_CASE("verify_N rejects non-minimal N") {
    auto B = build_bimodule(builtin_pattern("torus2q", 0, 2));
    CHECK(verify_N(B, Half::whole(1)));
    CHECK_FALSE(verify_N(B, Half::whole(2)));
}

TEST_CASE("pattern N passes verify_N for every builtin") {
    for (const auto& name : {"whitehead", "mazur"}) {
        auto B = build_bimodule(builtin_pattern(name));
        CHECK(verify_N(B, B.N));
    }
    for (int64_t q = 1; q <= 4; ++q) {
        auto B = build_bimodule(builtin_pattern("torus2q", 0, q));
        CHECK(verify_N(B, B.N));
    }
    auto B = build_bimodule(builtin_pattern("ktwobridge", 3));
    CHECK(verify_N(B, B.N));
}

TEST_CASE("lift_chain_map composition differs from the direct lift by a boundary") {
    auto B = build_bimodule(builtin_pattern("mazur"));
    // two L_W steps from C_{3/2} vs the direct lift of the same degree
    Half s = Half::from_twice(3);
    const FreeComplex& A = B.staircase(s);
    const FreeComplex& Cc = B.staircase(s - Half::whole(2));
    Morphism two = compose(B.LW.at(s - Half::whole(1)), B.LW.at(s));
    Morphism direct = lift_chain_map(A, Cc, Bigrading::ints(-4, 0));
    Morphism diff = add(two, direct);
    diff.set_degree(Bigrading::ints(-4, 0));
    // the difference is null-homotopic (the solve succeeds)
    CHECK_NOTHROW(solve_null_homotopy(A, Cc, diff));
}

TEST_CASE("bimodule construction is deterministic") {
    auto a = build_bimodule(builtin_pattern("mazur"));
    auto b = build_bimodule(builtin_pattern("mazur"));
    REQUIRE(a.C.size() == b.C.size());
    auto same = [](const std::map<Half, Morphism>& x, const std::map<Half, Morphism>& y) {
        if (x.size() != y.size()) return false;
        for (const auto& [s, f] : x) {
            auto it = y.find(s);
            if (it == y.end() || !morphisms_equal(f, it->second)) return false;
        }
        return true;
    };
    CHECK(same(a.LW, b.LW));
    CHECK(same(a.LZ, b.LZ));
    CHECK(same(a.Lsigma, b.Lsigma));
    CHECK(same(a.Ltau, b.Ltau));
    CHECK(same(a.hWZ, b.hWZ));
    CHECK(same(a.hZW, b.hZW));
    CHECK(same(a.hSigW, b.hSigW));
    CHECK(same(a.hSigZ, b.hSigZ));
    CHECK(same(a.hTauW, b.hTauW));
    CHECK(same(a.hTauZ, b.hTauZ));
}
