#include "doctest.h"
#include "satcfk/companion.hpp"
#include "satcfk/io.hpp"

using namespace satcfk;

TEST_CASE("trefoil companion arrows match the reference surgery module data") {
    CompanionData K = builtin_companion("trefoil-rh");
    CHECK(K.genus == 1);
    CHECK(K.cfk.size() == 3);
    CHECK(validate(K.cfk).ok);
    // sigma: b |-> U T^-2, c |-> T^0; tau base: b |-> T^-2, c |-> U T^0
    // in our ids: x0 is the A=1 cycle (c), x2 the A=-1 cycle (b)
    REQUIRE(K.sigma.size() == 2);
    REQUIRE(K.tau_base.size() == 2);
    auto find = [](const std::vector<SurgeryArrow>& v, const std::string& id) {
        for (const auto& a : v)
            if (a.from == id) return a;
        throw std::runtime_error("missing arrow");
    };
    CHECK(find(K.sigma, "x0").upow == 0);
    CHECK(find(K.sigma, "x0").tpow == 0);
    CHECK(find(K.sigma, "x2").upow == 1);
    CHECK(find(K.sigma, "x2").tpow == -2);
    CHECK(find(K.tau_base, "x0").upow == 1);
    CHECK(find(K.tau_base, "x0").tpow == 0);
    CHECK(find(K.tau_base, "x2").upow == 0);
    CHECK(find(K.tau_base, "x2").tpow == -2);
    CHECK(verify_companion(K).ok);
}

TEST_CASE("unknot companion") {
    CompanionData K = builtin_companion("unknot");
    CHECK(K.cfk.size() == 1);
    CHECK(K.genus == 0);
    REQUIRE(K.sigma.size() == 1);
    CHECK(K.sigma[0].upow == 0);
    CHECK(K.sigma[0].tpow == -1);
    CHECK(K.tau_base[0].upow == 0);
    CHECK(K.tau_base[0].tpow == -1);
    CHECK(verify_companion(K).ok);
}

TEST_CASE("T(2,5) companion sigma U-powers") {
    LaurentPoly1 t25(std::map<int64_t, int64_t>{{2, 1}, {1, -1}, {0, 1}, {-1, -1}, {-2, 1}});
    CompanionData K = staircase_companion(t25);
    CHECK(K.genus == 2);
    // cycles at A = 2, 0, -2 with sigma U-powers 0, 1, 2
    std::map<int64_t, int64_t> upow;
    for (const auto& a : K.sigma) upow[K.alexander_of(a.from)] = a.upow;
    CHECK(upow[2] == 0);
    CHECK(upow[0] == 1);
    CHECK(upow[-2] == 2);
    CHECK(verify_companion(K).ok);
}

TEST_CASE("figure-eight thin companion") {
    CompanionData K = builtin_companion("figure-eight");
    CHECK(K.cfk.size() == 5);
    CHECK(K.genus == 1);
    CHECK(validate(K.cfk).ok);
    // sigma/tau only on the staircase summand
    CHECK(K.sigma.size() == 1);
    CHECK(K.tau_base.size() == 1);
    CHECK(K.sigma[0].from == "x0");
    CHECK(verify_companion(K).ok);
}

TEST_CASE("thin companion with zero boxes equals the staircase companion") {
    LaurentPoly1 rht(std::map<int64_t, int64_t>{{1, 1}, {0, -1}, {-1, 1}});
    CompanionData a = staircase_companion(rht);
    CompanionData b = thin_companion(rht, {});
    CHECK(a.cfk.size() == b.cfk.size());
    CHECK(iso_check(a.cfk, b.cfk));
    CHECK(a.sigma.size() == b.sigma.size());
}

TEST_CASE("boxes without a staircase are rejected") {
    CHECK_THROWS(thin_companion(LaurentPoly1(), {BoxPlacement{Bigrading::ints(0, 0), Half::whole(0)}}));
}

TEST_CASE("companion JSON round trip and tampering detection") {
    CompanionData K = builtin_companion("trefoil-rh");
    std::string j = companion_to_json(K);
    CompanionData L = load_companion(j);
    CHECK(iso_check(K.cfk, L.cfk));
    CHECK(L.sigma.size() == K.sigma.size());
    CHECK(verify_companion(L).ok);

    // corrupt the sigma U-power on the A=-1 cycle: delta^2 consistency fails
    CompanionData bad = K;
    for (auto& a : bad.sigma)
        if (a.from == "x2") a.upow = 0;
    CHECK_FALSE(verify_companion(bad).ok);

    // asymmetric Alexander multiset
    CompanionData bad2 = K;
    bad2.cfk = FreeComplex();
    bad2.cfk.add_generator({"x0", Bigrading::ints(0, -2), {Half::whole(1)}, 0, ""});
    bad2.sigma.clear();
    bad2.tau_base.clear();
    CHECK_FALSE(verify_companion(bad2).ok);
}

TEST_CASE("arrows off the T-power convention are rejected") {
    CompanionData K = builtin_companion("trefoil-rh");
    CompanionData bad = K;
    for (auto& a : bad.sigma)
        if (a.from == "x0") a.tpow += 1;
    CHECK_FALSE(verify_companion(bad).ok);
}

TEST_CASE("staircase delta^2 consistency equals the H-function step identity") {
    // for staircase companions the checker passing is equivalent to
    // H(A - alpha - beta) = H(A) + alpha along every step
    LaurentPoly1 t27(std::map<int64_t, int64_t>{{3, 1}, {2, -1}, {1, 1}, {0, -1},
                                                {-1, 1}, {-2, -1}, {-3, 1}});
    CompanionData K = staircase_companion(t27);
    CHECK(verify_companion(K).ok);
    auto H = [&](int64_t s) { return knot_tail_sum(t27, s + 1); };
    for (uint32_t i = 0; i < K.cfk.size(); ++i) {
        if (K.cfk.gen(i).algdeg != 1) continue;
        // d(y) = x (x) W^a + x' (x) Z^b
        int64_t a = 0, A_hi = 0, A_lo = 0;
        for (const auto& [j, c] : K.cfk.diff_row(i)) {
            const Monomial& m = c.monomial();
            if (m.a > 0) {
                a = m.a;
                A_hi = K.cfk.gen(j).alex[0].as_integer();
            } else {
                A_lo = K.cfk.gen(j).alex[0].as_integer();
            }
        }
        CHECK(H(A_lo) == H(A_hi) + a);
    }
}
