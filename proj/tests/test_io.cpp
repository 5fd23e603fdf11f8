#include "doctest.h"
#include "satcfk/io.hpp"

using namespace satcfk;

TEST_CASE("complex JSON round trip") {
    FreeComplex C;
    C.add_generator({"c", Bigrading::ints(0, -2), {Half::whole(1)}, 0, ""});
    C.add_generator({"a", Bigrading::ints(-1, -1), {Half::whole(0)}, 1, ""});
    C.add_generator({"b", Bigrading::ints(-2, 0), {Half::whole(-1)}, 0, ""});
    C.add_diff("a", "b", RingElement(Monomial::Z()));
    C.add_diff("a", "c", RingElement(Monomial::W()));
    FreeComplex D = complex_from_json(complex_to_json(C));
    CHECK(D.size() == 3);
    CHECK(D.gen(0).gr == C.gen(0).gr);
    CHECK(D.diff_entry(D.index_of("a"), D.index_of("b")) == RingElement(Monomial::Z()));
    CHECK(iso_check(C, D));
}

TEST_CASE("poly JSON round trip") {
    auto P = builtin_pattern("mazur");
    auto [q, lk] = poly2_from_json(poly2_to_json(P.delta_l, P.winding));
    CHECK(lk == 1);
    CHECK(q.coeffs() == P.delta_l.coeffs());
}

TEST_CASE("dot and text emitters are pure functions of the complex") {
    auto B = build_bimodule(builtin_pattern("torus2q", 0, 2));
    auto K = builtin_companion("unknot");
    auto r = assemble_and_reduce(B, K, 0);
    CHECK(complex_to_dot(r.reduced) == complex_to_dot(r.reduced));
    CHECK(complex_to_text(r.reduced) == complex_to_text(r.reduced));
    CHECK(complex_to_dot(r.reduced).find("digraph") == 0);
    CHECK(hfunction_to_text(B.H).size() > 0);
    CHECK(bimodule_to_text(B).find("pattern") == 0);
}
