#include "satcfk/pattern.hpp"

#include <algorithm>

namespace satcfk {

namespace {

// exact division of Laurent polynomials, throws on nonzero remainder
LaurentPoly1 exact_div(const LaurentPoly1& num, const LaurentPoly1& den) {
    LaurentPoly1 rem = num, quot;
    int64_t dtop = den.max_degree();
    int64_t dlead = den.coeff(dtop);
    while (!rem.is_zero()) {
        int64_t rtop = rem.max_degree();
        int64_t c = rem.coeff(rtop);
        if (c % dlead != 0) throw std::runtime_error("exact_div: nonzero remainder");
        int64_t q = c / dlead;
        quot.add(rtop - dtop, q);
        for (const auto& [e, dc] : den.coeffs()) rem.add(e + rtop - dtop, -q * dc);
    }
    return quot;
}

LaurentPoly1 torus_knot_alexander(int64_t p, int64_t q) {
    // t^{-(p-1)(q-1)/2} (t^{pq}-1)(t-1) / ((t^p-1)(t^q-1))
    LaurentPoly1 a({{p * q, 1}, {0, -1}});
    LaurentPoly1 b({{1, 1}, {0, -1}});
    LaurentPoly1 num = a * b;
    LaurentPoly1 dp({{p, 1}, {0, -1}});
    LaurentPoly1 dq({{q, 1}, {0, -1}});
    LaurentPoly1 res = exact_div(exact_div(num, dp), dq);
    LaurentPoly1 out;
    int64_t shift = -(p - 1) * (q - 1) / 2;
    for (const auto& [e, c] : res.coeffs()) out.add(e + shift, c);
    return out;
}

int64_t gcd64(int64_t a, int64_t b) { return b == 0 ? a : gcd64(b, a % b); }

}  // namespace

PatternData builtin_pattern(const std::string& name, int64_t p, int64_t q) {
    PatternData P;
    P.name = name;
    if (name == "torus2q") {
        if (q <= 0) throw std::runtime_error("torus2q: q must be positive");
        for (int64_t i = 0; i < q; ++i) {
            Half a = Half::from_twice(q - 2 * i);  // q/2 - i
            P.delta_l.add(a, a, 1);
        }
        P.delta_p = LaurentPoly1::one();
        P.winding = q;
    } else if (name == "whitehead") {
        P.delta_l.add(Half::whole(1), Half::whole(1), -1);
        P.delta_l.add(Half::whole(1), Half::whole(0), 1);
        P.delta_l.add(Half::whole(0), Half::whole(1), 1);
        P.delta_l.add(Half::whole(0), Half::whole(0), -1);
        P.delta_p = LaurentPoly1::one();
        P.winding = 0;
    } else if (name == "mazur" || name == "ktwobridge") {
        int64_t m = (name == "mazur") ? 2 : p;
        if (m < 1) throw std::runtime_error("ktwobridge: m must be >= 1");
        Half e0 = Half::from_twice(1 - m);  // (1-m)/2
        for (int64_t i = 0; i < m; ++i) {
            P.delta_l.add(e0 + Half::whole(i + 1), e0 + Half::whole(i), 1);
            P.delta_l.add(e0 + Half::whole(i), e0 + Half::whole(i + 1), 1);
        }
        for (int64_t i = 0; i <= m; ++i)
            P.delta_l.add(e0 + Half::whole(i), e0 + Half::whole(i), -1);
        P.delta_p = LaurentPoly1::one();
        P.winding = m - 1;
    } else if (name == "cable") {
        if (p <= 0 || q <= 0 || gcd64(p, q) != 1)
            throw std::runtime_error("cable: p, q must be positive coprime");
        // t1^{-p/2+1} t2^{(-pq+q+1)/2} sum_k t1^k t2^{qk}
        for (int64_t k = 0; k < p; ++k) {
            Half a1 = Half::from_twice(2 * k - p + 2);
            Half a2 = Half::from_twice(2 * q * k - p * q + q + 1);
            P.delta_l.add(a1, a2, 1);
        }
        P.delta_p = (p == 1 || q == 1) ? LaurentPoly1::one() : torus_knot_alexander(p, q);
        P.name = "cable(" + std::to_string(p) + "," + std::to_string(q) + ")";
        P.winding = p;
    } else {
        throw std::runtime_error("builtin_pattern: unknown pattern " + name);
    }
    if (!P.delta_l.symmetric_normalized())
        throw std::runtime_error("builtin_pattern: polynomial not symmetric");
    return P;
}

FreeComplex pattern_staircase(const LaurentPoly1& delta_p) {
    // coefficients must alternate +-1 starting and ending with +1
    std::vector<std::pair<int64_t, int64_t>> terms(delta_p.coeffs().begin(),
                                                   delta_p.coeffs().end());
    std::sort(terms.begin(), terms.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    if (terms.empty() || terms.size() % 2 == 0)
        throw std::runtime_error("pattern_staircase: coefficient string not alternating +-1");
    for (size_t i = 0; i < terms.size(); ++i)
        if (terms[i].second != ((i % 2 == 0) ? 1 : -1))
            throw std::runtime_error("pattern_staircase: coefficient string not alternating +-1");

    FreeComplex S;
    // generators x0, y1, x2, ... at Alexander degrees d_0 > d_1 > ...
    std::vector<uint32_t> idx;
    int64_t grw = 0;
    for (size_t i = 0; i < terms.size(); ++i) {
        Generator g;
        bool is_x = (i % 2 == 0);
        g.id = (is_x ? "x" : "y") + std::to_string(i);
        g.algdeg = is_x ? 0 : 1;
        g.alex = {Half::whole(terms[i].first)};
        if (i > 0) {
            // step from the previous generator
            int64_t gap = terms[i - 1].first - terms[i].first;
            if (is_x) {
                grw -= 1;  // y -> x along the Z-arrow keeps gr_w - 1
            } else {
                grw += 1 - 2 * gap;  // x -> y along the W-arrow
            }
        }
        g.gr = Bigrading(Half::whole(grw), Half::whole(grw - 2 * terms[i].first));
        idx.push_back(S.add_generator(std::move(g)));
    }
    for (size_t i = 1; i + 1 < terms.size(); i += 2) {
        int64_t alpha = terms[i - 1].first - terms[i].first;
        int64_t beta = terms[i].first - terms[i + 1].first;
        S.add_diff(idx[i], idx[i - 1], RingElement(Monomial::W(int32_t(alpha))));
        S.add_diff(idx[i], idx[i + 1], RingElement(Monomial::Z(int32_t(beta))));
    }
    auto rep = validate(S);
    if (!rep.ok) throw std::runtime_error("pattern_staircase: " + rep.errors[0]);
    return S;
}

FreeComplex staircase_from_slice(const HFunction& H, Half s) {
    // corners: H(s,t+1) = H(s,t) and H(s,t-1) = H(s,t)+1, scanned top-down
    std::vector<Half> corners;
    const Half one = Half::whole(1);
    for (Half t = H.t_max(); t >= H.t_min(); t -= one) {
        if (H.at(s, t + one) == H.at(s, t) && H.at(s, t - one) == H.at(s, t) + 1)
            corners.push_back(t);
    }
    if (corners.empty())
        throw std::runtime_error("staircase_from_slice: slice not stabilized within window");
    // the slice must be stable at both window ends
    if (H.at(s, H.t_max()) != H.at(s, H.t_max() - one) ||
        H.at(s, H.t_min()) != H.at(s, H.t_min() + one) + 1)
        throw std::runtime_error("staircase_from_slice: slice not stabilized within window");

    FreeComplex C;
    std::vector<uint32_t> xs;
    for (size_t i = 0; i < corners.size(); ++i) {
        Half t = corners[i];
        int64_t h = H.at(s, t);
        Generator g;
        g.id = "x" + std::to_string(2 * i);
        g.algdeg = 0;
        g.alex = {s, t};
        g.gr = Bigrading(Half::whole(-2 * h), Half::whole(-2 * h) - (s + t) * 2);
        xs.push_back(C.add_generator(std::move(g)));
    }
    for (size_t i = 0; i + 1 < corners.size(); ++i) {
        Half ti = corners[i], tj = corners[i + 1];
        int64_t a = H.at(s, tj) - H.at(s, ti);
        int64_t b = (ti - tj).as_integer() - a;
        if (a <= 0 || b <= 0)
            throw std::runtime_error("staircase_from_slice: degenerate step");
        Generator g;
        g.id = "y" + std::to_string(2 * i + 1);
        g.algdeg = 1;
        Half ty = ti - Half::whole(a);
        g.alex = {s, ty};
        Bigrading xi = C.gen(xs[i]).gr, xj = C.gen(xs[i + 1]).gr;
        g.gr = Bigrading(xj.w + Half::whole(1), xi.z + Half::whole(1));
        uint32_t yi = C.add_generator(std::move(g));
        C.add_diff(yi, xs[i], RingElement(Monomial::W(int32_t(a))));
        C.add_diff(yi, xs[i + 1], RingElement(Monomial::Z(int32_t(b))));
    }
    auto rep = validate(C);
    if (!rep.ok) throw std::runtime_error("staircase_from_slice: " + rep.errors[0]);
    return C;
}

const FreeComplex& PatternBimodule::staircase(Half s) const {
    auto it = C.find(s);
    if (it == C.end())
        throw std::runtime_error("PatternBimodule: C_s missing at s = " + s.str());
    return it->second;
}

PatternBimodule build_bimodule(const PatternData& P) {
    PatternBimodule B;
    B.data = P;
    B.N = compute_N(P.delta_l);
    const int64_t l = P.winding;

    // window sizes: C_s needed on [-N-2, N+2]; the H window additionally
    // covers every slice transition plus one extrapolation-check margin
    Half span = Half::whole(0);
    for (const auto& [key, c] : P.delta_l.coeffs()) {
        Half m1 = key.first < Half::whole(0) ? -key.first : key.first;
        Half m2 = key.second < Half::whole(0) ? -key.second : key.second;
        if (m1 > span) span = m1;
        if (m2 > span) span = m2;
    }
    Half wmax = B.N + Half::whole(2);
    Half hmax = span + wmax + Half::whole(3);
    // align window corners to the lattice Z + lk/2
    auto align = [&](Half v) {
        while (((v - Half::from_twice(l)).twice() % 2) != 0) v += Half::from_twice(1);
        return v;
    };
    Half hw = align(hmax);
    B.H = h_function_2comp(P.delta_l, LaurentPoly1::one(), P.delta_p, l, -hw, hw, -hw, hw);

    B.S = pattern_staircase(P.delta_p);
    B.window_min = align(-wmax);
    B.window_max = align(wmax);

    const Half one = Half::whole(1);
    for (Half s = B.window_min; s <= B.window_max; s += one)
        B.C.emplace(s, staircase_from_slice(B.H, s));

    for (Half s = B.window_min; s <= B.window_max; s += one) {
        if (s - one >= B.window_min)
            B.LW.emplace(s, lift_chain_map(B.C.at(s), B.C.at(s - one), Bigrading::ints(-2, 0)));
        if (s + one <= B.window_max)
            B.LZ.emplace(s, lift_chain_map(B.C.at(s), B.C.at(s + one), Bigrading::ints(0, -2)));
        B.Lsigma.emplace(
            s, lift_chain_map(B.C.at(s), B.S, Bigrading(Half::whole(0), s * 2 + Half::whole(l))));
        B.Ltau.emplace(
            s, lift_chain_map(B.C.at(s), B.S, Bigrading(Half::whole(l) - s * 2, Half::whole(0))));
    }

    const RingElement U(Monomial::U0(1));
    for (Half s = B.window_min; s <= B.window_max; s += one) {
        if (s + one <= B.window_max) {
            Morphism F = add(compose(B.LW.at(s + one), B.LZ.at(s)),
                             Morphism::identity(B.C.at(s)).scaled(U));
            F.set_degree(Bigrading::ints(-2, -2));
            B.hWZ.emplace(s, solve_null_homotopy(B.C.at(s), B.C.at(s), F));
        }
        if (s - one >= B.window_min) {
            Morphism F = add(compose(B.LZ.at(s - one), B.LW.at(s)),
                             Morphism::identity(B.C.at(s)).scaled(U));
            F.set_degree(Bigrading::ints(-2, -2));
            B.hZW.emplace(s, solve_null_homotopy(B.C.at(s), B.C.at(s), F));
        }
        if (s - one >= B.window_min) {
            Morphism F = add(compose(B.Lsigma.at(s - one), B.LW.at(s)), B.Lsigma.at(s).scaled(U));
            F.set_degree(B.Lsigma.at(s).degree() + Bigrading::ints(-2, -2));
            B.hSigW.emplace(s, solve_null_homotopy(B.C.at(s), B.S, F));
        }
        if (s + one <= B.window_max) {
            Morphism F = add(compose(B.Lsigma.at(s + one), B.LZ.at(s)), B.Lsigma.at(s));
            F.set_degree(B.Lsigma.at(s).degree());
            B.hSigZ.emplace(s, solve_null_homotopy(B.C.at(s), B.S, F));
        }
        if (s - one >= B.window_min) {
            Morphism F = add(compose(B.Ltau.at(s - one), B.LW.at(s)), B.Ltau.at(s));
            F.set_degree(B.Ltau.at(s).degree());
            B.hTauW.emplace(s, solve_null_homotopy(B.C.at(s), B.S, F));
        }
        if (s + one <= B.window_max) {
            Morphism F = add(compose(B.Ltau.at(s + one), B.LZ.at(s)), B.Ltau.at(s).scaled(U));
            F.set_degree(B.Ltau.at(s).degree() + Bigrading::ints(-2, -2));
            B.hTauZ.emplace(s, solve_null_homotopy(B.C.at(s), B.S, F));
        }
    }
    return B;
}

ValidationReport verify_bimodule(const PatternBimodule& B) {
    ValidationReport rep;
    const Half one = Half::whole(1);
    const RingElement U(Monomial::U0(1));
    auto rep_merge = [&rep](const ValidationReport& r, const std::string& tag) {
        if (!r.ok)
            for (const auto& e : r.errors) rep.fail(tag + ": " + e);
    };
    rep_merge(validate(B.S), "S");
    for (const auto& [s, C] : B.C) rep_merge(validate(C), "C_" + s.str());

    const int64_t l = B.data.winding;
    for (const auto& [s, f] : B.LW) {
        rep_merge(validate_morphism(B.C.at(s), B.C.at(s - one), f), "LW_" + s.str());
        if (!is_chain_map(B.C.at(s), B.C.at(s - one), f)) rep.fail("LW not chain map at " + s.str());
        if (f.is_zero()) rep.fail("LW zero at " + s.str());
        if (!(f.degree() == Bigrading::ints(-2, 0))) rep.fail("LW degree at " + s.str());
    }
    for (const auto& [s, f] : B.LZ) {
        rep_merge(validate_morphism(B.C.at(s), B.C.at(s + one), f), "LZ_" + s.str());
        if (!is_chain_map(B.C.at(s), B.C.at(s + one), f)) rep.fail("LZ not chain map at " + s.str());
        if (f.is_zero()) rep.fail("LZ zero at " + s.str());
        if (!(f.degree() == Bigrading::ints(0, -2))) rep.fail("LZ degree at " + s.str());
    }
    for (const auto& [s, f] : B.Lsigma) {
        rep_merge(validate_morphism(B.C.at(s), B.S, f), "Lsigma_" + s.str());
        if (!is_chain_map(B.C.at(s), B.S, f)) rep.fail("Lsigma not chain map at " + s.str());
        if (!(f.degree() == Bigrading(Half::whole(0), s * 2 + Half::whole(l))))
            rep.fail("Lsigma grading off at s = " + s.str());
    }
    for (const auto& [s, f] : B.Ltau) {
        rep_merge(validate_morphism(B.C.at(s), B.S, f), "Ltau_" + s.str());
        if (!is_chain_map(B.C.at(s), B.S, f)) rep.fail("Ltau not chain map at " + s.str());
        if (!(f.degree() == Bigrading(Half::whole(l) - s * 2, Half::whole(0))))
            rep.fail("Ltau grading off at s = " + s.str());
    }
    // homotopy equations, exactly
    for (const auto& [s, h] : B.hWZ) {
        Morphism lhs = boundary(B.C.at(s), B.C.at(s), h);
        Morphism rhs = add(compose(B.LW.at(s + one), B.LZ.at(s)),
                           Morphism::identity(B.C.at(s)).scaled(U));
        if (!morphisms_equal(lhs, rhs)) rep.fail("dehWZ equation fails at " + s.str());
        rep_merge(validate_morphism(B.C.at(s), B.C.at(s), h), "hWZ_" + s.str());
    }
    for (const auto& [s, h] : B.hZW) {
        Morphism lhs = boundary(B.C.at(s), B.C.at(s), h);
        Morphism rhs = add(compose(B.LZ.at(s - one), B.LW.at(s)),
                           Morphism::identity(B.C.at(s)).scaled(U));
        if (!morphisms_equal(lhs, rhs)) rep.fail("dehZW equation fails at " + s.str());
        rep_merge(validate_morphism(B.C.at(s), B.C.at(s), h), "hZW_" + s.str());
    }
    for (const auto& [s, h] : B.hSigW) {
        Morphism lhs = boundary(B.C.at(s), B.S, h);
        Morphism rhs = add(compose(B.Lsigma.at(s - one), B.LW.at(s)), B.Lsigma.at(s).scaled(U));
        if (!morphisms_equal(lhs, rhs)) rep.fail("dehSigW equation fails at " + s.str());
        rep_merge(validate_morphism(B.C.at(s), B.S, h), "hSigW_" + s.str());
    }
    for (const auto& [s, h] : B.hSigZ) {
        Morphism lhs = boundary(B.C.at(s), B.S, h);
        Morphism rhs = add(compose(B.Lsigma.at(s + one), B.LZ.at(s)), B.Lsigma.at(s));
        if (!morphisms_equal(lhs, rhs)) rep.fail("dehSigZ equation fails at " + s.str());
    }
    for (const auto& [s, h] : B.hTauW) {
        Morphism lhs = boundary(B.C.at(s), B.S, h);
        Morphism rhs = add(compose(B.Ltau.at(s - one), B.LW.at(s)), B.Ltau.at(s));
        if (!morphisms_equal(lhs, rhs)) rep.fail("dehTauW equation fails at " + s.str());
    }
    for (const auto& [s, h] : B.hTauZ) {
        Morphism lhs = boundary(B.C.at(s), B.S, h);
        Morphism rhs = add(compose(B.Ltau.at(s + one), B.LZ.at(s)), B.Ltau.at(s).scaled(U));
        if (!morphisms_equal(lhs, rhs)) rep.fail("dehTauZ equation fails at " + s.str());
    }
    return rep;
}

FreeComplex mapping_cone(const FreeComplex& A, const FreeComplex& B, const Morphism& f) {
    FreeComplex cone;
    Bigrading shift = f.degree() + Bigrading::ints(1, 1);
    std::vector<uint32_t> amap, bmap;
    for (uint32_t i = 0; i < A.size(); ++i) {
        Generator g = A.gen(i);
        g.id = "a." + g.id;
        g.gr = g.gr + shift;
        g.alex.clear();
        g.algdeg = -1;
        amap.push_back(cone.add_generator(std::move(g)));
    }
    for (uint32_t i = 0; i < B.size(); ++i) {
        Generator g = B.gen(i);
        g.id = "b." + g.id;
        g.alex.clear();
        g.algdeg = -1;
        bmap.push_back(cone.add_generator(std::move(g)));
    }
    for (uint32_t i = 0; i < A.size(); ++i) {
        for (const auto& [j, c] : A.diff_row(i)) cone.add_diff(amap[i], amap[j], c);
        for (const auto& [j, c] : f.row(i)) cone.add_diff(amap[i], bmap[j], c);
    }
    for (uint32_t i = 0; i < B.size(); ++i)
        for (const auto& [j, c] : B.diff_row(i)) cone.add_diff(bmap[i], bmap[j], c);
    return cone;
}

bool verify_N(const PatternBimodule& B, Half N) {
    const Half one = Half::whole(1);
    auto contractible = [&](Half s, bool sigma) {
        const Morphism& f = sigma ? B.Lsigma.at(s) : B.Ltau.at(s);
        FreeComplex cone = mapping_cone(B.C.at(s), B.S, f);
        return reduce_fast(cone).size() == 0;
    };
    if (!contractible(N, true) || !contractible(-N, false)) return false;
    if (N - one >= B.window_min) {
        if (contractible(N - one, true) && contractible(-(N - one), false)) return false;
    }
    return true;
}

}  // namespace satcfk
