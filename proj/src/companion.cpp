#include "satcfk/companion.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace satcfk {

int64_t CompanionData::alexander_of(const std::string& id) const {
    return cfk.gen(cfk.index_of(id)).alex.back().as_integer();
}

CompanionData staircase_companion(const LaurentPoly1& delta_k, const std::string& name) {
    CompanionData K;
    K.name = name.empty() ? ("staircase[" + delta_k.str() + "]") : name;
    // reuse the staircase synthesis from the pattern module via gradings
    std::vector<std::pair<int64_t, int64_t>> terms(delta_k.coeffs().begin(),
                                                   delta_k.coeffs().end());
    std::sort(terms.begin(), terms.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    if (terms.empty() || terms.size() % 2 == 0)
        throw std::runtime_error("staircase_companion: not an L-space-knot polynomial");
    for (size_t i = 0; i < terms.size(); ++i)
        if (terms[i].second != ((i % 2 == 0) ? 1 : -1))
            throw std::runtime_error("staircase_companion: not an L-space-knot polynomial");

    int64_t grw = 0;
    std::vector<uint32_t> idx;
    for (size_t i = 0; i < terms.size(); ++i) {
        Generator g;
        bool is_x = (i % 2 == 0);
        g.id = (is_x ? "x" : "y") + std::to_string(i);
        g.algdeg = is_x ? 0 : 1;
        g.alex = {Half::whole(terms[i].first)};
        if (i > 0) {
            int64_t gap = terms[i - 1].first - terms[i].first;
            grw += is_x ? -1 : (1 - 2 * gap);
        }
        g.gr = Bigrading(Half::whole(grw), Half::whole(grw - 2 * terms[i].first));
        idx.push_back(K.cfk.add_generator(std::move(g)));
    }
    for (size_t i = 1; i + 1 < terms.size(); i += 2) {
        int64_t alpha = terms[i - 1].first - terms[i].first;
        int64_t beta = terms[i].first - terms[i + 1].first;
        K.cfk.add_diff(idx[i], idx[i - 1], RingElement(Monomial::W(int32_t(alpha))));
        K.cfk.add_diff(idx[i], idx[i + 1], RingElement(Monomial::Z(int32_t(beta))));
    }
    K.genus = terms.front().first;

    for (size_t i = 0; i < terms.size(); i += 2) {
        int64_t a = terms[i].first;
        K.sigma.push_back({K.cfk.gen(idx[i]).id, knot_tail_sum(delta_k, a + 1), a - 1});
        K.tau_base.push_back({K.cfk.gen(idx[i]).id, knot_tail_sum(delta_k, -a + 1), a - 1});
    }
    auto rep = verify_companion(K);
    if (!rep.ok) throw std::runtime_error("staircase_companion: " + rep.errors[0]);
    return K;
}

CompanionData thin_companion(const LaurentPoly1& delta_k, const std::vector<BoxPlacement>& boxes,
                             const std::string& name) {
    CompanionData K = staircase_companion(delta_k, name);
    int bi = 0;
    for (const auto& box : boxes) {
        // source corner b with d(b) = bw (x) W + bz (x) Z, then
        // d(bw) = bd (x) Z, d(bz) = bd (x) W; the sink bd shares b's gradings
        std::string p = "box" + std::to_string(bi++);
        Generator b{p + "b", box.gr, {box.alex}, -1, ""};
        Generator bw{p + "w", box.gr + Bigrading::ints(1, -1), {box.alex + Half::whole(1)}, -1, ""};
        Generator bz{p + "z", box.gr + Bigrading::ints(-1, 1), {box.alex - Half::whole(1)}, -1, ""};
        Generator bd{p + "d", box.gr, {box.alex}, -1, ""};
        K.cfk.add_generator(b);
        K.cfk.add_generator(bw);
        K.cfk.add_generator(bz);
        K.cfk.add_generator(bd);
        K.cfk.add_diff(p + "b", p + "w", RingElement(Monomial::W(1)));
        K.cfk.add_diff(p + "b", p + "z", RingElement(Monomial::Z(1)));
        K.cfk.add_diff(p + "w", p + "d", RingElement(Monomial::Z(1)));
        K.cfk.add_diff(p + "z", p + "d", RingElement(Monomial::W(1)));
    }
    if (!boxes.empty()) {
        for (const auto& g : K.cfk.gens())
            K.genus = std::max(K.genus, g.alex.back().as_integer());
        auto rep = verify_companion(K);
        if (!rep.ok) throw std::runtime_error("thin_companion: " + rep.errors[0]);
    }
    return K;
}

CompanionData builtin_companion(const std::string& name, int64_t k) {
    if (name == "unknot") return staircase_companion(LaurentPoly1::one(), "unknot");
    if (name == "trefoil-rh")
        return staircase_companion(LaurentPoly1(std::map<int64_t, int64_t>{{1, 1}, {0, -1}, {-1, 1}}), "trefoil-rh");
    if (name == "torus2k") {
        if (k < 3 || k % 2 == 0) throw std::runtime_error("torus2k: odd k >= 3 required");
        LaurentPoly1 d;
        int64_t g = (k - 1) / 2;
        int sign = 1;
        for (int64_t e = g; e >= -g; --e, sign = -sign) d.add(e, sign);
        return staircase_companion(d, "torus(2," + std::to_string(k) + ")");
    }
    if (name == "figure-eight") {
        // unknot summand plus one unit box centered at the origin
        return thin_companion(LaurentPoly1::one(),
                              {BoxPlacement{Bigrading::ints(0, 0), Half::whole(0)}},
                              "figure-eight");
    }
    throw std::runtime_error("builtin_companion: unknown companion " + name);
}

ValidationReport verify_companion(const CompanionData& K) {
    ValidationReport rep;
    auto v = validate(K.cfk);
    if (!v.ok)
        for (const auto& e : v.errors) rep.fail("cfk: " + e);

    // Alexander symmetry of the generator multiset
    std::multiset<int64_t> as, neg;
    int64_t maxa = 0;
    for (const auto& g : K.cfk.gens()) {
        if (g.alex.size() != 1) {
            rep.fail("generator " + g.id + " needs exactly one Alexander coordinate");
            continue;
        }
        int64_t a = g.alex[0].as_integer();
        as.insert(a);
        neg.insert(-a);
        maxa = std::max(maxa, a);
    }
    if (as != neg) rep.fail("Alexander multiset not symmetric");
    if (maxa != K.genus) rep.fail("genus does not match the top Alexander grading");

    // delta^2 consistency: for every generator with a differential, the
    // composite [differential then sigma-arrow] must cancel in pairs after
    // pushing letters through phi_sigma (same with phi_tau)
    auto check = [&](const std::vector<SurgeryArrow>& arrows, bool sigma) {
        std::map<std::string, std::vector<std::pair<int64_t, int64_t>>> byid;
        for (const auto& a : arrows) byid[a.from].push_back({a.upow, a.tpow});
        for (uint32_t i = 0; i < K.cfk.size(); ++i) {
            std::map<std::pair<int64_t, int64_t>, int> net;
            for (const auto& [j, coef] : K.cfk.diff_row(i)) {
                auto it = byid.find(K.cfk.gen(j).id);
                if (it == byid.end()) continue;
                for (const auto& m : coef.terms()) {
                    Monomial ph = sigma ? phi_sigma(m) : phi_tau(m);
                    for (const auto& [u, t] : it->second) net[{u + ph.a, t + ph.b}] ^= 1;
                }
            }
            for (const auto& [key, parity] : net)
                if (parity)
                    rep.fail(std::string(sigma ? "sigma" : "tau") +
                             " arrows inconsistent with the differential at " + K.cfk.gen(i).id);
        }
    };
    check(K.sigma, true);
    check(K.tau_base, false);

    // stored T-power convention: every arrow from x carries T^{A(x)-1}
    auto check_tpow = [&](const std::vector<SurgeryArrow>& arrows, const char* kind) {
        for (const auto& a : arrows) {
            if (!K.cfk.has_id(a.from)) {
                rep.fail(std::string(kind) + " arrow from unknown generator " + a.from);
                continue;
            }
            if (a.upow < 0)
                rep.fail(std::string(kind) + " arrow with negative U power at " + a.from);
            int64_t alex = K.cfk.gen(K.cfk.index_of(a.from)).alex.back().as_integer();
            if (a.tpow != alex - 1)
                rep.fail(std::string(kind) + " arrow at " + a.from +
                         " breaks the T-power convention (expected " +
                         std::to_string(alex - 1) + ", got " + std::to_string(a.tpow) + ")");
        }
    };
    check_tpow(K.sigma, "sigma");
    check_tpow(K.tau_base, "tau");
    return rep;
}

}  // namespace satcfk
