#include "satcfk/io.hpp"

#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace satcfk {

using nlohmann::json;

namespace {

json gen_to_json(const Generator& g) {
    json o;
    o["id"] = g.id;
    o["grw"] = g.gr.w.twice();
    o["grz"] = g.gr.z.twice();
    json alex = json::array();
    for (const auto& a : g.alex) alex.push_back(a.twice());
    o["alex"] = alex;
    if (g.algdeg >= 0) o["algdeg"] = int(g.algdeg);
    return o;
}

Generator gen_from_json(const json& o) {
    Generator g;
    g.id = o.at("id").get<std::string>();
    g.gr = Bigrading(Half::from_twice(o.at("grw").get<int64_t>()),
                     Half::from_twice(o.at("grz").get<int64_t>()));
    for (const auto& a : o.at("alex")) g.alex.push_back(Half::from_twice(a.get<int64_t>()));
    g.algdeg = int8_t(o.value("algdeg", -1));
    return g;
}

}  // namespace

std::string complex_to_json(const FreeComplex& C) {
    json o;
    o["generators"] = json::array();
    o["diff"] = json::array();
    for (const auto& g : C.gens()) o["generators"].push_back(gen_to_json(g));
    for (uint32_t i = 0; i < C.size(); ++i)
        for (const auto& [j, c] : C.diff_row(i)) {
            json e;
            e["from"] = C.gen(i).id;
            e["to"] = C.gen(j).id;
            e["coef"] = c.str();
            o["diff"].push_back(e);
        }
    return o.dump(2);
}

FreeComplex complex_from_json(const std::string& text) {
    json o = json::parse(text);
    FreeComplex C;
    for (const auto& g : o.at("generators")) C.add_generator(gen_from_json(g));
    for (const auto& e : o.at("diff"))
        C.add_diff(e.at("from").get<std::string>(), e.at("to").get<std::string>(),
                   RingElement::parse(e.at("coef").get<std::string>()));
    return C;
}

std::string poly2_to_json(const LaurentPoly2& p, int64_t lk) {
    json o;
    o["lk"] = lk;
    o["terms"] = json::array();
    for (const auto& [key, c] : p.coeffs()) {
        json t;
        t["a1"] = key.first.twice();
        t["a2"] = key.second.twice();
        t["c"] = c;
        o["terms"].push_back(t);
    }
    return o.dump(2);
}

std::pair<LaurentPoly2, int64_t> poly2_from_json(const std::string& text) {
    json o = json::parse(text);
    LaurentPoly2 p;
    for (const auto& t : o.at("terms"))
        p.add(Half::from_twice(t.at("a1").get<int64_t>()),
              Half::from_twice(t.at("a2").get<int64_t>()), t.at("c").get<int64_t>());
    return {p, o.at("lk").get<int64_t>()};
}

std::string companion_to_json(const CompanionData& K) {
    json o = json::parse(complex_to_json(K.cfk));
    o["name"] = K.name;
    o["genus"] = K.genus;
    o["sigma"] = json::array();
    o["tauBase"] = json::array();
    for (const auto& a : K.sigma)
        o["sigma"].push_back({{"from", a.from}, {"u", a.upow}, {"t", a.tpow}});
    for (const auto& a : K.tau_base)
        o["tauBase"].push_back({{"from", a.from}, {"u", a.upow}, {"t", a.tpow}});
    return o.dump(2);
}

CompanionData companion_from_json(const std::string& text) {
    json o = json::parse(text);
    CompanionData K;
    K.name = o.value("name", "companion");
    K.cfk = complex_from_json(text);
    for (const auto& a : o.at("sigma"))
        K.sigma.push_back({a.at("from").get<std::string>(), a.at("u").get<int64_t>(),
                           a.at("t").get<int64_t>()});
    for (const auto& a : o.at("tauBase"))
        K.tau_base.push_back({a.at("from").get<std::string>(), a.at("u").get<int64_t>(),
                              a.at("t").get<int64_t>()});
    if (o.contains("genus")) {
        K.genus = o.at("genus").get<int64_t>();
    } else {
        for (const auto& g : K.cfk.gens())
            K.genus = std::max(K.genus, g.alex.back().as_integer());
    }
    return K;
}

CompanionData load_companion(const std::string& text) {
    CompanionData K = companion_from_json(text);
    auto rep = verify_companion(K);
    if (!rep.ok) throw std::runtime_error("load_companion: " + rep.str());
    return K;
}

std::string complex_to_dot(const FreeComplex& C) {
    std::ostringstream os;
    os << "digraph cfk {\n  rankdir=TB;\n";
    for (const auto& g : C.gens()) {
        os << "  \"" << g.id << "\" [label=\"" << g.id << "\\n(" << g.gr.w.str() << ","
           << g.gr.z.str() << ")";
        if (!g.alex.empty()) os << " A=" << g.alex.back().str();
        os << "\"];\n";
    }
    for (uint32_t i = 0; i < C.size(); ++i)
        for (const auto& [j, c] : C.diff_row(i))
            os << "  \"" << C.gen(i).id << "\" -> \"" << C.gen(j).id << "\" [label=\""
               << c.str() << "\"];\n";
    os << "}\n";
    return os.str();
}

std::string complex_to_text(const FreeComplex& C) {
    std::ostringstream os;
    os << C.size() << " generators\n" << C.str();
    return os.str();
}

std::string hfunction_to_text(const HFunction& H) {
    std::ostringstream os;
    os << "H (rows s2 top to bottom, columns s1 left to right)\n";
    os << std::setw(8) << "s2\\s1";
    for (Half s = H.s_min(); s <= H.s_max(); s += Half::whole(1))
        os << std::setw(6) << s.str();
    os << "\n";
    for (Half t = H.t_max(); t >= H.t_min(); t -= Half::whole(1)) {
        os << std::setw(8) << t.str();
        for (Half s = H.s_min(); s <= H.s_max(); s += Half::whole(1))
            os << std::setw(6) << H.at(s, t);
        os << "\n";
    }
    return os.str();
}

std::string bimodule_to_text(const PatternBimodule& B) {
    std::ostringstream os;
    os << "pattern " << B.data.name << "  winding " << B.data.winding << "  N = " << B.N.str()
       << "\n\n";
    os << "S (pattern staircase):\n" << B.S.str() << "\n";
    auto dump_map = [&os](const std::string& label, const std::map<Half, Morphism>& maps,
                          const std::map<Half, FreeComplex>& C, const FreeComplex* S) {
        for (const auto& [s, f] : maps) {
            os << label << "[" << s.str() << "]:\n";
            const FreeComplex& src = C.at(s);
            // target complex varies per map family; print entries by id
            for (uint32_t i = 0; i < f.src_size(); ++i)
                for (const auto& [j, c] : f.row(i)) {
                    os << "  " << src.gen(i).id << " -> ";
                    if (S)
                        os << S->gen(j).id;
                    else
                        os << "#" << j;
                    os << "  (" << c.str() << ")\n";
                }
        }
    };
    for (const auto& [s, C] : B.C) os << "C[" << s.str() << "]:\n" << C.str();
    os << "\n";
    dump_map("L_sigma", B.Lsigma, B.C, &B.S);
    dump_map("L_tau", B.Ltau, B.C, &B.S);
    dump_map("h_WZ", B.hWZ, B.C, nullptr);
    dump_map("h_ZW", B.hZW, B.C, nullptr);
    dump_map("h_sigma_W", B.hSigW, B.C, &B.S);
    dump_map("h_sigma_Z", B.hSigZ, B.C, &B.S);
    dump_map("h_tau_W", B.hTauW, B.C, &B.S);
    dump_map("h_tau_Z", B.hTauZ, B.C, &B.S);
    return os.str();
}

}  // namespace satcfk
