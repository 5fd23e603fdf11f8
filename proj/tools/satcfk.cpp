// satcfk: knot Floer complexes of satellites with L-space patterns.
//
// Subcommands:
//   hfunction  print the H-function window of a pattern
//   bimodule   build and print the pattern bimodule
//   satellite  run the full pipeline for a pattern/companion/framing
//   selftest   replay the acceptance battery
//
// Exit codes: 0 success, 2 validation failure, 3 schema/input error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "satcfk/assembly.hpp"
#include "satcfk/io.hpp"
#include "satcfk/selftest.hpp"

using namespace satcfk;

namespace {

int log_level() {
    const char* env = std::getenv("SATCFK_LOG");
    if (!env) return 0;
    std::string v = env;
    if (v == "debug") return 2;
    if (v == "info") return 1;
    return 0;
}

void info(const std::string& msg) {
    if (log_level() >= 1) std::cerr << "[satcfk] " << msg << "\n";
}

struct PatternArgs {
    std::string pattern;
    int64_t p = 0, q = 0, m = 0;
};

PatternData resolve_pattern(const PatternArgs& a) {
    if (a.pattern.find(".json") != std::string::npos || a.pattern.find('/') != std::string::npos) {
        std::ifstream in(a.pattern);
        if (!in) throw std::runtime_error("cannot open pattern file " + a.pattern);
        std::stringstream ss;
        ss << in.rdbuf();
        // file schema: {"name","winding","deltaP":[{"e","c"}], "lk","terms":[...]}
        auto [dl, lk] = poly2_from_json(ss.str());
        PatternData P;
        P.delta_l = dl;
        P.winding = lk;
        P.name = a.pattern;
        P.delta_p = LaurentPoly1::one();
        // optional deltaP block
        auto pos = ss.str().find("\"deltaP\"");
        if (pos != std::string::npos) {
            // parsed through the structured reader in io.cpp is overkill here;
            // accept the poly1 as a list of [exponent, coefficient] pairs
            throw std::runtime_error("pattern files with nontrivial deltaP: use builtins");
        }
        return P;
    }
    if (a.pattern == "cable") return builtin_pattern("cable", a.p, a.q);
    if (a.pattern == "ktwobridge") return builtin_pattern("ktwobridge", a.m);
    return builtin_pattern(a.pattern, a.m, a.q);
}

CompanionData resolve_companion(const std::string& c) {
    if (c.find(".json") != std::string::npos || c.find('/') != std::string::npos) {
        std::ifstream in(c);
        if (!in) throw std::runtime_error("cannot open companion file " + c);
        std::stringstream ss;
        ss << in.rdbuf();
        return load_companion(ss.str());
    }
    if (c.rfind("torus(2,", 0) == 0) {
        int64_t k = std::atoll(c.substr(8).c_str());
        return builtin_companion("torus2k", k);
    }
    return builtin_companion(c);
}

void write_out(const std::string& text, const std::string& out) {
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out);
    if (!f) throw std::runtime_error("cannot write " + out);
    f << text;
}

std::string pattern_json(const PatternBimodule& B) {
    std::ostringstream os;
    os << "{\n  \"name\": \"" << B.data.name << "\",\n  \"winding\": " << B.data.winding
       << ",\n  \"N2\": " << B.N.twice() << ",\n  \"S\": " << complex_to_json(B.S)
       << ",\n  \"C\": [";
    bool first = true;
    for (const auto& [s, C] : B.C) {
        os << (first ? "" : ",") << "\n    {\"s2\": " << s.twice()
           << ", \"cx\": " << complex_to_json(C) << "}";
        first = false;
    }
    os << "\n  ],\n  \"maps\": {";
    auto dump = [&os, &B](const char* label, const std::map<Half, Morphism>& maps,
                          bool to_s, bool& firstmap) {
        os << (firstmap ? "" : ",") << "\n    \"" << label << "\": [";
        firstmap = false;
        bool f2 = true;
        for (const auto& [s, f] : maps) {
            const FreeComplex& src = B.C.at(s);
            os << (f2 ? "" : ",") << "\n      {\"s2\": " << s.twice() << ", \"entries\": [";
            f2 = false;
            bool f3 = true;
            for (uint32_t i = 0; i < f.src_size(); ++i)
                for (const auto& [j, c] : f.row(i)) {
                    const FreeComplex& tgt =
                        to_s ? B.S
                             : B.C.at(s + Half::whole(label[1] == 'W' ? -1 : 1));
                    os << (f3 ? "" : ",") << "{\"from\": \"" << src.gen(i).id
                       << "\", \"to\": \"" << tgt.gen(j).id << "\", \"coef\": \"" << c.str()
                       << "\"}";
                    f3 = false;
                }
            os << "]}";
        }
        os << "\n    ]";
    };
    bool firstmap = true;
    dump("LW", B.LW, false, firstmap);
    dump("LZ", B.LZ, false, firstmap);
    dump("Lsigma", B.Lsigma, true, firstmap);
    dump("Ltau", B.Ltau, true, firstmap);
    dump("hSigmaW", B.hSigW, true, firstmap);
    dump("hSigmaZ", B.hSigZ, true, firstmap);
    dump("hTauW", B.hTauW, true, firstmap);
    dump("hTauZ", B.hTauZ, true, firstmap);
    os << "\n  }\n}\n";
    return os.str();
}

// randomized spot checks driven by --seed: multi-letter actions on the F row
// are order independent pure U-powers
bool seeded_property_checks(const PatternBimodule& B, uint64_t seed) {
    ColumnDiagram row = make_F_row(B, Half::from_twice(-21), Half::from_twice(21));
    uint64_t state = seed ? seed : 0x243f6a8885a308d3ull;
    auto next = [&state]() {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        return (state >> 33);
    };
    for (int trial = 0; trial < 32; ++trial) {
        int i = int(next() % 5), j = int(next() % 5);
        Half p = Half::from_twice(int64_t(next() % 11) * 2 - 11);
        DiagramElement v{{{p, uint32_t(next() % B.S.size())}, RingElement::one()}};
        DiagramElement a = v, b = v;
        for (int k = 0; k < j; ++k) a = apply_step(row, 'Z', a);
        for (int k = 0; k < i; ++k) a = apply_step(row, 'W', a);
        for (int k = 0; k < i; ++k) b = apply_step(row, 'W', b);
        for (int k = 0; k < j; ++k) b = apply_step(row, 'Z', b);
        if (!(a == b)) return false;
        for (const auto& [key, c] : a) {
            if (!c.is_monomial()) return false;
            if (c.monomial().a != c.monomial().b) return false;
        }
    }
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"knot Floer complexes of satellites with L-space patterns"};
    app.require_subcommand(1);

    PatternArgs pat;
    std::string companion = "unknot";
    int64_t framing = 0;
    std::string format = "text";
    std::string out;
    int64_t window = 0;
    bool no_reduce = false, check = false;
    uint64_t seed = 0;

    auto add_pattern_flags = [&pat](CLI::App* cmd) {
        cmd->add_option("--pattern", pat.pattern,
                        "builtin pattern (torus2q, cable, whitehead, mazur, ktwobridge) or file")
            ->required();
        cmd->add_option("--q", pat.q, "q parameter (torus2q, cable)");
        cmd->add_option("--p", pat.p, "p parameter (cable)");
        cmd->add_option("--m", pat.m, "m parameter (ktwobridge); also torus2q's q");
    };

    auto* cmd_h = app.add_subcommand("hfunction", "print the H-function window of a pattern");
    add_pattern_flags(cmd_h);
    cmd_h->add_option("--window", window, "extra window margin");
    cmd_h->add_option("--out", out, "output file (default stdout)");

    auto* cmd_b = app.add_subcommand("bimodule", "build and print the pattern bimodule");
    add_pattern_flags(cmd_b);
    cmd_b->add_option("--format", format, "text | json");
    cmd_b->add_option("--out", out, "output file (default stdout)");

    auto* cmd_s = app.add_subcommand("satellite", "compute the satellite knot complex");
    add_pattern_flags(cmd_s);
    cmd_s->add_option("--companion", companion,
                      "builtin companion (unknot, trefoil-rh, torus(2,k), figure-eight) or file");
    cmd_s->add_option("--framing", framing, "framing n");
    cmd_s->add_option("--format", format, "json | dot | text");
    cmd_s->add_option("--out", out, "output file (default stdout)");
    cmd_s->add_flag("--no-reduce", no_reduce, "emit the truncated grid before reduction");
    cmd_s->add_flag("--check", check, "run the oracle, symmetry and grading checks");
    cmd_s->add_option("--seed", seed, "seed for the randomized property checks");

    app.add_subcommand("selftest", "replay the acceptance battery");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("selftest")) {
            return run_selftest() == 0 ? 0 : 2;
        }
        if (app.got_subcommand("hfunction")) {
            // torus2q's parameter doubles as --q for convenience
            if (pat.pattern == "torus2q" && pat.m == 0) pat.m = pat.q;
            PatternData P = resolve_pattern(pat);
            info("building H-function for " + P.name);
            PatternBimodule B = build_bimodule(P);
            write_out(hfunction_to_text(B.H), out);
            return 0;
        }
        if (app.got_subcommand("bimodule")) {
            if (pat.pattern == "torus2q" && pat.m == 0) pat.m = pat.q;
            PatternData P = resolve_pattern(pat);
            info("building bimodule for " + P.name);
            PatternBimodule B = build_bimodule(P);
            auto rep = verify_bimodule(B);
            if (!rep.ok) {
                std::cerr << "bimodule verification failed:\n" << rep.str();
                return 2;
            }
            write_out(format == "json" ? pattern_json(B) : bimodule_to_text(B), out);
            return 0;
        }
        // satellite
        if (pat.pattern == "torus2q" && pat.m == 0) pat.m = pat.q;
        PatternData P = resolve_pattern(pat);
        CompanionData K = resolve_companion(companion);
        info("pattern " + P.name + ", companion " + K.name + ", framing " +
             std::to_string(framing));
        PatternBimodule B = build_bimodule(P);
        auto r = assemble_and_reduce(B, K, framing);
        info("truncated grid: " + std::to_string(r.total.size()) + " generators, reduced: " +
             std::to_string(r.reduced.size()));
        const FreeComplex& result = no_reduce ? r.total : r.reduced;

        if (check) {
            bool ok = true;
            auto ru = assemble_and_reduce(B, builtin_companion("unknot"), framing);
            LaurentPoly1 oracle =
                euler_char(ru.reduced) * euler_char(K.cfk).compose_power(B.lk());
            if (!(euler_char(r.reduced) == oracle)) {
                std::cerr << "check: Euler characteristic mismatch\n";
                ok = false;
            }
            if (!iso_check(r.reduced, conjugate_complex(r.reduced))) {
                std::cerr << "check: reduced output is not symmetric\n";
                ok = false;
            }
            if (d_invariant_grw(r.reduced) != 0 ||
                d_invariant_grw(conjugate_complex(r.reduced)) != 0) {
                std::cerr << "check: absolute grading anchor failed\n";
                ok = false;
            }
            if (K.genus <= 1 && B.N <= Half::from_twice(3)) {
                auto rb = assemble_and_reduce(B, K, framing, /*f_via_row=*/true);
                if (!iso_check(r.reduced, rb.reduced)) {
                    std::cerr << "check: block-construction oracle disagrees\n";
                    ok = false;
                }
            }
            if (!seeded_property_checks(B, seed)) {
                std::cerr << "check: seeded F-row property check failed\n";
                ok = false;
            }
            if (!ok) return 2;
            info("all checks passed");
        }

        if (format == "json")
            write_out(complex_to_json(result), out);
        else if (format == "dot")
            write_out(complex_to_dot(result), out);
        else
            write_out(complex_to_text(result), out);
        return 0;
    } catch (const std::exception& e) {
        std::string what = e.what();
        std::cerr << "error: " << what << "\n";
        bool schema = what.find("parse") != std::string::npos ||
                      what.find("cannot open") != std::string::npos ||
                      what.find("json") != std::string::npos;
        return schema ? 3 : 2;
    }
}
