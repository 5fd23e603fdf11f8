#include "satcfk/assembly.hpp"

#include <algorithm>
#include <sstream>

namespace satcfk {

std::string corner_name(Corner c) {
    switch (c) {
        case Corner::E: return "E";
        case Corner::F: return "F";
        case Corner::J: return "J";
        case Corner::M: return "M";
    }
    return "?";
}

std::string GridIndex::str() const {
    return corner_name(corner) + "(" + s.str() + "," + t.str() + ")";
}

namespace {

// half-integer lattice points v with lo < v < hi and v = coset (mod 1)
std::vector<Half> open_range(Half lo, Half hi, Half coset) {
    std::vector<Half> out;
    Half v = coset;
    while (v <= lo) v += Half::whole(1);
    while (v - Half::whole(1) > lo) v -= Half::whole(1);
    while (v <= lo) v += Half::whole(1);
    for (; v < hi; v += Half::whole(1)) out.push_back(v);
    return out;
}

}  // namespace

std::set<GridIndex> truncate(const SatelliteParams& params) {
    const int64_t n = params.framing, g = params.genus, l = params.l;
    const Half N = params.N;
    const Half s_coset = Half::from_twice(1);       // Z + 1/2
    const Half t_coset = Half::from_twice(l - 1);   // Z + (l-1)/2
    const Half G = Half::whole(g);
    std::set<GridIndex> out;
    auto fill = [&](Corner c, Half slo, Half shi, Half tlo, Half thi) {
        for (Half s : open_range(slo, shi, s_coset))
            for (Half t : open_range(tlo, thi, t_coset)) out.insert({c, s, t});
    };
    if (n >= 0) {
        Half h = Half::whole(std::max(g, -g + n + 1));
        fill(Corner::E, -G, h, -N, N);
        fill(Corner::F, -G, h - Half::whole(1), -N, N);
        fill(Corner::J, -G + Half::whole(n), h, -N - Half::whole(1), N);
        fill(Corner::M, -G + Half::whole(n), h - Half::whole(1), -N - Half::whole(1), N);
    } else {
        fill(Corner::E, -G, G, -N, N);
        fill(Corner::F, -G - Half::whole(1), G, -N, N);
        fill(Corner::J, -G + Half::whole(n), G, -N, N - Half::whole(1));
        fill(Corner::M, -G + Half::whole(n) - Half::whole(1), G, -N, N - Half::whole(1));
    }
    return out;
}

GradingShift grading_shift(Corner corner, Half s, Half t, const SatelliteParams& params) {
    const int64_t n = params.framing, l = params.l;
    const int64_t a = t.twice() - l;      // 2t - l, odd
    const int64_t b = 1 + s.twice();      // 1 + 2s, even
    const int64_t num = (1 - a * a) * n - 2 * (1 + a) * b + 4;
    if (num % 4 != 0) throw std::runtime_error("grading_shift: d not an integer");
    const int64_t d = num / 4;

    Half al = (s + t * n) * l;  // Alexander shift
    Half two_al = al * 2;
    Half dw = Half::whole(d), dz;
    switch (corner) {
        case Corner::E: dz = Half::whole(d) + (s + t) * 2 - two_al; break;
        case Corner::F:
            dw = Half::whole(d - 1);
            dz = Half::whole(d) + s * 2 - two_al - Half::whole(l);
            break;
        case Corner::J:
            dw = Half::whole(d - 1);
            dz = Half::whole(d) + t * 2 - two_al;
            break;
        case Corner::M:
            dw = Half::whole(d - 2);
            dz = Half::whole(d - 2) - two_al - Half::whole(l);
            break;
    }
    return {Bigrading(dw, dz), al};
}

ColumnDiagram make_E_row(const PatternBimodule& B, Half t, Half col_min, Half col_max) {
    ColumnDiagram D;
    const Half half1 = Half::from_twice(1);
    const Half lo = t - half1, hi = t + half1;
    const RingElement U(Monomial::U0(1));
    for (Half p = col_min; p <= col_max; p += Half::whole(1)) {
        Column col;
        if (p < Half::whole(0)) {
            col.cx = &B.staircase(lo);
            col.shift = Bigrading(p * 2 + Half::whole(1), Half::whole(0));
        } else {
            col.cx = &B.staircase(hi);
            col.shift = Bigrading(Half::whole(0), -(p * 2) + Half::whole(1));
        }
        // W step to p-1
        if (p - Half::whole(1) >= col_min) {
            if (p >= Half::from_twice(3))
                col.stepW = Morphism::identity(B.staircase(hi)).scaled(U);
            else if (p == half1)
                col.stepW = B.LW.at(hi);
            else
                col.stepW = Morphism::identity(B.staircase(lo));
        }
        // Z step to p+1
        if (p + Half::whole(1) <= col_max) {
            if (p <= Half::from_twice(-3))
                col.stepZ = Morphism::identity(B.staircase(lo)).scaled(U);
            else if (p == -half1)
                col.stepZ = B.LZ.at(lo);
            else
                col.stepZ = Morphism::identity(B.staircase(hi));
        }
        if (p == -half1) col.hWZ = B.hWZ.at(lo);
        if (p == half1) col.hZW = B.hZW.at(hi);
        D.set_column(p, std::move(col));
    }
    return D;
}

ColumnDiagram make_F_row(const PatternBimodule& B, Half col_min, Half col_max) {
    ColumnDiagram D;
    const Half half1 = Half::from_twice(1);
    const RingElement U(Monomial::U0(1));
    const Half l_half = Half::from_twice(B.lk());
    for (Half p = col_min; p <= col_max; p += Half::whole(1)) {
        Column col;
        col.cx = &B.S;
        Half w = p * 2 + Half::whole(1);
        col.shift = Bigrading(w < Half::whole(0) ? w : Half::whole(0),
                              -w < Half::whole(0) ? -w : Half::whole(0));
        col.alex_shift = l_half;
        if (p - Half::whole(1) >= col_min)
            col.stepW = (p >= half1) ? Morphism::identity(B.S).scaled(U) : Morphism::identity(B.S);
        if (p + Half::whole(1) <= col_max)
            col.stepZ = (p <= Half::from_twice(-3)) ? Morphism::identity(B.S).scaled(U)
                                                    : Morphism::identity(B.S);
        D.set_column(p, std::move(col));
    }
    return D;
}

namespace {

std::string block_prefix(Corner c, Half s, Half t) {
    return corner_name(c) + key_half(s) + key_half(t) + ":";
}

BlockComplex build_F_direct(Half s, const PatternBimodule& B, const CompanionData& K,
                            const std::string& prefix) {
    BlockComplex out;
    const Half half1 = Half::from_twice(1);
    const Half l_half = Half::from_twice(B.lk());
    auto col_of = [&](uint32_t xi) { return s - K.cfk.gen(xi).alex.back(); };
    auto wexp = [&](Half p) { return std::max<int64_t>(0, (-p - half1).as_integer()); };
    auto zexp = [&](Half p) { return std::max<int64_t>(0, (p + half1).as_integer()); };
    for (uint32_t xi = 0; xi < K.cfk.size(); ++xi) {
        Half p = col_of(xi);
        int64_t i = wexp(p), j = zexp(p);
        Bigrading shift = Bigrading::ints(-2 * i, -2 * j);
        for (uint32_t ci = 0; ci < B.S.size(); ++ci) {
            Generator g;
            g.id = prefix + K.cfk.gen(xi).id + "|" + B.S.gen(ci).id;
            g.gr = K.cfk.gen(xi).gr + shift + B.S.gen(ci).gr;
            g.alex = {B.S.gen(ci).alex.back() + l_half};
            g.block = prefix;
            uint32_t bi = out.cx.add_generator(std::move(g));
            out.lookup[{xi, p, ci}] = bi;
            out.rev[bi] = {xi, p, ci};
        }
    }
    for (uint32_t xi = 0; xi < K.cfk.size(); ++xi) {
        Half p = col_of(xi);
        for (uint32_t ci = 0; ci < B.S.size(); ++ci) {
            uint32_t from = out.lookup[{xi, p, ci}];
            for (const auto& [cj, e] : B.S.diff_row(ci))
                out.cx.add_diff(from, out.lookup[{xi, p, cj}], e);
            for (const auto& [xj, coef] : K.cfk.diff_row(xi)) {
                Half pj = col_of(xj);
                const Monomial& m = coef.monomial();
                int64_t c1 = m.a + wexp(p) - wexp(pj);
                int64_t c2 = m.b + zexp(p) - zexp(pj);
                if (c1 != c2 || c1 < 0)
                    throw std::runtime_error("build_F_direct: inconsistent U-power");
                out.cx.add_diff(from, out.lookup[{xj, pj, ci}],
                                RingElement(Monomial::U0(int32_t(c1))));
            }
        }
    }
    return out;
}

BlockComplex build_single_column(const FreeComplex& cx, Half alex_shift,
                                 const std::string& prefix) {
    BlockComplex out;
    for (uint32_t ci = 0; ci < cx.size(); ++ci) {
        Generator g = cx.gen(ci);
        g.id = prefix + "y|" + g.id;
        g.alex = {g.alex.back() + alex_shift};
        g.algdeg = -1;
        g.block = prefix;
        uint32_t bi = out.cx.add_generator(std::move(g));
        out.lookup[{0, Half::whole(0), ci}] = bi;
        out.rev[bi] = {0, Half::whole(0), ci};
    }
    for (uint32_t ci = 0; ci < cx.size(); ++ci)
        for (const auto& [cj, e] : cx.diff_row(ci))
            out.cx.add_diff(out.lookup[{0, Half::whole(0), ci}],
                            out.lookup[{0, Half::whole(0), cj}], e);
    return out;
}

}  // namespace

BlockComplex build_block(Corner corner, Half s, Half t, const PatternBimodule& B,
                         const CompanionData& K, bool f_via_row) {
    const std::string prefix = block_prefix(corner, s, t);
    const Half half1 = Half::from_twice(1);
    const Half G = Half::whole(K.genus);
    switch (corner) {
        case Corner::E: {
            ColumnDiagram row = make_E_row(B, t, s - G - Half::whole(1), s + G + Half::whole(1));
            return box_tensor(K.cfk, row, s, prefix);
        }
        case Corner::F: {
            if (f_via_row) {
                ColumnDiagram row = make_F_row(B, s - G - Half::whole(1), s + G + Half::whole(1));
                return box_tensor(K.cfk, row, s, prefix);
            }
            return build_F_direct(s, B, K, prefix);
        }
        case Corner::J:
            return build_single_column(B.staircase(t + half1), Half::whole(0), prefix);
        case Corner::M:
            return build_single_column(B.S, Half::from_twice(B.lk()), prefix);
    }
    throw std::runtime_error("build_block: bad corner");
}

Morphism phi_mu_between(const PatternBimodule& B, const CompanionData& K, Half s, Half t,
                        bool positive, const BlockComplex& src, const BlockComplex& dst) {
    const Half half1 = Half::from_twice(1);
    const Half lo = t - half1, hi = t + half1;
    const Half G = Half::whole(K.genus);
    Half tgt_s = positive ? s : s - Half::whole(1);
    ColumnDiagram srow = make_E_row(B, t, s - G - Half::whole(1), s + G + Half::whole(1));
    ColumnDiagram trow = make_F_row(B, tgt_s - G - Half::whole(1), tgt_s + G + Half::whole(1));
    RowMorphismData f;
    f.src = &srow;
    f.tgt = &trow;
    f.col_shift = positive ? Half::whole(0) : Half::whole(-1);
    for (const auto& [p, col] : srow.columns())
        f.f1.emplace(p, (p < Half::whole(0)) ? (positive ? B.Lsigma.at(lo) : B.Ltau.at(lo))
                                             : (positive ? B.Lsigma.at(hi) : B.Ltau.at(hi)));
    if (positive) {
        f.f2W.emplace(half1, B.hSigW.at(hi));
        f.f2W_col_shift = Half::whole(-1);
        f.f2Z.emplace(-half1, B.hSigZ.at(lo));
        f.f2Z_col_shift = Half::whole(1);
    } else {
        f.f2W.emplace(half1, B.hTauW.at(hi));
        f.f2W_col_shift = Half::whole(-2);
        f.f2Z.emplace(-half1, B.hTauZ.at(lo));
        f.f2Z_col_shift = Half::whole(0);
    }
    return box_tensor_morphism(K.cfk, src, dst, f, Bigrading::ints(-1, -1));
}

Morphism phi_k_between(const PatternBimodule& B, const CompanionData& K, Half s, Half t,
                       bool positive, const BlockComplex& src, const BlockComplex& dst) {
    const Half half1 = Half::from_twice(1);
    const Half lo = t - half1, hi = t + half1;
    const Half G = Half::whole(K.genus);
    ColumnDiagram srow = make_E_row(B, t, s - G - Half::whole(1), s + G + Half::whole(1));
    Morphism out(src.cx.size(), Bigrading::ints(-1, -1));

    std::vector<std::pair<uint32_t, int64_t>> arr;
    for (const auto& a : positive ? K.sigma : K.tau_base)
        arr.emplace_back(K.cfk.index_of(a.from), a.upow);

    for (const auto& [xi, alpha] : arr) {
        Half p = s - K.cfk.gen(xi).alex.back();
        const FreeComplex& colcx = (p < Half::whole(0)) ? B.staircase(lo) : B.staircase(hi);
        for (uint32_t ci = 0; ci < colcx.size(); ++ci) {
            auto it = src.lookup.find({xi, p, ci});
            if (it == src.lookup.end()) continue;
            std::vector<std::pair<uint32_t, RingElement>> val;
            if (positive) {
                if (p < Half::whole(0)) {
                    int64_t u = (-p - half1).as_integer();
                    for (const auto& [cj, c] : B.LZ.at(lo).row(ci))
                        val.emplace_back(cj, c * RingElement(Monomial::U0(int32_t(u + alpha))));
                } else {
                    val.emplace_back(ci, RingElement(Monomial::U0(int32_t(alpha))));
                }
            } else {
                if (p < Half::whole(0)) {
                    val.emplace_back(ci, RingElement(Monomial::U0(int32_t(alpha))));
                } else {
                    int64_t u = (p - half1).as_integer();
                    for (const auto& [cj, c] : B.LW.at(hi).row(ci))
                        val.emplace_back(cj, c * RingElement(Monomial::U0(int32_t(u + alpha))));
                }
            }
            for (const auto& [cj, c] : val) {
                auto jt = dst.lookup.find({0, Half::whole(0), cj});
                if (jt == dst.lookup.end())
                    throw std::runtime_error("phi_k_between: target generator missing");
                out.add_entry(it->second, jt->second, c);
            }
        }
    }

    // f2 corrections over composable [differential then sigma/tau arrow] pairs
    std::map<uint32_t, std::vector<int64_t>> arrow_of;
    for (const auto& [xi, alpha] : arr) arrow_of[xi].push_back(alpha);
    const Homotopy& seed = positive ? B.hZW.at(hi) : B.hWZ.at(lo);
    const Half seed_col = positive ? half1 : -half1;
    for (uint32_t xi = 0; xi < K.cfk.size(); ++xi) {
        Half p = s - K.cfk.gen(xi).alex.back();
        for (const auto& [xj, coef] : K.cfk.diff_row(xi)) {
            auto ita = arrow_of.find(xj);
            if (ita == arrow_of.end()) continue;
            const Monomial& m = coef.monomial();
            int32_t u = std::min(m.a, m.b);
            int32_t wp = m.a - u, zp = m.b - u;
            if (wp > 0 && zp > 0)
                throw std::runtime_error("phi_k_between: mixed-letter arrow weight");
            char letter = positive ? 'W' : 'Z';
            int32_t steps = positive ? wp : zp;
            if (steps == 0) continue;
            const FreeComplex& colcx = (p < Half::whole(0)) ? B.staircase(lo) : B.staircase(hi);
            for (uint32_t ci = 0; ci < colcx.size(); ++ci) {
                auto its = src.lookup.find({xi, p, ci});
                if (its == src.lookup.end()) continue;
                DiagramElement cur{{{p, ci}, RingElement(Monomial::U0(u))}};
                for (int32_t k = 0; k < steps; ++k) {
                    for (const auto& [ck, c] : cur) {
                        if (ck.first != seed_col) continue;
                        RingElement post(Monomial::U0(steps - 1 - k));
                        for (const auto& [cj, h] : seed.row(ck.second)) {
                            for (int64_t alpha : ita->second) {
                                RingElement w =
                                    h * c * post * RingElement(Monomial::U0(int32_t(alpha)));
                                auto jt = dst.lookup.find({0, Half::whole(0), cj});
                                if (jt == dst.lookup.end())
                                    throw std::runtime_error("phi_k_between: f2 target missing");
                                out.add_entry(its->second, jt->second, w);
                            }
                        }
                    }
                    if (k + 1 < steps) cur = apply_step(srow, letter, cur);
                }
            }
        }
    }
    return out;
}

namespace {

struct GridBuilder {
    const PatternBimodule& B;
    const CompanionData& K;
    SurgeryGrid& grid;
    FreeComplex& total;
    // block generator -> total index
    std::map<GridIndex, std::vector<uint32_t>> remap;

    const Half half1 = Half::from_twice(1);

    bool has(GridIndex gi) const { return grid.blocks.count(gi) != 0; }

    uint32_t tindex(const GridIndex& gi, uint32_t local) const {
        return remap.at(gi)[local];
    }

    void add_map_entry(const GridIndex& src, uint32_t si, const GridIndex& tgt, uint32_t ti,
                       const RingElement& c) {
        total.add_diff(tindex(src, si), tindex(tgt, ti), c);
    }

    // sigma arrows: (upow, source gen index); tau analogous
    std::vector<std::pair<uint32_t, int64_t>> arrows(bool sigma) const {
        std::vector<std::pair<uint32_t, int64_t>> out;
        for (const auto& a : sigma ? K.sigma : K.tau_base)
            out.emplace_back(K.cfk.index_of(a.from), a.upow);
        return out;
    }

    void phi_mu(const GridIndex& e, bool positive);
    void phi_k_E(const GridIndex& e, bool positive);
    void phi_k_F(const GridIndex& f, bool positive);
    void phi_mu_J(const GridIndex& j, bool positive);
    void phi_len2(const GridIndex& e);
};

void GridBuilder::phi_mu(const GridIndex& e, bool positive) {
    GridIndex tgt{Corner::F, positive ? e.s : e.s - Half::whole(1), e.t};
    if (!has(tgt)) return;
    Morphism phi = phi_mu_between(B, K, e.s, e.t, positive, grid.blocks.at(e), grid.blocks.at(tgt));
    for (uint32_t i = 0; i < phi.src_size(); ++i)
        for (const auto& [j, c] : phi.row(i)) add_map_entry(e, i, tgt, j, c);
}

void GridBuilder::phi_k_E(const GridIndex& e, bool positive) {
    GridIndex tgt = positive
                        ? GridIndex{Corner::J, e.s, e.t}
                        : GridIndex{Corner::J, e.s + Half::whole(grid.params.framing),
                                    e.t - Half::whole(1)};
    if (!has(tgt)) return;
    Morphism phi = phi_k_between(B, K, e.s, e.t, positive, grid.blocks.at(e), grid.blocks.at(tgt));
    for (uint32_t i = 0; i < phi.src_size(); ++i)
        for (const auto& [j, c] : phi.row(i)) add_map_entry(e, i, tgt, j, c);
}

void GridBuilder::phi_k_F(const GridIndex& fidx, bool positive) {
    const Half s = fidx.s, t = fidx.t;
    GridIndex tgt = positive
                        ? GridIndex{Corner::M, s, t}
                        : GridIndex{Corner::M, s + Half::whole(grid.params.framing),
                                    t - Half::whole(1)};
    if (!has(tgt)) return;
    const BlockComplex& src = grid.blocks.at(fidx);
    const BlockComplex& dst = grid.blocks.at(tgt);
    for (const auto& [xi, alpha] : arrows(positive)) {
        Half p = s - K.cfk.gen(xi).alex.back();
        int64_t u = positive ? std::max<int64_t>(0, (-p - half1).as_integer())
                             : std::max<int64_t>(0, (p + half1).as_integer());
        for (uint32_t ci = 0; ci < B.S.size(); ++ci) {
            auto its = src.lookup.find({xi, p, ci});
            if (its == src.lookup.end()) continue;
            auto jt = dst.lookup.find({0, Half::whole(0), ci});
            if (jt == dst.lookup.end()) throw std::runtime_error("phi_k_F: target missing");
            add_map_entry(fidx, its->second, tgt, jt->second,
                          RingElement(Monomial::U0(int32_t(u + alpha))));
        }
    }
}

void GridBuilder::phi_mu_J(const GridIndex& jidx, bool positive) {
    const Half s = jidx.s, t = jidx.t;
    GridIndex tgt{Corner::M, positive ? s : s - Half::whole(1), t};
    if (!has(tgt)) return;
    const BlockComplex& src = grid.blocks.at(jidx);
    const BlockComplex& dst = grid.blocks.at(tgt);
    const Morphism& f = positive ? B.Lsigma.at(t + half1) : B.Ltau.at(t + half1);
    for (uint32_t ci = 0; ci < B.staircase(t + half1).size(); ++ci) {
        auto its = src.lookup.find({0, Half::whole(0), ci});
        if (its == src.lookup.end()) continue;
        for (const auto& [cj, c] : f.row(ci)) {
            auto jt = dst.lookup.find({0, Half::whole(0), cj});
            if (jt == dst.lookup.end()) throw std::runtime_error("phi_mu_J: target missing");
            add_map_entry(jidx, its->second, tgt, jt->second, c);
        }
    }
}

void GridBuilder::phi_len2(const GridIndex& e) {
    const Half s = e.s, t = e.t;
    const Half lo = t - half1, hi = t + half1;
    const int64_t n = grid.params.framing;
    const BlockComplex& src = grid.blocks.at(e);

    struct Case {
        bool sigma;       // sigma arrows (left columns) vs tau arrows (right columns)
        bool mu_positive; // h_{sig/tau, Z/W} choice
        GridIndex tgt;
    };
    const std::vector<Case> cases = {
        {true, true, {Corner::M, s, t}},
        {true, false, {Corner::M, s - Half::whole(1), t}},
        {false, true, {Corner::M, s + Half::whole(n), t - Half::whole(1)}},
        {false, false, {Corner::M, s + Half::whole(n) - Half::whole(1), t - Half::whole(1)}},
    };
    for (const auto& cs : cases) {
        if (!has(cs.tgt)) continue;
        const BlockComplex& dst = grid.blocks.at(cs.tgt);
        const Homotopy* h;
        if (cs.sigma)
            h = cs.mu_positive ? &B.hSigZ.at(lo) : &B.hTauZ.at(lo);
        else
            h = cs.mu_positive ? &B.hSigW.at(hi) : &B.hTauW.at(hi);
        for (const auto& [xi, alpha] : arrows(cs.sigma)) {
            Half p = s - K.cfk.gen(xi).alex.back();
            if (cs.sigma && p > Half::whole(0)) continue;
            if (!cs.sigma && p < Half::whole(0)) continue;
            int64_t u = cs.sigma ? (-p - half1).as_integer() : (p - half1).as_integer();
            const FreeComplex& colcx = cs.sigma ? B.staircase(lo) : B.staircase(hi);
            for (uint32_t ci = 0; ci < colcx.size(); ++ci) {
                auto its = src.lookup.find({xi, p, ci});
                if (its == src.lookup.end()) continue;
                for (const auto& [cj, c] : h->row(ci)) {
                    auto jt = dst.lookup.find({0, Half::whole(0), cj});
                    if (jt == dst.lookup.end())
                        throw std::runtime_error("phi_len2: target missing");
                    add_map_entry(e, its->second, cs.tgt, jt->second,
                                  c * RingElement(Monomial::U0(int32_t(u + alpha))));
                }
            }
        }
    }
}

}  // namespace

SurgeryGrid assemble_grid(const PatternBimodule& B, const CompanionData& K, int64_t framing,
                          bool f_via_row) {
    SurgeryGrid grid;
    grid.params = {B.N, B.lk(), K.genus, framing};
    grid.window = truncate(grid.params);

    for (const auto& gi : grid.window)
        grid.blocks.emplace(gi, build_block(gi.corner, gi.s, gi.t, B, K, f_via_row));

    GridBuilder gb{B, K, grid, grid.total, {}};
    // generators with absolute gradings, in (corner, s, t) lexicographic order
    for (const auto& gi : grid.window) {
        GradingShift sh = grading_shift(gi.corner, gi.s, gi.t, grid.params);
        const BlockComplex& blk = grid.blocks.at(gi);
        std::vector<uint32_t> rm;
        for (uint32_t i = 0; i < blk.cx.size(); ++i) {
            Generator g = blk.cx.gen(i);
            g.gr = g.gr + sh.maslov;
            g.alex = {g.alex.back() + sh.alex};
            rm.push_back(grid.total.add_generator(std::move(g)));
        }
        gb.remap.emplace(gi, std::move(rm));
    }
    for (const auto& gi : grid.window) {
        const BlockComplex& blk = grid.blocks.at(gi);
        for (uint32_t i = 0; i < blk.cx.size(); ++i)
            for (const auto& [j, c] : blk.cx.diff_row(i))
                grid.total.add_diff(gb.tindex(gi, i), gb.tindex(gi, j), c);
    }
    for (const auto& gi : grid.window) {
        if (gi.corner == Corner::E) {
            gb.phi_mu(gi, true);
            gb.phi_mu(gi, false);
            gb.phi_k_E(gi, true);
            gb.phi_k_E(gi, false);
            gb.phi_len2(gi);
        } else if (gi.corner == Corner::F) {
            gb.phi_k_F(gi, true);
            gb.phi_k_F(gi, false);
        } else if (gi.corner == Corner::J) {
            gb.phi_mu_J(gi, true);
            gb.phi_mu_J(gi, false);
        }
    }
    auto rep = validate(grid.total);
    if (!rep.ok)
        throw std::runtime_error("assemble_grid: total differential invalid:\n" + rep.str());
    return grid;
}

SatelliteResult assemble_and_reduce(const PatternBimodule& B, const CompanionData& K,
                                    int64_t framing, bool f_via_row) {
    SurgeryGrid grid = assemble_grid(B, K, framing, f_via_row);
    SatelliteResult out;
    out.params = grid.params;
    out.total = grid.total;
    out.reduced = reduce_fast(grid.total);
    auto rep = validate(out.reduced);
    if (!rep.ok) throw std::runtime_error("assemble_and_reduce: reduced complex invalid");
    if (!is_reduced(out.reduced))
        throw std::runtime_error("assemble_and_reduce: output not reduced");
    return out;
}

FreeComplex conjugate_complex(const FreeComplex& C) {
    FreeComplex out;
    for (uint32_t i = 0; i < C.size(); ++i) {
        Generator g = C.gen(i);
        g.gr = Bigrading(g.gr.z, g.gr.w);
        for (auto& a : g.alex) a = -a;
        out.add_generator(std::move(g));
    }
    for (uint32_t i = 0; i < C.size(); ++i)
        for (const auto& [j, c] : C.diff_row(i)) {
            std::vector<Monomial> sw;
            for (const auto& m : c.terms()) sw.push_back(Monomial::WZ(m.b, m.a));
            out.add_diff(i, j, make_ring_element(std::move(sw)));
        }
    return out;
}

int64_t d_invariant_grw(const FreeComplex& C) {
    // Setting Z = 1 preserves gr_w and yields a complex over F[W] whose
    // homology is one free tower plus torsion; the tower top is the anchor.
    // Compare graded homology dimensions at truncations W^T and W^{T+1}:
    // the single fresh grading is the bottom of the tower.
    auto graded_dims = [&](int64_t T) {
        // basis (gen, e) with e < T, gr_w = gr_w(gen) - 2e
        std::map<std::pair<uint32_t, int64_t>, size_t> index;
        std::vector<int64_t> grw;
        for (uint32_t i = 0; i < C.size(); ++i)
            for (int64_t e = 0; e < T; ++e) {
                index[{i, e}] = grw.size();
                grw.push_back(C.gen(i).gr.w.as_integer() - 2 * e);
            }
        size_t dim = grw.size();
        // boundary matrix over GF(2), rows = targets
        std::vector<std::vector<uint64_t>> cols(dim, std::vector<uint64_t>((dim + 63) / 64, 0));
        for (uint32_t i = 0; i < C.size(); ++i)
            for (const auto& [j, c] : C.diff_row(i))
                for (const auto& m : c.terms()) {
                    for (int64_t e = 0; e < T; ++e) {
                        if (e + m.a >= T) continue;
                        size_t from = index[{i, e}];
                        size_t to = index[{uint32_t(j), e + m.a}];
                        cols[from][to / 64] ^= uint64_t(1) << (to % 64);
                    }
                }
        // rank of d and rank per... compute dim ker - dim im per grading:
        // since d is homogeneous of gr_w degree -1, track gradings of pivots
        std::map<size_t, size_t> pivot_owner;  // pivot row -> column index
        std::map<int64_t, int64_t> hom;  // gr_w -> dimension
        for (size_t v = 0; v < dim; ++v) hom[grw[v]]++;
        for (size_t v = 0; v < dim; ++v) {
            auto col = cols[v];
            for (;;) {
                ssize_t lead = -1;
                for (size_t w = 0; w * 64 < dim; ++w)
                    if (col[w]) {
                        lead = ssize_t(w * 64 + __builtin_ctzll(col[w]));
                        break;
                    }
                if (lead < 0) break;
                auto it = pivot_owner.find(size_t(lead));
                if (it == pivot_owner.end()) {
                    pivot_owner[size_t(lead)] = v;
                    cols[v] = col;
                    // a pivot kills one source-dimension and one target-dimension
                    hom[grw[v]]--;
                    hom[grw[size_t(lead)]]--;
                    break;
                }
                const auto& other = cols[it->second];
                for (size_t w = 0; w < col.size(); ++w) col[w] ^= other[w];
            }
        }
        return hom;
    };
    int64_t wsum = 4;
    for (uint32_t i = 0; i < C.size(); ++i)
        for (const auto& [j, c] : C.diff_row(i))
            for (const auto& m : c.terms()) wsum += m.a;
    const int64_t T = std::min<int64_t>(wsum, 48);
    auto a = graded_dims(T), b = graded_dims(T + 1);
    std::vector<int64_t> fresh;
    for (const auto& [g, d] : b) {
        int64_t prev = a.count(g) ? a[g] : 0;
        for (int64_t k = 0; k < d - prev; ++k) fresh.push_back(g);
    }
    if (fresh.size() != 1)
        throw std::runtime_error("d_invariant_grw: tower not unique (size " +
                                 std::to_string(fresh.size()) + ")");
    return fresh[0] + 2 * T;
}

}  // namespace satcfk
