#include "satcfk/complex.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "satcfk/gf2.hpp"

namespace satcfk {

namespace {

void accumulate(std::vector<std::pair<uint32_t, RingElement>>& row, uint32_t to,
                const RingElement& coef) {
    if (coef.is_zero()) return;
    for (auto it = row.begin(); it != row.end(); ++it) {
        if (it->first == to) {
            it->second += coef;
            if (it->second.is_zero()) row.erase(it);
            return;
        }
    }
    row.emplace_back(to, coef);
    std::sort(row.begin(), row.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
}

}  // namespace

uint32_t FreeComplex::add_generator(Generator g) {
    if (index_.count(g.id))
        throw std::runtime_error("FreeComplex: duplicate generator id " + g.id);
    uint32_t i = uint32_t(gens_.size());
    index_[g.id] = i;
    gens_.push_back(std::move(g));
    rows_.emplace_back();
    return i;
}

void FreeComplex::add_diff(uint32_t from, uint32_t to, const RingElement& coef) {
    accumulate(rows_[from], to, coef);
}

void FreeComplex::add_diff(const std::string& from, const std::string& to,
                           const RingElement& coef) {
    add_diff(index_of(from), index_of(to), coef);
}

uint32_t FreeComplex::index_of(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw std::runtime_error("FreeComplex: unknown id " + id);
    return it->second;
}

RingElement FreeComplex::diff_entry(uint32_t from, uint32_t to) const {
    for (const auto& [t, c] : rows_[from])
        if (t == to) return c;
    return RingElement::zero();
}

bool FreeComplex::all_algdeg_set() const {
    for (const auto& g : gens_)
        if (g.algdeg < 0) return false;
    return true;
}

std::string FreeComplex::str() const {
    std::ostringstream os;
    for (uint32_t i = 0; i < gens_.size(); ++i) {
        os << gens_[i].id << " gr" << gens_[i].gr.str();
        if (!gens_[i].alex.empty()) {
            os << " A(";
            for (size_t k = 0; k < gens_[i].alex.size(); ++k)
                os << (k ? "," : "") << gens_[i].alex[k].str();
            os << ")";
        }
        if (!rows_[i].empty()) {
            os << "  d -> ";
            for (size_t k = 0; k < rows_[i].size(); ++k) {
                if (k) os << " + ";
                os << gens_[rows_[i][k].first].id << "*(" << rows_[i][k].second.str() << ")";
            }
        }
        os << "\n";
    }
    return os.str();
}

std::string ValidationReport::str() const {
    if (ok) return "ok";
    std::string s;
    for (const auto& e : errors) s += e + "\n";
    return s;
}

ValidationReport validate(const FreeComplex& C) {
    ValidationReport rep;
    const Bigrading drop = Bigrading::ints(-1, -1);
    for (uint32_t i = 0; i < C.size(); ++i) {
        for (const auto& [j, coef] : C.diff_row(i)) {
            auto g = coef.grading();
            if (!g) {
                rep.fail("entry " + C.gen(i).id + " -> " + C.gen(j).id +
                         " has inhomogeneous coefficient " + coef.str());
                continue;
            }
            if (!(C.gen(i).gr + drop == C.gen(j).gr + *g))
                rep.fail("entry " + C.gen(i).id + " -> " + C.gen(j).id +
                         " violates (gr_w,gr_z): src " + C.gen(i).gr.str() + " tgt " +
                         C.gen(j).gr.str() + " coef " + coef.str());
            const auto& sa = C.gen(i).alex;
            const auto& ta = C.gen(j).alex;
            if (!sa.empty() && sa.size() == ta.size()) {
                for (size_t k = 0; k + 1 < sa.size(); ++k)
                    if (sa[k] != ta[k])
                        rep.fail("entry " + C.gen(i).id + " -> " + C.gen(j).id +
                                 " changes Alexander coordinate " + std::to_string(k));
                for (const auto& m : coef.terms()) {
                    if (sa.back() != ta.back() + m.alexander())
                        rep.fail("entry " + C.gen(i).id + " -> " + C.gen(j).id +
                                 " violates Alexander grading with coef " + coef.str());
                    break;
                }
            }
        }
    }
    // d^2 = 0
    for (uint32_t i = 0; i < C.size(); ++i) {
        std::map<uint32_t, RingElement> sq;
        for (const auto& [j, c1] : C.diff_row(i))
            for (const auto& [k, c2] : C.diff_row(j)) {
                sq[k] += c2 * c1;
            }
        for (const auto& [k, c] : sq)
            if (!c.is_zero())
                rep.fail("d^2 != 0: " + C.gen(i).id + " -> " + C.gen(k).id + " = " + c.str());
    }
    return rep;
}

bool is_reduced(const FreeComplex& C) {
    for (uint32_t i = 0; i < C.size(); ++i)
        for (const auto& [j, c] : C.diff_row(i))
            if (c.is_one()) return false;
    return true;
}

Morphism Morphism::identity(const FreeComplex& C) {
    Morphism f(C.size(), Bigrading::ints(0, 0));
    for (uint32_t i = 0; i < C.size(); ++i) f.add_entry(i, i, RingElement::one());
    return f;
}

void Morphism::add_entry(uint32_t from, uint32_t to, const RingElement& coef) {
    accumulate(rows_[from], to, coef);
}

bool Morphism::is_zero() const {
    for (const auto& r : rows_)
        if (!r.empty()) return false;
    return true;
}

Morphism Morphism::scaled(const RingElement& c) const {
    Morphism out(rows_.size(), deg_ + (c.grading() ? *c.grading() : Bigrading::ints(0, 0)));
    for (uint32_t i = 0; i < rows_.size(); ++i)
        for (const auto& [j, e] : rows_[i]) out.add_entry(i, j, e * c);
    return out;
}

std::string Morphism::str(const FreeComplex& src, const FreeComplex& tgt) const {
    std::ostringstream os;
    for (uint32_t i = 0; i < rows_.size(); ++i)
        for (const auto& [j, c] : rows_[i])
            os << src.gen(i).id << " -> " << tgt.gen(j).id << " (" << c.str() << ")\n";
    return os.str();
}

Morphism add(const Morphism& f, const Morphism& g) {
    Morphism out(std::max(f.src_size(), g.src_size()), f.degree());
    for (uint32_t i = 0; i < f.src_size(); ++i)
        for (const auto& [j, c] : f.row(i)) out.add_entry(i, j, c);
    for (uint32_t i = 0; i < g.src_size(); ++i)
        for (const auto& [j, c] : g.row(i)) out.add_entry(i, j, c);
    return out;
}

Morphism compose(const Morphism& g, const Morphism& f) {
    Morphism out(f.src_size(), f.degree() + g.degree());
    for (uint32_t i = 0; i < f.src_size(); ++i)
        for (const auto& [j, c1] : f.row(i)) {
            if (j >= g.src_size()) continue;
            for (const auto& [k, c2] : g.row(j)) out.add_entry(i, k, c2 * c1);
        }
    return out;
}

Morphism boundary(const FreeComplex& src, const FreeComplex& tgt, const Morphism& f) {
    Morphism out(src.size(), f.degree() + Bigrading::ints(-1, -1));
    for (uint32_t i = 0; i < src.size(); ++i) {
        for (const auto& [j, c1] : f.row(i))
            for (const auto& [k, c2] : tgt.diff_row(j)) out.add_entry(i, k, c2 * c1);
        for (const auto& [j, c1] : src.diff_row(i)) {
            if (j >= f.src_size()) continue;
            for (const auto& [k, c2] : f.row(j)) out.add_entry(i, k, c2 * c1);
        }
    }
    return out;
}

bool is_chain_map(const FreeComplex& src, const FreeComplex& tgt, const Morphism& f) {
    return boundary(src, tgt, f).is_zero();
}

bool morphisms_equal(const Morphism& f, const Morphism& g) {
    return add(f, g).is_zero();
}

ValidationReport validate_morphism(const FreeComplex& src, const FreeComplex& tgt,
                                   const Morphism& f) {
    ValidationReport rep;
    for (uint32_t i = 0; i < f.src_size(); ++i)
        for (const auto& [j, coef] : f.row(i)) {
            auto g = coef.grading();
            if (!g) {
                rep.fail("morphism entry with inhomogeneous coefficient " + coef.str());
                continue;
            }
            if (!(src.gen(i).gr + f.degree() == tgt.gen(j).gr + *g))
                rep.fail("morphism entry " + src.gen(i).id + " -> " + tgt.gen(j).id +
                         " off-degree: coef " + coef.str());
        }
    return rep;
}

// ---------------------------------------------------------------------------
// reduce

Reduction reduce(const FreeComplex& C) {
    const size_t n = C.size();
    std::vector<std::map<uint32_t, RingElement>> rows(n);
    std::vector<std::set<uint32_t>> into(n);
    for (uint32_t i = 0; i < n; ++i)
        for (const auto& [j, c] : C.diff_row(i)) {
            rows[i][j] = c;
            into[j].insert(i);
        }
    std::vector<bool> alive(n, true);
    std::vector<uint32_t> rank(n);
    {
        std::vector<uint32_t> order(n);
        for (uint32_t i = 0; i < n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&C](uint32_t a, uint32_t b) { return C.gen(a).id < C.gen(b).id; });
        for (uint32_t r = 0; r < n; ++r) rank[order[r]] = r;
    }

    // SDR data over the original index space
    std::vector<std::map<uint32_t, RingElement>> I(n), P(n), H(n);
    for (uint32_t i = 0; i < n; ++i) {
        I[i][i] = RingElement::one();
        P[i][i] = RingElement::one();
    }

    auto acc = [](std::map<uint32_t, RingElement>& m, uint32_t k, const RingElement& c) {
        if (c.is_zero()) return;
        auto& slot = m[k];
        slot += c;
        if (slot.is_zero()) m.erase(k);
    };

    for (;;) {
        // lexicographically first unit entry by (source-id, target-id)
        int64_t bx = -1, by = -1;
        for (uint32_t i = 0; i < n; ++i) {
            if (!alive[i]) continue;
            for (const auto& [j, c] : rows[i]) {
                if (!c.is_one()) continue;
                if (bx < 0 || rank[i] < rank[bx] ||
                    (rank[i] == rank[bx] && rank[j] < rank[by])) {
                    bx = i;
                    by = j;
                }
            }
        }
        if (bx < 0) break;
        uint32_t x = uint32_t(bx), y = uint32_t(by);

        // beta = d(x) with the y term removed
        std::map<uint32_t, RingElement> beta = rows[x];
        beta.erase(y);

        // H update first (uses old I, P): H(c) += (coef of y in P(c)) * I(x)
        for (uint32_t c = 0; c < n; ++c) {
            auto it = P[c].find(y);
            if (it == P[c].end()) continue;
            RingElement mu = it->second;
            for (const auto& [k, v] : I[x]) acc(H[c], k, v * mu);
        }

        // I update: for alive a with d(a) hitting y:  I(a) += alpha_a * I(x)
        std::vector<std::pair<uint32_t, RingElement>> entrants;  // (a, alpha_a), a != x
        for (uint32_t a : into[y]) {
            if (!alive[a] || a == x) continue;
            entrants.emplace_back(a, rows[a][y]);
        }
        for (const auto& [a, alpha] : entrants)
            for (const auto& [k, v] : I[x]) acc(I[a], k, v * alpha);

        // P update: P(c): drop x component; y component mu becomes mu * beta
        for (uint32_t c = 0; c < n; ++c) {
            P[c].erase(x);
            auto it = P[c].find(y);
            if (it == P[c].end()) continue;
            RingElement mu = it->second;
            P[c].erase(y);
            for (const auto& [b, e] : beta) acc(P[c], b, e * mu);
        }

        // differential zig-zag: d(a) += alpha_a * beta
        for (const auto& [a, alpha] : entrants) {
            for (const auto& [b, e] : beta) {
                auto& slot = rows[a][b];
                slot += e * alpha;
                if (slot.is_zero())
                    rows[a].erase(b);
                else
                    into[b].insert(a);
            }
        }

        // remove x and y with all incident arrows
        alive[x] = alive[y] = false;
        for (const auto& [j, c] : rows[x]) into[j].erase(x);
        for (const auto& [j, c] : rows[y]) into[j].erase(y);
        rows[x].clear();
        rows[y].clear();
        for (uint32_t a : into[x])
            if (alive[a]) rows[a].erase(x);
        for (uint32_t a : into[y])
            if (alive[a]) rows[a].erase(y);
        into[x].clear();
        into[y].clear();
        // drop the original alpha_a entries into y
        for (const auto& [a, alpha] : entrants) {
            rows[a].erase(y);
        }
    }

    // compact
    Reduction out;
    std::vector<uint32_t> new_index(n, UINT32_MAX);
    for (uint32_t i = 0; i < n; ++i) {
        if (!alive[i]) continue;
        new_index[i] = uint32_t(out.reduced.size());
        out.reduced.add_generator(C.gen(i));
    }
    for (uint32_t i = 0; i < n; ++i) {
        if (!alive[i]) continue;
        for (const auto& [j, c] : rows[i]) out.reduced.add_diff(new_index[i], new_index[j], c);
    }
    out.incl = Morphism(out.reduced.size(), Bigrading::ints(0, 0));
    for (uint32_t i = 0; i < n; ++i) {
        if (!alive[i]) continue;
        for (const auto& [k, v] : I[i]) out.incl.add_entry(new_index[i], k, v);
    }
    out.proj = Morphism(n, Bigrading::ints(0, 0));
    for (uint32_t c = 0; c < n; ++c)
        for (const auto& [k, v] : P[c]) out.proj.add_entry(c, new_index[k], v);
    out.h = Homotopy(n, Bigrading::ints(1, 1));
    for (uint32_t c = 0; c < n; ++c)
        for (const auto& [k, v] : H[c]) out.h.add_entry(c, k, v);
    return out;
}

FreeComplex reduce_fast(const FreeComplex& C) {
    const size_t n = C.size();
    std::vector<std::map<uint32_t, RingElement>> rows(n);
    std::vector<std::set<uint32_t>> into(n);
    for (uint32_t i = 0; i < n; ++i)
        for (const auto& [j, c] : C.diff_row(i)) {
            rows[i][j] = c;
            into[j].insert(i);
        }
    std::vector<bool> alive(n, true);
    std::vector<uint32_t> rank(n);
    {
        std::vector<uint32_t> order(n);
        for (uint32_t i = 0; i < n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&C](uint32_t a, uint32_t b) { return C.gen(a).id < C.gen(b).id; });
        for (uint32_t r = 0; r < n; ++r) rank[order[r]] = r;
    }

    for (;;) {
        int64_t bx = -1, by = -1;
        for (uint32_t i = 0; i < n; ++i) {
            if (!alive[i]) continue;
            for (const auto& [j, c] : rows[i]) {
                if (!c.is_one()) continue;
                if (bx < 0 || rank[i] < rank[bx] ||
                    (rank[i] == rank[bx] && rank[j] < rank[by])) {
                    bx = i;
                    by = j;
                }
            }
        }
        if (bx < 0) break;
        uint32_t x = uint32_t(bx), y = uint32_t(by);
        std::map<uint32_t, RingElement> beta = rows[x];
        beta.erase(y);
        std::vector<std::pair<uint32_t, RingElement>> entrants;
        for (uint32_t a : into[y]) {
            if (!alive[a] || a == x) continue;
            entrants.emplace_back(a, rows[a][y]);
        }
        for (const auto& [a, alpha] : entrants)
            for (const auto& [b, e] : beta) {
                auto& slot = rows[a][b];
                slot += e * alpha;
                if (slot.is_zero())
                    rows[a].erase(b);
                else
                    into[b].insert(a);
            }
        alive[x] = alive[y] = false;
        for (const auto& [j, c] : rows[x]) into[j].erase(x);
        for (const auto& [j, c] : rows[y]) into[j].erase(y);
        rows[x].clear();
        rows[y].clear();
        for (uint32_t a : into[x])
            if (alive[a]) rows[a].erase(x);
        for (uint32_t a : into[y])
            if (alive[a]) rows[a].erase(y);
        into[x].clear();
        into[y].clear();
        for (const auto& [a, alpha] : entrants) rows[a].erase(y);
    }

    FreeComplex out;
    std::vector<uint32_t> new_index(n, UINT32_MAX);
    for (uint32_t i = 0; i < n; ++i) {
        if (!alive[i]) continue;
        new_index[i] = uint32_t(out.size());
        out.add_generator(C.gen(i));
    }
    for (uint32_t i = 0; i < n; ++i) {
        if (!alive[i]) continue;
        for (const auto& [j, c] : rows[i]) out.add_diff(new_index[i], new_index[j], c);
    }
    return out;
}

// ---------------------------------------------------------------------------
// lift_chain_map

namespace {

// exponent vector mu(x) = (-gr_w/2, -gr_z/2); staircase generators have even
// bigradings so this lands in Z^2
std::pair<int64_t, int64_t> monomial_point(const Generator& g) {
    if (g.gr.w.twice() % 4 != 0 || g.gr.z.twice() % 4 != 0)
        throw std::runtime_error("lift_chain_map: generator " + g.id + " has odd bigrading");
    return {-g.gr.w.twice() / 4, -g.gr.z.twice() / 4};
}

}  // namespace

Morphism lift_chain_map(const FreeComplex& A, const FreeComplex& B, Bigrading shift) {
    if (!A.all_algdeg_set() || !B.all_algdeg_set())
        throw std::runtime_error("lift_chain_map: staircases need algdeg labels");
    if (shift.w.twice() % 4 != 0 || shift.z.twice() % 4 != 0)
        throw std::runtime_error("lift_chain_map: shift must have even coordinates");
    int64_t du = -shift.w.twice() / 4, dv = -shift.z.twice() / 4;

    Morphism f(A.size(), shift);
    // algdeg-0 part: monomial-ideal comparison
    for (uint32_t i = 0; i < A.size(); ++i) {
        if (A.gen(i).algdeg != 0) continue;
        auto [u, v] = monomial_point(A.gen(i));
        u += du;
        v += dv;
        bool found = false;
        for (uint32_t j = 0; j < B.size() && !found; ++j) {
            if (B.gen(j).algdeg != 0) continue;
            auto [bu, bv] = monomial_point(B.gen(j));
            if (bu <= u && bv <= v) {
                f.add_entry(i, j, Monomial::WZ(int32_t(u - bu), int32_t(v - bv)));
                found = true;
            }
        }
        if (!found)
            throw std::runtime_error("lift_chain_map: no such map (homology level fails at " +
                                     A.gen(i).id + ")");
    }
    // algdeg-1 part: solve d_B F(y) = F(d_A y), one generator at a time
    for (uint32_t i = 0; i < A.size(); ++i) {
        if (A.gen(i).algdeg != 1) continue;
        // rhs = F(dA(y)) as map to (gen of B, monomial) basis
        std::map<std::pair<uint32_t, Monomial>, int> rhs;
        for (const auto& [a2, c] : A.diff_row(i))
            for (const auto& [b, e] : f.row(a2))
                for (const auto& m1 : c.terms())
                    for (const auto& m2 : e.terms()) rhs[{b, mul(m1, m2)}] ^= 1;
        // unknowns: entries y -> y' with y' algdeg 1 and admissible monomial
        std::vector<std::pair<uint32_t, Monomial>> unknowns;
        for (uint32_t j = 0; j < B.size(); ++j) {
            if (B.gen(j).algdeg != 1) continue;
            Bigrading need = A.gen(i).gr + shift - B.gen(j).gr;
            if (need.w.twice() % 4 != 0 || need.z.twice() % 4 != 0) continue;
            int64_t p = -need.w.twice() / 4, q = -need.z.twice() / 4;
            if (p < 0 || q < 0) continue;
            unknowns.emplace_back(j, Monomial::WZ(int32_t(p), int32_t(q)));
        }
        // equations indexed by (target gen, monomial): d_B(sum x_k y'_k m_k) = rhs
        std::map<std::pair<uint32_t, Monomial>, std::vector<size_t>> eqs;
        for (size_t k = 0; k < unknowns.size(); ++k) {
            auto [j, m] = unknowns[k];
            for (const auto& [j2, c] : B.diff_row(j))
                for (const auto& mc : c.terms()) eqs[{j2, mul(mc, m)}].push_back(k);
        }
        for (const auto& [key, val] : rhs)
            if (val) eqs[key];  // ensure the equation row exists
        Gf2System sys(unknowns.size());
        for (const auto& [key, vars] : eqs) {
            auto it = rhs.find(key);
            bool b = (it != rhs.end() && it->second);
            sys.add_equation(vars, b);
        }
        auto sol = sys.solve_lex_min();
        if (!sol)
            throw std::runtime_error("lift_chain_map: inconsistent algdeg-1 system at " +
                                     A.gen(i).id);
        for (size_t k = 0; k < unknowns.size(); ++k)
            if ((*sol)[k]) f.add_entry(i, unknowns[k].first, unknowns[k].second);
    }
    if (!is_chain_map(A, B, f))
        throw std::runtime_error("lift_chain_map: produced map is not a chain map");
    return f;
}

// ---------------------------------------------------------------------------
// solve_null_homotopy

Homotopy solve_null_homotopy(const FreeComplex& src, const FreeComplex& tgt,
                             const Morphism& f) {
    const bool use_algdeg = src.all_algdeg_set() && tgt.all_algdeg_set();
    Bigrading hdeg = f.degree() + Bigrading::ints(1, 1);

    // unknowns (a, b, monomial), ordered by (a-id, b-id)
    struct Unknown {
        uint32_t a, b;
        Monomial m;
    };
    std::vector<Unknown> unknowns;
    std::vector<std::pair<uint32_t, uint32_t>> pairs;
    for (uint32_t a = 0; a < src.size(); ++a)
        for (uint32_t b = 0; b < tgt.size(); ++b) pairs.emplace_back(a, b);
    std::sort(pairs.begin(), pairs.end(), [&](auto p, auto q) {
        if (src.gen(p.first).id != src.gen(q.first).id)
            return src.gen(p.first).id < src.gen(q.first).id;
        return tgt.gen(p.second).id < tgt.gen(q.second).id;
    });
    for (auto [a, b] : pairs) {
        if (use_algdeg && tgt.gen(b).algdeg != src.gen(a).algdeg + 1) continue;
        Bigrading need = src.gen(a).gr + hdeg - tgt.gen(b).gr;
        if (need.w.twice() % 4 != 0 || need.z.twice() % 4 != 0) continue;
        int64_t p = -need.w.twice() / 4, q = -need.z.twice() / 4;
        if (p < 0 || q < 0) continue;
        unknowns.push_back({a, b, Monomial::WZ(int32_t(p), int32_t(q))});
    }

    // equations per (source a, target c, monomial): [d H + H d](a)|_(c,m) = F(a)|_(c,m)
    std::map<std::tuple<uint32_t, uint32_t, Monomial>, std::vector<size_t>> eqs;
    std::map<std::tuple<uint32_t, uint32_t, Monomial>, int> rhs;
    for (size_t k = 0; k < unknowns.size(); ++k) {
        const auto& u = unknowns[k];
        for (const auto& [c, e] : tgt.diff_row(u.b))  // d_tgt . H
            for (const auto& mc : e.terms()) eqs[{u.a, c, mul(mc, u.m)}].push_back(k);
    }
    // H . d_src : entry (a', b, m) contributes to a with d(a) = a' * e
    for (uint32_t a = 0; a < src.size(); ++a)
        for (const auto& [a2, e] : src.diff_row(a))
            for (size_t k = 0; k < unknowns.size(); ++k) {
                const auto& u = unknowns[k];
                if (u.a != a2) continue;
                for (const auto& me : e.terms()) eqs[{a, u.b, mul(u.m, me)}].push_back(k);
            }
    for (uint32_t a = 0; a < src.size(); ++a)
        for (const auto& [c, e] : f.row(a))
            for (const auto& m : e.terms()) {
                rhs[{a, c, m}] ^= 1;
                eqs[{a, c, m}];
            }
    Gf2System sys(unknowns.size());
    for (const auto& [key, vars] : eqs) {
        auto it = rhs.find(key);
        sys.add_equation(vars, it != rhs.end() && it->second);
    }
    auto sol = sys.solve_lex_min();
    if (!sol) throw std::runtime_error("solve_null_homotopy: inconsistent system");
    Homotopy H(src.size(), hdeg);
    for (size_t k = 0; k < unknowns.size(); ++k)
        if ((*sol)[k]) H.add_entry(unknowns[k].a, unknowns[k].b, unknowns[k].m);
    return H;
}

// ---------------------------------------------------------------------------
// iso_check

namespace {

struct IsoProblem {
    const FreeComplex* C1;
    const FreeComplex* C2;
    Bigrading offset;  // added to C1 gradings before comparing
    bool check_alex = false;
    std::vector<int64_t> match;   // C1 index -> C2 index or -1
    std::vector<bool> used;

    bool compatible(uint32_t i, uint32_t j) const {
        if (!(C1->gen(i).gr + offset == C2->gen(j).gr)) return false;
        if (check_alex && C1->gen(i).alex != C2->gen(j).alex) return false;
        if (C1->diff_row(i).size() != C2->diff_row(j).size()) return false;
        // check arrows between already-matched generators agree both ways
        for (const auto& [k, c] : C1->diff_row(i)) {
            if (match[k] < 0 && k != i) continue;
            uint32_t mk = (k == i) ? j : uint32_t(match[k]);
            if (!(C2->diff_entry(j, mk) == c)) return false;
        }
        for (uint32_t k = 0; k < C1->size(); ++k) {
            if (match[k] < 0) continue;
            RingElement c = C1->diff_entry(k, i);
            if (!(C2->diff_entry(uint32_t(match[k]), j) == c)) return false;
        }
        return true;
    }

    bool solve(uint32_t i) {
        if (i == C1->size()) return true;
        for (uint32_t j = 0; j < C2->size(); ++j) {
            if (used[j] || !compatible(i, j)) continue;
            match[i] = j;
            used[j] = true;
            if (solve(i + 1)) return true;
            match[i] = -1;
            used[j] = false;
        }
        return false;
    }
};

bool perm_iso_with_offset(const FreeComplex& C1, const FreeComplex& C2, Bigrading offset,
                          bool check_alex = false) {
    if (C1.size() != C2.size()) return false;
    IsoProblem p{&C1, &C2, offset, check_alex, std::vector<int64_t>(C1.size(), -1),
                 std::vector<bool>(C2.size(), false)};
    return p.solve(0);
}

// arithmetic in GF(2^64) = GF(2)[x]/(x^64 + x^4 + x^3 + x + 1)
uint64_t gf2_64_mul(uint64_t a, uint64_t b) {
    uint64_t r = 0;
    while (b) {
        if (b & 1) r ^= a;
        b >>= 1;
        uint64_t carry = a & 0x8000000000000000ull;
        a <<= 1;
        if (carry) a ^= 0x1bull;
    }
    return r;
}

uint64_t gf2_64_inv(uint64_t a) {
    // a^(2^64 - 2)
    uint64_t result = 1, power = a;
    for (int i = 0; i < 63; ++i) {
        power = gf2_64_mul(power, power);
        result = gf2_64_mul(result, power);
    }
    return result;
}

bool gf2_64_full_rank(std::vector<std::vector<uint64_t>>& M) {
    const size_t n = M.size();
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && M[piv][col] == 0) ++piv;
        if (piv == n) return false;
        std::swap(M[piv], M[col]);
        uint64_t inv = gf2_64_inv(M[col][col]);
        for (size_t r = col + 1; r < n; ++r) {
            if (M[r][col] == 0) continue;
            uint64_t factor = gf2_64_mul(M[r][col], inv);
            for (size_t c = col; c < n; ++c)
                M[r][c] ^= gf2_64_mul(factor, M[col][c]);
        }
    }
    return true;
}

// Isomorphisms need not permute basis elements: search the GF(2) solution
// space of the chain-map equation for a map whose constant part is invertible
// (invertibility over the graded local ring is detected mod (W,Z)).
bool gl_iso_with_offset(const FreeComplex& A, const FreeComplex& B, Bigrading offset) {
    if (A.size() != B.size()) return false;
    struct Unk {
        uint32_t i, j;
        Monomial m;
    };
    std::vector<Unk> unknowns;
    for (uint32_t i = 0; i < A.size(); ++i)
        for (uint32_t j = 0; j < B.size(); ++j) {
            Bigrading need = A.gen(i).gr + offset - B.gen(j).gr;
            if (need.w.twice() % 4 != 0 || need.z.twice() % 4 != 0) continue;
            int64_t p = -need.w.twice() / 4, q = -need.z.twice() / 4;
            if (p < 0 || q < 0) continue;
            unknowns.push_back({i, j, Monomial::WZ(int32_t(p), int32_t(q))});
        }
    const size_t nv = unknowns.size();
    // equations: (d_B phi + phi d_A)(i)|_(k, mon) = 0
    std::map<std::tuple<uint32_t, uint32_t, Monomial>, std::vector<size_t>> eqs;
    for (size_t v = 0; v < nv; ++v) {
        const auto& u = unknowns[v];
        for (const auto& [k, c] : B.diff_row(u.j))
            for (const auto& mc : c.terms()) eqs[{u.i, k, mul(mc, u.m)}].push_back(v);
    }
    for (uint32_t i = 0; i < A.size(); ++i)
        for (const auto& [i2, c] : A.diff_row(i))
            for (size_t v = 0; v < nv; ++v) {
                if (unknowns[v].i != i2) continue;
                for (const auto& mc : c.terms())
                    eqs[{i, unknowns[v].j, mul(unknowns[v].m, mc)}].push_back(v);
            }
    // nullspace basis by elimination
    std::vector<std::vector<uint64_t>> rows;
    const size_t words = (nv + 63) / 64;
    std::vector<ssize_t> pivot_of_var(nv, -1);
    auto lead_of = [&](const std::vector<uint64_t>& r) -> ssize_t {
        for (size_t w = 0; w * 64 < nv; ++w)
            if (r[w]) return ssize_t(w * 64 + __builtin_ctzll(r[w]));
        return -1;
    };
    for (const auto& [key, vars] : eqs) {
        std::vector<uint64_t> row(words, 0);
        for (size_t v : vars) row[v / 64] ^= uint64_t(1) << (v % 64);
        for (;;) {
            ssize_t lead = lead_of(row);
            if (lead < 0) break;
            if (pivot_of_var[lead] < 0) {
                pivot_of_var[lead] = ssize_t(rows.size());
                rows.push_back(row);
                break;
            }
            const auto& pr = rows[pivot_of_var[lead]];
            for (size_t w = 0; w < words; ++w) row[w] ^= pr[w];
        }
    }
    // free variables parametrize the nullspace
    std::vector<size_t> free_vars;
    for (size_t v = 0; v < nv; ++v)
        if (pivot_of_var[v] < 0) free_vars.push_back(v);
    auto solution_for = [&](const std::vector<bool>& alpha) {
        std::vector<bool> x(nv, false);
        for (size_t f = 0; f < free_vars.size(); ++f) x[free_vars[f]] = alpha[f];
        // back-substitute pivots in decreasing variable order
        for (size_t v = nv; v-- > 0;) {
            if (pivot_of_var[v] < 0) continue;
            const auto& r = rows[pivot_of_var[v]];
            bool val = false;
            for (size_t w = 0; w < nv; ++w)
                if (w != v && (r[w / 64] >> (w % 64) & 1) && x[w]) val = !val;
            x[v] = val;
        }
        return x;
    };
    auto constant_part_invertible = [&](const std::vector<bool>& x) {
        const size_t n = A.size();
        std::vector<std::vector<uint64_t>> mat(n, std::vector<uint64_t>((n + 63) / 64, 0));
        for (size_t v = 0; v < nv; ++v) {
            if (!x[v] || !unknowns[v].m.is_one()) continue;
            mat[unknowns[v].i][unknowns[v].j / 64] |= uint64_t(1) << (unknowns[v].j % 64);
        }
        // rank over GF(2)
        size_t rank = 0;
        std::vector<bool> used(n, false);
        for (size_t col = 0; col < n; ++col) {
            ssize_t piv = -1;
            for (size_t r = 0; r < n; ++r)
                if (!used[r] && (mat[r][col / 64] >> (col % 64) & 1)) {
                    piv = ssize_t(r);
                    break;
                }
            if (piv < 0) continue;
            used[piv] = true;
            ++rank;
            for (size_t r = 0; r < n; ++r)
                if (ssize_t(r) != piv && (mat[r][col / 64] >> (col % 64) & 1))
                    for (size_t w = 0; w < mat[r].size(); ++w) mat[r][w] ^= mat[piv][w];
        }
        return rank == n;
    };
    const size_t nf = free_vars.size();
    std::vector<bool> alpha(nf, false);
    if (nf == 0) return constant_part_invertible(solution_for(alpha));
    // cheap first passes over GF(2)
    for (size_t f = 0; f < nf && f < 64; ++f) {
        std::fill(alpha.begin(), alpha.end(), false);
        alpha[f] = true;
        if (constant_part_invertible(solution_for(alpha))) return true;
    }
    std::fill(alpha.begin(), alpha.end(), true);
    if (constant_part_invertible(solution_for(alpha))) return true;

    // Exact decision over the extension field: an isomorphism over some
    // extension of GF(2) descends to GF(2) (Hom spaces are finite
    // dimensional), and the constant part of a generic solution is
    // invertible iff the determinant polynomial is nonzero; evaluate it at
    // random points of GF(2^64).
    const size_t n = A.size();
    // basis of the nullspace, one solution per free variable
    std::vector<std::vector<std::pair<uint32_t, uint32_t>>> contrib(nf);
    for (size_t f = 0; f < nf; ++f) {
        std::fill(alpha.begin(), alpha.end(), false);
        alpha[f] = true;
        auto x = solution_for(alpha);
        for (size_t v = 0; v < nv; ++v)
            if (x[v] && unknowns[v].m.is_one())
                contrib[f].push_back({unknowns[v].i, unknowns[v].j});
    }
    uint64_t state = 0x51dc3a9f0b445a21ull;
    auto rnd = [&state]() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    };
    for (int trial = 0; trial < 3; ++trial) {
        std::vector<std::vector<uint64_t>> M(n, std::vector<uint64_t>(n, 0));
        for (size_t f = 0; f < nf; ++f) {
            uint64_t a = rnd();
            for (const auto& [i, j] : contrib[f]) M[i][j] ^= a;
        }
        if (gf2_64_full_rank(M)) return true;
    }
    return false;
}

bool iso_exact_with_offset(const FreeComplex& C1, const FreeComplex& C2, Bigrading offset,
                           bool check_alex = false) {
    if (C1.size() != C2.size()) return false;
    if (perm_iso_with_offset(C1, C2, offset, check_alex)) return true;
    return gl_iso_with_offset(C1, C2, offset);
}

std::vector<std::vector<uint32_t>> components(const FreeComplex& C) {
    std::vector<int64_t> comp(C.size(), -1);
    std::vector<std::vector<uint32_t>> nbr(C.size());
    for (uint32_t i = 0; i < C.size(); ++i)
        for (const auto& [j, c] : C.diff_row(i)) {
            nbr[i].push_back(j);
            nbr[j].push_back(i);
        }
    std::vector<std::vector<uint32_t>> out;
    for (uint32_t i = 0; i < C.size(); ++i) {
        if (comp[i] >= 0) continue;
        std::vector<uint32_t> stack{i}, mem;
        comp[i] = int64_t(out.size());
        while (!stack.empty()) {
            uint32_t v = stack.back();
            stack.pop_back();
            mem.push_back(v);
            for (uint32_t w : nbr[v])
                if (comp[w] < 0) {
                    comp[w] = int64_t(out.size());
                    stack.push_back(w);
                }
        }
        std::sort(mem.begin(), mem.end());
        out.push_back(std::move(mem));
    }
    return out;
}

FreeComplex subcomplex(const FreeComplex& C, const std::vector<uint32_t>& idx) {
    FreeComplex out;
    std::map<uint32_t, uint32_t> remap;
    for (uint32_t i : idx) {
        remap[i] = uint32_t(out.size());
        out.add_generator(C.gen(i));
    }
    for (uint32_t i : idx)
        for (const auto& [j, c] : C.diff_row(i)) {
            auto it = remap.find(j);
            if (it != remap.end()) out.add_diff(remap[i], it->second, c);
        }
    return out;
}

bool match_components(std::vector<FreeComplex>& a, std::vector<FreeComplex>& b, size_t i,
                      std::vector<bool>& used) {
    if (i == a.size()) return true;
    for (size_t j = 0; j < b.size(); ++j) {
        if (used[j] || a[i].size() != b[j].size()) continue;
        // per-component offset: anchor the first generator of a[i] to any same-shape
        // generator of b[j]
        bool matched = false;
        std::set<Bigrading> tried;
        for (uint32_t t = 0; t < b[j].size() && !matched; ++t) {
            Bigrading off = b[j].gen(t).gr - a[i].gen(0).gr;
            if (tried.count(off)) continue;
            tried.insert(off);
            if (iso_exact_with_offset(a[i], b[j], off)) matched = true;
        }
        if (!matched) continue;
        used[j] = true;
        if (match_components(a, b, i + 1, used)) return true;
        used[j] = false;
    }
    return false;
}

}  // namespace

bool iso_check(const FreeComplex& C1, const FreeComplex& C2, IsoGrading mode) {
    if (C1.size() != C2.size()) return false;
    if (mode == IsoGrading::Exact) {
        // quick invariant: multiset of gradings
        std::multiset<std::pair<int64_t, int64_t>> g1, g2;
        for (const auto& g : C1.gens()) g1.insert({g.gr.w.twice(), g.gr.z.twice()});
        for (const auto& g : C2.gens()) g2.insert({g.gr.w.twice(), g.gr.z.twice()});
        if (g1 != g2) return false;
        return iso_exact_with_offset(C1, C2, Bigrading::ints(0, 0), /*check_alex=*/true);
    }
    auto ca = components(C1);
    auto cb = components(C2);
    if (ca.size() != cb.size()) return false;
    std::vector<FreeComplex> a, b;
    for (const auto& idx : ca) a.push_back(subcomplex(C1, idx));
    for (const auto& idx : cb) b.push_back(subcomplex(C2, idx));
    // biggest components first to fail fast
    std::sort(a.begin(), a.end(), [](const auto& x, const auto& y) { return x.size() > y.size(); });
    std::sort(b.begin(), b.end(), [](const auto& x, const auto& y) { return x.size() > y.size(); });
    std::vector<bool> used(b.size(), false);
    return match_components(a, b, 0, used);
}

std::optional<PermIso> find_permutation_iso(const FreeComplex& C1, const FreeComplex& C2) {
    if (C1.size() != C2.size()) return std::nullopt;
    if (C1.size() == 0) return PermIso{{}, Bigrading::ints(0, 0)};
    std::set<Bigrading> offsets;
    for (const auto& g : C2.gens()) offsets.insert(g.gr - C1.gen(0).gr);
    for (const auto& off : offsets) {
        IsoProblem p{&C1, &C2, off, false, std::vector<int64_t>(C1.size(), -1),
                     std::vector<bool>(C2.size(), false)};
        if (p.solve(0)) {
            PermIso out;
            out.offset = off;
            for (auto m : p.match) out.match.push_back(uint32_t(m));
            return out;
        }
    }
    return std::nullopt;
}

FreeComplex direct_sum(const std::vector<const FreeComplex*>& parts,
                       const std::vector<std::string>& prefixes) {
    FreeComplex out;
    for (size_t p = 0; p < parts.size(); ++p) {
        for (uint32_t i = 0; i < parts[p]->size(); ++i) {
            Generator g = parts[p]->gen(i);
            g.id = prefixes[p] + g.id;
            out.add_generator(std::move(g));
        }
    }
    size_t base = 0;
    for (size_t p = 0; p < parts.size(); ++p) {
        for (uint32_t i = 0; i < parts[p]->size(); ++i)
            for (const auto& [j, c] : parts[p]->diff_row(i))
                out.add_diff(uint32_t(base + i), uint32_t(base + j), c);
        base += parts[p]->size();
    }
    return out;
}

}  // namespace satcfk
