#include "satcfk/column.hpp"

#include <sstream>

namespace satcfk {

std::string key_half(Half h) {
    // sortable fixed-width encoding of twice-the-value, offset to stay positive
    int64_t v = h.twice() + 5000;
    char buf[8];
    std::snprintf(buf, sizeof buf, "%05lld", (long long)v);
    return std::string(buf);
}

const Column& ColumnDiagram::column(Half p) const {
    auto it = cols_.find(p);
    if (it == cols_.end())
        throw std::runtime_error("ColumnDiagram: column out of range at p = " + p.str());
    return it->second;
}

namespace {

void acc(DiagramElement& out, Half p, uint32_t i, const RingElement& c) {
    if (c.is_zero()) return;
    auto key = std::make_pair(p, i);
    out[key] += c;
    if (out[key].is_zero()) out.erase(key);
}

}  // namespace

DiagramElement apply_step(const ColumnDiagram& D, char letter, const DiagramElement& v) {
    DiagramElement out;
    for (const auto& [key, coef] : v) {
        const auto& [p, i] = key;
        const Column& col = D.column(p);
        const auto& step = (letter == 'W') ? col.stepW : col.stepZ;
        if (!step)
            throw std::runtime_error(std::string("ColumnDiagram: no ") + letter +
                                     " step at column " + p.str());
        Half q = (letter == 'W') ? p - Half::whole(1) : p + Half::whole(1);
        for (const auto& [j, c] : step->row(i)) acc(out, q, j, c * coef);
    }
    return out;
}

DiagramElement apply_monomial(const ColumnDiagram& D, const Monomial& m, const DiagramElement& v) {
    if (m.idem != 0) throw std::runtime_error("apply_monomial: idempotent 0 expected");
    int32_t u = std::min(m.a, m.b);
    int32_t wp = m.a - u, zp = m.b - u;
    DiagramElement out;
    RingElement upow(Monomial::U0(u));
    for (const auto& [key, coef] : v) acc(out, key.first, key.second, coef * upow);
    for (int32_t k = 0; k < zp; ++k) out = apply_step(D, 'Z', out);
    for (int32_t k = 0; k < wp; ++k) out = apply_step(D, 'W', out);
    return out;
}

namespace {

DiagramElement apply_corrector(const ColumnDiagram& D, bool wz, const DiagramElement& v) {
    DiagramElement out;
    for (const auto& [key, coef] : v) {
        const auto& [p, i] = key;
        const Column& col = D.column(p);
        const auto& h = wz ? col.hWZ : col.hZW;
        if (!h) continue;
        for (const auto& [j, c] : h->row(i)) acc(out, p, j, c * coef);
    }
    return out;
}

}  // namespace

DiagramElement apply_delta3(const ColumnDiagram& D, const Monomial& b, const Monomial& a,
                            const DiagramElement& v) {
    int32_t ua = std::min(a.a, a.b), ub = std::min(b.a, b.b);
    int32_t aw = a.a - ua, az = a.b - ua;
    int32_t bw = b.a - ub, bz = b.b - ub;
    DiagramElement cur;
    RingElement upow(Monomial::U0(ua + ub));
    for (const auto& [key, coef] : v) acc(cur, key.first, key.second, coef * upow);

    DiagramElement total;
    auto collect = [&total](const DiagramElement& e, const RingElement& scale) {
        for (const auto& [key, c] : e) acc(total, key.first, key.second, c * scale);
    };

    if (az > 0 && bw > 0 && aw == 0 && bz == 0) {
        // delta3(W^bw, Z^az, -) = sum_k U^{k-1} W^{bw-k} hWZ Z^{az-k}
        for (int32_t k = 1; k <= std::min(bw, az); ++k) {
            DiagramElement e = cur;
            for (int32_t r = 0; r < az - k; ++r) e = apply_step(D, 'Z', e);
            e = apply_corrector(D, /*wz=*/true, e);
            for (int32_t r = 0; r < bw - k; ++r) e = apply_step(D, 'W', e);
            collect(e, RingElement(Monomial::U0(k - 1)));
        }
    } else if (aw > 0 && bz > 0 && az == 0 && bw == 0) {
        // delta3(Z^bz, W^aw, -) = sum_k U^{k-1} Z^{bz-k} hZW W^{aw-k}
        for (int32_t k = 1; k <= std::min(bz, aw); ++k) {
            DiagramElement e = cur;
            for (int32_t r = 0; r < aw - k; ++r) e = apply_step(D, 'W', e);
            e = apply_corrector(D, /*wz=*/false, e);
            for (int32_t r = 0; r < bz - k; ++r) e = apply_step(D, 'Z', e);
            collect(e, RingElement(Monomial::U0(k - 1)));
        }
    }
    return total;
}

ValidationReport ColumnDiagram::check_relations() const {
    ValidationReport rep;
    for (const auto& [p, col] : cols_) {
        // step degree bookkeeping
        if (col.stepZ && cols_.count(p + Half::whole(1))) {
            const Column& nxt = cols_.at(p + Half::whole(1));
            Bigrading eff = col.stepZ->degree() + nxt.shift - col.shift;
            if (!(eff == Bigrading::ints(0, -2)))
                rep.fail("Z step at " + p.str() + " has effective degree " + eff.str());
        }
        if (col.stepW && cols_.count(p - Half::whole(1))) {
            const Column& prv = cols_.at(p - Half::whole(1));
            Bigrading eff = col.stepW->degree() + prv.shift - col.shift;
            if (!(eff == Bigrading::ints(-2, 0)))
                rep.fail("W step at " + p.str() + " has effective degree " + eff.str());
        }
    }
    for (const auto& [p, col] : cols_) {
        if (!cols_.count(p + Half::whole(1)) || !cols_.count(p - Half::whole(1))) continue;
        // W then Z from p (upwards first): L_W . L_Z vs U + boundary(hWZ)
        {
            const Column& up = cols_.at(p + Half::whole(1));
            Morphism wz = compose(*up.stepW, *col.stepZ);
            Morphism rhs = Morphism::identity(*col.cx).scaled(RingElement(Monomial::U0(1)));
            if (col.hWZ) rhs = add(rhs, boundary(*col.cx, *col.cx, *col.hWZ));
            if (!morphisms_equal(wz, rhs))
                rep.fail("W.Z relation fails at column " + p.str());
        }
        {
            const Column& dn = cols_.at(p - Half::whole(1));
            Morphism zw = compose(*dn.stepZ, *col.stepW);
            Morphism rhs = Morphism::identity(*col.cx).scaled(RingElement(Monomial::U0(1)));
            if (col.hZW) rhs = add(rhs, boundary(*col.cx, *col.cx, *col.hZW));
            if (!morphisms_equal(zw, rhs))
                rep.fail("Z.W relation fails at column " + p.str());
        }
    }
    return rep;
}

BlockComplex box_tensor(const FreeComplex& X, const ColumnDiagram& D, Half wall,
                        const std::string& id_prefix) {
    BlockComplex out;
    std::vector<Half> colof(X.size());
    for (uint32_t xi = 0; xi < X.size(); ++xi) {
        if (X.gen(xi).alex.empty())
            throw std::runtime_error("box_tensor: X generator without Alexander grading");
        Half p = wall - X.gen(xi).alex.back();
        colof[xi] = p;
        const Column& col = D.column(p);
        for (uint32_t ci = 0; ci < col.cx->size(); ++ci) {
            const Generator& c = col.cx->gen(ci);
            Generator g;
            g.id = id_prefix + X.gen(xi).id + "|" + c.id;
            g.gr = X.gen(xi).gr + c.gr + col.shift;
            if (!c.alex.empty()) g.alex = {c.alex.back() + col.alex_shift};
            g.block = id_prefix;
            uint32_t bi = out.cx.add_generator(std::move(g));
            out.lookup[{xi, p, ci}] = bi;
            out.rev[bi] = {xi, p, ci};
        }
    }
    auto emit = [&out](uint32_t from, uint32_t xi, const DiagramElement& e) {
        for (const auto& [key, c] : e) {
            auto it = out.lookup.find({xi, key.first, key.second});
            if (it == out.lookup.end())
                throw std::runtime_error("box_tensor: target column missing in block");
            out.cx.add_diff(from, it->second, c);
        }
    };
    for (uint32_t xi = 0; xi < X.size(); ++xi) {
        Half p = colof[xi];
        const Column& col = D.column(p);
        for (uint32_t ci = 0; ci < col.cx->size(); ++ci) {
            uint32_t from = out.lookup[{xi, p, ci}];
            // internal differential of the column complex
            for (const auto& [cj, e] : col.cx->diff_row(ci)) out.cx.add_diff(from, out.lookup[{xi, p, cj}], e);
            // single-letter composites over X arrows
            DiagramElement unit{{{p, ci}, RingElement::one()}};
            for (const auto& [xj, coef] : X.diff_row(xi)) {
                for (const auto& m : coef.terms()) emit(from, xj, apply_monomial(D, m, unit));
                // delta3 over composable pairs
                for (const auto& [xk, coef2] : X.diff_row(xj))
                    for (const auto& ma : coef.terms())
                        for (const auto& mb : coef2.terms())
                            emit(from, xk, apply_delta3(D, mb, ma, unit));
            }
        }
    }
    return out;
}

Morphism box_tensor_morphism(const FreeComplex& X, const BlockComplex& src,
                             const BlockComplex& tgt, const RowMorphismData& f,
                             Bigrading expected_degree) {
    Morphism out(src.cx.size(), expected_degree);
    for (const auto& [key, bi] : src.lookup) {
        const auto& [xi, p, ci] = key;
        // f1 term
        auto itf = f.f1.find(p);
        if (itf != f.f1.end()) {
            for (const auto& [cj, c] : itf->second.row(ci)) {
                auto itt = tgt.lookup.find({xi, p + f.col_shift, cj});
                if (itt == tgt.lookup.end())
                    throw std::runtime_error("box_tensor_morphism: f1 target out of range");
                out.add_entry(bi, itt->second, c);
            }
        }
        // f2 terms along X arrows
        for (const auto& [xj, coef] : X.diff_row(xi)) {
            for (const auto& m : coef.terms()) {
                int32_t u = std::min(m.a, m.b);
                int32_t wp = m.a - u, zp = m.b - u;
                if (wp > 0 && zp > 0)
                    throw std::runtime_error("box_tensor_morphism: mixed-letter arrow weight");
                char letter = wp > 0 ? 'W' : 'Z';
                int32_t steps = wp > 0 ? wp : zp;
                const auto& seeds = wp > 0 ? f.f2W : f.f2Z;
                Half seed_shift = wp > 0 ? f.f2W_col_shift : f.f2Z_col_shift;
                if (seeds.empty() || steps == 0) continue;
                RingElement upow(Monomial::U0(u));
                DiagramElement cur{{{p, ci}, upow}};
                for (int32_t k = 0; k < steps; ++k) {
                    // interrupt the (k+1)-th letter step with the corrector
                    for (const auto& [ck, c] : cur) {
                        auto its = seeds.find(ck.first);
                        if (its == seeds.end()) continue;
                        DiagramElement mid;
                        for (const auto& [cj, e] : its->second.row(ck.second))
                            acc(mid, ck.first + seed_shift, cj, e * c);
                        // remaining letters act on the target row
                        for (int32_t r = k + 1; r < steps; ++r)
                            mid = apply_step(*f.tgt, letter, mid);
                        for (const auto& [tk, e] : mid) {
                            auto itt = tgt.lookup.find({xj, tk.first, tk.second});
                            if (itt == tgt.lookup.end())
                                throw std::runtime_error(
                                    "box_tensor_morphism: f2 target out of range");
                            out.add_entry(bi, itt->second, e);
                        }
                    }
                    if (k + 1 < steps) cur = apply_step(*f.src, letter, cur);
                }
            }
        }
    }
    return out;
}

}  // namespace satcfk
