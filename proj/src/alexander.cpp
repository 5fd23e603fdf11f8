#include "satcfk/alexander.hpp"

#include <sstream>

namespace satcfk {

void LaurentPoly1::trim() {
    for (auto it = coeffs_.begin(); it != coeffs_.end();)
        it = (it->second == 0) ? coeffs_.erase(it) : std::next(it);
}

int64_t LaurentPoly1::max_degree() const {
    if (coeffs_.empty()) throw std::runtime_error("max_degree of zero polynomial");
    return coeffs_.rbegin()->first;
}

int64_t LaurentPoly1::eval_at_one() const {
    int64_t s = 0;
    for (const auto& [e, c] : coeffs_) s += c;
    return s;
}

bool LaurentPoly1::symmetric() const {
    for (const auto& [e, c] : coeffs_)
        if (coeff(-e) != c) return false;
    return true;
}

LaurentPoly1 LaurentPoly1::operator*(const LaurentPoly1& o) const {
    LaurentPoly1 out;
    for (const auto& [e1, c1] : coeffs_)
        for (const auto& [e2, c2] : o.coeffs_) out.add(e1 + e2, c1 * c2);
    return out;
}

LaurentPoly1 LaurentPoly1::operator+(const LaurentPoly1& o) const {
    LaurentPoly1 out = *this;
    for (const auto& [e, c] : o.coeffs_) out.add(e, c);
    return out;
}

LaurentPoly1 LaurentPoly1::compose_power(int64_t k) const {
    LaurentPoly1 out;
    for (const auto& [e, c] : coeffs_) out.add(e * k, c);
    return out;
}

std::string LaurentPoly1::str() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        auto [e, c] = *it;
        if (!first) os << (c > 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        first = false;
        int64_t a = c > 0 ? c : -c;
        if (a != 1 || e == 0) os << a;
        if (e != 0) {
            os << "t";
            if (e != 1) os << "^" << e;
        }
    }
    return os.str();
}

bool LaurentPoly2::symmetric_normalized() const {
    if (coeffs_.empty()) return true;
    const Half one = Half::whole(1);
    for (int sign : {+1, -1}) {
        bool ok = true;
        for (const auto& [key, c] : coeffs_) {
            if (coeff(one - key.first, one - key.second) != sign * c) {
                ok = false;
                break;
            }
        }
        if (ok) return true;
    }
    return false;
}

std::string LaurentPoly2::str() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [key, c] : coeffs_) {
        if (!first) os << (c > 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        first = false;
        int64_t a = c > 0 ? c : -c;
        if (a != 1) os << a << " ";
        os << "t1^(" << key.first.str() << ") t2^(" << key.second.str() << ")";
    }
    return os.str();
}

int64_t knot_tail_sum(const LaurentPoly1& delta, int64_t m) {
    if (!delta.symmetric() || delta.eval_at_one() != 1)
        throw std::runtime_error("knot_tail_sum: polynomial not normalized: " + delta.str());
    // chi-series = Delta(t) * (1 + t^-1 + t^-2 + ...); tail below degree m:
    // sum_e c_e * #{d >= m : d <= e} = sum_e c_e * max(0, e - m + 1)
    int64_t s = 0;
    for (const auto& [e, c] : delta.coeffs())
        if (e >= m) s += c * (e - m + 1);
    return s;
}

HFunction::HFunction(Half lk_half, Half s_min, Half s_max, Half t_min, Half t_max,
                     std::vector<std::vector<int64_t>> table)
    : lk_half_(lk_half), s_min_(s_min), s_max_(s_max), t_min_(t_min), t_max_(t_max),
      table_(std::move(table)) {
    size_t ns = size_t((s_max - s_min).as_integer()) + 1;
    size_t nt = size_t((t_max - t_min).as_integer()) + 1;
    if (table_.size() != ns) throw std::runtime_error("HFunction: bad table width");
    for (const auto& col : table_)
        if (col.size() != nt) throw std::runtime_error("HFunction: bad table height");
}

int64_t HFunction::at(Half s, Half t) const {
    int64_t extra = 0;
    if (s < s_min_) {
        extra += (s_min_ - s).as_integer();
        s = s_min_;
    }
    if (s > s_max_) s = s_max_;
    if (t < t_min_) {
        extra += (t_min_ - t).as_integer();
        t = t_min_;
    }
    if (t > t_max_) t = t_max_;
    size_t i = size_t((s - s_min_).as_integer());
    size_t j = size_t((t - t_min_).as_integer());
    return table_[i][j] + extra;
}

ValidationReport HFunction::check_invariants() const {
    ValidationReport rep;
    for (Half s = s_min_; s <= s_max_; s += Half::whole(1)) {
        for (Half t = t_min_; t <= t_max_; t += Half::whole(1)) {
            int64_t h = at(s, t);
            if (h < 0) rep.fail("H < 0 at (" + s.str() + "," + t.str() + ")");
            int64_t dl = at(s - Half::whole(1), t) - h;
            int64_t db = at(s, t - Half::whole(1)) - h;
            if (dl != 0 && dl != 1)
                rep.fail("H(s-1,t)-H(s,t) not in {0,1} at (" + s.str() + "," + t.str() + ")");
            if (db != 0 && db != 1)
                rep.fail("H(s,t-1)-H(s,t) not in {0,1} at (" + s.str() + "," + t.str() + ")");
            if (-s >= s_min_ && -s <= s_max_ && -t >= t_min_ && -t <= t_max_) {
                if (at(-s, -t) != h + (s + t).as_integer())
                    rep.fail("symmetry H(-s,-t) = H(s,t)+s+t fails at (" + s.str() + "," +
                             t.str() + ")");
            }
        }
    }
    // extrapolation must already hold on the boundary ring
    for (Half t = t_min_; t <= t_max_; t += Half::whole(1)) {
        if (at(s_min_ + Half::whole(1), t) - at(s_min_, t) != -1)
            rep.fail("window too small: left column not yet on slope 1 at t=" + t.str());
        if (at(s_max_, t) - at(s_max_ - Half::whole(1), t) != 0)
            rep.fail("window too small: right column not yet constant at t=" + t.str());
    }
    for (Half s = s_min_; s <= s_max_; s += Half::whole(1)) {
        if (at(s, t_min_ + Half::whole(1)) - at(s, t_min_) != -1)
            rep.fail("window too small: bottom row not yet on slope 1 at s=" + s.str());
        if (at(s, t_max_) - at(s, t_max_ - Half::whole(1)) != 0)
            rep.fail("window too small: top row not yet constant at s=" + s.str());
    }
    return rep;
}

HFunction h_function_2comp(const LaurentPoly2& delta_l, const LaurentPoly1& delta1,
                           const LaurentPoly1& delta2, int64_t lk, Half s_min, Half s_max,
                           Half t_min, Half t_max) {
    const Half lk_half = Half::from_twice(lk);
    // lattice check: s-coset must be lk/2 + Z in both coordinates
    auto in_lattice = [&](Half v) { return ((v - lk_half).twice() % 2) == 0; };
    if (!in_lattice(s_min) || !in_lattice(t_min))
        throw std::runtime_error("h_function_2comp: window not on the Alexander lattice");

    size_t ns = size_t((s_max - s_min).as_integer()) + 1;
    size_t nt = size_t((t_max - t_min).as_integer()) + 1;
    std::vector<std::vector<int64_t>> table(ns, std::vector<int64_t>(nt, 0));
    for (size_t i = 0; i < ns; ++i) {
        Half s1 = s_min + Half::whole(int64_t(i));
        for (size_t j = 0; j < nt; ++j) {
            Half s2 = t_min + Half::whole(int64_t(j));
            // projections to the knot components shift by lk/2
            int64_t m1 = (s1 - lk_half).as_integer() + 1;
            int64_t m2 = (s2 - lk_half).as_integer() + 1;
            int64_t h = knot_tail_sum(delta1, m1) + knot_tail_sum(delta2, m2);
            for (const auto& [key, c] : delta_l.coeffs())
                if (key.first >= s1 + Half::whole(1) && key.second >= s2 + Half::whole(1))
                    h -= c;
            table[i][j] = h;
        }
    }
    HFunction H(lk_half, s_min, s_max, t_min, t_max, std::move(table));
    auto rep = H.check_invariants();
    if (!rep.ok) throw std::runtime_error("h_function_2comp: " + rep.errors[0]);
    return H;
}

Half compute_N(const LaurentPoly2& delta_l) {
    if (delta_l.is_zero()) throw std::runtime_error("compute_N: zero polynomial");
    Half best = delta_l.coeffs().begin()->first.first;
    for (const auto& [key, c] : delta_l.coeffs())
        if (key.first > best) best = key.first;
    return best;
}

LaurentPoly1 euler_char(const FreeComplex& C) {
    LaurentPoly1 out;
    for (const auto& g : C.gens()) {
        if (g.alex.empty()) throw std::runtime_error("euler_char: generator without Alexander grading");
        int64_t a = g.alex.back().as_integer();
        int64_t gw = g.gr.w.as_integer();
        out.add(a, (gw % 2 == 0) ? 1 : -1);
    }
    return out;
}

}  // namespace satcfk
