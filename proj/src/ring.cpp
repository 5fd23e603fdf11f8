#include "satcfk/ring.hpp"

#include <algorithm>
#include <sstream>

namespace satcfk {

Monomial Monomial::WZ(int32_t wpow, int32_t zpow) {
    if (wpow < 0 || zpow < 0)
        throw std::runtime_error("Monomial: negative W/Z exponent");
    return {0, wpow, zpow};
}

Monomial Monomial::UT(int32_t upow, int32_t tpow) {
    if (upow < 0) throw std::runtime_error("Monomial: negative U exponent");
    return {1, upow, tpow};
}

std::string Monomial::str() const {
    if (is_one()) return "1";
    std::ostringstream os;
    auto emit = [&os](char v, int32_t p) {
        if (p == 0) return;
        if (os.tellp() > 0) os << ' ';
        os << v;
        if (p != 1) os << '^' << p;
    };
    if (idem == 0) {
        emit('W', a);
        emit('Z', b);
    } else {
        emit('U', a);
        emit('T', b);
    }
    return os.str();
}

Monomial mul(const Monomial& x, const Monomial& y) {
    if (x.idem != y.idem)
        throw std::runtime_error("mul: idempotent mismatch");
    if (x.idem == 0) return Monomial::WZ(x.a + y.a, x.b + y.b);
    return Monomial::UT(x.a + y.a, x.b + y.b);
}

Monomial phi_sigma(const Monomial& m) {
    if (m.idem != 0) throw std::runtime_error("phi_sigma: expects idempotent 0");
    return Monomial::UT(m.a, m.b - m.a);
}

Monomial phi_tau(const Monomial& m) {
    if (m.idem != 0) throw std::runtime_error("phi_tau: expects idempotent 0");
    return Monomial::UT(m.b, m.b - m.a);
}

void RingElement::normalize() {
    std::sort(terms_.begin(), terms_.end());
    // GF(2): cancel pairs
    std::vector<Monomial> out;
    for (size_t i = 0; i < terms_.size();) {
        size_t j = i;
        while (j < terms_.size() && terms_[j] == terms_[i]) ++j;
        if ((j - i) % 2 == 1) out.push_back(terms_[i]);
        i = j;
    }
    terms_ = std::move(out);
    for (size_t i = 1; i < terms_.size(); ++i)
        if (terms_[i].idem != terms_[0].idem)
            throw std::runtime_error("RingElement: mixed idempotents");
}

RingElement make_ring_element(std::vector<Monomial> terms) {
    RingElement r;
    r.terms_ = std::move(terms);
    r.normalize();
    return r;
}

std::optional<Bigrading> RingElement::grading() const {
    if (terms_.empty()) return std::nullopt;
    Bigrading g = terms_[0].grading();
    for (const auto& t : terms_)
        if (t.grading() != g) return std::nullopt;
    return g;
}

RingElement RingElement::operator+(const RingElement& o) const {
    std::vector<Monomial> all = terms_;
    all.insert(all.end(), o.terms_.begin(), o.terms_.end());
    return make_ring_element(std::move(all));
}

RingElement RingElement::operator*(const RingElement& o) const {
    std::vector<Monomial> all;
    for (const auto& x : terms_)
        for (const auto& y : o.terms_) all.push_back(mul(x, y));
    return make_ring_element(std::move(all));
}

std::string RingElement::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (size_t i = 0; i < terms_.size(); ++i) {
        if (i) s += " + ";
        s += terms_[i].str();
    }
    return s;
}

Monomial parse_monomial(const std::string& s) {
    // Accepts e.g. "1", "W^2 Z", "U T^-3"; whitespace between factors optional.
    Monomial m{0, 0, 0};
    bool saw_idem1 = false, saw_idem0 = false, any = false;
    size_t i = 0;
    auto skip_ws = [&] { while (i < s.size() && std::isspace((unsigned char)s[i])) ++i; };
    skip_ws();
    if (i < s.size() && s[i] == '1' ) {
        ++i;
        skip_ws();
        if (i == s.size()) return Monomial::one();
        throw std::runtime_error("parse_monomial: trailing input in '" + s + "'");
    }
    while (i < s.size()) {
        skip_ws();
        if (i >= s.size()) break;
        char v = s[i++];
        int32_t p = 1;
        skip_ws();
        if (i < s.size() && s[i] == '^') {
            ++i;
            skip_ws();
            size_t j = i;
            if (j < s.size() && (s[j] == '-' || s[j] == '+')) ++j;
            while (j < s.size() && std::isdigit((unsigned char)s[j])) ++j;
            p = std::stoi(s.substr(i, j - i));
            i = j;
        }
        switch (v) {
            case 'W': m.a += p; saw_idem0 = true; break;
            case 'Z': m.b += p; saw_idem0 = true; break;
            case 'U': m.a += p; saw_idem1 = true; break;
            case 'T': m.b += p; saw_idem1 = true; break;
            default: throw std::runtime_error(std::string("parse_monomial: bad variable '") + v + "'");
        }
        any = true;
        skip_ws();
    }
    if (!any) throw std::runtime_error("parse_monomial: empty input");
    if (saw_idem0 && saw_idem1)
        throw std::runtime_error("parse_monomial: mixed idempotents in '" + s + "'");
    m.idem = saw_idem1 ? 1 : 0;
    if (m.idem == 0 && (m.a < 0 || m.b < 0))
        throw std::runtime_error("parse_monomial: negative exponent in '" + s + "'");
    if (m.idem == 1 && m.a < 0)
        throw std::runtime_error("parse_monomial: negative U exponent in '" + s + "'");
    return m;
}

RingElement RingElement::parse(const std::string& s) {
    std::vector<Monomial> terms;
    size_t start = 0;
    std::string trimmed;
    for (char c : s) trimmed += c;
    if (trimmed.find_first_not_of(" \t") == std::string::npos)
        throw std::runtime_error("RingElement::parse: empty input");
    {
        auto lo = trimmed.find_first_not_of(" \t");
        auto hi = trimmed.find_last_not_of(" \t");
        if (trimmed.substr(lo, hi - lo + 1) == "0") return RingElement::zero();
    }
    while (start <= s.size()) {
        size_t plus = s.find('+', start);
        std::string piece = s.substr(start, plus == std::string::npos ? std::string::npos : plus - start);
        if (piece.find_first_not_of(" \t") != std::string::npos)
            terms.push_back(parse_monomial(piece));
        if (plus == std::string::npos) break;
        start = plus + 1;
    }
    return make_ring_element(std::move(terms));
}

}  // namespace satcfk
