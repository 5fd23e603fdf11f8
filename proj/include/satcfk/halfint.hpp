#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace satcfk {

// Half-integer stored as twice its value, so all arithmetic stays exact.
class Half {
public:
    constexpr Half() : twice_(0) {}
    constexpr static Half from_twice(int64_t t) { return Half(t); }
    constexpr static Half whole(int64_t n) { return Half(2 * n); }

    constexpr int64_t twice() const { return twice_; }
    constexpr bool is_integer() const { return twice_ % 2 == 0; }
    int64_t as_integer() const {
        if (!is_integer()) throw std::runtime_error("Half: " + str() + " is not an integer");
        return twice_ / 2;
    }

    constexpr Half operator+(Half o) const { return Half(twice_ + o.twice_); }
    constexpr Half operator-(Half o) const { return Half(twice_ - o.twice_); }
    constexpr Half operator-() const { return Half(-twice_); }
    constexpr Half operator*(int64_t n) const { return Half(twice_ * n); }
    Half& operator+=(Half o) { twice_ += o.twice_; return *this; }
    Half& operator-=(Half o) { twice_ -= o.twice_; return *this; }

    constexpr auto operator<=>(const Half&) const = default;

    // floor of the plain value
    constexpr int64_t floor() const {
        return twice_ >= 0 ? twice_ / 2 : (twice_ - 1) / 2;
    }

    std::string str() const {
        if (twice_ % 2 == 0) return std::to_string(twice_ / 2);
        return std::to_string(twice_) + "/2";
    }

private:
    constexpr explicit Half(int64_t t) : twice_(t) {}
    int64_t twice_;
};

inline Half operator*(int64_t n, Half h) { return h * n; }

constexpr Half half(int64_t twice) { return Half::from_twice(twice); }

}  // namespace satcfk
