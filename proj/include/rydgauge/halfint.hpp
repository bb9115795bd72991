#pragma once
// Exact half-integer arithmetic. Values are stored as doubled integers so
// selection rules compare exactly; no floating point is involved until a
// caller asks for the numeric value.

#include <compare>
#include <stdexcept>

namespace rydgauge {

struct HalfInt {
    int twice = 0;  // stored value is twice/2

    constexpr HalfInt() = default;
    constexpr explicit HalfInt(int doubled) : twice(doubled) {}

    static constexpr HalfInt from_int(int n) { return HalfInt(2 * n); }
    static constexpr HalfInt halves(int doubled) { return HalfInt(doubled); }

    constexpr double value() const { return twice / 2.0; }
    constexpr bool is_integer() const { return twice % 2 == 0; }

    constexpr HalfInt operator+(HalfInt o) const { return HalfInt(twice + o.twice); }
    constexpr HalfInt operator-(HalfInt o) const { return HalfInt(twice - o.twice); }
    constexpr HalfInt operator-() const { return HalfInt(-twice); }
    constexpr auto operator<=>(const HalfInt&) const = default;
};

// j and m pair up legally iff they differ by an integer and |m| <= j.
constexpr bool valid_jm(HalfInt j, HalfInt m) {
    if (j.twice < 0) return false;
    if ((j.twice - m.twice) % 2 != 0) return false;
    return m.twice >= -j.twice && m.twice <= j.twice;
}

inline void require_jm(HalfInt j, HalfInt m, const char* what) {
    if (!valid_jm(j, m))
        throw std::invalid_argument(std::string("invalid quantum numbers for ") + what);
}

}  // namespace rydgauge
