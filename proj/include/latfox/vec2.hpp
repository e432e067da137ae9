#pragma once

#include <cmath>
#include <map>
#include <string>

namespace latfox {

/// Layout vector. y grows upward; default seeds point downward.
struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2& operator+=(const Vec2& o) {
        x += o.x;
        y += o.y;
        return *this;
    }
    friend Vec2 operator+(Vec2 a, const Vec2& b) { return a += b; }
    friend Vec2 operator-(const Vec2& a, const Vec2& b) { return {a.x - b.x, a.y - b.y}; }
    friend bool operator==(const Vec2&, const Vec2&) = default;

    bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

/// Seed vectors keyed by attribute name; the domain is the irreducible set.
using SeedMap = std::map<std::string, Vec2>;

} // namespace latfox
