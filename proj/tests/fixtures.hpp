#pragma once

#include "latfox/context.hpp"
#include "latfox/cxt.hpp"

#include <string>
#include <vector>

namespace fixtures {

using latfox::AttributeColumn;
using latfox::FormalContext;

inline FormalContext from_rows(std::vector<std::string> objects, std::vector<std::string> attributes,
                               const std::vector<std::string>& rows) {
    std::vector<latfox::AttributeSet> sets;
    for (const auto& r : rows) {
        latfox::AttributeSet s(attributes.size());
        for (std::size_t i = 0; i < r.size(); ++i)
            if (r[i] == 'X') s.set(i);
        sets.push_back(s);
    }
    return FormalContext(std::move(objects), std::move(attributes), std::move(sets));
}

inline AttributeColumn column(const FormalContext& k, std::string name, std::vector<std::string> objects) {
    return AttributeColumn{std::move(name), k.object_set(objects)};
}

// g1 {a, b}, g2 {b}
inline FormalContext k2() { return from_rows({"g1", "g2"}, {"a", "b"}, {"XX", ".X"}); }
// K2 plus c = {g1}: redundant, same extent as a.
inline AttributeColumn k2_c() { return column(k2(), "c", {"g1"}); }
// K2 plus d = {g2}: splits the top.
inline AttributeColumn k2_d() { return column(k2(), "d", {"g2"}); }

// Four objects, a = {1, 2, 3}, b = {1, 2}; column n = {1, 2, 4}.
inline FormalContext k4() { return from_rows({"1", "2", "3", "4"}, {"a", "b"}, {"XX", "XX", "X.", ".."}); }
inline AttributeColumn k4_n() { return column(k4(), "n", {"1", "2", "4"}); }

// Free distributive lattice on x, y, z: object u has attribute v iff u <= v.
// The old context omits z.
inline const std::vector<std::string>& fcd3_objects() {
    static const std::vector<std::string> g{"x^y^z", "y^z", "x^z", "x^y", "z", "y", "x", "T"};
    return g;
}
inline FormalContext fcd3_full() {
    return from_rows(fcd3_objects(), {"xvyvz", "xvy", "xvz", "yvz", "x", "y", "z"},
                     {"XXXXXXX", "XXXX.XX", "XXXXX.X", "XXXXXX.", "X.XX..X", "XX.X.X.", "XXX.X..", "......."});
}
inline FormalContext fcd3_old() { return latfox::split_column(fcd3_full(), "z").first; }
inline AttributeColumn fcd3_z() { return latfox::split_column(fcd3_full(), "z").second; }

} // namespace fixtures
