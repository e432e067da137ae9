#pragma once

#include "latfox/errors.hpp"
#include "latfox/instrumentation.hpp"

#include <boost/dynamic_bitset.hpp>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace latfox {

/// Fixed-universe bit set. The tag keeps object sets and attribute sets from
/// being mixed up at compile time; the universe size is checked at run time.
template <class Tag>
class BitSet {
public:
    using Bits = boost::dynamic_bitset<std::uint64_t>;
    static constexpr std::size_t npos = Bits::npos;

    BitSet() = default;
    explicit BitSet(std::size_t universe, bool full = false) : bits_(universe) {
        if (full) bits_.set();
    }

    static BitSet full(std::size_t universe) { return BitSet(universe, true); }

    static BitSet of(std::size_t universe, std::initializer_list<std::size_t> members) {
        BitSet s(universe);
        for (auto i : members) s.set(i);
        return s;
    }

    std::size_t universe() const noexcept { return bits_.size(); }
    std::size_t count() const noexcept { return bits_.count(); }
    bool empty() const noexcept { return bits_.none(); }
    bool is_full() const noexcept { return bits_.all(); }

    bool test(std::size_t i) const { return bits_.test(i); }
    bool operator[](std::size_t i) const { return bits_.test(i); }

    BitSet& set(std::size_t i, bool value = true) {
        bits_.set(i, value);
        return *this;
    }
    BitSet& reset(std::size_t i) {
        bits_.reset(i);
        return *this;
    }

    std::size_t first() const { return bits_.find_first(); }
    std::size_t next(std::size_t i) const { return bits_.find_next(i); }

    template <class Fn>
    void for_each(Fn&& fn) const {
        for (auto i = bits_.find_first(); i != npos; i = bits_.find_next(i)) fn(i);
    }

    std::vector<std::size_t> indices() const {
        std::vector<std::size_t> out;
        out.reserve(count());
        for_each([&](std::size_t i) { out.push_back(i); });
        return out;
    }

    bool is_subset_of(const BitSet& other) const {
        check_universe(other);
        ++counters().subset_tests;
        return bits_.is_subset_of(other.bits_);
    }

    bool is_proper_subset_of(const BitSet& other) const {
        check_universe(other);
        ++counters().subset_tests;
        return bits_.is_proper_subset_of(other.bits_);
    }

    bool intersects(const BitSet& other) const {
        check_universe(other);
        return bits_.intersects(other.bits_);
    }

    BitSet& operator&=(const BitSet& other) {
        check_universe(other);
        bits_ &= other.bits_;
        return *this;
    }
    BitSet& operator|=(const BitSet& other) {
        check_universe(other);
        bits_ |= other.bits_;
        return *this;
    }
    /// Set difference.
    BitSet& operator-=(const BitSet& other) {
        check_universe(other);
        bits_ -= other.bits_;
        return *this;
    }

    friend BitSet operator&(BitSet a, const BitSet& b) { return a &= b; }
    friend BitSet operator|(BitSet a, const BitSet& b) { return a |= b; }
    friend BitSet operator-(BitSet a, const BitSet& b) { return a -= b; }

    BitSet complement() const {
        BitSet out = *this;
        out.bits_.flip();
        return out;
    }

    /// Grows the universe by one element (the new element is `value`).
    void push_back(bool value) { bits_.push_back(value); }

    /// Removes element `i` from the universe, shifting later elements down.
    BitSet without(std::size_t i) const {
        BitSet out(universe() - 1);
        for_each([&](std::size_t j) {
            if (j < i) out.set(j);
            else if (j > i) out.set(j - 1);
        });
        return out;
    }

    friend bool operator==(const BitSet& a, const BitSet& b) { return a.bits_ == b.bits_; }

    friend std::strong_ordering operator<=>(const BitSet& a, const BitSet& b) {
        if (a.bits_ == b.bits_) return std::strong_ordering::equal;
        return a.bits_ < b.bits_ ? std::strong_ordering::less : std::strong_ordering::greater;
    }

    /// "X.X." style rendering, element 0 first.
    std::string to_string() const {
        std::string s(universe(), '.');
        for_each([&](std::size_t i) { s[i] = 'X'; });
        return s;
    }

    std::size_t hash() const { return boost::hash_value(bits_); }

private:
    void check_universe(const BitSet& other) const {
        if (bits_.size() != other.bits_.size())
            throw ContractViolation("set universe mismatch: " + std::to_string(bits_.size()) +
                                    " vs " + std::to_string(other.bits_.size()));
    }

    Bits bits_;
};

struct ObjectTag {};
struct AttributeTag {};

using ObjectSet = BitSet<ObjectTag>;
using AttributeSet = BitSet<AttributeTag>;

} // namespace latfox

template <class Tag>
struct std::hash<latfox::BitSet<Tag>> {
    std::size_t operator()(const latfox::BitSet<Tag>& s) const noexcept { return s.hash(); }
};
