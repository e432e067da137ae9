#pragma once

#include "latfox/bitset.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace latfox {

/// A formal context (G, M, I). Objects and attributes are identified
/// externally by name and internally by position. Immutable once built.
class FormalContext {
public:
    FormalContext() = default;

    /// `rows[g]` is the attribute set g^I. Throws ContractViolation on
    /// dimension mismatch and NameCollision on duplicate names.
    FormalContext(std::vector<std::string> objects, std::vector<std::string> attributes,
                  std::vector<AttributeSet> rows);

    /// Same as the row constructor but from attribute extents m^I.
    static FormalContext from_columns(std::vector<std::string> objects,
                                      std::vector<std::string> attributes,
                                      std::vector<ObjectSet> columns);

    std::size_t object_count() const noexcept { return objects_.size(); }
    std::size_t attribute_count() const noexcept { return attributes_.size(); }

    const std::vector<std::string>& objects() const noexcept { return objects_; }
    const std::vector<std::string>& attributes() const noexcept { return attributes_; }

    bool incident(std::size_t g, std::size_t m) const { return rows_.at(g).test(m); }

    /// g^I
    const AttributeSet& row(std::size_t g) const { return rows_.at(g); }
    /// m^I
    const ObjectSet& column(std::size_t m) const { return columns_.at(m); }

    std::optional<std::size_t> find_object(std::string_view name) const;
    std::optional<std::size_t> find_attribute(std::string_view name) const;
    std::size_t object_index(std::string_view name) const;    // throws NotFound
    std::size_t attribute_index(std::string_view name) const; // throws NotFound

    ObjectSet no_objects() const { return ObjectSet(object_count()); }
    ObjectSet all_objects() const { return ObjectSet::full(object_count()); }
    AttributeSet no_attributes() const { return AttributeSet(attribute_count()); }
    AttributeSet all_attributes() const { return AttributeSet::full(attribute_count()); }

    /// Builds an object set from names; throws NotFound on unknown names.
    ObjectSet object_set(std::span<const std::string> names) const;
    AttributeSet attribute_set(std::span<const std::string> names) const;

    std::vector<std::string> object_names(const ObjectSet& s) const;
    std::vector<std::string> attribute_names(const AttributeSet& s) const;

    friend bool operator==(const FormalContext&, const FormalContext&) = default;

private:
    std::vector<std::string> objects_;
    std::vector<std::string> attributes_;
    std::vector<AttributeSet> rows_;
    std::vector<ObjectSet> columns_;
};

/// Column context (G, {n}, J): a new attribute name plus its extent n^J.
struct AttributeColumn {
    std::string name;
    ObjectSet extent;

    friend bool operator==(const AttributeColumn&, const AttributeColumn&) = default;
};

/// A^I: the attributes shared by all objects of A.
AttributeSet derive_attributes(const FormalContext& context, const ObjectSet& objects);
/// B^I: the objects having all attributes of B.
ObjectSet derive_objects(const FormalContext& context, const AttributeSet& attributes);
/// B^II
AttributeSet closure_intent(const FormalContext& context, const AttributeSet& attributes);
/// A^II
ObjectSet closure_extent(const FormalContext& context, const ObjectSet& objects);

/// K|C with the new attribute appended as the last column.
FormalContext apposition(const FormalContext& context, const AttributeColumn& column);

/// Inverse of apposition: cuts attribute `name` out of the context.
std::pair<FormalContext, AttributeColumn> split_column(const FormalContext& context,
                                                       std::string_view name);

} // namespace latfox
