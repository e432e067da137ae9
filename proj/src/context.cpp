#include "latfox/context.hpp"

#include <algorithm>
#include <unordered_set>

namespace latfox {

namespace {

void require_distinct(const std::vector<std::string>& names, const char* what) {
    std::unordered_set<std::string_view> seen;
    for (const auto& n : names)
        if (!seen.insert(n).second)
            throw NameCollision(std::string("duplicate ") + what + " name '" + n + "'");
}

std::optional<std::size_t> find_name(const std::vector<std::string>& names, std::string_view name) {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) return std::nullopt;
    return static_cast<std::size_t>(it - names.begin());
}

} // namespace

FormalContext::FormalContext(std::vector<std::string> objects, std::vector<std::string> attributes,
                             std::vector<AttributeSet> rows)
    : objects_(std::move(objects)), attributes_(std::move(attributes)), rows_(std::move(rows)) {
    require_distinct(objects_, "object");
    require_distinct(attributes_, "attribute");
    if (rows_.size() != objects_.size())
        throw ContractViolation("incidence has " + std::to_string(rows_.size()) + " rows for " +
                                std::to_string(objects_.size()) + " objects");
    columns_.assign(attributes_.size(), ObjectSet(objects_.size()));
    for (std::size_t g = 0; g < rows_.size(); ++g) {
        if (rows_[g].universe() != attributes_.size())
            throw ContractViolation("incidence row " + std::to_string(g) + " has wrong width");
        rows_[g].for_each([&](std::size_t m) { columns_[m].set(g); });
    }
}

FormalContext FormalContext::from_columns(std::vector<std::string> objects,
                                          std::vector<std::string> attributes,
                                          std::vector<ObjectSet> columns) {
    if (columns.size() != attributes.size())
        throw ContractViolation("column count does not match attribute count");
    std::vector<AttributeSet> rows(objects.size(), AttributeSet(attributes.size()));
    for (std::size_t m = 0; m < columns.size(); ++m) {
        if (columns[m].universe() != objects.size())
            throw ContractViolation("column " + std::to_string(m) + " has wrong height");
        columns[m].for_each([&](std::size_t g) { rows[g].set(m); });
    }
    return FormalContext(std::move(objects), std::move(attributes), std::move(rows));
}

std::optional<std::size_t> FormalContext::find_object(std::string_view name) const {
    return find_name(objects_, name);
}

std::optional<std::size_t> FormalContext::find_attribute(std::string_view name) const {
    return find_name(attributes_, name);
}

std::size_t FormalContext::object_index(std::string_view name) const {
    if (auto i = find_object(name)) return *i;
    throw NotFound("unknown object '" + std::string(name) + "'");
}

std::size_t FormalContext::attribute_index(std::string_view name) const {
    if (auto i = find_attribute(name)) return *i;
    throw NotFound("unknown attribute '" + std::string(name) + "'");
}

ObjectSet FormalContext::object_set(std::span<const std::string> names) const {
    ObjectSet s = no_objects();
    for (const auto& n : names) s.set(object_index(n));
    return s;
}

AttributeSet FormalContext::attribute_set(std::span<const std::string> names) const {
    AttributeSet s = no_attributes();
    for (const auto& n : names) s.set(attribute_index(n));
    return s;
}

std::vector<std::string> FormalContext::object_names(const ObjectSet& s) const {
    std::vector<std::string> out;
    s.for_each([&](std::size_t g) { out.push_back(objects_.at(g)); });
    return out;
}

std::vector<std::string> FormalContext::attribute_names(const AttributeSet& s) const {
    std::vector<std::string> out;
    s.for_each([&](std::size_t m) { out.push_back(attributes_.at(m)); });
    return out;
}

AttributeSet derive_attributes(const FormalContext& context, const ObjectSet& objects) {
    if (objects.universe() != context.object_count())
        throw ContractViolation("object set is not over this context's objects");
    ++counters().derivations;
    AttributeSet out = context.all_attributes();
    objects.for_each([&](std::size_t g) { out &= context.row(g); });
    return out;
}

ObjectSet derive_objects(const FormalContext& context, const AttributeSet& attributes) {
    if (attributes.universe() != context.attribute_count())
        throw ContractViolation("attribute set is not over this context's attributes");
    ++counters().derivations;
    ObjectSet out = context.all_objects();
    attributes.for_each([&](std::size_t m) { out &= context.column(m); });
    return out;
}

AttributeSet closure_intent(const FormalContext& context, const AttributeSet& attributes) {
    return derive_attributes(context, derive_objects(context, attributes));
}

ObjectSet closure_extent(const FormalContext& context, const ObjectSet& objects) {
    return derive_objects(context, derive_attributes(context, objects));
}

FormalContext apposition(const FormalContext& context, const AttributeColumn& column) {
    if (context.find_attribute(column.name))
        throw NameCollision("attribute '" + column.name + "' already exists");
    if (column.extent.universe() != context.object_count())
        throw ContractViolation("column extent is not over this context's objects");
    auto attributes = context.attributes();
    attributes.push_back(column.name);
    std::vector<AttributeSet> rows;
    rows.reserve(context.object_count());
    for (std::size_t g = 0; g < context.object_count(); ++g) {
        rows.push_back(context.row(g));
        rows.back().push_back(column.extent.test(g));
    }
    return FormalContext(context.objects(), std::move(attributes), std::move(rows));
}

std::pair<FormalContext, AttributeColumn> split_column(const FormalContext& context,
                                                       std::string_view name) {
    const std::size_t n = context.attribute_index(name);
    auto attributes = context.attributes();
    attributes.erase(attributes.begin() + static_cast<std::ptrdiff_t>(n));
    std::vector<AttributeSet> rows;
    rows.reserve(context.object_count());
    for (std::size_t g = 0; g < context.object_count(); ++g) rows.push_back(context.row(g).without(n));
    return {FormalContext(context.objects(), std::move(attributes), std::move(rows)),
            AttributeColumn{std::string(name), context.column(n)}};
}

} // namespace latfox
