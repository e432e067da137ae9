#include "latfox/cxt.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace latfox {

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        auto line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        start = end + 1;
    }
    return lines;
}

std::size_t parse_count(std::string_view line, std::size_t line_no, const char* what) {
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), value);
    if (line.empty() || ec != std::errc() || ptr != line.data() + line.size())
        throw ParseError(line_no, std::string("expected ") + what + " count, got '" +
                                      std::string(line) + "'");
    return value;
}

} // namespace

FormalContext parse_cxt(std::string_view text) {
    const auto lines = split_lines(text);
    auto line_at = [&](std::size_t i) -> std::string_view {
        if (i >= lines.size()) throw ParseError(i + 1, "unexpected end of file");
        return lines[i];
    };
    auto expect_blank = [&](std::size_t i) {
        if (!line_at(i).empty()) throw ParseError(i + 1, "expected blank line");
    };

    if (line_at(0) != "B") throw ParseError(1, "expected header 'B'");
    expect_blank(1);
    const std::size_t n_objects = parse_count(line_at(2), 3, "object");
    const std::size_t n_attributes = parse_count(line_at(3), 4, "attribute");
    expect_blank(4);

    std::size_t cursor = 5;
    std::vector<std::string> objects;
    objects.reserve(n_objects);
    for (std::size_t i = 0; i < n_objects; ++i) objects.emplace_back(line_at(cursor++));
    std::vector<std::string> attributes;
    attributes.reserve(n_attributes);
    for (std::size_t i = 0; i < n_attributes; ++i) attributes.emplace_back(line_at(cursor++));

    std::vector<AttributeSet> rows;
    rows.reserve(n_objects);
    for (std::size_t g = 0; g < n_objects; ++g) {
        const auto line = line_at(cursor);
        if (line.size() != n_attributes)
            throw ParseError(cursor + 1, "row has " + std::to_string(line.size()) +
                                             " entries, expected " + std::to_string(n_attributes));
        AttributeSet row(n_attributes);
        for (std::size_t m = 0; m < n_attributes; ++m) {
            if (line[m] == 'X') row.set(m);
            else if (line[m] != '.')
                throw ParseError(cursor + 1, std::string("illegal character '") + line[m] + "' in row");
        }
        rows.push_back(std::move(row));
        ++cursor;
    }
    for (; cursor < lines.size(); ++cursor)
        if (!lines[cursor].empty()) throw ParseError(cursor + 1, "unexpected trailing content");

    try {
        return FormalContext(std::move(objects), std::move(attributes), std::move(rows));
    } catch (const NameCollision& e) {
        throw ParseError(5, e.what());
    }
}

std::string write_cxt(const FormalContext& context) {
    std::string out = "B\n\n";
    out += std::to_string(context.object_count()) + "\n";
    out += std::to_string(context.attribute_count()) + "\n\n";
    for (const auto& g : context.objects()) out += g + "\n";
    for (const auto& m : context.attributes()) out += m + "\n";
    for (std::size_t g = 0; g < context.object_count(); ++g) out += context.row(g).to_string() + "\n";
    return out;
}

FormalContext read_cxt_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(0, "cannot open '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_cxt(buffer.str());
}

} // namespace latfox
