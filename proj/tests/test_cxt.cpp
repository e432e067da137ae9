#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "latfox/errors.hpp"

#include <filesystem>
#include <fstream>

using namespace latfox;

namespace {

std::size_t error_line(std::string_view text) {
    try {
        parse_cxt(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    return 0;
}

} // namespace

TEST_CASE("parse K2") {
    const auto k = parse_cxt("B\n\n2\n2\n\ng1\ng2\na\nb\nXX\n.X\n");
    CHECK(k == fixtures::k2());
}

TEST_CASE("CRLF and trailing blank lines are accepted") {
    CHECK(parse_cxt("B\r\n\r\n2\r\n2\r\n\r\ng1\r\ng2\r\na\r\nb\r\nXX\r\n.X\r\n\r\n\r\n") == fixtures::k2());
}

TEST_CASE("write then parse is the identity") {
    for (const auto& k : {fixtures::k2(), fixtures::k4(), fixtures::fcd3_full()})
        CHECK(parse_cxt(write_cxt(k)) == k);
    CHECK(write_cxt(fixtures::k2()) == "B\n\n2\n2\n\ng1\ng2\na\nb\nXX\n.X\n");
}

TEST_CASE("empty context") {
    const auto k = parse_cxt("B\n\n0\n0\n\n");
    CHECK(k.object_count() == 0);
    CHECK(k.attribute_count() == 0);
}

TEST_CASE("errors carry the offending line") {
    CHECK(error_line("A\n\n2\n2\n\ng1\ng2\na\nb\nXX\n.X\n") == 1);
    CHECK(error_line("B\n\nzwei\n2\n\ng1\ng2\na\nb\nXX\n.X\n") == 3);
    CHECK(error_line("B\n\n2\n2\n\ng1\ng2\na\nb\nXX\n.Y\n") == 11);
    CHECK(error_line("B\n\n2\n2\n\ng1\ng2\na\nb\nXXX\n.X\n") == 10);
    CHECK(error_line("B\n\n2\n2\n\ng1\ng2\na\nb\nXX\n") == 11);
    CHECK(error_line("B\n\n2\n2\n\ng1\ng1\na\nb\nXX\n.X\n") == 5);
    CHECK(error_line("B\n\n2\n2\n\ng1\ng2\na\nb\nXX\n.X\nXX\n") == 12);
}

TEST_CASE("files") {
    const auto dir = std::filesystem::temp_directory_path() / "latfox_cxt_test";
    std::filesystem::create_directories(dir);
    {
        std::ofstream out(dir / "k4.cxt");
        out << write_cxt(fixtures::k4());
    }
    CHECK(read_cxt_file(dir / "k4.cxt") == fixtures::k4());
    try {
        read_cxt_file(dir / "missing.cxt");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 0);
    }
    std::filesystem::remove_all(dir);
}
