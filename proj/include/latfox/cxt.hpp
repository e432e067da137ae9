#pragma once

#include "latfox/context.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace latfox {

// Burmeister CXT format:
//
//   B
//   <blank>
//   |G|
//   |M|
//   <blank>
//   one object name per line
//   one attribute name per line
//   one row per object, |M| characters from {'.', 'X'}
//
// Written with LF line endings; CRLF is accepted on input.

/// Throws ParseError carrying the 1-based line number of the offending line.
FormalContext parse_cxt(std::string_view text);

std::string write_cxt(const FormalContext& context);

/// Reads and parses a file; an unreadable file is reported as ParseError on line 0.
FormalContext read_cxt_file(const std::filesystem::path& path);

} // namespace latfox
