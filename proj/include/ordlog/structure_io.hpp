#pragma once

#include <string>
#include <string_view>

#include "ordlog/core.hpp"

namespace ordlog {

/// Reads the structure interchange format:
///
///   (structure (words ("Den" :class Det :feats (acc)) ...) (root 2)
///              (edges (1 det 0) ...) (domains (1 1 (0 1)) ...))
///
/// Syntax problems raise SyntaxError; ids that do not resolve raise MalformedInput.
DependencyStructure parse_structure(std::string_view text);

/// Canonical text: one word, edge or domain per line, every domain listed.
std::string format_structure(const DependencyStructure& structure);

}  // namespace ordlog
