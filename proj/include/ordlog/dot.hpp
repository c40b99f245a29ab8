#pragma once

#include <string>

#include "ordlog/core.hpp"

namespace ordlog {

/// Graphviz digraph: one node per word plus ROOT, solid labeled dependency edges, and
/// dashed clusters nested along the domain tree. Output depends only on the structure.
/// Throws ValidationError for a structure that does not validate.
std::string export_dot(const DependencyStructure& structure);

}  // namespace ordlog
