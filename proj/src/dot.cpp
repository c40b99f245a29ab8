#include "ordlog/dot.hpp"

#include <sstream>

#include "ordlog/errors.hpp"

namespace ordlog {
namespace {

std::string escaped(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + '"';
}

std::string cluster_id(DomainRef ref) {
  if (ref.owner == kRoot) return "cluster_root";
  return "cluster_" + std::to_string(ref.owner) + "_" + std::to_string(ref.index);
}

class Writer {
 public:
  explicit Writer(const DependencyStructure& s) : s_(s), index_(s) {
    home_.assign(index_.tree().size(), {});
    for (int w = 0; w < static_cast<int>(s.size()); ++w)
      home_[index_.tree().index_of(index_.containing_domain(w).ref())].push_back(w);
  }

  std::string run() {
    out_ << "digraph structure {\n";
    out_ << "  node [shape=plaintext];\n";
    out_ << "  ROOT [label=\"ROOT\"];\n";
    cluster(0, 1);
    out_ << "  ROOT -> w" << s_.root() << " [style=dotted, arrowhead=none];\n";
    for (const auto& e : s_.edges())
      out_ << "  w" << e.head << " -> w" << e.dependent << " [style=solid, label=" << escaped(e.dep_type) << "];\n";
    out_ << "}\n";
    return out_.str();
  }

 private:
  void cluster(std::size_t node, int depth) {
    const DomainNode& d = index_.tree().node(node);
    const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
    const std::string label = d.owner == kRoot ? "ROOT" : s_.word(d.owner).surface + " d" + std::to_string(d.index);
    out_ << pad << "subgraph " << cluster_id(d.ref()) << " {\n";
    out_ << pad << "  style=dashed;\n";
    out_ << pad << "  label=" << escaped(label) << ";\n";
    for (int w : home_[node])
      out_ << pad << "  w" << w << " [label=" << escaped(s_.word(w).surface) << "];\n";
    if (d.empty())
      out_ << pad << "  empty_" << cluster_id(d.ref()).substr(8) << " [label=\"\", style=invis, width=0.1];\n";
    for (int c : index_.tree().children(node)) cluster(static_cast<std::size_t>(c), depth + 1);
    out_ << pad << "}\n";
  }

  const DependencyStructure& s_;
  StructureIndex index_;
  std::vector<std::vector<int>> home_;
  std::ostringstream out_;
};

}  // namespace

std::string export_dot(const DependencyStructure& structure) {
  auto violations = validate(structure);
  if (!violations.empty()) throw ValidationError(violations.front().message);
  return Writer(structure).run();
}

}  // namespace ordlog
