#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace ordlog::sexpr {

struct Location {
  int line = 1;
  int column = 1;
};

/// One datum of the s-expression surface syntax shared by grammar and structure files.
/// Keywords (`:class`) are symbols whose text starts with a colon.
struct Node {
  enum class Kind { List, Symbol, String, Integer };

  Kind kind = Kind::List;
  std::string text;  // symbol name or string contents
  long value = 0;    // integers only
  std::vector<Node> items;
  Location loc;

  bool is_list() const { return kind == Kind::List; }
  bool is_symbol() const { return kind == Kind::Symbol; }
  bool is_symbol(std::string_view name) const { return kind == Kind::Symbol && text == name; }
  bool is_keyword() const { return kind == Kind::Symbol && !text.empty() && text.front() == ':'; }
  bool is_string() const { return kind == Kind::String; }
  bool is_integer() const { return kind == Kind::Integer; }

  /// True for a list whose first item is the symbol `head`.
  bool is_form(std::string_view head) const {
    return is_list() && !items.empty() && items.front().is_symbol(head);
  }
};

/// Reads every top-level datum. `;` starts a comment running to end of line.
std::vector<Node> read_all(std::string_view text);

/// Reads exactly one top-level datum; empty input or trailing data is a SyntaxError.
Node read_one(std::string_view text);

/// Throws SyntaxError located at `node`.
[[noreturn]] void fail(const Node& node, const std::string& message);

std::string quote(std::string_view s);

}  // namespace ordlog::sexpr
