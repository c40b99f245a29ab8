#include "ordlog/sexpr.hpp"

#include <cctype>
#include <charconv>

#include "ordlog/errors.hpp"

namespace ordlog::sexpr {
namespace {

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }

  Node read() {
    skip_space();
    if (pos_ >= text_.size()) throw SyntaxError("unexpected end of input", line_, col_);
    Node node;
    node.loc = {line_, col_};
    char c = text_[pos_];
    if (c == '(') {
      advance();
      node.kind = Node::Kind::List;
      for (;;) {
        skip_space();
        if (pos_ >= text_.size()) throw SyntaxError("unterminated list", node.loc.line, node.loc.column);
        if (text_[pos_] == ')') {
          advance();
          return node;
        }
        node.items.push_back(read());
      }
    }
    if (c == ')') throw SyntaxError("unexpected ')'", line_, col_);
    if (c == '"') {
      advance();
      node.kind = Node::Kind::String;
      for (;;) {
        if (pos_ >= text_.size()) throw SyntaxError("unterminated string", node.loc.line, node.loc.column);
        char s = text_[pos_];
        if (s == '"') {
          advance();
          return node;
        }
        if (s == '\\') {
          advance();
          if (pos_ >= text_.size()) throw SyntaxError("unterminated string", node.loc.line, node.loc.column);
          s = text_[pos_];
        }
        node.text.push_back(s);
        advance();
      }
    }
    std::size_t start = pos_;
    while (pos_ < text_.size() && !delimiter(text_[pos_])) advance();
    std::string_view atom = text_.substr(start, pos_ - start);
    long value = 0;
    auto [end, ec] = std::from_chars(atom.data(), atom.data() + atom.size(), value);
    if (ec == std::errc() && end == atom.data() + atom.size()) {
      node.kind = Node::Kind::Integer;
      node.value = value;
      node.text = std::string(atom);
    } else {
      node.kind = Node::Kind::Symbol;
      node.text = std::string(atom);
    }
    return node;
  }

  Location location() const { return {line_, col_}; }

 private:
  static bool delimiter(char c) {
    return std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == '"' || c == ';';
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace

std::vector<Node> read_all(std::string_view text) {
  Reader reader(text);
  std::vector<Node> out;
  while (!reader.at_end()) out.push_back(reader.read());
  return out;
}

Node read_one(std::string_view text) {
  Reader reader(text);
  if (reader.at_end()) {
    auto loc = reader.location();
    throw SyntaxError("empty input", loc.line, loc.column);
  }
  Node node = reader.read();
  if (!reader.at_end()) {
    auto loc = reader.location();
    throw SyntaxError("trailing data after top-level form", loc.line, loc.column);
  }
  return node;
}

void fail(const Node& node, const std::string& message) {
  throw SyntaxError(message, node.loc.line, node.loc.column);
}

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace ordlog::sexpr
