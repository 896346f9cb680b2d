#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace carith {

/// Syntax error carrying a 1-based source position.
struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, std::size_t line, std::size_t col);
  std::size_t line, col;
};

struct SExpr {
  bool is_atom = true;
  std::string text;
  std::vector<SExpr> items;
  std::size_t line = 0, col = 0;

  bool is_list() const { return !is_atom; }
  /// A list whose first item is the atom `head`.
  bool is_form(const std::string& head) const;
  const std::string& head() const;
  std::size_t size() const { return items.size(); }
  const SExpr& operator[](std::size_t i) const { return items[i]; }
  [[noreturn]] void fail(const std::string& msg) const;
  std::string to_string() const;
};

/// Parse every top-level expression. `;` starts a comment running to end of line.
std::vector<SExpr> parse_sexprs(const std::string& text);
SExpr parse_sexpr(const std::string& text);

}  // namespace carith
