#include "carith/sexpr.hpp"

#include <cctype>

namespace carith {

ParseError::ParseError(const std::string& msg, std::size_t l, std::size_t c)
    : std::runtime_error(std::to_string(l) + ":" + std::to_string(c) + ": " + msg), line(l), col(c) {}

bool SExpr::is_form(const std::string& h) const {
  return is_list() && !items.empty() && items[0].is_atom && items[0].text == h;
}

const std::string& SExpr::head() const {
  static const std::string empty;
  if (is_list() && !items.empty() && items[0].is_atom) return items[0].text;
  return empty;
}

void SExpr::fail(const std::string& msg) const { throw ParseError(msg, line, col); }

std::string SExpr::to_string() const {
  if (is_atom) return text;
  std::string s = "(";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) s += " ";
    s += items[i].to_string();
  }
  return s + ")";
}

namespace {

struct Reader {
  const std::string& src;
  std::size_t pos = 0, line = 1, col = 1;

  bool eof() const { return pos >= src.size(); }
  char peek() const { return src[pos]; }
  void advance() {
    if (src[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }
  void skip_space() {
    while (!eof()) {
      char c = peek();
      if (c == ';') {
        while (!eof() && peek() != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  SExpr read() {
    skip_space();
    if (eof()) throw ParseError("unexpected end of input", line, col);
    SExpr e;
    e.line = line;
    e.col = col;
    char c = peek();
    if (c == ')') throw ParseError("unexpected ')'", line, col);
    if (c == '(') {
      e.is_atom = false;
      advance();
      for (;;) {
        skip_space();
        if (eof()) throw ParseError("unclosed '(' opened at " + std::to_string(e.line) + ":" +
                                        std::to_string(e.col),
                                    line, col);
        if (peek() == ')') {
          advance();
          break;
        }
        e.items.push_back(read());
      }
      return e;
    }
    while (!eof()) {
      c = peek();
      if (c == '(' || c == ')' || c == ';' || std::isspace(static_cast<unsigned char>(c))) break;
      e.text += c;
      advance();
    }
    return e;
  }
};

}  // namespace

std::vector<SExpr> parse_sexprs(const std::string& text) {
  Reader r{text};
  std::vector<SExpr> out;
  for (;;) {
    r.skip_space();
    if (r.eof()) break;
    out.push_back(r.read());
  }
  return out;
}

SExpr parse_sexpr(const std::string& text) {
  auto all = parse_sexprs(text);
  if (all.size() != 1)
    throw ParseError("expected exactly one expression, found " + std::to_string(all.size()), 1, 1);
  return all[0];
}

}  // namespace carith
