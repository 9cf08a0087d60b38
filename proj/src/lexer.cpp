#include "lexer.hpp"

#include <cctype>

namespace rig::detail {

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = i;
      while (i < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_'))
        ++i;
      out.push_back({Token::Kind::Ident, std::string(text.substr(start, i - start)),
                     start + 1});
      continue;
    }
    if (c == '+' || c == '*' || c == '(' || c == ')' || c == ',' || c == ';') {
      out.push_back({Token::Kind::Punct, std::string(1, c), i + 1});
      ++i;
      continue;
    }
    throw Error(ErrorKind::Syntax,
                "unexpected character '" + std::string(1, c) + "' at column " +
                    std::to_string(i + 1));
  }
  out.push_back({Token::Kind::End, "", text.size() + 1});
  return out;
}

bool TokenStream::accept(std::string_view punct) {
  if (peek().kind == Token::Kind::Punct && peek().text == punct) {
    ++pos_;
    return true;
  }
  return false;
}

void TokenStream::expect(std::string_view punct) {
  if (!accept(punct)) fail("expected '" + std::string(punct) + "'");
}

std::string TokenStream::expect_ident() {
  if (peek().kind != Token::Kind::Ident) fail("expected identifier");
  return next().text;
}

void TokenStream::fail(const std::string& what) const {
  const Token& t = peek();
  std::string found = t.kind == Token::Kind::End ? "end of input" : "'" + t.text + "'";
  throw Error(ErrorKind::Syntax,
              what + " at column " + std::to_string(t.column) + ", found " + found);
}

}  // namespace rig::detail
