#pragma once

// Tokenizer shared by the object- and morphism-expression grammars.

#include <string>
#include <string_view>
#include <vector>

#include "rig/error.hpp"

namespace rig::detail {

struct Token {
  enum class Kind { Ident, Punct, End };
  Kind kind;
  std::string text;
  std::size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view text);

class TokenStream {
 public:
  explicit TokenStream(std::string_view text) : tokens_(tokenize(text)) {}

  const Token& peek() const { return tokens_[pos_]; }
  const Token& peek_at(std::size_t ahead) const {
    std::size_t i = pos_ + ahead;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }
  Token next() { return tokens_[pos_ == tokens_.size() - 1 ? pos_ : pos_++]; }
  bool at_end() const { return peek().kind == Token::Kind::End; }
  bool accept(std::string_view punct);
  void expect(std::string_view punct);
  std::string expect_ident();
  [[noreturn]] void fail(const std::string& what) const;

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace rig::detail
