#include "tdeg/literal.hpp"

#include <cctype>
#include <optional>

#include "tdeg/error.hpp"

namespace tdeg {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  BlockFunction function() {
    skip();
    if (keyword("poly")) {
      expect(':');
      return BlockFunction(expr());
    }
    if (keyword("pw")) return piecewise();
    if (keyword("fzip")) {
      expect('(');
      BlockFunction left = function();
      expect(',');
      BlockFunction right = function();
      expect(')');
      return BlockFunction::fzip(std::move(left), std::move(right));
    }
    if (keyword("exp")) {
      expect('(');
      Integer a = integer();
      expect(',');
      Integer b = integer();
      expect(')');
      try {
        return BlockFunction::exponential(a, b);
      } catch (const DomainError& e) {
        throw ParseError(pos_, e.what());
      }
    }
    if (keyword("shift")) {
      expect('(');
      BlockFunction base = function();
      expect(',');
      Integer k = integer();
      expect(')');
      if (k < 0) throw ParseError(pos_, "shift amount must be natural");
      return BlockFunction::shifted(std::move(base), k.get_ui());
    }
    return BlockFunction(expr());
  }

  Polynomial expr() {
    skip();
    Polynomial acc = term();
    for (;;) {
      skip();
      if (accept('+'))
        acc += term();
      else if (accept('-'))
        acc -= term();
      else
        return acc;
    }
  }

  void finish() {
    skip();
    if (pos_ != s_.size()) fail("unexpected trailing input");
  }

 private:
  BlockFunction piecewise() {
    if (!keyword("mod")) fail("expected 'mod'");
    const Integer N = integer();
    if (N < 1 || N > 1'000'000) fail("modulus must be in [1, 1000000]");
    const std::uint64_t modulus = N.get_ui();
    expect('{');
    std::vector<std::optional<Polynomial>> pieces(modulus);
    skip();
    while (!peek('}')) {
      skip();
      accept('r');
      const std::size_t at = pos_;
      const Integer r = integer();
      if (r < 0 || r >= N) throw ParseError(at, "residue out of range");
      if (pieces[r.get_ui()]) throw ParseError(at, "residue given twice");
      expect(':');
      pieces[r.get_ui()] = expr();
      skip();
      if (!accept(';')) break;
      skip();
    }
    expect('}');
    std::vector<Polynomial> out;
    for (std::uint64_t r = 0; r < modulus; ++r) {
      if (!pieces[r]) fail("missing piece for residue " + std::to_string(r));
      out.push_back(*pieces[r]);
    }
    return BlockFunction(PiecewisePoly(modulus, std::move(out)));
  }

  Polynomial term() {
    Polynomial acc = unary();
    for (;;) {
      skip();
      if (accept('*')) {
        acc = acc * unary();
      } else if (accept('/')) {
        const std::size_t at = pos_;
        Polynomial d = unary();
        if (!d.is_constant() || d.is_zero()) throw ParseError(at, "division only by nonzero constants");
        acc *= 1 / d.coefficient(0);
      } else if (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == 'n' ||
                                      s_[pos_] == '(')) {
        acc = acc * unary();
      } else {
        return acc;
      }
    }
  }

  Polynomial unary() {
    skip();
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Polynomial power() {
    Polynomial base = atom();
    skip();
    if (accept('^')) {
      const std::size_t at = pos_;
      const Integer e = integer();
      if (e < 0 || e > 64) throw ParseError(at, "exponent must be in [0, 64]");
      Polynomial out = Polynomial::constant(1);
      for (unsigned long i = 0; i < e.get_ui(); ++i) out = out * base;
      return out;
    }
    return base;
  }

  Polynomial atom() {
    skip();
    if (accept('(')) {
      Polynomial inner = expr();
      expect(')');
      return inner;
    }
    if (pos_ < s_.size() && s_[pos_] == 'n' &&
        (pos_ + 1 == s_.size() || !std::isalnum(static_cast<unsigned char>(s_[pos_ + 1])))) {
      ++pos_;
      return Polynomial::variable();
    }
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
      return Polynomial::constant(Rational(integer()));
    fail("expected a number, 'n' or '('");
  }

  Integer integer() {
    skip();
    std::size_t start = pos_;
    if (pos_ < s_.size() && s_[pos_] == '-') ++pos_;
    const std::size_t digits = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == digits) {
      pos_ = start;
      fail("expected an integer");
    }
    return Integer(std::string(s_.substr(start, pos_ - start)), 10);
  }

  bool keyword(std::string_view word) {
    skip();
    if (s_.substr(pos_, word.size()) != word) return false;
    const std::size_t end = pos_ + word.size();
    if (end < s_.size() && std::isalnum(static_cast<unsigned char>(s_[end]))) return false;
    pos_ = end;
    return true;
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  bool accept(char c) {
    if (peek(c)) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(pos_, message); }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

BlockFunction parse_function(std::string_view text) {
  Parser p(text);
  BlockFunction f = p.function();
  p.finish();
  return f;
}

PiecewisePoly parse_piecewise(std::string_view text) { return parse_function(text).to_symbolic(); }

Polynomial parse_polynomial(std::string_view text) {
  Parser p(text);
  Polynomial out = p.expr();
  p.finish();
  return out;
}

}  // namespace tdeg
