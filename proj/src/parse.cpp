#include "fqzeta/parse.hpp"

#include <cctype>
#include <sstream>

namespace fqz {

namespace {

class Parser {
 public:
  Parser(const std::string& text, FieldPtr cfg) : s_(text), cfg_(std::move(cfg)) {}

  RationalFunction parse() {
    RationalFunction r = expr();
    skip_ws();
    if (pos_ != s_.size()) throw parse_error("unexpected character", pos_);
    return r;
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  bool accept(char c) {
    if (peek(c)) {
      ++pos_;
      return true;
    }
    return false;
  }

  long long integer() {
    skip_ws();
    size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == start) throw parse_error("expected integer", pos_);
    long long v = 0;
    for (size_t i = start; i < pos_; ++i) {
      v = v * 10 + (s_[i] - '0');
      if (v > (1LL << 40)) throw parse_error("integer too large", start);
    }
    return v;
  }

  RationalFunction expr() {
    RationalFunction r = term();
    for (;;) {
      if (accept('+')) {
        r = r + term();
      } else if (accept('-')) {
        r = r - term();
      } else {
        return r;
      }
    }
  }

  RationalFunction term() {
    RationalFunction r = unary();
    for (;;) {
      if (accept('*')) {
        r = r * unary();
      } else if (accept('/')) {
        size_t at = pos_;
        RationalFunction d = unary();
        if (d.is_zero()) throw parse_error("division by zero", at);
        r = r / d;
      } else {
        return r;
      }
    }
  }

  RationalFunction unary() {
    if (accept('-')) return -unary();
    return power();
  }

  RationalFunction power() {
    RationalFunction base = atom();
    if (accept('^')) {
      skip_ws();
      long long n = integer();
      RationalFunction r = RationalFunction::one(cfg_);
      RationalFunction b = base;
      while (n > 0) {
        if (n & 1) r = r * b;
        if (n >>= 1) b = b * b;
      }
      return r;
    }
    return base;
  }

  RationalFunction atom() {
    skip_ws();
    if (pos_ >= s_.size()) throw parse_error("unexpected end of input", pos_);
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      RationalFunction r = expr();
      if (!accept(')')) throw parse_error("expected ')'", pos_);
      return r;
    }
    if (c == 'x') {
      ++pos_;
      return RationalFunction(Poly::theta(cfg_));
    }
    if (c == '[') {
      ++pos_;
      std::vector<int> digits;
      digits.push_back(static_cast<int>(integer()));
      while (accept(',')) digits.push_back(static_cast<int>(integer()));
      if (!accept(']')) throw parse_error("expected ']'", pos_);
      if (static_cast<int>(digits.size()) > cfg_->e())
        throw parse_error("tuple longer than extension degree", pos_);
      return RationalFunction(Poly::constant(cfg_, cfg_->from_digits(digits)));
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      long long v = integer();
      return RationalFunction(Poly::constant(cfg_, cfg_->from_int(v)));
    }
    throw parse_error("unexpected character", pos_);
  }

  const std::string& s_;
  FieldPtr cfg_;
  size_t pos_ = 0;
};

void append_term(std::ostringstream& out, const FieldConfig& cfg, Fq c, i64 exp, bool first) {
  if (!first) out << "+";
  std::string cs = format_fq(cfg, c);
  if (exp == 0) {
    out << cs;
    return;
  }
  if (cs != "1") out << cs << "*";
  out << "x";
  if (exp != 1) out << "^" << exp;
}

}  // namespace

RationalFunction parse_expr(const std::string& text, const FieldPtr& cfg) {
  return Parser(text, cfg).parse();
}

Poly parse_poly(const std::string& text, const FieldPtr& cfg) {
  RationalFunction r = parse_expr(text, cfg);
  if (!r.is_poly()) throw error("expected a polynomial, got a proper rational function");
  return r.num();
}

std::string format_fq(const FieldConfig& cfg, Fq c) {
  if (cfg.e() == 1) return std::to_string(c.v);
  std::ostringstream out;
  out << "[";
  auto d = cfg.digits(c);
  for (size_t i = 0; i < d.size(); ++i) {
    if (i) out << ",";
    out << d[i];
  }
  out << "]";
  return out.str();
}

std::string format_poly(const Poly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (i64 i = 0; i <= p.deg(); ++i) {
    if (p.coeff(i).is_zero()) continue;
    append_term(out, *p.field(), p.coeff(i), i, first);
    first = false;
  }
  return out.str();
}

std::string format_rational(const RationalFunction& r) {
  if (r.is_poly()) return format_poly(r.num());
  return "(" + format_poly(r.num()) + ")/(" + format_poly(r.den()) + ")";
}

std::string format_laurent(const LaurentNumber& v) {
  std::ostringstream out;
  bool first = true;
  for (auto it = v.window().rbegin(); it != v.window().rend(); ++it) {
    append_term(out, *v.field(), it->second, it->first, first);
    first = false;
  }
  if (!v.is_exact()) {
    if (!first) out << "+";
    out << "O(x^" << v.err_deg() << ")";
  } else if (first) {
    out << "0";
  }
  return out.str();
}

std::string format_graded(const GradedNumber& v) {
  if (v.grade() == 0) return format_laurent(v.unit());
  std::ostringstream out;
  out << "(" << format_laurent(v.unit()) << ")*tt^" << v.grade();
  return out.str();
}

}  // namespace fqz
