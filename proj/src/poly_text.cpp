#include "lgpoly/poly_text.hpp"

#include <cctype>

#include <json.hpp>

namespace lgpoly {

namespace {

using nlohmann::json;

IntPoly parse_dense_list(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid coefficient list: ") + e.what());
  }
  if (!j.is_array()) throw ParseError("coefficient list must be a JSON array");
  std::vector<mpz_class> coeffs;
  for (const auto& item : j) {
    std::string s;
    if (item.is_string())
      s = item.get<std::string>();
    else if (item.is_number_integer())
      s = std::to_string(item.get<long long>());
    else
      throw ParseError("coefficients must be decimal strings or integers");
    mpz_class v;
    if (mpz_set_str(v.get_mpz_t(), s.c_str(), 10) != 0)
      throw ParseError("bad integer literal '" + s + "'");
    coeffs.push_back(std::move(v));
  }
  return IntPoly(std::move(coeffs));
}

class ExprParser {
 public:
  explicit ExprParser(const std::string& s) : s_(s) {}

  IntPoly parse() {
    IntPoly r = expression();
    skip_ws();
    if (pos_ != s_.size())
      throw ParseError("unexpected character '" + std::string(1, s_[pos_]) +
                       "' at position " + std::to_string(pos_));
    return r;
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  IntPoly expression() {
    IntPoly acc;
    char sign = '+';
    if (peek() == '+' || peek() == '-') {
      sign = s_[pos_];
      ++pos_;
    }
    acc = (sign == '-') ? -term() : term();
    while (true) {
      char c = peek();
      if (c != '+' && c != '-') break;
      ++pos_;
      IntPoly t = term();
      acc = (c == '-') ? acc - t : acc + t;
    }
    return acc;
  }

  IntPoly term() {
    IntPoly acc = factor();
    while (true) {
      char c = peek();
      if (c == '*') {
        ++pos_;
        acc = acc * factor();
      } else if (c == '(' || is_variable(c) || std::isdigit(static_cast<unsigned char>(c))) {
        // implicit multiplication: 2x, 2(x+1), x(x-1)
        acc = acc * factor();
      } else {
        break;
      }
    }
    return acc;
  }

  IntPoly factor() {
    IntPoly base = primary();
    if (peek() == '^') {
      ++pos_;
      if (peek() == '^') throw ParseError("'^^' is not a valid operator");
      unsigned e = read_exponent();
      base = base.pow(e);
    }
    return base;
  }

  IntPoly primary() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      IntPoly inner = expression();
      if (peek() != ')') throw ParseError("missing ')'");
      ++pos_;
      return inner;
    }
    if (c == '-') {
      ++pos_;
      return -factor();
    }
    if (is_variable(c)) {
      ++pos_;
      return IntPoly::variable();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      return IntPoly::constant(read_integer());
    }
    throw ParseError(std::string("unexpected ") +
                     (c == '\0' ? std::string("end of input")
                                : "'" + std::string(1, c) + "'") +
                     " in polynomial expression");
  }

  static bool is_variable(char c) { return c == 'x' || c == 'n'; }

  mpz_class read_integer() {
    skip_ws();
    size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
    return mpz_class(s_.substr(start, pos_ - start));
  }

  unsigned read_exponent() {
    char c = peek();
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw ParseError("exponent must be a nonnegative integer");
    mpz_class e = read_integer();
    if (e > 64) throw ParseError("exponent too large");
    return static_cast<unsigned>(e.get_ui());
  }

  const std::string& s_;
  size_t pos_ = 0;
};

}  // namespace

IntPoly parse_poly(const std::string& text) {
  size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  if (i < text.size() && text[i] == '[') return parse_dense_list(text);
  return ExprParser(text).parse();
}

std::string to_dense_list(const IntPoly& f) {
  json j = json::array();
  if (f.is_zero()) {
    j.push_back("0");
  } else {
    for (const auto& c : f.coeffs()) j.push_back(c.get_str());
  }
  return j.dump();
}

std::string to_display(const IntPoly& f, char variable) {
  if (f.is_zero()) return "0";
  std::string out;
  for (int i = f.degree(); i >= 0; --i) {
    mpz_class c = f.coeff(i);
    if (c == 0) continue;
    bool first = out.empty();
    bool negative = c < 0;
    mpz_class a = abs(c);
    if (first)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    std::string mag = a.get_str();
    if (i == 0) {
      out += mag;
    } else {
      if (a != 1) out += mag + "*";
      out += variable;
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

}  // namespace lgpoly
