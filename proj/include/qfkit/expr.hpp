#pragma once

// Parser for field specs, elements and form expressions.
//   field:   Q | Fp | Q(s), followed by Laurent steps [[t1]][[t2]] or ((t1))((t2))
//   element: products, quotients, integer powers and (over Q(s)) polynomial sums of
//            integers, the function variable and Laurent variables
//   form:    <a1,...,an> | pfi(a1,...,an) | H(m) | (form) combined with + (orthogonal sum),
//            - (sum with the negative), * (scaling by an element or tensor product)

#include <cctype>
#include <string>
#include <utility>
#include <vector>

#include "qfkit/form.hpp"

namespace qfkit {

namespace detail {

// Element during parsing: num/den in the base polynomial ring times t^exps.
struct Scalar {
  Poly num = Poly(1), den = Poly(1);
  std::vector<int> exps;

  bool is_base() const {
    for (int e : exps)
      if (e) return false;
    return true;
  }
};

struct Value {
  bool is_form = false;
  Scalar s;
  QuadForm f;
};

class Parser {
 public:
  Parser(std::string src, FieldTower k) : src_(std::move(src)), k_(std::move(k)) {}

  QuadForm form() {
    Value v = expr();
    end();
    if (!v.is_form) error("expected a form, got an element");
    return v.f;
  }

  MonomialElement element() {
    Value v = expr();
    end();
    if (v.is_form) error("expected an element, got a form");
    return to_element(v.s);
  }

  [[noreturn]] void error(const std::string& msg) const {
    fail(ErrorCode::ParseError, "line 1, column " + std::to_string(pos_ + 1) + ": " + msg);
  }

 private:
  std::string src_;
  FieldTower k_;
  std::size_t pos_ = 0;

  void skip() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }
  char peek() {
    skip();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) error(std::string("expected '") + c + "'");
  }
  void end() {
    if (peek() != '\0') error("unexpected trailing input");
  }

  Scalar one() const {
    Scalar s;
    s.exps.assign(k_.depth(), 0);
    return s;
  }

  Scalar mul(const Scalar& a, const Scalar& b) const {
    Scalar r = one();
    r.num = a.num * b.num;
    r.den = a.den * b.den;
    for (std::size_t i = 0; i < r.exps.size(); ++i) r.exps[i] = a.exps[i] + b.exps[i];
    return r;
  }
  Scalar inv(const Scalar& a) const {
    if (a.num.is_zero()) error("division by zero");
    Scalar r = a;
    std::swap(r.num, r.den);
    for (int& e : r.exps) e = -e;
    return r;
  }
  Scalar add(const Scalar& a, const Scalar& b, int sign) const {
    if (!a.is_base() || !b.is_base()) error("sums of Laurent monomials are not elements of normal form");
    Scalar r = one();
    r.num = a.num * b.den + Poly(Rational(sign)) * b.num * a.den;
    r.den = a.den * b.den;
    return r;
  }

  MonomialElement to_element(const Scalar& s) const {
    if (s.num.is_zero())
      fail(ErrorCode::ZeroSlot, "line 1, column " + std::to_string(pos_ + 1) + ": zero element");
    BaseElement e(1);
    auto put = [&](const Poly& p, int sign) {
      if (p.degree() <= 0) {
        e.q = sign > 0 ? e.q * p.coeff(0) : e.q / p.coeff(0);
      } else {
        if (k_.base != BaseKind::RationalFunction) error("polynomial entry over a constant base field");
        Rational c = p.lead();
        e.q = sign > 0 ? e.q * c : e.q / c;
        int& m = e.polys[p * Poly(1 / c)];
        m += sign;
        if (m == 0) e.polys.erase(p * Poly(1 / c));
      }
    };
    put(s.num, 1);
    put(s.den, -1);
    return MonomialElement(e, s.exps);
  }

  static Value scalar(Scalar s) {
    Value v;
    v.s = std::move(s);
    return v;
  }
  Value form_value(QuadForm f) const {
    Value v;
    v.is_form = true;
    v.f = std::move(f);
    return v;
  }

  Value expr() {
    Value v = term();
    while (true) {
      char c = peek();
      if (c != '+' && c != '-') break;
      ++pos_;
      Value w = term();
      v = c == '+' ? plus(v, w) : plus(v, negate_value(w));
    }
    return v;
  }

  Value negate_value(const Value& v) {
    if (v.is_form) return form_value(negate(v.f));
    Scalar s = v.s;
    s.num = -s.num;
    return scalar(s);
  }

  Value plus(const Value& a, const Value& b) {
    if (a.is_form != b.is_form) error("cannot add a form and an element");
    if (a.is_form) return form_value(orthogonal_sum(a.f, b.f));
    return scalar(add(a.s, b.s, 1));
  }

  Value term() {
    Value v = unary();
    while (true) {
      char c = peek();
      if (c == '*') {
        ++pos_;
        Value w = unary();
        v = times(v, w);
      } else if (c == '/') {
        ++pos_;
        Value w = unary();
        if (v.is_form || w.is_form) error("division is defined for elements only");
        v = scalar(mul(v.s, inv(w.s)));
      } else {
        break;
      }
    }
    return v;
  }

  Value times(const Value& a, const Value& b) {
    if (!a.is_form && !b.is_form) return scalar(mul(a.s, b.s));
    if (a.is_form && b.is_form) return form_value(tensor(a.f, b.f));
    const Value& e = a.is_form ? b : a;
    const Value& f = a.is_form ? a : b;
    return form_value(scale(to_element(e.s), f.f));
  }

  Value unary() {
    if (accept('-')) return negate_value(unary());
    if (accept('+')) return unary();
    return power();
  }

  Value power() {
    Value v = atom();
    if (accept('^')) {
      if (v.is_form) error("powers are defined for elements only");
      bool neg = accept('-');
      long long e = integer();
      Scalar r = one(), b = neg ? inv(v.s) : v.s;
      for (long long i = 0; i < e; ++i) r = mul(r, b);
      v = scalar(r);
    }
    return v;
  }

  long long integer() {
    skip();
    std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (start == pos_) error("expected an integer");
    if (pos_ - start > 18) error("integer literal too long");
    return std::stoll(src_.substr(start, pos_ - start));
  }

  std::string ident() {
    skip();
    std::size_t start = pos_;
    while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_' || src_[pos_] == '\''))
      ++pos_;
    return src_.substr(start, pos_ - start);
  }

  std::vector<MonomialElement> element_list(char close) {
    std::vector<MonomialElement> out;
    if (accept(close)) return out;
    while (true) {
      char c = peek();
      if (c == ',' || c == close) error("empty slot");
      Value v = expr();
      if (v.is_form) error("forms are not allowed as entries");
      out.push_back(to_element(v.s));
      if (accept(close)) return out;
      expect(',');
    }
  }

  Value atom() {
    char c = peek();
    if (c == '\0') error("unexpected end of input");
    if (std::isdigit(static_cast<unsigned char>(c))) {
      BigInt n = 0;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) n = n * 10 + (src_[pos_++] - '0');
      Scalar s = one();
      s.num = Poly(Rational(n));
      return scalar(s);
    }
    if (c == '(') {
      ++pos_;
      Value v = expr();
      expect(')');
      return v;
    }
    if (c == '<') {
      ++pos_;
      auto es = element_list('>');
      return form_value(QuadForm(k_, es));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t at = pos_;
      std::string id = ident();
      if ((id == "pfi" || id == "H") && peek() == '(') {
        ++pos_;
        if (id == "H") {
          long long m = integer();
          expect(')');
          return form_value(hyperbolic(static_cast<std::size_t>(m), k_));
        }
        return form_value(pfister(element_list(')'), k_));
      }
      Scalar s = one();
      if (k_.base == BaseKind::RationalFunction && id == k_.func_var) {
        s.num = Poly::x();
        return scalar(s);
      }
      int i = k_.step_index(id);
      if (i < 0) {
        pos_ = at;
        error("unknown identifier '" + id + "'");
      }
      s.exps[static_cast<std::size_t>(i)] = 1;
      return scalar(s);
    }
    error(std::string("unexpected character '") + c + "'");
  }
};

}  // namespace detail

inline FieldTower parse_field(const std::string& spec) {
  std::size_t pos = 0;
  auto err = [&](const std::string& m) -> void {
    fail(ErrorCode::ParseError, "line 1, column " + std::to_string(pos + 1) + ": " + m);
  };
  auto skip = [&]() {
    while (pos < spec.size() && std::isspace(static_cast<unsigned char>(spec[pos]))) ++pos;
  };
  skip();
  FieldTower k;
  if (pos < spec.size() && spec[pos] == 'Q') {
    ++pos;
    if (pos < spec.size() && spec[pos] == '(' && !(pos + 1 < spec.size() && spec[pos + 1] == '(')) {
      ++pos;
      std::size_t s = pos;
      while (pos < spec.size() && std::isalnum(static_cast<unsigned char>(spec[pos]))) ++pos;
      if (s == pos) err("expected a variable name");
      std::string v = spec.substr(s, pos - s);
      if (pos >= spec.size() || spec[pos] != ')') err("expected ')'");
      ++pos;
      k = FieldTower::rational_function(v);
    } else {
      k = FieldTower::rationals();
    }
  } else if (pos < spec.size() && spec[pos] == 'F') {
    ++pos;
    std::size_t s = pos;
    while (pos < spec.size() && std::isdigit(static_cast<unsigned char>(spec[pos]))) ++pos;
    if (s == pos || pos - s > 18) err("expected a prime after F");
    long long p = std::stoll(spec.substr(s, pos - s));
    k = FieldTower::prime_field(p);
  } else {
    err("expected Q, Fp or Q(var)");
  }
  while (true) {
    skip();
    if (pos >= spec.size()) break;
    std::string open = spec.substr(pos, 2);
    if (open != "[[" && open != "((") err("expected [[var]] or ((var))");
    std::string close = open == "[[" ? "]]" : "))";
    pos += 2;
    std::size_t s = pos;
    while (pos < spec.size() && (std::isalnum(static_cast<unsigned char>(spec[pos])) || spec[pos] == '_' || spec[pos] == '\'')) ++pos;
    if (s == pos) err("expected a variable name");
    std::string v = spec.substr(s, pos - s);
    if (spec.substr(pos, 2) != close) err("expected " + close);
    pos += 2;
    k.steps.push_back(v);
  }
  k.validate();
  return k;
}

inline QuadForm parse_form(const std::string& src, const FieldTower& k) { return detail::Parser(src, k).form(); }

inline MonomialElement parse_element(const std::string& src, const FieldTower& k) { return detail::Parser(src, k).element(); }

}  // namespace qfkit
