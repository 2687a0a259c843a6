#pragma once

#include <cctype>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "l2lab/int_matrix.hpp"

namespace l2lab::groupring {

using Exponent = std::vector<std::int64_t>;

/// Element of Q[Z^n]: finitely many terms, exponent vector -> nonzero rational.
class LaurentPoly {
public:
  explicit LaurentPoly(std::size_t ambient_rank = 1) : rank_(ambient_rank) {}

  static LaurentPoly constant(std::size_t rank, const Rat& c) {
    LaurentPoly p(rank);
    if (c != 0) p.terms_[Exponent(rank, 0)] = c;
    return p;
  }

  static LaurentPoly monomial(std::size_t rank, Exponent e, const Rat& c) {
    if (e.size() != rank) throw std::invalid_argument("LaurentPoly: exponent length != rank");
    LaurentPoly p(rank);
    if (c != 0) p.terms_[std::move(e)] = c;
    return p;
  }

  /// z_i as a polynomial (i is 0-based).
  static LaurentPoly variable(std::size_t rank, std::size_t i) {
    Exponent e(rank, 0);
    e.at(i) = 1;
    return monomial(rank, std::move(e), 1);
  }

  std::size_t ambient_rank() const { return rank_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const std::map<Exponent, Rat>& terms() const { return terms_; }

  Rat coeff(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rat(0) : it->second;
  }

  Rat identity_coeff() const { return coeff(Exponent(rank_, 0)); }

  void add_term(const Exponent& e, const Rat& c) {
    if (e.size() != rank_) throw std::invalid_argument("LaurentPoly: exponent length != rank");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  LaurentPoly operator+(const LaurentPoly& o) const {
    check_rank(o);
    LaurentPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
  }

  LaurentPoly operator-() const {
    LaurentPoly r(rank_);
    for (const auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
  }

  LaurentPoly operator-(const LaurentPoly& o) const { return *this + (-o); }

  LaurentPoly operator*(const LaurentPoly& o) const {
    check_rank(o);
    LaurentPoly r(rank_);
    for (const auto& [e1, c1] : terms_)
      for (const auto& [e2, c2] : o.terms_) {
        Exponent e(rank_);
        for (std::size_t t = 0; t < rank_; ++t) e[t] = e1[t] + e2[t];
        r.add_term(e, c1 * c2);
      }
    return r;
  }

  bool operator==(const LaurentPoly& o) const { return rank_ == o.rank_ && terms_ == o.terms_; }

  /// The group-ring involution: z^e -> z^-e (rational coefficients are self-conjugate).
  LaurentPoly involute() const {
    LaurentPoly r(rank_);
    for (const auto& [e, c] : terms_) {
      Exponent ne(rank_);
      for (std::size_t t = 0; t < rank_; ++t) ne[t] = -e[t];
      r.terms_[std::move(ne)] = c;
    }
    return r;
  }

  Rat l1_norm() const {
    Rat s = 0;
    for (const auto& [e, c] : terms_) s += boost::multiprecision::abs(c);
    return s;
  }

  /// Largest |exponent| coordinate over all terms (support radius).
  std::int64_t support_radius() const {
    std::int64_t r = 0;
    for (const auto& [e, c] : terms_)
      for (auto v : e) r = std::max(r, v < 0 ? -v : v);
    return r;
  }

  bool integral() const {
    for (const auto& [e, c] : terms_)
      if (rat_den(c) != 1) return false;
    return true;
  }

  /// Univariate only: dense coefficients c[0..deg] and the power of z they start at.
  std::pair<std::int64_t, std::vector<Rat>> dense_univariate() const {
    if (rank_ != 1) throw std::invalid_argument("dense_univariate: ambient rank != 1");
    if (terms_.empty()) return {0, {}};
    std::int64_t lo = terms_.begin()->first[0];
    std::int64_t hi = terms_.rbegin()->first[0];
    std::vector<Rat> c(static_cast<std::size_t>(hi - lo + 1), Rat(0));
    for (const auto& [e, v] : terms_) c[static_cast<std::size_t>(e[0] - lo)] = v;
    return {lo, std::move(c)};
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // highest exponent first reads like a polynomial
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      Rat a = boost::multiprecision::abs(c);
      if (first) {
      os << (c < 0 ? "-" : "");
        first = false;
      } else {
        os << (c < 0 ? " - " : " + ");
      }
      bool has_var = false;
      for (auto v : e)
        if (v != 0) has_var = true;
      if (!has_var) {
        os << a;
        continue;
      }
      bool printed = false;
      if (a != 1) {
        os << a;
        printed = true;
      }
      for (std::size_t t = 0; t < rank_; ++t) {
        if (e[t] == 0) continue;
        if (printed) os << "*";
        os << (rank_ == 1 ? std::string("z") : "z" + std::to_string(t + 1));
        if (e[t] != 1) os << "^" << e[t];
        printed = true;
      }
    }
    return os.str();
  }

private:
  void check_rank(const LaurentPoly& o) const {
    if (rank_ != o.rank_) throw std::invalid_argument("LaurentPoly: ambient rank mismatch");
  }

  std::size_t rank_;
  std::map<Exponent, Rat> terms_;
};

class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " at position " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

private:
  std::size_t pos_;
};

namespace detail {

class PolyParser {
public:
  PolyParser(std::string_view text, std::size_t rank) : s_(text), rank_(rank) {}

  LaurentPoly parse() {
    LaurentPoly p(rank_);
    skip_ws();
    if (pos_ >= s_.size()) throw ParseError("empty polynomial", pos_);
    bool neg = consume_sign();
    auto [e0, c0] = term();
    p.add_term(e0, neg ? Rat(-c0) : c0);
    skip_ws();
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (c != '+' && c != '-') throw ParseError("expected '+' or '-'", pos_);
      ++pos_;
      skip_ws();
      auto [e1, c1] = term();
      p.add_term(e1, c == '-' ? Rat(-c1) : c1);
      skip_ws();
    }
    return p;
  }

private:
  std::string_view s_;
  std::size_t rank_;
  std::size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool consume_sign() {
    if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) {
      bool neg = s_[pos_] == '-';
      ++pos_;
      skip_ws();
      return neg;
    }
    return false;
  }

  bool digit_ahead() const {
    return pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]));
  }

  Int integer() {
    bool neg = false;
    if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) {
      neg = s_[pos_] == '-';
      ++pos_;
    }
    if (!digit_ahead()) throw ParseError("expected integer", pos_);
    Int v = 0;
    while (digit_ahead()) {
      v = v * 10 + (s_[pos_] - '0');
      ++pos_;
    }
    return neg ? Int(-v) : v;
  }

  Rat rational() {
    Int num = integer();
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == '/') {
      ++pos_;
      skip_ws();
      Int den = integer();
      if (den == 0) throw ParseError("zero denominator", pos_);
      return Rat(num, den);
    }
    return Rat(num);
  }

  // factor := var ('^' signed-int)?
  std::pair<Exponent, bool> factor() {
    skip_ws();
    if (pos_ >= s_.size() || s_[pos_] != 'z') return {Exponent(), false};
    std::size_t start = pos_;
    ++pos_;
    std::size_t var_index = 0;
    if (digit_ahead()) {
      std::size_t idx = 0;
      while (digit_ahead()) {
        idx = idx * 10 + static_cast<std::size_t>(s_[pos_] - '0');
        ++pos_;
      }
      if (idx < 1 || idx > rank_) throw ParseError("variable index out of range", start);
      var_index = idx - 1;
    } else if (rank_ != 1) {
      throw ParseError("bare 'z' requires ambient rank 1", start);
    }
    std::int64_t exp = 1;
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == '^') {
      ++pos_;
      skip_ws();
      Int e = integer();
      exp = static_cast<std::int64_t>(e);
    }
    Exponent ev(rank_, 0);
    ev[var_index] = exp;
    return {std::move(ev), true};
  }

  // term := rational | [rational '*']? factor ('*' factor)*
  std::pair<Exponent, Rat> term() {
    skip_ws();
    Rat coeff = 1;
    bool saw_coeff = false;
    if (digit_ahead()) {
      coeff = rational();
      saw_coeff = true;
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == '*') {
        ++pos_;
      } else {
        return {Exponent(rank_, 0), coeff};  // bare constant term
      }
    }
    auto [e, ok] = factor();
    if (!ok) {
      if (saw_coeff) throw ParseError("expected variable after '*'", pos_);
      throw ParseError("expected term", pos_);
    }
    Exponent total = std::move(e);
    skip_ws();
    while (pos_ < s_.size() && s_[pos_] == '*') {
      ++pos_;
      auto [e2, ok2] = factor();
      if (!ok2) throw ParseError("expected variable after '*'", pos_);
      for (std::size_t t = 0; t < rank_; ++t) total[t] += e2[t];
      skip_ws();
    }
    return {std::move(total), coeff};
  }
};

}  // namespace detail

/// Parse the polynomial grammar: sum of terms, term = [coeff '*']? var('^'int)*...,
/// var = "z" (rank 1) or "z1".."zN". Throws ParseError with a position.
inline LaurentPoly parse_poly(std::string_view text, std::size_t ambient_rank) {
  if (ambient_rank == 0) throw std::invalid_argument("parse_poly: ambient rank must be >= 1");
  return detail::PolyParser(text, ambient_rank).parse();
}

}  // namespace l2lab::groupring
