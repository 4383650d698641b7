#pragma once

/// \file exact.hpp
/// Exact real numbers of the form (a + b*sqrt(d)) / c.
///
/// Values are rationals together with at most one quadratic radical. Every
/// comparison and floor is decided with integer arithmetic only: the radical
/// is isolated, both sides are squared, and the sign cases are enumerated.
/// Values over different radicands can be mixed only when the radicands are
/// compatible (their product is a perfect square); anything else raises
/// IncompatibleRadicands.

#include "lamo/error.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

namespace lamo {

using BigInt = boost::multiprecision::cpp_int;

/// Floor of the non-negative square root. Newton iteration from an upper
/// bound; the result is checked against s*s <= v < (s+1)*(s+1).
inline BigInt isqrt(const BigInt& v) {
  if (v < 0) throw Error(ErrorKind::unsupported_point, "isqrt of a negative integer");
  if (v < 2) return v;
  BigInt x = BigInt(1) << (boost::multiprecision::msb(v) / 2 + 1);
  while (true) {
    BigInt y = (x + v / x) >> 1;
    if (y >= x) break;
    x = std::move(y);
  }
  if (!(x * x <= v && (x + 1) * (x + 1) > v)) {
    throw std::logic_error("isqrt postcondition violated");
  }
  return x;
}

inline bool is_perfect_square(const BigInt& v) {
  if (v < 0) return false;
  BigInt s = isqrt(v);
  return s * s == v;
}

/// Largest integer not above p / q, for q != 0.
inline BigInt floor_div(const BigInt& p, const BigInt& q) {
  BigInt quot = p / q;
  if (quot * q != p && ((p < 0) != (q < 0))) quot -= 1;
  return quot;
}

class Exact {
 public:
  Exact() = default;
  Exact(std::int64_t n) : a_(n) {}  // NOLINT(google-explicit-constructor)
  explicit Exact(BigInt n) : a_(std::move(n)) {}

  static Exact rational(const BigInt& p, const BigInt& q) {
    if (q == 0) throw Error(ErrorKind::zero_denominator, "rational with denominator 0");
    return Exact(p, 0, q, 0);
  }

  /// (a + b*sqrt(d)) / c.
  static Exact quadratic(const BigInt& a, const BigInt& b, const BigInt& d, const BigInt& c) {
    if (c == 0) throw Error(ErrorKind::zero_denominator, "quadratic value with c = 0");
    if (d < 0) throw Error(ErrorKind::unsupported_point, "negative radicand");
    Exact x(a, b, c, d);
    x.extract_square_factors();
    return x;
  }

  static Exact sqrt(const BigInt& d) { return quadratic(0, 1, d, 1); }

  const BigInt& a() const noexcept { return a_; }
  const BigInt& b() const noexcept { return b_; }
  const BigInt& c() const noexcept { return c_; }
  const BigInt& d() const noexcept { return d_; }

  bool is_rational() const noexcept { return b_ == 0; }
  bool is_integer() const noexcept { return b_ == 0 && c_ == 1; }
  bool is_zero() const noexcept { return a_ == 0 && b_ == 0; }

  /// -1, 0 or +1.
  int sign() const {
    int sa = a_.sign();
    int sb = b_.sign();
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // Opposite signs: compare |a| with |b|*sqrt(d) by squaring.
    BigInt lhs = a_ * a_;
    BigInt rhs = b_ * b_ * d_;
    if (lhs == rhs) return 0;  // unreachable for non-square d
    return lhs > rhs ? sa : sb;
  }

  Exact operator-() const {
    Exact r = *this;
    r.a_ = -r.a_;
    r.b_ = -r.b_;
    return r;
  }

  friend Exact operator+(const Exact& x, const Exact& y) {
    auto [u, v] = align(x, y);
    return Exact(u.a_ * v.c_ + v.a_ * u.c_, u.b_ * v.c_ + v.b_ * u.c_, u.c_ * v.c_,
                 u.is_rational() ? v.d_ : u.d_);
  }

  friend Exact operator-(const Exact& x, const Exact& y) { return x + (-y); }

  friend Exact operator*(const Exact& x, const Exact& y) {
    auto [u, v] = align(x, y);
    const BigInt& d = u.is_rational() ? v.d_ : u.d_;
    return Exact(u.a_ * v.a_ + u.b_ * v.b_ * d, u.a_ * v.b_ + u.b_ * v.a_, u.c_ * v.c_, d);
  }

  friend Exact operator/(const Exact& x, const Exact& y) { return x * y.reciprocal(); }

  Exact& operator+=(const Exact& y) { return *this = *this + y; }
  Exact& operator-=(const Exact& y) { return *this = *this - y; }
  Exact& operator*=(const Exact& y) { return *this = *this * y; }
  Exact& operator/=(const Exact& y) { return *this = *this / y; }

  Exact reciprocal() const {
    if (is_zero()) throw Error(ErrorKind::zero_denominator, "reciprocal of zero");
    // c / (a + b sqrt d) = c (a - b sqrt d) / (a^2 - b^2 d)
    BigInt norm = a_ * a_ - b_ * b_ * d_;
    return Exact(c_ * a_, -c_ * b_, norm, d_);
  }

  /// Structural equality of normalized forms. Values over incompatible
  /// radicands are never equal, so this does not throw.
  friend bool operator==(const Exact& x, const Exact& y) {
    if (x.d_ == y.d_) return x.a_ == y.a_ && x.b_ == y.b_ && x.c_ == y.c_;
    if (!compatible(x, y)) return false;
    auto [u, v] = align(x, y);
    return u.a_ == v.a_ && u.b_ == v.b_ && u.c_ == v.c_;
  }

  friend std::strong_ordering operator<=>(const Exact& x, const Exact& y) {
    int s = (x - y).sign();
    if (s < 0) return std::strong_ordering::less;
    if (s > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Exact& x);

 private:
  Exact(BigInt a, BigInt b, BigInt c, BigInt d)
      : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
    normalize();
  }

  void normalize() {
    if (c_ == 0) throw Error(ErrorKind::zero_denominator, "denominator 0");
    if (c_ < 0) {
      c_ = -c_;
      a_ = -a_;
      b_ = -b_;
    }
    if (b_ == 0 || d_ == 0) {
      b_ = 0;
      d_ = 0;
    }
    BigInt g = gcd(gcd(abs(a_), abs(b_)), c_);
    if (g > 1) {
      a_ /= g;
      b_ /= g;
      c_ /= g;
    }
  }

  // Pulls small square factors out of d and folds perfect squares into a.
  // Opportunistic only: compatibility checks do not rely on d being squarefree.
  void extract_square_factors() {
    if (b_ == 0) return;
    BigInt root = isqrt(d_);
    if (root * root == d_) {
      a_ += b_ * root;
      b_ = 0;
      d_ = 0;
      normalize();
      return;
    }
    for (unsigned p = 2; p < 1000 && BigInt(p) * p <= d_; p += (p == 2 ? 1 : 2)) {
      const unsigned sq = p * p;
      while (d_ % sq == 0) {
        d_ /= sq;
        b_ *= p;
      }
    }
    normalize();
  }

  static bool compatible(const Exact& x, const Exact& y) {
    if (x.is_rational() || y.is_rational() || x.d_ == y.d_) return true;
    return is_perfect_square(x.d_ * y.d_);
  }

  // Rewrites x over y's radicand (or vice versa) so both share one d.
  static std::pair<Exact, Exact> align(const Exact& x, const Exact& y) {
    if (x.is_rational() || y.is_rational() || x.d_ == y.d_) return {x, y};
    BigInt prod = x.d_ * y.d_;
    BigInt k = isqrt(prod);
    if (k * k != prod) {
      throw Error(ErrorKind::incompatible_radicands,
                  "sqrt(" + x.d_.str() + ") and sqrt(" + y.d_.str() + ")");
    }
    // sqrt(dx) = k * sqrt(dy) / dy
    return {Exact(x.a_ * y.d_, x.b_ * k, x.c_ * y.d_, y.d_), y};
  }

  BigInt a_ = 0;
  BigInt b_ = 0;
  BigInt c_ = 1;
  BigInt d_ = 0;
};

inline std::strong_ordering compare(const Exact& x, const Exact& y) { return x <=> y; }

inline Exact add(const Exact& x, const Exact& y) { return x + y; }

inline Exact mul_rational(const Exact& x, const BigInt& p, const BigInt& r) {
  return x * Exact::rational(p, r);
}

inline bool is_integer(const Exact& x) { return x.is_integer(); }

/// The unique integer n with n <= x < n + 1.
inline BigInt floor(const Exact& x) {
  if (x.is_rational()) return floor_div(x.a(), x.c());
  // b*sqrt(d) is irrational here, so its floor is isqrt(b^2 d) or one below
  // the negated root.
  BigInt root = isqrt(x.b() * x.b() * x.d());
  BigInt radical_floor = x.b() > 0 ? root : -root - 1;
  BigInt n = floor_div(x.a() + radical_floor, x.c());
  // a + b sqrt d lies in (a + rf, a + rf + 1), so n is off by at most one.
  while (Exact(n) > x) n -= 1;
  while (Exact(n + 1) <= x) n += 1;
  return n;
}

inline BigInt ceil(const Exact& x) {
  BigInt n = floor(x);
  return Exact(n) == x ? n : n + 1;
}

/// Canonical literal: "7", "3/2", "sqrt(5)", "-2*sqrt(3)/5", "(1+sqrt(5))/2".
inline std::string to_string(const Exact& x) {
  if (x.is_rational()) {
    return x.c() == 1 ? x.a().str() : x.a().str() + "/" + x.c().str();
  }
  BigInt mag = abs(x.b());
  std::string radical = (mag == 1 ? std::string() : mag.str() + "*") + "sqrt(" + x.d().str() + ")";
  std::string denom = x.c() == 1 ? std::string() : "/" + x.c().str();
  if (x.a() == 0) return (x.b() < 0 ? "-" : "") + radical + denom;
  std::string inner = x.a().str() + (x.b() < 0 ? "-" : "+") + radical;
  return "(" + inner + ")" + denom;
}

inline std::ostream& operator<<(std::ostream& os, const Exact& x) { return os << to_string(x); }

namespace detail {

class LiteralParser {
 public:
  explicit LiteralParser(std::string_view text) {
    // Accept U+2212 MINUS SIGN as '-'; drop whitespace.
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (text.compare(i, 3, "\xE2\x88\x92") == 0) {
        src_.push_back('-');
        i += 2;
      } else if (text[i] != ' ' && text[i] != '\t') {
        src_.push_back(text[i]);
      }
    }
    original_ = std::string(text);
  }

  Exact parse() {
    if (src_.empty()) fail("empty literal");
    if (src_.find_first_of(".eE") != std::string::npos) {
      fail("decimal literals are not accepted; use an exact form such as 3/2 or sqrt(2)");
    }
    int outer = 1;
    if (peek('-') || peek('+')) outer = take() == '-' ? -1 : 1;
    BigInt rational_part = 0;
    BigInt radical_coef = 0;
    BigInt radicand = 0;
    std::size_t terms = 0;
    bool grouped = false;
    if (peek('(')) {
      take();
      grouped = true;
      terms = parse_sum(rational_part, radical_coef, radicand);
      expect(')');
    } else {
      terms = parse_sum(rational_part, radical_coef, radicand);
    }
    BigInt denom = 1;
    if (peek('/')) {
      if (terms > 1 && !grouped) {
        fail("a sum divided by an integer must be parenthesized");
      }
      take();
      denom = parse_uint();
      if (denom == 0) {
        throw Error(ErrorKind::zero_denominator, "literal '" + original_ + "' has denominator 0");
      }
    }
    if (pos_ != src_.size()) fail("unexpected trailing input");
    return Exact::quadratic(outer * rational_part, outer * radical_coef, radicand, denom);
  }

 private:
  std::size_t parse_sum(BigInt& rational_part, BigInt& radical_coef, BigInt& radicand) {
    bool have_rational = false;
    bool have_radical = false;
    std::size_t terms = 0;
    while (true) {
      int sign = 1;
      if (peek('-') || peek('+')) {
        sign = take() == '-' ? -1 : 1;
      } else if (terms > 0) {
        break;
      }
      BigInt coef = 1;
      bool radical = false;
      if (peek_word("sqrt(")) {
        radical = true;
      } else {
        coef = parse_uint();
        if (peek('*')) {
          take();
          if (!peek_word("sqrt(")) fail("expected sqrt( after '*'");
          radical = true;
        }
      }
      if (radical) {
        if (have_radical) fail("at most one radical term is allowed");
        pos_ += 5;
        radicand = parse_uint();
        expect(')');
        radical_coef = sign * coef;
        have_radical = true;
      } else {
        if (have_rational) fail("at most one integer term is allowed");
        rational_part = sign * coef;
        have_rational = true;
      }
      ++terms;
      if (pos_ >= src_.size() || (!peek('-') && !peek('+'))) break;
    }
    return terms;
  }

  BigInt parse_uint() {
    std::size_t start = pos_;
    while (pos_ < src_.size() && src_[pos_] >= '0' && src_[pos_] <= '9') ++pos_;
    if (start == pos_) fail("expected an integer");
    return BigInt(src_.substr(start, pos_ - start));
  }

  bool peek(char ch) const { return pos_ < src_.size() && src_[pos_] == ch; }
  bool peek_word(std::string_view w) const { return src_.compare(pos_, w.size(), w) == 0; }
  char take() { return src_[pos_++]; }
  void expect(char ch) {
    if (!peek(ch)) fail(std::string("expected '") + ch + "'");
    take();
  }
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorKind::parse_error, "literal '" + original_ + "': " + why);
  }

  std::string src_;
  std::string original_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses the exact literal format `(a+b*sqrt(d))/c` and its shortenings.
inline Exact parse_exact(std::string_view text) { return detail::LiteralParser(text).parse(); }

}  // namespace lamo
