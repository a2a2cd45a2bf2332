#pragma once

// Exact scalar substrate: GMP rationals, dense rational vectors and matrices,
// and the extended reals used for support functions and conjugates.

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace polycalc {

// mpq_class keeps numerator/denominator coprime with a positive denominator
// after every arithmetic operation.
using Rational = mpq_class;
using Vec = std::vector<Rational>;
using Matrix = std::vector<Vec>;  // row-major
using VecView = std::span<const Rational>;

// Accepts "p", "-p", "+p" and "p/q". Rejects q == 0 and trailing junk.
Rational parse_rational(std::string_view text);
// "p/q", or "p" when q == 1.
std::string to_string(const Rational& r);

Vec zeros(std::size_t n);
Vec unit(std::size_t n, std::size_t i);
Rational dot(VecView a, VecView b);
Vec add(VecView a, VecView b);
Vec sub(VecView a, VecView b);
Vec scale(VecView a, const Rational& s);
Vec negate(VecView a);
bool is_zero(VecView a);
Vec concat(VecView a, VecView b);
Vec slice(VecView a, std::size_t begin, std::size_t count);

// Smallest positive multiple of `a` with coprime integer entries. Zero stays
// zero.
Vec primitive(VecView a);

// Lexicographic three-way comparison (shorter vectors order first on ties).
std::strong_ordering lex_compare(VecView a, VecView b);
struct LexLess {
  bool operator()(const Vec& a, const Vec& b) const {
    return lex_compare(a, b) < 0;
  }
};

Matrix transpose(const Matrix& m, std::size_t cols);
Vec mat_vec(const Matrix& m, VecView x);
Matrix identity(std::size_t n);

std::string to_string(VecView v);

// Extended reals. Proper functions never take -inf, so +inf + -inf is an
// invalid operation rather than a silently chosen value.
class ExtReal {
 public:
  enum class Kind { kFinite, kPlusInfinity, kMinusInfinity };

  ExtReal() : kind_(Kind::kFinite) {}
  ExtReal(Rational value) : kind_(Kind::kFinite), value_(std::move(value)) {}
  ExtReal(long value) : kind_(Kind::kFinite), value_(value) {}
  ExtReal(int value) : kind_(Kind::kFinite), value_(value) {}

  static ExtReal plus_infinity() { return ExtReal(Kind::kPlusInfinity); }
  static ExtReal minus_infinity() { return ExtReal(Kind::kMinusInfinity); }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::kFinite; }
  bool is_plus_infinity() const { return kind_ == Kind::kPlusInfinity; }
  bool is_minus_infinity() const { return kind_ == Kind::kMinusInfinity; }

  // Throws InvalidOperation when not finite.
  const Rational& value() const;

  friend ExtReal operator+(const ExtReal& a, const ExtReal& b);
  friend ExtReal operator-(const ExtReal& a);
  friend ExtReal operator-(const ExtReal& a, const ExtReal& b) {
    return a + (-b);
  }
  friend bool operator==(const ExtReal& a, const ExtReal& b);
  friend std::strong_ordering operator<=>(const ExtReal& a, const ExtReal& b);

 private:
  explicit ExtReal(Kind kind) : kind_(kind) {}

  Kind kind_;
  Rational value_;
};

// "+inf", "-inf" or the rational string.
std::string to_string(const ExtReal& v);
ExtReal parse_ext_real(std::string_view text);

}  // namespace polycalc
