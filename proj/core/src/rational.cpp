#include "polycalc/rational.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "polycalc/errors.hpp"

namespace polycalc {
namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isdigit(static_cast<unsigned char>(c)) != 0;
  });
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  const std::string_view num_text = body.substr(0, slash);
  const std::string_view den_text =
      slash == std::string_view::npos ? std::string_view("1")
                                      : body.substr(slash + 1);
  if (!all_digits(num_text) || !all_digits(den_text)) {
    fail(ErrorKind::kParseError,
         "malformed rational \"" + std::string(text) + "\"");
  }
  mpz_class num(std::string(num_text), 10);
  mpz_class den(std::string(den_text), 10);
  if (den == 0) {
    fail(ErrorKind::kParseError,
         "zero denominator in \"" + std::string(text) + "\"");
  }
  if (negative) num = -num;
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) { return r.get_str(10); }

Vec zeros(std::size_t n) { return Vec(n, Rational(0)); }

Vec unit(std::size_t n, std::size_t i) {
  Vec v = zeros(n);
  v[i] = 1;
  return v;
}

Rational dot(VecView a, VecView b) {
  require_dim(b.size(), a.size(), "dot");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) != 0 && sgn(b[i]) != 0) s += a[i] * b[i];
  }
  return s;
}

Vec add(VecView a, VecView b) {
  require_dim(b.size(), a.size(), "add");
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vec sub(VecView a, VecView b) {
  require_dim(b.size(), a.size(), "sub");
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vec scale(VecView a, const Rational& s) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
  return r;
}

Vec negate(VecView a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

bool is_zero(VecView a) {
  return std::all_of(a.begin(), a.end(),
                     [](const Rational& x) { return sgn(x) == 0; });
}

Vec concat(VecView a, VecView b) {
  Vec r(a.begin(), a.end());
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

Vec slice(VecView a, std::size_t begin, std::size_t count) {
  return Vec(a.begin() + static_cast<std::ptrdiff_t>(begin),
             a.begin() + static_cast<std::ptrdiff_t>(begin + count));
}

Vec primitive(VecView a) {
  mpz_class den_lcm = 1;
  for (const Rational& x : a) {
    if (sgn(x) != 0) {
      mpz_class d = x.get_den();
      mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), d.get_mpz_t());
    }
  }
  mpz_class num_gcd = 0;
  std::vector<mpz_class> ints(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) == 0) continue;
    ints[i] = a[i].get_num() * (den_lcm / a[i].get_den());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), ints[i].get_mpz_t());
  }
  Vec r(a.size(), Rational(0));
  if (num_gcd == 0) return r;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) != 0) r[i] = Rational(mpz_class(ints[i] / num_gcd));
  }
  return r;
}

std::strong_ordering lex_compare(VecView a, VecView b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    const int c = cmp(a[i], b[i]);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
  }
  return a.size() <=> b.size();
}

Matrix transpose(const Matrix& m, std::size_t cols) {
  Matrix t(cols, zeros(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i) {
    require_dim(m[i].size(), cols, "transpose");
    for (std::size_t j = 0; j < cols; ++j) t[j][i] = m[i][j];
  }
  return t;
}

Vec mat_vec(const Matrix& m, VecView x) {
  Vec r(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) r[i] = dot(m[i], x);
  return r;
}

Matrix identity(std::size_t n) {
  Matrix m(n, zeros(n));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

std::string to_string(VecView v) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out << ", ";
    out << to_string(v[i]);
  }
  out << ')';
  return out.str();
}

const Rational& ExtReal::value() const {
  if (kind_ != Kind::kFinite) {
    fail(ErrorKind::kInvalidOperation,
         "value() of non-finite extended real " + to_string(*this));
  }
  return value_;
}

ExtReal operator+(const ExtReal& a, const ExtReal& b) {
  using K = ExtReal::Kind;
  if ((a.kind_ == K::kPlusInfinity && b.kind_ == K::kMinusInfinity) ||
      (a.kind_ == K::kMinusInfinity && b.kind_ == K::kPlusInfinity)) {
    fail(ErrorKind::kInvalidOperation, "+inf + -inf is undefined");
  }
  if (a.kind_ != K::kFinite) return a;
  if (b.kind_ != K::kFinite) return b;
  return ExtReal(Rational(a.value_ + b.value_));
}

ExtReal operator-(const ExtReal& a) {
  using K = ExtReal::Kind;
  switch (a.kind_) {
    case K::kPlusInfinity: return ExtReal::minus_infinity();
    case K::kMinusInfinity: return ExtReal::plus_infinity();
    case K::kFinite: break;
  }
  return ExtReal(Rational(-a.value_));
}

bool operator==(const ExtReal& a, const ExtReal& b) {
  if (a.kind_ != b.kind_) return false;
  return a.kind_ != ExtReal::Kind::kFinite || a.value_ == b.value_;
}

std::strong_ordering operator<=>(const ExtReal& a, const ExtReal& b) {
  auto rank = [](ExtReal::Kind k) {
    switch (k) {
      case ExtReal::Kind::kMinusInfinity: return 0;
      case ExtReal::Kind::kFinite: return 1;
      case ExtReal::Kind::kPlusInfinity: return 2;
    }
    return 1;
  };
  if (a.kind_ != b.kind_) return rank(a.kind_) <=> rank(b.kind_);
  if (a.kind_ != ExtReal::Kind::kFinite) return std::strong_ordering::equal;
  return cmp(a.value_, b.value_) <=> 0;
}

std::string to_string(const ExtReal& v) {
  if (v.is_plus_infinity()) return "+inf";
  if (v.is_minus_infinity()) return "-inf";
  return to_string(v.value());
}

ExtReal parse_ext_real(std::string_view text) {
  if (text == "+inf" || text == "inf") return ExtReal::plus_infinity();
  if (text == "-inf") return ExtReal::minus_infinity();
  return ExtReal(parse_rational(text));
}

}  // namespace polycalc
