#pragma once

#include <map>
#include <string>

#include <json.hpp>

namespace coxkl {

// Sparse integer Laurent polynomial in one variable v. The exponent map never
// stores zero coefficients, so default construction gives the zero polynomial
// and operator== is plain member comparison. All arithmetic is exact over the
// integers; coefficients at desk scale stay far below 64 bits.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  explicit LaurentPoly(long long constant);

  // coeff * v^exponent
  static LaurentPoly monomial(long long coeff, int exponent);

  bool is_zero() const { return terms_.empty(); }
  long long coeff(int exponent) const;

  // Degree queries are undefined on zero; they throw std::logic_error rather
  // than invent a sentinel.
  int min_exponent() const;
  int max_exponent() const;

  int term_count() const { return static_cast<int>(terms_.size()); }
  const std::map<int, long long>& terms() const { return terms_; }

  LaurentPoly& operator+=(const LaurentPoly& other);
  LaurentPoly& operator-=(const LaurentPoly& other);
  LaurentPoly& operator*=(const LaurentPoly& other);
  LaurentPoly& operator*=(long long scalar);

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) {
    a += b;
    return a;
  }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) {
    a -= b;
    return a;
  }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(LaurentPoly a, long long scalar) {
    a *= scalar;
    return a;
  }
  LaurentPoly operator-() const;

  // Multiply by v^k.
  LaurentPoly shifted(int k) const;

  // Substitute v -> v^factor (exponents scale, coefficients unchanged).
  // Requires factor != 0.
  LaurentPoly stretched(int factor) const;

  bool operator==(const LaurentPoly&) const = default;

  // "v^-3 + 2*v^-1" style: exponent-ascending, unit coefficients elided,
  // exponents 0 and 1 written as plain integer and "v". Zero prints "0".
  std::string to_string() const;

  // {"-3": 1, "-1": 2}; zero serializes as the empty object.
  nlohmann::json to_json() const;
  static LaurentPoly from_json(const nlohmann::json& doc);

  // Inverse of to_string (whitespace-tolerant). Throws std::invalid_argument
  // on anything it cannot read back.
  static LaurentPoly parse(const std::string& text);

 private:
  std::map<int, long long> terms_;
};

}  // namespace coxkl
