#include "coxkl/laurent.hpp"

#include <cctype>
#include <cstdlib>
#include <stdexcept>

namespace coxkl {

LaurentPoly::LaurentPoly(long long constant) {
  if (constant != 0) terms_[0] = constant;
}

LaurentPoly LaurentPoly::monomial(long long coeff, int exponent) {
  LaurentPoly p;
  if (coeff != 0) p.terms_[exponent] = coeff;
  return p;
}

long long LaurentPoly::coeff(int exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? 0 : it->second;
}

int LaurentPoly::min_exponent() const {
  if (terms_.empty()) throw std::logic_error("min_exponent of zero polynomial");
  return terms_.begin()->first;
}

int LaurentPoly::max_exponent() const {
  if (terms_.empty()) throw std::logic_error("max_exponent of zero polynomial");
  return terms_.rbegin()->first;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& other) {
  for (const auto& [e, c] : other.terms_) {
    long long sum = (terms_[e] += c);
    if (sum == 0) terms_.erase(e);
  }
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& other) {
  for (const auto& [e, c] : other.terms_) {
    long long sum = (terms_[e] -= c);
    if (sum == 0) terms_.erase(e);
  }
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly out;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      long long sum = (out.terms_[ea + eb] += ca * cb);
      if (sum == 0) out.terms_.erase(ea + eb);
    }
  return out;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& other) {
  *this = *this * other;
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(long long scalar) {
  if (scalar == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= scalar;
  return *this;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

LaurentPoly LaurentPoly::shifted(int k) const {
  LaurentPoly out;
  for (const auto& [e, c] : terms_) out.terms_[e + k] = c;
  return out;
}

LaurentPoly LaurentPoly::stretched(int factor) const {
  if (factor == 0) throw std::invalid_argument("stretch factor must be nonzero");
  LaurentPoly out;
  for (const auto& [e, c] : terms_) out.terms_[e * factor] = c;
  return out;
}

std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    long long mag = c < 0 ? -c : c;
    if (first) {
      if (c < 0) out += "-";
      first = false;
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (e == 0) {
      out += std::to_string(mag);
      continue;
    }
    if (mag != 1) {
      out += std::to_string(mag);
      out += "*";
    }
    out += "v";
    if (e != 1) {
      out += "^";
      out += std::to_string(e);
    }
  }
  return out;
}

nlohmann::json LaurentPoly::to_json() const {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& [e, c] : terms_) out[std::to_string(e)] = c;
  return out;
}

LaurentPoly LaurentPoly::from_json(const nlohmann::json& doc) {
  if (!doc.is_object())
    throw std::invalid_argument("polynomial JSON must be an object");
  LaurentPoly out;
  for (const auto& [key, val] : doc.items()) {
    if (!val.is_number_integer())
      throw std::invalid_argument("polynomial coefficient must be an integer");
    long long c = val.get<long long>();
    int e = 0;
    try {
      size_t used = 0;
      e = std::stoi(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad exponent key '" + key + "'");
    }
    if (c != 0) out.terms_[e] = c;
  }
  return out;
}

namespace {

// Cursor over the to_string grammar: sign-separated terms, each an optional
// integer, optional '*', optional v with optional ^exponent.
struct Cursor {
  const std::string& text;
  size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool done() {
    skip_ws();
    return pos >= text.size();
  }
  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  long long integer() {
    skip_ws();
    size_t start = pos;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start || !std::isdigit(static_cast<unsigned char>(text[pos - 1])))
      throw std::invalid_argument("expected integer at position " + std::to_string(start) +
                                  " in '" + text + "'");
    return std::stoll(text.substr(start, pos - start));
  }
  bool peek_digit() {
    skip_ws();
    return pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]));
  }
};

}  // namespace

LaurentPoly LaurentPoly::parse(const std::string& text) {
  Cursor cur{text};
  LaurentPoly out;
  if (cur.done()) throw std::invalid_argument("empty polynomial text");
  bool negative = cur.eat('-');
  while (true) {
    long long mag = 1;
    bool saw_coeff = false;
    if (cur.peek_digit()) {
      mag = cur.integer();
      saw_coeff = true;
      cur.eat('*');
    }
    int e = 0;
    if (cur.eat('v')) {
      e = cur.eat('^') ? static_cast<int>(cur.integer()) : 1;
    } else if (!saw_coeff) {
      throw std::invalid_argument("expected term at position " + std::to_string(cur.pos) +
                                  " in '" + text + "'");
    }
    long long c = negative ? -mag : mag;
    long long sum = (out.terms_[e] += c);
    if (sum == 0) out.terms_.erase(e);
    if (cur.done()) break;
    if (cur.eat('+'))
      negative = false;
    else if (cur.eat('-'))
      negative = true;
    else
      throw std::invalid_argument("expected '+' or '-' at position " +
                                  std::to_string(cur.pos) + " in '" + text + "'");
  }
  return out;
}

}  // namespace coxkl
