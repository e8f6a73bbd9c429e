#include "qwn/ito_algebra.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <vector>

#include "qwn/errors.hpp"

namespace qwn {

namespace {

constexpr double kZeroThreshold = 1e-12;

std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string format_coefficient(cplx c) {
  if (c.imag() == 0.0) {
    return format_real(c.real());
  }
  std::string s = "(" + format_real(c.real());
  if (!std::signbit(c.imag())) s += "+";
  s += format_real(c.imag()) + "i)";
  return s;
}

void skip_spaces(std::string_view& s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
}

double parse_real(std::string_view& s) {
  char* end = nullptr;
  const double value = std::strtod(s.data(), &end);
  if (end == s.data()) {
    throw InvalidArgument("expected a number in Ito element: '" +
                          std::string(s) + "'");
  }
  s.remove_prefix(static_cast<std::size_t>(end - s.data()));
  return value;
}

cplx parse_coefficient(std::string_view& s) {
  skip_spaces(s);
  if (!s.empty() && s.front() == '(') {
    s.remove_prefix(1);
    const double re = parse_real(s);
    const double im = parse_real(s);  // sign carried by the literal
    if (s.size() < 2 || s[0] != 'i' || s[1] != ')') {
      throw InvalidArgument("malformed complex coefficient in Ito element");
    }
    s.remove_prefix(2);
    return {re, im};
  }
  return {parse_real(s), 0.0};
}

int parse_int(std::string_view& s) {
  char* end = nullptr;
  const long value = std::strtol(s.data(), &end, 10);
  if (end == s.data()) {
    throw InvalidArgument("expected an index in Ito element");
  }
  s.remove_prefix(static_cast<std::size_t>(end - s.data()));
  return static_cast<int>(value);
}

}  // namespace

ItoElement ItoElement::basis(ItoIndex index, cplx coefficient) {
  if (index.m < 0 || index.n < 0) {
    throw InvalidArgument("Ito indices must be nonnegative");
  }
  ItoElement e;
  e.add(index, coefficient);
  return e;
}

cplx ItoElement::coefficient(ItoIndex index) const {
  const auto it = terms_.find(index);
  return it == terms_.end() ? cplx{0.0, 0.0} : it->second;
}

void ItoElement::add(ItoIndex index, cplx coefficient) {
  auto [it, inserted] = terms_.try_emplace(index, coefficient);
  if (!inserted) it->second += coefficient;
  if (std::abs(it->second) <= kZeroThreshold) terms_.erase(it);
}

ItoElement& ItoElement::operator+=(const ItoElement& other) {
  if (this == &other) return *this *= 2.0;  // aliasing would break iteration
  for (const auto& [index, coeff] : other.terms_) add(index, coeff);
  return *this;
}

ItoElement& ItoElement::operator-=(const ItoElement& other) {
  if (this == &other) {  // x - x is exactly zero
    terms_.clear();
    return *this;
  }
  for (const auto& [index, coeff] : other.terms_) add(index, -coeff);
  return *this;
}

ItoElement& ItoElement::operator*=(cplx scalar) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= scalar;
    if (std::abs(it->second) <= kZeroThreshold) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
  return *this;
}

ItoElement basis_product(ItoIndex x, ItoIndex y) {
  const double structure = static_cast<double>(x.n) * y.m;
  if (structure == 0.0) {
    return ItoElement{};  // coefficient nk vanishes; no index is formed
  }
  return ItoElement::basis({x.m + y.m - 1, x.n + y.n - 1}, structure);
}

ItoElement product(const ItoElement& x, const ItoElement& y) {
  ItoElement out;
  for (const auto& [xi, xc] : x.terms()) {
    for (const auto& [yi, yc] : y.terms()) {
      ItoElement term = basis_product(xi, yi);
      term *= xc * yc;
      out += term;
    }
  }
  return out;
}

ItoElement associator(const ItoElement& x, const ItoElement& y,
                      const ItoElement& z) {
  return product(product(x, y), z) - product(x, product(y, z));
}

bool annihilator_check(const ItoElement& x) {
  const ItoElement dt = ItoElement::dt();
  return product(dt, x).is_zero() && product(x, dt).is_zero();
}

std::string render(const ItoElement& element) {
  if (element.is_zero()) return "0";
  std::string out;
  for (const auto& [index, coeff] : element.terms()) {
    if (!out.empty()) out += " + ";
    out += format_coefficient(coeff);
    out += "·dB(" + std::to_string(index.m) + "," +
           std::to_string(index.n) + ")";
  }
  return out;
}

ItoElement parse_element(std::string_view text) {
  skip_spaces(text);
  if (text == "0") return ItoElement{};
  ItoElement out;
  while (true) {
    const cplx coeff = parse_coefficient(text);
    if (text.rfind("·dB(", 0) != 0) {
      throw InvalidArgument("expected '·dB(m,n)' in Ito element");
    }
    text.remove_prefix(std::string_view("·dB(").size());
    const int m = parse_int(text);
    if (text.empty() || text.front() != ',') {
      throw InvalidArgument("expected ',' in Ito index");
    }
    text.remove_prefix(1);
    const int n = parse_int(text);
    if (text.empty() || text.front() != ')') {
      throw InvalidArgument("expected ')' in Ito index");
    }
    if (m < 0 || n < 0) {
      throw InvalidArgument("Ito indices must be nonnegative");
    }
    text.remove_prefix(1);
    out.add({m, n}, coeff);
    skip_spaces(text);
    if (text.empty()) break;
    if (text.rfind("+ ", 0) != 0) {
      throw InvalidArgument("expected ' + ' between Ito terms");
    }
    text.remove_prefix(2);
  }
  return out;
}

}  // namespace qwn
