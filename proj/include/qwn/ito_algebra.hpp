#ifndef QWN_ITO_ALGEBRA_HPP
#define QWN_ITO_ALGEBRA_HPP

#include <complex>
#include <map>
#include <string>
#include <string_view>

namespace qwn {

using cplx = std::complex<double>;

// Index of the basis differential dB(m,n): m creation powers, n annihilation
// powers. dB(0,0) = dt, dB(0,1) = dB, dB(1,0) = dB+, dB(1,1) = dLambda.
struct ItoIndex {
  int m = 0;
  int n = 0;

  friend bool operator==(const ItoIndex&, const ItoIndex&) = default;
  friend auto operator<=>(const ItoIndex&, const ItoIndex&) = default;
};

// Finite linear combination of basis differentials with complex
// coefficients, kept canonical: coefficients below 1e-12 in modulus are
// dropped, so equality is coefficient-wise.
class ItoElement {
 public:
  ItoElement() = default;

  static ItoElement basis(ItoIndex index, cplx coefficient = 1.0);
  static ItoElement dt() { return basis({0, 0}); }
  static ItoElement dB() { return basis({0, 1}); }
  static ItoElement dB_dag() { return basis({1, 0}); }
  static ItoElement dLambda() { return basis({1, 1}); }

  const std::map<ItoIndex, cplx>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  cplx coefficient(ItoIndex index) const;

  void add(ItoIndex index, cplx coefficient);

  ItoElement& operator+=(const ItoElement& other);
  ItoElement& operator-=(const ItoElement& other);
  ItoElement& operator*=(cplx scalar);

  friend ItoElement operator+(ItoElement lhs, const ItoElement& rhs) {
    return lhs += rhs;
  }
  friend ItoElement operator-(ItoElement lhs, const ItoElement& rhs) {
    return lhs -= rhs;
  }
  friend ItoElement operator*(cplx scalar, ItoElement element) {
    return element *= scalar;
  }
  friend bool operator==(const ItoElement&, const ItoElement&) = default;

 private:
  std::map<ItoIndex, cplx> terms_;
};

// Multiplication rule for basis differentials,
//   dB(m,n) dB(k,l) = n k dB(m+k-1, n+l-1),
// and the zero element when n k = 0 (no index is formed in that case, so
// the surviving indices are always nonnegative).
ItoElement basis_product(ItoIndex x, ItoIndex y);

// Bilinear extension of basis_product.
ItoElement product(const ItoElement& x, const ItoElement& y);

// (x y) z - x (y z); nonzero values witness the non-associativity.
ItoElement associator(const ItoElement& x, const ItoElement& y,
                      const ItoElement& z);

// dt annihilates everything: checks dt x = x dt = 0.
bool annihilator_check(const ItoElement& x);

// Plain-text rendering, e.g. "4·dB(1,1)" or "(1+2i)·dB(0,1) + -3·dB(2,0)";
// the zero element renders as "0". parse_element inverts render exactly.
std::string render(const ItoElement& element);
ItoElement parse_element(std::string_view text);

}  // namespace qwn

#endif  // QWN_ITO_ALGEBRA_HPP
