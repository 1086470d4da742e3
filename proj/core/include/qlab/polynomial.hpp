#ifndef QLAB_POLYNOMIAL_HPP
#define QLAB_POLYNOMIAL_HPP

#include <complex>
#include <map>
#include <vector>

namespace qlab {

using Complex = std::complex<double>;

/// Integer power by repeated multiplication (exact for small exponents,
/// unlike pow() which round-trips through exp/log).
Complex ipow(Complex base, int e);
double ipow(double base, int e);

/// Exponent pair (i, j) of a monomial x^i y^j, or (m, n) of a normally
/// ordered product a†^m a^n. Ordered by total degree, then by i descending,
/// so map iteration enumerates the graded monomial basis.
struct Exponent2 {
  int i = 0;
  int j = 0;

  int degree() const { return i + j; }

  friend bool operator==(const Exponent2& a, const Exponent2& b) {
    return a.i == b.i && a.j == b.j;
  }
  friend bool operator<(const Exponent2& a, const Exponent2& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a.i > b.i;
  }
};

/// All exponent pairs of total degree <= k in basis order;
/// length (k+1)(k+2)/2.
std::vector<Exponent2> monomial_basis(int k);

/// Sparse real bivariate polynomial in the phase-space variables (x, y).
/// Stored coefficients are never exactly zero.
class Polynomial {
 public:
  Polynomial() = default;

  static Polynomial zero() { return {}; }
  static Polynomial constant(double c);
  static Polynomial monomial(int i, int j, double c = 1.0);
  static Polynomial x() { return monomial(1, 0); }
  static Polynomial y() { return monomial(0, 1); }

  const std::map<Exponent2, double>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Max total degree of a stored term; -1 for the zero polynomial.
  int degree() const;
  double coefficient(int i, int j) const;

  /// Accumulates c onto the (i, j) coefficient, pruning exact zeros.
  void add_term(int i, int j, double c);

  double operator()(double x, double y) const;
  Complex eval_complex(Complex zx, Complex zy) const;

  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  Polynomial& operator*=(const Polynomial& rhs);
  Polynomial& operator*=(double s);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(double s, Polynomial p) { return p *= s; }
  friend Polynomial operator*(Polynomial p, double s) { return p *= s; }
  Polynomial operator-() const;

  Polynomial pow(int e) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.terms_ == b.terms_;
  }

 private:
  std::map<Exponent2, double> terms_;
};

/// Complex coefficients c_{mn} of a normally ordered operator
/// sum c_{mn} a†^m a^n. For coefficients produced from a real Polynomial,
/// c_{mn} == conj(c_{nm}) holds exactly.
class NormalCoeffs {
 public:
  NormalCoeffs() = default;
  explicit NormalCoeffs(std::map<Exponent2, Complex> terms);

  const std::map<Exponent2, Complex>& terms() const { return terms_; }
  bool is_hermitian(double tol = 0.0) const;
  int degree() const;

  /// sum c_{mn} u^m v^n. In a coherent matrix element <&alpha;|..|&beta;>,
  /// u = conj(alpha) and v = beta.
  Complex eval(Complex u, Complex v) const;

 private:
  std::map<Exponent2, Complex> terms_;
};

/// Translates p(x, y) into normally ordered coefficients via the
/// substitution x = (a + a†)/2, y = (a - a†)/(2i); the variables commute
/// under normal ordering, so this is plain binomial expansion.
/// Hermitian symmetry of the result is exact by construction.
NormalCoeffs to_normal_coeffs(const Polynomial& p);

/// Exponent triple of a trivariate monomial x^i y^j z^k.
struct Exponent3 {
  int i = 0;
  int j = 0;
  int k = 0;

  int degree() const { return i + j + k; }

  friend bool operator==(const Exponent3& a, const Exponent3& b) {
    return a.i == b.i && a.j == b.j && a.k == b.k;
  }
  friend bool operator<(const Exponent3& a, const Exponent3& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    if (a.i != b.i) return a.i > b.i;
    return a.j > b.j;
  }
};

/// Sparse real trivariate polynomial, used for homogeneous forms in
/// (x, y, z) such as the Motzkin and Choi-Lam polynomials.
class Polynomial3 {
 public:
  Polynomial3() = default;

  const std::map<Exponent3, double>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;
  void add_term(int i, int j, int k, double c);

  /// Throws qlab::Error unless all stored terms share one total degree.
  void require_homogeneous() const;

 private:
  std::map<Exponent3, double> terms_;
};

/// Substitutes z = zval.
Polynomial dehomogenize(const Polynomial3& p, double zval);

}  // namespace qlab

#endif
