#include "qlab/polynomial.hpp"

#include <cmath>
#include <cstdlib>

#include "qlab/errors.hpp"

namespace qlab {

namespace {

void check_nonneg(int i, int j) {
  if (i < 0 || j < 0) throw Error("polynomial exponents must be nonnegative");
}

// Pascal triangle in doubles; exact while entries stay below 2^53
// (n <= 56), which covers every degree this library produces.
double binomial(int n, int k) {
  static const std::vector<std::vector<double>> table = [] {
    std::vector<std::vector<double>> t(65);
    for (int r = 0; r <= 64; ++r) {
      t[r].resize(r + 1);
      t[r][0] = t[r][r] = 1.0;
      for (int c = 1; c < r; ++c) t[r][c] = t[r - 1][c - 1] + t[r - 1][c];
    }
    return t;
  }();
  if (k < 0 || k > n) return 0.0;
  if (n < static_cast<int>(table.size())) return table[n][k];
  double acc = 1.0;
  for (int t = 1; t <= k; ++t) acc = acc * (n - k + t) / t;
  return acc;
}

}  // namespace

Complex ipow(Complex base, int e) {
  Complex acc(1.0, 0.0);
  for (int t = 0; t < e; ++t) acc *= base;
  return acc;
}

double ipow(double base, int e) {
  double acc = 1.0;
  for (int t = 0; t < e; ++t) acc *= base;
  return acc;
}

std::vector<Exponent2> monomial_basis(int k) {
  if (k < 0) throw Error("monomial_basis: negative degree bound");
  std::vector<Exponent2> out;
  out.reserve(static_cast<std::size_t>((k + 1) * (k + 2) / 2));
  for (int d = 0; d <= k; ++d)
    for (int i = d; i >= 0; --i) out.push_back({i, d - i});
  return out;
}

Polynomial Polynomial::constant(double c) {
  Polynomial p;
  p.add_term(0, 0, c);
  return p;
}

Polynomial Polynomial::monomial(int i, int j, double c) {
  Polynomial p;
  p.add_term(i, j, c);
  return p;
}

int Polynomial::degree() const {
  if (terms_.empty()) return -1;
  return terms_.rbegin()->first.degree();
}

double Polynomial::coefficient(int i, int j) const {
  const auto it = terms_.find({i, j});
  return it == terms_.end() ? 0.0 : it->second;
}

void Polynomial::add_term(int i, int j, double c) {
  check_nonneg(i, j);
  if (c == 0.0) return;
  const Exponent2 key{i, j};
  const auto [it, inserted] = terms_.emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0.0) terms_.erase(it);
  }
}

double Polynomial::operator()(double x, double y) const {
  double acc = 0.0;
  for (const auto& [e, c] : terms_) acc += c * ipow(x, e.i) * ipow(y, e.j);
  return acc;
}

Complex Polynomial::eval_complex(Complex zx, Complex zy) const {
  Complex acc(0.0, 0.0);
  for (const auto& [e, c] : terms_) acc += c * ipow(zx, e.i) * ipow(zy, e.j);
  return acc;
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  for (const auto& [e, c] : rhs.terms_) add_term(e.i, e.j, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
  for (const auto& [e, c] : rhs.terms_) add_term(e.i, e.j, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_)
      out.add_term(ea.i + eb.i, ea.j + eb.j, ca * cb);
  return out;
}

Polynomial& Polynomial::operator*=(const Polynomial& rhs) {
  *this = *this * rhs;
  return *this;
}

Polynomial& Polynomial::operator*=(double s) {
  if (s == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

Polynomial Polynomial::pow(int e) const {
  if (e < 0) throw Error("Polynomial::pow: negative exponent");
  Polynomial acc = Polynomial::constant(1.0);
  for (int t = 0; t < e; ++t) acc *= *this;
  return acc;
}

NormalCoeffs::NormalCoeffs(std::map<Exponent2, Complex> terms)
    : terms_(std::move(terms)) {
  for (auto it = terms_.begin(); it != terms_.end();)
    it = (it->second == Complex(0.0, 0.0)) ? terms_.erase(it) : std::next(it);
}

bool NormalCoeffs::is_hermitian(double tol) const {
  for (const auto& [e, c] : terms_) {
    const auto it = terms_.find({e.j, e.i});
    const Complex mirror = it == terms_.end() ? Complex(0, 0) : it->second;
    if (std::abs(c - std::conj(mirror)) > tol) return false;
  }
  return true;
}

int NormalCoeffs::degree() const {
  int deg = -1;
  for (const auto& [e, c] : terms_) deg = std::max(deg, e.degree());
  return deg;
}

Complex NormalCoeffs::eval(Complex u, Complex v) const {
  Complex acc(0.0, 0.0);
  for (const auto& [e, c] : terms_) acc += c * ipow(u, e.i) * ipow(v, e.j);
  return acc;
}

NormalCoeffs to_normal_coeffs(const Polynomial& p) {
  // x^i y^j = 2^-(i+j) (-i)^j sum_{r,s} C(i,r) C(j,s) (-1)^(j-s)
  //           abar^{(i-r)+(j-s)} a^{r+s}.
  // Only the m >= n half is accumulated; the lower half is mirrored by
  // conjugation and diagonal entries are realized, so Hermitian symmetry
  // holds exactly rather than up to summation order.
  static const Complex minus_i_pow[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
  std::map<Exponent2, Complex> upper;
  for (const auto& [e, coeff] : p.terms()) {
    const double scale = std::ldexp(1.0, -(e.i + e.j));
    const Complex phase = minus_i_pow[e.j % 4];
    for (int r = 0; r <= e.i; ++r) {
      for (int s = 0; s <= e.j; ++s) {
        const int m = (e.i - r) + (e.j - s);
        const int n = r + s;
        if (m < n) continue;
        const double sign = ((e.j - s) % 2 == 0) ? 1.0 : -1.0;
        const double mag = coeff * scale * sign * binomial(e.i, r) * binomial(e.j, s);
        upper[{m, n}] += mag * phase;
      }
    }
  }
  std::map<Exponent2, Complex> full;
  for (const auto& [e, c] : upper) {
    if (c == Complex(0.0, 0.0)) continue;
    if (e.i == e.j) {
      if (c.real() != 0.0) full[e] = Complex(c.real(), 0.0);
    } else {
      full[e] = c;
      full[{e.j, e.i}] = std::conj(c);
    }
  }
  return NormalCoeffs(std::move(full));
}

int Polynomial3::degree() const {
  if (terms_.empty()) return -1;
  return terms_.rbegin()->first.degree();
}

void Polynomial3::add_term(int i, int j, int k, double c) {
  if (i < 0 || j < 0 || k < 0) throw Error("polynomial exponents must be nonnegative");
  if (c == 0.0) return;
  const Exponent3 key{i, j, k};
  const auto [it, inserted] = terms_.emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0.0) terms_.erase(it);
  }
}

void Polynomial3::require_homogeneous() const {
  if (terms_.empty()) return;
  const int d = terms_.begin()->first.degree();
  for (const auto& [e, c] : terms_)
    if (e.degree() != d) throw Error("Polynomial3: form is not homogeneous");
}

Polynomial dehomogenize(const Polynomial3& p, double zval) {
  Polynomial out;
  for (const auto& [e, c] : p.terms()) out.add_term(e.i, e.j, c * ipow(zval, e.k));
  return out;
}

}  // namespace qlab
