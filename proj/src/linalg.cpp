#include "troplin/linalg.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

namespace troplin {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::NonPositiveParameter: return "NonPositiveParameter";
    case ErrorCode::DegenerateLattice: return "DegenerateLattice";
    case ErrorCode::NotUnimodular: return "NotUnimodular";
    case ErrorCode::NonDiscretePeriodLattice: return "NonDiscretePeriodLattice";
    case ErrorCode::IrrationalData: return "IrrationalData";
    case ErrorCode::UnsupportedManifoldKind: return "UnsupportedManifoldKind";
    case ErrorCode::UnknownGenerator: return "UnknownGenerator";
    case ErrorCode::InvalidCurve: return "InvalidCurve";
    case ErrorCode::NotAForm: return "NotAForm";
    case ErrorCode::WrongAmbient: return "WrongAmbient";
    case ErrorCode::NotHorizontal: return "NotHorizontal";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotADeformation: return "NotADeformation";
    case ErrorCode::FormNotInvariant: return "FormNotInvariant";
    case ErrorCode::NonZeroDegree: return "NonZeroDegree";
    case ErrorCode::NotPrincipal: return "NotPrincipal";
    case ErrorCode::SpecialFiber: return "SpecialFiber";
    case ErrorCode::OnSection: return "OnSection";
    case ErrorCode::ValidationFailed: return "ValidationFailed";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

std::string to_string(const Integer& z) { return z.str(); }

std::string to_string(const Rational& r) {
  const Integer num = boost::multiprecision::numerator(r);
  const Integer den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isdigit(c) != 0;
  });
}

Integer parse_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s))
    throw Error(ErrorCode::ParseError,
                "not an exact rational: '" + std::string(whole) + "'");
  Integer z{std::string(s)};
  return negative ? Integer(-z) : z;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
    text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.remove_suffix(1);
  if (text.empty()) throw Error(ErrorCode::ParseError, "empty rational");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(text.substr(0, slash), text);
    std::string_view den_text = text.substr(slash + 1);
    if (!all_digits(den_text))
      throw Error(ErrorCode::ParseError,
                  "bad denominator in '" + std::string(text) + "'");
    Integer den(std::string{den_text});
    if (den == 0)
      throw Error(ErrorCode::ParseError, "zero denominator in '" +
                                             std::string(text) + "'");
    return Rational(num, den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    bool negative = !int_part.empty() && int_part.front() == '-';
    if (!int_part.empty() && (int_part.front() == '-' || int_part.front() == '+'))
      int_part.remove_prefix(1);
    if ((!int_part.empty() && !all_digits(int_part)) || !all_digits(frac))
      throw Error(ErrorCode::ParseError,
                  "not an exact rational: '" + std::string(text) + "'");
    Integer scale = boost::multiprecision::pow(Integer(10),
                                               static_cast<unsigned>(frac.size()));
    Integer whole = int_part.empty() ? Integer(0) : Integer(std::string(int_part));
    Rational r(whole * scale + Integer(std::string(frac)), scale);
    return negative ? Rational(-r) : r;
  }
  return Rational(parse_integer(text, text));
}

Integer floor(const Rational& r) {
  const Integer num = boost::multiprecision::numerator(r);
  const Integer den = boost::multiprecision::denominator(r);
  Integer q = num / den;  // truncates toward zero
  if (num < 0 && q * den != num) q -= 1;
  return q;
}

Rational mod(const Rational& r, const Rational& modulus) {
  if (modulus <= 0)
    throw Error(ErrorCode::NonPositiveParameter, "modulus must be positive");
  return r - Rational(floor(r / modulus)) * modulus;
}

RatVector to_rational(std::span<const Integer> v) {
  return RatVector(v.begin(), v.end());
}

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
  return r;
}

namespace {

template <class T>
void swap_rows(Matrix<T>& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  auto ra = m.row(a);
  auto rb = m.row(b);
  std::swap_ranges(ra.begin(), ra.end(), rb.begin());
}

// row_target -= factor * row_source
template <class T>
void axpy_row(Matrix<T>& m, std::size_t target, std::size_t source,
              const T& factor) {
  if (factor == 0) return;
  for (std::size_t j = 0; j < m.cols(); ++j) m(target, j) -= factor * m(source, j);
}

template <class T>
void negate_row(Matrix<T>& m, std::size_t i) {
  for (auto& x : m.row(i)) x = -x;
}

// Floor division for integers.
Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

}  // namespace

HermiteForm hermite_normal_form(const IntMatrix& m) {
  HermiteForm out{m, IntMatrix::identity(m.rows()), 0};
  IntMatrix& H = out.H;
  IntMatrix& U = out.U;
  const std::size_t rows = H.rows();
  std::size_t r = 0;
  for (std::size_t c = 0; c < H.cols() && r < rows; ++c) {
    // Euclid on column c among rows r.. until a single nonzero entry remains.
    while (true) {
      std::size_t best = rows;
      for (std::size_t i = r; i < rows; ++i) {
        if (H(i, c) == 0) continue;
        if (best == rows || abs(H(i, c)) < abs(H(best, c))) best = i;
      }
      if (best == rows) break;
      swap_rows(H, r, best);
      swap_rows(U, r, best);
      bool done = true;
      for (std::size_t i = r + 1; i < rows; ++i) {
        if (H(i, c) == 0) continue;
        Integer q = floor_div(H(i, c), H(r, c));
        axpy_row(H, i, r, q);
        axpy_row(U, i, r, q);
        if (H(i, c) != 0) done = false;
      }
      if (done) break;
    }
    if (H(r, c) == 0) continue;
    if (H(r, c) < 0) {
      negate_row(H, r);
      negate_row(U, r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      Integer q = floor_div(H(i, c), H(r, c));
      axpy_row(H, i, r, q);
      axpy_row(U, i, r, q);
    }
    ++r;
  }
  out.rank = r;
  return out;
}

Integer content(std::span<const Integer> v) {
  Integer g = 0;
  for (const auto& x : v) g = gcd(g, abs(x));
  return g;
}

std::vector<IntVector> integer_kernel(const IntMatrix& m) {
  const std::size_t n = m.cols();
  HermiteForm hnf = hermite_normal_form(m.transpose());
  IntMatrix basis(0, n);
  for (std::size_t i = hnf.rank; i < n; ++i) {
    IntVector row = hnf.U.row_vector(i);
    Integer g = content(row);
    if (g > 1)
      for (auto& x : row) x /= g;
    basis.append_row(row);
  }
  if (basis.rows() == 0) return {};
  // Canonical representative of the lattice: its own Hermite form.
  HermiteForm canon = hermite_normal_form(basis);
  std::vector<IntVector> out;
  for (std::size_t i = 0; i < canon.rank; ++i) out.push_back(canon.H.row_vector(i));
  return out;
}

RowEchelon reduced_row_echelon(const RatMatrix& m) {
  RowEchelon out{m, {}};
  RatMatrix& A = out.reduced;
  std::size_t r = 0;
  for (std::size_t c = 0; c < A.cols() && r < A.rows(); ++c) {
    std::size_t p = r;
    while (p < A.rows() && A(p, c) == 0) ++p;
    if (p == A.rows()) continue;
    swap_rows(A, r, p);
    const Rational pivot = A(r, c);
    for (auto& x : A.row(r)) x /= pivot;
    for (std::size_t i = 0; i < A.rows(); ++i)
      if (i != r && A(i, c) != 0) axpy_row(A, i, r, Rational(A(i, c)));
    out.pivots.push_back(c);
    ++r;
  }
  return out;
}

std::size_t rank(const RatMatrix& m) { return reduced_row_echelon(m).pivots.size(); }

std::vector<RatVector> rational_kernel(const RatMatrix& m) {
  RowEchelon e = reduced_row_echelon(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<RatVector> out;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    RatVector v(m.cols());
    v[f] = 1;
    for (std::size_t k = 0; k < e.pivots.size(); ++k) v[e.pivots[k]] = -e.reduced(k, f);
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<RatVector> span_basis(std::span<const RatVector> vectors,
                                  std::size_t dim) {
  RatMatrix m(0, dim);
  for (const auto& v : vectors) m.append_row(v);
  RowEchelon e = reduced_row_echelon(m);
  std::vector<RatVector> out;
  for (std::size_t i = 0; i < e.pivots.size(); ++i) out.push_back(e.reduced.row_vector(i));
  return out;
}

bool in_span(std::span<const RatVector> basis, std::span<const Rational> v) {
  RatMatrix m(0, v.size());
  for (const auto& b : basis) m.append_row(b);
  const std::size_t before = rank(m);
  m.append_row(v);
  return rank(m) == before;
}

Rational determinant(const RatMatrix& m) {
  if (m.rows() != m.cols())
    throw Error(ErrorCode::DimensionMismatch, "determinant of non-square matrix");
  RatMatrix A = m;
  Rational det = 1;
  const std::size_t n = A.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && A(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      swap_rows(A, c, p);
      det = -det;
    }
    det *= A(c, c);
    for (std::size_t i = c + 1; i < n; ++i)
      if (A(i, c) != 0) axpy_row(A, i, c, Rational(A(i, c) / A(c, c)));
  }
  return det;
}

Integer determinant(const IntMatrix& m) {
  Rational d = determinant(to_rational(m));
  return boost::multiprecision::numerator(d);
}

RatMatrix inverse(const RatMatrix& m) {
  if (m.rows() != m.cols())
    throw Error(ErrorCode::DimensionMismatch, "inverse of non-square matrix");
  const std::size_t n = m.rows();
  RatMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  RowEchelon e = reduced_row_echelon(aug);
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1)
    throw Error(ErrorCode::DegenerateLattice, "matrix is singular");
  RatMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
  return inv;
}

IntMatrix inverse_unimodular(const IntMatrix& m) {
  if (m.rows() != m.cols() || abs(determinant(m)) != 1)
    throw Error(ErrorCode::NotUnimodular, "matrix is not in GL(n, Z)");
  RatMatrix inv = inverse(to_rational(m));
  IntMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      out(i, j) = boost::multiprecision::numerator(inv(i, j));
  return out;
}

PrimitivePart primitive_part(std::span<const Integer> v) {
  Integer g = content(v);
  if (g == 0) throw Error(ErrorCode::ZeroVector, "primitive part of the zero vector");
  PrimitivePart out{IntVector(v.begin(), v.end()), g};
  for (auto& x : out.direction) x /= g;
  return out;
}

RationalDirection rational_direction(std::span<const Rational> v) {
  Integer lcm_den = 1;
  for (const auto& x : v) lcm_den = lcm(lcm_den, boost::multiprecision::denominator(x));
  IntVector scaled;
  scaled.reserve(v.size());
  for (const auto& x : v) scaled.push_back(boost::multiprecision::numerator(Rational(x * lcm_den)));
  PrimitivePart p = primitive_part(scaled);
  return {std::move(p.direction), Rational(p.multiple, lcm_den)};
}

bool is_zero(std::span<const Rational> v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

bool is_zero(std::span<const Integer> v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

std::vector<std::vector<std::size_t>> combinations(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    out.push_back(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

}  // namespace troplin
