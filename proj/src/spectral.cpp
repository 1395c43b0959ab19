#include "pst/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "pst/error.hpp"

namespace pst {

namespace {

constexpr double kSymmetryTolerance = 1e-12;
// Components at or below this magnitude do not fix an eigenvector's sign.
constexpr double kSignZero = 1e-10;
// Relative gap below which two eigenvalues count as one degenerate cluster.
constexpr double kDegenerateGap = 1e-10;

void require_size(std::size_t n) {
  if (n == 0) throw PreconditionError("matrix dimension must be positive");
}

}  // namespace

// RealSymmetricMatrix

RealSymmetricMatrix::RealSymmetricMatrix(std::size_t n) : n_(n), a_(n * n, 0.0) {
  require_size(n);
}

RealSymmetricMatrix::RealSymmetricMatrix(std::size_t n, std::vector<double> row_major)
    : n_(n), a_(std::move(row_major)) {
  require_size(n);
  if (a_.size() != n * n)
    throw PreconditionError("expected " + std::to_string(n * n) + " entries, got " +
                            std::to_string(a_.size()));
  const double scale = std::max(1.0, max_abs());
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j + 1; k < n; ++k) {
      double& x = a_[j * n + k];
      double& y = a_[k * n + j];
      if (!std::isfinite(x) || !std::isfinite(y))
        throw PreconditionError("matrix has non-finite entries");
      if (std::abs(x - y) > kSymmetryTolerance * scale)
        throw PreconditionError("matrix is not symmetric at (" + std::to_string(j + 1) +
                                "," + std::to_string(k + 1) + ")");
      x = y = 0.5 * (x + y);
    }
    if (!std::isfinite(a_[j * n + j])) throw PreconditionError("matrix has non-finite entries");
  }
}

RealSymmetricMatrix RealSymmetricMatrix::identity(std::size_t n) {
  RealSymmetricMatrix m(n);
  for (std::size_t j = 0; j < n; ++j) m.a_[j * n + j] = 1.0;
  return m;
}

RealSymmetricMatrix RealSymmetricMatrix::diagonal(std::span<const double> d) {
  RealSymmetricMatrix m(d.size());
  for (std::size_t j = 0; j < d.size(); ++j) m.a_[j * d.size() + j] = d[j];
  return m;
}

void RealSymmetricMatrix::set(std::size_t j, std::size_t k, double value) {
  a_[j * n_ + k] = value;
  a_[k * n_ + j] = value;
}

double RealSymmetricMatrix::max_abs() const noexcept {
  double m = 0.0;
  for (double x : a_) m = std::max(m, std::abs(x));
  return m;
}

RealSymmetricMatrix& RealSymmetricMatrix::operator+=(const RealSymmetricMatrix& other) {
  if (other.n_ != n_) throw PreconditionError("dimension mismatch in matrix sum");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += other.a_[i];
  return *this;
}

RealSymmetricMatrix& RealSymmetricMatrix::operator*=(double s) noexcept {
  for (double& x : a_) x *= s;
  return *this;
}

RealSymmetricMatrix operator+(RealSymmetricMatrix a, const RealSymmetricMatrix& b) {
  a += b;
  return a;
}

RealSymmetricMatrix operator*(double s, RealSymmetricMatrix a) {
  a *= s;
  return a;
}

// ComplexMatrix

ComplexMatrix::ComplexMatrix(std::size_t n) : n_(n), a_(n * n) { require_size(n); }

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n);
  for (std::size_t j = 0; j < n; ++j) m(j, j) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix r(n_);
  for (std::size_t j = 0; j < n_; ++j)
    for (std::size_t k = 0; k < n_; ++k) r(k, j) = std::conj((*this)(j, k));
  return r;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& rhs) const {
  if (rhs.n_ != n_) throw PreconditionError("dimension mismatch in matrix product");
  ComplexMatrix r(n_);
  for (std::size_t j = 0; j < n_; ++j)
    for (std::size_t l = 0; l < n_; ++l) {
      const Complex x = (*this)(j, l);
      for (std::size_t k = 0; k < n_; ++k) r(j, k) += x * rhs(l, k);
    }
  return r;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& rhs) const {
  if (rhs.n_ != n_) throw PreconditionError("dimension mismatch in matrix difference");
  ComplexMatrix r(n_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - rhs.a_[i];
  return r;
}

double ComplexMatrix::max_abs() const noexcept {
  double m = 0.0;
  for (const Complex& z : a_) m = std::max(m, std::abs(z));
  return m;
}

// Eigendecomposition

RealSymmetricMatrix EigenDecomposition::reconstruct() const {
  const std::size_t n = size();
  RealSymmetricMatrix h(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += q(j, a) * eigenvalues[j] * q(j, b);
      h.set(a, b, s);
    }
  return h;
}

EigenDecomposition eig_sym(const RealSymmetricMatrix& h, const JacobiOptions& opts) {
  const std::size_t n = h.size();
  std::vector<double> a(h.data().begin(), h.data().end());
  // v holds eigenvectors as columns while rotating.
  std::vector<double> v(n * n, 0.0);
  for (std::size_t j = 0; j < n; ++j) v[j * n + j] = 1.0;

  auto at = [n](std::vector<double>& m, std::size_t r, std::size_t c) -> double& {
    return m[r * n + c];
  };
  auto off_mass = [&] {
    double s = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) s += 2.0 * a[p * n + q] * a[p * n + q];
    return std::sqrt(s);
  };

  const double norm = frobenius_norm(h);
  const double target = opts.tolerance * norm;
  bool converged = false;
  double off = off_mass();
  for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
    if (off <= target || off == 0.0) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = at(a, p, q);
        if (apq == 0.0) continue;
        const double theta = 0.5 * (at(a, q, q) - at(a, p, p)) / apq;
        double t;
        if (std::abs(theta) > 1e150) {
          t = 0.5 / theta;
        } else {
          t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
          if (theta < 0.0) t = -t;
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);
        at(a, p, p) -= t * apq;
        at(a, q, q) += t * apq;
        at(a, p, q) = at(a, q, p) = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double g = at(a, r, p);
          const double hh = at(a, r, q);
          const double np = g - s * (hh + g * tau);
          const double nq = hh + s * (g - hh * tau);
          at(a, r, p) = at(a, p, r) = np;
          at(a, r, q) = at(a, q, r) = nq;
        }
        for (std::size_t r = 0; r < n; ++r) {
          const double g = at(v, r, p);
          const double hh = at(v, r, q);
          at(v, r, p) = g - s * (hh + g * tau);
          at(v, r, q) = hh + s * (g - hh * tau);
        }
      }
    }
    off = off_mass();
  }
  if (!converged && (off <= target || off == 0.0)) converged = true;
  if (!converged)
    throw ConvergenceError("Jacobi eigensolver did not converge in " +
                               std::to_string(opts.max_sweeps) + " sweeps; off-diagonal mass " +
                               std::to_string(off),
                           off);

  struct Pair {
    double value;
    std::vector<double> vec;
  };
  std::vector<Pair> pairs(n);
  for (std::size_t j = 0; j < n; ++j) {
    pairs[j].value = a[j * n + j];
    pairs[j].vec.resize(n);
    for (std::size_t r = 0; r < n; ++r) pairs[j].vec[r] = v[r * n + j];
    auto lead = std::find_if(pairs[j].vec.begin(), pairs[j].vec.end(),
                             [](double x) { return std::abs(x) > kSignZero; });
    if (lead != pairs[j].vec.end() && *lead < 0.0)
      for (double& x : pairs[j].vec) x = -x;
  }
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const Pair& x, const Pair& y) { return x.value < y.value; });

  const double gap = kDegenerateGap * std::max(1.0, h.max_abs());
  for (std::size_t begin = 0; begin < n;) {
    std::size_t end = begin + 1;
    while (end < n && pairs[end].value - pairs[end - 1].value <= gap) ++end;
    if (end - begin > 1)
      std::stable_sort(pairs.begin() + static_cast<std::ptrdiff_t>(begin),
                       pairs.begin() + static_cast<std::ptrdiff_t>(end),
                       [](const Pair& x, const Pair& y) {
                         return std::lexicographical_compare(x.vec.begin(), x.vec.end(),
                                                             y.vec.begin(), y.vec.end());
                       });
    begin = end;
  }

  EigenDecomposition out;
  out.eigenvalues.reserve(n);
  out.eigenvectors.reserve(n * n);
  for (const Pair& p : pairs) {
    out.eigenvalues.push_back(p.value);
    out.eigenvectors.insert(out.eigenvectors.end(), p.vec.begin(), p.vec.end());
  }
  return out;
}

ComplexMatrix expm_i(const EigenDecomposition& decomp, double t) {
  const std::size_t n = decomp.size();
  std::vector<Complex> phase(n);
  for (std::size_t j = 0; j < n; ++j) phase[j] = std::polar(1.0, t * decomp.eigenvalues[j]);
  ComplexMatrix u(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) {
      Complex s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += decomp.q(j, a) * decomp.q(j, b) * phase[j];
      u(a, b) = s;
      u(b, a) = s;
    }
  return u;
}

Complex expm_i_entry(const EigenDecomposition& decomp, std::size_t a, std::size_t b,
                     double t) {
  Complex s = 0.0;
  for (std::size_t j = 0; j < decomp.size(); ++j)
    s += decomp.q(j, a) * decomp.q(j, b) * std::polar(1.0, t * decomp.eigenvalues[j]);
  return s;
}

double spectral_norm(const RealSymmetricMatrix& h) {
  const EigenDecomposition d = eig_sym(h);
  return std::max(std::abs(d.eigenvalues.front()), std::abs(d.eigenvalues.back()));
}

double spectral_norm(const ComplexMatrix& m) {
  const std::size_t n = m.size();
  const ComplexMatrix g = m.adjoint() * m;
  // [[Re, -Im], [Im, Re]] is real symmetric because g is Hermitian; every
  // eigenvalue of g appears twice in it.
  std::vector<double> e(4 * n * n);
  const std::size_t w = 2 * n;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      const double re = g(j, k).real();
      const double im = g(j, k).imag();
      e[j * w + k] = re;
      e[(j + n) * w + (k + n)] = re;
      e[j * w + (k + n)] = -im;
      e[(j + n) * w + k] = im;
    }
  const EigenDecomposition d = eig_sym(RealSymmetricMatrix(w, std::move(e)));
  return std::sqrt(std::max(0.0, d.eigenvalues.back()));
}

double frobenius_norm(const RealSymmetricMatrix& h) noexcept {
  double s = 0.0;
  for (double x : h.data()) s += x * x;
  return std::sqrt(s);
}

std::size_t numerical_rank(const RealSymmetricMatrix& h, double rel_tol) {
  const EigenDecomposition d = eig_sym(h);
  const double norm = std::max(std::abs(d.eigenvalues.front()), std::abs(d.eigenvalues.back()));
  if (norm == 0.0) return 0;
  return static_cast<std::size_t>(std::count_if(
      d.eigenvalues.begin(), d.eigenvalues.end(),
      [&](double x) { return std::abs(x) > rel_tol * norm; }));
}

double exp_diff_norm(const RealSymmetricMatrix& h, double t0, const RealSymmetricMatrix& h0) {
  if (h.size() != h0.size())
    throw PreconditionError("perturbation has dimension " + std::to_string(h0.size()) +
                            ", Hamiltonian has " + std::to_string(h.size()));
  const RealSymmetricMatrix base = t0 * h;
  const ComplexMatrix u0 = expm_i(eig_sym(base), 1.0);
  const ComplexMatrix u1 = expm_i(eig_sym(base + h0), 1.0);
  return spectral_norm(u1 - u0);
}

// Text format

RealSymmetricMatrix parse_matrix(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos) continue;
      if (line[first] == '#') continue;
      return true;
    }
    return false;
  };
  if (!next_line()) throw ParseError("empty matrix text", 0);
  std::istringstream head(line);
  long long n = 0;
  std::string extra;
  if (!(head >> n) || n <= 0 || (head >> extra))
    throw ParseError("first line must be a positive dimension", line_no);
  const auto dim = static_cast<std::size_t>(n);
  std::vector<double> entries;
  entries.reserve(dim * dim);
  for (std::size_t r = 0; r < dim; ++r) {
    if (!next_line()) throw ParseError("expected " + std::to_string(dim) + " rows", line_no);
    std::istringstream row(line);
    double x;
    std::size_t count = 0;
    while (row >> x) {
      entries.push_back(x);
      ++count;
    }
    if (!row.eof() || count != dim)
      throw ParseError("row must hold " + std::to_string(dim) + " decimal values", line_no);
  }
  if (next_line()) throw ParseError("trailing content after matrix rows", line_no);
  try {
    return RealSymmetricMatrix(dim, std::move(entries));
  } catch (const PreconditionError& e) {
    throw ParseError(e.what(), 0);
  }
}

RealSymmetricMatrix read_matrix_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw PreconditionError("cannot open matrix file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_matrix(ss.str());
}

std::string emit_matrix(const RealSymmetricMatrix& h) {
  std::ostringstream out;
  out.precision(17);
  out << h.size() << '\n';
  for (std::size_t j = 0; j < h.size(); ++j) {
    for (std::size_t k = 0; k < h.size(); ++k) out << (k ? " " : "") << h(j, k);
    out << '\n';
  }
  return out.str();
}

}  // namespace pst
