#pragma once

// Dense symmetric eigensolver, spectral matrix exponential and norms.
//
// Conventions: matrices are row-major. An EigenDecomposition stores
// H = Q^T diag(lambda) Q, so row j of Q is the unit eigenvector for
// lambda_j and column a of Q collects the a-th components of every
// eigenvector.

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace pst {

using Complex = std::complex<double>;

class RealSymmetricMatrix {
 public:
  /// n x n zero matrix. Throws PreconditionError for n == 0.
  explicit RealSymmetricMatrix(std::size_t n);

  /// Builds from n*n row-major entries. Entries must be symmetric within
  /// 1e-12 * max(1, max|entry|); the stored matrix is the symmetric part.
  RealSymmetricMatrix(std::size_t n, std::vector<double> row_major);

  static RealSymmetricMatrix identity(std::size_t n);
  static RealSymmetricMatrix diagonal(std::span<const double> d);

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t j, std::size_t k) const noexcept {
    return a_[j * n_ + k];
  }
  /// Sets entries (j,k) and (k,j).
  void set(std::size_t j, std::size_t k, double value);

  std::span<const double> data() const noexcept { return a_; }
  std::span<const double> row(std::size_t j) const noexcept {
    return {a_.data() + j * n_, n_};
  }
  double max_abs() const noexcept;

  RealSymmetricMatrix& operator+=(const RealSymmetricMatrix& other);
  RealSymmetricMatrix& operator*=(double s) noexcept;

 private:
  std::size_t n_;
  std::vector<double> a_;
};

RealSymmetricMatrix operator+(RealSymmetricMatrix a, const RealSymmetricMatrix& b);
RealSymmetricMatrix operator*(double s, RealSymmetricMatrix a);

class ComplexMatrix {
 public:
  explicit ComplexMatrix(std::size_t n);
  static ComplexMatrix identity(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  Complex& operator()(std::size_t j, std::size_t k) noexcept { return a_[j * n_ + k]; }
  const Complex& operator()(std::size_t j, std::size_t k) const noexcept {
    return a_[j * n_ + k];
  }

  ComplexMatrix adjoint() const;
  ComplexMatrix operator*(const ComplexMatrix& rhs) const;
  ComplexMatrix operator-(const ComplexMatrix& rhs) const;
  /// max_{j,k} |entry|
  double max_abs() const noexcept;

 private:
  std::size_t n_;
  std::vector<Complex> a_;
};

struct EigenDecomposition {
  std::vector<double> eigenvalues;  // ascending
  std::vector<double> eigenvectors; // n*n row-major, row j = eigenvector j

  std::size_t size() const noexcept { return eigenvalues.size(); }
  /// Component `a` of eigenvector `j`; the paper-style q_{ja}.
  double q(std::size_t j, std::size_t a) const noexcept {
    return eigenvectors[j * size() + a];
  }
  std::span<const double> vector(std::size_t j) const noexcept {
    return {eigenvectors.data() + j * size(), size()};
  }
  /// Q^T diag(lambda) Q.
  RealSymmetricMatrix reconstruct() const;
};

struct JacobiOptions {
  int max_sweeps = 100;
  /// Converged when off-diagonal Frobenius mass <= tolerance * ||H||_F.
  double tolerance = 1e-14;
};

/// Cyclic Jacobi eigendecomposition. Eigenvalues ascend; each eigenvector
/// has its first nonzero component positive; eigenvectors of (numerically)
/// equal eigenvalues are ordered lexicographically. Throws ConvergenceError.
EigenDecomposition eig_sym(const RealSymmetricMatrix& h, const JacobiOptions& opts = {});

/// e^{itH} = Q^T diag(e^{i t lambda_j}) Q.
ComplexMatrix expm_i(const EigenDecomposition& decomp, double t);

/// (e^{itH})_{ab} without forming the whole matrix.
Complex expm_i_entry(const EigenDecomposition& decomp, std::size_t a, std::size_t b,
                     double t);

/// max_j |lambda_j(H)|.
double spectral_norm(const RealSymmetricMatrix& h);
/// Largest singular value, via the real embedding of the Hermitian M^* M.
double spectral_norm(const ComplexMatrix& m);
double frobenius_norm(const RealSymmetricMatrix& h) noexcept;

/// Number of eigenvalues with |lambda| > rel_tol * ||H||.
std::size_t numerical_rank(const RealSymmetricMatrix& h, double rel_tol = 1e-10);

/// || e^{i(t0 H + H0)} - e^{i t0 H} || in the spectral norm.
double exp_diff_norm(const RealSymmetricMatrix& h, double t0, const RealSymmetricMatrix& h0);

/// Matrix text format: first line n, then n rows of n decimal values.
RealSymmetricMatrix parse_matrix(const std::string& text);
RealSymmetricMatrix read_matrix_file(const std::string& path);
std::string emit_matrix(const RealSymmetricMatrix& h);

}  // namespace pst
