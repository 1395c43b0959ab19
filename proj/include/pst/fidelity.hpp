#pragma once

// Transition probabilities, perfect-state-transfer search and the
// canonical spectral form of a Hamiltonian with PST.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pst/spectral.hpp"
#include "pst/vertex.hpp"

namespace pst {

inline constexpr double kDefaultPstTolerance = 1e-9;

/// p(t) = |(e^{itH})_{s,r}|^2, clamped to [0, 1].
double transition_probability(const RealSymmetricMatrix& h, Vertex s, Vertex r, double t);
double transition_probability(const EigenDecomposition& decomp, Vertex s, Vertex r, double t);

/// 1 - p(t), evaluated as the squared mass of row s of e^{itH} outside
/// column r. Accurate in relative terms when the loss is tiny.
double transition_loss(const EigenDecomposition& decomp, Vertex s, Vertex r, double t);

struct PstCertificate {
  double t0 = 0.0;
  Vertex sender;
  Vertex receiver;
  double theta = 0.0;            // arg of (e^{i t0 H})_{s,r}, in [0, 2 pi)
  double fidelity_deficit = 0.0; // 1 - p(t0)
  Complex entry;                 // (e^{i t0 H})_{s,r}
};

struct PstSearchOptions {
  double t_max = 0.0;
  double tolerance = kDefaultPstTolerance;
};

/// Earliest local maximum of p on (0, t_max] with 1 - p <= tolerance.
/// Samples on a grid of pitch pi / (8 (lambda_n - lambda_1)) and refines each
/// sampled maximum to a time resolution of 1e-12.
std::optional<PstCertificate> find_pst(const RealSymmetricMatrix& h, Vertex s, Vertex r,
                                       const PstSearchOptions& opts);
std::optional<PstCertificate> find_pst(const EigenDecomposition& decomp, Vertex s, Vertex r,
                                       const PstSearchOptions& opts);

/// Builds a certificate for a known time; throws PreconditionError when
/// 1 - p(t0) exceeds `tolerance`.
PstCertificate certify_pst(const EigenDecomposition& decomp, Vertex s, Vertex r, double t0,
                           double tolerance = kDefaultPstTolerance);

/// t0 H = Qt^T Dt Qt + theta I with Dt = pi diag(r_1, ..., r_n).
///
/// The first m multipliers are integers: r_1 >= ... >= r_ell even, then
/// r_{ell+1} >= ... >= r_m odd, all positive. They index the eigenvectors
/// with a nonzero sender component. The remaining n - m diagonal entries
/// are unconstrained and kept as real numbers. Column `sender` of Qt is
/// (x_1, ..., x_m, 0, ..., 0) with x_j >= 0, and column `receiver` equals
/// it with the odd block negated.
struct CanonicalForm {
  double theta = 0.0;
  double t0 = 0.0;
  Vertex sender;
  Vertex receiver;
  std::vector<long long> multipliers;   // r_1..r_m
  std::vector<double> tail_multipliers; // (t0 lambda_j - theta) / pi for the zero-support block
  std::size_t ell = 0;
  std::size_t m = 0;
  std::vector<std::size_t> order;       // position i of Qt holds eigenpair order[i]
  std::vector<double> permuted_eigvecs; // n*n row-major Qt
  double residual = 0.0;
  std::vector<std::string> warnings;

  std::size_t size() const noexcept { return multipliers.size() + tail_multipliers.size(); }
  double qt(std::size_t row, std::size_t col) const noexcept {
    return permuted_eigvecs[row * size() + col];
  }
  /// pi * r_i on the diagonal of Dt.
  double diagonal(std::size_t i) const noexcept;
  /// Qt^T Dt Qt + theta I, which reproduces t0 H.
  RealSymmetricMatrix reconstruct() const;
};

struct CanonicalOptions {
  double tolerance = 1e-8;         // classification and residual tolerance
  double zero_threshold = 1e-8;    // |q| <= this counts as outside the support
  double pst_tolerance = kDefaultPstTolerance;
};

/// Throws PreconditionError when `cert` does not certify PST for h and
/// ClassificationError when a phase on the support is not a multiple of pi.
CanonicalForm canonical_decomposition(const RealSymmetricMatrix& h, const PstCertificate& cert,
                                      const CanonicalOptions& opts = {});
CanonicalForm canonical_decomposition(const EigenDecomposition& decomp,
                                      const PstCertificate& cert,
                                      const CanonicalOptions& opts = {});

struct SenderMoments {
  double mean = 0.0;
  double variance = 0.0;
};

/// <s|H|s> and <s|H^2|s> - <s|H|s>^2, read straight off row s.
SenderMoments sender_moments(const RealSymmetricMatrix& h, Vertex s);

}  // namespace pst
