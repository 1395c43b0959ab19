#pragma once

// Closed-form bounds on the transfer fidelity under readout-time and
// edge-weight perturbations.
//
// Fidelity lower bounds are clamped into [0, 1]; loss upper bounds into
// [0, 1]. Clamping is recorded in the report and the unclamped value kept in
// `raw_value`. Outside a bound's validity domain the report has valid=false;
// nothing is thrown.

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pst/fidelity.hpp"
#include "pst/spectral.hpp"
#include "pst/vertex.hpp"

namespace pst {

enum class BoundSense { FidelityLower, LossUpper };

struct BoundReport {
  std::string name;
  BoundSense sense = BoundSense::FidelityLower;
  double value = 0.0;
  double raw_value = 0.0;
  bool valid = true;
  bool clamped = false;
  bool asymptotic = false;  // holds only up to an uncomputed higher-order remainder
  std::vector<std::string> notes;
  std::vector<std::pair<std::string, double>> inputs;
  std::optional<double> exact;  // exact fidelity or loss, when the caller has it

  /// Value as a fidelity lower bound (1 - loss for loss bounds).
  double fidelity_lower() const noexcept {
    return sense == BoundSense::FidelityLower ? value : 1.0 - value;
  }
};

/// 1/4 |e^{ih lambda_1} + e^{ih lambda_n}|^2 = cos^2(h (lambda_n - lambda_1) / 2).
/// Valid for |h| < pi / (lambda_n - lambda_1).
BoundReport time_bound_extremal(double lambda1, double lambda_n, double h);

/// 1 - h^2 sum_j q_{j,s}^2 (lambda_j - shift)^2 for any real shift.
BoundReport time_bound_weighted(const EigenDecomposition& decomp, Vertex sender, double h,
                                double shift);

/// 1 - h^2 (<s|H^2|s> - <s|H|s>^2); needs no eigenvalues.
BoundReport time_bound_variance(const RealSymmetricMatrix& h, Vertex sender, double dt);
/// Same bound with the validity domain taken from a precomputed spectrum.
BoundReport time_bound_variance(const RealSymmetricMatrix& h, const EigenDecomposition& decomp,
                                Vertex sender, double dt);

/// Laplacian-specific bound for connected graphs on n >= 3 vertices, from the
/// smallest nonzero and the largest Laplacian eigenvalue.
/// Valid for |h| < pi / (lambda_n - lambda_2). Throws PreconditionError for
/// lambda_2 <= 0, lambda_2 > lambda_n or n < 3.
BoundReport laplacian_time_bound(double lambda2, double lambda_n, std::size_t n, double h);

struct OperatorEdgeBound {
  double norm = 0.0;       // ||H0||
  BoundReport exponential; // 2 x e^x - x^2 e^{2x}
  BoundReport polynomial;  // 2 x + x^2 - x^3
  double fidelity_lower() const noexcept { return std::max(0.0, 1.0 - exponential.value); }
};

/// Loss bounds that depend only on the spectral norm of H0.
OperatorEdgeBound edge_bound_operator(const RealSymmetricMatrix& h0);
OperatorEdgeBound edge_bound_operator_from_norm(double norm);

/// 2 ||H0||_F^2 / (pi - ||H0||)^2 + ||H0||^2, asymptotic in ||H0||. Requires
/// the sender support of the canonical form to be everything (m = n) and
/// ||H0|| < pi; otherwise valid = false.
BoundReport edge_bound_frobenius(const RealSymmetricMatrix& h0, const CanonicalForm& canon);
BoundReport edge_bound_frobenius_from_norms(double spectral, double frobenius, std::size_t m,
                                            std::size_t n);

struct EdgeComparison {
  bool frobenius_sharper = false;  // ||H0||_F^2 / (pi - ||H0||)^2 < ||H0||
  double lhs = 0.0;
  double spectral = 0.0;
  double frobenius = 0.0;
  std::size_t rank = 0;
  double rank_threshold = 0.0;     // (2 pi + r - sqrt(4 pi r + r^2)) / 2
  bool rank_condition = false;     // ||H0|| < rank_threshold
};

EdgeComparison edge_bound_comparison(const RealSymmetricMatrix& h0);

}  // namespace pst
