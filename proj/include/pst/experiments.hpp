#pragma once

// Parameter sweeps, Monte Carlo edge perturbations and the fixed
// reproduction scenarios behind the command-line tool.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pst/fidelity.hpp"
#include "pst/graph.hpp"
#include "pst/rng.hpp"
#include "pst/table.hpp"

namespace pst {

inline constexpr double kSoundnessSlack = 1e-9;

/// 8 pi n / (lambda_n - lambda_1): the default search horizon for PST.
double default_pst_horizon(const EigenDecomposition& decomp);

/// Finds the PST certificate a sweep runs against, searching up to the
/// default horizon. Throws PreconditionError when there is no PST there.
PstCertificate locate_pst(const EigenDecomposition& decomp, Vertex sender, Vertex receiver,
                          double tolerance = kDefaultPstTolerance);

/// Readout-time sweep over a uniform grid h_min..h_max with `steps` points.
/// Columns: h, p_exact, extremal, variance, weighted_mean, [laplacian],
/// matching gap_* columns, sound. Cells outside a bound's validity domain
/// are invalid. The laplacian columns appear for the Laplacian kind only.
Table sweep_time(const WeightedGraph& graph, HamiltonianKind kind, Vertex sender, Vertex receiver,
                 double h_min, double h_max, std::size_t steps);

enum class PerturbationSupport { EdgesOnly, AllOffDiagonal, IncludeDiagonal };

PerturbationSupport parse_support(std::string_view name);

/// Random symmetric H0 with spectral norm exactly `magnitude`, built from
/// standard-normal draws on the chosen support. For the Laplacian kind the
/// off-diagonal supports perturb edge weights, so H0 is itself a Laplacian.
RealSymmetricMatrix random_perturbation(const WeightedGraph& graph, HamiltonianKind kind,
                                        PerturbationSupport support, double magnitude,
                                        NormalSampler& rng);

/// Edge-weight Monte Carlo: for each magnitude and trial, the exact loss at
/// the PST time against the operator-norm and Frobenius loss bounds.
/// Rows are ordered by (magnitude, trial); output is a function of `seed`.
Table sweep_edge(const WeightedGraph& graph, HamiltonianKind kind, Vertex sender,
                 Vertex receiver, std::span<const double> magnitudes, std::size_t trials,
                 std::uint64_t seed, PerturbationSupport support);

/// The published 10 x 10 perturbation of the Krawtchouk chain: 1e-5 on the
/// (1,2) and (9,10) couplings and 0.533e-5 on (5,6).
RealSymmetricMatrix published_perturbation();

enum class ToleranceKind { Absolute, Relative };

struct Expectation {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  ToleranceKind kind = ToleranceKind::Absolute;
  std::string provenance;
};

struct ReproduceReport {
  std::string case_id;
  std::vector<std::pair<std::string, double>> computed;
  std::vector<Expectation> expected;
  bool pass = false;

  /// One row per expectation with computed value, difference and verdict.
  Table to_table() const;
};

std::vector<std::string> reproduce_case_ids();
/// Throws PreconditionError for an unknown id.
ReproduceReport reproduce(std::string_view case_id);

}  // namespace pst
