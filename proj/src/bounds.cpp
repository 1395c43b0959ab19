#include "pst/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "pst/error.hpp"

namespace pst {

namespace {

constexpr double kPi = std::numbers::pi;

// 1 - cos(x) without cancellation.
double one_minus_cos(double x) {
  const double s = std::sin(0.5 * x);
  return 2.0 * s * s;
}

void finish(BoundReport& rep, double raw) {
  rep.raw_value = raw;
  rep.value = std::clamp(raw, 0.0, 1.0);
  if (rep.value != raw) {
    rep.clamped = true;
    rep.notes.emplace_back("formula value " + std::to_string(raw) + " clamped into [0, 1]");
  }
}

void time_domain(BoundReport& rep, double spread, double h, const char* label) {
  const double limit = spread > 0.0 ? kPi / spread : std::numeric_limits<double>::infinity();
  rep.inputs.emplace_back("h_limit", limit);
  if (!(std::abs(h) < limit)) {
    rep.valid = false;
    rep.notes.emplace_back(std::string("|h| must be below pi / (") + label + ")");
  }
}

void check_sender(Vertex s, std::size_t n) {
  if (s.label < 1 || s.label > n)
    throw PreconditionError("sender vertex " + std::to_string(s.label) + " out of range 1.." +
                            std::to_string(n));
}

}  // namespace

BoundReport time_bound_extremal(double lambda1, double lambda_n, double h) {
  if (lambda1 > lambda_n) throw PreconditionError("lambda_1 must not exceed lambda_n");
  BoundReport rep;
  rep.name = "extremal";
  rep.inputs = {{"lambda_1", lambda1}, {"lambda_n", lambda_n}, {"h", h}};
  time_domain(rep, lambda_n - lambda1, h, "lambda_n - lambda_1");
  const double c = std::cos(0.5 * h * (lambda_n - lambda1));
  finish(rep, c * c);
  return rep;
}

BoundReport time_bound_weighted(const EigenDecomposition& decomp, Vertex sender, double h,
                                double shift) {
  check_sender(sender, decomp.size());
  BoundReport rep;
  rep.name = "weighted";
  rep.inputs = {{"h", h}, {"shift", shift}};
  time_domain(rep, decomp.eigenvalues.back() - decomp.eigenvalues.front(), h,
              "lambda_n - lambda_1");
  double spread = 0.0;
  for (std::size_t j = 0; j < decomp.size(); ++j) {
    const double q = decomp.q(j, sender.index());
    const double d = decomp.eigenvalues[j] - shift;
    spread += q * q * d * d;
  }
  rep.inputs.emplace_back("weighted_spread", spread);
  finish(rep, 1.0 - h * h * spread);
  return rep;
}

namespace {

BoundReport variance_report(const RealSymmetricMatrix& h, Vertex sender, double dt) {
  const SenderMoments mom = sender_moments(h, sender);
  BoundReport rep;
  rep.name = "variance";
  rep.inputs = {{"h", dt}, {"mean", mom.mean}, {"variance", mom.variance}};
  finish(rep, 1.0 - dt * dt * mom.variance);
  return rep;
}

}  // namespace

BoundReport time_bound_variance(const RealSymmetricMatrix& h, Vertex sender, double dt) {
  BoundReport rep = variance_report(h, sender, dt);
  rep.notes.emplace_back("validity domain not checked without the spectrum");
  return rep;
}

BoundReport time_bound_variance(const RealSymmetricMatrix& h, const EigenDecomposition& decomp,
                                Vertex sender, double dt) {
  if (decomp.size() != h.size()) throw PreconditionError("decomposition does not match H");
  BoundReport rep = variance_report(h, sender, dt);
  time_domain(rep, decomp.eigenvalues.back() - decomp.eigenvalues.front(), dt,
              "lambda_n - lambda_1");
  return rep;
}

BoundReport laplacian_time_bound(double lambda2, double lambda_n, std::size_t n, double h) {
  if (n < 3) throw PreconditionError("Laplacian bound needs n >= 3");
  if (!(lambda2 > 0.0))
    throw PreconditionError("Laplacian bound needs lambda_2 > 0 (a connected graph)");
  if (lambda2 > lambda_n) throw PreconditionError("lambda_2 must not exceed lambda_n");

  BoundReport rep;
  rep.name = "laplacian";
  rep.inputs = {{"lambda_2", lambda2}, {"lambda_n", lambda_n}, {"n", double(n)}, {"h", h}};
  time_domain(rep, lambda_n - lambda2, h, "lambda_n - lambda_2");

  const double nn = static_cast<double>(n);
  const double n2 = nn * nn;
  const double spread = lambda_n - lambda2;
  const double first = (nn - 1.0) * (nn - 1.0) * one_minus_cos(spread * h) / (2.0 * n2);
  const double second =
      (nn - 1.0) * (one_minus_cos(lambda2 * h) + one_minus_cos(lambda_n * h)) / n2;
  // (cos a - cos b)^2 / (2 n^2 (1 - cos(b - a))) = sin^2((a + b) / 2) / n^2 for
  // a != b. With a == b the interpolating weight is fixed and the term is 0.
  double third = 0.0;
  if (spread > 0.0) {
    const double s = std::sin(0.5 * (lambda2 + lambda_n) * h);
    third = s * s / n2;
  } else {
    rep.notes.emplace_back("lambda_2 = lambda_n: last term taken as its degenerate value 0");
  }
  finish(rep, 1.0 - first - second - third);
  return rep;
}

OperatorEdgeBound edge_bound_operator_from_norm(double x) {
  if (!(x >= 0.0)) throw PreconditionError("perturbation norm must be nonnegative");
  OperatorEdgeBound out;
  out.norm = x;
  for (BoundReport* rep : {&out.exponential, &out.polynomial}) {
    rep->sense = BoundSense::LossUpper;
    rep->inputs = {{"norm", x}};
    rep->notes.emplace_back(
        "stated under perfect state transfer at t0; the value depends on ||H0|| only");
  }
  out.exponential.name = "operator_exponential";
  out.polynomial.name = "operator_polynomial";
  const double g = x * std::exp(x);
  finish(out.exponential, 2.0 * g - g * g);
  finish(out.polynomial, 2.0 * x + x * x - x * x * x);
  return out;
}

OperatorEdgeBound edge_bound_operator(const RealSymmetricMatrix& h0) {
  return edge_bound_operator_from_norm(spectral_norm(h0));
}

BoundReport edge_bound_frobenius_from_norms(double spectral, double frobenius, std::size_t m,
                                            std::size_t n) {
  BoundReport rep;
  rep.name = "frobenius";
  rep.sense = BoundSense::LossUpper;
  rep.asymptotic = true;
  rep.inputs = {{"norm", spectral}, {"frobenius", frobenius}, {"m", double(m)}, {"n", double(n)}};
  rep.notes.emplace_back("asymptotic: a remainder of order ||H0||^3 is not included");
  if (m != n) {
    rep.valid = false;
    rep.notes.emplace_back("requires every eigenvector to have a nonzero sender component (m = n)");
  }
  if (!(spectral < kPi)) {
    rep.valid = false;
    rep.notes.emplace_back("requires ||H0|| < pi");
    finish(rep, 1.0);
    return rep;
  }
  const double gap = kPi - spectral;
  finish(rep, 2.0 * frobenius * frobenius / (gap * gap) + spectral * spectral);
  return rep;
}

BoundReport edge_bound_frobenius(const RealSymmetricMatrix& h0, const CanonicalForm& canon) {
  if (h0.size() != canon.size())
    throw PreconditionError("perturbation dimension does not match the canonical form");
  return edge_bound_frobenius_from_norms(spectral_norm(h0), frobenius_norm(h0), canon.m,
                                         canon.size());
}

EdgeComparison edge_bound_comparison(const RealSymmetricMatrix& h0) {
  EdgeComparison out;
  const EigenDecomposition d = eig_sym(h0);
  out.spectral = std::max(std::abs(d.eigenvalues.front()), std::abs(d.eigenvalues.back()));
  out.frobenius = frobenius_norm(h0);
  if (out.spectral > 0.0)
    out.rank = static_cast<std::size_t>(std::count_if(
        d.eigenvalues.begin(), d.eigenvalues.end(),
        [&](double x) { return std::abs(x) > 1e-10 * out.spectral; }));
  const double r = static_cast<double>(out.rank);
  out.rank_threshold = (2.0 * kPi + r - std::sqrt(4.0 * kPi * r + r * r)) / 2.0;
  if (out.spectral > 0.0 && out.spectral < kPi) {
    const double gap = kPi - out.spectral;
    out.lhs = out.frobenius * out.frobenius / (gap * gap);
    out.frobenius_sharper = out.lhs < out.spectral;
    out.rank_condition = out.spectral < out.rank_threshold;
  } else if (out.spectral >= kPi) {
    out.lhs = std::numeric_limits<double>::infinity();
  }
  return out;
}

}  // namespace pst
