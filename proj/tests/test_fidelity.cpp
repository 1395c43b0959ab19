#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "pst/error.hpp"
#include "pst/fidelity.hpp"
#include "pst/graph.hpp"

using namespace pst;
using std::numbers::pi;

namespace {

const RealSymmetricMatrix kSwap(2, {0, 1, 1, 0});

}  // namespace

TEST_CASE("transition probability of the two-vertex path") {
  for (double t : {0.0, 0.3, pi / 4, pi / 2, 2.0}) {
    const double s = std::sin(t);
    CHECK(transition_probability(kSwap, Vertex{1}, Vertex{2}, t) == doctest::Approx(s * s));
    CHECK(transition_probability(kSwap, Vertex{1}, Vertex{1}, t) ==
          doctest::Approx(1 - s * s));
  }
  CHECK(transition_probability(kSwap, Vertex{1}, Vertex{2}, 0.0) == 0.0);
  CHECK_THROWS_AS(transition_probability(kSwap, Vertex{1}, Vertex{3}, 1.0), PreconditionError);
  CHECK_THROWS_AS(transition_probability(kSwap, Vertex{0}, Vertex{1}, 1.0), PreconditionError);
}

TEST_CASE("transition probability is symmetric in sender and receiver") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    auto d = eig_sym(oracle::random_symmetric(rng, 5));
    const double t = 0.4 * (trial + 1);
    CHECK(transition_probability(d, Vertex{2}, Vertex{5}, t) ==
          doctest::Approx(transition_probability(d, Vertex{5}, Vertex{2}, t)).epsilon(1e-12));
  }
}

TEST_CASE("transition probability matches the Taylor exponential") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 8; ++trial) {
    const std::size_t n = 3 + trial;
    auto h = oracle::random_symmetric(rng, n);
    const double t = 0.5 + 0.6 * trial;
    auto u = oracle::expm_taylor(h, t);
    const double ref = std::norm(u[0][n - 1]);
    CHECK(std::abs(transition_probability(h, Vertex{1}, Vertex{n}, t) - ref) < 1e-10);
  }
}

TEST_CASE("transition loss complements the probability") {
  auto d = eig_sym(adjacency(krawtchouk_chain(6)));
  for (double t : {0.2, 1.0, pi / 2 - 1e-3}) {
    const double p = transition_probability(d, Vertex{1}, Vertex{6}, t);
    CHECK(transition_loss(d, Vertex{1}, Vertex{6}, t) == doctest::Approx(1 - p).epsilon(1e-10));
  }
  CHECK(transition_loss(d, Vertex{1}, Vertex{6}, pi / 2) < 1e-20);
}

TEST_CASE("find_pst on the two-vertex path") {
  PstSearchOptions opts;
  opts.t_max = 4.0;
  auto cert = find_pst(kSwap, Vertex{1}, Vertex{2}, opts);
  REQUIRE(cert.has_value());
  CHECK(std::abs(cert->t0 - pi / 2) < 1e-9);
  CHECK(std::abs(cert->theta - pi / 2) < 1e-9);
  CHECK(cert->fidelity_deficit <= 1e-9);
  CHECK(std::abs(cert->entry - Complex(0, 1)) < 1e-9);
}

TEST_CASE("find_pst on Krawtchouk chains lands at pi/2") {
  for (std::size_t n : {3u, 4u, 7u, 10u}) {
    PstSearchOptions opts;
    opts.t_max = 4.0;
    auto cert = find_pst(adjacency(krawtchouk_chain(n)), Vertex{1}, Vertex{n}, opts);
    REQUIRE(cert.has_value());
    CHECK(std::abs(cert->t0 - pi / 2) < 1e-9);
  }
}

TEST_CASE("the four-vertex unweighted path has no PST") {
  PstSearchOptions opts;
  opts.t_max = 50.0;
  opts.tolerance = 1e-6;
  CHECK_FALSE(find_pst(adjacency(path_graph(4)), Vertex{1}, Vertex{4}, opts).has_value());
}

TEST_CASE("complete minus an edge transfers across the missing edge") {
  PstSearchOptions opts;
  opts.t_max = 4.0;
  auto cert = find_pst(laplacian(complete_minus_edge(4)), Vertex{1}, Vertex{2}, opts);
  REQUIRE(cert.has_value());
  CHECK(std::abs(cert->t0 - pi / 2) < 1e-9);
}

TEST_CASE("find_pst preconditions and trivial spectra") {
  PstSearchOptions opts;
  CHECK_THROWS_AS(find_pst(kSwap, Vertex{1}, Vertex{2}, opts), PreconditionError);
  opts.t_max = 1.0;
  opts.tolerance = 0.0;
  CHECK_THROWS_AS(find_pst(kSwap, Vertex{1}, Vertex{2}, opts), PreconditionError);
  opts.tolerance = 1e-9;
  CHECK_FALSE(find_pst(RealSymmetricMatrix::identity(3), Vertex{1}, Vertex{3}, opts));
}

TEST_CASE("certify_pst") {
  auto d = eig_sym(kSwap);
  auto cert = certify_pst(d, Vertex{1}, Vertex{2}, pi / 2);
  CHECK(cert.theta == doctest::Approx(pi / 2));
  CHECK_THROWS_AS(certify_pst(d, Vertex{1}, Vertex{2}, 1.0), PreconditionError);
}

TEST_CASE("canonical form of the two-vertex path") {
  auto d = eig_sym(kSwap);
  auto form = canonical_decomposition(d, certify_pst(d, Vertex{1}, Vertex{2}, pi / 2));
  CHECK(form.multipliers == std::vector<long long>{2, 1});
  CHECK(form.ell == 1);
  CHECK(form.m == 2);
  CHECK(form.tail_multipliers.empty());
  const double wrapped = std::remainder(form.theta - pi / 2, 2 * pi);
  CHECK(std::abs(wrapped) < 1e-12);
  CHECK(form.residual <= 1e-8);
  for (std::size_t i = 0; i < 2; ++i) CHECK(form.qt(i, 0) >= 0.0);
  CHECK(form.qt(0, 1) == doctest::Approx(form.qt(0, 0)));
  CHECK(form.qt(1, 1) == doctest::Approx(-form.qt(1, 0)));
}

TEST_CASE("canonical form of the Krawtchouk chain of 10") {
  auto h = adjacency(krawtchouk_chain(10));
  auto d = eig_sym(h);
  auto cert = certify_pst(d, Vertex{1}, Vertex{10}, pi / 2);
  auto form = canonical_decomposition(d, cert);
  CHECK(form.m == 10);
  CHECK(form.ell + 0 <= form.m);
  for (std::size_t i = 0; i < form.m; ++i) {
    CHECK(form.multipliers[i] >= 1);
    const bool even = form.multipliers[i] % 2 == 0;
    CHECK(even == (i < form.ell));
    if (i + 1 < form.m && (i + 1 < form.ell || i >= form.ell))
      CHECK(form.multipliers[i] >= form.multipliers[i + 1]);
    CHECK(form.qt(i, 0) >= 0.0);
    const double sign = even ? 1.0 : -1.0;
    CHECK(std::abs(form.qt(i, 9) - sign * form.qt(i, 0)) < 1e-8);
  }
  auto back = form.reconstruct();
  double worst = 0.0;
  for (std::size_t j = 0; j < 10; ++j)
    for (std::size_t k = 0; k < 10; ++k) worst = std::max(worst, std::abs(back(j, k) - pi / 2 * h(j, k)));
  CHECK(worst <= 1e-8);
}

TEST_CASE("canonical form with a zero-support tail") {
  // Vertex 3 is isolated: its eigenvector has no weight on vertex 1.
  RealSymmetricMatrix h(3, {0, 1, 0, 1, 0, 0, 0, 0, 0.7});
  auto d = eig_sym(h);
  auto form = canonical_decomposition(d, certify_pst(d, Vertex{1}, Vertex{2}, pi / 2));
  CHECK(form.m == 2);
  REQUIRE(form.tail_multipliers.size() == 1);
  CHECK(form.qt(2, 0) == 0.0);
  CHECK(form.diagonal(2) == doctest::Approx(pi / 2 * 0.7 - form.theta));
  auto back = form.reconstruct();
  for (std::size_t j = 0; j < 3; ++j)
    for (std::size_t k = 0; k < 3; ++k) CHECK(std::abs(back(j, k) - pi / 2 * h(j, k)) < 1e-10);
}

TEST_CASE("canonical decomposition rejects certificates that certify nothing") {
  auto d = eig_sym(RealSymmetricMatrix::identity(2));
  PstCertificate fake;
  fake.t0 = 1.0;
  fake.sender = Vertex{1};
  fake.receiver = Vertex{2};
  fake.theta = 0.0;
  CHECK_THROWS_AS(canonical_decomposition(d, fake), PreconditionError);
}

TEST_CASE("a loose certificate fails classification") {
  auto d = eig_sym(kSwap);
  PstCertificate loose;
  loose.t0 = pi / 2 + 1e-3;
  loose.sender = Vertex{1};
  loose.receiver = Vertex{2};
  CanonicalOptions opts;
  opts.pst_tolerance = 1e-4;
  CHECK_THROWS_AS(canonical_decomposition(d, loose, opts), ClassificationError);
}

TEST_CASE("sender moments") {
  auto m = sender_moments(kSwap, Vertex{1});
  CHECK(m.mean == 0.0);
  CHECK(m.variance == 1.0);
  auto k = sender_moments(adjacency(krawtchouk_chain(10)), Vertex{1});
  CHECK(k.variance == doctest::Approx(9.0));

  // <s|H^2|s> - <s|H|s>^2 through the spectrum
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    auto h = oracle::random_symmetric(rng, 6);
    auto d = eig_sym(h);
    double m1 = 0.0, m2 = 0.0;
    for (std::size_t j = 0; j < 6; ++j) {
      const double w = d.q(j, 2) * d.q(j, 2);
      m1 += w * d.eigenvalues[j];
      m2 += w * d.eigenvalues[j] * d.eigenvalues[j];
    }
    auto sm = sender_moments(h, Vertex{3});
    CHECK(sm.mean == doctest::Approx(m1).epsilon(1e-12));
    CHECK(sm.variance == doctest::Approx(m2 - m1 * m1).epsilon(1e-10));
  }
}
