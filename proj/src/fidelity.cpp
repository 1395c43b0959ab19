#include "pst/fidelity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pst/error.hpp"

namespace pst {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTimeResolution = 1e-12;

void check_vertex(Vertex v, std::size_t n, const char* role) {
  if (v.label < 1 || v.label > n)
    throw PreconditionError(std::string(role) + " vertex " + std::to_string(v.label) +
                            " out of range 1.." + std::to_string(n));
}

double clamp01(double p) { return std::clamp(p, 0.0, 1.0); }

double wrap_phase(double theta) {
  double t = std::fmod(theta, 2.0 * kPi);
  if (t < 0.0) t += 2.0 * kPi;
  if (t >= 2.0 * kPi) t = 0.0;
  return t;
}

// Amplitude u(t) = sum_j c_j e^{i t lambda_j} and its time derivative.
struct Amplitude {
  const EigenDecomposition& decomp;
  std::vector<double> weights;

  Amplitude(const EigenDecomposition& d, std::size_t s, std::size_t r) : decomp(d) {
    weights.resize(d.size());
    for (std::size_t j = 0; j < d.size(); ++j) weights[j] = d.q(j, s) * d.q(j, r);
  }
  Complex value(double t) const {
    Complex u = 0.0;
    for (std::size_t j = 0; j < weights.size(); ++j)
      u += weights[j] * std::polar(1.0, t * decomp.eigenvalues[j]);
    return u;
  }
  double probability(double t) const { return clamp01(std::norm(value(t))); }
  // d/dt |u|^2 = 2 Re(conj(u) u')
  double slope(double t) const {
    Complex u = 0.0, du = 0.0;
    for (std::size_t j = 0; j < weights.size(); ++j) {
      const double lambda = decomp.eigenvalues[j];
      const Complex e = weights[j] * std::polar(1.0, t * lambda);
      u += e;
      du += Complex(0.0, lambda) * e;
    }
    return 2.0 * (std::conj(u) * du).real();
  }
};

double refine_maximum(const Amplitude& amp, double a, double b) {
  double fa = amp.slope(a);
  double fb = amp.slope(b);
  if (fa > 0.0 && fb < 0.0) {
    while (b - a > kTimeResolution) {
      const double mid = 0.5 * (a + b);
      if (mid <= a || mid >= b) break;
      if (amp.slope(mid) > 0.0)
        a = mid;
      else
        b = mid;
    }
    return 0.5 * (a + b);
  }
  if (fb >= 0.0 && fa >= 0.0) return b;  // still rising at the bracket end
  // Golden-section fallback when the slope does not bracket a single peak.
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  double f1 = amp.probability(x1), f2 = amp.probability(x2);
  while (b - a > kTimeResolution) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = amp.probability(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = amp.probability(x1);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

double transition_probability(const RealSymmetricMatrix& h, Vertex s, Vertex r, double t) {
  check_vertex(s, h.size(), "sender");
  check_vertex(r, h.size(), "receiver");
  const ComplexMatrix u = expm_i(eig_sym(h), t);
  return clamp01(std::norm(u(s.index(), r.index())));
}

double transition_probability(const EigenDecomposition& decomp, Vertex s, Vertex r, double t) {
  check_vertex(s, decomp.size(), "sender");
  check_vertex(r, decomp.size(), "receiver");
  return clamp01(std::norm(expm_i_entry(decomp, s.index(), r.index(), t)));
}

double transition_loss(const EigenDecomposition& decomp, Vertex s, Vertex r, double t) {
  const std::size_t n = decomp.size();
  check_vertex(s, n, "sender");
  check_vertex(r, n, "receiver");
  double mass = 0.0;
  for (std::size_t k = 0; k < n; ++k)
    if (k != r.index()) mass += std::norm(expm_i_entry(decomp, s.index(), k, t));
  return clamp01(mass);
}

PstCertificate certify_pst(const EigenDecomposition& decomp, Vertex s, Vertex r, double t0,
                           double tolerance) {
  const double deficit = transition_loss(decomp, s, r, t0);
  if (deficit > tolerance)
    throw PreconditionError("no perfect state transfer from " + std::to_string(s.label) + " to " +
                            std::to_string(r.label) + " at t = " + std::to_string(t0) +
                            " (1 - p = " + std::to_string(deficit) + ")");
  const Complex entry = expm_i_entry(decomp, s.index(), r.index(), t0);
  return PstCertificate{t0, s, r, wrap_phase(std::arg(entry)), deficit, entry};
}

std::optional<PstCertificate> find_pst(const EigenDecomposition& decomp, Vertex s, Vertex r,
                                       const PstSearchOptions& opts) {
  check_vertex(s, decomp.size(), "sender");
  check_vertex(r, decomp.size(), "receiver");
  if (!(opts.t_max > 0.0)) throw PreconditionError("t_max must be positive");
  if (!(opts.tolerance > 0.0 && opts.tolerance < 1.0))
    throw PreconditionError("PST tolerance must lie in (0, 1)");

  const double spread = decomp.eigenvalues.back() - decomp.eigenvalues.front();
  if (!(spread > 0.0)) return std::nullopt;  // p is constant in time
  const double pitch = kPi / (8.0 * spread);

  const Amplitude amp(decomp, s.index(), r.index());
  std::vector<double> times{0.0};
  for (std::size_t k = 1;; ++k) {
    const double t = static_cast<double>(k) * pitch;
    if (t >= opts.t_max) break;
    times.push_back(t);
  }
  times.push_back(opts.t_max);
  std::vector<double> p(times.size());
  for (std::size_t k = 0; k < times.size(); ++k) p[k] = amp.probability(times[k]);

  const std::size_t last = times.size() - 1;
  for (std::size_t k = 1; k <= last; ++k) {
    const bool peak = p[k] > p[k - 1] && (k == last || p[k] >= p[k + 1]);
    if (!peak) continue;
    const double t = refine_maximum(amp, times[k - 1], k == last ? times[k] : times[k + 1]);
    const double deficit = transition_loss(decomp, s, r, t);
    if (deficit <= opts.tolerance) {
      const Complex entry = expm_i_entry(decomp, s.index(), r.index(), t);
      return PstCertificate{t, s, r, wrap_phase(std::arg(entry)), deficit, entry};
    }
  }
  return std::nullopt;
}

std::optional<PstCertificate> find_pst(const RealSymmetricMatrix& h, Vertex s, Vertex r,
                                       const PstSearchOptions& opts) {
  return find_pst(eig_sym(h), s, r, opts);
}

double CanonicalForm::diagonal(std::size_t i) const noexcept {
  return i < multipliers.size() ? kPi * static_cast<double>(multipliers[i])
                                : kPi * tail_multipliers[i - multipliers.size()];
}

RealSymmetricMatrix CanonicalForm::reconstruct() const {
  const std::size_t n = size();
  RealSymmetricMatrix out(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) {
      double v = a == b ? theta : 0.0;
      for (std::size_t i = 0; i < n; ++i) v += qt(i, a) * diagonal(i) * qt(i, b);
      out.set(a, b, v);
    }
  return out;
}

CanonicalForm canonical_decomposition(const EigenDecomposition& decomp,
                                      const PstCertificate& cert, const CanonicalOptions& opts) {
  const std::size_t n = decomp.size();
  check_vertex(cert.sender, n, "sender");
  check_vertex(cert.receiver, n, "receiver");
  const std::size_t s = cert.sender.index();
  const std::size_t r = cert.receiver.index();
  const double t0 = cert.t0;

  const double deficit = transition_loss(decomp, cert.sender, cert.receiver, t0);
  if (deficit > opts.pst_tolerance)
    throw PreconditionError("certificate does not certify perfect state transfer (1 - p = " +
                            std::to_string(deficit) + ")");
  const double theta = wrap_phase(std::arg(expm_i_entry(decomp, s, r, t0)));

  CanonicalForm form;
  form.t0 = t0;
  form.sender = cert.sender;
  form.receiver = cert.receiver;

  std::vector<std::size_t> support, tail;
  std::vector<long long> steps(n, 0);
  double residual = 0.0;
  std::size_t worst = 0;
  double worst_dev = -1.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double q1 = decomp.q(j, s);
    const double q2 = decomp.q(j, r);
    const double mag = std::abs(q1);
    if (mag > 1e-10 && mag < 1e-6)
      form.warnings.push_back("sender component of eigenvector " + std::to_string(j + 1) +
                              " is borderline (" + std::to_string(mag) + ")");
    if (mag <= opts.zero_threshold) {
      tail.push_back(j);
      residual = std::max({residual, mag, std::abs(q2)});
      continue;
    }
    support.push_back(j);
    const double phase = t0 * decomp.eigenvalues[j] - theta;
    const double k = std::round(phase / kPi);
    const double dev = std::abs(phase - kPi * k);
    steps[j] = static_cast<long long>(k);
    // e^{i(theta + pi k)} q2 = e^{i theta} q1  =>  q2 = (-1)^k q1
    const double parity = (steps[j] % 2 == 0) ? 1.0 : -1.0;
    const double rel = std::abs(q2 - parity * q1);
    const double local = std::max(dev, rel);
    if (local > worst_dev) {
      worst_dev = local;
      worst = j;
    }
    residual = std::max(residual, local);
  }
  if (residual > opts.tolerance)
    throw ClassificationError(
        "spectral phases on the sender support are not multiples of pi within " +
            std::to_string(opts.tolerance) + " (worst: eigenvalue " + std::to_string(worst + 1) +
            ", deviation " + std::to_string(worst_dev) + "); the PST certificate is too loose",
        worst, worst_dev);

  // Shift theta by 2 pi k so the smallest multiplier on the support is 1 or 2.
  long long lowest = steps[support.front()];
  for (std::size_t j : support) lowest = std::min(lowest, steps[j]);
  const long long diff = 1 - lowest;
  const long long shift = diff >= 0 ? (diff + 1) / 2 : -((-diff) / 2);
  form.theta = theta - 2.0 * kPi * static_cast<double>(shift);

  std::vector<std::size_t> even, odd;
  for (std::size_t j : support) {
    steps[j] += 2 * shift;
    (steps[j] % 2 == 0 ? even : odd).push_back(j);
  }
  auto by_multiplier = [&](std::size_t a, std::size_t b) { return steps[a] > steps[b]; };
  std::stable_sort(even.begin(), even.end(), by_multiplier);
  std::stable_sort(odd.begin(), odd.end(), by_multiplier);

  form.order = even;
  form.order.insert(form.order.end(), odd.begin(), odd.end());
  form.order.insert(form.order.end(), tail.begin(), tail.end());
  form.ell = even.size();
  form.m = support.size();
  form.permuted_eigvecs.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = form.order[i];
    const double sign = (i < form.m && decomp.q(j, s) < 0.0) ? -1.0 : 1.0;
    for (std::size_t c = 0; c < n; ++c) form.permuted_eigvecs.push_back(sign * decomp.q(j, c));
    if (i < form.m)
      form.multipliers.push_back(steps[j]);
    else
      form.tail_multipliers.push_back((t0 * decomp.eigenvalues[j] - form.theta) / kPi);
  }
  form.residual = residual;
  return form;
}

CanonicalForm canonical_decomposition(const RealSymmetricMatrix& h, const PstCertificate& cert,
                                      const CanonicalOptions& opts) {
  return canonical_decomposition(eig_sym(h), cert, opts);
}

SenderMoments sender_moments(const RealSymmetricMatrix& h, Vertex s) {
  check_vertex(s, h.size(), "sender");
  const std::size_t i = s.index();
  double off = 0.0;
  for (std::size_t k = 0; k < h.size(); ++k)
    if (k != i) off += h(i, k) * h(i, k);
  return {h(i, i), off};
}

}  // namespace pst
