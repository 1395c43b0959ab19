// pstbounds: state-transfer fidelities and perturbation bounds from the
// command line. Exit codes: 0 success, 2 precondition failure, 3 reproduce
// mismatch.

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "pst/bounds.hpp"
#include "pst/error.hpp"
#include "pst/experiments.hpp"
#include "pst/fidelity.hpp"
#include "pst/graph.hpp"

namespace {

constexpr int kExitPrecondition = 2;
constexpr int kExitMismatch = 3;

struct Common {
  std::string graph_file;
  std::string family;
  std::string kind = "adj";
  std::size_t sender = 1;
  std::size_t receiver = 0;  // 0: last vertex
  std::string format = "csv";
  std::string out;
};

void add_common(CLI::App& cmd, Common& c) {
  auto* g = cmd.add_option("--graph", c.graph_file, "Edge-list file");
  auto* f = cmd.add_option("--family", c.family, "Graph family name:n (path, krawtchouk, cme)");
  g->excludes(f);
  cmd.add_option("--kind", c.kind, "Hamiltonian: adj or lap")->check(CLI::IsMember({"adj", "lap"}));
  cmd.add_option("--sender", c.sender, "Sender vertex (1-based)");
  cmd.add_option("--receiver", c.receiver, "Receiver vertex (1-based, default n)");
  cmd.add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  cmd.add_option("--out", c.out, "Write output to a file instead of stdout");
}

struct Problem {
  pst::WeightedGraph graph;
  pst::HamiltonianKind kind;
  pst::Vertex sender;
  pst::Vertex receiver;
};

Problem load(const Common& c) {
  if (c.graph_file.empty() && c.family.empty())
    throw pst::PreconditionError("one of --graph or --family is required");
  pst::WeightedGraph g =
      c.graph_file.empty() ? pst::family_graph(c.family) : pst::read_edge_list_file(c.graph_file);
  for (const std::string& w : pst::graph_warnings(g)) std::cerr << "warning: " << w << '\n';
  const std::size_t n = g.vertex_count();
  const pst::Vertex r{c.receiver == 0 ? n : c.receiver};
  const auto kind = c.kind == "lap" ? pst::HamiltonianKind::Laplacian : pst::HamiltonianKind::Adjacency;
  return Problem{std::move(g), kind, pst::Vertex{c.sender}, r};
}

void write(const Common& c, const pst::Table& t) {
  const std::string text = pst::emit_table(t, pst::parse_table_format(c.format));
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw pst::PreconditionError("cannot write " + c.out);
  f << text;
}

void report_row(pst::Table& t, const pst::BoundReport& rep) {
  std::string notes;
  for (const std::string& n : rep.notes) notes += (notes.empty() ? "" : "; ") + n;
  pst::Cell exact = std::monostate{};
  if (rep.exact) exact = *rep.exact;
  t.rows.push_back({rep.name,
                    std::string(rep.sense == pst::BoundSense::FidelityLower ? "fidelity_lower"
                                                                            : "loss_upper"),
                    rep.value, rep.raw_value, rep.valid, rep.clamped, rep.asymptotic, exact,
                    notes});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Perfect state transfer fidelities and perturbation bounds"};
  app.require_subcommand(1);

  Common common;

  auto* fid = app.add_subcommand("fidelity", "Transition probability at a time");
  add_common(*fid, common);
  double t = 0.0;
  fid->add_option("--t", t, "Time")->required();

  auto* find = app.add_subcommand("find-pst", "Search for perfect state transfer");
  add_common(*find, common);
  std::optional<double> t_max;
  double pst_tol = pst::kDefaultPstTolerance;
  find->add_option("--t-max", t_max, "Search horizon (default 8 pi n / spectral spread)");
  find->add_option("--tol", pst_tol, "Tolerance on 1 - p");

  auto* st = app.add_subcommand("sweep-time", "Readout-time sweep of exact fidelity and bounds");
  add_common(*st, common);
  double h_min = -0.1, h_max = 0.1;
  std::size_t steps = 21;
  st->add_option("--h-min", h_min, "Smallest readout offset");
  st->add_option("--h-max", h_max, "Largest readout offset");
  st->add_option("--steps", steps, "Grid points (>= 2)");

  auto* se = app.add_subcommand("sweep-edge", "Random edge-weight perturbations");
  add_common(*se, common);
  std::vector<double> magnitudes{1e-4};
  std::size_t trials = 10;
  std::uint64_t seed = 1;
  std::string support = "edges-only";
  se->add_option("--magnitudes", magnitudes, "Spectral norms of H0")->delimiter(',');
  se->add_option("--trials", trials, "Trials per magnitude");
  se->add_option("--seed", seed, "PRNG seed");
  se->add_option("--support", support, "edges-only, all-offdiagonal or include-diagonal");

  auto* rep = app.add_subcommand("reproduce", "Run a fixed reproduction case");
  std::string case_id = "all";
  std::string rep_format = "csv", rep_out;
  rep->add_option("case", case_id, "Case id or 'all'");
  rep->add_option("--format", rep_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  rep->add_option("--out", rep_out, "Write output to a file instead of stdout");

  auto* bnd = app.add_subcommand("bound", "Evaluate the closed-form bounds");
  add_common(*bnd, common);
  std::optional<double> h_offset;
  std::string perturbation;
  bnd->add_option("--offset", h_offset, "Readout offset h for the time bounds");
  bnd->add_option("--perturbation", perturbation, "Matrix file with H0 for the edge bounds");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitPrecondition;
  }

  try {
    if (*rep) {
      std::vector<std::string> ids =
          case_id == "all" ? pst::reproduce_case_ids() : std::vector<std::string>{case_id};
      pst::Table out;
      bool pass = true;
      for (const std::string& id : ids) {
        const pst::ReproduceReport r = pst::reproduce(id);
        pass = pass && r.pass;
        pst::Table part = r.to_table();
        if (out.columns.empty()) out.columns = part.columns;
        for (auto& row : part.rows) out.rows.push_back(std::move(row));
        std::cerr << id << ": " << (r.pass ? "pass" : "FAIL") << '\n';
      }
      Common c;
      c.format = rep_format;
      c.out = rep_out;
      write(c, out);
      return pass ? 0 : kExitMismatch;
    }

    const Problem p = load(common);
    const pst::RealSymmetricMatrix h = pst::hamiltonian(p.graph, p.kind);

    if (*fid) {
      const pst::EigenDecomposition d = pst::eig_sym(h);
      const pst::Complex u = pst::expm_i(d, t)(p.sender.index(), p.receiver.index());
      pst::Table out;
      out.columns = {"t", "sender", "receiver", "p", "amplitude_real", "amplitude_imag"};
      out.rows.push_back({t, static_cast<long long>(p.sender.label),
                          static_cast<long long>(p.receiver.label),
                          pst::transition_probability(d, p.sender, p.receiver, t), u.real(),
                          u.imag()});
      write(common, out);
    } else if (*find) {
      const pst::EigenDecomposition d = pst::eig_sym(h);
      pst::PstSearchOptions opts;
      const double spread = d.eigenvalues.back() - d.eigenvalues.front();
      opts.t_max = t_max ? *t_max : (spread > 0.0 ? pst::default_pst_horizon(d) : 1.0);
      opts.tolerance = pst_tol;
      const auto cert = pst::find_pst(d, p.sender, p.receiver, opts);
      pst::Table out;
      out.columns = {"found", "t0", "theta", "fidelity_deficit", "entry_real", "entry_imag", "t_max"};
      if (cert)
        out.rows.push_back({true, cert->t0, cert->theta, cert->fidelity_deficit,
                            cert->entry.real(), cert->entry.imag(), opts.t_max});
      else
        out.rows.push_back({false, std::monostate{}, std::monostate{}, std::monostate{},
                            std::monostate{}, std::monostate{}, opts.t_max});
      write(common, out);
    } else if (*st) {
      write(common, pst::sweep_time(p.graph, p.kind, p.sender, p.receiver, h_min, h_max, steps));
    } else if (*se) {
      write(common, pst::sweep_edge(p.graph, p.kind, p.sender, p.receiver, magnitudes, trials,
                                    seed, pst::parse_support(support)));
    } else if (*bnd) {
      if (!h_offset && perturbation.empty())
        throw pst::PreconditionError("bound needs --offset and/or --perturbation");
      const pst::EigenDecomposition d = pst::eig_sym(h);
      std::optional<pst::PstCertificate> cert;
      try {
        cert = pst::locate_pst(d, p.sender, p.receiver);
      } catch (const pst::PreconditionError& e) {
        std::cerr << "warning: " << e.what() << '\n';
      }
      pst::Table out;
      out.columns = {"bound", "sense", "value", "raw_value", "valid", "clamped",
                     "asymptotic", "exact", "notes"};
      if (h_offset) {
        const double dt = *h_offset;
        std::optional<double> exact;
        if (cert) exact = pst::transition_probability(d, p.sender, p.receiver, cert->t0 + dt);
        auto ext = pst::time_bound_extremal(d.eigenvalues.front(), d.eigenvalues.back(), dt);
        if (p.kind == pst::HamiltonianKind::Adjacency && !p.graph.has_negative_weight() &&
            p.graph.vertex_count() > 2)
          ext.notes.emplace_back("not attained: equality needs a two-vertex graph");
        const double mean = pst::sender_moments(h, p.sender).mean;
        std::vector<pst::BoundReport> reports{
            ext, pst::time_bound_variance(h, d, p.sender, dt),
            pst::time_bound_weighted(d, p.sender, dt, mean),
            pst::time_bound_weighted(d, p.sender, dt, d.eigenvalues.front())};
        reports[2].name = "weighted_mean";
        reports[3].name = "weighted_lambda1";
        if (p.kind == pst::HamiltonianKind::Laplacian && d.size() >= 3 && d.eigenvalues[1] > 1e-12)
          reports.push_back(pst::laplacian_time_bound(d.eigenvalues[1], d.eigenvalues.back(),
                                                      d.size(), dt));
        for (auto& r : reports) {
          r.exact = exact;
          if (!cert) {
            r.valid = false;
            r.notes.emplace_back("no perfect state transfer found");
          }
          report_row(out, r);
        }
      }
      if (!perturbation.empty()) {
        const pst::RealSymmetricMatrix h0 = pst::read_matrix_file(perturbation);
        if (h0.size() != h.size())
          throw pst::PreconditionError("perturbation dimension does not match the graph");
        std::optional<double> loss;
        std::size_t m = 0;
        if (cert) {
          loss = pst::transition_loss(pst::eig_sym(cert->t0 * h + h0), p.sender, p.receiver, 1.0);
          try {
            m = pst::canonical_decomposition(d, *cert).m;
          } catch (const pst::ClassificationError& e) {
            std::cerr << "warning: " << e.what() << '\n';
          }
        }
        pst::OperatorEdgeBound op = pst::edge_bound_operator(h0);
        const pst::EdgeComparison cmp = pst::edge_bound_comparison(h0);
        pst::BoundReport fro =
            pst::edge_bound_frobenius_from_norms(cmp.spectral, cmp.frobenius, m, h.size());
        for (pst::BoundReport* r : {&op.exponential, &op.polynomial, &fro}) {
          r->exact = loss;
          if (!cert) {
            r->valid = false;
            r->notes.emplace_back("no perfect state transfer found");
          }
          report_row(out, *r);
        }
        out.rows.push_back({std::string("frobenius_sharper"), std::string("comparison"),
                            cmp.lhs, cmp.spectral, cmp.frobenius_sharper, false, false,
                            std::monostate{},
                            "rank=" + std::to_string(cmp.rank) +
                                " rank_threshold=" + std::to_string(cmp.rank_threshold) +
                                (cmp.rank_condition ? " (rank condition met)" : "")});
      }
      write(common, out);
    }
  } catch (const pst::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitPrecondition;
  }
  return 0;
}
