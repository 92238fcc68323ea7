#pragma once

// Command-line front end. run_cli() does all the work so the tests can drive
// it in-process; tools/gic_cli.cpp is a thin main().
//
// Exit codes: 0 success, 2 usage, 3 input/output, 4 contract violation
// (failed subsample check, non-simplicial map, wrong ambient dimension).

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "gic/builders.hpp"
#include "gic/core/point_cloud.hpp"
#include "gic/core/simplicial_complex.hpp"
#include "gic/core/types.hpp"
#include "gic/graph.hpp"
#include "gic/homology.hpp"
#include "gic/metric.hpp"
#include "gic/recon.hpp"
#include "gic/samplers.hpp"
#include "gic/sampling.hpp"

namespace gic::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kIo = 3, kContract = 4 };

inline constexpr const char* kCsvHeader = "method,delta,Q,n0,n1,n2,n3,b0,b1,ms";

// Raised for flag combinations CLI11 cannot validate on its own.
class UsageError : public Error {
 public:
  using Error::Error;
};

struct SweepRecord {
  std::string method;  // "gic" or "rips-subsample"
  double delta = 0.0;
  std::size_t q = 0;
  std::array<std::size_t, 4> counts{};
  std::size_t b0 = 0;
  std::size_t b1 = 0;
  double ms = 0.0;
};

inline void write_sweep_csv(std::ostream& out, const std::vector<SweepRecord>& rows) {
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    out << r.method << ',' << std::setprecision(10) << r.delta << ',' << r.q;
    for (auto c : r.counts) out << ',' << c;
    out << ',' << r.b0 << ',' << r.b1 << ',' << std::fixed << std::setprecision(3) << r.ms << std::defaultfloat
        << '\n';
  }
}

// "a:b:step", inclusive of b up to rounding.
inline std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("--grid: '" + item + "' is not a number");
    }
  }
  if (parts.size() != 3) throw UsageError("--grid expects a:b:step");
  const double a = parts[0], b = parts[1], step = parts[2];
  if (!(step > 0.0)) throw UsageError("--grid step must be positive");
  if (!(a > 0.0)) throw UsageError("--grid start must be positive");
  if (b < a) throw UsageError("--grid is empty: end precedes start");
  const auto n = static_cast<std::size_t>(std::floor((b - a) / step + 1e-9)) + 1;
  std::vector<double> grid;
  for (std::size_t i = 0; i < n; ++i) grid.push_back(a + static_cast<double>(i) * step);
  return grid;
}

namespace detail {

using Clock = std::chrono::steady_clock;

inline double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

inline MetricKind metric_of(const std::string& name) {
  return name == "graph" ? MetricKind::Graph : MetricKind::Euclidean;
}

inline void require_subsample(const Subsample& s, const PointCloud& cloud, const std::string& what) {
  const auto report = verify_subsample(s, cloud);
  if (!report) throw ContractError(what + " subsample check failed: " + report.message);
}

inline void print_counts(std::ostream& out, const std::string& label, const SimplicialComplex& k) {
  out << label;
  for (int d = 0; d <= k.max_dim(); ++d) out << ' ' << k.count(d);
  out << '\n';
}

inline std::size_t component_count(const NeighborhoodGraph& graph) {
  const auto comp = connected_components(graph);
  return comp.empty() ? 0 : static_cast<std::size_t>(*std::max_element(comp.begin(), comp.end())) + 1;
}

inline void warn_if_disconnected(const NeighborhoodGraph& graph, MetricKind kind, std::ostream& err) {
  if (kind != MetricKind::Graph) return;
  const auto c = component_count(graph);
  if (c > 1) {
    err << "warning: the neighborhood graph has " << c
        << " connected components; the graph metric is infinite between them, so each component is subsampled "
           "and built separately\n";
  }
}

template <class Write>
void write_file(const std::string& path, Write&& write) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  write(f);
  f.flush();
  if (!f) throw IoError("write to '" + path + "' failed");
}

struct Common {
  std::string points;
  double alpha = 0.0;
  double delta = 0.0;
  std::string metric = "euclidean";
  int max_dim = 3;
  Vertex seed = 0;
  bool farthest = false;

  SeedStrategy strategy() const { return farthest ? SeedStrategy::FarthestPoint : SeedStrategy::FirstUncovered; }
};

inline void add_points(CLI::App* sub, Common& c) {
  sub->add_option("--points", c.points, "whitespace or comma separated point file, one point per row")->required();
}

inline void add_alpha(CLI::App* sub, Common& c) {
  sub->add_option("--alpha", c.alpha, "neighborhood graph scale")->required()->check(CLI::NonNegativeNumber);
}

inline void add_delta(CLI::App* sub, Common& c) {
  sub->add_option("--delta", c.delta, "subsample sparsity and cover radius")->required()->check(CLI::PositiveNumber);
}

inline void add_metric(CLI::App* sub, Common& c) {
  sub->add_option("--metric", c.metric, "subsampling metric")->check(CLI::IsMember({"euclidean", "graph"}));
}

inline void add_seed(CLI::App* sub, Common& c) {
  sub->add_option("--seed", c.seed, "index of the first subsample point");
  sub->add_flag("--farthest", c.farthest, "farthest-point seeding instead of first uncovered");
}

// Subsample under the chosen metric over G^alpha, checked exhaustively.
inline Subsample checked_subsample(const PointCloud& cloud, const std::shared_ptr<const NeighborhoodGraph>& graph,
                                   const Common& c, double delta) {
  if (c.seed >= cloud.size()) throw UsageError("--seed must be a point index below " + std::to_string(cloud.size()));
  const auto metric =
      metric_of(c.metric) == MetricKind::Graph ? MetricChoice::graph(graph) : MetricChoice::euclidean();
  auto s = greedy_subsample(cloud, metric, delta, c.seed, c.strategy());
  require_subsample(s, cloud, "delta=" + std::to_string(delta));
  return s;
}

}  // namespace detail

inline int cmd_build(const detail::Common& c, const std::string& out_path, const std::string& subsample_path,
                     std::ostream& out, std::ostream& err) {
  const auto cloud = load_points(c.points);
  auto graph = std::make_shared<const NeighborhoodGraph>(build_neighborhood_graph(cloud, c.alpha));
  detail::warn_if_disconnected(*graph, detail::metric_of(c.metric), err);
  const auto s = detail::checked_subsample(cloud, graph, c, c.delta);
  const auto gic = build_gic(*graph, s, c.max_dim);
  if (!out_path.empty()) detail::write_file(out_path, [&](std::ostream& f) { write_complex(f, *gic.complex); });
  if (!subsample_path.empty()) detail::write_file(subsample_path, [&](std::ostream& f) { write_subsample(f, s); });
  out << "points " << cloud.size() << '\n';
  out << "graph_edges " << graph->edge_count() << '\n';
  out << "Q " << s.size() << '\n';
  detail::print_counts(out, "simplices", *gic.complex);
  return kOk;
}

inline int cmd_betti(const std::string& path, std::optional<int> max_k, std::ostream& out) {
  const auto complex = load_complex(path);
  const int k = max_k.value_or(std::max(0, complex.dimension()));
  const auto h = betti_numbers(complex, k, false);
  for (std::size_t i = 0; i < h.betti.size(); ++i) out << (i ? " " : "") << h.betti[i];
  out << '\n';
  return kOk;
}

inline int cmd_pair_persist(const detail::Common& c, double delta2, int k, double multiplier, std::ostream& out,
                            std::ostream& err) {
  if (!(delta2 > c.delta)) throw UsageError("--delta2 must exceed --delta");
  const auto cloud = load_points(c.points);
  PairOptions opt;
  opt.multiplier = multiplier;
  opt.max_dim = std::max(c.max_dim, k + 1);
  opt.seed = c.seed;
  opt.strategy = c.strategy();
  if (c.seed >= cloud.size()) throw UsageError("--seed must be a point index below " + std::to_string(cloud.size()));
  std::optional<GicPair> pair;
  try {
    pair.emplace(build_gic_pair(cloud, c.alpha, c.delta, delta2, detail::metric_of(c.metric), opt));
  } catch (const SimplicialityError& e) {
    err << "error: " << e.what() << '\n'
        << "hint: the map from the first complex to the second is not simplicial at this scale; increase "
           "--multiplier\n";
    return kContract;
  }
  detail::require_subsample(*pair->first.subsample, cloud, "first");
  detail::require_subsample(*pair->second.subsample, cloud, "second");
  const auto r = induced_map_rank(pair->map, k);
  out << "K1 Q " << pair->first.subsample->size() << '\n';
  detail::print_counts(out, "K1 simplices", *pair->first.complex);
  out << "K2 Q " << pair->second.subsample->size() << '\n';
  detail::print_counts(out, "K2 simplices", *pair->second.complex);
  out << "betti_" << k << " K1 " << r.domain_betti << " K2 " << r.codomain_betti << '\n';
  out << "rank " << r.rank << '\n';
  return kOk;
}

// One gic row and one rips-subsample row per delta, both on the same Q.
inline std::vector<SweepRecord> run_sweep(const PointCloud& cloud, const detail::Common& c,
                                          const std::vector<double>& grid, int rips_max_dim, std::ostream& err) {
  auto graph = std::make_shared<const NeighborhoodGraph>(build_neighborhood_graph(cloud, c.alpha));
  detail::warn_if_disconnected(*graph, detail::metric_of(c.metric), err);
  std::vector<SweepRecord> rows;
  auto record = [](const std::string& method, double delta, std::size_t q, const SimplicialComplex& k, double ms) {
    SweepRecord r;
    r.method = method;
    r.delta = delta;
    r.q = q;
    for (int d = 0; d < 4; ++d) r.counts[static_cast<std::size_t>(d)] = k.count(d);
    const auto h = betti_numbers(k, 1, false);
    r.b0 = h.betti[0];
    r.b1 = h.betti[1];
    r.ms = ms;
    return r;
  };
  for (double delta : grid) {
    auto t0 = detail::Clock::now();
    const auto s = detail::checked_subsample(cloud, graph, c, delta);
    const double sample_ms = detail::ms_since(t0);
    t0 = detail::Clock::now();
    const auto gic = build_gic(*graph, s, c.max_dim);
    rows.push_back(record("gic", delta, s.size(), *gic.complex, sample_ms + detail::ms_since(t0)));
    t0 = detail::Clock::now();
    const auto rips = build_rips_on_subset(cloud, s.q_indices, c.alpha + 2.0 * delta, rips_max_dim);
    rows.push_back(record("rips-subsample", delta, s.size(), rips, sample_ms + detail::ms_since(t0)));
  }
  std::stable_sort(rows.begin(), rows.end(), [](const SweepRecord& a, const SweepRecord& b) {
    return a.method != b.method ? a.method < b.method : a.delta < b.delta;
  });
  return rows;
}

inline int cmd_sweep(const detail::Common& c, const std::string& grid_text, int rips_max_dim,
                     const std::string& out_path, std::ostream& out, std::ostream& err) {
  const auto grid = parse_grid(grid_text);
  const auto cloud = load_points(c.points);
  const auto rows = run_sweep(cloud, c, grid, rips_max_dim, err);
  if (out_path.empty()) {
    write_sweep_csv(out, rows);
  } else {
    detail::write_file(out_path, [&](std::ostream& f) { write_sweep_csv(f, rows); });
    out << "wrote " << rows.size() << " rows to " << out_path << '\n';
  }
  return kOk;
}

inline int cmd_reconstruct(const detail::Common& c, const std::string& off_path, std::string defects_path,
                           double sharp_angle, std::ostream& out) {
  const auto cloud = load_points(c.points);
  recon::ReconstructOptions opt;
  opt.seed = c.seed;
  opt.strategy = c.strategy();
  opt.extract.sharp_angle_deg = sharp_angle;
  if (c.seed >= cloud.size() && cloud.dim() == 3) {
    throw UsageError("--seed must be a point index below " + std::to_string(cloud.size()));
  }
  const auto r = recon::reconstruct_surface(cloud, c.alpha, c.delta, opt);
  const auto& mesh = r.extraction.mesh;
  detail::write_file(off_path, [&](std::ostream& f) { recon::write_off(f, mesh); });
  if (defects_path.empty()) defects_path = off_path + ".defects.txt";
  detail::write_file(defects_path, [&](std::ostream& f) {
    recon::write_defects(f, r.extraction.defects);
    for (const auto& n : r.intersection_report.notes) f << "note " << n << '\n';
  });
  auto triple = [&](const char* label, const std::array<std::size_t, 3>& a) {
    out << label << ' ' << a[0] << ' ' << a[1] << ' ' << a[2] << '\n';
  };
  out << "Q " << r.subsample.size() << '\n';
  triple("gic", r.gic_counts);
  triple("embedded", r.embedded_counts);
  triple("pruned", r.pruned_counts);
  out << "sharp_pruned " << r.extraction.sharp_pruned << '\n';
  out << "mesh " << mesh.vertex_count() << ' ' << mesh.edge_count() << ' ' << mesh.face_count() << '\n';
  out << "euler " << mesh.euler_characteristic() << '\n';
  if (mesh.face_count() > 0) {
    const auto h = betti_numbers(mesh.to_complex(), 2, false);
    out << "betti " << h.betti[0] << ' ' << h.betti[1] << ' ' << h.betti[2] << '\n';
  } else {
    out << "betti 0 0 0\n";
  }
  out << "watertight " << (mesh.watertight() ? "yes" : "no") << '\n';
  out << "defects " << (r.extraction.defects.empty() ? "none" : "see " + defects_path) << '\n';
  return kOk;
}

struct SampleFlags {
  std::string shape;
  std::size_t n = 1000;
  double radius = 1.0;
  double inner = 0.5;
  double outer = 1.0;
  double big_r = 1.0;
  double small_r = 0.4;
  double noise = 0.0;
  bool fibonacci = false;
  std::uint64_t seed = samplers::kDefaultSeed;
};

inline PointCloud sample(const SampleFlags& s) {
  if (s.shape == "circle") return samplers::circle(s.n, s.radius, s.noise, s.seed);
  if (s.shape == "annulus") {
    if (!(s.inner >= 0.0 && s.outer > s.inner)) throw UsageError("annulus needs 0 <= --inner < --outer");
    return samplers::annulus(s.n, s.inner, s.outer, s.noise, s.seed);
  }
  if (s.shape == "sphere") return samplers::sphere(s.n, s.radius, s.fibonacci, s.noise, s.seed);
  if (s.shape == "torus") {
    if (!(s.big_r > s.small_r && s.small_r > 0.0)) throw UsageError("torus needs 0 < --small-r < --big-r");
    return samplers::torus(s.n, s.big_r, s.small_r, s.noise, s.seed);
  }
  return samplers::klein_bottle(s.n, s.big_r, s.small_r, s.noise, s.seed);
}

inline int cmd_sample(const SampleFlags& s, const std::string& out_path, std::ostream& out) {
  const auto cloud = sample(s);
  if (out_path.empty()) {
    write_points(out, cloud);
  } else {
    detail::write_file(out_path, [&](std::ostream& f) { write_points(f, cloud); });
  }
  return kOk;
}

// args excludes the program name.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Graph induced complexes: build, homology, sweeps, surface reconstruction", "gic"};
  app.require_subcommand(1);

  detail::Common c;
  std::string out_path, subsample_path, complex_path, grid_text, defects_path;
  std::optional<int> max_k;
  double delta2 = 0.0, multiplier = 4.0, sharp_angle = 60.0;
  int k = 1, rips_max_dim = 2;
  SampleFlags sf;

  auto* build = app.add_subcommand("build", "graph induced complex of a point file");
  detail::add_points(build, c);
  detail::add_alpha(build, c);
  detail::add_delta(build, c);
  detail::add_metric(build, c);
  build->add_option("--max-dim", c.max_dim, "largest simplex dimension")->check(CLI::Range(0, 10));
  detail::add_seed(build, c);
  build->add_option("--out", out_path, "complex file (maximal simplices, one per line)");
  build->add_option("--subsample-out", subsample_path, "nearest-point map file");

  auto* betti = app.add_subcommand("betti", "Z2 Betti numbers of a complex file");
  betti->add_option("complex,--complex", complex_path, "complex file")->required();
  betti->add_option("--max-k", max_k, "highest homology dimension (default: dimension of the complex)")
      ->check(CLI::NonNegativeNumber);

  auto* pair = app.add_subcommand("pair-persist", "rank of the map between the complexes at delta and delta2");
  detail::add_points(pair, c);
  detail::add_alpha(pair, c);
  detail::add_delta(pair, c);
  pair->add_option("--delta2", delta2, "coarser subsample radius")->required()->check(CLI::PositiveNumber);
  detail::add_metric(pair, c);
  pair->add_option("--k", k, "homology dimension")->check(CLI::NonNegativeNumber);
  pair->add_option("--max-dim", c.max_dim, "largest simplex dimension (at least k+1 is used)")
      ->check(CLI::Range(0, 10));
  pair->add_option("--multiplier", multiplier, "scale factor for the second graph")->check(CLI::Range(1.0, 1e9));
  detail::add_seed(pair, c);

  auto* sweep = app.add_subcommand("sweep", "beta_0 and beta_1 over a delta grid, as CSV");
  detail::add_points(sweep, c);
  detail::add_alpha(sweep, c);
  sweep->add_option("--grid", grid_text, "delta grid a:b:step")->required();
  detail::add_metric(sweep, c);
  sweep->add_option("--max-dim", c.max_dim, "largest simplex dimension of the gic complexes")
      ->check(CLI::Range(1, 10));
  sweep->add_option("--rips-max-dim", rips_max_dim, "largest simplex dimension of the Rips baseline")
      ->check(CLI::Range(1, 10));
  detail::add_seed(sweep, c);
  sweep->add_option("--out", out_path, "CSV file (default: standard output)");

  auto* rec = app.add_subcommand("reconstruct", "surface mesh from a point file in R^3");
  detail::add_points(rec, c);
  detail::add_alpha(rec, c);
  detail::add_delta(rec, c);
  rec->add_option("--out", out_path, "OFF mesh file")->required();
  rec->add_option("--defects", defects_path, "defect report (default: <out>.defects.txt)");
  rec->add_option("--sharp-angle", sharp_angle, "sharp edge threshold in degrees")->check(CLI::Range(0.0, 360.0));
  detail::add_seed(rec, c);

  auto* smp = app.add_subcommand("sample", "synthetic point sample");
  smp->add_option("shape", sf.shape, "circle, annulus, sphere, torus or klein")
      ->required()
      ->check(CLI::IsMember({"circle", "annulus", "sphere", "torus", "klein"}));
  smp->add_option("--n", sf.n, "number of points");
  smp->add_option("--radius", sf.radius, "circle and sphere radius")->check(CLI::PositiveNumber);
  smp->add_option("--inner", sf.inner, "annulus inner radius");
  smp->add_option("--outer", sf.outer, "annulus outer radius");
  smp->add_option("--big-r", sf.big_r, "torus and Klein bottle major radius")->check(CLI::PositiveNumber);
  smp->add_option("--small-r", sf.small_r, "torus and Klein bottle minor radius")->check(CLI::PositiveNumber);
  smp->add_option("--noise", sf.noise, "Gaussian noise per coordinate")->check(CLI::NonNegativeNumber);
  smp->add_flag("--fibonacci", sf.fibonacci, "deterministic spiral on the sphere");
  smp->add_option("--seed", sf.seed, "random seed");
  smp->add_option("--out", out_path, "point file (default: standard output)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (build->parsed()) return cmd_build(c, out_path, subsample_path, out, err);
    if (betti->parsed()) return cmd_betti(complex_path, max_k, out);
    if (pair->parsed()) {
      if (pair->count("--max-dim") == 0) c.max_dim = k + 1;
      return cmd_pair_persist(c, delta2, k, multiplier, out, err);
    }
    if (sweep->parsed()) {
      if (sweep->count("--max-dim") == 0) c.max_dim = 2;
      return cmd_sweep(c, grid_text, rips_max_dim, out_path, out, err);
    }
    if (rec->parsed()) return cmd_reconstruct(c, out_path, defects_path, sharp_angle, out);
    if (smp->parsed()) return cmd_sample(sf, out_path, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const PreconditionError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kIo;
  } catch (const FormatError& e) {
    err << "input error: " << e.what() << '\n';
    return kIo;
  } catch (const EmptyInputError& e) {
    err << "input error: " << e.what() << '\n';
    return kIo;
  } catch (const DimensionError& e) {
    err << "dimension error: " << e.what() << '\n';
    return kContract;
  } catch (const Error& e) {
    err << "contract violation: " << e.what() << '\n';
    return kContract;
  }
  return kUsage;
}

}  // namespace gic::cli
