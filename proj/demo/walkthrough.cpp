// Walkthrough: from a noisy point sample to homology and a surface mesh.
//
//   ./walkthrough            prints each stage for a circle and a torus
//   ./walkthrough mesh.off   also writes the torus mesh

#include <fstream>
#include <iostream>

#include "gic/builders.hpp"
#include "gic/homology.hpp"
#include "gic/recon.hpp"
#include "gic/samplers.hpp"
#include "gic/sampling.hpp"

namespace {

void print_betti(const char* label, const gic::SimplicialComplex& k, int max_k) {
  const auto h = gic::betti_numbers(k, max_k, false);
  std::cout << label << " betti:";
  for (auto b : h.betti) std::cout << ' ' << b;
  std::cout << "   simplices:";
  for (int d = 0; d <= k.max_dim(); ++d) std::cout << ' ' << k.count(d);
  std::cout << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  // A circle: 200 noisy points. Rips at alpha is big, the GIC on a
  // delta-sample is small, and both see one loop.
  const auto circle = gic::samplers::circle(200, 1.0, 0.01);
  const double alpha = 0.2, delta = 0.3;
  const auto graph = gic::build_neighborhood_graph(circle, alpha);
  const auto sample = gic::greedy_subsample(circle, gic::MetricChoice::euclidean(), delta);
  std::cout << "circle: " << circle.size() << " points, " << graph.edge_count() << " graph edges, |Q| = "
            << sample.size() << ", subsample check " << (gic::verify_subsample(sample, circle) ? "ok" : "FAILED")
            << '\n';
  print_betti("  Rips  ", gic::build_rips(circle, alpha, 2), 1);
  print_betti("  GIC   ", *gic::build_gic(graph, sample, 2).complex, 1);
  print_betti("  Rips/Q", gic::build_rips_on_subset(circle, sample.q_indices, alpha + 2 * delta, 2), 1);

  // The same pair at two scales: the image of H_1 under the vertex map is
  // the loop of the underlying circle.
  const auto pair = gic::build_gic_pair(circle, alpha, 0.1, 0.2, gic::MetricKind::Euclidean);
  std::cout << "  rank of H_1 map between delta = 0.1 and 0.2: " << gic::induced_map_rank(pair.map, 1).rank << '\n';

  // A torus in R^3 through the reconstruction pipeline.
  const auto torus = gic::samplers::torus(3000, 1.0, 0.4);
  const auto r = gic::recon::reconstruct_surface(torus, 0.3, 0.12);
  const auto& mesh = r.extraction.mesh;
  std::cout << "torus: " << torus.size() << " points, |Q| = " << r.subsample.size() << '\n'
            << "  triangles: gic " << r.gic_counts[2] << ", embedded " << r.embedded_counts[2] << ", small "
            << r.pruned_counts[2] << ", mesh " << mesh.face_count() << '\n'
            << "  mesh: chi = " << mesh.euler_characteristic() << ", watertight " << (mesh.watertight() ? "yes" : "no")
            << '\n';
  print_betti("  mesh  ", mesh.to_complex(), 2);
  if (argc > 1) {
    std::ofstream f(argv[1]);
    gic::recon::write_off(f, mesh);
    std::cout << "  wrote " << argv[1] << '\n';
  }
  return 0;
}
