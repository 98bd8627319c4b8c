#include "pkc/euclid2k.hpp"

namespace pkc {

TwoCenter solve_two_center_outliers(std::span<const Point> P, int k, SearchMode mode, std::uint64_t seed,
                                    const Euclid2kConfig& cfg, SolveStats* stats) {
  if (P.empty()) throw EmptyInput();
  const int n = static_cast<int>(P.size());
  if (k < 0) throw std::invalid_argument("k must be nonnegative");
  if (n - k <= 2) {
    TwoCenter out;
    out.c1 = P[0];
    out.c2 = n > 1 ? P[1] : P[0];
    out.outliers = uncovered(P, out.c1, out.c2, 0.0, cfg.eps);
    return out;
  }
  // The nearly concentric value bounds the well-separated search from above,
  // so the latter only has to look at strictly smaller candidates.
  const SolveResult nc = solve_nearly_concentric(P, k, mode, seed, cfg, stats);
  const SolveResult ws = optimize_well_separated(P, k, cfg, stats, nc.found ? nc.best.radius : kInfinity);
  TwoCenter best = ws.found ? ws.best : nc.best;
  const std::vector<double> radii = candidate_radii(P, cfg.eps);
  best.radius = snap_to_candidate(radii, best.radius);
  return best;
}

}  // namespace pkc
