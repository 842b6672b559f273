#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "dtn/harmonics.hpp"
#include "dtn/surface.hpp"

namespace dtn::surface {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Rectangular geodesic mesh on the (s, phi) parameter cylinder, with pole
// vertices for closed profiles. Graph distances overestimate intrinsic
// ones, so the diameter converges from above under refinement; a
// path-straightening pass removes the direction-quantization bias.
struct GeoMesh {
  const ProfileCurve* prof = nullptr;
  std::vector<double> srow, rho, rho_mid;  // rho_mid[i] between rows i, i+1
  int rows = 0, around = 0;
  bool poles = false;
  int pole_left = -1, pole_right = -1;

  int nodes() const { return rows * around + (poles ? 2 : 0); }
  int id(int i, int j) const { return i * around + ((j % around + around) % around); }

  double vertical(int i) const { return srow[i + 1] - srow[i]; }
  double horizontal(int i) const { return rho[i] * 2.0 * harmonics::kPi / around; }
  double diagonal(int i) const {
    const double ds = srow[i + 1] - srow[i];
    const double dphi = 2.0 * harmonics::kPi / around;
    auto piece = [&](double r) { return std::hypot(ds, r * dphi); };
    return (piece(rho[i]) + 4.0 * piece(rho_mid[i]) + piece(rho[i + 1])) / 6.0;
  }

  template <typename Visit>
  void neighbors(int u, Visit&& visit) const {
    if (poles && u == pole_left) {
      for (int j = 0; j < around; ++j) visit(id(0, j), srow[0]);
      return;
    }
    if (poles && u == pole_right) {
      const double tail = prof->length - srow[rows - 1];
      for (int j = 0; j < around; ++j) visit(id(rows - 1, j), tail);
      return;
    }
    const int i = u / around, j = u % around;
    visit(id(i, j + 1), horizontal(i));
    visit(id(i, j - 1), horizontal(i));
    if (i + 1 < rows) {
      visit(id(i + 1, j), vertical(i));
      visit(id(i + 1, j + 1), diagonal(i));
      visit(id(i + 1, j - 1), diagonal(i));
    } else if (poles) {
      visit(pole_right, prof->length - srow[rows - 1]);
    }
    if (i > 0) {
      visit(id(i - 1, j), vertical(i - 1));
      visit(id(i - 1, j + 1), diagonal(i - 1));
      visit(id(i - 1, j - 1), diagonal(i - 1));
    } else if (poles) {
      visit(pole_left, srow[0]);
    }
  }
};

GeoMesh make_mesh(const ProfileCurve& prof, int resolution) {
  GeoMesh mesh;
  mesh.prof = &prof;
  mesh.rows = std::max(16, resolution);
  mesh.around = std::max(32, resolution / 2);
  mesh.poles = prof.closed();
  const double L = prof.length;
  // interior rows for closed surfaces; endpoint rows otherwise
  for (int i = 0; i < mesh.rows; ++i) {
    const double f = mesh.poles ? (i + 1.0) / (mesh.rows + 1.0)
                                : static_cast<double>(i) / (mesh.rows - 1);
    mesh.srow.push_back(L * f);
  }
  for (double s : mesh.srow) mesh.rho.push_back(prof.at(s).rho);
  for (int i = 0; i + 1 < mesh.rows; ++i)
    mesh.rho_mid.push_back(prof.at(0.5 * (mesh.srow[i] + mesh.srow[i + 1])).rho);
  if (mesh.poles) {
    mesh.pole_left = mesh.rows * mesh.around;
    mesh.pole_right = mesh.pole_left + 1;
  }
  return mesh;
}

void dijkstra(const GeoMesh& mesh, int source, std::vector<double>& dist,
              std::vector<int>* pred = nullptr) {
  const int N = mesh.nodes();
  dist.assign(N, kInf);
  if (pred) pred->assign(N, -1);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
  dist[source] = 0.0;
  pq.push({0.0, source});
  while (!pq.empty()) {
    const auto [d, u] = pq.top();
    pq.pop();
    if (d > dist[u]) continue;
    mesh.neighbors(u, [&](int v, double w) {
      if (d + w < dist[v]) {
        dist[v] = d + w;
        if (pred) (*pred)[v] = u;
        pq.push({d + w, v});
      }
    });
  }
}

struct ParamPoint {
  double s, phi;
};

// Length of the short parameter-line segment p -> q under ds^2 + rho^2 dphi^2
// (four-piece midpoint rule; exact for meridian pieces through poles).
double seg_length(const ProfileCurve& prof, ParamPoint p, ParamPoint q) {
  const double ds = q.s - p.s;
  const double dphi = q.phi - p.phi;
  double len = 0.0;
  const int pieces = 4;
  for (int i = 0; i < pieces; ++i) {
    const double sm = p.s + ds * (i + 0.5) / pieces;
    const double r = prof.at(sm).rho;
    len += std::hypot(ds / pieces, r * dphi / pieces);
  }
  return len;
}

double path_length(const ProfileCurve& prof, const std::vector<ParamPoint>& path) {
  double len = 0.0;
  for (std::size_t i = 0; i + 1 < path.size(); ++i)
    len += seg_length(prof, path[i], path[i + 1]);
  return len;
}

// Local pattern-search relaxation of the interior vertices; endpoints stay
// fixed. Returns the straightened length (an upper bound on the distance).
double straighten(const ProfileCurve& prof, std::vector<ParamPoint> path) {
  if (path.size() < 3) return path_length(prof, path);

  // subdivide to a roughly uniform chain
  {
    std::vector<ParamPoint> fine;
    const double target = std::max(path_length(prof, path) / 512.0, 1e-6);
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      const ParamPoint a = path[i], b = path[i + 1];
      const int pieces =
          std::max(1, static_cast<int>(std::ceil(seg_length(prof, a, b) / target)));
      for (int k = 0; k < pieces; ++k)
        fine.push_back({a.s + (b.s - a.s) * k / pieces,
                        a.phi + (b.phi - a.phi) * k / pieces});
    }
    fine.push_back(path.back());
    path = std::move(fine);
  }

  const double L = prof.length;
  double radius_s = L / 256.0;
  double radius_phi = 2.0 * harmonics::kPi / 128.0;
  for (int sweep = 0; sweep < 90; ++sweep) {
    for (std::size_t i = 1; i + 1 < path.size(); ++i) {
      const ParamPoint prev = path[i - 1], next = path[i + 1];
      ParamPoint best = path[i];
      double best_len = seg_length(prof, prev, best) + seg_length(prof, best, next);
      const double trials[4][2] = {{radius_s, 0.0},
                                   {-radius_s, 0.0},
                                   {0.0, radius_phi},
                                   {0.0, -radius_phi}};
      for (const auto& t : trials) {
        ParamPoint cand{std::clamp(path[i].s + t[0], 0.0, L), path[i].phi + t[1]};
        const double len = seg_length(prof, prev, cand) + seg_length(prof, cand, next);
        if (len < best_len) {
          best_len = len;
          best = cand;
        }
      }
      path[i] = best;
    }
    radius_s *= 0.82;
    radius_phi *= 0.82;
  }
  return path_length(prof, path);
}

}  // namespace

double intrinsic_diameter(const RevolutionSurface& surface, int mesh_resolution) {
  const ProfileCurve& prof = surface.profile;
  if (prof.samples.size() < 2) throw std::invalid_argument("intrinsic_diameter: empty profile");
  const GeoMesh mesh = make_mesh(prof, mesh_resolution);

  // By rotational symmetry every pairwise distance is realized with one
  // endpoint on the phi = 0 meridian (plus the poles).
  std::vector<int> sources;
  if (mesh.poles) {
    sources.push_back(mesh.pole_left);
    sources.push_back(mesh.pole_right);
  }
  for (int i = 0; i < mesh.rows; ++i) sources.push_back(mesh.id(i, 0));

  struct Candidate {
    double dist;
    int src, dst;
  };
  std::vector<Candidate> candidates;
  std::vector<double> dist;
  for (int src : sources) {
    dijkstra(mesh, src, dist);
    int far = 0;
    for (int v = 1; v < mesh.nodes(); ++v)
      if (dist[v] > dist[far]) far = v;
    candidates.push_back({dist[far], src, far});
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& a, const Candidate& b) { return a.dist > b.dist; });
  candidates.resize(std::min<std::size_t>(candidates.size(), 8));

  auto to_param = [&](int node, int neighbor_hint) -> ParamPoint {
    if (mesh.poles && node == mesh.pole_left) {
      const double phi = neighbor_hint >= 0 && neighbor_hint < mesh.rows * mesh.around
                             ? 2.0 * harmonics::kPi * (neighbor_hint % mesh.around) /
                                   mesh.around
                             : 0.0;
      return {0.0, phi};
    }
    if (mesh.poles && node == mesh.pole_right) {
      const double phi = neighbor_hint >= 0 && neighbor_hint < mesh.rows * mesh.around
                             ? 2.0 * harmonics::kPi * (neighbor_hint % mesh.around) /
                                   mesh.around
                             : 0.0;
      return {prof.length, phi};
    }
    return {mesh.srow[node / mesh.around],
            2.0 * harmonics::kPi * (node % mesh.around) / mesh.around};
  };

  double best = 0.0;
  std::vector<int> pred;
  for (const auto& cand : candidates) {
    dijkstra(mesh, cand.src, dist, &pred);
    std::vector<int> chain;
    for (int v = cand.dst; v != -1; v = pred[v]) chain.push_back(v);
    std::reverse(chain.begin(), chain.end());

    std::vector<ParamPoint> path;
    path.reserve(chain.size());
    for (std::size_t i = 0; i < chain.size(); ++i) {
      const int hint = i + 1 < chain.size() ? chain[i + 1] : (i > 0 ? chain[i - 1] : -1);
      ParamPoint p = to_param(chain[i], hint);
      if (!path.empty()) {
        // unwrap phi
        while (p.phi - path.back().phi > harmonics::kPi) p.phi -= 2.0 * harmonics::kPi;
        while (p.phi - path.back().phi < -harmonics::kPi) p.phi += 2.0 * harmonics::kPi;
      }
      path.push_back(p);
    }
    best = std::max(best, straighten(prof, path));
  }
  return best;
}

}  // namespace dtn::surface
