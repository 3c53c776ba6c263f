#include "poroperm/delaunay.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "poroperm/errors.hpp"

namespace poroperm {

double orient2d(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& c) {
  return (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x());
}

double incircle(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& c,
                const Eigen::Vector2d& d) {
  const double adx = a.x() - d.x(), ady = a.y() - d.y();
  const double bdx = b.x() - d.x(), bdy = b.y() - d.y();
  const double cdx = c.x() - d.x(), cdy = c.y() - d.y();
  const double alift = adx * adx + ady * ady;
  const double blift = bdx * bdx + bdy * bdy;
  const double clift = cdx * cdx + cdy * cdy;
  return alift * (bdx * cdy - bdy * cdx) - blift * (adx * cdy - ady * cdx) +
         clift * (adx * bdy - ady * bdx);
}

namespace {

struct Tri {
  std::array<int, 3> v;
  std::array<int, 3> nb;  // nb[i] is across the edge opposite v[i]
  bool alive = true;
};

class BowyerWatson {
 public:
  explicit BowyerWatson(std::span<const Eigen::Vector2d> input) {
    pts_.assign(input.begin(), input.end());
    Eigen::Vector2d lo = pts_.front(), hi = pts_.front();
    for (const auto& p : pts_) {
      lo = lo.cwiseMin(p);
      hi = hi.cwiseMax(p);
    }
    const Eigen::Vector2d c = 0.5 * (lo + hi);
    const double extent = std::max({hi.x() - lo.x(), hi.y() - lo.y(), 1e-300});
    const double m = 200.0 * extent;
    super_ = static_cast<int>(pts_.size());
    pts_.emplace_back(c.x() - m, c.y() - m);
    pts_.emplace_back(c.x() + m, c.y() - m);
    pts_.emplace_back(c.x(), c.y() + m);
    tris_.push_back({{super_, super_ + 1, super_ + 2}, {-1, -1, -1}, true});
  }

  void insert(int p) {
    const int start = locate(pts_[p]);
    // Cavity: triangles whose circumcircle strictly contains p.
    cavity_.clear();
    stack_.clear();
    stack_.push_back(start);
    mark_[start] = stamp_;
    while (!stack_.empty()) {
      const int t = stack_.back();
      stack_.pop_back();
      cavity_.push_back(t);
      for (int k = 0; k < 3; ++k) {
        const int n = tris_[t].nb[k];
        if (n < 0 || mark_[n] == stamp_) continue;
        const auto& v = tris_[n].v;
        if (incircle(pts_[v[0]], pts_[v[1]], pts_[v[2]], pts_[p]) > 0.0) {
          mark_[n] = stamp_;
          stack_.push_back(n);
        }
      }
    }
    // Boundary edges of the cavity, each oriented as in its cavity triangle.
    struct Edge {
      int a, b, outside;
    };
    std::vector<Edge> boundary;
    for (int t : cavity_) {
      for (int k = 0; k < 3; ++k) {
        const int n = tris_[t].nb[k];
        if (n >= 0 && mark_[n] == stamp_) continue;
        boundary.push_back({tris_[t].v[(k + 1) % 3], tris_[t].v[(k + 2) % 3], n});
      }
      tris_[t].alive = false;
    }
    ++stamp_;

    std::unordered_map<int, int> starts_at;  // new triangle whose cavity edge starts at vertex
    std::unordered_map<int, int> ends_at;
    std::vector<int> created;
    created.reserve(boundary.size());
    for (const auto& e : boundary) {
      const int id = static_cast<int>(tris_.size());
      // Vertices (e.a, e.b, p): edge opposite p is the cavity edge.
      tris_.push_back({{e.a, e.b, p}, {-1, -1, e.outside}, true});
      mark_.push_back(0);
      if (e.outside >= 0) {
        auto& o = tris_[e.outside];
        for (int k = 0; k < 3; ++k) {
          const int oa = o.v[(k + 1) % 3], ob = o.v[(k + 2) % 3];
          if ((oa == e.b && ob == e.a) || (oa == e.a && ob == e.b)) o.nb[k] = id;
        }
      }
      starts_at[e.a] = id;
      ends_at[e.b] = id;
      created.push_back(id);
    }
    for (int id : created) {
      auto& t = tris_[id];
      // Opposite v[0]=a: edge (b, p), shared with the triangle starting at b.
      t.nb[0] = starts_at.at(t.v[1]);
      // Opposite v[1]=b: edge (p, a), shared with the triangle ending at a.
      t.nb[1] = ends_at.at(t.v[0]);
    }
    last_ = created.empty() ? last_ : created.back();
  }

  std::vector<Triangle> result() const {
    std::vector<Triangle> out;
    for (const auto& t : tris_) {
      if (!t.alive) continue;
      if (t.v[0] >= super_ || t.v[1] >= super_ || t.v[2] >= super_) continue;
      out.push_back({t.v[0], t.v[1], t.v[2]});
    }
    return out;
  }

  void prepare() { mark_.assign(tris_.size(), 0); }

 private:
  int locate(const Eigen::Vector2d& p) {
    int t = last_;
    if (!tris_[t].alive) {
      t = static_cast<int>(tris_.size()) - 1;
      while (!tris_[t].alive) --t;
    }
    for (std::size_t guard = 0; guard < 4 * tris_.size() + 16; ++guard) {
      const auto& tri = tris_[t];
      int next = -1;
      for (int k = 0; k < 3; ++k) {
        const auto& a = pts_[tri.v[(k + 1) % 3]];
        const auto& b = pts_[tri.v[(k + 2) % 3]];
        if (orient2d(a, b, p) < 0.0 && tri.nb[k] >= 0) {
          next = tri.nb[k];
          break;
        }
      }
      if (next < 0) return t;
      t = next;
    }
    // Walk cycled on a degenerate configuration; fall back to a scan.
    for (int i = static_cast<int>(tris_.size()) - 1; i >= 0; --i) {
      if (!tris_[i].alive) continue;
      const auto& v = tris_[i].v;
      if (orient2d(pts_[v[0]], pts_[v[1]], p) >= 0 && orient2d(pts_[v[1]], pts_[v[2]], p) >= 0 &&
          orient2d(pts_[v[2]], pts_[v[0]], p) >= 0)
        return i;
    }
    throw ConstructionError("delaunay: point location failed");
  }

  std::vector<Eigen::Vector2d> pts_;
  std::vector<Tri> tris_;
  std::vector<int> mark_;
  std::vector<int> cavity_;
  std::vector<int> stack_;
  int stamp_ = 1;
  int super_ = 0;
  int last_ = 0;
};

}  // namespace

std::vector<Triangle> delaunay_triangulate(std::span<const Eigen::Vector2d> points) {
  const std::size_t n = points.size();
  if (n < 3) throw ConstructionError("delaunay: need at least three points");

  // Insert along a serpentine row order so successive points are close and
  // the location walk stays short.
  Eigen::Vector2d lo = points.front(), hi = points.front();
  for (const auto& p : points) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  const double h = std::max(hi.y() - lo.y(), 1e-300);
  const auto rows = static_cast<int>(std::max(1.0, std::sqrt(static_cast<double>(n)) / 2.0));
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  auto row_of = [&](int i) {
    return std::min(rows - 1, static_cast<int>((points[i].y() - lo.y()) / h * rows));
  };
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const int ra = row_of(a), rb = row_of(b);
    if (ra != rb) return ra < rb;
    const double xa = points[a].x(), xb = points[b].x();
    if (xa != xb) return (ra % 2 == 0) ? xa < xb : xa > xb;
    return points[a].y() < points[b].y();
  });

  {
    std::vector<Eigen::Vector2d> sorted(points.begin(), points.end());
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
      return a.x() != b.x() ? a.x() < b.x() : a.y() < b.y();
    });
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw ConstructionError("delaunay: duplicate points");
  }
  bool collinear = true;
  for (std::size_t k = 2; k < n && collinear; ++k) {
    if (orient2d(points[0], points[1], points[k]) != 0.0) collinear = false;
  }
  if (collinear) throw ConstructionError("delaunay: all points are collinear");

  BowyerWatson bw(points);
  bw.prepare();
  for (int idx : order) bw.insert(idx);
  auto tris = bw.result();
  if (tris.empty()) throw ConstructionError("delaunay: triangulation is empty");
  return tris;
}

std::vector<std::pair<int, int>> triangulation_edges(std::span<const Triangle> triangles) {
  std::vector<std::pair<int, int>> edges;
  edges.reserve(triangles.size() * 3);
  for (const auto& t : triangles) {
    for (int k = 0; k < 3; ++k) {
      const int a = t[k], b = t[(k + 1) % 3];
      edges.emplace_back(std::min(a, b), std::max(a, b));
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

}  // namespace poroperm
