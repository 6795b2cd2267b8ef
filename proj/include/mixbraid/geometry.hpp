#pragma once

// Triangulated closed surfaces from the 4g-gon, the meridian circle C given
// by the edge alpha_1, a circle-valued retraction S_g -> C (harmonic lift with
// a unit jump across beta_1), and the rotated maps f_i = R_i o r together
// with an exact check that id, f_1, ..., f_n are pairwise coincidence-free.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <Eigen/Sparse>
#include <boost/multiprecision/cpp_int.hpp>

#include "json.hpp"

namespace mixbraid {

  using Rational = boost::multiprecision::cpp_rational;

  class geometry_error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  // A triangle corner: the surface vertex, the integer jump (in turns) of
  // the lifted angle on this copy of the vertex, and its polygon position.
  struct Corner {
    std::size_t vertex = 0;
    int         shift  = 0;
    double      x      = 0;
    double      y      = 0;
  };

  struct Triangle {
    std::array<Corner, 3> corners;
  };

  struct SurfaceEdge {
    std::size_t u = 0;
    std::size_t v = 0;
    int         offset = 0;  // shift(v copy) - shift(u copy), u < v
  };

  struct TriangulatedSurface {
    int                      genus      = 1;
    int                      resolution = 3;
    std::size_t              vertex_count = 0;
    std::vector<Triangle>    triangles;
    std::vector<SurfaceEdge> edges;
    // vertices of the image of the polygon edge alpha_1, at parameter j / R
    std::vector<std::size_t> alpha1;
    // polygon position of the shift-0 copy of each vertex
    std::vector<std::array<double, 2>> position;

    long euler_characteristic() const {
      return static_cast<long>(vertex_count) - static_cast<long>(edges.size())
             + static_cast<long>(triangles.size());
    }

    // index into `edges`, or edges.size()
    std::size_t find_edge(std::size_t a, std::size_t b) const {
      auto key = std::minmax(a, b);
      auto it  = std::lower_bound(
          edges.begin(), edges.end(), key, [](SurfaceEdge const& e, auto const& k) {
            return std::make_pair(e.u, e.v) < std::make_pair(k.first, k.second);
          });
      if (it != edges.end() && it->u == key.first && it->v == key.second) {
        return static_cast<std::size_t>(it - edges.begin());
      }
      return edges.size();
    }

    // lifted difference (copy of b) - (copy of a) across the edge a -> b
    int offset(std::size_t a, std::size_t b) const {
      auto const& e = edges.at(find_edge(a, b));
      return a == e.u ? e.offset : -e.offset;
    }
  };

  namespace detail {

    inline void finish_surface(TriangulatedSurface& s) {
      // each directed edge exactly once, each reverse exactly once, offsets agree
      std::map<std::pair<std::size_t, std::size_t>, int> directed;
      for (auto const& t : s.triangles) {
        auto const& c = t.corners;
        double area = (c[1].x - c[0].x) * (c[2].y - c[0].y) - (c[2].x - c[0].x) * (c[1].y - c[0].y);
        if (!(area > 0)) {
          throw geometry_error("triangle with non-positive orientation in polygon model");
        }
        for (int k = 0; k < 3; ++k) {
          Corner const& a = c[k];
          Corner const& b = c[(k + 1) % 3];
          if (a.vertex == b.vertex) {
            throw geometry_error("degenerate edge: resolution " + std::to_string(s.resolution)
                                 + " too coarse, minimum feasible resolution is 3");
          }
          auto [it, fresh] = directed.emplace(std::make_pair(a.vertex, b.vertex), b.shift - a.shift);
          if (!fresh) {
            throw geometry_error("repeated directed edge: resolution "
                                 + std::to_string(s.resolution)
                                 + " too coarse, minimum feasible resolution is 3");
          }
        }
      }
      for (auto const& [key, off] : directed) {
        auto it = directed.find({key.second, key.first});
        if (it == directed.end()) {
          throw geometry_error("edge with a single incident triangle: surface is not closed");
        }
        if (it->second != -off) {
          throw geometry_error("inconsistent lift offsets across an edge");
        }
        if (key.first < key.second) {
          s.edges.push_back({key.first, key.second, off});
        }
      }
    }

    // torus from an R x R grid on the unit square
    inline TriangulatedSurface torus_grid(int R) {
      TriangulatedSurface s;
      s.genus        = 1;
      s.resolution   = R;
      s.vertex_count = static_cast<std::size_t>(R) * R;
      auto corner = [R](int i, int j) {
        Corner c;
        c.vertex = static_cast<std::size_t>((j % R) * R + (i % R));
        c.shift  = i == R ? 1 : 0;  // crossing beta_1 adds one turn
        c.x      = static_cast<double>(i) / R;
        c.y      = static_cast<double>(j) / R;
        return c;
      };
      for (int j = 0; j < R; ++j) {
        for (int i = 0; i < R; ++i) {
          s.triangles.push_back({{corner(i, j), corner(i + 1, j), corner(i + 1, j + 1)}});
          s.triangles.push_back({{corner(i, j), corner(i + 1, j + 1), corner(i, j + 1)}});
        }
      }
      s.position.resize(s.vertex_count);
      for (int j = 0; j < R; ++j) {
        for (int i = 0; i < R; ++i) {
          s.position[static_cast<std::size_t>(j * R + i)] = {double(i) / R, double(j) / R};
        }
      }
      for (int i = 0; i < R; ++i) {
        s.alpha1.push_back(static_cast<std::size_t>(i));
      }
      return s;
    }

    // regular 4g-gon with edges a_1 b_1 a_1^-1 b_1^-1 ..., fanned from the
    // center and subdivided at resolution R
    inline TriangulatedSurface polygon_surface(int g, int R) {
      int const           E = 4 * g;
      TriangulatedSurface s;
      s.genus      = g;
      s.resolution = R;

      std::map<std::tuple<int, int, int>, std::size_t> ids;
      auto id = [&](std::tuple<int, int, int> key, double x, double y, bool canonical) {
        auto [it, fresh] = ids.emplace(key, ids.size());
        if (fresh) {
          s.position.push_back({x, y});
        }
        if (canonical) {
          s.position[it->second] = {x, y};
        }
        return it->second;
      };

      std::vector<std::array<double, 2>> P(E);
      for (int k = 0; k < E; ++k) {
        double const a = 2 * std::numbers::pi * k / E;
        P[k]           = {std::cos(a), std::sin(a)};
      }
      // lattice point (i, j) of sector k
      auto corner = [&](int k, int i, int j) {
        int const k1 = (k + 1) % E;
        Corner    c;
        c.x = (i * P[k][0] + j * P[k1][0]) / R;
        c.y = (i * P[k][1] + j * P[k1][1]) / R;
        if (i == 0 && j == 0) {
          c.vertex = id({0, 0, 0}, c.x, c.y, true);
        } else if (i + j == R) {
          if (j == 0 || j == R) {
            int const pk = j == 0 ? k : k1;
            c.vertex     = id({1, 0, 0}, c.x, c.y, pk == 0);
            c.shift      = (pk == 1 || pk == 2) ? 1 : 0;
          } else {
            int const r = k / 4, q = k % 4;
            int const t = (q == 0 || q == 1) ? j : R - j;
            c.vertex    = id({2, 2 * r + (q % 2), t}, c.x, c.y, q == 0 || q == 3);
            c.shift     = k == 1 ? 1 : 0;
          }
        } else if (j == 0) {
          c.vertex = id({3, k, i}, c.x, c.y, true);
        } else if (i == 0) {
          c.vertex = id({3, k1, j}, c.x, c.y, true);
        } else {
          c.vertex = id({4 + k, i, j}, c.x, c.y, true);
        }
        return c;
      };

      for (int k = 0; k < E; ++k) {
        for (int i = 0; i < R; ++i) {
          for (int j = 0; i + j < R; ++j) {
            s.triangles.push_back({{corner(k, i, j), corner(k, i + 1, j), corner(k, i, j + 1)}});
            if (i + j + 2 <= R) {
              s.triangles.push_back(
                  {{corner(k, i + 1, j), corner(k, i + 1, j + 1), corner(k, i, j + 1)}});
            }
          }
        }
      }
      s.vertex_count = ids.size();
      s.alpha1.push_back(ids.at({1, 0, 0}));
      for (int t = 1; t < R; ++t) {
        s.alpha1.push_back(ids.at({2, 0, t}));
      }
      return s;
    }

  }  // namespace detail

  inline TriangulatedSurface triangulate(int g, int resolution) {
    if (g < 1) {
      throw geometry_error("g must be >= 1 (got " + std::to_string(g) + ")");
    }
    if (resolution < 3) {
      throw geometry_error("resolution " + std::to_string(resolution)
                           + " is too coarse to keep C simple; minimum feasible resolution is 3");
    }
    TriangulatedSurface s
        = g == 1 ? detail::torus_grid(resolution) : detail::polygon_surface(g, resolution);
    detail::finish_surface(s);
    if (s.euler_characteristic() != 2 - 2 * g) {
      throw geometry_error("Euler characteristic " + std::to_string(s.euler_characteristic())
                           + " differs from 2 - 2g");
    }
    return s;
  }

  ////////////////////////////////////////////////////////////////////////////
  // Meridian
  ////////////////////////////////////////////////////////////////////////////

  struct MeridianCycle {
    std::vector<std::size_t> vertices;
    std::vector<Rational>    turns;  // k / K, the angle divided by 2 pi

    std::size_t size() const noexcept { return vertices.size(); }
    double angle(std::size_t k) const {
      return 2 * std::numbers::pi * static_cast<double>(turns[k]);
    }
    bool contains(std::size_t v) const {
      return std::find(vertices.begin(), vertices.end(), v) != vertices.end();
    }
    // position on the cycle, or size()
    std::size_t position(std::size_t v) const {
      return static_cast<std::size_t>(std::find(vertices.begin(), vertices.end(), v)
                                      - vertices.begin());
    }
    bool is_cycle_edge(std::size_t a, std::size_t b) const {
      std::size_t const K = size(), i = position(a), j = position(b);
      return i < K && j < K && ((i + 1) % K == j || (j + 1) % K == i);
    }
  };

  namespace detail {

    inline bool connected(std::size_t count, std::vector<std::vector<std::size_t>> const& adj) {
      if (count == 0) {
        return true;
      }
      std::vector<char>       seen(count, 0);
      std::queue<std::size_t> q;
      q.push(0);
      seen[0]            = 1;
      std::size_t visited = 1;
      while (!q.empty()) {
        auto v = q.front();
        q.pop();
        for (auto w : adj[v]) {
          if (!seen[w]) {
            seen[w] = 1;
            ++visited;
            q.push(w);
          }
        }
      }
      return visited == count;
    }

  }  // namespace detail

  // Vertex graph with the edges of C removed.
  inline bool vertex_graph_connected_without(TriangulatedSurface const& s,
                                             MeridianCycle const&       C) {
    std::vector<std::vector<std::size_t>> adj(s.vertex_count);
    for (auto const& e : s.edges) {
      if (!C.is_cycle_edge(e.u, e.v)) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
      }
    }
    return detail::connected(s.vertex_count, adj);
  }

  // Triangles adjacent across edges not in C; connected iff cutting the
  // surface along C leaves it connected.
  inline bool complement_connected(TriangulatedSurface const& s, MeridianCycle const& C) {
    std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> by_edge;
    for (std::size_t t = 0; t < s.triangles.size(); ++t) {
      auto const& c = s.triangles[t].corners;
      for (int k = 0; k < 3; ++k) {
        by_edge[std::minmax(c[k].vertex, c[(k + 1) % 3].vertex)].push_back(t);
      }
    }
    std::vector<std::vector<std::size_t>> adj(s.triangles.size());
    for (auto const& [e, ts] : by_edge) {
      if (C.is_cycle_edge(e.first, e.second) || ts.size() != 2) {
        continue;
      }
      adj[ts[0]].push_back(ts[1]);
      adj[ts[1]].push_back(ts[0]);
    }
    return detail::connected(s.triangles.size(), adj);
  }

  inline MeridianCycle meridian(TriangulatedSurface const& s) {
    MeridianCycle C;
    C.vertices        = s.alpha1;
    std::size_t const K = C.vertices.size();
    std::set<std::size_t> distinct(C.vertices.begin(), C.vertices.end());
    if (K < 3 || distinct.size() != K) {
      throw geometry_error("meridian is not a simple cycle at resolution "
                           + std::to_string(s.resolution));
    }
    for (std::size_t k = 0; k < K; ++k) {
      if (s.find_edge(C.vertices[k], C.vertices[(k + 1) % K]) == s.edges.size()) {
        throw geometry_error("meridian vertices " + std::to_string(k) + " and "
                             + std::to_string((k + 1) % K) + " are not adjacent");
      }
      C.turns.emplace_back(static_cast<long long>(k), static_cast<long long>(K));
    }
    if (!vertex_graph_connected_without(s, C) || !complement_connected(s, C)) {
      throw geometry_error("meridian separates the surface");
    }
    return C;
  }

  ////////////////////////////////////////////////////////////////////////////
  // Retraction
  ////////////////////////////////////////////////////////////////////////////

  struct RetractionMap {
    // lifted value (in turns) of the shift-0 copy of each vertex
    std::vector<double> lift;
    // exact values: always on C, everywhere when the exact solver ran
    std::vector<std::optional<Rational>> exact;
    bool   exact_solve = false;
    double residual    = 0;

    // circle coordinate in [0, 1) turns
    double turns(std::size_t v) const {
      double t = lift[v] - std::floor(lift[v]);
      return t >= 1 ? 0.0 : t;
    }
    double theta(std::size_t v) const { return 2 * std::numbers::pi * turns(v); }
  };

  // Above this many unknowns the Laplace system is solved in floating point.
  inline constexpr std::size_t exact_solve_limit = 64;

  namespace detail {

    inline Rational frac(Rational const& x) {
      using boost::multiprecision::numerator;
      using boost::multiprecision::denominator;
      boost::multiprecision::cpp_int q = numerator(x) / denominator(x);
      if (numerator(x) < 0 && q * denominator(x) != numerator(x)) {
        q -= 1;
      }
      return x - Rational(q);
    }

    // Dense Gaussian elimination over Q.
    inline std::vector<Rational> solve_rational(std::vector<std::vector<Rational>> A,
                                                std::vector<Rational>              b) {
      std::size_t const n = b.size();
      for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && A[p][c] == 0) {
          ++p;
        }
        if (p == n) {
          throw geometry_error("singular Laplace system");
        }
        std::swap(A[p], A[c]);
        std::swap(b[p], b[c]);
        for (std::size_t r = c + 1; r < n; ++r) {
          if (A[r][c] == 0) {
            continue;
          }
          Rational f = A[r][c] / A[c][c];
          for (std::size_t k = c; k < n; ++k) {
            if (A[c][k] != 0) {
              A[r][k] -= f * A[c][k];
            }
          }
          b[r] -= f * b[c];
        }
      }
      std::vector<Rational> x(n);
      for (std::size_t i = n; i-- > 0;) {
        Rational acc = b[i];
        for (std::size_t k = i + 1; k < n; ++k) {
          if (A[i][k] != 0) {
            acc -= A[i][k] * x[k];
          }
        }
        x[i] = acc / A[i][i];
      }
      return x;
    }

  }  // namespace detail

  // Graph-uniform harmonic lift: Dirichlet values k/K on C, unit period
  // across beta_1 (encoded in the edge offsets), zero period elsewhere.
  inline RetractionMap build_retraction(TriangulatedSurface const& s, MeridianCycle const& C) {
    std::size_t const        V = s.vertex_count;
    RetractionMap            r;
    std::vector<std::size_t> unknown(V, V);
    std::vector<std::size_t> free_vertices;
    r.exact.assign(V, std::nullopt);
    r.lift.assign(V, 0);
    for (std::size_t k = 0; k < C.size(); ++k) {
      r.exact[C.vertices[k]] = C.turns[k];
      r.lift[C.vertices[k]]  = static_cast<double>(C.turns[k]);
    }
    for (std::size_t v = 0; v < V; ++v) {
      if (!r.exact[v]) {
        unknown[v] = free_vertices.size();
        free_vertices.push_back(v);
      }
    }
    std::size_t const n = free_vertices.size();

    // row u: deg(u) x_u - sum x_v = sum offset(u -> v)
    std::vector<std::map<std::size_t, long long>> rows(n);
    std::vector<Rational>                         rhs(n, Rational(0));
    auto add = [&](std::size_t a, std::size_t b, int off) {
      if (unknown[a] == V) {
        return;
      }
      std::size_t const i = unknown[a];
      rows[i][i] += 1;
      rhs[i] += off;
      if (unknown[b] == V) {
        rhs[i] += *r.exact[b];
      } else {
        rows[i][unknown[b]] -= 1;
      }
    };
    for (auto const& e : s.edges) {
      add(e.u, e.v, e.offset);
      add(e.v, e.u, -e.offset);
    }

    if (n <= exact_solve_limit) {
      std::vector<std::vector<Rational>> A(n, std::vector<Rational>(n, Rational(0)));
      for (std::size_t i = 0; i < n; ++i) {
        for (auto [j, w] : rows[i]) {
          A[i][j] = w;
        }
      }
      auto x        = detail::solve_rational(std::move(A), rhs);
      r.exact_solve = true;
      for (std::size_t i = 0; i < n; ++i) {
        r.exact[free_vertices[i]] = x[i];
        r.lift[free_vertices[i]]  = static_cast<double>(x[i]);
      }
    } else {
      std::vector<Eigen::Triplet<double>> trip;
      Eigen::VectorXd                     b(static_cast<Eigen::Index>(n));
      for (std::size_t i = 0; i < n; ++i) {
        for (auto [j, w] : rows[i]) {
          trip.emplace_back(static_cast<int>(i), static_cast<int>(j), static_cast<double>(w));
        }
        b[static_cast<Eigen::Index>(i)] = static_cast<double>(rhs[i]);
      }
      Eigen::SparseMatrix<double> A(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
      A.setFromTriplets(trip.begin(), trip.end());
      Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(A);
      if (ldlt.info() != Eigen::Success) {
        throw geometry_error("Laplace factorization failed; increase the resolution");
      }
      Eigen::VectorXd x = ldlt.solve(b);
      r.residual        = (A * x - b).lpNorm<Eigen::Infinity>();
      if (!(r.residual <= 1e-10)) {
        throw geometry_error("Laplace residual " + std::to_string(r.residual)
                             + " exceeds 1e-10");
      }
      for (std::size_t i = 0; i < n; ++i) {
        r.lift[free_vertices[i]] = x[static_cast<Eigen::Index>(i)];
      }
    }
    return r;
  }

  // Largest spread of lifted corner values over all triangles, in turns.
  inline double max_triangle_spread(TriangulatedSurface const& s, RetractionMap const& r) {
    double worst = 0;
    for (auto const& t : s.triangles) {
      double lo = 1e300, hi = -1e300;
      for (auto const& c : t.corners) {
        double v = r.lift[c.vertex] + c.shift;
        lo       = std::min(lo, v);
        hi       = std::max(hi, v);
      }
      worst = std::max(worst, hi - lo);
    }
    return worst;
  }

  // Winding number of r along C, from exact increments wrapped to (-1/2, 1/2].
  inline Rational winding_along(MeridianCycle const& C, RetractionMap const& r) {
    Rational total(0);
    for (std::size_t k = 0; k < C.size(); ++k) {
      Rational d = detail::frac(*r.exact[C.vertices[(k + 1) % C.size()]]
                                - *r.exact[C.vertices[k]]);
      if (d > Rational(1, 2)) {
        d -= 1;
      }
      total += d;
    }
    return total;
  }

  ////////////////////////////////////////////////////////////////////////////
  // Section maps and their verification
  ////////////////////////////////////////////////////////////////////////////

  // f_i = R_i o r, R_i the rotation of C by i / (n+1) turns, i = 1..n.
  struct SectionFamily {
    int                   n = 1;
    std::vector<Rational> offsets;  // in turns

    double offset_angle(std::size_t i) const {
      return 2 * std::numbers::pi * static_cast<double>(offsets[i]);
    }
  };

  inline SectionFamily section_maps(RetractionMap const& r, int n) {
    (void) r;
    if (n < 1) {
      throw geometry_error("n must be >= 1 (got " + std::to_string(n) + ")");
    }
    SectionFamily f;
    f.n = n;
    for (int i = 1; i <= n; ++i) {
      f.offsets.emplace_back(i, n + 1);
    }
    return f;
  }

  // A point of the surface as (triangle, barycentric coordinates).
  struct SamplePoint {
    std::size_t             triangle = 0;
    std::array<double, 3>   bary{1, 0, 0};
    bool                    on_c = false;
    std::optional<Rational> exact_turns;  // known exactly on C
    double                  turns = 0;     // r(x) in [0, 1)
  };

  inline double lifted_turns(TriangulatedSurface const& s, RetractionMap const& r,
                             std::size_t tri, std::array<double, 3> const& bary) {
    double v = 0;
    for (int k = 0; k < 3; ++k) {
      auto const& c = s.triangles[tri].corners[k];
      v += bary[k] * (r.lift[c.vertex] + c.shift);
    }
    return v - std::floor(v);
  }

  // Every vertex and every edge midpoint.
  inline std::vector<SamplePoint> mesh_samples(TriangulatedSurface const& s,
                                               MeridianCycle const&       C,
                                               RetractionMap const&       r) {
    std::vector<SamplePoint> out;
    std::vector<char>        seen(s.vertex_count, 0);
    std::set<std::pair<std::size_t, std::size_t>> seen_edges;
    for (std::size_t t = 0; t < s.triangles.size(); ++t) {
      auto const& c = s.triangles[t].corners;
      for (int k = 0; k < 3; ++k) {
        std::size_t const v = c[k].vertex;
        if (!seen[v]) {
          seen[v] = 1;
          SamplePoint p;
          p.triangle = t;
          p.bary     = {0, 0, 0};
          p.bary[k]  = 1;
          p.on_c     = C.contains(v);
          if (p.on_c) {
            p.exact_turns = detail::frac(*r.exact[v]);
          }
          p.turns = r.turns(v);
          out.push_back(p);
        }
        std::size_t const w = c[(k + 1) % 3].vertex;
        if (seen_edges.insert(std::minmax(v, w)).second) {
          SamplePoint p;
          p.triangle          = t;
          p.bary              = {0, 0, 0};
          p.bary[k]           = 0.5;
          p.bary[(k + 1) % 3] = 0.5;
          p.on_c              = C.is_cycle_edge(v, w);
          if (p.on_c) {
            Rational mid
                = (*r.exact[v] + c[k].shift + *r.exact[w] + c[(k + 1) % 3].shift) / 2;
            p.exact_turns = detail::frac(mid);
          }
          p.turns = p.exact_turns ? static_cast<double>(*p.exact_turns)
                                  : lifted_turns(s, r, t, p.bary);
          out.push_back(p);
        }
      }
    }
    return out;
  }

  struct VerificationReport {
    bool retraction_exact  = true;  // r o i = id on C, linear along C edges
    bool branch_condition  = true;  // lifted spread < 1/2 turn on every triangle
    bool winding_one       = true;
    bool image_in_c        = true;  // (i)
    bool moves_points_of_c = true;  // (ii)
    bool off_c_disjoint    = true;  // (iii)
    bool pairwise_distinct = true;  // (iv)

    std::size_t              samples = 0;
    Rational                 min_separation_turns{0};
    double                   observed_min_separation = 0;  // radians, over samples
    double                   max_spread              = 0;  // turns
    std::vector<std::string> failures;

    double min_separation() const {
      return 2 * std::numbers::pi * static_cast<double>(min_separation_turns);
    }
    bool passed() const {
      return retraction_exact && branch_condition && winding_one && image_in_c
             && moves_points_of_c && off_c_disjoint && pairwise_distinct;
    }
  };

  namespace detail {

    inline double circle_distance(double a, double b) {
      double d = std::fabs(a - b);
      d -= std::floor(d);
      return std::min(d, 1 - d);
    }

  }  // namespace detail

  inline VerificationReport verify_sections(TriangulatedSurface const& s,
                                            MeridianCycle const&       C,
                                            RetractionMap const&       r,
                                            SectionFamily const&       maps) {
    VerificationReport rep;
    auto fail = [&](bool& flag, std::string msg) {
      if (flag) {
        rep.failures.push_back(std::move(msg));
      }
      flag = false;
    };

    for (std::size_t k = 0; k < C.size(); ++k) {
      std::size_t const v = C.vertices[k];
      if (!r.exact[v] || *r.exact[v] != C.turns[k]) {
        fail(rep.retraction_exact, "r(x) != x at cycle vertex " + std::to_string(k));
      }
      std::size_t const w = C.vertices[(k + 1) % C.size()];
      if (r.exact[v] && r.exact[w]) {
        Rational step = *r.exact[w] + s.offset(v, w) - *r.exact[v];
        if (step != Rational(1, static_cast<long long>(C.size()))) {
          fail(rep.retraction_exact, "r is not the identity along cycle edge "
                                         + std::to_string(k));
        }
      }
    }
    rep.max_spread = max_triangle_spread(s, r);
    if (!(rep.max_spread < 0.5)) {
      fail(rep.branch_condition, "a triangle spans at least half a turn");
    }
    if (rep.retraction_exact && winding_along(C, r) != 1) {
      fail(rep.winding_one, "winding of r along C is not 1");
    }

    // exact separation of the slots 0 (identity on C), 1..n
    std::vector<Rational> slots{Rational(0)};
    slots.insert(slots.end(), maps.offsets.begin(), maps.offsets.end());
    std::optional<Rational> sep;
    for (std::size_t i = 0; i < slots.size(); ++i) {
      for (std::size_t j = i + 1; j < slots.size(); ++j) {
        Rational d = detail::frac(slots[j] - slots[i]);
        d          = std::min(d, Rational(1) - d);
        if (!sep || d < *sep) {
          sep = d;
        }
      }
    }
    rep.min_separation_turns = sep.value_or(Rational(0));
    if (rep.min_separation_turns == 0) {
      fail(rep.pairwise_distinct, "two rotation offsets coincide");
    }

    double observed = 1;
    for (auto const& p : mesh_samples(s, C, r)) {
      ++rep.samples;
      std::vector<double> images;
      for (std::size_t i = 0; i < maps.offsets.size(); ++i) {
        if (p.exact_turns) {
          Rational img = detail::frac(*p.exact_turns + maps.offsets[i]);
          if (img == *p.exact_turns) {
            fail(rep.moves_points_of_c, "f_" + std::to_string(i + 1) + " fixes a point of C");
          }
          images.push_back(static_cast<double>(img));
        } else {
          double img = p.turns + static_cast<double>(maps.offsets[i]);
          images.push_back(img - std::floor(img));
        }
        if (!(images.back() >= 0 && images.back() < 1) || !std::isfinite(images.back())) {
          fail(rep.image_in_c, "image angle outside [0, 2pi)");
        }
      }
      if (p.on_c) {
        images.push_back(p.exact_turns ? static_cast<double>(*p.exact_turns) : p.turns);
      }
      // (iii) holds combinatorially: the images lie on C and p does not
      if (!p.on_c && p.exact_turns) {
        fail(rep.off_c_disjoint, "off-cycle sample with an exact cycle angle");
      }
      for (std::size_t i = 0; i < images.size(); ++i) {
        for (std::size_t j = i + 1; j < images.size(); ++j) {
          double d = detail::circle_distance(images[i], images[j]);
          observed = std::min(observed, d);
          if (!(d > 0)) {
            fail(rep.pairwise_distinct, "two images coincide at a sample point");
          }
        }
      }
    }
    rep.observed_min_separation = 2 * std::numbers::pi * observed;
    return rep;
  }

  ////////////////////////////////////////////////////////////////////////////
  // Export
  ////////////////////////////////////////////////////////////////////////////

  struct SectionSample {
    std::size_t           triangle = 0;
    std::array<double, 3> bary{1, 0, 0};
    double                theta = 0;  // radians
    std::vector<double>   images;     // radians

    bool operator==(SectionSample const&) const = default;
  };

  struct SectionData {
    int                        g          = 1;
    int                        n          = 1;
    int                        resolution = 3;
    std::vector<std::size_t>   cycle;
    std::vector<SectionSample> samples;

    bool operator==(SectionData const&) const = default;
  };

  inline SectionData section_data(TriangulatedSurface const&      s,
                                  MeridianCycle const&            C,
                                  SectionFamily const&            maps,
                                  std::vector<SamplePoint> const& samples) {
    SectionData d;
    d.g          = s.genus;
    d.n          = maps.n;
    d.resolution = s.resolution;
    d.cycle      = C.vertices;
    for (auto const& p : samples) {
      SectionSample out;
      out.triangle = p.triangle;
      out.bary     = p.bary;
      double const t = p.exact_turns ? static_cast<double>(*p.exact_turns) : p.turns;
      out.theta      = 2 * std::numbers::pi * t;
      for (auto const& off : maps.offsets) {
        double img = p.exact_turns ? static_cast<double>(detail::frac(*p.exact_turns + off))
                                   : t + static_cast<double>(off);
        out.images.push_back(2 * std::numbers::pi * (img - std::floor(img)));
      }
      d.samples.push_back(std::move(out));
    }
    return d;
  }

  inline nlohmann::json to_json(SectionData const& d) {
    nlohmann::json j;
    j["g"]          = d.g;
    j["n"]          = d.n;
    j["resolution"] = d.resolution;
    j["cycle"]      = d.cycle;
    j["samples"]    = nlohmann::json::array();
    for (auto const& p : d.samples) {
      j["samples"].push_back({{"point", {p.triangle, p.bary}},
                              {"theta", p.theta},
                              {"images", p.images}});
    }
    return j;
  }

  inline SectionData section_data_from_json(nlohmann::json const& j) {
    SectionData d;
    d.g          = j.at("g").get<int>();
    d.n          = j.at("n").get<int>();
    d.resolution = j.at("resolution").get<int>();
    d.cycle      = j.at("cycle").get<std::vector<std::size_t>>();
    for (auto const& p : j.at("samples")) {
      SectionSample s;
      s.triangle = p.at("point").at(0).get<std::size_t>();
      s.bary     = p.at("point").at(1).get<std::array<double, 3>>();
      s.theta    = p.at("theta").get<double>();
      s.images   = p.at("images").get<std::vector<double>>();
      d.samples.push_back(std::move(s));
    }
    return d;
  }

  inline void export_section_data(SectionData const& d, std::string const& path) {
    std::ofstream out(path);
    if (!out) {
      throw geometry_error("cannot open " + path + " for writing");
    }
    out << to_json(d).dump(1) << '\n';
    if (!out) {
      throw geometry_error("write to " + path + " failed");
    }
  }

  inline SectionData load_section_data(std::string const& path) {
    std::ifstream in(path);
    if (!in) {
      throw geometry_error("cannot open " + path);
    }
    return section_data_from_json(nlohmann::json::parse(in));
  }

}  // namespace mixbraid
