#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace lsfem {

using Vec2 = Eigen::Vector2d;
using ScalarField = std::function<double(const Vec2&)>;
using VectorField = std::function<Vec2(const Vec2&)>;

enum class BoundaryTag : std::uint8_t {
  interior,
  outflow,        // beta.n > 0
  inflow,         // beta.n < 0
  characteristic, // beta.n = 0
  unclassified,   // boundary edge before classify_boundary has run
};

/// Triangle with newest-vertex bisection bookkeeping. Local edge i is the
/// edge opposite vertex v[i]; the refinement edge is the one opposite
/// v[ref_edge], so v[ref_edge] is the peak (newest) vertex.
struct Triangle {
  std::array<int, 3> v;
  int ref_edge = 2;
  int generation = 0;
};

struct Edge {
  std::array<int, 2> v;             // ascending vertex ids
  std::array<int, 2> tri{-1, -1};   // adjacent triangles, tri[1] = -1 on the boundary
  BoundaryTag tag = BoundaryTag::interior;
};

/// Conforming triangulation of a polygon. Immutable after construction;
/// refine() produces a new mesh.
class Mesh {
 public:
  std::vector<Vec2> vertices;
  std::vector<Triangle> triangles;
  std::vector<Edge> edges;

  int num_vertices() const { return static_cast<int>(vertices.size()); }
  int num_triangles() const { return static_cast<int>(triangles.size()); }
  int num_edges() const { return static_cast<int>(edges.size()); }

  /// Global edge id of the edge opposite local vertex i of triangle t.
  int edge_of(int t, int i) const { return tri_edges_[t][i]; }

  bool is_boundary_edge(int e) const { return edges[e].tri[1] < 0; }

  double area(int t) const;
  double diameter(int t) const;  // h_K, the longest edge
  double min_angle(int t) const; // radians
  double min_angle() const;      // over all triangles
  Vec2 barycenter(int t) const;

  double edge_length(int e) const;
  Vec2 edge_midpoint(int e) const;
  /// Unit normal in the global convention: tangent from lower to higher
  /// vertex id, rotated by -90 degrees.
  Vec2 edge_normal(int e) const;
  /// Outward unit normal of a boundary edge.
  Vec2 outward_normal(int e) const;
  /// +1 if the global edge normal of edge_of(t,i) points out of t, else -1.
  double normal_sign(int t, int i) const;

  /// Barycentric coordinates in triangle t of the point at parameter
  /// s in [0,1] along edge_of(t,i), using the global lower-to-higher
  /// vertex id parametrization of the edge.
  std::array<double, 3> edge_barycentric(int t, int i, double s) const;

  /// Rebuilds edges[] and the triangle->edge table from triangles[],
  /// preserving tags passed in by (sorted vertex pair). Checks conformity
  /// and orientation, throwing on violation.
  void rebuild_connectivity();

  /// Number of triangles adjacent to each (sorted) vertex pair occurring
  /// as a triangle edge; independent of edges[] so tests can use it as an
  /// oracle against rebuild_connectivity.
  static std::vector<int> edge_incidence_counts(const Mesh& m);

 private:
  std::vector<std::array<int, 3>> tri_edges_;
};

/// Unit square split into a 2x2 array of squares, each cut by both
/// diagonals: 13 vertices, 16 isosceles right triangles. Refinement edges
/// are the hypotenuses.
Mesh build_initial_mesh();

/// Tags every boundary edge by the sign of beta(midpoint).n (outward);
/// interior edges keep the interior tag.
void classify_boundary(Mesh& mesh, const VectorField& beta);

/// Newest-vertex bisection of the marked triangles plus the conforming
/// closure. Boundary tags are inherited from parent edges.
Mesh refine(const Mesh& mesh, const std::vector<int>& marked);

/// refine() with every triangle marked.
Mesh uniform_refine(const Mesh& mesh);

/// Peclet/delta metadata used by the streamline term of the triple norm.
struct ElementClassification {
  std::vector<double> peclet;        // Pe_K
  std::vector<bool> convective;      // Pe_K > 1
  std::vector<double> delta;         // delta_K
  std::vector<bool> touches_outflow; // has an edge on Gamma+
  /// true iff every element touching Gamma+ is diffusion-dominated
  bool outflow_subset_diffusive = true;
};

/// Pe_K = |beta|_{inf,K} h_K / (2 eps) with |beta|_{inf,K} the max
/// Euclidean norm over the element's quadrature points; delta_K is
/// 2 h_K/|beta|_{inf,K} on convective elements and h_K^2/eps on diffusive
/// ones, clamped to the cap.
ElementClassification classify_elements(const Mesh& mesh, const VectorField& beta,
                                        double eps, double cap = 1.0,
                                        int quad_order = 4);

}  // namespace lsfem
