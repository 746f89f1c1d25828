#include "lsfem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "lsfem/quadrature.hpp"

namespace lsfem {

namespace {

inline std::uint64_t edge_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

double signed_area(const Vec2& a, const Vec2& b, const Vec2& c) {
  return 0.5 * ((b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x()));
}

}  // namespace

double Mesh::area(int t) const {
  const auto& T = triangles[t];
  return signed_area(vertices[T.v[0]], vertices[T.v[1]], vertices[T.v[2]]);
}

double Mesh::diameter(int t) const {
  const auto& T = triangles[t];
  double h = 0.0;
  for (int i = 0; i < 3; ++i)
    h = std::max(h, (vertices[T.v[(i + 1) % 3]] - vertices[T.v[(i + 2) % 3]]).norm());
  return h;
}

double Mesh::min_angle(int t) const {
  const auto& T = triangles[t];
  double amin = M_PI;
  for (int i = 0; i < 3; ++i) {
    const Vec2 e1 = (vertices[T.v[(i + 1) % 3]] - vertices[T.v[i]]).normalized();
    const Vec2 e2 = (vertices[T.v[(i + 2) % 3]] - vertices[T.v[i]]).normalized();
    amin = std::min(amin, std::acos(std::clamp(e1.dot(e2), -1.0, 1.0)));
  }
  return amin;
}

double Mesh::min_angle() const {
  double amin = M_PI;
  for (int t = 0; t < num_triangles(); ++t) amin = std::min(amin, min_angle(t));
  return amin;
}

Vec2 Mesh::barycenter(int t) const {
  const auto& T = triangles[t];
  return (vertices[T.v[0]] + vertices[T.v[1]] + vertices[T.v[2]]) / 3.0;
}

double Mesh::edge_length(int e) const {
  return (vertices[edges[e].v[1]] - vertices[edges[e].v[0]]).norm();
}

Vec2 Mesh::edge_midpoint(int e) const {
  return 0.5 * (vertices[edges[e].v[0]] + vertices[edges[e].v[1]]);
}

Vec2 Mesh::edge_normal(int e) const {
  const Vec2 t = (vertices[edges[e].v[1]] - vertices[edges[e].v[0]]).normalized();
  return Vec2(t.y(), -t.x());
}

Vec2 Mesh::outward_normal(int e) const {
  if (!is_boundary_edge(e)) throw std::invalid_argument("outward_normal: interior edge");
  const int t = edges[e].tri[0];
  Vec2 n = edge_normal(e);
  for (int i = 0; i < 3; ++i) {
    const int v = triangles[t].v[i];
    if (v != edges[e].v[0] && v != edges[e].v[1]) {
      if (n.dot(edge_midpoint(e) - vertices[v]) < 0.0) n = -n;
      break;
    }
  }
  return n;
}

double Mesh::normal_sign(int t, int i) const {
  const int e = edge_of(t, i);
  return edge_normal(e).dot(edge_midpoint(e) - vertices[triangles[t].v[i]]) > 0.0 ? 1.0
                                                                                  : -1.0;
}

std::array<double, 3> Mesh::edge_barycentric(int t, int i, double s) const {
  const Edge& e = edges[edge_of(t, i)];
  std::array<double, 3> lambda{0.0, 0.0, 0.0};
  for (int k = 0; k < 3; ++k) {
    const int v = triangles[t].v[k];
    if (v == e.v[0]) lambda[k] = 1.0 - s;
    if (v == e.v[1]) lambda[k] = s;
  }
  return lambda;
}

void Mesh::rebuild_connectivity() {
  std::unordered_map<std::uint64_t, BoundaryTag> tag_hints;
  tag_hints.reserve(edges.size());
  for (const auto& e : edges) tag_hints.emplace(edge_key(e.v[0], e.v[1]), e.tag);

  std::unordered_map<std::uint64_t, int> lookup;
  lookup.reserve(triangles.size() * 2);
  edges.clear();
  tri_edges_.assign(triangles.size(), {-1, -1, -1});

  for (int t = 0; t < num_triangles(); ++t) {
    const auto& T = triangles[t];
    if (T.ref_edge < 0 || T.ref_edge > 2)
      throw std::runtime_error("mesh: refinement edge index out of range");
    if (!(signed_area(vertices[T.v[0]], vertices[T.v[1]], vertices[T.v[2]]) > 0.0))
      throw std::runtime_error("mesh: non-positive triangle orientation");
    for (int i = 0; i < 3; ++i) {
      const int va = T.v[(i + 1) % 3], vb = T.v[(i + 2) % 3];
      if (va == vb || va < 0 || vb < 0 || va >= num_vertices() || vb >= num_vertices())
        throw std::runtime_error("mesh: invalid triangle vertex ids");
      const auto key = edge_key(va, vb);
      auto [it, inserted] = lookup.emplace(key, num_edges());
      if (inserted) {
        Edge e;
        e.v = {std::min(va, vb), std::max(va, vb)};
        e.tri = {t, -1};
        edges.push_back(e);
      } else {
        Edge& e = edges[it->second];
        if (e.tri[1] >= 0)
          throw std::runtime_error("mesh: edge shared by more than two triangles");
        e.tri[1] = t;
      }
      tri_edges_[t][i] = it->second;
    }
  }

  for (auto& e : edges) {
    if (e.tri[1] >= 0) {
      e.tag = BoundaryTag::interior;
    } else {
      const auto it = tag_hints.find(edge_key(e.v[0], e.v[1]));
      e.tag = (it != tag_hints.end() && it->second != BoundaryTag::interior)
                  ? it->second
                  : BoundaryTag::unclassified;
    }
  }
}

std::vector<int> Mesh::edge_incidence_counts(const Mesh& m) {
  std::unordered_map<std::uint64_t, int> counts;
  for (const auto& T : m.triangles)
    for (int i = 0; i < 3; ++i)
      ++counts[edge_key(T.v[(i + 1) % 3], T.v[(i + 2) % 3])];
  std::vector<int> out;
  out.reserve(counts.size());
  for (const auto& [k, c] : counts) out.push_back(c);
  std::sort(out.begin(), out.end());
  return out;
}

Mesh build_initial_mesh() {
  Mesh m;
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 3; ++i) m.vertices.emplace_back(0.5 * i, 0.5 * j);
  for (int sy = 0; sy < 2; ++sy)
    for (int sx = 0; sx < 2; ++sx)
      m.vertices.emplace_back(0.25 + 0.5 * sx, 0.25 + 0.5 * sy);

  for (int sy = 0; sy < 2; ++sy) {
    for (int sx = 0; sx < 2; ++sx) {
      const int ll = 3 * sy + sx, lr = ll + 1;
      const int ul = 3 * (sy + 1) + sx, ur = ul + 1;
      const int c = 9 + 2 * sy + sx;
      // counterclockwise, right angle at the center; the refinement edge
      // (opposite the center) is the square side
      for (const auto& corners :
           {std::array<int, 2>{ll, lr}, {lr, ur}, {ur, ul}, {ul, ll}}) {
        Triangle T;
        T.v = {c, corners[0], corners[1]};
        T.ref_edge = 0;
        m.triangles.push_back(T);
      }
    }
  }
  m.rebuild_connectivity();
  return m;
}

void classify_boundary(Mesh& mesh, const VectorField& beta) {
  for (int e = 0; e < mesh.num_edges(); ++e) {
    if (!mesh.is_boundary_edge(e)) continue;
    const Vec2 b = beta(mesh.edge_midpoint(e));
    const double s = b.dot(mesh.outward_normal(e));
    if (std::abs(s) <= 1e-12 * (1.0 + b.norm()))
      mesh.edges[e].tag = BoundaryTag::characteristic;
    else
      mesh.edges[e].tag = s > 0.0 ? BoundaryTag::outflow : BoundaryTag::inflow;
  }
}

namespace {

/// Emits a bisection child; splits it once more if its own refinement edge
/// is one of the parent mesh's edges selected for bisection.
void emit_child(Mesh& out, const std::vector<int>& midpoint,
                const std::vector<char>& bisect, std::array<int, 3> v, int ref_idx,
                int parent_edge, int generation) {
  if (parent_edge >= 0 && bisect[parent_edge]) {
    const int p = v[ref_idx];
    const int a = v[(ref_idx + 1) % 3];
    const int b = v[(ref_idx + 2) % 3];
    const int mid = midpoint[parent_edge];
    // grandchild refinement edges are halves of parent edges, never
    // original edges, so the recursion stops here
    emit_child(out, midpoint, bisect, {p, a, mid}, 2, -1, generation + 1);
    emit_child(out, midpoint, bisect, {p, mid, b}, 1, -1, generation + 1);
    return;
  }
  Triangle T;
  T.v = v;
  T.ref_edge = ref_idx;
  T.generation = generation;
  out.triangles.push_back(T);
}

}  // namespace

Mesh refine(const Mesh& mesh, const std::vector<int>& marked) {
  std::vector<char> bisect(mesh.num_edges(), 0);
  for (int t : marked) {
    if (t < 0 || t >= mesh.num_triangles())
      throw std::invalid_argument("refine: marked triangle id out of range");
    bisect[mesh.edge_of(t, mesh.triangles[t].ref_edge)] = 1;
  }

  // closure: a triangle with any edge selected must have its refinement
  // edge selected; iterate to a fixpoint
  int sweeps = 0;
  for (bool changed = true; changed;) {
    if (++sweeps > mesh.num_edges() + 2)
      throw std::runtime_error("refine: conforming closure did not terminate");
    changed = false;
    for (int t = 0; t < mesh.num_triangles(); ++t) {
      const int re = mesh.edge_of(t, mesh.triangles[t].ref_edge);
      if (bisect[re]) continue;
      for (int i = 0; i < 3; ++i) {
        if (bisect[mesh.edge_of(t, i)]) {
          bisect[re] = 1;
          changed = true;
          break;
        }
      }
    }
  }

  Mesh out;
  out.vertices = mesh.vertices;
  std::vector<int> midpoint(mesh.num_edges(), -1);
  for (int e = 0; e < mesh.num_edges(); ++e) {
    if (!bisect[e]) continue;
    midpoint[e] = out.num_vertices();
    out.vertices.push_back(mesh.edge_midpoint(e));
  }

  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const Triangle& T = mesh.triangles[t];
    const int r = T.ref_edge;
    const int er = mesh.edge_of(t, r);
    if (!bisect[er]) {
      out.triangles.push_back(T);
      continue;
    }
    const int p = T.v[r];
    const int a = T.v[(r + 1) % 3];
    const int b = T.v[(r + 2) % 3];
    const int mid = midpoint[er];
    // children (p,a,mid) and (p,mid,b) stay counterclockwise and have the
    // new vertex as peak; their refinement edges are the old arm edges
    emit_child(out, midpoint, bisect, {p, a, mid}, 2, mesh.edge_of(t, (r + 2) % 3),
               T.generation + 1);
    emit_child(out, midpoint, bisect, {p, mid, b}, 1, mesh.edge_of(t, (r + 1) % 3),
               T.generation + 1);
  }

  // seed boundary tags for inherited edges and their halves; interior
  // edges are recomputed by rebuild_connectivity
  for (int e = 0; e < mesh.num_edges(); ++e) {
    if (!mesh.is_boundary_edge(e)) continue;
    const Edge& old = mesh.edges[e];
    auto push_stub = [&](int v0, int v1) {
      Edge stub;
      stub.v = {std::min(v0, v1), std::max(v0, v1)};
      stub.tag = old.tag;
      out.edges.push_back(stub);
    };
    if (midpoint[e] >= 0) {
      push_stub(old.v[0], midpoint[e]);
      push_stub(midpoint[e], old.v[1]);
    } else {
      push_stub(old.v[0], old.v[1]);
    }
  }

  out.rebuild_connectivity();
  return out;
}

Mesh uniform_refine(const Mesh& mesh) {
  std::vector<int> all(mesh.num_triangles());
  for (int t = 0; t < mesh.num_triangles(); ++t) all[t] = t;
  return refine(mesh, all);
}

ElementClassification classify_elements(const Mesh& mesh, const VectorField& beta,
                                        double eps, double cap, int quad_order) {
  if (!(eps > 0.0)) throw std::invalid_argument("classify_elements: eps must be > 0");
  const TriangleRule& rule = triangle_rule(quad_order);
  const int nt = mesh.num_triangles();
  ElementClassification cls;
  cls.peclet.resize(nt);
  cls.convective.resize(nt);
  cls.delta.resize(nt);
  cls.touches_outflow.resize(nt);

  for (int t = 0; t < nt; ++t) {
    const auto& T = mesh.triangles[t];
    const Vec2 p0 = mesh.vertices[T.v[0]], p1 = mesh.vertices[T.v[1]],
               p2 = mesh.vertices[T.v[2]];
    double bmax = 0.0;
    for (const auto& q : rule.points)
      bmax = std::max(bmax, beta(q.l0 * p0 + q.l1 * p1 + q.l2 * p2).norm());

    const double h = mesh.diameter(t);
    const double pe = bmax > 0.0 ? bmax * h / (2.0 * eps) : 0.0;
    const bool conv = pe > 1.0;
    const double d = conv ? 2.0 * h / bmax : h * h / eps;
    cls.peclet[t] = pe;
    cls.convective[t] = conv;
    cls.delta[t] = std::min(d, cap);

    bool touches = false;
    for (int i = 0; i < 3; ++i)
      touches = touches || mesh.edges[mesh.edge_of(t, i)].tag == BoundaryTag::outflow;
    cls.touches_outflow[t] = touches;
    if (touches && conv) cls.outflow_subset_diffusive = false;
  }
  return cls;
}

}  // namespace lsfem
