#include "chainlets/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

namespace chainlets {

namespace {

KVector wedge_of_edges(int n, const std::vector<Vec>& edges) {
  KVector w = KVector::basis(n, MultiIndex(), Scalar(1));
  for (const auto& e : edges) w = wedge(w, KVector::from_vec(e));
  return w;
}

Scalar factorial(int k) {
  Scalar f(1);
  for (int i = 2; i <= k; ++i) f *= Scalar(i);
  return f;
}

Scalar ipow_half(int times) {  // (1/2)^times
  Scalar s(1);
  for (int i = 0; i < times; ++i) s /= Scalar(2);
  return s;
}

}  // namespace

KVector CellSpec::volume_vector() const {
  KVector w = wedge_of_edges(n(), edges);
  Scalar scale(orientation);
  if (kind == Kind::kSimplex) scale /= factorial(grade());
  return scale * w;
}

CellSpec unit_cube_cell(int n, int k) {
  CellSpec c;
  c.kind = CellSpec::Kind::kCube;
  c.corner = zero_vec(n);
  for (int i = 1; i <= k; ++i) c.edges.push_back(basis_vec(n, i));
  return c;
}

Chain cube_to_chain(const CellSpec& cube, int level) {
  if (cube.kind != CellSpec::Kind::kCube)
    throw std::invalid_argument("cube_to_chain: not a cube");
  KVector vol = cube.volume_vector();
  if (cube.grade() > 0 && vol.is_zero())
    throw std::invalid_argument("cube_to_chain: degenerate cube");
  Chain out(cube.n());
  const int k = cube.grade();
  if (k == 0) {
    out.add_pole(cube.corner, KVector::basis(cube.n(), MultiIndex(),
                                             Scalar(cube.orientation)));
    return out;
  }
  const long div = 1L << level;
  KVector piece = ipow_half(k * level) * vol;
  std::vector<long> idx(static_cast<size_t>(k), 0);
  Scalar step = Scalar::of_mode(Rational(1, div));
  while (true) {
    Point mid = cube.corner;
    for (int a = 0; a < k; ++a) {
      Scalar t = (Scalar(2 * idx[static_cast<size_t>(a)] + 1) * step) / Scalar(2);
      mid = vec_add(mid, vec_scale(t, cube.edges[static_cast<size_t>(a)]));
    }
    out.add_pole(mid, piece);
    int a = 0;
    while (a < k) {
      if (++idx[static_cast<size_t>(a)] < div) break;
      idx[static_cast<size_t>(a)] = 0;
      ++a;
    }
    if (a == k) break;
  }
  return out;
}

std::vector<CellSpec> cube_boundary(const CellSpec& cube) {
  std::vector<CellSpec> out;
  const int k = cube.grade();
  for (int i = 0; i < k; ++i) {
    CellSpec top, bottom;
    top.kind = bottom.kind = CellSpec::Kind::kCube;
    top.corner = vec_add(cube.corner, cube.edges[static_cast<size_t>(i)]);
    bottom.corner = cube.corner;
    for (int a = 0; a < k; ++a) {
      if (a == i) continue;
      top.edges.push_back(cube.edges[static_cast<size_t>(a)]);
      bottom.edges.push_back(cube.edges[static_cast<size_t>(a)]);
    }
    int sign = (i % 2 == 0) ? 1 : -1;
    top.orientation = cube.orientation * sign;
    bottom.orientation = -cube.orientation * sign;
    out.push_back(std::move(top));
    out.push_back(std::move(bottom));
  }
  return out;
}

Chain cells_to_chain(const std::vector<CellSpec>& cells, int level) {
  if (cells.empty()) return Chain(0);
  Chain out(cells[0].n());
  for (const auto& c : cells) out = out + cube_to_chain(c, level);
  return out;
}

Point SimplicialComplex::barycenter(const Simplex& s) const {
  Point b = zero_vec(n);
  for (size_t v : s.vertices) b = vec_add(b, vertices[v]);
  Scalar inv = Scalar(1) / Scalar(static_cast<int>(s.vertices.size()));
  return vec_scale(inv, b);
}

KVector SimplicialComplex::volume_vector(const Simplex& s) const {
  std::vector<Vec> edges;
  for (size_t i = 1; i < s.vertices.size(); ++i)
    edges.push_back(vec_sub(vertices[s.vertices[i]], vertices[s.vertices[0]]));
  KVector w = wedge_of_edges(n, edges);
  return (s.coeff / factorial(k)) * w;
}

double SimplicialComplex::mesh_size() const {
  double m = 0.0;
  for (const auto& s : simplices)
    for (size_t a = 0; a < s.vertices.size(); ++a)
      for (size_t b = a + 1; b < s.vertices.size(); ++b)
        m = std::max(m, vec_norm(vec_sub(vertices[s.vertices[a]],
                                         vertices[s.vertices[b]])));
  return m;
}

void SimplicialComplex::validate() const {
  for (const auto& s : simplices) {
    if (static_cast<int>(s.vertices.size()) != k + 1)
      throw std::invalid_argument("SimplicialComplex: wrong simplex arity");
    for (size_t v : s.vertices)
      if (v >= vertices.size())
        throw std::invalid_argument("SimplicialComplex: vertex index out of range");
    if (k > 0 && volume_vector(s).is_zero())
      throw std::invalid_argument("SimplicialComplex: degenerate simplex");
  }
}

namespace {

struct GeomSimplex {
  std::vector<Point> verts;
  Scalar coeff;
};

// One barycentric subdivision step of a single simplex; children oriented
// with the parent.
std::vector<GeomSimplex> subdivide_once(const GeomSimplex& s, int n) {
  const size_t m = s.verts.size();
  std::vector<GeomSimplex> out;
  std::vector<size_t> perm(m);
  std::iota(perm.begin(), perm.end(), size_t{0});
  auto wedge_of = [&](const std::vector<Point>& vs) {
    std::vector<Vec> edges;
    for (size_t i = 1; i < vs.size(); ++i)
      edges.push_back(vec_sub(vs[i], vs[0]));
    return wedge_of_edges(n, edges);
  };
  KVector parent = wedge_of(s.verts);
  do {
    GeomSimplex child;
    child.coeff = s.coeff;
    Point acc = zero_vec(n);
    for (size_t depth = 0; depth < m; ++depth) {
      acc = vec_add(acc, s.verts[perm[depth]]);
      Scalar inv = Scalar(1) / Scalar(static_cast<int>(depth + 1));
      child.verts.push_back(vec_scale(inv, acc));
    }
    if (m > 1) {
      KVector w = wedge_of(child.verts);
      if (inner(w, parent).is_negative()) std::swap(child.verts[0], child.verts[1]);
    }
    out.push_back(std::move(child));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

}  // namespace

Chain complex_to_chain(const SimplicialComplex& complex, int level) {
  complex.validate();
  Chain out(complex.n);
  Scalar kfact = factorial(complex.k);
  for (const auto& s : complex.simplices) {
    std::vector<GeomSimplex> current;
    GeomSimplex root;
    for (size_t v : s.vertices) root.verts.push_back(complex.vertices[v]);
    root.coeff = s.coeff;
    current.push_back(std::move(root));
    for (int l = 0; l < level; ++l) {
      std::vector<GeomSimplex> next;
      for (const auto& gs : current) {
        auto children = subdivide_once(gs, complex.n);
        next.insert(next.end(), children.begin(), children.end());
      }
      current = std::move(next);
    }
    for (const auto& gs : current) {
      std::vector<Vec> edges;
      for (size_t i = 1; i < gs.verts.size(); ++i)
        edges.push_back(vec_sub(gs.verts[i], gs.verts[0]));
      KVector w = (gs.coeff / kfact) * wedge_of_edges(complex.n, edges);
      Point b = zero_vec(complex.n);
      for (const auto& v : gs.verts) b = vec_add(b, v);
      b = vec_scale(Scalar(1) / Scalar(static_cast<int>(gs.verts.size())), b);
      out.add_pole(b, w);
    }
  }
  return out;
}

SimplicialComplex complex_boundary(const SimplicialComplex& complex) {
  SimplicialComplex out;
  out.n = complex.n;
  out.k = complex.k - 1;
  out.vertices = complex.vertices;
  if (complex.k == 0) return out;
  std::map<std::vector<size_t>, Scalar> faces;
  for (const auto& s : complex.simplices) {
    for (size_t drop = 0; drop < s.vertices.size(); ++drop) {
      std::vector<size_t> face;
      for (size_t i = 0; i < s.vertices.size(); ++i)
        if (i != drop) face.push_back(s.vertices[i]);
      // Canonical sorted face with permutation sign.
      long inv = 0;
      for (size_t a = 0; a < face.size(); ++a)
        for (size_t b = a + 1; b < face.size(); ++b)
          if (face[a] > face[b]) ++inv;
      std::vector<size_t> sorted = face;
      std::sort(sorted.begin(), sorted.end());
      Scalar sign((drop % 2 == 0 ? 1 : -1) * (inv % 2 == 0 ? 1 : -1));
      faces[sorted] += sign * s.coeff;
    }
  }
  for (auto& [verts, coeff] : faces) {
    if (coeff.is_zero()) continue;
    Simplex f;
    f.vertices = verts;
    f.coeff = coeff;
    out.simplices.push_back(std::move(f));
  }
  return out;
}

namespace {
// Iterate the cells of a box grid; yields (center point, cell volume).
template <typename Fn>
void for_grid_cells(const Box& box, long divisions, Fn&& fn) {
  const int n = static_cast<int>(box.lo.size());
  Scalar vol(1);
  std::vector<Scalar> width(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    width[static_cast<size_t>(i)] =
        (box.hi[static_cast<size_t>(i)] - box.lo[static_cast<size_t>(i)]) /
        Scalar(static_cast<long>(divisions));
    vol *= width[static_cast<size_t>(i)];
  }
  std::vector<long> idx(static_cast<size_t>(n), 0);
  while (true) {
    Point center = box.lo;
    for (int i = 0; i < n; ++i) {
      Scalar t = Scalar(2 * idx[static_cast<size_t>(i)] + 1) / Scalar(2);
      center[static_cast<size_t>(i)] =
          center[static_cast<size_t>(i)] + t * width[static_cast<size_t>(i)];
    }
    fn(center, vol);
    int a = 0;
    while (a < n) {
      if (++idx[static_cast<size_t>(a)] < divisions) break;
      idx[static_cast<size_t>(a)] = 0;
      ++a;
    }
    if (a == n) break;
  }
}
}  // namespace

Chain vector_field_chain(const std::vector<CoeffFn>& components, const Box& box,
                         int level) {
  const int n = static_cast<int>(box.lo.size());
  if (static_cast<int>(components.size()) != n)
    throw std::invalid_argument("vector_field_chain: component count != n");
  Chain out(n);
  for_grid_cells(box, 1L << level, [&](const Point& center, const Scalar& vol) {
    KVector v(n, 1);
    for (int i = 1; i <= n; ++i) {
      Scalar c = components[static_cast<size_t>(i - 1)].eval(center);
      if (!c.is_zero()) v.add_term(MultiIndex({i}), vol * c);
    }
    if (!v.is_zero()) out.add_pole(center, v);
  });
  return out;
}

Chain form_chain(const Form& w, const Box& box, int level) {
  const int n = static_cast<int>(box.lo.size());
  if (w.n() != n) throw std::invalid_argument("form_chain: dimension mismatch");
  Chain out(n);
  for_grid_cells(box, 1L << level, [&](const Point& center, const Scalar& vol) {
    KVector v(n, w.grade());
    for (const auto& [mi, f] : w.terms()) {
      Scalar c = f.eval(center);
      if (!c.is_zero()) v.add_term(mi, vol * c);
    }
    if (!v.is_zero()) out.add_pole(center, v);
  });
  return out;
}

Chain bin_chain(const Chain& p, const Box& box, int divisions) {
  if (p.max_order() > 0)
    throw std::invalid_argument("bin_chain: requires an order-0 chain");
  const int n = p.n();
  std::vector<Scalar> width(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    width[static_cast<size_t>(i)] =
        (box.hi[static_cast<size_t>(i)] - box.lo[static_cast<size_t>(i)]) /
        Scalar(divisions);
  Chain out(n);
  std::map<std::vector<long>, XElement> cells;
  for (const auto& [at, payload] : p.support()) {
    std::vector<long> idx(static_cast<size_t>(n));
    bool inside = true;
    for (int i = 0; i < n; ++i) {
      Scalar rel = (at[static_cast<size_t>(i)] - box.lo[static_cast<size_t>(i)]) /
                   width[static_cast<size_t>(i)];
      double r = rel.to_double();
      long cell = static_cast<long>(std::floor(r));
      if (cell == divisions && rel == Scalar(divisions)) cell = divisions - 1;
      if (cell < 0 || cell >= divisions) {
        inside = false;
        break;
      }
      idx[static_cast<size_t>(i)] = cell;
    }
    if (!inside) continue;
    auto it = cells.find(idx);
    if (it == cells.end())
      cells.emplace(idx, payload);
    else
      it->second = it->second + payload;
  }
  for (const auto& [idx, payload] : cells) {
    if (payload.is_zero()) continue;
    Point center = box.lo;
    for (int i = 0; i < n; ++i)
      center[static_cast<size_t>(i)] =
          center[static_cast<size_t>(i)] +
          (Scalar(2 * idx[static_cast<size_t>(i)] + 1) / Scalar(2)) *
              width[static_cast<size_t>(i)];
    out.add_pole(center, payload);
  }
  return out;
}

void MeshPair::validate() const {
  primal.validate();
  dual.validate();
  if (primal.n != dual.n)
    throw std::invalid_argument("MeshPair: ambient dimensions differ");
  if (primal.k + dual.k != primal.n)
    throw std::invalid_argument("MeshPair: grades do not complement");
  std::vector<bool> seen_p(primal.simplices.size(), false);
  std::vector<bool> seen_d(dual.simplices.size(), false);
  for (const auto& [a, b] : bijection) {
    if (a >= primal.simplices.size() || b >= dual.simplices.size())
      throw std::invalid_argument("MeshPair: bijection index out of range");
    if (seen_p[a] || seen_d[b])
      throw std::invalid_argument("MeshPair: bijection not one-to-one");
    seen_p[a] = seen_d[b] = true;
  }
  for (bool s : seen_p)
    if (!s) throw std::invalid_argument("MeshPair: bijection incomplete");
  for (bool s : seen_d)
    if (!s) throw std::invalid_argument("MeshPair: bijection incomplete");
}

HodgeReport hodge_sequence_report(const std::vector<MeshPair>& pairs,
                                  double final_threshold) {
  HodgeReport rep;
  int level = 0;
  for (const auto& mp : pairs) {
    mp.validate();
    HodgeRow row;
    row.level = ++level;
    row.pairs = mp.bijection.size();
    row.primal_mesh = mp.primal.mesh_size();
    row.dual_mesh = mp.dual.mesh_size();
    Chain diff(mp.primal.n);
    double mass_beta = 0.0, mass_diff = 0.0;
    for (const auto& [ip, id] : mp.bijection) {
      const auto& sp = mp.primal.simplices[ip];
      const auto& sd = mp.dual.simplices[id];
      KVector alpha = perp(mp.primal.volume_vector(sp));
      KVector beta = mp.dual.volume_vector(sd);
      Point pk = mp.primal.barycenter(sp);
      Point qk = mp.dual.barycenter(sd);
      mass_beta += mass(beta).to_double();
      mass_diff += mass(beta - alpha).to_double();
      row.max_barycenter =
          std::max(row.max_barycenter, vec_norm(vec_sub(pk, qk)));
      diff.add_pole(qk, beta);
      diff.add_pole(pk, -alpha);
    }
    row.mass_ratio = mass_beta > 0 ? mass_diff / mass_beta : 0.0;
    double upper = norm_upper_bound(diff, 1).cost();
    row.bracket_ratio = mass_beta > 0 ? upper / mass_beta : 0.0;
    rep.rows.push_back(row);
  }
  rep.mass_decreasing = rep.rows.size() > 1;
  rep.bracket_decreasing = rep.rows.size() > 1;
  rep.barycenter_shrinking = rep.rows.size() > 1;
  for (size_t i = 1; i < rep.rows.size(); ++i) {
    if (!(rep.rows[i].mass_ratio < rep.rows[i - 1].mass_ratio))
      rep.mass_decreasing = false;
    if (!(rep.rows[i].bracket_ratio < rep.rows[i - 1].bracket_ratio))
      rep.bracket_decreasing = false;
    if (!(rep.rows[i].max_barycenter <= rep.rows[i - 1].max_barycenter + 1e-12))
      rep.barycenter_shrinking = false;
  }
  if (!rep.rows.empty()) {
    rep.final_mass_ratio = rep.rows.back().mass_ratio;
    rep.final_bracket_ratio = rep.rows.back().bracket_ratio;
  }
  bool hodge = rep.mass_decreasing && rep.bracket_decreasing &&
               rep.barycenter_shrinking &&
               rep.final_mass_ratio < final_threshold &&
               rep.final_bracket_ratio < final_threshold;
  // A degenerate exact pairing (all ratios zero) is trivially a Hodge pair.
  if (!rep.rows.empty()) {
    bool all_zero = true;
    for (const auto& row : rep.rows)
      if (row.mass_ratio > 1e-12 || row.bracket_ratio > 1e-12 ||
          row.max_barycenter > 1e-12)
        all_zero = false;
    if (all_zero) hodge = true;
  }
  rep.verdict = hodge ? "HODGE" : "NOT-HODGE";
  return rep;
}

// ---------------------------------------------------------------------------
// Structured mesh families.
// ---------------------------------------------------------------------------
namespace {

Point pt2(double x, double y) { return Point{Scalar::fp(x), Scalar::fp(y)}; }

struct TriMesh {
  std::vector<Point> verts;
  std::vector<std::array<size_t, 3>> tris;  // ccw
};

// Rows of isoceles triangles covering the unit square; odd rows offset by a
// half base, with half-triangles closing the vertical sides.
TriMesh strip_mesh(int m, double distortion) {
  TriMesh mesh;
  std::vector<std::vector<size_t>> rows;
  auto distort = [&](double x, double y) {
    double pi = 3.14159265358979323846;
    double dx = distortion * std::sin(pi * x) * std::sin(pi * y);
    double dy = 0.5 * distortion * std::sin(2 * pi * x) * std::sin(pi * y);
    return pt2(x + dx, y + dy);
  };
  double w = 1.0 / m;
  for (int r = 0; r <= m; ++r) {
    std::vector<size_t> row;
    double y = static_cast<double>(r) / m;
    if (r % 2 == 0) {
      for (int i = 0; i <= m; ++i) {
        row.push_back(mesh.verts.size());
        mesh.verts.push_back(distort(i * w, y));
      }
    } else {
      row.push_back(mesh.verts.size());
      mesh.verts.push_back(distort(0.0, y));
      for (int i = 0; i < m; ++i) {
        row.push_back(mesh.verts.size());
        mesh.verts.push_back(distort((i + 0.5) * w, y));
      }
      row.push_back(mesh.verts.size());
      mesh.verts.push_back(distort(1.0, y));
    }
    rows.push_back(std::move(row));
  }
  auto xcoord = [&](size_t v) { return mesh.verts[v][0].to_double(); };
  for (int r = 0; r < m; ++r) {
    const auto& bot = rows[static_cast<size_t>(r)];
    const auto& top = rows[static_cast<size_t>(r + 1)];
    size_t i = 0, j = 0;
    while (i + 1 < bot.size() || j + 1 < top.size()) {
      bool advance_bottom;
      if (i + 1 >= bot.size())
        advance_bottom = false;
      else if (j + 1 >= top.size())
        advance_bottom = true;
      else
        advance_bottom = xcoord(bot[i + 1]) <= xcoord(top[j + 1]);
      if (advance_bottom) {
        mesh.tris.push_back({bot[i], bot[i + 1], top[j]});
        ++i;
      } else {
        mesh.tris.push_back({bot[i], top[j + 1], top[j]});
        ++j;
      }
    }
  }
  return mesh;
}

Point circumcenter(const Point& a, const Point& b, const Point& c) {
  double ax = a[0].to_double(), ay = a[1].to_double();
  double bx = b[0].to_double(), by = b[1].to_double();
  double cx = c[0].to_double(), cy = c[1].to_double();
  double d = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by));
  double ux = ((ax * ax + ay * ay) * (by - cy) + (bx * bx + by * by) * (cy - ay) +
               (cx * cx + cy * cy) * (ay - by)) /
              d;
  double uy = ((ax * ax + ay * ay) * (cx - bx) + (bx * bx + by * by) * (ax - cx) +
               (cx * cx + cy * cy) * (bx - ax)) /
              d;
  return pt2(ux, uy);
}

bool is_acute(const Point& a, const Point& b, const Point& c) {
  auto dot_at = [&](const Point& o, const Point& p, const Point& q) {
    return vec_dot(vec_sub(p, o), vec_sub(q, o)).to_double();
  };
  return dot_at(a, b, c) > 1e-12 && dot_at(b, a, c) > 1e-12 &&
         dot_at(c, a, b) > 1e-12;
}

MeshPair build_pair(const TriMesh& mesh, double skew_deg, bool self_dual) {
  MeshPair mp;
  mp.primal.n = mp.dual.n = 2;
  mp.primal.k = mp.dual.k = 1;
  mp.primal.vertices = mesh.verts;

  // Edge -> adjacent triangles.
  std::map<std::pair<size_t, size_t>, std::vector<size_t>> edge_tris;
  for (size_t t = 0; t < mesh.tris.size(); ++t) {
    const auto& tri = mesh.tris[t];
    for (int e = 0; e < 3; ++e) {
      size_t u = tri[static_cast<size_t>(e)];
      size_t v = tri[static_cast<size_t>((e + 1) % 3)];
      if (u > v) std::swap(u, v);
      edge_tris[{u, v}].push_back(t);
    }
  }
  std::vector<Point> ccs(mesh.tris.size());
  std::vector<bool> acute(mesh.tris.size());
  for (size_t t = 0; t < mesh.tris.size(); ++t) {
    const auto& tri = mesh.tris[t];
    ccs[t] = circumcenter(mesh.verts[tri[0]], mesh.verts[tri[1]],
                          mesh.verts[tri[2]]);
    acute[t] = is_acute(mesh.verts[tri[0]], mesh.verts[tri[1]],
                        mesh.verts[tri[2]]);
  }
  double theta = skew_deg * 3.14159265358979323846 / 180.0;
  for (const auto& [edge, tris] : edge_tris) {
    if (tris.size() != 2) continue;
    if (!self_dual && (!acute[tris[0]] || !acute[tris[1]])) continue;
    const Point& pa = mesh.verts[edge.first];
    const Point& pb = mesh.verts[edge.second];
    Vec pd = vec_sub(pb, pa);
    double plen = vec_norm(pd);
    Point d0, d1;
    if (self_dual) {
      // Rotate the edge by 90 degrees about its midpoint.
      Point mid = vec_scale(Scalar::fp(0.5), vec_add(pa, pb));
      Vec half = vec_scale(Scalar::fp(0.5), pd);
      Vec rot{-half[1], half[0]};
      d0 = vec_sub(mid, rot);
      d1 = vec_add(mid, rot);
    } else {
      d0 = ccs[tris[0]];
      d1 = ccs[tris[1]];
      if (skew_deg != 0.0) {
        Point mid = vec_scale(Scalar::fp(0.5), vec_add(d0, d1));
        Vec half = vec_sub(d1, mid);
        double ct = std::cos(theta), st = std::sin(theta);
        Vec rot{Scalar::fp(ct * half[0].to_double() - st * half[1].to_double()),
                Scalar::fp(st * half[0].to_double() + ct * half[1].to_double())};
        d0 = vec_sub(mid, rot);
        d1 = vec_add(mid, rot);
      }
    }
    Vec dd = vec_sub(d1, d0);
    double dlen = vec_norm(dd);
    if (dlen < 1e-12) continue;
    // Orient the dual along perp of the primal direction (ccw rotation).
    double cross2 = pd[0].to_double() * dd[1].to_double() -
                    pd[1].to_double() * dd[0].to_double();
    if (cross2 < 0) std::swap(d0, d1);

    Simplex sp;
    sp.vertices = {edge.first, edge.second};
    sp.coeff = Scalar(1);
    size_t pid = mp.primal.simplices.size();
    mp.primal.simplices.push_back(sp);

    Simplex sd;
    sd.vertices = {mp.dual.vertices.size(), mp.dual.vertices.size() + 1};
    mp.dual.vertices.push_back(d0);
    mp.dual.vertices.push_back(d1);
    // Measure-normalized dual: carry the primal measure.
    sd.coeff = Scalar::fp(plen / dlen);
    size_t did = mp.dual.simplices.size();
    mp.dual.simplices.push_back(sd);
    mp.bijection.push_back({pid, did});
  }
  return mp;
}

}  // namespace

MeshPair structured_hodge_pair(int level, double distortion) {
  int m = 2 << level;  // 4, 8, 16, ... rows
  return build_pair(strip_mesh(m, distortion), 0.0, false);
}

MeshPair skew_hodge_pair(int level, double angle_deg) {
  int m = 2 << level;
  return build_pair(strip_mesh(m, 0.0), angle_deg, false);
}

MeshPair self_dual_pair(int level) {
  int m = 2 << level;
  return build_pair(strip_mesh(m, 0.0), 0.0, true);
}

}  // namespace chainlets
