#pragma once

#include <string>
#include <vector>

#include "chainlets/chain.hpp"
#include "chainlets/form.hpp"
#include "chainlets/norms.hpp"

namespace chainlets {

// An oriented k-cell: a corner plus k edge vectors (cube) or a base vertex
// plus k edge vectors (simplex).
struct CellSpec {
  enum class Kind { kCube, kSimplex };
  Kind kind = Kind::kCube;
  Point corner;
  std::vector<Vec> edges;
  int orientation = 1;

  int n() const { return static_cast<int>(corner.size()); }
  int grade() const { return static_cast<int>(edges.size()); }
  // The signed volume k-vector (edges wedged; simplices divide by k!).
  KVector volume_vector() const;
};

CellSpec unit_cube_cell(int n, int k);  // axis-aligned at the origin

// 2^(k*level) poles at subcube midpoints, each carrying the subcube's share
// of the volume k-vector; total mass is conserved across levels.
Chain cube_to_chain(const CellSpec& cube, int level);

// The 2k oriented facets.
std::vector<CellSpec> cube_boundary(const CellSpec& cube);
Chain cells_to_chain(const std::vector<CellSpec>& cells, int level);

struct Simplex {
  std::vector<size_t> vertices;
  Scalar coeff = Scalar(1);
};

struct SimplicialComplex {
  int n = 0;
  int k = 0;
  std::vector<Point> vertices;
  std::vector<Simplex> simplices;

  Point barycenter(const Simplex& s) const;
  KVector volume_vector(const Simplex& s) const;  // includes coeff and 1/k!
  double mesh_size() const;                       // max edge length
  void validate() const;
};

// Barycentric subdivision to the given depth; one pole per subsimplex at its
// barycenter, payloads oriented with the parent.
Chain complex_to_chain(const SimplicialComplex& complex, int level);

// Combinatorial boundary with alternating face signs; shared faces merge.
SimplicialComplex complex_boundary(const SimplicialComplex& complex);

// Grid of 1-direction poles weighted by cell volume and the field components
// at cell midpoints: J_X for X = sum_i phi_i e_i.
Chain vector_field_chain(const std::vector<CoeffFn>& components, const Box& box,
                         int level);

// Riesz k-vector of the form per grid cell, volume weighted.
Chain form_chain(const Form& w, const Box& box, int level);

// One pole per occupied grid cell: (cell center; Vec0 of the part of p in the
// cell); cells are half-open except at the top faces.
Chain bin_chain(const Chain& p, const Box& box, int divisions);

// A primal k-complex and dual (n-k)-complex with a cell bijection.
struct MeshPair {
  SimplicialComplex primal;
  SimplicialComplex dual;
  std::vector<std::pair<size_t, size_t>> bijection;
  void validate() const;
};

struct HodgeRow {
  int level = 0;
  size_t pairs = 0;
  double primal_mesh = 0.0;
  double dual_mesh = 0.0;
  double mass_ratio = 0.0;       // sum M(beta - alpha) / sum M(beta)
  double max_barycenter = 0.0;   // max |p_k - q_{n-k}|
  double bracket_ratio = 0.0;    // upper(|tau - perp sigma|^nat1) / M(tau)
};

struct HodgeReport {
  std::vector<HodgeRow> rows;
  bool mass_decreasing = false;
  bool bracket_decreasing = false;
  bool barycenter_shrinking = false;
  double final_mass_ratio = 0.0;
  double final_bracket_ratio = 0.0;
  std::string verdict;  // "HODGE" or "NOT-HODGE"
  bool is_hodge() const { return verdict == "HODGE"; }
};

HodgeReport hodge_sequence_report(const std::vector<MeshPair>& pairs,
                                  double final_threshold = 0.05);

// Structured acute triangulation of the unit square under a smooth
// distortion, with circumcentric measure-normalized duals over interior
// edges.  Levels double the resolution.
MeshPair structured_hodge_pair(int level, double distortion = 0.03);
// Same primal mesh, dual directions skewed by a fixed angle: not a Hodge
// sequence.
MeshPair skew_hodge_pair(int level, double angle_deg = 20.0);
// Each primal edge paired with its own rotation about its midpoint.
MeshPair self_dual_pair(int level);

}  // namespace chainlets
