#include "chainlets/norms.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <queue>
#include <random>
#include <stdexcept>

namespace chainlets {

namespace {

double point_dist(const Point& a, const Point& b) {
  return vec_norm(vec_sub(a, b));
}

bool lex_negative(const Vec& v) {
  for (const auto& x : v) {
    if (x.is_zero()) continue;
    return x.is_negative();
  }
  return false;
}

}  // namespace

Chain DecompositionPart::chain() const {
  Chain c = difference_chain(dirs, base, payload);
  return coeff * c;
}

double DecompositionPart::cost() const {
  double c = std::fabs(coeff.to_double()) * mass(payload).to_double();
  for (const auto& u : dirs) c *= vec_norm(u);
  return c;
}

Chain Decomposition::reconstruct() const {
  Chain c(n);
  for (const auto& part : parts) c = c + part.chain();
  return c;
}

double Decomposition::cost() const {
  double s = 0.0;
  for (const auto& part : parts) s += part.cost();
  return s;
}

// ---------------------------------------------------------------------------
// Transport matcher: min-cost matching between opposite-sign masses with a
// unit trash cost per unmatched unit on either side (so matches farther than
// distance 2 never pay).  Costs run in doubles, flow amounts stay exact.
// ---------------------------------------------------------------------------
namespace {

struct TransNode {
  Point at;
  Scalar mass;  // positive
};

struct TransFlow {
  size_t pos;
  size_t neg;
  Scalar amount;
};

struct TransportOutcome {
  std::vector<TransFlow> flows;
  std::vector<Scalar> pos_left;
  std::vector<Scalar> neg_left;
};

constexpr size_t kCompleteEdgeLimit = 20000;  // pos*neg pairs
constexpr size_t kExactComponentLimit = 1200;  // nodes per exact solve

// Candidate edges (pos index, neg index, dist).
struct CandEdge {
  size_t p;
  size_t q;
  double d;
};

std::vector<CandEdge> candidate_edges(const std::vector<TransNode>& pos,
                                      const std::vector<TransNode>& neg) {
  std::vector<CandEdge> edges;
  if (pos.empty() || neg.empty()) return edges;
  const size_t np = pos.size(), nq = neg.size();
  if (np * nq <= kCompleteEdgeLimit) {
    edges.reserve(np * nq);
    for (size_t i = 0; i < np; ++i)
      for (size_t j = 0; j < nq; ++j)
        edges.push_back({i, j, point_dist(pos[i].at, neg[j].at)});
    return edges;
  }
  // Grid hash over negative nodes; per positive node take nearby candidates.
  const int dim = static_cast<int>(pos[0].at.size());
  std::vector<double> lo(static_cast<size_t>(dim),
                         std::numeric_limits<double>::infinity());
  std::vector<double> hi(static_cast<size_t>(dim),
                         -std::numeric_limits<double>::infinity());
  for (const auto& node : neg)
    for (int d = 0; d < dim; ++d) {
      double v = node.at[static_cast<size_t>(d)].to_double();
      lo[static_cast<size_t>(d)] = std::min(lo[static_cast<size_t>(d)], v);
      hi[static_cast<size_t>(d)] = std::max(hi[static_cast<size_t>(d)], v);
    }
  double extent = 0.0;
  for (int d = 0; d < dim; ++d)
    extent = std::max(extent, hi[static_cast<size_t>(d)] - lo[static_cast<size_t>(d)]);
  double side =
      std::max(extent / std::max(1.0, std::floor(std::pow(
                            static_cast<double>(nq), 1.0 / dim))),
               1e-12);
  auto cell_of = [&](const Point& x) {
    std::vector<long> c(static_cast<size_t>(dim));
    for (int d = 0; d < dim; ++d)
      c[static_cast<size_t>(d)] = static_cast<long>(std::floor(
          (x[static_cast<size_t>(d)].to_double() - lo[static_cast<size_t>(d)]) /
          side));
    return c;
  };
  std::map<std::vector<long>, std::vector<size_t>> grid;
  for (size_t j = 0; j < nq; ++j) grid[cell_of(neg[j].at)].push_back(j);

  const size_t want = 8;
  const long max_ring = static_cast<long>(std::ceil(2.0 / side)) + 1;
  for (size_t i = 0; i < np; ++i) {
    auto base = cell_of(pos[i].at);
    std::vector<std::pair<double, size_t>> found;
    for (long ring = 0; ring <= max_ring; ++ring) {
      // Enumerate cells at Chebyshev distance == ring.
      std::vector<long> off(static_cast<size_t>(dim), -ring);
      while (true) {
        long cheb = 0;
        for (long o : off) cheb = std::max(cheb, std::labs(o));
        if (cheb == ring) {
          std::vector<long> cell(base);
          for (int d = 0; d < dim; ++d) cell[static_cast<size_t>(d)] += off[static_cast<size_t>(d)];
          auto it = grid.find(cell);
          if (it != grid.end())
            for (size_t j : it->second)
              found.push_back({point_dist(pos[i].at, neg[j].at), j});
        }
        int d = 0;
        while (d < dim) {
          if (++off[static_cast<size_t>(d)] <= ring) break;
          off[static_cast<size_t>(d)] = -ring;
          ++d;
        }
        if (d == dim) break;
      }
      if (found.size() >= want && ring >= 1) break;
    }
    std::sort(found.begin(), found.end());
    size_t take = std::min(found.size(), want);
    for (size_t t = 0; t < take; ++t)
      edges.push_back({i, found[t].second, found[t].first});
  }
  return edges;
}

struct UnionFind {
  std::vector<size_t> parent;
  explicit UnionFind(size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), size_t{0});
  }
  size_t find(size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(size_t a, size_t b) { parent[find(a)] = find(b); }
};

// Successive-shortest-path min-cost flow with double costs and exact
// capacities; small graphs only.
class MinCostFlow {
 public:
  explicit MinCostFlow(size_t vertices) : adj_(vertices) {}

  struct Edge {
    size_t to;
    size_t rev;
    Scalar cap;
    Scalar flow;
    double cost;
  };

  size_t add_edge(size_t u, size_t v, const Scalar& cap, double cost) {
    adj_[u].push_back(Edge{v, adj_[v].size(), cap, Scalar(), cost});
    adj_[v].push_back(Edge{u, adj_[u].size() - 1, Scalar(), Scalar(), -cost});
    return adj_[u].size() - 1;
  }

  const Edge& edge(size_t u, size_t idx) const { return adj_[u][idx]; }

  // Pushes flow until the sink is unreachable; all-positive costs.
  void run(size_t s, size_t t) {
    const size_t n = adj_.size();
    std::vector<double> pot(n, 0.0);
    while (true) {
      std::vector<double> dist(n, std::numeric_limits<double>::infinity());
      std::vector<std::pair<size_t, size_t>> prev(n, {SIZE_MAX, SIZE_MAX});
      dist[s] = 0.0;
      using QI = std::pair<double, size_t>;
      std::priority_queue<QI, std::vector<QI>, std::greater<>> heap;
      heap.push({0.0, s});
      while (!heap.empty()) {
        auto [d, u] = heap.top();
        heap.pop();
        if (d > dist[u] + 1e-15) continue;
        for (size_t e = 0; e < adj_[u].size(); ++e) {
          const Edge& ed = adj_[u][e];
          Scalar residual = ed.cap - ed.flow;
          if (residual.is_zero() || residual.is_negative()) continue;
          double rc = std::max(0.0, ed.cost + pot[u] - pot[ed.to]);
          if (dist[u] + rc + 1e-15 < dist[ed.to]) {
            dist[ed.to] = dist[u] + rc;
            prev[ed.to] = {u, e};
            heap.push({dist[ed.to], ed.to});
          }
        }
      }
      if (!std::isfinite(dist[t])) break;
      for (size_t v = 0; v < n; ++v)
        if (std::isfinite(dist[v])) pot[v] += dist[v];
      // Bottleneck along the path, exactly.
      Scalar push;
      bool first = true;
      for (size_t v = t; v != s;) {
        auto [u, e] = prev[v];
        const Edge& ed = adj_[u][e];
        Scalar residual = ed.cap - ed.flow;
        if (first || residual < push) push = residual;
        first = false;
        v = u;
      }
      if (push.is_zero()) break;
      for (size_t v = t; v != s;) {
        auto [u, e] = prev[v];
        Edge& ed = adj_[u][e];
        ed.flow += push;
        adj_[ed.to][ed.rev].flow -= push;
        v = u;
      }
    }
  }

 private:
  std::vector<std::vector<Edge>> adj_;
};

// Exact component solve: balanced transportation with trash nodes.
void solve_component_exact(const std::vector<TransNode>& pos,
                           const std::vector<TransNode>& neg,
                           const std::vector<size_t>& cpos,
                           const std::vector<size_t>& cneg,
                           const std::vector<CandEdge>& edges,
                           TransportOutcome& out) {
  const size_t np = cpos.size(), nq = cneg.size();
  // vertices: 0 src, 1 snk, 2..2+np-1 pos, 2+np..2+np+nq-1 neg, TP, TN
  const size_t v_pos = 2, v_neg = 2 + np, v_tp = 2 + np + nq, v_tn = v_tp + 1;
  MinCostFlow mcf(v_tn + 1);
  Scalar total_pos, total_neg;
  std::map<size_t, size_t> pos_slot, neg_slot;
  for (size_t i = 0; i < np; ++i) {
    pos_slot[cpos[i]] = i;
    total_pos += pos[cpos[i]].mass;
  }
  for (size_t j = 0; j < nq; ++j) {
    neg_slot[cneg[j]] = j;
    total_neg += neg[cneg[j]].mass;
  }
  for (size_t i = 0; i < np; ++i)
    mcf.add_edge(0, v_pos + i, pos[cpos[i]].mass, 0.0);
  mcf.add_edge(0, v_tn, total_neg, 0.0);
  for (size_t j = 0; j < nq; ++j)
    mcf.add_edge(v_neg + j, 1, neg[cneg[j]].mass, 0.0);
  mcf.add_edge(v_tp, 1, total_pos, 0.0);
  // Remember the ship edges to read the flows back.
  std::vector<std::tuple<size_t, size_t, size_t, size_t>> ship;  // u, idx, p, q
  for (const auto& e : edges) {
    auto ip = pos_slot.find(e.p);
    if (ip == pos_slot.end()) continue;
    size_t u = v_pos + ip->second;
    size_t idx = mcf.add_edge(u, v_neg + neg_slot[e.q], pos[e.p].mass, e.d);
    ship.push_back({u, idx, e.p, e.q});
  }
  for (size_t i = 0; i < np; ++i)
    mcf.add_edge(v_pos + i, v_tp, pos[cpos[i]].mass, 1.0);
  for (size_t j = 0; j < nq; ++j)
    mcf.add_edge(v_tn, v_neg + j, neg[cneg[j]].mass, 1.0);
  mcf.add_edge(v_tn, v_tp, total_neg, 0.0);
  mcf.run(0, 1);
  for (const auto& [u, idx, p, q] : ship) {
    const auto& ed = mcf.edge(u, idx);
    if (ed.flow.is_zero() || ed.flow.is_negative()) continue;
    out.flows.push_back({p, q, ed.flow});
    out.pos_left[p] -= ed.flow;
    out.neg_left[q] -= ed.flow;
  }
}

void solve_component_greedy(const std::vector<TransNode>& pos,
                            const std::vector<TransNode>& neg,
                            std::vector<CandEdge> edges,
                            TransportOutcome& out) {
  (void)pos;
  (void)neg;
  std::sort(edges.begin(), edges.end(),
            [](const CandEdge& a, const CandEdge& b) { return a.d < b.d; });
  for (const auto& e : edges) {
    if (e.d >= 2.0) break;
    Scalar& sp = out.pos_left[e.p];
    Scalar& sq = out.neg_left[e.q];
    if (sp.is_zero() || sq.is_zero()) continue;
    Scalar amount = sp < sq ? sp : sq;
    out.flows.push_back({e.p, e.q, amount});
    sp -= amount;
    sq -= amount;
  }
}

TransportOutcome solve_transport(const std::vector<TransNode>& pos,
                                 const std::vector<TransNode>& neg) {
  TransportOutcome out;
  out.pos_left.reserve(pos.size());
  out.neg_left.reserve(neg.size());
  for (const auto& node : pos) out.pos_left.push_back(node.mass);
  for (const auto& node : neg) out.neg_left.push_back(node.mass);
  if (pos.empty() || neg.empty()) return out;

  auto edges = candidate_edges(pos, neg);
  // Components over candidate edges: node ids pos: 0..np-1, neg: np..np+nq-1
  UnionFind uf(pos.size() + neg.size());
  for (const auto& e : edges) uf.unite(e.p, pos.size() + e.q);
  std::map<size_t, std::vector<size_t>> comp_pos, comp_neg;
  for (size_t i = 0; i < pos.size(); ++i) comp_pos[uf.find(i)].push_back(i);
  for (size_t j = 0; j < neg.size(); ++j)
    comp_neg[uf.find(pos.size() + j)].push_back(j);
  std::map<size_t, std::vector<CandEdge>> comp_edges;
  for (const auto& e : edges) comp_edges[uf.find(e.p)].push_back(e);

  for (const auto& [root, ce] : comp_edges) {
    const auto& cp = comp_pos[root];
    const auto& cq = comp_neg[root];
    if (cp.empty() || cq.empty()) continue;
    if (cp.size() + cq.size() <= kExactComponentLimit) {
      solve_component_exact(pos, neg, cp, cq, ce, out);
    } else {
      solve_component_greedy(pos, neg, ce, out);
    }
  }
  return out;
}

// A difference part under construction during staging.
struct StagePart {
  Scalar coeff;  // signed
  Point base;
  std::vector<Vec> dirs;
};

void canonicalize_part(StagePart& part) {
  for (auto& d : part.dirs) {
    if (!lex_negative(d)) continue;
    part.base = vec_add(part.base, d);
    d = vec_scale(Scalar(-1), d);
    part.coeff = -part.coeff;
  }
  std::sort(part.dirs.begin(), part.dirs.end(),
            [](const Vec& a, const Vec& b) { return a < b; });
}

double dirs_norm_product(const std::vector<Vec>& dirs) {
  double s = 1.0;
  for (const auto& d : dirs) s *= vec_norm(d);
  return s;
}

// One nesting stage: match opposite-sign parts with identical canonical
// direction lists; matched pairs become parts of one higher order.
std::vector<StagePart> nest_stage(std::vector<StagePart> parts) {
  std::map<std::vector<Vec>, std::vector<StagePart>> groups;
  for (auto& part : parts) {
    canonicalize_part(part);
    groups[part.dirs].push_back(part);
  }
  std::vector<StagePart> out;
  for (auto& [dirs, group] : groups) {
    std::vector<TransNode> pos, neg;
    for (const auto& part : group) {
      if (part.coeff.is_negative())
        neg.push_back({part.base, -part.coeff});
      else
        pos.push_back({part.base, part.coeff});
    }
    auto t = solve_transport(pos, neg);
    for (const auto& f : t.flows) {
      StagePart np;
      np.coeff = f.amount;
      np.base = neg[f.neg].at;
      np.dirs = dirs;
      np.dirs.push_back(vec_sub(pos[f.pos].at, neg[f.neg].at));
      out.push_back(std::move(np));
    }
    for (size_t i = 0; i < pos.size(); ++i)
      if (!t.pos_left[i].is_zero())
        out.push_back({t.pos_left[i], pos[i].at, dirs});
    for (size_t j = 0; j < neg.size(); ++j)
      if (!t.neg_left[j].is_zero())
        out.push_back({-t.neg_left[j], neg[j].at, dirs});
  }
  return out;
}

}  // namespace

Decomposition norm_upper_bound(const Chain& p, int r) {
  if (p.max_order() > 0)
    throw std::invalid_argument("norm_upper_bound: requires an order-0 chain");
  Decomposition dec;
  dec.n = p.n();
  // Split into independent per-basis-direction problems.
  std::map<MultiIndex, std::map<Point, Scalar>> weights;
  for (const auto& [at, payload] : p.support())
    for (const auto& [key, c] : payload.terms()) {
      auto& w = weights[key.second][at];
      w += c;
    }
  for (auto& [mi, wmap] : weights) {
    KVector unit = KVector::basis(p.n(), mi);
    std::vector<StagePart> parts;
    for (const auto& [at, c] : wmap) {
      if (c.is_zero()) continue;
      parts.push_back({c, at, {}});
    }
    for (int stage = 1; stage <= r; ++stage) {
      // Only parts of order stage-1 participate; others ride along.
      std::vector<StagePart> active, passive;
      for (auto& part : parts) {
        if (static_cast<int>(part.dirs.size()) == stage - 1)
          active.push_back(std::move(part));
        else
          passive.push_back(std::move(part));
      }
      parts = nest_stage(std::move(active));
      for (auto& part : passive) parts.push_back(std::move(part));
    }
    for (auto& part : parts) {
      DecompositionPart dp;
      dp.coeff = part.coeff;
      dp.base = part.base;
      dp.dirs = part.dirs;
      dp.payload = unit;
      dec.parts.push_back(std::move(dp));
    }
  }
  return dec;
}

// ---------------------------------------------------------------------------
// Brute-force oracle: exhaustive recursion over the same decomposition class.
// ---------------------------------------------------------------------------
namespace {

struct EnumNode {
  Point at;
  Scalar mass;
};

// Minimum of sum(flow * dist) + trash over all sequential ship/trash choices.
double enum_min_cost(std::vector<EnumNode>& pos, std::vector<EnumNode>& neg);

double enum_min_cost_impl(std::vector<EnumNode>& pos, std::vector<EnumNode>& neg) {
  size_t i = SIZE_MAX;
  for (size_t t = 0; t < pos.size(); ++t)
    if (!pos[t].mass.is_zero()) {
      i = t;
      break;
    }
  if (i == SIZE_MAX) {
    double trash = 0.0;
    for (const auto& node : neg) trash += node.mass.to_double();
    return trash;
  }
  double best = std::numeric_limits<double>::infinity();
  // Trash the remaining supply of node i.
  {
    Scalar saved = pos[i].mass;
    pos[i].mass = Scalar();
    best = std::min(best, saved.to_double() + enum_min_cost_impl(pos, neg));
    pos[i].mass = saved;
  }
  for (size_t j = 0; j < neg.size(); ++j) {
    if (neg[j].mass.is_zero()) continue;
    Scalar amount = pos[i].mass < neg[j].mass ? pos[i].mass : neg[j].mass;
    pos[i].mass -= amount;
    neg[j].mass -= amount;
    double c = amount.to_double() * point_dist(pos[i].at, neg[j].at);
    best = std::min(best, c + enum_min_cost_impl(pos, neg));
    pos[i].mass += amount;
    neg[j].mass += amount;
  }
  return best;
}

double enum_min_cost(std::vector<EnumNode>& pos, std::vector<EnumNode>& neg) {
  return enum_min_cost_impl(pos, neg);
}

struct EnumFlow {
  size_t pos;
  size_t neg;
  Scalar amount;
};

// Enumerates all stage-1 flow patterns; the leaf callback gets the flows and
// the total trashed mass (both sides).
void enum_flows(std::vector<EnumNode>& pos, std::vector<EnumNode>& neg,
                std::vector<EnumFlow>& flows, double trashed,
                const std::function<void(const std::vector<EnumFlow>&, double)>& leaf) {
  size_t i = SIZE_MAX;
  for (size_t t = 0; t < pos.size(); ++t)
    if (!pos[t].mass.is_zero()) {
      i = t;
      break;
    }
  if (i == SIZE_MAX) {
    double rest = trashed;
    for (const auto& node : neg) rest += node.mass.to_double();
    leaf(flows, rest);
    return;
  }
  {
    Scalar saved = pos[i].mass;
    pos[i].mass = Scalar();
    enum_flows(pos, neg, flows, trashed + saved.to_double(), leaf);
    pos[i].mass = saved;
  }
  for (size_t j = 0; j < neg.size(); ++j) {
    if (neg[j].mass.is_zero()) continue;
    Scalar amount = pos[i].mass < neg[j].mass ? pos[i].mass : neg[j].mass;
    pos[i].mass -= amount;
    neg[j].mass -= amount;
    flows.push_back({i, j, amount});
    enum_flows(pos, neg, flows, trashed, leaf);
    flows.pop_back();
    pos[i].mass += amount;
    neg[j].mass += amount;
  }
}

double brute_direction(const std::map<Point, Scalar>& wmap, int r) {
  std::vector<EnumNode> pos, neg;
  double mass0 = 0.0;
  for (const auto& [at, c] : wmap) {
    if (c.is_zero()) continue;
    mass0 += c.abs().to_double();
    if (c.is_negative())
      neg.push_back({at, -c});
    else
      pos.push_back({at, c});
  }
  if (r == 0) return mass0;
  if (r == 1) return enum_min_cost(pos, neg);

  // r == 2: enumerate stage-1 flows, then optimally nest each leaf's parts.
  double best = std::numeric_limits<double>::infinity();
  std::vector<EnumFlow> flows;
  auto leaf = [&](const std::vector<EnumFlow>& fl, double trash1) {
    std::vector<StagePart> parts;
    for (const auto& f : fl) {
      StagePart part;
      part.coeff = f.amount;
      part.base = neg[f.neg].at;
      part.dirs = {vec_sub(pos[f.pos].at, neg[f.neg].at)};
      parts.push_back(std::move(part));
    }
    std::map<std::vector<Vec>, std::vector<StagePart>> groups;
    for (auto& part : parts) {
      canonicalize_part(part);
      groups[part.dirs].push_back(part);
    }
    double total = trash1;
    for (auto& [dirs, group] : groups) {
      double scale = dirs_norm_product(dirs);
      std::vector<EnumNode> p2, n2;
      for (const auto& part : group) {
        if (part.coeff.is_negative())
          n2.push_back({part.base, -part.coeff});
        else
          p2.push_back({part.base, part.coeff});
      }
      total += scale * enum_min_cost(p2, n2);
    }
    best = std::min(best, total);
  };
  enum_flows(pos, neg, flows, 0.0, leaf);
  return best;
}

}  // namespace

double brute_force_norm(const Chain& p, int r) {
  if (p.max_order() > 0)
    throw std::invalid_argument("brute_force_norm: requires an order-0 chain");
  if (r < 0 || r > 2)
    throw std::invalid_argument("brute_force_norm: r must be 0, 1, or 2");
  if (p.pole_count() > kBruteForcePoleLimit)
    throw std::invalid_argument("brute_force_norm: instance too large");
  std::map<MultiIndex, std::map<Point, Scalar>> weights;
  for (const auto& [at, payload] : p.support())
    for (const auto& [key, c] : payload.terms()) weights[key.second][at] += c;
  double total = 0.0;
  for (const auto& [mi, wmap] : weights) total += brute_direction(wmap, r);
  return total;
}

// ---------------------------------------------------------------------------
// Dual lower bounds.
// ---------------------------------------------------------------------------
namespace {

std::vector<MultiIndex> payload_indices(const Chain& p) {
  std::set<MultiIndex> s;
  for (const auto& [at, payload] : p.support())
    for (const auto& [key, c] : payload.terms()) s.insert(key.second);
  return {s.begin(), s.end()};
}

}  // namespace

std::pair<double, Form> norm_lower_bound(const Chain& p, int r,
                                         const DualFamilySpec& fam) {
  double best = 0.0;
  Form witness(p.n(), 0);
  if (p.is_zero()) return {0.0, witness};
  auto indices = payload_indices(p);

  // Constant forms: per index and the signed combination.
  {
    std::map<MultiIndex, Scalar> vec0_by_index;
    for (const auto& [at, payload] : p.support())
      for (const auto& [key, c] : payload.terms())
        if (key.first.order() == 0) vec0_by_index[key.second] += c;
    // Group by grade for the signed combination.
    std::map<int, Form> combos;
    std::map<int, Scalar> combo_vals;
    for (const auto& [mi, v] : vec0_by_index) {
      if (v.is_zero()) continue;
      Scalar sign = v.is_negative() ? Scalar(-1) : Scalar(1);
      auto it = combos.find(mi.grade());
      if (it == combos.end())
        it = combos.emplace(mi.grade(), Form(p.n(), mi.grade())).first;
      it->second.add_term(mi, CoeffFn::constant(sign));
      combo_vals[mi.grade()] += sign * v;
    }
    for (const auto& [grade, form] : combos) {
      double v = combo_vals[grade].abs().to_double();
      if (v > best) {
        best = v;
        witness = form;
      }
    }
  }

  // Sine family: directions from axes and pole-pair displacements.
  std::vector<Vec> dirs;
  if (fam.axis_directions)
    for (int i = 1; i <= p.n(); ++i) dirs.push_back(basis_vec(p.n(), i));
  if (fam.fit_displacements) {
    std::vector<Point> pts;
    for (const auto& [at, payload] : p.support()) pts.push_back(at);
    for (size_t a = 0; a < pts.size() && dirs.size() < fam.max_directions; ++a)
      for (size_t b = a + 1; b < pts.size() && dirs.size() < fam.max_directions;
           ++b) {
        Vec d = vec_sub(pts[a], pts[b]);
        double norm = vec_norm(d);
        if (norm < 1e-12) continue;
        dirs.push_back(vec_scale(Scalar::fp(1.0 / norm), d));
      }
  }
  for (const auto& dir : dirs) {
    for (double freq : fam.frequencies) {
      AffineExpr arg;
      arg.c0 = Scalar();
      arg.lin = vec_scale(Scalar::fp(freq), dir);
      double denom = std::max(1.0, std::pow(freq, r));
      for (const auto& mi : indices) {
        Form ws = Form::basis(p.n(), mi, CoeffFn::sin(arg));
        Form wc = Form::basis(p.n(), mi, CoeffFn::cos(arg));
        double c = ws.eval(p).to_double();
        double s = wc.eval(p).to_double();
        double amp = std::hypot(c, s);
        double value = amp / denom * (1.0 - 1e-12);
        if (value > best) {
          best = value;
          // sin(arg + phi) with the optimal phase.
          AffineExpr shifted = arg;
          shifted.c0 = Scalar::fp(std::atan2(s, c));
          witness = Form::basis(p.n(), mi, CoeffFn::sin(shifted));
        }
      }
    }
  }
  return {best, witness};
}

NormBracket norm_bracket(const Chain& p, int r, const DualFamilySpec& fam) {
  NormBracket b;
  b.r = r;
  b.upper_witness = norm_upper_bound(p, r);
  b.upper = b.upper_witness.cost();
  auto [lo, w] = norm_lower_bound(p, r, fam);
  b.lower = lo;
  b.lower_witness = w;
  if (b.lower > b.upper + 1e-9)
    throw std::logic_error("norm_bracket: lower bound exceeded upper bound");
  return b;
}

BoundCheck check_bound(const Chain& lhs, const Chain& rhs, double factor,
                       int r_lhs, int r_rhs, const DualFamilySpec& fam) {
  BoundCheck out;
  out.lhs_lower = norm_lower_bound(lhs, r_lhs, fam).first;
  out.rhs_upper = norm_upper_bound(rhs, r_rhs).cost();
  out.bound = factor * out.rhs_upper;
  out.ok = out.lhs_lower <= out.bound + 1e-9;
  return out;
}

double mapping_norm(const SmoothMap& f, int r, const MapSampleSpec& spec) {
  const int n = f.domain_dim();
  std::vector<Point> points = spec.extra_points;
  {
    int per = std::max(spec.points_per_axis, 1);
    std::vector<int> counter(static_cast<size_t>(n), 0);
    while (true) {
      Point x(static_cast<size_t>(n));
      for (int i = 0; i < n; ++i) {
        double lo = i < static_cast<int>(spec.lo.size())
                        ? spec.lo[static_cast<size_t>(i)].to_double()
                        : -1.0;
        double hi = i < static_cast<int>(spec.hi.size())
                        ? spec.hi[static_cast<size_t>(i)].to_double()
                        : 1.0;
        double t = per == 1
                       ? 0.5
                       : static_cast<double>(counter[static_cast<size_t>(i)]) /
                             (per - 1);
        x[static_cast<size_t>(i)] = Scalar::fp(lo + t * (hi - lo));
      }
      points.push_back(x);
      int carry = 0;
      while (carry < n) {
        if (++counter[static_cast<size_t>(carry)] < per) break;
        counter[static_cast<size_t>(carry)] = 0;
        ++carry;
      }
      if (carry == n) break;
    }
  }
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<Vec> dirs;
  for (int i = 1; i <= n; ++i) dirs.push_back(basis_vec(n, i));
  for (int d = 0; d < spec.random_directions; ++d) {
    Vec u(static_cast<size_t>(n));
    double norm = 0.0;
    while (norm < 1e-9) {
      for (int i = 0; i < n; ++i) u[static_cast<size_t>(i)] = Scalar::fp(unit(rng));
      norm = vec_norm(u);
    }
    dirs.push_back(vec_scale(Scalar::fp(1.0 / norm), u));
  }
  // All multi-indices of the requested grades.
  std::vector<MultiIndex> alphas;
  for (int k : spec.grades) {
    std::vector<int> comb(static_cast<size_t>(k));
    std::function<void(int, int)> rec = [&](int start, int depth) {
      if (depth == k) {
        alphas.push_back(MultiIndex(comb));
        return;
      }
      for (int i = start; i <= n; ++i) {
        comb[static_cast<size_t>(depth)] = i;
        rec(i + 1, depth + 1);
      }
    };
    if (k >= 0 && k <= n) rec(1, 0);
  }

  double best = 0.0;
  for (const auto& x : points) {
    for (const auto& mi : alphas) {
      KVector a = KVector::basis(n, mi);
      for (int j = 0; j <= r; ++j) {
        if (j == 0) {
          Chain pushed = f.pushforward(monopole(x, a));
          best = std::max(best, chain_mass(pushed).to_double());
          continue;
        }
        // Direction tuples with repetition, order-free.
        std::vector<size_t> pick(static_cast<size_t>(j), 0);
        while (true) {
          std::vector<Vec> u;
          for (size_t t = 0; t < pick.size(); ++t) u.push_back(dirs[pick[t]]);
          Chain delta = difference_chain(u, x, a);
          Chain pushed = f.pushforward(delta);
          double upper = norm_upper_bound(pushed, j).cost();
          best = std::max(best, upper);
          size_t t = 0;
          while (t < pick.size()) {
            if (++pick[t] < dirs.size()) break;
            ++t;
          }
          if (t == pick.size()) break;
          for (size_t s = 0; s < t; ++s) pick[s] = pick[t];
        }
      }
    }
  }
  return best;
}

}  // namespace chainlets
