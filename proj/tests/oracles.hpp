#pragma once

// Independent reference computations used by the unit and acceptance tests.
// None of these call into the library code they are used to check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "ptutor/logic/formula.hpp"

namespace oracle {

using ptutor::logic::Connective;
using ptutor::logic::Formula;

// ---- formulas --------------------------------------------------------------

/// Truth value under `bits`, where letter L is bit (L - 'A').
inline bool eval(const Formula& f, std::uint32_t bits) {
  switch (f.connective()) {
    case Connective::Atom: return (bits >> (f.letter() - 'A')) & 1u;
    case Connective::Not: return !eval(f.operand(), bits);
    case Connective::And: return eval(f.left(), bits) && eval(f.right(), bits);
    case Connective::Or: return eval(f.left(), bits) || eval(f.right(), bits);
    case Connective::Implies: return !eval(f.left(), bits) || eval(f.right(), bits);
    case Connective::Iff: return eval(f.left(), bits) == eval(f.right(), bits);
  }
  return false;
}

/// Every parenthesis written out; parses back to the same tree under any
/// precedence rules.
inline std::string full_parens(const Formula& f) {
  switch (f.connective()) {
    case Connective::Atom: return std::string(1, f.letter());
    case Connective::Not: return "~(" + full_parens(f.operand()) + ")";
    case Connective::And: return "(" + full_parens(f.left()) + ")&(" + full_parens(f.right()) + ")";
    case Connective::Or: return "(" + full_parens(f.left()) + ")|(" + full_parens(f.right()) + ")";
    case Connective::Implies: return "(" + full_parens(f.left()) + ")->(" + full_parens(f.right()) + ")";
    case Connective::Iff: return "(" + full_parens(f.left()) + ")<->(" + full_parens(f.right()) + ")";
  }
  return {};
}

inline Formula random_formula(std::mt19937_64& rng, int depth, int atoms) {
  if (depth <= 1 || rng() % 4 == 0) return ptutor::logic::Atom(static_cast<char>('A' + rng() % atoms));
  const int sub = depth - 1;
  switch (rng() % 6) {
    case 0: return ptutor::logic::Not(random_formula(rng, sub, atoms));
    case 1: return ptutor::logic::And(random_formula(rng, sub, atoms), random_formula(rng, sub, atoms));
    case 2: return ptutor::logic::Or(random_formula(rng, sub, atoms), random_formula(rng, sub, atoms));
    case 3: return ptutor::logic::Implies(random_formula(rng, sub, atoms), random_formula(rng, sub, atoms));
    case 4: return ptutor::logic::Iff(random_formula(rng, sub, atoms), random_formula(rng, sub, atoms));
    default: return ptutor::logic::Atom(static_cast<char>('A' + rng() % atoms));
  }
}

/// Sources semantically entail the derived statement (all assignments over
/// `atoms` letters).
inline bool entails(const std::vector<Formula>& sources, const Formula& derived, int atoms) {
  for (std::uint32_t bits = 0; bits < (1u << atoms); ++bits) {
    bool all = true;
    for (const auto& s : sources) all = all && eval(s, bits);
    if (all && !eval(derived, bits)) return false;
  }
  return true;
}

inline bool equivalent(const Formula& a, const Formula& b, int atoms) {
  for (std::uint32_t bits = 0; bits < (1u << atoms); ++bits) {
    if (eval(a, bits) != eval(b, bits)) return false;
  }
  return true;
}

// ---- proof graphs ----------------------------------------------------------

/// A node is needed iff deleting it, and cascading the deletion to every node
/// whose justification cites a deleted node, leaves the conclusion unjustified.
/// `cites` maps node id to the ids it cites; `goal` is the conclusion's id.
inline std::set<int> needed_by_deletion(const std::map<int, std::vector<int>>& cites, int goal,
                                        const std::set<int>& all_ids) {
  std::set<int> needed;
  for (int victim : all_ids) {
    std::set<int> gone{victim};
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& [id, srcs] : cites) {
        if (gone.contains(id)) continue;
        for (int s : srcs) {
          if (gone.contains(s)) {
            gone.insert(id);
            changed = true;
            break;
          }
        }
      }
    }
    if (gone.contains(goal)) needed.insert(victim);
  }
  return needed;
}

// ---- value iteration -------------------------------------------------------

/// Exact values on an acyclic graph by recursion over successors.
/// succ[i] lists successor indices; goal[i] marks terminal goals.
inline std::vector<double> finite_horizon_values(const std::vector<std::vector<std::size_t>>& succ,
                                                 const std::vector<bool>& goal, double reward, double cost,
                                                 double discount) {
  const std::size_t n = succ.size();
  std::vector<double> v(n);
  std::vector<int> done(n, 0);
  std::function<double(std::size_t)> solve = [&](std::size_t i) -> double {
    if (done[i]) return v[i];
    double best = -std::numeric_limits<double>::infinity();
    if (goal[i]) {
      best = reward;
    } else {
      for (std::size_t j : succ[i]) {
        const double sv = solve(j);
        if (std::isinf(sv)) continue;
        best = std::max(best, -cost + discount * sv);
      }
    }
    done[i] = 1;
    return v[i] = best;
  };
  for (std::size_t i = 0; i < n; ++i) solve(i);
  return v;
}

// ---- clustering ------------------------------------------------------------

using Points = std::vector<std::vector<double>>;

inline double dist(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

struct NaiveMerge {
  int a;
  int b;
  double height;
};

/// Ward by brute force: at every step recompute every pairwise Ward distance
/// sqrt(2*na*nb/(na+nb)) * |ca - cb| from cluster members.
inline std::vector<NaiveMerge> naive_ward(const Points& x) {
  struct Cl {
    int id;
    std::vector<std::size_t> members;
  };
  std::vector<Cl> live;
  for (std::size_t i = 0; i < x.size(); ++i) live.push_back({static_cast<int>(i), {i}});
  auto centroid = [&](const Cl& c) {
    std::vector<double> m(x[0].size(), 0.0);
    for (auto i : c.members)
      for (std::size_t f = 0; f < m.size(); ++f) m[f] += x[i][f];
    for (auto& v : m) v /= static_cast<double>(c.members.size());
    return m;
  };
  std::vector<NaiveMerge> out;
  int next = static_cast<int>(x.size());
  while (live.size() > 1) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < live.size(); ++i) {
      for (std::size_t j = i + 1; j < live.size(); ++j) {
        const double na = static_cast<double>(live[i].members.size());
        const double nb = static_cast<double>(live[j].members.size());
        const double d = std::sqrt(2 * na * nb / (na + nb)) * dist(centroid(live[i]), centroid(live[j]));
        if (d < best) {
          best = d;
          bi = i;
          bj = j;
        }
      }
    }
    out.push_back({std::min(live[bi].id, live[bj].id), std::max(live[bi].id, live[bj].id), best});
    Cl merged{next++, live[bi].members};
    merged.members.insert(merged.members.end(), live[bj].members.begin(), live[bj].members.end());
    live.erase(live.begin() + static_cast<long>(bj));
    live[bi] = std::move(merged);
  }
  return out;
}

inline double silhouette(const Points& x, const std::vector<int>& lab) {
  const std::size_t n = x.size();
  double total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::map<int, std::pair<double, int>> acc;  // label -> (sum, count)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      acc[lab[j]].first += dist(x[i], x[j]);
      acc[lab[j]].second += 1;
    }
    if (!acc.contains(lab[i])) continue;  // singleton
    const double a = acc[lab[i]].first / acc[lab[i]].second;
    double b = std::numeric_limits<double>::infinity();
    for (const auto& [l, sc] : acc)
      if (l != lab[i]) b = std::min(b, sc.first / sc.second);
    if (std::max(a, b) > 0) total += (b - a) / std::max(a, b);
  }
  return total / static_cast<double>(n);
}

inline double davies_bouldin(const Points& x, const std::vector<int>& lab) {
  std::map<int, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < x.size(); ++i) groups[lab[i]].push_back(i);
  std::map<int, std::vector<double>> cen;
  std::map<int, double> sig;
  for (const auto& [l, m] : groups) {
    std::vector<double> c(x[0].size(), 0.0);
    for (auto i : m)
      for (std::size_t f = 0; f < c.size(); ++f) c[f] += x[i][f] / static_cast<double>(m.size());
    cen[l] = c;
    double s = 0;
    for (auto i : m) s += dist(x[i], c);
    sig[l] = s / static_cast<double>(m.size());
  }
  double total = 0;
  for (const auto& [li, mi] : groups) {
    double worst = 0;
    for (const auto& [lj, mj] : groups)
      if (li != lj) worst = std::max(worst, (sig[li] + sig[lj]) / dist(cen[li], cen[lj]));
    total += worst;
  }
  return total / static_cast<double>(groups.size());
}

/// Scatter via pairwise identities: sum_k (1/2n_k) sum_{i,j in k} |xi-xj|^2.
inline double calinski_harabasz(const Points& x, const std::vector<int>& lab) {
  const std::size_t n = x.size();
  std::map<int, int> count;
  for (int l : lab) ++count[l];
  double total = 0, within = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double d2 = dist(x[i], x[j]) * dist(x[i], x[j]);
      total += d2 / (2.0 * static_cast<double>(n));
      if (lab[i] == lab[j]) within += d2 / (2.0 * count[lab[i]]);
    }
  }
  const double k = static_cast<double>(count.size());
  return ((total - within) / (k - 1)) / (within / (static_cast<double>(n) - k));
}

/// Three Gaussian blobs of `per` points in `dims` dimensions, far apart.
inline Points blobs(std::mt19937_64& rng, int per, int dims, double spread = 0.3) {
  std::normal_distribution<double> noise(0.0, spread);
  const double centers[3][2] = {{0, 0}, {10, 0}, {5, 9}};
  Points out;
  for (int c = 0; c < 3; ++c) {
    for (int i = 0; i < per; ++i) {
      std::vector<double> p(dims);
      for (int f = 0; f < dims; ++f) p[f] = centers[c][f % 2] * (f < 2 ? 1.0 : 0.5) + noise(rng);
      out.push_back(std::move(p));
    }
  }
  return out;
}

}  // namespace oracle
