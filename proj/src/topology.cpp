#include "torfan/topology.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "torfan/errors.hpp"

namespace torfan::topology {

namespace {

using present::Int;
using present::IntMatrix;

IntMatrix basis_columns(const fan::Fan& f, const std::vector<int>& rays) {
  IntMatrix m(f.dim(), std::vector<Int>(rays.size(), 0));
  for (std::size_t c = 0; c < rays.size(); ++c) {
    for (int r = 0; r < f.dim(); ++r)
      m[r][c] = static_cast<long>(f.rays()[rays[c]].coords[r]);
  }
  return m;
}

bool unimodular(const fan::Fan& f, const std::vector<int>& rays) {
  if (static_cast<int>(rays.size()) != f.dim()) return false;
  Int det = present::determinant(basis_columns(f, rays));
  return det == 1 || det == -1;
}

// Coordinates of v in the unimodular basis B via Cramer's rule.
std::vector<Int> integral_coordinates(const fan::Fan& f, const std::vector<int>& basis,
                                      int ray) {
  const int n = f.dim();
  IntMatrix b = basis_columns(f, basis);
  Int det = present::determinant(b);
  std::vector<Int> coords(n);
  for (int i = 0; i < n; ++i) {
    IntMatrix replaced = b;
    for (int r = 0; r < n; ++r)
      replaced[r][i] = static_cast<long>(f.rays()[ray].coords[r]);
    coords[i] = present::determinant(replaced) / det;  // exact, |det| = 1
  }
  return coords;
}

}  // namespace

bool is_aspherical(const fan::Fan& f) { return fan::is_flag_like(f); }

SubspaceArrangement arrangement(const fan::Fan& f) {
  SubspaceArrangement arr;
  arr.ambient_dim = f.ray_count();
  if (!fan::check_complete(f)) {
    if (!pi1::connectedness(f).connected)
      throw Error("IncompleteFanWithoutBasis",
                  "fan is incomplete and its rays do not span N (x) Z_2");
    arr.completeness_relaxed = true;
  }
  for (const auto& pc : fan::primitive_collections(f)) {
    arr.subspaces.push_back(Subspace{pc, static_cast<int>(pc.size())});
  }
  return arr;
}

bool is_arrangement_k_pi_1(const fan::Fan& f) {
  SubspaceArrangement arr = arrangement(f);
  return std::all_of(arr.subspaces.begin(), arr.subspaces.end(),
                     [](const Subspace& s) { return s.codimension == 2; });
}

ArrangementPi1 pi1_arrangement(const fan::Fan& f) {
  SubspaceArrangement arr = arrangement(f);
  ArrangementPi1 out{racg::graph_from_fan(f), {}, false, 0};
  long long pair_count = 0;
  for (const auto& s : arr.subspaces) {
    if (s.codimension != 2) continue;
    ++pair_count;
    int p = s.zero_coordinates[0];
    int q = s.zero_coordinates[1];
    out.normal_generators.push_back({p, q, p, q});
  }
  out.commutator_is_abelian = racg::commutator_abelian(out.graph);
  if (out.commutator_is_abelian) out.free_abelian_rank = pair_count;
  return out;
}

fan::Fan arrangement_fan(const fan::Fan& f) {
  const int d = f.ray_count();
  std::vector<std::vector<std::int64_t>> rays(d, std::vector<std::int64_t>(d, 0));
  for (int i = 0; i < d; ++i) rays[i][i] = 1;
  std::vector<std::vector<int>> cones;
  for (const auto& c : f.inclusion_maximal_cones()) cones.push_back(c.rays);
  if (cones.empty()) cones.push_back({});
  return fan::make_fan(d, std::move(rays), std::move(cones));
}

QuotientData quotient_data(const fan::Fan& f) {
  const int n = f.dim();
  const int d = f.ray_count();

  pi1::BasisSelection sel = pi1::choose_basis(f);
  std::vector<int> basis = sel.basis_rays;
  if (!unimodular(f, basis)) {
    // Lexicographically first n-subset of rays forming a Z-basis.
    basis.clear();
    std::vector<int> pick(n);
    std::function<bool(int, int)> search = [&](int idx, int from) {
      if (idx == n) {
        std::vector<int> cand(pick.begin(), pick.end());
        if (unimodular(f, cand)) {
          basis = cand;
          return true;
        }
        return false;
      }
      for (int r = from; r < d; ++r) {
        pick[idx] = r;
        if (search(idx + 1, r + 1)) return true;
      }
      return false;
    };
    search(0, 0);
    if (basis.empty())
      throw Error("NoIntegralBasisAmongRays", "no n rays form a Z-basis of the lattice");
    sel.perm_to_original = basis;
    std::vector<bool> used(d, false);
    for (int r : basis) used[r] = true;
    for (int r = 0; r < d; ++r) {
      if (!used[r]) sel.perm_to_original.push_back(r);
    }
  }

  QuotientData out;
  out.perm_to_original = sel.perm_to_original;
  out.g_matrix.assign(n, std::vector<Int>(d, 0));
  for (int pos = 0; pos < d; ++pos) {
    const auto& v = f.rays()[sel.perm_to_original[pos]].coords;
    for (int r = 0; r < n; ++r) out.g_matrix[r][pos] = static_cast<long>(v[r]);
  }
  out.f_matrix.assign(d, std::vector<Int>(d - n, 0));
  for (int col = 0; col < d - n; ++col) {
    int jpos = d - 1 - col;  // permuted position, descending over non-basis rays
    std::vector<Int> coords =
        integral_coordinates(f, basis, sel.perm_to_original[jpos]);
    out.f_matrix[jpos][col] = 1;
    for (int i = 0; i < n; ++i) out.f_matrix[i][col] -= coords[i];
  }
  if (!present::is_zero(present::multiply(out.g_matrix, out.f_matrix)))
    throw Error("ParseError", "quotient data violates g * f = 0");
  return out;
}

bool clique_word_in_bounded_normal_closure(const racg::CommutationGraph& g,
                                           const racg::Word& clique_word,
                                           const racg::Word& relator, int max_factors,
                                           int max_conjugator_len) {
  racg::Word target = racg::reduce(g, clique_word).letters;

  // All reduced conjugates v r v^-1 with |v| <= max_conjugator_len.
  std::set<racg::Word> conjugates;
  std::vector<racg::Word> stack{{}};
  for (int len = 0; len <= max_conjugator_len; ++len) {
    std::vector<racg::Word> next;
    for (const auto& v : stack) {
      racg::Word w = v;
      w.insert(w.end(), relator.begin(), relator.end());
      racg::Word vinv = racg::inverse(v);
      w.insert(w.end(), vinv.begin(), vinv.end());
      conjugates.insert(racg::reduce(g, w).letters);
      if (len < max_conjugator_len) {
        for (int s = 0; s < g.generator_count; ++s) {
          racg::Word longer = v;
          longer.push_back(s);
          next.push_back(std::move(longer));
        }
      }
    }
    stack = std::move(next);
  }

  std::set<racg::Word> products = conjugates;  // products of one factor
  for (int factors = 1; factors <= max_factors; ++factors) {
    if (products.count(target)) return true;
    if (factors == max_factors) break;
    if (factors + 1 < max_factors) {
      std::set<racg::Word> next;
      for (const auto& a : products) {
        for (const auto& c : conjugates) {
          racg::Word w = a;
          w.insert(w.end(), c.begin(), c.end());
          next.insert(racg::reduce(g, w).letters);
        }
      }
      products = std::move(next);
    } else {
      // Last round: target in products * conjugates iff target * c^-1 was
      // already produced.
      for (const auto& c : conjugates) {
        racg::Word w = target;
        racg::Word cinv = racg::inverse(c);
        w.insert(w.end(), cinv.begin(), cinv.end());
        if (products.count(racg::reduce(g, w).letters)) return true;
      }
      return false;
    }
  }
  return products.count(target) != 0;
}

}  // namespace torfan::topology
