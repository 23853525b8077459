#include "torfan/pi1.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "torfan/errors.hpp"

namespace torfan::pi1 {

namespace {

using present::Relator;
using present::Syllable;

Gf2Mask mod2_mask(const fan::RayVector& ray) {
  Gf2Mask m = 0;
  for (std::size_t i = 0; i < ray.coords.size(); ++i) {
    m |= static_cast<Gf2Mask>(ray.coords[i] & 1) << i;
  }
  return m;
}

int gf2_rank(std::vector<Gf2Mask> vecs) {
  int rank = 0;
  for (std::size_t bit = 0; bit < 64; ++bit) {
    Gf2Mask probe = Gf2Mask{1} << bit;
    std::size_t pivot = rank;
    while (pivot < vecs.size() && !(vecs[pivot] & probe)) ++pivot;
    if (pivot == vecs.size()) continue;
    std::swap(vecs[rank], vecs[pivot]);
    for (std::size_t i = 0; i < vecs.size(); ++i) {
      if (i != static_cast<std::size_t>(rank) && (vecs[i] & probe)) vecs[i] ^= vecs[rank];
    }
    ++rank;
    if (static_cast<std::size_t>(rank) == vecs.size()) break;
  }
  return rank;
}

void require_dim_cap(const fan::Fan& f) {
  if (f.dim() > 62) throw Error("ParseError", "lattice dimension above the 62-bit cap");
}

std::string bits(Gf2Mask t, int n) {
  std::string s(n, '0');
  for (int i = 0; i < n; ++i) {
    if (t >> i & 1) s[i] = '1';
  }
  return s;
}

// Internal presentation builders share the generator numbering
// (j - j_lo) * 2^n + t for permuted j in [j_lo, d].
struct BuiltPresentation {
  present::Presentation pres;
  int j_lo = 1;  // 1 for full, n+1 for simplified
};

std::vector<std::pair<int, int>> permuted_cone_pairs(const fan::Fan& f,
                                                     const BasisSelection& basis) {
  std::vector<std::pair<int, int>> pairs;
  for (const auto& cone : f.closure()) {
    if (cone.dim() != 2) continue;
    int p = basis.original_to_perm[cone.rays[0]] + 1;
    int q = basis.original_to_perm[cone.rays[1]] + 1;
    if (p > q) std::swap(p, q);
    pairs.emplace_back(p, q);
  }
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

std::vector<Relator> cleanup_relators(std::vector<Relator> raw) {
  std::vector<Relator> out;
  std::set<Relator> seen;
  for (auto& rel : raw) {
    Relator reduced = present::free_reduce_relator(std::move(rel));
    if (reduced.empty()) continue;
    if (seen.insert(present::relator_canonical_key(reduced)).second)
      out.push_back(std::move(reduced));
  }
  return out;
}

BuiltPresentation build_full(const fan::Fan& f, const CharMatrixGF2& m) {
  const int n = m.n;
  const int d = m.d;
  if (n > 16) throw Error("ParseError", "presentation coset count above 2^16");
  const Gf2Mask cosets = Gf2Mask{1} << n;

  auto gen = [&](int j, Gf2Mask t) { return static_cast<int>((j - 1) * cosets + t); };

  std::vector<std::string> names;
  for (int j = 1; j <= d; ++j) {
    for (Gf2Mask t = 0; t < cosets; ++t) names.push_back(generator_name(j, t, n));
  }

  std::vector<Relator> raw;
  // Schreier transversal relators alpha_0(s_1^{t_1} ... s_n^{t_n}).
  for (Gf2Mask t = 0; t < cosets; ++t) {
    Relator rel;
    for (int i = 1; i <= n; ++i) {
      if (!(t >> (i - 1) & 1)) continue;
      Gf2Mask prefix = t & ((Gf2Mask{1} << (i - 1)) - 1);
      rel.push_back({gen(i, prefix), 1});
    }
    raw.push_back(std::move(rel));
  }
  // Rewritten defining relators of W per coset.
  auto pairs = permuted_cone_pairs(f, m.basis);
  for (Gf2Mask t = 0; t < cosets; ++t) {
    for (int j = 1; j <= d; ++j) {
      raw.push_back({{gen(j, t), 1}, {gen(j, t ^ m.rows[j - 1]), 1}});
    }
    for (auto [p, q] : pairs) {
      Gf2Mask ap = m.rows[p - 1];
      Gf2Mask aq = m.rows[q - 1];
      raw.push_back({{gen(p, t), 1},
                     {gen(q, t ^ ap), 1},
                     {gen(p, t ^ ap ^ aq), 1},
                     {gen(q, t ^ aq), 1}});
    }
  }
  return {present::make_presentation(std::move(names), cleanup_relators(std::move(raw))), 1};
}

BuiltPresentation build_simplified(const fan::Fan& f, const CharMatrixGF2& m) {
  const int n = m.n;
  const int d = m.d;
  if (n > 16) throw Error("ParseError", "presentation coset count above 2^16");
  const Gf2Mask cosets = Gf2Mask{1} << n;

  auto gen = [&](int j, Gf2Mask t) { return static_cast<int>((j - n - 1) * cosets + t); };

  std::vector<std::string> names;
  for (int j = n + 1; j <= d; ++j) {
    for (Gf2Mask t = 0; t < cosets; ++t) names.push_back(generator_name(j, t, n));
  }

  std::vector<Relator> raw;
  auto pairs = permuted_cone_pairs(f, m.basis);
  for (Gf2Mask t = 0; t < cosets; ++t) {
    // Identification relators y_{j,t} y_{j,t+a_j}; dropping them would
    // change the group (the paper folds them into the generator set).
    for (int j = n + 1; j <= d; ++j) {
      raw.push_back({{gen(j, t), 1}, {gen(j, t ^ m.rows[j - 1]), 1}});
    }
    // Quadruples with basis factors replaced by the empty word.
    for (auto [p, q] : pairs) {
      Gf2Mask ap = m.rows[p - 1];
      Gf2Mask aq = m.rows[q - 1];
      Relator rel;
      if (p > n) rel.push_back({gen(p, t), 1});
      if (q > n) rel.push_back({gen(q, t ^ ap), 1});
      if (p > n) rel.push_back({gen(p, t ^ ap ^ aq), 1});
      if (q > n) rel.push_back({gen(q, t ^ aq), 1});
      if (!rel.empty()) raw.push_back(std::move(rel));
    }
  }
  return {present::make_presentation(std::move(names), cleanup_relators(std::move(raw))),
          n + 1};
}

void require_connected(const fan::Fan& f) {
  Connectivity c = connectedness(f);
  if (!c.connected)
    throw Error("DisconnectedFan",
                "fan has " + std::to_string(c.component_count) + " components");
}

CharMatrixGF2 prepared_matrix(const fan::Fan& f) {
  require_connected(f);
  return char_matrix(f, choose_basis(f));
}

// Defining word of y_{j,t} in W: w(t) s_j reverse(w(t + a_j)), letters over
// original ray indices.
racg::Word generator_image(const CharMatrixGF2& m, int j, Gf2Mask t) {
  auto transversal = [&](Gf2Mask u) {
    racg::Word w;
    for (int i = 0; i < m.n; ++i) {
      if (u >> i & 1) w.push_back(m.basis.perm_to_original[i]);
    }
    return w;
  };
  racg::Word out = transversal(t);
  out.push_back(m.basis.perm_to_original[j - 1]);
  racg::Word back = transversal(t ^ m.rows[j - 1]);
  out.insert(out.end(), back.rbegin(), back.rend());
  return out;
}

VerifyReport verify_built(const fan::Fan& f, const BuiltPresentation& built,
                          const CharMatrixGF2& build_matrix,
                          const CharMatrixGF2& honest_matrix) {
  const Gf2Mask cosets = Gf2Mask{1} << build_matrix.n;
  racg::CommutationGraph graph = racg::graph_from_fan(f);
  VerifyReport report;

  auto image_of = [&](int gen_index) {
    int j = built.j_lo + gen_index / static_cast<int>(cosets);
    Gf2Mask t = static_cast<Gf2Mask>(gen_index) % cosets;
    return generator_image(build_matrix, j, t);
  };

  for (std::size_t gi = 0; gi < built.pres.generators.size(); ++gi) {
    ++report.generators_checked;
    if (phi_hat(honest_matrix, image_of(static_cast<int>(gi))) != 0) {
      report.pass = false;
      report.first_failure =
          "generator " + built.pres.generators[gi] + " maps outside ker(phi_hat)";
      return report;
    }
  }
  for (const auto& rel : built.pres.relators) {
    ++report.relators_checked;
    racg::Word word;
    for (const auto& syl : rel) {
      racg::Word img = image_of(syl.gen);
      if (syl.exp < 0) img = racg::inverse(img);
      word.insert(word.end(), img.begin(), img.end());
    }
    if (!racg::reduce(graph, word).is_identity()) {
      report.pass = false;
      std::string text;
      for (const auto& syl : rel) {
        if (!text.empty()) text += "*";
        text += built.pres.generators[syl.gen];
        if (syl.exp < 0) text += "^-1";
      }
      report.first_failure = "relator " + text + " does not reduce to the identity in W";
      return report;
    }
  }
  return report;
}

}  // namespace

std::string generator_name(int permuted_j, Gf2Mask t, int n) {
  return "y_" + std::to_string(permuted_j) + "_" + bits(t, n);
}

Connectivity connectedness(const fan::Fan& f) {
  require_dim_cap(f);
  std::vector<Gf2Mask> images;
  images.reserve(f.rays().size());
  for (const auto& ray : f.rays()) images.push_back(mod2_mask(ray));
  int k = gf2_rank(images);
  Connectivity c;
  c.mod2_rank = k;
  c.connected = (k == f.dim());
  c.component_count = 1ull << (f.dim() - k);
  return c;
}

BasisSelection choose_basis(const fan::Fan& f) {
  require_dim_cap(f);
  const int n = f.dim();
  const int d = f.ray_count();

  std::vector<Gf2Mask> images;
  for (const auto& ray : f.rays()) images.push_back(mod2_mask(ray));

  std::vector<int> basis;
  // Prefer a full-dimensional cone: its generators pairwise span cones.
  for (const auto& cone : f.closure()) {
    if (cone.dim() != n) continue;
    std::vector<Gf2Mask> vecs;
    for (int r : cone.rays) vecs.push_back(images[r]);
    if (gf2_rank(vecs) == n) {
      basis = cone.rays;
      break;
    }
  }
  if (basis.empty()) {
    std::vector<Gf2Mask> picked;
    for (int r = 0; r < d && static_cast<int>(basis.size()) < n; ++r) {
      picked.push_back(images[r]);
      if (gf2_rank(picked) == static_cast<int>(picked.size())) {
        basis.push_back(r);
      } else {
        picked.pop_back();
      }
    }
    if (static_cast<int>(basis.size()) < n) {
      Connectivity c = connectedness(f);
      throw Error("EdgesDoNotSpanMod2",
                  "mod-2 ray images have rank " + std::to_string(c.mod2_rank) + " < " +
                      std::to_string(n) + "; X has " + std::to_string(c.component_count) +
                      " components");
    }
  }

  BasisSelection sel;
  sel.basis_rays = basis;
  sel.perm_to_original = basis;
  std::vector<bool> in_basis(d, false);
  for (int r : basis) in_basis[r] = true;
  for (int r = 0; r < d; ++r) {
    if (!in_basis[r]) sel.perm_to_original.push_back(r);
  }
  sel.original_to_perm.assign(d, 0);
  for (int pos = 0; pos < d; ++pos) sel.original_to_perm[sel.perm_to_original[pos]] = pos;

  sel.pairwise_conical = true;
  for (std::size_t a = 0; a < basis.size() && sel.pairwise_conical; ++a) {
    for (std::size_t b = a + 1; b < basis.size(); ++b) {
      std::vector<int> pair{std::min(basis[a], basis[b]), std::max(basis[a], basis[b])};
      if (!f.has_cone(pair)) {
        sel.pairwise_conical = false;
        break;
      }
    }
  }
  return sel;
}

CharMatrixGF2 char_matrix(const fan::Fan& f, const BasisSelection& basis) {
  const int n = f.dim();
  const int d = f.ray_count();
  // Invert the basis matrix over GF(2); row r of B holds coordinate r of the
  // basis rays.
  std::vector<Gf2Mask> left(n, 0), right(n, 0);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      if (f.rays()[basis.basis_rays[c]].coords[r] & 1) left[r] |= Gf2Mask{1} << c;
    }
    right[r] = Gf2Mask{1} << r;
  }
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    while (pivot < n && !(left[pivot] >> col & 1)) ++pivot;
    if (pivot == n) throw Error("EdgesDoNotSpanMod2", "selected basis is dependent mod 2");
    std::swap(left[col], left[pivot]);
    std::swap(right[col], right[pivot]);
    for (int r = 0; r < n; ++r) {
      if (r != col && (left[r] >> col & 1)) {
        left[r] ^= left[col];
        right[r] ^= right[col];
      }
    }
  }
  CharMatrixGF2 m;
  m.n = n;
  m.d = d;
  m.basis = basis;
  m.rows.assign(d, 0);
  for (int pos = 0; pos < d; ++pos) {
    Gf2Mask v = mod2_mask(f.rays()[basis.perm_to_original[pos]]);
    Gf2Mask coords = 0;
    for (int i = 0; i < n; ++i) {
      coords |= static_cast<Gf2Mask>(std::popcount(right[i] & v) & 1) << i;
    }
    if (coords == 0) throw Error("EdgesDoNotSpanMod2", "zero characteristic row");
    m.rows[pos] = coords;
  }
  return m;
}

Gf2Mask phi_hat(const CharMatrixGF2& m, const racg::Word& w) {
  Gf2Mask acc = 0;
  for (int letter : w) {
    if (letter < 0 || letter >= m.d)
      throw Error("IndexOutOfRange", "letter " + std::to_string(letter));
    acc ^= m.row_for_original(letter);
  }
  return acc;
}

bool in_pi1(const CharMatrixGF2& m, const racg::Word& w) { return phi_hat(m, w) == 0; }

present::Presentation rs_presentation(const fan::Fan& f) {
  CharMatrixGF2 m = prepared_matrix(f);
  return build_full(f, m).pres;
}

present::Presentation rs_presentation_from(const fan::Fan& f, const CharMatrixGF2& m) {
  return build_full(f, m).pres;
}

present::Presentation simplified_presentation(const fan::Fan& f) {
  CharMatrixGF2 m = prepared_matrix(f);
  if (!m.basis.pairwise_conical)
    throw Error("BasisNotPairwiseConical", "simplified presentation needs a conical basis");
  return build_simplified(f, m).pres;
}

present::Presentation simplified_presentation_from(const fan::Fan& f, const CharMatrixGF2& m) {
  return build_simplified(f, m).pres;
}

std::vector<racg::Word> pi1_generators_in_W(const fan::Fan& f) {
  CharMatrixGF2 m = prepared_matrix(f);
  if (!m.basis.pairwise_conical)
    throw Error("BasisNotPairwiseConical", "generator form needs a conical basis");
  const Gf2Mask cosets = Gf2Mask{1} << m.n;
  std::vector<racg::Word> out;
  for (int j = m.n + 1; j <= m.d; ++j) {
    racg::Word sj;
    sj.push_back(m.basis.perm_to_original[j - 1]);
    for (int i = 0; i < m.n; ++i) {
      if (m.rows[j - 1] >> i & 1) sj.push_back(m.basis.perm_to_original[i]);
    }
    for (Gf2Mask t = 0; t < cosets; ++t) {
      racg::Word wt;
      for (int i = 0; i < m.n; ++i) {
        if (t >> i & 1) wt.push_back(m.basis.perm_to_original[i]);
      }
      racg::Word word = wt;
      word.insert(word.end(), sj.begin(), sj.end());
      word.insert(word.end(), wt.begin(), wt.end());
      out.push_back(std::move(word));
    }
  }
  return out;
}

std::string to_string(AbelianCase c) {
  switch (c) {
    case AbelianCase::case_i:
      return "case_i";
    case AbelianCase::case_ii:
      return "case_ii";
    default:
      return "non_abelian";
  }
}

AbelianVerdict is_pi1_abelian(const fan::Fan& f) {
  CharMatrixGF2 m = prepared_matrix(f);
  if (!m.basis.pairwise_conical)
    throw Error("BasisNotPairwiseConical", "abelianness criterion needs a conical basis");
  const int n = m.n;
  const int d = m.d;

  // Non-conical partner lists in permuted 1-based numbering.
  std::vector<std::vector<int>> partners(d + 1);
  bool any_non_edge = false;
  for (int p = 1; p <= d; ++p) {
    for (int q = p + 1; q <= d; ++q) {
      int a = m.basis.perm_to_original[p - 1];
      int b = m.basis.perm_to_original[q - 1];
      std::vector<int> pair{std::min(a, b), std::max(a, b)};
      if (!f.has_cone(pair)) {
        partners[p].push_back(q);
        partners[q].push_back(p);
        any_non_edge = true;
      }
    }
  }

  // Step 1 (Lemma on [W,W]): at most one non-conical partner per ray.
  for (int j = 1; j <= d; ++j) {
    if (partners[j].size() > 1) {
      return {AbelianCase::non_abelian, 1,
              "step 1: ray " + std::to_string(j) + " has " +
                  std::to_string(partners[j].size()) + " non-conical partners"};
    }
  }
  if (!any_non_edge) return {AbelianCase::case_i, 0, ""};

  // Step 3: the partner of a non-basis ray must be a basis ray.
  for (int j = n + 1; j <= d; ++j) {
    if (!partners[j].empty() && partners[j][0] > n) {
      return {AbelianCase::non_abelian, 3,
              "step 3: non-basis rays " + std::to_string(j) + " and " +
                  std::to_string(partners[j][0]) + " do not span a cone"};
    }
  }
  // Step 4: a_{k,i_j} = 0 for every other non-basis k.
  for (int j = n + 1; j <= d; ++j) {
    if (partners[j].empty()) continue;
    int ij = partners[j][0];
    for (int k = n + 1; k <= d; ++k) {
      if (k == j) continue;
      if (m.rows[k - 1] >> (ij - 1) & 1) {
        return {AbelianCase::non_abelian, 4,
                "step 4: a_{" + std::to_string(k) + "," + std::to_string(ij) + "} = 1"};
      }
    }
  }
  // Step 5: a_{j,i_j} = 1.
  for (int j = n + 1; j <= d; ++j) {
    if (partners[j].empty()) continue;
    int ij = partners[j][0];
    if (!(m.rows[j - 1] >> (ij - 1) & 1)) {
      return {AbelianCase::non_abelian, 5,
              "step 5: a_{" + std::to_string(j) + "," + std::to_string(ij) + "} = 0"};
    }
  }
  return {AbelianCase::case_ii, 0, ""};
}

AbelianStructure abelian_structure(const fan::Fan& f) {
  AbelianVerdict verdict = is_pi1_abelian(f);
  if (verdict.value == AbelianCase::non_abelian)
    throw Error("NotAbelian", "pi_1 is non-abelian (" + verdict.witness + ")");
  CharMatrixGF2 m = prepared_matrix(f);
  int r = 0;
  for (int j = m.n + 1; j <= m.d; ++j) {
    int orig_j = m.basis.perm_to_original[j - 1];
    for (int i = 0; i < m.d; ++i) {
      if (i == orig_j) continue;
      std::vector<int> pair{std::min(i, orig_j), std::max(i, orig_j)};
      if (!f.has_cone(pair)) {
        ++r;
        break;
      }
    }
  }
  return AbelianStructure{r, (m.d - m.n) - r};
}

racg::ElementOrder torsion_of_pi1_element(const fan::Fan& f, const racg::Word& w) {
  CharMatrixGF2 m = prepared_matrix(f);
  if (!in_pi1(m, w))
    throw Error("NotInPi1", "word " + racg::word_to_string(w) + " is not in ker(phi_hat)");
  return racg::order(racg::graph_from_fan(f), w);
}

VerifyReport verify_presentation(const fan::Fan& f, WhichPresentation which) {
  CharMatrixGF2 m = prepared_matrix(f);
  if (which == WhichPresentation::simplified && !m.basis.pairwise_conical)
    throw Error("BasisNotPairwiseConical", "simplified presentation needs a conical basis");
  return verify_presentation_against(f, which, m);
}

VerifyReport verify_presentation_against(const fan::Fan& f, WhichPresentation which,
                                         const CharMatrixGF2& m) {
  CharMatrixGF2 honest = prepared_matrix(f);
  BuiltPresentation built =
      which == WhichPresentation::full ? build_full(f, m) : build_simplified(f, m);
  return verify_built(f, built, m, honest);
}

Pi1Report analyze_pi1(const fan::Fan& f) {
  Pi1Report report;
  Connectivity conn = connectedness(f);
  report.connected = conn.connected;
  report.component_count = conn.component_count;
  if (!conn.connected) {
    report.warnings.push_back("fan is disconnected; pi_1 presentations refused");
    return report;
  }
  report.basis = choose_basis(f);
  report.presentation_full = rs_presentation(f);
  if (report.basis->pairwise_conical) {
    report.presentation_simplified = simplified_presentation(f);
    report.abelian = is_pi1_abelian(f);
    if (report.abelian->value != AbelianCase::non_abelian)
      report.structure = abelian_structure(f);
  } else {
    report.warnings.push_back(
        "basis is not pairwise conical; simplified presentation and abelianness "
        "criterion unavailable");
  }
  return report;
}

}  // namespace torfan::pi1
