// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "oracles.hpp"
#include "torfan/fan.hpp"
#include "torfan/pi1.hpp"
#include "torfan/present.hpp"
#include "torfan/racg.hpp"
#include "torfan/topology.hpp"

using namespace torfan;
using racg::Word;

namespace {

struct Runner {
  int failures = 0;

  void criterion(int number, const std::string& description,
                 const std::function<bool(std::string&)>& body) {
    std::string detail;
    bool ok = false;
    try {
      ok = body(detail);
    } catch (const std::exception& e) {
      ok = false;
      detail = std::string("exception: ") + e.what();
    }
    std::printf("[%s] criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", number,
                description.c_str(), detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++failures;
  }
};

present::AbelianInvariants invariants(long long free_rank, std::vector<long> torsion) {
  present::AbelianInvariants inv;
  inv.free_rank = free_rank;
  for (long t : torsion) inv.torsion_divisors.emplace_back(t);
  return inv;
}

bool surface_classification(std::string& detail) {
  for (const auto& [name, f] : corpus::surface_corpus()) {
    if (!fan::check_smooth(f).smooth || !fan::check_complete(f)) {
      detail = name + " is not smooth and complete";
      return false;
    }
    auto h1 = present::abelianize(pi1::rs_presentation(f));
    auto expected =
        name == "p1xp1" ? invariants(2, {}) : invariants(f.ray_count() - 3, {2});
    if (!(h1 == expected)) {
      detail = name + ": H_1 = " + h1.to_string() + ", expected " + expected.to_string();
      return false;
    }
  }
  return true;
}

bool abelianness_criterion(std::string& detail) {
  struct Expect {
    std::string name;
    corpus::Fan fan;
    pi1::AbelianCase verdict;
    pi1::AbelianStructure structure;  // ignored for non_abelian
  };
  std::vector<Expect> table;
  table.push_back({"rp2", corpus::rp2(), pi1::AbelianCase::case_i, {0, 1}});
  table.push_back({"rp3", corpus::rp_n(3), pi1::AbelianCase::case_i, {0, 1}});
  table.push_back({"rp2xrp2", corpus::product(corpus::rp2(), corpus::rp2()),
                   pi1::AbelianCase::case_i, {0, 2}});
  table.push_back({"rp2xrp3", corpus::product(corpus::rp2(), corpus::rp_n(3)),
                   pi1::AbelianCase::case_i, {0, 2}});
  table.push_back({"p1xp1", corpus::p1xp1(), pi1::AbelianCase::case_ii, {2, 0}});
  table.push_back({"hirzebruch1", corpus::hirzebruch1(), pi1::AbelianCase::non_abelian, {}});
  for (const auto& e : table) {
    auto verdict = pi1::is_pi1_abelian(e.fan);
    if (verdict.value != e.verdict) {
      detail = e.name + ": got " + pi1::to_string(verdict.value);
      return false;
    }
    if (e.verdict != pi1::AbelianCase::non_abelian) {
      auto s = pi1::abelian_structure(e.fan);
      if (!(s == e.structure)) {
        detail = e.name + ": structure Z^" + std::to_string(s.free_rank) + " + Z_2^" +
                 std::to_string(s.torsion_rank);
        return false;
      }
    }
  }
  return true;
}

bool asphericity_criterion(std::string& detail) {
  for (const auto& [name, f] : corpus::all_corpus()) {
    if (topology::is_aspherical(f) != fan::is_flag_like(f)) {
      detail = name + ": aspherical != flag-like";
      return false;
    }
  }
  for (const auto& [name, f] : corpus::smooth_complete_corpus()) {
    auto refined = fan::barycentric_refine(f);
    if (!topology::is_aspherical(refined)) {
      detail = "refinement of " + name + " is not aspherical";
      return false;
    }
    if (!fan::check_smooth(refined).smooth || !fan::check_complete(refined)) {
      detail = "refinement of " + name + " lost smoothness or completeness";
      return false;
    }
  }
  if (fan::is_flag_like(corpus::rem77())) {
    detail = "the subdivided orthant must not be flag-like";
    return false;
  }
  return true;
}

bool arrangement_criterion(std::string& detail) {
  for (const auto& [name, f] : corpus::all_corpus()) {
    if (name == "s1_cross_rstar") continue;  // arrangement refused there
    bool all_codim2 = true;
    for (const auto& pc : fan::primitive_collections(f)) {
      if (pc.size() != 2) all_codim2 = false;
    }
    if (topology::is_arrangement_k_pi_1(f) != all_codim2) {
      detail = name + ": K(pi,1) verdict disagrees with codimensions";
      return false;
    }
  }
  // torsion-freeness sampling on [W,W] inside the radius-6 ball
  for (const auto& [name, f] : corpus::connected_corpus()) {
    if (f.ray_count() > 5) continue;
    auto graph = racg::graph_from_fan(f);
    for (const auto& element : racg::enumerate_ball(graph, 6)) {
      if (element.is_identity()) continue;
      if (!racg::in_commutator_subgroup(graph, element.letters)) continue;
      if (racg::order(graph, element.letters) != racg::ElementOrder::infinite) {
        detail = name + ": torsion element " + racg::word_to_string(element.letters) +
                 " in [W,W]";
        return false;
      }
    }
  }
  return true;
}

bool connectivity_criterion(std::string& detail) {
  auto c1 = pi1::connectedness(corpus::s1_cross_rstar());
  if (c1.connected || c1.component_count != 2) {
    detail = "{<e1>, <-e1>} expected (false, 2)";
    return false;
  }
  auto c2 = pi1::connectedness(corpus::skew());
  if (!c2.connected || c2.component_count != 1) {
    detail = "{<2e1+3e2>, <e1>} expected (true, 1)";
    return false;
  }
  return true;
}

bool presentation_soundness(std::string& detail) {
  for (const auto& [name, f] : corpus::connected_corpus()) {
    auto full = pi1::verify_presentation(f, pi1::WhichPresentation::full);
    if (!full.pass) {
      detail = name + " full: " + full.first_failure;
      return false;
    }
    if (pi1::choose_basis(f).pairwise_conical) {
      auto simplified = pi1::verify_presentation(f, pi1::WhichPresentation::simplified);
      if (!simplified.pass) {
        detail = name + " simplified: " + simplified.first_failure;
        return false;
      }
    }
  }
  // negative control: one flipped bit must be caught
  auto f = corpus::rp2();
  auto m = pi1::char_matrix(f, pi1::choose_basis(f));
  m.rows[2] ^= 0b10;
  auto corrupted = pi1::verify_presentation_against(f, pi1::WhichPresentation::full, m);
  if (corrupted.pass) {
    detail = "corrupted characteristic matrix went unnoticed";
    return false;
  }
  return true;
}

bool word_engine_oracle(std::string& detail) {
  for (int d = 1; d <= 5; ++d) {
    const int pair_count = d * (d - 1) / 2;
    const int maxlen = 5;
    for (std::uint32_t mask = 0; mask < (1u << pair_count); ++mask) {
      std::vector<std::pair<int, int>> edges;
      int bit = 0;
      for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j, ++bit) {
          if (mask >> bit & 1) edges.emplace_back(i, j);
        }
      }
      auto g = racg::make_graph(d, edges);
      oracles::WordSpace space(d, maxlen);
      auto closure = oracles::rewriting_closure_classes(g, maxlen);
      std::map<Word, int> class_of_normal_form;
      std::set<int> classes_seen;
      for (long long id = 0; id < space.size(); ++id) {
        Word nf = racg::reduce(g, space.decode(id)).letters;
        auto [it, fresh] = class_of_normal_form.emplace(nf, closure[id]);
        if (!fresh && it->second != closure[id]) {
          detail = "reduce merges words the relations keep apart (d=" +
                   std::to_string(d) + ")";
          return false;
        }
        if (fresh && !classes_seen.insert(closure[id]).second) {
          detail = "relations merge words with distinct normal forms (d=" +
                   std::to_string(d) + ")";
          return false;
        }
      }
    }
  }
  // order trichotomy on radius-6 balls
  std::vector<std::pair<std::string, racg::CommutationGraph>> graphs;
  graphs.emplace_back("free2", racg::make_graph(2, {}));
  graphs.emplace_back("rp2", racg::graph_from_fan(corpus::rp2()));
  graphs.emplace_back("p1xp1", racg::graph_from_fan(corpus::p1xp1()));
  graphs.emplace_back("c5", racg::graph_from_fan(corpus::blow_up(corpus::p1xp1(), 3)));
  for (const auto& [name, g] : graphs) {
    for (const auto& element : racg::enumerate_ball(g, 6)) {
      Word doubled = element.letters;
      doubled.insert(doubled.end(), element.letters.begin(), element.letters.end());
      bool squares_to_one = racg::reduce(g, doubled).is_identity();
      auto o = racg::order(g, element.letters);
      if ((o != racg::ElementOrder::infinite) != squares_to_one) {
        detail = name + ": order(" + racg::word_to_string(element.letters) +
                 ") disagrees with squaring";
        return false;
      }
      if (o == racg::ElementOrder::two) {
        auto core = racg::cyclic_reduce(g, element.letters).core.letters;
        for (std::size_t i = 0; i < core.size(); ++i) {
          for (std::size_t j = i + 1; j < core.size(); ++j) {
            if (!g.commutes(core[i], core[j])) {
              detail = name + ": order-2 element with non-clique core";
              return false;
            }
          }
        }
      }
    }
  }
  return true;
}

bool snf_property_suite(std::string& detail) {
  std::mt19937 rng(424243);
  std::uniform_int_distribution<int> dim(1, 4);
  std::uniform_int_distribution<long> entry(-9, 9);
  for (int trial = 0; trial < 10000; ++trial) {
    int r = dim(rng), c = dim(rng);
    present::IntMatrix m(r, std::vector<present::Int>(c));
    for (auto& row : m) {
      for (auto& x : row) x = entry(rng);
    }
    auto got = present::smith_normal_form(m);
    if (!(got == oracles::minor_gcd_divisors(m))) {
      detail = "divisors disagree with the minor-gcd oracle at trial " +
               std::to_string(trial);
      return false;
    }
    for (std::size_t i = 0; i + 1 < got.size(); ++i) {
      bool chained = got[i] == 0 ? got[i + 1] == 0 : got[i + 1] % got[i] == 0;
      if (!chained) {
        detail = "divisibility chain broken at trial " + std::to_string(trial);
        return false;
      }
    }
  }
  return true;
}

}  // namespace

int main() {
  Runner runner;
  runner.criterion(1,
                   "surface classification: H_1 of the full presentation is Z^(d-3) + Z/2 "
                   "for every non-torus 2-fan, Z^2 for the torus",
                   surface_classification);
  runner.criterion(2, "abelianness: case_i on projective products, case_ii on the quadric, "
                      "non-abelian on the Hirzebruch surface",
                   abelianness_criterion);
  runner.criterion(3, "asphericity equals flag-likeness; barycentric refinements are "
                      "aspherical; the subdivided orthant is not flag-like",
                   asphericity_criterion);
  runner.criterion(4, "arrangement K(pi,1) iff all primitive collections have size 2; "
                      "[W,W] ball elements are torsion-free",
                   arrangement_criterion);
  runner.criterion(5, "connectivity verdicts on the two reference fans", connectivity_criterion);
  runner.criterion(6, "presentation soundness oracle incl. corrupted-matrix negative control",
                   presentation_soundness);
  runner.criterion(7, "word-engine equality matches defining-relation rewriting on all "
                      "graphs with d <= 5; order trichotomy on radius-6 balls",
                   word_engine_oracle);
  runner.criterion(8, "Smith normal form: divisibility chain and minor-gcd agreement on "
                      "10^4 random matrices",
                   snf_property_suite);
  if (runner.failures == 0) {
    std::printf("acceptance: all %d criteria passed\n", 8);
    return 0;
  }
  std::printf("acceptance: %d criterion(s) failed\n", runner.failures);
  return 1;
}
