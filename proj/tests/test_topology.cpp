#include <doctest.h>

#include <algorithm>

#include "corpus.hpp"
#include "torfan/errors.hpp"
#include "torfan/pi1.hpp"
#include "torfan/present.hpp"
#include "torfan/topology.hpp"

using namespace torfan;
using racg::Word;

TEST_CASE("asphericity on pinned fans") {
  CHECK(topology::is_aspherical(corpus::p1xp1()));
  CHECK_FALSE(topology::is_aspherical(corpus::rp2()));
  CHECK(topology::is_aspherical(corpus::hirzebruch1()));  // the Klein bottle
  CHECK_FALSE(topology::is_aspherical(corpus::rem77()));
}

TEST_CASE("asphericity equals flag-likeness across the corpus") {
  for (const auto& [name, f] : corpus::all_corpus()) {
    CAPTURE(name);
    CHECK(topology::is_aspherical(f) == fan::is_flag_like(f));
  }
}

TEST_CASE("arrangement subspaces on pinned fans") {
  auto rp2 = topology::arrangement(corpus::rp2());
  CHECK(rp2.ambient_dim == 3);
  REQUIRE(rp2.subspaces.size() == 1);
  CHECK(rp2.subspaces[0].zero_coordinates == std::vector<int>{0, 1, 2});
  CHECK(rp2.subspaces[0].codimension == 3);
  CHECK_FALSE(rp2.completeness_relaxed);

  auto torus = topology::arrangement(corpus::p1xp1());
  REQUIRE(torus.subspaces.size() == 2);
  CHECK(torus.subspaces[0].codimension == 2);
  CHECK(torus.subspaces[1].codimension == 2);

  auto orthant = topology::arrangement(corpus::orthant3());
  CHECK(orthant.subspaces.empty());
  CHECK(orthant.completeness_relaxed);  // incomplete but rays span mod 2

  CHECK_THROWS_WITH_AS(topology::arrangement(corpus::s1_cross_rstar()),
                       doctest::Contains("IncompleteFanWithoutBasis"), Error);
}

TEST_CASE("K(pi,1) verdicts") {
  CHECK(topology::is_arrangement_k_pi_1(corpus::p1xp1()));
  CHECK_FALSE(topology::is_arrangement_k_pi_1(corpus::rp2()));
  CHECK(topology::is_arrangement_k_pi_1(fan::barycentric_refine(corpus::rp2())));
  for (const auto& [name, f] : corpus::smooth_complete_corpus()) {
    CAPTURE(name);
    CHECK(topology::is_arrangement_k_pi_1(f) == fan::is_flag_like(f));
  }
}

TEST_CASE("pi1 of the arrangement complement") {
  auto rp2 = topology::pi1_arrangement(corpus::rp2());
  CHECK(rp2.normal_generators.empty());  // all pairs conical: [W,W] = 1
  CHECK(rp2.commutator_is_abelian);
  CHECK(rp2.free_abelian_rank == 0);

  auto torus = topology::pi1_arrangement(corpus::p1xp1());
  CHECK(torus.normal_generators ==
        std::vector<Word>{{0, 2, 0, 2}, {1, 3, 1, 3}});
  CHECK(torus.commutator_is_abelian);
  CHECK(torus.free_abelian_rank == 2);
  for (const auto& w : torus.normal_generators) CHECK(torus.contains(w));
  CHECK_FALSE(torus.contains({0}));
}

TEST_CASE("commutator subgroup elements sampled from the ball are torsion-free") {
  for (const auto& [name, f] : corpus::connected_corpus()) {
    if (f.ray_count() > 5) continue;
    CAPTURE(name);
    auto graph = racg::graph_from_fan(f);
    for (const auto& element : racg::enumerate_ball(graph, 6)) {
      if (element.is_identity() || !racg::in_commutator_subgroup(graph, element.letters))
        continue;
      CHECK(racg::order(graph, element.letters) == racg::ElementOrder::infinite);
    }
  }
}

TEST_CASE("arrangement fan realizes the complement") {
  auto rp2 = corpus::rp2();
  auto prime = topology::arrangement_fan(rp2);
  CHECK(prime.dim() == 3);
  CHECK(prime.ray_count() == 3);
  CHECK(fan::check_smooth(prime).smooth);
  int two_cones = 0;
  for (const auto& c : prime.closure()) two_cones += c.dim() == 2;
  CHECK(two_cones == 3);

  // same commutation graph; the standard-basis rays always span mod 2
  auto g1 = racg::graph_from_fan(rp2);
  auto g2 = racg::graph_from_fan(prime);
  CHECK(g1.adjacency == g2.adjacency);
  for (const auto& [name, f] : corpus::connected_corpus()) {
    if (f.ray_count() > 8) continue;
    CAPTURE(name);
    CHECK(pi1::connectedness(topology::arrangement_fan(f)).connected);
  }

  // H_1 of the complement equals the abelianization of [W,W] when abelian:
  // trivial for the projective plane, Z^2 for the quadric surface.
  auto h1_rp2 = present::abelianize(pi1::rs_presentation(prime));
  CHECK(h1_rp2.free_rank == 0);
  CHECK(h1_rp2.torsion_divisors.empty());

  auto prime_torus = topology::arrangement_fan(corpus::p1xp1());
  auto h1_torus = present::abelianize(pi1::rs_presentation(prime_torus));
  CHECK(h1_torus.free_rank == 2);
  CHECK(h1_torus.torsion_divisors.empty());
  CHECK(h1_torus.free_rank == topology::pi1_arrangement(corpus::p1xp1()).free_abelian_rank);
}

TEST_CASE("quotient data matrices") {
  auto rp2 = topology::quotient_data(corpus::rp2());
  REQUIRE(rp2.f_matrix.size() == 3);
  REQUIRE(rp2.f_matrix[0].size() == 1);
  CHECK(rp2.f_matrix[0][0] == 1);
  CHECK(rp2.f_matrix[1][0] == 1);
  CHECK(rp2.f_matrix[2][0] == 1);

  auto torus = topology::quotient_data(corpus::p1xp1());
  REQUIRE(torus.f_matrix.size() == 4);
  REQUIRE(torus.f_matrix[0].size() == 2);
  // column 0 <-> permuted ray 4 (= -e2), column 1 <-> permuted ray 3 (= -e1)
  CHECK(torus.f_matrix[3][0] == 1);
  CHECK(torus.f_matrix[1][0] == 1);
  CHECK(torus.f_matrix[0][0] == 0);
  CHECK(torus.f_matrix[2][1] == 1);
  CHECK(torus.f_matrix[0][1] == 1);
  CHECK(torus.f_matrix[1][1] == 0);

  for (const auto& [name, f] : corpus::connected_corpus()) {
    CAPTURE(name);
    try {
      auto q = topology::quotient_data(f);
      CHECK(present::is_zero(present::multiply(q.g_matrix, q.f_matrix)));
    } catch (const Error& e) {
      CHECK(e.code() == "NoIntegralBasisAmongRays");
    }
  }

  CHECK_THROWS_WITH_AS(topology::quotient_data(corpus::skew()),
                       doctest::Contains("NoIntegralBasisAmongRays"), Error);
}

TEST_CASE("bounded normal-closure smoke test avoids clique words") {
  // projective plane: w' = s0 s1 s2 spans no cone, every cone word is a clique
  auto rp2 = corpus::rp2();
  auto g = racg::graph_from_fan(rp2);
  CHECK_FALSE(topology::clique_word_in_bounded_normal_closure(g, {0, 1}, {0, 1, 2}));
  CHECK_FALSE(topology::clique_word_in_bounded_normal_closure(g, {0}, {0, 1, 2}));

  // the subdivided orthant: w' = s0 s1 s2 again, cones contain s3
  auto g77 = racg::graph_from_fan(corpus::rem77());
  CHECK_FALSE(topology::clique_word_in_bounded_normal_closure(g77, {0, 1, 3}, {0, 1, 2}));

  // control: w' itself lies in its normal closure
  CHECK(topology::clique_word_in_bounded_normal_closure(g77, {0, 1, 2}, {0, 1, 2}));
}
