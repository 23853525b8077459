#pragma once

#include <string>
#include <vector>

#include "torfan/fan.hpp"
#include "torfan/pi1.hpp"
#include "torfan/present.hpp"
#include "torfan/racg.hpp"

// Asphericity of X(Delta), the real coordinate-subspace arrangement
// complement C_Delta, its fundamental group, and the auxiliary fan
// realizing C_Delta as a toric variety.
namespace torfan::topology {

// X(Delta) is aspherical iff Delta is flag-like (smooth fans).
bool is_aspherical(const fan::Fan& f);

struct Subspace {
  std::vector<int> zero_coordinates;  // a primitive collection
  int codimension = 0;
};

struct SubspaceArrangement {
  int ambient_dim = 0;
  std::vector<Subspace> subspaces;
  // Set when the fan is incomplete but its rays span mod 2; such fans are
  // admitted with a warning.
  bool completeness_relaxed = false;
};

// One subspace per primitive collection. Throws IncompleteFanWithoutBasis
// when the fan is incomplete and the rays do not span N (x) Z_2.
SubspaceArrangement arrangement(const fan::Fan& f);

// C_Delta is a K(pi,1) iff every subspace has codimension exactly 2.
bool is_arrangement_k_pi_1(const fan::Fan& f);

// pi_1(C_Delta) = [W,W]: the commutation graph, the normal generating set
// of commutators over the codimension-2 collections, and (when [W,W] is
// abelian) its free rank. Membership is the kernel of the abelianization.
struct ArrangementPi1 {
  racg::CommutationGraph graph;
  std::vector<racg::Word> normal_generators;
  bool commutator_is_abelian = false;
  long long free_abelian_rank = 0;  // meaningful when commutator_is_abelian

  bool contains(const racg::Word& w) const {
    return racg::in_commutator_subgroup(graph, w);
  }
};
ArrangementPi1 pi1_arrangement(const fan::Fan& f);

// The fan Delta' in Z^d with rays e_1..e_d and one cone per cone of Delta;
// its real toric variety is C_Delta.
fan::Fan arrangement_fan(const fan::Fan& f);

// The lattice maps of the exact sequence of fans: g maps e'_j to v_j and f
// embeds Z^(d-n) via e'_j - sum_i <u_i, v_j> e'_i (j descending over the
// non-basis rays). Rows/columns use the basis-first ray permutation.
struct QuotientData {
  present::IntMatrix g_matrix;  // n x d
  present::IntMatrix f_matrix;  // d x (d-n)
  std::vector<int> perm_to_original;
};
QuotientData quotient_data(const fan::Fan& f);

// Bounded smoke test: is the clique word among products of at most
// max_factors conjugates of relator with conjugators of length at most
// max_conjugator_len? Non-exhaustive by construction.
bool clique_word_in_bounded_normal_closure(const racg::CommutationGraph& g,
                                           const racg::Word& clique_word,
                                           const racg::Word& relator, int max_factors = 3,
                                           int max_conjugator_len = 4);

}  // namespace torfan::topology
