#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "torfan/fan.hpp"
#include "torfan/present.hpp"
#include "torfan/racg.hpp"

// Everything pi_1(X(Delta)): the mod-2 characteristic matrix, the
// homomorphism phi_hat : W -> Z_2^n with pi_1 = ker(phi_hat), connectivity,
// Reidemeister-Schreier presentations (full and simplified), the abelianness
// criterion and the abelian structure.
namespace torfan::pi1 {

// GF(2) vectors of length n <= 62 are packed into bit masks; bit i holds
// coordinate i+1.
using Gf2Mask = std::uint64_t;

struct BasisSelection {
  std::vector<int> basis_rays;       // original ray indices, ascending, size n
  std::vector<int> perm_to_original; // permuted position -> original ray
  std::vector<int> original_to_perm;
  bool pairwise_conical = false;     // every basis pair spans a 2-cone
};

struct CharMatrixGF2 {
  int n = 0;
  int d = 0;
  std::vector<Gf2Mask> rows;  // permuted index -> coordinates; identity block first
  BasisSelection basis;

  Gf2Mask row_for_original(int ray) const { return rows[basis.original_to_perm[ray]]; }
};

struct Connectivity {
  bool connected = false;
  unsigned long long component_count = 1;  // [N (x) Z_2 : phi(W)] = 2^(n-k)
  int mod2_rank = 0;
};
Connectivity connectedness(const fan::Fan& f);

// Prefers the lexicographically first maximal-dimensional cone whose rays
// are GF(2)-independent (those are pairwise conical); falls back to greedy
// elimination over rays in index order. Throws EdgesDoNotSpanMod2 when the
// rays do not span N (x) Z_2.
BasisSelection choose_basis(const fan::Fan& f);

CharMatrixGF2 char_matrix(const fan::Fan& f, const BasisSelection& basis);

// Words are over original ray indices.
Gf2Mask phi_hat(const CharMatrixGF2& m, const racg::Word& w);
bool in_pi1(const CharMatrixGF2& m, const racg::Word& w);

// Full Reidemeister-Schreier presentation: d * 2^n generators y_j_t (j in
// 1-based permuted numbering, t a bitstring of length n), transversal
// relators, square relators, and one quadruple per commuting pair and coset.
// Relators are freely reduced with duplicates removed (up to rotation and
// inversion). Requires a connected fan.
present::Presentation rs_presentation(const fan::Fan& f);
present::Presentation rs_presentation_from(const fan::Fan& f, const CharMatrixGF2& m);

// (d-n) * 2^n generators; identification relators y_{j,t} y_{j,t+a_j} plus
// the quadruples with basis factors replaced by the empty word. Requires a
// connected fan and a pairwise-conical basis.
present::Presentation simplified_presentation(const fan::Fan& f);
present::Presentation simplified_presentation_from(const fan::Fan& f, const CharMatrixGF2& m);

// Generators of pi_1 inside W: w(t) S_j w(t) with S_j = s_j s_1^{a_j1} ...
// s_n^{a_jn}, for permuted j > n and every t; letters are original ray
// indices.
std::vector<racg::Word> pi1_generators_in_W(const fan::Fan& f);

enum class AbelianCase { case_i, case_ii, non_abelian };
std::string to_string(AbelianCase c);

struct AbelianVerdict {
  AbelianCase value = AbelianCase::non_abelian;
  int witness_step = 0;     // violated proof step (1..5) when non_abelian
  std::string witness;
};
AbelianVerdict is_pi1_abelian(const fan::Fan& f);

// pi_1 = Z^free_rank (+) Z_2^torsion_rank; requires an abelian verdict.
struct AbelianStructure {
  int free_rank = 0;
  int torsion_rank = 0;
  friend bool operator==(const AbelianStructure&, const AbelianStructure&) = default;
};
AbelianStructure abelian_structure(const fan::Fan& f);

// Delegates to racg::order; torsion in pi_1 is always of order 2.
racg::ElementOrder torsion_of_pi1_element(const fan::Fan& f, const racg::Word& w);

enum class WhichPresentation { full, simplified };

struct VerifyReport {
  bool pass = true;
  std::string first_failure;
  int generators_checked = 0;
  int relators_checked = 0;
};

// Maps every generator to its defining word in W, checks each relator
// reduces to the identity and each generator image lies in ker(phi_hat).
VerifyReport verify_presentation(const fan::Fan& f, WhichPresentation which);

// Same, but builds the presentation and the generator images from the given
// matrix while testing the kernel membership against the honest one; the
// negative-control hook for corrupted matrices.
VerifyReport verify_presentation_against(const fan::Fan& f, WhichPresentation which,
                                         const CharMatrixGF2& m);

struct Pi1Report {
  bool connected = false;
  unsigned long long component_count = 1;
  std::optional<BasisSelection> basis;
  std::optional<AbelianVerdict> abelian;
  std::optional<AbelianStructure> structure;
  std::optional<present::Presentation> presentation_full;
  std::optional<present::Presentation> presentation_simplified;
  std::vector<std::string> warnings;
};
Pi1Report analyze_pi1(const fan::Fan& f);

std::string generator_name(int permuted_j, Gf2Mask t, int n);

}  // namespace torfan::pi1
