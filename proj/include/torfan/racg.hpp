#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "torfan/fan.hpp"

// Word engine for the right-angled Coxeter group W(Delta): every generator
// is an involution, two generators commute exactly when their rays span a
// 2-cone. Words are sequences of 0-based generator indices.
namespace torfan::racg {

struct CommutationGraph {
  int generator_count = 0;
  std::vector<char> adjacency;  // row-major generator_count^2

  bool commutes(int i, int j) const {
    return i != j && adjacency[static_cast<std::size_t>(i) * generator_count + j] != 0;
  }
};

CommutationGraph make_graph(int generator_count,
                            const std::vector<std::pair<int, int>>& edges);

// Vertices are the rays; edge {i,j} iff rays i,j span a 2-cone.
CommutationGraph graph_from_fan(const fan::Fan& f);

using Word = std::vector<int>;

// Canonical reduced form: Tits-reduced, then the lexicographically least
// word in its commutation class. Equal group elements have equal letters.
struct NormalForm {
  Word letters;
  bool is_identity() const { return letters.empty(); }
  friend bool operator==(const NormalForm&, const NormalForm&) = default;
  friend auto operator<=>(const NormalForm&, const NormalForm&) = default;
};

NormalForm reduce(const CommutationGraph& g, const Word& w);
bool equal(const CommutationGraph& g, const Word& a, const Word& b);
NormalForm multiply(const CommutationGraph& g, const Word& a, const Word& b);
Word inverse(const Word& w);  // reversal: all generators are involutions

// w = conjugator * core * conjugator^-1 with no further cyclic cancellation
// on the core.
struct CyclicReduction {
  NormalForm core;
  Word conjugator;
};
CyclicReduction cyclic_reduce(const CommutationGraph& g, const Word& w);

enum class ElementOrder { one, two, infinite };
std::string to_string(ElementOrder o);

// 1 for the identity; 2 iff the cyclic core is a clique word (distinct,
// pairwise commuting letters); infinite otherwise.
ElementOrder order(const CommutationGraph& g, const Word& w);

// Image under h: W -> Z_2^d, coordinate j = parity of the letter j count.
std::vector<std::uint8_t> abelianization_image(const CommutationGraph& g, const Word& w);

// ker h = [W,W] since W_ab = Z_2^d.
bool in_commutator_subgroup(const CommutationGraph& g, const Word& w);

// [W,W] abelian iff every vertex has at most one non-neighbour.
bool commutator_abelian(const CommutationGraph& g);

int default_ball_cap();
void set_default_ball_cap(int cap);

// All distinct elements of reduced length <= radius, ordered by (length,
// lexicographic letters). Throws RadiusCapExceeded above the cap.
std::vector<NormalForm> enumerate_ball(const CommutationGraph& g, int radius);
std::vector<NormalForm> enumerate_ball(const CommutationGraph& g, int radius, int cap);

// Whitespace-separated 0-based indices, e.g. "0 3 0 3".
Word parse_word(const std::string& text, int generator_count);
std::string word_to_string(const Word& w);

}  // namespace torfan::racg
