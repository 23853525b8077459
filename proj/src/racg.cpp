#include "torfan/racg.hpp"

#include <algorithm>
#include <atomic>
#include <set>
#include <sstream>

#include "torfan/errors.hpp"

namespace torfan::racg {

namespace {

void check_word(const CommutationGraph& g, const Word& w) {
  for (int letter : w) {
    if (letter < 0 || letter >= g.generator_count)
      throw Error("IndexOutOfRange", "letter " + std::to_string(letter) + " out of range");
  }
}

// One Tits deletion: positions p < q with equal letters and everything
// strictly between commuting with that letter. Returns true when applied.
bool delete_one_pair(const CommutationGraph& g, Word& w) {
  for (std::size_t p = 0; p < w.size(); ++p) {
    const int s = w[p];
    for (std::size_t q = p + 1; q < w.size(); ++q) {
      if (w[q] == s) {
        w.erase(w.begin() + q);
        w.erase(w.begin() + p);
        return true;
      }
      if (!g.commutes(w[q], s)) break;  // blocks every later occurrence too
    }
  }
  return false;
}

// Lexicographically least word reachable by adjacent commuting swaps,
// built greedily; unique on geodesics by Tits' theorem.
Word canonicalize(const CommutationGraph& g, Word w) {
  Word out;
  out.reserve(w.size());
  while (!w.empty()) {
    std::size_t best = 0;
    bool have = false;
    for (std::size_t i = 0; i < w.size(); ++i) {
      bool movable = true;
      for (std::size_t j = 0; j < i; ++j) {
        if (!g.commutes(w[j], w[i])) {
          movable = false;
          break;
        }
      }
      if (movable && (!have || w[i] < w[best])) {
        best = i;
        have = true;
      }
    }
    out.push_back(w[best]);
    w.erase(w.begin() + best);
  }
  return out;
}

std::atomic<int> ball_cap{8};

}  // namespace

CommutationGraph make_graph(int generator_count,
                            const std::vector<std::pair<int, int>>& edges) {
  if (generator_count < 0) throw Error("ParseError", "negative generator count");
  CommutationGraph g;
  g.generator_count = generator_count;
  g.adjacency.assign(static_cast<std::size_t>(generator_count) * generator_count, 0);
  for (auto [a, b] : edges) {
    if (a < 0 || a >= generator_count || b < 0 || b >= generator_count)
      throw Error("IndexOutOfRange", "edge endpoint out of range");
    if (a == b) throw Error("ParseError", "self-loop on generator " + std::to_string(a));
    g.adjacency[static_cast<std::size_t>(a) * generator_count + b] = 1;
    g.adjacency[static_cast<std::size_t>(b) * generator_count + a] = 1;
  }
  return g;
}

CommutationGraph graph_from_fan(const fan::Fan& f) {
  std::vector<std::pair<int, int>> edges;
  for (const auto& cone : f.closure()) {
    if (cone.dim() == 2) edges.emplace_back(cone.rays[0], cone.rays[1]);
  }
  return make_graph(f.ray_count(), edges);
}

NormalForm reduce(const CommutationGraph& g, const Word& w) {
  check_word(g, w);
  Word cur = w;
  while (delete_one_pair(g, cur)) {
  }
  return NormalForm{canonicalize(g, std::move(cur))};
}

bool equal(const CommutationGraph& g, const Word& a, const Word& b) {
  Word prod = a;
  Word binv = inverse(b);
  prod.insert(prod.end(), binv.begin(), binv.end());
  return reduce(g, prod).is_identity();
}

NormalForm multiply(const CommutationGraph& g, const Word& a, const Word& b) {
  Word prod = a;
  prod.insert(prod.end(), b.begin(), b.end());
  return reduce(g, prod);
}

Word inverse(const Word& w) { return Word(w.rbegin(), w.rend()); }

CyclicReduction cyclic_reduce(const CommutationGraph& g, const Word& w) {
  Word cur = reduce(g, w).letters;
  Word conjugator;
  while (true) {
    int pivot = -1;
    for (std::size_t p = 0; p < cur.size() && pivot < 0; ++p) {
      const int s = cur[p];
      bool front_movable = true;
      for (std::size_t j = 0; j < p; ++j) {
        if (!g.commutes(cur[j], s)) {
          front_movable = false;
          break;
        }
      }
      if (!front_movable) continue;
      for (std::size_t q = p + 1; q < cur.size(); ++q) {
        if (cur[q] != s) continue;
        bool back_movable = true;
        for (std::size_t j = q + 1; j < cur.size(); ++j) {
          if (!g.commutes(cur[j], s)) {
            back_movable = false;
            break;
          }
        }
        if (back_movable) {
          pivot = s;
          break;
        }
      }
    }
    if (pivot < 0) break;
    Word next;
    next.push_back(pivot);
    next.insert(next.end(), cur.begin(), cur.end());
    next.push_back(pivot);
    cur = reduce(g, next).letters;
    conjugator.push_back(pivot);
  }
  return CyclicReduction{NormalForm{cur}, conjugator};
}

std::string to_string(ElementOrder o) {
  switch (o) {
    case ElementOrder::one:
      return "1";
    case ElementOrder::two:
      return "2";
    default:
      return "infinite";
  }
}

ElementOrder order(const CommutationGraph& g, const Word& w) {
  NormalForm nf = reduce(g, w);
  if (nf.is_identity()) return ElementOrder::one;
  Word core = cyclic_reduce(g, nf.letters).core.letters;
  for (std::size_t i = 0; i < core.size(); ++i) {
    for (std::size_t j = i + 1; j < core.size(); ++j) {
      if (!g.commutes(core[i], core[j])) return ElementOrder::infinite;
    }
  }
  return ElementOrder::two;
}

std::vector<std::uint8_t> abelianization_image(const CommutationGraph& g, const Word& w) {
  check_word(g, w);
  std::vector<std::uint8_t> image(g.generator_count, 0);
  for (int letter : w) image[letter] ^= 1;
  return image;
}

bool in_commutator_subgroup(const CommutationGraph& g, const Word& w) {
  auto image = abelianization_image(g, w);
  return std::all_of(image.begin(), image.end(), [](std::uint8_t b) { return b == 0; });
}

bool commutator_abelian(const CommutationGraph& g) {
  for (int j = 0; j < g.generator_count; ++j) {
    int non_neighbours = 0;
    for (int i = 0; i < g.generator_count; ++i) {
      if (i != j && !g.commutes(i, j)) ++non_neighbours;
    }
    if (non_neighbours > 1) return false;
  }
  return true;
}

int default_ball_cap() { return ball_cap.load(); }

void set_default_ball_cap(int cap) { ball_cap.store(cap); }

std::vector<NormalForm> enumerate_ball(const CommutationGraph& g, int radius) {
  return enumerate_ball(g, radius, default_ball_cap());
}

std::vector<NormalForm> enumerate_ball(const CommutationGraph& g, int radius, int cap) {
  if (radius < 0) throw Error("ParseError", "negative radius");
  if (radius > cap)
    throw Error("RadiusCapExceeded", "radius " + std::to_string(radius) + " exceeds cap " +
                                         std::to_string(cap));
  std::set<Word> seen;
  std::vector<NormalForm> out;
  std::vector<Word> level{{}};
  seen.insert({});
  out.push_back(NormalForm{{}});
  for (int k = 1; k <= radius; ++k) {
    std::set<Word> next;
    for (const auto& w : level) {
      for (int s = 0; s < g.generator_count; ++s) {
        Word cand = w;
        cand.push_back(s);
        NormalForm nf = reduce(g, cand);
        if (static_cast<int>(nf.letters.size()) == k && !seen.count(nf.letters))
          next.insert(nf.letters);
      }
    }
    level.assign(next.begin(), next.end());
    for (const auto& w : level) {
      seen.insert(w);
      out.push_back(NormalForm{w});
    }
  }
  return out;
}

Word parse_word(const std::string& text, int generator_count) {
  std::istringstream is(text);
  Word w;
  std::string token;
  while (is >> token) {
    try {
      std::size_t pos = 0;
      int v = std::stoi(token, &pos);
      if (pos != token.size()) throw std::invalid_argument(token);
      if (v < 0 || v >= generator_count)
        throw Error("MalformedWord", "letter " + token + " out of range 0.." +
                                         std::to_string(generator_count - 1));
      w.push_back(v);
    } catch (const Error&) {
      throw;
    } catch (const std::exception&) {
      throw Error("MalformedWord", "token '" + token + "' is not a generator index");
    }
  }
  return w;
}

std::string word_to_string(const Word& w) {
  std::ostringstream os;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) os << " ";
    os << w[i];
  }
  return os.str();
}

}  // namespace torfan::racg
