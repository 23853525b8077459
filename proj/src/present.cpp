#include "torfan/present.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "torfan/errors.hpp"

namespace torfan::present {

namespace {

std::size_t col_count(const IntMatrix& a) { return a.empty() ? 0 : a[0].size(); }

void check_rectangular(const IntMatrix& a) {
  for (const auto& row : a) {
    if (row.size() != col_count(a)) throw Error("ParseError", "ragged matrix");
  }
}

// In-place SNF; row/column operations are mirrored into *p / *q when given.
class SnfEngine {
 public:
  SnfEngine(IntMatrix a, bool want_transforms)
      : a_(std::move(a)), rows_(a_.size()), cols_(col_count(a_)) {
    check_rectangular(a_);
    if (want_transforms) {
      p_ = identity_matrix(rows_);
      q_ = identity_matrix(cols_);
    }
  }

  void run() {
    const std::size_t limit = std::min(rows_, cols_);
    for (std::size_t s = 0; s < limit; ++s) {
      if (!place_pivot(s)) break;
      if (sgn(a_[s][s]) < 0) negate_row(s);
    }
  }

  IntMatrix& matrix() { return a_; }
  IntMatrix& row_ops() { return p_; }
  IntMatrix& col_ops() { return q_; }

 private:
  static int sgn(const Int& x) { return mpz_sgn(x.get_mpz_t()); }

  bool find_min_pivot(std::size_t s, std::size_t& pi, std::size_t& pj) const {
    bool found = false;
    Int best;
    for (std::size_t i = s; i < rows_; ++i) {
      for (std::size_t j = s; j < cols_; ++j) {
        if (sgn(a_[i][j]) == 0) continue;
        Int v = abs(a_[i][j]);
        if (!found || v < best) {
          found = true;
          best = v;
          pi = i;
          pj = j;
        }
      }
    }
    return found;
  }

  // Diagonalizes position (s,s) so the pivot divides the rest of the
  // submatrix. Returns false when the remaining submatrix is zero.
  bool place_pivot(std::size_t s) {
    while (true) {
      std::size_t pi = s, pj = s;
      if (!find_min_pivot(s, pi, pj)) return false;
      swap_rows(s, pi);
      swap_cols(s, pj);

      bool dirty = false;
      for (std::size_t i = s + 1; i < rows_; ++i) {
        if (sgn(a_[i][s]) == 0) continue;
        Int q = a_[i][s] / a_[s][s];  // truncated, |remainder| < |pivot|
        add_row_multiple(i, s, -q);
        if (sgn(a_[i][s]) != 0) dirty = true;
      }
      for (std::size_t j = s + 1; j < cols_; ++j) {
        if (sgn(a_[s][j]) == 0) continue;
        Int q = a_[s][j] / a_[s][s];
        add_col_multiple(j, s, -q);
        if (sgn(a_[s][j]) != 0) dirty = true;
      }
      if (dirty) continue;

      // Divisibility sweep: the pivot must divide everything that remains.
      bool fixed = false;
      for (std::size_t i = s + 1; i < rows_ && !fixed; ++i) {
        for (std::size_t j = s + 1; j < cols_; ++j) {
          if (a_[i][j] % a_[s][s] != 0) {
            add_row_multiple(s, i, 1);
            fixed = true;
            break;
          }
        }
      }
      if (!fixed) return true;
    }
  }

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    std::swap(a_[i], a_[j]);
    if (!p_.empty()) std::swap(p_[i], p_[j]);
  }

  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (auto& row : a_) std::swap(row[i], row[j]);
    for (auto& row : q_) std::swap(row[i], row[j]);
  }

  void add_row_multiple(std::size_t dst, std::size_t src, const Int& m) {
    for (std::size_t j = 0; j < cols_; ++j) a_[dst][j] += m * a_[src][j];
    if (!p_.empty()) {
      for (std::size_t j = 0; j < rows_; ++j) p_[dst][j] += m * p_[src][j];
    }
  }

  void add_col_multiple(std::size_t dst, std::size_t src, const Int& m) {
    for (auto& row : a_) row[dst] += m * row[src];
    for (auto& row : q_) row[dst] += m * row[src];
  }

  void negate_row(std::size_t i) {
    for (auto& x : a_[i]) x = -x;
    if (!p_.empty()) {
      for (auto& x : p_[i]) x = -x;
    }
  }

  IntMatrix a_;
  std::size_t rows_;
  std::size_t cols_;
  IntMatrix p_;
  IntMatrix q_;
};

std::vector<Int> diagonal_divisors(const IntMatrix& s, std::size_t rows, std::size_t cols) {
  std::vector<Int> out;
  for (std::size_t i = 0; i < std::min(rows, cols); ++i) out.push_back(abs(s[i][i]));
  return out;
}

}  // namespace

IntMatrix identity_matrix(std::size_t n) {
  IntMatrix m(n, std::vector<Int>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t m = a.size(), k = col_count(a), n = col_count(b);
  if (b.size() != k) throw Error("ParseError", "matrix shape mismatch in multiply");
  IntMatrix out(m, std::vector<Int>(n, 0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t t = 0; t < k; ++t) {
      if (a[i][t] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) out[i][j] += a[i][t] * b[t][j];
    }
  }
  return out;
}

bool is_zero(const IntMatrix& a) {
  for (const auto& row : a) {
    for (const auto& x : row) {
      if (x != 0) return false;
    }
  }
  return true;
}

Int determinant(const IntMatrix& square) {
  check_rectangular(square);
  const std::size_t n = square.size();
  if (n != col_count(square)) throw Error("ParseError", "determinant of non-square matrix");
  if (n == 0) return 1;
  IntMatrix a = square;
  int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t swap_row = k;
      for (std::size_t i = k + 1; i < n; ++i) {
        if (a[i][k] != 0) {
          swap_row = i;
          break;
        }
      }
      if (swap_row == k) return 0;
      std::swap(a[k], a[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;  // exact
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

std::vector<Int> smith_normal_form(const IntMatrix& m) {
  SnfEngine engine(m, false);
  engine.run();
  return diagonal_divisors(engine.matrix(), m.size(), col_count(m));
}

SnfDecomposition smith_normal_form_with_transforms(const IntMatrix& m) {
  SnfEngine engine(m, true);
  engine.run();
  return {std::move(engine.matrix()), std::move(engine.row_ops()), std::move(engine.col_ops())};
}

Presentation make_presentation(std::vector<std::string> generators,
                               std::vector<Relator> relators) {
  const int g = static_cast<int>(generators.size());
  for (const auto& rel : relators) {
    if (rel.empty()) throw Error("ParseError", "empty relator");
    for (const auto& syl : rel) {
      if (syl.gen < 0 || syl.gen >= g)
        throw Error("IndexOutOfRange", "relator references generator " + std::to_string(syl.gen));
      if (syl.exp != 1 && syl.exp != -1)
        throw Error("ParseError", "relator exponent must be +1 or -1");
    }
  }
  return Presentation{std::move(generators), std::move(relators)};
}

Relator inverse_relator(const Relator& r) {
  Relator out;
  out.reserve(r.size());
  for (auto it = r.rbegin(); it != r.rend(); ++it) out.push_back({it->gen, -it->exp});
  return out;
}

Relator free_reduce_relator(Relator r) {
  Relator out;
  for (const auto& syl : r) {
    if (!out.empty() && out.back().gen == syl.gen && out.back().exp == -syl.exp) {
      out.pop_back();
    } else {
      out.push_back(syl);
    }
  }
  return out;
}

Relator relator_canonical_key(const Relator& r) {
  Relator best;
  bool got = false;
  for (const Relator& base : {r, inverse_relator(r)}) {
    for (std::size_t shift = 0; shift < std::max<std::size_t>(base.size(), 1); ++shift) {
      Relator rot;
      rot.reserve(base.size());
      for (std::size_t i = 0; i < base.size(); ++i) rot.push_back(base[(i + shift) % base.size()]);
      if (!got || rot < best) {
        best = std::move(rot);
        got = true;
      }
    }
  }
  return best;
}

Presentation free_reduce(const Presentation& p) {
  std::vector<Relator> relators;
  for (const auto& rel : p.relators) {
    Relator reduced = free_reduce_relator(rel);
    if (!reduced.empty()) relators.push_back(std::move(reduced));
  }
  return Presentation{p.generators, std::move(relators)};
}

Presentation drop_trivial_relators(const Presentation& p) {
  Presentation reduced = free_reduce(p);
  std::set<Relator> seen;
  std::vector<Relator> relators;
  for (auto& rel : reduced.relators) {
    if (seen.insert(relator_canonical_key(rel)).second) relators.push_back(std::move(rel));
  }
  return Presentation{reduced.generators, std::move(relators)};
}

std::string AbelianInvariants::to_string() const {
  std::ostringstream os;
  bool first = true;
  if (free_rank > 0) {
    os << "Z";
    if (free_rank > 1) os << "^" << free_rank;
    first = false;
  }
  for (const auto& d : torsion_divisors) {
    if (!first) os << " + ";
    os << "Z/" << d.get_str();
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

AbelianInvariants abelianize(const Presentation& p) {
  const std::size_t g = p.generators.size();
  IntMatrix m(p.relators.size(), std::vector<Int>(g, 0));
  for (std::size_t r = 0; r < p.relators.size(); ++r) {
    for (const auto& syl : p.relators[r]) m[r][syl.gen] += syl.exp;
  }
  std::vector<Int> divisors = smith_normal_form(m);
  AbelianInvariants inv;
  long long rank = 0;
  for (const auto& d : divisors) {
    if (d == 0) continue;
    ++rank;
    if (d > 1) inv.torsion_divisors.push_back(d);
  }
  inv.free_rank = static_cast<long long>(g) - rank;
  return inv;
}

std::string export_presentation(const Presentation& p, ExportFormat format) {
  std::ostringstream os;
  if (format == ExportFormat::plain) {
    os << "< ";
    for (std::size_t i = 0; i < p.generators.size(); ++i) {
      if (i) os << ", ";
      os << p.generators[i];
    }
    os << " | ";
    for (std::size_t r = 0; r < p.relators.size(); ++r) {
      if (r) os << ", ";
      const auto& rel = p.relators[r];
      for (std::size_t i = 0; i < rel.size(); ++i) {
        if (i) os << "*";
        os << p.generators[rel[i].gen];
        if (rel[i].exp < 0) os << "^-1";
      }
    }
    os << " >";
  } else {
    for (const auto& g : p.generators) os << g << "\n";
    os << "\n";
    for (const auto& rel : p.relators) {
      for (std::size_t i = 0; i < rel.size(); ++i) {
        if (i) os << " ";
        os << (rel[i].exp > 0 ? rel[i].gen + 1 : -(rel[i].gen + 1));
      }
      os << "\n";
    }
  }
  return os.str();
}

Presentation parse_machine_presentation(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  std::vector<std::string> generators;
  std::vector<Relator> relators;
  bool in_relators = false;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!in_relators) {
      if (line.empty()) {
        in_relators = true;
      } else {
        generators.push_back(line);
      }
      continue;
    }
    if (line.empty()) continue;
    std::istringstream ls(line);
    Relator rel;
    long long v = 0;
    while (ls >> v) {
      if (v == 0) throw Error("ParseError", "relator index 0 in machine presentation");
      int gen = static_cast<int>((v > 0 ? v : -v) - 1);
      rel.push_back({gen, v > 0 ? 1 : -1});
    }
    if (!ls.eof()) throw Error("ParseError", "malformed relator line: " + line);
    relators.push_back(std::move(rel));
  }
  return make_presentation(std::move(generators), std::move(relators));
}

}  // namespace torfan::present
