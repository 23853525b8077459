#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

// Abstract finitely presented groups, exact integer Smith normal form and
// abelian invariants. This is the independent oracle the presentation-level
// tests check against.
namespace torfan::present {

using Int = mpz_class;

// Row-major rectangular integer matrix; zero rows/columns are allowed.
using IntMatrix = std::vector<std::vector<Int>>;

IntMatrix identity_matrix(std::size_t n);
IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);
bool is_zero(const IntMatrix& a);

// Exact determinant (fraction-free Bareiss elimination).
Int determinant(const IntMatrix& square);

// Elementary divisors d1 | d2 | ... , non-negative, zeros trailing;
// exactly min(rows, cols) entries. Pivot: smallest nonzero absolute value,
// ties to lowest row then column index.
std::vector<Int> smith_normal_form(const IntMatrix& m);

// row_ops * m * col_ops == s with both transforms unimodular.
struct SnfDecomposition {
  IntMatrix s;
  IntMatrix row_ops;
  IntMatrix col_ops;
};
SnfDecomposition smith_normal_form_with_transforms(const IntMatrix& m);

struct Syllable {
  int gen = 0;
  int exp = 1;  // +1 or -1
  friend bool operator==(const Syllable&, const Syllable&) = default;
  friend auto operator<=>(const Syllable&, const Syllable&) = default;
};
using Relator = std::vector<Syllable>;

struct Presentation {
  std::vector<std::string> generators;
  std::vector<Relator> relators;
};

// Validates generator indices and exponents; empty relators are rejected.
Presentation make_presentation(std::vector<std::string> generators,
                               std::vector<Relator> relators);

Relator inverse_relator(const Relator& r);

// Cancels adjacent x x^-1 pairs.
Relator free_reduce_relator(Relator r);

// Least serialization over all cyclic rotations of r and of r^-1; the dedup
// key used by drop_trivial_relators.
Relator relator_canonical_key(const Relator& r);

// Free-reduces every relator and drops the ones that vanish.
Presentation free_reduce(const Presentation& p);

// free_reduce plus removal of duplicate relators (up to cyclic rotation and
// inversion). The presented group is unchanged.
Presentation drop_trivial_relators(const Presentation& p);

struct AbelianInvariants {
  long long free_rank = 0;
  std::vector<Int> torsion_divisors;  // each >= 2, in divisibility order

  friend bool operator==(const AbelianInvariants&, const AbelianInvariants&) = default;
  std::string to_string() const;  // e.g. "Z^2 + Z/2", "0" for the trivial group
};

// Exponent-sum matrix of the relators -> Smith normal form -> invariants.
AbelianInvariants abelianize(const Presentation& p);

enum class ExportFormat { plain, machine };

// plain:   "< a, b | a*a, a*b*a^-1*b^-1 >"
// machine: one generator name per line, a blank line, then one relator per
//          line as signed 1-based generator indices. Byte-stable.
std::string export_presentation(const Presentation& p, ExportFormat format);

Presentation parse_machine_presentation(const std::string& text);

}  // namespace torfan::present
