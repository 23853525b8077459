#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

// Exact representation of smooth rational fans: validation, simplicial
// combinatorics, stars and barycentric refinement. Rays keep their input
// order; it names the Coxeter generators downstream.
namespace torfan::fan {

struct RayVector {
  std::vector<std::int64_t> coords;  // primitive, nonzero
  friend bool operator==(const RayVector&, const RayVector&) = default;
};

class Fan;

namespace detail {
Fan make_fan_impl(int dim, std::vector<std::vector<std::int64_t>> rays,
                  std::vector<std::vector<int>> max_cones, bool check_intersections);
}

// Sorted ray indices; the empty cone is the zero cone {0}.
struct Cone {
  std::vector<int> rays;
  friend bool operator==(const Cone&, const Cone&) = default;
  friend auto operator<=>(const Cone&, const Cone&) = default;
  int dim() const { return static_cast<int>(rays.size()); }
};

class Fan {
 public:
  int dim() const { return dim_; }
  const std::vector<RayVector>& rays() const { return rays_; }
  int ray_count() const { return static_cast<int>(rays_.size()); }
  const std::vector<Cone>& max_cones() const { return max_cones_; }

  // All faces of all maximal cones including the zero cone, ordered by
  // (dimension, lexicographic ray set). Computed once at construction.
  const std::vector<Cone>& closure() const { return closure_; }
  bool has_cone(const std::vector<int>& rays) const;

  // Closure cones not properly contained in another closure cone.
  std::vector<Cone> inclusion_maximal_cones() const;

  friend bool operator==(const Fan& a, const Fan& b);

 private:
  friend Fan detail::make_fan_impl(int, std::vector<std::vector<std::int64_t>>,
                                   std::vector<std::vector<int>>, bool);
  int dim_ = 0;
  std::vector<RayVector> rays_;
  std::vector<Cone> max_cones_;
  std::vector<Cone> closure_;
  std::set<std::vector<int>> face_set_;
};

// Validates everything: primitive distinct rays, in-range independent cone
// generators, no orphan rays, and pairwise intersection in common faces
// (exact rational feasibility test). Throws torfan::Error with codes
// NonPrimitiveRay, DuplicateRay, IndexOutOfRange, DependentRaysInCone,
// OrphanRay, NotIntersectionClosed.
Fan make_fan(int dim, std::vector<std::vector<std::int64_t>> rays,
             std::vector<std::vector<int>> max_cones);

// JSON document {"dim": n, "rays": [[..],..], "max_cones": [[..],..]}
// with 0-based ray indices. File I/O belongs to the CLI.
Fan parse_fan(const std::string& json_text);
std::string fan_to_json(const Fan& f);

struct SmoothnessResult {
  bool smooth = true;
  Cone witness;  // first failing cone in closure order when !smooth
};

// Smooth iff every cone's ray matrix has all elementary divisors 1.
SmoothnessResult check_smooth(const Fan& f);

// n = 1: both rays present; n = 2: exact angular sweep; n >= 3: every
// (n-1)-cone lies in exactly two n-cones and the chamber adjacency graph is
// connected (the implemented definition of completeness, see README).
bool check_complete(const Fan& f);

struct SimplicialComplex {
  int vertex_count = 0;
  std::vector<std::vector<int>> faces;  // nonempty, sorted (size, lex)
  bool is_face(const std::vector<int>& sorted_vertices) const;

 private:
  friend SimplicialComplex simplicial_complex(const Fan&);
  std::set<std::vector<int>> face_set_;
};
SimplicialComplex simplicial_complex(const Fan& f);

// Minimal non-faces of the fan's simplicial complex, each of size >= 2,
// sorted lexicographically.
std::vector<std::vector<int>> primitive_collections(const Fan& f);

// True iff every primitive collection has exactly two elements.
bool is_flag_like(const Fan& f);

// Quotient fan in N/N_tau: projects the cones containing tau along an
// integral quotient basis from the Smith normal form of tau's rays,
// re-primitivizes and merges duplicate projected rays.
Fan star(const Fan& f, const Cone& tau);

// One new ray per cone of dim >= 1 (primitive vector along the ray-vector
// sum); maximal cones over maximal chains in the face poset. Output is
// flag-like, and smooth/complete when the input is.
Fan barycentric_refine(const Fan& f);

}  // namespace torfan::fan
