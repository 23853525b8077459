#include "torfan/fan.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "torfan/errors.hpp"
#include "torfan/present.hpp"

namespace torfan::fan {

namespace {

using present::Int;
using present::IntMatrix;

std::string cone_str(const std::vector<int>& c) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) os << ",";
    os << c[i];
  }
  os << "}";
  return os.str();
}

std::int64_t gcd_abs(std::int64_t a, std::int64_t b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b) {
    std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::int64_t content(const std::vector<std::int64_t>& v) {
  std::int64_t g = 0;
  for (auto x : v) g = gcd_abs(g, x);
  return g;
}

// n x k matrix whose columns are the given rays.
IntMatrix ray_columns(const Fan& f, const std::vector<int>& rays) {
  IntMatrix m(f.dim(), std::vector<Int>(rays.size(), 0));
  for (std::size_t c = 0; c < rays.size(); ++c) {
    const auto& v = f.rays()[rays[c]].coords;
    for (int r = 0; r < f.dim(); ++r) m[r][c] = static_cast<long>(v[r]);
  }
  return m;
}

std::size_t rational_rank(IntMatrix a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && a[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[rank], a[pivot]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == rank || a[i][col] == 0) continue;
      Int m1 = a[rank][col];
      Int m2 = a[i][col];
      for (std::size_t j = 0; j < cols; ++j) a[i][j] = a[i][j] * m1 - a[rank][j] * m2;
    }
    ++rank;
  }
  return rank;
}

// Phase-1 simplex over exact rationals: does {x >= 0 : A x = b} have a
// solution? Bland's rule, so it terminates.
bool nonnegative_solution_exists(std::vector<std::vector<mpq_class>> a,
                                 std::vector<mpq_class> b) {
  const std::size_t m = a.size();
  const std::size_t n = m ? a[0].size() : 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (b[i] < 0) {
      for (auto& x : a[i]) x = -x;
      b[i] = -b[i];
    }
  }
  const std::size_t total = n + m;  // structural + artificial
  std::vector<std::vector<mpq_class>> t(m, std::vector<mpq_class>(total + 1, 0));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) t[i][j] = a[i][j];
    t[i][n + i] = 1;
    t[i][total] = b[i];
    basis[i] = n + i;
  }
  // Objective row for "minimize sum of artificials", artificial basis
  // priced out: [c_hat | -f].
  std::vector<mpq_class> obj(total + 1, 0);
  for (std::size_t j = 0; j <= total; ++j) {
    mpq_class s = 0;
    for (std::size_t i = 0; i < m; ++i) s += t[i][j];
    if (j < n || j == total) obj[j] = -s;
  }
  while (true) {
    std::size_t enter = total;
    for (std::size_t j = 0; j < total; ++j) {
      if (obj[j] < 0) {
        enter = j;
        break;
      }
    }
    if (enter == total) break;
    std::size_t leave = m;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      if (leave == m) {
        leave = i;
        continue;
      }
      mpq_class lhs = t[i][total] * t[leave][enter];
      mpq_class rhs = t[leave][total] * t[i][enter];
      if (lhs < rhs || (lhs == rhs && basis[i] < basis[leave])) leave = i;
    }
    if (leave == m) break;  // unbounded direction; cannot occur for phase 1
    mpq_class piv = t[leave][enter];
    for (auto& x : t[leave]) x /= piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      mpq_class factor = t[i][enter];
      for (std::size_t j = 0; j <= total; ++j) t[i][j] -= factor * t[leave][j];
    }
    if (obj[enter] != 0) {
      mpq_class factor = obj[enter];
      for (std::size_t j = 0; j <= total; ++j) obj[j] -= factor * t[leave][j];
    }
    basis[leave] = enter;
  }
  return obj[total] == 0;  // -f == 0
}

// cone(sigma) and cone(tau) intersect exactly in cone(sigma ∩ tau)?
bool cones_meet_in_common_face(const Fan& f, const std::vector<int>& sigma,
                               const std::vector<int>& tau) {
  std::vector<int> common;
  std::set_intersection(sigma.begin(), sigma.end(), tau.begin(), tau.end(),
                        std::back_inserter(common));
  if (common.size() == sigma.size() || common.size() == tau.size()) return true;  // nested

  // Independent union: both cones are faces of one simplicial cone.
  std::vector<int> all;
  std::set_union(sigma.begin(), sigma.end(), tau.begin(), tau.end(), std::back_inserter(all));
  if (rational_rank(ray_columns(f, all)) == all.size()) return true;

  // One feasibility problem: a point of both cones whose sigma-coordinates
  // put mass 1 outside the common face. Such a point exists iff the
  // intersection is bigger than cone(common).
  const int n = f.dim();
  std::vector<std::vector<mpq_class>> a(n + 1);
  std::vector<mpq_class> b(n + 1, 0);
  const std::size_t cols = sigma.size() + tau.size();
  for (int r = 0; r <= n; ++r) a[r].assign(cols, 0);
  for (std::size_t c = 0; c < sigma.size(); ++c) {
    for (int r = 0; r < n; ++r) a[r][c] = f.rays()[sigma[c]].coords[r];
    if (!std::binary_search(common.begin(), common.end(), sigma[c])) a[n][c] = 1;
  }
  for (std::size_t c = 0; c < tau.size(); ++c) {
    for (int r = 0; r < n; ++r) a[r][sigma.size() + c] = -f.rays()[tau[c]].coords[r];
  }
  b[n] = 1;
  return !nonnegative_solution_exists(std::move(a), std::move(b));
}

std::vector<std::int64_t> to_int64_vector(const std::vector<Int>& v) {
  std::vector<std::int64_t> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].fits_slong_p()) throw Error("Overflow", "projected ray exceeds 64 bits");
    out[i] = v[i].get_si();
  }
  return out;
}

}  // namespace

bool Fan::has_cone(const std::vector<int>& rays) const {
  return face_set_.count(rays) != 0;
}

std::vector<Cone> Fan::inclusion_maximal_cones() const {
  std::vector<Cone> out;
  for (const auto& c : closure_) {
    bool maximal = true;
    for (const auto& other : closure_) {
      if (other.rays.size() <= c.rays.size()) continue;
      if (std::includes(other.rays.begin(), other.rays.end(), c.rays.begin(), c.rays.end())) {
        maximal = false;
        break;
      }
    }
    if (maximal) out.push_back(c);
  }
  return out;
}

bool operator==(const Fan& a, const Fan& b) {
  return a.dim_ == b.dim_ && a.rays_ == b.rays_ && a.closure_ == b.closure_;
}

namespace detail {

// check_intersections = false is reserved for constructions whose output is
// a fan by theorem (star, barycentric refinement); user input always pays
// for the pairwise geometric check.
Fan make_fan_impl(int dim, std::vector<std::vector<std::int64_t>> rays,
                  std::vector<std::vector<int>> max_cones, bool check_intersections) {
  if (dim < 0) throw Error("ParseError", "negative lattice dimension");
  Fan f;
  f.dim_ = dim;

  for (std::size_t i = 0; i < rays.size(); ++i) {
    if (static_cast<int>(rays[i].size()) != dim)
      throw Error("ParseError", "ray " + std::to_string(i) + " has wrong length");
    std::int64_t g = content(rays[i]);
    if (g == 0)
      throw Error("NonPrimitiveRay", "ray " + std::to_string(i) + " is the zero vector");
    if (g != 1)
      throw Error("NonPrimitiveRay",
                  "ray " + std::to_string(i) + " has content " + std::to_string(g));
    for (std::size_t j = 0; j < i; ++j) {
      if (f.rays_[j].coords == rays[i])
        throw Error("DuplicateRay",
                    "rays " + std::to_string(j) + " and " + std::to_string(i) + " coincide");
    }
    f.rays_.push_back(RayVector{std::move(rays[i])});
  }

  const int d = f.ray_count();
  for (auto& cone : max_cones) {
    std::sort(cone.begin(), cone.end());
    if (cone.size() > 62)
      throw Error("ParseError", "cone " + cone_str(cone) + " exceeds the 62-ray cap");
    for (std::size_t i = 0; i < cone.size(); ++i) {
      if (cone[i] < 0 || cone[i] >= d)
        throw Error("IndexOutOfRange",
                    "cone " + cone_str(cone) + " references ray " + std::to_string(cone[i]));
      if (i > 0 && cone[i] == cone[i - 1])
        throw Error("DependentRaysInCone", "cone " + cone_str(cone) + " repeats a ray");
    }
    f.max_cones_.push_back(Cone{cone});
  }

  for (const auto& cone : f.max_cones_) {
    if (rational_rank(ray_columns(f, cone.rays)) != cone.rays.size())
      throw Error("DependentRaysInCone",
                  "cone " + cone_str(cone.rays) + " has linearly dependent rays");
  }

  std::vector<bool> used(d, false);
  for (const auto& cone : f.max_cones_) {
    for (int r : cone.rays) used[r] = true;
  }
  for (int r = 0; r < d; ++r) {
    if (!used[r]) throw Error("OrphanRay", "ray " + std::to_string(r) + " lies in no cone");
  }

  // Face closure: all subsets of the maximal cones.
  std::set<std::vector<int>> faces;
  for (const auto& cone : f.max_cones_) {
    const std::size_t k = cone.rays.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
      std::vector<int> face;
      for (std::size_t i = 0; i < k; ++i) {
        if (mask >> i & 1) face.push_back(cone.rays[i]);
      }
      faces.insert(std::move(face));
    }
  }
  f.face_set_ = faces;
  for (const auto& face : faces) f.closure_.push_back(Cone{face});
  std::sort(f.closure_.begin(), f.closure_.end(), [](const Cone& a, const Cone& b) {
    if (a.rays.size() != b.rays.size()) return a.rays.size() < b.rays.size();
    return a.rays < b.rays;
  });

  // Pairwise intersections must be common faces; faces of the maximal cones
  // inherit the property.
  if (check_intersections) {
    for (std::size_t i = 0; i < f.max_cones_.size(); ++i) {
      for (std::size_t j = i + 1; j < f.max_cones_.size(); ++j) {
        const auto& s = f.max_cones_[i].rays;
        const auto& t = f.max_cones_[j].rays;
        if (!cones_meet_in_common_face(f, s, t))
          throw Error("NotIntersectionClosed",
                      "cones " + cone_str(s) + " and " + cone_str(t) +
                          " do not intersect in a common face");
      }
    }
  }
  return f;
}

}  // namespace detail

Fan make_fan(int dim, std::vector<std::vector<std::int64_t>> rays,
             std::vector<std::vector<int>> max_cones) {
  return detail::make_fan_impl(dim, std::move(rays), std::move(max_cones), true);
}

Fan parse_fan(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error("ParseError", e.what());
  }
  if (!doc.is_object() || !doc.contains("dim") || !doc.contains("rays") ||
      !doc.contains("max_cones"))
    throw Error("ParseError", "expected object with dim, rays, max_cones");
  if (!doc["dim"].is_number_integer()) throw Error("ParseError", "dim must be an integer");
  std::vector<std::vector<std::int64_t>> rays;
  for (const auto& ray : doc["rays"]) {
    std::vector<std::int64_t> v;
    for (const auto& x : ray) {
      if (!x.is_number_integer()) throw Error("ParseError", "ray coordinates must be integers");
      v.push_back(x.get<std::int64_t>());
    }
    rays.push_back(std::move(v));
  }
  std::vector<std::vector<int>> cones;
  for (const auto& cone : doc["max_cones"]) {
    std::vector<int> c;
    for (const auto& x : cone) {
      if (!x.is_number_integer()) throw Error("ParseError", "cone entries must be integers");
      c.push_back(x.get<int>());
    }
    cones.push_back(std::move(c));
  }
  return make_fan(doc["dim"].get<int>(), std::move(rays), std::move(cones));
}

std::string fan_to_json(const Fan& f) {
  nlohmann::json doc;
  doc["dim"] = f.dim();
  doc["rays"] = nlohmann::json::array();
  for (const auto& ray : f.rays()) doc["rays"].push_back(ray.coords);
  doc["max_cones"] = nlohmann::json::array();
  for (const auto& cone : f.max_cones()) doc["max_cones"].push_back(cone.rays);
  return doc.dump(2) + "\n";
}

SmoothnessResult check_smooth(const Fan& f) {
  for (const auto& cone : f.closure()) {
    if (cone.rays.empty()) continue;
    std::vector<Int> divisors = present::smith_normal_form(ray_columns(f, cone.rays));
    for (const auto& d : divisors) {
      if (d != 1) return {false, cone};
    }
  }
  return {true, Cone{}};
}

namespace {

// Exact counterclockwise angular order starting at the positive x-axis.
bool angle_less(const RayVector& a, const RayVector& b) {
  auto half = [](const RayVector& v) {
    return (v.coords[1] > 0 || (v.coords[1] == 0 && v.coords[0] > 0)) ? 0 : 1;
  };
  int ha = half(a), hb = half(b);
  if (ha != hb) return ha < hb;
  __int128 cross = static_cast<__int128>(a.coords[0]) * b.coords[1] -
                   static_cast<__int128>(a.coords[1]) * b.coords[0];
  return cross > 0;
}

bool complete_dim2(const Fan& f) {
  const int d = f.ray_count();
  if (d < 3) return false;
  std::vector<int> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return angle_less(f.rays()[a], f.rays()[b]); });
  for (int i = 0; i < d; ++i) {
    int a = order[i];
    int b = order[(i + 1) % d];
    __int128 cross = static_cast<__int128>(f.rays()[a].coords[0]) * f.rays()[b].coords[1] -
                     static_cast<__int128>(f.rays()[a].coords[1]) * f.rays()[b].coords[0];
    if (cross <= 0) return false;  // gap of pi or more
    std::vector<int> pair{std::min(a, b), std::max(a, b)};
    if (!f.has_cone(pair)) return false;
  }
  return true;
}

bool complete_general(const Fan& f) {
  const int n = f.dim();
  std::vector<Cone> chambers;
  for (const auto& c : f.closure()) {
    if (c.dim() == n) chambers.push_back(c);
  }
  if (chambers.empty()) return false;
  // every listed maximal cone must sit inside some chamber
  for (const auto& c : f.max_cones()) {
    bool covered = false;
    for (const auto& ch : chambers) {
      if (std::includes(ch.rays.begin(), ch.rays.end(), c.rays.begin(), c.rays.end())) {
        covered = true;
        break;
      }
    }
    if (!covered) return false;
  }
  std::vector<std::vector<int>> wall_chambers;  // per (n-1)-cone, chamber ids
  for (const auto& w : f.closure()) {
    if (w.dim() != n - 1) continue;
    std::vector<int> touching;
    for (std::size_t i = 0; i < chambers.size(); ++i) {
      if (std::includes(chambers[i].rays.begin(), chambers[i].rays.end(), w.rays.begin(),
                        w.rays.end()))
        touching.push_back(static_cast<int>(i));
    }
    if (touching.size() != 2) return false;
    wall_chambers.push_back(std::move(touching));
  }
  std::vector<std::vector<int>> adj(chambers.size());
  for (const auto& pair : wall_chambers) {
    adj[pair[0]].push_back(pair[1]);
    adj[pair[1]].push_back(pair[0]);
  }
  std::vector<bool> seen(chambers.size(), false);
  std::vector<int> stack{0};
  seen[0] = true;
  while (!stack.empty()) {
    int c = stack.back();
    stack.pop_back();
    for (int nb : adj[c]) {
      if (!seen[nb]) {
        seen[nb] = true;
        stack.push_back(nb);
      }
    }
  }
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

}  // namespace

bool check_complete(const Fan& f) {
  switch (f.dim()) {
    case 0:
      return true;  // the trivial fan covers R^0
    case 1: {
      bool pos = false, neg = false;
      for (const auto& r : f.rays()) (r.coords[0] > 0 ? pos : neg) = true;
      return pos && neg;
    }
    case 2:
      return complete_dim2(f);
    default:
      return complete_general(f);
  }
}

bool SimplicialComplex::is_face(const std::vector<int>& sorted_vertices) const {
  return face_set_.count(sorted_vertices) != 0;
}

SimplicialComplex simplicial_complex(const Fan& f) {
  SimplicialComplex sc;
  sc.vertex_count = f.ray_count();
  for (const auto& c : f.closure()) {
    if (!c.rays.empty()) {
      sc.faces.push_back(c.rays);
      sc.face_set_.insert(c.rays);
    }
  }
  return sc;
}

std::vector<std::vector<int>> primitive_collections(const Fan& f) {
  SimplicialComplex sc = simplicial_complex(f);
  const int d = f.ray_count();
  std::set<std::vector<int>> found;
  // A minimal non-face is face + one vertex with all facets present.
  for (const auto& face : sc.faces) {
    for (int v = 0; v < d; ++v) {
      if (std::binary_search(face.begin(), face.end(), v)) continue;
      std::vector<int> cand = face;
      cand.insert(std::lower_bound(cand.begin(), cand.end(), v), v);
      if (sc.is_face(cand)) continue;
      bool minimal = true;
      for (std::size_t skip = 0; skip < cand.size() && minimal; ++skip) {
        std::vector<int> sub;
        for (std::size_t i = 0; i < cand.size(); ++i) {
          if (i != skip) sub.push_back(cand[i]);
        }
        if (!sc.is_face(sub)) minimal = false;
      }
      if (minimal) found.insert(std::move(cand));
    }
  }
  return {found.begin(), found.end()};
}

bool is_flag_like(const Fan& f) {
  for (const auto& pc : primitive_collections(f)) {
    if (pc.size() >= 3) return false;
  }
  return true;
}

Fan star(const Fan& f, const Cone& tau) {
  if (!f.has_cone(tau.rays)) throw Error("ConeNotInFan", "cone " + cone_str(tau.rays));
  if (tau.rays.empty()) return f;

  const int n = f.dim();
  const int k = tau.dim();
  auto dec = present::smith_normal_form_with_transforms(ray_columns(f, tau.rays));
  // In coordinates y = P x, the saturation of span(tau) is <e_1..e_k>; the
  // quotient is the last n-k coordinates.
  const auto& p = dec.row_ops;
  const int qdim = n - k;

  std::vector<std::vector<std::int64_t>> new_rays;
  std::map<std::vector<std::int64_t>, int> ray_index;
  std::set<std::vector<int>> projected;

  auto project_ray = [&](int j) {
    std::vector<Int> w(qdim, 0);
    for (int r = 0; r < qdim; ++r) {
      for (int c = 0; c < n; ++c)
        w[r] += p[k + r][c] * static_cast<long>(f.rays()[j].coords[c]);
    }
    std::vector<std::int64_t> v = to_int64_vector(w);
    std::int64_t g = content(v);
    for (auto& x : v) x /= g;
    return v;
  };

  for (const auto& sigma : f.closure()) {
    if (!std::includes(sigma.rays.begin(), sigma.rays.end(), tau.rays.begin(), tau.rays.end()))
      continue;
    std::vector<int> image;
    for (int j : sigma.rays) {
      if (std::binary_search(tau.rays.begin(), tau.rays.end(), j)) continue;
      std::vector<std::int64_t> v = project_ray(j);
      auto it = ray_index.find(v);
      int idx;
      if (it == ray_index.end()) {
        idx = static_cast<int>(new_rays.size());
        ray_index.emplace(v, idx);
        new_rays.push_back(v);
      } else {
        idx = it->second;
      }
      image.push_back(idx);
    }
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    projected.insert(std::move(image));
  }

  std::vector<std::vector<int>> maximal;
  for (const auto& c : projected) {
    bool is_max = true;
    for (const auto& other : projected) {
      if (other.size() <= c.size()) continue;
      if (std::includes(other.begin(), other.end(), c.begin(), c.end())) {
        is_max = false;
        break;
      }
    }
    if (is_max) maximal.push_back(c);
  }
  return detail::make_fan_impl(qdim, std::move(new_rays), std::move(maximal), false);
}

Fan barycentric_refine(const Fan& f) {
  std::vector<Cone> cones;  // dim >= 1, already (size, lex) ordered
  for (const auto& c : f.closure()) {
    if (!c.rays.empty()) cones.push_back(c);
  }
  std::map<std::vector<int>, int> bary_index;
  std::vector<std::vector<std::int64_t>> new_rays;
  for (const auto& c : cones) {
    std::vector<std::int64_t> sum(f.dim(), 0);
    for (int j : c.rays) {
      for (int r = 0; r < f.dim(); ++r) sum[r] += f.rays()[j].coords[r];
    }
    std::int64_t g = content(sum);
    if (g == 0) throw Error("DependentRaysInCone", "degenerate barycenter");
    for (auto& x : sum) x /= g;
    bary_index[c.rays] = static_cast<int>(new_rays.size());
    new_rays.push_back(std::move(sum));
  }

  std::set<std::vector<int>> chain_cones;
  for (const auto& top : f.inclusion_maximal_cones()) {
    if (top.rays.empty()) {
      chain_cones.insert(std::vector<int>{});
      continue;
    }
    std::vector<int> perm = top.rays;
    std::sort(perm.begin(), perm.end());
    do {
      std::vector<int> cone;
      std::vector<int> prefix;
      for (int v : perm) {
        prefix.insert(std::lower_bound(prefix.begin(), prefix.end(), v), v);
        cone.push_back(bary_index.at(prefix));
      }
      std::sort(cone.begin(), cone.end());
      chain_cones.insert(std::move(cone));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  std::vector<std::vector<int>> max_cones(chain_cones.begin(), chain_cones.end());
  std::sort(max_cones.begin(), max_cones.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return detail::make_fan_impl(f.dim(), std::move(new_rays), std::move(max_cones), false);
}

}  // namespace torfan::fan
