#include "torfan/analysis.hpp"

#include <sstream>

#include <json.hpp>

#include "torfan/errors.hpp"
#include "torfan/topology.hpp"

namespace torfan::analysis {

namespace {

std::string structure_string(const pi1::AbelianStructure& s) {
  std::ostringstream os;
  bool first = true;
  if (s.free_rank > 0) {
    os << "Z";
    if (s.free_rank > 1) os << "^" << s.free_rank;
    first = false;
  }
  if (s.torsion_rank > 0) {
    if (!first) os << " + ";
    os << "Z/2";
    if (s.torsion_rank > 1) os << "^" << s.torsion_rank;
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace

AnalysisReport analyze(const fan::Fan& f) {
  AnalysisReport r;
  r.dim = f.dim();
  r.ray_count = f.ray_count();
  r.max_cone_count = static_cast<int>(f.max_cones().size());
  r.cone_counts_by_dim.assign(f.dim() + 1, 0);
  for (const auto& c : f.closure()) ++r.cone_counts_by_dim[c.dim()];

  fan::SmoothnessResult sm = fan::check_smooth(f);
  r.smooth = sm.smooth;
  if (!sm.smooth) r.smooth_witness = sm.witness;
  r.complete = fan::check_complete(f);
  r.flag_like = fan::is_flag_like(f);
  r.aspherical = r.flag_like;
  if (!r.smooth)
    r.warnings.push_back("fan is not smooth; the asphericity criterion assumes smoothness");

  pi1::Connectivity conn = pi1::connectedness(f);
  r.connected = conn.connected;
  r.component_count = conn.component_count;

  if (!r.smooth) {
    r.warnings.push_back("pi_1 and arrangement analysis refused: fan is not smooth");
    r.error = "FanNotSmooth";
    r.exit_code = 1;
    return r;
  }
  if (!r.connected) {
    r.warnings.push_back("pi_1 presentations refused: fan is disconnected");
    r.error = "DisconnectedFan";
    r.exit_code = 1;
    return r;
  }

  pi1::Pi1Report p = pi1::analyze_pi1(f);
  r.has_pi1 = true;
  for (const auto& w : p.warnings) r.warnings.push_back(w);
  if (p.basis) {
    r.basis_rays = p.basis->basis_rays;
    r.permutation = p.basis->perm_to_original;
    r.basis_pairwise_conical = p.basis->pairwise_conical;
  }
  if (p.presentation_full) {
    r.full_generators = static_cast<int>(p.presentation_full->generators.size());
    r.full_relators = static_cast<int>(p.presentation_full->relators.size());
  }
  if (p.presentation_simplified) {
    r.simplified_generators = static_cast<int>(p.presentation_simplified->generators.size());
    r.simplified_relators = static_cast<int>(p.presentation_simplified->relators.size());
  }
  if (p.abelian) {
    r.abelian_case = pi1::to_string(p.abelian->value);
    r.witness_step = p.abelian->witness_step;
    r.witness = p.abelian->witness;
  }
  if (p.structure) {
    r.structure = *p.structure;
    r.structure_text = structure_string(*p.structure);
  }
  r.torsion_note = "every torsion element of pi_1 has order 2";

  try {
    topology::SubspaceArrangement arr = topology::arrangement(f);
    r.has_arrangement = true;
    for (const auto& s : arr.subspaces) r.subspace_codimensions.push_back(s.codimension);
    r.k_pi_1 = topology::is_arrangement_k_pi_1(f);
    if (arr.completeness_relaxed)
      r.warnings.push_back(
          "fan is incomplete; arrangement analysis admitted because the rays span mod 2");
  } catch (const Error& e) {
    if (e.code() != "IncompleteFanWithoutBasis") throw;
    r.warnings.push_back("arrangement analysis refused: " + std::string(e.what()));
  }
  return r;
}

std::string report_to_json(const AnalysisReport& r) {
  nlohmann::json j;
  j["fan_summary"] = {{"dim", r.dim},
                      {"ray_count", r.ray_count},
                      {"max_cone_count", r.max_cone_count},
                      {"cone_counts_by_dim", r.cone_counts_by_dim}};
  j["validation"] = {{"smooth", r.smooth}, {"complete", r.complete}, {"flag_like", r.flag_like}};
  if (r.smooth_witness) j["validation"]["smooth_witness_cone"] = r.smooth_witness->rays;
  j["aspherical"] = r.aspherical;
  j["connectivity"] = {{"connected", r.connected},
                       {"component_count", r.component_count}};
  if (r.has_pi1) {
    nlohmann::json p;
    p["basis_rays"] = r.basis_rays;
    p["permutation"] = r.permutation;
    p["basis_pairwise_conical"] = r.basis_pairwise_conical;
    p["full_presentation"] = {{"generators", r.full_generators},
                              {"relators", r.full_relators}};
    if (r.simplified_generators >= 0)
      p["simplified_presentation"] = {{"generators", r.simplified_generators},
                                      {"relators", r.simplified_relators}};
    if (!r.abelian_case.empty()) {
      p["abelian"] = r.abelian_case;
      if (r.witness_step > 0) {
        p["witness_step"] = r.witness_step;
        p["witness"] = r.witness;
      }
    }
    if (r.structure) {
      p["structure"] = r.structure_text;
      p["free_rank"] = r.structure->free_rank;
      p["torsion_order2_rank"] = r.structure->torsion_rank;
    }
    p["torsion_note"] = r.torsion_note;
    j["pi1"] = p;
  }
  if (r.has_arrangement) {
    j["arrangement"] = {{"subspace_count", static_cast<int>(r.subspace_codimensions.size())},
                        {"subspace_codimensions", r.subspace_codimensions},
                        {"k_pi_1", r.k_pi_1}};
  }
  j["warnings"] = r.warnings;
  if (!r.error.empty()) j["error"] = r.error;
  return j.dump(2) + "\n";
}

std::string report_to_text(const AnalysisReport& r) {
  std::ostringstream os;
  os << "fan: dim " << r.dim << ", " << r.ray_count << " rays, " << r.max_cone_count
     << " maximal cones\n";
  os << "smooth: " << (r.smooth ? "yes" : "no");
  if (r.smooth_witness) {
    os << " (witness cone {";
    for (std::size_t i = 0; i < r.smooth_witness->rays.size(); ++i) {
      if (i) os << ",";
      os << r.smooth_witness->rays[i];
    }
    os << "})";
  }
  os << "\n";
  os << "complete: " << (r.complete ? "yes" : "no") << "\n";
  os << "flag-like: " << (r.flag_like ? "yes" : "no") << "\n";
  os << "aspherical: " << (r.aspherical ? "yes" : "no") << "\n";
  os << "connected: " << (r.connected ? "yes" : "no") << " (components: " << r.component_count
     << ")\n";
  if (r.has_pi1) {
    os << "pi_1 basis rays:";
    for (int b : r.basis_rays) os << " " << b;
    os << (r.basis_pairwise_conical ? " (pairwise conical)" : " (not pairwise conical)")
       << "\n";
    os << "pi_1 full presentation: " << r.full_generators << " generators, " << r.full_relators
       << " relators\n";
    if (r.simplified_generators >= 0)
      os << "pi_1 simplified presentation: " << r.simplified_generators << " generators, "
         << r.simplified_relators << " relators\n";
    if (!r.abelian_case.empty()) {
      os << "pi_1 abelian: " << r.abelian_case;
      if (r.witness_step > 0) os << " (" << r.witness << ")";
      os << "\n";
    }
    if (r.structure) os << "pi_1 structure: " << r.structure_text << "\n";
    os << "torsion: " << r.torsion_note << "\n";
  }
  if (r.has_arrangement) {
    os << "arrangement: " << r.subspace_codimensions.size() << " subspaces, codimensions";
    for (int c : r.subspace_codimensions) os << " " << c;
    if (r.subspace_codimensions.empty()) os << " (none)";
    os << "\n";
    os << "arrangement K(pi,1): " << (r.k_pi_1 ? "yes" : "no") << "\n";
  }
  for (const auto& w : r.warnings) os << "warning: " << w << "\n";
  if (!r.error.empty()) os << "error: " << r.error << "\n";
  return os.str();
}

}  // namespace torfan::analysis
