#pragma once

#include <optional>
#include <string>
#include <vector>

#include "torfan/fan.hpp"
#include "torfan/pi1.hpp"

// Aggregated analysis record behind `torfan analyze`. JSON output is
// canonical: sorted keys, integers/booleans/strings only, byte-stable for a
// fixed input.
namespace torfan::analysis {

struct AnalysisReport {
  // fan summary
  int dim = 0;
  int ray_count = 0;
  int max_cone_count = 0;
  std::vector<int> cone_counts_by_dim;

  // validation
  bool smooth = false;
  std::optional<fan::Cone> smooth_witness;
  bool complete = false;
  bool flag_like = false;
  bool aspherical = false;

  // connectivity
  bool connected = false;
  unsigned long long component_count = 1;

  // pi1 (present when smooth and connected)
  bool has_pi1 = false;
  std::string abelian_case;  // "case_i" | "case_ii" | "non_abelian" | "" if unavailable
  int witness_step = 0;
  std::string witness;
  std::optional<pi1::AbelianStructure> structure;
  std::string structure_text;
  int full_generators = 0;
  int full_relators = 0;
  int simplified_generators = -1;  // -1 when unavailable
  int simplified_relators = -1;
  std::vector<int> basis_rays;
  std::vector<int> permutation;
  bool basis_pairwise_conical = false;
  std::string torsion_note;

  // arrangement (present when admitted)
  bool has_arrangement = false;
  std::vector<int> subspace_codimensions;
  bool k_pi_1 = false;

  std::vector<std::string> warnings;
  std::string error;  // machine code; empty when the full pipeline ran
  int exit_code = 0;  // 0 ok, 1 semantic refusal
};

AnalysisReport analyze(const fan::Fan& f);

std::string report_to_json(const AnalysisReport& r);
std::string report_to_text(const AnalysisReport& r);

}  // namespace torfan::analysis
