#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "torfan/analysis.hpp"
#include "torfan/errors.hpp"
#include "torfan/fan.hpp"
#include "torfan/pi1.hpp"
#include "torfan/present.hpp"
#include "torfan/racg.hpp"
#include "torfan/topology.hpp"

namespace {

using namespace torfan;

constexpr int kExitOk = 0;
constexpr int kExitSemantic = 1;
constexpr int kExitInput = 2;

bool is_input_error(const Error& e) {
  static const char* codes[] = {"ParseError",   "MalformedWord",       "NonPrimitiveRay",
                                "DuplicateRay", "IndexOutOfRange",     "DependentRaysInCone",
                                "OrphanRay",    "NotIntersectionClosed"};
  for (const char* c : codes) {
    if (e.code() == c) return true;
  }
  return false;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("ParseError", "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fan::Fan load_fan(const std::string& path) { return fan::parse_fan(read_file(path)); }

int cmd_validate(const std::string& path) {
  fan::Fan f = load_fan(path);
  fan::SmoothnessResult sm = fan::check_smooth(f);
  std::cout << "smooth: " << (sm.smooth ? "yes" : "no");
  if (!sm.smooth) {
    std::cout << " (witness cone {";
    for (std::size_t i = 0; i < sm.witness.rays.size(); ++i) {
      if (i) std::cout << ",";
      std::cout << sm.witness.rays[i];
    }
    std::cout << "})";
  }
  std::cout << "\n";
  std::cout << "complete: " << (fan::check_complete(f) ? "yes" : "no") << "\n";
  return sm.smooth ? kExitOk : kExitSemantic;
}

int cmd_analyze(const std::string& path, bool json) {
  fan::Fan f = load_fan(path);
  analysis::AnalysisReport report = analysis::analyze(f);
  std::cout << (json ? analysis::report_to_json(report) : analysis::report_to_text(report));
  return report.exit_code == 0 ? kExitOk : kExitSemantic;
}

int cmd_present(const std::string& path, const std::string& which, const std::string& format) {
  fan::Fan f = load_fan(path);
  pi1::WhichPresentation w =
      which == "simplified" ? pi1::WhichPresentation::simplified : pi1::WhichPresentation::full;
  pi1::VerifyReport verify = pi1::verify_presentation(f, w);
  if (!verify.pass) {
    std::cerr << "presentation verification failed: " << verify.first_failure << "\n";
    return kExitSemantic;
  }
  present::Presentation p = w == pi1::WhichPresentation::simplified
                                ? pi1::simplified_presentation(f)
                                : pi1::rs_presentation(f);
  present::ExportFormat fmt =
      format == "machine" ? present::ExportFormat::machine : present::ExportFormat::plain;
  std::cout << present::export_presentation(p, fmt);
  if (fmt == present::ExportFormat::plain) std::cout << "\n";
  return kExitOk;
}

int cmd_refine(const std::string& path, const std::string& out_path) {
  fan::Fan f = load_fan(path);
  fan::Fan refined = fan::barycentric_refine(f);
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw Error("ParseError", "cannot open " + out_path + " for writing");
  out << fan::fan_to_json(refined);
  if (!out) throw Error("ParseError", "write to " + out_path + " failed");
  std::cout << "refined fan: " << refined.ray_count() << " rays, "
            << refined.max_cones().size() << " maximal cones -> " << out_path << "\n";
  return kExitOk;
}

int cmd_word(const std::string& path, const std::string& subcmd, const std::string& text) {
  fan::Fan f = load_fan(path);
  racg::CommutationGraph g = racg::graph_from_fan(f);
  racg::Word w = racg::parse_word(text, g.generator_count);
  if (subcmd == "reduce") {
    std::cout << racg::word_to_string(racg::reduce(g, w).letters) << "\n";
  } else if (subcmd == "order") {
    std::cout << racg::to_string(racg::order(g, w)) << "\n";
  } else if (subcmd == "in-pi1") {
    pi1::CharMatrixGF2 m = pi1::char_matrix(f, pi1::choose_basis(f));
    std::cout << (pi1::in_pi1(m, w) ? "true" : "false") << "\n";
  } else if (subcmd == "in-commutator") {
    std::cout << (racg::in_commutator_subgroup(g, w) ? "true" : "false") << "\n";
  } else {
    throw Error("ParseError", "unknown word subcommand " + subcmd);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* cap = std::getenv("TORFAN_BALL_RADIUS")) {
    try {
      racg::set_default_ball_cap(std::stoi(cap));
    } catch (const std::exception&) {
      std::cerr << "TORFAN_BALL_RADIUS must be an integer\n";
      return kExitInput;
    }
  }

  CLI::App app{"real toric variety analyzer: fans, pi_1 presentations, asphericity, "
               "coordinate-subspace arrangements"};
  app.require_subcommand(1);

  std::string path, out_path, word_sub, word_text;
  std::string which = "full", format = "plain";
  bool json = false;

  auto* validate = app.add_subcommand("validate", "parse a fan and check smooth/complete");
  validate->add_option("fan", path, "fan JSON file")->required();

  auto* analyze = app.add_subcommand("analyze", "full analysis report");
  analyze->add_option("fan", path, "fan JSON file")->required();
  analyze->add_flag("--json", json, "canonical JSON output");

  auto* present_cmd = app.add_subcommand("present", "export a pi_1 presentation");
  present_cmd->add_option("fan", path, "fan JSON file")->required();
  present_cmd->add_option("--which", which, "full|simplified")
      ->check(CLI::IsMember({"full", "simplified"}));
  present_cmd->add_option("--format", format, "plain|machine")
      ->check(CLI::IsMember({"plain", "machine"}));

  auto* refine = app.add_subcommand("refine", "write the barycentric refinement");
  refine->add_option("fan", path, "fan JSON file")->required();
  refine->add_option("out", out_path, "output fan JSON file")->required();

  auto* word = app.add_subcommand("word", "word engine over the fan's Coxeter group");
  word->add_option("fan", path, "fan JSON file")->required();
  word->add_option("subcmd", word_sub, "reduce|order|in-pi1|in-commutator")
      ->required()
      ->check(CLI::IsMember({"reduce", "order", "in-pi1", "in-commutator"}));
  word->add_option("letters", word_text, "whitespace-separated 0-based indices")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (validate->parsed()) return cmd_validate(path);
    if (analyze->parsed()) return cmd_analyze(path, json);
    if (present_cmd->parsed()) return cmd_present(path, which, format);
    if (refine->parsed()) return cmd_refine(path, out_path);
    if (word->parsed()) return cmd_word(path, word_sub, word_text);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return is_input_error(e) ? kExitInput : kExitSemantic;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitSemantic;
  }
  return kExitInput;
}
