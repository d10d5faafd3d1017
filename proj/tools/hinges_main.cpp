#include "hinges.h"

#include "CLI11.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace {

using Json = nlohmann::json;

struct CliError {
  std::string message;
  int code;
};

std::string read_input(const std::string& path) {
  std::ostringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
  } else {
    std::ifstream f(path);
    if (!f) throw CliError{"cannot open " + path, 2};
    ss << f.rdbuf();
  }
  return ss.str();
}

int fail(int rc) {
  std::cerr << hng_last_error() << "\n";
  return rc;
}

void print_owned(char* s) {
  std::cout << s << "\n";
  hng_string_free(s);
}

std::vector<double> parse_csv(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      out.push_back(std::stod(item, &used));
      while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw CliError{std::string("cannot parse ") + what + ": " + item, 2};
    }
  }
  if (out.empty()) throw CliError{std::string("empty ") + what + " list", 2};
  return out;
}

// "1e1..1e6" expands decade by decade; otherwise a comma list of values.
std::vector<double> parse_probes(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) return parse_csv(text, "probe");
  double lo = 0.0, hi = 0.0;
  try {
    lo = std::stod(text.substr(0, dots));
    hi = std::stod(text.substr(dots + 2));
  } catch (const std::exception&) {
    throw CliError{"cannot parse probe range: " + text, 2};
  }
  if (!(lo > 0.0) || hi < lo) throw CliError{"bad probe range: " + text, 2};
  std::vector<double> out;
  for (double t = lo; t <= hi * (1.0 + 1e-9); t *= 10.0) out.push_back(t);
  return out;
}

struct HingeDeleter {
  void operator()(hng_hinge* h) const { hng_hinge_free(h); }
};
struct SampleDeleter {
  void operator()(hng_sample* s) const { hng_sample_free(s); }
};
struct RelationDeleter {
  void operator()(hng_relation* r) const { hng_relation_free(r); }
};
struct SceneDeleter {
  void operator()(hng_scene* s) const { hng_scene_free(s); }
};

using HingePtr = std::unique_ptr<hng_hinge, HingeDeleter>;
using SamplePtr = std::unique_ptr<hng_sample, SampleDeleter>;
using RelationPtr = std::unique_ptr<hng_relation, RelationDeleter>;
using ScenePtr = std::unique_ptr<hng_scene, SceneDeleter>;

Json parse_doc(char* owned) {
  Json j = Json::parse(owned);
  hng_string_free(owned);
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"linear relations, hinges and separated quotients"};
  app.require_subcommand(1);
  // Shared flags live on the top level; let subcommands pass them back up.
  app.fallthrough();

  double tol = 1e-8;
  double rank_tol = 1e-9;
  std::string field = "complex";
  std::string probes_text = "1e1..1e6";
  int grid_moduli = 33;
  int grid_phases = 16;
  long long seed = 0;
  app.add_option("--tol", tol, "comparison tolerance")->capture_default_str();
  app.add_option("--rank-tol", rank_tol, "relative rank cutoff")->capture_default_str();
  app.add_option("--field", field, "real or complex")->capture_default_str();
  app.add_option("--probes", probes_text, "probe list or lo..hi decade range")
      ->capture_default_str();
  app.add_option("--grid-moduli", grid_moduli, "modulus count of the scaling grid")
      ->capture_default_str();
  app.add_option("--grid-phases", grid_phases, "phase count of the scaling grid")
      ->capture_default_str();
  app.add_option("--seed", seed, "seed for randomized subcommands")->capture_default_str();

  auto grid_from_flags = [&]() {
    hng_grid g = hng_grid_default();
    g.moduli = grid_moduli;
    g.phases = grid_phases;
    return g;
  };

  std::function<int()> action;

  // relation invariants <file>
  auto* relation_cmd = app.add_subcommand("relation", "linear relation operations");
  relation_cmd->require_subcommand(1);
  auto* invariants_cmd =
      relation_cmd->add_subcommand("invariants", "kernel, image, domain, indeterminacy");
  static std::string invariants_file;
  invariants_cmd->add_option("file", invariants_file, "relation JSON (- for stdin)")->required();
  invariants_cmd->callback([&]() {
    action = [&]() {
      hng_relation* raw = nullptr;
      if (int rc = hng_relation_parse(read_input(invariants_file).c_str(), rank_tol, &raw))
        return fail(rc);
      RelationPtr rel(raw);
      char* out = nullptr;
      if (int rc = hng_relation_invariants(rel.get(), tol, rank_tol, &out)) return fail(rc);
      print_owned(out);
      return 0;
    };
  });

  auto* hinge_cmd = app.add_subcommand("hinge", "hinge operations");
  hinge_cmd->require_subcommand(1);

  // hinge validate <file>
  auto* validate_cmd = hinge_cmd->add_subcommand("validate", "check the hinge axioms");
  static std::string validate_file;
  static bool validate_pd = false;
  validate_cmd->add_option("file", validate_file, "hinge JSON (- for stdin)")->required();
  validate_cmd->add_flag("--pd", validate_pd, "also check Lagrangian and positivity conditions");
  validate_cmd->callback([&]() {
    action = [&]() {
      hng_hinge* raw = nullptr;
      if (int rc = hng_hinge_parse(read_input(validate_file).c_str(), rank_tol, &raw))
        return fail(rc);
      HingePtr h(raw);
      char* out = nullptr;
      const int rc = validate_pd ? hng_hinge_validate_pd(h.get(), tol, &out)
                                 : hng_hinge_validate(h.get(), tol, rank_tol, &out);
      if (rc) return fail(rc);
      print_owned(out);
      return 0;
    };
  });

  // hinge of-matrix <file>
  auto* ofmatrix_cmd = hinge_cmd->add_subcommand("of-matrix", "k = 1 hinge of an invertible matrix");
  static std::string ofmatrix_file;
  ofmatrix_cmd->add_option("file", ofmatrix_file, "matrix JSON (- for stdin)")->required();
  ofmatrix_cmd->callback([&]() {
    action = [&]() {
      hng_hinge* raw = nullptr;
      if (int rc = hng_hinge_of_matrix(read_input(ofmatrix_file).c_str(), field.c_str(), rank_tol,
                                       &raw))
        return fail(rc);
      HingePtr h(raw);
      char* out = nullptr;
      if (int rc = hng_hinge_to_json(h.get(), &out)) return fail(rc);
      print_owned(out);
      return 0;
    };
  });

  // hinge limit [--diag a,b,... | matrix files]
  auto* limit_cmd = hinge_cmd->add_subcommand("limit", "limit hinge of a matrix family");
  static std::string limit_diag;
  static int limit_n = 0;
  static std::string limit_left, limit_right;
  static std::vector<std::string> limit_files;
  limit_cmd->add_option("--diag", limit_diag, "diagonal exponents, comma separated");
  limit_cmd->add_option("--n", limit_n, "dimension (defaults to the exponent count)");
  limit_cmd->add_option("--left", limit_left, "left conjugator matrix JSON file");
  limit_cmd->add_option("--right", limit_right, "right conjugator matrix JSON file");
  limit_cmd->add_option("files", limit_files, "matrix JSON files, one per probe");
  limit_cmd->callback([&]() {
    action = [&]() {
      const std::vector<double> probes = parse_probes(probes_text);
      hng_hinge* raw = nullptr;
      if (!limit_diag.empty()) {
        if (!limit_files.empty())
          throw CliError{"--diag and matrix files are mutually exclusive", 2};
        const std::vector<double> exponents = parse_csv(limit_diag, "exponent");
        const int n = static_cast<int>(exponents.size());
        if (limit_n != 0 && limit_n != n)
          throw CliError{"--n disagrees with the exponent count", 2};
        const std::string left =
            limit_left.empty() ? std::string() : read_input(limit_left);
        const std::string right =
            limit_right.empty() ? std::string() : read_input(limit_right);
        if (int rc = hng_hinge_limit_diag(field.c_str(), n, exponents.data(), probes.data(),
                                          static_cast<int>(probes.size()),
                                          left.empty() ? nullptr : left.c_str(),
                                          right.empty() ? nullptr : right.c_str(), tol, rank_tol,
                                          &raw))
          return fail(rc);
      } else {
        if (limit_files.empty()) throw CliError{"need --diag or matrix files", 2};
        if (limit_files.size() != probes.size())
          throw CliError{"need one probe per matrix file", 2};
        std::vector<std::string> docs;
        std::vector<const char*> ptrs;
        for (const auto& f : limit_files) docs.push_back(read_input(f));
        for (const auto& d : docs) ptrs.push_back(d.c_str());
        if (int rc = hng_hinge_limit_samples(field.c_str(), ptrs.data(),
                                             static_cast<int>(ptrs.size()), probes.data(), tol,
                                             rank_tol, &raw))
          return fail(rc);
      }
      HingePtr h(raw);
      char* out = nullptr;
      if (int rc = hng_hinge_to_json(h.get(), &out)) return fail(rc);
      print_owned(out);
      return 0;
    };
  });

  // hinge sample <file>
  auto* hsample_cmd = hinge_cmd->add_subcommand("sample", "closed-set sample of a hinge");
  static std::string hsample_file;
  hsample_cmd->add_option("file", hsample_file, "hinge JSON (- for stdin)")->required();
  hsample_cmd->callback([&]() {
    action = [&]() {
      hng_hinge* raw = nullptr;
      if (int rc = hng_hinge_parse(read_input(hsample_file).c_str(), rank_tol, &raw))
        return fail(rc);
      HingePtr h(raw);
      const hng_grid grid = grid_from_flags();
      hng_sample* sraw = nullptr;
      if (int rc = hng_hinge_sample(h.get(), &grid, rank_tol, &sraw)) return fail(rc);
      SamplePtr s(sraw);
      char* out = nullptr;
      if (int rc = hng_sample_to_json(s.get(), &out)) return fail(rc);
      print_owned(out);
      return 0;
    };
  });

  // orbit sample <file>
  auto* orbit_cmd = app.add_subcommand("orbit", "scaling orbit operations");
  orbit_cmd->require_subcommand(1);
  auto* osample_cmd = orbit_cmd->add_subcommand("sample", "orbit-closure sample of a relation");
  static std::string osample_file;
  osample_cmd->add_option("file", osample_file, "relation JSON (- for stdin)")->required();
  osample_cmd->callback([&]() {
    action = [&]() {
      hng_relation* raw = nullptr;
      if (int rc = hng_relation_parse(read_input(osample_file).c_str(), rank_tol, &raw))
        return fail(rc);
      RelationPtr rel(raw);
      const hng_grid grid = grid_from_flags();
      hng_sample* sraw = nullptr;
      if (int rc = hng_orbit_sample(rel.get(), &grid, rank_tol, &sraw)) return fail(rc);
      SamplePtr s(sraw);
      char* out = nullptr;
      if (int rc = hng_sample_to_json(s.get(), &out)) return fail(rc);
      print_owned(out);
      return 0;
    };
  });

  // hausdorff <a> <b>
  auto* hausdorff_cmd = app.add_subcommand("hausdorff", "distance between two sample files");
  static std::string hd_a, hd_b;
  hausdorff_cmd->add_option("a", hd_a, "first sample JSON")->required();
  hausdorff_cmd->add_option("b", hd_b, "second sample JSON")->required();
  hausdorff_cmd->callback([&]() {
    action = [&]() {
      hng_sample* ra = nullptr;
      if (int rc = hng_sample_parse(read_input(hd_a).c_str(), rank_tol, &ra)) return fail(rc);
      SamplePtr a(ra);
      hng_sample* rb = nullptr;
      if (int rc = hng_sample_parse(read_input(hd_b).c_str(), rank_tol, &rb)) return fail(rc);
      SamplePtr b(rb);
      double d = 0.0;
      if (int rc = hng_hausdorff(a.get(), b.get(), &d)) return fail(rc);
      Json out;
      out["distance"] = d;
      std::cout << out.dump() << "\n";
      return 0;
    };
  });

  // quotient run <scene>
  auto* quotient_cmd = app.add_subcommand("quotient", "separated quotient operations");
  quotient_cmd->require_subcommand(1);
  auto* qrun_cmd = quotient_cmd->add_subcommand("run", "members and admissible label sets");
  static std::string qrun_file;
  qrun_cmd->add_option("file", qrun_file, "scene JSON (- for stdin)")->required();
  qrun_cmd->callback([&]() {
    action = [&]() {
      hng_scene* raw = nullptr;
      if (int rc = hng_scene_parse(read_input(qrun_file).c_str(), rank_tol, &raw))
        return fail(rc);
      ScenePtr scene(raw);
      char* out = nullptr;
      if (int rc = hng_quotient_run(scene.get(), tol, -1.0, &out)) return fail(rc);
      print_owned(out);
      return 0;
    };
  });

  // symspace boundary --diag ... [--conj file]
  auto* symspace_cmd = app.add_subcommand("symspace", "symmetric-space operations");
  symspace_cmd->require_subcommand(1);
  auto* boundary_cmd =
      symspace_cmd->add_subcommand("boundary", "boundary hinge of a positive definite family");
  static std::string boundary_diag, boundary_conj;
  boundary_cmd->add_option("--diag", boundary_diag, "diagonal exponents, comma separated")
      ->required();
  boundary_cmd->add_option("--conj", boundary_conj, "congruence conjugator matrix JSON file");
  boundary_cmd->callback([&]() {
    action = [&]() {
      const std::vector<double> exponents = parse_csv(boundary_diag, "exponent");
      const std::vector<double> probes = parse_probes(probes_text);
      const std::string conj = boundary_conj.empty() ? std::string() : read_input(boundary_conj);
      hng_hinge* raw = nullptr;
      if (int rc = hng_pd_boundary_diag(static_cast<int>(exponents.size()), exponents.data(),
                                        conj.empty() ? nullptr : conj.c_str(), probes.data(),
                                        static_cast<int>(probes.size()), tol, rank_tol, &raw))
        return fail(rc);
      HingePtr h(raw);
      char* hinge_json = nullptr;
      if (int rc = hng_hinge_to_json(h.get(), &hinge_json)) return fail(rc);
      char* report_json = nullptr;
      if (int rc = hng_hinge_validate_pd(h.get(), tol, &report_json)) {
        hng_string_free(hinge_json);
        return fail(rc);
      }
      Json out;
      out["hinge"] = parse_doc(hinge_json);
      out["report"] = parse_doc(report_json);
      std::cout << out.dump() << "\n";
      return 0;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    std::cerr << app.help() << "\n";
    return 2;
  }

  try {
    return action ? action() : 2;
  } catch (const CliError& e) {
    std::cerr << e.message << "\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 3;
  }
}
