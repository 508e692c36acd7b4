#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "popmatch/core.hpp"
#include "popmatch/gen.hpp"
#include "popmatch/oracle.hpp"
#include "popmatch/reduction.hpp"
#include "popmatch/solver.hpp"
#include "popmatch/verifier.hpp"

namespace {

using namespace popmatch;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << content;
  if (!out) throw std::runtime_error("failed writing " + path);
}

bool tsv = false;

const char* set_name(PostSet s) {
  switch (s) {
    case PostSet::X: return "X";
    case PostSet::Y: return "Y";
    default: return "Z";
  }
}

std::string id_list(const std::vector<int>& ids) {
  std::string out;
  for (size_t i = 0; i < ids.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(ids[i]);
  }
  return out;
}

std::string pair_list(const Instance& inst, const Matching& m) {
  std::string out;
  bool first = true;
  for (ApplicantId a = 0; a < inst.num_applicants; ++a) {
    if (!m.is_matched(a)) continue;
    if (!first) out += ", ";
    first = false;
    out += inst.applicant_name(a) + " -> " + inst.post_name(m.post_of[a]);
  }
  return out.empty() ? "(empty)" : out;
}

void print_matching_rows(const Instance& inst, const Matching& m) {
  for (ApplicantId a = 0; a < inst.num_applicants; ++a) {
    if (tsv) {
      if (m.is_matched(a))
        std::cout << "pair\t" << a << "\t" << m.post_of[a] << "\n";
      else
        std::cout << "unmatched\t" << a << "\n";
    } else {
      if (m.is_matched(a))
        std::cout << "  " << inst.applicant_name(a) << " -> " << inst.post_name(m.post_of[a])
                  << "\n";
      else
        std::cout << "  " << inst.applicant_name(a) << " unmatched\n";
    }
  }
}

void print_partition(const Instance& inst, const Partition& partition) {
  if (tsv) {
    for (PostId b = 0; b < inst.num_posts; ++b)
      std::cout << "post\t" << b << "\t" << set_name(partition.post_set[b]) << "\n";
    return;
  }
  for (PostSet s : {PostSet::X, PostSet::Y, PostSet::Z}) {
    std::cout << "  " << set_name(s) << ":";
    for (PostId b : partition.posts_in(s)) std::cout << " " << inst.post_name(b);
    std::cout << "\n";
  }
}

void print_trace(const SolveTrace& trace) {
  for (size_t t = 0; t < trace.iterations.size(); ++t) {
    const IterationRecord& record = trace.iterations[t];
    if (tsv)
      std::cout << "trace\t" << t + 1 << "\txy=" << id_list(record.x_to_y)
                << "\tyz=" << id_list(record.y_to_z) << "\n";
    else
      std::cout << "  iteration " << t + 1 << ": demoted to Y [" << id_list(record.x_to_y)
                << "], demoted to Z [" << id_list(record.y_to_z) << "]\n";
  }
}

int cmd_solve(const std::string& instance_path, bool trace) {
  Instance inst = parse_instance(read_file(instance_path));
  SolveResult result = solve(inst);
  int iterations = iteration_count(result.trace);
  if (tsv) {
    std::cout << "status\t" << (result.matching ? "popular" : "none") << "\n";
    std::cout << "iterations\t" << iterations << "\n";
    if (result.matching) print_matching_rows(inst, *result.matching);
    print_partition(inst, result.partition);
    if (trace) print_trace(result.trace);
  } else {
    if (result.matching) {
      std::cout << "popular matching found (" << result.matching->size() << " pairs, "
                << iterations << " iterations)\n";
      print_matching_rows(inst, *result.matching);
    } else {
      std::cout << "no popular matching exists (" << iterations << " iterations)\n";
    }
    std::cout << "partition:\n";
    print_partition(inst, result.partition);
    if (trace) {
      std::cout << "trace:\n";
      print_trace(result.trace);
    }
  }
  return result.matching ? 0 : 1;
}

int cmd_margin(const std::string& instance_path, const std::string& matching_path,
               bool verify_wording) {
  Instance inst = parse_instance(read_file(instance_path));
  Matching m = parse_matching(inst, read_file(matching_path));
  MarginReport report = margin(inst, m);
  if (tsv) {
    std::cout << "margin\t" << report.margin << "\n";
    std::cout << "popular\t" << (report.margin == 0 ? 1 : 0) << "\n";
    if (report.margin > 0)
      for (ApplicantId a = 0; a < inst.num_applicants; ++a)
        if (report.witness.is_matched(a))
          std::cout << "witness\t" << a << "\t" << report.witness.post_of[a] << "\n";
  } else if (report.margin == 0) {
    std::cout << (verify_wording ? "popular (margin 0)\n" : "margin 0\n");
  } else {
    std::cout << (verify_wording ? "not popular" : "unpopular") << " (margin "
              << report.margin << ")\n";
    std::cout << "beaten by: " << pair_list(inst, report.witness) << "\n";
  }
  return report.margin == 0 ? 0 : 1;
}

int cmd_oracle(const std::string& instance_path, bool guard_override) {
  Instance inst = parse_instance(read_file(instance_path));
  std::vector<Matching> popular = popular_set(inst, guard_override);
  if (tsv) {
    std::cout << "count\t" << popular.size() << "\n";
    for (size_t i = 0; i < popular.size(); ++i)
      for (ApplicantId a = 0; a < inst.num_applicants; ++a)
        std::cout << "assign\t" << i << "\t" << a << "\t"
                  << (popular[i].is_matched(a) ? std::to_string(popular[i].post_of[a]) : "-")
                  << "\n";
  } else if (popular.empty()) {
    std::cout << "none\n";
  } else {
    std::cout << popular.size() << " popular matching" << (popular.size() == 1 ? "" : "s")
              << ":\n";
    for (size_t i = 0; i < popular.size(); ++i)
      std::cout << "  #" << i + 1 << ": " << pair_list(inst, popular[i]) << "\n";
  }
  return popular.empty() ? 1 : 0;
}

int cmd_reduce(const std::string& cnf_path, std::string instance_out, std::string index_out) {
  Cnf22e3 cnf = parse_dimacs(read_file(cnf_path));
  auto [inst, index] = build_instance(cnf);
  if (instance_out.empty()) instance_out = cnf_path + ".inst";
  if (index_out.empty()) index_out = cnf_path + ".index";
  write_file(instance_out, serialize_instance(inst));
  write_file(index_out, index_to_text(index));
  if (tsv) {
    std::cout << "applicants\t" << inst.num_applicants << "\n";
    std::cout << "posts\t" << inst.num_posts << "\n";
    std::cout << "instance\t" << instance_out << "\n";
    std::cout << "index\t" << index_out << "\n";
  } else {
    std::cout << "wrote instance (" << inst.num_applicants << " applicants, " << inst.num_posts
              << " posts) to " << instance_out << "\n";
    std::cout << "wrote vertex index to " << index_out << "\n";
  }
  return 0;
}

int cmd_gen(const std::string& family, const std::string& fixture_name, int n, int na, int nb,
            double density, double tie_fraction, std::uint64_t seed, const std::string& out) {
  Instance inst;
  if (family == "fixture")
    inst = fixture(fixture_name);
  else if (family == "tight")
    inst = tight_family(n);
  else if (family == "random")
    inst = random_instance(seed, na, nb, density, tie_fraction);
  else
    throw std::invalid_argument("unknown family: " + family);
  std::string text = serialize_instance(inst);
  if (out.empty())
    std::cout << text;
  else
    write_file(out, text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"popular-matching toolkit: solve, verify, and generate instances"};
  app.require_subcommand(1);

  std::string format = "human";
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"human", "tsv"}))
      ->capture_default_str();

  std::string instance_path, matching_path, cnf_path, out_path, index_out;
  bool trace = false, guard_override = false;
  std::string family = "random", fixture_name = "fig1_top_left";
  int n = 1, na = 5, nb = 5;
  double density = 1.0, tie_fraction = 1.0;
  std::uint64_t seed = 1;

  CLI::App* solve_cmd = app.add_subcommand("solve", "find a popular matching");
  solve_cmd->add_option("instance", instance_path, "instance file")->required();
  solve_cmd->add_flag("--trace", trace, "print per-iteration demotions");

  CLI::App* verify_cmd = app.add_subcommand("verify", "test a matching for popularity");
  verify_cmd->add_option("instance", instance_path, "instance file")->required();
  verify_cmd->add_option("matching", matching_path, "matching file")->required();

  CLI::App* margin_cmd = app.add_subcommand("margin", "compute the popularity margin");
  margin_cmd->add_option("instance", instance_path, "instance file")->required();
  margin_cmd->add_option("matching", matching_path, "matching file")->required();

  CLI::App* oracle_cmd = app.add_subcommand("oracle", "list all popular matchings (small instances)");
  oracle_cmd->add_option("instance", instance_path, "instance file")->required();
  oracle_cmd->add_flag("--guard-override", guard_override, "lift the size guard");

  CLI::App* reduce_cmd = app.add_subcommand("reduce", "build an instance from a DIMACS formula");
  reduce_cmd->add_option("cnf", cnf_path, "DIMACS CNF file")->required();
  reduce_cmd->add_option("--instance-out", out_path, "instance output path (default <cnf>.inst)");
  reduce_cmd->add_option("--index-out", index_out, "index output path (default <cnf>.index)");

  CLI::App* gen_cmd = app.add_subcommand("gen", "generate an instance");
  gen_cmd->add_option("--family", family, "fixture | tight | random")
      ->check(CLI::IsMember({"fixture", "tight", "random"}))
      ->capture_default_str();
  gen_cmd->add_option("--name", fixture_name, "fixture name");
  gen_cmd->add_option("--n", n, "tight-family size");
  gen_cmd->add_option("--na", na, "applicants (random)");
  gen_cmd->add_option("--nb", nb, "posts (random)");
  gen_cmd->add_option("--density", density, "edge density (random)");
  gen_cmd->add_option("--tie-fraction", tie_fraction, "fraction of tie posts (random)");
  gen_cmd->add_option("--seed", seed, "random seed");
  gen_cmd->add_option("--out", out_path, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  tsv = format == "tsv";
  try {
    if (solve_cmd->parsed()) return cmd_solve(instance_path, trace);
    if (verify_cmd->parsed()) return cmd_margin(instance_path, matching_path, true);
    if (margin_cmd->parsed()) return cmd_margin(instance_path, matching_path, false);
    if (oracle_cmd->parsed()) return cmd_oracle(instance_path, guard_override);
    if (reduce_cmd->parsed()) return cmd_reduce(cnf_path, out_path, index_out);
    if (gen_cmd->parsed())
      return cmd_gen(family, fixture_name, n, na, nb, density, tie_fraction, seed, out_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
