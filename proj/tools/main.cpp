#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "symplan/cover.hpp"
#include "symplan/dfield.hpp"
#include "symplan/errors.hpp"
#include "symplan/planners.hpp"

namespace {

using namespace symplan;

std::string fmt_g12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// "-" writes to stdout; anything else is a file path.
void write_text(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::fwrite(content.data(), 1, content.size(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << content)) {
    throw ParseError("cannot write " + path);
  }
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError("cannot read " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Rule parse_rule(const std::string& name) {
  const auto rule = rule_from_name(name);
  if (!rule) {
    throw ParseError("unknown rule " + name);
  }
  return *rule;
}

double uniform_turn(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

int cmd_plan(const std::string& rule_name, double from, double to) {
  const LiftedPath path = plan(parse_rule(rule_name), Turn(from), Turn(to));
  std::string out;
  for (const Breakpoint& b : path.breakpoints()) {
    out += fmt_g12(b.s) + " " + fmt_g12(b.u) + "\n";
  }
  out += "displacement " + fmt_g12(path.displacement()) + "\n";
  std::fputs(out.c_str(), stdout);
  return 0;
}

int cmd_d(const std::string& rule_name, double t, double tp) {
  std::printf("%d\n", d_value(parse_rule(rule_name), t, tp));
  return 0;
}

int cmd_dmap(const std::string& rule_name, int n, const std::string& out) {
  write_text(out, dump_text(d_map(parse_rule(rule_name), n)));
  return 0;
}

int cmd_render(const std::string& rule_name, int n, const std::string& out) {
  write_text(out, render_ppm(d_map(parse_rule(rule_name), n)));
  return 0;
}

int cmd_verify(const std::string& rule_name, int n) {
  const Rule rule = parse_rule(rule_name);
  int violations = check_identities(d_map(rule, n)).total();
  // Reversal symmetry spot checks on seeded in-domain pairs.
  std::mt19937_64 gen(20250816u);
  int checked = 0;
  while (checked < 256) {
    const Turn z{uniform_turn(gen)};
    const Turn zp{uniform_turn(gen)};
    if (domain_margin(rule, z, zp) <= 1e-6) continue;
    ++checked;
    if (reversal_gap(rule, z, zp, 64) > 1e-9) ++violations;
  }
  std::printf("violations %d\n", violations);
  return violations == 0 ? 0 : 1;
}

int cmd_coverage(int n) {
  const CoverageReport report = coverage_check(n);
  std::printf("min_margin %s vertex %d %d\n", fmt_g12(report.min_margin).c_str(),
              report.i, report.j);
  return report.min_margin > 0.0 ? 0 : 1;
}

int cmd_validate(const std::string& cover_path) {
  const ParsedCover parsed = parse_cover(read_text(cover_path));
  const ValidationResult result = validate(parsed.cover);
  if (result.ok()) {
    std::fputs("VALID\n", stdout);
    std::fputs(write_cover(parsed.cover, &result.labels).c_str(), stdout);
    return 0;
  }
  for (const CoverViolation& v : result.violations) {
    switch (v.kind) {
      case ViolationKind::Uncovered:
        std::printf("violation uncovered %d %d\n", v.i, v.j);
        break;
      case ViolationKind::TransposeBroken:
        std::printf("violation transpose color %d vertex %d %d\n", v.color,
                    v.i, v.j);
        break;
      case ViolationKind::OffsetContradiction:
        std::printf("violation offset color %d vertex %d %d\n", v.color, v.i,
                    v.j);
        break;
      case ViolationKind::ParityContradiction:
        std::printf("violation parity color %d vertex %d %d\n", v.color, v.i,
                    v.j);
        break;
    }
  }
  return 1;
}

void print_outcome_line(const SearchOutcome& outcome) {
  switch (outcome.kind) {
    case OutcomeKind::Sat:
      std::fputs("SAT\n", stdout);
      break;
    case OutcomeKind::Unsat:
      std::fputs("UNSAT\n", stdout);
      break;
    case OutcomeKind::BudgetExceeded:
      std::fputs("BUDGET\n", stdout);
      break;
  }
  std::printf("nodes %lld\n", outcome.nodes);
}

int cmd_search(int n, int k, const std::string& mode_name, long long budget) {
  const SearchMode mode = mode_name == "exhaustive" ? SearchMode::Exhaustive
                                                    : SearchMode::Backtracking;
  const SearchOutcome outcome = search(n, k, mode, budget);
  print_outcome_line(outcome);
  if (outcome.kind == OutcomeKind::BudgetExceeded) {
    std::string line = "frontier";
    for (const int mask : outcome.frontier) {
      line += " " + std::to_string(mask);
    }
    line += "\n";
    std::fputs(line.c_str(), stdout);
    return 0;
  }
  if (outcome.kind == OutcomeKind::Sat) {
    std::fputs(write_cover(outcome.witness, &outcome.labels).c_str(), stdout);
    // Satisfiability with two or fewer colors contradicts the expected
    // minimum of three, so it is reported as a finding.
    return k <= 2 ? 1 : 0;
  }
  return 0;
}

int cmd_mink(int n, int max_k, long long budget) {
  const MinKResult result = find_min_k(n, max_k, budget);
  for (const auto& entry : result.outcomes) {
    const char* word = entry.outcome.kind == OutcomeKind::Sat ? "SAT"
                       : entry.outcome.kind == OutcomeKind::Unsat
                           ? "UNSAT"
                           : "BUDGET";
    std::printf("k %d %s nodes %lld%s\n", entry.k, word, entry.outcome.nodes,
                entry.via_construction ? " constructed" : "");
  }
  if (result.min_k == 0) {
    std::fputs("mink none\n", stdout);
    return 0;
  }
  std::printf("mink %d\n", result.min_k);
  return result.min_k <= 2 ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"symmetric motion planning on the circle"};
  app.require_subcommand(1);

  std::string rule = "geodesic";
  std::string mode = "exhaustive";
  std::string out_path = "-";
  std::string cover_path;
  double from = 0.0;
  double to = 0.0;
  double t = 0.0;
  double tp = 0.0;
  int n = 0;
  int k = 1;
  int max_k = 3;
  long long budget = 10000000;

  const auto rule_check =
      CLI::IsMember({"geodesic", "through1", "throughi"});
  const auto mode_check = CLI::IsMember({"exhaustive", "backtracking"});

  CLI::App* plan_cmd = app.add_subcommand("plan", "plan a path between two circle points");
  plan_cmd->add_option("--rule", rule)->required()->check(rule_check);
  plan_cmd->add_option("--from", from)->required();
  plan_cmd->add_option("--to", to)->required();

  CLI::App* d_cmd = app.add_subcommand("d", "winding defect of the planned path");
  d_cmd->add_option("--rule", rule)->required()->check(rule_check);
  d_cmd->add_option("--t", t)->required();
  d_cmd->add_option("--tp", tp)->required();

  CLI::App* dmap_cmd = app.add_subcommand("dmap", "text dump of the defect grid");
  dmap_cmd->add_option("--rule", rule)->required()->check(rule_check);
  dmap_cmd->add_option("--n", n)->required()->check(CLI::Range(2, 1 << 20));
  dmap_cmd->add_option("--out", out_path);

  CLI::App* render_cmd = app.add_subcommand("render", "PPM image of the defect grid");
  render_cmd->add_option("--rule", rule)->required()->check(rule_check);
  render_cmd->add_option("--n", n)->required()->check(CLI::Range(2, 1 << 20));
  render_cmd->add_option("--out", out_path);

  CLI::App* verify_cmd = app.add_subcommand("verify", "check defect identities and reversal symmetry");
  verify_cmd->add_option("--rule", rule)->required()->check(rule_check);
  verify_cmd->add_option("--n", n)->required()->check(CLI::Range(2, 1 << 20));

  CLI::App* coverage_cmd = app.add_subcommand("coverage", "worst planning margin over the square");
  coverage_cmd->add_option("--n", n)->required()->check(CLI::Range(2, 1 << 20));

  CLI::App* validate_cmd = app.add_subcommand("validate", "validate a cover file");
  validate_cmd->add_option("--cover", cover_path)->required();

  CLI::App* search_cmd = app.add_subcommand("search", "search covers with k colors");
  search_cmd->add_option("--n", n)->required()->check(CLI::Range(2, 64));
  search_cmd->add_option("--k", k)->required()->check(CLI::Range(1, 20));
  search_cmd->add_option("--mode", mode)->check(mode_check);
  search_cmd->add_option("--budget", budget)->check(CLI::PositiveNumber);

  CLI::App* mink_cmd = app.add_subcommand("mink", "smallest satisfiable color count");
  mink_cmd->add_option("--n", n)->required()->check(CLI::Range(2, 64));
  mink_cmd->add_option("--maxk", max_k)->check(CLI::Range(1, 20));
  mink_cmd->add_option("--budget", budget)->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(plan_cmd)) return cmd_plan(rule, from, to);
    if (app.got_subcommand(d_cmd)) return cmd_d(rule, t, tp);
    if (app.got_subcommand(dmap_cmd)) return cmd_dmap(rule, n, out_path);
    if (app.got_subcommand(render_cmd)) return cmd_render(rule, n, out_path);
    if (app.got_subcommand(verify_cmd)) return cmd_verify(rule, n);
    if (app.got_subcommand(coverage_cmd)) return cmd_coverage(n);
    if (app.got_subcommand(validate_cmd)) return cmd_validate(cover_path);
    if (app.got_subcommand(search_cmd)) return cmd_search(n, k, mode, budget);
    if (app.got_subcommand(mink_cmd)) return cmd_mink(n, max_k, budget);
  } catch (const ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const NonFiniteError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const BadGridError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const Error& e) {
    // Domain exclusions, identity failures, and solver contradictions are
    // findings, not usage problems.
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}
