#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bmlab/deficits.hpp"
#include "bmlab/partition.hpp"
#include "bmlab/scenario.hpp"
#include "bmlab/set_io.hpp"
#include "bmlab/verify.hpp"

namespace {

constexpr int kOk = 0, kAssertion = 1, kUsage = 2;

struct Settings {
  std::string config;

  std::string set_a, set_b, t = "1/2", id = "deficit";

  std::string scenario;
  int dim = 2;
  std::string pitch;
  std::vector<std::string> h_list;
  int trials = 10;
  std::uint64_t seed = 0;
  std::string out, plot;
  bool timing = false;

  std::string suite;
  std::optional<int> verify_trials;

  std::string input, eps = "1/4", leaves;
  int max_depth = 4;

  int cross_trials = 200;
};

std::unique_ptr<CLI::App> make_app(Settings& s) {
  auto app = std::make_unique<CLI::App>("Exact Brunn-Minkowski stability lab on lattice cell sets", "bmlab");
  app->require_subcommand(1);
  app->add_option("--config", s.config, "key = value file; flags given on the command line win")->check(CLI::ExistingFile);

  auto* deficit = app->add_subcommand("deficit", "All stability functionals of one pair");
  deficit->add_option("--set-a", s.set_a, "Set file for A")->required()->check(CLI::ExistingFile);
  deficit->add_option("--set-b", s.set_b, "Set file for B")->required()->check(CLI::ExistingFile);
  deficit->add_option("--t", s.t, "Weight p/q in (0, 1)")->capture_default_str();
  deficit->add_option("--id", s.id, "scenario_id column")->capture_default_str();

  auto* scenario = app->add_subcommand("scenario", "Run an instance family and emit CSV");
  scenario->add_option("name", s.scenario, "sharp-family, freiman1d, box-hull, perturbed-convex, intconvex")
      ->required()
      ->check(CLI::IsMember(bmlab::scenario_names()));
  scenario->add_option("--dim", s.dim)->capture_default_str();
  scenario->add_option("--t", s.t)->capture_default_str();
  scenario->add_option("--pitch", s.pitch, "Family default when omitted");
  scenario->add_option("--h-list", s.h_list, "Pitches for sharp-family, comma separated")->delimiter(',');
  scenario->add_option("--trials", s.trials)->capture_default_str();
  scenario->add_option("--seed", s.seed)->envname("BMLAB_SEED")->capture_default_str();
  scenario->add_option("--out", s.out, "CSV path (stdout when omitted)");
  scenario->add_option("--plot", s.plot, "Plot-data path");
  scenario->add_flag("--timing", s.timing, "Fill runtime_ms");

  auto* verify = app->add_subcommand("verify", "Acceptance checks");
  verify->add_option("suite", s.suite)->required()->check(CLI::IsMember(bmlab::verify_suites()));
  verify->add_option("--trials", s.verify_trials, "Instances per check (criterion defaults when omitted)");
  verify->add_option("--seed", s.seed)->envname("BMLAB_SEED")->capture_default_str();

  auto* partition = app->add_subcommand("partition", "Linear partition process on a set");
  partition->add_option("--input", s.input)->required()->check(CLI::ExistingFile);
  partition->add_option("--t", s.t)->capture_default_str();
  partition->add_option("--eps", s.eps)->capture_default_str();
  partition->add_option("--max-depth", s.max_depth)->capture_default_str();
  partition->add_option("--leaves", s.leaves, "Leaves CSV path");

  auto* crosscheck = app->add_subcommand("crosscheck", "Kernel against oracle on random pairs");
  crosscheck->add_option("--trials", s.cross_trials)->capture_default_str();
  crosscheck->add_option("--seed", s.seed)->envname("BMLAB_SEED")->capture_default_str();
  crosscheck->add_option("--out", s.out, "CSV path (stdout when omitted)");
  return app;
}

/// Config keys become flags of the chosen subcommand unless already given.
std::vector<std::string> with_config(const CLI::App& parsed, const std::string& path, std::vector<std::string> args) {
  const CLI::App* sub = parsed.get_subcommands().front();
  std::ifstream in(path);
  for (const auto& item : CLI::ConfigINI().from_config(in)) {
    if (item.name == "++" || item.name == "--") continue;
    const CLI::Option* op = sub->get_option_no_throw("--" + item.name);
    if (op == nullptr) throw bmlab::InvalidArgument(path + ": unknown key for " + sub->get_name() + ": " + item.name);
    if (op->count() > 0) continue;
    if (op->get_expected_min() == 0) {
      if (item.inputs.empty() || item.inputs.front() == "true" || item.inputs.front() == "1") args.push_back("--" + item.name);
      continue;
    }
    for (const auto& v : item.inputs) args.push_back("--" + item.name + "=" + v);
  }
  return args;
}

void write_or_print(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw bmlab::InvalidArgument("cannot write " + path);
  out << text;
}

int run_deficit(const Settings& s) {
  const auto a = bmlab::parse_set_file(s.set_a), b = bmlab::parse_set_file(s.set_b);
  const auto r = bmlab::deficit_report(a, b, bmlab::Weight::parse(s.t), s.id);
  std::cout << bmlab::deficit_csv_header() << '\n' << bmlab::deficit_csv_row(r) << '\n';
  if (r.delta_t && *r.delta_t < 0) {
    std::cerr << "assertion failed: delta_t < 0\n";
    return kAssertion;
  }
  return kOk;
}

int run_scenario(const Settings& s) {
  bmlab::ScenarioSpec spec;
  spec.name = s.scenario;
  spec.dim = s.dim;
  spec.t = bmlab::Weight::parse(s.t).value();
  if (!s.pitch.empty()) spec.pitch = bmlab::parse_rational(s.pitch);
  for (const auto& h : s.h_list) spec.h_list.push_back(bmlab::parse_rational(h));
  spec.trials = s.trials;
  spec.seed = s.seed;
  spec.timing = s.timing;
  const auto result = bmlab::run_scenario(spec);
  if (result.rows.empty()) throw bmlab::InvalidArgument("scenario produced no rows");
  if (s.out.empty()) {
    std::cout << bmlab::scenario_csv(result);
    if (!s.plot.empty()) write_or_print(s.plot, bmlab::plot_data(result));
  } else {
    bmlab::emit_report(result, s.out, s.plot);
  }
  for (const auto& f : result.failures) std::cerr << "assertion failed: " << f << '\n';
  return result.ok() ? kOk : kAssertion;
}

int run_verify(const Settings& s) {
  bmlab::VerifyOptions opt;
  opt.trials = s.verify_trials;
  opt.seed = s.seed;
  bool ok = true;
  const int id = bmlab::suite_criterion(s.suite);
  const int lo = id == 0 ? 1 : id, hi = id == 0 ? 10 : id;
  for (int i = lo; i <= hi; ++i) {
    const auto r = bmlab::run_criterion(i, opt);
    std::cout << bmlab::format_result(r) << std::endl;
    ok = ok && r.pass;
  }
  return ok ? kOk : kAssertion;
}

int run_partition(const Settings& s) {
  const auto a = bmlab::parse_set_file(s.input);
  if (s.max_depth < 0) throw bmlab::InvalidArgument("max-depth must be >= 0");
  const auto tree = bmlab::linear_partition_process(a, bmlab::Weight::parse(s.t), bmlab::parse_rational(s.eps), s.max_depth);
  std::cout << bmlab::dump_tree(tree);
  if (!s.leaves.empty()) write_or_print(s.leaves, bmlab::leaves_csv(tree));
  bmlab::Rational leaf_volume = 0;
  for (size_t id : tree.leaves()) leaf_volume += tree.nodes[id].simplex_volume;
  if (leaf_volume != tree.hull_volume) {
    std::cerr << "assertion failed: leaf volumes do not sum to |co(A)|\n";
    return kAssertion;
  }
  return kOk;
}

int run_crosscheck(const Settings& s) {
  if (s.cross_trials < 1) throw bmlab::InvalidArgument("trials must be >= 1");
  std::string csv = bmlab::oracle::crosscheck_csv_header() + "\n";
  bool ok = true;
  for (const auto& rep : bmlab::crosscheck_run(s.cross_trials, s.seed)) {
    csv += bmlab::oracle::crosscheck_csv_rows(rep);
    ok = ok && rep.pass();
  }
  write_or_print(s.out, csv);
  return ok ? kOk : kAssertion;
}

}  // namespace

int main(int argc, char** argv) {
  // CLI11 takes arguments in reverse and consumes them.
  std::vector<std::string> reversed;
  for (int i = argc - 1; i > 0; --i) reversed.emplace_back(argv[i]);
  Settings s;
  auto app = make_app(s);
  try {
    auto first = reversed;
    app->parse(first);
    if (!s.config.empty()) {
      auto forward = with_config(*app, s.config, std::vector<std::string>(reversed.rbegin(), reversed.rend()));
      s = Settings{};
      app = make_app(s);
      std::vector<std::string> second(forward.rbegin(), forward.rend());
      app->parse(second);
    }
  } catch (const CLI::ParseError& e) {
    const int code = app->exit(e);
    return code == 0 ? kOk : kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    const std::string cmd = app->get_subcommands().front()->get_name();
    if (cmd == "deficit") return run_deficit(s);
    if (cmd == "scenario") return run_scenario(s);
    if (cmd == "verify") return run_verify(s);
    if (cmd == "partition") return run_partition(s);
    return run_crosscheck(s);
  } catch (const bmlab::ConvergenceError& e) {
    std::cerr << "assertion failed: " << e.what() << '\n';
    return kAssertion;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
}
