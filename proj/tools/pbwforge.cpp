#include <pbwforge/cli.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw pbwforge::input_error("cannot open input file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw pbwforge::input_error("cannot write '" + path + "'");
  out << text;
}

struct Options {
  std::string input;
  std::string out;
  std::string tsv;
  bool summary = false;
};

void add_io(CLI::App* sub, Options& o, bool input_required) {
  auto* in = sub->add_option("--input,-i", o.input, "problem file (JSON)");
  if (input_required) in->required()->check(CLI::ExistingFile);
  sub->add_option("--out,-o", o.out, "report file (JSON); stdout when omitted");
  sub->add_option("--tsv", o.tsv, "write dimension tables as TSV");
  sub->add_flag("--summary", o.summary, "print a plain-text summary");
}

int emit(const pbwforge::cli::Outcome& outcome, const Options& o) {
  if (outcome.exit_code >= pbwforge::cli::exit_invalid) {
    std::cerr << "pbwforge: " << outcome.summary;
    return outcome.exit_code;
  }
  const std::string report = outcome.report.dump(2) + "\n";
  if (o.out.empty()) std::cout << report;
  else write_file(o.out, report);
  if (!o.tsv.empty()) write_file(o.tsv, outcome.tsv);
  if (o.summary) (o.out.empty() ? std::cerr : std::cout) << outcome.summary;
  return outcome.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  namespace pc = pbwforge::cli;
  CLI::App app{"Exact PBW checks for inhomogeneous N-homogeneous algebras"};
  app.set_version_flag("--version", std::string("pbwforge ") + pc::engine_version);
  app.require_subcommand(1);

  Options o;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"run", "execute every task listed in the problem file"},
      {"identities", "structural identities of the presentation"},
      {"check-current", "PBW verdict for the problem's current"},
      {"classify", "staged classification and family comparison"},
      {"oracle", "brute-force filtered-ideal oracle"},
      {"hilbert", "Hilbert coefficients of the homogeneous algebra"},
  };
  for (const auto& [name, help] : commands) add_io(app.add_subcommand(name, help), o, true);

  std::string bracket = "so3";
  std::size_t n_max = 6;
  std::uint64_t seed = 0;
  auto* demo = app.add_subcommand("demo-lie", "quadratic PBW demo on a built-in bracket");
  demo->add_option("bracket", bracket, "so3, broken or random")->check(CLI::IsMember({"so3", "broken", "random"}));
  demo->add_option("--n-max", n_max, "oracle degree")->check(CLI::Range(0, 12));
  auto* seed_opt = demo->add_option("--seed", seed, "seed for the random bracket");
  add_io(demo, o, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : pc::exit_invalid;
  }

  try {
    const std::string command = app.get_subcommands().front()->get_name();
    if (command == "demo-lie") {
      std::optional<std::uint64_t> s;
      if (seed_opt->count()) s = seed;
      pc::Outcome outcome;
      try {
        outcome = pc::demo_lie(bracket, n_max, s);
      } catch (const pbwforge::input_error& e) {
        outcome.exit_code = pc::exit_invalid;
        outcome.summary = std::string("invalid input: ") + e.what() + "\n";
      } catch (const pbwforge::resource_error& e) {
        outcome.exit_code = pc::exit_resource;
        outcome.summary = std::string("resource limit: ") + e.what() + "\n";
      }
      return emit(outcome, o);
    }
    return emit(pc::run_text(command, read_file(o.input)), o);
  } catch (const pbwforge::input_error& e) {
    std::cerr << "pbwforge: invalid input: " << e.what() << "\n";
    return pc::exit_invalid;
  } catch (const std::exception& e) {
    std::cerr << "pbwforge: internal error: " << e.what() << "\n";
    return pc::exit_internal;
  }
}
