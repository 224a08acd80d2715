#include "valueplan/cli.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "valueplan/ilp_model.hpp"
#include "valueplan/project_io.hpp"
#include "valueplan/report_io.hpp"
#include "valueplan/service.hpp"

namespace valueplan {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRejected = 1;
constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::chrono::milliseconds seconds_to_ms(const std::string& text, const std::string& what) {
  auto d = Decimal::parse(text);
  if (!d || *d <= Decimal{}) throw UsageError(what + " must be a positive number of seconds");
  return std::chrono::milliseconds(d->scaled() / (Decimal::kScale / 1000));
}

std::chrono::milliseconds default_timeout() {
  if (const char* env = std::getenv("VALUEPLAN_TIMEOUT"); env && *env) {
    return seconds_to_ms(env, "VALUEPLAN_TIMEOUT");
  }
  return std::chrono::milliseconds(60'000);
}

void print_violations(std::ostream& out, const std::vector<Violation>& violations) {
  out << violations.size() << " violation(s):\n";
  for (const Violation& v : violations) out << "  " << v.message() << '\n';
}

struct Options {
  std::string file;
  std::string format = "table";
  int type = 0;
  std::string budget;
  std::vector<std::string> betas;
  std::string timeout;
  std::string output;
  int port = 8080;
  std::string host = "127.0.0.1";
  std::string data_dir;
};

int run_validate(const Options& opt, std::ostream& out) {
  Project p = parse_project(read_file(opt.file));
  out << "valid: " << p.requirement_count() << " requirement(s), " << p.type_count()
      << " value type(s)\n";
  return kExitOk;
}

int run_influence(const Options& opt, std::ostream& out) {
  Project p = parse_project(read_file(opt.file));
  const auto influences = compute_influences(p);
  if (opt.type != 0 && (opt.type < 1 || opt.type > static_cast<int>(p.type_count()))) {
    throw UsageError("--type must be between 1 and " + std::to_string(p.type_count()));
  }
  const int first = opt.type ? opt.type : 1;
  const int last = opt.type ? opt.type : static_cast<int>(p.type_count());
  if (opt.format == "machine-readable") {
    if (opt.type) {
      out << influence_to_json(opt.type, influences[opt.type - 1]).dump() << '\n';
    } else {
      nlohmann::json all = nlohmann::json::array();
      for (int t = first; t <= last; ++t) all.push_back(influence_to_json(t, influences[t - 1]));
      out << all.dump() << '\n';
    }
  } else {
    for (int t = first; t <= last; ++t) {
      if (!opt.type && p.graphs[t - 1].edge_count() == 0 && t != 1) continue;
      out << format_influence_table(t, influences[t - 1]) << '\n';
    }
  }
  return kExitOk;
}

int run_solve(const Options& opt, std::ostream& out) {
  Project p = parse_project(read_file(opt.file));
  SolveOverrides overrides;
  if (!opt.budget.empty()) {
    auto b = Decimal::parse(opt.budget);
    if (!b) throw UsageError("--budget must be a decimal number");
    overrides.budget = *b;
  }
  for (const std::string& spec : opt.betas) {
    const auto eq = spec.find('=');
    int index = 0;
    std::optional<Decimal> value;
    if (eq != std::string::npos) {
      auto [ptr, ec] = std::from_chars(spec.data(), spec.data() + eq, index);
      if (ec == std::errc{} && ptr == spec.data() + eq) value = Decimal::parse(spec.substr(eq + 1));
    }
    if (!value) throw UsageError("--beta expects t=V, got '" + spec + "'");
    overrides.betas[index] = *value;
  }
  p = apply_overrides(p, overrides);

  SolveOptions options;
  options.timeout = opt.timeout.empty() ? default_timeout() : seconds_to_ms(opt.timeout, "--timeout");
  const auto influences = compute_influences(p);
  const SolveReport report = solve_exact(p, influences, options);
  if (opt.format == "machine-readable") {
    out << report_to_json(report).dump() << '\n';
  } else {
    out << format_report_table(p, report);
  }
  const bool failed = report.status == SolveStatus::infeasible ||
                      report.status == SolveStatus::timeout_no_incumbent;
  return failed ? kExitRejected : kExitOk;
}

int run_export(const Options& opt, std::ostream& out) {
  Project p = parse_project(read_file(opt.file));
  const std::string text = export_lp(p, compute_influences(p));
  if (opt.output == "-") {
    out << text;
    return kExitOk;
  }
  std::ofstream file(opt.output, std::ios::binary | std::ios::trunc);
  if (!file) throw UsageError("cannot write " + opt.output);
  file << text;
  out << "wrote " << opt.output << '\n';
  return kExitOk;
}

int run_serve(const Options& opt, std::ostream& out) {
  ServiceConfig config;
  if (!opt.timeout.empty()) config.solve_timeout = seconds_to_ms(opt.timeout, "--timeout");
  if (!opt.data_dir.empty()) config.data_directory = opt.data_dir;
  Service service(config);
  const int port = service.bind(opt.host, opt.port);
  if (port < 0) throw UsageError("cannot bind " + opt.host + ":" + std::to_string(opt.port));
  out << "listening on http://" << opt.host << ':' << port << std::endl;
  return service.run() ? kExitOk : kExitRejected;
}

}  // namespace

int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Release planning with value dependencies", "valueplan"};
  app.require_subcommand(1);
  Options opt;
  const std::vector<std::string> formats{"table", "machine-readable"};

  auto* validate = app.add_subcommand("validate", "Check a project document");
  validate->add_option("file", opt.file, "Project document")->required();

  auto* influence = app.add_subcommand("influence", "Print influence matrices");
  influence->add_option("file", opt.file, "Project document")->required();
  influence->add_option("--type", opt.type, "Value-type index (default: all)");
  influence->add_option("--format", opt.format)->check(CLI::IsMember(formats));

  auto* solve = app.add_subcommand("solve", "Find an optimal release plan");
  solve->add_option("file", opt.file, "Project document")->required();
  solve->add_option("--budget", opt.budget, "Override the budget");
  solve->add_option("--beta", opt.betas, "Override a value bound, t=V (repeatable)");
  solve->add_option("--timeout", opt.timeout, "Time limit in seconds (default $VALUEPLAN_TIMEOUT or 60)");
  solve->add_option("--format", opt.format)->check(CLI::IsMember(formats));

  auto* exporter = app.add_subcommand("export-lp", "Write the integer program in LP format");
  exporter->add_option("file", opt.file, "Project document")->required();
  exporter->add_option("-o,--output", opt.output, "Output path, '-' for stdout")->required();

  auto* serve = app.add_subcommand("serve", "Start the HTTP service");
  serve->add_option("--port", opt.port, "Port (0 picks a free one)");
  serve->add_option("--host", opt.host, "Interface to bind");
  serve->add_option("--data-dir", opt.data_dir, "Write-through document directory");
  serve->add_option("--timeout", opt.timeout, "Per-request solve limit in seconds (default 10)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*validate) return run_validate(opt, out);
    if (*influence) return run_influence(opt, out);
    if (*solve) return run_solve(opt, out);
    if (*exporter) return run_export(opt, out);
    if (*serve) return run_serve(opt, out);
  } catch (const ValidationError& e) {
    print_violations(out, e.violations());
    return kExitRejected;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<std::string> storage;
  storage.reserve(args.size() + 1);
  storage.emplace_back("valueplan");
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (std::string& s : storage) argv.push_back(s.data());
  return cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace valueplan
