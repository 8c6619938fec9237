#include "cli.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "stochorder/stochorder.hpp"

namespace stochorder::cli {
namespace {

using io::json;

struct Config {
  std::string input;
  std::string format = "table";
  std::uint64_t seed = 42;
  std::size_t n = 0;
  double eps = 0.5;
  std::size_t bootstrap = 1000;
  double level = 0.95;
  std::string out;
  std::string which = "all";
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void row(std::ostream& out, const std::string& order, const Verdict& v, const std::string& evidence) {
  out << std::left << std::setw(28) << order << std::setw(16) << to_string(v.outcome) << std::setw(11)
      << preferred_side(v.outcome) << evidence << '\n';
}

void header(std::ostream& out) {
  out << std::left << std::setw(28) << "order" << std::setw(16) << "verdict" << std::setw(11) << "preferred"
      << "evidence" << '\n';
}

void render_table(std::ostream& out, const ComparisonReport& r, const PartialOrderReport* st) {
  header(out);
  row(out, "stochastic precedence", r.sp, "P(X<=Y)=" + fmt(r.sp.first) + "  P(Y<=X)=" + fmt(r.sp.second));
  row(out, "mean", r.mean, "E(X)=" + fmt(r.mean_x) + "  E(Y)=" + fmt(r.mean_y));
  row(out, "conditional L1 precedence", r.cp_l1, "below=" + fmt(r.l1.below) + "  above=" + fmt(r.l1.above));
  row(out, "conditional K* precedence", r.cp_kstar,
      "below=" + fmt(r.kstar.below) + "  above=" + fmt(r.kstar.above));
  if (st) {
    std::string ev = "max F_X-F_Y=" + fmt(st->verdict.first) + "  max F_Y-F_X=" + fmt(st->verdict.second);
    row(out, "usual stochastic (st)", st->verdict, ev);
  }
}

std::string ci_text(const EstimateWithCI& e) {
  return fmt(e.point) + " [" + fmt(e.ci_low) + ", " + fmt(e.ci_high) + "]";
}

int cmd_compare(const Config& cfg, std::ostream& out) {
  const json doc = [&] {
    try {
      return json::parse(read_file(cfg.input));
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
    }
  }();

  if (io::is_grid_document(doc)) {
    const GridDensityPair grid = io::grid_from_json(doc);
    json report = json::object();
    std::vector<std::pair<std::string, PartialOrderReport>> rows;
    auto run_one = [&](const std::string& name, auto&& fn) {
      try {
        PartialOrderReport r = fn(grid);
        report[name] = io::to_json(r);
        rows.emplace_back(name, std::move(r));
      } catch (const Error& e) {
        report[name] = {{"verdict", "Inconclusive"}, {"error", e.what()}};
        rows.emplace_back(name, PartialOrderReport{name, {}, std::nullopt});
      }
    };
    run_one("st", [](const GridDensityPair& g) { return compare_st(g); });
    run_one("hr", [](const GridDensityPair& g) { return compare_hr(g); });
    run_one("lr", [](const GridDensityPair& g) { return compare_lr(g); });
    run_one("mrl", [](const GridDensityPair& g) { return compare_mrl(g); });
    if (cfg.format == "json") {
      out << report.dump(2) << '\n';
    } else {
      header(out);
      for (const auto& [name, r] : rows) {
        std::string ev = "margins " + fmt(r.verdict.first) + " / " + fmt(r.verdict.second);
        if (r.witness) ev += "  witness " + fmt(r.witness->first_holds_at) + ", " + fmt(r.witness->second_holds_at);
        row(out, name, r.verdict, ev);
      }
    }
    return kSuccess;
  }

  const FiniteJointDistribution joint = io::joint_from_json(doc);
  const ComparisonReport report = compare_all(joint);
  const PartialOrderReport st = compare_st(marginal_x(joint), marginal_y(joint));
  if (cfg.format == "json") {
    json j = io::to_json(report);
    j["st"] = io::to_json(st);
    out << j.dump(2) << '\n';
  } else {
    render_table(out, report, &st);
  }
  return kSuccess;
}

int cmd_estimate(const Config& cfg, std::ostream& out) {
  std::ifstream in(cfg.input);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + cfg.input);
  const PairedSample sample = io::read_sample_csv(in);
  EstimateOptions options;
  options.level = cfg.level;
  options.resamples = cfg.bootstrap;
  options.seed = cfg.seed;
  const EstimateReport report = estimate_orders(sample, options);
  if (cfg.format == "json") {
    out << io::to_json(report).dump(2) << '\n';
    return kSuccess;
  }
  out << "n=" << report.n << "  bootstrap-percentile B=" << options.resamples << " level=" << fmt(options.level)
      << " seed=" << options.seed << "\n\n";
  render_table(out, report.point, nullptr);
  out << '\n'
      << std::left << std::setw(16) << "P(X<Y)" << ci_text(report.p_less) << '\n'
      << std::setw(16) << "P(X=Y)" << ci_text(report.p_equal) << '\n'
      << std::setw(16) << "P(X>Y)" << ci_text(report.p_greater) << '\n'
      << std::setw(16) << "L1 below" << ci_text(report.l1_below) << '\n'
      << std::setw(16) << "L1 above" << ci_text(report.l1_above) << '\n'
      << std::setw(16) << "K* below" << ci_text(report.kstar_below) << '\n'
      << std::setw(16) << "K* above" << ci_text(report.kstar_above) << '\n'
      << std::setw(16) << "E(Y)-E(X)" << ci_text(report.mean_difference) << '\n';
  return kSuccess;
}

int cmd_sample(const Config& cfg, bool eps_given, std::ostream& out) {
  if (cfg.input.empty() == !eps_given) {
    throw Error(ErrorCode::InvalidArgument, "sample needs exactly one source: --input <joint.json> or --eps <value>");
  }
  const std::size_t n = cfg.n ? cfg.n : 1000;
  SeededStream stream(cfg.seed);
  const PairedSample sample = cfg.input.empty()
                                  ? sample_example4(cfg.eps, n, stream)
                                  : sample_joint(io::parse_joint(read_file(cfg.input)), n, stream);
  std::ofstream file(cfg.out, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorCode::InvalidArgument, "cannot write " + cfg.out);
  io::write_sample_csv(file, sample);
  file.close();
  if (!file) throw Error(ErrorCode::InvalidArgument, "failed writing " + cfg.out);
  out << "wrote " << n << " pairs to " << cfg.out << '\n';
  return kSuccess;
}

void render_reproduction(std::ostream& out, const Reproduction& r) {
  out << "== " << r.scenario << ": " << (r.pass() ? "PASS" : "FAIL") << '\n';
  for (const Check& c : r.checks) {
    const char* mark = c.pass ? "ok" : (c.asserted ? "FAIL" : "info");
    out << "  [" << mark << "] " << std::left << std::setw(28) << c.quantity;
    auto text = [](const Check::Value& v) {
      if (const auto* d = std::get_if<double>(&v)) return fmt(*d);
      return std::get<std::string>(v);
    };
    out << " expected " << text(c.expected) << "  computed " << text(c.computed);
    if (c.tolerance) out << "  (tol " << fmt(*c.tolerance) << ")";
    out << "  [" << to_string(c.origin) << "]";
    if (!c.note.empty()) out << "  " << c.note;
    out << '\n';
  }
}

void render_conclusion_table(std::ostream& out) {
  const ComparisonReport a = compare_all(example1().joint), b = compare_all(example2().joint);
  out << std::left << std::setw(28) << "order" << std::setw(11) << "example1" << "example2" << '\n';
  auto line = [&](const char* name, const Verdict& x, const Verdict& y) {
    out << std::setw(28) << name << std::setw(11) << preferred_side(x.outcome) << preferred_side(y.outcome) << '\n';
  };
  line("stochastic precedence", a.sp, b.sp);
  line("mean", a.mean, b.mean);
  line("conditional L1 precedence", a.cp_l1, b.cp_l1);
  line("conditional K* precedence", a.cp_kstar, b.cp_kstar);
  out << '\n';
}

int cmd_reproduce(const Config& cfg, std::ostream& out) {
  Example4Options e4;
  e4.eps = cfg.eps;
  e4.seed = cfg.seed;
  if (cfg.n) e4.n = cfg.n;

  std::vector<Reproduction> runs;
  const bool all = cfg.which == "all";
  if (all || cfg.which == "example1") runs.push_back(reproduce(example1()));
  if (all || cfg.which == "example2") runs.push_back(reproduce(example2()));
  if (all || cfg.which == "transform") runs.push_back(reproduce(transform_counterexample()));
  if (all || cfg.which == "example4") runs.push_back(reproduce_example4(e4));
  if (all || cfg.which == "dice") runs.push_back(reproduce_dice());

  bool pass = true;
  if (cfg.format == "json") {
    for (const auto& r : runs) out << io::to_json(r).dump() << '\n';
  } else {
    if (all) render_conclusion_table(out);
    for (const auto& r : runs) render_reproduction(out, r);
  }
  for (const auto& r : runs) pass = pass && r.pass();
  if (cfg.format != "json") out << (pass ? "ALL PASS" : "REPRODUCTION FAILED") << '\n';
  return pass ? kSuccess : kReproductionFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Compare two random variables under partial, precedence and conditional precedence orders"};
  app.require_subcommand(1);
  Config cfg;

  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "table"}))->capture_default_str();
  };
  auto add_seed = [&](CLI::App* sub) { sub->add_option("--seed", cfg.seed, "Random seed")->capture_default_str(); };

  auto* compare = app.add_subcommand("compare", "Compare a joint law (atoms JSON) or two gridded densities (grid JSON)");
  compare->add_option("--input", cfg.input, "Joint or grid JSON file")->required();
  add_format(compare);

  auto* estimate = app.add_subcommand("estimate", "Estimate every precedence quantity from a paired sample CSV");
  estimate->add_option("--input", cfg.input, "Sample CSV with header x,y")->required();
  add_seed(estimate);
  estimate->add_option("--bootstrap", cfg.bootstrap, "Bootstrap resamples")->check(CLI::PositiveNumber)->capture_default_str();
  estimate->add_option("--level", cfg.level, "Confidence level")->check(CLI::Range(0.0, 1.0))->capture_default_str();
  add_format(estimate);

  auto* sample = app.add_subcommand("sample", "Draw a paired sample CSV from a joint JSON or the two-piece density");
  sample->add_option("--input", cfg.input, "Joint JSON to sample from");
  auto* eps_opt = sample->add_option("--eps", cfg.eps, "Sample the two-piece density with this eps in (0,1)");
  sample->add_option("--n", cfg.n, "Number of pairs (default 1000)")->check(CLI::PositiveNumber);
  sample->add_option("--out", cfg.out, "Output CSV path")->required();
  add_seed(sample);

  auto* repro = app.add_subcommand("reproduce", "Reproduce the canonical scenarios");
  repro->add_option("which", cfg.which, "all | example1 | example2 | transform | example4 | dice")
      ->check(CLI::IsMember({"all", "example1", "example2", "transform", "example4", "dice"}))
      ->capture_default_str();
  repro->add_option("--eps", cfg.eps, "eps for example4")->capture_default_str();
  repro->add_option("--n", cfg.n, "Monte Carlo draws for example4 (default 1000000)")->check(CLI::PositiveNumber);
  add_seed(repro);
  add_format(repro);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  try {
    if (*compare) return cmd_compare(cfg, out);
    if (*estimate) return cmd_estimate(cfg, out);
    if (*sample) return cmd_sample(cfg, eps_opt->count() > 0, out);
    if (*repro) {
      if (!(cfg.eps > 0.0 && cfg.eps < 1.0)) throw Error(ErrorCode::InvalidEpsilon, "eps must lie in (0, 1)");
      return cmd_reproduce(cfg, out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace stochorder::cli
