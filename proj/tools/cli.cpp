#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include "isoplab/acceptance.hpp"
#include "isoplab/error.hpp"
#include "isoplab/group.hpp"
#include "isoplab/isoperimetry.hpp"
#include "isoplab/metric.hpp"
#include "isoplab/report.hpp"
#include "isoplab/search.hpp"

namespace isoplab::cli {

namespace {

/// Everything that determines a run; echoed into every report.
struct RunConfig {
  std::string command;
  std::string group;
  std::string set;
  std::string gamma0;
  std::string sizes;
  std::string family = "intervals";
  std::string format;
  std::string out;
  std::optional<std::size_t> d;
  std::optional<std::size_t> max_radius;
  std::optional<std::size_t> max_n;
  std::optional<std::uint64_t> phi_value;
  std::optional<std::uint64_t> seed;
  std::size_t trials = 1;
  std::size_t ball_cap = kDefaultBallCap;
  std::size_t exhaustive_cap = kDefaultExhaustiveCap;
  bool quick = false;

  Json to_json() const {
    Json j;
    j["command"] = command;
    auto put = [&](const char* key, const std::string& v) {
      if (!v.empty()) j[key] = v;
    };
    put("group", group);
    put("set", set);
    put("gamma0", gamma0);
    put("sizes", sizes);
    if (d) j["d"] = *d;
    if (max_radius) j["max_radius"] = *max_radius;
    if (max_n) j["max_n"] = *max_n;
    if (seed) j["seed"] = *seed;
    j["trials"] = trials;
    j["ball_cap"] = ball_cap;
    put("format", format);
    return j;
  }
};

/// Report output: stdout or --out, in one of the three formats.
class Sink {
 public:
  Sink(const RunConfig& cfg, std::ostream& fallback) : format_(cfg.format) {
    if (!cfg.out.empty()) {
      file_.open(cfg.out);
      if (!file_) throw ParseError("cannot open output file '" + cfg.out + "'");
    }
    os_ = cfg.out.empty() ? &fallback : &file_;
  }
  std::ostream& stream() { return *os_; }
  const std::string& format() const { return format_; }

  void report(const VerificationReport& r) {
    if (format_ == "csv") {
      if (!header_written_) *os_ << csv_header() << '\n';
      header_written_ = true;
      *os_ << to_csv_row(r) << '\n';
    } else if (format_ == "human") {
      *os_ << to_human(r) << '\n';
    } else {
      *os_ << to_jsonl(r) << '\n';
    }
  }

 private:
  std::string format_;
  std::ofstream file_;
  std::ostream* os_;
  bool header_written_ = false;
};

Element parse_gamma0(const GroupSpec& spec, const std::string& text) {
  try {
    return evaluate_word(spec, parse_word(spec, text));
  } catch (const ParseError&) {
    return parse_element(spec, text);
  }
}

std::pair<std::size_t, std::size_t> parse_sizes(const std::string& text) {
  SetDescriptor d = SetDescriptor::parse("exhaustive:" + text);
  return {d.lo, d.hi};
}

/// Calls `fn` once per set named by the configuration: every subset for an
/// exhaustive descriptor, otherwise one set per trial.
void for_each_configured_set(const GroupSpec& spec, const RunConfig& cfg,
                             const std::function<void(const FiniteSubset&, const std::string&)>& fn) {
  if (cfg.set.empty()) throw ParseError("--set is required");
  SetDescriptor desc = SetDescriptor::parse(cfg.set, cfg.seed.value_or(0));
  if (desc.randomized() && !cfg.seed)
    throw ParseError("random set descriptors need an explicit --seed");
  if (desc.kind == SetDescriptor::Kind::Exhaustive) {
    for_each_subset(
        spec, desc, [&](const FiniteSubset& set) { fn(set, "{" + format_subset(spec, set) + "}"); },
        cfg.exhaustive_cap);
    return;
  }
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    SetDescriptor trial = desc.for_trial(t);
    fn(generate_set(spec, trial, cfg.ball_cap), trial.provenance());
  }
}

int cmd_growth(const RunConfig& cfg, std::ostream& out) {
  const GroupSpec spec = GroupSpec::parse(cfg.group);
  Sink sink(cfg, out);
  if (cfg.phi_value) {
    const std::size_t r = phi(spec, *cfg.phi_value, cfg.ball_cap);
    if (sink.format() == "jsonl")
      sink.stream() << Json{{"v", *cfg.phi_value}, {"phi", r}, {"config", cfg.to_json()}}.dump()
                    << '\n';
    else if (sink.format() == "human")
      sink.stream() << "phi(" << *cfg.phi_value << ") = " << r << '\n';
    else
      sink.stream() << "v,phi\n" << *cfg.phi_value << ',' << r << '\n';
    return 0;
  }
  const GrowthTable table = growth(spec, cfg.max_radius.value_or(10), cfg.ball_cap);
  if (sink.format() == "jsonl") {
    for (std::size_t r = 0; r < table.values.size(); ++r)
      sink.stream() << Json{{"r", r}, {"gamma", table.values[r]}, {"config", cfg.to_json()}}.dump()
                    << '\n';
  } else if (sink.format() == "human") {
    for (std::size_t r = 0; r < table.values.size(); ++r)
      sink.stream() << "gamma(" << r << ") = " << table.values[r] << '\n';
  } else {
    table.write_csv(sink.stream());
  }
  return 0;
}

int cmd_verify(const std::string& kind, const RunConfig& cfg, std::ostream& out) {
  const GroupSpec spec = GroupSpec::parse(cfg.group);
  Sink sink(cfg, out);
  bool all_hold = true;

  std::optional<Element> gamma0;
  if (kind == "transport") {
    if (cfg.gamma0.empty()) throw ParseError("verify transport needs --gamma0");
    if (!cfg.d) throw ParseError("verify transport needs --d");
    gamma0 = parse_gamma0(spec, cfg.gamma0);
  }
  if (kind == "lemma31" && !cfg.d) throw ParseError("verify lemma31 needs --d");

  auto emit = [&](VerificationReport r) {
    r.config = cfg.to_json();
    all_hold = all_hold && r.holds();
    sink.report(r);
  };

  for_each_configured_set(spec, cfg, [&](const FiniteSubset& set, const std::string& desc) {
    CheckOptions opts;
    opts.set_descriptor = desc;
    opts.ball_cap = cfg.ball_cap;
    if (kind == "lemma31") {
      emit(lemma31_check(spec, set, *cfg.d, opts));
    } else if (kind == "halfmass") {
      emit(half_mass_witness(spec, set, opts).report);
    } else if (kind == "transport") {
      TransportMapRecord rec = transport_map(spec, *gamma0, set, cfg.ball_cap);
      emit(preimage_counts(spec, rec, *cfg.d, opts));
      emit(displacement_bound_check(spec, *gamma0, set, *cfg.d, opts));
    } else if (kind == "theorem") {
      emit(verify_theorem(spec, set, opts));
    } else if (kind == "csc") {
      emit(verify_csc(spec, set, opts));
    } else if (kind == "boundary-cmp") {
      emit(boundary_comparison(spec, set, opts));
    }
  });
  return all_hold ? 0 : 1;
}

int cmd_profile(const RunConfig& cfg, std::ostream& out) {
  const GroupSpec spec = GroupSpec::parse(cfg.group);
  if (cfg.sizes.empty()) throw ParseError("profile needs --sizes lo..hi");
  auto [lo, hi] = parse_sizes(cfg.sizes);
  const auto rows = exhaustive_profile(spec, lo, hi, cfg.exhaustive_cap);
  Sink sink(cfg, out);
  bool strict = true;
  for (const auto& row : rows) strict = strict && row.strict();
  if (sink.format() == "jsonl") {
    for (const auto& row : rows)
      sink.stream() << Json{{"n", row.n},
                            {"min_boundary", row.min_boundary},
                            {"bound_num", row.bound.num()},
                            {"bound_den", row.bound.den()},
                            {"gap_num", row.gap.num()},
                            {"gap_den", row.gap.den()},
                            {"strict", row.strict()},
                            {"witness", format_subset(spec, row.witness)},
                            {"config", cfg.to_json()}}
                           .dump()
                    << '\n';
  } else if (sink.format() == "human") {
    for (const auto& row : rows)
      sink.stream() << "n=" << row.n << " min |dD|=" << row.min_boundary << " bound=" << row.bound
                    << " gap=" << row.gap << (row.strict() ? " strict" : " NOT STRICT")
                    << " witness={" << format_subset(spec, row.witness) << "}\n";
  } else {
    write_profile_csv(sink.stream(), spec, rows);
  }
  return strict ? 0 : 1;
}

int cmd_sharpness(const RunConfig& cfg, std::ostream& out) {
  const GroupSpec spec = GroupSpec::parse(cfg.group);
  std::vector<SetDescriptor> sets;
  const std::size_t max_n = cfg.max_n.value_or(50);
  if (cfg.family == "intervals") {
    for (std::size_t n = 1; n <= max_n; ++n) sets.push_back(SetDescriptor::interval(n));
  } else if (cfg.family == "balls") {
    for (std::size_t r = 1; r <= max_n; ++r) sets.push_back(SetDescriptor::ball(r));
  } else if (cfg.family == "set") {
    if (cfg.set.empty()) throw ParseError("--family set needs --set");
    SetDescriptor desc = SetDescriptor::parse(cfg.set, cfg.seed.value_or(0));
    if (desc.randomized() && !cfg.seed)
      throw ParseError("random set descriptors need an explicit --seed");
    for (std::size_t t = 0; t < cfg.trials; ++t) sets.push_back(desc.for_trial(t));
  } else {
    throw ParseError("unknown --family '" + cfg.family + "'");
  }
  const SharpnessSummary summary = sharpness_scan(spec, sets, cfg.ball_cap);
  Sink sink(cfg, out);
  if (sink.format() == "human") {
    for (const auto& t : summary.trials)
      sink.stream() << t.index << ' ' << t.descriptor << " |D|=" << t.set_size
                    << " factor=" << t.factor << '\n';
    sink.stream() << "min factor " << summary.min << ", median " << summary.median << '\n';
  } else if (sink.format() == "csv") {
    sink.stream() << "index,descriptor,set_size,factor_num,factor_den\n";
    for (const auto& t : summary.trials)
      sink.stream() << t.index << ',' << t.descriptor << ',' << t.set_size << ','
                    << t.factor.num() << ',' << t.factor.den() << '\n';
  } else {
    Json j = summary.to_json();
    j["config"] = cfg.to_json();
    sink.stream() << j.dump() << '\n';
  }
  return summary.min > Rational(1) ? 0 : 1;
}

int cmd_accept(const RunConfig& cfg, std::ostream& out) {
  AcceptanceOptions opts;
  opts.seed = cfg.seed.value_or(1);
  opts.quick = cfg.quick;
  const auto results = run_acceptance(opts);
  const std::string machine = machine_report(results);
  if (!cfg.out.empty()) {
    std::ofstream file(cfg.out);
    if (!file) throw ParseError("cannot open output file '" + cfg.out + "'");
    file << machine;
  }
  bool all = true;
  if (cfg.format == "jsonl") {
    out << machine;
    for (const auto& r : results) all = all && r.passed;
  } else {
    for (const auto& r : results) {
      all = all && r.passed;
      out << r.scorecard_line() << '\n';
      for (const auto& m : r.messages) out << "    " << m << '\n';
    }
    out << (all ? "ACCEPTED" : "REJECTED") << '\n';
  }
  return all ? 0 : 1;
}

/// Pulls `--config PATH` out of args and merges the file's settings.
std::vector<std::string> apply_config(std::vector<std::string> args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    std::string path;
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i),
                 args.begin() + static_cast<std::ptrdiff_t>(i + 2));
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
    } else {
      continue;
    }
    return merge_config_file(args, path);
  }
  return args;
}

}  // namespace

std::vector<std::string> merge_config_file(const std::vector<std::string>& args,
                                           const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read config file '" + path + "'");
  std::vector<std::string> merged = args;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto eq = line.find('=');
    auto strip = [](std::string s) {
      s.erase(0, s.find_first_not_of(" \t\r"));
      s.erase(s.find_last_not_of(" \t\r") + 1);
      return s;
    };
    if (strip(line).empty()) continue;
    if (eq == std::string::npos) throw ParseError("config line without '=': " + line);
    const std::string key = strip(line.substr(0, eq));
    const std::string value = strip(line.substr(eq + 1));
    const std::string flag = "--" + key;
    bool given = false;
    for (const auto& a : args)
      if (a == flag || a.rfind(flag + "=", 0) == 0) given = true;
    if (given) continue;
    if (key == "quick") {
      if (value == "true" || value == "1") merged.push_back(flag);
      continue;
    }
    merged.push_back(flag);
    merged.push_back(value);
  }
  return merged;
}

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"isoplab: word metrics and isoperimetric checks on Cayley graphs"};
  app.require_subcommand(1);
  const std::vector<std::string> formats{"jsonl", "csv", "human"};

  auto add_common = [&](CLI::App* sub, const std::string& default_format) {
    cfg.format = default_format;
    sub->add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember(formats))
        ->default_str(default_format);
    sub->add_option("--out", cfg.out, "Write output to PATH instead of stdout");
    sub->add_option("--ball-cap", cfg.ball_cap, "Maximum number of ball elements");
  };
  auto add_group = [&](CLI::App* sub) {
    sub->add_option("--group", cfg.group, "Group, e.g. z, zd:2, free:2, heisenberg")->required();
  };

  auto* growth_cmd = app.add_subcommand("growth", "Growth function gamma(r) or phi(v)");
  add_group(growth_cmd);
  growth_cmd->add_option("--max-radius", cfg.max_radius, "Largest radius (default 10)");
  growth_cmd->add_option("--phi", cfg.phi_value, "Print phi(v) instead of the table");

  auto* verify_cmd = app.add_subcommand("verify", "Run one verifier over the configured sets");
  verify_cmd->require_subcommand(1);
  std::string verify_kind;
  const std::pair<const char*, const char*> kinds[] = {
      {"lemma31", "A = B = C for the ball-averaged indicator at radius --d"},
      {"halfmass", "Some x in B(e,d) moves more than half of D out of D"},
      {"transport", "Preimage and displacement bounds of the transport map for --gamma0"},
      {"theorem", "Card(dD)/Card(D) > 1/(2 phi(2 Card(D)))"},
      {"csc", "Card(d_C D)/Card(D) >= 1/(4 Card(S) phi(2 Card(D)))"},
      {"boundary-cmp", "Card(dD) <= Card(S) Card(inner boundary), both conventions"},
  };
  for (const auto& [kind, help] : kinds) {
    auto* sub = verify_cmd->add_subcommand(kind, help);
    add_group(sub);
    sub->add_option("--set", cfg.set, "Set descriptor, e.g. ball:3, explicit:0,1, random:50:7");
    sub->add_option("--d", cfg.d, "Radius d");
    sub->add_option("--gamma0", cfg.gamma0, "Translation as a generator word, e.g. +1+1+1");
    sub->add_option("--trials", cfg.trials, "Number of random trials");
    sub->add_option("--seed", cfg.seed, "Seed for random set descriptors");
    sub->add_option("--exhaustive-cap", cfg.exhaustive_cap, "Largest group for exhaustive:");
    add_common(sub, "jsonl");
    sub->callback([&verify_kind, kind] { verify_kind = kind; });
  }

  auto* profile_cmd = app.add_subcommand("profile", "Exhaustive isoperimetric profile");
  add_group(profile_cmd);
  profile_cmd->add_option("--sizes", cfg.sizes, "Set sizes lo..hi")->required();
  profile_cmd->add_option("--exhaustive-cap", cfg.exhaustive_cap, "Largest group to enumerate");

  auto* sharp_cmd = app.add_subcommand("sharpness", "Isoperimetric sharpness factors lhs/rhs");
  add_group(sharp_cmd);
  sharp_cmd->add_option("--family", cfg.family, "intervals | balls | set");
  sharp_cmd->add_option("--max-n", cfg.max_n, "Largest interval length or ball radius");
  sharp_cmd->add_option("--set", cfg.set, "Set descriptor for --family set");
  sharp_cmd->add_option("--trials", cfg.trials, "Number of random trials");
  sharp_cmd->add_option("--seed", cfg.seed, "Seed for random set descriptors");

  auto* accept_cmd = app.add_subcommand("accept", "Run the acceptance suite");
  accept_cmd->add_flag("--quick", cfg.quick, "Reduced instance counts");
  accept_cmd->add_option("--seed", cfg.seed, "Seed (default 1)");

  // --format default differs per command; only one subcommand runs
  add_common(growth_cmd, "csv");
  add_common(profile_cmd, "csv");
  add_common(sharp_cmd, "jsonl");
  add_common(accept_cmd, "human");

  try {
    std::vector<std::string> args = apply_config(raw_args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.exit_code();
  }

  // add_common on several subcommands overwrote the default; restore it
  // unless --format was given
  auto format_given = [](CLI::App* sub) { return sub->get_option("--format")->count() > 0; };
  auto pick_default = [&](CLI::App* sub, const char* def) {
    if (!format_given(sub)) cfg.format = def;
  };

  try {
    if (growth_cmd->parsed()) {
      cfg.command = "growth";
      pick_default(growth_cmd, "csv");
      return cmd_growth(cfg, out);
    }
    if (verify_cmd->parsed()) {
      cfg.command = "verify " + verify_kind;
      pick_default(verify_cmd->get_subcommand(verify_kind), "jsonl");
      return cmd_verify(verify_kind, cfg, out);
    }
    if (profile_cmd->parsed()) {
      cfg.command = "profile";
      pick_default(profile_cmd, "csv");
      return cmd_profile(cfg, out);
    }
    if (sharp_cmd->parsed()) {
      cfg.command = "sharpness";
      pick_default(sharp_cmd, "jsonl");
      return cmd_sharpness(cfg, out);
    }
    if (accept_cmd->parsed()) {
      cfg.command = "accept";
      pick_default(accept_cmd, "human");
      return cmd_accept(cfg, out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.exit_code();
  }
  return 2;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, out, err);
}

}  // namespace isoplab::cli
