#include "mns/cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <unistd.h>

#include "CLI11.hpp"
#include "mns/classify.hpp"
#include "mns/crossed.hpp"
#include "mns/magnus.hpp"

namespace mns {

using nlohmann::ordered_json;

std::vector<std::string> split_top_level(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char ch : text) {
    if (ch == '(' || ch == '{') ++depth;
    if (ch == ')' || ch == '}') --depth;
    if (depth < 0) throw ParseError("unbalanced brackets in '" + std::string(text) + "'");
    if (ch == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else if (ch != ' ' || depth > 0) {
      cur += ch;
    }
  }
  if (depth != 0) throw ParseError("unbalanced brackets in '" + std::string(text) + "'");
  if (!cur.empty() || !out.empty()) out.push_back(cur);
  for (const std::string& s : out)
    if (s.empty()) throw ParseError("empty entry in list '" + std::string(text) + "'");
  return out;
}

void write_atomically(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    f << content;
    f.flush();
    if (!f) {
      f.close();
      fs::remove(tmp);
      throw std::runtime_error("write to " + tmp.string() + " failed");
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("cannot move output into place at " + path + ": " + ec.message());
  }
}

namespace {

void guard(const char* name, const std::optional<int>& value, int limit, bool unsafe) {
  if (!value) return;
  if (*value < 0) throw ParseError(std::string("bound ") + name + " must be nonnegative");
  if (!unsafe && *value > limit)
    throw GuardError(std::string("bound ") + name + "=" + std::to_string(*value) + " exceeds the guard limit " +
                     std::to_string(limit) + " (pass --unsafe-bounds to override)");
}

int require(const std::optional<int>& v, const char* name) {
  if (!v) throw ParseError(std::string("missing --") + name);
  return *v;
}

ordered_json elements_json(const std::vector<Element>& xs) {
  ordered_json a = ordered_json::array();
  for (const Element& x : xs) a.push_back(to_string(x));
  return a;
}

CrossedSystemPtr resolve_system(const RunConfig& c) {
  const Field field = Field::parse(c.field);
  if (c.system == "trivial") return CrossedSystem::trivial(field);
  CrossedSystemPtr s = crossed_registry(c.system);
  if (c.field != "Q" && s->field().id() != field.id())
    throw ParseError("system " + c.system + " is defined over " + s->field().id() + ", not " + field.id());
  return s;
}

Report cmd_verify_monoid(const RunConfig& c) {
  const Group g = Group::parse(c.group);
  std::vector<Element> gens;
  for (const std::string& s : c.generators) gens.push_back(g.parse_element(s));
  if (gens.empty()) gens = g.designated_generators();
  return Report::from(c.command, free_monoid_check(gens, require(c.L, "L")));
}

Report cmd_classify(const RunConfig& c) {
  const Group g = Group::parse(c.group);
  const OrderTypeReport rep = classify_order_type(g, c.seed);
  if (!rep.witness_verified) {
    std::string why;
    for (const std::string& f : rep.failures) why += " " + f;
    throw std::logic_error("order-type witness failed re-verification:" + why);
  }
  Report r;
  r.command = c.command;
  r.kind = "order-type";
  r.verdict = "computed";
  r.summary["type"] = rep.type;
  ordered_json jumps = ordered_json::array();
  for (const ConvexJumpDescriptor& j : rep.jumps) {
    ordered_json e = {{"lower", j.lower}, {"upper", j.upper}, {"central", j.central}};
    e["action_ratio"] = j.action_ratio ? ordered_json(j.action_ratio->to_string()) : ordered_json(nullptr);
    jumps.push_back(e);
  }
  if (rep.type == 3) {
    r.witness = {{"convex_subgroup", rep.convex_subgroup},
                 {"shrunk_subgroup", rep.shrunk_subgroup},
                 {"conjugator", rep.conjugator ? to_string(*rep.conjugator) : ""}};
  } else {
    r.witness = {{"jumps", jumps}};
  }
  r.result = {{"group", rep.group_id}, {"jumps", jumps}, {"samples_checked", rep.samples_checked}};
  return r;
}

Report cmd_verify_group_algebra(const RunConfig& c) {
  const Group g = Group::parse(c.group);
  const int L = require(c.L, "L"), D = require(c.D, "D");
  const SeriesContext ctx(Monoid::positive(g), D, resolve_system(c));
  const auto [u, v] = type1_unit_generators(ctx, ctx.field().parse_scalar(c.c), ctx.field().parse_scalar(c.d));
  Report r = Report::from(c.command, group_algebra_independence({u, v}, L, D));
  r.result["units"] = {u.to_text(), v.to_text()};
  return r;
}

Report cmd_digit_sum(const RunConfig& c) {
  return Report::from(c.command, digit_sum_check(Rational::parse(c.r), require(c.N, "N")));
}

Report cmd_pingpong(const RunConfig& c) {
  return Report::from(c.command, pingpong_check(Rational::parse(c.r), Rational::parse(c.t), require(c.L, "L")));
}

Report cmd_magnus(const RunConfig& c, const GuardLimits& limits) {
  Report r;
  r.command = c.command;
  r.kind = "magnus";
  InjectivityReport inj;
  if (c.words.empty()) {
    const int L = require(c.L, "L");
    const int D = c.D.value_or(L);
    guard("D", D, limits.D, c.unsafe_bounds);
    inj = verify_magnus_injectivity(c.alphabet.value_or(2), L, D);
  } else {
    int alphabet = c.alphabet.value_or(1);
    if (!c.alphabet)
      for (const std::string& w : c.words)
        for (char ch : w)
          if (ch >= 'a' && ch <= 'z') alphabet = std::max(alphabet, ch - 'a' + 1);
    std::vector<FreeWord> words;
    for (const std::string& w : c.words) words.push_back(FreeWord::parse(w, alphabet));
    int longest = 0;
    for (const FreeWord& w : words) longest = std::max(longest, static_cast<int>(w.length()));
    guard("L", longest, limits.L, c.unsafe_bounds);
    const int D = require(c.D, "D");
    inj = check_magnus_distinct(words, D);
    ordered_json images = ordered_json::array();
    for (const FreeWord& w : words) images.push_back({{"word", w.to_string()}, {"image", magnus_image(w, D).to_text()}});
    r.result["images"] = images;
  }
  r.bounds.L = inj.max_length;
  r.bounds.D = inj.degree;
  r.result["alphabet"] = inj.alphabet;
  r.result["words"] = inj.words;
  r.result["distinct_images"] = inj.distinct_images;
  r.verdict = verdict_name(inj.injective() ? Verdict::verified : Verdict::counterexample);
  if (inj.collision) r.witness = {{"words", {inj.collision->first.to_string(), inj.collision->second.to_string()}}};
  return r;
}

Report cmd_expand(const RunConfig& c, const GuardLimits& limits) {
  if (c.series_file.empty()) throw ParseError("missing --series-file");
  std::ifstream in(c.series_file, std::ios::binary);
  if (!in) throw ParseError("cannot read series file " + c.series_file);
  std::stringstream buf;
  buf << in.rdbuf();
  Series f = Series::parse_text(buf.str());
  guard("D", f.degree(), limits.D, c.unsafe_bounds);
  if (c.D) f = f.truncate(*c.D);
  if (c.invert) f = series_invert(f);
  Report r;
  r.command = c.command;
  r.kind = "series";
  r.verdict = "computed";
  r.bounds.D = f.degree();
  r.result = {{"invert", c.invert}, {"terms", f.size()}, {"series", f.to_text()}};
  return r;
}

Report cmd_check_crossed(const RunConfig& c) {
  CrossedSystemPtr s = crossed_registry(c.system);
  const CrossedCheckReport rep = c.group.empty() || c.group == "auto"
                                     ? check_crossed_system(*s, c.samples, c.seed)
                                     : check_crossed_system(*s, Group::parse(c.group), c.samples, c.seed);
  Report r;
  r.command = c.command;
  r.kind = "crossed-system";
  r.verdict = verdict_name(rep.valid ? Verdict::verified : Verdict::counterexample);
  r.result = {{"system", s->id()}, {"field", s->field().id()}, {"samples", c.samples}, {"seed", c.seed},
              {"triples_checked", rep.triples_checked}};
  if (!rep.valid) r.witness = {{"identity", rep.violated}, {"elements", elements_json(rep.witness)}};
  return r;
}

Report dispatch(const RunConfig& c, const GuardLimits& limits) {
  if (c.command == "verify-monoid") return cmd_verify_monoid(c);
  if (c.command == "classify") return cmd_classify(c);
  if (c.command == "verify-group-algebra") return cmd_verify_group_algebra(c);
  if (c.command == "digit-sum") return cmd_digit_sum(c);
  if (c.command == "magnus") return cmd_magnus(c, limits);
  if (c.command == "expand") return cmd_expand(c, limits);
  if (c.command == "check-crossed") return cmd_check_crossed(c);
  if (c.command == "pingpong") return cmd_pingpong(c);
  throw ParseError("unknown command '" + c.command + "'");
}

int verdict_exit(const std::string& verdict) {
  if (verdict == verdict_name(Verdict::counterexample)) return exit_code::counterexample;
  if (verdict == verdict_name(Verdict::inconclusive)) return exit_code::inconclusive;
  return exit_code::verified;
}

}  // namespace

CommandOutcome run_command(const RunConfig& config, const GuardLimits& limits) {
  CommandOutcome out;
  try {
    if (config.format != "json" && config.format != "text") throw ParseError("--format must be json or text");
    guard("L", config.L, limits.L, config.unsafe_bounds);
    guard("D", config.D, limits.D, config.unsafe_bounds);
    guard("N", config.N, limits.N, config.unsafe_bounds);
    const auto start = std::chrono::steady_clock::now();
    Report r = dispatch(config, limits);
    r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    out.output = config.format == "json" ? report_json(r).dump(2) + "\n" : report_text(r);
    out.exit_code = verdict_exit(r.verdict);
  } catch (const GuardError& e) {
    out = {exit_code::guard, "", e.what()};
  } catch (const ParseError& e) {
    out = {exit_code::usage, "", e.what()};
  } catch (const PreconditionError& e) {
    out = {exit_code::usage, "", e.what()};
  } catch (const std::exception& e) {
    out = {exit_code::internal, "", std::string("internal error: ") + e.what()};
  }
  return out;
}

int cli_main(int argc, const char* const* argv) {
  RunConfig cfg;
  CLI::App app{"Truncated Malcev-Neumann series and bounded freeness verifiers", "mns"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.add_option("--format", cfg.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--out", cfg.out, "write the report to this path (atomically)");
  app.add_option("--seed", cfg.seed, "random seed");
  app.add_flag("--unsafe-bounds", cfg.unsafe_bounds, "lift the guard limits L<=16, D<=12, N<=20");

  std::string gens, words;
  auto add_L = [&](CLI::App* s) { s->add_option("--L", cfg.L, "word length bound"); };
  auto add_D = [&](CLI::App* s) { s->add_option("--D", cfg.D, "truncation degree"); };

  auto* vm = app.add_subcommand("verify-monoid", "collision check for a generated monoid");
  vm->add_option("--group", cfg.group, "heis, bs12, bs:<r>, wreath, z:<k>")->required();
  vm->add_option("--gens", gens, "comma-separated element strings");
  add_L(vm);

  auto* cl = app.add_subcommand("classify", "order type of a built-in group");
  cl->add_option("--group", cfg.group)->required();

  auto* ga = app.add_subcommand("verify-group-algebra", "independence of words in 1+c x, 1+d y");
  ga->add_option("--group", cfg.group);
  ga->add_option("--c", cfg.c);
  ga->add_option("--d", cfg.d);
  ga->add_option("--field", cfg.field, "Q, Fp:<p>, Qsqrt:<m>");
  ga->add_option("--system", cfg.system, "crossed system id");
  add_L(ga);
  add_D(ga);

  auto* ds = app.add_subcommand("digit-sum", "distinct subset sums of powers of r");
  ds->add_option("--r", cfg.r)->required();
  ds->add_option("--N", cfg.N, "maximal exponent");

  auto* mg = app.add_subcommand("magnus", "Magnus images of free-group words");
  mg->add_option("--words", words, "comma-separated words such as ab,ba'");
  mg->add_option("--k", cfg.alphabet, "alphabet size");
  add_L(mg);
  add_D(mg);

  auto* ex = app.add_subcommand("expand", "read, optionally invert, and print a series");
  ex->add_option("--series-file", cfg.series_file)->required();
  ex->add_flag("--invert", cfg.invert);
  add_D(ex);

  auto* cc = app.add_subcommand("check-crossed", "validity of a crossed system");
  cc->add_option("--system", cfg.system)->required();
  cc->add_option("--samples", cfg.samples);
  cc->add_option("--group", cfg.group, "group to check on (default: the system's own)");

  auto* pp = app.add_subcommand("pingpong", "ping-pong table for BS(1,r)");
  pp->add_option("--r", cfg.r)->required();
  pp->add_option("--t", cfg.t);
  add_L(pp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "mns: " << e.what() << "\n" << app.help();
    return exit_code::usage;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  if (cfg.command == "check-crossed" && cc->count("--group") == 0) cfg.group = "auto";
  CommandOutcome outcome;
  try {
    if (!gens.empty()) cfg.generators = split_top_level(gens);
    if (!words.empty()) cfg.words = split_top_level(words);
    outcome = run_command(cfg);
  } catch (const ParseError& e) {
    outcome = {exit_code::usage, "", e.what()};
  }
  if (!outcome.error.empty()) {
    std::cerr << "mns: " << outcome.error << "\n";
    if (outcome.exit_code == exit_code::usage) std::cerr << "run 'mns " << cfg.command << " --help' for usage\n";
    return outcome.exit_code;
  }
  try {
    if (cfg.out.empty()) {
      std::cout << outcome.output << std::flush;
    } else {
      write_atomically(cfg.out, outcome.output);
    }
  } catch (const std::exception& e) {
    std::cerr << "mns: " << e.what() << "\n";
    return exit_code::internal;
  }
  return outcome.exit_code;
}

}  // namespace mns
