// lamo: command-line front end for inverse sequence pairs, hat sets,
// Beatty pairs, interpolating maps, and the two-runner simulation.
//
// Exit codes: 0 success, 1 failed verdict or oracle disagreement, 2 invalid
// input, 3 horizon violation, 4 runners met at the origin.

#include "lamo/lamo.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

namespace {

using lamo::Error;
using lamo::ErrorKind;
using nlohmann::json;

enum class Format { text, json, csv };

constexpr int kExitVerdict = 1;
constexpr int kExitInput = 2;
constexpr int kExitHorizon = 3;
constexpr int kExitCollision = 4;

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::horizon_exceeded:
    case ErrorKind::empty_window:
      return kExitHorizon;
    case ErrorKind::collision_present:
      return kExitCollision;
    default:
      return kExitInput;
  }
}

std::string read_input(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::parse_error, "cannot open '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

// Parses a sequence file and rejects order violations, naming the line.
lamo::NumberSequence load_sequence(const std::string& path) {
  lamo::io::ParsedSequence parsed = lamo::io::parse_sequence(read_input(path));
  if (std::uint64_t bad = lamo::first_order_violation(parsed.sequence); bad != 0) {
    throw Error(ErrorKind::not_non_decreasing,
                path + " line " + std::to_string(parsed.term_lines[bad - 1]) + ": term " + std::to_string(bad) +
                    " = " + lamo::to_string(parsed.sequence.prefix()[bad - 1]) +
                    " breaks the non-decreasing order");
  }
  return parsed.sequence;
}

// Up to `limit` terms of s; an unknown tail is restored when the listed
// prefix had to be cut.
lamo::NumberSequence view(const lamo::NumberSequence& s, std::optional<std::uint64_t> limit) {
  if (!limit) return s;
  lamo::NumberSequence m = s.materialized(*limit);
  if (m.prefix_length() <= *limit) return m;
  std::vector<lamo::ExtNat> cut(m.prefix().begin(), m.prefix().begin() + static_cast<std::ptrdiff_t>(*limit));
  return lamo::NumberSequence(std::move(cut), lamo::Tail::unknown());
}

std::string render_sequence(const lamo::NumberSequence& s, const std::string& horizon, Format fmt) {
  switch (fmt) {
    case Format::json: {
      json j = lamo::io::sequence_to_json(s);
      if (horizon == "inf") {
        j["horizon"] = horizon;
      } else {
        j["horizon"] = std::stoull(horizon);
      }
      return j.dump() + "\n";
    }
    case Format::csv: return lamo::io::sequence_to_csv(s);
    case Format::text: return lamo::io::sequence_to_text(s) + "#horizon " + horizon + "\n";
  }
  return {};
}

std::string render_set(const lamo::IntSet& s, bool complete, Format fmt) {
  switch (fmt) {
    case Format::json: {
      json j = lamo::io::set_to_json(s);
      j["complete"] = complete;
      return j.dump() + "\n";
    }
    case Format::csv: {
      std::string out = "element\n";
      for (std::uint64_t e : s.elements()) out += std::to_string(e) + "\n";
      return out;
    }
    case Format::text: return lamo::io::set_to_text(s, complete);
  }
  return {};
}

json verdict_json(const lamo::ComplementVerdict& v) {
  json j = {{"verdict", lamo::to_string(v)}};
  if (!v.is_partition()) {
    j["kind"] = v.kind == lamo::VerdictKind::overlap ? "overlap" : "gap";
    j["witness"] = v.witness;
  }
  return j;
}

struct Output {
  std::string text;
  int code = 0;
};

struct Options {
  Format format = Format::text;
  std::optional<std::uint64_t> limit;
  std::string output;
};

Output run_invert(const std::string& input, const Options& opt) {
  lamo::NumberSequence g = lamo::invert(load_sequence(input));
  std::string horizon = lamo::io::horizon_text(g);
  return {render_sequence(view(g, opt.limit), horizon, opt.format)};
}

Output run_hat(const std::string& input, std::uint64_t k, const Options& opt) {
  lamo::NumberSequence f = load_sequence(input);
  lamo::IntSet s = lamo::hat(f, k);
  return {render_set(s, lamo::hat_is_complete(f, k), opt.format)};
}

Output run_unhat(const std::string& input, const Options& opt) {
  lamo::io::ParsedSet parsed = lamo::io::parse_set(read_input(input));
  lamo::NumberSequence f = lamo::from_set(parsed.set, parsed.extent);
  std::string horizon = lamo::io::horizon_text(f);
  if (opt.format == Format::text) return {lamo::io::sequence_to_text(view(f, opt.limit))};
  return {render_sequence(view(f, opt.limit), horizon, opt.format)};
}

Output run_check(const std::string& fpath, const std::string& gpath, std::uint64_t rows, std::uint64_t cols,
                 std::uint64_t k, const Options& opt) {
  lamo::NumberSequence f = load_sequence(fpath);
  lamo::NumberSequence g = load_sequence(gpath);
  auto grid = lamo::find_grid_violation(f, g, rows, cols);
  lamo::ComplementVerdict verdict = lamo::check_complementary(lamo::hat(f, k), lamo::hat(g, k), k);
  bool pass = !grid && verdict.is_partition();
  std::string dims = std::to_string(rows) + "x" + std::to_string(cols);
  std::string out;
  switch (opt.format) {
    case Format::json: {
      json gj = {{"rows", rows}, {"cols", cols}, {"pass", !grid}};
      if (grid) gj["witness"] = {{"m", grid->m}, {"n", grid->n}};
      json cj = verdict_json(verdict);
      cj["horizon"] = k;
      out = json{{"grid", gj}, {"complement", cj}, {"pass", pass}}.dump() + "\n";
      break;
    }
    case Format::csv:
      out = "check,window,verdict,witness\n";
      out += "grid," + dims + "," + (grid ? "fail" : "pass") + "," +
             (grid ? "m=" + std::to_string(grid->m) + " n=" + std::to_string(grid->n) : std::string()) + "\n";
      out += "complement," + std::to_string(k) + "," + (verdict.is_partition() ? "pass" : "fail") + "," +
             (verdict.is_partition() ? std::string() : lamo::to_string(verdict)) + "\n";
      break;
    case Format::text:
      out = "grid " + dims + ": " +
            (grid ? "fail (m=" + std::to_string(grid->m) + ", n=" + std::to_string(grid->n) + ")" : std::string("pass")) +
            "\n";
      out += "complement [1," + std::to_string(k) + "]: " + (verdict.is_partition() ? "pass" : "fail") + " " +
             lamo::to_string(verdict) + "\n";
      break;
  }
  return {out, pass ? 0 : kExitVerdict};
}

Output run_beatty(const std::string& literal, std::uint64_t k, const Options& opt) {
  lamo::Exact lambda = lamo::parse_exact(literal);
  auto [a, b] = lamo::beatty_pair(lambda, k);
  lamo::ComplementVerdict verdict = lamo::check_complementary(a, b, k);
  lamo::AvoidanceReport avoid = lamo::lattice_avoidance(lamo::MonotoneMap::linear(lambda), k);
  std::string avoid_text = avoid.holds() ? "holds" : "violation(" + std::to_string(*avoid.violation) + ")";
  std::string out;
  switch (opt.format) {
    case Format::json: {
      json aj = {{"checked", avoid.checked}, {"holds", avoid.holds()}};
      if (!avoid.holds()) aj["violation"] = *avoid.violation;
      out = json{{"lambda", lamo::to_string(lambda)},
                 {"lower", lamo::io::set_to_json(a)},
                 {"upper", lamo::io::set_to_json(b)},
                 {"complement", verdict_json(verdict)},
                 {"avoidance", aj}}
                .dump() +
            "\n";
      break;
    }
    case Format::csv:
      out = "set,elements\n";
      out += "lower," + lamo::io::set_brief(a) + "\n";
      out += "upper," + lamo::io::set_brief(b) + "\n";
      out += "verdict," + lamo::to_string(verdict) + "\n";
      out += "avoidance," + avoid_text + "\n";
      break;
    case Format::text:
      out = "lambda " + lamo::to_string(lambda) + "\n";
      out += "lower " + lamo::io::set_brief(a) + "\n";
      out += "upper " + lamo::io::set_brief(b) + "\n";
      out += "horizon " + std::to_string(k) + "\n";
      out += "verdict " + lamo::to_string(verdict) + "\n";
      out += "avoidance " + avoid_text + " (n <= " + std::to_string(k) + ")\n";
      break;
  }
  return {out};
}

Output run_construct_phi(const std::string& input, const Options& opt) {
  lamo::MonotoneMap phi = lamo::construct_phi(load_sequence(input));
  json j = lamo::io::map_to_json(phi);
  return {(opt.format == Format::text ? j.dump(2) : j.dump()) + "\n"};
}

lamo::MonotoneMap load_map(const std::string& arg) {
  std::ifstream probe(arg);
  if (probe) return lamo::io::parse_map(read_input(arg));
  return lamo::io::parse_map(arg);
}

Output run_simulate(const std::string& map_arg, const std::string& t_literal, const Options& opt) {
  lamo::MonotoneMap phi = load_map(map_arg);
  lamo::Exact t_max = lamo::parse_exact(t_literal);
  lamo::EventLog log = lamo::simulate(phi, t_max);

  std::string trace;
  if (opt.format == Format::csv) {
    trace = "t,kind,count,collision\n";
    for (const lamo::Event& e : log.events) {
      trace += lamo::to_string(e.time) + "," + std::string(lamo::to_string(e.kind)) + "," + std::to_string(e.count) +
               "," + (e.collision ? "1" : "0") + "\n";
    }
  } else if (opt.format == Format::text) {
    trace = lamo::io::trace_to_jsonl(log);
  }
  json events = json::array();
  if (opt.format == Format::json) {
    for (const lamo::Event& e : log.events) events.push_back(lamo::io::event_to_json(e));
  }

  if (auto hit = log.first_collision()) {
    std::string t = lamo::to_string(*hit);
    if (opt.format == Format::json) return {json{{"events", events}, {"collision", t}}.dump() + "\n", kExitCollision};
    std::cerr << "collision: runners meet at the origin at t=" << t << "\n";
    return {trace + (opt.format == Format::text ? "#collision t=" + t + "\n" : std::string()), kExitCollision};
  }

  lamo::RecordedSets rec = lamo::recorded_sets(log);
  std::uint64_t k = rec.s_x.horizon();
  lamo::CorollarySets alg = lamo::corollary_sets(phi, k);
  bool agree = alg.s_x == rec.s_x && alg.s_y == rec.s_y;
  std::string out;
  switch (opt.format) {
    case Format::json:
      out = json{{"events", events},
                 {"S_X", lamo::io::set_to_json(rec.s_x)},
                 {"S_Y", lamo::io::set_to_json(rec.s_y)},
                 {"horizon", k},
                 {"agree", agree}}
                .dump() +
            "\n";
      break;
    case Format::csv:
      out = trace + "S_X," + lamo::io::set_brief(rec.s_x) + "\nS_Y," + lamo::io::set_brief(rec.s_y) +
            "\nagree," + (agree ? "1" : "0") + "\n";
      break;
    case Format::text:
      out = trace + "#S_X " + lamo::io::set_brief(rec.s_x) + "\n#S_Y " + lamo::io::set_brief(rec.s_y) +
            "\n#horizon " + std::to_string(k) + "\n" + (agree ? "#agree\n" : "#disagree\n");
      break;
  }
  if (!agree) {
    std::cerr << "disagree: recorded S_X " << lamo::io::set_brief(rec.s_x) << " vs " << lamo::io::set_brief(alg.s_x)
              << ", recorded S_Y " << lamo::io::set_brief(rec.s_y) << " vs " << lamo::io::set_brief(alg.s_y) << "\n";
  }
  return {out, agree ? 0 : kExitVerdict};
}

Output run_classify(const std::string& input, const Options& opt) {
  lamo::SequenceClass c = lamo::classify(load_sequence(input));
  if (opt.format == Format::json) return {json{{"class", lamo::to_string(c)}}.dump() + "\n"};
  return {lamo::to_string(c) + "\n"};
}

Format parse_format(const std::string& name) {
  if (name == "text") return Format::text;
  if (name == "json") return Format::json;
  if (name == "csv") return Format::csv;
  throw Error(ErrorKind::parse_error, "unknown format '" + name + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Inverse sequence pairs, complementary sets, and the two-runner model"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format_name;
  if (const char* env = std::getenv("LAMO_FORMAT")) format_name = env;
  if (format_name.empty()) format_name = "text";
  std::uint64_t limit = 0;
  std::string output;
  app.add_option("--format", format_name, "Output format: text, json or csv (default from LAMO_FORMAT)");
  auto* limit_opt = app.add_option("--limit", limit, "Print at most N terms");
  app.add_option("--output", output, "Write the result to a file instead of stdout");

  std::string input;
  std::string second;
  std::uint64_t k = 0;
  std::uint64_t rows = 0;
  std::uint64_t cols = 0;

  auto* invert = app.add_subcommand("invert", "Inverse sequence g(n) = #{m : f(m) < n}");
  invert->add_option("input", input, "Sequence file ('-' for stdin)")->required();

  auto* hat = app.add_subcommand("hat", "Hat set {n + f(n)} on [1, K]");
  hat->add_option("input", input, "Sequence file")->required();
  hat->add_option("-K,--window", k, "Window [1, K]")->required();

  auto* unhat = app.add_subcommand("unhat", "Sequence s_n - n of a set");
  unhat->add_option("input", input, "Set file")->required();

  auto* check = app.add_subcommand("check", "Mutual-inverse grid and complementarity of the hat sets");
  check->add_option("f", input, "Sequence file f")->required();
  check->add_option("g", second, "Sequence file g")->required();
  check->add_option("-M,--rows", rows, "Grid rows m = 1..M")->required();
  check->add_option("-N,--cols", cols, "Grid columns n = 1..N")->required();
  check->add_option("-K,--window", k, "Complementarity window [1, K]")->required();

  auto* beatty = app.add_subcommand("beatty", "Beatty pair for slope lambda");
  beatty->add_option("lambda", input, "Exact literal, e.g. '(-1+sqrt(5))/2'")->required();
  beatty->add_option("K", k, "Window [1, K]")->required();

  auto* construct = app.add_subcommand("construct-phi", "Interpolating map with floor(phi(n)) = f(n)");
  construct->add_option("input", input, "Sequence file")->required();

  auto* simulate = app.add_subcommand("simulate", "Run the two-runner model and compare with the algebraic sets");
  simulate->add_option("map", input, "Map JSON, a file holding it, or an exact slope literal")->required();
  simulate->add_option("-T,--time", second, "Rational end time")->required();

  auto* classify = app.add_subcommand("classify", "Report the kind of sequence");
  classify->add_option("input", input, "Sequence file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  Output result;
  try {
    Options opt;
    opt.format = parse_format(format_name);
    if (*limit_opt) opt.limit = limit;
    opt.output = output;
    if (*invert) result = run_invert(input, opt);
    else if (*hat) result = run_hat(input, k, opt);
    else if (*unhat) result = run_unhat(input, opt);
    else if (*check) result = run_check(input, second, rows, cols, k, opt);
    else if (*beatty) result = run_beatty(input, k, opt);
    else if (*construct) result = run_construct_phi(input, opt);
    else if (*simulate) result = run_simulate(input, second, opt);
    else if (*classify) result = run_classify(input, opt);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  }

  if (!output.empty()) {
    std::ofstream out(output);
    if (!out) {
      std::cerr << "error: cannot write '" << output << "'\n";
      return kExitInput;
    }
    out << result.text;
  } else {
    std::cout << result.text;
  }
  return result.code;
}
