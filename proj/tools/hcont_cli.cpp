#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "hcont/hcont.hpp"

using namespace hcont;

namespace {

struct Options {
  std::string out;
  bool exact = false;
  std::size_t points = 200;
  unsigned threads = 1;
  std::size_t radius = 1;
  std::size_t verify_samples = 1031;
  std::string eps = "0.5,0.25,0.125";
  std::string compact;
  std::string bound;
  std::string csv;
  std::string op;
  std::string target;
  std::string remove;
  std::vector<std::string> inputs;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::ParseError, "cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

PiecewiseFunction load_function(const std::string& path) {
  return function_from_json(parse_json_text(read_file(path), path));
}

std::vector<Rational> parse_list(const std::string& text, const std::string& flag) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(parse_rational(item));
    } catch (const Error& e) {
      fail(ErrorCode::ParseError, flag + ": " + e.what());
    }
  }
  if (out.empty()) fail(ErrorCode::ParseError, flag + ": empty list");
  return out;
}

std::pair<Rational, Rational> parse_compact(const std::string& text) {
  auto v = parse_list(text, "--compact");
  if (v.size() != 2) fail(ErrorCode::ParseError, "--compact expects a,b");
  return {v[0], v[1]};
}

std::string decimal(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string decimal(const ExtendedReal& v) {
  if (!v.is_finite()) return v.is_pos_inf() ? "inf" : "-inf";
  return decimal(to_double(v.value()));
}

/// Rows (x, lower, upper) at n interior nodes, undefined points taking their completion.
std::string sample_output(const PiecewiseFunction& f, std::size_t n, bool exact) {
  auto xs = grid_nodes(f.domain(), n);
  PiecewiseFunction total = f.is_total() ? f : graph_completion(f);
  if (exact) {
    Json rows = Json::array();
    for (const auto& x : xs) {
      auto v = total.evaluate(x);
      rows.push_back(Json::array({to_string(x), to_string(v.lower()), to_string(v.upper())}));
    }
    return rows.dump(2) + "\n";
  }
  std::string s = "x,lower,upper\n";
  for (const auto& x : xs) {
    auto v = total.evaluate(x);
    s += decimal(to_double(x)) + "," + decimal(v.lower()) + "," + decimal(v.upper()) + "\n";
  }
  return s;
}

std::string grid_csv(const GridIntervalFunction& g) {
  std::string s = "i,x,lower,upper\n";
  for (std::size_t i = 0; i < g.size(); ++i)
    s += std::to_string(i) + "," + decimal(g.coordinate(0, i)) + "," + decimal(g.lower()[i]) + "," + decimal(g.upper()[i]) + "\n";
  return s;
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(o.out, std::ios::binary);
  if (!out) fail(ErrorCode::ParseError, "cannot write '" + o.out + "'");
  out << text;
}

std::string json_text(const Json& j) { return j.dump(2) + "\n"; }

/// Each input holds one spec or a JSON array of specs.
std::vector<PiecewiseFunction> load_all(const Options& o) {
  std::vector<PiecewiseFunction> fs;
  for (const auto& p : o.inputs) {
    Json j = parse_json_text(read_file(p), p);
    if (!j.is_array()) {
      fs.push_back(function_from_json(j));
      continue;
    }
    for (const auto& item : j) fs.push_back(function_from_json(item));
  }
  return fs;
}

const PiecewiseFunction& only(const std::vector<PiecewiseFunction>& fs, std::size_t count, const std::string& cmd) {
  if (fs.size() != count)
    fail(ErrorCode::ParseError, cmd + " expects " + std::to_string(count) + " function spec(s), got " + std::to_string(fs.size()));
  return fs.front();
}

std::string run(const std::string& cmd, const Options& o) {
  auto fs = load_all(o);
  if (cmd == "envelope") {
    const auto& f = only(fs, 1, cmd);
    std::vector<Rational> removed = f.undefined_points().points();
    if (!o.remove.empty())
      for (const auto& x : parse_list(o.remove, "--remove")) removed.push_back(x);
    DenseDomain d(f.domain(), ExceptionalSet(removed));
    return json_text(Json{{"lower_baire", function_to_json(lower_baire(d, f))},
                          {"upper_baire", function_to_json(upper_baire(d, f))},
                          {"graph_completion", function_to_json(graph_completion(d, f))}});
  }
  if (cmd == "hcheck") return json_text(Json{{"h_continuous", is_hausdorff_continuous(only(fs, 1, cmd))}});
  if (cmd == "complete") return json_text(function_to_json(graph_completion_map_F0(only(fs, 1, cmd))));
  if (cmd == "classify") {
    HClass c = classify(only(fs, 1, cmd));
    Json g = Json::array();
    for (const auto& x : c.gamma_nf) g.push_back(to_string(x));
    return json_text(Json{{"class", to_string(c.tag)}, {"gamma_nf", g}});
  }
  if (cmd == "equiv") {
    only(fs, 2, cmd);
    return json_text(Json{{"equivalent", equivalent(fs[0], fs[1])}});
  }
  if (cmd == "order") {
    only(fs, 2, cmd);
    return json_text(Json{{"leq", class_leq(canonical_class(fs[0]), canonical_class(fs[1]))}});
  }
  if (cmd == "sup" || cmd == "inf") {
    std::optional<PiecewiseFunction> bound;
    if (!o.bound.empty()) bound = load_function(o.bound);
    auto r = cmd == "sup" ? sup_family(fs, bound) : inf_family(fs, bound);
    return json_text(function_to_json(r));
  }
  if (cmd == "sample") return sample_output(only(fs, 1, cmd), o.points, o.exact);
  if (cmd == "grid-envelope") {
    auto g = graph_completion_grid(sample_to_grid(only(fs, 1, cmd), o.points), o.radius, o.threads);
    return grid_csv(g);
  }
  if (cmd == "pde-approx") {
    if (o.op.empty() || o.target.empty()) fail(ErrorCode::ParseError, "pde-approx needs --operator and --target");
    if (o.compact.empty()) fail(ErrorCode::ParseError, "pde-approx needs --compact a,b");
    DiffOperator t = operator_from_json(parse_json_text(read_file(o.op), o.op));
    PiecewiseFunction f = load_function(o.target);
    auto [a, b] = parse_compact(o.compact);
    SubsolutionOptions opt;
    opt.threads = o.threads;
    opt.global_samples = o.verify_samples;
    Assimilation s = assimilate_solution(t, f, parse_list(o.eps, "--eps"), a, b, opt);
    Json stages = Json::array();
    for (std::size_t k = 0; k < s.stages.size(); ++k) {
      Json st = subsolution_to_json(s.stages[k]);
      st["completion_below_target"] = static_cast<bool>(s.below_target[k]);
      stages.push_back(st);
    }
    Json report{{"operator", operator_to_json(t)},
                {"stages", stages},
                {"gaps_within_eps", s.gaps_within_eps},
                {"completions_monotone", s.monotone},
                {"class", to_string(s.cls.tag)},
                {"h_continuous", is_hausdorff_continuous(s.sup)},
                {"sup", function_to_json(s.sup)}};
    if (!o.csv.empty()) {
      std::ofstream out(o.csv, std::ios::binary);
      if (!out) fail(ErrorCode::ParseError, "cannot write '" + o.csv + "'");
      out << sample_output(s.sup, o.points, false);
    }
    return json_text(report);
  }
  fail(ErrorCode::ParseError, "unknown subcommand '" + cmd + "'");
}

int exit_code(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::Parse: return 2;
    case ErrorCategory::Domain: return 3;
    case ErrorCategory::Verification: return 4;
  }
  return 3;
}

void report_error(std::string_view name, const std::string& message) {
  std::cerr << Json{{"error", std::string(name)}, {"message", message}}.dump() << "\n";
}

void apply_degree_cap() {
  const char* env = std::getenv("HC_MAX_DEGREE");
  if (!env) return;
  std::string s(env);
  if (s.empty() || s.size() > 3 || s.find_first_not_of("0123456789") != std::string::npos)
    fail(ErrorCode::ParseError, "HC_MAX_DEGREE must be an integer in [1, 64]");
  int v = std::stoi(s);
  if (v < 1 || v > 64) fail(ErrorCode::ParseError, "HC_MAX_DEGREE must be an integer in [1, 64]");
  max_degree_setting() = v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interval functions, Hausdorff continuity and order completion"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub, const std::string& inputs_help) {
    sub->add_option("inputs", o.inputs, inputs_help);
    sub->add_option("--out", o.out, "Write the result here instead of stdout");
  };
  add_common(app.add_subcommand("envelope", "Lower and upper Baire operators and graph completion on the definition set"),
             "Function spec");
  app.get_subcommand("envelope")->add_option("--remove", o.remove, "Extra points removed from the dense set, a,b,...");
  add_common(app.add_subcommand("hcheck", "Test Hausdorff continuity"), "Function spec");
  add_common(app.add_subcommand("complete", "Graph completion F0 of a piecewise continuous function"), "Function spec");
  add_common(app.add_subcommand("classify", "bounded / finite / nearly_finite / general"), "Function spec");
  add_common(app.add_subcommand("equiv", "Equality off a finite set"), "Two function specs");
  add_common(app.add_subcommand("order", "Order of the quotient classes"), "Two function specs");
  for (const char* name : {"sup", "inf"}) {
    auto* sub = app.add_subcommand(name, std::string(name) + " of a finite family of H-continuous functions");
    add_common(sub, "Function specs");
    sub->add_option("--bound", o.bound, "Function spec that must bound the family");
  }
  auto* sample = app.add_subcommand("sample", "Values at interior grid nodes as CSV (x, lower, upper)");
  add_common(sample, "Function spec");
  sample->add_option("--points", o.points, "Number of nodes")->check(CLI::Range(2, 1000000));
  sample->add_flag("--exact", o.exact, "Exact rational JSON instead of CSV");
  auto* grid = app.add_subcommand("grid-envelope", "Grid graph completion of sampled values");
  add_common(grid, "Function spec");
  grid->add_option("--points", o.points, "Number of nodes")->check(CLI::Range(2, 1000000));
  grid->add_option("--radius", o.radius, "Window radius in nodes")->check(CLI::Range(1, 100000));
  grid->add_option("--threads", o.threads, "Worker threads")->check(CLI::Range(1, 256));
  auto* pde = app.add_subcommand("pde-approx", "Subsolutions and their assimilated order completion");
  pde->add_option("--out", o.out, "Write the report here instead of stdout");
  pde->add_option("--operator", o.op, "Operator spec")->required();
  pde->add_option("--target", o.target, "Target function spec")->required();
  pde->add_option("--eps", o.eps, "Decreasing epsilons, a,b,...");
  pde->add_option("--compact", o.compact, "Compact interval a,b")->required();
  pde->add_option("--csv", o.csv, "Also write the sampled sup as CSV here");
  pde->add_option("--points", o.points, "CSV nodes")->check(CLI::Range(2, 1000000));
  pde->add_option("--threads", o.threads, "Worker threads")->check(CLI::Range(1, 256));
  pde->add_option("--verify-samples", o.verify_samples, "Exact checks of the band per stage, at least 1000 must land off gamma")
      ->check(CLI::Range(1, 1000000));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    report_error("ParseError", e.what());
    return 2;
  }
  std::string cmd = app.get_subcommands().front()->get_name();
  try {
    apply_degree_cap();
    emit(o, run(cmd, o));
  } catch (const Error& e) {
    report_error(e.name(), e.what());
    return exit_code(e.category());
  } catch (const std::exception& e) {
    report_error("VerificationFailure", e.what());
    return 4;
  }
  return 0;
}
