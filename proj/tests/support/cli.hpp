#pragma once

// Drives the command line tool as a subprocess. Shared by the CLI tests and the
// acceptance runner; checks return an empty string on success.

#include <unistd.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "hcont/json_io.hpp"

namespace clitest {

namespace fs = std::filesystem;

struct Result {
  int status = -1;
  std::string out;
  std::string err;
};

inline std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

/// Scratch directory holding input specs and captured streams.
class Workspace {
 public:
  Workspace(std::string cli, const std::string& tag) : cli_(std::move(cli)) {
    dir_ = fs::temp_directory_path() / ("hcont_" + tag + "_" + std::to_string(::getpid()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  ~Workspace() {
    std::error_code ec;
    fs::remove_all(dir_, ec);
  }
  Workspace(const Workspace&) = delete;
  Workspace& operator=(const Workspace&) = delete;

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(dir_ / name, std::ios::binary) << text;
    return path(name);
  }

  /// Runs the tool with `args`; `env` is prefixed as VAR=value assignments.
  Result run(const std::vector<std::string>& args, const std::string& env = "") const {
    std::string cmd = env.empty() ? "" : env + " ";
    cmd += quote(cli_);
    for (const auto& a : args) cmd += " " + quote(a);
    cmd += " > " + quote(path("stdout")) + " 2> " + quote(path("stderr"));
    int raw = std::system(cmd.c_str());
    Result r;
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.out = slurp(dir_ / "stdout");
    r.err = slurp(dir_ / "stderr");
    return r;
  }

 private:
  std::string cli_;
  fs::path dir_;
};

inline const char* kSignStep = R"({"domain": ["-1", "1"], "breakpoints": ["0"],
  "segments": [{"num": ["-1"]}, {"num": ["1"]}], "breakpoint_values": ["undefined"]})";
inline const char* kHeaviside = R"({"domain": ["-1", "1"], "breakpoints": ["0"],
  "segments": [{"num": ["0"]}, {"num": ["1"]}], "breakpoint_values": ["undefined"]})";
inline const char* kBand = R"({"domain": ["-1", "1"], "lower": [{"num": ["0"]}], "upper": [{"num": ["1"]}]})";
inline const char* kPoles = R"({"domain": ["-2", "2"], "breakpoints": ["-1", "1"],
  "segments": [{"num": ["1"], "den": ["1", "1"]}, {"num": ["0", "1"]}, {"num": ["-1"], "den": ["-1", "1"]}],
  "breakpoint_values": ["undefined", "3"]})";
inline const char* kQuadratic = R"({"domain": ["-1", "1"], "segments": [{"num": ["1/4", "-1", "2"]}]})";
inline const char* kHalf = R"({"domain": ["-1", "1"], "segments": [{"num": ["1/2"]}]})";
inline const char* kRamps = R"([
  {"domain": ["-1", "1"], "breakpoints": ["-1/2", "0", "1/2"],
   "segments": [{"num": ["1"]}, {"num": ["0", "-2"]}, {"num": ["0", "2"]}, {"num": ["1"]}], "breakpoint_values": ["1", "0", "1"]},
  {"domain": ["-1", "1"], "breakpoints": ["-1/4", "0", "1/4"],
   "segments": [{"num": ["1"]}, {"num": ["0", "-4"]}, {"num": ["0", "4"]}, {"num": ["1"]}], "breakpoint_values": ["1", "0", "1"]}
])";
inline const char* kOperator = R"({"m": 1, "g": "u' + u^3", "pivot": "u'"})";

inline std::string failed(const std::string& what, const Result& r) {
  return what + " (exit " + std::to_string(r.status) + ", stderr " + r.err + ")";
}

/// Documented outputs: envelope of the sign step, hcheck of a constant band, sample rows.
inline std::string check_outputs(const Workspace& w) {
  using hcont::Json;
  Result r = w.run({"envelope", w.write("sign.json", kSignStep)});
  if (r.status != 0) return failed("envelope", r);
  Json j = Json::parse(r.out);
  if (j["graph_completion"]["breakpoint_values"][0] != Json::array({"-1", "1"})) return "envelope at 0 is not [-1, 1]";
  if (j["lower_baire"]["breakpoint_values"][0] != "-1" || j["upper_baire"]["breakpoint_values"][0] != "1")
    return "Baire envelopes at 0 are not -1 and 1";
  r = w.run({"hcheck", w.write("band.json", kBand)});
  if (r.status != 0 || Json::parse(r.out) != Json{{"h_continuous", false}}) return failed("hcheck on a constant band", r);
  r = w.run({"sample", "--points", "100", w.path("sign.json")});
  if (r.status != 0) return failed("sample", r);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  if (line != "x,lower,upper") return "sample header is '" + line + "'";
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  if (rows != 100) return "sample produced " + std::to_string(rows) + " rows";
  r = w.run({"classify", "--out", w.path("class.json"), w.write("empty.json", "")});
  if (r.status != 2) return failed("classify on an empty file", r);
  r = w.run({"complete", "--out", w.path("poles_f0.json"), w.write("poles.json", kPoles)});
  if (r.status != 0 || !r.out.empty()) return failed("complete --out", r);
  r = w.run({"classify", w.path("poles_f0.json")});
  if (r.status != 0) return failed("classify", r);
  j = Json::parse(r.out);
  if (j["class"] != "nearly_finite" || j["gamma_nf"] != Json::array({"-1", "1"})) return "classify of the pole spec gave " + r.out;
  return {};
}

/// Writing a parsed spec back out and parsing again is stable, through the library and
/// through the tool (the sup of a single H-continuous function is itself).
inline std::string check_roundtrip(const Workspace& w) {
  using namespace hcont;
  for (const char* spec : {kSignStep, kBand, kPoles, kQuadratic}) {
    Json first = function_to_json(function_from_json(parse_json_text(spec, "spec")));
    Json second = function_to_json(function_from_json(parse_json_text(first.dump(2), "spec")));
    if (first.dump() != second.dump()) return "library round trip changed " + first.dump();
  }
  Result a = w.run({"complete", w.write("rt.json", kPoles)});
  if (a.status != 0) return failed("complete", a);
  Result b = w.run({"sup", w.write("rt2.json", a.out)});
  if (b.status != 0 || a.out != b.out) return failed("sup of one completed function is not that function", b);
  Result op = w.run({"pde-approx", "--operator", w.write("op.json", kOperator), "--target", w.write("q.json", kQuadratic),
                     "--eps", "1/2", "--compact", "-1/2,1/2"});
  if (op.status != 0) return failed("pde-approx", op);
  Json report = Json::parse(op.out);
  DiffOperator t = operator_from_json(report["operator"]);
  if (!(t == operator_from_json(parse_json_text(kOperator, "op")))) return "operator did not survive the report";
  return {};
}

/// Every command run twice gives byte-identical streams, and thread counts do not change
/// the output.
inline std::string check_determinism(const Workspace& w) {
  std::string sign = w.write("d_sign.json", kSignStep), ramps = w.write("d_ramps.json", kRamps);
  std::string op = w.write("d_op.json", kOperator), heav = w.write("d_heav.json", kHeaviside);
  std::vector<std::vector<std::string>> jobs = {
      {"envelope", sign},
      {"complete", sign},
      {"sup", ramps},
      {"inf", ramps},
      {"equiv", sign, heav},
      {"order", sign, heav},
      {"sample", "--points", "257", sign},
      {"sample", "--exact", "--points", "17", sign},
      {"grid-envelope", "--points", "63", "--radius", "2", "--threads", "3", heav},
      {"pde-approx", "--operator", op, "--target", heav, "--compact", "-1/2,1/2", "--points", "33"},
  };
  for (const auto& job : jobs) {
    Result a = w.run(job), b = w.run(job);
    if (a.status != 0) return failed(job.front(), a);
    if (a.out != b.out || a.err != b.err || b.status != 0) return job.front() + " is not byte-identical on rerun";
  }
  Result g1 = w.run({"grid-envelope", "--points", "255", "--threads", "1", heav});
  Result g4 = w.run({"grid-envelope", "--points", "255", "--threads", "4", heav});
  if (g1.out != g4.out) return "grid-envelope depends on the thread count";
  std::vector<std::string> pde = {"pde-approx", "--operator", op, "--target", heav, "--compact", "-1/2,1/2", "--csv"};
  auto p1 = pde, p4 = pde;
  p1.insert(p1.end(), {w.path("p1.csv"), "--threads", "1"});
  p4.insert(p4.end(), {w.path("p4.csv"), "--threads", "4"});
  Result a = w.run(p1), b = w.run(p4);
  if (a.status != 0 || a.out != b.out) return failed("pde-approx depends on the thread count", b);
  if (slurp(w.path("p1.csv")) != slurp(w.path("p4.csv"))) return "pde-approx CSV depends on the thread count";
  return {};
}

/// Crafted bad inputs hit the documented exit code and a JSON error object naming the error.
inline std::string check_exit_codes(const Workspace& w) {
  using hcont::Json;
  struct Case {
    std::vector<std::string> args;
    std::string env;
    int status;
    std::string error;
  };
  std::string sign = w.write("e_sign.json", kSignStep), quad = w.write("e_quad.json", kQuadratic);
  std::string ramps = w.write("e_ramps.json", kRamps), half = w.write("e_half.json", kHalf);
  std::vector<Case> cases = {
      {{"complete", w.write("e_trunc.json", R"({"domain": ["-1", "1"])")}, "", 2, "ParseError"},
      {{"complete", w.path("e_missing.json")}, "", 2, "ParseError"},
      {{"complete", w.write("e_order.json", R"({"domain": ["-1", "1"], "breakpoints": ["0"],
          "segments": [{"num": ["0"]}, {"num": ["1"]}], "breakpoint_values": [["1", "0"]]})")},
       "", 2, "ParseError"},
      {{"complete", w.write("e_float.json", R"({"domain": [-1, 1], "segments": [{"num": [0.5]}]})")}, "", 2, "ParseError"},
      {{"sample", "--points", "1", sign}, "", 2, "ParseError"},
      {{"grid-envelope", "--radius", "0", sign}, "", 2, "ParseError"},
      {{"frobnicate", sign}, "", 2, "ParseError"},
      {{"equiv", sign}, "", 2, "ParseError"},
      {{"complete", quad}, "HC_MAX_DEGREE=abc", 2, "ParseError"},
      {{"pde-approx", "--operator", w.write("e_op.json", R"({"m": 1, "g": "u'' + u", "pivot": "u''"})"), "--target", quad,
        "--compact", "-1/2,1/2"},
       "", 2, "ParseError"},
      {{"pde-approx", "--operator", w.write("e_op2.json", kOperator), "--target", quad, "--compact", "-1/2,1/2", "--eps", "1/2,x"},
       "", 2, "ParseError"},
      {{"complete", quad}, "HC_MAX_DEGREE=1", 3, "DegreeCap"},
      {{"hcheck", sign}, "", 3, "UndefinedPoints"},
      {{"complete", w.write("e_band.json", kBand)}, "", 3, "NotPointValued"},
      {{"pde-approx", "--operator", w.path("e_op2.json"), "--target", quad, "--compact", "-3,1/2"}, "", 3, "OutOfDomain"},
      {{"sup", ramps, "--bound", half}, "", 3, "Unbounded"},
      {{"pde-approx", "--operator", w.path("e_op2.json"), "--target", quad, "--compact", "-1/2,1/2", "--verify-samples", "500"},
       "", 4, "VerificationFailure"},
  };
  for (const auto& c : cases) {
    Result r = w.run(c.args, c.env);
    std::string label = c.env + " " + c.args.front() + " " + c.args.back();
    if (r.status != c.status) return failed(label + ": expected exit " + std::to_string(c.status), r);
    Json e = Json::parse(r.err, nullptr, false);
    if (e.is_discarded() || !e.is_object() || !e.contains("message") || e.value("error", "") != c.error)
      return failed(label + ": expected a JSON error object naming " + c.error, r);
    if (!r.out.empty()) return label + ": wrote to stdout on failure";
  }
  Result named = w.run({"complete", w.path("e_order.json")});
  if (named.err.find("x = 0") == std::string::npos) return "ParseError does not name the offending breakpoint";
  Result help = w.run({"--help"});
  if (help.status != 0) return failed("--help", help);
  return {};
}

}  // namespace clitest
