#pragma once

#include <openssl/evp.h>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lincomp/code.hpp"
#include "lincomp/counterex.hpp"
#include "lincomp/cuts.hpp"
#include "lincomp/equiv.hpp"
#include "lincomp/mvpoly.hpp"
#include "lincomp/netmodel.hpp"
#include "lincomp/synth.hpp"

namespace lincomp::cli {

inline constexpr const char* kToolVersion = "0.1.0";

enum Exit : int { kOk = 0, kInputError = 1, kFalse = 2, kNoConstructor = 3, kCutViolation = 4 };

struct Args {
  std::string command;
  std::string network, target, code;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string out_dir;
  std::string messages;            // JSON array, one entry per source
  std::vector<std::string> pins;   // "x[A,0,1]=1"
  std::string order = "grevlex";
  bool dump_basis = false;
  std::size_t max_reductions = 1'000'000;
};

struct Outcome {
  int exit_code = kOk;
  nlohmann::json report;
  std::string summary;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::ParseError, "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 failed");
  std::ostringstream hex;
  for (unsigned i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return hex.str();
}

inline nlohmann::json parse_json(const std::string& text, const std::string& what) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& ex) {
    throw Error(Errc::ParseError, what + ": " + ex.what());
  }
}

inline void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::ParseError, "cannot write '" + path.string() + "'");
  out << j.dump(2) << '\n';
}

inline std::string ratio_text(const Ratio& r) {
  return r.den == 1 ? std::to_string(r.num) : std::to_string(r.num) + "/" + std::to_string(r.den);
}

inline nlohmann::json matrix_json(const FqMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
  return rows;
}

inline nlohmann::json cut_json(const Network& net, const CutReport& r) {
  nlohmann::json edges = nlohmann::json::array();
  for (EdgeId e : r.witness) edges.push_back({net.name(net.edge(e).tail), net.name(net.edge(e).head)});
  return {{"value", ratio_text(r.value)},
          {"num", r.value.num},
          {"den", r.value.den},
          {"witness", r.witness},
          {"witness_edges", edges},
          {"separated", r.separated}};
}

/// Loads the inputs a command needs and records their digests.
class Inputs {
 public:
  explicit Inputs(const Args& a) : args_(a) {}

  const Network& network() {
    if (!net_) net_ = parse_network(load("network", args_.network));
    return *net_;
  }
  const TargetMatrix& target() {
    if (!target_) target_ = target_from_json(parse_json(load("target", args_.target), "target"));
    return *target_;
  }
  const LinearCode& code() {
    if (!code_) code_ = code_from_json(parse_json(load("code", args_.code), "code"));
    return *code_;
  }
  const nlohmann::json& digests() const { return digests_; }

 private:
  std::string load(const std::string& role, const std::string& path) {
    if (path.empty()) throw Error(Errc::ParseError, "missing --" + role);
    auto text = read_file(path);
    digests_[role] = {{"sha256", sha256_hex(text)}};
    return text;
  }

  const Args& args_;
  nlohmann::json digests_ = nlohmann::json::object();
  std::optional<Network> net_;
  std::optional<TargetMatrix> target_;
  std::optional<LinearCode> code_;
};

inline std::map<Indeterminate, std::uint32_t> parse_pins(const std::vector<std::string>& pins) {
  std::map<Indeterminate, std::uint32_t> out;
  for (const auto& p : pins) {
    const auto eq = p.find('=');
    if (eq == std::string::npos) throw Error(Errc::ParseError, "pin '" + p + "' is not name=value");
    try {
      out[Indeterminate::parse(p.substr(0, eq))] = static_cast<std::uint32_t>(std::stoul(p.substr(eq + 1)));
    } catch (const std::logic_error&) {
      throw Error(Errc::ParseError, "pin '" + p + "' has a bad value");
    }
  }
  return out;
}

inline Outcome cmd_validate(Inputs& in) {
  const auto& net = in.network();
  nlohmann::json result = network_to_json(net);
  result["edge_count"] = net.edge_count();
  return {kOk, {{"result", result}},
          "valid: " + std::to_string(net.node_count()) + " nodes, " + std::to_string(net.edge_count()) + " edges"};
}

inline Outcome cmd_mincut(Inputs& in) {
  const auto& net = in.network();
  const auto report = mincut_ratio(net, in.target());
  const bool ok = report.value >= Ratio{1, 1};
  auto result = cut_json(net, report);
  result["necessary_condition"] = ok;
  return {ok ? kOk : kCutViolation, {{"result", result}}, "mincut " + ratio_text(report.value)};
}

inline Outcome cmd_groebner_test(Inputs& in, const Args& a) {
  auto ideal = symbolic_transfer(in.network(), in.target());
  if (!a.pins.empty()) ideal = pin(ideal, parse_pins(a.pins));
  GroebnerOptions opts;
  if (a.order == "lex") opts.order = MonomialOrder::Lex;
  else if (a.order != "grevlex") throw Error(Errc::ParseError, "unknown order '" + a.order + "'");
  opts.max_reductions = a.max_reductions;
  const auto gb = groebner(ideal, opts);
  const auto verdict = gb.is_unit() ? Verdict::Unsolvable : Verdict::Solvable;
  nlohmann::json result = {{"verdict", to_string(verdict)},
                           {"basis_size", gb.basis.size()},
                           {"variables", ideal.vars.size()},
                           {"generators", ideal.generators.size()},
                           {"reductions", gb.reductions},
                           {"order", a.order}};
  if (a.dump_basis) {
    nlohmann::json basis = nlohmann::json::array();
    for (const auto& g : gb.basis) basis.push_back(to_text(g, ideal.vars));
    result["basis"] = basis;
  }
  return {verdict == Verdict::Unsolvable ? kFalse : kOk, {{"result", result}},
          std::string(to_string(verdict)) + ", basis size " + std::to_string(gb.basis.size())};
}

inline Outcome cmd_classify(Inputs& in) {
  const auto& t = in.target();
  const auto cls = classify(t);
  nlohmann::json result = {{"class", to_string(cls.kind)},
                           {"Q", matrix_json(cls.witness.q)},
                           {"pi", cls.witness.pi},
                           {"P", matrix_json(cls.witness.p)}};
  return {kOk, {{"result", result}}, to_string(cls.kind)};
}

inline Outcome cmd_synthesize(Inputs& in, const Args& a) {
  const auto& net = in.network();
  const auto seed = a.seed.value_or(0);
  try {
    const auto out = synthesize(net, in.target(), seed);
    nlohmann::json result = {{"status", to_string(out.status)}, {"seed", seed}};
    if (out.cut) result["mincut"] = cut_json(net, *out.cut);
    int code = kOk;
    switch (out.status) {
      case SynthStatus::Solved: {
        const auto& r = *out.result;
        result["method"] = to_string(r.method);
        result["n"] = r.n;
        result["attempts"] = r.attempts;
        result["code"] = code_to_json(r.code);
        if (!a.out.empty()) write_json(a.out, result["code"]);
        break;
      }
      case SynthStatus::Unsolvable: code = kFalse; break;
      case SynthStatus::SolvableNoConstructor: code = kNoConstructor; break;
      case SynthStatus::CutViolation: code = kCutViolation; break;
    }
    return {code, {{"result", result}}, to_string(out.status)};
  } catch (const CutViolationError& ex) {
    return {kCutViolation, {{"result", {{"status", "cut-violation"}, {"mincut", cut_json(net, ex.report())}}}},
            "cut-violation"};
  }
}

inline Outcome cmd_verify(Inputs& in) {
  const auto& net = in.network();
  const auto& code = in.code();
  const auto& t = in.target();
  const bool ok = is_solution(net, code, t);
  nlohmann::json result = {{"is_solution", ok}};
  std::uint64_t tuples = 1;
  bool small = true;
  for (std::size_t i = 0; i < net.source_count() && small; ++i) {
    if (tuples > 4096 / code.field.order()) small = false;
    else tuples *= code.field.order();
  }
  if (small) {
    const bool ex = exhaustive_check(net, code, t);
    result["exhaustive"] = ex;
    result["tuples"] = tuples;
    if (ex != ok) throw Error(Errc::ConstructionMismatch, "transfer matrix and simulation disagree");
  } else {
    result["exhaustive"] = nullptr;
  }
  return {ok ? kOk : kFalse, {{"result", result}}, ok ? "solution" : "not a solution"};
}

inline Outcome cmd_counterexample(Inputs& in, const Args& a) {
  const auto bundle = build_np(in.target());
  const auto cut = mincut_ratio(bundle.network, bundle.target);
  nlohmann::json result = {{"mincut", ratio_text(cut.value)},
                           {"verdict", to_string(Verdict::Unsolvable)},
                           {"construction", construction_to_json(bundle.construction)},
                           {"standard_form", matrix_json(bundle.standard)}};
  if (!a.out_dir.empty()) {
    const std::filesystem::path dir(a.out_dir);
    std::filesystem::create_directories(dir);
    write_json(dir / "network.json", network_to_json(bundle.network));
    write_json(dir / "target.json", target_to_json(bundle.target));
    write_json(dir / "report.json", result);
  }
  result["network"] = network_to_json(bundle.network);
  return {kOk, {{"result", result}}, "counterexample with " + std::to_string(bundle.network.edge_count()) + " edges"};
}

inline Outcome cmd_simulate(Inputs& in, const Args& a) {
  const auto& net = in.network();
  const auto& code = in.code();
  const auto& fld = code.field;
  std::vector<Felem> msgs(net.source_count(), fld.zero());
  if (!a.messages.empty()) {
    const auto j = parse_json(a.messages, "messages");
    if (!j.is_array() || j.size() != net.source_count())
      throw Error(Errc::ArityMismatch, "expected " + std::to_string(net.source_count()) + " messages");
    for (std::size_t i = 0; i < j.size(); ++i)
      msgs[i] = j[i].is_number() ? fld.embed(j[i].get<std::uint32_t>()) : felem_from_json(fld, j[i]);
  }
  const auto out = simulate(net, code, msgs);
  nlohmann::json outputs = nlohmann::json::array();
  for (const auto& e : out) outputs.push_back(felem_to_json(e));
  return {kOk, {{"result", {{"outputs", outputs}}}}, "outputs " + outputs.dump()};
}

/// Runs one command. Library errors become exit code 1 with the error kind
/// in the report.
inline Outcome run(const Args& a) {
  Inputs in(a);
  Outcome out;
  try {
    if (a.command == "validate") out = cmd_validate(in);
    else if (a.command == "mincut") out = cmd_mincut(in);
    else if (a.command == "groebner-test") out = cmd_groebner_test(in, a);
    else if (a.command == "classify") out = cmd_classify(in);
    else if (a.command == "synthesize") out = cmd_synthesize(in, a);
    else if (a.command == "verify") out = cmd_verify(in);
    else if (a.command == "counterexample") out = cmd_counterexample(in, a);
    else if (a.command == "simulate") out = cmd_simulate(in, a);
    else throw Error(Errc::ParseError, "unknown command '" + a.command + "'");
  } catch (const Error& ex) {
    out = {kInputError, {{"error", {{"kind", to_string(ex.code())}, {"message", ex.what()}}}}, ex.what()};
  } catch (const std::filesystem::filesystem_error& ex) {
    out = {kInputError, {{"error", {{"kind", "IoError"}, {"message", ex.what()}}}}, ex.what()};
  }
  out.report["command"] = a.command;
  out.report["inputs"] = in.digests();
  out.report["seed"] = a.seed ? nlohmann::json(*a.seed) : nlohmann::json(nullptr);
  out.report["tool_version"] = kToolVersion;
  out.report["exit_code"] = out.exit_code;
  return out;
}

}  // namespace lincomp::cli
