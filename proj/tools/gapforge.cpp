// gapforge command-line driver.
//
// Exit codes: 0 confirmed (or plain success), 1 gap violation,
// 2 inconclusive, 3 usage or input error.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "gapforge/gapforge.hpp"

namespace fs = std::filesystem;
using namespace gapforge;

namespace {

constexpr int kExitUsage = 3;

struct Options {
  std::uint32_t q = 2;
  std::optional<unsigned> m_ext;
  std::string eps;
  std::string code = "hadamard";
  unsigned t = 1;
  std::optional<std::uint64_t> cap;
  std::string in;
  std::string out;
  std::string circuit;
  std::string sys;
  bool distinguished = false;
  std::size_t n = 0;
};

std::uint64_t enumeration_cap(const Options& o) {
  if (o.cap) return *o.cap;
  if (const char* env = std::getenv("GAPFORGE_CAP"); env && *env) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0' || v == 0) fail(ErrorKind::InvalidArgument, "GAPFORGE_CAP must be a positive integer");
    return v;
  }
  return kDefaultEnumerationCap;
}

Limits limits(const Options& o) {
  Limits l;
  l.enumeration.cap = enumeration_cap(o);
  return l;
}

std::optional<Rational> parse_eps(const Options& o) {
  if (o.eps.empty()) return std::nullopt;
  return Rational::parse(o.eps);
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") std::cout << text;
  else io::write_file(path, text);
}

/// Reads `path`, attaching the file name to any parse failure.
template <class Reader>
auto load(const std::string& path, Reader&& reader) {
  const std::string text = io::read_file(path);
  try {
    return reader(text);
  } catch (const Error& e) {
    fail(e.kind(), path + ": " + e.what());
  }
}

int exit_for(Verdict v) {
  switch (v) {
    case Verdict::YesConfirmed:
    case Verdict::NoConfirmed: return 0;
    case Verdict::GapViolation: return 1;
    case Verdict::Inconclusive: return 2;
  }
  return 2;
}

std::string support_list(const Vector& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) s += (s.empty() ? "" : ",") + std::to_string(i + 1);
  return s.empty() ? "none" : s;
}

int cmd_compile(const Options& o) {
  const auto c = load(o.in, [](const std::string& t) { return parse_circuit(t); });
  emit(o.out, io::write_quadsys(circuit_to_quadratic(c, make_field_of_order(o.q))));
  return 0;
}

int cmd_build_code(const Options& o) {
  if (o.n == 0) fail(ErrorKind::InvalidArgument, "--n must be >= 1");
  PipelineConfig cfg;
  cfg.q = o.q;
  cfg.code = parse_code_choice(o.code);
  cfg.eps = parse_eps(o);
  cfg.m_ext = o.m_ext;
  cfg.limits = limits(o);
  emit(o.out, io::write_code(build_pipeline_code(make_field_of_order(o.q), o.n, cfg)));
  return 0;
}

int cmd_reduce(const Options& o) {
  const auto sys = load(o.sys, [](const std::string& t) { return io::read_quadsys(t); });
  const auto code = load(o.in, [](const std::string& t) { return io::read_code(t); });
  emit(o.out, io::write_mdp(quad_to_mdp(sys, code, o.distinguished, limits(o))));
  return 0;
}

int cmd_amplify(const Options& o) {
  const auto inst = load(o.in, [](const std::string& t) { return io::read_mdp(t); });
  emit(o.out, io::write_mdp(amplify(inst, o.t, limits(o))));
  return 0;
}

int cmd_to_ncp(const Options& o) {
  const auto inst = load(o.in, [](const std::string& t) { return io::read_mdp(t); });
  emit(o.out, io::write_ncp(mdp_to_ncp(inst)));
  return 0;
}

int cmd_solve(const Options& o) {
  const std::string text = io::read_file(o.in);
  const std::string kind = io::document_kind(text);
  const auto opts = limits(o).enumeration;
  WeightWitness w;
  try {
    if (kind == "QUADSYS") {
      const auto sys = io::read_quadsys(text);
      const auto x = quad_nonzero_solve(sys, o.distinguished, opts);
      std::string s;
      if (x)
        for (std::size_t i = 0; i < x->size(); ++i) s += (i ? "," : "") + std::to_string((*x)[i]);
      std::cout << "solution=" << (x ? s : "none") << '\n';
      return 0;
    }
    if (kind == "MDP") {
      const auto inst = io::read_mdp(text);
      w = subspace_min_weight(inst.field, inst.basis, inst.length, opts);
    } else if (kind == "NCP") {
      const auto inst = io::read_ncp(text);
      w = affine_min_weight(inst.offset, inst.hom_basis, opts);
    } else {
      fail(ErrorKind::ParseError, "solve expects a QUADSYS, MDP or NCP document");
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::EnumerationCapExceeded) {
      std::cout << "value=unknown witness=none\n";
      std::cerr << "gapforge: " << e.what() << '\n';
      return 2;
    }
    fail(e.kind(), o.in + ": " + e.what());
  }
  if (!w.weight) std::cout << "value=inf witness=none\n";
  else std::cout << "value=" << *w.weight << " witness=" << support_list(w.vector) << '\n';
  return 0;
}

int cmd_verify(const Options& o) {
  const std::string text = io::read_file(o.in);
  const std::string kind = io::document_kind(text);
  std::optional<Circuit> circuit;
  if (!o.circuit.empty()) circuit = load(o.circuit, [](const std::string& t) { return parse_circuit(t); });
  const Circuit* gt = circuit ? &*circuit : nullptr;
  const auto opts = limits(o).enumeration;
  const std::string id = fs::path(o.in).filename().string();

  VerifyReport r;
  try {
    if (kind == "MDP") r = verify_instance(io::read_mdp(text), gt, opts, id);
    else if (kind == "NCP") r = verify_instance(io::read_ncp(text), gt, opts, id);
    else fail(ErrorKind::ParseError, "verify expects an MDP or NCP document");
  } catch (const Error& e) {
    fail(e.kind(), o.in + ": " + e.what());
  }
  emit(o.out, r.to_text());
  return exit_for(r.verdict);
}

int cmd_end_to_end(const Options& o) {
  const std::string path = o.circuit.empty() ? o.in : o.circuit;
  if (path.empty()) fail(ErrorKind::InvalidArgument, "end-to-end needs --circuit");
  PipelineConfig cfg;
  cfg.q = o.q;
  cfg.code = parse_code_choice(o.code);
  cfg.eps = parse_eps(o);
  cfg.m_ext = o.m_ext;
  cfg.t = o.t;
  cfg.limits = limits(o);

  const std::string text = io::read_file(path);
  PipelineResult r;
  try {
    r = run_end_to_end(cfg, text);
  } catch (const Error& e) {
    fail(e.kind(), path + ": " + e.what());
  }
  // Everything is computed before the first file is touched.
  if (!o.out.empty()) {
    fs::create_directories(o.out);
    for (const auto& [name, content] : r.artifacts()) io::write_file((fs::path(o.out) / name).string(), content);
  }
  std::cout << r.report_text();
  return r.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gapforge: circuit SAT to gap MDP/NCP instances with brute-force verification"};
  app.require_subcommand(1);
  Options o;

  auto add_cap = [&](CLI::App* sub) {
    sub->add_option("--cap", o.cap, "enumeration cap (default: $GAPFORGE_CAP or 2^22)")->check(CLI::PositiveNumber);
  };
  auto add_q = [&](CLI::App* sub) { sub->add_option("--q", o.q, "field order (prime power)")->capture_default_str(); };

  auto* compile = app.add_subcommand("compile-circuit", "circuit -> homogeneous quadratic system");
  compile->add_option("--in", o.in, "circuit file")->required();
  add_q(compile);
  compile->add_option("--out", o.out, "output file (default stdout)");

  auto* build = app.add_subcommand("build-code", "write a code generator");
  add_q(build);
  build->add_option("--n", o.n, "message length")->required();
  build->add_option("--code", o.code, "hadamard or lemma (concatenated RS+Hadamard)")->capture_default_str();
  build->add_option("--eps", o.eps, "construction eps for the concatenated RS+Hadamard code, e.g. 1/36");
  build->add_option("--m-ext", o.m_ext, "hadamard message length (must equal --n)");
  build->add_option("--out", o.out, "output file (default stdout)");
  add_cap(build);

  auto* reduce = app.add_subcommand("reduce", "quadratic system + code -> MDP instance");
  reduce->add_option("--sys", o.sys, "QUADSYS file")->required();
  reduce->add_option("--code,--in", o.in, "CODE file")->required();
  reduce->add_flag("--distinguished", o.distinguished, "append the distinguished coordinate");
  reduce->add_option("--out", o.out, "output file (default stdout)");

  auto* amp = app.add_subcommand("amplify", "tensor power of an MDP instance");
  amp->add_option("--in", o.in, "MDP file")->required();
  amp->add_option("--t", o.t, "tensor power")->check(CLI::PositiveNumber)->capture_default_str();
  amp->add_option("--out", o.out, "output file (default stdout)");

  auto* ncp = app.add_subcommand("to-ncp", "MDP with distinguished coordinate -> NCP instance");
  ncp->add_option("--in", o.in, "MDP file")->required();
  ncp->add_option("--out", o.out, "output file (default stdout)");

  auto* solve = app.add_subcommand("solve", "exact optimum by enumeration");
  solve->add_option("--in", o.in, "QUADSYS, MDP or NCP file")->required();
  solve->add_flag("--distinguished", o.distinguished, "QUADSYS only: require the distinguished variable = 1");
  add_cap(solve);

  auto* verify = app.add_subcommand("verify", "compare the exact optimum with the instance thresholds");
  verify->add_option("--in", o.in, "MDP or NCP file")->required();
  verify->add_option("--circuit", o.circuit, "circuit to cross-check satisfiability against");
  verify->add_option("--out", o.out, "report file (default stdout)");
  add_cap(verify);

  auto* e2e = app.add_subcommand("end-to-end", "run every stage and verify the results");
  e2e->add_option("--circuit,--in", o.circuit, "circuit file")->required();
  add_q(e2e);
  e2e->add_option("--code", o.code, "hadamard or lemma (concatenated RS+Hadamard)")->capture_default_str();
  e2e->add_option("--eps", o.eps, "construction eps for the concatenated RS+Hadamard code");
  e2e->add_option("--m-ext", o.m_ext, "hadamard message length");
  e2e->add_option("--t", o.t, "tensor power")->check(CLI::PositiveNumber)->capture_default_str();
  e2e->add_option("--out", o.out, "directory for the emitted artifacts");
  add_cap(e2e);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*compile) return cmd_compile(o);
    if (*build) return cmd_build_code(o);
    if (*reduce) return cmd_reduce(o);
    if (*amp) return cmd_amplify(o);
    if (*ncp) return cmd_to_ncp(o);
    if (*solve) return cmd_solve(o);
    if (*verify) return cmd_verify(o);
    if (*e2e) return cmd_end_to_end(o);
  } catch (const Error& e) {
    std::cerr << "gapforge: " << e.what() << '\n';
    return kExitUsage;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "gapforge: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
