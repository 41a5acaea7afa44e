#pragma once

// Circuit -> quadratic system -> code -> MDP (distinguished) -> amplify -> NCP,
// with every stage verified by the brute-force oracle.

#include <optional>
#include <string>
#include <vector>

#include "gapforge/codes.hpp"
#include "gapforge/frontend.hpp"
#include "gapforge/io.hpp"
#include "gapforge/oracle.hpp"
#include "gapforge/reduction.hpp"

namespace gapforge {

enum class CodeChoice { LemmaConstruction, Hadamard };

inline CodeChoice parse_code_choice(std::string_view s) {
  if (s == "hadamard") return CodeChoice::Hadamard;
  if (s == "lemma" || s == "lemma_construction" || s == "balanced") return CodeChoice::LemmaConstruction;
  fail(ErrorKind::InvalidArgument, "unknown code choice '" + std::string(s) + "' (use hadamard or lemma)");
}

struct PipelineConfig {
  std::uint32_t q = 2;
  /// Construction parameter for the concatenated code (the code itself is 2*eps balanced).
  std::optional<Rational> eps;
  CodeChoice code = CodeChoice::Hadamard;
  /// Hadamard message length; defaults to the variable count.
  std::optional<unsigned> m_ext;
  unsigned t = 1;
  Limits limits{};
};

/// Builds the code the pipeline feeds into quad_to_mdp for an n-variable system.
inline LinearCode build_pipeline_code(const FieldPtr& field, std::size_t n_vars, const PipelineConfig& cfg) {
  if (cfg.code == CodeChoice::Hadamard) {
    const unsigned m = cfg.m_ext.value_or(static_cast<unsigned>(n_vars));
    if (m != n_vars)
      fail(ErrorKind::DimensionMismatch,
           "hadamard m=" + std::to_string(m) + " must equal the variable count " + std::to_string(n_vars));
    return hadamard(field, m, cfg.limits);
  }
  const Rational eps = cfg.eps.value_or(Rational(1, 18 * static_cast<std::int64_t>(field->order())));
  // Refuse before paying for the construction.
  if (!gap_is_open(field->order(), eps * Rational(2)))
    fail(ErrorKind::GapClosed, "(1+2eps)^2 >= 1+1/q for eps=" + eps.str());
  return balanced_code(field, n_vars, eps, cfg.limits);
}

struct PipelineResult {
  Circuit circuit;
  QuadraticSystem system;
  LinearCode code;
  MDPInstance mdp;        // t = 1
  MDPInstance amplified;  // t = cfg.t
  NCPInstance ncp;
  VerifyReport mdp_report;
  VerifyReport ncp_report;

  /// 0 confirmed, 1 gap violation, 2 inconclusive.
  int exit_code() const noexcept {
    for (const auto* r : {&mdp_report, &ncp_report})
      if (r->verdict == Verdict::GapViolation) return 1;
    for (const auto* r : {&mdp_report, &ncp_report})
      if (r->verdict == Verdict::Inconclusive) return 2;
    return 0;
  }

  /// (file name, content) pairs in a fixed order.
  std::vector<std::pair<std::string, std::string>> artifacts() const {
    return {
        {"circuit.circ", circuit.to_text()},
        {"quadsys.txt", io::write_quadsys(system)},
        {"code.txt", io::write_code(code)},
        {"mdp.txt", io::write_mdp(amplified)},
        {"ncp.txt", io::write_ncp(ncp)},
        {"report.txt", report_text()},
    };
  }

  std::string report_text() const {
    std::string s = mdp_report.to_text();
    s += "---\n";
    s += ncp_report.to_text();
    return s;
  }
};

inline PipelineResult run_end_to_end(const PipelineConfig& cfg, std::string_view circuit_text) {
  PipelineResult r;
  r.circuit = parse_circuit(circuit_text);
  const auto field = make_field_of_order(cfg.q);
  r.system = circuit_to_quadratic(r.circuit, field);
  r.code = build_pipeline_code(field, r.system.n_vars, cfg);
  r.mdp = quad_to_mdp(r.system, r.code, /*distinguished=*/true, cfg.limits);
  r.amplified = amplify(r.mdp, cfg.t, cfg.limits);
  r.ncp = mdp_to_ncp(r.amplified);
  r.mdp_report = verify_instance(r.amplified, &r.circuit, cfg.limits.enumeration, "mdp");
  r.ncp_report = verify_instance(r.ncp, &r.circuit, cfg.limits.enumeration, "ncp");
  return r;
}

}  // namespace gapforge
