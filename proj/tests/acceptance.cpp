// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Every count below is exact; the only tolerances are the wall-clock budgets.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gapforge/gapforge.hpp"
#include "support/oracles.hpp"

using namespace gapforge;
namespace oracle = gapforge::testing;

namespace {

constexpr const char* kNot = "g1 = INPUT\ng2 = NOT g1\nOUTPUT g2\n";
constexpr const char* kAndNot = "g1 = INPUT\ng2 = NOT g1\ng3 = AND g1 g2\nOUTPUT g3\n";

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void check(bool cond, const std::string& what) {
    if (!cond && ok) detail << "first failure: " << what << "; ";
    ok = ok && cond;
  }
};

int failures = 0;

void criterion(int id, const char* name, double budget_s, const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.ok = false;
    out.detail << "exception: " << e.what() << "; ";
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs > budget_s) {
    out.ok = false;
    out.detail << "over budget " << budget_s << " s; ";
  }
  if (!out.ok) ++failures;
  std::printf("%s criterion %d %s: %s(%.2f s)\n", out.ok ? "PASS" : "FAIL", id, name, out.detail.str().c_str(), secs);
  std::fflush(stdout);
}

Rational rat(std::uint64_t v) { return Rational(static_cast<std::int64_t>(v)); }

struct SeededCode {
  FieldPtr field;
  LinearCode code;
  std::size_t d;
};

/// Twelve random full-rank codes: q = 2 with n <= 4, q = 3 with n <= 3, N <= 12.
std::vector<SeededCode> seeded_codes() {
  std::mt19937_64 rng(20240611);
  const std::vector<std::tuple<std::uint32_t, std::size_t, std::size_t>> shapes = {
      {2, 2, 6}, {2, 3, 7}, {2, 4, 8}, {2, 3, 10}, {2, 4, 12}, {2, 2, 12},
      {3, 2, 5}, {3, 3, 6}, {3, 2, 8}, {3, 3, 9}, {3, 3, 12}, {3, 2, 12},
  };
  std::vector<SeededCode> out;
  for (auto [q, n, big_n] : shapes) {
    auto f = make_field(q, 1);
    LinearCode c{oracle::random_generator(f, big_n, n, rng), std::nullopt, false, std::nullopt};
    const auto d = oracle::naive_span_min_weight(f, c.basis(), big_n);
    out.push_back({f, std::move(c), *d});
  }
  return out;
}

Vector yes_witness(const MDPInstance& mdp, const LinearCode& code, std::vector<Elem> x) {
  const Vector cx = encode(code, Vector(mdp.field, std::move(x)));
  const Vector outer = kron(cx, cx);
  Vector w(mdp.field, mdp.length);
  std::copy(outer.entries().begin(), outer.entries().end(), w.entries().begin());
  w[mdp.length - 1] = 1;
  return w;
}

bool in_span(const FieldPtr& f, std::vector<Vector> basis, const Vector& v) {
  const std::size_t r = rank(f, basis);
  basis.push_back(v);
  return rank(f, basis) == r;
}

/// All circuits with 1..max_gates gates in topological order; any gate may be the output.
std::vector<Circuit> circuit_corpus(std::size_t max_gates) {
  std::vector<Circuit> out;
  std::function<void(std::vector<Gate>&)> extend = [&](std::vector<Gate>& gates) {
    for (std::size_t o = 0; o < gates.size(); ++o) out.emplace_back(gates, o);
    if (gates.size() == max_gates) return;
    const std::size_t k = gates.size();
    const std::string name = "g" + std::to_string(k + 1);
    auto push = [&](Gate g) {
      g.name = name;
      gates.push_back(g);
      extend(gates);
      gates.pop_back();
    };
    push({GateKind::Input, 0, 0, {}});
    for (std::size_t i = 0; i < k; ++i) push({GateKind::Not, i, 0, {}});
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        push({GateKind::And, i, j, {}});
        push({GateKind::Or, i, j, {}});
      }
  };
  std::vector<Gate> first{{GateKind::Input, 0, 0, "g1"}};
  extend(first);
  return out;
}

}  // namespace

int main() {
  criterion(1, "balancedness", 30.0, [](Outcome& out) {
    std::size_t codes = 0;
    for (std::uint32_t q : {2u, 3u})
      for (std::size_t n : {2u, 3u, 4u})
        for (const Rational& eps : {Rational(1, 2), Rational(1, 4)}) {
          auto f = make_field(q, 1);
          const auto code = balanced_code(f, n, eps);
          const std::size_t big_n = code.length();
          const Rational high = (Rational(1) - Rational(1, q)) * rat(big_n);
          const Rational low = (Rational(1) - eps) * high;
          const Rational bound = rat(q * n) / eps;
          const std::string tag = "q=" + std::to_string(q) + " n=" + std::to_string(n) + " eps=" + eps.str();
          out.check(rat(big_n) <= bound * bound, tag + " N bound");
          std::size_t nonzero = 0;
          for (const auto& w : oracle::span_elements(f, code.basis(), big_n)) {
            const auto wt = oracle::count_nonzero(w);
            if (wt == 0) continue;
            ++nonzero;
            out.check(low <= rat(wt) && rat(wt) <= high, tag + " weight " + std::to_string(wt));
          }
          std::uint64_t expect = 1;
          for (std::size_t i = 0; i < n; ++i) expect *= q;
          out.check(nonzero == expect - 1, tag + " injective");
          ++codes;
        }
    out.detail << codes << " codes, every nonzero weight in band; ";
  });

  const auto codes = seeded_codes();

  criterion(2, "tensor multiplicativity", 10.0, [&](Outcome& out) {
    for (const auto& c : codes) {
      const auto sq = tensor_square_basis(c.code.basis());
      const auto d2 = oracle::naive_span_min_weight(c.field, sq, c.code.length() * c.code.length());
      out.check(d2 == c.d * c.d, "d(C)=" + std::to_string(c.d));
      out.check(min_distance_exhaustive(tensor_square(c.code)) == d2, "library distance");
    }
    out.detail << codes.size() << " seeded codes, d(C (x) C) = d(C)^2; ";
  });

  criterion(3, "independent pair support", 10.0, [&](Outcome& out) {
    std::uint64_t pairs = 0;
    for (const auto& c : codes) {
      const auto words = oracle::span_elements(c.field, c.code.basis(), c.code.length());
      const std::uint32_t q = c.field->order();
      const auto need = static_cast<std::size_t>(((Rational(1) + Rational(1, q)) * rat(c.d)).ceil());
      for (const auto& x : words)
        for (const auto& y : words) {
          if (!oracle::count_nonzero(x) || !oracle::count_nonzero(y) || oracle::dependent(*c.field, x, y)) continue;
          std::size_t u = 0;
          for (std::size_t i = 0; i < x.size(); ++i) u += x[i] != 0 || y[i] != 0;
          out.check(u >= need, "union " + std::to_string(u) + " < " + std::to_string(need));
          ++pairs;
        }
    }
    out.detail << pairs << " independent pairs checked; ";
  });

  criterion(4, "rank dichotomy", 5.0, [](Outcome& out) {
    auto f2 = make_field(2, 1);
    const auto code = hadamard(f2, 3);
    const Matrix ct = transpose(code.gen);
    std::size_t rank1 = 0, higher = 0, max1 = 0, min2 = SIZE_MAX;
    oracle::for_each_tuple(2, 9, [&](const std::vector<Elem>& e) {
      const Matrix x(f2, 3, 3, e);
      const std::size_t r = oracle::matrix_rank_by_counting(x);
      if (r == 0) return;
      const std::size_t w = weight(matmul(matmul(code.gen, x), ct));
      if (r == 1) {
        ++rank1;
        max1 = std::max(max1, w);
      } else {
        ++higher;
        min2 = std::min(min2, w);
      }
    });
    out.check(rank1 == 49 && higher == 462, "rank census");
    out.check(max1 <= 16, "rank-1 weight " + std::to_string(max1));
    out.check(min2 >= 24, "rank>=2 weight " + std::to_string(min2));
    out.detail << rank1 << " rank-1 X with max weight " << max1 << ", " << higher << " rank>=2 X with min weight "
               << min2 << "; ";
  });

  criterion(5, "end-to-end gap", 60.0, [](Outcome& out) {
    const auto yes = run_end_to_end({}, kNot);
    out.check(yes.code.length() == 8 && yes.code.dimension() == 3, "NOT circuit uses hadamard(2,3)");
    out.check(yes.mdp_report.verdict == Verdict::YesConfirmed, "YES verdict");
    out.check(yes.mdp_report.oracle_value && *yes.mdp_report.oracle_value <= 17, "YES oracle <= 17");

    const auto no = run_end_to_end({}, kAndNot);
    out.check(no.mdp_report.verdict == Verdict::NoConfirmed, "NO verdict");
    out.check(no.mdp_report.oracle_value && *no.mdp_report.oracle_value >= 24, "NO oracle >= 24");
    out.check(no.mdp_report.oracle_value >= no.mdp.meta.no_threshold, "NO oracle >= own threshold");

    // Component level with a code balanced to 1/(9q) at q = 2.
    const std::uint32_t q = 2;
    const Rational eps(1, 9 * q);
    const auto code = balanced_code(make_field(q, 1), 2, eps / Rational(2));
    out.check(code.eps == eps, "code balance 1/(9q)");
    const auto profile = weight_profile(code);
    const std::size_t d = profile.begin()->first;
    out.check(code.d == d, "exact distance");
    out.check(rat(profile.rbegin()->first) <= (Rational(1) + eps) * rat(d), "weights within (1+eps)d");
    const auto g = gap_thresholds(q, eps, d, false);
    const Rational relaxed_yes = (Rational(1) + Rational(1, 3 * q)) * rat(d * d);
    out.check(g.yes_exact <= relaxed_yes, "(1+eps)^2 <= 1+1/(3q)");
    out.check(g.no_exact / relaxed_yes == Rational(9, 7), "ratio 9/7");
    out.check(certified_gap_ratio(q) == Rational(1) + Rational(2, 3 * q + 1), "ratio formula");
    out.detail << "YES oracle " << *yes.mdp_report.oracle_value << " (yes=" << yes.mdp.meta.yes_threshold
               << "), NO oracle " << *no.mdp_report.oracle_value << " (no=" << no.mdp.meta.no_threshold
               << ", AND-NOT has 4 variables so hadamard(2,4)), ratio " << (g.no_exact / relaxed_yes).str() << "; ";
  });

  criterion(6, "amplification", 30.0, [](Outcome& out) {
    auto f2 = make_field(2, 1);
    MDPInstance line;
    line.field = f2;
    line.length = 3;
    line.basis = {Vector(f2, {1, 1, 0})};
    const auto line2 = amplify(line, 2);
    out.check(oracle::naive_span_min_weight(f2, line2.basis, line2.length) == 4u, "span{(1,1,0)}");

    const auto sys = circuit_to_quadratic(parse_circuit(kNot), f2);
    const auto code = hadamard(f2, 3);
    const auto mdp = quad_to_mdp(sys, code, true);
    out.check(mdp.dimension() >= 1 && mdp.dimension() <= 2, "instance dimension 1-2");
    const auto base = oracle::naive_span_min_weight(f2, mdp.basis, mdp.length);
    const auto amp = amplify(mdp, 2);
    const auto squared = oracle::naive_span_min_weight(f2, amp.basis, amp.length);
    out.check(base && squared && *squared == *base * *base, "min weight squares");

    const Vector w = yes_witness(mdp, code, {0, 1, 1});
    const Vector ww = kron(w, w);
    out.check(w[mdp.length - 1] == 1 && ww[amp.length - 1] == 1, "distinguished coordinate stays 1");
    out.check(*amp.distinguished == amp.length - 1, "distinguished stays last");
    out.check(in_span(f2, amp.basis, ww) && weight(ww) == *squared, "kron witness is optimal");
    out.detail << "dim " << mdp.dimension() << ", t=1 min " << *base << ", t=2 min " << *squared << "; ";
  });

  criterion(7, "NCP reduction", 30.0, [](Outcome& out) {
    for (const char* text : {kNot, kAndNot}) {
      const auto r = run_end_to_end({}, text);
      const auto& ncp = r.ncp;
      const auto mdp_min = oracle::naive_span_min_weight(r.mdp.field, r.mdp.basis, r.mdp.length);
      std::optional<std::size_t> coset;
      oracle::for_each_tuple(2, ncp.dimension(), [&](const std::vector<Elem>& c) {
        auto v = oracle::naive_combination(*ncp.field, ncp.hom_basis, c, ncp.length);
        for (std::size_t l = 0; l < ncp.length; ++l) v[l] = ncp.field->add(v[l], ncp.offset[l]);
        const auto w = oracle::count_nonzero(v);
        if (!coset || w < *coset) coset = w;
      });
      out.check(coset && mdp_min && *coset >= *mdp_min, "affine >= subspace");
      out.check(r.ncp_report.oracle_value == coset, "library affine oracle agrees");
      if (text == kNot) out.check(*coset <= ncp.meta.yes_threshold, "YES coset optimum <= yes");
      else out.check(*coset >= ncp.meta.no_threshold, "NO coset optimum >= no");
      out.detail << (text == kNot ? "YES" : "NO") << " affine " << *coset << " vs subspace " << *mdp_min << "; ";
    }
  });

  criterion(8, "gadget sweep", 120.0, [](Outcome& out) {
    const auto corpus = circuit_corpus(3);
    std::size_t discrepancies = 0, checked = 0;
    for (std::uint32_t q : {2u, 3u}) {
      auto f = make_field(q, 1);
      for (const auto& c : corpus) {
        const std::size_t inputs = c.inputs().size();
        bool sat = false;
        for (std::uint64_t mask = 0; mask < (1u << inputs) && !sat; ++mask) {
          std::vector<bool> a(inputs);
          for (std::size_t i = 0; i < inputs; ++i) a[i] = (mask >> i) & 1u;
          sat = eval_circuit(c, a);
        }
        const auto sys = circuit_to_quadratic(c, f);
        bool nonzero = false, with_z = false;
        oracle::for_each_tuple(q, sys.n_vars, [&](const std::vector<Elem>& x) {
          if (!oracle::count_nonzero(x)) return;
          for (const auto& form : sys.forms) {
            Elem acc = 0;
            for (std::size_t i = 0; i < x.size(); ++i)
              for (std::size_t j = 0; j < x.size(); ++j)
                acc = f->add(acc, f->mul(form(i, j), f->mul(x[i], x[j])));
            if (acc != 0) return;
          }
          nonzero = true;
          with_z = with_z || x[sys.distinguished] == 1;
        });
        const bool lib = quad_nonzero_solve(sys, false).has_value();
        const bool lib_z = quad_nonzero_solve(sys, true).has_value();
        if (sat != nonzero || sat != with_z || lib != nonzero || lib_z != with_z) ++discrepancies;
        ++checked;
      }
    }
    out.check(discrepancies == 0, std::to_string(discrepancies) + " discrepancies");
    out.detail << corpus.size() << " circuits x 2 fields = " << checked << " systems, " << discrepancies
               << " discrepancies; ";
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
