// Copyright 2026 the cizeta authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "cizeta/counting.hpp"
#include "cizeta/cyclo.hpp"
#include "cizeta/dwork.hpp"
#include "cizeta/jacobian.hpp"
#include "cizeta/report.hpp"
#include "cizeta/zeta.hpp"

using namespace cizeta;

namespace {

// Exit codes: 0 bound holds, 1 input/usage error, 2 smoothness audit failed,
// 3 theorem violation, 4 budget exceeded.
enum ExitCode { kOk = 0, kInput = 1, kNotSmooth = 2, kViolation = 3, kBudget = 4 };

double secs_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw InputError("cannot open input file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

uint64_t effective_budget(uint64_t flag_value) {
  if (const char* env = std::getenv("CIZETA_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
    throw InputError("CIZETA_BUDGET must be a positive integer");
  }
  return flag_value;
}

const char* verdict_name(PolygonVerdict v) {
  switch (v) {
    case PolygonVerdict::Holds: return "holds";
    case PolygonVerdict::HoldsWithEquality: return "holds-with-equality";
    default: return "violation";
  }
}

std::string join_longs(const std::vector<long>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i)
    s += (i ? " " : "") + std::to_string(v[i]);
  return s;
}

std::string polygon_string(const Polygon& poly) {
  std::string s;
  for (size_t i = 0; i < poly.vertices.size(); ++i) {
    if (i) s += " ";
    s += "(" + poly.vertices[i].first.get_str() + "," +
         poly.vertices[i].second.get_str() + ")";
  }
  return s;
}

void echo_input(RunReport& rep, const VarietySpec& spec) {
  std::string canon = render_variety(spec);
  rep.set("version", kVersion);
  rep.set("input.canonical", canon);
  rep.set("input.hash", input_hash(canon));
  rep.set("input.label", spec.label);
  rep.set_int("input.p", (long long)spec.field.p());
  rep.set_int("input.a", spec.field.a());
  rep.set_int("input.n", spec.n);
  rep.set_int("input.r", spec.r);
}

// Shared pipeline: audit, Hodge data, counts, P, polygons.  Returns the
// exit code; fills the report either way.
int analyze_into(RunReport& rep, const VarietySpec& spec, unsigned depth,
                 uint64_t budget, unsigned workers) {
  echo_input(rep, spec);
  auto t0 = std::chrono::steady_clock::now();
  AuditVerdict audit = smoothness_audit(spec, depth, budget);
  rep.set_time("audit", secs_since(t0));
  rep.set("audit.smooth", audit.smooth ? "yes" : "no");
  rep.set_int("audit.depth", audit.depth);
  if (!audit.smooth) {
    rep.set("audit.witness", audit.witness);
    rep.set("verdict", "not-smooth");
    return kNotSmooth;
  }

  t0 = std::chrono::steady_clock::now();
  HodgeData hd = hodge_numbers(spec);
  rep.set_time("hodge", secs_since(t0));
  rep.set("hodge.h", join_longs(hd.h));
  rep.set("hodge.exceptional", hd.exceptional ? "yes" : "no");
  if (hd.exceptional) rep.set_int("hodge.exceptional_e", hd.exceptional_e);
  long D = hd.degree_P();
  rep.set_int("hodge.degree_P", D);

  t0 = std::chrono::steady_clock::now();
  std::vector<uint64_t> counts;
  for (unsigned m = 1; m <= (unsigned)D; ++m)
    counts.push_back(count_projective(spec, m, budget, workers));
  rep.set_time("count", secs_since(t0));
  {
    std::string s;
    for (size_t i = 0; i < counts.size(); ++i)
      s += (i ? " " : "") + std::to_string(counts[i]);
    rep.set("counts.N", s);
  }

  PPoly P = extract_P(spec, counts, hd.h);
  {
    std::string s;
    for (size_t i = 0; i < P.c.size(); ++i)
      s += (i ? " " : "") + P.c[i].get_str();
    rep.set("zeta.P", s);
  }

  Polygon np = newton_polygon(P, spec.field.p(), spec.field.a());
  Polygon hp = hodge_polygon(hd.h, spec.r);
  rep.set("polygon.newton", polygon_string(np));
  rep.set("polygon.hodge", polygon_string(hp));
  PolygonCompare cmp = lies_on_or_above(np, hp);
  rep.set("verdict", verdict_name(cmp.verdict));
  if (cmp.verdict == PolygonVerdict::Violation) {
    rep.set("polygon.first_failure", cmp.abscissa.get_str());
    return kViolation;
  }
  return kOk;
}

int run_dwork(RunReport& rep, const VarietySpec& spec, int precision,
              const std::string& b_override, uint64_t budget,
              unsigned workers) {
  if (spec.field.a() != 1) {
    rep.set("verdict", "refused: prime fields only (a = 1)");
    return kInput;
  }
  if (spec.degree_product_mod_p() == 0) {
    rep.set("verdict", "refused: p divides a degree");
    return kInput;
  }
  echo_input(rep, spec);
  HodgeData hd = hodge_numbers(spec);
  rep.set("hodge.h", join_longs(hd.h));
  long D = hd.degree_P();
  rep.set_int("hodge.degree_P", D);

  auto t0 = std::chrono::steady_clock::now();
  std::vector<uint64_t> counts;
  for (unsigned m = 1; m <= (unsigned)D; ++m)
    counts.push_back(count_projective(spec, m, budget, workers));
  PPoly P = extract_P(spec, counts, hd.h);
  rep.set_time("count", secs_since(t0));

  std::optional<mpq_class> bov;
  if (!b_override.empty()) {
    mpq_class b(b_override);
    b.canonicalize();
    bov = b;
  }
  t0 = std::chrono::steady_clock::now();
  DworkEngine eng(spec, precision, bov);
  rep.set("dwork.b", eng.b().get_str());
  rep.set_int("dwork.precision", precision);
  rep.set_int("dwork.working_digits", eng.ring().nwork());
  auto fm = eng.frobenius_matrix();
  rep.set_time("dwork.matrix", secs_since(t0));
  rep.set_int("dwork.dimension", (long long)fm.basis_keys.size());
  rep.set_int("dwork.certified_digits", fm.certified_digits);
  {
    std::string s;
    for (size_t j = 0; j < fm.column_min_valuation.size(); ++j)
      s += (j ? " " : "") + fm.column_min_valuation[j].get_str();
    rep.set("dwork.column_min_valuation", s);
  }

  auto nb = newton_bound_check(eng, fm, hd.h);
  rep.set("dwork.newton", polygon_string(nb.newton));
  rep.set("dwork.pre_limit", verdict_name(nb.pre_limit));
  rep.set("dwork.limit", verdict_name(nb.limit));

  // Coefficientwise congruence det(I - t a) == P(p^r t) mod p^{N - slack}.
  const PadicCtx& R = eng.ring();
  uint64_t p = R.p();
  int slack = -1;
  for (int s = 0; s < precision && slack < 0; ++s) {
    mpz_class mod = 1;
    for (int i = 0; i < precision - s; ++i) mod *= (unsigned long)p;
    bool ok = true;
    for (size_t k = 0; k < nb.det_coeffs.size() && ok; ++k) {
      mpz_class want = (k < P.c.size()) ? P.c[k] : mpz_class(0);
      for (size_t i = 0; i < (size_t)spec.r * k; ++i) want *= (unsigned long)p;
      mpz_class wr = want % mod;
      if (wr < 0) wr += mod;
      if (mpz_class(nb.det_coeffs[k][0]) % mod != wr) ok = false;
      for (unsigned i = 1; i < R.dim() && ok; ++i)
        if (mpz_class(nb.det_coeffs[k][i]) % mod != 0) ok = false;
    }
    if (ok) slack = s;
  }
  rep.set_int("dwork.slack", slack);
  rep.set("verdict",
          (slack >= 0 && nb.pre_limit != PolygonVerdict::Violation &&
           nb.limit != PolygonVerdict::Violation)
              ? "holds"
              : "violation");
  return (slack >= 0 && nb.pre_limit != PolygonVerdict::Violation &&
          nb.limit != PolygonVerdict::Violation)
             ? kOk
             : kViolation;
}

// Deterministic random smooth-candidate generator for the corpus sweep:
// p in {2,3,5,7}, n <= 4, r <= 2, degrees <= 3, with one pure power of each
// variable seeded into every equation to bias toward smooth intersections.
VarietySpec random_corpus_spec(std::mt19937_64& rng) {
  static const uint64_t primes[] = {2, 3, 5, 7};
  for (;;) {
    uint64_t p = primes[rng() % 4];
    unsigned n = 1 + rng() % 4;
    unsigned r = 1 + rng() % std::min(2u, n);
    VarietySpec spec{FieldCtx(p, 1), n, r, {}, {}, "corpus"};
    bool ok = true;
    for (unsigned j = 0; j < r && ok; ++j) {
      unsigned d = 1 + rng() % 3;
      spec.degrees.push_back(d);
      XPoly f;
      for (unsigned i = 0; i <= n; ++i) {
        std::vector<uint16_t> e(n + 1, 0);
        e[i] = (uint16_t)d;
        FqElem c = spec.field.from_int((int64_t)(1 + rng() % (p - 1 + 1)));
        if (spec.field.is_zero(c)) c = spec.field.one();
        f.terms.emplace(std::move(e), std::move(c));
      }
      unsigned extra = rng() % (n + 2);
      for (unsigned t = 0; t < extra; ++t) {
        std::vector<uint16_t> e(n + 1, 0);
        unsigned left = d;
        for (unsigned i = 0; i <= n && left; ++i) {
          unsigned take = (i == n) ? left : rng() % (left + 1);
          e[i] = (uint16_t)take;
          left -= take;
        }
        FqElem c = spec.field.from_int((int64_t)(rng() % p));
        if (spec.field.is_zero(c)) continue;
        auto it = f.terms.find(e);
        if (it == f.terms.end())
          f.terms.emplace(std::move(e), std::move(c));
        else {
          it->second = spec.field.add(it->second, c);
          if (spec.field.is_zero(it->second)) f.terms.erase(it);
        }
      }
      if (f.terms.empty()) ok = false;
      spec.polys.push_back(std::move(f));
    }
    if (!ok) continue;
    try {
      spec.validate();
    } catch (const Error&) {
      continue;
    }
    return spec;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"zeta factors, Hodge-style bounds, and p-adic Frobenius data "
               "for smooth complete intersections over finite fields"};
  app.require_subcommand(1);

  uint64_t budget = kDefaultBudget;
  unsigned workers = 1, depth = 1, kmax = 2, mmax = 2, cases = 60;
  uint64_t seed = 1;
  int precision = 3;
  std::string input_path, b_override;

  auto add_common = [&](CLI::App* c) {
    c->add_option("--budget", budget, "enumeration budget (point evaluations)");
    c->add_option("--workers", workers, "worker threads for counting");
  };

  CLI::App* hodge = app.add_subcommand("hodge", "bigraded cohomology data");
  hodge->add_option("input", input_path, "JSON input file or -")->required();

  CLI::App* count = app.add_subcommand("count", "point counts N_m, N'_m");
  count->add_option("input", input_path)->required();
  count->add_option("--mmax", mmax, "largest extension degree");
  add_common(count);

  CLI::App* analyze = app.add_subcommand(
      "analyze", "audit, Hodge data, zeta factor, polygon comparison");
  analyze->add_option("input", input_path)->required();
  analyze->add_option("--depth", depth, "smoothness audit depth");
  add_common(analyze);

  CLI::App* dwork = app.add_subcommand(
      "dwork", "truncated Frobenius matrix and congruence checks");
  dwork->add_option("input", input_path)->required();
  dwork->add_option("--precision", precision, "certified p-adic digits N");
  dwork->add_option("--b-override", b_override,
                    "weight normalization, rational like 3/4");
  add_common(dwork);

  CLI::App* corpus = app.add_subcommand(
      "corpus", "randomized sweep; reports any polygon-bound violation");
  corpus->add_option("--seed", seed, "RNG seed");
  corpus->add_option("--cases", cases, "number of smooth cases to analyze");
  corpus->add_option("--kmax", kmax, "audit depth used to filter candidates");
  add_common(corpus);

  CLI11_PARSE(app, argc, argv);

  try {
    budget = effective_budget(budget);
    RunReport rep;

    if (hodge->parsed()) {
      VarietySpec spec = parse_variety(read_input(input_path));
      echo_input(rep, spec);
      HodgeData hd = hodge_numbers(spec);
      rep.set("hodge.h", join_longs(hd.h));
      rep.set("hodge.exceptional", hd.exceptional ? "yes" : "no");
      rep.set_int("hodge.degree_P", hd.degree_P());
      std::cout << rep.render();
      return kOk;
    }

    if (count->parsed()) {
      VarietySpec spec = parse_variety(read_input(input_path));
      echo_input(rep, spec);
      auto t0 = std::chrono::steady_clock::now();
      CountLedger led = count_up_to(spec, mmax, budget, workers);
      rep.set_time("count", secs_since(t0));
      std::string np, na;
      for (size_t i = 0; i < led.projective.size(); ++i) {
        np += (i ? " " : "") + std::to_string(led.projective[i]);
        na += (i ? " " : "") + std::to_string(led.affine[i]);
      }
      rep.set("counts.N", np);
      rep.set("counts.N_affine", na);
      std::cout << rep.render();
      return kOk;
    }

    if (analyze->parsed()) {
      VarietySpec spec = parse_variety(read_input(input_path));
      int code = analyze_into(rep, spec, depth, budget, workers);
      std::cout << rep.render();
      return code;
    }

    if (dwork->parsed()) {
      VarietySpec spec = parse_variety(read_input(input_path));
      int code = run_dwork(rep, spec, precision, b_override, budget, workers);
      std::cout << rep.render();
      return code;
    }

    if (corpus->parsed()) {
      std::mt19937_64 rng(seed);
      unsigned done = 0, skipped = 0, violations = 0, attempts = 0;
      while (done < cases && attempts < cases * 200) {
        ++attempts;
        VarietySpec spec = random_corpus_spec(rng);
        AuditVerdict audit;
        try {
          audit = smoothness_audit(spec, kmax, budget);
        } catch (const BudgetExceeded&) {
          ++skipped;
          continue;
        }
        if (!audit.smooth) {
          ++skipped;
          continue;
        }
        RunReport case_rep;
        int code;
        try {
          code = analyze_into(case_rep, spec, kmax, budget, workers);
        } catch (const BudgetExceeded&) {
          ++skipped;
          continue;
        }
        ++done;
        const std::string* v = case_rep.find("verdict");
        std::cout << "case " << done << " hash "
                  << *case_rep.find("input.hash") << " p "
                  << spec.field.p() << " n " << spec.n << " r " << spec.r
                  << " degrees " << *case_rep.find("hodge.degree_P")
                  << " verdict " << (v ? *v : "?") << "\n";
        if (code == kViolation) ++violations;
      }
      std::cout << "corpus summary: analyzed " << done << " skipped "
                << skipped << " violations " << violations << "\n";
      return violations ? kViolation : kOk;
    }
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const NotSmoothSuspected& e) {
    std::cerr << "not smooth: " << e.what() << "\n";
    return kNotSmooth;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  }
  return kInput;
}
