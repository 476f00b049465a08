// Acceptance run: one PASS/FAIL line per criterion, all comparisons exact.
// Usage: acceptance [seed]   (default 20240611, or TCLAB_SEED)

#include "tclab/report.hpp"

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace tclab;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (failures.size() < 5) failures.push_back(what);
    }
  }
};

int g_failed = 0;

void criterion(int id, const std::string& title, double budget_s, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto start = Clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.expect(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  if (budget_s > 0 && secs > budget_s) o.expect(false, "took " + std::to_string(secs) + " s, budget " + std::to_string(budget_s) + " s");
  if (!o.pass) ++g_failed;
  std::ostringstream t;
  t.precision(2);
  t << std::fixed << secs;
  std::cout << (o.pass ? "PASS" : "FAIL") << " [" << id << "] " << title << ": " << o.detail << " (" << t.str() << " s)\n";
  for (const auto& f : o.failures) std::cout << "       " << f << "\n";
  std::cout.flush();
}

ZPoly zp(std::initializer_list<long> c) {
  ZPoly f;
  for (long x : c) f.push_back(x);
  return f;
}

bool squarefree(long d) {
  for (long k = 2; k * k <= std::labs(d); ++k)
    if (d % (k * k) == 0) return false;
  return true;
}

long field_disc(long d) { return ((d % 4) + 4) % 4 == 1 ? d : 4 * d; }

NumberField quadratic(long d) {
  std::optional<RatMatrix> basis;
  if (((d % 4) + 4) % 4 == 1) {
    RatMatrix b(2, 2);
    b(0, 0) = 1;
    b(1, 0) = Rat(1, 2);
    b(1, 1) = Rat(1, 2);
    basis = b;
  }
  return make_field(zp({-d, 0, 1}), basis, "Q(sqrt " + std::to_string(d) + ")");
}

/// L = Q(t) with t^2 = d or t^2 = t + c; the nontrivial automorphism is -t or 1 - t.
GaloisLayer quadratic_layer(const NumberField& L) {
  const QPoly sigma = L.poly()[1] == 0 ? QPoly{Rat(0), Rat(-1)} : QPoly{Rat(1), Rat(-1)};
  return make_layer(make_field(zp({0, 1}), std::nullopt, "Q"), L, L.zero(), {L.from_power_basis(sigma)});
}

/// Squarefree d != 0, 1 with |disc Q(sqrt d)| <= 200, drawn without repetition.
std::vector<long> draw_quadratics(std::mt19937_64& rng, std::size_t n) {
  std::vector<long> all;
  for (long d = -200; d <= 200; ++d)
    if (d != 0 && d != 1 && squarefree(d) && std::labs(field_disc(d)) <= 200) all.push_back(d);
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(std::min(n, all.size()));
  return all;
}

/// Up to `max` distinct tame primes of K over rational primes below 60.
std::vector<PrimeIdeal> random_tame_set(std::mt19937_64& rng, const NumberField& K, std::uint64_t p, std::size_t max) {
  static const long qs[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59};
  std::vector<PrimeIdeal> S;
  const std::size_t n = rng() % (max + 1);
  for (int tries = 0; S.size() < n && tries < 50; ++tries) {
    long q = qs[rng() % std::size(qs)];
    if (static_cast<std::uint64_t>(q) == p) continue;
    auto above = factor_prime(K, Int(q));
    auto P = above[rng() % above.size()];
    if (std::find(S.begin(), S.end(), P) == S.end()) S.push_back(P);
  }
  return S;
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i];
  return s;
}

json pipeline(const std::string& name) {
  auto cfg = parse_run_config(builtin_config(name), "builtin:" + name);
  json r = make_report("reproduce", {name});
  run_pipeline(cfg, r);
  return r;
}

std::vector<std::string> row(const json& r, const std::string& key) { return r["results"]["rows"][key]; }

}  // namespace

int main(int argc, char** argv) {
  std::uint64_t seed = 20240611;
  if (const char* env = std::getenv("TCLAB_SEED")) seed = std::strtoull(env, nullptr, 10);
  if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);
  std::cout << "acceptance run, seed " << seed << "\n";

  json ex1, ex2;

  criterion(1, "Example 1 reproduction", 10, [&](Outcome& o) {
    ex1 = pipeline("example1");
    auto rcg = row(ex1, "rcg_L");
    o.expect(rcg == std::vector<std::string>{"0", "Z/3", "Z/27"}, "3-parts over Q(sqrt 5): " + join(rcg));
    const auto& tw = ex1["results"]["twisted_sandwiches"][1];
    o.expect(tw["certified"] == true && tw["lower"] == 1 && tw["upper"] == 1 && tw["rusb"] == 1,
             "twisted sandwich at T: " + tw.dump());
    o.detail = "RCG 3-parts (" + join(rcg) + "); twisted sandwich at T " + std::to_string(tw["lower"].get<int>()) + " = " +
               std::to_string(tw["upper"].get<int>()) + (tw["certified"] == true ? " certified" : " not certified");
  });

  criterion(2, "Example 2 reproduction", 60, [&](Outcome& o) {
    ex2 = pipeline("example2");
    const std::vector<std::pair<std::string, std::vector<std::string>>> want = {
        {"rcg_L", {"0", "0", "Z/2 x Z/2", "Z/4 x Z/4"}},
        {"rusb_L", {"3", "2", "2", "0"}},
        {"sha_L", {"0", "0", "2", "0"}},
        {"rusb_A", {"2", "2", "2", "0"}},
        {"sha_A", {"0", "0", "2", "0"}},
        {"AA_invariants", {"2"}}};
    std::vector<std::string> parts;
    for (const auto& [k, v] : want) {
      auto got = row(ex2, k);
      o.expect(got == v, k + ": got (" + join(got) + "), want (" + join(v) + ")");
      parts.push_back(k + " (" + join(got) + ")");
    }
    for (const auto& s : ex2["results"]["sandwiches"]) o.expect(s["certified"] == true, "uncertified entry " + s["set"].get<std::string>());
    for (const auto& s : ex2["results"]["twisted_sandwiches"]) o.expect(s["certified"] == true, "uncertified entry " + s["set"].get<std::string>());
    o.detail = join(parts);
  });

  std::mt19937_64 rng(seed);
  auto corpus = draw_quadratics(rng, 24);

  criterion(3, "two-route RusB equality", 300, [&](Outcome& o) {
    std::size_t rows = 0, cases = 0;
    for (const json* r : {&ex1, &ex2}) {
      if (r->is_null()) continue;
      for (const auto& c : (*r)["results"]["crosschecks"]) {
        ++rows;
        o.expect(c["selmer"]["dim"] == c["h1"]["rusb"], "example row " + c["set"].get<std::string>());
      }
    }
    o.expect(rows == 7, "expected 7 example rows, saw " + std::to_string(rows));
    std::mt19937_64 r(seed + 3);
    for (long d : corpus)
      for (std::uint64_t p : {3u, 5u}) {
        auto ctx = make_context(quadratic(d), {p});
        auto S = random_tame_set(r, ctx.K, p, 3);
        auto a = selmer_basis(ctx, S, p).dim();
        auto h = rusb_dim_via_h1(ctx, S, p);
        ++cases;
        o.expect(h.rusb >= 0 && a == static_cast<std::size_t>(h.rusb),
                 "d = " + std::to_string(d) + ", p = " + std::to_string(p) + ": selmer " + std::to_string(a) + ", H1 " +
                     std::to_string(h.rusb));
      }
    o.detail = std::to_string(rows) + " example rows, " + std::to_string(corpus.size()) + " quadratic fields x p in {3, 5} = " +
               std::to_string(cases) + " random cases";
  });

  criterion(4, "dim V_empty = r1 + r2 - 1 + delta_p + p-rank Cl", 300, [&](Outcome& o) {
    std::size_t cases = 0;
    auto check = [&](FieldContext& ctx, std::uint64_t p, const std::string& name) {
      const Int pp(static_cast<unsigned long>(p));
      const std::size_t delta = ctx.units.w % p == 0 ? 1 : 0;
      const std::size_t rhs = ctx.K.r1() + ctx.K.r2() - 1 + delta + ctx.cl.group.p_rank(pp);
      const std::size_t lhs = selmer_basis(ctx, {}, p).dim_empty();
      ++cases;
      o.expect(lhs == rhs, name + ", p = " + std::to_string(p) + ": " + std::to_string(lhs) + " vs " + std::to_string(rhs));
    };
    for (long d : corpus)
      for (std::uint64_t p : {3u, 5u}) {
        auto ctx = make_context(quadratic(d), {p});
        check(ctx, p, "Q(sqrt " + std::to_string(d) + ")");
      }
    auto c5 = make_context(make_field(zp({-1, -1, 1})), {3});
    check(c5, 3, "Q(sqrt 5)");
    auto c7 = make_context(make_field(zp({-1, -2, 1, 1})), {2});
    check(c7, 2, "Q(zeta_7 + zeta_7^-1)");
    o.detail = std::to_string(cases) + " (field, p) pairs";
  });

  criterion(5, "orbit closure preserves RusB", 300, [&](Outcome& o) {
    auto cfg = parse_run_config(builtin_config("example2"), "builtin");
    NumberField L = build_field(cfg.field);
    std::vector<NFElement> gens;
    for (const auto& a : cfg.automorphisms) gens.push_back(L.from_power_basis(a));
    auto layer = make_layer(build_field(cfg.base_field), L, L.from_power_basis(cfg.embedding), gens);
    auto ctx = make_context(layer.L, {2});
    auto Tp = resolve_primes(ctx.K, cfg.sets[2].primes);
    auto c = orbit_closure_check(layer, ctx, {}, Tp, 2);
    o.expect(c.equal && c.dim_prime == 2 && c.X_tilde.size() == 7,
             "Example 2 T'/T~: " + std::to_string(c.dim_prime) + " vs " + std::to_string(c.dim_tilde));
    std::mt19937_64 r(seed + 5);
    std::size_t draws = 0, nontrivial = 0;
    while (draws < 20) {
      long d = corpus[r() % corpus.size()];
      std::uint64_t p = r() % 2 ? 3 : 5;
      auto q = quadratic_layer(quadratic(d));
      auto cq = make_context(q.L, {p});
      auto S = q.orbit_closure(random_tame_set(r, cq.K, p, 2));
      std::vector<PrimeIdeal> X;
      for (long ell = 7; X.size() < 1 + r() % 2 && ell < 400; ell += 2) {
        if (!is_prime(Int(ell)) || static_cast<std::uint64_t>(ell) == p) continue;
        auto above = factor_prime(cq.K, Int(ell));
        if (above.size() != 2 || r() % 3 != 0) continue;
        auto P = above[r() % 2];
        if (std::find(S.begin(), S.end(), P) == S.end()) X.push_back(P);
      }
      auto res = orbit_closure_check(q, cq, S, X, p);
      ++draws;
      if (res.dim_prime > 0) ++nontrivial;
      o.expect(res.equal && res.X_tilde.size() == 2 * X.size(),
               "Q(sqrt " + std::to_string(d) + "), p = " + std::to_string(p) + ": " + std::to_string(res.dim_prime) + " vs " +
                   std::to_string(res.dim_tilde));
    }
    o.detail = "Example 2 T' and T~ both " + std::to_string(c.dim_tilde) + "; " + std::to_string(draws) +
               " seeded quadratic draws (" + std::to_string(nontrivial) + " with nonzero RusB)";
  });

  criterion(6, "descent to Q with trivial coefficients", 300, [&](Outcome& o) {
    auto layer = quadratic_layer(make_field(zp({-1, -1, 1}), std::nullopt, "Q(sqrt 5)"));
    auto ctxQ = make_context(layer.K, {3});
    auto ctxL = make_context(layer.L, {3});
    std::vector<std::vector<long>> sets = {{}, {107}, {107, 197}, {7}, {13, 31}, {19, 61}, {11}};
    std::mt19937_64 r(seed + 6);
    static const long extra[] = {2, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 61, 67, 73, 79};
    for (int i = 0; i < 3; ++i) sets.push_back({extra[r() % std::size(extra)], extra[r() % std::size(extra)]});
    std::size_t checked = 0;
    std::vector<std::string> dims;
    for (const auto& s : sets) {
      std::vector<PrimeSpec> specs{{Int(5)}};
      for (long q : s) specs.push_back({Int(q)});
      auto T = resolve_primes(ctxQ.K, specs);
      auto d = descent_check(layer, ctxQ, ctxL, T, 3);
      o.expect(!d.refused, "refused: " + d.reason);
      if (d.refused) continue;
      ++checked;
      dims.push_back(std::to_string(d.rusb_K) + "/" + std::to_string(d.rusb_L));
      o.expect(d.rusb_K == d.rusb_L_invariants, "T of size " + std::to_string(T.size()) + ": " + std::to_string(d.rusb_K) +
                                                    " vs " + std::to_string(d.rusb_L_invariants));
    }
    o.expect(checked >= 5, "fewer than 5 sets checked");
    o.detail = std::to_string(checked) + " tame sets containing 5, dim over Q = dim of invariants; dim over Q / dim over L: " + join(dims);
  });

  criterion(7, "preserving-prime scanner", 30, [&](Outcome& o) {
    auto ctx = make_context(make_field(zp({-1, -1, 1}), std::nullopt, "Q(sqrt 5)"), {3});
    auto X = find_preserving_primes(ctx, {}, 3, 3, Int(10000));
    o.expect(X.X.size() == 3 && X.shortfall == 0, "found " + std::to_string(X.X.size()) + " primes");
    auto B = selmer_basis(ctx, {}, 3);
    std::vector<std::string> names;
    for (const auto& P : X.X) {
      names.push_back(P.label());
      const auto& F = P.residue_field;
      for (const auto& g : B.generator_values) {
        auto x = ctx.K.mul_int(g, g.den * g.den * g.den);
        auto target = reduce(ctx.K, x, P);
        bool cube = false;
        for (Int n = 1; n < F.order() && !cube; ++n) {
          auto c = F.decode(n);
          cube = F.mul(F.mul(c, c), c) == target;
        }
        o.expect(cube, "generator is not a cube modulo " + P.label());
      }
    }
    std::vector<PrimeIdeal> SX = X.X;
    auto B2 = selmer_basis(ctx, SX, 3);
    o.expect(B2.dim() == B.dim(), "dim V_X = " + std::to_string(B2.dim()) + ", dim V = " + std::to_string(B.dim()));
    o.detail = "X = {" + join(names) + "}, cube table agrees, dim V_X = dim V = " + std::to_string(B.dim());
  });

  criterion(8, "exceptionality checker", 60, [&](Outcome& o) {
    auto Q = make_context(make_field(zp({0, 1}), std::nullopt, "Q"), {2});
    auto eq = is_exceptional(Q, {});
    o.expect(!eq.condition_b && !eq.exceptional, "Q: " + exceptional_json(eq).dump());
    std::size_t with_i = 0;
    for (const auto& f : {zp({1, 0, 1}), zp({1, 0, 0, 0, 1}), zp({5, 0, 1})}) {
      auto ctx = make_context(make_field(f), {2});
      auto [z, w] = torsion_units(ctx.K);
      if (w % 4 != 0) continue;
      ++with_i;
      for (long q : {5L, 13L}) {
        auto e = is_exceptional(ctx, resolve_primes(ctx.K, {{Int(q)}}));
        o.expect(!e.condition_a && !e.exceptional, poly_to_string(f) + ": " + exceptional_json(e).dump());
      }
    }
    o.expect(with_i == 2, "expected two fields containing zeta_4");
    auto L = make_context(make_field(zp({-1, -2, 1, 1})), {2});
    std::string verdicts;
    for (const auto& qs : std::vector<std::vector<long>>{{7, 181, 293}, {181, 293}, {7}}) {
      std::vector<PrimeSpec> specs;
      bool all_one = true;
      for (long q : qs) {
        specs.push_back({Int(q)});
        all_one = all_one && q % 4 == 1;
      }
      auto T = resolve_primes(L.K, specs);
      auto e = is_exceptional(L, T);
      for (std::size_t i = 0; i < T.size(); ++i) {
        const bool want = (T[i].norm - 1) % 4 == 0;
        o.expect(e.condition_c_primes.at(i).second == want, "zeta_4 in the completion at " + T[i].label());
      }
      o.expect(e.condition_c == all_one, "verdict (c) for a set of size " + std::to_string(T.size()));
      std::vector<std::string> ls;
      for (long q : qs) ls.push_back(std::to_string(q));
      verdicts += std::string(verdicts.empty() ? "" : ", ") + "(c) " + (e.condition_c ? "holds" : "fails") + " over {" + join(ls) + "}";
    }
    o.detail = "Q fails (b); Q(i), Q(zeta_8) fail (a); cubic field of Example 2: " + verdicts;
  });

  criterion(9, "property suites", 300, [&](Outcome& o) {
    std::mt19937_64 r(seed + 9);
    std::uniform_int_distribution<int> dim(1, 6), entry(-9, 9);
    for (int it = 0; it < 200; ++it) {
      std::size_t rows = dim(r), cols = dim(r);
      IntMatrix m(rows, cols);
      for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = entry(r);
      auto s = smith_form(m);
      IntMatrix d = s.U * m * s.V;
      bool ok = abs(determinant(s.U)) == 1 && abs(determinant(s.V)) == 1;
      for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) ok = ok && d(i, j) == (i == j ? s.diagonal[i] : Int(0));
      for (std::size_t i = 0; i + 1 < s.diagonal.size(); ++i)
        ok = ok && (s.diagonal[i] == 0 ? s.diagonal[i + 1] == 0 : s.diagonal[i + 1] % s.diagonal[i] == 0);
      o.expect(ok, "SNF check failed on matrix " + std::to_string(it));
    }
    std::size_t chains = 0, inert = 0;
    while (chains < 50) {
      long d = corpus[r() % corpus.size()];
      std::uint64_t p = r() % 2 ? 3 : 5;
      auto ctx = make_context(quadratic(d), {p});
      auto big = random_tame_set(r, ctx.K, p, 4);
      std::size_t prev = selmer_basis(ctx, {}, p).dim();
      std::vector<PrimeIdeal> S;
      for (const auto& P : big) {
        S.push_back(P);
        auto cur = selmer_basis(ctx, S, p).dim();
        o.expect(cur <= prev, "dim V_S grew along a chain over Q(sqrt " + std::to_string(d) + ")");
        prev = cur;
      }
      ++chains;
      if (inert < 20) {
        for (long q = 2; q < 100; ++q) {
          if (!is_prime(Int(q)) || static_cast<std::uint64_t>(q) == p) continue;
          auto P = factor_prime(ctx.K, Int(q))[0];
          if ((P.norm - 1) % p == 0 || std::find(S.begin(), S.end(), P) != S.end()) continue;
          auto with = S;
          with.push_back(P);
          ++inert;
          o.expect(selmer_basis(ctx, with, p).dim() == prev, "prime " + P.label() + " with Nq != 1 mod p changed dim V_S");
          break;
        }
      }
    }
    o.expect(inert >= 20, "only " + std::to_string(inert) + " inertness cases");
    o.detail = "200 SNF matrices, " + std::to_string(chains) + " nested chains, " + std::to_string(inert) + " inertness cases";
  });

  std::cout << (g_failed ? std::to_string(g_failed) + " criteria failed" : std::string("all 9 criteria passed")) << "\n";
  return g_failed ? 1 : 0;
}
