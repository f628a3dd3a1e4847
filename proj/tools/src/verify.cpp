#include <campana/verify.hpp>

#include <campana/emit.hpp>
#include <campana/parametrize.hpp>
#include <campana/semantics.hpp>
#include <campana/tower.hpp>

#include <algorithm>
#include <functional>
#include <iomanip>
#include <ostream>
#include <random>

namespace campana::cli {

namespace {

const std::vector<long> kSmallPrimes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};
const std::vector<long> kPrimesBelow100 = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                                           43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};

std::uint64_t suite_seed(std::uint64_t seed, std::string_view property) {
  std::uint64_t h = seed ^ 0x9e3779b97f4a7c15ULL;
  for (char c : property) h = (h ^ static_cast<unsigned char>(c)) * 0x100000001b3ULL;
  return h;
}

long uniform(std::mt19937_64& rng, long lo, long hi) {
  return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

Rational random_rational(std::mt19937_64& rng, long bound, long den_bound) {
  long num = 0;
  while (num == 0) num = uniform(rng, -bound, bound);
  long den = rng() % 2 ? 1 : uniform(rng, 1, den_bound);
  return Rational(BigInt(num), BigInt(den));
}

Place random_place(std::mt19937_64& rng) {
  std::size_t i = rng() % (kSmallPrimes.size() + 1);
  return i == kSmallPrimes.size() ? Place::infinity() : Place::prime(kSmallPrimes[i]);
}

PlaceSet random_prime_set(std::mt19937_64& rng, const std::vector<long>& pool, std::size_t max_size) {
  PlaceSet s;
  std::size_t k = rng() % (max_size + 1);
  while (s.size() < k) s.insert(Place::prime(pool[rng() % pool.size()]));
  return s;
}

// Rational supported on small primes with exponents in [-e, e].
Rational random_smooth(std::mt19937_64& rng, long e) {
  Rational r(rng() % 2 ? 1 : -1);
  for (long p : {2, 3, 5, 7, 11, 13}) {
    if (rng() % 2) continue;
    r *= Rational(p).pow(uniform(rng, -e, e));
  }
  return r;
}

std::string prime_args(const PlaceSet& s) {
  std::string out;
  for (const auto& p : s.primes()) out += (out.empty() ? "" : ",") + p.get_str();
  return out;
}

class Runner {
 public:
  Runner(std::string suite, const Config& cfg) : suite_(std::move(suite)), cfg_(cfg) {}

  // Runs `trials` trials of `check`, which returns a counterexample string
  // on failure.
  void property(const std::string& name, std::size_t trials,
                const std::function<std::optional<std::string>(std::mt19937_64&, std::size_t)>& check) {
    PropertyResult r{suite_, name, trials, 0, std::nullopt};
    std::mt19937_64 rng(suite_seed(cfg_.seed, suite_ + "/" + name));
    for (std::size_t i = 0; i < trials; ++i) {
      std::optional<std::string> bad;
      try {
        bad = check(rng, i);
      } catch (const std::exception& e) {
        bad = std::string("trial ") + std::to_string(i) + " threw: " + e.what();
      }
      if (bad) {
        if (!r.counterexample) r.counterexample = *bad;
        ++r.failures;
      }
    }
    results_.push_back(std::move(r));
  }

  std::vector<PropertyResult> take() { return std::move(results_); }
  const Config& config() const { return cfg_; }

 private:
  std::string suite_;
  Config cfg_;
  std::vector<PropertyResult> results_;
};

std::vector<PropertyResult> hilbert_suite(const Config& cfg) {
  Runner run("hilbert", cfg);
  std::size_t n = cfg.samples;
  run.property("closed form = oracle", n, [](std::mt19937_64& rng, std::size_t) -> std::optional<std::string> {
    Rational a = random_rational(rng, 200, 12), b = random_rational(rng, 200, 12);
    Place v = random_place(rng);
    int fast = hilbert(a, b, v);
    int slow = v.is_infinite() ? hilbert_oracle_real(a, b) : hilbert_oracle(a, b, v.p());
    if (fast == slow) return std::nullopt;
    return "campana hilbert " + a.to_string() + " " + b.to_string() + " " + v.to_string() + "   # closed form " +
           std::to_string(fast) + ", oracle " + std::to_string(slow);
  });
  run.property("reciprocity", n, [](std::mt19937_64& rng, std::size_t) -> std::optional<std::string> {
    Rational a = random_rational(rng, 5000, 50), b = random_rational(rng, 5000, 50);
    if (reciprocity_check(a, b)) return std::nullopt;
    return "campana hilbert " + a.to_string() + " " + b.to_string() + " v   for v in " +
           scan_places(a, b).to_string();
  });
  run.property("bimultiplicative", n, [](std::mt19937_64& rng, std::size_t) -> std::optional<std::string> {
    Rational a = random_rational(rng, 300, 10), b = random_rational(rng, 300, 10), c = random_rational(rng, 300, 10);
    Place v = random_place(rng);
    if (hilbert(a, b * c, v) == hilbert(a, b, v) * hilbert(a, c, v)) return std::nullopt;
    return "campana hilbert " + a.to_string() + " " + (b * c).to_string() + " " + v.to_string() +
           "   # versus the product over b=" + b.to_string() + ", c=" + c.to_string();
  });
  run.property("symmetric", n, [](std::mt19937_64& rng, std::size_t) -> std::optional<std::string> {
    Rational a = random_rational(rng, 1000, 20), b = random_rational(rng, 1000, 20);
    Place v = random_place(rng);
    if (hilbert(a, b, v) == hilbert(b, a, v)) return std::nullopt;
    return "campana hilbert " + a.to_string() + " " + b.to_string() + " " + v.to_string();
  });
  return run.take();
}

std::vector<PropertyResult> construct_suite(const Config& cfg) {
  Runner run("construct", cfg);
  auto check = [&cfg](const PlaceSet& S) -> std::optional<std::string> {
    SearchOptions opts;
    opts.max_steps = cfg.max_steps;
    opts.aux_prime_bound = cfg.aux_prime_bound;
    if (cfg.timeout_seconds > 0) {
      opts.deadline = std::chrono::steady_clock::now() +
                      std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                          std::chrono::duration<double>(cfg.timeout_seconds));
    }
    std::string replay = "campana construct";
    for (const auto& p : S.primes()) replay += " " + p.get_str();
    try {
      ConstructionReport r = construct_omega(S, opts);
      if (r.achieved == S && omega(r.a, r.b, r.c, r.d) == S) return std::nullopt;
      return replay + "   # achieved " + r.achieved.to_string();
    } catch (const std::exception& e) {
      return replay + "   # " + e.what();
    }
  };

  std::vector<PlaceSet> subsets;
  const std::vector<long> base = {2, 3, 5, 7};
  for (unsigned mask = 0; mask < 16; ++mask) {
    PlaceSet s;
    for (unsigned i = 0; i < 4; ++i) {
      if (mask >> i & 1) s.insert(Place::prime(base[i]));
    }
    subsets.push_back(s);
  }
  run.property("subsets of {2,3,5,7}", subsets.size(),
               [&](std::mt19937_64&, std::size_t i) { return check(subsets[i]); });
  run.property("random S, |S| <= 4", std::max<std::size_t>(1, cfg.samples / 20),
               [&](std::mt19937_64& rng, std::size_t) { return check(random_prime_set(rng, kPrimesBelow100, 4)); });
  return run.take();
}

std::vector<PropertyResult> semantics_suite(const Config& cfg) {
  Runner run("semantics", cfg);
  std::size_t n = cfg.samples;
  auto member_replay = [](const PlaceSet& S, long level, const Rational& r) {
    return "campana member campana --n " + std::to_string(level) + " --s \"" + prime_args(S) + "\" " + r.to_string();
  };
  run.property("coordinates = quotient", n, [&](std::mt19937_64& rng, std::size_t) -> std::optional<std::string> {
    long x0 = uniform(rng, -1000000, 1000000);
    // Half the denominators carry a prime power, so deep levels get exercised.
    long power = 1;
    if (rng() % 2) {
      long p = kSmallPrimes[rng() % 4];
      for (long k = uniform(rng, 1, 12); k > 0 && power * p <= 1000000; --k) power *= p;
    }
    long x1 = 0;
    while (x1 == 0) x1 = power * uniform(rng, -1000000 / power, 1000000 / power);
    PlaceSet S = random_prime_set(rng, kSmallPrimes, 3);
    long level = uniform(rng, 1, 6);
    Rational r0(x0), r1(x1);
    bool lhs = campana_via_coordinates(r0, r1, S, level);
    bool rhs = campana_member(S, level, r0 / r1);
    if (lhs == rhs) return std::nullopt;
    return member_replay(S, level, r0 / r1) + "   # coordinates (" + std::to_string(x0) + ":" + std::to_string(x1) +
           ") give " + (lhs ? "true" : "false");
  });
  run.property("monotone in n", n, [&](std::mt19937_64& rng, std::size_t) -> std::optional<std::string> {
    Rational r = random_smooth(rng, 10);
    PlaceSet S = random_prime_set(rng, {2, 3, 5, 7, 11, 13}, 3);
    long level = uniform(rng, 1, 11);
    if (!campana_member(S, level + 1, r) || campana_member(S, level, r)) return std::nullopt;
    return member_replay(S, level, r) + "   # false, but true at n+1";
  });
  run.property("S-integer limit", n, [&](std::mt19937_64& rng, std::size_t) -> std::optional<std::string> {
    Rational r = random_smooth(rng, 10);
    PlaceSet S = random_prime_set(rng, {2, 3, 5, 7, 11, 13}, 3);
    bool integral = s_integer_member(S, r);
    if (campana_member(S, 11, r) != integral) return member_replay(S, 11, r) + "   # differs from S-integrality";
    for (long level = 1; level <= 11; ++level) {
      if (integral && !campana_member(S, level, r)) return member_replay(S, level, r) + "   # S-integer rejected";
    }
    return std::nullopt;
  });
  run.property("J_1 = J", n, [&](std::mt19937_64& rng, std::size_t) -> std::optional<std::string> {
    Rational r = random_smooth(rng, 3);
    PlaceSet w = random_prime_set(rng, {2, 3, 5, 7, 11, 13}, 3);
    if (in_Jn(w, 1, r) == in_J(w, r)) return std::nullopt;
    return "campana member Jn --n 1 --omega \"" + prime_args(w) + "\" " + r.to_string();
  });
  run.property("trace witness has norm 1", n, [&](std::mt19937_64& rng, std::size_t) -> std::optional<std::string> {
    Rational a = random_rational(rng, 50, 7), b = random_rational(rng, 50, 7);
    std::uint64_t seed = rng();
    TraceSample t = generate_trace_element(a, b, seed);
    if (reduced_norm(a, b, t.witness) == Rational(1) && t.t == Rational(2) * t.witness[0]) return std::nullopt;
    return "generate_trace_element(" + a.to_string() + ", " + b.to_string() + ", " + std::to_string(seed) + ")";
  });
  return run.take();
}

struct StatsRow {
  std::string target;
  long n;
  bool real;
  FormulaStats expected;
};

std::vector<StatsRow> expected_stats() {
  auto tower = [](const std::string& t, long n, std::size_t e, std::size_t atoms, std::uint64_t deg) {
    return StatsRow{t, n, false, {0, e, atoms, deg, false}};
  };
  std::vector<StatsRow> rows = {
      tower("S", 2, 3, 1, 4),           tower("T", 2, 7, 2, 4),           tower("Tunit", 2, 15, 5, 4),
      tower("I", 2, 34, 12, 4),         tower("J", 2, 138, 48, 4),        tower("Jabcd", 2, 277, 96, 4),
      tower("invJ", 2, 278, 97, 4),     tower("disjoint", 2, 556, 193, 9),
  };
  for (long n : {2L, 3L, 10L, 100L}) {
    std::uint64_t d = static_cast<std::uint64_t>(std::max(n, 4L));
    rows.push_back(tower("Jn", n, 556, 193, d));
    rows.push_back(tower("invJn", n, 557, 194, d));
    std::uint64_t deg = static_cast<std::uint64_t>(std::max(194 * n + 2611, 3387L));
    std::uint64_t real = static_cast<std::uint64_t>(std::max(2 * n + 19, 27L));
    rows.push_back({"campana", n, false, {838, 558, 1, deg, false}});
    rows.push_back({"campana", n, true, {838, 558, 1, real, true}});
  }
  return rows;
}

std::vector<PropertyResult> formulas_suite(const Config& cfg) {
  Runner run("formulas", cfg);
  std::vector<StatsRow> rows = expected_stats();
  run.property("block and formula stats", rows.size(), [&](std::mt19937_64&, std::size_t i) -> std::optional<std::string> {
    const StatsRow& row = rows[i];
    FormulaStats got = stats(build_target(row.target, row.n, row.real));
    if (got == row.expected) return std::nullopt;
    FormulaStats e = row.expected;
    return "campana emit " + row.target + " --n " + std::to_string(row.n) + (row.real ? " --real" : "") +
           "   # expected " + stats_line(e) + " atoms=" + std::to_string(e.atoms) + ", got " + stats_line(got) +
           " atoms=" + std::to_string(got.atoms);
  });

  Formula S = build_S();
  run.property("S matrix at trace witnesses", cfg.samples,
               [&](std::mt19937_64& rng, std::size_t) -> std::optional<std::string> {
                 Rational a = random_rational(rng, 50, 7), b = random_rational(rng, 50, 7);
                 std::uint64_t seed = rng();
                 TraceSample t = generate_trace_element(a, b, seed);
                 Assignment v{{"a", a}, {"b", b}, {"r", t.t}, {"x2", t.witness[1]}, {"x3", t.witness[2]},
                              {"x4", t.witness[3]}};
                 if (evaluate_matrix(S, v)) return std::nullopt;
                 return "build_S at generate_trace_element(" + a.to_string() + ", " + b.to_string() + ", " +
                        std::to_string(seed) + ")";
               });

  const std::vector<std::string> targets = {"S",        "T",  "Tunit", "I",       "J",          "Jabcd",
                                            "invJ",     "disjoint", "Jn", "invJn", "campana", "integrality"};
  run.property("emit round trip", targets.size(), [&](std::mt19937_64&, std::size_t i) -> std::optional<std::string> {
    Formula f = build_target(targets[i], 3, false);
    for (Format fmt : {Format::Json, Format::Sexpr}) {
      std::string text = emit(f, fmt);
      if (emit(parse(text, fmt), fmt) != text) {
        return "campana emit " + targets[i] + " --n 3 --format " + (fmt == Format::Json ? "json" : "sexpr");
      }
    }
    return std::nullopt;
  });
  return run.take();
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"hilbert", "construct", "semantics", "formulas"};
  return names;
}

std::vector<PropertyResult> run_suite(const std::string& name, const Config& config) {
  if (name == "hilbert") return hilbert_suite(config);
  if (name == "construct") return construct_suite(config);
  if (name == "semantics") return semantics_suite(config);
  if (name == "formulas") return formulas_suite(config);
  if (name == "all") {
    std::vector<PropertyResult> all;
    for (const auto& s : suite_names()) {
      auto part = run_suite(s, config);
      all.insert(all.end(), part.begin(), part.end());
    }
    return all;
  }
  throw UsageError("unknown suite '" + name + "'");
}

void print_table(std::ostream& os, const std::vector<PropertyResult>& results) {
  os << std::left << std::setw(11) << "suite" << std::setw(32) << "property" << std::right << std::setw(8)
     << "trials" << std::setw(10) << "failures" << "  status\n";
  for (const auto& r : results) {
    os << std::left << std::setw(11) << r.suite << std::setw(32) << r.property << std::right << std::setw(8)
       << r.trials << std::setw(10) << r.failures << "  " << (r.passed() ? "ok" : "FAIL") << "\n";
  }
}

}  // namespace campana::cli
