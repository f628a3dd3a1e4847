#include <campana/cli.hpp>
#include <campana/verify.hpp>

#include <campana/emit.hpp>
#include <campana/errors.hpp>
#include <campana/parametrize.hpp>
#include <campana/semantics.hpp>
#include <campana/tower.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cctype>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

namespace campana::cli {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  std::istringstream in(value);
  T out{};
  in >> out;
  if (in.fail() || !in.eof() || value.empty() || value[0] == '-') {
    throw UsageError("config: bad value '" + value + "' for " + key);
  }
  return out;
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    if (ch == ',' || std::isspace(static_cast<unsigned char>(ch))) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::vector<Rational> parse_rational_list(std::string_view text, std::size_t expected, const char* what) {
  std::vector<Rational> out;
  for (const auto& item : split_list(text)) out.push_back(parse_rational(item));
  if (expected && out.size() != expected) {
    throw UsageError(std::string(what) + ": expected " + std::to_string(expected) + " rationals");
  }
  return out;
}

nlohmann::ordered_json place_list_json(const PlaceSet& s) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& v : s) {
    if (v.is_infinite()) {
      arr.push_back("inf");
    } else if (mpz_fits_slong_p(v.p().get_mpz_t())) {
      arr.push_back(v.p().get_si());
    } else {
      arr.push_back(v.p().get_str());
    }
  }
  return arr;
}

std::string report_json(const ConstructionReport& r) {
  nlohmann::ordered_json j;
  j["a"] = r.a.to_fraction_string();
  j["b"] = r.b.to_fraction_string();
  j["c"] = r.c.to_fraction_string();
  j["d"] = r.d.to_fraction_string();
  j["target"] = place_list_json(r.target);
  j["achieved"] = place_list_json(r.achieved);
  j["search_steps"] = r.search_steps;
  auto aux = nlohmann::ordered_json::array();
  for (const auto& q : r.auxiliary_primes) aux.push_back(q.get_str());
  j["aux"] = aux;
  return j.dump();
}

SearchOptions search_options(const Config& cfg) {
  SearchOptions opts;
  opts.max_steps = cfg.max_steps;
  opts.aux_prime_bound = cfg.aux_prime_bound;
  if (cfg.timeout_seconds > 0) {
    opts.deadline = std::chrono::steady_clock::now() +
                    std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                        std::chrono::duration<double>(cfg.timeout_seconds));
  }
  return opts;
}

// Overrides collected from flags, applied on top of the config file.
struct Overrides {
  std::string config_path;
  std::optional<std::size_t> max_steps;
  std::optional<unsigned long> aux_prime_bound;
  std::optional<double> timeout_seconds;
  std::optional<std::size_t> samples;
  std::optional<std::uint64_t> seed;

  Config resolve() const {
    Config cfg = config_path.empty() ? Config{} : load_config(config_path);
    if (max_steps) cfg.max_steps = *max_steps;
    if (aux_prime_bound) cfg.aux_prime_bound = *aux_prime_bound;
    if (timeout_seconds) cfg.timeout_seconds = *timeout_seconds;
    if (samples) cfg.samples = *samples;
    if (seed) cfg.seed = *seed;
    return cfg;
  }
};

int cmd_hilbert(const std::vector<std::string>& args, std::ostream& out) {
  Rational a = parse_rational(args.at(0));
  Rational b = parse_rational(args.at(1));
  Place v = Place::parse(args.at(2));
  if (a.is_zero() || b.is_zero()) throw UsageError("hilbert: arguments must be nonzero");
  out << (hilbert(a, b, v) == 1 ? "+1" : "-1") << "\n";
  return kSuccess;
}

int cmd_construct(const std::vector<std::string>& primes, const Config& cfg, std::ostream& out,
                  std::ostream& err) {
  std::string joined;
  for (const auto& p : primes) joined += p + " ";
  PlaceSet target = parse_prime_list(joined);
  try {
    ConstructionReport r = construct_omega(target, search_options(cfg));
    out << report_json(r) << "\n";
    return r.achieved == r.target ? kSuccess : kFailure;
  } catch (const SearchExhausted& e) {
    err << "construct: " << e.what() << "\n";
  } catch (const SearchCancelled& e) {
    err << "construct: " << e.what() << "\n";
  }
  return kFailure;
}

struct MemberArgs {
  std::string kind;
  std::string r;
  std::optional<long> n;
  std::optional<std::string> s, abcd, omega, form;
};

int cmd_member(const MemberArgs& m, std::ostream& out) {
  Rational r = parse_rational(m.r);
  auto need_n = [&]() {
    if (!m.n) throw UsageError("member " + m.kind + ": --n is required");
    if (*m.n < 1) throw UsageError("member: --n must be at least 1");
    return *m.n;
  };
  auto need_s = [&]() {
    if (!m.s) throw UsageError("member " + m.kind + ": --s is required");
    return parse_prime_list(*m.s);
  };
  // J-type sets take either the parameters or Omega itself.
  auto need_omega = [&]() {
    if (m.abcd.has_value() == m.omega.has_value()) {
      throw UsageError("member " + m.kind + ": give exactly one of --abcd and --omega");
    }
    if (m.omega) return parse_prime_list(*m.omega);
    auto p = parse_rational_list(*m.abcd, 4, "--abcd");
    for (const auto& x : p) {
      if (x.is_zero()) throw UsageError("--abcd: parameters must be nonzero");
    }
    return omega(p[0], p[1], p[2], p[3]);
  };

  bool verdict = false;
  if (m.kind == "campana") {
    long n = need_n();
    PlaceSet S = need_s();
    if (m.form) {
      std::vector<Rational> coeffs = parse_rational_list(*m.form, 0, "--form");
      if (coeffs.empty()) throw UsageError("--form: no coefficients");
      verdict = campana_member_form(S, n, BinaryForm(coeffs), r);
    } else {
      verdict = campana_member(S, n, r);
    }
  } else if (m.kind == "sintegers") {
    verdict = s_integer_member(need_s(), r);
  } else if (m.kind == "J") {
    verdict = in_J(need_omega(), r);
  } else if (m.kind == "Jn") {
    long n = need_n();
    verdict = in_Jn(need_omega(), n, r);
  } else if (m.kind == "invJn") {
    long n = need_n();
    verdict = in_inv_Jn(need_omega(), n, r);
  } else {
    throw UsageError("member: unknown set '" + m.kind + "'");
  }
  out << (verdict ? "true" : "false") << "\n";
  return kSuccess;
}

struct EmitArgs {
  std::string target;
  long n = 2;
  std::string format = "json";
  std::string output;
  bool real = false;
  std::optional<std::string> form;
};

int cmd_emit(const EmitArgs& e, std::ostream& out, std::ostream& err) {
  Format format;
  try {
    format = parse_format(e.format);
  } catch (const std::invalid_argument& ex) {
    throw UsageError(ex.what());
  }
  Formula f;
  try {
    f = build_target(e.target, e.n, e.real);
    if (e.form) {
      std::vector<Rational> coeffs = parse_rational_list(*e.form, 0, "--form");
      if (coeffs.empty()) throw UsageError("--form: no coefficients");
      f = substitute_form(std::move(f), BinaryForm(coeffs));
    }
  } catch (const UsageError&) {
    throw;
  } catch (const std::invalid_argument& ex) {
    throw UsageError(ex.what());
  }
  std::string text = emit(f, format);
  std::string line = stats_line(stats(f));
  if (e.output.empty()) {
    out << text;
    err << line << "\n";
    return kSuccess;
  }
  std::ofstream file(e.output, std::ios::binary);
  if (!file) {
    err << "emit: cannot open '" << e.output << "' for writing\n";
    return kFailure;
  }
  file << text;
  file.close();
  if (!file) {
    err << "emit: write to '" << e.output << "' failed\n";
    return kFailure;
  }
  out << line << "\n";
  return kSuccess;
}

int cmd_verify(const std::string& suite, const Config& cfg, std::ostream& out) {
  std::vector<PropertyResult> results = run_suite(suite, cfg);
  print_table(out, results);
  for (const auto& r : results) {
    if (!r.passed()) {
      out << "first counterexample (" << r.suite << "/" << r.property << "): " << r.counterexample.value_or("?")
          << "\n";
      return kFailure;
    }
  }
  return kSuccess;
}

}  // namespace

Config parse_config(std::string_view text, Config cfg) {
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto eq = t.find('=');
    if (eq == std::string::npos) throw UsageError("config line " + std::to_string(lineno) + ": expected key=value");
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (key == "max_steps") {
      cfg.max_steps = parse_number<std::size_t>(key, value);
    } else if (key == "aux_prime_bound") {
      cfg.aux_prime_bound = parse_number<unsigned long>(key, value);
    } else if (key == "timeout_seconds") {
      cfg.timeout_seconds = parse_number<double>(key, value);
    } else if (key == "samples") {
      cfg.samples = parse_number<std::size_t>(key, value);
    } else if (key == "seed") {
      cfg.seed = parse_number<std::uint64_t>(key, value);
    } else {
      throw UsageError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  return cfg;
}

Config load_config(const std::string& path, Config base) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), base);
}

Rational parse_rational(std::string_view text) {
  std::string t = trim(text);
  std::size_t start = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
  bool ok = t.size() > start;
  bool slash = false;
  for (std::size_t i = start; i < t.size() && ok; ++i) {
    if (t[i] == '/' && !slash && i > start && i + 1 < t.size()) {
      slash = true;
    } else if (!std::isdigit(static_cast<unsigned char>(t[i]))) {
      ok = false;
    }
  }
  if (!ok) throw UsageError("not a rational: '" + std::string(text) + "'");
  try {
    return Rational::parse(t);
  } catch (const std::exception& e) {
    throw UsageError("not a rational: '" + std::string(text) + "' (" + e.what() + ")");
  }
}

PlaceSet parse_prime_list(std::string_view text) {
  PlaceSet out;
  std::set<std::string> seen;
  for (const auto& item : split_list(text)) {
    if (!std::all_of(item.begin(), item.end(), [](unsigned char c) { return std::isdigit(c); })) {
      throw UsageError("not a prime: '" + item + "'");
    }
    BigInt p(item);
    if (!is_prime(p)) throw UsageError("not a prime: '" + item + "'");
    if (out.contains_prime(p)) throw UsageError("duplicate prime: '" + item + "'");
    out.insert(Place::prime(p));
  }
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hilbert symbols, quaternion parametrizations and definability formulas over Q", "campana"};
  app.require_subcommand(1);
  Overrides ov;
  app.add_option("--config", ov.config_path, "key=value file with search caps and sample counts");

  auto* hil = app.add_subcommand("hilbert", "Hilbert symbol (a,b)_v");
  std::vector<std::string> hil_args;
  hil->add_option("args", hil_args, "a b place")->expected(3)->required();

  auto* con = app.add_subcommand("construct", "a,b,c,d with Omega equal to the given primes");
  std::vector<std::string> con_primes;
  con->add_option("primes", con_primes, "target primes");
  con->add_option("--max-steps", ov.max_steps, "search step cap");
  con->add_option("--aux-bound", ov.aux_prime_bound, "largest auxiliary prime tried");
  con->add_option("--timeout", ov.timeout_seconds, "wall-clock limit in seconds (0 disables)");

  auto* mem = app.add_subcommand("member", "membership in campana, sintegers, J, Jn or invJn");
  MemberArgs margs;
  mem->add_option("kind", margs.kind, "campana|sintegers|J|Jn|invJn")->required();
  mem->add_option("r", margs.r, "rational (or lambda with --form)")->required();
  mem->add_option("--n", margs.n, "level n");
  mem->add_option("--s", margs.s, "primes of S, comma separated");
  mem->add_option("--abcd", margs.abcd, "parameters a,b,c,d");
  mem->add_option("--omega", margs.omega, "Omega given directly as primes");
  mem->add_option("--form", margs.form, "coefficients c0,c1,... of F(x,y) = sum c_i x^i y^(d-i)");

  auto* emi = app.add_subcommand("emit", "write a formula");
  EmitArgs eargs;
  emi->add_option("target", eargs.target, "campana|integrality|S|T|Tunit|I|J|Jabcd|invJ|disjoint|Jn|invJn")
      ->required();
  emi->add_option("--n", eargs.n, "level n (default 2)");
  emi->add_option("--format", eargs.format, "json|sexpr|latex");
  emi->add_option("-o,--output", eargs.output, "output path (stdout if omitted)");
  emi->add_flag("--real", eargs.real, "use the sum-of-squares combiner");
  emi->add_option("--form", eargs.form, "substitute r := F(lambda, 1), coefficients c0,c1,...");

  auto* ver = app.add_subcommand("verify", "run property suites");
  std::string suite = "all";
  ver->add_option("suite", suite, "all|hilbert|construct|semantics|formulas");
  ver->add_option("--seed", ov.seed, "RNG seed");
  ver->add_option("--samples", ov.samples, "samples per property");

  std::vector<std::string> argv_store{"campana"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  try {
    Config cfg = ov.resolve();
    if (*hil) return cmd_hilbert(hil_args, out);
    if (*con) return cmd_construct(con_primes, cfg, out, err);
    if (*mem) return cmd_member(margs, out);
    if (*emi) return cmd_emit(eargs, out, err);
    if (*ver) return cmd_verify(suite, cfg, out);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}

}  // namespace campana::cli
