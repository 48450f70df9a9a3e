// pisot: batch front end for beta expansions, the beta-shift and the
// normality checks. Reports go to stdout (or --out), diagnostics to stderr.

#include "pisot/analyze.hpp"
#include "pisot/error.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using namespace pisot;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvariant = 1;
constexpr int kExitNotPisot = 2;
constexpr int kExitReducible = 3;
constexpr int kExitNonFinite = 4;
constexpr int kExitUsage = 64;
constexpr int kExitInternal = 70;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::string base;
  std::string out;
  std::string format;
  long max_bits = 4096;
  unsigned threads = 1;
};

PisotNumber load_base(const std::string& text, const Globals& g) {
  if (text.empty()) throw UsageError("--base is required");
  PrecisionPolicy policy;
  policy.max_bits = g.max_bits;
  return verify_pisot(PisotCandidate::from_polynomial(parse_polynomial(text)), Rational(1, 1000000000), policy);
}

// "a..b" or a single value.
std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& text) {
  auto to_u64 = [&](const std::string& s) -> std::uint64_t {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      throw UsageError("malformed range '" + text + "'");
    return std::stoull(s);
  };
  auto dots = text.find("..");
  if (dots == std::string::npos) {
    auto v = to_u64(text);
    return {v, v};
  }
  auto lo = to_u64(text.substr(0, dots)), hi = to_u64(text.substr(dots + 2));
  if (hi < lo) throw UsageError("empty range '" + text + "'");
  return {lo, hi};
}

// Stream files hold one character per digit: 0-9 then a-z.
char digit_char(Digit d) { return static_cast<char>(d < 10 ? '0' + d : 'a' + (d - 10)); }

Word read_stream_file(const std::string& path, int alphabet) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  Word w;
  for (char c; in.get(c);) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    int d = c >= '0' && c <= '9' ? c - '0' : c >= 'a' && c <= 'z' ? c - 'a' + 10 : -1;
    if (d < 0 || d >= alphabet)
      throw Error(ErrorKind::ParseError, std::string("digit '") + c + "' outside the alphabet in " + path);
    w.push_back(static_cast<Digit>(d));
  }
  return w;
}

class Output {
public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw UsageError("cannot write '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
  std::ofstream file_;
};

void emit(const Globals& g, const std::string& text) {
  Output out(g.out);
  out.stream() << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string format_or(const Globals& g, const char* fallback) { return g.format.empty() ? fallback : g.format; }

// ---------------------------------------------------------------------------

int cmd_verify(const Globals& g, const std::string& poly_arg) {
  const std::string text = poly_arg.empty() ? g.base : poly_arg;
  if (text.empty()) throw UsageError("verify-pisot needs a polynomial");
  auto base = load_base(text, g);
  auto beta = base.beta_at(128);
  json j;
  j["polynomial"] = to_string(base.candidate().polynomial());
  j["pisot"] = true;
  j["degree"] = base.degree();
  j["beta"] = {{"lo", to_decimal(beta.lo, 30)}, {"hi", to_decimal(beta.hi, 30)}};
  auto moduli = base.conjugate_moduli();
  auto& conj = j["conjugates"] = json::array();
  for (std::size_t i = 0; i < base.conjugate_enclosures().size(); ++i) {
    const auto& c = base.conjugate_enclosures()[i];
    conj.push_back({{"re", to_decimal(c.center_re, 15)},
                    {"im", to_decimal(c.center_im, 15)},
                    {"radius", to_decimal(c.radius, 20)},
                    {"modulus", fixed(moduli[i], 15)}});
  }
  j["alphabet_size"] = base.alphabet_size();
  j["delta"] = fixed(base.delta(), 12);
  if (format_or(g, "json") == "text")
    emit(g, j["polynomial"].get<std::string>() + " is Pisot, beta in [" + j["beta"]["lo"].get<std::string>() + ", " +
                j["beta"]["hi"].get<std::string>() + "]\n");
  else
    emit(g, dump(j));
  return kExitOk;
}

int cmd_expand(const Globals& g, const std::string& range_text) {
  auto base = load_base(g.base, g);
  auto [lo, hi] = parse_range(range_text);
  Expander ex(base);
  const std::string fmt = format_or(g, "text");
  const int a = base.alphabet_size();
  std::string text;
  json rows = json::array();
  if (fmt == "csv") text = "n,L,R,digits\n";
  for (std::uint64_t n = lo; n <= hi; ++n) {
    BigInt v(std::to_string(n));
    BetaExpansion e;
    try {
      e = ex.expand(v);
    } catch (const Error& err) {
      if (err.kind() == ErrorKind::NonFiniteExpansion)
        throw Error(ErrorKind::NonFiniteExpansion, "expansion of n = " + std::to_string(n) + " is not finite");
      throw;
    }
    const int L = static_cast<int>(e.digits_int.size()) - 1, R = static_cast<int>(e.digits_frac.size());
    const std::string digits = expansion_text(e, a);
    if (fmt == "json")
      rows.push_back({{"n", n}, {"L", L}, {"R", R}, {"digits", digits}});
    else if (fmt == "csv")
      text += std::to_string(n) + "," + std::to_string(L) + "," + std::to_string(R) + "," + digits + "\n";
    else
      text += std::to_string(n) + " " + std::to_string(L) + " " + std::to_string(R) + " " + digits + "\n";
  }
  emit(g, fmt == "json" ? dump(rows) : text);
  return kExitOk;
}

int cmd_d_of_one(const Globals& g) {
  auto base = load_base(g.base, g);
  auto one = expansion_of_one(base);
  const int a = base.alphabet_size();
  json j;
  j["base"] = to_string(base.candidate().polynomial());
  j["greedy_prefix"] = word_to_text(one.greedy_prefix, a);
  j["greedy_period"] = word_to_text(one.greedy_period, a);
  j["quasi_preperiod"] = word_to_text(one.quasi_preperiod, a);
  j["quasi_period"] = word_to_text(one.quasi_period, a);
  j["simple"] = one.is_simple;
  j["connecting_order"] = connecting_order(build_automaton(one));
  if (format_or(g, "json") == "text") {
    std::string d = word_to_text(one.greedy_prefix, a);
    if (!one.greedy_period.empty()) d += "(" + word_to_text(one.greedy_period, a) + ")^w";
    emit(g, "d(1) = " + d + "\nd*(1) = " + word_to_text(one.quasi_preperiod, a) + "(" +
                word_to_text(one.quasi_period, a) + ")^w\n");
  } else {
    emit(g, dump(j));
  }
  return kExitOk;
}

int cmd_automaton(const Globals& g) {
  auto base = load_base(g.base, g);
  auto a = build_automaton(expansion_of_one(base));
  const std::string fmt = format_or(g, "json");
  if (fmt == "json") {
    emit(g, json::parse(automaton_json(a)).dump(2) + "\n");
    return kExitOk;
  }
  std::string text = fmt == "csv" ? "state,digit,next\n" : "";
  for (int q = 0; q < a.num_states(); ++q)
    for (int d = 0; d < a.alphabet_size; ++d) {
      int next = a.transitions[static_cast<std::size_t>(q)][static_cast<std::size_t>(d)];
      text += fmt == "csv" ? std::to_string(q) + "," + std::to_string(d) + "," + std::to_string(next) + "\n"
                           : std::to_string(q) + " --" + std::to_string(d) + "--> " +
                                 (next == ShiftAutomaton::kReject ? std::string("reject") : std::to_string(next)) +
                                 "\n";
    }
  emit(g, text);
  return kExitOk;
}

int cmd_measure(const Globals& g, int k_max) {
  auto base = load_base(g.base, g);
  auto a = build_automaton(expansion_of_one(base));
  ParryChain chain(a, base);
  auto table = parry_measure(chain, admissible_words_upto(a, k_max));
  const std::string fmt = format_or(g, "json");
  if (fmt == "csv") {
    emit(g, measure_csv(table, a.alphabet_size));
    return kExitOk;
  }
  if (fmt == "text") {
    std::string text;
    for (const auto& [w, m] : table.values) text += word_to_text(w, a.alphabet_size) + " " + fixed(m, 15) + "\n";
    emit(g, text);
    return kExitOk;
  }
  json j;
  j["base"] = to_string(base.candidate().polynomial());
  j["k_max"] = k_max;
  j["method"] = table.method;
  j["eigenvalue"] = fixed(table.eigenvalue, 15);
  j["entropy"] = fixed(entropy(a, base), 15);
  j["normalization_error"] = fixed(table.normalization_error, 15);
  auto& mu = j["mu"] = json::object();
  // by length then lexicographic, matching the CSV
  for (const auto& w : admissible_words_upto(a, k_max))
    mu[word_to_text(w, a.alphabet_size)] = fixed(table.values.at(w), 15);
  emit(g, dump(j));
  return kExitOk;
}

struct GenerateArgs {
  std::string f = "x";
  std::string source = "primes";
  std::uint64_t digits = 0;
  int m = 0;
};

int cmd_generate(const Globals& g, const GenerateArgs& args) {
  auto base = load_base(g.base, g);
  if (base.alphabet_size() > 36) throw UsageError("stream files support alphabets up to 36 digits");
  auto f = PolynomialSpec::parse(args.f);
  f.validate();
  const Source source = source_from_string(args.source);
  auto ex = std::make_shared<const Expander>(base);
  auto stream = ce_stream(ex, {f, source, 0, args.m});
  Word w;
  w.reserve(args.digits);
  if (stream.read(args.digits, w) < args.digits) throw Error(ErrorKind::StreamShort, "stream ended early");
  std::string text(w.size(), '0');
  for (std::size_t i = 0; i < w.size(); ++i) text[i] = digit_char(w[i]);
  emit(g, text);
  if (!g.out.empty()) {
    json meta;
    meta["base"] = to_string(base.candidate().polynomial());
    meta["f"] = f.text();
    meta["source"] = to_string(source);
    meta["m"] = args.m;
    meta["j"] = stream.connector();
    meta["count"] = args.digits;
    meta["words"] = stream.words_consumed();
    std::ofstream side(g.out + ".meta.json", std::ios::binary);
    if (!side) throw UsageError("cannot write sidecar for '" + g.out + "'");
    side << dump(meta);
  }
  return kExitOk;
}

int cmd_analyze(const Globals& g, const std::string& in, int k_max) {
  std::string base_text = g.base;
  if (base_text.empty()) {
    std::ifstream side(in + ".meta.json");
    if (side) base_text = json::parse(side).value("base", "");
  }
  auto base = load_base(base_text, g);
  auto a = build_automaton(expansion_of_one(base));
  ParryChain chain(a, base);
  Word w = read_stream_file(in, a.alphabet_size);
  if (k_max < 1 || w.size() < static_cast<std::size_t>(k_max))
    throw UsageError("analyze needs k_max >= 1 and at least k_max digits");
  auto r = count_blocks(w, k_max, chain, g.threads);
  const std::string fmt = format_or(g, "json");
  if (fmt == "csv") {
    emit(g, to_csv(r));
  } else {
    json j;
    j["base"] = to_string(base.candidate().polynomial());
    json report = to_json(r);
    for (auto& [k, v] : report.items()) j[k] = v;
    emit(g, dump(j));
  }
  return r.identities_hold ? kExitOk : kExitInvariant;
}

struct LengthArgs {
  std::string f = "x";
  std::string range = "1..1000";
  bool golden_parity = false;
  double delta_prime_offset = 0.2;
  std::optional<double> slack;
};

int cmd_lengths(const Globals& g, const LengthArgs& args) {
  auto base = load_base(g.base, g);
  auto [lo, hi] = parse_range(args.range);
  if (lo < 1) throw UsageError("range must start at 1 or later");
  auto f = PolynomialSpec::parse(args.f);
  f.validate();
  Expander ex(base);
  LengthOptions opts;
  opts.delta_prime_offset = args.delta_prime_offset;
  opts.slack = args.slack;
  opts.threads = g.threads;
  const std::string fmt = format_or(g, "json");
  opts.keep_samples = fmt == "csv";
  auto r = length_stats(ex, f, lo, hi, opts);
  std::vector<ParityViolation> parity;
  if (args.golden_parity) {
    if (to_string(base.candidate().polynomial()) != "x^2-x-1")
      throw UsageError("--golden-parity applies to the base x^2-x-1 only");
    if (f.text() != "x") throw UsageError("--golden-parity applies to f = x only");
    parity = golden_parity_check(lo, hi, g.threads);
  }
  if (fmt == "csv") {
    emit(g, to_csv(r));
  } else {
    json j = to_json(r);
    if (args.golden_parity) {
      auto& pv = j["golden_parity_violations"] = json::array();
      for (const auto& v : parity) pv.push_back({{"n", v.n}, {"L", v.L}, {"R", v.R}});
    }
    emit(g, dump(j));
  }
  return parity.empty() ? kExitOk : kExitInvariant;
}

struct CEArgs {
  std::string f = "x";
  std::string source = "primes";
  std::string range = "1..20";
  double epsilon = 0.2;
  int m = 0;
  std::uint64_t source_bound = 0;
};

int cmd_ce_check(const Globals& g, const CEArgs& args) {
  auto base = load_base(g.base, g);
  auto [lo, hi] = parse_range(args.range);
  if (lo < 1 || hi > 200) throw UsageError("n range must lie in 1..200");
  Expander ex(base);
  CEOptions opts;
  opts.source_bound = args.source_bound;
  opts.threads = g.threads;
  auto r = ce_condition_check(ex, PolynomialSpec::parse(args.f), source_from_string(args.source), static_cast<int>(lo),
                              static_cast<int>(hi), args.epsilon, args.m, opts);
  emit(g, format_or(g, "json") == "csv" ? to_csv(r) : dump(to_json(r)));
  return kExitOk;
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotPisot: return kExitNotPisot;
    case ErrorKind::Reducible: return kExitReducible;
    case ErrorKind::NonFiniteExpansion: return kExitNonFinite;
    case ErrorKind::ParseError:
    case ErrorKind::InvalidArgument:
    case ErrorKind::DegreeOne: return kExitUsage;
    default: return kExitInternal;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Beta expansions in Pisot bases and normal sequences built from them"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--base", g.base, "Minimal polynomial of the base, e.g. \"x^2-x-1\"");
  app.add_option("--out", g.out, "Output file (default stdout)");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--max-precision-bits", g.max_bits, "Precision cap for certified arithmetic")
      ->check(CLI::Range(64L, 1L << 20));
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::Range(1u, 256u));
  app.fallthrough();

  std::string poly;
  auto* verify = app.add_subcommand("verify-pisot", "Certify that a polynomial defines a Pisot number");
  verify->add_option("polynomial", poly, "Polynomial text (defaults to --base)");

  std::string range_text;
  auto* expand = app.add_subcommand("expand", "Beta expansions of integers n or a..b");
  expand->add_option("n", range_text, "n or a..b")->required();

  auto* d1 = app.add_subcommand("d-of-one", "Expansion d_beta(1) and its quasi-greedy form");
  auto* automaton = app.add_subcommand("automaton", "Automaton of the beta-shift");

  int k_max = 3;
  auto* measure = app.add_subcommand("measure", "Parry measure of admissible words");
  measure->add_option("--kmax", k_max, "Longest word length")->check(CLI::Range(1, 24));

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Concatenation stream of expansions");
  generate->add_option("--f", gen.f, "Polynomial f applied to the source");
  generate->add_option("--source", gen.source, "primes or integers");
  generate->add_option("--digits", gen.digits, "Number of digits")->required();
  generate->add_option("--m", gen.m, "Split exponent (2^m pieces per word)")->check(CLI::Range(0, 16));

  std::string in;
  int analyze_kmax = 3;
  auto* analyze = app.add_subcommand("analyze", "Block frequencies of a stream file against the Parry measure");
  analyze->add_option("--in", in, "Stream file")->required();
  analyze->add_option("--kmax", analyze_kmax, "Longest block length")->check(CLI::Range(1, 24));

  LengthArgs len;
  auto* lengths = app.add_subcommand("lengths", "Length laws for the expansions of f(n)");
  lengths->add_option("--f", len.f, "Polynomial f");
  lengths->add_option("--range", len.range, "a..b");
  lengths->add_flag("--golden-parity", len.golden_parity, "Also check the parity law of the golden ratio");
  lengths->add_option("--delta-prime-offset", len.delta_prime_offset, "delta' - delta");
  lengths->add_option("--slack", len.slack, "Additive slack of the lower bound");

  CEArgs ce;
  auto* ce_check = app.add_subcommand("ce-check", "Generalized Copeland-Erdos counting condition");
  ce_check->add_option("--f", ce.f, "Polynomial f");
  ce_check->add_option("--source", ce.source, "primes or integers");
  ce_check->add_option("--range", ce.range, "n range a..b");
  ce_check->add_option("--epsilon", ce.epsilon, "epsilon in (0,1)");
  ce_check->add_option("--m", ce.m, "Split exponent")->check(CLI::Range(0, 16));
  ce_check->add_option("--source-bound", ce.source_bound, "Scan sources below this bound (0: derived)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*verify) return cmd_verify(g, poly);
    if (*expand) return cmd_expand(g, range_text);
    if (*d1) return cmd_d_of_one(g);
    if (*automaton) return cmd_automaton(g);
    if (*measure) return cmd_measure(g, k_max);
    if (*generate) return cmd_generate(g, gen);
    if (*analyze) return cmd_analyze(g, in, analyze_kmax);
    if (*lengths) return cmd_lengths(g, len);
    if (*ce_check) return cmd_ce_check(g, ce);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}
