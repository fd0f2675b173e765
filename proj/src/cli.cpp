#include "orbitprimes/cli.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "orbitprimes/classifier.hpp"
#include "orbitprimes/coprime.hpp"
#include "orbitprimes/divisibility.hpp"
#include "orbitprimes/errors.hpp"
#include "orbitprimes/factorint.hpp"
#include "orbitprimes/growth.hpp"
#include "orbitprimes/json_io.hpp"
#include "orbitprimes/orbit.hpp"

namespace orbitprimes::cli {

namespace {

const std::string kIntPattern = "optional sign followed by digits";

bool looks_like_int(const std::string& s) {
  std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (i >= s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

const CLI::Validator BigInt(
    [](std::string& s) {
      return looks_like_int(s) ? std::string{}
                               : "not an integer (" + kIntPattern + ")";
    },
    "BIGINT");

Int parse_int(const std::string& s) { return Int(s, 10); }

std::vector<Int> parse_int_list(const std::string& s) {
  std::vector<Int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t b = item.find_first_not_of(" \t");
    std::size_t e = item.find_last_not_of(" \t");
    if (b == std::string::npos)
      throw CLI::ValidationError("--terms", "empty entry in list");
    item = item.substr(b, e - b + 1);
    if (!looks_like_int(item))
      throw CLI::ValidationError("--terms", "'" + item + "' is not an integer");
    out.push_back(parse_int(item));
  }
  if (out.empty()) throw CLI::ValidationError("--terms", "empty list");
  return out;
}

// Fixed-notation decimal rendering of a rational, rounded toward zero,
// for the plain output mode only (JSON carries the exact value).
std::string rat_decimal(const Rat& v, std::size_t digits = 30) {
  if (v == 0) return "0";
  mpf_class f(v, 512);
  mp_exp_t exp10 = 0;
  std::string m = f.get_str(exp10, 10, digits);
  std::string sign;
  if (!m.empty() && m[0] == '-') {
    sign = "-";
    m = m.substr(1);
  }
  if (m.empty()) return "0";
  std::string out;
  if (exp10 <= 0)
    out = "0." + std::string(static_cast<std::size_t>(-exp10), '0') + m;
  else if (static_cast<std::size_t>(exp10) >= m.size())
    out = m + std::string(static_cast<std::size_t>(exp10) - m.size(), '0');
  else
    out = m.substr(0, static_cast<std::size_t>(exp10)) + "." +
          m.substr(static_cast<std::size_t>(exp10));
  return sign + out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    quoted += c;
    if (c == '"') quoted += '"';
  }
  return quoted + "\"";
}

struct Emitter {
  std::ostream& out;
  std::string format;  // json | csv | plain

  void json_doc(const json& j) const { out << j.dump(2) << "\n"; }
  void csv_row(const std::vector<std::string>& fields) const {
    for (std::size_t i = 0; i < fields.size(); ++i)
      out << (i ? "," : "") << csv_field(fields[i]);
    out << "\n";
  }
  void kv(const std::string& k, const std::string& v) const {
    if (format == "csv")
      csv_row({k, v});
    else
      out << k << ": " << v << "\n";
  }
};

std::string rat_str(const Rat& v) { return v.get_str(); }

void emit_terms_table(const Emitter& e, const std::string& value_header,
                      std::size_t first_index, const std::vector<Int>& terms) {
  if (e.format == "csv") e.csv_row({"n", value_header});
  for (std::size_t i = 0; i < terms.size(); ++i) {
    std::string n = std::to_string(first_index + i);
    if (e.format == "csv")
      e.csv_row({n, terms[i].get_str()});
    else
      e.out << value_header << "_" << n << " = " << terms[i].get_str() << "\n";
  }
}

unsigned default_precision_bits() {
  if (const char* env = std::getenv("ORBITPRIMES_PRECISION_BITS")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end && *end == '\0' && v >= 16 && v <= 1u << 20)
      return static_cast<unsigned>(v);
  }
  return 128;
}

CoprimeSeq build_coprime(const IntPoly& poly, const Int& start,
                         std::size_t count, const std::string& rule) {
  if (rule == "preperiodic") return coprime_preperiodic(poly, start, count);
  if (rule == "period1") return coprime_period1(poly, start, count);
  if (rule == "period2") return coprime_period2(poly, start, count);
  ZeroOrbitClass cls = classify_zero_orbit(poly);
  switch (cls.kind) {
    case ZeroOrbitClass::Kind::StrictlyPreperiodic:
      return coprime_preperiodic(poly, start, count);
    case ZeroOrbitClass::Kind::Periodic:
      return cls.period == 1 ? coprime_period1(poly, start, count)
                             : coprime_period2(poly, start, count);
    case ZeroOrbitClass::Kind::Wandering:
      break;
  }
  throw DomainError(Errc::not_preperiodic,
                    "the orbit of 0 wanders; no reduction rule applies");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"certified constructions from integer polynomial orbits"};
  app.require_subcommand(1);
  unsigned env_prec = default_precision_bits();

  struct {
    std::string poly, start, format = "json", rule = "auto", terms;
    std::string p0 = "2";
    std::size_t count = 5, upto = 10, n_max = 6, k = 2;
    std::optional<std::size_t> n_lo, n_hi;
    std::vector<std::size_t> reconstruct_at, reduce;
    std::optional<std::string> bound_start;
    unsigned precision = 128;
    unsigned coeff_bound = 3, degree_bound = 3;
    long long a_bound = 10, x_bound = 50;
    EffortBudget effort;
  } cfg;
  cfg.precision = env_prec;

  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--output", cfg.format, "output format")
        ->check(CLI::IsMember({"json", "csv", "plain"}))
        ->capture_default_str();
  };
  auto add_poly = [&](CLI::App* sub) {
    return sub
        ->add_option("--poly", cfg.poly,
                     "integer polynomial, as text (\"x^2-x+1\") or "
                     "ascending coefficients (\"1,-1,1\")")
        ->required();
  };
  auto add_precision = [&](CLI::App* sub) {
    sub->add_option("--precision-bits", cfg.precision,
                    "working precision for certified rounding")
        ->check(CLI::Range(16u, 1u << 20))
        ->capture_default_str();
  };
  auto add_effort = [&](CLI::App* sub) {
    sub->add_option("--trial-bound", cfg.effort.trial_bound,
                    "trial division bound")
        ->capture_default_str();
    sub->add_option("--rho-iterations", cfg.effort.rho_iterations,
                    "iteration cap for the rho splitter")
        ->capture_default_str();
  };

  std::function<void(const Emitter&)> action;

  // ---- orbit ----
  auto* c_orbit = app.add_subcommand("orbit", "iterate the map and list the orbit");
  add_poly(c_orbit);
  c_orbit->add_option("--start", cfg.start, "initial value x_0")
      ->required()
      ->check(BigInt);
  c_orbit->add_option("--count", cfg.count, "number of terms to print")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_output(c_orbit);
  c_orbit->callback([&] {
    action = [&](const Emitter& e) {
      IntPoly poly = IntPoly::from_string(cfg.poly);
      Int start = parse_int(cfg.start);
      Orbit orb(poly, start);
      auto span = orb.extend(cfg.count - 1);
      std::vector<Int> terms(span.begin(), span.end());
      if (e.format == "json") {
        e.json_doc(json{{"poly", poly},
                        {"start", start},
                        {"count", cfg.count},
                        {"terms", terms}});
      } else {
        emit_terms_table(e, "x", 0, terms);
      }
    };
  });

  // ---- classify ----
  auto* c_classify =
      app.add_subcommand("classify", "classify the orbit of 0 under the map");
  add_poly(c_classify);
  add_output(c_classify);
  c_classify->callback([&] {
    action = [&](const Emitter& e) {
      IntPoly poly = IntPoly::from_string(cfg.poly);
      ZeroOrbitClass cls = classify_zero_orbit(poly);
      std::optional<Int> ellv;
      if (poly.eval(Int(0)) != 0 && poly.eval(poly.eval(Int(0))) != 0)
        ellv = ell(poly);
      if (e.format == "json") {
        json j{{"poly", poly}, {"class", cls}};
        j["ell"] = ellv ? json(*ellv) : json(nullptr);
        e.json_doc(j);
      } else {
        json cj = cls;
        for (auto& [k, v] : cj.items())
          e.kv(k, v.is_string() ? v.get<std::string>() : v.dump());
        e.kv("ell", ellv ? ellv->get_str() : "undefined");
      }
    };
  });

  // ---- coprime ----
  auto* c_coprime = app.add_subcommand(
      "coprime", "normalize an orbit into a pairwise coprime sequence");
  add_poly(c_coprime);
  c_coprime->add_option("--start", cfg.start, "initial value x_0")
      ->required()
      ->check(BigInt);
  c_coprime->add_option("--count", cfg.count, "number of sequence terms")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  c_coprime->add_option("--rule", cfg.rule, "reduction rule")
      ->check(CLI::IsMember({"auto", "preperiodic", "period1", "period2"}))
      ->capture_default_str();
  add_output(c_coprime);
  c_coprime->callback([&] {
    action = [&](const Emitter& e) {
      IntPoly poly = IntPoly::from_string(cfg.poly);
      CoprimeSeq seq = build_coprime(poly, parse_int(cfg.start), cfg.count, cfg.rule);
      if (e.format == "json") {
        e.json_doc(json(seq));
      } else if (e.format == "csv") {
        e.csv_row({"n", "term", "unit"});
        for (std::size_t i = 0; i < seq.terms.size(); ++i) {
          std::size_t n = seq.start_index + i;
          bool unit = std::find(seq.unit_indices.begin(), seq.unit_indices.end(),
                                n) != seq.unit_indices.end();
          e.csv_row({std::to_string(n), seq.terms[i].get_str(), unit ? "1" : "0"});
        }
      } else {
        e.kv("rule", coprime_rule_name(seq.rule));
        if (seq.rule == CoprimeRule::Preperiodic)
          e.kv("ell", seq.ell.get_str());
        else
          e.kv("divisor", seq.divisor.get_str());
        emit_terms_table(e, "a", seq.start_index, seq.terms);
      }
    };
  });

  // ---- primes ----
  auto* c_primes = app.add_subcommand(
      "primes", "coprime normalization plus one private prime per term");
  add_poly(c_primes);
  c_primes->add_option("--start", cfg.start, "initial value x_0")
      ->required()
      ->check(BigInt);
  c_primes->add_option("--count", cfg.count, "number of sequence terms")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  c_primes->add_option("--rule", cfg.rule, "reduction rule")
      ->check(CLI::IsMember({"auto", "preperiodic", "period1", "period2"}))
      ->capture_default_str();
  add_effort(c_primes);
  add_output(c_primes);
  c_primes->callback([&] {
    action = [&](const Emitter& e) {
      IntPoly poly = IntPoly::from_string(cfg.poly);
      CoprimeSeq seq = build_coprime(poly, parse_int(cfg.start), cfg.count, cfg.rule);
      std::vector<PrivatePrime> primes = private_primes(seq, cfg.effort);
      if (e.format == "json") {
        e.json_doc(json{{"sequence", seq}, {"primes", primes}});
      } else if (e.format == "csv") {
        e.csv_row({"n", "term", "prime", "skipped"});
        for (const auto& p : primes)
          e.csv_row({std::to_string(p.index), p.term.get_str(),
                     p.prime ? p.prime->get_str() : "", p.skipped ? "1" : "0"});
      } else {
        for (const auto& p : primes) {
          e.out << "a_" << p.index << " = " << p.term.get_str();
          if (p.prime)
            e.out << "  prime " << p.prime->get_str();
          else if (p.skipped)
            e.out << "  (unit, skipped)";
          else
            e.out << "  (no prime certified within budget)";
          e.out << "\n";
        }
      }
    };
  });

  // ---- divseq ----
  auto* c_divseq = app.add_subcommand(
      "divseq", "strong divisibility checks, gcd reduction, and the gcd bound");
  auto* divseq_poly = c_divseq
                          ->add_option("--poly", cfg.poly,
                                       "integer polynomial (orbit of 0 supplies "
                                       "the sequence unless --terms is given)")
                          ->required();
  c_divseq->add_option("--upto", cfg.upto, "largest index checked")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  c_divseq
      ->add_option("--terms", cfg.terms,
                   "comma-separated external sequence x_0,x_1,... to check "
                   "instead of the orbit")
      ->expected(1);
  c_divseq
      ->add_option("--reduce", cfg.reduce,
                   "two indices m n: print the Euclidean index-reduction chain")
      ->expected(2);
  c_divseq
      ->add_option("--bound-start", cfg.bound_start,
                   "orbit start: check the gcd growth bound for this orbit")
      ->check(BigInt);
  c_divseq->add_option("--n-max", cfg.n_max, "sandwich depth for tau estimates")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_precision(c_divseq);
  add_output(c_divseq);
  c_divseq->callback([&] {
    (void)divseq_poly;
    action = [&](const Emitter& e) {
      IntPoly poly = IntPoly::from_string(cfg.poly);
      if (!cfg.reduce.empty()) {
        GcdReduceTrace trace = gcd_reduce(poly, cfg.reduce[0], cfg.reduce[1]);
        if (e.format == "json") {
          e.json_doc(json(trace));
        } else if (e.format == "csv") {
          e.csv_row({"a", "b", "gcd"});
          for (const auto& s : trace.chain)
            e.csv_row({std::to_string(s.a), std::to_string(s.b), s.value.get_str()});
        } else {
          for (const auto& s : trace.chain)
            e.out << "(" << s.a << ", " << s.b << ")  gcd = " << s.value.get_str()
                  << "\n";
          e.kv("final_index", std::to_string(trace.final_index));
          e.kv("final_term", trace.final_term.get_str());
        }
        return;
      }

      DivSeqReport report;
      if (cfg.bound_start) {
        Int start = parse_int(*cfg.bound_start);
        TauEstimate tau = estimate_tau(poly, start, cfg.n_max, cfg.precision);
        TauEstimate tau0 = is_wandering(poly, 0)
                               ? estimate_tau(poly, 0, cfg.n_max, cfg.precision)
                               : tau;
        report = check_gcd_bound(poly, start, cfg.upto, tau, tau0);
      } else if (!cfg.terms.empty()) {
        report = check_strong_divisibility(parse_int_list(cfg.terms), cfg.upto);
      } else {
        report = check_strong_divisibility(poly, cfg.upto);
      }
      if (e.format == "json") {
        e.json_doc(json(report));
      } else if (e.format == "csv") {
        if (cfg.bound_start) {
          e.csv_row({"m", "n", "gcd", "bound", "status"});
          for (const auto& b : report.bound_checks)
            e.csv_row({std::to_string(b.m), std::to_string(b.n),
                       b.gcd_value.get_str(), b.bound ? rat_str(*b.bound) : "",
                       bound_status_name(b.status)});
        } else {
          e.csv_row({"m", "n", "gcd", "expected"});
          for (const auto& v : report.violations)
            e.csv_row({std::to_string(v.m), std::to_string(v.n),
                       v.gcd_value.get_str(), v.expected.get_str()});
        }
      } else {
        e.kv("checked_pairs", std::to_string(report.checked_pairs));
        e.kv("unchecked_pairs", std::to_string(report.unchecked_pairs));
        e.kv("violations", std::to_string(report.violations.size()));
        for (const auto& v : report.violations)
          e.out << "  gcd(x_" << v.m << ", x_" << v.n
                << ") = " << v.gcd_value.get_str() << " != |"
                << v.expected.get_str() << "|\n";
        for (const auto& b : report.bound_checks)
          if (b.status == BoundStatus::Fail)
            e.out << "  bound FAIL at (" << b.m << ", " << b.n << ")\n";
      }
    };
  });

  // ---- tau ----
  auto* c_tau = app.add_subcommand(
      "tau", "certified bracket for the orbit growth constant");
  add_poly(c_tau);
  c_tau->add_option("--start", cfg.start, "initial value x_0")
      ->required()
      ->check(BigInt);
  c_tau->add_option("--n-max", cfg.n_max, "sandwich depth")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  c_tau->add_option("--reconstruct", cfg.reconstruct_at,
                    "indices to reconstruct from the bracket (repeatable)");
  add_precision(c_tau);
  add_output(c_tau);
  c_tau->callback([&] {
    action = [&](const Emitter& e) {
      IntPoly poly = IntPoly::from_string(cfg.poly);
      TauEstimate est = estimate_tau(poly, parse_int(cfg.start), cfg.n_max,
                                     cfg.precision);
      json recon = json::array();
      for (std::size_t n : cfg.reconstruct_at)
        recon.push_back(json{{"n", n}, {"value", reconstruct(poly, est, n)}});
      if (e.format == "json") {
        json j = est;
        j["reconstructions"] = recon;
        e.json_doc(j);
      } else {
        e.kv("tau_lo", rat_decimal(est.lo));
        e.kv("tau_hi", rat_decimal(est.hi));
        e.kv("width", rat_decimal(est.hi - est.lo, 6));
        e.kv("chain_start", std::to_string(est.chain_start));
        e.kv("horizon", std::to_string(est.horizon));
        e.kv("n_used", std::to_string(est.n_used));
        for (const auto& r : recon)
          e.kv("x_" + r["n"].dump(), r["value"].get<std::string>());
      }
    };
  });

  // ---- series ----
  auto* c_series = app.add_subcommand(
      "series", "Laurent truncation solving P(T^d) = f(P(T)), with residuals");
  add_poly(c_series);
  c_series->add_option("--k", cfg.k, "number of negative-order coefficients")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  auto* opt_start = c_series
                        ->add_option("--start", cfg.start,
                                     "orbit start for the residual check")
                        ->check(BigInt);
  c_series->add_option("--n-max", cfg.n_max, "sandwich depth for the tau bracket")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  auto* opt_nlo = c_series->add_option("--n-lo", cfg.n_lo, "first residual index")
                      ->needs(opt_start);
  c_series->add_option("--n-hi", cfg.n_hi, "last residual index")
      ->needs(opt_nlo);
  add_precision(c_series);
  add_output(c_series);
  c_series->callback([&] {
    action = [&](const Emitter& e) {
      IntPoly poly = IntPoly::from_string(cfg.poly);
      SeriesTruncation trunc = series_coefficients(poly, cfg.k, cfg.precision);
      json j{{"truncation", nullptr}};
      std::optional<ResidualReport> residuals;
      if (opt_start->count() > 0) {
        TauEstimate est = estimate_tau(poly, parse_int(cfg.start), cfg.n_max,
                                       cfg.precision);
        std::size_t lo = cfg.n_lo.value_or(est.chain_start);
        // near n_used the bracket cannot resolve the residual any more
        std::size_t default_hi =
            est.n_used >= est.chain_start + 2 ? est.n_used - 2 : est.n_used;
        std::size_t hi = cfg.n_hi.value_or(std::max(lo, default_hi));
        residuals = series_residual_check(poly, est, trunc, lo, hi);
      }
      if (e.format == "json") {
        j["truncation"] = trunc;
        if (trunc.exact) j["discrepancy"] = [&] {
          json d = json::array();
          for (const auto& [exp, val] : series_discrepancy(poly, trunc))
            d.push_back(json{{"exponent", exp}, {"value", val}});
          return d;
        }();
        j["residuals"] = residuals ? json(*residuals) : json(nullptr);
        e.json_doc(j);
      } else {
        for (unsigned i = 0; i <= trunc.k; ++i)
          e.kv("c_" + std::to_string(1 - static_cast<long>(i)),
               trunc.exact ? rat_str(trunc.coeff_lo[i])
                           : rat_decimal(trunc.coeff_lo[i]) + " .. " +
                                 rat_decimal(trunc.coeff_hi[i]));
        e.kv("identity_exact", trunc.identity_exact ? "true" : "false");
        if (residuals) {
          for (const auto& row : residuals->rows)
            e.kv("residual_" + std::to_string(row.n),
                 rat_decimal(row.res_lo, 10) + " .. " + rat_decimal(row.res_hi, 10));
          e.kv("decay_certified", residuals->decay_certified ? "true" : "false");
        }
      }
    };
  });

  // ---- mills ----
  auto* c_mills = app.add_subcommand(
      "mills", "cube-interval prime chain with certified constant bracket");
  c_mills->add_option("--start", cfg.p0, "first prime p_0")
      ->check(BigInt)
      ->capture_default_str();
  c_mills->add_option("--count", cfg.count, "number of primes")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_precision(c_mills);
  add_output(c_mills);
  c_mills->callback([&] {
    action = [&](const Emitter& e) {
      MillsResult res =
          mills_sequence(parse_int(cfg.p0), cfg.count, cfg.precision);
      if (e.format == "json") {
        e.json_doc(json(res));
      } else if (e.format == "csv") {
        e.csv_row({"n", "prime"});
        for (std::size_t i = 0; i < res.primes.size(); ++i)
          e.csv_row({std::to_string(i), res.primes[i].get_str()});
      } else {
        emit_terms_table(e, "p", 0, res.primes);
        e.kv("tau_lo", rat_decimal(res.tau_lo));
        e.kv("tau_hi", rat_decimal(res.tau_hi));
        e.kv("floor_verified", res.floor_verified ? "true" : "false");
      }
    };
  });

  // ---- search-exceptions ----
  auto* c_search = app.add_subcommand(
      "search-exceptions",
      "exhaust short wandering prefixes compatible with the unit constraints");
  c_search->add_option("--a-bound", cfg.a_bound, "largest fixed value a")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  c_search->add_option("--x-bound", cfg.x_bound, "largest |x| in the prefix")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_output(c_search);
  c_search->callback([&] {
    action = [&](const Emitter& e) {
      auto found = search_exceptional_orbits(cfg.a_bound, cfg.x_bound);
      if (e.format == "json") {
        e.json_doc(json{{"a_bound", cfg.a_bound},
                        {"x_bound", cfg.x_bound},
                        {"orbits", found}});
      } else if (e.format == "csv") {
        e.csv_row({"a", "x0", "x1", "d"});
        for (const auto& o : found)
          e.csv_row({std::to_string(o.a), std::to_string(o.x0),
                     std::to_string(o.x1), std::to_string(o.d)});
      } else {
        for (const auto& o : found)
          e.out << "a = " << o.a << ": " << o.x0 << " -> " << o.x1
                << "  (d = " << o.d << ")\n";
        e.kv("count", std::to_string(found.size()));
      }
    };
  });

  // ---- verify-classification ----
  auto* c_verify = app.add_subcommand(
      "verify-classification",
      "classify every small map and confirm the predicted orbit prefixes");
  c_verify->add_option("--coeff-bound", cfg.coeff_bound, "largest |coefficient|")
      ->required()
      ->check(CLI::PositiveNumber);
  c_verify->add_option("--degree-bound", cfg.degree_bound, "largest degree")
      ->required()
      ->check(CLI::PositiveNumber);
  add_output(c_verify);
  c_verify->callback([&] {
    action = [&](const Emitter& e) {
      ClassificationReport rep =
          verify_classification_exhaustive(cfg.coeff_bound, cfg.degree_bound);
      if (e.format == "json") {
        e.json_doc(json(rep));
      } else {
        e.kv("total_polys", std::to_string(rep.total_polys));
        e.kv("wandering", std::to_string(rep.wandering));
        e.kv("periodic", std::to_string(rep.periodic));
        e.kv("strictly_preperiodic", std::to_string(rep.strictly_preperiodic));
        for (int f = 0; f < 4; ++f)
          e.kv(family_name(static_cast<Family>(f)),
               std::to_string(rep.family_counts[f][0]) + " + " +
                   std::to_string(rep.family_counts[f][1]) + " mirrored");
        e.kv("violations", std::to_string(rep.violations.size()));
      }
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  } catch (const DomainError& e) {
    err << error_json(e).dump(2) << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << error_json(e).dump(2) << "\n";
    return 1;
  }

  if (!action) return 2;
  try {
    action(Emitter{out, cfg.format});
  } catch (const DomainError& e) {
    err << error_json(e).dump(2) << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << error_json(e).dump(2) << "\n";
    return 1;
  }
  return 0;
}

}  // namespace orbitprimes::cli
