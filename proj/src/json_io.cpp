#include "orbitprimes/json_io.hpp"

namespace nlohmann {

void adl_serializer<mpz_class>::to_json(json& j, const mpz_class& v) {
  j = v.get_str();
}

void adl_serializer<mpq_class>::to_json(json& j, const mpq_class& v) {
  j = json{{"num", v.get_num().get_str()}, {"den", v.get_den().get_str()}};
}

}  // namespace nlohmann

namespace orbitprimes {

void to_json(json& j, const IntPoly& v) {
  j = json{{"coeffs", v.coeffs()}, {"degree", v.degree()}, {"text", v.to_string()}};
}

void to_json(json& j, const CycleInfo& v) {
  j = json{{"preperiod", v.preperiod}, {"period", v.period}, {"cycle", v.cycle}};
}

void to_json(json& j, const ZeroOrbitClass& v) {
  switch (v.kind) {
    case ZeroOrbitClass::Kind::Wandering:
      j = json{{"kind", "wandering"}};
      break;
    case ZeroOrbitClass::Kind::Periodic:
      j = json{{"kind", "periodic"}, {"period", v.period}};
      break;
    case ZeroOrbitClass::Kind::StrictlyPreperiodic:
      j = json{{"kind", "strictly_preperiodic"},
               {"family", family_name(v.family)},
               {"a", v.a},
               {"mirrored", v.mirrored}};
      break;
  }
}

void to_json(json& j, const ClassificationViolation& v) {
  j = json{{"poly", v.poly}, {"prefix", v.prefix}, {"reason", v.reason}};
}

void to_json(json& j, const ClassificationReport& v) {
  json counts;
  for (int f = 0; f < 4; ++f)
    counts[family_name(static_cast<Family>(f))] =
        json{{"unmirrored", v.family_counts[f][0]}, {"mirrored", v.family_counts[f][1]}};
  j = json{{"coeff_bound", v.coeff_bound},
           {"degree_bound", v.degree_bound},
           {"total_polys", v.total_polys},
           {"wandering", v.wandering},
           {"periodic", v.periodic},
           {"strictly_preperiodic", v.strictly_preperiodic},
           {"family_counts", counts},
           {"violations", v.violations}};
}

void to_json(json& j, const CoprimeSeq& v) {
  j = json{{"rule", coprime_rule_name(v.rule)},
           {"poly", v.poly},
           {"start", v.start},
           {"start_index", v.start_index},
           {"terms", v.terms},
           {"unit_indices", v.unit_indices}};
  if (v.rule == CoprimeRule::Preperiodic) {
    j["ell"] = v.ell;
  } else {
    j["r"] = v.r;
    j["cofactor"] = v.cofactor;
    j["divisor"] = v.divisor;
  }
}

void to_json(json& j, const ExceptionalOrbit& v) {
  j = json{{"a", v.a}, {"x0", v.x0}, {"x1", v.x1}, {"d", v.d}};
}

void to_json(json& j, const Factorization& v) {
  json powers = json::array();
  for (const auto& [p, e] : v.prime_powers)
    powers.push_back(json{{"prime", p}, {"exponent", e}});
  j = json{{"n", v.n},
           {"unit", v.unit},
           {"prime_powers", powers},
           {"complete", v.complete()}};
  j["cofactor"] = v.cofactor ? json(*v.cofactor) : json(nullptr);
}

void to_json(json& j, const PrivatePrime& v) {
  j = json{{"index", v.index}, {"term", v.term}, {"skipped", v.skipped}};
  j["prime"] = v.prime ? json(*v.prime) : json(nullptr);
}

void to_json(json& j, const PrimitivePrimes& v) {
  j = json{{"upto", v.upto}, {"primes", v.primes}, {"complete", v.complete}};
}

void to_json(json& j, const TauEstimate& v) {
  j = json{{"poly", v.poly},
           {"start", v.start},
           {"degree", v.degree},
           {"lead", v.lead},
           {"alpha", json{{"exact", v.alpha_exact}, {"lo", v.alpha_lo}, {"hi", v.alpha_hi}}},
           {"beta", v.beta},
           {"tau", json{{"lo", v.lo}, {"hi", v.hi}}},
           {"chain_start", v.chain_start},
           {"horizon", v.horizon},
           {"n_used", v.n_used},
           {"precision_bits", v.precision_bits}};
}

void to_json(json& j, const SeriesTruncation& v) {
  json coeffs = json::array();
  for (unsigned i = 0; i <= v.k; ++i)
    coeffs.push_back(json{{"exponent", 1 - static_cast<long>(i)},
                          {"lo", v.coeff_lo[i]},
                          {"hi", v.coeff_hi[i]}});
  j = json{{"k", v.k},
           {"degree", v.degree},
           {"exact", v.exact},
           {"identity_exact", v.identity_exact},
           {"coefficients", coeffs}};
  j["fitted_c"] = v.fitted_c ? json(*v.fitted_c) : json(nullptr);
}

void to_json(json& j, const ResidualRow& v) {
  j = json{{"n", v.n},
           {"residual", json{{"lo", v.res_lo}, {"hi", v.res_hi}}},
           {"scaled", json{{"lo", v.scaled_lo}, {"hi", v.scaled_hi}}},
           {"decrease_certified", v.decrease_certified}};
}

void to_json(json& j, const ResidualReport& v) {
  j = json{{"rows", v.rows},
           {"fitted_c", v.fitted_c},
           {"identically_zero", v.identically_zero},
           {"decay_certified", v.decay_certified}};
}

void to_json(json& j, const MillsResult& v) {
  j = json{{"primes", v.primes},
           {"tau", json{{"lo", v.tau_lo}, {"hi", v.tau_hi}}},
           {"floor_verified", v.floor_verified}};
}

void to_json(json& j, const DivViolation& v) {
  j = json{{"m", v.m}, {"n", v.n}, {"gcd", v.gcd_value}, {"expected", v.expected}};
}

void to_json(json& j, const BoundCheck& v) {
  j = json{{"m", v.m},
           {"n", v.n},
           {"gcd", v.gcd_value},
           {"status", bound_status_name(v.status)}};
  j["bound"] = v.bound ? json(*v.bound) : json(nullptr);
}

void to_json(json& j, const DivSeqReport& v) {
  j = json{{"checked_pairs", v.checked_pairs},
           {"unchecked_pairs", v.unchecked_pairs},
           {"violations", v.violations},
           {"bound_checks", v.bound_checks}};
}

void to_json(json& j, const GcdStep& v) {
  j = json{{"a", v.a}, {"b", v.b}, {"gcd", v.value}};
}

void to_json(json& j, const GcdReduceTrace& v) {
  j = json{{"chain", v.chain},
           {"steps", v.steps},
           {"final_index", v.final_index},
           {"final_term", v.final_term}};
}

json error_json(const DomainError& e) {
  json j{{"error", e.code_name()}, {"message", e.what()}};
  j["index"] = e.index() ? json(*e.index()) : json(nullptr);
  return j;
}

json error_json(const std::exception& e) {
  return json{{"error", "Internal"}, {"message", e.what()}};
}

}  // namespace orbitprimes
