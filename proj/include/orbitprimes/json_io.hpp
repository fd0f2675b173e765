#ifndef ORBITPRIMES_JSON_IO_HPP
#define ORBITPRIMES_JSON_IO_HPP

#include <json.hpp>

#include "orbitprimes/classifier.hpp"
#include "orbitprimes/coprime.hpp"
#include "orbitprimes/divisibility.hpp"
#include "orbitprimes/errors.hpp"
#include "orbitprimes/factorint.hpp"
#include "orbitprimes/growth.hpp"
#include "orbitprimes/orbit.hpp"

// Integers render as decimal strings (they routinely overflow any
// machine word); rationals as exact {"num", "den"} pairs. Keys come out
// alphabetically sorted by nlohmann's ordered map, so dumps are
// reproducible byte for byte.

namespace nlohmann {

template <>
struct adl_serializer<mpz_class> {
  static void to_json(json& j, const mpz_class& v);
};

template <>
struct adl_serializer<mpq_class> {
  static void to_json(json& j, const mpq_class& v);
};

}  // namespace nlohmann

namespace orbitprimes {

using nlohmann::json;

void to_json(json& j, const IntPoly& v);
void to_json(json& j, const CycleInfo& v);
void to_json(json& j, const ZeroOrbitClass& v);
void to_json(json& j, const ClassificationViolation& v);
void to_json(json& j, const ClassificationReport& v);
void to_json(json& j, const CoprimeSeq& v);
void to_json(json& j, const ExceptionalOrbit& v);
void to_json(json& j, const Factorization& v);
void to_json(json& j, const PrivatePrime& v);
void to_json(json& j, const PrimitivePrimes& v);
void to_json(json& j, const TauEstimate& v);
void to_json(json& j, const SeriesTruncation& v);
void to_json(json& j, const ResidualRow& v);
void to_json(json& j, const ResidualReport& v);
void to_json(json& j, const MillsResult& v);
void to_json(json& j, const DivViolation& v);
void to_json(json& j, const BoundCheck& v);
void to_json(json& j, const DivSeqReport& v);
void to_json(json& j, const GcdStep& v);
void to_json(json& j, const GcdReduceTrace& v);

json error_json(const DomainError& e);
json error_json(const std::exception& e);

}  // namespace orbitprimes

#endif
