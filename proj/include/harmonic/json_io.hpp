#pragma once

#include <json.hpp>

#include "harmonic/linalg.hpp"

namespace harmonic {

// Insertion-ordered JSON so identical invocations serialize byte-identically.
using Json = nlohmann::ordered_json;

// {"conductor": N, "coeffs": [[num, den], ...]} with numerators and
// denominators as decimal strings (they are arbitrary-precision integers).
Json to_json(const CyclotomicNumber& x);
CyclotomicNumber cyclotomic_from_json(const Json& j);

// {"terms": [{"atom": "LogSin", "k": 1, "m": 5, "coeff": {...}}, ...]}
// with atoms in canonical order.
Json to_json(const SymbolicValue& v);

Json to_json(const RelationReport& r);

Json to_json(const SpanResult& s);

}  // namespace harmonic
