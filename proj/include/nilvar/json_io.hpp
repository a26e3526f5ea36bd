#pragma once

#include <variant>

#include <json.hpp>

#include "nilvar/affine.hpp"
#include "nilvar/flagdims.hpp"
#include "nilvar/flagsearch.hpp"
#include "nilvar/multipartition.hpp"
#include "nilvar/quiver.hpp"
#include "nilvar/rep.hpp"

// JSON schemas (documented in docs/schemas.md):
//   Quiver         {"vertices":["1","2"], "arrows":[["1","2"],["1","2"]]}
//   DimVector      {"1":1, "2":0}            (keyed by vertex id)
//   FlagType       [[1,0],[0,1]]             (steps; entries in vertex order;
//                                             DimVector objects also accepted)
//   MultiPartition {"n":2, "parts":{"0":[2],"1":[]}}
//   Field          {"kind":"Fp","p":2} or {"kind":"Rationals"}
//   Rep            {"quiver":Q, "dim":D, "field":F, "mats":{"0":[[...]]}}
//   DoubledPoint   {"quiver":Q, "dim":D, "field":F, "x":{...}, "xstar":{...}}
// Rational entries are integers or "a/b" strings; parse errors raise
// validation_error with the offending path in the message.

namespace nilvar {

using Json = nlohmann::ordered_json;

using AnyRep = std::variant<Rep<Fp>, Rep<Rat>>;
using AnyDoubled = std::variant<DoubledPoint<Fp>, DoubledPoint<Rat>>;

Quiver parse_quiver(const Json& j);
DimVec parse_dimvec(const Json& j, const Quiver& q);
FlagType parse_flag_type(const Json& j, const Quiver& q);
MultiPartition parse_multipartition(const Json& j);
AnyRep parse_rep(const Json& j);
AnyDoubled parse_doubled(const Json& j);

Json to_json(const Quiver& q);
Json to_json(const Quiver& q, const DimVec& d);
Json flag_type_json(const FlagType& ft);
Json to_json(const MultiPartition& m);
Json to_json(const Rep<Fp>& r);
Json to_json(const Rep<Rat>& r);
Json to_json(const DoubledPoint<Fp>& p);
Json to_json(const DoubledPoint<Rat>& p);
Json matrix_json(const Matrix<Fp>& m);
Json matrix_json(const Matrix<Rat>& m);
Json matrix_json(const Matrix<Int>& m);
Json graded_flag_json(const GradedFlag<Fp>& f);
Json graded_flag_json(const GradedFlag<Rat>& f);

// Exact integers: emitted as JSON numbers when they fit in 64 bits, decimal
// strings otherwise (mpz round-trips either way).
Json int_json(const Int& x);

}  // namespace nilvar
