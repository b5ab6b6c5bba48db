#pragma once

#include <json.hpp>

#include <vector>

#include "crl/decomposition.hpp"
#include "crl/forms.hpp"
#include "crl/partition.hpp"
#include "crl/realrank.hpp"

namespace crl {

// Key order is insertion order so documents read top-down; doubles are
// written in shortest round-trip form, which makes dump(parse(dump(x)))
// byte-identical.
using Json = nlohmann::ordered_json;

Json to_json(const BinaryForm& f);  // monomial coefficients, ascending x-degree
Json to_json(const ProjectivePoint& p);  // [s, t]
Json to_json(const Partition& lambda);   // parts, weakly decreasing
Json to_json(const Residuals& r);
Json to_json(const CriticalDecomposition& d);
Json to_json(const RealRankReport& r);

BinaryForm form_from_json(const Json& j);
ProjectivePoint point_from_json(const Json& j);

/// dump with two-space indent and a trailing newline.
std::string dump(const Json& j);

}  // namespace crl
