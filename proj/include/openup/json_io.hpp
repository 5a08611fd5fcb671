#pragma once

#include <json.hpp>

#include "openup/critpts.hpp"
#include "openup/critvals.hpp"
#include "openup/open_up.hpp"

namespace openup::io {

// ordered_json keeps insertion order, so emitted documents are byte-stable.
using Json = nlohmann::ordered_json;

// Complex numbers are always [re, im]; polynomials are arrays of such pairs,
// lowest power first.
Json to_json(Complex z);
Complex complex_from_json(const Json& j);

Json to_json(const Polynomial& p);
Polynomial poly_from_json(const Json& j);

Json to_json(const RationalMap& map);          // {"P": [...], "Q": [...]}
RationalMap map_from_json(const Json& j);

Json to_json(const CriticalPointSpec& spec);   // {"n": int, "eta": [...]}
CriticalPointSpec critpts_spec_from_json(const Json& j);

Json to_json(const CriticalValueSpec& spec);   // {"n": int, "zeta": [...]}
CriticalValueSpec critvals_spec_from_json(const Json& j);

Json to_json(const ArcSet& arcs);              // {"arcs": [[[re,im],...], ...]}
ArcSet arcset_from_json(const Json& j);

Json to_json(const CriticalPointReport& report);
Json to_json(const CriticalValueReport& report);
Json to_json(const OpenUpReport& report);

std::vector<Complex> complex_list_from_json(const Json& j, const char* what);
Json complex_list_to_json(std::span<const Complex> values);

}  // namespace openup::io
