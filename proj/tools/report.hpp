#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include <json.hpp>

#include "expandlab/bounds.hpp"
#include "expandlab/expanders.hpp"
#include "expandlab/search.hpp"
#include "expandlab/slopes.hpp"

namespace expandlab::report {

using Json = nlohmann::ordered_json;

Json to_json(const FiniteSet& s);
Json to_json(const BoundReport& r);
Json to_json(const GrowthChain& chain);
Json to_json(const Theorem1Trace& t);
Json to_json(const ClusterTrace& t);
Json to_json(const SearchResult& r);
Json to_json(const FamilySpec& f);

enum class Format { Json, Csv, Text };

/// Same data in every format: JSON as is; text and CSV flatten nested keys
/// to dotted paths. A top-level "rows" array renders as a CSV table.
void render(const Json& doc, Format format, std::ostream& out);

/// Fixed verify table columns.
inline constexpr std::string_view kCsvColumns[] = {"bound_id", "lhs", "rhs", "ratio", "verdict", "input"};

}  // namespace expandlab::report
