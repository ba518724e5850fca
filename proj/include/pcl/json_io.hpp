#ifndef PCL_JSON_IO_HPP
#define PCL_JSON_IO_HPP

#include <string>

#include "json.hpp"

#include "pcl/checkers.hpp"
#include "pcl/constructions.hpp"

namespace pcl {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "pcl/1";

/// Malformed or schema-violating input.
class FormatError : public Error {
public:
    using Error::Error;
};

Json rational_to_json(const Rational& r);
Rational rational_from_json(const Json& j);
Json point_to_json(const Point& p);
Point point_from_json(const Json& j);

/// Sets carry "schema": "pcl/1" at top level; nested union parts do not.
Json set_to_json(const GeoSet& s, bool top_level = true);
/// Parses and validates.
GeoSet set_from_json(const Json& j, bool top_level = true);

Json witness_to_json(const Witness& w);
Witness witness_from_json(const Json& j);
Json budget_to_json(const SearchBudget& b);
SearchBudget budget_from_json(const Json& j);
Json verdict_to_json(const Verdict& v);

Json genspec_to_json(const GenSpec& g);
GenSpec genspec_from_json(const Json& j);

/// Parses text, reporting the byte position of syntax errors.
Json parse_json_text(const std::string& text);
Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace pcl

#endif
