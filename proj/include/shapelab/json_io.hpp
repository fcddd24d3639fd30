#ifndef SHAPELAB_JSON_IO_HPP
#define SHAPELAB_JSON_IO_HPP

/// @file json_io.hpp
/// Serialization with reproducible bytes.
///
/// Inputs are parsed leniently (any standard JSON); outputs go through a
/// small insertion-ordered writer whose doubles are always printed with
/// %.12g, so identical runs produce identical files.  Domain files follow
/// the shapelab/domain/v1 schema shipped under schemas/.

#include <string>
#include <utility>
#include <vector>

#include "shapelab/geometry.hpp"

namespace shapelab {

struct JsonValue {
    enum class Type { null, boolean, integer, number, string, array, object };
    Type type = Type::null;
    bool b = false;
    long long i = 0;
    double num = 0.0;
    std::string str;
    std::vector<JsonValue> arr;
    std::vector<std::pair<std::string, JsonValue>> obj;

    static JsonValue null();
    static JsonValue boolean(bool v);
    static JsonValue integer(long long v);
    static JsonValue number(double v);
    static JsonValue string(std::string v);
    static JsonValue array();
    static JsonValue object();

    JsonValue& push(JsonValue v);                       // arrays
    JsonValue& set(const std::string& key, JsonValue v);  // objects
    std::string dump(int indent = 2) const;
};

/// %.12g with "-0" normalized; non-finite values become null.
std::string format_double(double v);

/// "1/256" or "0.00390625" to a positive double.
double parse_resolution(const std::string& text);

PlanarDomain load_domain(const std::string& path);
PlanarDomain domain_from_json_text(const std::string& text);
JsonValue domain_to_json(const PlanarDomain& domain);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace shapelab

#endif
