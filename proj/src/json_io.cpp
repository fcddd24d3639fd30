#include "shapelab/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace shapelab {

JsonValue JsonValue::null() { return {}; }

JsonValue JsonValue::boolean(bool v) {
    JsonValue j;
    j.type = Type::boolean;
    j.b = v;
    return j;
}

JsonValue JsonValue::integer(long long v) {
    JsonValue j;
    j.type = Type::integer;
    j.i = v;
    return j;
}

JsonValue JsonValue::number(double v) {
    JsonValue j;
    j.type = Type::number;
    j.num = v;
    return j;
}

JsonValue JsonValue::string(std::string v) {
    JsonValue j;
    j.type = Type::string;
    j.str = std::move(v);
    return j;
}

JsonValue JsonValue::array() {
    JsonValue j;
    j.type = Type::array;
    return j;
}

JsonValue JsonValue::object() {
    JsonValue j;
    j.type = Type::object;
    return j;
}

JsonValue& JsonValue::push(JsonValue v) {
    arr.push_back(std::move(v));
    return *this;
}

JsonValue& JsonValue::set(const std::string& key, JsonValue v) {
    obj.emplace_back(key, std::move(v));
    return *this;
}

std::string format_double(double v) {
    if (!std::isfinite(v)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    std::string s(buf);
    if (s == "-0") s = "0";
    return s;
}

namespace {

void escape_into(const std::string& s, std::string& out) {
    out.push_back('"');
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out.push_back(c);
                }
        }
    }
    out.push_back('"');
}

void dump_into(const JsonValue& v, int indent, int depth, std::string& out) {
    const std::string pad(static_cast<std::size_t>(indent) * depth, ' ');
    const std::string pad_in(static_cast<std::size_t>(indent) * (depth + 1), ' ');
    switch (v.type) {
        case JsonValue::Type::null: out += "null"; break;
        case JsonValue::Type::boolean: out += v.b ? "true" : "false"; break;
        case JsonValue::Type::integer: out += std::to_string(v.i); break;
        case JsonValue::Type::number: out += format_double(v.num); break;
        case JsonValue::Type::string: escape_into(v.str, out); break;
        case JsonValue::Type::array: {
            if (v.arr.empty()) {
                out += "[]";
                break;
            }
            out += "[\n";
            for (std::size_t i = 0; i < v.arr.size(); ++i) {
                out += pad_in;
                dump_into(v.arr[i], indent, depth + 1, out);
                if (i + 1 < v.arr.size()) out.push_back(',');
                out.push_back('\n');
            }
            out += pad + "]";
            break;
        }
        case JsonValue::Type::object: {
            if (v.obj.empty()) {
                out += "{}";
                break;
            }
            out += "{\n";
            for (std::size_t i = 0; i < v.obj.size(); ++i) {
                out += pad_in;
                escape_into(v.obj[i].first, out);
                out += ": ";
                dump_into(v.obj[i].second, indent, depth + 1, out);
                if (i + 1 < v.obj.size()) out.push_back(',');
                out.push_back('\n');
            }
            out += pad + "}";
            break;
        }
    }
}

}  // namespace

std::string JsonValue::dump(int indent) const {
    std::string out;
    dump_into(*this, indent, 0, out);
    out.push_back('\n');
    return out;
}

double parse_resolution(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("resolution: empty value");
    const std::size_t slash = text.find('/');
    try {
        double value = 0.0;
        std::size_t used = 0;
        if (slash == std::string::npos) {
            value = std::stod(text, &used);
            if (used != text.size()) throw std::invalid_argument(text);
        } else {
            std::size_t used2 = 0;
            const double a = std::stod(text.substr(0, slash), &used);
            const double b = std::stod(text.substr(slash + 1), &used2);
            if (used != slash || used2 != text.size() - slash - 1 || b == 0.0)
                throw std::invalid_argument(text);
            value = a / b;
        }
        if (!(value > 0.0))
            throw std::invalid_argument("resolution must be positive: " + text);
        return value;
    } catch (const std::exception&) {
        throw std::invalid_argument("bad resolution value: " + text);
    }
}

namespace {

std::vector<Point> parse_points(const nlohmann::json& arr, const std::string& where,
                                std::size_t min_points) {
    if (!arr.is_array() || arr.size() < min_points)
        throw std::invalid_argument("domain json: " + where +
                                    " must be an array of at least " +
                                    std::to_string(min_points) + " points");
    std::vector<Point> pts;
    pts.reserve(arr.size());
    for (const auto& p : arr) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
            throw std::invalid_argument("domain json: " + where +
                                        " entries must be [x, y] pairs");
        pts.push_back({p[0].get<double>(), p[1].get<double>()});
    }
    return pts;
}

}  // namespace

PlanarDomain domain_from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("domain json: parse error: ") +
                                    e.what());
    }
    if (!j.is_object() || !j.contains("outer_loops"))
        throw std::invalid_argument("domain json: missing outer_loops");

    PlanarDomain d;
    for (std::size_t i = 0; i < j["outer_loops"].size(); ++i)
        d.outer_loops.push_back(
            parse_points(j["outer_loops"][i], "outer_loops[" + std::to_string(i) + "]", 3));
    if (j.contains("hole_loops"))
        for (std::size_t i = 0; i < j["hole_loops"].size(); ++i)
            d.hole_loops.push_back(
                parse_points(j["hole_loops"][i], "hole_loops[" + std::to_string(i) + "]", 3));
    if (j.contains("slits"))
        for (std::size_t i = 0; i < j["slits"].size(); ++i)
            d.slits.push_back(
                parse_points(j["slits"][i], "slits[" + std::to_string(i) + "]", 2));

    // Orientation is representational: normalize rather than reject.
    for (Loop& loop : d.outer_loops)
        if (signed_area(loop) < 0.0) std::reverse(loop.begin(), loop.end());
    for (Loop& loop : d.hole_loops)
        if (signed_area(loop) > 0.0) std::reverse(loop.begin(), loop.end());

    validate(d);
    return d;
}

PlanarDomain load_domain(const std::string& path) {
    return domain_from_json_text(read_text_file(path));
}

JsonValue domain_to_json(const PlanarDomain& domain) {
    auto loops_json = [](const auto& loops) {
        JsonValue arr = JsonValue::array();
        for (const auto& loop : loops) {
            JsonValue jl = JsonValue::array();
            for (const Point& p : loop) {
                JsonValue jp = JsonValue::array();
                jp.push(JsonValue::number(p.x));
                jp.push(JsonValue::number(p.y));
                jl.push(std::move(jp));
            }
            arr.push(std::move(jl));
        }
        return arr;
    };
    JsonValue j = JsonValue::object();
    j.set("schema", JsonValue::string("shapelab/domain/v1"));
    j.set("outer_loops", loops_json(domain.outer_loops));
    j.set("hole_loops", loops_json(domain.hole_loops));
    j.set("slits", loops_json(domain.slits));
    return j;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::invalid_argument("cannot open for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("short write: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace shapelab
