#include "bitension/report.hpp"

#include <cmath>
#include <cstdio>

namespace bitension {

std::string format_real(double v) {
    if (!std::isfinite(v)) return "null";
    if (v == 0.0) v = 0.0;  // normalize -0
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::string escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (const char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(ch) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", ch);
                    out += buf;
                } else {
                    out += ch;
                }
        }
    }
    return out;
}

}  // namespace

void JsonWriter::comma() {
    if (!first_.empty()) {
        if (!first_.back()) out_ += ',';
        first_.back() = false;
    }
}

void JsonWriter::raw(const std::string& s) { out_ += s; }

JsonWriter& JsonWriter::begin_object() {
    comma();
    raw("{");
    first_.push_back(true);
    return *this;
}

JsonWriter& JsonWriter::begin_object(const std::string& key) {
    comma();
    raw("\"" + key + "\":{");
    first_.push_back(true);
    return *this;
}

JsonWriter& JsonWriter::end_object() {
    raw("}");
    first_.pop_back();
    return *this;
}

JsonWriter& JsonWriter::begin_array(const std::string& key) {
    comma();
    raw("\"" + key + "\":[");
    first_.push_back(true);
    return *this;
}

JsonWriter& JsonWriter::end_array() {
    raw("]");
    first_.pop_back();
    return *this;
}

JsonWriter& JsonWriter::begin_element() { return begin_object(); }

JsonWriter& JsonWriter::string_field(const std::string& key, const std::string& value) {
    comma();
    raw("\"" + key + "\":\"" + escape(value) + "\"");
    return *this;
}

JsonWriter& JsonWriter::bool_field(const std::string& key, bool value) {
    comma();
    raw("\"" + key + "\":" + (value ? "true" : "false"));
    return *this;
}

JsonWriter& JsonWriter::int_field(const std::string& key, long long value) {
    comma();
    raw("\"" + key + "\":" + std::to_string(value));
    return *this;
}

JsonWriter& JsonWriter::real_field(const std::string& key, double value,
                                   const std::string& paper_ref) {
    comma();
    raw("\"" + key + "\":{\"value\":" + format_real(value) + ",\"paper_ref\":\"" + paper_ref +
        "\"}");
    return *this;
}

JsonWriter& JsonWriter::vector_field(const std::string& key, const AmbientVector& v,
                                     const std::string& paper_ref) {
    comma();
    std::string s = "\"" + key + "\":{\"value\":{\"x\":[";
    for (std::size_t i = 0; i < v.x.size(); ++i) {
        if (i) s += ',';
        s += format_real(v.x[i]);
    }
    s += "],\"y\":[";
    for (std::size_t i = 0; i < v.y.size(); ++i) {
        if (i) s += ',';
        s += format_real(v.y[i]);
    }
    s += "]},\"paper_ref\":\"" + paper_ref + "\"}";
    raw(s);
    return *this;
}

std::string JsonWriter::take() { return std::move(out_); }

}  // namespace bitension
