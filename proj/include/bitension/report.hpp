#pragma once

#include <string>
#include <vector>

#include "bitension/vec.hpp"

namespace bitension {

// 17 significant digits, lowercase scientific notation where needed; the
// same bytes for the same value on every run.
std::string format_real(double v);

// Insertion-ordered JSON writer.  Objects and arrays are closed explicitly;
// numeric leaves are emitted as {"value": ..., "paper_ref": ...} so every
// scalar in a report names the formula it came from.
class JsonWriter {
  public:
    JsonWriter& begin_object();
    JsonWriter& end_object();
    JsonWriter& begin_array(const std::string& key);
    JsonWriter& begin_object(const std::string& key);
    JsonWriter& end_array();
    JsonWriter& string_field(const std::string& key, const std::string& value);
    JsonWriter& bool_field(const std::string& key, bool value);
    JsonWriter& int_field(const std::string& key, long long value);
    JsonWriter& real_field(const std::string& key, double value, const std::string& paper_ref);
    JsonWriter& vector_field(const std::string& key, const AmbientVector& v,
                             const std::string& paper_ref);
    // An object element inside an array.
    JsonWriter& begin_element();

    std::string take();

  private:
    void comma();
    void raw(const std::string& s);

    std::string out_;
    std::vector<bool> first_;
};

}  // namespace bitension
