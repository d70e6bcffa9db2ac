#ifndef MELCERT_JSON_WRITER_HPP
#define MELCERT_JSON_WRITER_HPP

#include <string>
#include <string_view>
#include <vector>

#include "melcert/imatrix.hpp"

namespace melcert {

// Streaming JSON writer. Numbers use the shortest round-trip decimal form;
// non-finite numbers are written as null. Arrays are written on one line.
class JsonWriter {
public:
    JsonWriter& begin_object();
    JsonWriter& end_object();
    JsonWriter& begin_array(bool multiline = false);
    JsonWriter& end_array();
    JsonWriter& key(std::string_view k);
    JsonWriter& value(double x);
    JsonWriter& value(long long x);
    JsonWriter& value(int x) { return value(static_cast<long long>(x)); }
    JsonWriter& value(std::size_t x) { return value(static_cast<long long>(x)); }
    JsonWriter& value(bool b);
    JsonWriter& value(std::string_view s);
    JsonWriter& value(const char* s) { return value(std::string_view(s)); }
    JsonWriter& null();
    // [lo, hi]
    JsonWriter& value(const Interval& x);
    // [[lo, hi], ...]
    JsonWriter& value(const IntervalBox& b);
    // rows of [lo, hi] pairs
    JsonWriter& value(const IntervalMatrix& m);
    JsonWriter& value(const std::vector<double>& v);
    JsonWriter& value(const std::vector<std::string>& v);

    const std::string& str() const { return out_; }

private:
    struct Level {
        bool object;
        bool inl;
        int count;
    };
    void before_value();
    void newline();
    std::vector<Level> stack_;
    std::string out_;
    bool afterKey_ = false;
};

std::string json_escape(std::string_view s);

} // namespace melcert

#endif
