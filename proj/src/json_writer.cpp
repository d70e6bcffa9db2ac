#include "melcert/json_writer.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "melcert/numfmt.hpp"

namespace melcert {

std::string json_escape(std::string_view s)
{
    std::string r = "\"";
    for (char c : s) {
        switch (c) {
        case '"': r += "\\\""; break;
        case '\\': r += "\\\\"; break;
        case '\n': r += "\\n"; break;
        case '\t': r += "\\t"; break;
        case '\r': r += "\\r"; break;
        default:
            if (static_cast<unsigned char>(c) < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof buf, "\\u%04x", c);
                r += buf;
            } else {
                r += c;
            }
        }
    }
    return r + "\"";
}

void JsonWriter::newline()
{
    out_ += '\n';
    out_.append(2 * stack_.size(), ' ');
}

void JsonWriter::before_value()
{
    if (afterKey_) {
        afterKey_ = false;
        return;
    }
    if (stack_.empty()) return;
    Level& l = stack_.back();
    if (l.object) throw std::logic_error("JsonWriter: value without key inside object");
    if (l.count++ > 0) out_ += l.inl ? ", " : ",";
    if (!l.inl) newline();
}

JsonWriter& JsonWriter::key(std::string_view k)
{
    if (stack_.empty() || !stack_.back().object) throw std::logic_error("JsonWriter: key outside object");
    Level& l = stack_.back();
    if (l.count++ > 0) out_ += ',';
    newline();
    out_ += json_escape(k);
    out_ += ": ";
    afterKey_ = true;
    return *this;
}

JsonWriter& JsonWriter::begin_object()
{
    before_value();
    out_ += '{';
    stack_.push_back({true, false, 0});
    return *this;
}

JsonWriter& JsonWriter::end_object()
{
    if (stack_.empty() || !stack_.back().object) throw std::logic_error("JsonWriter: unbalanced object");
    bool empty = stack_.back().count == 0;
    stack_.pop_back();
    if (!empty) newline();
    out_ += '}';
    if (stack_.empty()) out_ += '\n';
    return *this;
}

JsonWriter& JsonWriter::begin_array(bool multiline)
{
    before_value();
    out_ += '[';
    stack_.push_back({false, !multiline, 0});
    return *this;
}

JsonWriter& JsonWriter::end_array()
{
    if (stack_.empty() || stack_.back().object) throw std::logic_error("JsonWriter: unbalanced array");
    Level l = stack_.back();
    stack_.pop_back();
    if (!l.inl && l.count > 0) newline();
    out_ += ']';
    return *this;
}

JsonWriter& JsonWriter::value(double x)
{
    before_value();
    out_ += std::isfinite(x) ? format_double(x) : "null";
    return *this;
}

JsonWriter& JsonWriter::value(long long x)
{
    before_value();
    out_ += std::to_string(x);
    return *this;
}

JsonWriter& JsonWriter::value(bool b)
{
    before_value();
    out_ += b ? "true" : "false";
    return *this;
}

JsonWriter& JsonWriter::value(std::string_view s)
{
    before_value();
    out_ += json_escape(s);
    return *this;
}

JsonWriter& JsonWriter::null()
{
    before_value();
    out_ += "null";
    return *this;
}

JsonWriter& JsonWriter::value(const Interval& x)
{
    begin_array();
    value(x.lo());
    value(x.hi());
    return end_array();
}

JsonWriter& JsonWriter::value(const IntervalBox& b)
{
    begin_array();
    for (const auto& x : b) value(x);
    return end_array();
}

JsonWriter& JsonWriter::value(const IntervalMatrix& m)
{
    begin_array();
    for (std::size_t i = 0; i < m.rows(); ++i) value(m.row(i));
    return end_array();
}

JsonWriter& JsonWriter::value(const std::vector<double>& v)
{
    begin_array();
    for (double x : v) value(x);
    return end_array();
}

JsonWriter& JsonWriter::value(const std::vector<std::string>& v)
{
    begin_array(true);
    for (const auto& s : v) value(std::string_view(s));
    return end_array();
}

} // namespace melcert
