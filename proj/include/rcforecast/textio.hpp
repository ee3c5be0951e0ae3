#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace rcf {

/// Shortest text form that round-trips a double exactly (17 significant
/// digits); used for every float that lands in a CSV or JSON artifact.
inline std::string fmt_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline void open_or_throw(std::ofstream& out, const std::string& path) {
    out.open(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
}

/// Minimal JSON writer. nlohmann::json parses our files back; we emit by
/// hand so numeric fields carry the fixed 17-significant-digit format.
class JsonWriter {
public:
    std::string str() const { return out_.str(); }

    JsonWriter& begin_object() { return token("{", false); }
    JsonWriter& end_object() { return close("}"); }
    JsonWriter& begin_array() { return token("[", false); }
    JsonWriter& end_array() { return close("]"); }

    JsonWriter& key(const std::string& k) {
        comma();
        out_ << '"' << escape(k) << "\":";
        pending_comma_ = false;
        return *this;
    }

    JsonWriter& value(double v) { return token(fmt_g17(v), true); }
    JsonWriter& value(long v) { return token(std::to_string(v), true); }
    JsonWriter& value(int v) { return token(std::to_string(v), true); }
    JsonWriter& value(unsigned long long v) { return token(std::to_string(v), true); }
    JsonWriter& value(bool v) { return token(v ? "true" : "false", true); }
    JsonWriter& value(const std::string& v) { return token("\"" + escape(v) + "\"", true); }
    JsonWriter& value(const char* v) { return value(std::string(v)); }
    JsonWriter& null() { return token("null", true); }

    template <typename Seq>
    JsonWriter& number_array(const Seq& seq) {
        begin_array();
        for (const auto& v : seq) value(static_cast<double>(v));
        return end_array();
    }

    template <typename Seq>
    JsonWriter& integer_array(const Seq& seq) {
        begin_array();
        for (const auto& v : seq) value(static_cast<long>(v));
        return end_array();
    }

    void write_file(const std::string& path) const {
        std::ofstream out;
        open_or_throw(out, path);
        out << str() << "\n";
    }

private:
    JsonWriter& token(const std::string& t, bool is_value) {
        comma();
        out_ << t;
        pending_comma_ = is_value || t == "}" || t == "]";
        return *this;
    }
    JsonWriter& close(const char* t) {
        out_ << t;
        pending_comma_ = true;
        return *this;
    }
    void comma() {
        if (pending_comma_) out_ << ',';
        pending_comma_ = false;
    }
    static std::string escape(const std::string& s) {
        std::string r;
        for (char c : s) {
            if (c == '"' || c == '\\') r += '\\';
            r += c;
        }
        return r;
    }

    std::ostringstream out_;
    bool pending_comma_ = false;
};

/// Parsed CSV with a header row; cells stay as strings, numeric access on
/// demand. Wrong shape or non-numeric cells raise with the 1-based line.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    long column(const std::string& name) const;
    bool has_column(const std::string& name) const;
    double number(long row, long col) const;
};

CsvTable read_csv(const std::string& path);

}  // namespace rcf
