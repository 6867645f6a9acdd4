#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "darboux/errors.hpp"

// Deterministic serialization helpers: 17-significant-digit numbers, a
// comma-tracking JSON builder, and a minimal SVG scatter/polyline page.
// Output bytes depend only on the data passed in.

namespace darboux::emit {

/// Shortest round-trip decimal form, lowercase exponent, never NaN/inf.
inline std::string fmt17(double v) {
    if (!std::isfinite(v))
        throw DomainError("refusing to serialize a non-finite number");
    if (v == 0.0) v = 0.0;  // collapse -0
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string fmt_px(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

inline std::string json_quote(std::string_view s) {
    std::string out = "\"";
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
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    out += '"';
    return out;
}

/// Append-only JSON document builder; keys and elements appear exactly in
/// call order, so byte output is deterministic.
class JsonBuf {
public:
    JsonBuf& obj_begin() { open('{'); return *this; }
    JsonBuf& obj_end() { close('}'); return *this; }
    JsonBuf& arr_begin() { open('['); return *this; }
    JsonBuf& arr_end() { close(']'); return *this; }

    JsonBuf& key(std::string_view k) {
        comma();
        out_ += json_quote(k);
        out_ += ':';
        have_key_ = true;
        return *this;
    }

    JsonBuf& num(double v) { return raw(fmt17(v)); }
    JsonBuf& integer(long long v) { return raw(std::to_string(v)); }
    JsonBuf& str(std::string_view s) { return raw(json_quote(s)); }
    JsonBuf& boolean(bool b) { return raw(b ? "true" : "false"); }
    JsonBuf& null() { return raw("null"); }

    const std::string& out() const { return out_; }

private:
    void comma() {
        if (have_key_) return;
        if (!first_.empty()) {
            if (!first_.back()) out_ += ',';
            first_.back() = false;
        }
    }

    void open(char c) {
        comma();
        have_key_ = false;
        out_ += c;
        first_.push_back(true);
    }

    void close(char c) {
        first_.pop_back();
        out_ += c;
    }

    JsonBuf& raw(std::string_view s) {
        comma();
        have_key_ = false;
        out_ += s;
        return *this;
    }

    std::string out_;
    std::vector<bool> first_;
    bool have_key_ = false;
};

// ---------------------------------------------------------------------------

using PlanePoint = std::pair<double, double>;

/// 800x800 page, data autoscaled into a 5% margin, polylines drawn in order,
/// markers as fixed-radius circles. The y axis points up.
inline std::string svg_page(const std::vector<std::vector<PlanePoint>>& polylines,
                            const std::vector<PlanePoint>& markers,
                            std::string_view x_label, std::string_view y_label) {
    const double size = 800.0, margin = 0.05 * size;

    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    auto absorb = [&](const PlanePoint& p) {
        xmin = std::min(xmin, p.first);
        xmax = std::max(xmax, p.first);
        ymin = std::min(ymin, p.second);
        ymax = std::max(ymax, p.second);
    };
    std::size_t total = markers.size();
    for (const auto& line : polylines) {
        total += line.size();
        for (const auto& p : line) absorb(p);
    }
    for (const auto& p : markers) absorb(p);
    if (total == 0) throw DomainError("svg_page: nothing to draw");

    double xspan = xmax - xmin, yspan = ymax - ymin;
    if (xspan < 1e-12) { xmin -= 0.5; xspan = 1.0; }
    if (yspan < 1e-12) { ymin -= 0.5; yspan = 1.0; }
    double scale = (size - 2.0 * margin) / std::max(xspan, yspan);
    // center the shorter direction
    double xpad = margin + 0.5 * ((size - 2.0 * margin) - scale * xspan);
    double ypad = margin + 0.5 * ((size - 2.0 * margin) - scale * yspan);
    auto X = [&](double x) { return xpad + (x - xmin) * scale; };
    auto Y = [&](double y) { return size - (ypad + (y - ymin) * scale); };

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 800\">\n";
    s += "<rect width=\"800\" height=\"800\" fill=\"#ffffff\"/>\n";
    for (const auto& line : polylines) {
        if (line.empty()) continue;
        if (line.size() == 1) {
            s += "<circle cx=\"" + fmt_px(X(line[0].first)) + "\" cy=\"" +
                 fmt_px(Y(line[0].second)) + "\" r=\"2\" fill=\"#2a6f97\"/>\n";
            continue;
        }
        s += "<polyline fill=\"none\" stroke=\"#2a6f97\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (i) s += ' ';
            s += fmt_px(X(line[i].first));
            s += ',';
            s += fmt_px(Y(line[i].second));
        }
        s += "\"/>\n";
    }
    for (const auto& m : markers) {
        s += "<circle cx=\"" + fmt_px(X(m.first)) + "\" cy=\"" + fmt_px(Y(m.second)) +
             "\" r=\"4\" fill=\"none\" stroke=\"#c1121f\" stroke-width=\"2\"/>\n";
    }
    s += "<text x=\"770\" y=\"792\" font-size=\"14\" text-anchor=\"end\" fill=\"#555\">" +
         std::string(x_label) + "</text>\n";
    s += "<text x=\"10\" y=\"20\" font-size=\"14\" fill=\"#555\">" +
         std::string(y_label) + "</text>\n";
    s += "</svg>\n";
    return s;
}

}  // namespace darboux::emit
