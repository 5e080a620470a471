#include "mathieu/real.hpp"

#include <cctype>
#include <cstdio>
#include <stdexcept>

namespace mathieu {

std::string RealTraits<double>::to_string(double x, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*e", digits > 0 ? digits - 1 : 0, x);
    return buf;
}

DoubleDouble DoubleDouble::from_string(const std::string& s) {
    std::size_t i = 0;
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    bool neg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
    DoubleDouble m = 0.0;
    int frac = 0;
    bool seen_point = false, seen_digit = false;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            m = m * DoubleDouble(10.0) + DoubleDouble(double(c - '0'));
            if (seen_point) ++frac;
            seen_digit = true;
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (!seen_digit) throw std::invalid_argument("not a number: " + s);
    int e = 0;
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        std::size_t used = 0;
        e = std::stoi(s.substr(i + 1), &used);
        i += 1 + used;
    }
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i != s.size()) throw std::invalid_argument("trailing characters in number: " + s);
    DoubleDouble r = m * pow10<DoubleDouble>(e - frac);
    return neg ? -r : r;
}

std::string DoubleDouble::to_string(int digits) const {
    if (digits < 1) digits = 1;
    if (!std::isfinite(hi)) return std::to_string(hi);
    if (hi == 0.0) {
        std::string out = "0.";
        out.append(static_cast<std::size_t>(digits - 1), '0');
        return out + "e+00";
    }
    DoubleDouble r = abs(*this);
    int e = static_cast<int>(std::floor(std::log10(r.hi)));
    r = r / pow10<DoubleDouble>(e);
    if (r.hi >= 10.0) { r = r / DoubleDouble(10.0); ++e; }
    if (r.hi < 1.0) { r = r * DoubleDouble(10.0); --e; }
    std::string d;
    for (int k = 0; k <= digits; ++k) {
        int v = static_cast<int>(std::floor(r.hi));
        if (v < 0) v = 0;
        if (v > 9) v = 9;
        d.push_back(static_cast<char>('0' + v));
        r = (r - DoubleDouble(double(v))) * DoubleDouble(10.0);
    }
    // round on the extra digit
    bool up = d.back() >= '5';
    d.pop_back();
    for (int k = digits - 1; up && k >= 0; --k) {
        if (d[k] == '9') {
            d[k] = '0';
        } else {
            ++d[k];
            up = false;
        }
    }
    if (up) {
        d.insert(d.begin(), '1');
        d.pop_back();
        ++e;
    }
    std::string out = hi < 0.0 ? "-" : "";
    out += d[0];
    if (digits > 1) out += "." + d.substr(1);
    char buf[16];
    std::snprintf(buf, sizeof buf, "e%+03d", e);
    return out + buf;
}

}  // namespace mathieu
