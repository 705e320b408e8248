#pragma once

// Report-precision number formatting.
//
// Printed tables round fixed-point values with ties away from zero (the
// convention the reference tables follow, visible on means like -0.625 ->
// "-0.63").  The tie decision is made on the exact decimal expansion of the
// double: 25 guard digits are more than any double needs to separate a true
// tie from a near miss at these scales.

#include <cmath>
#include <cstdio>
#include <string>

namespace emosent {

// x to d decimals, ties away from zero.  Infinities print as "Inf".
inline std::string fmt_fixed_half_away(double x, int d) {
    if (std::isinf(x)) return x > 0 ? "Inf" : "-Inf";
    if (std::isnan(x)) return "nan";
    char buf[512];
    std::snprintf(buf, sizeof buf, "%.*f", d + 25, x);
    std::string s(buf);
    const bool neg = s[0] == '-';
    if (neg) s.erase(0, 1);
    const size_t dot = s.find('.');
    std::string digits = s.substr(0, dot) + s.substr(dot + 1, static_cast<size_t>(d));
    const bool round_up = s[dot + 1 + static_cast<size_t>(d)] >= '5';
    if (round_up) {
        int i = static_cast<int>(digits.size()) - 1;
        for (; i >= 0; --i) {
            if (digits[static_cast<size_t>(i)] == '9') {
                digits[static_cast<size_t>(i)] = '0';
            } else {
                ++digits[static_cast<size_t>(i)];
                break;
            }
        }
        if (i < 0) digits.insert(digits.begin(), '1');
    }
    const size_t int_len = digits.size() - static_cast<size_t>(d);
    std::string out = digits.substr(0, int_len);
    if (d > 0) out += "." + digits.substr(int_len);
    bool all_zero = true;
    for (char c : digits)
        if (c != '0') {
            all_zero = false;
            break;
        }
    if (neg && !all_zero) out.insert(out.begin(), '-');
    return out;
}

// p to one significant figure: 0.0174 -> "0.02", 0.000372 -> "0.0004",
// 1.0 -> "1".  Assumes p in (0, 1].
inline std::string fmt_sig1(double p) {
    if (!(p > 0)) return "0";
    if (p >= 1) return "1";
    int e = static_cast<int>(std::floor(std::log10(p)));
    // two-step scaling keeps the intermediate finite for subnormal p
    const double mant = e >= -300 ? p * std::pow(10.0, -e)
                                  : (p * 1e300) * std::pow(10.0, -e - 300);
    long long m = std::llround(mant);
    if (m >= 10) {
        m = 1;
        ++e;
    }
    if (e >= 0) return std::to_string(m);
    std::string out = "0.";
    for (int k = 0; k < -e - 1; ++k) out.push_back('0');
    out.push_back(static_cast<char>('0' + m));
    return out;
}

// Round-trippable full precision.
inline std::string fmt_full(double x) {
    if (std::isinf(x)) return x > 0 ? "Inf" : "-Inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string fmt_ratio1(double x) {
    return std::isinf(x) ? (x > 0 ? "Inf" : "-Inf") : fmt_fixed_half_away(x, 1);
}

}  // namespace emosent
