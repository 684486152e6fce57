#include "sinr/scalar.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>

namespace sinr {

namespace {

struct DecimalParts {
    bool neg = false;
    std::string digits;  // integer+fraction digits, no dot
    long frac = 0;       // digits after the dot
    long exp = 0;        // base-10 exponent
};

DecimalParts split_decimal(const std::string& text) {
    DecimalParts out;
    size_t i = 0;
    const size_t n = text.size();
    if (n == 0) throw ParseError("empty decimal string");
    if (text[i] == '+' || text[i] == '-') {
        out.neg = text[i] == '-';
        ++i;
    }
    bool any_digit = false;
    while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) {
        out.digits.push_back(text[i]);
        any_digit = true;
        ++i;
    }
    if (i < n && text[i] == '.') {
        ++i;
        while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) {
            out.digits.push_back(text[i]);
            ++out.frac;
            any_digit = true;
            ++i;
        }
    }
    if (!any_digit) throw ParseError("no digits in decimal string '" + text + "'");
    if (i < n && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        bool eneg = false;
        if (i < n && (text[i] == '+' || text[i] == '-')) {
            eneg = text[i] == '-';
            ++i;
        }
        if (i == n) throw ParseError("dangling exponent in '" + text + "'");
        long e = 0;
        while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) {
            e = e * 10 + (text[i] - '0');
            if (e > 1000000) throw ParseError("exponent out of range in '" + text + "'");
            ++i;
        }
        out.exp = eneg ? -e : e;
    }
    if (i != n) throw ParseError("trailing characters in decimal string '" + text + "'");
    if (out.digits.empty()) out.digits = "0";
    return out;
}

}  // namespace

Rat rat_from_decimal(const std::string& text) {
    DecimalParts p = split_decimal(text);
    mpz_class mant(p.digits, 10);
    if (p.neg) mant = -mant;
    long shift = p.exp - p.frac;
    Rat r(mant);
    if (shift > 0) {
        mpz_class s;
        mpz_ui_pow_ui(s.get_mpz_t(), 10, static_cast<unsigned long>(shift));
        r *= Rat(s);
    } else if (shift < 0) {
        mpz_class s;
        mpz_ui_pow_ui(s.get_mpz_t(), 10, static_cast<unsigned long>(-shift));
        r /= Rat(s);
    }
    r.canonicalize();
    return r;
}

int decimal_places(const std::string& text) {
    DecimalParts p = split_decimal(text);
    long places = p.frac - p.exp;
    return places > 0 ? static_cast<int>(places) : 0;
}

double parse_double(const std::string& text) {
    char* end = nullptr;
    double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || (end && *end != '\0'))
        throw ParseError("bad numeric string '" + text + "'");
    return v;
}

Rat pow10_rat(int k) {
    mpz_class s;
    mpz_ui_pow_ui(s.get_mpz_t(), 10, static_cast<unsigned long>(k >= 0 ? k : -k));
    return k >= 0 ? Rat(s) : Rat(1) / Rat(s);
}

std::string format_quantity(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_quantity(const Rat& v) {
    return format_quantity(v.get_d());
}

}  // namespace sinr
