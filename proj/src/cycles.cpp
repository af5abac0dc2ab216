#include "lscomp/cycles.hpp"

#include <cctype>
#include <cstdlib>

namespace lscomp {

std::string Cycles::str() const {
    if (den == 1) return std::to_string(num);
    // Render exactly when the denominator divides a power of ten.
    std::int64_t d = den;
    int tens = 0;
    while (d % 2 == 0) { d /= 2; ++tens; }
    int fives = 0;
    while (d % 5 == 0) { d /= 5; ++fives; }
    if (d != 1) return std::to_string(num) + "/" + std::to_string(den);
    int digits = tens > fives ? tens : fives;
    std::int64_t scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;
    std::int64_t scaled = num * (scale / den);
    bool neg = scaled < 0;
    if (neg) scaled = -scaled;
    std::string frac = std::to_string(scaled % scale);
    while ((int)frac.size() < digits) frac.insert(frac.begin(), '0');
    return (neg ? "-" : "") + std::to_string(scaled / scale) + "." + frac;
}

Cycles Cycles::parse(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("Cycles::parse: empty string");
    std::size_t pos = 0;
    bool neg = false;
    if (text[pos] == '+' || text[pos] == '-') {
        neg = text[pos] == '-';
        ++pos;
    }
    std::int64_t whole = 0, frac = 0, scale = 1;
    bool any = false;
    while (pos < text.size() && std::isdigit((unsigned char)text[pos])) {
        whole = whole * 10 + (text[pos] - '0');
        ++pos;
        any = true;
    }
    if (pos < text.size() && text[pos] == '.') {
        ++pos;
        while (pos < text.size() && std::isdigit((unsigned char)text[pos])) {
            if (scale > 100000000000000LL)
                throw std::invalid_argument("Cycles::parse: too many digits: " + text);
            frac = frac * 10 + (text[pos] - '0');
            scale *= 10;
            ++pos;
            any = true;
        }
    }
    if (!any || pos != text.size())
        throw std::invalid_argument("Cycles::parse: bad number: " + text);
    Cycles c(whole * scale + frac, scale);
    if (neg) c.num = -c.num;
    return c;
}

} // namespace lscomp
