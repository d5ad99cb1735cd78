#include "twistlab/rational.hpp"

#include "twistlab/errors.hpp"

#include <cctype>

namespace twistlab {

namespace {

BigInt parse_integer(const std::string& text) {
    if (text.empty()) throw DomainError("empty integer");
    std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
    if (start == text.size()) throw DomainError("bad integer '" + text + "'");
    for (std::size_t i = start; i < text.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(text[i])))
            throw DomainError("bad integer '" + text + "'");
    BigInt v(text.substr(start));
    return text[0] == '-' ? BigInt(-v) : v;
}

}  // namespace

Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        BigInt num = parse_integer(text.substr(0, slash));
        BigInt den = parse_integer(text.substr(slash + 1));
        if (den == 0) throw DomainError("zero denominator in '" + text + "'");
        return Rational(num, den);
    }
    auto dot = text.find('.');
    if (dot == std::string::npos) return Rational(parse_integer(text));
    std::string whole = text.substr(0, dot);
    std::string frac = text.substr(dot + 1);
    bool negative = !whole.empty() && whole[0] == '-';
    if (whole.empty() || whole == "-" || whole == "+") whole += "0";
    BigInt scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    BigInt w = parse_integer(whole);
    BigInt f = frac.empty() ? BigInt(0) : parse_integer(frac);
    if (w < 0) w = -w;
    Rational r = Rational(w) + Rational(f, scale);
    return negative ? Rational(-r) : r;
}

std::string to_string(const Rational& r) {
    const BigInt num = boost::multiprecision::numerator(r);
    const BigInt den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace twistlab
