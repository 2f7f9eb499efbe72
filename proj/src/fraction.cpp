#include "traverse/fraction.hpp"

#include <cctype>
#include <cmath>
#include <numeric>

#include "traverse/errors.hpp"

namespace traverse {

Fraction::Fraction(long long n, long long d) : num(n), den(d) {
    if (den == 0) throw InputError("fraction with zero denominator");
    if (num < 0 || den < 0) throw InputError("fraction must be non-negative");
    const long long g = std::gcd(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

static long long parse_ll(const std::string& text) {
    if (text.empty()) throw InputError("empty number");
    for (char c : text)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw InputError("bad number '" + text + "'");
    return std::stoll(text);
}

Fraction Fraction::parse(const std::string& raw) {
    std::string text = raw;
    bool percent = false;
    if (!text.empty() && text.back() == '%') {
        percent = true;
        text.pop_back();
    }
    if (text.empty()) throw InputError("empty fraction");

    Fraction f;
    if (auto slash = text.find('/'); slash != std::string::npos) {
        f = Fraction(parse_ll(text.substr(0, slash)), parse_ll(text.substr(slash + 1)));
    } else if (auto dot = text.find('.'); dot != std::string::npos) {
        const std::string whole = text.substr(0, dot);
        const std::string frac = text.substr(dot + 1);
        if (frac.size() > 15) throw InputError("too many decimal digits in '" + raw + "'");
        long long den = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
        const long long w = whole.empty() ? 0 : parse_ll(whole);
        const long long p = frac.empty() ? 0 : parse_ll(frac);
        f = Fraction(w * den + p, den);
    } else {
        f = Fraction(parse_ll(text), 1);
    }
    if (percent) f = Fraction(f.num, f.den * 100);
    return f;
}

Fraction Fraction::from_double(double x) {
    if (x < 0 || !std::isfinite(x)) throw InputError("fraction must be a finite non-negative number");
    constexpr long long scale = 1'000'000'000;
    return Fraction(std::llround(x * static_cast<double>(scale)), scale);
}

bool meets_threshold(long long count, long long total, const Fraction& threshold) {
    // count/total >= num/den  <=>  count*den >= num*total  (total, den > 0)
    return count * threshold.den >= threshold.num * total;
}

long long min_support(const Fraction& threshold, long long transaction_count) {
    const long long raw = (threshold.num * transaction_count + threshold.den - 1) / threshold.den;
    return raw < 1 ? 1 : raw;
}

static Fraction normalize_min_frequency(Fraction f) {
    if (f.num > f.den) f = Fraction(f.num, f.den * 100);  // percent-style value
    if (f.num == 0 || f.num > f.den)
        throw InputError("minimum frequency must be in (0, 1], got " + to_string(f));
    return f;
}

Fraction parse_min_frequency(const std::string& text) {
    return normalize_min_frequency(Fraction::parse(text));
}

Fraction min_frequency_from_double(double value) {
    return normalize_min_frequency(Fraction::from_double(value));
}

std::string to_string(const Fraction& f) {
    if (f.den == 1) return std::to_string(f.num);
    return std::to_string(f.num) + "/" + std::to_string(f.den);
}

}  // namespace traverse
