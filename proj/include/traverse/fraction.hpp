#ifndef TRAVERSE_FRACTION_HPP
#define TRAVERSE_FRACTION_HPP

#include <string>

namespace traverse {

/// Exact non-negative rational. Kept reduced with a positive denominator so
/// frequency thresholds compare without floating-point ambiguity.
struct Fraction {
    long long num = 0;
    long long den = 1;

    Fraction() = default;
    Fraction(long long n, long long d);

    /// Accepts "3/8", "0.375", "20", "20%". Throws InputError on garbage.
    static Fraction parse(const std::string& text);

    /// Nearest rational with denominator 1e9, reduced. Good enough to recover
    /// short decimals written in config files (0.2 -> 1/5).
    static Fraction from_double(double x);

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }

    bool operator==(const Fraction&) const = default;
};

/// true iff count/total >= threshold, evaluated in exact integer arithmetic.
bool meets_threshold(long long count, long long total, const Fraction& threshold);

/// Smallest support count whose frequency over `transaction_count` rows
/// reaches the threshold: ceil(threshold * transaction_count), at least 1.
long long min_support(const Fraction& threshold, long long transaction_count);

/// Frequency threshold from CLI/config text: values above 1 are read as
/// percentages ("20" == "0.2"). Result must land in (0, 1].
Fraction parse_min_frequency(const std::string& text);
Fraction min_frequency_from_double(double value);

std::string to_string(const Fraction& f);

}  // namespace traverse

#endif
