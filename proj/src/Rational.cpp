#include "mdpcheck/Rational.h"

#include <cctype>
#include <stdexcept>

namespace mdpcheck {

namespace {

bool allDigits(std::string_view text) {
    if (text.empty()) {
        return false;
    }
    for (char c : text) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            return false;
        }
    }
    return true;
}

mpz_class pow10(unsigned long exponent) {
    mpz_class result;
    mpz_ui_pow_ui(result.get_mpz_t(), 10, exponent);
    return result;
}

}  // namespace

Rational parseRational(std::string_view text) {
    if (text.empty()) {
        throw std::invalid_argument("empty number");
    }
    bool negative = false;
    std::string_view rest = text;
    if (rest.front() == '-' || rest.front() == '+') {
        negative = rest.front() == '-';
        rest.remove_prefix(1);
    }

    Rational result;
    if (auto slash = rest.find('/'); slash != std::string_view::npos) {
        auto num = rest.substr(0, slash);
        auto den = rest.substr(slash + 1);
        if (!allDigits(num) || !allDigits(den)) {
            throw std::invalid_argument("malformed fraction '" + std::string(text) + "'");
        }
        mpz_class denominator(std::string(den), 10);
        if (denominator == 0) {
            throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
        }
        result = Rational(mpz_class(std::string(num), 10), denominator);
    } else {
        long exponent = 0;
        if (auto e = rest.find_first_of("eE"); e != std::string_view::npos) {
            auto expText = rest.substr(e + 1);
            bool expNegative = false;
            if (!expText.empty() && (expText.front() == '-' || expText.front() == '+')) {
                expNegative = expText.front() == '-';
                expText.remove_prefix(1);
            }
            if (!allDigits(expText) || expText.size() > 6) {
                throw std::invalid_argument("malformed exponent in '" + std::string(text) + "'");
            }
            exponent = std::stol(std::string(expText));
            if (expNegative) {
                exponent = -exponent;
            }
            rest = rest.substr(0, e);
        }
        std::string digits;
        if (auto dot = rest.find('.'); dot != std::string_view::npos) {
            auto intPart = rest.substr(0, dot);
            auto fracPart = rest.substr(dot + 1);
            if ((intPart.empty() && fracPart.empty()) || (!intPart.empty() && !allDigits(intPart)) || (!fracPart.empty() && !allDigits(fracPart))) {
                throw std::invalid_argument("malformed decimal '" + std::string(text) + "'");
            }
            digits = std::string(intPart) + std::string(fracPart);
            exponent -= static_cast<long>(fracPart.size());
        } else {
            if (!allDigits(rest)) {
                throw std::invalid_argument("malformed number '" + std::string(text) + "'");
            }
            digits = std::string(rest);
        }
        mpz_class mantissa(digits.empty() ? std::string("0") : digits, 10);
        if (exponent >= 0) {
            result = Rational(mantissa * pow10(static_cast<unsigned long>(exponent)));
        } else {
            result = Rational(mantissa, pow10(static_cast<unsigned long>(-exponent)));
        }
    }
    result.canonicalize();
    if (negative) {
        result = -result;
    }
    return result;
}

std::string toString(Rational const& value) {
    Rational canonical(value);
    canonical.canonicalize();
    return canonical.get_str();
}

}  // namespace mdpcheck
