#include "navier_norms/ext_rational.hpp"

#include <cctype>
#include <limits>
#include <ostream>
#include <utility>

#include "navier_norms/errors.hpp"

namespace navier_norms {

namespace {

[[noreturn]] void undefined(const char* what) {
    fail(ErrorCode::kUndefinedArithmetic, std::string("undefined extended-rational operation: ") + what);
}

mpz_class parse_integer(std::string_view digits, std::string_view whole) {
    if (digits.empty()) fail(ErrorCode::kParse, "not a rational: '" + std::string(whole) + "'");
    for (char c : digits) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            fail(ErrorCode::kParse, "not a rational: '" + std::string(whole) + "'");
        }
    }
    return mpz_class(std::string(digits), 10);
}

}  // namespace

ExtRational::ExtRational(long num, long den) {
    if (den == 0) fail(ErrorCode::kInvalidArgument, "zero denominator");
    value_ = mpq_class(num, den);
    value_.canonicalize();
}

ExtRational::ExtRational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

ExtRational ExtRational::infinity() {
    ExtRational x;
    x.infinite_ = true;
    return x;
}

ExtRational ExtRational::parse(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    const std::string_view whole = text;
    if (text == "inf" || text == "+inf" || text == "infinity" || text == "∞" || text == "Inf") {
        return infinity();
    }
    bool negative = false;
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    mpq_class q;
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        mpz_class num = parse_integer(text.substr(0, slash), whole);
        mpz_class den = parse_integer(text.substr(slash + 1), whole);
        if (den == 0) fail(ErrorCode::kParse, "zero denominator in '" + std::string(whole) + "'");
        q = mpq_class(num, den);
    } else {
        long exponent = 0;
        if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
            std::string_view exp_text = text.substr(e + 1);
            bool exp_negative = false;
            if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
                exp_negative = exp_text.front() == '-';
                exp_text.remove_prefix(1);
            }
            mpz_class magnitude = parse_integer(exp_text, whole);
            if (magnitude > 4096) fail(ErrorCode::kParse, "exponent too large in '" + std::string(whole) + "'");
            exponent = magnitude.get_si() * (exp_negative ? -1 : 1);
            text = text.substr(0, e);
        }
        std::string digits;
        long frac_digits = 0;
        if (auto dot = text.find('.'); dot != std::string_view::npos) {
            digits = std::string(text.substr(0, dot)) + std::string(text.substr(dot + 1));
            frac_digits = static_cast<long>(text.size() - dot - 1);
            if (digits.empty()) fail(ErrorCode::kParse, "not a rational: '" + std::string(whole) + "'");
        } else {
            digits = std::string(text);
        }
        mpz_class mantissa = parse_integer(digits, whole);
        const long shift = exponent - frac_digits;
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
        q = shift >= 0 ? mpq_class(mantissa * scale) : mpq_class(mantissa, scale);
    }
    q.canonicalize();
    if (negative) q = -q;
    return ExtRational(q);
}

const mpq_class& ExtRational::value() const {
    if (infinite_) undefined("finite value of +inf");
    return value_;
}

std::string ExtRational::numerator_string() const { return infinite_ ? "1" : value_.get_num().get_str(); }
std::string ExtRational::denominator_string() const { return infinite_ ? "0" : value_.get_den().get_str(); }

double ExtRational::to_double() const {
    if (infinite_) return std::numeric_limits<double>::infinity();
    return value_.get_d();
}

std::string ExtRational::to_string() const { return infinite_ ? "inf" : value_.get_str(); }

ExtRational ExtRational::reciprocal() const {
    if (infinite_) return ExtRational(0);
    if (sgn(value_) == 0) return infinity();
    return ExtRational(mpq_class(1) / value_);
}

ExtRational operator+(const ExtRational& a, const ExtRational& b) {
    if (a.infinite_ || b.infinite_) return ExtRational::infinity();
    return ExtRational(mpq_class(a.value_ + b.value_));
}

ExtRational operator-(const ExtRational& a, const ExtRational& b) {
    if (b.infinite_) undefined(a.infinite_ ? "inf - inf" : "finite - inf");
    if (a.infinite_) return a;
    return ExtRational(mpq_class(a.value_ - b.value_));
}

ExtRational operator*(const ExtRational& a, const ExtRational& b) {
    if (a.infinite_ || b.infinite_) {
        const ExtRational& other = a.infinite_ ? b : a;
        if (other.sign() == 0) undefined("0 * inf");
        if (other.sign() < 0) undefined("negative * inf");
        return ExtRational::infinity();
    }
    return ExtRational(mpq_class(a.value_ * b.value_));
}

ExtRational operator/(const ExtRational& a, const ExtRational& b) {
    if (a.infinite_ && b.infinite_) undefined("inf / inf");
    return a * b.reciprocal();
}

ExtRational ExtRational::operator-() const {
    if (infinite_) undefined("-inf");
    return ExtRational(mpq_class(-value_));
}

bool operator==(const ExtRational& a, const ExtRational& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
}

std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b) {
    if (a.infinite_ || b.infinite_) {
        if (a.infinite_ == b.infinite_) return std::strong_ordering::equal;
        return a.infinite_ ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    const int c = cmp(a.value_, b.value_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const ExtRational& x) { return os << x.to_string(); }

}  // namespace navier_norms
