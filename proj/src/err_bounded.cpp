#include "orbvol/err_bounded.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace orbvol {

ErrBounded ErrBounded::from_log(double lv, double err) {
    if (!std::isfinite(lv)) throw std::invalid_argument("ErrBounded: log value must be finite");
    if (!(err >= 0.0)) throw std::invalid_argument("ErrBounded: error bound must be >= 0");
    return {lv, err};
}

ErrBounded ErrBounded::from_double(double v, double rel_err) {
    if (!(v > 0.0)) throw std::invalid_argument("ErrBounded: value must be positive");
    return {std::log(v), rel_err + 1e-16};
}

ErrBounded ErrBounded::exact_rational(const BigRat& q) {
    if (sgn(q) <= 0) throw std::invalid_argument("ErrBounded: rational must be positive");
    double lv = log_bigrat_abs(q);
    return {lv, 4e-16 * (1.0 + std::fabs(lv))};
}

ErrBounded& ErrBounded::operator*=(const ErrBounded& o) {
    log_value += o.log_value;
    log_err += o.log_err + 1e-16 * (1.0 + std::fabs(log_value));
    return *this;
}

ErrBounded& ErrBounded::operator/=(const ErrBounded& o) {
    log_value -= o.log_value;
    log_err += o.log_err + 1e-16 * (1.0 + std::fabs(log_value));
    return *this;
}

ErrBounded ErrBounded::pow_int(long k) const {
    double lk = static_cast<double>(k);
    return {log_value * lk, log_err * std::fabs(lk) + 1e-16 * (1.0 + std::fabs(log_value * lk))};
}

bool ErrBounded::representable() const { return std::fabs(log_value) <= 700.0; }

double ErrBounded::value() const {
    if (!representable())
        throw std::overflow_error("ErrBounded::value: |log| > 700, stay in log space");
    return std::exp(log_value);
}

bool ErrBounded::consistent_with(const ErrBounded& o) const {
    return std::fabs(log_value - o.log_value) <= log_err + o.log_err;
}

std::string ErrBounded::decimal_string(int digits) const {
    if (digits < 1 || digits > 17) throw std::invalid_argument("decimal_string: digits in [1,17]");
    double log10v = log_value / M_LN10;
    double e = std::floor(log10v);
    double mant = std::pow(10.0, log10v - e);
    // rounding can push the mantissa to 10.0
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits - 1, mant);
    if (buf[0] == '1' && buf[1] == '0') {  // "10.000..."
        e += 1.0;
        std::snprintf(buf, sizeof(buf), "%.*f", digits - 1, mant / 10.0);
    }
    char out[96];
    std::snprintf(out, sizeof(out), "%se%+03d", buf, static_cast<int>(e));
    return out;
}

void LogAccumulator::add(double x) {
    // Neumaier variant of Kahan summation
    double t = sum + x;
    if (std::fabs(sum) >= std::fabs(x))
        comp += (sum - t) + x;
    else
        comp += (x - t) + sum;
    sum = t;
    abs_sum += std::fabs(x);
    ++terms;
}

double LogAccumulator::rounding_error() const {
    return 2.3e-16 * abs_sum + static_cast<double>(terms) * 1e-18;
}

}  // namespace orbvol
