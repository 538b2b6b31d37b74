#ifndef ORBVOL_ERR_BOUNDED_HPP
#define ORBVOL_ERR_BOUNDED_HPP

#include <string>

#include "orbvol/arith.hpp"

namespace orbvol {

// A positive real carried as its natural log together with a rigorous bound
// on the absolute error of that log.  Values spanning hundreds of orders of
// magnitude stay in log space until formatted.
struct ErrBounded {
    double log_value = 0.0;
    double log_err = 0.0;

    static ErrBounded from_log(double lv, double err);
    static ErrBounded from_double(double v, double rel_err = 4e-16);
    static ErrBounded exact_rational(const BigRat& q);  // q > 0
    static ErrBounded one() { return {0.0, 0.0}; }

    ErrBounded& operator*=(const ErrBounded& o);
    ErrBounded& operator/=(const ErrBounded& o);
    friend ErrBounded operator*(ErrBounded a, const ErrBounded& b) { return a *= b; }
    friend ErrBounded operator/(ErrBounded a, const ErrBounded& b) { return a /= b; }
    ErrBounded pow_int(long k) const;

    // exp(log_value); throws if the value cannot be represented in a double
    double value() const;
    bool representable() const;

    // result and rhs agree within the sum of their error bounds
    bool consistent_with(const ErrBounded& o) const;

    // "m.dddddde±XX" with `digits` significant digits, computed from log space
    std::string decimal_string(int digits = 6) const;
};

// Neumaier-compensated accumulator for sums of logs; the reduction order is
// fixed by the caller, so results are independent of threading.
struct LogAccumulator {
    double sum = 0.0;
    double comp = 0.0;
    double abs_sum = 0.0;
    std::size_t terms = 0;

    void add(double x);
    double total() const { return sum + comp; }
    // bound on accumulated floating-point rounding error
    double rounding_error() const;
};

}  // namespace orbvol

#endif
