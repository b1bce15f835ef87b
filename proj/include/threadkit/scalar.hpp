#ifndef THREADKIT_SCALAR_HPP
#define THREADKIT_SCALAR_HPP

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace threadkit {

// Exact rational coordinate field. All combinatorial decisions go through it.
using Scalar = mpq_class;

inline int sign(const Scalar& s) { return sgn(s); }

inline double to_double(const Scalar& s) { return s.get_d(); }

// Parses "12", "-3.25", "1e-3", "2.5E4" or "7/9" exactly. Throws std::invalid_argument.
Scalar parse_scalar(std::string_view text);

// Integers print bare, terminating decimals print as decimals, anything else as "p/q".
// parse_scalar(format_scalar(x)) == x for every x.
std::string format_scalar(const Scalar& s);

// Exact rational value of a finite double.
Scalar from_double(double d);

}  // namespace threadkit

#endif
