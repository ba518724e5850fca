#ifndef PCL_RATIONAL_HPP
#define PCL_RATIONAL_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace pcl {

using Rational = mpq_class;
using Integer = mpz_class;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Points of mismatched or unsupported dimension.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// An operation was called outside its precondition.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// A procedure that must succeed by a proven existence result ran dry.
/// Seeing this means the implementation is wrong, not the input.
class InternalError : public Error {
public:
    using Error::Error;
};

/// Canonical n/d.
Rational rat(long num, long den = 1);

/// Parses "n/d", "n" or a finite decimal such as "-0.25".
Rational parse_rational(std::string_view text);

/// Always "n/d" with d >= 1, so 3 becomes "3/1".
std::string format_rational(const Rational& r);

int sign(const Rational& r);

}  // namespace pcl

#endif
