#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace mf {

using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const Rational& q) { return q.str(); }

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

}  // namespace mf
