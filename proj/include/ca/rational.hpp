#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace ca {

// Exact rational number, the coefficient domain of every polynomial.
using Rat = boost::multiprecision::cpp_rational;
using Int = boost::multiprecision::cpp_int;

}  // namespace ca
