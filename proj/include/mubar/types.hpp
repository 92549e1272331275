#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace mubar {

// All arithmetic in the core is exact; no floating point anywhere.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

}  // namespace mubar
