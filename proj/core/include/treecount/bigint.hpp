#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace treecount {

using BigInt = boost::multiprecision::cpp_int;

BigInt factorial(unsigned k);

// log2 of a positive integer without overflowing a double on the way.
double log2_big(const BigInt& v);

std::string to_string(const BigInt& v);

}  // namespace treecount
