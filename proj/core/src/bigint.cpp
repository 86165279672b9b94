#include "treecount/bigint.hpp"

#include <cmath>

#include "treecount/errors.hpp"

namespace treecount {

BigInt factorial(unsigned k) {
  BigInt r = 1;
  for (unsigned i = 2; i <= k; ++i) r *= i;
  return r;
}

double log2_big(const BigInt& v) {
  if (v <= 0) throw InputError("log2 of a non-positive integer");
  const unsigned msb = boost::multiprecision::msb(v);
  if (msb < 53) return std::log2(v.convert_to<double>());
  // keep the top 53 bits, the rest only perturbs the last ulp
  const unsigned shift = msb - 52;
  const BigInt top = v >> shift;
  return std::log2(top.convert_to<double>()) + static_cast<double>(shift);
}

std::string to_string(const BigInt& v) { return v.str(); }

}  // namespace treecount
