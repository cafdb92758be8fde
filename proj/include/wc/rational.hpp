#pragma once
// Exact rationals backed by GMP.

#include <gmpxx.h>

#include <string>

namespace wc {

using Q = mpq_class;

Q make_q(long num, long den = 1);
std::string to_string(const Q& q);
Q factorial_q(int n);
// parses "3", "-1/2"
Q parse_q(const std::string& s);
bool is_integer(const Q& q);
long to_long(const Q& q);

}  // namespace wc
