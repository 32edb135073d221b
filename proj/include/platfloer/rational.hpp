#pragma once

#include <gmpxx.h>

#include <string>

namespace platfloer {

using Q = mpq_class;
using Z = mpz_class;

inline std::string to_string(const Q& q) { return q.get_str(); }
inline std::string to_string(const Z& z) { return z.get_str(); }

inline Q make_q(long num, long den = 1) {
  Q q(num, den);
  q.canonicalize();
  return q;
}

inline int sgn(const Q& q) { return ::sgn(q); }
inline int sgn(const Z& z) { return ::sgn(z); }

}  // namespace platfloer
