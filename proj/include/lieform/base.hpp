#ifndef LIEFORM_BASE_HPP
#define LIEFORM_BASE_HPP

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace lieform {

/// Exact rational scalar. All dimension/rank/kernel results are computed
/// over this type; comparisons are exact.
using Rat = mpq_class;

/// Big float scalar for the star-dependent operations. Precision is set
/// globally via set_float_precision (>= 128 mantissa bits).
using Flt = mpf_class;

inline void set_float_precision(unsigned long bits) {
  if (bits < 128) throw std::invalid_argument("float precision must be >= 128 bits");
  mpf_set_default_prec(bits);
}

inline Rat rat(long num, long den = 1) {
  Rat q(num, den);
  q.canonicalize();
  return q;
}

/// Input or usage error: maps to CLI exit code 2.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A configured size cap was exceeded; the operation is skipped, not wrong.
struct GuardrailError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Size caps preventing exterior-power blowup.  `exterior_dim` guards the
/// domain dimension of exact rank/kernel computations on Lambda^k, and
/// `tensor_dim` guards dim(g (x) g_perp).
struct Limits {
  int algebra_dim = 28;
  long exterior_dim = 1200;
  long tensor_dim = 360;
};

/// Process-wide switch for the OpenMP code paths.  The serial reference
/// implementations stay available regardless (linalg.hpp, assembly).
bool parallel_enabled();
void set_parallel_enabled(bool on);

inline long binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (long i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

std::string rat_to_string(const Rat& q);
Rat rat_from_string(const std::string& s);

}  // namespace lieform

#endif
