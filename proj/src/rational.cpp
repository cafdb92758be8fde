#include "wc/rational.hpp"

#include <stdexcept>

namespace wc {

Q make_q(long num, long den) {
  Q q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Q& q) { return q.get_str(); }

Q factorial_q(int n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return Q(f);
}

Q parse_q(const std::string& s) {
  Q q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("not a rational: " + s);
  q.canonicalize();
  return q;
}

bool is_integer(const Q& q) { return q.get_den() == 1; }

long to_long(const Q& q) {
  if (!is_integer(q)) throw std::domain_error("rational is not an integer: " + q.get_str());
  if (!q.get_num().fits_slong_p()) throw std::overflow_error("integer too large");
  return q.get_num().get_si();
}

}  // namespace wc
