#include "grouprank/numeric.hpp"

#include <limits>

#include "grouprank/errors.hpp"

namespace grouprank {

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; static_cast<long long>(d) * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::pair<int, int>> factorize(int n) {
  if (n < 1) throw InvalidInput("factorize: argument must be positive");
  std::vector<std::pair<int, int>> out;
  for (int d = 2; static_cast<long long>(d) * d <= n; ++d) {
    if (n % d == 0) {
      int e = 0;
      while (n % d == 0) n /= d, ++e;
      out.emplace_back(d, e);
    }
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::vector<int> prime_divisors(int n) {
  std::vector<int> ps;
  for (auto& [p, e] : factorize(n)) ps.push_back(p);
  return ps;
}

int p_part(int n, int p) {
  int q = 1;
  while (n % p == 0) n /= p, q *= p;
  return q;
}

int ceil_log2(int r) {
  if (r < 1) throw InvalidInput("ceil_log2: argument must be >= 1");
  int k = 0;
  while ((1 << k) < r) ++k;
  return k;
}

long long ipow(long long b, int e) {
  if (e < 0) throw InvalidInput("ipow: negative exponent");
  long long r = 1;
  for (int i = 0; i < e; ++i) {
    if (b != 0 && r > std::numeric_limits<long long>::max() / b)
      throw InvalidInput("ipow: overflow");
    r *= b;
  }
  return r;
}

int ilog_exact(long long n, int p) {
  if (n < 1 || p < 2) throw InvalidInput("ilog_exact: bad arguments");
  int k = 0;
  while (n % p == 0) n /= p, ++k;
  if (n != 1) throw InvalidInput("ilog_exact: not an exact power of " + std::to_string(p));
  return k;
}

int scalar_of_order(int p, int q) {
  if (!is_prime(p) || !is_prime(q) || (p - 1) % q != 0)
    throw InvalidInput("scalar_of_order: need primes with q | p-1");
  for (int x = 2; x < p; ++x) {
    long long y = x;
    int o = 1;
    while (y != 1) {
      y = (y * x) % p;
      ++o;
    }
    if (o == q) return x;
  }
  throw InvalidInput("scalar_of_order: no element found");  // unreachable for valid input
}

}  // namespace grouprank
