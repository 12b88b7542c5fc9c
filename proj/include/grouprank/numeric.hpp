#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace grouprank {

bool is_prime(int n);

/// Prime factorization with ascending primes: n -> [(p, multiplicity)].
std::vector<std::pair<int, int>> factorize(int n);

std::vector<int> prime_divisors(int n);

/// Largest power of p dividing n.
int p_part(int n, int p);

/// ceil(log2 r) for r >= 1.
int ceil_log2(int r);

/// b^e with overflow detection; throws InvalidInput on overflow.
long long ipow(long long b, int e);

/// log_p n for an exact power, otherwise throws InvalidInput.
int ilog_exact(long long n, int p);

/// Smallest integer in [2, p) of multiplicative order q modulo the prime
/// p; requires q | p - 1.
int scalar_of_order(int p, int q);

}  // namespace grouprank
