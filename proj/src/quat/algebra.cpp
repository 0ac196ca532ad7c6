#include "qmf/quat/algebra.hpp"

namespace qmf {

namespace {

int legendre(std::int64_t a, std::int64_t p) { return kronecker_symbol(a, p); }

// split v = p^e u with p not dividing u
std::int64_t strip(std::int64_t v, std::int64_t p, int* e) {
  *e = 0;
  while (v % p == 0) {
    v /= p;
    ++*e;
  }
  return v;
}

}  // namespace

int hilbert_symbol(std::int64_t a, std::int64_t b, std::int64_t p) {
  require(a != 0 && b != 0, "hilbert_symbol: zero argument");
  if (p == 0) return (a < 0 && b < 0) ? -1 : 1;
  int ea, eb;
  std::int64_t u = strip(a, p, &ea), v = strip(b, p, &eb);
  if (p == 2) {
    auto eps = [](std::int64_t x) { return static_cast<int>(mod64((x - 1) / 2, 2)); };
    auto omg = [](std::int64_t x) {
      std::int64_t r = mod64(x, 8);
      return (r == 3 || r == 5) ? 1 : 0;
    };
    int e = eps(u) * eps(v) + ea * omg(v) + eb * omg(u);
    return (e % 2 == 0) ? 1 : -1;
  }
  int s = 1;
  if ((ea * eb) % 2 == 1 && mod64(p, 4) == 3) s = -s;
  if (eb % 2 == 1) s *= legendre(u, p);
  if (ea % 2 == 1) s *= legendre(v, p);
  return s;
}

QuaternionAlgebra build_algebra(std::int64_t n) {
  require(n >= 2 && is_squarefree(n), "build_algebra: N must be squarefree and > 1");
  const auto primes = prime_divisors(n);
  require(primes.size() % 2 == 1, "build_algebra: N must have an odd number of prime factors");
  std::int64_t odd = n % 2 == 0 ? n / 2 : n;
  for (std::int64_t bb = 1;; ++bb) {
    const std::int64_t b = -bb;
    if (!is_squarefree(bb)) continue;
    // every odd prime of N must divide ab
    const std::int64_t step = odd / gcd64(odd, bb);
    for (std::int64_t aa = step; aa <= bb; aa += step) {
      const std::int64_t a = -aa;
      if (!is_squarefree(aa) || gcd64(aa, bb) != 1) continue;
      bool ok = true;
      for (std::int64_t p : prime_divisors(2 * aa * bb)) {
        bool ram = hilbert_symbol(a, b, p) == -1;
        bool want = n % p == 0;
        if (ram != want) {
          ok = false;
          break;
        }
      }
      if (ok) return {a, b, primes, n};
    }
  }
}

}  // namespace qmf
