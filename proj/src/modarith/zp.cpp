#include <algorithm>
#include <cmath>
#include <numeric>

#include "dynplanar/modarith.hpp"

namespace dp {

namespace {
// Below this size thread start-up costs more than the row loop.
constexpr int kParallelCutoff = 64;
}  // namespace

Residue pow_mod(Residue a, Residue e, Residue p) {
  Residue r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mul_mod(r, a, p);
    a = mul_mod(a, a, p);
    e >>= 1;
  }
  return r;
}

Residue inv_mod(Residue a, Residue p) {
  a %= p;
  if (a == 0) throw NotInvertible("zero has no inverse");
  // Extended Euclid on signed 128-bit to stay clear of overflow.
  __int128 t = 0, nt = 1, r = static_cast<__int128>(p), nr = static_cast<__int128>(a);
  while (nr != 0) {
    __int128 q = r / nr;
    __int128 tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (r != 1) throw NotInvertible("element shares a factor with the modulus");
  if (t < 0) t += static_cast<__int128>(p);
  return static_cast<Residue>(t);
}

Residue to_residue(std::int64_t v, Residue p) {
  auto m = static_cast<std::int64_t>(v % static_cast<std::int64_t>(p));
  return static_cast<Residue>(m < 0 ? m + static_cast<std::int64_t>(p) : m);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s && witness; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) witness = false;
    }
    if (witness) return false;
  }
  return true;
}

std::vector<std::uint64_t> primes_in_window(std::uint64_t lo, std::uint64_t hi) {
  if (hi <= lo) return {};
  auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(hi))) + 1;
  std::vector<char> small(root + 1, 1);
  std::vector<std::uint64_t> base;
  for (std::uint64_t i = 2; i <= root; ++i) {
    if (!small[i]) continue;
    base.push_back(i);
    for (std::uint64_t j = i * i; j <= root; j += i) small[j] = 0;
  }
  std::vector<char> mark(hi - lo, 1);
  for (std::uint64_t q : base) {
    std::uint64_t start = std::max(q * q, (lo + q - 1) / q * q);
    for (std::uint64_t j = start; j < hi; j += q) mark[j - lo] = 0;
  }
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = std::max<std::uint64_t>(lo, 2); i < hi; ++i)
    if (mark[i - lo]) out.push_back(i);
  return out;
}

ZpMatrix ZpMatrix::identity(Residue p, int n) {
  ZpMatrix m(p, n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1 % p;
  return m;
}

ZpMatrix multiply(const ZpMatrix& a, const ZpMatrix& b, Exec exec) {
  if (a.cols() != b.rows() || a.modulus() != b.modulus()) throw std::invalid_argument("shape or modulus mismatch");
  const Residue p = a.modulus();
  ZpMatrix c(p, a.rows(), b.cols());
  const int n = a.rows();
  auto body = [&](int i) {
    auto out = c.row(i);
    for (int k = 0; k < a.cols(); ++k) {
      Residue aik = a.at(i, k);
      if (aik == 0) continue;
      auto brow = b.row(k);
      for (int j = 0; j < b.cols(); ++j) out[static_cast<std::size_t>(j)] =
          add_mod(out[static_cast<std::size_t>(j)], mul_mod(aik, brow[static_cast<std::size_t>(j)], p), p);
    }
  };
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static) if (n >= kParallelCutoff)
    for (int i = 0; i < n; ++i) body(i);
  } else {
    for (int i = 0; i < n; ++i) body(i);
  }
  return c;
}

ZpMatrix invert_gauss(const ZpMatrix& m, Exec exec) {
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix is not square");
  const Residue p = m.modulus();
  const int n = m.rows();
  ZpMatrix a = m;
  ZpMatrix inv = ZpMatrix::identity(p, n);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (a.at(r, col) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) throw NotInvertible("matrix is singular mod p");
    if (piv != col) {
      std::swap_ranges(a.row(piv).begin(), a.row(piv).end(), a.row(col).begin());
      std::swap_ranges(inv.row(piv).begin(), inv.row(piv).end(), inv.row(col).begin());
    }
    const Residue s = inv_mod(a.at(col, col), p);
    for (auto& x : a.row(col)) x = mul_mod(x, s, p);
    for (auto& x : inv.row(col)) x = mul_mod(x, s, p);
    auto eliminate = [&](int r) {
      if (r == col) return;
      const Residue f = a.at(r, col);
      if (f == 0) return;
      auto ar = a.row(r), ac = a.row(col), ir = inv.row(r), ic = inv.row(col);
      for (int j = 0; j < n; ++j) {
        auto k = static_cast<std::size_t>(j);
        ar[k] = sub_mod(ar[k], mul_mod(f, ac[k], p), p);
        ir[k] = sub_mod(ir[k], mul_mod(f, ic[k], p), p);
      }
    };
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static) if (n >= kParallelCutoff)
      for (int r = 0; r < n; ++r) eliminate(r);
    } else {
      for (int r = 0; r < n; ++r) eliminate(r);
    }
  }
  return inv;
}

}  // namespace dp
