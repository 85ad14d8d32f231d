#include "qrd/schur_weyl.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <string>

namespace qrd {

namespace {

Partition trimmed(const Partition& p) {
  Partition out;
  for (int r : p) {
    if (r < 0) throw PartitionMismatch("partition rows must be nonnegative");
    if (r > 0) out.push_back(r);
  }
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (out[i] > out[i - 1]) throw PartitionMismatch("partition rows must be weakly decreasing");
  }
  return out;
}

int weight(const Partition& p) { return std::accumulate(p.begin(), p.end(), 0); }

long long factorial(int n) {
  long long f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

void enumerate_rec(int remaining, int max_part, int depth_left, Partition& prefix,
                   std::vector<Partition>& out, int d) {
  if (remaining == 0) {
    Partition p = prefix;
    p.resize(d, 0);
    out.push_back(std::move(p));
    return;
  }
  if (depth_left == 0) return;
  for (int part = std::min(remaining, max_part); part >= 1; --part) {
    prefix.push_back(part);
    enumerate_rec(remaining - part, part, depth_left - 1, prefix, out, d);
    prefix.pop_back();
  }
}

// Removing a rim hook of length len spanning rows i..k leaves
//   rows'[r] = rows[r+1] - 1   for i <= r < k,
//   rows'[k] = rows[i] - len + (k - i),
// and the removal is admissible iff the result is again a partition.
// Returns true and fills `rest` when admissible; height is k - i.
bool remove_rim_hook(const Partition& rows, int i, int k, int len, Partition& rest) {
  const int m = static_cast<int>(rows.size());
  rest = rows;
  for (int r = i; r < k; ++r) rest[r] = rows[r + 1] - 1;
  rest[k] = rows[i] - len + (k - i);
  if (rest[k] < 0) return false;
  for (int r = 0; r + 1 < m; ++r) {
    if (rest[r] < rest[r + 1]) return false;
  }
  return true;
}

std::string memo_key(const Partition& rows, const Partition& cycles, std::size_t from) {
  std::ostringstream key;
  for (int r : rows) key << r << ',';
  key << '|';
  for (std::size_t i = from; i < cycles.size(); ++i) key << cycles[i] << ',';
  return key.str();
}

long long mn_character(const Partition& rows, const Partition& cycles, std::size_t from,
                       std::map<std::string, long long>& memo) {
  if (from == cycles.size()) return rows.empty() ? 1 : 0;
  const std::string key = memo_key(rows, cycles, from);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;

  const int len = cycles[from];
  const int m = static_cast<int>(rows.size());
  long long total = 0;
  for (int i = 0; i < m; ++i) {
    for (int k = i; k < m; ++k) {
      Partition rest;
      if (!remove_rim_hook(rows, i, k, len, rest)) continue;
      const long long sign = ((k - i) % 2 == 0) ? 1 : -1;
      total += sign * mn_character(trimmed(rest), cycles, from + 1, memo);
    }
  }
  memo[key] = total;
  return total;
}

Partition cycle_type_of(const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size());
  std::vector<bool> seen(n, false);
  Partition type;
  for (int i = 0; i < n; ++i) {
    if (seen[i]) continue;
    int len = 0, j = i;
    while (!seen[j]) {
      seen[j] = true;
      j = perm[j];
      ++len;
    }
    type.push_back(len);
  }
  std::sort(type.rbegin(), type.rend());
  return type;
}

long long ipow(long long base, int e) {
  long long r = 1;
  while (e-- > 0) r *= base;
  return r;
}

void check_work_cap(int n, int d, const char* who) {
  const double dn = std::pow(static_cast<double>(d), n);
  if (dn > config().dim_cap) {
    throw DimensionCap(std::string(who) + ": d^n exceeds the dimension cap");
  }
  double work = dn;
  for (int k = 2; k <= n; ++k) work *= k;
  if (work > config().perm_work_cap) {
    throw DimensionCap(std::string(who) + ": n! d^n exceeds the permutation work cap");
  }
}

}  // namespace

std::vector<Partition> enumerate_young_diagrams(int n, int d) {
  if (n < 1 || d < 1) throw PartitionMismatch("enumerate_young_diagrams: n, d must be >= 1");
  std::vector<Partition> out;
  Partition prefix;
  enumerate_rec(n, n, d, prefix, out, d);
  std::sort(out.begin(), out.end(), std::greater<Partition>());
  return out;
}

long long dim_sym_irrep(const Partition& lambda) {
  const Partition rows = trimmed(lambda);
  const int n = weight(rows);
  if (n == 0) return 1;
  std::vector<int> cols(rows[0], 0);  // conjugate partition
  for (int r : rows) {
    for (int c = 0; c < r; ++c) ++cols[c];
  }
  long long hook_product = 1;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (int j = 0; j < rows[i]; ++j) {
      hook_product *= (rows[i] - j) + (cols[j] - static_cast<int>(i)) - 1;
    }
  }
  return factorial(n) / hook_product;  // exact: the hook product divides n!
}

long long dim_gl_irrep(const Partition& lambda, int d) {
  const Partition rows = trimmed(lambda);
  if (static_cast<int>(rows.size()) > d) {
    throw PartitionMismatch("dim_gl_irrep: partition has more than d parts");
  }
  Partition padded = rows;
  padded.resize(d, 0);
  long long num = 1, den = 1;
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      num *= padded[i] - padded[j] + j - i;
      den *= j - i;
    }
  }
  return num / den;
}

long long sym_character(const Partition& lambda, const Partition& cycle_type) {
  const Partition rows = trimmed(lambda);
  const Partition cycles = trimmed(cycle_type);
  if (weight(rows) != weight(cycles)) {
    throw PartitionMismatch("sym_character: diagram and cycle type partition different n");
  }
  std::map<std::string, long long> memo;
  return mn_character(rows, cycles, 0, memo);
}

Matrix permutation_operator(const std::vector<int>& perm, int d) {
  const int n = static_cast<int>(perm.size());
  std::vector<bool> hit(n, false);
  std::vector<int> inv(n);
  for (int i = 0; i < n; ++i) {
    if (perm[i] < 0 || perm[i] >= n || hit[perm[i]]) {
      throw InputError("permutation_operator: not a permutation of 0..n-1");
    }
    hit[perm[i]] = true;
    inv[perm[i]] = i;
  }
  long long dim = ipow(d, n);
  if (dim > config().dim_cap) {
    throw DimensionCap("permutation_operator: d^n exceeds the dimension cap");
  }
  Matrix U = Matrix::Zero(dim, dim);
  std::vector<int> digits(n), permuted(n);
  for (long long col = 0; col < dim; ++col) {
    long long rem = col;
    for (int j = n - 1; j >= 0; --j) {
      digits[j] = static_cast<int>(rem % d);
      rem /= d;
    }
    for (int j = 0; j < n; ++j) permuted[j] = digits[inv[j]];
    long long row = 0;
    for (int j = 0; j < n; ++j) row = row * d + permuted[j];
    U(row, col) = 1.0;
  }
  return U;
}

IsotypicDecomposition isotypic_projections(int n, int d) {
  check_work_cap(n, d, "isotypic_projections");
  const long long dim = ipow(d, n);
  const std::vector<Partition> diagrams = enumerate_young_diagrams(n, d);

  // Class sums: C_t = sum over permutations of cycle type t of U(pi),
  // accumulated column by column (each U(pi) has one entry per column).
  std::map<Partition, Matrix> class_sums;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> inv(n), digits(n), permuted(n);
  do {
    for (int i = 0; i < n; ++i) inv[perm[i]] = i;
    auto [it, fresh] = class_sums.try_emplace(cycle_type_of(perm), Matrix::Zero(dim, dim));
    Matrix& C = it->second;
    for (long long col = 0; col < dim; ++col) {
      long long rem = col;
      for (int j = n - 1; j >= 0; --j) {
        digits[j] = static_cast<int>(rem % d);
        rem /= d;
      }
      long long row = 0;
      for (int j = 0; j < n; ++j) row = row * d + digits[inv[j]];
      C(row, col) += 1.0;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  IsotypicDecomposition out;
  out.n = n;
  out.d = d;
  const double nfact = static_cast<double>(factorial(n));
  for (const Partition& lambda : diagrams) {
    IsotypicComponent comp;
    comp.lambda = lambda;
    comp.dim_sym = dim_sym_irrep(lambda);
    comp.dim_gl = dim_gl_irrep(lambda, d);
    Matrix P = Matrix::Zero(dim, dim);
    for (const auto& [type, C] : class_sums) {
      const long long chi = sym_character(lambda, type);
      if (chi != 0) P += (static_cast<double>(chi)) * C;
    }
    comp.projector = (static_cast<double>(comp.dim_sym) / nfact) * P;
    out.components.push_back(std::move(comp));
  }
  return out;
}

DensityOperator universal_symmetric_state(int n, int d) {
  const IsotypicDecomposition dec = isotypic_projections(n, d);
  const double y = static_cast<double>(dec.components.size());
  Matrix sigma = Matrix::Zero(ipow(d, n), ipow(d, n));
  for (const IsotypicComponent& comp : dec.components) {
    sigma += comp.projector / (y * static_cast<double>(comp.dim_sym * comp.dim_gl));
  }
  return DensityOperator(HermitianOperator(std::move(sigma)));
}

PinchingMap universal_pinching(int n, int d) {
  return pinching_from(universal_symmetric_state(n, d).op());
}

long long v_factor(int n, int d) {
  return ipow(n + 1, (d + 2) * (d - 1) / 2);
}

HermitianOperator symmetrize_over_permutations(const HermitianOperator& X, int n, int d) {
  check_work_cap(n, d, "symmetrize_over_permutations");
  if (X.dim() != ipow(d, n)) {
    throw DimensionMismatch("symmetrize_over_permutations: operator is not on (C^d)^n");
  }
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Matrix acc = Matrix::Zero(X.dim(), X.dim());
  do {
    const Matrix U = permutation_operator(perm, d);
    acc += U * X.mat() * U.adjoint();
  } while (std::next_permutation(perm.begin(), perm.end()));
  return HermitianOperator(Matrix(acc / static_cast<double>(factorial(n))));
}

}  // namespace qrd
