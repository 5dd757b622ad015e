#pragma once

// Monomial feature libraries and the reduced linear-superposition multi-time
// layout. Term order is fixed (total degree, then lexicographic with the first
// input dominant) so coefficient vectors are comparable across runs.

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "closure/types.hpp"

namespace closure {

struct MonomialLibrary {
  int input_dim = 0;
  int max_degree = 0;
  std::vector<std::vector<int>> terms;  // exponent multi-indices, sum <= max_degree

  Index size() const { return static_cast<Index>(terms.size()); }
};

namespace detail {

inline void enumerate_exponents(int remaining, int pos, std::vector<int>& cur,
                                std::vector<std::vector<int>>& out) {
  if (pos == static_cast<int>(cur.size()) - 1) {
    cur[static_cast<size_t>(pos)] = remaining;
    out.push_back(cur);
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    cur[static_cast<size_t>(pos)] = e;
    enumerate_exponents(remaining - e, pos + 1, cur, out);
  }
}

}  // namespace detail

inline MonomialLibrary make_monomial_library(int input_dim, int max_degree) {
  if (input_dim < 1 || max_degree < 0) throw InvalidArgument("bad library parameters");
  MonomialLibrary lib{input_dim, max_degree, {}};
  std::vector<int> cur(static_cast<size_t>(input_dim), 0);
  for (int d = 0; d <= max_degree; ++d)
    detail::enumerate_exponents(d, 0, cur, lib.terms);
  return lib;
}

// C(n, k) with overflow detection.
inline long long binomial_checked(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long long result = 1;
  for (long long i = 1; i <= k; ++i) {
    if (result > std::numeric_limits<long long>::max() / (n - k + i))
      throw InvalidArgument("feature count overflows 64-bit integer");
    result = result * (n - k + i) / i;
  }
  return result;
}

inline long long count_full(int q, int p, int k) {
  return binomial_checked(2LL * (1 + p) * q + k, k);
}

// (1+p) * C(2Q+k, k) - p: one block per time instance, duplicate constants removed.
inline long long count_reduced(int q, int p, int k) {
  return (1LL + p) * binomial_checked(2LL * q + k, k) - p;
}

template <typename Derived>
Vector expand(const MonomialLibrary& lib, const Eigen::MatrixBase<Derived>& row) {
  if (row.size() != lib.input_dim) throw InvalidArgument("expand: row has wrong dimension");
  Vector out(lib.size());
  for (Index t = 0; t < lib.size(); ++t) {
    double v = 1.0;
    const auto& exps = lib.terms[static_cast<size_t>(t)];
    for (int j = 0; j < lib.input_dim; ++j)
      for (int e = 0; e < exps[static_cast<size_t>(j)]; ++e) v *= row[j];
    out[t] = v;
  }
  return out;
}

inline Matrix expand_rows(const MonomialLibrary& lib, const Matrix& rows) {
  Matrix out(rows.rows(), lib.size());
  for (Index r = 0; r < rows.rows(); ++r)
    out.row(r) = expand(lib, rows.row(r)).transpose();
  return out;
}

// Full-layout delay row [x^j..x^{j-p}, d^j..d^{j-p}] -> concatenated per-time
// blocks Theta_k([x^{j-i}, d^{j-i}]), keeping the constant only in block i=0.
template <typename Derived>
Vector expand_reduced_multitime(const Eigen::MatrixBase<Derived>& delay_row, int q, int p,
                                int k) {
  if (delay_row.size() != 2 * (1 + p) * q)
    throw InvalidArgument("expand_reduced_multitime expects a Full-layout row");
  const MonomialLibrary block_lib = make_monomial_library(2 * q, k);
  Vector out(count_reduced(q, p, k));
  Index c = 0;
  Vector h(2 * q);
  for (int i = 0; i <= p; ++i) {
    h.head(q) = delay_row.segment(static_cast<Index>(i) * q, q);
    h.tail(q) = delay_row.segment(static_cast<Index>(1 + p + i) * q, q);
    Vector block = expand(block_lib, h);
    if (i == 0) {
      out.segment(c, block.size()) = block;
      c += block.size();
    } else {
      out.segment(c, block.size() - 1) = block.tail(block.size() - 1);
      c += block.size() - 1;
    }
  }
  return out;
}

inline Matrix expand_reduced_multitime_rows(const Matrix& delay_rows, int q, int p, int k) {
  Matrix out(delay_rows.rows(), count_reduced(q, p, k));
  for (Index r = 0; r < delay_rows.rows(); ++r)
    out.row(r) = expand_reduced_multitime(delay_rows.row(r), q, p, k).transpose();
  return out;
}

// "1", "x0", "x0*d1^2", ... with caller-supplied variable names.
inline std::string term_name(const MonomialLibrary& lib, Index term,
                             const std::vector<std::string>& var_names) {
  const auto& exps = lib.terms[static_cast<size_t>(term)];
  std::string out;
  for (int j = 0; j < lib.input_dim; ++j) {
    const int e = exps[static_cast<size_t>(j)];
    if (e == 0) continue;
    if (!out.empty()) out += "*";
    out += var_names[static_cast<size_t>(j)];
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out.empty() ? "1" : out;
}

// Variable names for a Full-layout delay row: x0..x{Q-1} now, x0.1 one step
// back, then the matching d names.
inline std::vector<std::string> delay_var_names(int q, int p) {
  std::vector<std::string> names;
  for (const char* base : {"x", "d"})
    for (int i = 0; i <= p; ++i)
      for (int c = 0; c < q; ++c) {
        std::string n = base + std::to_string(c);
        if (i > 0) n += "." + std::to_string(i);
        names.push_back(n);
      }
  return names;
}

// Term names for the reduced multi-time layout, matching expand_reduced_multitime.
inline std::vector<std::string> reduced_multitime_term_names(int q, int p, int k) {
  const MonomialLibrary block_lib = make_monomial_library(2 * q, k);
  std::vector<std::string> names;
  for (int i = 0; i <= p; ++i) {
    std::vector<std::string> vars;
    for (const char* base : {"x", "d"})
      for (int c = 0; c < q; ++c) {
        std::string n = base + std::to_string(c);
        if (i > 0) n += "." + std::to_string(i);
        vars.push_back(n);
      }
    for (Index t = (i == 0 ? 0 : 1); t < block_lib.size(); ++t)
      names.push_back(term_name(block_lib, t, vars));
  }
  return names;
}

inline std::vector<std::string> full_poly_term_names(int q, int p, int k) {
  const MonomialLibrary lib = make_monomial_library(2 * (1 + p) * q, k);
  const auto vars = delay_var_names(q, p);
  std::vector<std::string> names;
  names.reserve(static_cast<size_t>(lib.size()));
  for (Index t = 0; t < lib.size(); ++t) names.push_back(term_name(lib, t, vars));
  return names;
}

}  // namespace closure
