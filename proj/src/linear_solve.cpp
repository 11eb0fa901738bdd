#include "pseudostar/linear_solve.hpp"

#include <algorithm>
#include <map>

namespace pseudostar {

RankProfile rank_profile(const IntMatrix& a) {
  RankProfile out;
  if (a.empty()) return out;
  const std::size_t rows = a.size();
  const std::size_t cols = a.front().size();
  std::vector<std::vector<mpz_class>> m(rows, std::vector<mpz_class>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m[i][j] = static_cast<long>(a[i][j]);
  std::vector<std::size_t> origin(rows);
  for (std::size_t i = 0; i < rows; ++i) origin[i] = i;

  mpz_class prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    std::swap(origin[p], origin[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        m[i][j] = m[r][c] * m[i][j] - m[i][c] * m[r][j];
        mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      m[i][c] = 0;
    }
    prev = m[r][c];
    out.pivot_rows.push_back(origin[r]);
    out.pivot_cols.push_back(c);
    ++r;
  }
  return out;
}

std::optional<std::vector<Rational>> solve_square(RationalMatrix a, std::vector<Rational> b) {
  const std::size_t n = a.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(a[p], a[c]);
    std::swap(b[p], b[c]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a[i][c] == 0) continue;
      const Rational f = a[i][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
      b[i] -= f * b[c];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

std::optional<AffineSolution> solve_affine(const IntMatrix& a, std::span<const Rational> b) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a.front().size();
  const RankProfile rp = rank_profile(a);
  const std::size_t r = rp.rank();

  RationalMatrix square(r, std::vector<Rational>(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) square[i][j] = static_cast<long>(a[rp.pivot_rows[i]][rp.pivot_cols[j]]);

  // x restricted to the pivot columns for right-hand side rhs, free columns at 0
  const auto lift = [&](const std::vector<Rational>& rhs) -> std::optional<std::vector<Rational>> {
    std::vector<Rational> x(cols, Rational(0));
    if (r == 0) return x;
    const auto sol = solve_square(square, rhs);
    if (!sol) return std::nullopt;
    for (std::size_t j = 0; j < r; ++j) x[rp.pivot_cols[j]] = (*sol)[j];
    return x;
  };

  std::vector<Rational> rhs(r);
  for (std::size_t i = 0; i < r; ++i) rhs[i] = b[rp.pivot_rows[i]];
  auto particular = lift(rhs);
  if (!particular) return std::nullopt;
  for (std::size_t i = 0; i < rows; ++i) {
    Rational sum = 0;
    for (std::size_t j = 0; j < cols; ++j)
      if (a[i][j] != 0) sum += Rational(static_cast<long>(a[i][j])) * (*particular)[j];
    if (sum != b[i]) return std::nullopt;
  }

  AffineSolution out{std::move(*particular), {}};
  std::vector<bool> pivot(cols, false);
  for (std::size_t c : rp.pivot_cols) pivot[c] = true;
  for (std::size_t f = 0; f < cols; ++f) {
    if (pivot[f]) continue;
    for (std::size_t i = 0; i < r; ++i) rhs[i] = -static_cast<long>(a[rp.pivot_rows[i]][f]);
    auto dir = lift(rhs);
    (*dir)[f] = 1;
    out.kernel.push_back(std::move(*dir));
  }
  return out;
}

namespace {

/// coeffs . t + constant > 0
struct Strict {
  std::vector<Rational> coeffs;
  Rational constant;
};

/// Scales so the first nonzero coefficient has magnitude one, then keeps the
/// tightest of every parallel family.
std::vector<Strict> normalize(std::vector<Strict> in) {
  std::map<std::vector<Rational>, Rational> best;
  for (Strict& s : in) {
    const auto lead = std::find_if(s.coeffs.begin(), s.coeffs.end(), [](const Rational& x) { return x != 0; });
    if (lead != s.coeffs.end()) {
      const Rational scale = abs(*lead);
      for (Rational& x : s.coeffs) x /= scale;
      s.constant /= scale;
    }
    auto [it, fresh] = best.emplace(s.coeffs, s.constant);
    if (!fresh && s.constant < it->second) it->second = s.constant;
  }
  std::vector<Strict> out;
  for (auto& [coeffs, constant] : best) out.push_back({coeffs, constant});
  return out;
}

}  // namespace

std::optional<std::vector<Rational>> strictly_positive_point(const AffineSolution& s) {
  const std::size_t q = s.kernel.size();
  const std::size_t dims = s.particular.size();
  std::vector<Strict> current;
  for (std::size_t e = 0; e < dims; ++e) {
    Strict c{std::vector<Rational>(q), s.particular[e]};
    for (std::size_t j = 0; j < q; ++j) c.coeffs[j] = s.kernel[j][e];
    current.push_back(std::move(c));
  }
  current = normalize(std::move(current));

  // levels[v] holds the constraints in variables 0..v, used to pick t_v
  std::vector<std::vector<Strict>> levels(q);
  for (std::size_t v = q; v-- > 0;) {
    levels[v] = current;
    std::vector<Strict> next;
    std::vector<const Strict*> lower, upper;
    for (const Strict& c : current) {
      if (c.coeffs[v] > 0) lower.push_back(&c);
      else if (c.coeffs[v] < 0) upper.push_back(&c);
      else next.push_back(c);
    }
    for (const Strict* lo : lower) {
      for (const Strict* up : upper) {
        // lo.a t + lo.b > 0 and up.a t + up.b > 0 combine with positive multipliers
        const Rational fl = -up->coeffs[v];
        const Rational fu = lo->coeffs[v];
        Strict c{std::vector<Rational>(q), fl * lo->constant + fu * up->constant};
        for (std::size_t j = 0; j < q; ++j) c.coeffs[j] = fl * lo->coeffs[j] + fu * up->coeffs[j];
        c.coeffs[v] = 0;
        next.push_back(std::move(c));
      }
    }
    current = normalize(std::move(next));
  }
  for (const Strict& c : current)
    if (c.constant <= 0) return std::nullopt;

  std::vector<Rational> t(q, Rational(0));
  for (std::size_t v = 0; v < q; ++v) {
    std::optional<Rational> lo, hi;
    for (const Strict& c : levels[v]) {
      if (c.coeffs[v] == 0) continue;
      Rational rest = c.constant;
      for (std::size_t j = 0; j < v; ++j) rest += c.coeffs[j] * t[j];
      const Rational bound = -rest / c.coeffs[v];
      if (c.coeffs[v] > 0) {
        if (!lo || bound > *lo) lo = bound;
      } else if (!hi || bound < *hi) {
        hi = bound;
      }
    }
    if (lo && hi) t[v] = (*lo + *hi) / 2;
    else if (lo) t[v] = *lo + 1;
    else if (hi) t[v] = *hi - 1;
  }

  std::vector<Rational> x = s.particular;
  for (std::size_t j = 0; j < q; ++j)
    for (std::size_t e = 0; e < dims; ++e) x[e] += t[j] * s.kernel[j][e];
  for (const Rational& v : x)
    if (v <= 0) return std::nullopt;
  return x;
}

}  // namespace pseudostar
