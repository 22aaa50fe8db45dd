#pragma once

// Root-system data attached to a skew-symmetrizable exchange matrix B:
// the symmetrizable Cartan companion A (a_ii = 2, a_ij = -|b_ij|), the
// symmetrizers delta_i with delta_i a_ij = delta_j a_ji, simple reflections
// on root / coroot / weight coordinates, the bilinear forms K and omega,
// and positive real roots with their primitive coroots.
//
// Coordinate conventions: roots live in simple-root coordinates, coroots in
// simple-coroot coordinates, weights in fundamental-weight coordinates
// (rho_i dual to alpha_j^vee).

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "cluscat/rational.hpp"

namespace cluscat {

using IntVec = std::vector<long>;
using IntMat = std::vector<std::vector<long>>;

inline long gcd_positive(long a, long b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b != 0) {
    const long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Divides v by the gcd of its entries (no-op for the zero vector).
inline IntVec primitive_vector(IntVec v) {
  long g = 0;
  for (long x : v) g = gcd_positive(g, x);
  if (g > 1) {
    for (long& x : v) x /= g;
  }
  return v;
}

// Parses "0,2;-2,0": rows separated by ';', integer entries by ','.
inline IntMat parse_matrix(const std::string& text) {
  IntMat m;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t row_end = text.find(';', pos);
    if (row_end == std::string::npos) row_end = text.size();
    std::vector<long> row;
    size_t p = pos;
    while (p <= row_end) {
      size_t q = text.find(',', p);
      if (q == std::string::npos || q > row_end) q = row_end;
      std::string entry = text.substr(p, q - p);
      size_t a = entry.find_first_not_of(" \t");
      size_t b = entry.find_last_not_of(" \t");
      if (a == std::string::npos) {
        throw std::invalid_argument("empty matrix entry");
      }
      entry = entry.substr(a, b - a + 1);
      try {
        size_t used = 0;
        row.push_back(std::stol(entry, &used));
        if (used != entry.size()) throw std::invalid_argument(entry);
      } catch (const std::exception&) {
        throw std::invalid_argument("bad matrix entry: '" + entry + "'");
      }
      p = q + 1;
      if (q == row_end) break;
    }
    m.push_back(std::move(row));
    if (row_end == text.size()) break;
    pos = row_end + 1;
  }
  if (m.empty()) throw std::invalid_argument("empty matrix");
  for (const auto& row : m) {
    if (row.size() != m.size()) {
      throw std::invalid_argument("matrix must be square");
    }
  }
  return m;
}

inline std::string matrix_to_string(const IntMat& m) {
  std::string out;
  for (size_t i = 0; i < m.size(); ++i) {
    if (i) out += ";";
    for (size_t j = 0; j < m[i].size(); ++j) {
      if (j) out += ",";
      out += std::to_string(m[i][j]);
    }
  }
  return out;
}

struct RootData {
  IntMat b;                     // exchange matrix
  IntMat a;                     // Cartan companion
  std::vector<Rational> delta;  // symmetrizers, delta_i a_ij = delta_j a_ji
  int rank = 0;

  static RootData from_exchange(const IntMat& b_in) {
    RootData rd;
    rd.b = b_in;
    rd.rank = static_cast<int>(b_in.size());
    for (const auto& row : b_in) {
      if (static_cast<int>(row.size()) != rd.rank) {
        throw std::invalid_argument("exchange matrix must be square");
      }
    }
    for (int i = 0; i < rd.rank; ++i) {
      if (rd.b[i][i] != 0) {
        throw std::invalid_argument("exchange matrix has nonzero diagonal");
      }
      for (int j = 0; j < rd.rank; ++j) {
        const bool zi = rd.b[i][j] == 0, zj = rd.b[j][i] == 0;
        if (zi != zj || (!zi && (rd.b[i][j] > 0) == (rd.b[j][i] > 0))) {
          throw std::invalid_argument(
              "exchange matrix is not skew-symmetrizable");
        }
      }
    }
    rd.a.assign(rd.rank, std::vector<long>(rd.rank, 0));
    for (int i = 0; i < rd.rank; ++i) {
      for (int j = 0; j < rd.rank; ++j) {
        rd.a[i][j] = i == j ? 2 : -std::abs(rd.b[i][j]);
      }
    }
    rd.delta = symmetrizers(rd.a);
    // Cycle consistency: the propagated delta must symmetrize every entry.
    for (int i = 0; i < rd.rank; ++i) {
      for (int j = 0; j < rd.rank; ++j) {
        if (rd.delta[i] * rd.a[i][j] != rd.delta[j] * rd.a[j][i]) {
          throw std::invalid_argument(
              "exchange matrix is not skew-symmetrizable");
        }
      }
    }
    return rd;
  }

  // Smallest positive symmetrizers whose inverses are coprime integers,
  // computed per connected component of the Cartan graph.
  static std::vector<Rational> symmetrizers(const IntMat& a) {
    const int n = static_cast<int>(a.size());
    std::vector<Rational> inv(n, 0);  // 1/delta_i up to component scale
    for (int start = 0; start < n; ++start) {
      if (inv[start] != 0) continue;
      inv[start] = 1;
      std::vector<int> queue = {start};
      while (!queue.empty()) {
        const int i = queue.back();
        queue.pop_back();
        for (int j = 0; j < n; ++j) {
          if (j == i || a[i][j] == 0) continue;
          // delta_i a_ij = delta_j a_ji  =>  1/delta_j = (a_ji/a_ij)/delta_i.
          const Rational v = inv[i] * make_rational(a[j][i], a[i][j]);
          if (inv[j] == 0) {
            inv[j] = v;
            queue.push_back(j);
          } else if (inv[j] != v) {
            throw std::invalid_argument("Cartan matrix is not symmetrizable");
          }
        }
      }
    }
    // Scale 1/delta to coprime positive integers.
    Integer lcm_den = 1;
    for (const auto& r : inv) {
      Integer l;
      mpz_lcm(l.get_mpz_t(), lcm_den.get_mpz_t(), r.get_den().get_mpz_t());
      lcm_den = l;
    }
    std::vector<Integer> scaled(n);
    Integer g = 0;
    for (int i = 0; i < n; ++i) {
      scaled[i] = inv[i].get_num() * (lcm_den / inv[i].get_den());
      Integer t;
      mpz_gcd(t.get_mpz_t(), g.get_mpz_t(), scaled[i].get_mpz_t());
      g = t;
    }
    std::vector<Rational> delta(n);
    for (int i = 0; i < n; ++i) {
      Rational d(g, scaled[i]);
      d.canonicalize();
      delta[i] = d;
    }
    return delta;
  }

  // <weight, root> = sum_i delta_i u_i c_i.
  Rational pair_weight_root(const IntVec& u, const IntVec& c) const {
    Rational s = 0;
    for (int i = 0; i < rank; ++i) s += delta[i] * u[i] * c[i];
    return s;
  }

  // <weight, coroot> = sum_i u_i e_i (rho_i dual to alpha_j^vee).
  long pair_weight_coroot(const IntVec& u, const IntVec& e) const {
    long s = 0;
    for (int i = 0; i < rank; ++i) s += u[i] * e[i];
    return s;
  }

  // K(coroot, root) with K(alpha_i^vee, alpha_j) = a_ij.
  long k_form(const IntVec& e, const IntVec& c) const {
    long s = 0;
    for (int i = 0; i < rank; ++i) {
      for (int j = 0; j < rank; ++j) s += e[i] * a[i][j] * c[j];
    }
    return s;
  }

  // omega(coroot, root) with omega(alpha_i^vee, alpha_j) = b_ij.
  long omega_form(const IntVec& e, const IntVec& c) const {
    long s = 0;
    for (int i = 0; i < rank; ++i) {
      for (int j = 0; j < rank; ++j) s += e[i] * b[i][j] * c[j];
    }
    return s;
  }

  // omega(., beta) as a weight: coordinate i is (B c)_i = sum_j b_ij c_j.
  IntVec omega_weight_of_root(const IntVec& c) const {
    IntVec u(rank, 0);
    for (int i = 0; i < rank; ++i) {
      for (int j = 0; j < rank; ++j) u[i] += b[i][j] * c[j];
    }
    return u;
  }

  // omega extended to a pair of roots: sum_ij delta_i c1_i b_ij c2_j.
  // A positive multiple of omega(beta1^vee, beta2), so its sign is usable
  // as an orientation test.
  Rational omega_roots(const IntVec& c1, const IntVec& c2) const {
    Rational s = 0;
    for (int i = 0; i < rank; ++i) {
      for (int j = 0; j < rank; ++j) s += delta[i] * c1[i] * b[i][j] * c2[j];
    }
    return s;
  }

  // s_i on root coordinates: alpha_j -> alpha_j - a_ij alpha_i.
  IntVec reflect_root(int i, const IntVec& c) const {
    IntVec r = c;
    long t = 0;
    for (int j = 0; j < rank; ++j) t += a[i][j] * c[j];
    r[i] = c[i] - t;
    return r;
  }

  // s_i on coroot coordinates: alpha_k^vee -> alpha_k^vee - a_ki alpha_i^vee.
  IntVec reflect_coroot(int i, const IntVec& e) const {
    IntVec r = e;
    long t = 0;
    for (int k = 0; k < rank; ++k) t += a[k][i] * e[k];
    r[i] = e[i] - t;
    return r;
  }

  // s_i on weight coordinates: u_k -> u_k - a_ki u_i.
  IntVec reflect_weight(int i, const IntVec& u) const {
    IntVec r(rank);
    for (int k = 0; k < rank; ++k) r[k] = u[k] - a[k][i] * u[i];
    return r;
  }

  // The primitive integer coroot of a real root, plus the rational scale s
  // with (delta_i c_i)_i = s * primitive. Crossing exponents always use the
  // primitive coroot.
  std::pair<IntVec, Rational> coroot_of_root(const IntVec& c) const {
    Integer lcm_den = 1;
    std::vector<Rational> raw(rank);
    for (int i = 0; i < rank; ++i) {
      raw[i] = delta[i] * c[i];
      Integer l;
      mpz_lcm(l.get_mpz_t(), lcm_den.get_mpz_t(), raw[i].get_den().get_mpz_t());
      lcm_den = l;
    }
    IntVec scaled(rank);
    for (int i = 0; i < rank; ++i) {
      Rational v = raw[i] * Rational(lcm_den);
      scaled[i] = v.get_num().get_si();
    }
    IntVec prim = primitive_vector(scaled);
    // Recover s from the first nonzero coordinate.
    Rational s = 0;
    for (int i = 0; i < rank; ++i) {
      if (prim[i] != 0) {
        s = raw[i] / prim[i];
        break;
      }
    }
    return {prim, s};
  }

  // Positive real roots of total degree at most `bound`, by closing the
  // simple roots under simple reflections. Every positive real root within
  // the bound is reachable through roots within the bound, because each
  // positive non-simple real root admits a height-decreasing reflection.
  std::vector<IntVec> positive_real_roots(long bound = 10000) const {
    std::set<IntVec> seen;
    std::vector<IntVec> queue;
    for (int i = 0; i < rank; ++i) {
      IntVec e(rank, 0);
      e[i] = 1;
      if (bound >= 1) {
        seen.insert(e);
        queue.push_back(e);
      }
    }
    while (!queue.empty()) {
      IntVec c = queue.back();
      queue.pop_back();
      for (int i = 0; i < rank; ++i) {
        IntVec r = reflect_root(i, c);
        long degree = 0;
        bool positive = true;
        for (long x : r) {
          positive = positive && x >= 0;
          degree += x;
        }
        if (!positive || degree > bound) continue;
        if (seen.insert(r).second) queue.push_back(r);
      }
    }
    return std::vector<IntVec>(seen.begin(), seen.end());
  }
};

// Convenience for the rank-2 matrix [[0, b], [a, 0]]. Either orientation
// (a <= 0 <= b or a >= 0 >= b) is accepted; from_exchange rejects the rest.
inline RootData rank2_root_data(long a, long b) {
  return RootData::from_exchange({{0, b}, {a, 0}});
}

}  // namespace cluscat
