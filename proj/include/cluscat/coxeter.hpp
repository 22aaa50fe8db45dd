#pragma once

// Finite Coxeter groups realized by exact integer matrices on the root
// lattice, sortable elements with their recursive root sets and simplicial
// fan cones, and the Cambrian scattering diagram whose walls are the
// codimension-1 fan faces labeled 1 + yhat^{beta_t} over cover reflections.
// Verification helpers: outgoing-wall reports, codimension-2 loops with
// exact path-ordered-product consistency, and the reduction of each
// codimension-2 star to a rank-2 diagram twisted by the element below it.

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cluscat/rootdata.hpp"
#include "cluscat/scat.hpp"
#include "cluscat/series.hpp"

namespace cluscat {

using RatMat = std::vector<std::vector<Rational>>;

// Exact inverse by Gauss-Jordan elimination; throws on singular input.
inline RatMat rational_inverse(RatMat m) {
  const size_t n = m.size();
  RatMat inv(n, std::vector<Rational>(n, 0));
  for (size_t i = 0; i < n; ++i) {
    if (m[i].size() != n) throw std::invalid_argument("matrix must be square");
    inv[i][i] = 1;
  }
  for (size_t col = 0; col < n; ++col) {
    size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) throw std::invalid_argument("matrix is singular");
    std::swap(m[pivot], m[col]);
    std::swap(inv[pivot], inv[col]);
    const Rational lead = m[col][col];
    for (size_t j = 0; j < n; ++j) {
      m[col][j] /= lead;
      inv[col][j] /= lead;
    }
    for (size_t row = 0; row < n; ++row) {
      if (row == col || m[row][col] == 0) continue;
      const Rational f = m[row][col];
      for (size_t j = 0; j < n; ++j) {
        m[row][j] -= f * m[col][j];
        inv[row][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

// Solves sum_i x_i cols[i] = rhs exactly; nullopt when inconsistent. The
// columns must be linearly independent (cone generators are).
inline std::optional<std::vector<Rational>> solve_in_span(
    const std::vector<IntVec>& cols, const std::vector<Rational>& rhs) {
  const size_t rows = rhs.size(), k = cols.size();
  RatMat a(rows, std::vector<Rational>(k + 1, 0));
  for (size_t i = 0; i < rows; ++i) {
    for (size_t j = 0; j < k; ++j) a[i][j] = cols[j][i];
    a[i][k] = rhs[i];
  }
  size_t rank = 0;
  std::vector<size_t> pivot_col;
  for (size_t col = 0; col < k && rank < rows; ++col) {
    size_t pivot = rank;
    while (pivot < rows && a[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[pivot], a[rank]);
    const Rational lead = a[rank][col];
    for (size_t j = col; j <= k; ++j) a[rank][j] /= lead;
    for (size_t row = 0; row < rows; ++row) {
      if (row == rank || a[row][col] == 0) continue;
      const Rational f = a[row][col];
      for (size_t j = col; j <= k; ++j) a[row][j] -= f * a[rank][j];
    }
    pivot_col.push_back(col);
    ++rank;
  }
  for (size_t row = rank; row < rows; ++row) {
    if (a[row][k] != 0) return std::nullopt;  // inconsistent
  }
  if (rank < k) throw std::invalid_argument("columns must be independent");
  std::vector<Rational> x(k, 0);
  for (size_t r = 0; r < rank; ++r) x[pivot_col[r]] = a[r][k];
  return x;
}

inline std::vector<Rational> to_rational_vector(const IntVec& v) {
  return std::vector<Rational>(v.begin(), v.end());
}

// The group is finite exactly when the symmetrized Cartan matrix is
// positive definite; test the elimination pivots exactly.
inline bool cartan_positive_definite(const RootData& rd) {
  const int n = rd.rank;
  RatMat m(n, std::vector<Rational>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m[i][j] = rd.delta[i] * rd.a[i][j];
  }
  for (int col = 0; col < n; ++col) {
    if (m[col][col] <= 0) return false;
    for (int row = col + 1; row < n; ++row) {
      const Rational f = m[row][col] / m[col][col];
      for (int j = col; j < n; ++j) m[row][j] -= f * m[col][j];
    }
  }
  return true;
}

// Scales a rational vector to a primitive integer vector, preserving signs.
inline IntVec primitive_integer_direction(const std::vector<Rational>& v) {
  Integer den = 1;
  for (const Rational& r : v) {
    Integer l;
    mpz_lcm(l.get_mpz_t(), den.get_mpz_t(), r.get_den().get_mpz_t());
    den = l;
  }
  IntVec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    const Rational s = v[i] * Rational(den);
    if (!s.get_num().fits_slong_p()) {
      throw std::overflow_error("direction coordinates too large");
    }
    out[i] = s.get_num().get_si();
  }
  return primitive_vector(out);
}

// A finite Coxeter group given by symmetrizable Cartan data. Elements are
// exact integer matrices acting on root coordinates, discovered breadth
// first, so the parent chain of each element is a reduced word.
class CoxeterGroup {
 public:
  explicit CoxeterGroup(const RootData& rd) : rd_(rd), n_(rd.rank) {
    if (!cartan_positive_definite(rd_)) {
      throw std::invalid_argument("root system is not finite");
    }
    pos_roots_ = rd_.positive_real_roots();
    pos_root_set_.insert(pos_roots_.begin(), pos_roots_.end());

    gen_root_.resize(n_);
    gen_weight_.resize(n_);
    for (int i = 0; i < n_; ++i) {
      gen_root_[i] = matrix_of(&RootData::reflect_root, i);
      gen_weight_[i] = matrix_of(&RootData::reflect_weight, i);
    }

    IntMat id(n_, IntVec(n_, 0));
    for (int i = 0; i < n_; ++i) id[i][i] = 1;
    add_element(id, id, -1, -1);
    for (size_t head = 0; head < elements_.size(); ++head) {
      for (int i = 0; i < n_; ++i) {
        const IntMat r = multiply(elements_[head].root_mat, gen_root_[i]);
        if (index_.count(r)) continue;
        add_element(r, multiply(elements_[head].weight_mat, gen_weight_[i]),
                    static_cast<int>(head), i);
      }
    }
    // Inverse of each element: the product of its reduced word reversed.
    inverse_.assign(elements_.size(), 0);
    for (size_t w = 0; w < elements_.size(); ++w) {
      IntMat m = id;
      for (int g : word(static_cast<int>(w))) m = multiply(gen_root_[g], m);
      inverse_[w] = index_.at(m);
    }
  }

  const RootData& root_data() const { return rd_; }
  int rank() const { return n_; }
  int size() const { return static_cast<int>(elements_.size()); }
  int identity() const { return 0; }
  int generator(int i) const { return index_.at(gen_root_.at(i)); }
  int length(int w) const { return elements_[w].length; }
  int inverse(int w) const { return inverse_[w]; }

  int left_multiply(int gen, int w) const {
    return index_.at(multiply(gen_root_[gen], elements_[w].root_mat));
  }
  int right_multiply(int w, int gen) const {
    return index_.at(multiply(elements_[w].root_mat, gen_root_[gen]));
  }
  int product(int u, int v) const {
    return index_.at(multiply(elements_[u].root_mat, elements_[v].root_mat));
  }

  IntVec act_root(int w, const IntVec& c) const {
    return apply(elements_[w].root_mat, c);
  }
  IntVec act_weight(int w, const IntVec& u) const {
    return apply(elements_[w].weight_mat, u);
  }

  // A reduced word, read left to right, from the breadth-first parent chain.
  std::vector<int> word(int w) const {
    std::vector<int> out;
    for (int v = w; elements_[v].parent >= 0; v = elements_[v].parent) {
      out.push_back(elements_[v].parent_gen);
    }
    std::reverse(out.begin(), out.end());
    return out;
  }

  const std::vector<IntVec>& positive_roots() const { return pos_roots_; }
  bool is_positive_root(const IntVec& c) const {
    return pos_root_set_.count(c) > 0;
  }

  // Left inversions as roots: {beta > 0 : w^{-1} beta < 0} = -w(negatives).
  std::vector<IntVec> inversion_roots(int w) const {
    std::vector<IntVec> out;
    for (const IntVec& beta : pos_roots_) {
      IntVec img = act_root(w, beta);
      if (is_negative(img)) {
        for (long& x : img) x = -x;
        out.push_back(std::move(img));
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  // Right descents: i with l(w s_i) < l(w), i.e. w(alpha_i) negative.
  std::vector<int> descents(int w) const {
    std::vector<int> out;
    for (int i = 0; i < n_; ++i) {
      if (is_negative(act_root(w, simple_root(i)))) out.push_back(i);
    }
    return out;
  }

  // Roots beta_t over cover reflections t of w: beta_t = -w(alpha_i) for
  // each right descent i.
  std::vector<IntVec> cover_roots(int w) const {
    std::vector<IntVec> out;
    for (int i : descents(w)) {
      IntVec beta = act_root(w, simple_root(i));
      for (long& x : beta) x = -x;
      out.push_back(std::move(beta));
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  // Membership in the standard parabolic generated by `allowed`: every
  // inversion must be supported on the allowed simple roots.
  bool in_parabolic(int w, const std::vector<int>& allowed) const {
    std::vector<bool> ok(n_, false);
    for (int i : allowed) ok[i] = true;
    for (const IntVec& beta : inversion_roots(w)) {
      for (int i = 0; i < n_; ++i) {
        if (beta[i] != 0 && !ok[i]) return false;
      }
    }
    return true;
  }

  int longest_element() const {
    int best = 0;
    for (int w = 0; w < size(); ++w) {
      if (length(w) > length(best)) best = w;
    }
    return best;
  }

  IntVec simple_root(int i) const {
    IntVec e(n_, 0);
    e[i] = 1;
    return e;
  }

  static bool is_negative(const IntVec& c) {
    bool nonzero = false;
    for (long x : c) {
      if (x > 0) return false;
      nonzero = nonzero || x < 0;
    }
    return nonzero;
  }

 private:
  struct Element {
    IntMat root_mat;
    IntMat weight_mat;
    int parent;
    int parent_gen;
    int length;
  };

  IntMat matrix_of(IntVec (RootData::*refl)(int, const IntVec&) const,
                   int i) const {
    IntMat m(n_, IntVec(n_, 0));
    for (int j = 0; j < n_; ++j) {
      IntVec e(n_, 0);
      e[j] = 1;
      const IntVec img = (rd_.*refl)(i, e);
      for (int k = 0; k < n_; ++k) m[k][j] = img[k];
    }
    return m;
  }

  static IntMat multiply(const IntMat& a, const IntMat& b) {
    const size_t n = a.size();
    IntMat c(n, IntVec(n, 0));
    for (size_t i = 0; i < n; ++i) {
      for (size_t k = 0; k < n; ++k) {
        if (a[i][k] == 0) continue;
        for (size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
      }
    }
    return c;
  }

  static IntVec apply(const IntMat& m, const IntVec& v) {
    const size_t n = m.size();
    IntVec out(n, 0);
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = 0; j < n; ++j) out[i] += m[i][j] * v[j];
    }
    return out;
  }

  void add_element(IntMat root_mat, IntMat weight_mat, int parent, int gen) {
    const int len = parent < 0 ? 0 : elements_[parent].length + 1;
    index_.emplace(root_mat, static_cast<int>(elements_.size()));
    elements_.push_back(
        {std::move(root_mat), std::move(weight_mat), parent, gen, len});
  }

  RootData rd_;
  int n_;
  std::vector<IntMat> gen_root_, gen_weight_;
  std::vector<Element> elements_;
  std::map<IntMat, int> index_;
  std::vector<int> inverse_;
  std::vector<IntVec> pos_roots_;
  std::set<IntVec> pos_root_set_;
};

// Generator order encoding the sign data of an acyclic exchange matrix:
// s_i precedes s_j whenever b_ij > 0. Deterministic (smallest index first
// among available generators); throws when B has a directed cycle.
inline std::vector<int> coxeter_word_from_exchange(const IntMat& b) {
  const int n = static_cast<int>(b.size());
  std::vector<int> indeg(n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (b[i][j] > 0) ++indeg[j];
    }
  }
  std::vector<int> out;
  std::vector<bool> used(n, false);
  for (int step = 0; step < n; ++step) {
    int pick = -1;
    for (int i = 0; i < n && pick < 0; ++i) {
      if (!used[i] && indeg[i] == 0) pick = i;
    }
    if (pick < 0) {
      throw std::invalid_argument("exchange matrix is not acyclic");
    }
    used[pick] = true;
    out.push_back(pick);
    for (int j = 0; j < n; ++j) {
      if (b[pick][j] > 0) --indeg[j];
    }
  }
  return out;
}

// A word is compatible with B when no later letter points a positive
// exchange entry at an earlier one.
inline bool coxeter_word_compatible(const IntMat& b,
                                    const std::vector<int>& word) {
  const size_t n = b.size();
  if (word.size() != n) return false;
  std::vector<bool> seen(n, false);
  for (int i : word) {
    if (i < 0 || static_cast<size_t>(i) >= n || seen[i]) return false;
    seen[i] = true;
  }
  for (size_t q = 0; q < word.size(); ++q) {
    for (size_t p = 0; p < q; ++p) {
      if (b[word[q]][word[p]] > 0) return false;
    }
  }
  return true;
}

// One maximal cone of the fan: the sortable element v, its root set C_c(v),
// the primitive coroots giving the inequalities <p, beta> >= 0, and the dual
// basis of cone rays (primitive weight vectors, same index order).
struct SortableElement {
  int element;
  std::vector<int> word;
  std::vector<IntVec> c_roots;
  std::vector<IntVec> ineq;
  std::vector<IntVec> rays;
};

// One wall: a codimension-1 face of the fan with its positive root normal.
struct FacetWall {
  IntVec normal;
  std::vector<IntVec> rays;  // n-1 primitive rays, sorted
  int sortable;              // index of the cone with -normal in C_c(v)
};

class CambrianDiagram {
 public:
  CambrianDiagram(const RootData& rd, std::vector<int> cword, int order)
      : group_(rd), cword_(std::move(cword)), order_(order) {
    if (!coxeter_word_compatible(rd.b, cword_)) {
      throw std::invalid_argument(
          "generator order incompatible with the exchange matrix");
    }
    if (order_ < 1) throw std::invalid_argument("order must be positive");
    build_sortables();
    build_walls();
  }

  static CambrianDiagram from_exchange(const IntMat& b, int order) {
    const RootData rd = RootData::from_exchange(b);
    return CambrianDiagram(rd, coxeter_word_from_exchange(b), order);
  }

  const CoxeterGroup& group() const { return group_; }
  const RootData& root_data() const { return group_.root_data(); }
  const std::vector<int>& coxeter_word() const { return cword_; }
  int order() const { return order_; }
  const std::vector<SortableElement>& sortables() const { return sortables_; }
  const std::vector<FacetWall>& walls() const { return walls_; }

  bool is_sortable(int w) const { return sortable_of_.at(w); }

  // C_c(w) for a sortable element; throws otherwise.
  std::vector<IntVec> cone_roots(int w) const {
    if (!is_sortable(w)) {
      throw std::invalid_argument("element is not sortable");
    }
    return c_roots(w, cword_);
  }

  TruncatedSeries wall_function(const IntVec& normal) const {
    const int n = group_.rank();
    long deg = 0;
    for (long x : normal) deg += x;
    if (deg > order_) {
      throw std::invalid_argument("wall normal degree above diagram order");
    }
    TruncatedSeries f = TruncatedSeries::one(n, order_);
    f.add_term(to_exponent(normal), 1);
    return f;
  }

  // Interior point of a maximal cone: the sum of its rays.
  IntVec interior_point(int sortable_index) const {
    const SortableElement& s = sortables_[sortable_index];
    IntVec p(group_.rank(), 0);
    for (const IntVec& r : s.rays) {
      for (int i = 0; i < group_.rank(); ++i) p[i] += r[i];
    }
    return p;
  }

 private:
  using Word = std::vector<int>;

  static Word rotated(const Word& w) {
    Word out(w.begin() + 1, w.end());
    out.push_back(w.front());
    return out;
  }
  static Word dropped(const Word& w) { return Word(w.begin() + 1, w.end()); }

  bool sortable(int w, const Word& word) const {
    if (w == group_.identity()) return true;
    if (word.empty()) return false;
    const auto key = std::make_pair(w, word);
    auto it = sortable_memo_.find(key);
    if (it != sortable_memo_.end()) return it->second;
    const int s = word.front();
    bool result;
    const int sw = group_.left_multiply(s, w);
    if (group_.length(sw) < group_.length(w)) {
      result = sortable(sw, rotated(word));
    } else {
      const Word rest = dropped(word);
      result = group_.in_parabolic(w, rest) && sortable(w, rest);
    }
    sortable_memo_.emplace(key, result);
    return result;
  }

  std::vector<IntVec> c_roots(int w, const Word& word) const {
    if (w == group_.identity()) {
      std::vector<IntVec> out;
      for (int i : word) out.push_back(group_.simple_root(i));
      std::sort(out.begin(), out.end());
      return out;
    }
    const int s = word.front();
    const int sw = group_.left_multiply(s, w);
    std::vector<IntVec> out;
    if (group_.length(sw) < group_.length(w)) {
      for (const IntVec& beta : c_roots(sw, rotated(word))) {
        out.push_back(group_.root_data().reflect_root(s, beta));
      }
    } else {
      out = c_roots(w, dropped(word));
      out.push_back(group_.simple_root(s));
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  void build_sortables() {
    sortable_of_.assign(group_.size(), false);
    std::vector<int> order_by;
    for (int w = 0; w < group_.size(); ++w) {
      sortable_of_[w] = sortable(w, cword_);
      if (sortable_of_[w]) order_by.push_back(w);
    }
    std::sort(order_by.begin(), order_by.end(), [&](int u, int v) {
      if (group_.length(u) != group_.length(v)) {
        return group_.length(u) < group_.length(v);
      }
      return u < v;
    });
    const int n = group_.rank();
    for (int w : order_by) {
      SortableElement s;
      s.element = w;
      s.word = group_.word(w);
      s.c_roots = c_roots(w, cword_);
      for (const IntVec& beta : s.c_roots) {
        s.ineq.push_back(group_.root_data().coroot_of_root(beta).first);
      }
      // Dual basis: rays_k pair to delta_{kl} with the inequality coroots.
      RatMat e(n, std::vector<Rational>(n));
      for (int l = 0; l < n; ++l) {
        for (int j = 0; j < n; ++j) e[l][j] = s.ineq[l][j];
      }
      const RatMat inv = rational_inverse(e);
      for (int k = 0; k < n; ++k) {
        std::vector<Rational> col(n);
        for (int j = 0; j < n; ++j) col[j] = inv[j][k];
        s.rays.push_back(primitive_integer_direction(col));
      }
      sortables_.push_back(std::move(s));
    }
  }

  void build_walls() {
    for (size_t idx = 0; idx < sortables_.size(); ++idx) {
      const SortableElement& s = sortables_[idx];
      // Negative members of C_c(v) must be exactly the cover-reflection
      // roots negated; this cross-checks the recursion against the group.
      std::vector<IntVec> negatives;
      for (size_t k = 0; k < s.c_roots.size(); ++k) {
        if (CoxeterGroup::is_negative(s.c_roots[k])) {
          IntVec pos = s.c_roots[k];
          for (long& x : pos) x = -x;
          negatives.push_back(pos);
          FacetWall w;
          w.normal = pos;
          for (size_t l = 0; l < s.rays.size(); ++l) {
            if (l != k) w.rays.push_back(s.rays[l]);
          }
          std::sort(w.rays.begin(), w.rays.end());
          w.sortable = static_cast<int>(idx);
          walls_.push_back(std::move(w));
        }
      }
      std::sort(negatives.begin(), negatives.end());
      if (negatives != group_.cover_roots(s.element)) {
        throw std::logic_error(
            "negative cone roots disagree with cover reflections");
      }
      for (const IntVec& beta : negatives) {
        if (!group_.is_positive_root(beta)) {
          throw std::logic_error("wall normal is not a positive root");
        }
      }
    }
  }

  CoxeterGroup group_;
  std::vector<int> cword_;
  int order_;
  std::vector<SortableElement> sortables_;
  std::vector<FacetWall> walls_;
  std::vector<bool> sortable_of_;
  mutable std::map<std::pair<int, Word>, bool> sortable_memo_;
};

// The cyclic sequence of maximal cones around one codimension-2 face, with
// the wall and crossing sign of each step.
struct Codim2Loop {
  std::vector<IntVec> face_rays;  // n-2 spanning rays, sorted (empty at n=2)
  std::vector<int> cones;         // sortable indices in cyclic order
  std::vector<int> wall_index;    // wall crossed from cones[i] to cones[i+1]
  std::vector<int> eps;           // +1 when the source side pairs positively
};

inline std::vector<Codim2Loop> codim2_loops(const CambrianDiagram& d) {
  const RootData& rd = d.root_data();

  // Facets keyed by their sorted ray set; a complete simplicial fan has
  // exactly two maximal cones and exactly one wall per facet.
  std::map<std::vector<IntVec>, std::vector<int>> facet_cones;
  for (size_t ci = 0; ci < d.sortables().size(); ++ci) {
    const auto& rays = d.sortables()[ci].rays;
    for (size_t drop = 0; drop < rays.size(); ++drop) {
      std::vector<IntVec> key;
      for (size_t l = 0; l < rays.size(); ++l) {
        if (l != drop) key.push_back(rays[l]);
      }
      std::sort(key.begin(), key.end());
      facet_cones[key].push_back(static_cast<int>(ci));
    }
  }
  std::map<std::vector<IntVec>, int> facet_wall;
  for (size_t wi = 0; wi < d.walls().size(); ++wi) {
    if (!facet_wall.emplace(d.walls()[wi].rays, static_cast<int>(wi)).second) {
      throw std::logic_error("two walls share a facet");
    }
  }
  for (const auto& [key, cones] : facet_cones) {
    if (cones.size() != 2) {
      throw std::logic_error("facet not shared by exactly two cones");
    }
    if (!facet_wall.count(key)) throw std::logic_error("facet without wall");
  }

  // Codimension-2 faces: (n-2)-subsets of the rays of each cone.
  std::map<std::vector<IntVec>, std::set<int>> face_cones;
  for (size_t ci = 0; ci < d.sortables().size(); ++ci) {
    const auto& rays = d.sortables()[ci].rays;
    // Enumerate (n-2)-subsets as the complement of an unordered pair.
    for (size_t p = 0; p < rays.size(); ++p) {
      for (size_t q = p + 1; q < rays.size(); ++q) {
        std::vector<IntVec> key;
        for (size_t l = 0; l < rays.size(); ++l) {
          if (l != p && l != q) key.push_back(rays[l]);
        }
        std::sort(key.begin(), key.end());
        face_cones[key].insert(static_cast<int>(ci));
      }
    }
  }

  std::vector<Codim2Loop> loops;
  for (const auto& [face, incident] : face_cones) {
    Codim2Loop loop;
    loop.face_rays = face;
    const std::set<IntVec> face_set(face.begin(), face.end());
    // The two facets of a cone containing the face: keep the face rays and
    // one of the two remaining rays.
    auto facets_of = [&](int ci) {
      std::vector<std::vector<IntVec>> out;
      for (const IntVec& r : d.sortables()[ci].rays) {
        if (face_set.count(r)) continue;
        std::vector<IntVec> key = face;
        key.push_back(r);
        std::sort(key.begin(), key.end());
        out.push_back(std::move(key));
      }
      if (out.size() != 2) {
        throw std::logic_error("cone does not have two facets at the face");
      }
      return out;
    };
    const int start = *incident.begin();
    int current = start;
    std::vector<IntVec> enter = facets_of(start)[0];
    const std::vector<IntVec> first = enter;
    do {
      auto fs = facets_of(current);
      const std::vector<IntVec> exit = fs[0] == enter ? fs[1] : fs[0];
      const auto& pair_cones = facet_cones.at(exit);
      const int next = pair_cones[0] == current ? pair_cones[1] : pair_cones[0];
      const int wi = facet_wall.at(exit);
      const IntVec src = d.interior_point(current);
      const Rational side = rd.pair_weight_root(src, d.walls()[wi].normal);
      if (side == 0) throw std::logic_error("cone interior on wall plane");
      loop.cones.push_back(current);
      loop.wall_index.push_back(wi);
      loop.eps.push_back(side > 0 ? +1 : -1);
      current = next;
      enter = exit;
    } while (!(current == start && enter == first));
    if (loop.cones.size() != incident.size()) {
      throw std::logic_error("codimension-2 walk missed incident cones");
    }
    loops.push_back(std::move(loop));
  }
  return loops;
}

// Walls whose normal is not simple must be outgoing: omega(., beta), as a
// weight vector, must lie outside the wall cone. Returns violating wall
// indices (expected empty).
inline std::vector<int> check_outgoing(const CambrianDiagram& d) {
  const RootData& rd = d.root_data();
  std::vector<int> violations;
  for (size_t wi = 0; wi < d.walls().size(); ++wi) {
    const FacetWall& w = d.walls()[wi];
    long support = 0;
    for (long x : w.normal) support += x != 0 ? 1 : 0;
    long height = 0;
    for (long x : w.normal) height += x;
    if (support == 1 && height == 1) continue;  // simple root: exempt
    const IntVec omega = rd.omega_weight_of_root(w.normal);
    const auto sol = solve_in_span(w.rays, to_rational_vector(omega));
    if (!sol) continue;  // not even in the span
    bool inside = true;
    for (const Rational& c : *sol) inside = inside && c >= 0;
    if (inside) violations.push_back(static_cast<int>(wi));
  }
  return violations;
}

struct LoopConsistencyReport {
  bool consistent = true;
  int checked_loops = 0;
  int first_failed_loop = -1;
};

// Every codimension-2 loop must fix all x^{rho_k} modulo m^{order+1}.
inline LoopConsistencyReport check_consistency(const CambrianDiagram& d) {
  const RootData& rd = d.root_data();
  const int n = d.group().rank();
  LoopConsistencyReport rep;
  const std::vector<Codim2Loop> loops = codim2_loops(d);
  for (size_t li = 0; li < loops.size(); ++li) {
    const Codim2Loop& loop = loops[li];
    for (int k = 0; k < n; ++k) {
      IntVec lam(n, 0);
      lam[k] = 1;
      LaurentElement m = LaurentElement::monomial(lam, d.order());
      const LaurentElement original = m;
      for (size_t step = 0; step < loop.wall_index.size(); ++step) {
        const FacetWall& w = d.walls()[loop.wall_index[step]];
        m = cross_wall(rd, m, w.normal, d.wall_function(w.normal),
                       loop.eps[step]);
      }
      if (!(m == original)) {
        rep.consistent = false;
        if (rep.first_failed_loop < 0) {
          rep.first_failed_loop = static_cast<int>(li);
        }
      }
    }
    ++rep.checked_loops;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Local structure of a codimension-2 face: the sortable element above it,
// the element below it, the parabolic rank-2 subdiagram, and the match of
// the twisted wall cycle.

struct StarData {
  int above;          // sortable index of the cone above the face
  int below;          // group element below the face
  int a1, a2;         // simple generators with t_i = v a_i v^{-1}
  IntMat sub_b;       // 2x2 exchange matrix of the parabolic, order (a1, a2)
};

namespace detail_cox {

// Membership of q - eps*p (resp. q + eps*p) in a cone for vanishing eps > 0:
// every inequality value must be lexicographically positive in (at_q, at_p).
inline bool lex_interior(const std::vector<Rational>& at_q,
                         const std::vector<Rational>& at_p) {
  for (size_t i = 0; i < at_q.size(); ++i) {
    if (at_q[i] < 0) return false;
    if (at_q[i] == 0 && at_p[i] <= 0) return false;
  }
  return true;
}

}  // namespace detail_cox

// Identifies the cone above and the element below a codimension-2 face,
// and the parabolic generators a1, a2 numbered so the twisted pairing is
// nonnegative. `base` must be interior to the dominant chamber and generic
// for the face; non-generic bases throw.
inline StarData star_of_face(const CambrianDiagram& d,
                             const std::vector<IntVec>& face_rays,
                             const IntVec& base) {
  const CoxeterGroup& W = d.group();
  const RootData& rd = d.root_data();
  const int n = W.rank();
  IntVec q(n, 0);
  for (const IntVec& r : face_rays) {
    for (int i = 0; i < n; ++i) q[i] += r[i];
  }

  // Cone above: q - eps*base interior to exactly one maximal cone.
  int above = -1;
  for (size_t ci = 0; ci < d.sortables().size(); ++ci) {
    const SortableElement& s = d.sortables()[ci];
    std::vector<Rational> at_q, at_p;
    for (const IntVec& e : s.ineq) {
      at_q.push_back(rd.pair_weight_coroot(q, e));
      at_p.push_back(-rd.pair_weight_coroot(base, e));
    }
    if (detail_cox::lex_interior(at_q, at_p)) {
      if (above >= 0) throw std::invalid_argument("base point is not generic");
      above = static_cast<int>(ci);
    }
  }
  if (above < 0) throw std::invalid_argument("no cone above the face");
  const SortableElement& v = d.sortables()[above];

  // The two cone roots whose dual rays are not part of the face.
  const std::set<IntVec> face_set(face_rays.begin(), face_rays.end());
  std::vector<IntVec> betas;
  for (size_t k = 0; k < v.rays.size(); ++k) {
    if (!face_set.count(v.rays[k])) betas.push_back(v.c_roots[k]);
  }
  if (betas.size() != 2) throw std::logic_error("face misses two cone rays");
  for (IntVec& beta : betas) {
    if (!CoxeterGroup::is_negative(beta)) {
      throw std::logic_error("cone above has a positive root at the face");
    }
    for (long& x : beta) x = -x;  // beta_t, positive
  }

  // Element below: q2 + eps*base interior to exactly one chamber w*D, with
  // q2 interior to the codimension-2 face v*D intersect face span.
  const int velt = v.element;
  IntVec q2(n, 0);
  int vanish = 0;
  for (int k = 0; k < n; ++k) {
    IntVec ek(n, 0);
    ek[k] = 1;
    const IntVec u = W.act_weight(velt, ek);
    const bool flat = rd.pair_weight_root(u, betas[0]) == 0 &&
                      rd.pair_weight_root(u, betas[1]) == 0;
    if (flat) {
      ++vanish;
      for (int i = 0; i < n; ++i) q2[i] += u[i];
    }
  }
  if (vanish != n - 2) {
    throw std::logic_error("chamber of the cone above misses the face");
  }
  int below = -1;
  for (int w = 0; w < W.size(); ++w) {
    const IntVec wq = W.act_weight(W.inverse(w), q2);
    const IntVec wp = W.act_weight(W.inverse(w), base);
    std::vector<Rational> at_q(wq.begin(), wq.end());
    std::vector<Rational> at_p(wp.begin(), wp.end());
    if (detail_cox::lex_interior(at_q, at_p)) {
      if (below >= 0) throw std::invalid_argument("base point is not generic");
      below = w;
    }
  }
  if (below < 0) throw std::invalid_argument("base point is not generic");

  // Parabolic generators: v^{-1} (beta_t) is plus or minus a simple root.
  std::array<int, 2> a{-1, -1};
  for (int i = 0; i < 2; ++i) {
    IntVec r = W.act_root(W.inverse(velt), betas[i]);
    int idx = -1;
    for (int j = 0; j < n; ++j) {
      if (r[j] != 0) {
        if (idx >= 0 || (r[j] != 1 && r[j] != -1)) {
          throw std::logic_error("cover reflection is not simple under v");
        }
        idx = j;
      }
    }
    a[i] = idx;
  }

  // Number a1, a2 so that omega_c(beta_{w a1 w^-1}, beta_{w a2 w^-1}) >= 0.
  auto twisted_root = [&](int gen) {
    IntVec g = W.act_root(below, W.simple_root(gen));
    if (CoxeterGroup::is_negative(g)) {
      for (long& x : g) x = -x;
    }
    return g;
  };
  if (rd.omega_roots(twisted_root(a[0]), twisted_root(a[1])) < 0) {
    std::swap(a[0], a[1]);
  }
  {
    std::set<IntVec> lhs{twisted_root(a[0]), twisted_root(a[1])};
    std::set<IntVec> rhs{betas[0], betas[1]};
    if (lhs != rhs) {
      throw std::logic_error("twisted simples miss the face normals");
    }
  }

  StarData out;
  out.above = above;
  out.below = below;
  out.a1 = a[0];
  out.a2 = a[1];
  const IntMat& A = rd.a;
  out.sub_b = {{0, -A[a[0]][a[1]]}, {A[a[1]][a[0]], 0}};
  return out;
}

// star_of_face with deterministic retry over generic dominant base points.
inline StarData star_of_face_auto(const CambrianDiagram& d,
                                  const std::vector<IntVec>& face_rays) {
  const int n = d.group().rank();
  std::vector<IntVec> bases;
  for (long m : {2, 3, 5, 7}) {
    IntVec p(n);
    long v = 1;
    for (int i = 0; i < n; ++i, v *= m) p[i] = v;
    bases.push_back(std::move(p));
  }
  bases.push_back(IntVec(n, 1));
  for (const IntVec& base : bases) {
    try {
      return star_of_face(d, face_rays, base);
    } catch (const std::invalid_argument&) {
      continue;
    }
  }
  throw std::runtime_error("no generic base point found for the face");
}

// Exchange matrix after moving an initial generator s to final position in
// the generator order: row s and column s change sign.
inline IntMat conjugated_exchange(const IntMat& b, int s) {
  const int n = static_cast<int>(b.size());
  bool initial = true;
  for (int j = 0; j < n; ++j) initial = initial && b[s][j] >= 0;
  if (!initial) {
    throw std::invalid_argument("generator is not initial for this matrix");
  }
  IntMat out = b;
  for (int j = 0; j < n; ++j) {
    if (j == s) continue;
    out[s][j] = -b[s][j];
    out[j][s] = -b[j][s];
  }
  return out;
}

// Checks that the wall cycle around a codimension-2 face equals the wall
// cycle of the parabolic rank-2 diagram with every normal twisted by the
// element below the face, up to rotation and reversal.
inline bool star_matches_rank2(const CambrianDiagram& d, const Codim2Loop& loop,
                               const StarData& star) {
  const CoxeterGroup& W = d.group();
  std::vector<IntVec> actual;
  for (int wi : loop.wall_index) actual.push_back(d.walls()[wi].normal);

  const CambrianDiagram sub = CambrianDiagram(
      RootData::from_exchange(star.sub_b), {0, 1}, d.order());
  const std::vector<Codim2Loop> sub_loops = codim2_loops(sub);
  if (sub_loops.size() != 1) {
    throw std::logic_error("rank-2 diagram must have one loop");
  }
  std::vector<IntVec> expected;
  for (int wi : sub_loops[0].wall_index) {
    const IntVec& beta2 = sub.walls()[wi].normal;
    IntVec ambient(W.rank(), 0);
    ambient[star.a1] = beta2[0];
    ambient[star.a2] = beta2[1];
    IntVec g = W.act_root(star.below, ambient);
    if (CoxeterGroup::is_negative(g)) {
      for (long& x : g) x = -x;
    }
    expected.push_back(std::move(g));
  }

  const size_t k = actual.size();
  if (expected.size() != k) return false;
  for (int dir = 0; dir < 2; ++dir) {
    for (size_t shift = 0; shift < k; ++shift) {
      bool ok = true;
      for (size_t i = 0; i < k && ok; ++i) {
        const size_t j =
            dir == 0 ? (i + shift) % k : (k - 1 - i + shift) % k;
        ok = actual[i] == expected[j];
      }
      if (ok) return true;
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Merging facets by normal: the union of facets orthogonal to beta is one
// wall (the shard picked out by the Cambrian fan).

struct MergedWall {
  IntVec normal;                            // positive root
  std::vector<std::vector<IntVec>> pieces;  // facet ray sets
  bool covers_hyperplane = false;
};

// A union of simplicial codimension-1 cones fills the whole hyperplane
// exactly when it has no relative boundary: every (n-2)-face of a piece is
// shared by exactly two pieces.
inline bool pieces_cover_hyperplane(
    const std::vector<std::vector<IntVec>>& pieces) {
  std::map<std::vector<IntVec>, int> subface_count;
  for (const auto& rays : pieces) {
    if (rays.empty()) return false;  // rank 1 facet: a single ray never covers
    if (rays.size() == 1) {
      // Rank 2: pieces are rays; the line is covered by two opposite rays.
      continue;
    }
    for (size_t drop = 0; drop < rays.size(); ++drop) {
      std::vector<IntVec> key;
      for (size_t l = 0; l < rays.size(); ++l) {
        if (l != drop) key.push_back(rays[l]);
      }
      std::sort(key.begin(), key.end());
      ++subface_count[key];
    }
  }
  if (!pieces.empty() && pieces[0].size() == 1) {
    if (pieces.size() != 2) return false;
    const IntVec& r = pieces[0][0];
    const IntVec& s = pieces[1][0];
    for (size_t i = 0; i < r.size(); ++i) {
      if (r[i] != -s[i]) return false;
    }
    return true;
  }
  for (const auto& [key, count] : subface_count) {
    if (count != 2) return false;
  }
  return !pieces.empty();
}

inline std::vector<MergedWall> merge_equivalent(const CambrianDiagram& d) {
  std::map<IntVec, MergedWall> by_normal;
  for (const FacetWall& w : d.walls()) {
    MergedWall& m = by_normal[w.normal];
    m.normal = w.normal;
    m.pieces.push_back(w.rays);
  }
  std::vector<MergedWall> out;
  for (auto& [normal, m] : by_normal) {
    std::sort(m.pieces.begin(), m.pieces.end());
    m.covers_hyperplane = pieces_cover_hyperplane(m.pieces);
    long support = 0, height = 0;
    for (long x : normal) {
      support += x != 0 ? 1 : 0;
      height += x;
    }
    if (support == 1 && height == 1 && !m.covers_hyperplane) {
      throw std::logic_error("simple-root walls do not cover the hyperplane");
    }
    out.push_back(std::move(m));
  }
  return out;
}

// Rank-2 Cambrian walls in the shape of the rank-2 engine: one ray wall per
// non-simple normal, for direct comparison with a completed diagram.
inline std::map<IntVec, RayWall> rank2_cambrian_ray_walls(
    const CambrianDiagram& d) {
  if (d.group().rank() != 2) {
    throw std::invalid_argument("ray-wall view requires rank 2");
  }
  std::map<IntVec, RayWall> out;
  for (const MergedWall& m : merge_equivalent(d)) {
    long support = 0, height = 0;
    for (long x : m.normal) {
      support += x != 0 ? 1 : 0;
      height += x;
    }
    if (support == 1 && height == 1) continue;  // coordinate line
    if (m.pieces.size() != 1 || m.pieces[0].size() != 1) {
      throw std::logic_error("non-simple rank-2 wall is not a single ray");
    }
    const IntVec ray = m.pieces[0][0];
    TruncatedSeries f(2, d.order());
    f.add_term({0, 0}, 1);
    f.add_term(to_exponent(m.normal), 1);
    out.emplace(ray, RayWall{ray, m.normal, std::move(f)});
  }
  return out;
}

}  // namespace cluscat
