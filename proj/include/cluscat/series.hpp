#pragma once

// Truncated multivariate formal power series over exact rationals, the ring
// k[[y_1..y_n]] / m^{K+1} where m = (y_1..y_n) and truncation is by total
// degree. Also the Laurent container x^lambda y^beta0 * S(yhat) used by
// wall-crossing, path-ordered products and theta functions.
//
// Terms are stored in graded lexicographic order, which doubles as the
// canonical serialization order, so iteration and printing are deterministic.

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cluscat/rational.hpp"

namespace cluscat {

using Exponent = std::vector<int>;

inline int total_degree(const Exponent& e) {
  return std::accumulate(e.begin(), e.end(), 0);
}

struct GradedLex {
  bool operator()(const Exponent& a, const Exponent& b) const {
    const int da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    return a < b;
  }
};

class TruncatedSeries {
 public:
  using TermMap = std::map<Exponent, Rational, GradedLex>;

  // Sentinel order for exact polynomial arithmetic (no truncation).
  static constexpr int kNoTruncation = std::numeric_limits<int>::max();

  TruncatedSeries(int vars, int order) : vars_(vars), order_(order) {
    if (vars < 1) throw std::invalid_argument("series needs >= 1 variable");
    if (order < 0) throw std::invalid_argument("negative truncation order");
  }

  static TruncatedSeries constant(int vars, int order, const Rational& c) {
    TruncatedSeries s(vars, order);
    s.add_term(Exponent(vars, 0), c);
    return s;
  }

  static TruncatedSeries one(int vars, int order) {
    return constant(vars, order, 1);
  }

  static TruncatedSeries variable(int vars, int order, int index) {
    TruncatedSeries s(vars, order);
    Exponent e(vars, 0);
    e.at(index) = 1;
    s.add_term(e, 1);
    return s;
  }

  static TruncatedSeries monomial(int vars, int order, const Exponent& e,
                                  const Rational& c) {
    TruncatedSeries s(vars, order);
    s.add_term(e, c);
    return s;
  }

  int vars() const { return vars_; }
  int order() const { return order_; }
  const TermMap& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_one() const {
    return terms_.size() == 1 && total_degree(terms_.begin()->first) == 0 &&
           terms_.begin()->second == 1;
  }

  Rational coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  Rational constant_term() const { return coefficient(Exponent(vars_, 0)); }

  int max_total_degree() const {
    return terms_.empty() ? -1 : total_degree(terms_.rbegin()->first);
  }

  int min_total_degree() const {
    return terms_.empty() ? -1 : total_degree(terms_.begin()->first);
  }

  // Accumulates c * y^e, silently dropping terms beyond the truncation order.
  void add_term(const Exponent& e, const Rational& c) {
    if (static_cast<int>(e.size()) != vars_) {
      throw std::invalid_argument("exponent arity mismatch");
    }
    for (int v : e) {
      if (v < 0) throw std::invalid_argument("negative exponent");
    }
    if (c == 0) return;
    if (order_ != kNoTruncation && total_degree(e) > order_) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  TruncatedSeries& operator+=(const TruncatedSeries& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }

  TruncatedSeries& operator-=(const TruncatedSeries& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }

  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) {
    a += b;
    return a;
  }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) {
    a -= b;
    return a;
  }

  friend TruncatedSeries operator*(const TruncatedSeries& a,
                                   const TruncatedSeries& b) {
    a.check_compatible(b);
    TruncatedSeries r(a.vars_, a.order_);
    for (const auto& [ea, ca] : a.terms_) {
      const int da = total_degree(ea);
      for (const auto& [eb, cb] : b.terms_) {
        if (r.order_ != kNoTruncation && da + total_degree(eb) > r.order_) {
          continue;
        }
        Exponent e(a.vars_);
        for (int i = 0; i < a.vars_; ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    }
    return r;
  }

  TruncatedSeries& operator*=(const TruncatedSeries& o) {
    *this = *this * o;
    return *this;
  }

  friend TruncatedSeries operator*(const Rational& c, TruncatedSeries s) {
    if (c == 0) return TruncatedSeries(s.vars_, s.order_);
    for (auto& [e, v] : s.terms_) v *= c;
    return s;
  }

  TruncatedSeries operator-() const { return Rational(-1) * *this; }

  bool operator==(const TruncatedSeries& o) const {
    return vars_ == o.vars_ && order_ == o.order_ && terms_ == o.terms_;
  }
  bool operator!=(const TruncatedSeries& o) const { return !(*this == o); }

  // Multiplicative inverse mod m^{K+1}; needs a finite order and a unit
  // constant term.
  TruncatedSeries inverse() const {
    if (order_ == kNoTruncation) {
      throw std::domain_error("inverse requires a finite truncation order");
    }
    const Rational c0 = constant_term();
    if (c0 == 0) throw std::domain_error("inverse of non-unit series");
    // a = c0 (1 - g) with g of positive degree; a^{-1} = c0^{-1} sum g^k.
    TruncatedSeries g = one(vars_, order_) - Rational(1) / c0 * *this;
    TruncatedSeries acc = one(vars_, order_);
    TruncatedSeries p = one(vars_, order_);
    for (int k = 1; k <= order_; ++k) {
      p = p * g;
      if (p.is_zero()) break;
      acc += p;
    }
    return Rational(1) / c0 * acc;
  }

  TruncatedSeries pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    TruncatedSeries base = *this;
    TruncatedSeries r = one(vars_, order_);
    while (e > 0) {
      if (e & 1) r = r * base;
      e >>= 1;
      if (e > 0) base = base * base;
    }
    return r;
  }

  // Binomial series (1+u)^r for the series 1+u; integer exponents fall back
  // to pow() and allow any unit constant term.
  TruncatedSeries pow_rational(const Rational& r) const {
    if (is_integer(r)) return pow(r.get_num().get_si());
    if (order_ == kNoTruncation) {
      throw std::domain_error("fractional power requires a finite order");
    }
    if (constant_term() != 1) {
      throw std::domain_error("fractional power requires constant term 1");
    }
    TruncatedSeries u = *this - one(vars_, order_);
    TruncatedSeries acc = one(vars_, order_);
    TruncatedSeries p = one(vars_, order_);
    for (int k = 1; k <= order_; ++k) {
      p = p * u;
      if (p.is_zero()) break;
      acc += binomial_rational(r, k) * p;
    }
    return acc;
  }

  // Square root with positive constant term; the constant term must be the
  // square of a rational.
  TruncatedSeries sqrt_series() const {
    const Rational c0 = constant_term();
    if (c0 <= 0) throw std::domain_error("sqrt needs positive constant term");
    Integer sn, sd;
    if (mpz_perfect_square_p(c0.get_num().get_mpz_t()) == 0 ||
        mpz_perfect_square_p(c0.get_den().get_mpz_t()) == 0) {
      throw std::domain_error("sqrt needs a perfect-square constant term");
    }
    mpz_sqrt(sn.get_mpz_t(), c0.get_num().get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), c0.get_den().get_mpz_t());
    const Rational s0(sn, sd);
    return s0 * (Rational(1) / c0 * *this).pow_rational(Rational(1, 2));
  }

  // Lowers the truncation order (or cuts an exact polynomial down to K).
  TruncatedSeries truncated(int new_order) const {
    if (order_ != kNoTruncation && new_order > order_) {
      throw std::invalid_argument("cannot raise truncation order");
    }
    TruncatedSeries r(vars_, new_order);
    for (const auto& [e, c] : terms_) r.add_term(e, c);
    return r;
  }

  // Keeps only terms whose exponent is a non-negative integer multiple of d
  // (the constant term counts as the multiple 0).
  TruncatedSeries restrict_exponent_ray(const Exponent& d) const {
    if (static_cast<int>(d.size()) != vars_ || total_degree(d) <= 0) {
      throw std::invalid_argument("ray direction must be nonzero nonnegative");
    }
    int pivot = 0;
    while (d[pivot] == 0) ++pivot;
    TruncatedSeries r(vars_, order_);
    for (const auto& [e, c] : terms_) {
      if (e[pivot] % d[pivot] != 0) continue;
      const int t = e[pivot] / d[pivot];
      bool ok = true;
      for (int i = 0; i < vars_ && ok; ++i) ok = (e[i] == t * d[i]);
      if (ok) r.add_term(e, c);
    }
    return r;
  }

  // Composition S(args[0], ..., args[n-1]); every argument must have zero
  // constant term so the substitution is well-defined order by order.
  TruncatedSeries substitute(const std::vector<TruncatedSeries>& args) const {
    if (static_cast<int>(args.size()) != vars_) {
      throw std::invalid_argument("wrong number of substitution arguments");
    }
    if (order_ == kNoTruncation) {
      throw std::domain_error("substitute requires a finite order");
    }
    for (const auto& a : args) {
      if (a.constant_term() != 0) {
        throw std::domain_error("substitution argument has constant term");
      }
      if (a.order_ != order_) {
        throw std::invalid_argument("substitution order mismatch");
      }
    }
    const int m = args.front().vars_;
    // args[i]^k vanishes mod m^{K+1} once k > K, so cache powers up to K.
    std::vector<std::vector<TruncatedSeries>> pw(vars_);
    for (int i = 0; i < vars_; ++i) pw[i].push_back(one(m, order_));
    TruncatedSeries r(m, order_);
    for (const auto& [e, c] : terms_) {
      TruncatedSeries term = constant(m, order_, c);
      bool dead = false;
      for (int i = 0; i < vars_ && !dead; ++i) {
        if (e[i] == 0) continue;
        if (e[i] > order_) {
          dead = true;
          break;
        }
        while (static_cast<int>(pw[i].size()) <= e[i]) {
          pw[i].push_back(pw[i].back() * args[i]);
        }
        term = term * pw[i][e[i]];
        dead = term.is_zero();
      }
      if (!dead) r += term;
    }
    return r;
  }

  // The sub-polynomial of terms with exponent exactly d in variable `var`,
  // returned with that variable's exponent zeroed out.
  TruncatedSeries coefficient_slice(int var, int d) const {
    TruncatedSeries r(vars_, order_);
    for (const auto& [e, c] : terms_) {
      if (e[var] != d) continue;
      Exponent f = e;
      f[var] = 0;
      r.add_term(f, c);
    }
    return r;
  }

  int max_degree_in(int var) const {
    int m = -1;
    for (const auto& [e, c] : terms_) m = std::max(m, e[var]);
    return m;
  }

  // Canonical text form: terms in (total degree, lex) order, " + "/" - "
  // separators, unit coefficients and ^1 omitted, e.g. "1 + 2*y1*y2^3".
  std::string to_string(const std::string& prefix = "y") const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      const bool neg = c < 0;
      if (first) {
        if (neg) out << "-";
        first = false;
      } else {
        out << (neg ? " - " : " + ");
      }
      const Rational mag = neg ? Rational(-c) : c;
      std::string factors;
      for (int i = 0; i < vars_; ++i) {
        if (e[i] == 0) continue;
        if (!factors.empty()) factors += "*";
        factors += prefix + std::to_string(i + 1);
        if (e[i] > 1) factors += "^" + std::to_string(e[i]);
      }
      if (factors.empty()) {
        out << cluscat::to_string(mag);
      } else if (mag == 1) {
        out << factors;
      } else {
        out << cluscat::to_string(mag) << "*" << factors;
      }
    }
    return out.str();
  }

  // Parses the canonical text form (and tolerant variants with arbitrary
  // spacing). Inverse of to_string for the same vars/order/prefix.
  static TruncatedSeries parse(const std::string& text, int vars, int order,
                               const std::string& prefix = "y") {
    TruncatedSeries r(vars, order);
    size_t pos = 0;
    auto skip_ws = [&] {
      while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto fail = [&](const std::string& why) -> void {
      throw std::invalid_argument("series parse error at offset " +
                                  std::to_string(pos) + ": " + why);
    };
    skip_ws();
    if (pos == text.size()) fail("empty input");
    if (text.compare(pos, 1, "0") == 0 && pos + 1 == text.size()) return r;
    bool negative = false;
    if (text[pos] == '+' || text[pos] == '-') {
      negative = text[pos] == '-';
      ++pos;
    }
    while (true) {
      skip_ws();
      Rational coeff = 1;
      bool saw_coeff = false;
      if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        size_t start = pos;
        while (pos < text.size() &&
               (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '/')) {
          ++pos;
        }
        coeff = parse_rational(text.substr(start, pos - start));
        saw_coeff = true;
        skip_ws();
        if (pos < text.size() && text[pos] == '*') {
          ++pos;
          skip_ws();
        }
      }
      Exponent e(vars, 0);
      bool saw_var = false;
      while (pos < text.size() && text.compare(pos, prefix.size(), prefix) == 0 &&
             pos + prefix.size() < text.size() &&
             std::isdigit(static_cast<unsigned char>(text[pos + prefix.size()]))) {
        pos += prefix.size();
        size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        const int idx = std::stoi(text.substr(start, pos - start)) - 1;
        if (idx < 0 || idx >= vars) fail("variable index out of range");
        int exp = 1;
        if (pos < text.size() && text[pos] == '^') {
          ++pos;
          start = pos;
          while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
          if (start == pos) fail("missing exponent");
          exp = std::stoi(text.substr(start, pos - start));
        }
        e[idx] += exp;
        saw_var = true;
        skip_ws();
        if (pos < text.size() && text[pos] == '*') {
          ++pos;
          skip_ws();
        }
      }
      if (!saw_coeff && !saw_var) fail("expected a term");
      r.add_term(e, negative ? Rational(-coeff) : coeff);
      skip_ws();
      if (pos == text.size()) break;
      if (text[pos] == '+') {
        negative = false;
      } else if (text[pos] == '-') {
        negative = true;
      } else {
        fail("expected '+' or '-'");
      }
      ++pos;
    }
    return r;
  }

 private:
  void check_compatible(const TruncatedSeries& o) const {
    if (vars_ != o.vars_) throw std::invalid_argument("variable count mismatch");
    if (order_ != o.order_) throw std::invalid_argument("truncation order mismatch");
  }

  int vars_;
  int order_;
  TermMap terms_;
};

// Quotient num/den when the caller knows the division is exact (den has a
// unit constant term and the true quotient is polynomial). At finite order
// this is mul-by-inverse; in exact mode it is graded long division verified
// by re-multiplication. If max_quotient_degree is supplied, any quotient term
// beyond that bound trips an exception: that is the cheap exactness tripwire
// for divisions whose quotient degree is known a priori.
inline TruncatedSeries divide_exact(
    const TruncatedSeries& num, const TruncatedSeries& den,
    std::optional<int> max_quotient_degree = std::nullopt) {
  if (num.vars() != den.vars() || num.order() != den.order()) {
    throw std::invalid_argument("divide_exact operand mismatch");
  }
  const Rational d0 = den.constant_term();
  if (d0 == 0) throw std::domain_error("divisor has zero constant term");

  TruncatedSeries q(num.vars(), num.order());
  if (num.order() != TruncatedSeries::kNoTruncation) {
    q = num * den.inverse();
  } else {
    const int bound = num.is_zero() ? 0 : num.max_total_degree();
    TruncatedSeries r = num;
    while (!r.is_zero()) {
      const auto& [e, c] = *r.terms().begin();
      if (total_degree(e) > bound) {
        throw std::domain_error("inexact polynomial division");
      }
      TruncatedSeries t =
          TruncatedSeries::monomial(num.vars(), num.order(), e, c / d0);
      q += t;
      r -= t * den;
    }
    if (q * den != num) throw std::domain_error("inexact polynomial division");
  }
  if (max_quotient_degree && q.max_total_degree() > *max_quotient_degree) {
    throw std::domain_error("quotient exceeds its promised degree bound");
  }
  return q;
}

// x^lambda y^beta0 * S(yhat): the element shape preserved by wall crossing.
// lambda is a weight (fundamental-weight coordinates), beta0 a y-lattice
// vector (simple-root coordinates), coeff a series in the yhat variables.
struct LaurentElement {
  std::vector<long> lambda;
  std::vector<long> beta0;
  TruncatedSeries coeff;

  LaurentElement(std::vector<long> lam, std::vector<long> b0, TruncatedSeries s)
      : lambda(std::move(lam)), beta0(std::move(b0)), coeff(std::move(s)) {
    if (lambda.size() != beta0.size() ||
        static_cast<int>(lambda.size()) != coeff.vars()) {
      throw std::invalid_argument("LaurentElement arity mismatch");
    }
  }

  static LaurentElement monomial(std::vector<long> lam, int order) {
    const int n = static_cast<int>(lam.size());
    return LaurentElement(std::move(lam), std::vector<long>(n, 0),
                          TruncatedSeries::one(n, order));
  }

  int vars() const { return coeff.vars(); }
  int order() const { return coeff.order(); }

  friend LaurentElement operator*(const LaurentElement& a,
                                  const LaurentElement& b) {
    std::vector<long> lam(a.lambda.size()), b0(a.beta0.size());
    for (size_t i = 0; i < lam.size(); ++i) {
      lam[i] = a.lambda[i] + b.lambda[i];
      b0[i] = a.beta0[i] + b.beta0[i];
    }
    return LaurentElement(std::move(lam), std::move(b0), a.coeff * b.coeff);
  }

  bool operator==(const LaurentElement& o) const {
    return lambda == o.lambda && beta0 == o.beta0 && coeff == o.coeff;
  }
  bool operator!=(const LaurentElement& o) const { return !(*this == o); }
};

}  // namespace cluscat
