#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mapforge/error.hpp"
#include "mapforge/numbers.hpp"

namespace mapforge {

// Exact multivariate power series truncated at a fixed total degree. Terms
// of total degree above the cutoff are dropped by every operation, so the
// represented object is the full series modulo that degree; coefficients
// are exact rationals and zero coefficients are never stored.
class TruncatedSeries {
  public:
    using Exponents = std::vector<int>;

    TruncatedSeries(std::vector<std::string> variables, int order)
        : vars_(std::move(variables)), order_(order) {
        if (order_ < 0) throw MapError(ErrorCode::BadInterval, "the truncation order is negative");
        if (vars_.empty()) throw MapError(ErrorCode::DomainError, "a series needs a variable");
    }

    static TruncatedSeries constant(std::vector<std::string> variables, int order, Rat c) {
        TruncatedSeries s(std::move(variables), order);
        if (c != 0) s.coeff_[Exponents(s.vars_.size(), 0)] = std::move(c);
        return s;
    }

    static TruncatedSeries variable(std::vector<std::string> variables, int order, int index) {
        TruncatedSeries s(std::move(variables), order);
        if (index < 0 || index >= static_cast<int>(s.vars_.size()))
            throw MapError(ErrorCode::DomainError, "no such variable in the series");
        if (order >= 1) {
            Exponents e(s.vars_.size(), 0);
            e[index] = 1;
            s.coeff_[e] = 1;
        }
        return s;
    }

    const std::vector<std::string>& variables() const { return vars_; }
    int order() const { return order_; }
    const std::map<Exponents, Rat>& terms() const { return coeff_; }
    bool is_zero() const { return coeff_.empty(); }

    Rat coefficient(const Exponents& e) const {
        if (static_cast<int>(e.size()) != nvars())
            throw MapError(ErrorCode::DomainError, "exponent tuple has the wrong arity");
        auto it = coeff_.find(e);
        return it == coeff_.end() ? Rat(0) : it->second;
    }

    // Minimum total degree of a nonzero term; order()+1 for the zero series.
    int valuation() const {
        int v = order_ + 1;
        for (const auto& [e, c] : coeff_) v = std::min(v, degree_of(e));
        return v;
    }

    void add_term(const Exponents& e, const Rat& c) {
        if (static_cast<int>(e.size()) != nvars())
            throw MapError(ErrorCode::DomainError, "exponent tuple has the wrong arity");
        if (degree_of(e) > order_ || c == 0) return;
        Rat& slot = coeff_[e];
        slot += c;
        if (slot == 0) coeff_.erase(e);
    }

    TruncatedSeries& operator+=(const TruncatedSeries& o) {
        check_compatible(o);
        for (const auto& [e, c] : o.coeff_) add_term(e, c);
        return *this;
    }
    TruncatedSeries& operator-=(const TruncatedSeries& o) {
        check_compatible(o);
        for (const auto& [e, c] : o.coeff_) add_term(e, -c);
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
    TruncatedSeries operator-() const {
        TruncatedSeries r(vars_, order_);
        for (const auto& [e, c] : coeff_) r.coeff_[e] = -c;
        return r;
    }

    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
        a.check_compatible(b);
        TruncatedSeries r(a.vars_, a.order_);
        for (const auto& [ea, ca] : a.coeff_) {
            int da = degree_of(ea);
            for (const auto& [eb, cb] : b.coeff_) {
                if (da + degree_of(eb) > a.order_) continue;
                Exponents e(ea);
                for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
                r.add_term(e, ca * cb);
            }
        }
        return r;
    }
    TruncatedSeries& operator*=(const TruncatedSeries& o) { return *this = *this * o; }

    TruncatedSeries& operator*=(const Rat& c) {
        if (c == 0) {
            coeff_.clear();
            return *this;
        }
        for (auto& [e, v] : coeff_) v *= c;
        return *this;
    }
    friend TruncatedSeries operator*(TruncatedSeries a, const Rat& c) {
        a *= c;
        return a;
    }
    friend TruncatedSeries operator*(const Rat& c, TruncatedSeries a) {
        a *= c;
        return a;
    }

    bool operator==(const TruncatedSeries& o) const {
        return vars_ == o.vars_ && order_ == o.order_ && coeff_ == o.coeff_;
    }
    bool operator!=(const TruncatedSeries& o) const { return !(*this == o); }

    // The same series with terms above the (not larger) new order dropped.
    TruncatedSeries truncated(int new_order) const {
        if (new_order < 0 || new_order > order_)
            throw MapError(ErrorCode::BadInterval, "can only truncate to a smaller order");
        TruncatedSeries r(vars_, new_order);
        for (const auto& [e, c] : coeff_)
            if (degree_of(e) <= new_order) r.coeff_[e] = c;
        return r;
    }

    // f with the roles of variables i and j exchanged: the result is
    // f(..., x_j, ..., x_i, ...) over the same variable list, so a series
    // is symmetric in the two variables exactly when it equals its swap.
    TruncatedSeries swapped(int i, int j) const {
        if (i < 0 || j < 0 || i >= nvars() || j >= nvars())
            throw MapError(ErrorCode::DomainError, "no such variable in the series");
        TruncatedSeries r(vars_, order_);
        for (const auto& [e, c] : coeff_) {
            Exponents e2(e);
            std::swap(e2[i], e2[j]);
            r.coeff_[std::move(e2)] = c;
        }
        return r;
    }

    // Substitute a series for each variable; arguments with nonzero
    // constant term are rejected so the composition stays well defined at
    // the shared truncation order.
    TruncatedSeries substituted(const std::vector<TruncatedSeries>& args) const {
        if (static_cast<int>(args.size()) != nvars())
            throw MapError(ErrorCode::DomainError, "one substitution per variable is required");
        for (const auto& a : args) {
            args.front().check_compatible(a);
            if (a.coefficient(Exponents(a.nvars(), 0)) != 0)
                throw MapError(ErrorCode::NonContracting,
                               "substituted series must have constant term zero");
        }
        TruncatedSeries r(args.front().vars_, args.front().order_);
        for (const auto& [e, c] : coeff_) {
            TruncatedSeries term = TruncatedSeries::constant(r.vars_, r.order_, c);
            for (int i = 0; i < nvars() && !term.is_zero(); ++i)
                for (int k = 0; k < e[i]; ++k) term *= args[i];
            r += term;
        }
        return r;
    }

    std::string to_string() const {
        if (coeff_.empty()) return "0";
        // sort by total degree, then reverse-lexicographic on exponents
        std::vector<std::pair<Exponents, Rat>> ts(coeff_.begin(), coeff_.end());
        std::stable_sort(ts.begin(), ts.end(), [](const auto& a, const auto& b) {
            int da = degree_of(a.first), db = degree_of(b.first);
            return da != db ? da < db : a.first > b.first;
        });
        std::ostringstream out;
        bool first = true;
        for (const auto& [e, c] : ts) {
            Rat a = c;
            if (first) {
                if (a < 0) {
                    out << "-";
                    a = -a;
                }
            } else {
                out << (a < 0 ? " - " : " + ");
                if (a < 0) a = -a;
            }
            first = false;
            bool printed = false;
            if (degree_of(e) == 0 || a != 1) {
                out << a.str();
                printed = true;
            }
            for (size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0) continue;
                if (printed) out << "*";
                printed = true;
                out << vars_[i];
                if (e[i] > 1) out << "^" << e[i];
            }
        }
        return out.str();
    }

    int nvars() const { return static_cast<int>(vars_.size()); }

    static int degree_of(const Exponents& e) {
        int d = 0;
        for (int x : e) d += x;
        return d;
    }

  private:
    void check_compatible(const TruncatedSeries& o) const {
        if (vars_ != o.vars_ || order_ != o.order_)
            throw MapError(ErrorCode::DomainError,
                           "series with different variables or orders cannot be combined");
    }

    std::vector<std::string> vars_;
    int order_;
    std::map<Exponents, Rat> coeff_;
};

inline TruncatedSeries power(const TruncatedSeries& s, int n) {
    if (n < 0) throw MapError(ErrorCode::DomainError, "series powers need a nonnegative exponent");
    TruncatedSeries r = TruncatedSeries::constant(s.variables(), s.order(), 1);
    for (int k = 0; k < n; ++k) r *= s;
    return r;
}

// Iterate s -> system(s) from the zero tuple until it stabilizes. The
// system must be contracting in the valuation metric (every equation has
// zero constant term and the image gains accuracy each round), which makes
// the fixed point unique; otherwise NonContracting is raised.
inline std::vector<TruncatedSeries> solve_fixed_point(
    const std::function<std::vector<TruncatedSeries>(const std::vector<TruncatedSeries>&)>&
        system,
    const std::vector<std::string>& variables, int order, int arity) {
    if (arity <= 0) throw MapError(ErrorCode::DomainError, "the system needs an unknown");
    std::vector<TruncatedSeries> cur(
        arity, TruncatedSeries::constant(variables, order, 0));
    for (int round = 0; round <= order + 1; ++round) {
        std::vector<TruncatedSeries> next = system(cur);
        if (static_cast<int>(next.size()) != arity)
            throw MapError(ErrorCode::DomainError, "the system changed arity");
        for (const auto& s : next)
            if (s.coefficient(TruncatedSeries::Exponents(s.nvars(), 0)) != 0)
                throw MapError(ErrorCode::NonContracting,
                               "the system has a nonzero constant term");
        if (next == cur) return cur;
        cur = std::move(next);
    }
    throw MapError(ErrorCode::NonContracting, "the iteration did not stabilize");
}

}  // namespace mapforge
