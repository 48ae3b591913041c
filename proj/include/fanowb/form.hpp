#pragma once

// Sparse homogeneous multivariate polynomials over an exact field.
//
// Variables are x0..x{nvars-1}. Terms live in a map keyed by exponent
// vectors in graded-lex order (x0 largest), so two forms are equal iff
// their maps are equal. Zero coefficients are never stored.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fanowb/scalar.hpp"

namespace fanowb {

using Exponent = std::vector<std::uint16_t>;

inline int total_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

/// All exponent vectors of length nvars summing to degree, in graded-lex
/// descending order.
inline std::vector<Exponent> all_exponents(int nvars, int degree) {
    std::vector<Exponent> out;
    Exponent e(nvars, 0);
    auto rec = [&](auto&& self, int i, int left) -> void {
        if (i == nvars - 1) {
            e[i] = static_cast<std::uint16_t>(left);
            out.push_back(e);
            return;
        }
        for (int a = left; a >= 0; --a) {
            e[i] = static_cast<std::uint16_t>(a);
            self(self, i + 1, left - a);
        }
    };
    if (nvars > 0) rec(rec, 0, degree);
    return out;
}

/// Graded lex, descending: higher total degree first, then larger x0
/// exponent, then larger x1 exponent, ...
struct GrlexGreater {
    bool operator()(const Exponent& a, const Exponent& b) const {
        int da = total_degree(a), db = total_degree(b);
        if (da != db) return da > db;
        return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
    }
};

template <ExactField F>
class Form {
public:
    using value_type = typename F::value_type;
    using TermMap = std::map<Exponent, value_type, GrlexGreater>;

    Form(F field, int nvars, int degree) : field_(std::move(field)), nvars_(nvars), degree_(degree) {
        require(nvars >= 1, ErrorKind::InvalidInput, "a form needs at least one variable");
        require(degree >= 0, ErrorKind::InvalidInput, "negative degree");
    }

    static Form variable(const F& field, int nvars, int i) {
        Form f(field, nvars, 1);
        Exponent e(nvars, 0);
        e.at(i) = 1;
        f.add_term(e, field.one());
        return f;
    }

    static Form constant(const F& field, int nvars, value_type c) {
        Form f(field, nvars, 0);
        f.add_term(Exponent(nvars, 0), c);
        return f;
    }

    static Form monomial(const F& field, const Exponent& e, value_type c) {
        Form f(field, static_cast<int>(e.size()), total_degree(e));
        f.add_term(e, c);
        return f;
    }

    /// Linear form sum_j coeffs[j] * x_j.
    static Form linear(const F& field, std::span<const value_type> coeffs) {
        int n = static_cast<int>(coeffs.size());
        Form f(field, n, 1);
        for (int j = 0; j < n; ++j) {
            Exponent e(n, 0);
            e[j] = 1;
            f.add_term(e, coeffs[j]);
        }
        return f;
    }

    const F& field() const { return field_; }
    int nvars() const { return nvars_; }
    int degree() const { return degree_; }
    const TermMap& terms() const { return terms_; }
    std::size_t num_terms() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    value_type coefficient(const Exponent& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? field_.zero() : it->second;
    }

    /// Adds c * x^e; the exponent must have the form's degree.
    void add_term(const Exponent& e, const value_type& c) {
        require(static_cast<int>(e.size()) == nvars_, ErrorKind::DimensionMismatch,
                "exponent length differs from variable count");
        require(total_degree(e) == degree_, ErrorKind::NonHomogeneous,
                "term of degree " + std::to_string(total_degree(e)) + " in a form of degree " +
                    std::to_string(degree_));
        if (fanowb::is_zero(c)) return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second = it->second + c;
            if (fanowb::is_zero(it->second)) terms_.erase(it);
        }
    }

    friend bool operator==(const Form& a, const Form& b) {
        return a.nvars_ == b.nvars_ && a.degree_ == b.degree_ && a.terms_ == b.terms_;
    }

    Form& operator+=(const Form& o) {
        check_compatible(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    Form& operator-=(const Form& o) {
        check_compatible(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    friend Form operator+(Form a, const Form& b) { return a += b; }
    friend Form operator-(Form a, const Form& b) { return a -= b; }
    friend Form operator-(Form a) {
        for (auto& [e, c] : a.terms_) c = -c;
        return a;
    }

    Form scaled(const value_type& s) const {
        Form r(field_, nvars_, degree_);
        if (fanowb::is_zero(s)) return r;
        for (const auto& [e, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), e, c * s);
        return r;
    }

    friend Form operator*(const Form& a, const Form& b) {
        require(a.nvars_ == b.nvars_, ErrorKind::DimensionMismatch, "variable counts differ");
        Form r(a.field_, a.nvars_, a.degree_ + b.degree_);
        Exponent e(a.nvars_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                for (int i = 0; i < a.nvars_; ++i) e[i] = static_cast<std::uint16_t>(ea[i] + eb[i]);
                r.add_term(e, ca * cb);
            }
        return r;
    }

    Form pow(int k) const {
        Form r = constant(field_, nvars_, field_.one());
        for (int i = 0; i < k; ++i) r = r * *this;
        return r;
    }

    value_type eval(std::span<const value_type> pt) const {
        require(static_cast<int>(pt.size()) == nvars_, ErrorKind::DimensionMismatch,
                "point has " + std::to_string(pt.size()) + " coordinates, form has " +
                    std::to_string(nvars_) + " variables");
        // power table per variable, reused across terms
        std::vector<std::vector<value_type>> pw(nvars_);
        for (int i = 0; i < nvars_; ++i) {
            pw[i].reserve(degree_ + 1);
            pw[i].push_back(field_.one());
            for (int k = 1; k <= degree_; ++k) pw[i].push_back(pw[i].back() * pt[i]);
        }
        value_type s = field_.zero();
        for (const auto& [e, c] : terms_) {
            value_type t = c;
            for (int i = 0; i < nvars_; ++i)
                if (e[i]) t = t * pw[i][e[i]];
            s = s + t;
        }
        return s;
    }

    /// Replaces x_i by images[i]; all images share a degree and a variable set.
    Form substitute(std::span<const Form> images) const {
        require(static_cast<int>(images.size()) == nvars_, ErrorKind::DimensionMismatch,
                "need one image per variable");
        require(!images.empty(), ErrorKind::InvalidInput, "no images");
        int e = images[0].degree();
        int m = images[0].nvars();
        for (const auto& g : images) {
            require(g.degree() == e, ErrorKind::DegreeMismatch, "images of differing degrees");
            require(g.nvars() == m, ErrorKind::DimensionMismatch, "images in differing variable sets");
        }
        std::vector<std::vector<Form>> pw(nvars_);
        for (int i = 0; i < nvars_; ++i) {
            pw[i].push_back(constant(field_, m, field_.one()));
            for (int k = 1; k <= degree_; ++k) pw[i].push_back(pw[i].back() * images[i]);
        }
        Form r(field_, m, degree_ * e);
        for (const auto& [ex, c] : terms_) {
            Form t = constant(field_, m, c);
            for (int i = 0; i < nvars_; ++i)
                if (ex[i]) t = t * pw[i][ex[i]];
            r += t;
        }
        return r;
    }

    /// Formal partial derivative with respect to x_i (no characteristic check).
    Form derivative(int i) const {
        require(i >= 0 && i < nvars_, ErrorKind::IndexOutOfRange, "variable index");
        Form r(field_, nvars_, degree_ > 0 ? degree_ - 1 : 0);
        for (const auto& [e, c] : terms_) {
            if (e[i] == 0) continue;
            Exponent d = e;
            --d[i];
            r.add_term(d, c * field_.from_int(e[i]));
        }
        return r;
    }

    /// Gradient evaluated at a point, computed term by term.
    std::vector<value_type> gradient_at(std::span<const value_type> pt) const {
        std::vector<value_type> g(nvars_, field_.zero());
        for (int i = 0; i < nvars_; ++i) g[i] = derivative(i).eval(pt);
        return g;
    }

    /// Same terms, variables renumbered: variable i goes to slot map[i] of a
    /// form with new_nvars variables.
    Form relabel(int new_nvars, std::span<const int> map) const {
        require(static_cast<int>(map.size()) == nvars_, ErrorKind::DimensionMismatch, "relabel map size");
        Form r(field_, new_nvars, degree_);
        for (const auto& [e, c] : terms_) {
            Exponent ne(new_nvars, 0);
            for (int i = 0; i < nvars_; ++i) {
                if (e[i] == 0) continue;
                require(map[i] >= 0 && map[i] < new_nvars, ErrorKind::IndexOutOfRange,
                        "variable x" + std::to_string(i) + " dropped by relabel while in use");
                ne[map[i]] = static_cast<std::uint16_t>(ne[map[i]] + e[i]);
            }
            r.add_term(ne, c);
        }
        return r;
    }

    /// Variables that occur with positive exponent in some term.
    std::vector<bool> support() const {
        std::vector<bool> s(nvars_, false);
        for (const auto& [e, c] : terms_)
            for (int i = 0; i < nvars_; ++i)
                if (e[i]) s[i] = true;
        return s;
    }

    std::string render() const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            std::string cs = field_.render(c);
            bool neg = !cs.empty() && cs[0] == '-';
            if (neg) cs.erase(0, 1);
            if (first)
                out += neg ? "-" : "";
            else
                out += neg ? " - " : " + ";
            first = false;
            std::string mono;
            for (int i = 0; i < nvars_; ++i) {
                if (!e[i]) continue;
                if (!mono.empty()) mono += "*";
                mono += "x" + std::to_string(i);
                if (e[i] > 1) mono += "^" + std::to_string(e[i]);
            }
            if (mono.empty())
                out += cs;
            else if (cs == "1")
                out += mono;
            else
                out += cs + "*" + mono;
        }
        return out;
    }

private:
    void check_compatible(const Form& o) const {
        require(o.nvars_ == nvars_, ErrorKind::DimensionMismatch, "variable counts differ");
        require(o.degree_ == degree_, ErrorKind::DegreeMismatch,
                "degrees " + std::to_string(degree_) + " and " + std::to_string(o.degree_));
    }

    F field_;
    int nvars_;
    int degree_;
    TermMap terms_;
};

/// Public partial-derivative operation. Prime fields must have p > d so
/// the integer factors of differentiation stay invertible.
template <ExactField F>
std::vector<Form<F>> partial_derivatives(const Form<F>& f) {
    require(f.degree() >= 1, ErrorKind::InvalidInput, "derivatives of a constant form");
    if constexpr (F::is_prime_field) {
        require(f.field().characteristic() > static_cast<std::uint32_t>(f.degree()),
                ErrorKind::CharacteristicTooSmall,
                "p = " + std::to_string(f.field().characteristic()) + " must exceed d = " +
                    std::to_string(f.degree()));
    }
    std::vector<Form<F>> out;
    out.reserve(f.nvars());
    for (int i = 0; i < f.nvars(); ++i) out.push_back(f.derivative(i));
    return out;
}

namespace detail {

class FormLexer {
public:
    explicit FormLexer(std::string_view s) : s_(s) {}

    void skip_ws() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool done() {
        skip_ws();
        return i_ >= s_.size();
    }
    char peek() {
        skip_ws();
        return i_ < s_.size() ? s_[i_] : '\0';
    }
    bool accept(char c) {
        if (peek() == c) {
            ++i_;
            return true;
        }
        return false;
    }
    BigInt integer() {
        skip_ws();
        std::size_t start = i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        if (start == i_) error("expected an integer");
        return BigInt(std::string(s_.substr(start, i_ - start)));
    }
    [[noreturn]] void error(const std::string& msg) const {
        fail(ErrorKind::InvalidInput, msg + " at offset " + std::to_string(i_) + " in \"" +
                                          std::string(s_) + "\"");
    }

private:
    std::string_view s_;
    std::size_t i_ = 0;
};

}  // namespace detail

/// Parses `[coeff '*'] factor ('*' factor)*` terms joined by '+'/'-'.
/// A literal "0" needs `degree_hint` (the zero form has no intrinsic degree).
template <ExactField F>
Form<F> parse_form(std::string_view text, int nvars, const F& field, std::optional<int> degree_hint = {}) {
    detail::FormLexer lx(text);
    struct Term {
        Exponent e;
        typename F::value_type c;
    };
    std::vector<Term> terms;
    bool first = true;
    while (!lx.done()) {
        bool neg = false;
        if (lx.accept('+')) {
        } else if (lx.accept('-')) {
            neg = true;
        } else if (!first) {
            lx.error("expected '+' or '-'");
        }
        first = false;
        auto c = field.one();
        Exponent e(nvars, 0);
        bool have_factor = false;
        if (std::isdigit(static_cast<unsigned char>(lx.peek()))) {
            BigInt num = lx.integer();
            BigInt den = 1;
            if (lx.accept('/')) den = lx.integer();
            c = field.from_fraction(num, den);
            lx.accept('*');
        }
        while (lx.peek() == 'x') {
            lx.accept('x');
            BigInt idx = lx.integer();
            if (idx >= nvars)
                fail(ErrorKind::UnknownVariable,
                     "x" + idx.str() + " with only " + std::to_string(nvars) + " variables");
            int exp = 1;
            if (lx.accept('^')) exp = lx.integer().convert_to<int>();
            int i = idx.convert_to<int>();
            e[i] = static_cast<std::uint16_t>(e[i] + exp);
            have_factor = true;
            if (!lx.accept('*')) break;
        }
        (void)have_factor;
        if (neg) c = -c;
        terms.push_back({std::move(e), c});
    }
    if (terms.empty()) lx.error("empty polynomial");
    int degree = total_degree(terms.front().e);
    for (const auto& t : terms)
        if (total_degree(t.e) != degree)
            fail(ErrorKind::NonHomogeneous, "terms of degree " + std::to_string(degree) + " and " +
                                                std::to_string(total_degree(t.e)) + " in \"" +
                                                std::string(text) + "\"");
    Form<F> f(field, nvars, degree);
    for (const auto& t : terms) f.add_term(t.e, t.c);
    if (f.is_zero()) {
        if (!degree_hint) fail(ErrorKind::ZeroPolynomial, "\"" + std::string(text) + "\" is zero");
        return Form<F>(field, nvars, *degree_hint);
    }
    if (degree_hint && *degree_hint != f.degree())
        fail(ErrorKind::DegreeMismatch, "expected degree " + std::to_string(*degree_hint) + ", got " +
                                            std::to_string(f.degree()));
    return f;
}

/// Coefficientwise reduction of an integer-coefficient form into another field.
template <ExactField To, ExactField From>
Form<To> reduce_form(const Form<From>& f, const To& to) {
    Form<To> r(to, f.nvars(), f.degree());
    for (const auto& [e, c] : f.terms()) {
        auto lift = integer_lift(c);
        if (!lift) fail(ErrorKind::InvalidInput, "non-integral coefficient cannot be reduced");
        r.add_term(e, to.from_big(*lift));
    }
    return r;
}

}  // namespace fanowb
