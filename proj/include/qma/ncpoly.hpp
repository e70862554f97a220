#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <sstream>
#include <vector>

#include "qma/field.hpp"

namespace qma {

// A word in the free monoid on the N^2 generators M^i_j, stored as the
// sequence of generator ids i*N + j. The empty word is the unit.
using GenWord = std::vector<std::uint16_t>;

inline std::uint16_t gen_id(int i, int j, int n) {
    return static_cast<std::uint16_t>(i * n + j);
}

// Degree-lexicographic order: shorter words first, then lexicographic by
// generator id (i.e. by (row, column)). This is the monomial order used for
// echelon pivots and for deterministic rendering.
struct DegLexLess {
    bool operator()(const GenWord& a, const GenWord& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};

// Noncommutative polynomial in the generators M^i_j with coefficients in K.
// Zero coefficients are never stored.
template <class K>
class NCPoly {
public:
    NCPoly() = default;
    explicit NCPoly(const K& c) {
        if (!scalar_is_zero(c)) t_[GenWord{}] = c;
    }

    static NCPoly one() { return NCPoly(K(1)); }
    static NCPoly generator(int i, int j, int n) {
        NCPoly p;
        p.t_[GenWord{gen_id(i, j, n)}] = K(1);
        return p;
    }
    static NCPoly monomial(const GenWord& w, const K& c) {
        NCPoly p;
        if (!scalar_is_zero(c)) p.t_[w] = c;
        return p;
    }

    bool is_zero() const { return t_.empty(); }
    const std::map<GenWord, K, DegLexLess>& terms() const { return t_; }
    std::size_t term_count() const { return t_.size(); }

    K coeff(const GenWord& w) const {
        auto it = t_.find(w);
        return it == t_.end() ? K(0) : it->second;
    }

    // pre: !is_zero(). Largest monomial in deg-lex order.
    const GenWord& leading_word() const { return t_.rbegin()->first; }
    const K& leading_coeff() const { return t_.rbegin()->second; }

    bool is_homogeneous() const {
        if (t_.empty()) return true;
        const std::size_t d = t_.begin()->first.size();
        return t_.rbegin()->first.size() == d;
    }
    // pre: homogeneous and nonzero
    int degree() const { return static_cast<int>(t_.begin()->first.size()); }

    void add_term(const GenWord& w, const K& c) {
        if (scalar_is_zero(c)) return;
        auto it = t_.find(w);
        if (it == t_.end()) {
            t_[w] = c;
        } else {
            it->second = it->second + c;
            if (scalar_is_zero(it->second)) t_.erase(it);
        }
    }

    NCPoly operator-() const {
        NCPoly r;
        for (const auto& [w, c] : t_) r.t_[w] = K(0) - c;
        return r;
    }
    NCPoly& operator+=(const NCPoly& o) {
        for (const auto& [w, c] : o.t_) add_term(w, c);
        return *this;
    }
    NCPoly& operator-=(const NCPoly& o) {
        for (const auto& [w, c] : o.t_) add_term(w, K(0) - c);
        return *this;
    }
    NCPoly operator+(const NCPoly& o) const {
        NCPoly r = *this;
        r += o;
        return r;
    }
    NCPoly operator-(const NCPoly& o) const {
        NCPoly r = *this;
        r -= o;
        return r;
    }

    // Word concatenation preserves the left-to-right factor order.
    NCPoly operator*(const NCPoly& o) const {
        NCPoly r;
        GenWord w;
        for (const auto& [w1, c1] : t_)
            for (const auto& [w2, c2] : o.t_) {
                w = w1;
                w.insert(w.end(), w2.begin(), w2.end());
                r.add_term(w, c1 * c2);
            }
        return r;
    }

    NCPoly operator*(const K& c) const {
        NCPoly r;
        if (scalar_is_zero(c)) return r;
        for (const auto& [w, v] : t_) r.t_[w] = v * c;
        return r;
    }

    bool operator==(const NCPoly& o) const { return t_ == o.t_; }
    bool operator!=(const NCPoly& o) const { return t_ != o.t_; }

    // The image in the commutative polynomial ring: letters of each word are
    // sorted, forgetting the order of factors.
    NCPoly abelianized() const {
        NCPoly r;
        for (const auto& [w, c] : t_) {
            GenWord s = w;
            std::sort(s.begin(), s.end());
            r.add_term(s, c);
        }
        return r;
    }

    // Splits by degree; keys are word lengths.
    std::map<int, NCPoly> homogeneous_parts() const {
        std::map<int, NCPoly> parts;
        for (const auto& [w, c] : t_) parts[static_cast<int>(w.size())].add_term(w, c);
        return parts;
    }

    template <class F>
    auto map_coeffs(F&& f) const {
        NCPoly<std::decay_t<decltype(f(std::declval<K>()))>> r;
        for (const auto& [w, c] : t_) r.add_term(w, f(c));
        return r;
    }

    // Rendering with monomials as M[i,j] products, highest monomial first,
    // coefficients in the expression grammar.
    std::string str(int n) const {
        if (t_.empty()) return "0";
        std::ostringstream out;
        bool first = true;
        for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
            std::string cs = scalar_str(it->second);
            if (!first) out << " + ";
            if (cs.find_first_of("+-/") != std::string::npos && cs.size() > 1) cs = "(" + cs + ")";
            if (it->first.empty()) {
                out << cs;
            } else {
                if (cs != "1") out << cs << "*";
                bool fg = true;
                for (std::uint16_t g : it->first) {
                    if (!fg) out << "*";
                    out << "M[" << g / n << "," << g % n << "]";
                    fg = false;
                }
            }
            first = false;
        }
        return out.str();
    }

private:
    std::map<GenWord, K, DegLexLess> t_;
};

} // namespace qma
