#pragma once

#include <algorithm>
#include <cctype>
#include <sstream>
#include <string>
#include <vector>

#include "mapforge/error.hpp"

namespace mapforge {

// Permutation of {1..n}. Index 0 of the image table is unused.
class Perm {
  public:
    Perm() : img_(1, 0) {}

    explicit Perm(int n) : img_(n + 1) {
        for (int i = 0; i <= n; ++i) img_[i] = i;
    }

    // Takes the image table with a leading dummy entry absent: images[i] is the
    // image of i+1.
    static Perm from_images(const std::vector<int>& images) {
        Perm p(static_cast<int>(images.size()));
        for (int i = 0; i < static_cast<int>(images.size()); ++i) p.img_[i + 1] = images[i];
        p.validate();
        return p;
    }

    int size() const { return static_cast<int>(img_.size()) - 1; }

    int operator()(int d) const { return img_[d]; }

    void set(int d, int image) { img_[d] = image; }

    bool operator==(const Perm& o) const { return img_ == o.img_; }

    Perm inverse() const {
        Perm r(size());
        for (int i = 1; i <= size(); ++i) r.img_[img_[i]] = i;
        return r;
    }

    // (a.compose(b))(x) = a(b(x))
    Perm compose(const Perm& b) const {
        Perm r(size());
        for (int i = 1; i <= size(); ++i) r.img_[i] = img_[b.img_[i]];
        return r;
    }

    bool is_identity() const {
        for (int i = 1; i <= size(); ++i)
            if (img_[i] != i) return false;
        return true;
    }

    bool is_involution() const {
        for (int i = 1; i <= size(); ++i)
            if (img_[img_[i]] != i) return false;
        return true;
    }

    bool has_fixed_point() const {
        for (int i = 1; i <= size(); ++i)
            if (img_[i] == i) return true;
        return false;
    }

    // Cycles in canonical order: each cycle starts at its minimum, cycles
    // sorted by their minima. Singletons included.
    std::vector<std::vector<int>> cycles() const {
        std::vector<std::vector<int>> out;
        std::vector<char> seen(size() + 1, 0);
        for (int i = 1; i <= size(); ++i) {
            if (seen[i]) continue;
            std::vector<int> cyc;
            for (int d = i; !seen[d]; d = img_[d]) {
                seen[d] = 1;
                cyc.push_back(d);
            }
            out.push_back(std::move(cyc));
        }
        return out;
    }

    int cycle_count() const {
        int cnt = 0;
        std::vector<char> seen(size() + 1, 0);
        for (int i = 1; i <= size(); ++i) {
            if (seen[i]) continue;
            ++cnt;
            for (int d = i; !seen[d]; d = img_[d]) seen[d] = 1;
        }
        return cnt;
    }

    // Index of the cycle containing each point, numbered as in cycles().
    std::vector<int> cycle_ids() const {
        std::vector<int> id(size() + 1, -1);
        int cnt = 0;
        for (int i = 1; i <= size(); ++i) {
            if (id[i] >= 0) continue;
            for (int d = i; id[d] < 0; d = img_[d]) id[d] = cnt;
            ++cnt;
        }
        return id;
    }

    std::string to_cycle_string() const {
        std::ostringstream os;
        for (const auto& cyc : cycles()) {
            os << '(';
            for (size_t k = 0; k < cyc.size(); ++k) {
                if (k) os << ' ';
                os << cyc[k];
            }
            os << ')';
        }
        return os.str();
    }

    // Parses "(1 3 2)(4)(5 6)"; singletons may be omitted. Whitespace-insensitive
    // apart from separating numbers.
    static Perm from_cycle_string(int n, const std::string& s) {
        Perm p(n);
        std::vector<char> used(n + 1, 0);
        size_t i = 0;
        auto skip_ws = [&] { while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i; };
        skip_ws();
        while (i < s.size()) {
            if (s[i] != '(') fail(ErrorCode::ParseError, "expected '(' in cycle string");
            ++i;
            std::vector<int> cyc;
            skip_ws();
            while (i < s.size() && s[i] != ')') {
                if (!std::isdigit(static_cast<unsigned char>(s[i])))
                    fail(ErrorCode::ParseError, "expected digit in cycle string");
                int v = 0;
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
                    v = v * 10 + (s[i++] - '0');
                if (v < 1 || v > n) fail(ErrorCode::ParseError, "cycle entry out of range");
                if (used[v]) fail(ErrorCode::ParseError, "repeated entry in cycle string");
                used[v] = 1;
                cyc.push_back(v);
                skip_ws();
            }
            if (i >= s.size()) fail(ErrorCode::ParseError, "unterminated cycle");
            ++i;  // ')'
            for (size_t k = 0; k < cyc.size(); ++k) p.img_[cyc[k]] = cyc[(k + 1) % cyc.size()];
            skip_ws();
        }
        p.validate();
        return p;
    }

    void validate() const {
        std::vector<char> seen(size() + 1, 0);
        for (int i = 1; i <= size(); ++i) {
            int v = img_[i];
            if (v < 1 || v > size() || seen[v]) fail(ErrorCode::NotPermutation, "image table is not a bijection");
            seen[v] = 1;
        }
    }

  private:
    std::vector<int> img_;
};

}  // namespace mapforge
