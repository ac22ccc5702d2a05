#pragma once

#include <array>
#include <climits>
#include <cmath>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mapforge/blossom.hpp"
#include "mapforge/error.hpp"
#include "mapforge/numbers.hpp"
#include "mapforge/series.hpp"

namespace mapforge {

// ---------------------------------------------------------------------------
// Motzkin walks. A walk starts at some height and takes up (+1), down (-1)
// or horizontal (0) steps; the height OF a step is the height at which it
// starts. Horizontal steps may carry one of four types (a-d) naming the
// four branch-vertex shapes that keep the label flat; up and down steps
// are untyped. Bridges go from height 0 back to height 0 with no height
// constraint; primitive walks go from 0 to -1 with every step at height
// >= 0, so only the final height is negative.

enum class MStep : unsigned char { Up, Down, Horizontal };
enum class HorizontalType : unsigned char { None = 0, A, B, C, D };

struct TypedStep {
    MStep step = MStep::Horizontal;
    HorizontalType type = HorizontalType::None;
    bool operator==(const TypedStep&) const = default;
};

inline int step_rise(MStep s) {
    return s == MStep::Up ? 1 : (s == MStep::Down ? -1 : 0);
}

struct MotzkinWalk {
    int start_height = 0;
    std::vector<TypedStep> steps;

    int length() const { return static_cast<int>(steps.size()); }
    int increment() const {
        int r = 0;
        for (const TypedStep& t : steps) r += step_rise(t.step);
        return r;
    }
    int end_height() const { return start_height + increment(); }

    // heights()[k] is the height after k steps; heights()[k-1] is the
    // height of the k-th step.
    std::vector<int> heights() const {
        std::vector<int> h{start_height};
        for (const TypedStep& t : steps) h.push_back(h.back() + step_rise(t.step));
        return h;
    }

    bool operator==(const MotzkinWalk&) const = default;
};

// Letters: u/d/h for up, down, untyped horizontal; A-D for typed
// horizontal steps.
inline MotzkinWalk parse_walk(int start_height, const std::string& code) {
    MotzkinWalk w{start_height, {}};
    for (char c : code) {
        switch (c) {
            case 'u': w.steps.push_back({MStep::Up, HorizontalType::None}); break;
            case 'd': w.steps.push_back({MStep::Down, HorizontalType::None}); break;
            case 'h': w.steps.push_back({MStep::Horizontal, HorizontalType::None}); break;
            case 'A': w.steps.push_back({MStep::Horizontal, HorizontalType::A}); break;
            case 'B': w.steps.push_back({MStep::Horizontal, HorizontalType::B}); break;
            case 'C': w.steps.push_back({MStep::Horizontal, HorizontalType::C}); break;
            case 'D': w.steps.push_back({MStep::Horizontal, HorizontalType::D}); break;
            default: fail(ErrorCode::ParseError, "unknown step letter in walk");
        }
    }
    return w;
}

inline std::string print_walk(const MotzkinWalk& w) {
    std::string out;
    for (const TypedStep& t : w.steps) {
        if (t.step == MStep::Up) out += 'u';
        else if (t.step == MStep::Down) out += 'd';
        else out += t.type == HorizontalType::None
                        ? 'h'
                        : "ABCD"[static_cast<int>(t.type) - 1];
    }
    return out;
}

// ---------------------------------------------------------------------------
// Weights. The weight of a walk is (2(tb+tw))^h tb^e tw^o where h counts
// horizontal steps, e the non-horizontal steps at even height and o those
// at odd height; the horizontal factor stays symbolic here and expands
// only when a series is requested.

struct WalkWeight {
    int h = 0, e = 0, o = 0;
    bool operator==(const WalkWeight&) const = default;
};

inline WalkWeight walk_weight(const MotzkinWalk& w) {
    WalkWeight r;
    int cur = w.start_height;
    for (const TypedStep& t : w.steps) {
        if (t.step == MStep::Horizontal) ++r.h;
        else ++(parity(cur) == 0 ? r.e : r.o);
        cur += step_rise(t.step);
    }
    return r;
}

// tb marks black, tw white; the variables of every walk series.
inline const std::vector<std::string>& motzkin_variables() {
    static const std::vector<std::string> vars{"tb", "tw"};
    return vars;
}

inline TruncatedSeries weight_series(const WalkWeight& ww, int order) {
    TruncatedSeries s(motzkin_variables(), order);
    Int binom = 1;
    for (int m = 0; m <= ww.h; ++m) {
        Int c = binom << ww.h;  // C(h,m) * 2^h
        s.add_term({ww.e + m, ww.o + ww.h - m}, Rat(c));
        binom = binom * (ww.h - m) / (m + 1);
    }
    return s;
}

inline TruncatedSeries walk_weight_series(const MotzkinWalk& w, int order) {
    return weight_series(walk_weight(w), order);
}

// Each step of a typed walk stands for a branch vertex carrying exactly one
// leaf. Up and down steps at even height and type a/b horizontals at even
// height give a black leaf; type c/d horizontals flip the parity rule.
// Returns (black, white).
inline std::pair<int, int> typed_leaf_colors(const MotzkinWalk& w) {
    int black = 0, white = 0;
    int cur = w.start_height;
    for (const TypedStep& t : w.steps) {
        bool even = parity(cur) == 0;
        bool is_black;
        switch (t.type) {
            case HorizontalType::None:
                if (t.step == MStep::Horizontal)
                    fail(ErrorCode::DomainError, "horizontal step carries no type");
                is_black = even;
                break;
            case HorizontalType::A:
            case HorizontalType::B:
                is_black = even;
                break;
            default:
                is_black = !even;
                break;
        }
        ++(is_black ? black : white);
        cur += step_rise(t.step);
    }
    return {black, white};
}

// ---------------------------------------------------------------------------
// Direct enumeration. Walk series are computed by listing every walk up to
// the requested length, which is the oracle side of all closed forms; the
// length doubles as the truncation order because each step contributes
// total degree one.

inline constexpr int kMaxWalkLength = 14;      // 3^L plain walks
inline constexpr int kMaxTypedWalkLength = 8;  // 6^L typed walks

namespace detail {

constexpr int kNoBound = INT_MIN;

template <typename Emit>
void walk_enum(MotzkinWalk& w, int cur, int remaining, int target, int min_step_height,
               bool typed, const Emit& emit) {
    if (cur == target) emit(w);
    if (remaining == 0) return;
    if (std::abs(target - cur) > remaining) return;
    if (min_step_height != kNoBound && cur < min_step_height) return;
    auto take = [&](MStep s, HorizontalType t) {
        w.steps.push_back({s, t});
        walk_enum(w, cur + step_rise(s), remaining - 1, target, min_step_height, typed, emit);
        w.steps.pop_back();
    };
    take(MStep::Up, HorizontalType::None);
    take(MStep::Down, HorizontalType::None);
    if (!typed) {
        take(MStep::Horizontal, HorizontalType::None);
    } else {
        take(MStep::Horizontal, HorizontalType::A);
        take(MStep::Horizontal, HorizontalType::B);
        take(MStep::Horizontal, HorizontalType::C);
        take(MStep::Horizontal, HorizontalType::D);
    }
}

inline TruncatedSeries walk_series(int i, int j, int max_len, int min_step_height) {
    if (max_len < 0) fail(ErrorCode::BadInterval, "walk length bound is negative");
    if (max_len > kMaxWalkLength)
        fail(ErrorCode::ResourceLimit, "walk enumeration bound exceeds the supported length");
    std::map<std::array<int, 3>, Int> counts;
    MotzkinWalk w{i, {}};
    walk_enum(w, i, max_len, j, min_step_height, false, [&](const MotzkinWalk& v) {
        WalkWeight ww = walk_weight(v);
        counts[{ww.h, ww.e, ww.o}] += 1;
    });
    TruncatedSeries s(motzkin_variables(), max_len);
    for (const auto& [heo, c] : counts) {
        TruncatedSeries t = weight_series({heo[0], heo[1], heo[2]}, max_len);
        t *= Rat(c);
        s += t;
    }
    return s;
}

}  // namespace detail

// All walks from height i to height j of length <= max_len, with
// unconstrained heights.
inline TruncatedSeries series_W(int i, int j, int max_len) {
    return detail::walk_series(i, j, max_len, detail::kNoBound);
}

// Same, but every step must start at height >= min_step_height (the final
// height j may lie below the bound, as in a first passage).
inline TruncatedSeries series_W_bounded(int i, int j, int max_len, int min_step_height) {
    return detail::walk_series(i, j, max_len, min_step_height);
}

// Primitive walks: from 0 to -1, every step at height >= 0.
inline TruncatedSeries series_D_bullet(int max_len) {
    return series_W_bounded(0, -1, max_len, 0);
}

// The same walks with the two colors exchanged: black steps become white
// and vice versa, which is also the first passage from height 1 to 0.
inline TruncatedSeries series_D_circ(int max_len) {
    return series_D_bullet(max_len).swapped(0, 1);
}

// Bridges: from 0 back to 0, heights unconstrained.
inline TruncatedSeries series_B(int max_len) { return series_W(0, 0, max_len); }

// Visit every typed walk from height i to height j of length <= max_len.
inline void for_each_typed_walk(int i, int j, int max_len,
                                const std::function<void(const MotzkinWalk&)>& fn) {
    if (max_len < 0) fail(ErrorCode::BadInterval, "walk length bound is negative");
    if (max_len > kMaxTypedWalkLength)
        fail(ErrorCode::ResourceLimit, "typed walk enumeration bound exceeds the supported length");
    MotzkinWalk w{i, {}};
    detail::walk_enum(w, i, max_len, j, detail::kNoBound, true, fn);
}

// ---------------------------------------------------------------------------
// Label intervals. The interval [i, j) splits into even and odd labels;
// many series factor as x^(#even) y^(#odd) over such an interval.

inline std::pair<int, int> delta_exponents(int i, int j) {
    if (i > j) fail(ErrorCode::BadInterval, "the label interval is reversed");
    int len = j - i;
    int evens = len / 2 + (len % 2 == 1 && parity(i) == 0 ? 1 : 0);
    return {evens, len - evens};
}

inline TruncatedSeries delta_product(const TruncatedSeries& x, const TruncatedSeries& y, int i,
                                     int j) {
    auto [ev, od] = delta_exponents(i, j);
    return power(x, ev) * power(y, od);
}

// ---------------------------------------------------------------------------
// Branches. A branch is a chain of interior-degree-2 vertices threaded on
// one scheme edge, each vertex 4-valent with one bud and one leaf. In ccw
// order a vertex reads (incoming dart, gap stems, outgoing dart, remaining
// stems); the gap is the number of stems between the two interior darts.
// The label right of the chain changes by the bud/leaf increments in that
// gap, so each vertex realizes one Motzkin step and a branch with k edges
// is a typed walk of length k-1 from the label right of its first edge to
// the label right of its last.

struct ChainVertex {
    int gap = 0;
    StemKind first = StemKind::Bud;   // the two stems in ccw order
    StemKind second = StemKind::Leaf;
    bool operator==(const ChainVertex&) const = default;
};

struct Branch {
    int lam0 = 0;  // label right of the first edge
    std::vector<ChainVertex> vertices;
    bool operator==(const Branch&) const = default;
};

// The six vertex shapes and their steps. A bud before the outgoing dart
// raises the right label, a leaf lowers it; the four flat shapes are the
// horizontal types.
inline TypedStep chain_vertex_step(const ChainVertex& v) {
    bool bl = v.first == StemKind::Bud && v.second == StemKind::Leaf;
    bool lb = v.first == StemKind::Leaf && v.second == StemKind::Bud;
    if (v.gap == 1 && bl) return {MStep::Up, HorizontalType::None};
    if (v.gap == 1 && lb) return {MStep::Down, HorizontalType::None};
    if (v.gap == 0 && bl) return {MStep::Horizontal, HorizontalType::A};
    if (v.gap == 2 && lb) return {MStep::Horizontal, HorizontalType::B};
    if (v.gap == 0 && lb) return {MStep::Horizontal, HorizontalType::C};
    if (v.gap == 2 && bl) return {MStep::Horizontal, HorizontalType::D};
    fail(ErrorCode::HeightMismatch, "the vertex stems do not realize a label step");
}

inline ChainVertex step_chain_vertex(const TypedStep& t) {
    if (t.step == MStep::Up) return {1, StemKind::Bud, StemKind::Leaf};
    if (t.step == MStep::Down) return {1, StemKind::Leaf, StemKind::Bud};
    switch (t.type) {
        case HorizontalType::A: return {0, StemKind::Bud, StemKind::Leaf};
        case HorizontalType::B: return {2, StemKind::Leaf, StemKind::Bud};
        case HorizontalType::C: return {0, StemKind::Leaf, StemKind::Bud};
        case HorizontalType::D: return {2, StemKind::Bud, StemKind::Leaf};
        case HorizontalType::None: break;
    }
    fail(ErrorCode::DomainError, "horizontal step carries no type");
}

inline MotzkinWalk encode_branch(const Branch& b) {
    MotzkinWalk w{b.lam0, {}};
    for (const ChainVertex& v : b.vertices) w.steps.push_back(chain_vertex_step(v));
    return w;
}

inline Branch decode_branch(const MotzkinWalk& w, int lam0, int lam1) {
    if (w.start_height != lam0 || w.end_height() != lam1)
        fail(ErrorCode::HeightMismatch, "the walk does not join the edge labels");
    Branch b{lam0, {}};
    for (const TypedStep& t : w.steps) b.vertices.push_back(step_chain_vertex(t));
    return b;
}

// Thread each branch onto its scheme edge, in travel order from the tail
// of the edge to its head (the head being the first-traversed dart). New
// darts are appended after the scheme's; the root bud is kept.
inline BlossomingMap graft_branches(const BlossomingMap& s, const std::vector<Branch>& branches) {
    if (static_cast<int>(branches.size()) != s.n_interior_edges)
        fail(ErrorCode::DomainError, "one branch per interior edge is required");
    int total = 0;
    for (const Branch& b : branches) total += static_cast<int>(b.vertices.size());
    int n2 = s.n + 4 * total;
    std::vector<int> heads = canonical_orientation(s);
    std::vector<int> img(n2, 0), alpha(n2 + 1, 0);
    std::vector<StemKind> kind(n2 + 1, StemKind::None);
    for (int d = 1; d <= s.n; ++d) {
        img[d - 1] = s.sigma(d);
        alpha[d] = s.alpha[d];
        kind[d] = s.kind[d];
    }
    int base = s.n;
    for (int e = 0; e < s.n_interior_edges; ++e) {
        if (branches[e].vertices.empty()) continue;
        int q = heads[e], prev = s.alpha[q];
        for (const ChainVertex& cv : branches[e].vertices) {
            if (cv.gap < 0 || cv.gap > 2) fail(ErrorCode::HeightMismatch, "a vertex has too many gap stems");
            int in = base + 1, sid = base + 2, out = 0;
            std::array<int, 4> rot;
            std::array<StemKind, 4> rk;
            rot[0] = in;
            rk[0] = StemKind::None;
            int at = 1;
            for (int a = 0; a < cv.gap; ++a, ++at) {
                rot[at] = sid++;
                rk[at] = a == 0 ? cv.first : cv.second;
            }
            out = sid++;
            rot[at] = out;
            rk[at] = StemKind::None;
            ++at;
            for (int a = cv.gap; a < 2; ++a, ++at) {
                rot[at] = sid++;
                rk[at] = a == 0 ? cv.first : cv.second;
            }
            for (int x = 0; x < 4; ++x) {
                img[rot[x] - 1] = rot[(x + 1) % 4];
                kind[rot[x]] = rk[x];
            }
            alpha[prev] = in;
            alpha[in] = prev;
            prev = out;
            base += 4;
        }
        alpha[prev] = q;
        alpha[q] = prev;
    }
    return build_blossoming(n2, Perm::from_images(img), alpha, kind, s.root_bud);
}

}  // namespace mapforge
