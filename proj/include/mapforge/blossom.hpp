#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mapforge/enumerate.hpp"
#include "mapforge/map.hpp"
#include "mapforge/radial.hpp"

namespace mapforge {

enum class StemKind : unsigned char { None = 0, Bud, Leaf };

// Unicellular map with stems: unmatched half-edges that are either buds
// (pointing away from their vertex) or leaves (pointing towards it). Stems
// take part in the rotation like ordinary darts but have no alpha partner.
// The map is rooted at a marked bud; the root corner is the corner
// (sigma⁻¹(b), b) just clockwise of the root bud b, so the contour of the
// unique face starts there and crosses the root bud first.
//
// The contour follows the face keeping it on the right: after the corner of
// dart d it traverses d, continuing at sigma(alpha(d)) for an interior dart
// and at sigma(d) for a stem (a zero-length detour). Unicellularity means
// this walk visits every corner exactly once.
struct BlossomingMap {
    int n = 0;  // all darts, interior and stems
    Perm sigma, sigma_inv;
    std::vector<int> alpha;          // partner dart, 0 for stems
    std::vector<StemKind> kind;      // None for interior darts
    int root_bud = 0;

    std::vector<int> vertex_of;      // by dart
    std::vector<int> edge_of;        // by dart, -1 for stems
    std::vector<int> edge_dart;      // min dart of each interior edge
    std::vector<int> contour;        // darts in contour order, contour[0] = root_bud
    std::vector<int> contour_pos;    // by dart
    int n_vertices = 0, n_interior_edges = 0, n_buds = 0, n_leaves = 0, genus = 0;

    bool is_stem(int d) const { return kind[d] != StemKind::None; }

    bool operator==(const BlossomingMap& o) const {
        return n == o.n && root_bud == o.root_bud && sigma == o.sigma && alpha == o.alpha &&
               kind == o.kind;
    }
};

inline BlossomingMap build_blossoming(int n_darts, const Perm& sigma,
                                      const std::vector<int>& alpha,
                                      const std::vector<StemKind>& kind, int root_bud) {
    if (n_darts <= 0) fail(ErrorCode::BadRoot, "dart count must be positive");
    if (sigma.size() != n_darts) fail(ErrorCode::NotPermutation, "sigma size does not match dart count");
    if (static_cast<int>(alpha.size()) != n_darts + 1 || static_cast<int>(kind.size()) != n_darts + 1)
        fail(ErrorCode::NotPermutation, "alpha/kind tables must cover darts 1..n");
    for (int d = 1; d <= n_darts; ++d) {
        if (kind[d] == StemKind::None) {
            int a = alpha[d];
            if (a < 1 || a > n_darts || a == d || alpha[a] != d || kind[a] != StemKind::None)
                fail(ErrorCode::NotInvolution, "interior darts must pair up under alpha");
        } else if (alpha[d] != 0) {
            fail(ErrorCode::NotInvolution, "a stem has no alpha partner");
        }
    }
    if (root_bud < 1 || root_bud > n_darts || kind[root_bud] != StemKind::Bud)
        fail(ErrorCode::BadRoot, "root must be a bud");

    BlossomingMap u;
    u.n = n_darts;
    u.sigma = sigma;
    u.sigma_inv = sigma.inverse();
    u.alpha = alpha;
    u.kind = kind;
    u.root_bud = root_bud;
    u.vertex_of = sigma.cycle_ids();
    u.n_vertices = sigma.cycle_count();

    u.edge_of.assign(n_darts + 1, -1);
    for (int d = 1; d <= n_darts; ++d) {
        if (u.kind[d] != StemKind::None) {
            u.kind[d] == StemKind::Bud ? ++u.n_buds : ++u.n_leaves;
            continue;
        }
        if (u.edge_of[d] >= 0) continue;
        int e = static_cast<int>(u.edge_dart.size());
        u.edge_of[d] = e;
        u.edge_of[alpha[d]] = e;
        u.edge_dart.push_back(d);
    }
    u.n_interior_edges = static_cast<int>(u.edge_dart.size());

    // One face: the contour from the root corner must visit every corner once.
    u.contour.reserve(n_darts);
    u.contour_pos.assign(n_darts + 1, -1);
    int d = root_bud;
    for (int step = 0; step < n_darts; ++step) {
        if (u.contour_pos[d] >= 0) fail(ErrorCode::NotUnicellular, "contour closes early");
        u.contour_pos[d] = step;
        u.contour.push_back(d);
        d = u.is_stem(d) ? sigma(d) : sigma(alpha[d]);
    }
    if (d != root_bud) fail(ErrorCode::NotUnicellular, "contour does not close");

    int euler = u.n_vertices - u.n_interior_edges + 1;
    if ((2 - euler) % 2 != 0 || euler > 2)
        fail(ErrorCode::NotUnicellular, "Euler characteristic is not 2-2g");
    u.genus = (2 - euler) / 2;
    return u;
}

// ---------------------------------------------------------------------------
// Canonical labeling.

// Corner labels along the contour: the root corner is 0, crossing a bud adds
// one, crossing a leaf subtracts one, and following an interior edge keeps
// the label. A stem sits between corners labeled i-1 and i and is labeled i:
// the larger of the two (before +1 for a bud, before unchanged for a leaf).
struct CornerLabeling {
    std::vector<int> corner;  // by dart d: label of the corner (sigma⁻¹(d), d)
    std::vector<int> stem;    // by dart: stem label, 0 for interior darts
    int min_corner = 0;
};

inline CornerLabeling canonical_labeling(const BlossomingMap& u) {
    CornerLabeling lab;
    lab.corner.assign(u.n + 1, 0);
    lab.stem.assign(u.n + 1, 0);
    int cur = 0;
    for (int d : u.contour) {
        lab.corner[d] = cur;
        lab.min_corner = std::min(lab.min_corner, cur);
        switch (u.kind[d]) {
            case StemKind::Bud:
                lab.stem[d] = cur + 1;
                ++cur;
                break;
            case StemKind::Leaf:
                lab.stem[d] = cur;
                --cur;
                break;
            case StemKind::None:
                break;
        }
    }
    if (cur != 0) fail(ErrorCode::UnbalancedStems, "labels do not close up: buds != leaves");
    return lab;
}

inline bool is_well_rooted(const BlossomingMap& u) { return canonical_labeling(u).min_corner >= 0; }

// Literal form of the definition: turn the root bud into a leaf, perform all
// possible local closures (bud matched with the next unmatched stem when that
// stem is a leaf, cyclically), and check that the root is one of the two
// leaves left over. Used to cross-test the label characterization.
inline bool is_well_rooted_by_matching(const BlossomingMap& u) {
    if (u.n_buds != u.n_leaves) fail(ErrorCode::UnbalancedStems, "buds != leaves");
    std::vector<int> stems;
    for (int d : u.contour)
        if (u.is_stem(d)) stems.push_back(d);
    std::vector<char> leaf(stems.size());
    for (size_t i = 0; i < stems.size(); ++i)
        leaf[i] = u.kind[stems[i]] == StemKind::Leaf || stems[i] == u.root_bud;
    std::vector<char> gone(stems.size(), 0);
    size_t remaining = stems.size();
    bool progress = true;
    while (progress) {
        progress = false;
        for (size_t i = 0; i < stems.size() && remaining >= 2; ++i) {
            if (gone[i] || leaf[i]) continue;
            size_t j = (i + 1) % stems.size();
            while (gone[j]) j = (j + 1) % stems.size();
            if (!leaf[j]) continue;
            gone[i] = gone[j] = 1;
            remaining -= 2;
            progress = true;
        }
    }
    if (remaining != 2) fail(ErrorCode::CounterexampleFound, "local closures left more than two stems");
    for (size_t i = 0; i < stems.size(); ++i)
        if (!gone[i] && stems[i] == u.root_bud) return true;
    return false;
}

// ---------------------------------------------------------------------------
// Canonical orientation.

// Heads of interior edges, indexed like u.edge_dart. Each proper edge is
// oriented backwards the first time the contour follows it, so the head is
// the dart traversed first. In a tree every edge ends up pointing from child
// to parent.
inline std::vector<int> canonical_orientation(const BlossomingMap& u) {
    std::vector<int> head(u.n_interior_edges, 0);
    for (int d : u.contour) {
        if (u.is_stem(d)) continue;
        int e = u.edge_of[d];
        if (!head[e]) head[e] = d;
    }
    return head;
}

// A canonically oriented unicellular map is well-labeled when around every
// vertex consecutive corner labels step by exactly one, rising across the
// tail of an edge and falling across its head (higher label on the left of
// the oriented edge). Crossing a stem obeys this automatically, so only
// interior darts are checked.
inline bool is_well_labeled(const BlossomingMap& u) {
    auto lab = canonical_labeling(u);
    auto head = canonical_orientation(u);
    for (int d = 1; d <= u.n; ++d) {
        if (u.is_stem(d)) continue;
        int want = head[u.edge_of[d]] == d ? -1 : +1;
        if (lab.corner[u.sigma(d)] - lab.corner[d] != want) return false;
    }
    return true;
}

// Leaves by label parity: black when even, white when odd. The root bud is
// not a leaf; series weights count it as an extra black leaf separately.
inline std::pair<int, int> leaf_colors(const BlossomingMap& u) {
    auto lab = canonical_labeling(u);
    int black = 0, white = 0;
    for (int d = 1; d <= u.n; ++d)
        if (u.kind[d] == StemKind::Leaf) (lab.stem[d] % 2 == 0 ? black : white)++;
    return {black, white};
}

// ---------------------------------------------------------------------------
// Closure.

struct ClosureResult {
    RootedMap map;            // rooted at the corner that preceded the root bud
    Orientation orientation;  // proper edges canonical, closure edges bud -> leaf
    std::vector<std::pair<int, int>> matching;  // (bud, leaf), buds in contour order
    std::vector<int> leaf_face;   // by dart: face of the closed map on the left of
                                  // the closure edge, -1 for non-leaf darts
    std::vector<char> closure_edge;  // by closed-map edge id
};

namespace detail {

// Shared tail: given the bud->leaf matching, glue the stems and assemble the
// closed rooted map together with its orientation and face data.
inline ClosureResult finish_closure(const BlossomingMap& u,
                                    std::vector<std::pair<int, int>> matching) {
    std::vector<int> alpha_img(u.n);
    for (int d = 1; d <= u.n; ++d) alpha_img[d - 1] = u.alpha[d] ? u.alpha[d] : d;
    for (auto [b, l] : matching) {
        alpha_img[b - 1] = l;
        alpha_img[l - 1] = b;
    }
    ClosureResult res;
    res.map = build_map(u.n, u.sigma, Perm::from_images(alpha_img), u.root_bud);
    res.matching = std::move(matching);

    auto head = canonical_orientation(u);
    res.orientation.head.assign(res.map.n_edges, 0);
    for (int e = 0; e < u.n_interior_edges; ++e)
        res.orientation.head[res.map.edge_of[u.edge_dart[e]]] = head[e];
    res.closure_edge.assign(res.map.n_edges, 0);
    res.leaf_face.assign(u.n + 1, -1);
    for (auto [b, l] : res.matching) {
        res.orientation.head[res.map.edge_of[b]] = l;
        res.closure_edge[res.map.edge_of[b]] = 1;
        res.leaf_face[l] = res.map.face_of[l];
    }
    return res;
}

}  // namespace detail

// Matches buds and leaves like parentheses along the contour and glues each
// pair into an edge oriented from the bud's vertex to the leaf's vertex. The
// new face created by a local closure lies on the left of that edge: it is
// the face of the leaf dart. Performing local closures in stack order from
// the root realizes the order-independent result deterministically.
inline ClosureResult closure(const BlossomingMap& u) {
    auto lab = canonical_labeling(u);  // also rejects unbalanced stems
    if (lab.min_corner < 0) fail(ErrorCode::NotWellRooted, "a corner label is negative");
    std::vector<std::pair<int, int>> matching;
    std::vector<int> stack;
    for (int d : u.contour) {
        if (u.kind[d] == StemKind::Bud) {
            stack.push_back(d);
        } else if (u.kind[d] == StemKind::Leaf) {
            if (stack.empty()) fail(ErrorCode::NotWellRooted, "leaf before any open bud");
            matching.emplace_back(stack.back(), d);
            stack.pop_back();
        }
    }
    if (!stack.empty()) fail(ErrorCode::UnbalancedStems, "unmatched buds remain");
    std::sort(matching.begin(), matching.end(),
              [&](const auto& a, const auto& b) { return u.contour_pos[a.first] < u.contour_pos[b.first]; });
    return detail::finish_closure(u, std::move(matching));
}

// Label-based form: each bud is matched with the first leaf after it along
// the cyclic contour that carries the same stem label. Must agree with
// closure() on every well-rooted input.
inline ClosureResult closure_by_labels(const BlossomingMap& u) {
    auto lab = canonical_labeling(u);
    if (lab.min_corner < 0) fail(ErrorCode::NotWellRooted, "a corner label is negative");
    std::vector<int> stems;
    for (int d : u.contour)
        if (u.is_stem(d)) stems.push_back(d);
    std::vector<std::pair<int, int>> matching;
    std::vector<char> used(u.n + 1, 0);
    for (size_t i = 0; i < stems.size(); ++i) {
        int b = stems[i];
        if (u.kind[b] != StemKind::Bud) continue;
        for (size_t off = 1; off < stems.size(); ++off) {
            int l = stems[(i + off) % stems.size()];
            if (u.kind[l] == StemKind::Leaf && lab.stem[l] == lab.stem[b]) {
                if (used[l]) fail(ErrorCode::CounterexampleFound, "label matching reuses a leaf");
                used[l] = 1;
                matching.emplace_back(b, l);
                break;
            }
        }
    }
    if (2 * matching.size() != stems.size())
        fail(ErrorCode::CounterexampleFound, "label matching is not perfect");
    return detail::finish_closure(u, std::move(matching));
}

// ---------------------------------------------------------------------------
// Text format, extending the map format:
//   darts N
//   sigma (...)
//   alpha (a b)(c d)...     interior pairs only; may be empty
//   stems (d,bud) (e,leaf) ...
//   rootbud k
// A stem is identified by its corner: the corner (sigma⁻¹(d), d) shares the
// index d of the stem dart itself.

inline std::string print_blossoming(const BlossomingMap& u) {
    std::ostringstream os;
    os << "darts " << u.n << "\n";
    os << "sigma " << u.sigma.to_cycle_string() << "\n";
    os << "alpha ";
    for (int e = 0; e < u.n_interior_edges; ++e)
        os << '(' << u.edge_dart[e] << ' ' << u.alpha[u.edge_dart[e]] << ')';
    os << "\n";
    os << "stems";
    for (int d = 1; d <= u.n; ++d)
        if (u.is_stem(d)) os << " (" << d << ',' << (u.kind[d] == StemKind::Bud ? "bud" : "leaf") << ')';
    os << "\n";
    os << "rootbud " << u.root_bud << "\n";
    return os.str();
}

inline BlossomingMap parse_blossoming(const std::string& text) {
    size_t pd = detail::find_keyword(text, "darts", 0);
    size_t ps = detail::find_keyword(text, "sigma", pd);
    size_t pa = detail::find_keyword(text, "alpha", ps);
    size_t pt = detail::find_keyword(text, "stems", pa);
    size_t pr = detail::find_keyword(text, "rootbud", pt);
    int n = 0, root = 0;
    try {
        n = std::stoi(text.substr(pd + 5, ps - pd - 5));
        root = std::stoi(text.substr(pr + 7));
    } catch (const std::exception&) {
        fail(ErrorCode::ParseError, "bad integer field");
    }
    if (n <= 0) fail(ErrorCode::ParseError, "dart count must be positive");
    Perm sigma = Perm::from_cycle_string(n, text.substr(ps + 5, pa - ps - 5));
    Perm ap = Perm::from_cycle_string(n, text.substr(pa + 5, pt - pa - 5));

    std::vector<StemKind> kind(n + 1, StemKind::None);
    const std::string stems_field = text.substr(pt + 5, pr - pt - 5);
    size_t i = 0;
    while (i < stems_field.size()) {
        if (std::isspace(static_cast<unsigned char>(stems_field[i]))) {
            ++i;
            continue;
        }
        if (stems_field[i] != '(') fail(ErrorCode::ParseError, "expected '(' in stems");
        size_t close = stems_field.find(')', i);
        if (close == std::string::npos) fail(ErrorCode::ParseError, "unterminated stem entry");
        std::string entry = stems_field.substr(i + 1, close - i - 1);
        size_t comma = entry.find(',');
        if (comma == std::string::npos) fail(ErrorCode::ParseError, "stem entry needs (dart,kind)");
        int d = 0;
        try {
            d = std::stoi(entry.substr(0, comma));
        } catch (const std::exception&) {
            fail(ErrorCode::ParseError, "bad stem dart");
        }
        if (d < 1 || d > n || kind[d] != StemKind::None)
            fail(ErrorCode::ParseError, "stem dart out of range or repeated");
        std::string k = entry.substr(comma + 1);
        k.erase(std::remove_if(k.begin(), k.end(), [](unsigned char c) { return std::isspace(c); }), k.end());
        if (k == "bud")
            kind[d] = StemKind::Bud;
        else if (k == "leaf")
            kind[d] = StemKind::Leaf;
        else
            fail(ErrorCode::ParseError, "stem kind must be bud or leaf");
        i = close + 1;
    }

    std::vector<int> alpha(n + 1, 0);
    for (int d = 1; d <= n; ++d) {
        if (ap(d) == d) {
            if (kind[d] == StemKind::None) fail(ErrorCode::ParseError, "interior dart missing from alpha");
        } else {
            if (kind[d] != StemKind::None) fail(ErrorCode::ParseError, "stem dart appears in alpha");
            alpha[d] = ap(d);
        }
    }
    return build_blossoming(n, sigma, alpha, kind, root);
}

// ---------------------------------------------------------------------------
// Enumeration.

// Options for enumerate_blossoming. Well-labeled implies the canonical
// orientation; a map failing the unicellularity or balance preconditions is
// never produced (the generator builds contours directly).
struct BlossomOptions {
    int genus = -1;  // -1 = any
    bool four_valent = false;
    bool well_rooted = false;
    bool well_labeled = false;
    int max_stems_per_vertex = 0;  // 0 = unbounded
    long long max_nodes = 0;       // 0 = unbounded, else ResourceLimit past this many search nodes
};

namespace detail {

// Contour-word generator. A rooted blossoming unicellular map with k buds,
// k leaves and e interior edges is the same thing as a cyclic word of
// length 2e+2k starting with the root bud: each position carries a corner
// and then a stem or an interior dart, interior positions matched in pairs
// (the polygon-gluing picture of a one-face map). sigma is recovered by
//   sigma(d_q) = d_{p+1},  p = q for a stem, p = partner(q) otherwise,
// so every word yields exactly one rooted blossoming map and every map its
// contour word.
class BlossomEnumerator {
  public:
    BlossomEnumerator(int e_int, int k, const BlossomOptions& opt,
                      const std::function<void(const BlossomingMap&)>& emit)
        : e_(e_int), k_(k), m_(2 * e_int + 2 * k), opt_(opt), emit_(emit) {
        word_.assign(m_, 0);
        partner_.assign(m_, -1);
        next_.assign(m_, -1);
        prev_.assign(m_, -1);
    }

    void run() {
        if (k_ < 1) return;  // a rooted blossoming map needs its root bud
        word_[0] = kBud;
        buds_left_ = k_ - 1;
        leaves_left_ = k_;
        label_ = 1;
        add_link(0, 1 % m_, 0);
        descend(1);
    }

  private:
    static constexpr int kBud = -1, kLeaf = -2;

    // Partial sigma knowledge: a stem at position q forces sigma to send its
    // dart to position (q+1) mod m, a matched pair (q, p) forces q's dart to
    // (p+1) mod m and p's to (q+1) mod m. Recording those as chain links lets
    // a 4-valence requirement prune during the descent: no chain may exceed
    // four positions and a chain closing into a cycle must close at exactly
    // four. Only positions <= cur carry decided word values; the one possibly
    // undecided chain end is skipped when counting stems.
    bool decided_stem(int z, int cur) const {
        return z <= cur && word_[z] < 0;
    }

    bool add_link(int x, int y, int cur) {
        if (!opt_.four_valent) return true;
        int end = y, flen = 1;
        while (next_[end] != -1) {
            end = next_[end];
            ++flen;
        }
        if (end == x) {
            if (flen != 4) return false;
        } else {
            int start = x, blen = 1;
            while (prev_[start] != -1) {
                start = prev_[start];
                ++blen;
            }
            if (flen + blen > 4) return false;
        }
        if (opt_.max_stems_per_vertex > 0) {
            int stems = 0;
            for (int z = x;; z = prev_[z]) {
                if (decided_stem(z, cur)) ++stems;
                if (prev_[z] == -1) break;
            }
            if (end != x)
                for (int z = y;; z = next_[z]) {
                    if (decided_stem(z, cur)) ++stems;
                    if (next_[z] == -1) break;
                }
            if (stems > opt_.max_stems_per_vertex) return false;
        }
        next_[x] = y;
        prev_[y] = x;
        return true;
    }

    void remove_link(int x, int y) {
        if (!opt_.four_valent) return;
        next_[x] = -1;
        prev_[y] = -1;
    }

    void descend(int pos) {
        if (opt_.max_nodes && ++nodes_ > opt_.max_nodes)
            fail(ErrorCode::ResourceLimit, "search exceeded the node budget");
        if (pos == m_) {
            if (open_.empty()) finish();
            return;
        }
        if (buds_left_ > 0) {
            word_[pos] = kBud;
            if (add_link(pos, (pos + 1) % m_, pos)) {
                --buds_left_;
                ++label_;
                descend(pos + 1);
                --label_;
                ++buds_left_;
                remove_link(pos, (pos + 1) % m_);
            }
        }
        // Keeping every corner label non-negative is exactly well-rootedness.
        if (leaves_left_ > 0 && (!opt_.well_rooted || label_ > 0)) {
            word_[pos] = kLeaf;
            if (add_link(pos, (pos + 1) % m_, pos)) {
                --leaves_left_;
                --label_;
                descend(pos + 1);
                ++label_;
                ++leaves_left_;
                remove_link(pos, (pos + 1) % m_);
            }
        }
        int interior_left = 2 * e_ - interior_used_;
        if (interior_left > static_cast<int>(open_.size())) {
            word_[pos] = pos;  // open a new edge
            open_.push_back(pos);
            interior_used_++;
            descend(pos + 1);
            interior_used_--;
            open_.pop_back();
        }
        if (!open_.empty()) {
            // Close against any open position: crossings are what genus is
            // made of, so all of them are tried, not just the innermost.
            for (size_t i = 0; i < open_.size(); ++i) {
                int q = open_[i];
                open_.erase(open_.begin() + i);
                partner_[q] = pos;
                partner_[pos] = q;
                word_[pos] = q;
                if (add_link(q, (pos + 1) % m_, pos)) {
                    if (add_link(pos, (q + 1) % m_, pos)) {
                        interior_used_++;
                        descend(pos + 1);
                        interior_used_--;
                        remove_link(pos, (q + 1) % m_);
                    }
                    remove_link(q, (pos + 1) % m_);
                }
                partner_[q] = -1;
                partner_[pos] = -1;
                open_.insert(open_.begin() + i, q);
            }
        }
    }

    void finish() {
        std::vector<int> img(m_);  // sigma images, darts = positions + 1
        for (int q = 0; q < m_; ++q) {
            int p = word_[q] < 0 ? q : partner_[q];
            img[q] = (p + 1) % m_ + 1;
        }
        Perm sigma = Perm::from_images(img);
        if (opt_.four_valent) {
            for (const auto& cyc : sigma.cycles())
                if (cyc.size() != 4) return;
        }
        if (opt_.max_stems_per_vertex > 0) {
            for (const auto& cyc : sigma.cycles()) {
                int stems = 0;
                for (int d : cyc)
                    if (word_[d - 1] < 0) ++stems;
                if (stems > opt_.max_stems_per_vertex) return;
            }
        }
        int vertices = sigma.cycle_count();
        int genus = (1 + e_ - vertices) / 2;
        if (2 * genus != 1 + e_ - vertices) fail(ErrorCode::NotUnicellular, "odd Euler defect");
        if (opt_.genus >= 0 && genus != opt_.genus) return;

        std::vector<int> alpha(m_ + 1, 0);
        std::vector<StemKind> kind(m_ + 1, StemKind::None);
        for (int q = 0; q < m_; ++q) {
            if (word_[q] == kBud)
                kind[q + 1] = StemKind::Bud;
            else if (word_[q] == kLeaf)
                kind[q + 1] = StemKind::Leaf;
            else
                alpha[q + 1] = partner_[q] + 1;
        }
        BlossomingMap u = build_blossoming(m_, sigma, alpha, kind, 1);
        if (opt_.well_labeled && !is_well_labeled(u)) return;
        emit_(u);
    }

    int e_, k_, m_;
    BlossomOptions opt_;
    const std::function<void(const BlossomingMap&)>& emit_;
    std::vector<int> word_;     // kBud, kLeaf, or the smaller position of the pair
    std::vector<int> partner_;  // by position
    std::vector<int> next_, prev_;  // partial sigma links on positions
    std::vector<int> open_;
    int buds_left_ = 0, leaves_left_ = 0, interior_used_ = 0, label_ = 0;
    long long nodes_ = 0;
};

}  // namespace detail

// Streams every rooted blossoming unicellular map with e_int interior edges
// and k buds + k leaves (root bud included), filtered per options, each
// exactly once.
inline void enumerate_blossoming(int e_int, int k, const BlossomOptions& opt,
                                 const std::function<void(const BlossomingMap&)>& emit) {
    detail::BlossomEnumerator(e_int, k, opt, emit).run();
}

// Good maps: well-rooted, well-oriented, well-labeled, 4-valent. Their size
// is rigid: genus g with e interior edges forces e+1-2g vertices and e+2-4g
// buds. Yields nothing when those are not positive.
inline void enumerate_good_maps(int genus, int e_int,
                                const std::function<void(const BlossomingMap&)>& emit) {
    int vertices = e_int + 1 - 2 * genus;
    int k = e_int + 2 - 4 * genus;
    if (vertices < 1 || k < 1) return;
    if (4 * vertices != 2 * e_int + 2 * k) return;
    BlossomOptions opt;
    opt.genus = genus;
    opt.four_valent = true;
    opt.well_rooted = true;
    opt.well_labeled = true;
    enumerate_blossoming(e_int, k, opt, emit);
}

// ---------------------------------------------------------------------------
// Bijection verification.

struct ClosureBijectionReport {
    bool pass = true;
    std::string detail;            // first failure, empty when pass
    Int good_maps = 0;             // inputs enumerated over all sizes
    std::vector<CountTable> censuses;  // one per interior edge count, by (Fb, Fw)
};

// Checks, for every good map of the genus with at most max_interior_edges
// interior edges: the two closure definitions coincide; the closed map is
// 4-valent, bicolorable and of the same genus; its induced orientation is
// the dual-geodesic one; leaves map to the non-root faces, matching colors
// by label parity; and the closures are pairwise distinct and census-equal
// to the direct enumeration of 4-valent bicolorable maps and, through the
// radial correspondence (black faces <-> vertices, white <-> faces), to the
// census of all rooted maps.
inline ClosureBijectionReport verify_closure_bijection(int genus, int max_interior_edges) {
    ClosureBijectionReport rep;
    auto bad = [&](const std::string& why, const BlossomingMap& u) {
        if (rep.pass) {
            rep.pass = false;
            rep.detail = why + "\n" + print_blossoming(u);
        }
    };

    for (int e = 0; e <= max_interior_edges; ++e) {
        int vertices = e + 1 - 2 * genus;
        int k = e + 2 - 4 * genus;
        if (vertices < 1 || k < 1) continue;

        CountTable census;
        census.genus = genus;
        census.axis = {"Fb", "Fw"};
        std::set<std::string> closed_canon;

        enumerate_good_maps(genus, e, [&](const BlossomingMap& u) {
            ++rep.good_maps;
            ClosureResult c = closure(u);
            ClosureResult cl = closure_by_labels(u);
            if (!(c.map == cl.map) || c.matching != cl.matching)
                return bad("closure definitions disagree", u);
            if (c.map.genus != genus) return bad("closure changed the genus", u);
            if (c.map.n_edges != u.n_interior_edges + u.n_leaves)
                return bad("closed map has the wrong edge count", u);
            for (int v = 0; v < c.map.n_vertices; ++v)
                if (c.map.degree(v) != 4) return bad("closed map is not 4-valent", u);

            auto fc = try_face_coloring(c.map);
            if (!fc) return bad("closed map is not bicolorable", u);
            if (!(c.orientation == dual_geodesic_orientation(c.map)))
                return bad("closure orientation is not dual-geodesic", u);

            // Leaves hit every non-root face exactly once, colors matching
            // the label parity (black <=> even).
            auto lab = canonical_labeling(u);
            std::set<int> hit;
            for (auto [b, l] : c.matching) {
                int f = c.leaf_face[l];
                if (f == c.map.root_face()) return bad("a leaf face is the root face", u);
                if (!hit.insert(f).second) return bad("two leaves share a face", u);
                if ((lab.stem[l] % 2 == 0) != (fc->color[f] == 0))
                    return bad("leaf parity does not match its face color", u);
            }
            if (static_cast<int>(hit.size()) != c.map.n_faces - 1)
                return bad("leaf faces do not cover the non-root faces", u);

            auto [lb, lw] = leaf_colors(u);
            if (lb + 1 != fc->blacks || lw != fc->whites)
                return bad("leaf color counts disagree with face color counts", u);

            census.add({fc->blacks, fc->whites});
            if (!closed_canon.insert(print_map(canonical_form(c.map))).second)
                return bad("two good maps share a closure", u);

            RootedMap back = radial_inverse(c.map);
            if (back.n_vertices != fc->blacks || back.n_faces != fc->whites)
                return bad("radial inverse census mismatch", u);
        });

        if (!rep.pass) return rep;

        // Direct enumeration of the image family.
        CountTable direct = count_4valent_bicolorable(genus, vertices);
        if (!(census == direct)) {
            rep.pass = false;
            rep.detail = "closure census differs from 4-valent bicolorable census at " +
                         std::to_string(e) + " interior edges:\n" + census.to_json() + "\n" +
                         direct.to_json();
            return rep;
        }
        std::set<std::string> direct_canon;
        EnumOptions eopt;
        eopt.genus = genus;
        eopt.exact_degree = 4;
        enumerate_rooted_maps(2 * vertices, eopt, [&](const RootedMap& m) {
            if (is_bicolorable(m)) direct_canon.insert(print_map(canonical_form(m)));
        });
        if (closed_canon != direct_canon) {
            rep.pass = false;
            rep.detail = "closure images differ from the 4-valent bicolorable family at " +
                         std::to_string(e) + " interior edges";
            return rep;
        }

        // Through the radial correspondence the same numbers count all rooted
        // maps with `vertices` edges by (V, F).
        CountTable maps = count_bivariate(genus, vertices);
        for (const auto& [key, cnt] : census.counts) {
            auto it = maps.counts.find(key);
            if (it == maps.counts.end() || it->second != cnt) {
                rep.pass = false;
                rep.detail = "closure census differs from the rooted-map census at " +
                             std::to_string(e) + " interior edges";
                return rep;
            }
        }
        rep.censuses.push_back(std::move(census));
    }
    return rep;
}

}  // namespace mapforge
