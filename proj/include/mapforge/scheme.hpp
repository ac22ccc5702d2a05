#pragma once
// Cores and schemes of unicellular blossoming maps: pruning and regrafting,
// rerooting at rootable stems, marked trunks and decorated cores, the scheme
// of a core with inherited labels, relative labels and half-edge types,
// consistent namings of the offset digraph, height orders, binary bijections
// with their mirror involution, per-level statistics, and truncations of
// labeled schemes.

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mapforge/blossom.hpp"

namespace mapforge {

// ---------------------------------------------------------------------------
// Degree predicates.

// Interior degree of each vertex: the number of its darts carrying alpha.
inline std::vector<int> interior_degrees(const BlossomingMap& u) {
    std::vector<int> deg(u.n_vertices, 0);
    for (int d = 1; d <= u.n; ++d)
        if (!u.is_stem(d)) ++deg[u.vertex_of[d]];
    return deg;
}

// A core has every interior degree at least 2, a scheme at least 3.
inline bool is_core(const BlossomingMap& u) {
    auto deg = interior_degrees(u);
    return std::all_of(deg.begin(), deg.end(), [](int x) { return x >= 2; });
}

inline bool is_scheme(const BlossomingMap& u) {
    auto deg = interior_degrees(u);
    return std::all_of(deg.begin(), deg.end(), [](int x) { return x >= 3; });
}

// Scheme-rooted: the root bud sits at a vertex of interior degree >= 3.
inline bool is_scheme_rooted(const BlossomingMap& u) {
    return interior_degrees(u)[u.vertex_of[u.root_bud]] >= 3;
}

// Stems where the root may be moved: every leaf plus the current root bud,
// in contour order.
inline std::vector<int> rootable_stems(const BlossomingMap& u) {
    std::vector<int> out;
    for (int d : u.contour)
        if (d == u.root_bud || u.kind[d] == StemKind::Leaf) out.push_back(d);
    return out;
}

// Stems attached to vertices of interior degree >= 3, in contour order.
inline std::vector<int> scheme_stem_darts(const BlossomingMap& u) {
    auto deg = interior_degrees(u);
    std::vector<int> out;
    for (int d : u.contour)
        if (u.is_stem(d) && deg[u.vertex_of[d]] >= 3) out.push_back(d);
    return out;
}

inline std::vector<int> degree4_vertices(const BlossomingMap& u) {
    auto deg = interior_degrees(u);
    std::vector<int> out;
    for (int v = 0; v < u.n_vertices; ++v)
        if (deg[v] == 4) out.push_back(v);
    return out;
}

// Around every vertex, counting buds and edge tails against leaves and edge
// heads (under the canonical orientation): true when each vertex balances,
// i.e. has as many outgoing as incoming half-edges.
inline bool is_two_in_two_out(const BlossomingMap& u) {
    auto head = canonical_orientation(u);
    std::vector<int> bal(u.n_vertices, 0);
    for (int d = 1; d <= u.n; ++d)
        bal[u.vertex_of[d]] += u.is_stem(d) ? (u.kind[d] == StemKind::Bud ? 1 : -1)
                                            : (head[u.edge_of[d]] == d ? -1 : 1);
    return std::all_of(bal.begin(), bal.end(), [](int x) { return x == 0; });
}

// ---------------------------------------------------------------------------
// Canonical form and rerooting.

// Relabels darts by contour position, so the root bud becomes dart 1. Two
// rooted blossoming maps are isomorphic iff their canonical forms are equal.
inline BlossomingMap canonical_blossoming(const BlossomingMap& u) {
    std::vector<int> to(u.n + 1, 0);
    for (int d = 1; d <= u.n; ++d) to[d] = u.contour_pos[d] + 1;
    std::vector<int> img(u.n);
    std::vector<int> alpha(u.n + 1, 0);
    std::vector<StemKind> kind(u.n + 1, StemKind::None);
    for (int d = 1; d <= u.n; ++d) {
        img[to[d] - 1] = to[u.sigma(d)];
        if (u.alpha[d]) alpha[to[d]] = to[u.alpha[d]];
        kind[to[d]] = u.kind[d];
    }
    return build_blossoming(u.n, Perm::from_images(img), alpha, kind, to[u.root_bud]);
}

// Moves the root to another rootable stem: the old root bud becomes a leaf
// and the chosen stem the root bud. Dart names are preserved, so rerooting
// twice returns the original map exactly.
inline BlossomingMap reroot(const BlossomingMap& u, int stem) {
    if (stem == u.root_bud) return u;
    if (stem < 1 || stem > u.n || u.kind[stem] != StemKind::Leaf)
        fail(ErrorCode::NotRootable, "rerooting needs a leaf or the current root bud");
    std::vector<StemKind> kind = u.kind;
    kind[u.root_bud] = StemKind::Leaf;
    kind[stem] = StemKind::Bud;
    return build_blossoming(u.n, u.sigma, u.alpha, kind, stem);
}

// ---------------------------------------------------------------------------
// Pruning and regrafting.

struct PruneResult {
    BlossomingMap core;
    std::vector<int> new_dart;  // by input dart: its core dart, 0 if removed
    std::vector<int> old_dart;  // by core dart: the input dart it came from
    // Trees removed by the pruning, keyed by the trunk stem (a core dart).
    std::map<int, BlossomingMap> trees;
    std::map<int, std::vector<int>> tree_old_dart;  // per tree, by tree dart
    std::map<int, int> tree_trunk_dart;  // tree dart that closed the trunk edge
};

// Iteratively removes interior-degree-1 vertices together with their stems;
// each removed tree leaves a stem at its surviving neighbour in place of the
// trunk edge. The replacement stem keeps the trunk edge's direction under
// the canonical orientation, which makes it a leaf, except for the tree that
// carried the root: its trunk leaves a bud behind, and that bud roots the
// core. Each removed tree is returned as a standalone blossoming map rooted
// at the dart that closed its trunk edge, as a bud; the root-carrying tree
// instead keeps the original root bud and its trunk dart becomes a leaf.
inline PruneResult prune(const BlossomingMap& u) {
    std::vector<int> deg = interior_degrees(u);
    std::vector<std::vector<int>> vdarts(u.n_vertices);
    for (int d = 1; d <= u.n; ++d) vdarts[u.vertex_of[d]].push_back(d);

    std::vector<char> pruned(u.n_vertices, 0), edge_alive(u.n_interior_edges, 1);
    std::vector<int> work;
    for (int v = 0; v < u.n_vertices; ++v)
        if (deg[v] <= 1) work.push_back(v);
    while (!work.empty()) {
        int v = work.back();
        work.pop_back();
        if (pruned[v]) continue;
        pruned[v] = 1;
        for (int d : vdarts[v]) {
            if (u.is_stem(d) || !edge_alive[u.edge_of[d]]) continue;
            edge_alive[u.edge_of[d]] = 0;
            int w = u.vertex_of[u.alpha[d]];
            if (!pruned[w] && --deg[w] <= 1) work.push_back(w);
        }
    }

    std::vector<int> new_dart(u.n + 1, 0), old_dart{0};
    for (int d = 1; d <= u.n; ++d)
        if (!pruned[u.vertex_of[d]]) {
            new_dart[d] = static_cast<int>(old_dart.size());
            old_dart.push_back(d);
        }
    int nc = static_cast<int>(old_dart.size()) - 1;
    if (nc == 0) fail(ErrorCode::DomainError, "pruning removed every vertex; no core remains");

    auto head = canonical_orientation(u);
    std::vector<int> cimg(nc);
    std::vector<int> calpha(nc + 1, 0);
    std::vector<StemKind> ckind(nc + 1, StemKind::None);
    std::vector<int> trunk_core_dart;
    for (int c = 1; c <= nc; ++c) {
        int d = old_dart[c];
        cimg[c - 1] = new_dart[u.sigma(d)];
        if (u.is_stem(d)) {
            ckind[c] = u.kind[d];
        } else if (edge_alive[u.edge_of[d]]) {
            calpha[c] = new_dart[u.alpha[d]];
        } else {
            ckind[c] = head[u.edge_of[d]] == d ? StemKind::Leaf : StemKind::Bud;
            trunk_core_dart.push_back(c);
        }
    }

    int root_core = 0;
    bool root_survives = !pruned[u.vertex_of[u.root_bud]];
    for (int c : trunk_core_dart)
        if (ckind[c] == StemKind::Bud) {
            // the contour reaches a rootless tree from outside first, so
            // only the root-carrying tree leaves a bud behind
            if (root_survives || root_core)
                fail(ErrorCode::CounterexampleFound, "trunk bud without a removed root");
            root_core = c;
        }
    if (root_survives)
        root_core = new_dart[u.root_bud];
    else if (!root_core)
        fail(ErrorCode::CounterexampleFound, "no trunk bud leads to the removed root");

    PruneResult res;
    res.core = build_blossoming(nc, Perm::from_images(cimg), calpha, ckind, root_core);
    res.new_dart = std::move(new_dart);
    res.old_dart = std::move(old_dart);

    // Group the removed vertices into trees: components over removed edges
    // with both endpoints removed.
    std::vector<int> comp(u.n_vertices, -1);
    int ncomp = 0;
    for (int v0 = 0; v0 < u.n_vertices; ++v0) {
        if (!pruned[v0] || comp[v0] != -1) continue;
        comp[v0] = ncomp;
        std::vector<int> st{v0};
        while (!st.empty()) {
            int v = st.back();
            st.pop_back();
            for (int d : vdarts[v]) {
                if (u.is_stem(d)) continue;
                int w = u.vertex_of[u.alpha[d]];
                if (pruned[w] && comp[w] == -1) {
                    comp[w] = ncomp;
                    st.push_back(w);
                }
            }
        }
        ++ncomp;
    }
    std::vector<int> comp_trunk_core(ncomp, 0), comp_trunk_tree(ncomp, 0);
    for (int c : trunk_core_dart) {
        int td = u.alpha[res.old_dart[c]];
        int cid = comp[u.vertex_of[td]];
        if (comp_trunk_core[cid])
            fail(ErrorCode::CounterexampleFound, "a removed tree with two trunk edges");
        comp_trunk_core[cid] = c;
        comp_trunk_tree[cid] = td;
    }
    for (int cid = 0; cid < ncomp; ++cid) {
        if (!comp_trunk_core[cid])
            fail(ErrorCode::CounterexampleFound, "a removed tree with no trunk edge");
        std::vector<int> tnew(u.n + 1, 0), told{0};
        for (int d = 1; d <= u.n; ++d)
            if (pruned[u.vertex_of[d]] && comp[u.vertex_of[d]] == cid) {
                tnew[d] = static_cast<int>(told.size());
                told.push_back(d);
            }
        int nt = static_cast<int>(told.size()) - 1;
        std::vector<int> timg(nt);
        std::vector<int> talpha(nt + 1, 0);
        std::vector<StemKind> tkind(nt + 1, StemKind::None);
        bool root_tree = ckind[comp_trunk_core[cid]] == StemKind::Bud;
        for (int t = 1; t <= nt; ++t) {
            int d = told[t];
            timg[t - 1] = tnew[u.sigma(d)];
            if (u.is_stem(d))
                tkind[t] = u.kind[d];
            else if (d == comp_trunk_tree[cid])
                tkind[t] = root_tree ? StemKind::Leaf : StemKind::Bud;
            else
                talpha[t] = tnew[u.alpha[d]];
        }
        int troot = root_tree ? tnew[u.root_bud] : tnew[comp_trunk_tree[cid]];
        if (!troot) fail(ErrorCode::CounterexampleFound, "the removed root is not in its tree");
        int key = comp_trunk_core[cid];
        res.trees.emplace(key, build_blossoming(nt, Perm::from_images(timg), talpha, tkind, troot));
        res.tree_old_dart.emplace(key, std::move(told));
        res.tree_trunk_dart.emplace(key, tnew[comp_trunk_tree[cid]]);
    }
    return res;
}

// Exact inverse of prune, in the original dart numbering.
inline BlossomingMap regraft(const PruneResult& pr) {
    int n = pr.core.n;
    for (const auto& [stem, t] : pr.trees) n += t.n;
    std::vector<int> img(n, 0);
    std::vector<int> alpha(n + 1, 0);
    std::vector<StemKind> kind(n + 1, StemKind::None);
    for (int c = 1; c <= pr.core.n; ++c) {
        int d = pr.old_dart[c];
        img[d - 1] = pr.old_dart[pr.core.sigma(c)];
        if (pr.core.alpha[c])
            alpha[d] = pr.old_dart[pr.core.alpha[c]];
        else if (pr.trees.count(c))
            alpha[d] = pr.tree_old_dart.at(c)[pr.tree_trunk_dart.at(c)];
        else
            kind[d] = pr.core.kind[c];
    }
    for (const auto& [stem, t] : pr.trees) {
        const std::vector<int>& told = pr.tree_old_dart.at(stem);
        int trunk = pr.tree_trunk_dart.at(stem);
        for (int td = 1; td <= t.n; ++td) {
            int d = told[td];
            img[d - 1] = told[t.sigma(td)];
            if (t.alpha[td])
                alpha[d] = told[t.alpha[td]];
            else if (td == trunk)
                alpha[d] = pr.old_dart[stem];
            else
                kind[d] = t.kind[td];
        }
    }
    int root = pr.trees.count(pr.core.root_bud)
                   ? pr.tree_old_dart.at(pr.core.root_bud)[pr.trees.at(pr.core.root_bud).root_bud]
                   : pr.old_dart[pr.core.root_bud];
    return build_blossoming(n, Perm::from_images(img), alpha, kind, root);
}

// ---------------------------------------------------------------------------
// Trunks and decorated cores.

// A place where the root of a good map may be pushed into its core: either
// a non-core edge at a scheme vertex (reported by its core-side dart, edge
// = true) or a rootable stem already at a scheme vertex (edge = false).
struct SchemeTrunk {
    int dart = 0;
    bool edge = false;
};

inline std::vector<SchemeTrunk> scheme_trunks(const BlossomingMap& o) {
    PruneResult pr = prune(o);
    auto deg = interior_degrees(pr.core);
    std::vector<SchemeTrunk> out;
    for (int c : rootable_stems(pr.core))
        if (deg[pr.core.vertex_of[c]] >= 3)
            out.push_back({pr.old_dart[c], pr.trees.count(c) > 0});
    return out;
}

// The core rerooted at a marked trunk, carrying the removed trees keyed by
// the core stem they hang from. The tree that held the original root is
// rerooted at its trunk dart, so every carried tree is rooted at the bud
// pointing back toward the core.
struct DecoratedCore {
    BlossomingMap core;
    std::map<int, BlossomingMap> trees;
};

inline DecoratedCore to_decorated_core(const BlossomingMap& o, const SchemeTrunk& trunk) {
    PruneResult pr = prune(o);
    int s = trunk.dart >= 1 && trunk.dart <= o.n ? pr.new_dart[trunk.dart] : 0;
    if (!s || !pr.core.is_stem(s))
        fail(ErrorCode::NotRootable, "the marked trunk is not a core stem");
    if ((pr.trees.count(s) > 0) != trunk.edge)
        fail(ErrorCode::NotRootable, "the marked trunk does not match the map");
    if (interior_degrees(pr.core)[pr.core.vertex_of[s]] < 3)
        fail(ErrorCode::NotRootable, "the marked trunk is not at a scheme vertex");
    DecoratedCore dc;
    dc.core = reroot(pr.core, s);
    for (const auto& [stem, t] : pr.trees)
        dc.trees.emplace(stem, stem == pr.core.root_bud ? reroot(t, pr.tree_trunk_dart.at(stem)) : t);
    return dc;
}

// Canonical serialization of a decorated core: the core in canonical form,
// then each carried tree in canonical form keyed by the contour position of
// its stem.
inline std::string decorated_core_key(const DecoratedCore& dc) {
    std::ostringstream os;
    os << print_blossoming(canonical_blossoming(dc.core));
    std::vector<std::pair<int, const BlossomingMap*>> by_pos;
    for (const auto& [stem, t] : dc.trees)
        by_pos.emplace_back(dc.core.contour_pos[stem], &t);
    std::sort(by_pos.begin(), by_pos.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [pos, t] : by_pos)
        os << "tree at " << pos + 1 << "\n" << print_blossoming(canonical_blossoming(*t));
    return os.str();
}

// ---------------------------------------------------------------------------
// Relative labels.

// Relative corner labels reconstructed from the canonical orientation: a
// counterclockwise crossing of a bud or an edge tail raises the label by 1,
// of a leaf or an edge head lowers it by 1; the crossings around a vertex
// must cancel and labels are anchored at minimum 0 per vertex.
inline std::vector<int> relative_labels(const BlossomingMap& u) {
    auto head = canonical_orientation(u);
    std::vector<int> rel(u.n + 1, 0);
    std::vector<char> seen(u.n + 1, 0);
    for (int d0 = 1; d0 <= u.n; ++d0) {
        if (seen[d0]) continue;
        std::vector<int> darts, vals;
        int x = 0, d = d0;
        do {
            darts.push_back(d);
            vals.push_back(x);
            x += u.is_stem(d) ? (u.kind[d] == StemKind::Bud ? 1 : -1)
                              : (head[u.edge_of[d]] == d ? -1 : 1);
            d = u.sigma(d);
        } while (d != d0);
        if (x != 0) fail(ErrorCode::HeightMismatch, "crossings around a vertex do not cancel");
        int mn = *std::min_element(vals.begin(), vals.end());
        for (size_t i = 0; i < darts.size(); ++i) {
            rel[darts[i]] = vals[i] - mn;
            seen[darts[i]] = 1;
        }
    }
    return rel;
}

// ---------------------------------------------------------------------------
// Labeled schemes.

struct LabeledScheme {
    BlossomingMap s;
    std::vector<int> core_dart;   // by scheme dart: the input dart it came from
    std::vector<int> corner;      // by scheme dart
    std::vector<int> rel;         // by scheme dart: corner minus vertex height
    std::vector<int> stem_label;  // by scheme dart, 0 for interior darts
    std::vector<int> head;        // by scheme edge: its head dart
    std::vector<int> lam0, lam1;  // by scheme edge: labels at tail and past head
    std::vector<int> height;      // by scheme vertex: minimum corner label
};

namespace detail {

inline void fill_scheme_edge_labels(LabeledScheme& l) {
    const BlossomingMap& s = l.s;
    l.stem_label.assign(s.n + 1, 0);
    for (int d = 1; d <= s.n; ++d)
        if (s.is_stem(d)) l.stem_label[d] = l.corner[d] + (s.kind[d] == StemKind::Bud ? 1 : 0);
    l.lam0.assign(s.n_interior_edges, 0);
    l.lam1.assign(s.n_interior_edges, 0);
    for (int e = 0; e < s.n_interior_edges; ++e) {
        int hd = l.head[e], tl = s.alpha[hd];
        l.lam0[e] = l.corner[tl];
        l.lam1[e] = l.corner[s.sigma(hd)];
    }
}

}  // namespace detail

// The scheme of a scheme-rooted well-labeled core: interior-degree-2
// vertices are removed, each interior branch through them becoming a single
// edge; stems and corner labels at the surviving vertices are kept. The
// branch's edges all point the same way, so the new edge inherits their
// common direction.
inline LabeledScheme scheme_of(const BlossomingMap& core) {
    std::vector<int> deg = interior_degrees(core);
    for (int v = 0; v < core.n_vertices; ++v)
        if (deg[v] < 2) fail(ErrorCode::DomainError, "the input is not a core");
    if (deg[core.vertex_of[core.root_bud]] < 3)
        fail(ErrorCode::NotSchemeRooted, "the root bud is not at a scheme vertex");
    if (!is_well_labeled(core)) fail(ErrorCode::DomainError, "the core is not well-labeled");
    CornerLabeling lab = canonical_labeling(core);
    std::vector<int> ohead = canonical_orientation(core);

    std::vector<int> snew(core.n + 1, 0), sold{0};
    for (int d = 1; d <= core.n; ++d)
        if (deg[core.vertex_of[d]] >= 3) {
            snew[d] = static_cast<int>(sold.size());
            sold.push_back(d);
        }
    int ns = static_cast<int>(sold.size()) - 1;

    std::vector<int> img(ns), alpha(ns + 1, 0);
    std::vector<StemKind> kind(ns + 1, StemKind::None);
    std::vector<char> is_head(ns + 1, 0);
    for (int c = 1; c <= ns; ++c) {
        int d = sold[c];
        img[c - 1] = snew[core.sigma(d)];
        if (core.is_stem(d)) {
            kind[c] = core.kind[d];
            continue;
        }
        bool along = ohead[core.edge_of[d]] == core.alpha[d];
        int x = core.alpha[d];
        while (deg[core.vertex_of[x]] == 2) {
            int other = core.sigma(x);
            while (other == x || core.is_stem(other)) other = core.sigma(other);
            if ((ohead[core.edge_of[other]] == core.alpha[other]) != along)
                fail(ErrorCode::CounterexampleFound, "branch orientation is incoherent");
            x = core.alpha[other];
        }
        alpha[c] = snew[x];
        is_head[c] = !along;
    }

    LabeledScheme l;
    l.s = build_blossoming(ns, Perm::from_images(img), alpha, kind, snew[core.root_bud]);
    l.core_dart = sold;
    l.corner.assign(ns + 1, 0);
    for (int c = 1; c <= ns; ++c) l.corner[c] = lab.corner[sold[c]];
    l.height.assign(l.s.n_vertices, 0);
    std::vector<char> seenv(l.s.n_vertices, 0);
    for (int c = 1; c <= ns; ++c) {
        int v = l.s.vertex_of[c];
        if (!seenv[v] || l.corner[c] < l.height[v]) {
            l.height[v] = l.corner[c];
            seenv[v] = 1;
        }
    }
    l.rel.assign(ns + 1, 0);
    for (int c = 1; c <= ns; ++c) l.rel[c] = l.corner[c] - l.height[l.s.vertex_of[c]];
    l.head.assign(l.s.n_interior_edges, 0);
    for (int c = 1; c <= ns; ++c) {
        if (!l.s.alpha[c]) continue;
        if (is_head[c] == is_head[l.s.alpha[c]])
            fail(ErrorCode::CounterexampleFound, "branch ends disagree about the head");
        if (is_head[c]) l.head[l.s.edge_of[c]] = c;
    }
    detail::fill_scheme_edge_labels(l);
    return l;
}

// A labeled scheme from an explicit height per vertex: relative labels come
// from the canonical orientation, corners are height plus relative label.
inline LabeledScheme labeled_scheme_from_heights(const BlossomingMap& s,
                                                 const std::vector<int>& height) {
    if (static_cast<int>(height.size()) != s.n_vertices)
        fail(ErrorCode::DomainError, "one height per vertex is required");
    if (!is_scheme(s)) fail(ErrorCode::DomainError, "the input is not a scheme");
    LabeledScheme l;
    l.s = s;
    l.core_dart.resize(s.n + 1);
    std::iota(l.core_dart.begin(), l.core_dart.end(), 0);
    l.rel = relative_labels(s);
    l.height = height;
    l.corner.assign(s.n + 1, 0);
    for (int d = 1; d <= s.n; ++d) l.corner[d] = height[s.vertex_of[d]] + l.rel[d];
    l.head = canonical_orientation(s);
    detail::fill_scheme_edge_labels(l);
    return l;
}

// ---------------------------------------------------------------------------
// Unlabeled schemes: relative labels, half-edge types, edge and stem classes.

struct UnlabeledScheme {
    BlossomingMap s;
    std::vector<int> head;       // by edge: canonical orientation
    std::vector<int> rel;        // by dart
    std::vector<int> half_type;  // by dart: 0 if adjacent relative labels are
                                 // {0,1}, 1 if they are {1,2}
    // By edge: the vertex the edge is offset toward, -1 for balanced
    // (both half-edge types 0), -2 for shifted (both types 1).
    std::vector<int> offset_toward;
    std::vector<int> stem_class;      // by dart: 0 regular, 1 shifted, -1 non-stem
    std::vector<int> stem_rel_label;  // by dart: 1 or 2 for stems, 0 otherwise
};

inline UnlabeledScheme unlabeled_scheme(const BlossomingMap& s) {
    if (!is_scheme(s)) fail(ErrorCode::DomainError, "the input is not a scheme");
    UnlabeledScheme us;
    us.s = s;
    us.head = canonical_orientation(s);
    us.rel = relative_labels(s);
    us.half_type.assign(s.n + 1, 0);
    us.stem_class.assign(s.n + 1, -1);
    us.stem_rel_label.assign(s.n + 1, 0);
    for (int d = 1; d <= s.n; ++d) {
        int hi = std::max(us.rel[d], us.rel[s.sigma(d)]);
        int lo = std::min(us.rel[d], us.rel[s.sigma(d)]);
        if (hi - lo != 1)
            fail(ErrorCode::CounterexampleFound, "adjacent relative labels do not differ by 1");
        us.half_type[d] = hi == 2 ? 1 : 0;
        if (s.is_stem(d)) {
            us.stem_class[d] = us.half_type[d];
            us.stem_rel_label[d] = hi;
        }
    }
    us.offset_toward.assign(s.n_interior_edges, -1);
    for (int e = 0; e < s.n_interior_edges; ++e) {
        int d = s.edge_dart[e], d2 = s.alpha[d];
        int t1 = us.half_type[d], t2 = us.half_type[d2];
        us.offset_toward[e] = t1 && t2 ? -2 : !t1 && !t2 ? -1 : s.vertex_of[t1 ? d : d2];
    }
    return us;
}

// ---------------------------------------------------------------------------
// Consistent namings.

// True when the naming orders every offset edge's endpoints upward.
inline bool is_consistent(const UnlabeledScheme& us, const std::vector<int>& nu) {
    for (int e = 0; e < us.s.n_interior_edges; ++e) {
        int v = us.offset_toward[e];
        if (v < 0) continue;
        int d = us.s.edge_dart[e], d2 = us.s.alpha[d];
        int w = us.s.vertex_of[d] == v ? us.s.vertex_of[d2] : us.s.vertex_of[d];
        if (!(nu[w] < nu[v])) return false;
    }
    return true;
}

// The smallest-vertex-first topological order of the offset digraph, as a
// naming: nu[v] is the 1-based rank of vertex v.
inline std::vector<int> consistent_naming(const UnlabeledScheme& us) {
    int V = us.s.n_vertices;
    std::vector<std::vector<int>> adj(V);
    std::vector<int> indeg(V, 0);
    for (int e = 0; e < us.s.n_interior_edges; ++e) {
        int v = us.offset_toward[e];
        if (v < 0) continue;
        int d = us.s.edge_dart[e], d2 = us.s.alpha[d];
        int w = us.s.vertex_of[d] == v ? us.s.vertex_of[d2] : us.s.vertex_of[d];
        adj[w].push_back(v);
        ++indeg[v];
    }
    std::vector<int> nu(V, 0);
    std::set<int> avail;
    for (int v = 0; v < V; ++v)
        if (!indeg[v]) avail.insert(v);
    for (int k = 1; k <= V; ++k) {
        if (avail.empty()) fail(ErrorCode::CyclicOffsetGraph, "the offset digraph has a cycle");
        int v = *avail.begin();
        avail.erase(avail.begin());
        nu[v] = k;
        for (int w : adj[v])
            if (--indeg[w] == 0) avail.insert(w);
    }
    return nu;
}

// Every consistent naming, in lexicographic order of the nu vector.
inline std::vector<std::vector<int>> all_consistent_namings(const UnlabeledScheme& us) {
    int V = us.s.n_vertices;
    std::vector<int> nu(V);
    std::iota(nu.begin(), nu.end(), 1);
    std::vector<std::vector<int>> out;
    do {
        if (is_consistent(us, nu)) out.push_back(nu);
    } while (std::next_permutation(nu.begin(), nu.end()));
    return out;
}

// ---------------------------------------------------------------------------
// Height orders and binary bijections.

// Vertices sorted by (height, naming), 1-based: pi[k] is the k-th vertex.
inline std::vector<int> height_order(const LabeledScheme& l, const std::vector<int>& nu) {
    int V = l.s.n_vertices;
    std::vector<int> vs(V);
    std::iota(vs.begin(), vs.end(), 0);
    std::sort(vs.begin(), vs.end(), [&](int a, int b) {
        return std::make_pair(l.height[a], nu[a]) < std::make_pair(l.height[b], nu[b]);
    });
    std::vector<int> pi(V + 1, -1);
    for (int k = 1; k <= V; ++k) pi[k] = vs[k - 1];
    return pi;
}

// The height order together with the parity of each consecutive height gap.
struct BinaryBijection {
    std::vector<int> pi;    // 1-based, pi[0] = -1
    std::vector<int> zeta;  // zeta[k] for 1 <= k <= |V|-1, zeta[0] unused
};

inline BinaryBijection binary_bijection(const LabeledScheme& l, const std::vector<int>& nu) {
    BinaryBijection bb;
    bb.pi = height_order(l, nu);
    int V = l.s.n_vertices;
    bb.zeta.assign(V, 0);
    for (int k = 1; k < V; ++k)
        bb.zeta[k] = ((l.height[bb.pi[k + 1]] - l.height[bb.pi[k]]) % 2 + 2) % 2;
    return bb;
}

inline std::vector<int> mirror_pi(const std::vector<int>& pi) {
    int V = static_cast<int>(pi.size()) - 1;
    std::vector<int> out(V + 1, -1);
    for (int k = 1; k <= V; ++k) out[k] = pi[V + 1 - k];
    return out;
}

inline BinaryBijection mirror(const BinaryBijection& bb) {
    int V = static_cast<int>(bb.pi.size()) - 1;
    BinaryBijection out;
    out.pi = mirror_pi(bb.pi);
    out.zeta.assign(V, 0);
    for (int k = 1; k < V; ++k) out.zeta[k] = bb.zeta[V - k];
    return out;
}

// ---------------------------------------------------------------------------
// Per-level statistics.

struct SchemeStats {
    std::vector<int> delta_plus;  // by k, 1..|V|-1: 1 iff nu(pi(k+1)) <= nu(pi(k))
    std::vector<int> C_plus, C_minus;  // by k: edges crossing the level
    std::vector<std::vector<char>> of_edge, uf_edge;  // by k, then edge
    std::vector<int> O_k, U_k;         // by k: row sums of of/uf
    std::vector<int> B_k, B_k_plus;    // by k: regular and shifted buds at pi(k)
    int O_total = 0, U_total = 0;
};

inline SchemeStats scheme_stats(const UnlabeledScheme& us, const std::vector<int>& pi,
                                const std::vector<int>& nu) {
    int V = us.s.n_vertices, E = us.s.n_interior_edges;
    if (static_cast<int>(pi.size()) != V + 1 || static_cast<int>(nu.size()) != V)
        fail(ErrorCode::DomainError, "order and naming must cover every vertex");
    std::vector<int> pos(V, 0);
    for (int k = 1; k <= V; ++k) pos[pi[k]] = k;

    SchemeStats st;
    st.delta_plus.assign(V + 1, 0);
    for (int k = 1; k < V; ++k) st.delta_plus[k] = nu[pi[k + 1]] <= nu[pi[k]] ? 1 : 0;
    st.C_plus.assign(V + 1, 0);
    st.C_minus.assign(V + 1, 0);
    st.of_edge.assign(V + 1, std::vector<char>(E, 0));
    st.uf_edge.assign(V + 1, std::vector<char>(E, 0));
    st.O_k.assign(V + 1, 0);
    st.U_k.assign(V + 1, 0);
    st.B_k.assign(V + 1, 0);
    st.B_k_plus.assign(V + 1, 0);

    for (int e = 0; e < E; ++e) {
        int d = us.s.edge_dart[e], d2 = us.s.alpha[d];
        int a = pos[us.s.vertex_of[d]], b = pos[us.s.vertex_of[d2]];
        int lo = std::min(a, b), hi = std::max(a, b);
        for (int k = lo; k < hi; ++k) ++st.C_plus[k];
        for (int k = lo + 1; k <= hi; ++k) ++st.C_minus[k];
        bool shifted = us.offset_toward[e] == -2;
        for (int side = 0; side < 2; ++side) {
            int x = us.s.vertex_of[side ? d2 : d];
            int y = us.s.vertex_of[side ? d : d2];
            if (x == y) break;
            if (!shifted && us.offset_toward[e] != x) continue;
            if (pos[y] < pos[x]) {
                st.of_edge[pos[x]][e] = 1;
                ++st.O_k[pos[x]];
            } else {
                st.uf_edge[pos[x]][e] = 1;
                ++st.U_k[pos[x]];
            }
        }
    }
    for (int k = 1; k <= V; ++k) {
        st.O_total += st.O_k[k];
        st.U_total += st.U_k[k];
    }
    for (int d = 1; d <= us.s.n; ++d)
        if (us.s.kind[d] == StemKind::Bud) {
            int k = pos[us.s.vertex_of[d]];
            if (us.stem_class[d] == 0)
                ++st.B_k[k];
            else
                ++st.B_k_plus[k];
        }
    return st;
}

// ---------------------------------------------------------------------------
// Truncations.

// The scheme above (plus) or below (minus) level k of the height order, with
// everything at or beyond the level merged into a single vertex labeled by
// the height of pi(k). Stems are dropped, edges inside the merged set are
// erased; a surviving edge keeps its direction, its endpoint labels are
// replaced by that height strictly past the level, and its half-edge types
// are zeroed on the merged side (for minus, including position k itself).
struct Truncation {
    int n_vertices = 0;
    std::vector<int> vertex_height;  // by truncation vertex, id 0 = merged
    std::vector<int> orig_vertex;    // by truncation vertex, -1 for merged
    struct TEdge {
        int edge = 0;  // original edge id
        int tail = 0, head = 0;
        int lam0 = 0, lam1 = 0;
        int type_tail = 0, type_head = 0;
    };
    std::vector<TEdge> edges;
};

inline Truncation truncate_scheme(const LabeledScheme& l, const std::vector<int>& nu, int k,
                                  bool plus) {
    const BlossomingMap& s = l.s;
    int V = s.n_vertices;
    if (k < 1 || k > V) fail(ErrorCode::BadInterval, "the truncation level is out of range");
    std::vector<int> pi = height_order(l, nu);
    std::vector<int> pos(V, 0);
    for (int j = 1; j <= V; ++j) pos[pi[j]] = j;
    auto merged = [&](int v) { return plus ? pos[v] <= k : pos[v] >= k; };
    auto replaced = [&](int v) { return plus ? pos[v] < k : pos[v] > k; };
    auto zeroed = [&](int v) { return plus ? pos[v] < k : pos[v] >= k; };
    int hk = l.height[pi[k]];

    Truncation tr;
    tr.orig_vertex.push_back(-1);
    tr.vertex_height.push_back(hk);
    std::vector<int> newv(V, 0);
    for (int v = 0; v < V; ++v)
        if (!merged(v)) {
            newv[v] = static_cast<int>(tr.orig_vertex.size());
            tr.orig_vertex.push_back(v);
            tr.vertex_height.push_back(l.height[v]);
        }
    tr.n_vertices = static_cast<int>(tr.orig_vertex.size());

    auto type_of = [&](int d) { return std::max(l.rel[d], l.rel[s.sigma(d)]) == 2 ? 1 : 0; };
    for (int e = 0; e < s.n_interior_edges; ++e) {
        int hd = l.head[e], tl = s.alpha[hd];
        int vt = s.vertex_of[tl], vh = s.vertex_of[hd];
        if (merged(vt) && merged(vh)) continue;
        Truncation::TEdge te;
        te.edge = e;
        te.tail = merged(vt) ? 0 : newv[vt];
        te.head = merged(vh) ? 0 : newv[vh];
        te.lam0 = replaced(vt) ? hk : l.lam0[e];
        te.lam1 = replaced(vh) ? hk : l.lam1[e];
        te.type_tail = zeroed(vt) ? 0 : type_of(tl);
        te.type_head = zeroed(vh) ? 0 : type_of(hd);
        tr.edges.push_back(te);
    }
    return tr;
}

// ---------------------------------------------------------------------------
// Scheme enumeration.

// Rooted schemes grouped by the unrooted map beneath them (the orbit under
// rerooting at rootable stems). Within a class and across classes the order
// is the lexicographic order of the canonical printed forms.
struct SchemeClass {
    std::vector<BlossomingMap> rooted;
};

// Every rooted scheme of the genus: 4-valent, unicellular, interior degrees
// 3 or 4 (so at most one stem per vertex), balanced crossings around every
// vertex. Genus 1 and 2 only.
inline std::vector<SchemeClass> enumerate_schemes(int genus, long long max_nodes = 0) {
    if (genus >= 3)
        fail(ErrorCode::ResourceLimit, "scheme generation is limited to genus 1 and 2");
    std::vector<SchemeClass> out;
    if (genus < 1) return out;

    std::map<std::string, BlossomingMap> seen;
    for (int n4 = 0; 2 * n4 <= 4 * genus - 2; ++n4) {
        int n3 = 4 * genus - 2 - 2 * n4;
        int kk = n3 / 2;
        if (kk < 1) continue;  // no stems means nothing can root the map
        int e_int = (3 * n3 + 4 * n4) / 2;
        BlossomOptions opt;
        opt.genus = genus;
        opt.four_valent = true;
        opt.max_stems_per_vertex = 1;
        opt.max_nodes = max_nodes;
        enumerate_blossoming(e_int, kk, opt, [&](const BlossomingMap& s) {
            if (!is_two_in_two_out(s)) return;
            seen.emplace(print_blossoming(s), s);
        });
    }

    // Group by the smallest canonical form over all rerootings.
    std::map<std::string, SchemeClass> classes;
    for (const auto& [text, s] : seen) {
        std::string key = text;
        for (int r : rootable_stems(s))
            key = std::min(key, print_blossoming(canonical_blossoming(reroot(s, r))));
        classes[key].rooted.push_back(s);
    }
    out.reserve(classes.size());
    for (auto& [key, cls] : classes) out.push_back(std::move(cls));
    return out;
}

// ---------------------------------------------------------------------------
// Text forms.

// The blossoming map followed by the half-edge types of its interior darts.
inline std::string print_scheme(const UnlabeledScheme& us) {
    std::string out = print_blossoming(us.s);
    std::string line = "types";
    for (int d = 1; d <= us.s.n; ++d)
        if (!us.s.is_stem(d))
            line += " (" + std::to_string(d) + ":" + std::to_string(us.half_type[d]) + ")";
    return out + line + "\n";
}

// Per-level statistics as deterministic JSON.
inline std::string stats_to_json(const UnlabeledScheme& us, const std::vector<int>& pi,
                                 const std::vector<int>& nu) {
    SchemeStats st = scheme_stats(us, pi, nu);
    int V = us.s.n_vertices;
    std::ostringstream os;
    os << "{\"pi\":[";
    for (int k = 1; k <= V; ++k) os << (k > 1 ? "," : "") << pi[k];
    os << "],\"levels\":[";
    for (int k = 1; k <= V; ++k) {
        os << (k > 1 ? "," : "") << "{\"k\":" << k << ",\"C_plus\":" << st.C_plus[k]
           << ",\"C_minus\":" << st.C_minus[k] << ",\"O\":" << st.O_k[k] << ",\"U\":" << st.U_k[k]
           << ",\"B\":" << st.B_k[k] << ",\"B_plus\":" << st.B_k_plus[k];
        if (k < V) os << ",\"delta_plus\":" << st.delta_plus[k];
        os << "}";
    }
    os << "],\"O_total\":" << st.O_total << ",\"U_total\":" << st.U_total << "}";
    return os.str();
}

}  // namespace mapforge
