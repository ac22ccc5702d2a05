#pragma once

#include <algorithm>
#include <climits>
#include <optional>
#include <queue>
#include <sstream>
#include <string>
#include <vector>

#include "mapforge/error.hpp"
#include "mapforge/permutation.hpp"

namespace mapforge {

// Rooted map on an orientable surface as a rotation system.
//
// Darts are 1..n. sigma rotates counterclockwise around each vertex, alpha
// swaps the two darts of each edge. Faces are the cycles of phi = sigma∘alpha;
// with this convention the face of a dart lies on its right when the dart is
// traversed from its vertex towards the other end, and a phi-cycle lists the
// boundary darts of its face in the direction that keeps the face on the
// right. The root dart r encodes the root corner (sigma⁻¹(r), r); a corner is
// always represented by its second dart in counterclockwise order, and the
// corner between sigma⁻¹(d) and d occupies the angular sector just clockwise
// of d, inside the face on the right of d.
struct RootedMap {
    int n = 0;  // number of darts
    Perm sigma, alpha, phi, sigma_inv;
    int root = 0;

    std::vector<int> vertex_of, face_of, edge_of;  // indexed by dart
    std::vector<int> edge_dart;                    // min dart of each edge
    int n_vertices = 0, n_faces = 0, n_edges = 0, genus = 0;

    int corner_face(int corner_dart) const { return face_of[corner_dart]; }
    int root_face() const { return corner_face(root); }

    std::vector<std::vector<int>> faces() const { return phi.cycles(); }
    std::vector<std::vector<int>> vertices() const { return sigma.cycles(); }

    int degree(int vertex_id) const {
        int d = 0;
        for (int i = 1; i <= n; ++i)
            if (vertex_of[i] == vertex_id) ++d;
        return d;
    }

    bool operator==(const RootedMap& o) const {
        return n == o.n && root == o.root && sigma == o.sigma && alpha == o.alpha;
    }
};

inline RootedMap build_map(int n_darts, const Perm& sigma, const Perm& alpha, int root_dart) {
    if (n_darts <= 0 || n_darts % 2 != 0)
        fail(ErrorCode::BadRoot, "dart count must be positive and even");
    if (sigma.size() != n_darts || alpha.size() != n_darts)
        fail(ErrorCode::NotPermutation, "permutation size does not match dart count");
    if (root_dart < 1 || root_dart > n_darts) fail(ErrorCode::BadRoot, "root dart out of range");
    if (!alpha.is_involution()) fail(ErrorCode::NotInvolution, "alpha is not an involution");
    if (alpha.has_fixed_point()) fail(ErrorCode::FixedPointInAlpha, "alpha fixes a dart");

    // Connectivity: the group <sigma, alpha> must act transitively on darts.
    {
        std::vector<char> seen(n_darts + 1, 0);
        std::queue<int> q;
        q.push(1);
        seen[1] = 1;
        int reached = 1;
        while (!q.empty()) {
            int d = q.front();
            q.pop();
            for (int e : {sigma(d), alpha(d)}) {
                if (!seen[e]) {
                    seen[e] = 1;
                    ++reached;
                    q.push(e);
                }
            }
        }
        if (reached != n_darts) fail(ErrorCode::NotConnected, "dart action is not transitive");
    }

    RootedMap m;
    m.n = n_darts;
    m.sigma = sigma;
    m.alpha = alpha;
    m.sigma_inv = sigma.inverse();
    m.phi = sigma.compose(alpha);
    m.root = root_dart;
    m.vertex_of = sigma.cycle_ids();
    m.face_of = m.phi.cycle_ids();
    m.n_vertices = sigma.cycle_count();
    m.n_faces = m.phi.cycle_count();
    m.n_edges = n_darts / 2;

    m.edge_of.assign(n_darts + 1, -1);
    for (int d = 1; d <= n_darts; ++d) {
        if (m.edge_of[d] >= 0) continue;
        int e = static_cast<int>(m.edge_dart.size());
        m.edge_of[d] = e;
        m.edge_of[alpha(d)] = e;
        m.edge_dart.push_back(d);
    }

    int euler = m.n_vertices - m.n_edges + m.n_faces;
    if ((2 - euler) % 2 != 0 || euler > 2)
        fail(ErrorCode::NotPermutation, "Euler characteristic is not 2-2g");
    m.genus = (2 - euler) / 2;
    return m;
}

// ---------------------------------------------------------------------------
// Orientations.

// head[e] is the dart of edge e sitting at the vertex the edge points to; the
// edge is traversed along tail(e) = alpha(head[e]).
struct Orientation {
    std::vector<int> head;

    int tail_dart(const RootedMap& m, int e) const { return m.alpha(head[e]); }
    bool operator==(const Orientation& o) const { return head == o.head; }
};

// Face 2-coloring; 0 = black, 1 = white. Root face black.
struct FaceColoring {
    std::vector<int> color;  // by face id
    int blacks = 0, whites = 0;
};

// Dual adjacency respecting multiplicity: for each edge, the faces on its two
// sides.
inline std::vector<std::pair<int, int>> dual_edges(const RootedMap& m) {
    std::vector<std::pair<int, int>> out;
    out.reserve(m.n_edges);
    for (int e = 0; e < m.n_edges; ++e) {
        int d = m.edge_dart[e];
        out.emplace_back(m.face_of[d], m.face_of[m.alpha(d)]);
    }
    return out;
}

inline std::optional<FaceColoring> try_face_coloring(const RootedMap& m) {
    FaceColoring fc;
    fc.color.assign(m.n_faces, -1);
    std::vector<std::vector<int>> adj(m.n_faces);
    for (auto [a, b] : dual_edges(m)) {
        if (a == b) return std::nullopt;  // an edge bounded by one face: dual self-loop
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::queue<int> q;
    int rf = m.root_face();
    fc.color[rf] = 0;
    q.push(rf);
    while (!q.empty()) {
        int f = q.front();
        q.pop();
        for (int g : adj[f]) {
            if (fc.color[g] < 0) {
                fc.color[g] = 1 - fc.color[f];
                q.push(g);
            } else if (fc.color[g] == fc.color[f]) {
                return std::nullopt;
            }
        }
    }
    for (int f = 0; f < m.n_faces; ++f)
        fc.color[f] == 0 ? ++fc.blacks : ++fc.whites;
    return fc;
}

inline bool is_bicolorable(const RootedMap& m) { return try_face_coloring(m).has_value(); }

inline FaceColoring face_coloring(const RootedMap& m) {
    auto fc = try_face_coloring(m);
    if (!fc) fail(ErrorCode::NotBicolorable, "faces admit no proper 2-coloring");
    return *fc;
}

// h(f) = dual distance from the root face.
inline std::vector<int> face_heights(const RootedMap& m) {
    std::vector<std::vector<int>> adj(m.n_faces);
    for (auto [a, b] : dual_edges(m)) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<int> h(m.n_faces, -1);
    std::queue<int> q;
    h[m.root_face()] = 0;
    q.push(m.root_face());
    while (!q.empty()) {
        int f = q.front();
        q.pop();
        for (int g : adj[f])
            if (h[g] < 0) {
                h[g] = h[f] + 1;
                q.push(g);
            }
    }
    return h;
}

// Orient every edge so that the face on its left has the larger height.
// Travelling along the tail dart t puts face_of[t] on the right and
// face_of[alpha(t)] = face_of[head] on the left, so the head dart is the one
// whose face has the larger height. The side is pinned by the closure of
// blossoming maps: a good labeling raises labels from the right of an edge to
// its left, face labels of a closed map are the dual-distance heights, and
// the closure orientation must reproduce this orientation.
inline Orientation dual_geodesic_orientation(const RootedMap& m) {
    if (!is_bicolorable(m)) fail(ErrorCode::NotBicolorable, "dual-geodesic orientation needs a bicolorable map");
    auto h = face_heights(m);
    Orientation o;
    o.head.resize(m.n_edges);
    for (int e = 0; e < m.n_edges; ++e) {
        int d = m.edge_dart[e], d2 = m.alpha(d);
        int hd = h[m.face_of[d]], hd2 = h[m.face_of[d2]];
        if (hd == hd2) fail(ErrorCode::NotBicolorable, "equal heights across an edge");
        o.head[e] = hd > hd2 ? d : d2;
    }
    return o;
}

// True iff a face potential exists: an integer per face, rising by one from
// the right side to the left side of every oriented edge. Equivalent to the
// balanced-crossing property of loops on the surface (the sign convention is
// immaterial for existence; it matches the height function of the
// dual-geodesic orientation, whose left face is the larger one, and the face
// labels of good labelings).
inline bool is_bicolorable_orientation(const RootedMap& m, const Orientation& o) {
    std::vector<std::vector<std::pair<int, int>>> adj(m.n_faces);  // (face, delta)
    for (int e = 0; e < m.n_edges; ++e) {
        int hd = o.head[e];
        int fl = m.face_of[hd], fr = m.face_of[m.alpha(hd)];
        adj[fr].emplace_back(fl, +1);
        adj[fl].emplace_back(fr, -1);
    }
    std::vector<int> pot(m.n_faces, INT_MIN);
    std::queue<int> q;
    pot[0] = 0;
    q.push(0);
    while (!q.empty()) {
        int f = q.front();
        q.pop();
        for (auto [g, delta] : adj[f]) {
            if (pot[g] == INT_MIN) {
                pot[g] = pot[f] + delta;
                q.push(g);
            } else if (pot[g] != pot[f] + delta) {
                return false;
            }
        }
    }
    return true;
}

// A face is clockwise when its boundary is coherently directed and the root
// corner lies on the left of the directed cycle. Walking a phi-cycle keeps
// its face on the right, so when the boundary edges all point along the walk
// the faces just beyond the boundary, and with them the root corner whenever
// the face is not the root face, lie on the left (along its phi-cycle, every
// boundary dart a tail). For the root face the root corner is inside the face
// and the condition flips (against its phi-cycle, every boundary dart a
// head). The convention is pinned by the exhaustive uniqueness check of the
// dual-geodesic orientation in the tests.
inline bool has_clockwise_face(const RootedMap& m, const Orientation& o) {
    int rf = m.root_face();
    for (const auto& cyc : m.phi.cycles()) {
        bool root = m.face_of[cyc[0]] == rf;
        bool coherent = true;
        for (int d : cyc) {
            int along = m.alpha(d);  // head dart when the edge is directed along d
            if (o.head[m.edge_of[d]] != (root ? d : along)) {
                coherent = false;
                break;
            }
        }
        if (coherent) return true;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Canonical form.

// Relabels darts by breadth-first discovery from the root with the alphabet
// (sigma, sigma⁻¹, alpha). Rooted maps are rigid, so two rooted maps are
// isomorphic iff their canonical forms are equal.
inline RootedMap canonical_form(const RootedMap& m) {
    std::vector<int> relab(m.n + 1, 0);
    std::vector<int> order;
    order.reserve(m.n);
    relab[m.root] = 1;
    order.push_back(m.root);
    std::queue<int> q;
    q.push(m.root);
    int next = 2;
    while (!q.empty()) {
        int d = q.front();
        q.pop();
        for (int e : {m.sigma(d), m.sigma_inv(d), m.alpha(d)}) {
            if (!relab[e]) {
                relab[e] = next++;
                order.push_back(e);
                q.push(e);
            }
        }
    }
    Perm s(m.n), a(m.n);
    for (int d = 1; d <= m.n; ++d) {
        s.set(relab[d], relab[m.sigma(d)]);
        a.set(relab[d], relab[m.alpha(d)]);
    }
    return build_map(m.n, s, a, 1);
}

inline bool is_isomorphic_rooted(const RootedMap& a, const RootedMap& b) {
    if (a.n != b.n) return false;
    return canonical_form(a) == canonical_form(b);
}

// ---------------------------------------------------------------------------
// Text format. One record:
//   darts N
//   sigma (c1 c2 ...)(...)
//   alpha (a b)(c d)...
//   root d
// Whitespace-insensitive; parser and printer round-trip bit-exactly on
// printed output.

inline std::string print_map(const RootedMap& m) {
    std::ostringstream os;
    os << "darts " << m.n << "\n";
    os << "sigma " << m.sigma.to_cycle_string() << "\n";
    os << "alpha " << m.alpha.to_cycle_string() << "\n";
    os << "root " << m.root << "\n";
    return os.str();
}

namespace detail {
inline size_t find_keyword(const std::string& s, const std::string& kw, size_t from) {
    size_t p = s.find(kw, from);
    if (p == std::string::npos) fail(ErrorCode::ParseError, "missing keyword '" + kw + "'");
    return p;
}
}  // namespace detail

inline RootedMap parse_map(const std::string& text) {
    size_t pd = detail::find_keyword(text, "darts", 0);
    size_t ps = detail::find_keyword(text, "sigma", pd);
    size_t pa = detail::find_keyword(text, "alpha", ps);
    size_t pr = detail::find_keyword(text, "root", pa);
    int n = 0, root = 0;
    try {
        n = std::stoi(text.substr(pd + 5, ps - pd - 5));
        root = std::stoi(text.substr(pr + 4));
    } catch (const std::exception&) {
        fail(ErrorCode::ParseError, "bad integer field");
    }
    if (n <= 0) fail(ErrorCode::ParseError, "dart count must be positive");
    Perm sigma = Perm::from_cycle_string(n, text.substr(ps + 5, pa - ps - 5));
    Perm alpha = Perm::from_cycle_string(n, text.substr(pa + 5, pr - pa - 5));
    return build_map(n, sigma, alpha, root);
}

}  // namespace mapforge
