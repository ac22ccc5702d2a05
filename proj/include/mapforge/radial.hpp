#pragma once

#include <vector>

#include "mapforge/map.hpp"

namespace mapforge {

// Radial construction: vertices of the result stand for edges of the input,
// one edge of the result per corner of the input, joining the two input edges
// bounding that corner. The result is 4-valent, bicolorable and of the same
// genus; its black faces correspond to the vertices of the input and its
// white faces to the faces of the input.
//
// Dart layout of the result: input dart d (standing for the corner
// (sigma⁻¹(d), d)) yields the result edge {2d-1, 2d}, with 2d-1 incident to
// the vertex for the edge of sigma⁻¹(d) and 2d incident to the vertex for the
// edge of d. Around the vertex for an input edge {d, alpha(d)} the four ends
// in counterclockwise order are (2·alpha(d), 2·sigma(d)-1, 2d,
// 2·sigma(alpha(d))-1), which gives the closed forms below.
struct RadialResult {
    RootedMap r;
    std::vector<int> vertex_face;  // input vertex id -> face id of r (black)
    std::vector<int> face_face;    // input face id -> face id of r (white)
    std::vector<int> edge_vertex;  // input edge id -> vertex id of r
};

inline RadialResult radial(const RootedMap& m) {
    int n = 2 * m.n;
    Perm sig(n), alp(n);
    for (int x = 1; x <= m.n; ++x) {
        sig.set(2 * x, 2 * m.phi(x) - 1);
        sig.set(2 * x - 1, 2 * m.sigma_inv(x));
        alp.set(2 * x - 1, 2 * x);
        alp.set(2 * x, 2 * x - 1);
    }
    // Root corner: the one met just after the edge for the root corner of m
    // along the clockwise contour of the face for the root vertex of m. That
    // face carries the even darts 2x for x around the root vertex, its
    // contour runs 2x -> 2·sigma⁻¹(x), and the corner after traversing 2·root
    // is represented by its second dart 2·sigma⁻¹(root).
    int root = 2 * m.sigma_inv(m.root);
    RadialResult out{build_map(n, sig, alp, root), {}, {}, {}};

    out.vertex_face.assign(m.n_vertices, -1);
    out.face_face.assign(m.n_faces, -1);
    out.edge_vertex.assign(m.n_edges, -1);
    for (int x = 1; x <= m.n; ++x) {
        out.vertex_face[m.vertex_of[x]] = out.r.face_of[2 * x];
        out.face_face[m.face_of[x]] = out.r.face_of[2 * x - 1];
        out.edge_vertex[m.edge_of[x]] = out.r.vertex_of[2 * x];
    }
    return out;
}

// Inverse construction. In a radial image the faces 2-color with the root
// face black, and the black corners (corners lying in black faces) are the
// darts of the original map: the two black corners of a 4-valent vertex are
// opposite, giving alpha = sigma², and the contour of a black face visits the
// corners of the original vertex clockwise, giving sigma = phi⁻¹.
inline RootedMap radial_inverse(const RootedMap& r) {
    for (const auto& v : r.vertices())
        if (v.size() != 4) fail(ErrorCode::NotFourValent, "radial image must be 4-valent");
    auto fc = try_face_coloring(r);
    if (!fc) fail(ErrorCode::NotBicolorable, "radial image must be bicolorable");

    // Collect black corners and index them 1..n in increasing dart order.
    std::vector<int> index(r.n + 1, 0), dart;
    dart.push_back(0);
    for (int c = 1; c <= r.n; ++c) {
        if (fc->color[r.face_of[c]] == 0) {
            index[c] = static_cast<int>(dart.size());
            dart.push_back(c);
        }
    }
    int n = static_cast<int>(dart.size()) - 1;
    if (n != r.n / 2) fail(ErrorCode::NotBicolorable, "black corners must be half of the darts");

    Perm sig(n), alp(n);
    for (int i = 1; i <= n; ++i) {
        int c = dart[i];
        int s = r.alpha(r.sigma_inv(c));  // phi⁻¹(c)
        int a = r.sigma(r.sigma(c));
        if (!index[s] || !index[a]) fail(ErrorCode::NotBicolorable, "black corners do not close up");
        sig.set(i, index[s]);
        alp.set(i, index[a]);
    }
    int root_corner = r.alpha(r.sigma_inv(r.root));  // phi⁻¹(root of r)
    if (!index[root_corner]) fail(ErrorCode::NotBicolorable, "root corner of the image is not black");
    return build_map(n, sig, alp, index[root_corner]);
}

}  // namespace mapforge
