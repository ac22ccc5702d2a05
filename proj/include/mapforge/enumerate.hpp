#pragma once

#include <functional>
#include <map>
#include <sstream>
#include <vector>

#include "mapforge/map.hpp"
#include "mapforge/numbers.hpp"

namespace mapforge {

// Exact census table: counts indexed by integer tuples (edges, or pairs such
// as vertices×faces), with the axis names recorded.
struct CountTable {
    int genus = 0;
    std::vector<std::string> axis;
    std::map<std::vector<int>, Int> counts;

    void add(std::vector<int> key, const Int& v = 1) { counts[std::move(key)] += v; }

    Int total() const {
        Int t = 0;
        for (const auto& [k, v] : counts) t += v;
        return t;
    }

    bool operator==(const CountTable& o) const { return counts == o.counts; }

    // Deterministic JSON: {"genus":g,"axis":["V","F"],"counts":[[v,f,c],...]}
    // with keys in lexicographic order (guaranteed by the ordered map).
    std::string to_json() const {
        std::ostringstream os;
        os << "{\"genus\":" << genus << ",\"axis\":[";
        for (size_t i = 0; i < axis.size(); ++i) os << (i ? "," : "") << '"' << axis[i] << '"';
        os << "],\"counts\":[";
        bool first = true;
        for (const auto& [k, v] : counts) {
            os << (first ? "" : ",") << '[';
            for (int x : k) os << x << ',';
            os << v << ']';
            first = false;
        }
        os << "]}";
        return os.str();
    }
};

struct EnumOptions {
    int genus = -1;        // -1 = all genera
    int exact_degree = 0;  // 0 = unconstrained, else every vertex degree must equal it
    long long max_nodes = 500'000'000;
};

namespace detail {

// Exactly-once generation of rooted maps with a fixed edge count.
//
// Darts are assigned in breadth-first discovery order from the root with the
// alphabet (sigma, sigma⁻¹, alpha), so the finished map equals its own
// canonical form; distinct leaves of the search are distinct rooted maps and
// every rooted map appears. Fresh labels may only enter as the next unused
// integer, which is what rules out relabeled duplicates.
class CanonicalEnumerator {
  public:
    CanonicalEnumerator(int n_edges, const EnumOptions& opt,
                        const std::function<void(const RootedMap&)>& emit)
        : n_(2 * n_edges), opt_(opt), emit_(emit) {}

    void run() {
        if (n_ <= 0) return;
        sig_.assign(n_ + 1, 0);
        sinv_.assign(n_ + 1, 0);
        alp_.assign(n_ + 1, 0);
        order_ = {1};
        nodes_ = 0;
        open_slots_ = 3;
        descend(0, 0);
    }

  private:
    int n_;
    EnumOptions opt_;
    const std::function<void(const RootedMap&)>& emit_;
    std::vector<int> sig_, sinv_, alp_, order_;
    long long nodes_ = 0;
    int open_slots_ = 0;

    void discover(int d) {
        order_.push_back(d);
        open_slots_ += 3;
    }

    void undiscover() {
        order_.pop_back();
        open_slots_ -= 3;
    }

    // Length of the partial sigma chain/cycle reached when d -> x is added;
    // returns (closes_cycle, length).
    std::pair<bool, int> chain_after(int d, int x) const {
        int len = 2;
        int fwd = x;
        while (sig_[fwd] != 0) {
            fwd = sig_[fwd];
            if (fwd == d) return {true, len};
            ++len;
        }
        int bwd = d;
        while (sinv_[bwd] != 0) {
            bwd = sinv_[bwd];
            ++len;
        }
        return {false, len};
    }

    bool degree_ok(int d, int x) const {
        if (!opt_.exact_degree) return true;
        if (d == x) return opt_.exact_degree == 1;
        auto [closed, len] = chain_after(d, x);
        return closed ? len == opt_.exact_degree : len <= opt_.exact_degree;
    }

    void finish() {
        if (static_cast<int>(order_.size()) != n_) return;
        Perm sigma(n_), alpha(n_);
        for (int d = 1; d <= n_; ++d) {
            sigma.set(d, sig_[d]);
            alpha.set(d, alp_[d]);
        }
        RootedMap m = build_map(n_, sigma, alpha, 1);
        if (opt_.genus >= 0 && m.genus != opt_.genus) return;
        emit_(m);
    }

    void descend(size_t pos, int slot) {
        if (++nodes_ > opt_.max_nodes) fail(ErrorCode::ResourceLimit, "enumeration node budget exhausted");
        if (pos == order_.size()) {
            finish();
            return;
        }
        // A fresh dart can only enter through an open slot of a discovered dart
        // (and brings three slots of its own), so the search is dead only when
        // no slot remains open at all.
        if (open_slots_ == 0 && static_cast<int>(order_.size()) < n_) return;
        int d = order_[pos];
        int fresh = static_cast<int>(order_.size()) + 1;
        bool can_fresh = fresh <= n_;

        if (slot == 0) {
            if (sig_[d] != 0) {
                descend(pos, 1);
                return;
            }
            for (int x = 1; x < fresh; ++x) {
                if (sinv_[x] != 0 || !degree_ok(d, x)) continue;
                sig_[d] = x;
                sinv_[x] = d;
                open_slots_ -= 2;
                descend(pos, 1);
                open_slots_ += 2;
                sig_[d] = 0;
                sinv_[x] = 0;
            }
            if (can_fresh && degree_ok(d, fresh)) {
                discover(fresh);
                sig_[d] = fresh;
                sinv_[fresh] = d;
                open_slots_ -= 2;
                descend(pos, 1);
                open_slots_ += 2;
                sig_[d] = 0;
                sinv_[fresh] = 0;
                undiscover();
            }
        } else if (slot == 1) {
            if (sinv_[d] != 0) {
                descend(pos, 2);
                return;
            }
            for (int x = 1; x < fresh; ++x) {
                if (sig_[x] != 0 || !degree_ok(x, d)) continue;
                sinv_[d] = x;
                sig_[x] = d;
                open_slots_ -= 2;
                descend(pos, 2);
                open_slots_ += 2;
                sinv_[d] = 0;
                sig_[x] = 0;
            }
            if (can_fresh && degree_ok(fresh, d)) {
                discover(fresh);
                sinv_[d] = fresh;
                sig_[fresh] = d;
                open_slots_ -= 2;
                descend(pos, 2);
                open_slots_ += 2;
                sinv_[d] = 0;
                sig_[fresh] = 0;
                undiscover();
            }
        } else {
            if (alp_[d] != 0) {
                descend(pos + 1, 0);
                return;
            }
            for (int x = 1; x < fresh; ++x) {
                if (alp_[x] != 0 || x == d) continue;
                alp_[d] = x;
                alp_[x] = d;
                open_slots_ -= 2;
                descend(pos + 1, 0);
                open_slots_ += 2;
                alp_[d] = 0;
                alp_[x] = 0;
            }
            if (can_fresh) {
                discover(fresh);
                alp_[d] = fresh;
                alp_[fresh] = d;
                open_slots_ -= 2;
                descend(pos + 1, 0);
                open_slots_ += 2;
                alp_[d] = 0;
                alp_[fresh] = 0;
                undiscover();
            }
        }
    }
};

}  // namespace detail

// Streams every rooted map with n_edges edges (genus filtered per options),
// each exactly once, in a deterministic order. n_edges < 1 yields nothing:
// the edgeless vertex map has no dart representation here.
inline void enumerate_rooted_maps(int n_edges, const EnumOptions& opt,
                                  const std::function<void(const RootedMap&)>& emit) {
    detail::CanonicalEnumerator(n_edges, opt, emit).run();
}

inline Int count_rooted_maps(int genus, int n_edges, long long max_nodes = 500'000'000) {
    Int c = 0;
    EnumOptions opt;
    opt.genus = genus;
    opt.max_nodes = max_nodes;
    enumerate_rooted_maps(n_edges, opt, [&](const RootedMap&) { ++c; });
    return c;
}

// Independent counting strategy: fix alpha = (1 2)(3 4)...(2n-1 2n) and scan
// every sigma. Each rooted map corresponds to exactly 2^(n-1)·(n-1)! transitive
// pairs (conjugations preserving alpha and the root dart), because rooted maps
// are rigid. Only practical for very small n; used to cross-check the
// backtracking strategy.
inline Int sigma_scan_count(int genus, int n_edges) {
    int n = 2 * n_edges;
    if (n_edges < 1) return 0;
    if (n_edges > 4) fail(ErrorCode::ResourceLimit, "sigma scan limited to 4 edges");
    Perm alpha(n);
    for (int d = 1; d <= n; d += 2) {
        alpha.set(d, d + 1);
        alpha.set(d + 1, d);
    }
    std::vector<int> img(n);
    for (int i = 0; i < n; ++i) img[i] = i + 1;
    Int matching = 0;
    do {
        Perm sigma = Perm::from_images(img);
        // Transitivity of <sigma, alpha> on darts.
        std::vector<char> seen(n + 1, 0);
        std::vector<int> stack = {1};
        seen[1] = 1;
        int reached = 1;
        while (!stack.empty()) {
            int d = stack.back();
            stack.pop_back();
            for (int e : {sigma(d), alpha(d)}) {
                if (!seen[e]) {
                    seen[e] = 1;
                    ++reached;
                    stack.push_back(e);
                }
            }
        }
        if (reached != n) continue;
        int faces = sigma.compose(alpha).cycle_count();
        int vertices = sigma.cycle_count();
        int g = (2 - (vertices - n_edges + faces)) / 2;
        if (g == genus || genus < 0) ++matching;
    } while (std::next_permutation(img.begin(), img.end()));
    Int orbit = 1;
    for (int i = 1; i < n_edges; ++i) orbit *= 2 * i;  // 2^(n-1)·(n-1)!
    if (matching % orbit != 0)
        fail(ErrorCode::CounterexampleFound, "sigma scan count not divisible by orbit size");
    return matching / orbit;
}

// Census of rooted maps of the given genus by (vertices, faces), edges from 1
// to max_edges.
inline CountTable count_bivariate(int genus, int max_edges, long long max_nodes = 500'000'000) {
    CountTable t;
    t.genus = genus;
    t.axis = {"V", "F"};
    EnumOptions opt;
    opt.genus = genus;
    opt.max_nodes = max_nodes;
    for (int e = 1; e <= max_edges; ++e)
        enumerate_rooted_maps(e, opt, [&](const RootedMap& m) { t.add({m.n_vertices, m.n_faces}); });
    return t;
}

// Census of rooted 4-valent bicolorable maps of the given genus with
// n_vertices vertices, by (black faces, white faces).
inline CountTable count_4valent_bicolorable(int genus, int n_vertices,
                                            long long max_nodes = 500'000'000) {
    CountTable t;
    t.genus = genus;
    t.axis = {"Fb", "Fw"};
    EnumOptions opt;
    opt.genus = genus;
    opt.exact_degree = 4;
    opt.max_nodes = max_nodes;
    enumerate_rooted_maps(2 * n_vertices, opt, [&](const RootedMap& m) {
        if (auto fc = try_face_coloring(m)) t.add({fc->blacks, fc->whites});
    });
    return t;
}

// Exhaustive check of the orientation characterization: among all 2^E
// orientations of a bicolorable map, exactly one is bicolorable with no
// clockwise face, and it is the dual-geodesic orientation.
inline bool verify_propp(const RootedMap& m, long long max_edges = 16) {
    if (!is_bicolorable(m)) fail(ErrorCode::NotBicolorable, "verify_propp needs a bicolorable map");
    if (m.n_edges > max_edges) fail(ErrorCode::ResourceLimit, "verify_propp edge bound exceeded");
    Orientation dgo = dual_geodesic_orientation(m);
    int found = 0;
    bool found_dgo = false;
    for (long long mask = 0; mask < (1LL << m.n_edges); ++mask) {
        Orientation o;
        o.head.resize(m.n_edges);
        for (int e = 0; e < m.n_edges; ++e)
            o.head[e] = (mask >> e) & 1 ? m.edge_dart[e] : m.alpha(m.edge_dart[e]);
        if (is_bicolorable_orientation(m, o) && !has_clockwise_face(m, o)) {
            ++found;
            if (o == dgo) found_dgo = true;
        }
    }
    return found == 1 && found_dgo;
}

}  // namespace mapforge
