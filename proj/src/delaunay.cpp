#include "ptzinspect/delaunay.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "ptzinspect/error.hpp"

namespace ptzinspect {

namespace {

using predicates::incircle;
using predicates::orient2d;

constexpr int kGhost = -1;

// Vertex slot v[2] holds kGhost for ghost triangles. n[i] is the neighbour
// across the edge (v[i+1], v[i+2]).
struct Tri {
    std::array<int, 3> v{};
    std::array<int, 3> n{-1, -1, -1};
    bool alive{true};

    bool ghost() const noexcept { return v[2] == kGhost; }
};

inline int next(int i) noexcept { return i == 2 ? 0 : i + 1; }
inline int prev(int i) noexcept { return i == 0 ? 2 : i - 1; }

class Builder {
public:
    explicit Builder(const std::vector<Point2>& pts) : pts_(pts) {
        const std::size_t n = pts_.size();
        tested_.reserve(4 * n);
        in_cavity_.reserve(4 * n);
        into_p_.assign(n + 1, {-1, -1});
        out_of_p_.assign(n + 1, {-1, -1});
    }

    std::vector<std::array<std::size_t, 3>> run() {
        const int n = static_cast<int>(pts_.size());
        int k = 2;
        while (k < n && orient2d(pts_[0], pts_[1], pts_[k]) == 0.0) {
            ++k;
        }
        if (k == n) {
            throw Error(ErrorCategory::invalid_argument, "triangulation: all sites are collinear");
        }
        seed(k);
        for (int i = k + 1; i < n; ++i) {
            insert(i);
        }

        std::vector<std::array<std::size_t, 3>> out;
        for (const Tri& t : tris_) {
            if (t.alive && !t.ghost()) {
                out.push_back({static_cast<std::size_t>(t.v[0]), static_cast<std::size_t>(t.v[1]),
                               static_cast<std::size_t>(t.v[2])});
            }
        }
        return out;
    }

private:
    // Fan from apex k over the collinear prefix 0..k-1, plus hull ghosts.
    void seed(int k) {
        const bool left = orient2d(pts_[0], pts_[1], pts_[k]) > 0.0;
        for (int i = 0; i + 1 < k; ++i) {
            Tri t;
            t.v = left ? std::array<int, 3>{i, i + 1, k} : std::array<int, 3>{i + 1, i, k};
            tris_.push_back(t);
        }
        // Every real edge without a twin is a hull edge and gets a ghost.
        std::unordered_map<long long, std::pair<int, int>> edges;
        auto key = [](int a, int b) { return (static_cast<long long>(a) + 1) * 4294967296LL + (b + 1); };
        const std::size_t real = tris_.size();
        for (std::size_t t = 0; t < real; ++t) {
            for (int i = 0; i < 3; ++i) {
                edges[key(tris_[t].v[next(i)], tris_[t].v[prev(i)])] = {static_cast<int>(t), i};
            }
        }
        for (std::size_t t = 0; t < real; ++t) {
            for (int i = 0; i < 3; ++i) {
                const int a = tris_[t].v[next(i)];
                const int b = tris_[t].v[prev(i)];
                if (!edges.count(key(b, a))) {
                    Tri g;
                    g.v = {b, a, kGhost};
                    tris_.push_back(g);
                }
            }
        }
        edges.clear();
        for (std::size_t t = 0; t < tris_.size(); ++t) {
            for (int i = 0; i < 3; ++i) {
                edges[key(tris_[t].v[next(i)], tris_[t].v[prev(i)])] = {static_cast<int>(t), i};
            }
        }
        for (std::size_t t = 0; t < tris_.size(); ++t) {
            for (int i = 0; i < 3; ++i) {
                const auto it = edges.find(key(tris_[t].v[prev(i)], tris_[t].v[next(i)]));
                tris_[t].n[i] = it->second.first;
            }
            if (tris_[t].ghost() && (tris_[t].v[0] == k || tris_[t].v[1] == k)) {
                hull_hint_ = static_cast<int>(t);
            }
        }
        tested_.assign(tris_.size(), 0);
        in_cavity_.assign(tris_.size(), 0);
    }

    bool ghost_conflict(const Tri& t, const Point2& p) const {
        const Point2& a = pts_[t.v[0]];
        const Point2& b = pts_[t.v[1]];
        const double o = orient2d(a, b, p);
        if (o > 0.0) {
            return true;
        }
        if (o < 0.0) {
            return false;
        }
        // Collinear with the hull edge: conflicts only strictly inside the segment.
        const double dot = (p.x - a.x) * (b.x - a.x) + (p.y - a.y) * (b.y - a.y);
        const double len2 = (b.x - a.x) * (b.x - a.x) + (b.y - a.y) * (b.y - a.y);
        return dot > 0.0 && dot < len2;
    }

    bool conflict(int ti, const Point2& p) const {
        const Tri& t = tris_[ti];
        if (t.ghost()) {
            return ghost_conflict(t, p);
        }
        return incircle(pts_[t.v[0]], pts_[t.v[1]], pts_[t.v[2]], p) > 0.0;
    }

    // Walks the ghost ring outward from the hint until a visible hull edge is found.
    int find_visible_ghost(const Point2& p) const {
        if (ghost_conflict(tris_[hull_hint_], p)) {
            return hull_hint_;
        }
        int fwd = tris_[hull_hint_].n[0];
        int bwd = tris_[hull_hint_].n[1];
        for (std::size_t guard = 0; guard < tris_.size(); ++guard) {
            if (ghost_conflict(tris_[fwd], p)) {
                return fwd;
            }
            if (ghost_conflict(tris_[bwd], p)) {
                return bwd;
            }
            fwd = tris_[fwd].n[0];
            bwd = tris_[bwd].n[1];
        }
        throw Error(ErrorCategory::internal_consistency, "triangulation: no visible hull edge");
    }

    int allocate(const Tri& t) {
        if (!free_.empty()) {
            const int slot = free_.back();
            free_.pop_back();
            tris_[slot] = t;
            return slot;
        }
        tris_.push_back(t);
        tested_.push_back(0);
        in_cavity_.push_back(0);
        return static_cast<int>(tris_.size()) - 1;
    }

    struct BoundaryEdge {
        int from;
        int to;
        int outside;
        int outside_slot;
    };

    void insert(int pi) {
        const Point2& p = pts_[pi];
        ++stamp_;

        cavity_.clear();
        boundary_.clear();
        const int start = find_visible_ghost(p);
        tested_[start] = stamp_;
        in_cavity_[start] = stamp_;
        cavity_.push_back(start);

        for (std::size_t c = 0; c < cavity_.size(); ++c) {
            const int ti = cavity_[c];
            for (int i = 0; i < 3; ++i) {
                const int nb = tris_[ti].n[i];
                if (tested_[nb] != stamp_) {
                    tested_[nb] = stamp_;
                    if (conflict(nb, p)) {
                        in_cavity_[nb] = stamp_;
                        cavity_.push_back(nb);
                        continue;
                    }
                }
                if (in_cavity_[nb] != stamp_) {
                    const Tri& o = tris_[nb];
                    int slot = 0;
                    while (o.n[slot] != ti) {
                        ++slot;
                    }
                    boundary_.push_back({tris_[ti].v[next(i)], tris_[ti].v[prev(i)], nb, slot});
                }
            }
        }

        for (int ti : cavity_) {
            tris_[ti].alive = false;
            free_.push_back(ti);
        }

        touched_.clear();
        int new_ghost = -1;
        for (const BoundaryEdge& e : boundary_) {
            Tri t;
            int p_slot;
            if (e.from == kGhost) {
                t.v = {e.to, pi, kGhost};
                p_slot = 1;
            } else if (e.to == kGhost) {
                t.v = {pi, e.from, kGhost};
                p_slot = 0;
            } else {
                t.v = {e.from, e.to, pi};
                p_slot = 2;
            }
            t.n[p_slot] = e.outside;
            const int ti = allocate(t);
            tris_[e.outside].n[e.outside_slot] = ti;
            if (tris_[ti].ghost()) {
                new_ghost = ti;
            }

            // The two edges through p pair up with neighbouring new triangles.
            for (int i = 0; i < 3; ++i) {
                if (i == p_slot) {
                    continue;
                }
                const int a = tris_[ti].v[next(i)];
                const int b = tris_[ti].v[prev(i)];
                if (a == pi) {
                    out_of_p_[static_cast<std::size_t>(b + 1)] = {ti, i};
                } else {
                    into_p_[static_cast<std::size_t>(a + 1)] = {ti, i};
                    touched_.push_back(a + 1);
                }
            }
        }
        for (int slot : touched_) {
            const auto [ta, ia] = into_p_[static_cast<std::size_t>(slot)];
            const auto [tb, ib] = out_of_p_[static_cast<std::size_t>(slot)];
            tris_[ta].n[ia] = tb;
            tris_[tb].n[ib] = ta;
        }
        hull_hint_ = new_ghost;
    }

    const std::vector<Point2>& pts_;
    std::vector<Tri> tris_;
    std::vector<int> free_;
    std::vector<int> tested_;
    std::vector<int> in_cavity_;
    std::vector<int> cavity_;
    std::vector<BoundaryEdge> boundary_;
    std::vector<int> touched_;
    std::vector<std::pair<int, int>> into_p_;
    std::vector<std::pair<int, int>> out_of_p_;
    int stamp_{0};
    int hull_hint_{-1};
};

}  // namespace

DelaunayTriangulation::DelaunayTriangulation(std::span<const Point2> sites) {
    for (const Point2& s : sites) {
        if (!std::isfinite(s.x) || !std::isfinite(s.y)) {
            throw Error(ErrorCategory::invalid_argument, "triangulation: non-finite site");
        }
    }
    std::vector<std::size_t> order(sites.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (sites[a].x != sites[b].x) {
            return sites[a].x < sites[b].x;
        }
        return sites[a].y < sites[b].y;
    });
    for (std::size_t idx : order) {
        if (!vertices_.empty() && vertices_.back().x == sites[idx].x && vertices_.back().y == sites[idx].y) {
            continue;
        }
        vertices_.push_back(sites[idx]);
        source_index_.push_back(idx);
    }
    if (vertices_.size() < 3) {
        throw Error(ErrorCategory::invalid_argument, "triangulation: fewer than three distinct sites");
    }
    triangles_ = Builder(vertices_).run();
}

LinearInterpolator::LinearInterpolator(std::span<const Point2> sites, std::span<const double> values)
    : tri_(sites) {
    if (sites.size() != values.size()) {
        throw Error(ErrorCategory::invalid_argument, "interpolator: sites and values differ in length");
    }
    vertex_values_.reserve(tri_.vertices().size());
    for (std::size_t src : tri_.source_index()) {
        vertex_values_.push_back(values[src]);
    }

    const auto& vs = tri_.vertices();
    min_u_ = max_u_ = vs.front().x;
    min_v_ = max_v_ = vs.front().y;
    for (const Point2& p : vs) {
        min_u_ = std::min(min_u_, p.x);
        max_u_ = std::max(max_u_, p.x);
        min_v_ = std::min(min_v_, p.y);
        max_v_ = std::max(max_v_, p.y);
    }

    // Roughly one triangle per bucket.
    const auto& tris = tri_.triangles();
    const double width = std::max(max_u_ - min_u_, 1e-12);
    const double height = std::max(max_v_ - min_v_, 1e-12);
    const double target = std::max<double>(1.0, static_cast<double>(tris.size()));
    const double cell = std::sqrt(width * height / target);
    buckets_u_ = std::clamp<std::size_t>(static_cast<std::size_t>(width / cell) + 1, 1, 4096);
    buckets_v_ = std::clamp<std::size_t>(static_cast<std::size_t>(height / cell) + 1, 1, 4096);
    bucket_du_ = width / static_cast<double>(buckets_u_);
    bucket_dv_ = height / static_cast<double>(buckets_v_);

    std::vector<std::size_t> counts(buckets_u_ * buckets_v_ + 1, 0);
    auto for_each_bucket = [&](const std::array<std::size_t, 3>& t, auto&& fn) {
        double lo_u = vs[t[0]].x, hi_u = lo_u, lo_v = vs[t[0]].y, hi_v = lo_v;
        for (std::size_t k = 1; k < 3; ++k) {
            lo_u = std::min(lo_u, vs[t[k]].x);
            hi_u = std::max(hi_u, vs[t[k]].x);
            lo_v = std::min(lo_v, vs[t[k]].y);
            hi_v = std::max(hi_v, vs[t[k]].y);
        }
        const std::size_t bu0 = bucket_of(lo_u, lo_v) % buckets_u_;
        const std::size_t bv0 = bucket_of(lo_u, lo_v) / buckets_u_;
        const std::size_t bu1 = bucket_of(hi_u, hi_v) % buckets_u_;
        const std::size_t bv1 = bucket_of(hi_u, hi_v) / buckets_u_;
        for (std::size_t bv = bv0; bv <= bv1; ++bv) {
            for (std::size_t bu = bu0; bu <= bu1; ++bu) {
                fn(bv * buckets_u_ + bu);
            }
        }
    };
    for (const auto& t : tris) {
        for_each_bucket(t, [&](std::size_t b) { ++counts[b + 1]; });
    }
    std::partial_sum(counts.begin(), counts.end(), counts.begin());
    bucket_start_ = counts;
    bucket_items_.assign(counts.back(), 0);
    std::vector<std::size_t> fill(counts.begin(), counts.end() - 1);
    for (std::size_t ti = 0; ti < tris.size(); ++ti) {
        for_each_bucket(tris[ti], [&](std::size_t b) { bucket_items_[fill[b]++] = ti; });
    }
}

std::size_t LinearInterpolator::bucket_of(double u, double v) const noexcept {
    auto index = [](double value, double lo, double step, std::size_t count) {
        const double f = std::floor((value - lo) / step);
        if (!(f > 0.0)) {
            return std::size_t{0};
        }
        return std::min(static_cast<std::size_t>(f), count - 1);
    };
    return index(v, min_v_, bucket_dv_, buckets_v_) * buckets_u_ + index(u, min_u_, bucket_du_, buckets_u_);
}

std::optional<double> LinearInterpolator::operator()(double u, double v) const {
    // Slack for lattice points that sit on the hull up to rounding.
    constexpr double kTolerance = 1e-9;
    const double span = std::max(max_u_ - min_u_, max_v_ - min_v_);
    if (!std::isfinite(u) || !std::isfinite(v) || u < min_u_ - kTolerance * span ||
        u > max_u_ + kTolerance * span || v < min_v_ - kTolerance * span || v > max_v_ + kTolerance * span) {
        return std::nullopt;
    }

    const auto& vs = tri_.vertices();
    const auto& tris = tri_.triangles();
    const std::size_t b = bucket_of(u, v);

    double best_min = -std::numeric_limits<double>::infinity();
    std::array<double, 3> best_weights{};
    std::size_t best = tris.size();
    for (std::size_t k = bucket_start_[b]; k < bucket_start_[b + 1]; ++k) {
        const std::size_t ti = bucket_items_[k];
        const auto& t = tris[ti];
        const Point2& a = vs[t[0]];
        const Point2& bb = vs[t[1]];
        const Point2& c = vs[t[2]];
        const double area = (bb.x - a.x) * (c.y - a.y) - (bb.y - a.y) * (c.x - a.x);
        const double w0 = ((bb.x - u) * (c.y - v) - (bb.y - v) * (c.x - u)) / area;
        const double w1 = ((c.x - u) * (a.y - v) - (c.y - v) * (a.x - u)) / area;
        const double w2 = 1.0 - w0 - w1;
        const double lo = std::min({w0, w1, w2});
        if (lo > best_min) {
            best_min = lo;
            best = ti;
            best_weights = {w0, w1, w2};
        }
    }
    if (best == tris.size() || best_min < -kTolerance) {
        return std::nullopt;
    }

    // Clamp rounding-level negatives so the result never leaves the sample range.
    double sum = 0.0;
    for (double& w : best_weights) {
        w = std::max(w, 0.0);
        sum += w;
    }
    const auto& t = tris[best];
    return (best_weights[0] * vertex_values_[t[0]] + best_weights[1] * vertex_values_[t[1]] +
            best_weights[2] * vertex_values_[t[2]]) /
           sum;
}

}  // namespace ptzinspect
