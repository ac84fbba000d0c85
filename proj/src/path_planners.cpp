#include "namo/path_planners.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace namo {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxEndpointTries = 1000;

double se2_distance(const Pose2& a, const Pose2& b, double angle_weight) {
    return std::hypot(b.x - a.x, b.y - a.y) + angle_weight * std::abs(wrap_pi(b.theta - a.theta));
}

Pose2 se2_interpolate(const Pose2& a, const Pose2& b, double t) {
    const double dth = wrap_pi(b.theta - a.theta);
    return Pose2{a.x + t * (b.x - a.x), a.y + t * (b.y - a.y), a.theta + t * dth};
}

/// Collision oracle for one rigid body against a fixed scene.
class BodyValidator {
public:
    BodyValidator(const WorldState& state, const ConvexPolygon& body)
        : room_(state.room), body_(body) {
        for (const MovableObject& obj : state.objects) {
            obstacles_.push_back(obj.placed());
            boxes_.push_back(obstacles_.back().aabb());
        }
        trans_step_ = body.shortest_side() / 2.0;
        ang_step_ = body.shortest_side() / (2.0 * body.circumradius());
    }

    bool pose_valid(const Pose2& pose) const {
        const ConvexPolygon placed = transform(body_, pose);
        if (!contains_in_room(placed, room_)) return false;
        const Aabb box = placed.aabb();
        for (std::size_t i = 0; i < obstacles_.size(); ++i) {
            if (box.overlaps(boxes_[i]) && intersects(placed, obstacles_[i])) return false;
        }
        return true;
    }

    /// Valid motion check at swept-footprint granularity; endpoints
    /// are checked too.
    bool motion_valid(const Pose2& a, const Pose2& b) const {
        const double d = std::hypot(b.x - a.x, b.y - a.y);
        const double dth = std::abs(wrap_pi(b.theta - a.theta));
        const int interior =
            static_cast<int>(std::ceil(std::max(d / trans_step_, dth / ang_step_) - 1e-9));
        for (int k = 1; k <= interior; ++k) {
            if (!pose_valid(se2_interpolate(a, b, static_cast<double>(k) / (interior + 1)))) {
                return false;
            }
        }
        return pose_valid(b);
    }

private:
    Room room_;
    ConvexPolygon body_;
    std::vector<ConvexPolygon> obstacles_;
    std::vector<Aabb> boxes_;
    double trans_step_ = 0.0;
    double ang_step_ = 0.0;
};

/// One RRT with a uniform (x, y) bucket grid for nearest-neighbor pruning.
class Tree {
public:
    Tree(const Room& room, double cell, double angle_weight)
        : room_(room), cell_(cell), angle_weight_(angle_weight) {
        nx_ = std::max(1, static_cast<int>(std::ceil(room.width() / cell_)));
        ny_ = std::max(1, static_cast<int>(std::ceil(room.height() / cell_)));
        buckets_.assign(static_cast<std::size_t>(nx_) * ny_, {});
    }

    int add(const Pose2& q, int parent) {
        nodes_.push_back(q);
        parents_.push_back(parent);
        const int id = static_cast<int>(nodes_.size()) - 1;
        buckets_[bucket_of(q)].push_back(id);
        return id;
    }

    const Pose2& pose(int id) const { return nodes_[static_cast<std::size_t>(id)]; }
    int parent(int id) const { return parents_[static_cast<std::size_t>(id)]; }
    int size() const { return static_cast<int>(nodes_.size()); }

    /// Exact nearest node: expanding bucket rings, pruned once the ring's
    /// planar lower bound exceeds the best distance found (the angle term
    /// only adds).
    int nearest(const Pose2& q) const {
        const int bi = clamp_i(static_cast<int>((q.x - room_.x_min) / cell_), nx_);
        const int bj = clamp_i(static_cast<int>((q.y - room_.y_min) / cell_), ny_);
        int best = -1;
        double best_d = std::numeric_limits<double>::infinity();
        const int max_ring = std::max(nx_, ny_);
        for (int ring = 0; ring <= max_ring; ++ring) {
            if (best >= 0 && (ring - 1) * cell_ > best_d) break;
            const int i0 = bi - ring, i1 = bi + ring;
            const int j0 = bj - ring, j1 = bj + ring;
            for (int j = j0; j <= j1; ++j) {
                if (j < 0 || j >= ny_) continue;
                for (int i = i0; i <= i1; ++i) {
                    if (i < 0 || i >= nx_) continue;
                    if (ring > 0 && i != i0 && i != i1 && j != j0 && j != j1) continue;
                    for (int id : buckets_[static_cast<std::size_t>(j) * nx_ + i]) {
                        const double d = se2_distance(nodes_[static_cast<std::size_t>(id)], q,
                                                      angle_weight_);
                        if (d < best_d) {
                            best_d = d;
                            best = id;
                        }
                    }
                }
            }
        }
        return best;
    }

private:
    static int clamp_i(int v, int n) { return std::clamp(v, 0, n - 1); }
    std::size_t bucket_of(const Pose2& q) const {
        const int i = clamp_i(static_cast<int>((q.x - room_.x_min) / cell_), nx_);
        const int j = clamp_i(static_cast<int>((q.y - room_.y_min) / cell_), ny_);
        return static_cast<std::size_t>(j) * nx_ + i;
    }

    Room room_;
    double cell_;
    double angle_weight_;
    int nx_ = 0, ny_ = 0;
    std::vector<Pose2> nodes_;
    std::vector<int> parents_;
    std::vector<std::vector<int>> buckets_;
};

enum class ExtendStatus { kTrapped, kAdvanced, kReached };

ExtendStatus extend(Tree& tree, const Pose2& q_target, const BodyValidator& validator,
                    double step_size, double angle_weight, int& new_id) {
    const int near = tree.nearest(q_target);
    const Pose2 q_near = tree.pose(near);
    const double d = se2_distance(q_near, q_target, angle_weight);
    if (d < 1e-12) return ExtendStatus::kTrapped;
    const bool reaches = d <= step_size;
    const Pose2 q_new = reaches ? q_target : se2_interpolate(q_near, q_target, step_size / d);
    if (!validator.motion_valid(q_near, q_new)) return ExtendStatus::kTrapped;
    new_id = tree.add(q_new, near);
    return reaches ? ExtendStatus::kReached : ExtendStatus::kAdvanced;
}

std::vector<Pose2> chain_to_root(const Tree& tree, int id) {
    std::vector<Pose2> out;
    for (int cur = id; cur >= 0; cur = tree.parent(cur)) out.push_back(tree.pose(cur));
    return out;
}

void shortcut_smooth(std::vector<Pose2>& path, const BodyValidator& validator, Rng& rng) {
    for (int attempt = 0; attempt < 100; ++attempt) {
        if (path.size() < 3) return;
        const int n = static_cast<int>(path.size());
        int i = rng.uniform_int(0, n - 3);
        int j = rng.uniform_int(i + 2, n - 1);
        if (validator.motion_valid(path[static_cast<std::size_t>(i)],
                                   path[static_cast<std::size_t>(j)])) {
            path.erase(path.begin() + i + 1, path.begin() + j);
        }
    }
}

}  // namespace

std::pair<Pose2, Pose2> sample_endpoints(const Room& room, const ConvexPolygon& shape,
                                         Rng& rng, EndpointMode mode, double path_width) {
    if (mode == EndpointMode::kStraightPath) {
        for (int attempt = 0; attempt < kMaxEndpointTries; ++attempt) {
            const Vec2 s{rng.uniform(room.x_min, room.x_min + 2.0),
                         rng.uniform(room.y_min, room.y_max)};
            const Vec2 g{rng.uniform(room.x_max - 2.0, room.x_max),
                         rng.uniform(room.y_min, room.y_max)};
            const double theta = std::atan2(g.y - s.y, g.x - s.x);
            const ConvexPolygon rect = straight_rect(s, g, path_width);
            if (!contains_in_room(rect, room)) continue;
            return {Pose2{s.x, s.y, theta}, Pose2{g.x, g.y, theta}};
        }
        throw Error(ErrorCode::kSamplingExhausted, "no valid straight path in 1000 samples");
    }

    // Each endpoint resamples independently; a joint draw of two positions
    // and two orientations rarely lands for elongated bodies.
    auto sample_pose = [&](double x_lo, double x_hi) {
        for (int attempt = 0; attempt < kMaxEndpointTries; ++attempt) {
            const Pose2 pose{rng.uniform(x_lo, x_hi), rng.uniform(room.y_min, room.y_max),
                             rng.uniform(-kPi, kPi)};
            if (contains_in_room(transform(shape, pose), room)) return pose;
        }
        throw Error(ErrorCode::kSamplingExhausted, "no valid endpoint in 1000 samples");
    };
    const Pose2 start = sample_pose(room.x_min, room.x_min + 2.0);
    const Pose2 goal = sample_pose(room.x_max - 2.0, room.x_max);
    return {start, goal};
}

ConvexPolygon straight_rect(Vec2 a, Vec2 b, double width) {
    const Vec2 d = b - a;
    const double len = d.norm();
    if (len <= kGeomTol) {
        throw Error(ErrorCode::kInvalidGeometry, "degenerate straight path");
    }
    const Vec2 u = d * (1.0 / len);
    const Vec2 n{-u.y * width / 2.0, u.x * width / 2.0};
    return ConvexPolygon({a - n, b - n, b + n, a + n});
}

PathFootprint straight_footprint(Vec2 start, Vec2 goal, double width) {
    const double theta = std::atan2(goal.y - start.y, goal.x - start.x);
    PathFootprint fp;
    fp.kind = FootprintKind::kStraightLine;
    fp.polygons.push_back(straight_rect(start, goal, width));
    fp.start = Pose2{start.x, start.y, theta};
    fp.goal = Pose2{goal.x, goal.y, theta};
    return fp;
}

double footprint_overlap(const WorldState& state, const PathFootprint& footprint,
                         double grid_resolution) {
    std::vector<ConvexPolygon> placed;
    placed.reserve(state.objects.size());
    for (const MovableObject& obj : state.objects) placed.push_back(obj.placed());
    const OccupancyGrid grid = rasterize(placed, state.room, grid_resolution);

    double total = 0.0;
    for (const ConvexPolygon& poly : footprint.polygons) {
        // Swept-body footprints may reach past the walls (the full-size
        // body swept along a reduced body's route); only the in-room part
        // can overlap obstacles, so the kernel region is clipped first.
        const Aabb box = poly.aabb();
        const double clip_x0 = std::max(box.lo.x, state.room.x_min);
        const double clip_y0 = std::max(box.lo.y, state.room.y_min);
        const double clip_x1 = std::min(box.hi.x, state.room.x_max);
        const double clip_y1 = std::min(box.hi.y, state.room.y_max);
        if (clip_x0 >= clip_x1 || clip_y0 >= clip_y1) continue;

        // Kernel rasterized about the clip center so the placement is a
        // pure translation; thin kernels are padded to satisfy the
        // rasterizer's resolution bound (pad cells stay empty).
        const Vec2 c{(clip_x0 + clip_x1) / 2.0, (clip_y0 + clip_y1) / 2.0};
        const ConvexPolygon local = poly.translated(Vec2{-c.x, -c.y});
        const double half_w = (clip_x1 - clip_x0) / 2.0;
        const double half_h = (clip_y1 - clip_y0) / 2.0;
        const double pad_x = std::max(0.0, 2.0 * grid_resolution - half_w);
        const double pad_y = std::max(0.0, 2.0 * grid_resolution - half_h);
        const Room kernel_room{-half_w - pad_x, -half_h - pad_y, half_w + pad_x,
                               half_h + pad_y};
        const ConvexPolygon kernel_polys[] = {local};
        OccupancyGrid kernel = rasterize(kernel_polys, kernel_room, grid_resolution);
        for (int j = 0; j < kernel.height; ++j) {
            for (int i = 0; i < kernel.width; ++i) {
                const double wx = c.x + kernel.origin.x + i * grid_resolution;
                const double wy = c.y + kernel.origin.y + j * grid_resolution;
                if (wx >= state.room.x_max || wy >= state.room.y_max ||
                    wx + grid_resolution <= state.room.x_min ||
                    wy + grid_resolution <= state.room.y_min) {
                    kernel.at(i, j) = 0.0;
                }
            }
        }
        total += overlap_score(grid, kernel, Pose2{c.x, c.y, footprint.start.theta});
    }
    return total;
}

std::vector<ScoredFootprint> sample_straight_path(const WorldState& state,
                                                  const ConvexPolygon& path_shape,
                                                  int n_candidates, Rng& rng,
                                                  double grid_resolution) {
    const Aabb shape_box = path_shape.aabb();
    const double width = std::min(shape_box.hi.x - shape_box.lo.x,
                                  shape_box.hi.y - shape_box.lo.y);

    std::vector<ConvexPolygon> placed;
    placed.reserve(state.objects.size());
    for (const MovableObject& obj : state.objects) placed.push_back(obj.placed());
    const OccupancyGrid grid = rasterize(placed, state.room, grid_resolution);

    std::vector<ScoredFootprint> out;
    out.reserve(static_cast<std::size_t>(n_candidates));
    for (int c = 0; c < n_candidates; ++c) {
        const auto [start, goal] =
            sample_endpoints(state.room, path_shape, rng, EndpointMode::kStraightPath, width);
        PathFootprint fp = straight_footprint(start.translation(), goal.translation(), width);
        const ConvexPolygon& rect = fp.polygons.front();
        const Vec2 center = rect.centroid();
        const ConvexPolygon local = rect.translated(Vec2{-center.x, -center.y});
        const Aabb box = local.aabb();
        const double pad = std::max(
            0.0, (4.0 * grid_resolution - std::min(box.hi.x - box.lo.x, box.hi.y - box.lo.y)) / 2.0);
        const Room kernel_room{box.lo.x - pad, box.lo.y - pad, box.hi.x + pad, box.hi.y + pad};
        const ConvexPolygon kernel_polys[] = {local};
        const OccupancyGrid kernel = rasterize(kernel_polys, kernel_room, grid_resolution);
        const double score =
            overlap_score(grid, kernel, Pose2{center.x, center.y, fp.start.theta});
        out.push_back({std::move(fp), score});
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const ScoredFootprint& a, const ScoredFootprint& b) {
                         return a.overlap < b.overlap;
                     });
    return out;
}

RrtResult rrt_connect(const WorldState& state, const ConvexPolygon& body,
                      const Pose2& start, const Pose2& goal, const RrtParams& params,
                      const Deadline& deadline) {
    const BodyValidator validator(state, body);
    if (!validator.pose_valid(start) || !validator.pose_valid(goal)) {
        return {RrtResult::Status::kInvalidEndpoints, {}};
    }

    Rng rng(params.rng_seed);
    const Room& room = state.room;
    Tree start_tree(room, params.step_size, params.angle_weight);
    Tree goal_tree(room, params.step_size, params.angle_weight);
    start_tree.add(start, -1);
    goal_tree.add(goal, -1);

    Tree* grow = &start_tree;
    Tree* connect_to = &goal_tree;
    bool grow_is_start = true;

    int expansions = 0;
    while (expansions < params.max_nodes) {
        if (deadline.expired()) return {RrtResult::Status::kNoPath, {}};

        const Pose2 q_rand =
            rng.uniform() < params.goal_bias
                ? connect_to->pose(0)
                : Pose2{rng.uniform(room.x_min, room.x_max),
                        rng.uniform(room.y_min, room.y_max), rng.uniform(-kPi, kPi)};

        int new_id = -1;
        ++expansions;
        if (extend(*grow, q_rand, validator, params.step_size, params.angle_weight, new_id) !=
            ExtendStatus::kTrapped) {
            // Connect: extend the other tree repeatedly toward the new node.
            const Pose2 q_connect = grow->pose(new_id);
            int other_id = -1;
            ExtendStatus st = ExtendStatus::kAdvanced;
            while (st == ExtendStatus::kAdvanced && expansions < params.max_nodes) {
                ++expansions;
                st = extend(*connect_to, q_connect, validator, params.step_size,
                            params.angle_weight, other_id);
            }
            if (st == ExtendStatus::kReached) {
                std::vector<Pose2> from_start =
                    chain_to_root(grow_is_start ? *grow : *connect_to,
                                  grow_is_start ? new_id : other_id);
                std::reverse(from_start.begin(), from_start.end());
                std::vector<Pose2> from_goal = chain_to_root(
                    grow_is_start ? *connect_to : *grow, grow_is_start ? other_id : new_id);
                // The junction pose appears in both chains; drop one copy.
                from_start.pop_back();
                from_start.insert(from_start.end(), from_goal.begin(), from_goal.end());
                shortcut_smooth(from_start, validator, rng);
                return {RrtResult::Status::kFound, std::move(from_start)};
            }
        }
        std::swap(grow, connect_to);
        grow_is_start = !grow_is_start;
    }
    return {RrtResult::Status::kNoPath, {}};
}

std::optional<PathFootprint> shrink_and_plan(const WorldState& state,
                                             const ConvexPolygon& body,
                                             const Pose2& start, const Pose2& goal,
                                             const RrtParams& params,
                                             const Deadline& deadline) {
    const double full_area = body.area();
    for (int i = 0;; ++i) {
        const double area_factor = std::pow(0.9, i);
        if (full_area * area_factor < 0.01 * full_area) return std::nullopt;
        if (deadline.expired()) return std::nullopt;

        const ConvexPolygon reduced = body.scaled(std::pow(0.9, 0.5 * i));
        RrtParams iter_params = params;
        iter_params.rng_seed = params.rng_seed + static_cast<std::uint64_t>(i);
        const RrtResult result = rrt_connect(state, reduced, start, goal, iter_params, deadline);
        if (!result.found()) continue;

        PathFootprint fp;
        fp.kind = FootprintKind::kSweptBody;
        fp.polygons = swept_footprint(body, result.waypoints);
        fp.start = start;
        fp.goal = goal;
        fp.shrink_iterations = i;
        return fp;
    }
}

}  // namespace namo
