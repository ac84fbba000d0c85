#include "namo/push_physics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace namo {

namespace {

// Working copy of one placed polygon that supports cheap translation.
struct Body {
    std::vector<Vec2> verts;
    Aabb box;

    void translate(Vec2 d) {
        for (Vec2& v : verts) v = v + d;
        box.lo = box.lo + d;
        box.hi = box.hi + d;
    }
};

Body make_body(const ConvexPolygon& poly) {
    Body b{poly.vertices(), poly.aabb()};
    return b;
}

bool sat_overlap(const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
    auto separated_on = [](const std::vector<Vec2>& edges, const std::vector<Vec2>& pa,
                           const std::vector<Vec2>& pb) {
        const std::size_t n = edges.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Vec2 e = edges[(i + 1) % n] - edges[i];
            const Vec2 axis{-e.y, e.x};
            double a_lo = pa[0].dot(axis), a_hi = a_lo;
            for (std::size_t k = 1; k < pa.size(); ++k) {
                const double d = pa[k].dot(axis);
                a_lo = std::min(a_lo, d);
                a_hi = std::max(a_hi, d);
            }
            double b_lo = pb[0].dot(axis), b_hi = b_lo;
            for (std::size_t k = 1; k < pb.size(); ++k) {
                const double d = pb[k].dot(axis);
                b_lo = std::min(b_lo, d);
                b_hi = std::max(b_hi, d);
            }
            if (std::min(a_hi, b_hi) - std::max(a_lo, b_lo) <= kGeomTol * axis.norm()) {
                return true;
            }
        }
        return false;
    };
    return !separated_on(a, a, b) && !separated_on(b, a, b);
}

bool bodies_intersect(const Body& a, const Body& b) {
    return a.box.overlaps(b.box) && sat_overlap(a.verts, b.verts);
}

}  // namespace

const char* push_termination_name(PushTermination t) {
    switch (t) {
        case PushTermination::kClearedFootprint: return "CLEARED_FOOTPRINT";
        case PushTermination::kWallContact: return "WALL_CONTACT";
        case PushTermination::kMaxDistance: return "MAX_DISTANCE";
        case PushTermination::kInfeasiblePlacement: return "INFEASIBLE_PLACEMENT";
    }
    return "UNKNOWN";
}

std::optional<Pose2> pusher_placement(const WorldState& state, const PushAction& action,
                                      const PhysicsConfig& config) {
    const MovableObject& target = state.object(action.object_id);
    const ConvexPolygon pusher_shape =
        ConvexPolygon::rectangle(config.pusher_depth, config.pusher_width);
    const ConvexPolygon target_poly = target.placed();
    const Vec2 center = target.pose.translation();
    const Vec2 retreat{-std::cos(action.phi), -std::sin(action.phi)};

    // Retreat until free of the target. The loop is bounded by the two
    // circumradii: beyond their sum plus one step no contact is possible.
    const double max_retreat =
        target.shape.circumradius() + pusher_shape.circumradius() + 2.0 * config.step;
    double offset = 0.0;
    ConvexPolygon pusher = transform(pusher_shape, Pose2{center.x, center.y, action.phi});
    while (intersects(pusher, target_poly)) {
        offset += config.step;
        if (offset > max_retreat) return std::nullopt;
        pusher = transform(pusher_shape, Pose2{center.x + offset * retreat.x,
                                               center.y + offset * retreat.y, action.phi});
    }

    if (!contains_in_room(pusher, state.room)) return std::nullopt;
    for (const MovableObject& other : state.objects) {
        if (other.id == target.id) continue;
        if (intersects(pusher, other.placed())) return std::nullopt;
    }
    return Pose2{center.x + offset * retreat.x, center.y + offset * retreat.y, action.phi};
}

PushOutcome simulate_push(const WorldState& state, const PushAction& action,
                          std::span<const ConvexPolygon> footprint,
                          const PhysicsConfig& config) {
    const MovableObject& target = state.object(action.object_id);

    PushOutcome outcome;
    outcome.new_state = state;
    outcome.termination = PushTermination::kInfeasiblePlacement;

    if (target.immovable) return outcome;
    const std::optional<Pose2> placement = pusher_placement(state, action, config);
    if (!placement) return outcome;

    const int n = static_cast<int>(state.objects.size());
    const Vec2 dir{std::cos(action.phi), std::sin(action.phi)};
    const Vec2 delta = dir * config.step;

    // The pusher only gates placement feasibility; the pushed set holds
    // objects alone.
    std::vector<Body> bodies;
    bodies.reserve(static_cast<std::size_t>(n));
    for (const MovableObject& obj : state.objects) bodies.push_back(make_body(obj.placed()));
    std::vector<Aabb> orig_box;
    orig_box.reserve(bodies.size());
    for (const Body& b : bodies) orig_box.push_back(b.box);

    std::vector<int> join_step(static_cast<std::size_t>(n), -1);
    std::vector<int> pushed;  // indices into bodies
    join_step[static_cast<std::size_t>(action.object_id)] = 0;
    pushed.push_back(action.object_id);

    std::vector<Aabb> footprint_boxes;
    footprint_boxes.reserve(footprint.size());
    for (const ConvexPolygon& fp : footprint) footprint_boxes.push_back(fp.aabb());

    auto target_on_footprint = [&](const Body& body) {
        for (std::size_t f = 0; f < footprint.size(); ++f) {
            if (body.box.overlaps(footprint_boxes[f]) &&
                sat_overlap(body.verts, footprint[f].vertices())) {
                return true;
            }
        }
        return false;
    };
    const bool overlapped_at_entry =
        target_on_footprint(bodies[static_cast<std::size_t>(action.object_id)]);

    const double room_diag = std::hypot(state.room.width(), state.room.height());
    const int max_steps = static_cast<int>(room_diag / config.step) + 2;

    std::vector<char> in_set(static_cast<std::size_t>(n), 0);
    in_set[static_cast<std::size_t>(action.object_id)] = 1;

    // Bodies are advanced in place. Once a terminal condition fires the
    // working vertices are never read again: reported poses come from the
    // exact per-object product (moved steps * step * direction) below, so
    // the pre-contact state needs no geometric rollback.
    int steps = 0;
    for (;;) {
        // Tentative advance with contact propagation to a fixed point. A
        // newly contacted object joins and advances within this same step,
        // which preserves the pre-step clearances inside the set.
        for (int idx : pushed) bodies[static_cast<std::size_t>(idx)].translate(delta);

        std::optional<int> immovable_block;
        bool grew = true;
        while (grew && !immovable_block) {
            grew = false;
            for (int o = 0; o < n && !immovable_block; ++o) {
                if (in_set[static_cast<std::size_t>(o)]) continue;
                for (std::size_t pi = 0; pi < pushed.size(); ++pi) {
                    const int idx = pushed[pi];
                    if (!bodies_intersect(bodies[static_cast<std::size_t>(idx)],
                                          bodies[static_cast<std::size_t>(o)])) {
                        continue;
                    }
                    if (state.objects[static_cast<std::size_t>(o)].immovable) {
                        immovable_block = o;
                    } else {
                        in_set[static_cast<std::size_t>(o)] = 1;
                        pushed.push_back(o);
                        bodies[static_cast<std::size_t>(o)].translate(delta);
                        grew = true;
                    }
                    break;
                }
            }
        }

        // (a) wall contact: an immovable chain member or a member that
        // would leave the room blocks the push; the step is not applied.
        // The strict containment test uses the exact per-object offset
        // (steps moved times step size), matching the poses reported at
        // the end — incremental vertex accumulation drifts by ~1 ulp per
        // step, which is enough to land an object exactly on the wall.
        std::optional<int> wall_block = immovable_block;
        if (!wall_block) {
            for (int idx : pushed) {

                const int joined = join_step[static_cast<std::size_t>(idx)];
                const int would_move = joined < 0 ? 1 : steps - joined + 1;
                const double moved = would_move * config.step;
                Aabb exact = orig_box[static_cast<std::size_t>(idx)];
                const Vec2 shift = dir * moved;
                exact.lo = exact.lo + shift;
                exact.hi = exact.hi + shift;
                const bool inside = exact.lo.x > state.room.x_min &&
                                    exact.hi.x < state.room.x_max &&
                                    exact.lo.y > state.room.y_min &&
                                    exact.hi.y < state.room.y_max;
                if (!inside) {
                    if (!wall_block || idx < *wall_block) wall_block = idx;
                }
            }
        }
        if (wall_block) {
            outcome.termination = PushTermination::kWallContact;
            outcome.blocking_id = *wall_block;
            break;
        }

        // (c) the next step would exceed the distance cap.
        if ((steps + 1) * config.step > action.max_distance + 1e-12) {
            outcome.termination = PushTermination::kMaxDistance;
            break;
        }

        // Commit the step.
        for (int idx : pushed) {
            if (join_step[static_cast<std::size_t>(idx)] < 0) {
                join_step[static_cast<std::size_t>(idx)] = steps;
            }
        }
        ++steps;

        // (b) the target has just left the footprint.
        if (overlapped_at_entry &&
            !target_on_footprint(bodies[static_cast<std::size_t>(action.object_id)])) {
            outcome.termination = PushTermination::kClearedFootprint;
            break;
        }

        if (steps > max_steps) {
            // Unreachable for in-room states: the room is bounded.
            throw Error(ErrorCode::kInvalidGeometry, "push failed to terminate");
        }
    }

    outcome.realized_distance = steps * config.step;
    for (int idx : pushed) {

        const int joined = join_step[static_cast<std::size_t>(idx)];
        if (joined < 0 || steps - joined <= 0) continue;  // joined on the aborted step
        MovableObject& obj = outcome.new_state.objects[static_cast<std::size_t>(idx)];
        const Vec2 shift = dir * ((steps - joined) * config.step);
        obj.pose = Pose2{obj.pose.x + shift.x, obj.pose.y + shift.y, obj.pose.theta};
        outcome.moved_ids.push_back(idx);
    }
    std::sort(outcome.moved_ids.begin(), outcome.moved_ids.end());
    return outcome;
}

std::vector<double> push_directions(int g) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(g));
    for (int k = 0; k < g; ++k) {
        out.push_back(2.0 * std::numbers::pi * k / g);
    }
    return out;
}

}  // namespace namo
