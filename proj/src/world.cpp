#include "namo/world.hpp"

#include <cmath>
#include <string>

#include "namo/rng.hpp"

namespace namo {

const MovableObject& WorldState::object(int id) const {
    if (id < 0 || static_cast<std::size_t>(id) >= objects.size()) {
        throw Error(ErrorCode::kUnknownObject, "no object with id " + std::to_string(id));
    }
    return objects[static_cast<std::size_t>(id)];
}

void validate_world(const WorldState& state) {
    if (!(state.room.x_min < state.room.x_max && state.room.y_min < state.room.y_max)) {
        throw Error(ErrorCode::kInvalidGeometry, "degenerate room bounds");
    }
    for (std::size_t i = 0; i < state.objects.size(); ++i) {
        const MovableObject& obj = state.objects[i];
        if (obj.id != static_cast<int>(i)) {
            throw Error(ErrorCode::kInvalidGeometry, "object ids must be contiguous from 0");
        }
        if (obj.shape.centroid().norm() > 1e-9) {
            throw Error(ErrorCode::kInvalidGeometry,
                        "object shape centroid must sit at the local origin");
        }
    }
}

double clutter_percentage(const WorldState& state) {
    std::vector<ConvexPolygon> placed;
    placed.reserve(state.objects.size());
    double occupied = 0.0;
    for (const MovableObject& obj : state.objects) {
        placed.push_back(obj.placed());
        occupied += obj.shape.area();
    }
    for (std::size_t i = 0; i < placed.size(); ++i) {
        for (std::size_t j = i + 1; j < placed.size(); ++j) {
            if (intersects(placed[i], placed[j])) {
                throw Error(ErrorCode::kOverlappingInput,
                            "objects " + std::to_string(i) + " and " + std::to_string(j) +
                                " overlap; area would double-count");
            }
        }
    }
    const double room_area = state.room.width() * state.room.height();
    return occupied / room_area;
}

double side_for_clutter(double clutter_fraction) {
    const double room_area = kBenchRoom.width() * kBenchRoom.height();
    return std::sqrt(clutter_fraction * room_area / kSquareCount);
}

Scenario generate_scenario(std::uint64_t seed, double square_side) {
    if (!(square_side > 0.0)) {
        throw Error(ErrorCode::kInvalidGeometry, "square side must be positive");
    }
    const Room room = kBenchRoom;
    constexpr int kCols = 5;
    constexpr int kRows = 4;
    const double cell_w = room.width() / kCols;
    const double cell_h = room.height() / kRows;

    Rng rng(seed);
    const ConvexPolygon square = ConvexPolygon::rectangle(square_side, square_side);
    const int count = kRows * kCols;

    // Rooms are a 5x4 grid of squares with randomized spacing rather than
    // uniform cells: the free span on each axis is stick-broken across the
    // gaps, with one dominant horizontal lane and a wide margin along each
    // side wall. Small squares leave a traversable lane and turning room
    // near the walls; as squares grow toward the densest levels the same
    // structure closes up smoothly. Jitter amplitudes are bounded by the
    // local gap slack so the room keeps its character after repair.
    const double free_x = room.width() - kCols * square_side;
    const double free_y = room.height() - kRows * square_side;
    if (free_x <= 0.0 || free_y <= 0.0) {
        throw Error(ErrorCode::kPlacementFailed,
                    "squares of side " + std::to_string(square_side) + " cannot tile the room");
    }

    // Horizontal gaps: wall | c0 | c1 | c2 | c3 | wall. Side margins scale
    // with the free span: sparse rooms keep turning room along the walls,
    // dense rooms close up everywhere.
    double gx[kCols + 1];
    {
        const double margin_base = std::clamp(0.35 * free_x - 3.0, 1.8, 6.5);
        gx[0] = margin_base * rng.uniform(0.95, 1.05);
        gx[kCols] = margin_base * rng.uniform(0.95, 1.05);
        double weights[kCols - 1];
        double total = 0.0;
        for (int g = 0; g < kCols - 1; ++g) {
            weights[g] = rng.uniform(0.3, 1.0);
            total += weights[g];
        }
        const double inner = free_x - gx[0] - gx[kCols];
        for (int g = 0; g < kCols - 1; ++g) gx[g + 1] = inner * weights[g] / total;
    }
    // Vertical structure: each column is a stack of four squares with one
    // dominant gap — the lane — at a shared slot, and the remaining free
    // height split among the small gaps. The lane's share of the free span
    // shrinks as the room fills, and the split between below-lane and
    // above-lane free height follows a random walk across the columns, so
    // the lane wanders: sparse rooms keep a continuous body-width channel,
    // denser rooms leave only a crooked seam no straight band can follow.
    const int lane_slot = rng.uniform_int(1, kRows - 1);  // interior slot
    const double lane_frac = std::clamp(0.25 + 0.018 * free_y, 0.25, 0.42);
    const double lane_height = free_y * lane_frac * rng.uniform(0.95, 1.05);
    const double spare = free_y - lane_height;  // split across the small gaps

    double col_x[kCols];
    {
        double x = room.x_min;
        for (int i = 0; i < kCols; ++i) {
            x += gx[i];
            col_x[i] = x + square_side / 2.0;
            x += square_side;
        }
    }

    // Per-column gap vectors. The walk moves the below-lane share between
    // columns; large steps are allowed only where the lane is too narrow
    // for the benchmark agent anyway.
    double gy[kCols][kRows + 1];
    {
        const double walk_cap =
            lane_height >= 2.6 ? std::max(0.0, lane_height - 2.6)
                               : std::min(2.0, 0.45 * spare);
        double below = spare * rng.uniform(0.2, 0.8);
        for (int i = 0; i < kCols; ++i) {
            if (i > 0) {
                below = std::clamp(below + rng.uniform(-walk_cap, walk_cap), 0.08 * spare,
                                   0.92 * spare);
            }
            double below_w[kRows + 1];
            double below_total = 0.0, above_total = 0.0;
            for (int g = 0; g <= kRows; ++g) {
                below_w[g] = rng.uniform(0.3, 1.0);
                if (g < lane_slot) below_total += below_w[g];
                if (g > lane_slot) above_total += below_w[g];
            }
            for (int g = 0; g <= kRows; ++g) {
                if (g == lane_slot) {
                    gy[i][g] = lane_height;
                } else if (g < lane_slot) {
                    gy[i][g] = below_total > 0.0 ? below * below_w[g] / below_total : 0.0;
                } else {
                    gy[i][g] =
                        above_total > 0.0 ? (spare - below) * below_w[g] / above_total : 0.0;
                }
            }
        }
    }
    auto row_center_y = [&](int col, int row) {
        double y = room.y_min;
        for (int j = 0; j <= row; ++j) {
            y += gy[col][j];
            if (j < row) y += square_side;
        }
        return y + square_side / 2.0;
    };

    std::vector<Pose2> poses(static_cast<std::size_t>(count));
    std::vector<ConvexPolygon> placed(static_cast<std::size_t>(count), square);
    std::vector<int> attempts(static_cast<std::size_t>(count), 0);

    auto draw = [&](int index) {
        const int i = index % kCols;
        const int j = index / kCols;
        double amp_x = std::min(0.25 * cell_w, 0.35 * std::min(gx[i], gx[i + 1]));
        // Edge columns must not squeeze the wall margins below turning room
        // for the benchmark agent (its diagonal is just over 5 cm).
        if (i == 0) amp_x = std::max(0.0, std::min(amp_x, gx[0] - 5.2));
        if (i == kCols - 1) amp_x = std::max(0.0, std::min(amp_x, gx[kCols] - 5.2));
        const double amp_y =
            std::min(0.25 * cell_h, 0.35 * std::min(gy[i][j], gy[i][j + 1]));
        const double jx = rng.uniform(-amp_x, amp_x);
        const double jy = rng.uniform(-amp_y, amp_y);
        poses[static_cast<std::size_t>(index)] =
            Pose2{col_x[i] + jx, row_center_y(i, j) + jy, 0.0};
        placed[static_cast<std::size_t>(index)] =
            transform(square, poses[static_cast<std::size_t>(index)]);
        if (++attempts[static_cast<std::size_t>(index)] > 100) {
            throw Error(ErrorCode::kPlacementFailed,
                        "could not place square " + std::to_string(index) +
                            " in 100 attempts (side " + std::to_string(square_side) + ")");
        }
    };

    for (int index = 0; index < count; ++index) draw(index);
    for (;;) {
        std::vector<char> invalid(static_cast<std::size_t>(count), 0);
        bool any = false;
        for (int a = 0; a < count; ++a) {
            if (!contains_in_room(placed[static_cast<std::size_t>(a)], room)) {
                invalid[static_cast<std::size_t>(a)] = 1;
                any = true;
            }
            for (int b = a + 1; b < count; ++b) {
                if (intersects(placed[static_cast<std::size_t>(a)],
                               placed[static_cast<std::size_t>(b)])) {
                    invalid[static_cast<std::size_t>(a)] = 1;
                    invalid[static_cast<std::size_t>(b)] = 1;
                    any = true;
                }
            }
        }
        if (!any) break;
        // Re-jitter one offender per round, fewest attempts first: spending
        // the budget evenly lets squeezed squares and their blockers take
        // turns moving instead of one square burning its cap alone.
        int pick = -1;
        for (int index = 0; index < count; ++index) {
            if (!invalid[static_cast<std::size_t>(index)]) continue;
            if (pick < 0 || attempts[static_cast<std::size_t>(index)] <
                                attempts[static_cast<std::size_t>(pick)]) {
                pick = index;
            }
        }
        draw(pick);
    }

    WorldState state;
    state.room = room;
    for (int index = 0; index < count; ++index) {
        state.objects.push_back({index, square, poses[static_cast<std::size_t>(index)], false});
    }

    Scenario scenario{
        seed,
        std::move(state),
        0.0,
        ConvexPolygon::rectangle(kAgentLength, kAgentWidth),
        ConvexPolygon::rectangle(kPathLength, kPathWidth),
    };
    scenario.clutter = clutter_percentage(scenario.state);
    return scenario;
}

ValidityReport validate_terminal(const WorldState& state,
                                 std::span<const ConvexPolygon> footprint) {
    ValidityReport report;
    std::vector<ConvexPolygon> placed;
    placed.reserve(state.objects.size());
    for (const MovableObject& obj : state.objects) placed.push_back(obj.placed());

    for (std::size_t i = 0; i < placed.size(); ++i) {
        for (std::size_t j = i + 1; j < placed.size(); ++j) {
            if (intersects(placed[i], placed[j])) {
                report.intersecting_pairs.emplace_back(state.objects[i].id,
                                                       state.objects[j].id);
            }
        }
    }
    for (std::size_t i = 0; i < placed.size(); ++i) {
        if (!contains_in_room(placed[i], state.room)) {
            report.out_of_room.push_back(state.objects[i].id);
        }
    }
    for (std::size_t i = 0; i < placed.size(); ++i) {
        for (const ConvexPolygon& fp : footprint) {
            if (intersects(placed[i], fp)) {
                report.footprint_overlaps.push_back(state.objects[i].id);
                break;
            }
        }
    }
    return report;
}

}  // namespace namo
