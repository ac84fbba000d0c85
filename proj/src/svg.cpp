#include "namo/svg.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace namo {

namespace {

constexpr double kPxPerCm = 10.0;
constexpr double kMargin = 10.0;  // px

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

class Canvas {
public:
    Canvas(const Room& room)
        : room_(room),
          width_px_(room.width() * kPxPerCm + 2 * kMargin),
          height_px_(room.height() * kPxPerCm + 2 * kMargin) {
        out_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width_px_)
             << "\" height=\"" << num(height_px_) << "\" viewBox=\"0 0 " << num(width_px_)
             << " " << num(height_px_) << "\">\n";
    }

    double px(double x) const { return kMargin + (x - room_.x_min) * kPxPerCm; }
    double py(double y) const { return kMargin + (room_.y_max - y) * kPxPerCm; }

    void polygon(const ConvexPolygon& poly, const std::string& style) {
        out_ << "<polygon points=\"";
        bool first = true;
        for (const Vec2& v : poly.vertices()) {
            if (!first) out_ << " ";
            out_ << num(px(v.x)) << "," << num(py(v.y));
            first = false;
        }
        out_ << "\" style=\"" << style << "\"/>\n";
    }

    void line(Vec2 a, Vec2 b, const std::string& style) {
        out_ << "<line x1=\"" << num(px(a.x)) << "\" y1=\"" << num(py(a.y)) << "\" x2=\""
             << num(px(b.x)) << "\" y2=\"" << num(py(b.y)) << "\" style=\"" << style
             << "\"/>\n";
    }

    void polyline(std::span<const Pose2> pts, const std::string& style) {
        out_ << "<polyline points=\"";
        bool first = true;
        for (const Pose2& p : pts) {
            if (!first) out_ << " ";
            out_ << num(px(p.x)) << "," << num(py(p.y));
            first = false;
        }
        out_ << "\" style=\"" << style << "\"/>\n";
    }

    void arrow(Vec2 from, Vec2 to, const std::string& color) {
        line(from, to, "stroke:" + color + ";stroke-width:2");
        // Arrowhead: two short strokes at 150 degrees off the shaft.
        const double ang = std::atan2(to.y - from.y, to.x - from.x);
        for (const double side : {ang + 2.617993877991494, ang - 2.617993877991494}) {
            const Vec2 tip{to.x + 0.6 * std::cos(side), to.y + 0.6 * std::sin(side)};
            line(to, tip, "stroke:" + color + ";stroke-width:2");
        }
    }

    void text(Vec2 at, const std::string& s, const std::string& style) {
        out_ << "<text x=\"" << num(px(at.x)) << "\" y=\"" << num(py(at.y)) << "\" style=\""
             << style << "\">" << s << "</text>\n";
    }

    void rect_border() {
        out_ << "<rect x=\"" << num(kMargin) << "\" y=\"" << num(kMargin) << "\" width=\""
             << num(room_.width() * kPxPerCm) << "\" height=\""
             << num(room_.height() * kPxPerCm)
             << "\" style=\"fill:none;stroke:#222222;stroke-width:2\"/>\n";
    }

    std::string finish() {
        out_ << "</svg>\n";
        return out_.str();
    }

private:
    Room room_;
    double width_px_;
    double height_px_;
    std::ostringstream out_;
};

}  // namespace

std::string render_svg(const Scenario& scenario, const PushPlan* plan,
                       std::span<const Pose2> waypoints, const PhysicsConfig& physics) {
    const WorldState& initial = scenario.state;
    Canvas canvas(initial.room);
    canvas.rect_border();

    if (plan) {
        for (const ConvexPolygon& poly : plan->footprint.polygons) {
            canvas.polygon(poly, "fill:#4488cc;fill-opacity:0.25;stroke:none");
        }
    }

    for (const MovableObject& obj : initial.objects) {
        canvas.polygon(obj.placed(),
                       "fill:none;stroke:#888888;stroke-width:1;stroke-dasharray:4,3");
    }

    const WorldState& final_state = plan ? plan->final_state : initial;
    for (const MovableObject& obj : final_state.objects) {
        canvas.polygon(obj.placed(),
                       obj.immovable
                           ? "fill:#777777;fill-opacity:0.8;stroke:#333333;stroke-width:1.5"
                           : "fill:#ddaa55;fill-opacity:0.8;stroke:#333333;stroke-width:1.5");
    }

    if (plan) {
        // Replay to recover each pusher pose; outcomes carry the states.
        WorldState before = initial;
        int index = 1;
        for (const PlannedPush& push : plan->pushes) {
            const std::optional<Pose2> pusher = pusher_placement(before, push.action, physics);
            if (pusher) {
                const Vec2 from = pusher->translation();
                const Vec2 dir{std::cos(push.action.phi), std::sin(push.action.phi)};
                const Vec2 to = from + dir * std::max(1.0, push.outcome.realized_distance);
                canvas.arrow(from, to, "#cc3333");
                canvas.text(from + Vec2{0.3, 0.3}, std::to_string(index),
                            "font-size:12px;fill:#cc3333");
            }
            before = push.outcome.new_state;
            ++index;
        }
    }

    if (!waypoints.empty()) {
        canvas.polyline(waypoints, "fill:none;stroke:#33aa33;stroke-width:1.5");
    }
    return canvas.finish();
}

namespace {

void write_file(const std::string& content, const std::string& out_path) {
    std::ofstream out(out_path);
    if (!out) throw Error(ErrorCode::kIoError, "cannot open for write: " + out_path);
    out << content;
    if (!out) throw Error(ErrorCode::kIoError, "write failed: " + out_path);
}

}  // namespace

void emit_svg(const Scenario& scenario, const PushPlan& plan, const std::string& out_path,
              const PhysicsConfig& physics) {
    write_file(render_svg(scenario, &plan, {}, physics), out_path);
}

void emit_svg(const Scenario& scenario, std::span<const Pose2> waypoints,
              const std::string& out_path, const PhysicsConfig& physics) {
    write_file(render_svg(scenario, nullptr, waypoints, physics), out_path);
}

}  // namespace namo
