#include "lsb/envs/pinball.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace lsb {

namespace {

using Point = std::pair<double, double>;

struct Closest {
    double x = 0.0, y = 0.0; // closest boundary point
    double dist = 1e300;
};

Closest closest_on_segment(double px, double py, const Point& a, const Point& b) {
    double vx = b.first - a.first, vy = b.second - a.second;
    double wx = px - a.first, wy = py - a.second;
    double len2 = vx * vx + vy * vy;
    double t = len2 > 0.0 ? (wx * vx + wy * vy) / len2 : 0.0;
    if (t < 0.0) t = 0.0;
    if (t > 1.0) t = 1.0;
    Closest c;
    c.x = a.first + t * vx;
    c.y = a.second + t * vy;
    double dx = px - c.x, dy = py - c.y;
    c.dist = std::sqrt(dx * dx + dy * dy);
    return c;
}

bool point_in_polygon(double px, double py, const std::vector<Point>& poly) {
    bool inside = false;
    for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
        bool crosses = (poly[i].second > py) != (poly[j].second > py);
        if (!crosses) continue;
        double xint = (poly[j].first - poly[i].first) * (py - poly[i].second) /
                          (poly[j].second - poly[i].second) +
                      poly[i].first;
        if (px < xint) inside = !inside;
    }
    return inside;
}

bool segments_intersect(const Point& p1, const Point& p2, const Point& p3, const Point& p4) {
    auto cross = [](const Point& o, const Point& a, const Point& b) {
        return (a.first - o.first) * (b.second - o.second) -
               (a.second - o.second) * (b.first - o.first);
    };
    double d1 = cross(p3, p4, p1), d2 = cross(p3, p4, p2);
    double d3 = cross(p1, p2, p3), d4 = cross(p1, p2, p4);
    return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
           ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
}

} // namespace

void PinballLayout::validate() const {
    if (!(ball_radius > 0.0)) throw std::invalid_argument("ball radius must be positive");
    if (!(drag > 0.0 && drag <= 1.0)) throw std::invalid_argument("drag must be in (0,1]");
    if (!(restitution > 0.0 && restitution <= 1.0))
        throw std::invalid_argument("restitution must be in (0,1]");
    auto in_unit = [](double x, double y) { return x >= 0.0 && x <= 1.0 && y >= 0.0 && y <= 1.0; };
    if (!in_unit(start_x, start_y)) throw std::invalid_argument("start outside the unit box");
    if (!in_unit(target.x, target.y)) throw std::invalid_argument("target outside the unit box");
    for (std::size_t p = 0; p < obstacles.size(); ++p) {
        const auto& poly = obstacles[p];
        if (poly.size() < 3)
            throw std::invalid_argument("polygon " + std::to_string(p) + " has fewer than 3 vertices");
        for (std::size_t i = 0; i < poly.size(); ++i)
            for (std::size_t j = i + 1; j < poly.size(); ++j) {
                // adjacent edges share an endpoint; skip them
                if (j == i + 1 || (i == 0 && j == poly.size() - 1)) continue;
                const Point& a1 = poly[i];
                const Point& a2 = poly[(i + 1) % poly.size()];
                const Point& b1 = poly[j];
                const Point& b2 = poly[(j + 1) % poly.size()];
                if (segments_intersect(a1, a2, b1, b2))
                    throw std::invalid_argument("polygon " + std::to_string(p) +
                                                " is self-intersecting");
            }
        if (point_in_polygon(start_x, start_y, poly))
            throw std::invalid_argument("start lies inside an obstacle");
        if (point_in_polygon(target.x, target.y, poly))
            throw std::invalid_argument("target lies inside an obstacle");
    }
}

PinballLayout load_pinball_layout(const std::string& text) {
    PinballLayout layout;
    std::istringstream is(text);
    std::string line;
    int line_no = 0;
    bool saw_start = false, saw_target = false, saw_ball = false;
    while (std::getline(is, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;
        auto fail = [&](const std::string& what) {
            throw std::invalid_argument("layout line " + std::to_string(line_no) + ": " + what);
        };
        if (key == "ball") {
            if (!(ls >> layout.ball_radius)) fail("malformed ball radius");
            saw_ball = true;
        } else if (key == "start") {
            if (!(ls >> layout.start_x >> layout.start_y)) fail("malformed start");
            saw_start = true;
        } else if (key == "target") {
            if (!(ls >> layout.target.x >> layout.target.y >> layout.target.radius))
                fail("malformed target");
            saw_target = true;
        } else if (key == "drag") {
            if (!(ls >> layout.drag)) fail("malformed drag");
        } else if (key == "restitution") {
            if (!(ls >> layout.restitution)) fail("malformed restitution");
        } else if (key == "polygon") {
            std::vector<Point> poly;
            double x, y;
            while (ls >> x) {
                if (!(ls >> y)) fail("polygon has an odd number of coordinates");
                poly.emplace_back(x, y);
            }
            if (poly.size() < 3) fail("polygon needs at least 3 vertices");
            layout.obstacles.push_back(std::move(poly));
        } else {
            fail("unknown directive '" + key + "'");
        }
    }
    if (!saw_ball || !saw_start || !saw_target)
        throw std::invalid_argument("layout missing a ball/start/target line");
    layout.validate();
    return layout;
}

PinballLayout load_pinball_layout_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open layout file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return load_pinball_layout(ss.str());
}

PinballEnv::PinballEnv(PinballLayout layout, double gamma)
    : layout_(std::move(layout)), gamma_(gamma) {
    layout_.validate();
    bounds_.low = {0.0, 0.0, -1.0, -1.0};
    bounds_.high = {1.0, 1.0, 1.0, 1.0};
    if (!position_valid(layout_.start_x, layout_.start_y))
        throw std::invalid_argument("start lies inside an obstacle");
}

double PinballEnv::obstacle_clearance(double x, double y) const {
    double best = 1e300;
    for (const auto& poly : layout_.obstacles) {
        double d = 1e300;
        for (std::size_t i = 0; i < poly.size(); ++i) {
            Closest c = closest_on_segment(x, y, poly[i], poly[(i + 1) % poly.size()]);
            d = std::min(d, c.dist);
        }
        if (point_in_polygon(x, y, poly)) d = -d;
        best = std::min(best, d);
    }
    return best;
}

bool PinballEnv::position_valid(double x, double y) const {
    return obstacle_clearance(x, y) >= layout_.ball_radius;
}

StepResult PinballEnv::step(const State& s, int action, Rng&) const {
    double x = s.at(0), y = s.at(1), vx = s.at(2), vy = s.at(3);
    switch (action) {
    case 0: vx += kImpulse; break;
    case 1: vx -= kImpulse; break;
    case 2: vy += kImpulse; break;
    case 3: vy -= kImpulse; break;
    case 4: break; // none
    default: throw std::invalid_argument("action out of range");
    }
    vx = std::clamp(vx, -1.0, 1.0);
    vy = std::clamp(vy, -1.0, 1.0);

    const double rb = layout_.ball_radius;
    const double e = layout_.restitution;
    const double h = kDt / kSubsteps;
    bool reached = false;
    for (int sub = 0; sub < kSubsteps && !reached; ++sub) {
        x += vx * h;
        y += vy * h;
        // resolve collisions; a corner can need more than one pass
        for (int pass = 0; pass < 4; ++pass) {
            bool touched = false;
            // box walls
            if (x < rb) {
                x = rb;
                if (vx < 0.0) vx = -e * vx;
                touched = true;
            }
            if (x > 1.0 - rb) {
                x = 1.0 - rb;
                if (vx > 0.0) vx = -e * vx;
                touched = true;
            }
            if (y < rb) {
                y = rb;
                if (vy < 0.0) vy = -e * vy;
                touched = true;
            }
            if (y > 1.0 - rb) {
                y = 1.0 - rb;
                if (vy > 0.0) vy = -e * vy;
                touched = true;
            }
            // obstacles: closest feature gives the contact normal (segment
            // interior -> edge normal, endpoint -> vertex normal)
            for (const auto& poly : layout_.obstacles) {
                Closest best;
                for (std::size_t i = 0; i < poly.size(); ++i) {
                    Closest c = closest_on_segment(x, y, poly[i], poly[(i + 1) % poly.size()]);
                    if (c.dist < best.dist) best = c;
                }
                bool inside = point_in_polygon(x, y, poly);
                if (!inside && best.dist >= rb) continue;
                double nx, ny;
                if (best.dist > 1e-12) {
                    nx = (x - best.x) / best.dist;
                    ny = (y - best.y) / best.dist;
                    if (inside) {
                        nx = -nx;
                        ny = -ny;
                    }
                } else {
                    // center exactly on the boundary: push against velocity
                    double speed = std::sqrt(vx * vx + vy * vy);
                    if (speed < 1e-12) continue;
                    nx = -vx / speed;
                    ny = -vy / speed;
                }
                double depth = inside ? rb + best.dist : rb - best.dist;
                x += nx * (depth + 1e-9);
                y += ny * (depth + 1e-9);
                double vn = vx * nx + vy * ny;
                if (vn < 0.0) {
                    vx -= (1.0 + e) * vn * nx;
                    vy -= (1.0 + e) * vn * ny;
                }
                touched = true;
            }
            if (!touched) break;
        }
        double tdx = x - layout_.target.x, tdy = y - layout_.target.y;
        if (tdx * tdx + tdy * tdy <= layout_.target.radius * layout_.target.radius)
            reached = true;
    }
    vx *= layout_.drag;
    vy *= layout_.drag;
    vx = std::clamp(vx, -1.0, 1.0);
    vy = std::clamp(vy, -1.0, 1.0);

    StepResult res;
    res.next_state = {x, y, vx, vy};
    if (reached) {
        res.reward = 1.0;
        res.done = true;
    } else {
        res.reward = kStepReward;
        res.done = false;
    }
    return res;
}

State PinballEnv::initial_state(Rng&) const {
    return {layout_.start_x, layout_.start_y, 0.0, 0.0};
}

State PinballEnv::sample_state_in_box(const State& lo, const State& hi, Rng& rng) const {
    for (int tries = 0; tries < 4000; ++tries) {
        State s(4);
        for (int k = 0; k < 4; ++k) s[k] = rng.uniform(lo.at(k), hi.at(k));
        if (position_valid(s[0], s[1])) return s;
    }
    throw std::runtime_error("no valid ball position inside the requested box");
}

} // namespace lsb
