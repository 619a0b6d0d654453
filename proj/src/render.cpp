#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "valfan/render.hpp"

namespace valfan {

namespace {

struct P2 {
    double x = 0;
    double y = 0;
};

double midpoint(const Scalar& s, int depth) {
    Interval iv = enclose(s, depth);
    return (iv.lo.get_d() + iv.hi.get_d()) / 2.0;
}

P2 project(const std::vector<double>& v) {
    if (v.size() == 1) return {v[0], 0.0};
    if (v.size() == 2) return {v[0], v[1]};
    // simple oblique wireframe projection for n = 3
    return {v[0] + 0.3 * v[2], v[1] + 0.3 * v[2]};
}

P2 place(const ScalarVec& v, int depth) {
    std::vector<double> num;
    for (const auto& x : v) num.push_back(midpoint(x, depth));
    return project(num);
}

P2 direction(const IntVec& r) {
    std::vector<double> num;
    double scale = 0;
    for (const auto& x : r) scale = std::max(scale, std::abs(x.get_d()));
    for (const auto& x : r) num.push_back(x.get_d() / (scale > 0 ? scale : 1.0));
    return project(num);
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '&') out += "&amp;";
        else if (c == '<') out += "&lt;";
        else if (c == '>') out += "&gt;";
        else out += c;
    }
    return out;
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", x + 0.0); // normalize -0.00
    std::string s(buf);
    return s == "-0.00" ? "0.00" : s;
}

struct Segment {
    P2 a;
    P2 b;
    bool unbounded = false;
};

} // namespace

std::string render_svg(const Fan& fan, int depth) {
    if (fan.n() > 3)
        throw DimensionTooLarge("can only draw fans with n <= 3, got n = " +
                                std::to_string(fan.n()));

    // distinct vertices of the height-one complex, with symbolic labels
    std::set<ScalarVec, bool (*)(const ScalarVec&, const ScalarVec&)> verts(scalar_vec_less);
    for (const auto& c : fan.cones())
        for (const auto& v : c.vertices()) verts.insert(v);

    std::vector<P2> points;
    std::vector<std::string> labels;
    for (const auto& v : verts) {
        points.push_back(place(v, depth));
        std::string label = "(";
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) label += ", ";
            label += v[i].str();
        }
        label += ")";
        labels.push_back(label);
    }

    // frame scale from the vertex cloud, before clipping rays to it
    double span = 1.0;
    for (const auto& p : points) span = std::max({span, std::abs(p.x), std::abs(p.y)});
    double reach = 1.5 * span;

    // edges of the complex: two-dimensional cones meeting height one are a
    // segment, a clipped half-line, or a clipped full line at the slice
    std::vector<Segment> edges;
    for (const auto& c : fan.cones()) {
        if (c.dim() != 2 || !c.meets_height1()) continue;
        const auto& vs = c.vertices();
        if (vs.size() == 2) {
            edges.push_back({place(vs[0], depth), place(vs[1], depth), false});
            continue;
        }
        P2 base = place(vs[0], depth);
        for (const auto& r : c.height0().rays) {
            P2 d = direction(r);
            edges.push_back({base, {base.x + reach * d.x, base.y + reach * d.y}, true});
        }
        for (const auto& l : c.height0().lines) {
            P2 d = direction(l);
            edges.push_back({{base.x - reach * d.x, base.y - reach * d.y},
                             {base.x + reach * d.x, base.y + reach * d.y},
                             true});
        }
    }

    // fit everything into a fixed viewport, y pointing up
    double lo_x = -1, hi_x = 1, lo_y = -1, hi_y = 1;
    auto grow = [&](const P2& p) {
        lo_x = std::min(lo_x, p.x);
        hi_x = std::max(hi_x, p.x);
        lo_y = std::min(lo_y, p.y);
        hi_y = std::max(hi_y, p.y);
    };
    for (const auto& p : points) grow(p);
    for (const auto& e : edges) {
        grow(e.a);
        grow(e.b);
    }
    const double size = 480.0, margin = 48.0;
    double scale = (size - 2 * margin) / std::max(hi_x - lo_x, hi_y - lo_y);
    auto tx = [&](const P2& p) -> P2 {
        return {margin + (p.x - lo_x) * scale, size - margin - (p.y - lo_y) * scale};
    };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\""
        << size << "\" viewBox=\"0 0 " << size << " " << size << "\">\n";
    out << "  <rect width=\"" << size << "\" height=\"" << size
        << "\" fill=\"white\" stroke=\"none\"/>\n";
    for (const auto& e : edges) {
        P2 a = tx(e.a), b = tx(e.b);
        out << "  <line x1=\"" << fmt(a.x) << "\" y1=\"" << fmt(a.y) << "\" x2=\"" << fmt(b.x)
            << "\" y2=\"" << fmt(b.y) << "\" stroke=\"black\" stroke-width=\"1.5\"";
        if (e.unbounded) out << " stroke-dasharray=\"6 4\"";
        out << "/>\n";
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
        P2 p = tx(points[i]);
        out << "  <circle cx=\"" << fmt(p.x) << "\" cy=\"" << fmt(p.y)
            << "\" r=\"3\" fill=\"black\"/>\n";
        out << "  <text x=\"" << fmt(p.x + 6) << "\" y=\"" << fmt(p.y - 6)
            << "\" font-family=\"monospace\" font-size=\"11\">" << xml_escape(labels[i])
            << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

} // namespace valfan
