#include "areagraph/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

namespace areagraph {

namespace {

std::string num(double v) {
    double r = std::round(v * 1000.0) / 1000.0;
    if (r == 0.0) r = 0.0;  // no "-0"
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", r);
    std::string s = buf;
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
    return s;
}

struct Canvas {
    double scale;
    double margin;
    std::string pt(Point p) const { return num(p.x * scale) + "," + num(p.y * scale); }
};

std::string hex_color(double h, double s, double l) {
    double c = (1 - std::abs(2 * l - 1)) * s;
    double hp = h / 60.0;
    double x = c * (1 - std::abs(std::fmod(hp, 2.0) - 1));
    double r = 0, g = 0, b = 0;
    if (hp < 1) r = c, g = x;
    else if (hp < 2) r = x, g = c;
    else if (hp < 3) g = c, b = x;
    else if (hp < 4) g = x, b = c;
    else if (hp < 5) r = x, b = c;
    else r = c, b = x;
    double m = l - c / 2;
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", int(std::lround((r + m) * 255)),
                  int(std::lround((g + m) * 255)), int(std::lround((b + m) * 255)));
    return buf;
}

// Last point before the end that differs from it, for the arrow direction.
Point approach(const std::vector<Point>& pts, bool at_start) {
    if (at_start) {
        for (std::size_t i = 1; i < pts.size(); ++i)
            if (!(pts[i] == pts[0])) return pts[i];
        return pts[0];
    }
    for (std::size_t i = pts.size() - 1; i-- > 0;)
        if (!(pts[i] == pts.back())) return pts[i];
    return pts.back();
}

std::string edge_path(const EdgeGeometry& g, const Canvas& cv) {
    const auto& p = g.points;
    std::string d = "M" + cv.pt(p[0]);
    switch (g.style) {
        case EdgeStyle::Straight:
        case EdgeStyle::Orthogonal:
            for (std::size_t i = 1; i < p.size(); ++i) d += " L" + cv.pt(p[i]);
            break;
        case EdgeStyle::Quadratic:
            d += " Q" + cv.pt(p[1]) + " " + cv.pt(p[2]);
            break;
        case EdgeStyle::CubicChain:
            for (std::size_t i = 1; i + 2 < p.size(); i += 3)
                d += " C" + cv.pt(p[i]) + " " + cv.pt(p[i + 1]) + " " + cv.pt(p[i + 2]);
            break;
    }
    return d;
}

// Open "V" head at the tip, or a closed triangle for reverted edges.
std::string arrow_head(Point tip, Point from, double length, bool closed, const Canvas& cv) {
    Vec2 dir = unit(from, tip);
    if (dir.x == 0 && dir.y == 0) return "";
    Vec2 side{-dir.y, dir.x};
    Point base = tip - dir * length;
    Point a = base + side * (length * 0.45);
    Point b = base - side * (length * 0.45);
    if (closed) return " M" + cv.pt(tip) + " L" + cv.pt(a) + " L" + cv.pt(b) + " Z";
    return " M" + cv.pt(a) + " L" + cv.pt(tip) + " L" + cv.pt(b);
}

bool valid_geometry(const EdgeGeometry& g) {
    switch (g.style) {
        case EdgeStyle::Straight: return g.points.size() == 2;
        case EdgeStyle::Quadratic: return g.points.size() == 3;
        case EdgeStyle::Orthogonal: return g.points.size() >= 2;
        case EdgeStyle::CubicChain: return g.points.size() >= 4 && (g.points.size() - 1) % 3 == 0;
    }
    return false;
}

}  // namespace

std::string xml_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string rank_color(std::size_t rank, std::size_t n) {
    double t = n > 1 ? double(rank) / double(n - 1) : 1.0;
    return hex_color(120.0 * (1.0 - t), 0.7, 0.75);
}

std::string render_svg(const Layout& layout, const WeightedGraph& g, const DrawingArea& area,
                       const RenderStyle& style) {
    if (!(style.scale > 0)) throw RenderError("scale must be positive");
    const Canvas cv{style.scale, style.margin};
    for (const Vertex& v : g.vertices())
        if (!layout.positions.count(v.id)) throw RenderError("vertex " + v.id + " has no position");
    for (const DrawnEdge& e : layout.edges) {
        if (!valid_geometry(e.geometry))
            throw RenderError("edge " + e.src + "-" + e.dst + " has no usable geometry");
        if (style.edge_style && e.geometry.style != *style.edge_style)
            throw RenderError("edge " + e.src + "-" + e.dst + " has an unexpected style");
    }

    const double w = area.width * style.scale, h = area.height * style.scale;
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
       << num(area.width) << "cm\" height=\"" << num(area.height) << "cm\" viewBox=\""
       << num(-style.margin) << " " << num(-style.margin) << " " << num(w + 2 * style.margin) << " "
       << num(h + 2 * style.margin) << "\">\n";
    if (style.show_frame)
        os << "<rect x=\"0\" y=\"0\" width=\"" << num(w) << "\" height=\"" << num(h)
           << "\" fill=\"none\" stroke=\"#999999\" stroke-width=\"1\"/>\n";

    std::vector<std::size_t> eorder(layout.edges.size());
    std::iota(eorder.begin(), eorder.end(), 0);
    std::stable_sort(eorder.begin(), eorder.end(), [&](std::size_t a, std::size_t b) {
        const auto& ea = layout.edges[a];
        const auto& eb = layout.edges[b];
        return std::tie(ea.weight, ea.src, ea.dst) < std::tie(eb.weight, eb.src, eb.dst);
    });
    const bool arrows = g.directed();
    for (std::size_t i : eorder) {
        const DrawnEdge& e = layout.edges[i];
        std::string d = edge_path(e.geometry, cv);
        if (arrows) {
            const auto& pts = e.geometry.points;
            if (e.reversed)
                d += arrow_head(pts.front(), approach(pts, true), style.arrow_length, true, cv);
            else
                d += arrow_head(pts.back(), approach(pts, false), style.arrow_length, false, cv);
        }
        double sw = e.stroke_width > 0 ? e.stroke_width * style.scale : 1.0;
        os << "<path d=\"" << d << "\" fill=\"none\" stroke=\""
           << (e.reversed ? "#8a2be2" : "#333333") << "\" stroke-width=\"" << num(sw) << "\"/>\n";
    }

    std::vector<std::size_t> vorder(g.vertex_count());
    std::iota(vorder.begin(), vorder.end(), 0);
    std::sort(vorder.begin(), vorder.end(), [&](std::size_t a, std::size_t b) {
        const auto& va = g.vertex(a);
        const auto& vb = g.vertex(b);
        return std::tie(va.weight, va.id) < std::tie(vb.weight, vb.id);
    });
    const double font = style.font_size_pt / 72.0 * 2.54 * style.scale;
    for (std::size_t r = 0; r < vorder.size(); ++r) {
        const Vertex& v = g.vertex(vorder[r]);
        Point c = layout.positions.at(v.id);
        Rect rc{c, v.width, v.height};
        os << "<rect x=\"" << num(rc.left() * style.scale) << "\" y=\""
           << num(rc.top() * style.scale) << "\" width=\"" << num(v.width * style.scale)
           << "\" height=\"" << num(v.height * style.scale) << "\" fill=\""
           << rank_color(r, vorder.size()) << "\" stroke=\"#000000\" stroke-width=\"0.5\"/>\n";
        os << "<text x=\"" << num(c.x * style.scale) << "\" y=\"" << num(c.y * style.scale)
           << "\" font-family=\"sans-serif\" font-size=\"" << num(font)
           << "\" text-anchor=\"middle\" dominant-baseline=\"central\">"
           << xml_escape(v.label.empty() ? v.id : v.label) << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace areagraph
