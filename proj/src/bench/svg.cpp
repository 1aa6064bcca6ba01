#include <algorithm>
#include <array>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "sdvrp/bench.hpp"

namespace sdvrp::bench {

namespace {

constexpr double kCanvas = 800.0;
constexpr double kMargin = 40.0;
constexpr double kLegend = 30.0;

constexpr std::array<const char *, 10> kPalette{
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
};

std::string xml_escape(const std::string &text) {
    std::string out;
    for (const char c : text) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

}  // namespace

void emit_route_svg(std::ostream &out, const Instance &instance, const Solution &solution) {
    for (const Route &r : solution.routes) {
        for (const Visit &v : r.visits) {
            if (!instance.contains(v.customer)) {
                throw std::invalid_argument("solution visits customer " + std::to_string(v.customer) +
                                            " but the instance has " + std::to_string(instance.size()));
            }
        }
    }

    double min_x = instance.depot().x;
    double max_x = min_x;
    double min_y = instance.depot().y;
    double max_y = min_y;
    Quantity max_demand = 1;
    for (const Customer &c : instance.customers()) {
        min_x = std::min(min_x, c.coord.x);
        max_x = std::max(max_x, c.coord.x);
        min_y = std::min(min_y, c.coord.y);
        max_y = std::max(max_y, c.coord.y);
        max_demand = std::max(max_demand, c.demand);
    }
    const double span = std::max({max_x - min_x, max_y - min_y, 1e-9});
    const double scale = (kCanvas - 2 * kMargin) / span;
    // SVG y grows downwards.
    const auto sx = [&](double x) { return kMargin + (x - min_x) * scale; };
    const auto sy = [&](double y) { return kMargin + (max_y - y) * scale; };

    std::ostringstream svg;
    svg.precision(6);
    svg << std::fixed;
    const double height = kCanvas + kLegend;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kCanvas << "\" height=\""
        << height << "\" viewBox=\"0 0 " << kCanvas << ' ' << height << "\">\n"
        << "<title>" << xml_escape(instance.name()) << "</title>\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    int colour = 0;
    for (const Route &r : solution.routes) {
        if (r.empty()) {
            continue;
        }
        svg << "<polyline fill=\"none\" stroke-width=\"1.5\" stroke=\"" << kPalette[colour++ % kPalette.size()]
            << "\" points=\"" << sx(instance.depot().x) << ',' << sy(instance.depot().y);
        for (const Visit &v : r.visits) {
            const Point &p = instance.location(v.customer);
            svg << ' ' << sx(p.x) << ',' << sy(p.y);
        }
        svg << ' ' << sx(instance.depot().x) << ',' << sy(instance.depot().y) << "\"/>\n";
    }

    for (const Customer &c : instance.customers()) {
        const double radius = 2.0 + 4.0 * std::sqrt(static_cast<double>(c.demand) / static_cast<double>(max_demand));
        svg << "<circle cx=\"" << sx(c.coord.x) << "\" cy=\"" << sy(c.coord.y) << "\" r=\"" << radius
            << "\" fill=\"#333333\"><title>" << c.id << " (" << c.demand << ")</title></circle>\n";
    }
    const double d = 10.0;
    svg << "<rect x=\"" << sx(instance.depot().x) - d / 2 << "\" y=\"" << sy(instance.depot().y) - d / 2
        << "\" width=\"" << d << "\" height=\"" << d << "\" fill=\"black\"/>\n";

    const auto routes = std::count_if(solution.routes.begin(), solution.routes.end(),
                                      [](const Route &r) { return !r.empty(); });
    svg << "<text x=\"" << kMargin << "\" y=\"" << kCanvas + kLegend / 2
        << "\" font-family=\"sans-serif\" font-size=\"14\">" << xml_escape(instance.name()) << "  cost " << fixed(solution.cost)
        << "  routes " << routes << "</text>\n"
        << "</svg>\n";
    out << svg.str();
}

}  // namespace sdvrp::bench
