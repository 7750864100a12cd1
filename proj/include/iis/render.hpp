#pragma once

// Deterministic pictures of an induction trace.  One row per ordinary
// iteration (plus the initial row): row 0 is the starting system, row i the
// system after the i-th reduction, and the last row shows the trace's final
// state so any trailing transmissions after the last reduction are visible.
//
// Within a row, the support is a horizontal base segment and each pair is a
// family of two matching arcs over its intervals: rectangular arcs for pair
// "a", triangular for "b", circular for "c".  All coordinates are formatted
// with fixed precision so identical inputs produce byte-identical output.

#include <cstdio>
#include <string>
#include <vector>

#include "iis/engine.hpp"
#include "iis/system.hpp"

namespace iis {

struct RenderOptions {
    int width = 800;        // drawing width in px (plus fixed margins)
    int row_height = 96;    // vertical space per row
    int ascii_width = 96;   // columns for the text renderer
};

namespace render_detail {

// States to draw: initial, after each reduction, with the last reduction's
// state replaced by the trace's final state (post stop-plan shifts).
template <ExactOrderedField F>
std::vector<IISystem<F>> row_states(const InductionTrace<F>& t) {
    std::vector<IISystem<F>> rows{t.initial};
    IISystem<F> cur = t.initial;
    const F k = t.initial.support.lo + t.initial.support.hi;  // reflection pivot
    for (const auto& rec : t.steps) {
        cur = apply_record(cur, rec, k);
        if (rec.kind == StepKind::reduction) rows.push_back(cur);
    }
    if (rows.size() > 1) rows.back() = t.final_state;
    return rows;
}

inline std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

}  // namespace render_detail

// ---------------------------------------------------------------------------
// SVG 1.1

template <ExactOrderedField F>
std::string render_svg(const InductionTrace<F>& t, const RenderOptions& opt = {}) {
    using render_detail::fmt;
    const auto rows = render_detail::row_states(t);

    const double margin = 24.0;
    const double w = static_cast<double>(opt.width);
    const double rh = static_cast<double>(opt.row_height);
    const double total_w = w + 2 * margin;
    const double total_h = rh * static_cast<double>(rows.size()) + margin;

    // one shared x-scale so shrinking supports are visible across rows
    const double lo0 = rows.front().support.lo.to_double();
    const double hi0 = rows.front().support.hi.to_double();
    const double span = hi0 > lo0 ? hi0 - lo0 : 1.0;
    auto sx = [&](double v) { return margin + (v - lo0) / span * w; };

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + fmt(total_w) +
           "\" height=\"" + fmt(total_h) + "\" viewBox=\"0 0 " + fmt(total_w) + " " + fmt(total_h) +
           "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    static const char* colors[3] = {"#1f77b4", "#2ca02c", "#d62728"};

    for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto& s = rows[r];
        const double base = rh * static_cast<double>(r + 1) - 18.0;
        const double x0 = sx(s.support.lo.to_double());
        const double x1 = sx(s.support.hi.to_double());

        out += "<g>\n";
        out += "<line x1=\"" + fmt(x0) + "\" y1=\"" + fmt(base) + "\" x2=\"" + fmt(x1) +
               "\" y2=\"" + fmt(base) + "\" stroke=\"black\" stroke-width=\"2\"/>\n";
        for (double xe : {x0, x1})
            out += "<line x1=\"" + fmt(xe) + "\" y1=\"" + fmt(base - 5) + "\" x2=\"" + fmt(xe) +
                   "\" y2=\"" + fmt(base + 5) + "\" stroke=\"black\" stroke-width=\"2\"/>\n";

        for (std::size_t pi = 0; pi < s.pairs.size() && pi < 3; ++pi) {
            const auto& pr = s.pairs[pi];
            const char* col = colors[pi];
            const double h = 14.0 + 12.0 * static_cast<double>(pi);  // stagger arc heights
            for (const Interval<F>* iv : {&pr.left, &pr.right}) {
                const double a = sx(iv->lo.to_double());
                const double b = sx(iv->hi.to_double());
                const double mid = (a + b) / 2.0;
                std::string shape;
                if (pr.label == "a") {
                    // rectangular arc
                    shape = "<path d=\"M " + fmt(a) + " " + fmt(base) + " L " + fmt(a) + " " +
                            fmt(base - h) + " L " + fmt(b) + " " + fmt(base - h) + " L " + fmt(b) +
                            " " + fmt(base) + "\"";
                } else if (pr.label == "b") {
                    // triangular arc
                    shape = "<path d=\"M " + fmt(a) + " " + fmt(base) + " L " + fmt(mid) + " " +
                            fmt(base - h) + " L " + fmt(b) + " " + fmt(base) + "\"";
                } else {
                    // circular arc (semicircle over the interval)
                    shape = "<path d=\"M " + fmt(a) + " " + fmt(base) + " A " + fmt((b - a) / 2) +
                            " " + fmt((b - a) / 2) + " 0 0 1 " + fmt(b) + " " + fmt(base) + "\"";
                }
                out += shape + " fill=\"none\" stroke=\"" + std::string(col) +
                       "\" stroke-width=\"1.5\"/>\n";
            }
        }
        out += "<text x=\"" + fmt(margin) + "\" y=\"" + fmt(base - rh + 34.0) +
               "\" font-family=\"monospace\" font-size=\"11\">row " + std::to_string(r) +
               "</text>\n";
        out += "</g>\n";
    }
    out += "</svg>\n";
    return out;
}

// ---------------------------------------------------------------------------
// ASCII: per row, one line per pair (marks both intervals with the pair
// label) and a base line of '=' spanning the support.

template <ExactOrderedField F>
std::string render_ascii(const InductionTrace<F>& t, const RenderOptions& opt = {}) {
    const auto rows = render_detail::row_states(t);
    const int w = opt.ascii_width;

    const double lo0 = rows.front().support.lo.to_double();
    const double hi0 = rows.front().support.hi.to_double();
    const double span = hi0 > lo0 ? hi0 - lo0 : 1.0;
    auto col = [&](double v) {
        int c = static_cast<int>((v - lo0) / span * (w - 1) + 0.5);
        if (c < 0) c = 0;
        if (c >= w) c = w - 1;
        return c;
    };

    std::string out;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto& s = rows[r];
        out += "row " + std::to_string(r) + ":\n";
        for (const auto& pr : s.pairs) {
            std::string line(static_cast<std::size_t>(w), ' ');
            const char mark = pr.label.empty() ? '?' : pr.label[0];
            for (const Interval<F>* iv : {&pr.left, &pr.right}) {
                int a = col(iv->lo.to_double()), b = col(iv->hi.to_double());
                for (int c = a; c <= b; ++c) line[static_cast<std::size_t>(c)] = mark;
                line[static_cast<std::size_t>(a)] = '[';
                line[static_cast<std::size_t>(b)] = ']';
            }
            out += line + "\n";
        }
        std::string base(static_cast<std::size_t>(w), ' ');
        int a = col(s.support.lo.to_double()), b = col(s.support.hi.to_double());
        for (int c = a; c <= b; ++c) base[static_cast<std::size_t>(c)] = '=';
        base[static_cast<std::size_t>(a)] = '|';
        base[static_cast<std::size_t>(b)] = '|';
        out += base + "\n\n";
    }
    return out;
}

}  // namespace iis
