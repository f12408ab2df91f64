#include "crowdlag/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace crowdlag {

namespace {

std::string px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

struct Rgb {
    int r = 0, g = 0, b = 0;

    std::string css() const {
        return "rgb(" + std::to_string(r) + "," + std::to_string(g) + "," + std::to_string(b) +
               ")";
    }
};

Rgb lerp(Rgb a, Rgb b, double u) {
    const auto mix = [u](int x, int y) {
        return static_cast<int>(std::lround(x + (y - x) * u));
    };
    return {mix(a.r, b.r), mix(a.g, b.g), mix(a.b, b.b)};
}

constexpr Rgb kRampLow{255, 255, 255};  // density 0
constexpr Rgb kRampHigh{20, 40, 90};    // jam density

Rgb density_rgb(double rho, double rho_max) {
    const double u = rho_max > 0.0 ? std::clamp(rho / rho_max, 0.0, 1.0) : 0.0;
    return lerp(kRampLow, kRampHigh, u);
}

Rgb time_rgb(double t, double duration) {
    static constexpr Rgb stops[4] = {
        {255, 255, 0}, {0, 255, 0}, {0, 255, 255}, {0, 0, 255}};
    const double f = duration > 0.0 ? std::clamp(t / duration, 0.0, 1.0) : 0.0;
    const double s = f * 3.0;
    const int i = std::min(2, static_cast<int>(s));
    return lerp(stops[i], stops[i + 1], s - i);
}

struct Frame {
    double min_x = 0.0, max_x = 1.0, min_y = 0.0, max_y = 1.0;
    double scale = 1.0;
    double pad = 12.0;

    double width() const { return (max_x - min_x) * scale + 2 * pad; }
    double height() const { return (max_y - min_y) * scale + 2 * pad; }
    double sx(double x) const { return (x - min_x) * scale + pad; }
    double sy(double y) const { return (max_y - y) * scale + pad; }
};

Frame fit_frame(double min_x, double max_x, double min_y, double max_y, double canvas_width) {
    Frame f;
    f.min_x = min_x;
    f.max_x = std::max(max_x, min_x + 1e-9);
    f.min_y = min_y;
    f.max_y = std::max(max_y, min_y + 1e-9);
    f.scale = (canvas_width - 2 * f.pad) / (f.max_x - f.min_x);
    return f;
}

void svg_open(std::ostringstream& out, double width, double height) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << px(width)
        << "\" height=\"" << px(height) << "\" viewBox=\"0 0 " << px(width) << ' '
        << px(height) << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

void gradient_bar(std::ostringstream& out, double x, double y, double w, double h,
                  const std::vector<Rgb>& samples) {
    const double step = w / static_cast<double>(samples.size());
    for (size_t i = 0; i < samples.size(); ++i) {
        out << "<rect x=\"" << px(x + step * static_cast<double>(i)) << "\" y=\"" << px(y)
            << "\" width=\"" << px(step + 0.5) << "\" height=\"" << px(h) << "\" fill=\""
            << samples[i].css() << "\"/>\n";
    }
    out << "<rect x=\"" << px(x) << "\" y=\"" << px(y) << "\" width=\"" << px(w)
        << "\" height=\"" << px(h)
        << "\" fill=\"none\" stroke=\"black\" stroke-width=\"0.5\"/>\n";
}

void label(std::ostringstream& out, double x, double y, const std::string& text,
           const char* anchor = "middle") {
    out << "<text x=\"" << px(x) << "\" y=\"" << px(y) << "\" font-family=\"sans-serif\""
        << " font-size=\"11\" text-anchor=\"" << anchor << "\">" << text << "</text>\n";
}

std::string trim_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

}  // namespace

std::string render_density_svg(const std::vector<SnapshotRecord>& records,
                               const std::vector<std::pair<int, Triangle>>& cells,
                               const RenderOptions& options) {
    double min_x = 0.0, max_x = 1.0, min_y = 0.0, max_y = 1.0;
    if (!cells.empty()) {
        min_x = max_x = cells.front().second.v1.x;
        min_y = max_y = cells.front().second.v1.y;
        for (const auto& [id, t] : cells) {
            for (const Point2& p : {t.v1, t.v2, t.v3}) {
                min_x = std::min(min_x, p.x);
                max_x = std::max(max_x, p.x);
                min_y = std::min(min_y, p.y);
                max_y = std::max(max_y, p.y);
            }
        }
    }
    const Frame f = fit_frame(min_x, max_x, min_y, max_y, options.canvas_width);
    const double legend_h = 48.0;

    std::map<int, double> density_by_cell;
    for (const auto& r : records) density_by_cell[r.cell_id] = r.density;

    std::ostringstream out;
    svg_open(out, f.width(), f.height() + legend_h);
    for (const auto& [id, t] : cells) {
        const auto it = density_by_cell.find(id);
        const double rho = it != density_by_cell.end() ? it->second : 0.0;
        out << "<polygon points=\"" << px(f.sx(t.v1.x)) << ',' << px(f.sy(t.v1.y)) << ' '
            << px(f.sx(t.v2.x)) << ',' << px(f.sy(t.v2.y)) << ' ' << px(f.sx(t.v3.x)) << ','
            << px(f.sy(t.v3.y)) << "\" fill=\"" << density_rgb(rho, options.rho_max).css()
            << "\" stroke=\"rgb(160,160,160)\" stroke-width=\"0.4\"/>\n";
    }

    // density legend
    const double bar_w = std::min(240.0, f.width() - 2 * f.pad);
    const double bar_x = f.pad;
    const double bar_y = f.height() + 10.0;
    std::vector<Rgb> samples;
    for (int i = 0; i < 48; ++i) {
        samples.push_back(density_rgb(options.rho_max * (i + 0.5) / 48.0, options.rho_max));
    }
    gradient_bar(out, bar_x, bar_y, bar_w, 12.0, samples);
    label(out, bar_x, bar_y + 26.0, "0", "start");
    label(out, bar_x + bar_w, bar_y + 26.0, trim_num(options.rho_max) + " /m\xC2\xB2", "end");
    label(out, bar_x + bar_w / 2.0, bar_y + 26.0, "density");
    out << "</svg>\n";
    return out.str();
}

std::string render_trajectories_svg(const std::vector<TrajectoryRecord>& records,
                                    const RenderOptions& options) {
    double min_x = 0.0, max_x = 1.0, min_y = 0.0, max_y = 1.0;
    if (!records.empty()) {
        min_x = max_x = records.front().cx;
        min_y = max_y = records.front().cy;
        for (const auto& r : records) {
            min_x = std::min(min_x, r.cx);
            max_x = std::max(max_x, r.cx);
            min_y = std::min(min_y, r.cy);
            max_y = std::max(max_y, r.cy);
        }
    }
    const Frame f = fit_frame(min_x, max_x, min_y, max_y, options.canvas_width);
    const double legend_h = 84.0;

    // (epoch, cell) -> indices in time order; map iteration keeps the output
    // deterministic.
    std::map<std::pair<int, int>, std::vector<size_t>> paths;
    double n_max = 1.0;
    for (size_t i = 0; i < records.size(); ++i) {
        paths[{records[i].epoch, records[i].cell_id}].push_back(i);
        n_max = std::max(n_max, records[i].n_peds);
    }
    for (auto& [key, idx] : paths) {
        std::stable_sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
            return records[a].time < records[b].time;
        });
    }

    const double w_min = 0.8, w_max = 6.0;
    const auto stroke_width = [&](double n) {
        if (n_max <= 1.0) return w_min;
        return w_min + (n - 1.0) / (n_max - 1.0) * (w_max - w_min);
    };

    std::ostringstream out;
    svg_open(out, f.width(), f.height() + legend_h);
    for (const auto& [key, idx] : paths) {
        double n = 1.0;
        double length = 0.0;
        for (size_t k = 0; k < idx.size(); ++k) {
            n = std::max(n, records[idx[k]].n_peds);
            if (k > 0) {
                length += std::hypot(records[idx[k]].cx - records[idx[k - 1]].cx,
                                     records[idx[k]].cy - records[idx[k - 1]].cy);
            }
        }
        const double w = stroke_width(n);
        if (idx.size() < 2 || length < 1e-9) {
            const auto& r = records[idx.front()];
            out << "<circle cx=\"" << px(f.sx(r.cx)) << "\" cy=\"" << px(f.sy(r.cy))
                << "\" r=\"" << px(0.5 * w) << "\" fill=\""
                << time_rgb(r.time, options.duration).css() << "\"/>\n";
            continue;
        }
        for (size_t k = 1; k < idx.size(); ++k) {
            const auto& a = records[idx[k - 1]];
            const auto& b = records[idx[k]];
            const Rgb color = time_rgb(0.5 * (a.time + b.time), options.duration);
            out << "<line x1=\"" << px(f.sx(a.cx)) << "\" y1=\"" << px(f.sy(a.cy))
                << "\" x2=\"" << px(f.sx(b.cx)) << "\" y2=\"" << px(f.sy(b.cy))
                << "\" stroke=\"" << color.css() << "\" stroke-width=\"" << px(w)
                << "\" stroke-linecap=\"round\"/>\n";
        }
    }

    // pedestrian-count legend: sample strokes at 1, mid and max
    double ly = f.height() + 14.0;
    label(out, f.pad, ly, "pedestrians:", "start");
    const double lx0 = f.pad + 90.0;
    const double counts[3] = {1.0, 0.5 * (1.0 + n_max), n_max};
    for (int i = 0; i < 3; ++i) {
        const double x = lx0 + i * 80.0;
        out << "<line x1=\"" << px(x) << "\" y1=\"" << px(ly - 4.0) << "\" x2=\""
            << px(x + 40.0) << "\" y2=\"" << px(ly - 4.0)
            << "\" stroke=\"black\" stroke-width=\"" << px(stroke_width(counts[i]))
            << "\" stroke-linecap=\"round\"/>\n";
        label(out, x + 48.0, ly, trim_num(std::round(counts[i])), "start");
    }

    // time colour scale
    ly += 26.0;
    label(out, f.pad, ly + 10.0, "time (s):", "start");
    const double bar_x = f.pad + 90.0;
    const double bar_w = std::min(280.0, f.width() - bar_x - f.pad);
    std::vector<Rgb> samples;
    for (int i = 0; i < 60; ++i) {
        samples.push_back(time_rgb(options.duration * (i + 0.5) / 60.0, options.duration));
    }
    gradient_bar(out, bar_x, ly, bar_w, 12.0, samples);
    for (int i = 0; i <= 4; ++i) {
        label(out, bar_x + bar_w * i / 4.0, ly + 26.0, trim_num(options.duration * i / 4.0));
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace crowdlag
