#include "faao/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace faao {

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

std::uint64_t fnv1a_hash(const std::string& text) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string trajectory_csv(const Trajectory& traj, double dt) {
    std::string out = "slot,t_seconds,x,y,vx,vy,ax,ay\n";
    for (int n = 0; n < traj.n_slots(); ++n) {
        out += std::to_string(n) + ',' + format_double(n * dt) + ',' +
               format_double(traj.w[n].x()) + ',' + format_double(traj.w[n].y()) + ',' +
               format_double(traj.v[n].x()) + ',' + format_double(traj.v[n].y()) + ',' +
               format_double(traj.a[n].x()) + ',' + format_double(traj.a[n].y()) + '\n';
    }
    return out;
}

std::string rates_csv(const Rates& rates) {
    std::string out = "slot,I_hop1,I_hop2\n";
    for (size_t n = 0; n < rates.per_slot_hop1.size(); ++n) {
        out += std::to_string(n) + ',' + format_double(rates.per_slot_hop1[n]) + ',' +
               format_double(rates.per_slot_hop2[n]) + '\n';
    }
    return out;
}

std::string convergence_csv(const ConvergenceTrace& trace) {
    // the seconds column is fixed at 0: wall time varies run to run and would
    // break byte-identical reruns; the measured total lives in manifest.json
    std::string out = "iter,R_hop1,R_hop2,R_avg,tau,seconds\n";
    for (const auto& it : trace.iterations) {
        out += std::to_string(it.iter) + ',' + format_double(it.rate_hop1) + ',' +
               format_double(it.rate_hop2) + ',' + format_double(it.rate_avg) + ',' +
               format_double(it.tau) + ",0\n";
    }
    return out;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::string out = "power_dbm,scheme,R_avg\n";
    for (const auto& r : rows) {
        out += format_double(r.power_dbm) + ',' + r.scheme + ',' +
               (std::isnan(r.rate_avg) ? std::string("nan") : format_double(r.rate_avg)) + '\n';
    }
    return out;
}

std::string channel_debug_csv(const ChannelRealization& realization) {
    std::string out = "slot,d_hop1,d_hop2,fro_hop1,fro_hop2\n";
    for (int n = 0; n < realization.n_slots(); ++n) {
        out += std::to_string(n) + ',' + format_double(realization.distances_hop1[n]) + ',' +
               format_double(realization.distances_hop2[n]) + ',' +
               format_double(realization.full_channel(n, 1).norm()) + ',' +
               format_double(realization.full_channel(n, 2).norm()) + '\n';
    }
    return out;
}

namespace {

struct SvgCanvas {
    std::ostringstream svg;
    double xmin, xmax, ymin, ymax;
    static constexpr double width = 800, height = 600, margin = 60;

    SvgCanvas(double x0, double x1, double y0, double y1) : xmin(x0), xmax(x1), ymin(y0), ymax(y1) {
        if (xmax - xmin < 1e-12) xmax = xmin + 1.0;
        if (ymax - ymin < 1e-12) ymax = ymin + 1.0;
        svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 600\">\n"
            << "<rect width=\"800\" height=\"600\" fill=\"white\"/>\n";
    }
    double px(double x) const { return margin + (x - xmin) / (xmax - xmin) * (width - 2 * margin); }
    double py(double y) const { return height - margin - (y - ymin) / (ymax - ymin) * (height - 2 * margin); }

    void axes() {
        svg << "<rect x=\"" << margin << "\" y=\"" << margin << "\" width=\"" << width - 2 * margin
            << "\" height=\"" << height - 2 * margin
            << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
    }
    void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& color) {
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
        for (const auto& [x, y] : pts) svg << px(x) << ',' << py(y) << ' ';
        svg << "\"/>\n";
    }
    void marker(double x, double y, const std::string& color, const std::string& label) {
        svg << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y) << "\" r=\"6\" fill=\"" << color
            << "\"/>\n<text x=\"" << px(x) + 9 << "\" y=\"" << py(y) - 9
            << "\" font-size=\"14\" font-family=\"sans-serif\">" << label << "</text>\n";
    }
    void text(double sx, double sy, const std::string& t) {
        svg << "<text x=\"" << sx << "\" y=\"" << sy
            << "\" font-size=\"14\" font-family=\"sans-serif\">" << t << "</text>\n";
    }
    std::string finish() {
        svg << "</svg>\n";
        return svg.str();
    }
};

}  // namespace

std::string trajectory_svg(const Trajectory& traj, const Scenario& s) {
    double xmin = std::min({s.bs_pos.x(), s.gu_pos.x()});
    double xmax = std::max({s.bs_pos.x(), s.gu_pos.x()});
    double ymin = std::min({s.bs_pos.y(), s.gu_pos.y()});
    double ymax = std::max({s.bs_pos.y(), s.gu_pos.y()});
    for (const auto& w : traj.w) {
        xmin = std::min(xmin, w.x()); xmax = std::max(xmax, w.x());
        ymin = std::min(ymin, w.y()); ymax = std::max(ymax, w.y());
    }
    const double pad_x = 0.05 * (xmax - xmin + 1.0);
    const double pad_y = 0.05 * (ymax - ymin + 1.0);
    SvgCanvas c(xmin - pad_x, xmax + pad_x, ymin - pad_y, ymax + pad_y);
    c.axes();
    std::vector<std::pair<double, double>> pts;
    for (const auto& w : traj.w) pts.emplace_back(w.x(), w.y());
    c.polyline(pts, "steelblue");
    c.marker(s.bs_pos.x(), s.bs_pos.y(), "crimson", "BS");
    c.marker(s.gu_pos.x(), s.gu_pos.y(), "seagreen", "GU");
    if (!traj.w.empty()) {
        c.marker(traj.w.front().x(), traj.w.front().y(), "black", "start");
        c.marker(traj.w.back().x(), traj.w.back().y(), "gray", "end");
    }
    c.text(20, 30, "UAV trajectory (meters)");
    return c.finish();
}

std::string convergence_svg(const ConvergenceTrace& trace) {
    double ymin = 1e300, ymax = -1e300;
    for (const auto& it : trace.iterations) {
        ymin = std::min(ymin, it.rate_avg);
        ymax = std::max(ymax, it.rate_avg);
    }
    if (trace.iterations.empty()) { ymin = 0; ymax = 1; }
    SvgCanvas c(0, std::max<size_t>(1, trace.iterations.size() - 1), ymin, ymax);
    c.axes();
    std::vector<std::pair<double, double>> pts;
    for (const auto& it : trace.iterations) pts.emplace_back(it.iter, it.rate_avg);
    c.polyline(pts, "steelblue");
    c.text(20, 30, "R_avg (bits/s/Hz) vs outer iteration");
    return c.finish();
}

std::string sweep_svg(const std::vector<SweepRow>& rows) {
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    std::vector<std::string> schemes;
    for (const auto& r : rows) {
        if (std::isnan(r.rate_avg)) continue;
        xmin = std::min(xmin, r.power_dbm); xmax = std::max(xmax, r.power_dbm);
        ymin = std::min(ymin, r.rate_avg); ymax = std::max(ymax, r.rate_avg);
        if (std::find(schemes.begin(), schemes.end(), r.scheme) == schemes.end())
            schemes.push_back(r.scheme);
    }
    if (schemes.empty()) { xmin = 0; xmax = 1; ymin = 0; ymax = 1; }
    SvgCanvas c(xmin, xmax, ymin, ymax);
    c.axes();
    const char* colors[] = {"steelblue", "crimson", "seagreen", "darkorange", "purple"};
    for (size_t i = 0; i < schemes.size(); ++i) {
        std::vector<std::pair<double, double>> pts;
        for (const auto& r : rows)
            if (r.scheme == schemes[i] && !std::isnan(r.rate_avg))
                pts.emplace_back(r.power_dbm, r.rate_avg);
        std::sort(pts.begin(), pts.end());
        c.polyline(pts, colors[i % 5]);
        c.text(680, 30 + 18 * i, schemes[i]);
        c.svg << "<rect x=\"660\" y=\"" << 21 + 18 * i << "\" width=\"12\" height=\"12\" fill=\""
              << colors[i % 5] << "\"/>\n";
    }
    c.text(20, 30, "R_avg (bits/s/Hz) vs transmit power (dBm)");
    return c.finish();
}

std::string manifest_json(const RunManifest& m) {
    nlohmann::json j;
    j["scenario_hash"] = m.scenario_hash;
    j["command"] = m.command;
    j["seed"] = m.seed;
    j["out_dir"] = m.out_dir;
    j["files"] = m.files;
    j["wall_seconds"] = m.wall_seconds;
    j["version"] = m.version;
    return j.dump(2) + "\n";
}

void write_file(const std::string& dir, const std::string& name, const std::string& content) {
    const std::string path = dir + "/" + name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace faao
